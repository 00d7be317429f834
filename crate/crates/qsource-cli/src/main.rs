fn main() {
    std::process::exit(qsource_cli::run(std::env::args_os()));
}
