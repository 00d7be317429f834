use num_complex::Complex64;
use proptest::prelude::*;
use qsource::special::*;
use qsource::{EvalError, Scalar, C64, Q};

fn c(re: f64, im: f64) -> C64 {
    Complex64::new(re, im)
}

fn q(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

fn tr() -> Truncation {
    Truncation::default()
}

#[test]
fn qpoch_inf_at_zero_base_is_one() {
    assert_eq!(
        qpoch_inf(&c(0.0, 0.0), &c(0.5, 0.0), &tr()).unwrap(),
        c(1.0, 0.0)
    );
}

#[test]
fn qpoch_inf_matches_long_product() {
    let got = qpoch_inf(&c(0.5, 0.0), &c(0.5, 0.0), &tr()).unwrap();
    let mut brute = c(1.0, 0.0);
    let mut x = c(0.5, 0.0);
    for _ in 0..200 {
        brute *= c(1.0, 0.0) - x;
        x *= 0.5;
    }
    assert!(got.residual(&brute) <= 1e-13);
}

#[test]
fn qpoch_inf_splits_at_fifty() {
    let h = c(0.5, 0.0);
    let whole = qpoch_inf(&h, &h, &tr()).unwrap();
    let head = qpoch_n(&h, &h, 50).unwrap();
    let tail = qpoch_inf(&(h * h.powi(50)), &h, &tr()).unwrap();
    assert!(whole.residual(&(head * tail)) <= 1e-12);
}

#[test]
fn qpoch_inf_rejects_large_nome_and_exact_field() {
    assert!(matches!(
        qpoch_inf(&c(0.1, 0.0), &c(0.95, 0.0), &tr()),
        Err(EvalError::Domain(_))
    ));
    assert!(matches!(
        qpoch_inf(&q(1, 2), &q(1, 3), &tr()),
        Err(EvalError::Domain(_))
    ));
}

#[test]
fn qpoch_n_small_cases() {
    assert_eq!(qpoch_n(&q(7, 3), &q(5, 2), 0).unwrap(), q(1, 1));
    assert_eq!(qpoch_n(&q(1, 1), &q(2, 1), -1).unwrap(), q(2, 1));
    assert_eq!(qpoch_n(&q(3, 1), &q(2, 1), 2).unwrap(), q(10, 1));
    // 1 − u q^{−1} = 0
    assert_eq!(qpoch_n(&q(2, 1), &q(2, 1), -1), Err(EvalError::Singular));
}

#[test]
fn theta_special_values() {
    assert_eq!(
        theta(&c(0.5, 0.0), &c(0.0, 0.0), &tr()).unwrap(),
        c(0.5, 0.0)
    );
    assert_eq!(theta(&q(1, 2), &q(0, 1), &tr()).unwrap(), q(1, 2));
    assert_eq!(
        theta(&c(1.0, 0.0), &c(0.3, 0.2), &tr()).unwrap(),
        c(0.0, 0.0)
    );
    assert!(theta(&c(0.0, 0.0), &c(0.3, 0.0), &tr()).is_err());
    assert!(theta(&c(0.5, 0.0), &c(0.95, 0.0), &tr()).is_err());
}

#[test]
fn theta_quasi_periodicity_example() {
    let (u, p) = (c(2.0, 0.0), c(0.3, 0.0));
    let lhs = theta(&(p * u), &p, &tr()).unwrap();
    let rhs = -theta(&u, &p, &tr()).unwrap() / u;
    assert!(lhs.residual(&rhs) <= 1e-12);
}

#[test]
fn q_binomial_examples() {
    assert_eq!(q_binomial(2, 1, &q(3, 1)).unwrap(), q(4, 1));
    assert_eq!(q_binomial(4, 2, &q(1, 1)).unwrap(), q(6, 1));
    assert!(q_binomial(2, 3, &q(3, 1)).is_err());
    assert!(q_binomial(2, -1, &q(3, 1)).is_err());
}

#[test]
fn q_binomial_is_coefficient_of_product() {
    // ∏_{j=1}^5 (1 + q^j z) = Σ_l z^l q^{l(l+1)/2} [5, l]_q
    let h = q(1, 2);
    let mut poly = vec![q(1, 1)];
    for j in 1..=5 {
        let a = h.powi(j).unwrap();
        let mut next = vec![q(0, 1); poly.len() + 1];
        for (k, x) in poly.iter().enumerate() {
            next[k] += x.clone();
            next[k + 1] += a.clone() * x.clone();
        }
        poly = next;
    }
    let want = poly[2].clone() / h.powi(3).unwrap();
    assert_eq!(q_binomial(5, 2, &h).unwrap(), want);
}

#[test]
fn sym_q_number_examples() {
    assert_eq!(sym_q_number(2, &q(2, 1)).unwrap(), q(5, 2));
    assert_eq!(sym_q_number(1, &q(7, 3)).unwrap(), q(1, 1));
    assert_eq!(sym_q_number(3, &q(2, 1)).unwrap(), q(21, 4));
    assert_eq!(sym_q_number(-3, &q(2, 1)).unwrap(), q(-21, 4));
    assert!(sym_q_number(2, &q(1, 1)).is_err());
    assert!(sym_q_number(2, &q(-1, 1)).is_err());
    assert!(sym_q_number(2, &q(0, 1)).is_err());
}

#[test]
fn sym_q_factorial_small() {
    let s = q(3, 1);
    assert_eq!(sym_q_factorial(0, &s).unwrap(), q(1, 1));
    let want = sym_q_number(2, &s).unwrap() * sym_q_number(3, &s).unwrap();
    assert_eq!(sym_q_factorial(3, &s).unwrap(), want);
}

#[test]
fn psi_examples() {
    let t = tr();
    assert_eq!(
        psi_a(2, 3, &q(5, 1), &q(0, 1), &q(7, 1), &t).unwrap(),
        q(5, 1)
    );
    assert_eq!(
        psi_a(1, 2, &q(2, 1), &q(0, 1), &q(3, 1), &t).unwrap(),
        q(13, 1)
    );
    assert!(psi_a(0, 2, &q(2, 1), &q(0, 1), &q(3, 1), &t).is_err());
    assert!(psi_a(3, 2, &q(2, 1), &q(0, 1), &q(3, 1), &t).is_err());
    let (u, r) = (c(0.7, 0.4), c(1.3, -0.2));
    let limit = psi_a(1, 2, &u, &c(0.0, 0.0), &r, &t).unwrap();
    let near = psi_a(1, 2, &u, &c(1e-7, 0.0), &r, &t).unwrap();
    assert!(near.residual(&limit) <= 1e-6);
}

#[test]
fn exact_values_stay_reduced() {
    let x = q(6, -4);
    assert_eq!(x.numer().to_string(), "-3");
    assert_eq!(x.denom().to_string(), "2");
}

#[test]
fn checked_inverse_respects_radius() {
    assert_eq!(c(1e-4, 0.0).checked_inv(1e-3), Err(EvalError::Singular));
    assert!(c(1e-2, 0.0).checked_inv(1e-3).is_ok());
    assert_eq!(q(0, 1).checked_inv(0.0), Err(EvalError::Singular));
}

fn small_complex() -> impl Strategy<Value = C64> {
    (0.2f64..3.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

fn nome() -> impl Strategy<Value = C64> {
    (0.05f64..0.8, 0.0f64..std::f64::consts::TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=20)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn theta_quasi_periodicity(u in small_complex(), p in nome()) {
        let t = tr();
        let base = theta(&u, &p, &t).unwrap();
        let shifted = theta(&(p * u), &p, &t).unwrap();
        prop_assert!((u * shifted + base).norm() <= 1e-11 * (1.0 + base.norm()));
    }

    #[test]
    fn qpoch_splitting(u in small_complex(), r in 0.05f64..0.8, a in 0.0f64..std::f64::consts::TAU, n in -5i64..=5) {
        let qq = Complex64::from_polar(r, a);
        let t = tr();
        let head = match qpoch_n(&u, &qq, n) { Ok(x) => x, Err(_) => return Ok(()) };
        let tail = qpoch_inf(&(u * Scalar::powi(&qq, n).unwrap()), &qq, &t).unwrap();
        let whole = qpoch_inf(&u, &qq, &t).unwrap();
        prop_assert!(whole.residual(&(head * tail)) <= 1e-11);
    }

    #[test]
    fn q_binomial_pascal(n in 1i64..=9, l in 0i64..=9, h in rational()) {
        prop_assume!(l <= n && h != q(-1, 1));
        let g = |a: i64, b: i64| if b < 0 || b > a { q(0, 1) } else { q_binomial(a, b, &h).unwrap() };
        let rhs = g(n - 1, l) + h.powi(n - l).unwrap() * g(n - 1, l - 1);
        prop_assert_eq!(g(n, l), rhs);
    }

    #[test]
    fn sym_q_number_matches_q_integer(n in 0i64..=10, s in rational()) {
        prop_assume!(s != q(1, 1) && s != q(-1, 1));
        let lhs = s.powi(n - 1).unwrap() * sym_q_number(n, &s).unwrap();
        prop_assert_eq!(lhs, q_int(n, &(s.clone() * s.clone())));
    }

    #[test]
    fn sym_q_three_term(x in -6i64..=6, y in -6i64..=6, u in -6i64..=6, v in -6i64..=6, s in rational()) {
        prop_assume!(s != q(1, 1) && s != q(-1, 1));
        let f = |k: i64| sym_q_number(k, &s).unwrap();
        let lhs = f(x - u) * f(y - v) - f(x - v) * f(y - u);
        prop_assert_eq!(lhs, f(x - y) * f(u - v));
    }
}
