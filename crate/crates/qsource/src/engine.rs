//! Seeded sampling, the case registry and per-case verdicts.
//!
//! Every point gets its own ChaCha8 stream seeded from
//! SHA-256(master_seed ‖ case_id ‖ point_index), so points can be evaluated in
//! any order or in parallel without changing results.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::degeneration;
use crate::detrep::{self, det_rep, izergin_korepin, AuxParams, Family};
use crate::error::{EvalError, Result};
use crate::field::{div, product, sign, FieldKind, Scalar, C64, Q};
use crate::linalg::{self, Matrix};
use crate::qidentity;
use crate::source::{
    source_polynomial_form, source_subset_sum, source_via_difference_ops, EllipticParams, Params,
    RatParams, Regime, Side, TrigParams,
};
use crate::special::{theta, Truncation};
use crate::specialization as spec;
use crate::symmetrization::{self as sym, UniPoly};
use crate::wall_crossing as wall;

/// Draws per point before general-position sampling gives up.
pub const RESAMPLE_CAP: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingConfig {
    pub master_seed: u64,
    /// Points per case; `None` uses each case's default.
    pub points: Option<usize>,
    /// Rejection radius around protected denominators (complex field).
    pub tol_singular: f64,
    /// Match tolerance in the complex field; `None` uses each case's default.
    pub tol_match: Option<f64>,
    /// Field to run in; `None` runs each case in its default field.
    pub field: Option<FieldKind>,
    /// Upper bound on n and m, applied on top of each case's own bound.
    pub nmax: Option<usize>,
    pub truncation: Truncation,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            master_seed: 0,
            points: None,
            tol_singular: 1e-3,
            tol_match: None,
            field: None,
            nmax: None,
            truncation: Truncation::default(),
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_singular > 0.0 && self.tol_singular.is_finite()) {
            return Err(EvalError::Domain("tol_singular must be a positive number"));
        }
        if self.points == Some(0) {
            return Err(EvalError::Domain("points must be at least 1"));
        }
        if let Some(t) = self.tol_match {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(EvalError::Domain("tol_match must be non-negative"));
            }
        }
        Ok(())
    }
}

/// Per-point seed: first eight bytes of SHA-256(master ‖ id ‖ index), little endian.
pub fn point_seed(master_seed: u64, case_id: &str, index: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    h.update(case_id.as_bytes());
    h.update((index as u64).to_le_bytes());
    let d = h.finalize();
    let mut b = [0u8; 8];
    b.copy_from_slice(&d[..8]);
    u64::from_le_bytes(b)
}

pub struct Sampler {
    rng: ChaCha8Rng,
    tol_singular: f64,
    field: FieldKind,
}

impl Sampler {
    pub fn new(seed: u64, field: FieldKind, tol_singular: f64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            tol_singular,
            field,
        }
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn uniform(&mut self, a: f64, b: f64) -> f64 {
        self.rng.gen_range(a..b)
    }

    /// Uniform integer in [a, b].
    pub fn int(&mut self, a: i64, b: i64) -> i64 {
        self.rng.gen_range(a..=b)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// Random permutation of 0..n.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.rng.gen_range(0..=i);
            p.swap(i, j);
        }
        p
    }

    /// Rejects `x` if it lies within the singular radius of 0 (exact field: literal 0).
    pub fn guard<S: Scalar>(&self, x: &S) -> Result<()> {
        let tol = if S::is_exact() {
            0.0
        } else {
            self.tol_singular
        };
        x.checked_inv(tol).map(|_| ())
    }

    /// Runs `f` until it does not fail with a general-position rejection.
    pub fn attempt<T>(&mut self, mut f: impl FnMut(&mut Sampler) -> Result<T>) -> Result<T> {
        for _ in 0..RESAMPLE_CAP {
            match f(self) {
                Err(EvalError::Singular) | Err(EvalError::AuxInvalid(_)) => continue,
                r => return r,
            }
        }
        Err(EvalError::ResampleCap(RESAMPLE_CAP))
    }

    pub fn draw<S: Sample>(&mut self) -> S {
        S::draw(self)
    }

    pub fn draw_vec<S: Sample>(&mut self, n: usize) -> Vec<S> {
        (0..n).map(|_| S::draw(self)).collect()
    }

    pub fn draw_nome<S: Sample>(&mut self) -> S {
        S::draw_nome(self)
    }

    /// Complex number with modulus in [lo, hi] and uniform argument.
    pub fn draw_polar(&mut self, lo: f64, hi: f64) -> C64 {
        let r = self.uniform(lo, hi);
        let a = self.uniform(0.0, 2.0 * PI);
        Complex64::from_polar(r, a)
    }

    /// Elliptic nome: modulus in [0.01, 0.5], argument uniform.
    pub fn draw_p(&mut self) -> C64 {
        let r = self.uniform(0.01, 0.5);
        let a = self.uniform(0.0, 2.0 * PI);
        Complex64::from_polar(r, a)
    }

    /// num/den with num ∈ [lo, hi] ∖ {0}, den ∈ [1, dmax].
    pub fn draw_ratio<S: Scalar>(&mut self, lo: i64, hi: i64, dmax: i64) -> S {
        loop {
            let n = self.int(lo, hi);
            if n != 0 {
                let d = self.int(1, dmax);
                return S::from_ratio(n, d);
            }
        }
    }
}

/// Scalars that the sampler knows how to draw.
pub trait Sample: Scalar {
    /// Generic variable: complex modulus in [0.2, 3] with uniform argument, or
    /// a rational num/den with both in [−20, 20] (num ≠ 0).
    fn draw(s: &mut Sampler) -> Self;
    /// Multiplicative step with |q| away from 1.
    fn draw_nome(s: &mut Sampler) -> Self;
    fn render(&self) -> String;
}

impl Sample for C64 {
    fn draw(s: &mut Sampler) -> Self {
        let r = s.uniform(0.2, 3.0);
        let a = s.uniform(0.0, 2.0 * PI);
        Complex64::from_polar(r, a)
    }

    fn draw_nome(s: &mut Sampler) -> Self {
        let r = if s.coin() {
            s.uniform(0.2, 0.8)
        } else {
            s.uniform(1.25, 5.0)
        };
        let a = s.uniform(0.0, 2.0 * PI);
        Complex64::from_polar(r, a)
    }

    fn render(&self) -> String {
        format!("{:e}{:+e}i", self.re, self.im)
    }
}

impl Sample for Q {
    fn draw(s: &mut Sampler) -> Self {
        s.draw_ratio(-20, 20, 20)
    }

    fn draw_nome(s: &mut Sampler) -> Self {
        loop {
            let n = s.int(-20, 20);
            let d = s.int(1, 20);
            if n != 0 && n.abs() != d {
                return Q::from_ratio(n, d);
            }
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

fn guard_pairs<S: Scalar>(
    s: &Sampler,
    a: &[S],
    b: &[S],
    f: impl Fn(&S, &S) -> S,
    skip_diag: bool,
) -> Result<()> {
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if skip_diag && i == j {
                continue;
            }
            s.guard(&f(x, y))?;
        }
    }
    Ok(())
}

/// Rational-regime parameters in general position.
pub fn draw_rational<S: Sample>(s: &mut Sampler, n: usize, m: usize) -> Result<RatParams<S>> {
    let r = RatParams {
        c: s.draw(),
        z: s.draw(),
        u: s.draw_vec(n),
        v: s.draw_vec(m),
    };
    guard_rational(s, &r)?;
    Ok(r)
}

fn guard_rational<S: Scalar>(s: &Sampler, r: &RatParams<S>) -> Result<()> {
    let c = &r.c;
    s.guard(c)?;
    s.guard(&(S::one() - r.z.clone()))?;
    for a in -2i64..=2 {
        let sh = S::from_i64(a) * c.clone();
        guard_pairs(
            s,
            &r.u,
            &r.u,
            |x, y| x.clone() - y.clone() + sh.clone(),
            a == 0,
        )?;
        guard_pairs(
            s,
            &r.v,
            &r.v,
            |x, y| x.clone() - y.clone() + sh.clone(),
            a == 0,
        )?;
        guard_pairs(
            s,
            &r.v,
            &r.u,
            |x, y| x.clone() - y.clone() + sh.clone(),
            false,
        )?;
    }
    Ok(())
}

/// Trigonometric-regime parameters in general position; Λ is drawn when `lambda`.
pub fn draw_trig<S: Sample>(
    s: &mut Sampler,
    n: usize,
    m: usize,
    lambda: bool,
) -> Result<TrigParams<S>> {
    let q = s.draw_nome();
    let z = s.draw();
    let u = s.draw_vec(n);
    let v = s.draw_vec(m);
    let lambda = if lambda { Some(s.draw()) } else { None };
    let t = TrigParams { q, z, u, v, lambda };
    guard_trig(s, &t)?;
    Ok(t)
}

fn guard_trig<S: Scalar>(s: &Sampler, t: &TrigParams<S>) -> Result<()> {
    let q = &t.q;
    for k in 1..=8 {
        s.guard(&(S::one() - q.powi(k)?))?;
    }
    for k in -8..=8 {
        s.guard(&(S::one() - q.powi(k)? * t.z.clone()))?;
    }
    for x in t.u.iter().chain(&t.v) {
        s.guard(x)?;
    }
    for a in -2i64..=2 {
        let qa = q.powi(a)?;
        guard_pairs(
            s,
            &t.u,
            &t.u,
            |x, y| x.clone() - qa.clone() * y.clone(),
            a == 0,
        )?;
        guard_pairs(
            s,
            &t.v,
            &t.v,
            |x, y| x.clone() - qa.clone() * y.clone(),
            a == 0,
        )?;
        guard_pairs(
            s,
            &t.v,
            &t.u,
            |x, y| x.clone() - qa.clone() * y.clone(),
            false,
        )?;
    }
    Ok(())
}

/// Elliptic-regime parameters (n = m) in general position.
pub fn draw_elliptic(s: &mut Sampler, n: usize, tr: &Truncation) -> Result<EllipticParams<C64>> {
    let e = EllipticParams {
        p: s.draw_p(),
        q: s.draw_nome(),
        lambda: s.draw(),
        z: s.draw(),
        u: s.draw_vec(n),
        v: s.draw_vec(n),
    };
    guard_elliptic(s, &e, tr)?;
    Ok(e)
}

fn guard_elliptic(s: &Sampler, e: &EllipticParams<C64>, tr: &Truncation) -> Result<()> {
    let th = |x: C64| -> Result<()> { s.guard(&theta(&x, &e.p, tr)?) };
    th(e.lambda)?;
    for a in -1i64..=1 {
        let qa = Scalar::powi(&e.q, a)?;
        for (i, x) in e.u.iter().enumerate() {
            for (j, y) in e.u.iter().enumerate() {
                if i != j {
                    th(qa * x / y)?;
                }
            }
            for y in &e.v {
                th(qa * x / y)?;
            }
        }
        for (i, x) in e.v.iter().enumerate() {
            for (j, y) in e.v.iter().enumerate() {
                if i != j {
                    th(qa * x / y)?;
                }
            }
        }
    }
    Ok(())
}

fn int_matrix<S: Scalar>(s: &mut Sampler, k: usize) -> Matrix<S> {
    loop {
        let entries: Vec<i64> = (0..k * k).map(|_| s.int(-5, 5)).collect();
        let mq: Matrix<Q> = Matrix::from_fn(k, k, |i, j| Q::from_i64(entries[i * k + j]));
        if !mq.det().is_zero() {
            return Matrix::from_fn(k, k, |i, j| S::from_i64(entries[i * k + j]));
        }
    }
}

fn distinct_ratios<S: Scalar>(s: &mut Sampler, k: usize) -> Vec<S> {
    let mut out: Vec<S> = Vec::with_capacity(k);
    while out.len() < k {
        let x: S = s.draw_ratio(-20, 20, 5);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Spectator parameters: small rational r, integer mixing matrices with entries in
/// [−5, 5] and nonzero determinant, Δ ∈ [2, 10], distinct small rational η̄.
pub fn draw_aux<S: Scalar>(s: &mut Sampler, size_f: usize, size_g: usize) -> AuxParams<S> {
    let r = s.draw_ratio(-5, 5, 5);
    let p_mat = int_matrix(s, size_f);
    let q_mat = int_matrix(s, size_g);
    let d = s.int(1, 5);
    let delta = S::from_ratio(s.int(2 * d, 10 * d), d);
    let eta_f = distinct_ratios(s, size_f);
    let eta_g = distinct_ratios(s, size_g);
    AuxParams {
        r,
        p_mat,
        q_mat,
        delta,
        eta_f,
        eta_g,
    }
}

/// Parameters of `regime` with |u| = n, |v| = m for the given point.
pub fn sample_params<S: Sample>(
    regime: Regime,
    config: &SamplingConfig,
    case_id: &str,
    point_index: usize,
    n: usize,
    m: usize,
) -> Result<Params<S>> {
    config.validate()?;
    let mut s = Sampler::new(
        point_seed(config.master_seed, case_id, point_index),
        S::KIND,
        config.tol_singular,
    );
    let tr = config.truncation;
    match regime {
        Regime::Rational => s.attempt(|s| draw_rational(s, n, m)).map(Params::Rational),
        Regime::Trig => s.attempt(|s| draw_trig(s, n, m, false)).map(Params::Trig),
        Regime::TrigLambda => s.attempt(|s| draw_trig(s, n, m, true)).map(Params::Trig),
        Regime::Elliptic => {
            if n != m {
                return Err(EvalError::Domain("elliptic parameters need n = m"));
            }
            let e = s.attempt(|s| draw_elliptic(s, n, &tr))?;
            let p: Params<C64> = Params::Elliptic(e);
            cast_params(p)
        }
    }
}

fn cast_params<S: Scalar>(p: Params<C64>) -> Result<Params<S>> {
    let c = |x: C64| {
        S::from_c64(x).ok_or(EvalError::Domain(
            "elliptic parameters need the complex field",
        ))
    };
    let cv = |x: Vec<C64>| x.into_iter().map(c).collect::<Result<Vec<S>>>();
    match p {
        Params::Elliptic(e) => Ok(Params::Elliptic(EllipticParams {
            p: c(e.p)?,
            q: c(e.q)?,
            lambda: c(e.lambda)?,
            z: c(e.z)?,
            u: cv(e.u)?,
            v: cv(e.v)?,
        })),
        _ => Err(EvalError::Domain("unexpected regime")),
    }
}

/// Which part of the suite a case belongs to (drives regime filtering).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Elliptic,
    Trig,
    Rational,
    General,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Elliptic => "elliptic",
            Group::Trig => "trig",
            Group::Rational => "rational",
            Group::General => "general",
        }
    }
}

/// Evaluation context handed to a runner.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub index: usize,
    /// Size bound already combined with the case's own bound.
    pub nmax: usize,
    pub trunc: Truncation,
}

pub type Runner<S> = Box<dyn Fn(&mut Sampler, &Ctx) -> Result<Vec<(S, S)>> + Send + Sync>;

pub struct Case {
    pub id: String,
    pub anchor: String,
    pub group: Group,
    /// Acceptance criterion the case belongs to, if any.
    pub criterion: Option<u8>,
    pub default_points: usize,
    pub size_cap: usize,
    /// Default match tolerance in the complex field.
    pub complex_tol: f64,
    exact: Option<Runner<Q>>,
    complex: Option<Runner<C64>>,
}

impl core::fmt::Debug for Case {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Case")
            .field("id", &self.id)
            .field("anchor", &self.anchor)
            .finish()
    }
}

impl Case {
    pub fn fields(&self) -> Vec<FieldKind> {
        let mut v = Vec::new();
        if self.exact.is_some() {
            v.push(FieldKind::Exact);
        }
        if self.complex.is_some() {
            v.push(FieldKind::Complex);
        }
        v
    }

    pub fn supports(&self, f: FieldKind) -> bool {
        match f {
            FieldKind::Exact => self.exact.is_some(),
            FieldKind::Complex => self.complex.is_some(),
        }
    }

    /// Exact when available, complex otherwise.
    pub fn default_field(&self) -> FieldKind {
        if self.exact.is_some() {
            FieldKind::Exact
        } else {
            FieldKind::Complex
        }
    }

    fn run_with<S: Sample>(runner: &Runner<S>, s: &mut Sampler, ctx: &Ctx) -> Result<PointValues> {
        let cmps = runner(s, ctx)?;
        let mut worst = PointValues {
            residual: 0.0,
            lhs: String::new(),
            rhs: String::new(),
            checks: cmps.len(),
            equal: true,
        };
        let mut first = true;
        for (a, b) in &cmps {
            let r = a.residual(b);
            worst.equal &= a == b;
            if first || r > worst.residual {
                worst.residual = r;
                worst.lhs = a.render();
                worst.rhs = b.render();
                first = false;
            }
        }
        Ok(worst)
    }
}

struct PointValues {
    residual: f64,
    lhs: String,
    rhs: String,
    checks: usize,
    equal: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointReport {
    pub index: usize,
    pub seed: u64,
    /// Largest residual over the comparisons made at this point.
    pub residual: f64,
    pub lhs: String,
    pub rhs: String,
    /// Number of (lhs, rhs) comparisons at this point.
    pub checks: usize,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub id: String,
    pub anchor: String,
    pub criterion: Option<u8>,
    pub field: FieldKind,
    pub tol: f64,
    pub points: Vec<PointReport>,
    pub max_rel_err: f64,
    pub pass: bool,
}

impl CaseReport {
    /// Assembles a report from point results, ordering them by index.
    pub fn assemble(case: &Case, field: FieldKind, tol: f64, mut points: Vec<PointReport>) -> Self {
        points.sort_by_key(|p| p.index);
        let max_rel_err = points.iter().map(|p| p.residual).fold(0.0, f64::max);
        let pass = !points.is_empty() && points.iter().all(|p| p.pass);
        CaseReport {
            id: case.id.clone(),
            anchor: case.anchor.clone(),
            criterion: case.criterion,
            field,
            tol,
            points,
            max_rel_err,
            pass,
        }
    }
}

/// Field a case runs in under `config`, or an error if it does not support the requested one.
pub fn resolve_field(case: &Case, config: &SamplingConfig) -> Result<FieldKind> {
    match config.field {
        Some(f) if case.supports(f) => Ok(f),
        Some(_) => Err(EvalError::Unavailable(
            "case does not support the requested field",
        )),
        None => Ok(case.default_field()),
    }
}

pub fn resolve_tol(case: &Case, field: FieldKind, config: &SamplingConfig) -> f64 {
    match field {
        FieldKind::Exact => 0.0,
        FieldKind::Complex => config.tol_match.unwrap_or(case.complex_tol),
    }
}

pub fn resolve_points(case: &Case, config: &SamplingConfig) -> usize {
    config.points.unwrap_or(case.default_points)
}

/// Evaluates one point of a case.
pub fn run_point(
    case: &Case,
    config: &SamplingConfig,
    field: FieldKind,
    index: usize,
) -> PointReport {
    let seed = point_seed(config.master_seed, &case.id, index);
    let tol = resolve_tol(case, field, config);
    let mut s = Sampler::new(seed, field, config.tol_singular);
    let ctx = Ctx {
        index,
        nmax: config.nmax.map_or(case.size_cap, |n| n.min(case.size_cap)),
        trunc: config.truncation,
    };
    let out = match field {
        FieldKind::Exact => match &case.exact {
            Some(r) => Case::run_with(r, &mut s, &ctx),
            None => Err(EvalError::Unavailable("no exact runner")),
        },
        FieldKind::Complex => match &case.complex {
            Some(r) => Case::run_with(r, &mut s, &ctx),
            None => Err(EvalError::Unavailable("no complex runner")),
        },
    };
    match out {
        Ok(v) => {
            let pass = match field {
                FieldKind::Exact => v.equal,
                FieldKind::Complex => v.residual <= tol,
            };
            PointReport {
                index,
                seed,
                residual: if field == FieldKind::Exact && v.equal {
                    0.0
                } else {
                    v.residual
                },
                lhs: v.lhs,
                rhs: v.rhs,
                checks: v.checks,
                pass,
                error: None,
            }
        }
        Err(e) => PointReport {
            index,
            seed,
            residual: f64::INFINITY,
            lhs: String::new(),
            rhs: String::new(),
            checks: 0,
            pass: false,
            error: Some(e.to_string()),
        },
    }
}

/// Runs every point of a case sequentially.
pub fn verify_case(case: &Case, config: &SamplingConfig) -> Result<CaseReport> {
    config.validate()?;
    let field = resolve_field(case, config)?;
    let tol = resolve_tol(case, field, config);
    let points = (0..resolve_points(case, config))
        .map(|i| run_point(case, config, field, i))
        .collect();
    Ok(CaseReport::assemble(case, field, tol, points))
}

pub fn find_case<'a>(cases: &'a [Case], id: &str) -> Option<&'a Case> {
    cases.iter().find(|c| c.id == id)
}

// ---------------------------------------------------------------------------
// Registry.

const TOL_ELLIPTIC: f64 = 1e-8;
const TOL_PLAIN: f64 = 1e-10;
/// Complex-field tolerance for the trig/rational determinant forms, whose
/// matrices are less well conditioned than the subset sums.
const TOL_DET_COMPLEX: f64 = 1e-8;

struct Builder(Vec<Case>);

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn add(
        &mut self,
        id: &str,
        anchor: &str,
        group: Group,
        criterion: Option<u8>,
        points: usize,
        size_cap: usize,
        complex_tol: f64,
        exact: Option<Runner<Q>>,
        complex: Option<Runner<C64>>,
    ) {
        self.0.push(Case {
            id: id.to_string(),
            anchor: anchor.to_string(),
            group,
            criterion,
            default_points: points,
            size_cap,
            complex_tol,
            exact,
            complex,
        });
    }
}

macro_rules! both {
    ($f:ident $(, $arg:expr)*) => {
        (
            Some(Box::new(move |s: &mut Sampler, c: &Ctx| $f::<Q>(s, c $(, $arg)*)) as Runner<Q>),
            Some(Box::new(move |s: &mut Sampler, c: &Ctx| $f::<C64>(s, c $(, $arg)*)) as Runner<C64>),
        )
    };
}

macro_rules! complex_only {
    ($f:ident $(, $arg:expr)*) => {
        (None, Some(Box::new(move |s: &mut Sampler, c: &Ctx| $f(s, c $(, $arg)*)) as Runner<C64>))
    };
}

macro_rules! exact_only {
    ($f:ident $(, $arg:expr)*) => {
        (Some(Box::new(move |s: &mut Sampler, c: &Ctx| $f::<Q>(s, c $(, $arg)*)) as Runner<Q>), None)
    };
}

/// Every registered case, sorted by id.
pub fn registry() -> Vec<Case> {
    let mut b = Builder(Vec::new());
    use Group::*;

    // Source identities.
    let (e, c) = both!(rational_identity);
    b.add(
        "rational.identity",
        "rational source identity F = G",
        Rational,
        Some(1),
        25,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = both!(difference_ops, Regime::Rational);
    b.add(
        "rational.difference_operators",
        "rational F, G via difference operators",
        Rational,
        None,
        10,
        4,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = both!(polynomial_form, Regime::Rational);
    b.add(
        "rational.polynomial_form",
        "rational P, Q clear the source denominators",
        Rational,
        None,
        10,
        4,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = both!(trig_identity);
    b.add(
        "trig.identity",
        "trigonometric source identity F = G",
        Trig,
        Some(2),
        25,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = both!(difference_ops, Regime::Trig);
    b.add(
        "trig.difference_operators",
        "trigonometric F, G via difference operators",
        Trig,
        None,
        10,
        4,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = both!(polynomial_form, Regime::Trig);
    b.add(
        "trig.polynomial_form",
        "trigonometric P, Q clear the source denominators",
        Trig,
        None,
        10,
        4,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = complex_only!(elliptic_identity);
    b.add(
        "elliptic.identity",
        "elliptic source identity F = G",
        Elliptic,
        Some(3),
        25,
        4,
        TOL_ELLIPTIC,
        e,
        c,
    );
    let (e, c) = complex_only!(elliptic_difference_ops);
    b.add(
        "elliptic.difference_operators",
        "elliptic F, G via difference operators",
        Elliptic,
        None,
        10,
        3,
        TOL_ELLIPTIC,
        e,
        c,
    );
    let (e, c) = complex_only!(elliptic_polynomial_form);
    b.add(
        "elliptic.polynomial_form",
        "elliptic P, Q clear the source denominators",
        Elliptic,
        None,
        10,
        4,
        TOL_ELLIPTIC,
        e,
        c,
    );

    // Determinant representations against subset sums.
    for (regime, group, name) in [
        (Regime::Elliptic, Elliptic, "elliptic"),
        (Regime::Trig, Trig, "trig"),
        (Regime::Rational, Rational, "rational"),
    ] {
        for fam in Family::ALL {
            if !detrep::available(regime, fam) || fam == Family::Ik {
                continue;
            }
            for side in [Side::F, Side::G] {
                let sname = if side == Side::F { "F" } else { "G" };
                let id = format!("det.{}.{}.{}", name, fam.name(), sname);
                let anchor = format!(
                    "{} determinant form of {} {} equals the subset sum",
                    fam.name(),
                    name,
                    sname
                );
                if regime == Regime::Elliptic {
                    let (e, c) = complex_only!(det_elliptic, fam, side);
                    b.add(&id, &anchor, group, Some(4), 10, 4, TOL_ELLIPTIC, e, c);
                } else {
                    let (e, c) = both!(det_plain, regime, fam, side);
                    b.add(&id, &anchor, group, Some(4), 10, 4, TOL_DET_COMPLEX, e, c);
                }
            }
        }
    }
    let (e, c) = both!(det_ik);
    b.add(
        "det.rational.ik",
        "Izergin-Korepin determinant equals P at z = 1",
        Rational,
        Some(4),
        10,
        4,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = complex_only!(det_elliptic_mpt_identity);
    b.add(
        "det.elliptic.mpt_identity",
        "elliptic MPT form of F equals MPT form of G",
        Elliptic,
        Some(4),
        25,
        4,
        TOL_ELLIPTIC,
        e,
        c,
    );
    for (regime, group, name) in [
        (Regime::Trig, Trig, "trig"),
        (Regime::Rational, Rational, "rational"),
    ] {
        let (e, c) = both!(det_mpt_r0, regime);
        b.add(
            &format!("det.{name}.mpt_r0"),
            &format!("{name} MPT forms at r = 0 equal the subset sums"),
            group,
            None,
            10,
            4,
            TOL_PLAIN,
            e,
            c,
        );
        let (e, c) = complex_only!(det_bs_large_delta, regime);
        b.add(
            &format!("det.{name}.bs_large_delta"),
            &format!("{name} BS form at Δ = 1e6 approaches the Δ → ∞ form"),
            group,
            Some(4),
            10,
            4,
            1e-3,
            e,
            c,
        );
    }
    let (e, c) = complex_only!(det_elliptic_tied, Family::Mpt);
    b.add(
        "det.elliptic.mpt_tied",
        "elliptic MPT forms with r = Λ∏u (F), Λ/∏v (G)",
        Elliptic,
        None,
        10,
        4,
        TOL_ELLIPTIC,
        e,
        c,
    );
    let (e, c) = complex_only!(det_elliptic_tied, Family::Bs);
    b.add(
        "det.elliptic.bs_tied",
        "elliptic BS forms with Δ = Λ∏u/∏η (F), Λ∏η/∏v (G)",
        Elliptic,
        None,
        10,
        4,
        TOL_ELLIPTIC,
        e,
        c,
    );

    // Determinant oracles.
    let (e, c) = complex_only!(frobenius);
    b.add(
        "linalg.frobenius",
        "elliptic Frobenius determinant",
        Elliptic,
        Some(5),
        25,
        5,
        1e-9,
        e,
        c,
    );
    let (e, c) = complex_only!(elliptic_vandermonde);
    b.add(
        "linalg.elliptic_vandermonde",
        "elliptic Vandermonde determinant",
        Elliptic,
        Some(5),
        25,
        5,
        1e-9,
        e,
        c,
    );
    let (e, c) = both!(trig_frobenius);
    b.add(
        "linalg.trig_frobenius",
        "Frobenius determinant at p = 0",
        Trig,
        Some(5),
        25,
        5,
        1e-9,
        e,
        c,
    );
    let (e, c) = both!(trig_vandermonde);
    b.add(
        "linalg.trig_vandermonde",
        "Vandermonde determinant at p = 0",
        Trig,
        Some(5),
        25,
        5,
        1e-9,
        e,
        c,
    );
    let (e, c) = both!(cauchy_vandermonde);
    b.add(
        "linalg.cauchy_vandermonde",
        "Cauchy-Vandermonde determinant",
        General,
        None,
        25,
        5,
        1e-9,
        e,
        c,
    );

    // Specializations.
    let (e, c) = complex_only!(elliptic_vanishing);
    b.add(
        "spec.elliptic.vanishing",
        "elliptic P, Q vanish at v_i = u_k, v_j = q u_k",
        Elliptic,
        Some(6),
        10,
        4,
        TOL_ELLIPTIC,
        e,
        c,
    );
    let (e, c) = complex_only!(elliptic_evaluation);
    b.add(
        "spec.elliptic.evaluation",
        "elliptic P, Q at v = {u_I, q u_J}",
        Elliptic,
        Some(6),
        10,
        4,
        TOL_ELLIPTIC,
        e,
        c,
    );
    let (e, c) = complex_only!(elliptic_quasi_periodicity);
    b.add(
        "spec.elliptic.quasi_periodicity",
        "elliptic P, Q under v_k → p v_k",
        Elliptic,
        Some(6),
        10,
        4,
        TOL_ELLIPTIC,
        e,
        c,
    );
    for (group, name, trig) in [(Trig, "trig", true), (Rational, "rational", false)] {
        let shift = if trig { "q u_k" } else { "u_k + c" };
        let (e, c) = exact_only!(plain_vanishing, trig, false);
        b.add(
            &format!("spec.{name}.vanishing"),
            &format!("{name} P, Q vanish at v_i = u_k, v_j = {shift}"),
            group,
            Some(6),
            10,
            5,
            TOL_PLAIN,
            e,
            c,
        );
        let (e, c) = both!(plain_evaluation, trig, false);
        b.add(
            &format!("spec.{name}.evaluation"),
            &format!(
                "{name} P, Q at v = {{u_I, {}}}",
                if trig { "q u_J" } else { "u_J + c" }
            ),
            group,
            Some(6),
            10,
            5,
            TOL_PLAIN,
            e,
            c,
        );
        let (e, c) = exact_only!(plain_vanishing, trig, true);
        b.add(
            &format!("spec.{name}.vanishing_m_gt_n"),
            &format!(
                "{name} P, Q vanish at u_i = v_k, u_j = {}",
                if trig { "v_k/q" } else { "v_k − c" }
            ),
            group,
            Some(6),
            10,
            5,
            TOL_PLAIN,
            e,
            c,
        );
        let (e, c) = both!(plain_evaluation, trig, true);
        b.add(
            &format!("spec.{name}.evaluation_m_gt_n"),
            &format!(
                "{name} P, Q at u = {{v_I, {}}}",
                if trig { "v_J/q" } else { "v_J − c" }
            ),
            group,
            Some(6),
            10,
            5,
            TOL_PLAIN,
            e,
            c,
        );
    }

    // Degenerations.
    let (e, c) = both!(extended_trig);
    b.add(
        "degeneration.extended_trig",
        "Λ-extended trigonometric identity",
        Trig,
        Some(7),
        10,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = both!(lambda_zero);
    b.add(
        "degeneration.lambda_zero",
        "Λ = 0 reduction of the extended identity",
        Trig,
        Some(7),
        10,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = complex_only!(elliptic_to_trig);
    b.add(
        "degeneration.elliptic_to_trig",
        "elliptic source function at p = 1e-6 against the trigonometric Λ-form",
        Elliptic,
        Some(7),
        10,
        4,
        1e-4,
        e,
        c,
    );
    let (e, c) = complex_only!(trig_to_rational);
    b.add(
        "degeneration.trig_to_rational",
        "trigonometric F at u = e^{εx}, q = e^{2εc'} against rational F, ε = 1e-4",
        Rational,
        Some(7),
        10,
        2,
        1e-3,
        e,
        c,
    );
    let (e, c) = complex_only!(trig_to_rational_rate);
    b.add(
        "degeneration.trig_to_rational_rate",
        "trig → rational discrepancy halves with ε (1e-4 → 5e-5)",
        Rational,
        Some(7),
        10,
        4,
        0.05,
        e,
        c,
    );

    // Symmetrization.
    let (e, c) = exact_only!(symmetrization);
    b.add(
        "lascoux.symmetrization",
        "rational symmetrization formula with divided differences",
        Rational,
        Some(8),
        10,
        6,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(symmetrization_n2);
    b.add(
        "lascoux.symmetrization_n2",
        "n = 2 symmetrization polynomial, coefficient by coefficient",
        Rational,
        Some(8),
        10,
        2,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(symmetrization_via_source);
    b.add(
        "lascoux.symmetrization_via_source",
        "symmetrization formula through the source polynomial at z = 1",
        Rational,
        None,
        10,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(explicit);
    b.add(
        "lascoux.explicit",
        "rational symmetrization of products of R(x)",
        Rational,
        Some(8),
        10,
        6,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(explicit_small);
    b.add(
        "lascoux.explicit_small",
        "closed forms of the product symmetrization at n = 1, 2",
        Rational,
        Some(8),
        10,
        2,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(explicit_via_source);
    b.add(
        "lascoux.explicit_via_source",
        "product symmetrization through the source polynomial",
        Rational,
        None,
        10,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(reduction);
    b.add(
        "lascoux.reduction",
        "reduction to the coefficient of f(u_1)",
        Rational,
        None,
        10,
        5,
        TOL_PLAIN,
        e,
        c,
    );

    // Wall-crossing.
    let (e, c) = exact_only!(wall_coeff);
    b.add(
        "wall.coefficient_identity",
        "coefficient identity between the two χ_t-genus sums",
        General,
        Some(9),
        10,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(wall_k);
    b.add(
        "wall.k_theoretic",
        "γ-filtered K-theoretic wall-crossing formula",
        General,
        Some(9),
        10,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(wall_k_symmetric);
    b.add(
        "wall.k_symmetric",
        "K-theoretic wall-crossing with symmetric q-numbers",
        General,
        None,
        10,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(wall_cohomological);
    b.add(
        "wall.cohomological",
        "cohomological wall-crossing formula",
        General,
        None,
        10,
        5,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(wall_hook);
    b.add(
        "wall.hook_identity",
        "hook product identity on ℓ, d ≤ 6",
        General,
        Some(9),
        10,
        6,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(wall_hook_binomial);
    b.add(
        "wall.hook_binomial",
        "cohomological hook sum equals C(d, k)",
        General,
        Some(9),
        1,
        6,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(wall_geometric);
    b.add(
        "wall.geometric_source",
        "χ_t-genus coefficients from the trigonometric source function",
        General,
        None,
        10,
        4,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = exact_only!(wall_prefactor);
    b.add(
        "wall.prefactor_expansion",
        "expansion of ∏(1 − t^{m−j} z)",
        General,
        None,
        10,
        6,
        TOL_PLAIN,
        e,
        c,
    );

    // q-identities.
    let (e, c) = both!(qid_binomial_theorem);
    b.add(
        "qid.binomial_theorem",
        "q-binomial theorem",
        General,
        Some(10),
        10,
        7,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = both!(qid_one_q);
    b.add(
        "qid.one_q",
        "subset sum of (u_i − u_j/q)/(u_i − u_j) is a q-binomial",
        General,
        Some(10),
        10,
        7,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = both!(qid_inversions);
    b.add(
        "qid.inversion_count",
        "q-binomial as an inversion-count sum",
        General,
        Some(10),
        10,
        7,
        TOL_PLAIN,
        e,
        c,
    );
    let (e, c) = both!(qid_rational_binomial);
    b.add(
        "qid.rational_binomial",
        "subset sum of (u_i − u_j + c)/(u_i − u_j) is C(n, ℓ)",
        General,
        Some(10),
        10,
        7,
        TOL_PLAIN,
        e,
        c,
    );

    let mut cases = b.0;
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    cases
}

// ---------------------------------------------------------------------------
// Runners.

type Cmps<S> = Result<Vec<(S, S)>>;

fn pairs(nmax: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=nmax).flat_map(move |n| (0..=nmax).map(move |m| (n, m)))
}

fn rational_identity<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        out.push(s.attempt(|s| {
            let p = Params::Rational(draw_rational::<S>(s, n, m)?);
            Ok((
                source_subset_sum(Regime::Rational, Side::F, &p, &c.trunc)?,
                source_subset_sum(Regime::Rational, Side::G, &p, &c.trunc)?,
            ))
        })?);
    }
    Ok(out)
}

fn trig_identity<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        out.push(s.attempt(|s| {
            let p = Params::Trig(draw_trig::<S>(s, n, m, false)?);
            Ok((
                source_subset_sum(Regime::Trig, Side::F, &p, &c.trunc)?,
                source_subset_sum(Regime::Trig, Side::G, &p, &c.trunc)?,
            ))
        })?);
    }
    Ok(out)
}

fn draw_plain<S: Sample>(s: &mut Sampler, regime: Regime, n: usize, m: usize) -> Result<Params<S>> {
    Ok(match regime {
        Regime::Rational => Params::Rational(draw_rational(s, n, m)?),
        Regime::Trig => Params::Trig(draw_trig(s, n, m, false)?),
        Regime::TrigLambda => Params::Trig(draw_trig(s, n, m, true)?),
        Regime::Elliptic => return Err(EvalError::Domain("not a plain regime")),
    })
}

fn difference_ops<S: Sample>(s: &mut Sampler, c: &Ctx, regime: Regime) -> Cmps<S> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let p = draw_plain::<S>(s, regime, n, m)?;
                Ok((
                    source_via_difference_ops(regime, side, &p, &c.trunc)?,
                    source_subset_sum(regime, side, &p, &c.trunc)?,
                ))
            })?);
        }
    }
    Ok(out)
}

fn polynomial_form<S: Sample>(s: &mut Sampler, c: &Ctx, regime: Regime) -> Cmps<S> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let p = draw_plain::<S>(s, regime, n, m)?;
                let mut clear = S::one();
                for vi in p.v() {
                    for uk in p.u() {
                        clear = clear
                            * match &p {
                                Params::Trig(t) => vi.clone() - t.q.clone() * uk.clone(),
                                Params::Rational(r) => vi.clone() - uk.clone() - r.c.clone(),
                                Params::Elliptic(_) => unreachable!(),
                            };
                    }
                }
                Ok((
                    source_polynomial_form(regime, side, &p, &c.trunc)?,
                    clear * source_subset_sum(regime, side, &p, &c.trunc)?,
                ))
            })?);
        }
    }
    Ok(out)
}

fn elliptic_identity(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        out.push(s.attempt(|s| {
            let p = Params::Elliptic(draw_elliptic(s, n, &c.trunc)?);
            Ok((
                source_subset_sum(Regime::Elliptic, Side::F, &p, &c.trunc)?,
                source_subset_sum(Regime::Elliptic, Side::G, &p, &c.trunc)?,
            ))
        })?);
    }
    Ok(out)
}

fn elliptic_difference_ops(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let p = Params::Elliptic(draw_elliptic(s, n, &c.trunc)?);
                Ok((
                    source_via_difference_ops(Regime::Elliptic, side, &p, &c.trunc)?,
                    source_subset_sum(Regime::Elliptic, side, &p, &c.trunc)?,
                ))
            })?);
        }
    }
    Ok(out)
}

fn elliptic_polynomial_form(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let e = draw_elliptic(s, n, &c.trunc)?;
                let mut clear = C64::one();
                for vi in &e.v {
                    for uk in &e.u {
                        clear = clear * theta(&(e.q * uk / vi), &e.p, &c.trunc)?;
                    }
                }
                let p = Params::Elliptic(e);
                Ok((
                    source_polynomial_form(Regime::Elliptic, side, &p, &c.trunc)?,
                    clear * source_subset_sum(Regime::Elliptic, side, &p, &c.trunc)?,
                ))
            })?);
        }
    }
    Ok(out)
}

fn det_elliptic(s: &mut Sampler, c: &Ctx, fam: Family, side: Side) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        let three = s.attempt(|s| {
            let p = Params::Elliptic(draw_elliptic(s, n, &c.trunc)?);
            let reference = source_subset_sum(Regime::Elliptic, side, &p, &c.trunc)?;
            let a1 = draw_aux::<C64>(s, n, n);
            let a2 = draw_aux::<C64>(s, n, n);
            let d1 = det_rep(Regime::Elliptic, fam, side, &p, &a1, &c.trunc)?;
            let d2 = det_rep(Regime::Elliptic, fam, side, &p, &a2, &c.trunc)?;
            Ok([(d1, reference), (d2, reference), (d1, d2)])
        })?;
        out.extend(three);
    }
    Ok(out)
}

fn det_plain<S: Sample>(
    s: &mut Sampler,
    c: &Ctx,
    regime: Regime,
    fam: Family,
    side: Side,
) -> Cmps<S> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        let three = s.attempt(|s| {
            let p = draw_plain::<S>(s, regime, n, m)?;
            let reference = source_subset_sum(regime, side, &p, &c.trunc)?;
            let a1 = draw_aux::<S>(s, m, n);
            let a2 = draw_aux::<S>(s, m, n);
            let d1 = det_rep(regime, fam, side, &p, &a1, &c.trunc)?;
            let d2 = det_rep(regime, fam, side, &p, &a2, &c.trunc)?;
            Ok([
                (d1.clone(), reference.clone()),
                (d2.clone(), reference),
                (d1, d2),
            ])
        })?;
        out.extend(three);
    }
    Ok(out)
}

fn det_ik<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        let two = s.attempt(|s| {
            let mut r = draw_rational::<S>(s, n, n)?;
            r.z = S::one();
            let ik = izergin_korepin(&r)?;
            let p = Params::Rational(r);
            let a = draw_aux::<S>(s, n, n);
            let via_det = det_rep(Regime::Rational, Family::Ik, Side::F, &p, &a, &c.trunc)?;
            Ok([
                (
                    ik.clone(),
                    source_polynomial_form(Regime::Rational, Side::F, &p, &c.trunc)?,
                ),
                (via_det, ik.clone()),
                (
                    ik,
                    source_polynomial_form(Regime::Rational, Side::G, &p, &c.trunc)?,
                ),
            ])
        })?;
        out.extend(two);
    }
    Ok(out)
}

fn det_elliptic_mpt_identity(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        out.push(s.attempt(|s| {
            let p = Params::Elliptic(draw_elliptic(s, n, &c.trunc)?);
            let a = draw_aux::<C64>(s, n, n);
            Ok((
                det_rep(Regime::Elliptic, Family::Mpt, Side::F, &p, &a, &c.trunc)?,
                det_rep(Regime::Elliptic, Family::Mpt, Side::G, &p, &a, &c.trunc)?,
            ))
        })?);
    }
    Ok(out)
}

fn det_mpt_r0<S: Sample>(s: &mut Sampler, c: &Ctx, regime: Regime) -> Cmps<S> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let p = draw_plain::<S>(s, regime, n, m)?;
                let mut a = draw_aux::<S>(s, m, n);
                a.r = S::zero();
                Ok((
                    det_rep(regime, Family::Mpt, side, &p, &a, &c.trunc)?,
                    source_subset_sum(regime, side, &p, &c.trunc)?,
                ))
            })?);
        }
    }
    Ok(out)
}

fn det_bs_large_delta(s: &mut Sampler, c: &Ctx, regime: Regime) -> Cmps<C64> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let p = draw_plain::<C64>(s, regime, n, m)?;
                let mut a = draw_aux::<C64>(s, m, n);
                a.delta = C64::new(1e6, 0.0);
                Ok((
                    det_rep(regime, Family::Bs, side, &p, &a, &c.trunc)?,
                    det_rep(regime, Family::BsLimit, side, &p, &a, &c.trunc)?,
                ))
            })?);
        }
    }
    Ok(out)
}

fn det_elliptic_tied(s: &mut Sampler, c: &Ctx, fam: Family) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let e = draw_elliptic(s, n, &c.trunc)?;
                let mut a = draw_aux::<C64>(s, n, n);
                let pu = product(e.u.iter().cloned());
                let pv = product(e.v.iter().cloned());
                match (fam, side) {
                    (Family::Mpt, Side::F) => a.r = e.lambda * pu,
                    (Family::Mpt, Side::G) => a.r = div(e.lambda, &pv)?,
                    (_, Side::F) => {
                        a.delta = div(e.lambda * pu, &product(a.eta_f.iter().cloned()))?
                    }
                    (_, Side::G) => {
                        a.delta = div(e.lambda * product(a.eta_g.iter().cloned()), &pv)?
                    }
                }
                let p = Params::Elliptic(e);
                Ok((
                    det_rep(Regime::Elliptic, fam, side, &p, &a, &c.trunc)?,
                    source_subset_sum(Regime::Elliptic, side, &p, &c.trunc)?,
                ))
            })?);
        }
    }
    Ok(out)
}

fn frobenius(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        out.push(s.attempt(|s| {
            let e = draw_elliptic(s, n, &c.trunc)?;
            let m = linalg::frobenius_matrix(&e.u, &e.v, &e.lambda, &e.p, &c.trunc)?;
            Ok((
                m.det(),
                linalg::frobenius_closed(&e.u, &e.v, &e.lambda, &e.p, &c.trunc)?,
            ))
        })?);
    }
    Ok(out)
}

fn elliptic_vandermonde(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 1..=c.nmax {
        out.push(s.attempt(|s| {
            let e = draw_elliptic(s, n, &c.trunc)?;
            let r: C64 = s.draw();
            linalg::elliptic_vandermonde_check(&e.u, &e.p, &r, &c.trunc)
        })?);
    }
    Ok(out)
}

fn trig_frobenius<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        out.push(s.attempt(|s| {
            let t = draw_trig::<S>(s, n, n, true)?;
            let l = t.lambda.clone().unwrap();
            s.guard(&(S::one() - l.clone()))?;
            let m = linalg::frobenius_matrix(&t.u, &t.v, &l, &S::zero(), &c.trunc)?;
            Ok((m.det(), linalg::trig_frobenius_closed(&t.u, &t.v, &l)?))
        })?);
    }
    Ok(out)
}

fn trig_vandermonde<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 1..=c.nmax {
        out.push(s.attempt(|s| {
            let u: Vec<S> = s.draw_vec(n);
            let r: S = s.draw();
            guard_pairs(s, &u, &u, |x, y| x.clone() - y.clone(), true)?;
            linalg::elliptic_vandermonde_check(&u, &S::zero(), &r, &c.trunc)
        })?);
    }
    Ok(out)
}

fn cauchy_vandermonde<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        for m in 0..=n {
            out.push(s.attempt(|s| {
                let r = draw_rational::<S>(s, n, m)?;
                Ok((
                    linalg::cauchy_vandermonde_matrix(&r.u, &r.v)?.det(),
                    linalg::cauchy_vandermonde_closed(&r.u, &r.v)?,
                ))
            })?);
        }
    }
    Ok(out)
}

fn distinct_pair(s: &mut Sampler, n: usize) -> (usize, usize) {
    let i = s.index(n);
    let mut j = s.index(n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Random disjoint I, J ⊆ [n] with |I| + |J| = size, and a random arrangement.
fn random_split(s: &mut Sampler, n: usize, size: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let perm = s.permutation(n);
    let chosen = &perm[..size];
    let nj = s.int(0, size as i64) as usize;
    let i_set = chosen[nj..].to_vec();
    let j_set = chosen[..nj].to_vec();
    (i_set, j_set, s.permutation(size))
}

fn elliptic_vanishing(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 2..=c.nmax {
        let (a, b) = s.attempt(|s| {
            let e = draw_elliptic(s, n, &c.trunc)?;
            let (i, j) = distinct_pair(s, n);
            let k = s.index(n);
            spec::elliptic_vanishing(&e, i, j, k, &c.trunc)
        })?;
        out.push((a, C64::zero()));
        out.push((b, C64::zero()));
    }
    Ok(out)
}

fn elliptic_evaluation(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        let (a, b, cl) = s.attempt(|s| {
            let e = draw_elliptic(s, n, &c.trunc)?;
            let (i_set, j_set, order) = random_split(s, n, n);
            spec::elliptic_evaluation(&e, &i_set, &j_set, &order, &c.trunc)
        })?;
        out.push((a, cl));
        out.push((b, cl));
    }
    Ok(out)
}

fn elliptic_quasi_periodicity(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for n in 1..=c.nmax {
        let (a, b, x, y) = s.attempt(|s| {
            let e = draw_elliptic(s, n, &c.trunc)?;
            let k = s.index(n);
            spec::elliptic_quasi_periodicity(&e, k, &c.trunc)
        })?;
        out.push((a, b));
        out.push((x, y));
    }
    Ok(out)
}

fn plain_vanishing<S: Sample>(s: &mut Sampler, c: &Ctx, trig: bool, inverse: bool) -> Cmps<S> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        let ok = if inverse {
            n >= 2 && m >= 1
        } else {
            m >= 2 && n >= 1
        };
        if !ok {
            continue;
        }
        let (a, b) = s.attempt(|s| {
            let (i, j) = distinct_pair(s, if inverse { n } else { m });
            let k = s.index(if inverse { m } else { n });
            if trig {
                let t = draw_trig::<S>(s, n, m, false)?;
                if inverse {
                    spec::trig_vanishing_u(&t, i, j, k)
                } else {
                    spec::trig_vanishing(&t, i, j, k)
                }
            } else {
                let r = draw_rational::<S>(s, n, m)?;
                if inverse {
                    spec::rational_vanishing_u(&r, i, j, k)
                } else {
                    spec::rational_vanishing(&r, i, j, k)
                }
            }
        })?;
        out.push((a, S::zero()));
        out.push((b, S::zero()));
    }
    Ok(out)
}

fn plain_evaluation<S: Sample>(s: &mut Sampler, c: &Ctx, trig: bool, inverse: bool) -> Cmps<S> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        if (inverse && n >= m) || (!inverse && m > n) {
            continue;
        }
        let (a, b, cl) = s.attempt(|s| {
            let (i_set, j_set, order) = if inverse {
                random_split(s, m, n)
            } else {
                random_split(s, n, m)
            };
            if trig {
                let t = draw_trig::<S>(s, n, m, false)?;
                if inverse {
                    spec::trig_evaluation_u(&t, &i_set, &j_set, &order)
                } else {
                    spec::trig_evaluation(&t, &i_set, &j_set, &order)
                }
            } else {
                let r = draw_rational::<S>(s, n, m)?;
                if inverse {
                    spec::rational_evaluation_u(&r, &i_set, &j_set, &order)
                } else {
                    spec::rational_evaluation(&r, &i_set, &j_set, &order)
                }
            }
        })?;
        out.push((a, cl.clone()));
        out.push((b, cl));
    }
    Ok(out)
}

fn extended_trig<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        for m in 0..=n {
            out.push(s.attempt(|s| {
                let t = draw_trig::<S>(s, n, m, true)?;
                degeneration::extended_trig(&t.u, &t.v, &t.q, &t.z, t.lambda.as_ref().unwrap())
            })?);
        }
    }
    Ok(out)
}

fn lambda_zero<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        for m in 0..=n {
            out.push(s.attempt(|s| {
                let t = draw_trig::<S>(s, n, m, false)?;
                degeneration::lambda_zero(&t.u, &t.v, &t.q, &t.z)
            })?);
        }
    }
    Ok(out)
}

/// Moduli used by the limit cases, where the discrepancy grows with the spread of the variables.
const LIMIT_MODULUS: (f64, f64) = (0.5, 2.0);

fn draw_limit_trig(s: &mut Sampler, n: usize, m: usize) -> Result<TrigParams<C64>> {
    let (lo, hi) = LIMIT_MODULUS;
    let q = if s.coin() {
        s.draw_polar(0.5, 0.8)
    } else {
        s.draw_polar(1.25, 2.0)
    };
    let z = s.draw_polar(lo, hi);
    let lambda = Some(s.draw_polar(lo, hi));
    let u = (0..n).map(|_| s.draw_polar(lo, hi)).collect();
    let v = (0..m).map(|_| s.draw_polar(lo, hi)).collect();
    let t = TrigParams { q, z, u, v, lambda };
    guard_trig(s, &t)?;
    Ok(t)
}

fn elliptic_to_trig(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    let p = C64::new(1e-6, 0.0);
    for n in 0..=c.nmax {
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let t = draw_limit_trig(s, n, n)?;
                let l = t.lambda.unwrap();
                degeneration::elliptic_to_trig(side, &t.u, &t.v, &t.q, &t.z, &l, &p, &c.trunc)
            })?);
        }
    }
    Ok(out)
}

fn draw_limit_params(s: &mut Sampler, n: usize, m: usize) -> Result<RatParams<C64>> {
    let (lo, hi) = LIMIT_MODULUS;
    let c = s.draw_polar(lo, hi) * 2.0;
    let z = s.draw_polar(lo, hi);
    let u = (0..n).map(|_| s.draw_polar(lo, hi)).collect();
    let v = (0..m).map(|_| s.draw_polar(lo, hi)).collect();
    let r = RatParams { c, z, u, v };
    guard_rational(s, &r)?;
    Ok(r)
}

fn trig_to_rational(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let r = draw_limit_params(s, n, m)?;
                degeneration::trig_to_rational(side, &r.u, &r.v, r.c / 2.0, r.z, 1e-4)
            })?);
        }
    }
    Ok(out)
}

/// Compares the discrepancy at ε/2 with half the discrepancy at ε. Sizes with
/// m = n + 1 are skipped: there the first-order term vanishes identically.
fn trig_to_rational_rate(s: &mut Sampler, c: &Ctx) -> Cmps<C64> {
    let mut out = Vec::new();
    for (n, m) in pairs(c.nmax) {
        if n == 0 || m == 0 || m == n + 1 {
            continue;
        }
        for side in [Side::F, Side::G] {
            out.push(s.attempt(|s| {
                let r = draw_limit_params(s, n, m)?;
                let (a1, b1) =
                    degeneration::trig_to_rational(side, &r.u, &r.v, r.c / 2.0, r.z, 1e-4)?;
                let (a2, b2) =
                    degeneration::trig_to_rational(side, &r.u, &r.v, r.c / 2.0, r.z, 5e-5)?;
                let (d1, d2) = ((a1 - b1).norm(), (a2 - b2).norm());
                if d2 == 0.0 {
                    return Err(EvalError::Singular);
                }
                Ok((C64::new(d1 / d2, 0.0), C64::new(2.0, 0.0)))
            })?);
        }
    }
    Ok(out)
}

fn draw_sym<S: Sample>(s: &mut Sampler, n: usize) -> Result<RatParams<S>> {
    draw_rational(s, n, n)
}

fn symmetrization<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 2..=c.nmax {
        let deg = (c.index + n) % (n + 1);
        out.push(s.attempt(|s| {
            let r = draw_sym::<S>(s, n)?;
            let mut coeffs: Vec<S> = s.draw_vec(deg + 1);
            if deg == 0 {
                coeffs[0] = s.draw();
            }
            let f = UniPoly::new(coeffs)?;
            sym::lascoux_theorem3(&r.u, &r.v, &r.c, &f)
        })?);
    }
    Ok(out)
}

fn symmetrization_n2<S: Sample>(s: &mut Sampler, _c: &Ctx) -> Cmps<S> {
    s.attempt(|s| {
        let r = draw_sym::<S>(s, 2)?;
        let mut out = Vec::new();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let cubic = sym::symmetrization_n2_cubic(&r.u, &r.v);
        let cubic_at = |x: &S| {
            cubic
                .iter()
                .rev()
                .fold(S::zero(), |acc, a| acc * x.clone() + a.clone())
        };
        let mut k = 1i64;
        while xs.len() < 12 {
            let x = S::from_ratio(k, 3);
            k += 1;
            let mut rx = r.clone();
            rx.c = x.clone();
            if guard_rational(s, &rx).is_err() {
                continue;
            }
            let f = sym::symmetrization_n2_factors(&r.u, &r.v, &x)?;
            let target = cubic_at(&x);
            out.push((f[0].clone(), target.clone()));
            out.push((f[1].clone(), target));
            xs.push(x);
            ys.push(f[2].clone());
        }
        let got = sym::interpolate(&xs, &ys)?;
        for (i, g) in got.into_iter().enumerate() {
            out.push((g, cubic.get(i).cloned().unwrap_or_else(S::zero)));
        }
        Ok(out)
    })
}

fn symmetrization_via_source<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 2..=c.nmax {
        let deg = (c.index + n) % (n + 1);
        out.push(s.attempt(|s| {
            let r = draw_sym::<S>(s, n)?;
            let f = UniPoly::new(s.draw_vec(deg + 1))?;
            let (_, rhs) = sym::lascoux_theorem3(&r.u, &r.v, &r.c, &f)?;
            Ok((
                sym::lascoux_symmetrization_via_source(&r.u, &r.v, &r.c, &f)?,
                rhs,
            ))
        })?);
    }
    Ok(out)
}

fn explicit<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 1..=c.nmax {
        out.push(s.attempt(|s| {
            let r = draw_sym::<S>(s, n)?;
            sym::lascoux_theorem4(&r.u, &r.v, &r.c)
        })?);
    }
    Ok(out)
}

fn explicit_small<S: Sample>(s: &mut Sampler, _c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    out.push(s.attempt(|s| {
        let r = draw_sym::<S>(s, 1)?;
        let (lhs, _) = sym::lascoux_theorem4(&r.u, &r.v, &r.c)?;
        Ok((lhs, div(-r.c.clone(), &(r.u[0].clone() - r.v[0].clone()))?))
    })?);
    out.push(s.attempt(|s| {
        let r = draw_sym::<S>(s, 2)?;
        let (lhs, _) = sym::lascoux_theorem4(&r.u, &r.v, &r.c)?;
        Ok((lhs, sym::explicit_n2_closed(&r.u, &r.v, &r.c)?))
    })?);
    Ok(out)
}

fn explicit_via_source<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 1..=c.nmax {
        out.push(s.attempt(|s| {
            let r = draw_sym::<S>(s, n)?;
            let (lhs, _) = sym::lascoux_theorem4(&r.u, &r.v, &r.c)?;
            Ok((sym::lascoux_explicit_via_source(&r.u, &r.v, &r.c)?, lhs))
        })?);
    }
    Ok(out)
}

fn reduction<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 2..=c.nmax {
        out.push(s.attempt(|s| {
            let r = draw_sym::<S>(s, n)?;
            sym::reduction_identity(&r.u, &r.v, &r.c)
        })?);
    }
    Ok(out)
}

const WALL_LMAX: usize = 4;

fn draw_wall<S: Sample>(s: &mut Sampler, n: usize, m: usize) -> Result<(S, Vec<S>, Vec<S>)> {
    let t = draw_trig::<S>(s, n, m, false)?;
    Ok((t.q, t.u, t.v))
}

fn wall_loop<S: Sample>(
    s: &mut Sampler,
    c: &Ctx,
    f: impl Fn(usize, &S, &[S], &[S]) -> Result<(S, S)>,
) -> Cmps<S> {
    let mut out = Vec::new();
    for m in 0..=c.nmax {
        for n in 0..=m {
            let (t, u, v) = s.attempt(|s| draw_wall::<S>(s, n, m))?;
            for l in 0..=WALL_LMAX {
                out.push(f(l, &t, &u, &v)?);
            }
        }
    }
    Ok(out)
}

fn wall_coeff<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    wall_loop(s, c, |l, t, u, v| wall::verify_coeff_identity(l, t, u, v))
}

fn wall_k<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    wall_loop(s, c, |l, t, u, v| {
        wall::verify_wallcrossing_k(l, t, u, v, true)
    })
}

fn wall_k_symmetric<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    wall_loop(s, c, |l, t, u, v| {
        wall::verify_wallcrossing_k_symmetric(l, t, u, v)
    })
}

fn wall_cohomological<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for m in 0..=c.nmax {
        for n in 0..=m {
            let r = s.attempt(|s| draw_rational::<S>(s, n, m))?;
            for l in 0..=WALL_LMAX {
                out.push(wall::verify_wallcrossing_cohomological(
                    l, &r.c, &r.u, &r.v,
                )?);
            }
        }
    }
    Ok(out)
}

fn wall_hook<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let st: S = s.attempt(|s| {
        let t = s.draw_nome::<S>();
        s.guard(&(S::one() - t.clone()))?;
        s.guard(&(S::one() + t.clone()))?;
        Ok(t)
    })?;
    let mut out = Vec::new();
    for l in 0..=c.nmax {
        for d in 0..=c.nmax {
            for k in 0..=l.min(d) {
                out.push(wall::hook_product_identity(l, k, d, &st)?);
            }
        }
    }
    Ok(out)
}

fn wall_hook_binomial<S: Sample>(_s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for l in 0..=c.nmax {
        for d in 0..=c.nmax {
            for k in 0..=l.min(d) {
                out.push(wall::hook_cohomological::<S>(l, k, d)?);
            }
        }
    }
    Ok(out)
}

/// Coefficients of (−z)^ℓ of trig F^{(z t^{m−1})}(u | v/t) at q = 1/t, by interpolation in z.
fn wall_geometric<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for m in 0..=c.nmax {
        for n in 0..=m {
            let cmps = s.attempt(|s| {
                let (t, u, v) = draw_wall::<S>(s, n, m)?;
                let tm = t.powi(m as i64 - 1)?;
                let vs: Vec<S> = v
                    .iter()
                    .map(|x| div(x.clone(), &t))
                    .collect::<Result<_>>()?;
                let q = t.powi(-1)?;
                let mut xs = Vec::new();
                let mut ys = Vec::new();
                for j in 0..=m {
                    let z = S::from_i64(j as i64 + 2);
                    let tp = TrigParams {
                        q: q.clone(),
                        z: z.clone() * tm.clone(),
                        u: u.clone(),
                        v: vs.clone(),
                        lambda: None,
                    };
                    ys.push(source_subset_sum(
                        Regime::Trig,
                        Side::F,
                        &Params::Trig(tp),
                        &c.trunc,
                    )?);
                    xs.push(z);
                }
                let coeffs = sym::interpolate(&xs, &ys)?;
                let mut cm = Vec::new();
                for (l, a) in coeffs.into_iter().enumerate() {
                    cm.push((
                        sign::<S>(l) * a,
                        wall::geometric_coefficient(l, &t, &u, &v)?,
                    ));
                }
                Ok(cm)
            })?;
            out.extend(cmps);
        }
    }
    Ok(out)
}

fn wall_prefactor<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let t: S = s.draw_nome();
    let mut out = Vec::new();
    for m in 0..=c.nmax {
        for n in 0..=m {
            // ∏_{j=1}^{m−n}(1 − t^{m−j} z) as coefficients in (−z).
            let mut poly = vec![S::one()];
            for j in 1..=m - n {
                let a = t.powi((m - j) as i64)?;
                let mut next = vec![S::zero(); poly.len() + 1];
                for (k, x) in poly.iter().enumerate() {
                    next[k] = next[k].clone() + x.clone();
                    next[k + 1] = next[k + 1].clone() + a.clone() * x.clone();
                }
                poly = next;
            }
            for (a, b) in poly
                .into_iter()
                .zip(wall::geometric_prefactor_coeffs(n, m, &t)?)
            {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

fn qid_nome<S: Sample>(s: &mut Sampler) -> Result<S> {
    s.attempt(|s| {
        let q = s.draw_nome::<S>();
        for k in 1..=8 {
            s.guard(&(S::one() - q.powi(k)?))?;
        }
        Ok(q)
    })
}

fn qid_binomial_theorem<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let q = qid_nome::<S>(s)?;
    let z: S = s.draw();
    (0..=c.nmax)
        .map(|n| qidentity::qbinomial_theorem(n, &q, &z))
        .collect()
}

fn qid_one_q<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        let (q, u) = s.attempt(|s| {
            let q = qid_nome::<S>(s)?;
            let u: Vec<S> = s.draw_vec(n);
            guard_pairs(s, &u, &u, |x, y| x.clone() - y.clone(), true)?;
            Ok((q, u))
        })?;
        for l in 0..=n {
            out.push(qidentity::one_q_identity(&u, l, &q)?);
        }
    }
    Ok(out)
}

fn qid_inversions<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let q = qid_nome::<S>(s)?;
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        for l in 0..=n {
            out.push(qidentity::inversion_count_identity(n, l, &q)?);
        }
    }
    Ok(out)
}

fn qid_rational_binomial<S: Sample>(s: &mut Sampler, c: &Ctx) -> Cmps<S> {
    let mut out = Vec::new();
    for n in 0..=c.nmax {
        let (cc, u) = s.attempt(|s| {
            let cc: S = s.draw();
            let u: Vec<S> = s.draw_vec(n);
            guard_pairs(s, &u, &u, |x, y| x.clone() - y.clone(), true)?;
            Ok((cc, u))
        })?;
        for l in 0..=n {
            out.push(qidentity::rational_binomial(&u, l, &cc)?);
        }
    }
    Ok(out)
}
