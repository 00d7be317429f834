//! Source functions F/G as subset sums, their polynomial versions P/Q, and
//! the difference-operator expansions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{EvalError, Result};
use crate::field::{div, product, sign, Scalar};
use crate::linalg::{frobenius_matrix, vandermonde};
use crate::special::{qpoch_n, theta, Truncation};

/// Largest index set a subset sum will enumerate.
pub const MAX_SUBSET: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct EllipticParams<S> {
    pub p: S,
    pub q: S,
    pub lambda: S,
    pub z: S,
    pub u: Vec<S>,
    pub v: Vec<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrigParams<S> {
    pub q: S,
    pub z: S,
    pub u: Vec<S>,
    pub v: Vec<S>,
    pub lambda: Option<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatParams<S> {
    pub c: S,
    pub z: S,
    pub u: Vec<S>,
    pub v: Vec<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Params<S> {
    Elliptic(EllipticParams<S>),
    Trig(TrigParams<S>),
    Rational(RatParams<S>),
}

impl<S: Scalar> Params<S> {
    pub fn u(&self) -> &[S] {
        match self {
            Params::Elliptic(e) => &e.u,
            Params::Trig(t) => &t.u,
            Params::Rational(r) => &r.u,
        }
    }

    pub fn v(&self) -> &[S] {
        match self {
            Params::Elliptic(e) => &e.v,
            Params::Trig(t) => &t.v,
            Params::Rational(r) => &r.v,
        }
    }

    pub fn z(&self) -> &S {
        match self {
            Params::Elliptic(e) => &e.z,
            Params::Trig(t) => &t.z,
            Params::Rational(r) => &r.z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    Elliptic,
    Trig,
    /// The trigonometric sum carrying the extra (1 − q^{|K|}Λ) weight.
    TrigLambda,
    Rational,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Elliptic => "elliptic",
            Regime::Trig => "trig",
            Regime::TrigLambda => "trig_lambda",
            Regime::Rational => "rational",
        }
    }
}

/// F (left, v-side sum) or G (right, u-side sum). For polynomial forms F stands for P and G for Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    F,
    G,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_SUBSET {
        Err(EvalError::SizeCap {
            size: n,
            cap: MAX_SUBSET,
        })
    } else {
        Ok(())
    }
}

/// Σ_K w[|K|] ∏_{i∈K, j∉K} a[i][j] ∏_{i∈K} b_in[i] ∏_{j∉K} b_out[j].
pub(crate) fn subset_kernel<S: Scalar>(
    a: &[Vec<S>],
    b_in: &[S],
    b_out: Option<&[S]>,
    w: &[S],
) -> S {
    let n = b_in.len();
    let mut total = S::zero();
    for mask in 0u32..(1u32 << n) {
        let k = mask.count_ones() as usize;
        if w[k].is_zero() {
            continue;
        }
        let mut t = w[k].clone();
        for i in 0..n {
            if mask >> i & 1 == 1 {
                t = t * b_in[i].clone();
                for j in 0..n {
                    if mask >> j & 1 == 0 {
                        t = t * a[i][j].clone();
                    }
                }
            } else if let Some(bo) = b_out {
                t = t * bo[i].clone();
            }
        }
        total = total + t;
    }
    total
}

fn pair_matrix<S: Scalar>(
    n: usize,
    mut f: impl FnMut(usize, usize) -> Result<S>,
) -> Result<Vec<Vec<S>>> {
    let mut a = vec![vec![S::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                a[i][j] = f(i, j)?;
            }
        }
    }
    Ok(a)
}

fn weights<S: Scalar>(
    n: usize,
    x: &S,
    q: Option<&S>,
    extra: impl Fn(usize) -> Result<S>,
) -> Result<Vec<S>> {
    let mut w = Vec::with_capacity(n + 1);
    let mut xp = S::one();
    let mut qp = S::one();
    let mut qk = S::one();
    for k in 0..=n {
        w.push(sign::<S>(k) * xp.clone() * qp.clone() * extra(k)?);
        xp = xp * x.clone();
        if let Some(q) = q {
            // q^{k(k−1)/2} → q^{(k+1)k/2}
            qp = qp * qk.clone();
            qk = qk * q.clone();
        }
    }
    Ok(w)
}

/// (1−z)^{m−n}, rejecting z = 1 when n > m.
pub fn one_minus_z_pow<S: Scalar>(z: &S, n: usize, m: usize) -> Result<S> {
    (S::one() - z.clone()).powi(m as i64 - n as i64)
}

fn lambda_weight<S: Scalar>(t: &TrigParams<S>, k: usize) -> Result<S> {
    let l = t
        .lambda
        .clone()
        .ok_or(EvalError::Domain("trig_lambda needs Λ"))?;
    Ok(S::one() - t.q.powi(k as i64)? * l)
}

fn elliptic_x<S: Scalar>(e: &EllipticParams<S>) -> Result<S> {
    div(
        e.lambda.clone() * product(e.u.iter().cloned()),
        &product(e.v.iter().cloned()),
    )
}

fn elliptic_weights<S: Scalar>(e: &EllipticParams<S>, tr: &Truncation) -> Result<Vec<S>> {
    let lx = elliptic_x(e)?;
    weights(e.u.len(), &e.z, Some(&e.q), |k| {
        theta(&(e.q.powi(k as i64)? * lx.clone()), &e.p, tr)
    })
}

fn elliptic_dims<S: Scalar>(e: &EllipticParams<S>) -> Result<usize> {
    if e.u.len() != e.v.len() {
        return Err(EvalError::Domain(
            "elliptic source functions need |u| = |v|",
        ));
    }
    check_size(e.u.len())?;
    Ok(e.u.len())
}

/// The literal subset-sum definition of F or G.
pub fn source_subset_sum<S: Scalar>(
    regime: Regime,
    side: Side,
    params: &Params<S>,
    tr: &Truncation,
) -> Result<S> {
    subset_sum_impl(regime, side, params, tr, false)
}

/// P or Q: the subset sums with denominators (θ(qu_k/v_i;p), v_i−qu_k, v_i−u_k−c) cleared.
pub fn source_polynomial_form<S: Scalar>(
    regime: Regime,
    side: Side,
    params: &Params<S>,
    tr: &Truncation,
) -> Result<S> {
    subset_sum_impl(regime, side, params, tr, true)
}

fn subset_sum_impl<S: Scalar>(
    regime: Regime,
    side: Side,
    params: &Params<S>,
    tr: &Truncation,
    poly: bool,
) -> Result<S> {
    match (regime, params) {
        (Regime::Elliptic, Params::Elliptic(e)) => elliptic_sum(e, side, tr, poly),
        (Regime::Trig, Params::Trig(t)) => trig_sum(t, side, poly, false),
        (Regime::TrigLambda, Params::Trig(t)) => trig_sum(t, side, poly, true),
        (Regime::Rational, Params::Rational(r)) => rational_sum(r, side, poly),
        _ => Err(EvalError::Domain("parameters do not match the regime")),
    }
}

fn elliptic_sum<S: Scalar>(
    e: &EllipticParams<S>,
    side: Side,
    tr: &Truncation,
    poly: bool,
) -> Result<S> {
    let n = elliptic_dims(e)?;
    let (p, q) = (&e.p, &e.q);
    let th = |x: S| theta(&x, p, tr);
    let w = elliptic_weights(e, tr)?;
    let (x, y) = match side {
        Side::F => (&e.v, &e.u),
        Side::G => (&e.u, &e.v),
    };
    let a = pair_matrix(n, |i, j| match side {
        Side::F => div(
            th(div(q.clone() * x[j].clone(), &x[i])?)?,
            &th(div(x[j].clone(), &x[i])?)?,
        ),
        Side::G => div(
            th(div(q.clone() * x[i].clone(), &x[j])?)?,
            &th(div(x[i].clone(), &x[j])?)?,
        ),
    })?;
    // num[i] = ∏_k θ(u/v), den[i] = ∏_k θ(qu/v) for the variable indexed by i.
    let mut num = Vec::with_capacity(n);
    let mut den = Vec::with_capacity(n);
    for i in 0..n {
        let (mut a1, mut a2) = (S::one(), S::one());
        for k in 0..n {
            let (uu, vv) = match side {
                Side::F => (&y[k], &x[i]),
                Side::G => (&x[i], &y[k]),
            };
            a1 = a1 * th(div(uu.clone(), vv)?)?;
            a2 = a2 * th(div(q.clone() * uu.clone(), vv)?)?;
        }
        num.push(a1);
        den.push(a2);
    }
    if poly {
        Ok(subset_kernel(&a, &num, Some(&den), &w))
    } else {
        let b = num
            .into_iter()
            .zip(den.iter())
            .map(|(a, d)| div(a, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(subset_kernel(&a, &b, None, &w))
    }
}

fn trig_sum<S: Scalar>(t: &TrigParams<S>, side: Side, poly: bool, with_lambda: bool) -> Result<S> {
    let (n, m) = (t.u.len(), t.v.len());
    let q = &t.q;
    let extra = |k: usize| {
        if with_lambda {
            lambda_weight(t, k)
        } else {
            Ok(S::one())
        }
    };
    match side {
        Side::F => {
            check_size(m)?;
            let v = &t.v;
            let a = pair_matrix(m, |i, j| {
                div(
                    v[i].clone() - q.clone() * v[j].clone(),
                    &(v[i].clone() - v[j].clone()),
                )
            })?;
            let num: Vec<S> = v
                .iter()
                .map(|vi| product(t.u.iter().map(|uk| vi.clone() - uk.clone())))
                .collect();
            let den: Vec<S> = v
                .iter()
                .map(|vi| product(t.u.iter().map(|uk| vi.clone() - q.clone() * uk.clone())))
                .collect();
            let w = weights(m, &t.z, Some(q), extra)?;
            finish(&a, num, den, &w, poly)
        }
        Side::G => {
            check_size(n)?;
            let u = &t.u;
            let a = pair_matrix(n, |i, j| {
                div(
                    q.clone() * u[i].clone() - u[j].clone(),
                    &(u[i].clone() - u[j].clone()),
                )
            })?;
            let num: Vec<S> = u
                .iter()
                .map(|ui| product(t.v.iter().map(|vk| vk.clone() - ui.clone())))
                .collect();
            let den: Vec<S> = u
                .iter()
                .map(|ui| product(t.v.iter().map(|vk| vk.clone() - q.clone() * ui.clone())))
                .collect();
            if with_lambda {
                // Right-hand side of the Λ-extended identity: plain z, no prefactor.
                let w = weights(n, &t.z, Some(q), extra)?;
                return finish(&a, num, den, &w, poly);
            }
            let shift = q.powi(m as i64 - n as i64)?;
            let w = weights(n, &(shift * t.z.clone()), Some(q), extra)?;
            let pre = qpoch_n(&t.z, q, m as i64 - n as i64)?;
            Ok(pre * finish(&a, num, den, &w, poly)?)
        }
    }
}

fn rational_sum<S: Scalar>(r: &RatParams<S>, side: Side, poly: bool) -> Result<S> {
    let (n, m) = (r.u.len(), r.v.len());
    let c = &r.c;
    match side {
        Side::F => {
            check_size(m)?;
            let v = &r.v;
            let a = pair_matrix(m, |i, j| {
                div(
                    v[i].clone() - v[j].clone() - c.clone(),
                    &(v[i].clone() - v[j].clone()),
                )
            })?;
            let num: Vec<S> = v
                .iter()
                .map(|vi| product(r.u.iter().map(|uk| vi.clone() - uk.clone())))
                .collect();
            let den: Vec<S> = v
                .iter()
                .map(|vi| product(r.u.iter().map(|uk| vi.clone() - uk.clone() - c.clone())))
                .collect();
            let w = weights(m, &r.z, None, |_| Ok(S::one()))?;
            finish(&a, num, den, &w, poly)
        }
        Side::G => {
            check_size(n)?;
            let u = &r.u;
            let a = pair_matrix(n, |i, j| {
                div(
                    u[i].clone() - u[j].clone() + c.clone(),
                    &(u[i].clone() - u[j].clone()),
                )
            })?;
            // G uses (u_i−v_k)/(u_i−v_k+c) = (v_k−u_i)/(v_k−u_i−c); Q clears the latter.
            let num: Vec<S> = u
                .iter()
                .map(|ui| product(r.v.iter().map(|vk| vk.clone() - ui.clone())))
                .collect();
            let den: Vec<S> = u
                .iter()
                .map(|ui| product(r.v.iter().map(|vk| vk.clone() - ui.clone() - c.clone())))
                .collect();
            let w = weights(n, &r.z, None, |_| Ok(S::one()))?;
            let pre = one_minus_z_pow(&r.z, n, m)?;
            Ok(pre * finish(&a, num, den, &w, poly)?)
        }
    }
}

fn finish<S: Scalar>(a: &[Vec<S>], num: Vec<S>, den: Vec<S>, w: &[S], poly: bool) -> Result<S> {
    if poly {
        Ok(subset_kernel(a, &num, Some(&den), w))
    } else {
        let b = num
            .into_iter()
            .zip(den.iter())
            .map(|(x, d)| div(x, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(subset_kernel(a, &b, None, w))
    }
}

/// One-step shift used by a difference operator.
#[derive(Clone, Debug, PartialEq)]
pub enum Step<S> {
    /// x ↦ q x (forward) or x ↦ x/q (inverse).
    Mul(S),
    /// x ↦ x + c (forward) or x ↦ x − c (inverse).
    Add(S),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl<S: Scalar> Step<S> {
    fn apply(&self, x: &S, dir: Direction) -> Result<S> {
        Ok(match (self, dir) {
            (Step::Mul(q), Direction::Forward) => q.clone() * x.clone(),
            (Step::Mul(q), Direction::Inverse) => div(x.clone(), q)?,
            (Step::Add(c), Direction::Forward) => x.clone() + c.clone(),
            (Step::Add(c), Direction::Inverse) => x.clone() - c.clone(),
        })
    }
}

/// ∏_{j∈vars}(1 − z T_j^{±1}) f evaluated at `point`.
pub fn apply_difference_product<S: Scalar>(
    f: &dyn Fn(&[S]) -> Result<S>,
    vars: &[usize],
    step: &Step<S>,
    dir: Direction,
    z: &S,
    point: &[S],
) -> Result<S> {
    check_size(vars.len())?;
    let shifted: Vec<S> = vars
        .iter()
        .map(|&j| step.apply(&point[j], dir))
        .collect::<Result<_>>()?;
    let mut total = S::zero();
    let mut x = point.to_vec();
    let mut zp = vec![S::one()];
    for k in 1..=vars.len() {
        let prev = zp[k - 1].clone();
        zp.push(prev * z.clone());
    }
    for mask in 0u32..(1u32 << vars.len()) {
        for (b, &j) in vars.iter().enumerate() {
            x[j] = if mask >> b & 1 == 1 {
                shifted[b].clone()
            } else {
                point[j].clone()
            };
        }
        let k = mask.count_ones() as usize;
        total = total + sign::<S>(k) * zp[k].clone() * f(&x)?;
    }
    Ok(total)
}

fn cross<S: Scalar>(a: &[S], b: &[S]) -> S {
    product(
        a.iter()
            .flat_map(|x| b.iter().map(move |y| x.clone() - y.clone())),
    )
}

/// F or G through the difference-operator form.
pub fn source_via_difference_ops<S: Scalar>(
    regime: Regime,
    side: Side,
    params: &Params<S>,
    tr: &Truncation,
) -> Result<S> {
    match (regime, params) {
        (Regime::Elliptic, Params::Elliptic(e)) => elliptic_difference(e, side, tr),
        (Regime::Trig, Params::Trig(t)) => trig_difference(t, side),
        (Regime::Rational, Params::Rational(r)) => rational_difference(r, side),
        (Regime::TrigLambda, _) => {
            Err(EvalError::Unavailable("no difference-operator form with Λ"))
        }
        _ => Err(EvalError::Domain("parameters do not match the regime")),
    }
}

fn elliptic_difference<S: Scalar>(e: &EllipticParams<S>, side: Side, tr: &Truncation) -> Result<S> {
    let n = elliptic_dims(e)?;
    let p = &e.p;
    let th = |x: S| theta(&x, p, tr);
    let mut pre = th(e.lambda.clone())?;
    for ui in &e.u {
        for vj in &e.v {
            pre = pre * th(div(ui.clone(), vj)?)?;
        }
    }
    let mut den = S::one();
    for j in 0..n {
        for i in 0..j {
            den = den * e.u[j].clone() * th(div(e.u[i].clone(), &e.u[j])?)?;
            den = div(den, &e.v[j])? * th(div(e.v[j].clone(), &e.v[i])?)?;
        }
    }
    let pre = div(pre, &den)?;
    let f = |x: &[S]| frobenius_matrix(&x[..n], &x[n..], &e.lambda, p, tr).map(|m| m.det());
    let mut point = e.u.clone();
    point.extend(e.v.iter().cloned());
    let step = Step::Mul(e.q.clone());
    let sum = match side {
        Side::F => {
            let vars: Vec<usize> = (n..2 * n).collect();
            apply_difference_product(&f, &vars, &step, Direction::Inverse, &e.z, &point)?
        }
        Side::G => {
            let vars: Vec<usize> = (0..n).collect();
            apply_difference_product(&f, &vars, &step, Direction::Forward, &e.z, &point)?
        }
    };
    Ok(pre * sum)
}

fn trig_difference<S: Scalar>(t: &TrigParams<S>, side: Side) -> Result<S> {
    let (n, m) = (t.u.len(), t.v.len());
    let q = &t.q;
    let mut point = t.u.clone();
    point.extend(t.v.iter().cloned());
    let clear = cross(&t.v, &t.u);
    let step = Step::Mul(q.clone());
    match side {
        Side::F => {
            let f = |x: &[S]| div(vandermonde(&x[n..]), &cross(&x[n..], &x[..n]));
            let vars: Vec<usize> = (n..n + m).collect();
            let zz = t.z.clone() * q.powi(m as i64 - n as i64 - 1)?;
            let s = apply_difference_product(&f, &vars, &step, Direction::Inverse, &zz, &point)?;
            Ok(div(clear, &vandermonde(&t.v))? * s)
        }
        Side::G => {
            let f = |x: &[S]| div(vandermonde(&x[..n]), &cross(&x[n..], &x[..n]));
            let vars: Vec<usize> = (0..n).collect();
            let zz = t.z.clone() * q.powi(m as i64 - n as i64)?;
            let s = apply_difference_product(&f, &vars, &step, Direction::Forward, &zz, &point)?;
            let pre = qpoch_n(&t.z, q, m as i64 - n as i64)?;
            Ok(pre * div(clear, &vandermonde(&t.u))? * s)
        }
    }
}

fn rational_difference<S: Scalar>(r: &RatParams<S>, side: Side) -> Result<S> {
    let (n, m) = (r.u.len(), r.v.len());
    let mut point = r.u.clone();
    point.extend(r.v.iter().cloned());
    let step = Step::Add(r.c.clone());
    match side {
        Side::F => {
            let f = |x: &[S]| div(vandermonde(&x[n..]), &cross(&x[n..], &x[..n]));
            let vars: Vec<usize> = (n..n + m).collect();
            let s = apply_difference_product(&f, &vars, &step, Direction::Inverse, &r.z, &point)?;
            Ok(div(cross(&r.v, &r.u), &vandermonde(&r.v))? * s)
        }
        Side::G => {
            let f = |x: &[S]| div(vandermonde(&x[..n]), &cross(&x[..n], &x[n..]));
            let vars: Vec<usize> = (0..n).collect();
            let s = apply_difference_product(&f, &vars, &step, Direction::Forward, &r.z, &point)?;
            let pre = one_minus_z_pow(&r.z, n, m)?;
            Ok(pre * div(cross(&r.u, &r.v), &vandermonde(&r.u))? * s)
        }
    }
}
