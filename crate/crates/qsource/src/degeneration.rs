//! Limits between regimes and the finite identities they produce: the
//! Λ-extended trigonometric identity, its Λ = 0 case, the elliptic → trig
//! limit and the trig → rational limit.

use alloc::vec::Vec;

use crate::error::{EvalError, Result};
use crate::field::{div, product, sign, Scalar, C64};
use crate::source::{
    source_subset_sum, EllipticParams, Params, RatParams, Regime, Side, TrigParams,
};
use crate::special::{q_binomial, Truncation};

fn tri(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

fn trig_lambda<S: Scalar>(side: Side, u: &[S], v: &[S], q: &S, z: S, lambda: S) -> Result<S> {
    let t = TrigParams {
        q: q.clone(),
        z,
        u: u.to_vec(),
        v: v.to_vec(),
        lambda: Some(lambda),
    };
    source_subset_sum(
        Regime::TrigLambda,
        side,
        &Params::Trig(t),
        &Truncation::default(),
    )
}

/// Both sides of the Λ-extended trigonometric identity (n ≥ m).
pub fn extended_trig<S: Scalar>(u: &[S], v: &[S], q: &S, z: &S, lambda: &S) -> Result<(S, S)> {
    let (n, m) = (u.len(), v.len());
    if n < m {
        return Err(EvalError::Domain("the extended identity needs n ≥ m"));
    }
    let d = n - m;
    let zs = q.powi(d as i64)? * z.clone();
    let mut lhs = S::zero();
    for l in 0..=d {
        let w =
            sign::<S>(l) * z.powi(l as i64)? * q.powi(tri(l))? * q_binomial(d as i64, l as i64, q)?;
        lhs = lhs
            + w * trig_lambda(
                Side::F,
                u,
                v,
                q,
                zs.clone(),
                q.powi(l as i64)? * lambda.clone(),
            )?;
    }
    let rhs = trig_lambda(Side::G, u, v, q, z.clone(), lambda.clone())?;
    Ok((lhs, rhs))
}

/// The Λ = 0 case: ∏_{j=1}^{n−m}(1 − q^{j−1}z) F(q^{n−m}z | Λ=0) against the right side at Λ = 0.
pub fn lambda_zero<S: Scalar>(u: &[S], v: &[S], q: &S, z: &S) -> Result<(S, S)> {
    let (n, m) = (u.len(), v.len());
    if n < m {
        return Err(EvalError::Domain("the Λ = 0 reduction needs n ≥ m"));
    }
    let d = n - m;
    let mut pre = S::one();
    for j in 1..=d {
        pre = pre * (S::one() - q.powi(j as i64 - 1)? * z.clone());
    }
    let zs = q.powi(d as i64)? * z.clone();
    let lhs = pre * trig_lambda(Side::F, u, v, q, zs, S::zero())?;
    let rhs = trig_lambda(Side::G, u, v, q, z.clone(), S::zero())?;
    Ok((lhs, rhs))
}

/// Elliptic source function at small p with Λ_ell = Λ ∏v/∏u, against the Λ-extended
/// trigonometric function at Λ (n = m).
pub fn elliptic_to_trig<S: Scalar>(
    side: Side,
    u: &[S],
    v: &[S],
    q: &S,
    z: &S,
    lambda: &S,
    p: &S,
    tr: &Truncation,
) -> Result<(S, S)> {
    if u.len() != v.len() {
        return Err(EvalError::Domain("the elliptic limit needs n = m"));
    }
    let l_ell = div(
        lambda.clone() * product(v.iter().cloned()),
        &product(u.iter().cloned()),
    )?;
    let e = EllipticParams {
        p: p.clone(),
        q: q.clone(),
        lambda: l_ell,
        z: z.clone(),
        u: u.to_vec(),
        v: v.to_vec(),
    };
    let ell = source_subset_sum(Regime::Elliptic, side, &Params::Elliptic(e), tr)?;
    let trig = trig_lambda(side, u, v, q, z.clone(), lambda.clone())?;
    Ok((ell, trig))
}

/// Trigonometric F at u = e^{εx}, v = e^{εy}, q = e^{2εc'} against rational F at (x, y, c = 2c').
pub fn trig_to_rational(
    side: Side,
    x: &[C64],
    y: &[C64],
    c_half: C64,
    z: C64,
    eps: f64,
) -> Result<(C64, C64)> {
    let ex = |w: &C64| (w * eps).exp();
    let u: Vec<C64> = x.iter().map(ex).collect();
    let v: Vec<C64> = y.iter().map(ex).collect();
    let q = (c_half * (2.0 * eps)).exp();
    let t = TrigParams {
        q,
        z,
        u,
        v,
        lambda: None,
    };
    let tr = Truncation::default();
    let trig = source_subset_sum(Regime::Trig, side, &Params::Trig(t), &tr)?;
    let r = RatParams {
        c: c_half * 2.0,
        z,
        u: x.to_vec(),
        v: y.to_vec(),
    };
    let rat = source_subset_sum(Regime::Rational, side, &Params::Rational(r), &tr)?;
    Ok((trig, rat))
}
