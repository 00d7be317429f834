//! Special values of the polynomial forms P and Q: the vanishing lemmas, the
//! explicit evaluations at v̄ = {ū_I, qū_J} (and the u-side versions for m > n),
//! and the elliptic quasi-periodicity in v_k.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{EvalError, Result};
use crate::field::{div, product, sign, Scalar};
use crate::source::{
    source_polynomial_form, EllipticParams, Params, RatParams, Regime, Side, TrigParams,
};
use crate::special::{qpoch_n, theta, Truncation};

/// Places `values[a]` at position `order[a]`.
pub fn arrange<S: Scalar>(values: Vec<S>, order: &[usize]) -> Result<Vec<S>> {
    if order.len() != values.len() {
        return Err(EvalError::Domain("arrangement length mismatch"));
    }
    let mut out: Vec<Option<S>> = vec![None; values.len()];
    for (x, &pos) in values.into_iter().zip(order) {
        if pos >= out.len() || out[pos].is_some() {
            return Err(EvalError::Domain("arrangement is not a permutation"));
        }
        out[pos] = Some(x);
    }
    Ok(out.into_iter().map(|x| x.unwrap()).collect())
}

/// {x_I, shift(x_J)} arranged by `order`.
pub fn substitute<S: Scalar>(
    x: &[S],
    i_set: &[usize],
    j_set: &[usize],
    shift: impl Fn(&S) -> S,
    order: &[usize],
) -> Result<Vec<S>> {
    for a in i_set.iter().chain(j_set) {
        if *a >= x.len() {
            return Err(EvalError::Domain("substitution index out of range"));
        }
    }
    if i_set.iter().any(|a| j_set.contains(a)) {
        return Err(EvalError::Domain("I and J must be disjoint"));
    }
    let mut vals: Vec<S> = i_set.iter().map(|&i| x[i].clone()).collect();
    vals.extend(j_set.iter().map(|&j| shift(&x[j])));
    arrange(vals, order)
}

fn both<S: Scalar>(regime: Regime, params: &Params<S>, tr: &Truncation) -> Result<(S, S)> {
    Ok((
        source_polynomial_form(regime, Side::F, params, tr)?,
        source_polynomial_form(regime, Side::G, params, tr)?,
    ))
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|x| !set.contains(x)).collect()
}

fn tri(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

/// (P, Q) after v_i = u_k, v_j = q u_k (elliptic, n = m).
pub fn elliptic_vanishing<S: Scalar>(
    e: &EllipticParams<S>,
    i: usize,
    j: usize,
    k: usize,
    tr: &Truncation,
) -> Result<(S, S)> {
    let mut e = e.clone();
    if i == j || i >= e.v.len() || j >= e.v.len() || k >= e.u.len() {
        return Err(EvalError::Domain("vanishing needs distinct v indices"));
    }
    e.v[i] = e.u[k].clone();
    e.v[j] = e.q.clone() * e.u[k].clone();
    both(Regime::Elliptic, &Params::Elliptic(e), tr)
}

/// (P, Q) at v̄ = {ū_I, qū_J} together with the printed closed form (elliptic, I ⊔ J = [n]).
pub fn elliptic_evaluation<S: Scalar>(
    e: &EllipticParams<S>,
    i_set: &[usize],
    j_set: &[usize],
    order: &[usize],
    tr: &Truncation,
) -> Result<(S, S, S)> {
    let n = e.u.len();
    if i_set.len() + j_set.len() != n {
        return Err(EvalError::Domain("elliptic evaluation needs |I| + |J| = n"));
    }
    let q = e.q.clone();
    let mut sub = e.clone();
    sub.v = substitute(&e.u, i_set, j_set, |x| q.clone() * x.clone(), order)?;
    let (p_val, q_val) = both(Regime::Elliptic, &Params::Elliptic(sub), tr)?;
    let th = |x: S| theta(&x, &e.p, tr);
    let u = &e.u;
    let nj = j_set.len();
    let mut closed =
        sign::<S>(nj) * e.z.powi(nj as i64)? * q.powi(tri(nj))? * th(e.lambda.clone())?;
    for &a in i_set {
        for &b in j_set {
            closed = closed * th(div(u[a].clone(), &u[b])?)?;
        }
        for b in 0..n {
            closed = closed * th(div(q.clone() * u[b].clone(), &u[a])?)?;
        }
    }
    for &a in j_set {
        for &b in j_set {
            closed = closed * th(div(u[a].clone(), &(q.clone() * u[b].clone()))?)?;
        }
    }
    Ok((p_val, q_val, closed))
}

/// (P with v_k → p v_k, multiplier × P, Q with v_k → p v_k, multiplier × Q).
pub fn elliptic_quasi_periodicity<S: Scalar>(
    e: &EllipticParams<S>,
    k: usize,
    tr: &Truncation,
) -> Result<(S, S, S, S)> {
    let n = e.u.len();
    if k >= n {
        return Err(EvalError::Domain("index out of range"));
    }
    let (p0, q0) = both(Regime::Elliptic, &Params::Elliptic(e.clone()), tr)?;
    let mut shifted = e.clone();
    shifted.v[k] = e.p.clone() * e.v[k].clone();
    let (p1, q1) = both(Regime::Elliptic, &Params::Elliptic(shifted), tr)?;
    let mut mult = (-e.p.powi(-1)?).powi(n as i64 + 1)?
        * e.q.powi(n as i64)?
        * e.lambda.clone()
        * e.v[k].powi(-(n as i64) - 1)?;
    mult = mult * product(e.u.iter().map(|x| x.clone() * x.clone()));
    for (j, vj) in e.v.iter().enumerate() {
        if j != k {
            mult = div(mult, vj)?;
        }
    }
    Ok((p1, mult.clone() * p0, q1, mult * q0))
}

/// (P, Q) after v_i = u_k, v_j = q u_k.
pub fn trig_vanishing<S: Scalar>(
    t: &TrigParams<S>,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(S, S)> {
    let mut t = t.clone();
    if i == j || i >= t.v.len() || j >= t.v.len() || k >= t.u.len() {
        return Err(EvalError::Domain("vanishing needs distinct v indices"));
    }
    t.v[i] = t.u[k].clone();
    t.v[j] = t.q.clone() * t.u[k].clone();
    both(Regime::Trig, &Params::Trig(t), &Truncation::default())
}

/// (P, Q) after u_i = v_k, u_j = q^{−1} v_k (the m > n form).
pub fn trig_vanishing_u<S: Scalar>(
    t: &TrigParams<S>,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(S, S)> {
    let mut t = t.clone();
    if i == j || i >= t.u.len() || j >= t.u.len() || k >= t.v.len() {
        return Err(EvalError::Domain("vanishing needs distinct u indices"));
    }
    t.u[i] = t.v[k].clone();
    t.u[j] = div(t.v[k].clone(), &t.q)?;
    both(Regime::Trig, &Params::Trig(t), &Truncation::default())
}

/// (P, Q, closed form) at v̄ = {ū_I, qū_J}, |I| + |J| = m ≤ n.
pub fn trig_evaluation<S: Scalar>(
    t: &TrigParams<S>,
    i_set: &[usize],
    j_set: &[usize],
    order: &[usize],
) -> Result<(S, S, S)> {
    let n = t.u.len();
    let q = t.q.clone();
    let mut sub = t.clone();
    sub.v = substitute(&t.u, i_set, j_set, |x| q.clone() * x.clone(), order)?;
    let (p_val, q_val) = both(Regime::Trig, &Params::Trig(sub), &Truncation::default())?;
    let u = &t.u;
    let (ni, nj) = (i_set.len(), j_set.len());
    let mut closed = sign::<S>(nj) * t.z.powi(nj as i64)? * q.powi((ni * nj) as i64 + tri(nj))?;
    for &a in i_set {
        for &b in j_set {
            closed = closed * (u[b].clone() - u[a].clone());
        }
        for b in 0..n {
            closed = closed * (u[a].clone() - q.clone() * u[b].clone());
        }
    }
    let rest = complement(n, i_set);
    for &b in j_set {
        for &k in &rest {
            closed = closed * (q.clone() * u[b].clone() - u[k].clone());
        }
    }
    Ok((p_val, q_val, closed))
}

/// (P, Q, closed form) at ū = {v̄_I, q^{−1}v̄_J}, |I| + |J| = n < m.
pub fn trig_evaluation_u<S: Scalar>(
    t: &TrigParams<S>,
    i_set: &[usize],
    j_set: &[usize],
    order: &[usize],
) -> Result<(S, S, S)> {
    let (n, m) = (t.u.len(), t.v.len());
    let q = t.q.clone();
    let qi = q.powi(-1)?;
    let mut sub = t.clone();
    sub.u = substitute(&t.v, i_set, j_set, |x| qi.clone() * x.clone(), order)?;
    let (p_val, q_val) = both(Regime::Trig, &Params::Trig(sub), &Truncation::default())?;
    let v = &t.v;
    let nj = j_set.len();
    let mut closed = sign::<S>(nj)
        * t.z.powi(nj as i64)?
        * q.powi(-((nj * (nj + 1) / 2) as i64))?
        * qpoch_n(&t.z, &q, m as i64 - n as i64)?;
    for &a in i_set {
        for &b in j_set {
            closed = closed * (v[a].clone() - v[b].clone());
        }
        for b in 0..m {
            closed = closed * (v[b].clone() - q.clone() * v[a].clone());
        }
    }
    let rest = complement(m, i_set);
    for &b in j_set {
        for &k in &rest {
            closed = closed * (q.clone() * v[k].clone() - v[b].clone());
        }
    }
    Ok((p_val, q_val, closed))
}

/// (P, Q) after v_i = u_k, v_j = u_k + c.
pub fn rational_vanishing<S: Scalar>(
    r: &RatParams<S>,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(S, S)> {
    let mut r = r.clone();
    if i == j || i >= r.v.len() || j >= r.v.len() || k >= r.u.len() {
        return Err(EvalError::Domain("vanishing needs distinct v indices"));
    }
    r.v[i] = r.u[k].clone();
    r.v[j] = r.u[k].clone() + r.c.clone();
    both(
        Regime::Rational,
        &Params::Rational(r),
        &Truncation::default(),
    )
}

/// (P, Q) after u_i = v_k, u_j = v_k − c.
pub fn rational_vanishing_u<S: Scalar>(
    r: &RatParams<S>,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(S, S)> {
    let mut r = r.clone();
    if i == j || i >= r.u.len() || j >= r.u.len() || k >= r.v.len() {
        return Err(EvalError::Domain("vanishing needs distinct u indices"));
    }
    r.u[i] = r.v[k].clone();
    r.u[j] = r.v[k].clone() - r.c.clone();
    both(
        Regime::Rational,
        &Params::Rational(r),
        &Truncation::default(),
    )
}

/// (P, Q, closed form) at v̄ = {ū_I, ū_J + c}, |I| + |J| = m ≤ n.
pub fn rational_evaluation<S: Scalar>(
    r: &RatParams<S>,
    i_set: &[usize],
    j_set: &[usize],
    order: &[usize],
) -> Result<(S, S, S)> {
    let n = r.u.len();
    let c = r.c.clone();
    let mut sub = r.clone();
    sub.v = substitute(&r.u, i_set, j_set, |x| x.clone() + c.clone(), order)?;
    let (p_val, q_val) = both(
        Regime::Rational,
        &Params::Rational(sub),
        &Truncation::default(),
    )?;
    let u = &r.u;
    let nj = j_set.len();
    let mut closed = sign::<S>(nj) * r.z.powi(nj as i64)?;
    for &a in i_set {
        for &b in j_set {
            closed = closed * (u[b].clone() - u[a].clone());
        }
        for b in 0..n {
            closed = closed * (u[a].clone() - u[b].clone() - c.clone());
        }
    }
    let rest = complement(n, i_set);
    for &b in j_set {
        for &k in &rest {
            closed = closed * (u[b].clone() - u[k].clone() + c.clone());
        }
    }
    Ok((p_val, q_val, closed))
}

/// (P, Q, closed form) at ū = {v̄_I, v̄_J − c}, |I| + |J| = n < m.
pub fn rational_evaluation_u<S: Scalar>(
    r: &RatParams<S>,
    i_set: &[usize],
    j_set: &[usize],
    order: &[usize],
) -> Result<(S, S, S)> {
    let (n, m) = (r.u.len(), r.v.len());
    let c = r.c.clone();
    let mut sub = r.clone();
    sub.u = substitute(&r.v, i_set, j_set, |x| x.clone() - c.clone(), order)?;
    let (p_val, q_val) = both(
        Regime::Rational,
        &Params::Rational(sub),
        &Truncation::default(),
    )?;
    let v = &r.v;
    let nj = j_set.len();
    let mut closed = sign::<S>(nj)
        * r.z.powi(nj as i64)?
        * (S::one() - r.z.clone()).powi(m as i64 - n as i64)?;
    for &a in i_set {
        for &b in j_set {
            closed = closed * (v[a].clone() - v[b].clone());
        }
        for b in 0..m {
            closed = closed * (v[b].clone() - v[a].clone() - c.clone());
        }
    }
    let rest = complement(m, i_set);
    for &b in j_set {
        for &k in &rest {
            closed = closed * (v[k].clone() - v[b].clone() + c.clone());
        }
    }
    Ok((p_val, q_val, closed))
}
