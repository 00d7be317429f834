//! Determinant representations of the source functions.
//!
//! Row-1 modifiers written (·)^{δ_{i1}} in the formulas are applied as a
//! multiplier on the first row only; every other row is left untouched.

use alloc::vec::Vec;

use crate::error::{EvalError, Result};
use crate::field::{div, product, Scalar};
use crate::linalg::{vandermonde, vandermonde_rev, Matrix};
use crate::source::{one_minus_z_pow, EllipticParams, Params, RatParams, Regime, Side, TrigParams};
use crate::special::{psi_a, qpoch_n, theta, Truncation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Mpt,
    ScalarProduct,
    Dwbc,
    Bs,
    BsLimit,
    Ik,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Mpt,
        Family::ScalarProduct,
        Family::Dwbc,
        Family::Bs,
        Family::BsLimit,
        Family::Ik,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Mpt => "mpt",
            Family::ScalarProduct => "scalar_product",
            Family::Dwbc => "dwbc",
            Family::Bs => "bs",
            Family::BsLimit => "bs_limit",
            Family::Ik => "ik",
        }
    }
}

/// Whether a (regime, family) pair has a determinant representation.
pub fn available(regime: Regime, family: Family) -> bool {
    match regime {
        Regime::Elliptic => matches!(family, Family::Mpt | Family::Bs),
        Regime::Trig => !matches!(family, Family::Ik),
        Regime::Rational => true,
        Regime::TrigLambda => false,
    }
}

/// Spectator parameters of the determinant forms.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxParams<S> {
    pub r: S,
    /// Mixing matrix for the F side (size m; n in the elliptic case).
    pub p_mat: Matrix<S>,
    /// Mixing matrix for the G side (size n).
    pub q_mat: Matrix<S>,
    pub delta: S,
    /// η̄ for the F side (length m; n in the elliptic case).
    pub eta_f: Vec<S>,
    /// η̄ for the G side (length n).
    pub eta_g: Vec<S>,
}

fn side_size<S: Scalar>(params: &Params<S>, side: Side) -> usize {
    match side {
        Side::F => params.v().len(),
        Side::G => params.u().len(),
    }
}

fn check_aux<S: Scalar>(family: Family, side: Side, size: usize, aux: &AuxParams<S>) -> Result<()> {
    match family {
        Family::Mpt => {
            let pm = match side {
                Side::F => &aux.p_mat,
                Side::G => &aux.q_mat,
            };
            if pm.rows() != size || pm.cols() != size {
                return Err(EvalError::AuxInvalid("mixing matrix has the wrong size"));
            }
            if pm.det().is_zero() {
                return Err(EvalError::AuxInvalid("mixing matrix is singular"));
            }
        }
        Family::Bs | Family::BsLimit => {
            let eta = match side {
                Side::F => &aux.eta_f,
                Side::G => &aux.eta_g,
            };
            if eta.len() != size {
                return Err(EvalError::AuxInvalid("η̄ has the wrong length"));
            }
            for j in 0..eta.len() {
                for i in 0..j {
                    if eta[i] == eta[j] {
                        return Err(EvalError::AuxInvalid("η̄ not pairwise distinct"));
                    }
                }
            }
            if family == Family::Bs && aux.delta == S::one() {
                return Err(EvalError::AuxInvalid("Δ = 1"));
            }
        }
        _ => {}
    }
    Ok(())
}

/// Evaluates the chosen determinant representation of F or G.
///
/// The IK family returns the polynomial normalization P at z = 1 (rational, n = m).
pub fn det_rep<S: Scalar>(
    regime: Regime,
    family: Family,
    side: Side,
    params: &Params<S>,
    aux: &AuxParams<S>,
    tr: &Truncation,
) -> Result<S> {
    if !available(regime, family) {
        return Err(EvalError::Unavailable(
            "no such determinant form for this regime",
        ));
    }
    let size = side_size(params, side);
    check_aux(family, side, size, aux)?;
    match (regime, params) {
        (Regime::Elliptic, Params::Elliptic(e)) => {
            if e.u.len() != e.v.len() {
                return Err(EvalError::Domain(
                    "elliptic source functions need |u| = |v|",
                ));
            }
            match family {
                Family::Mpt => elliptic_mpt(e, side, aux, tr),
                _ => elliptic_bs(e, side, aux, tr),
            }
        }
        (Regime::Trig, Params::Trig(t)) => match family {
            Family::Mpt => trig_mpt(t, side, aux),
            Family::ScalarProduct => trig_scalar_product(t, side),
            Family::Dwbc => dwbc(params, side),
            Family::Bs => trig_bs(t, side, aux, false),
            Family::BsLimit => trig_bs(t, side, aux, true),
            Family::Ik => Err(EvalError::Unavailable("IK is rational only")),
        },
        (Regime::Rational, Params::Rational(r)) => match family {
            Family::Mpt => rational_mpt(r, side, aux),
            Family::ScalarProduct => rational_scalar_product(r, side),
            Family::Dwbc => dwbc(params, side),
            Family::Bs => rational_bs(r, side, aux, false),
            Family::BsLimit => rational_bs(r, side, aux, true),
            Family::Ik => izergin_korepin(r),
        },
        _ => Err(EvalError::Domain("parameters do not match the regime")),
    }
}

fn row1<S: Scalar>(i: usize, f: &S) -> S {
    if i == 0 {
        f.clone()
    } else {
        S::one()
    }
}

/// Σ_k pm[i][k] ψ_{k+1}^{A_{N−1}}(x;p,r).
fn mixed_psi<S: Scalar>(
    pm: &Matrix<S>,
    i: usize,
    x: &S,
    p: &S,
    r: &S,
    tr: &Truncation,
) -> Result<S> {
    let n = pm.cols();
    let mut acc = S::zero();
    for k in 0..n {
        if !pm.get(i, k).is_zero() {
            acc = acc + pm.get(i, k).clone() * psi_a(k + 1, n, x, p, r, tr)?;
        }
    }
    Ok(acc)
}

fn mixed_psi_matrix<S: Scalar>(
    pm: &Matrix<S>,
    xs: &[S],
    p: &S,
    r: &S,
    tr: &Truncation,
) -> Result<Matrix<S>> {
    let n = xs.len();
    Matrix::try_from_fn(n, n, |i, j| mixed_psi(pm, i, &xs[j], p, r, tr))
}

fn trig_prefactor<S: Scalar>(t: &TrigParams<S>, side: Side) -> Result<S> {
    match side {
        Side::F => Ok(S::one()),
        Side::G => qpoch_n(&t.z, &t.q, t.v.len() as i64 - t.u.len() as i64),
    }
}

fn rational_prefactor<S: Scalar>(r: &RatParams<S>, side: Side) -> Result<S> {
    match side {
        Side::F => Ok(S::one()),
        Side::G => one_minus_z_pow(&r.z, r.u.len(), r.v.len()),
    }
}

fn elliptic_x<S: Scalar>(e: &EllipticParams<S>) -> Result<S> {
    div(
        e.lambda.clone() * product(e.u.iter().cloned()),
        &product(e.v.iter().cloned()),
    )
}

fn elliptic_mpt<S: Scalar>(
    e: &EllipticParams<S>,
    side: Side,
    aux: &AuxParams<S>,
    tr: &Truncation,
) -> Result<S> {
    let n = e.u.len();
    let (p, q, z, r) = (&e.p, &e.q, &e.z, &aux.r);
    let th = |x: S| theta(&x, p, tr);
    let lx = elliptic_x(e)?;
    if n == 0 {
        return th(lx);
    }
    let t1 = th(lx.clone())?;
    let t2 = th(q.clone() * lx)?;
    match side {
        Side::F => {
            let pm = &aux.p_mat;
            let vinv: Vec<S> =
                e.v.iter()
                    .map(|x| div(S::one(), x))
                    .collect::<Result<_>>()?;
            let qvinv: Vec<S> = vinv.iter().map(|x| q.clone() * x.clone()).collect();
            let rv = r.clone() * product(vinv.iter().cloned());
            let norm = mixed_psi_matrix(pm, &vinv, p, r, tr)?.det();
            let pre = div(th(rv.clone())?, &norm)?;
            let f1 = div(t1, &th(rv.clone())?)?;
            let f2 = div(t2, &th(q.clone() * rv)?)?;
            let ratio: Vec<S> =
                e.v.iter()
                    .map(|vj| {
                        let mut acc = S::one();
                        for ul in &e.u {
                            acc = acc
                                * div(
                                    th(div(ul.clone(), vj)?)?,
                                    &th(div(q.clone() * ul.clone(), vj)?)?,
                                )?;
                        }
                        Ok(acc)
                    })
                    .collect::<Result<_>>()?;
            let m = Matrix::try_from_fn(n, n, |i, j| {
                let a = row1(i, &f1) * mixed_psi(pm, i, &vinv[j], p, r, tr)?;
                let b = row1(i, &f2) * mixed_psi(pm, i, &qvinv[j], p, r, tr)? * ratio[j].clone();
                Ok(a - z.clone() * b)
            })?;
            Ok(pre * m.det())
        }
        Side::G => {
            let qm = &aux.q_mat;
            let qu: Vec<S> = e.u.iter().map(|x| q.clone() * x.clone()).collect();
            let ru = r.clone() * product(e.u.iter().cloned());
            let norm = mixed_psi_matrix(qm, &e.u, p, r, tr)?.det();
            let pre = div(th(ru.clone())?, &norm)?;
            let f1 = div(t1, &th(ru.clone())?)?;
            let f2 = div(t2, &th(q.clone() * ru)?)?;
            let ratio: Vec<S> =
                e.u.iter()
                    .map(|uj| {
                        let mut acc = S::one();
                        for vl in &e.v {
                            acc = acc
                                * div(
                                    th(div(uj.clone(), vl)?)?,
                                    &th(div(q.clone() * uj.clone(), vl)?)?,
                                )?;
                        }
                        Ok(acc)
                    })
                    .collect::<Result<_>>()?;
            let m = Matrix::try_from_fn(n, n, |i, j| {
                let a = row1(i, &f1) * mixed_psi(qm, i, &e.u[j], p, r, tr)?;
                let b = row1(i, &f2) * mixed_psi(qm, i, &qu[j], p, r, tr)? * ratio[j].clone();
                Ok(a - z.clone() * b)
            })?;
            Ok(pre * m.det())
        }
    }
}

fn elliptic_bs<S: Scalar>(
    e: &EllipticParams<S>,
    side: Side,
    aux: &AuxParams<S>,
    tr: &Truncation,
) -> Result<S> {
    let n = e.u.len();
    let (p, q, z, d) = (&e.p, &e.q, &e.z, &aux.delta);
    let th = |x: S| theta(&x, p, tr);
    let lx = elliptic_x(e)?;
    if n == 0 {
        return th(lx);
    }
    let t1 = th(lx.clone())?;
    let t2 = th(q.clone() * lx)?;
    let td = th(d.clone())?;
    let pu = product(e.u.iter().cloned());
    let pv = product(e.v.iter().cloned());
    match side {
        Side::F => {
            let eta = &aux.eta_f;
            let pe = product(eta.iter().cloned());
            let mut den = S::one();
            for j in 0..n {
                for i in 0..j {
                    den = den * div(th(div(e.v[j].clone(), &e.v[i])?)?, &e.v[j])?;
                    den = den * eta[j].clone() * th(div(eta[i].clone(), &eta[j])?)?;
                }
            }
            let pre = div(td.clone(), &den)?;
            let f1 = div(t1, &th(div(d.clone() * pe.clone(), &pv)?)?)?;
            let f2 = div(t2, &th(div(q.clone() * d.clone() * pe, &pv)?)?)?;
            let m = Matrix::try_from_fn(n, n, |i, j| {
                let vj = &e.v[j];
                let mut a = th(div(d.clone() * eta[i].clone(), vj)?)?;
                let mut b = th(div(q.clone() * d.clone() * eta[i].clone(), vj)?)?;
                for k in 0..n {
                    if k != i {
                        a = a * th(div(eta[k].clone(), vj)?)?;
                        b = b * th(div(q.clone() * eta[k].clone(), vj)?)?;
                    }
                }
                for uk in &e.u {
                    b = b * div(
                        th(div(uk.clone(), vj)?)?,
                        &th(div(q.clone() * uk.clone(), vj)?)?,
                    )?;
                }
                let a = row1(i, &f1) * div(a, &td)?;
                let b = row1(i, &f2) * div(b, &td)?;
                Ok(a - z.clone() * b)
            })?;
            Ok(pre * m.det())
        }
        Side::G => {
            let eta = &aux.eta_g;
            let pe = product(eta.iter().cloned());
            let mut den = S::one();
            for j in 0..n {
                for i in 0..j {
                    den = den * e.u[j].clone() * th(div(e.u[i].clone(), &e.u[j])?)?;
                    den = den * div(th(div(eta[j].clone(), &eta[i])?)?, &eta[j])?;
                }
            }
            let pre = div(td.clone(), &den)?;
            let f1 = div(t1, &th(div(d.clone() * pu.clone(), &pe)?)?)?;
            let f2 = div(t2, &th(div(q.clone() * d.clone() * pu, &pe)?)?)?;
            let m = Matrix::try_from_fn(n, n, |i, j| {
                let ui = &e.u[i];
                let qui = q.clone() * ui.clone();
                let mut a = th(div(d.clone() * ui.clone(), &eta[j])?)?;
                let mut b = th(div(d.clone() * qui.clone(), &eta[j])?)?;
                for k in 0..n {
                    if k != j {
                        a = a * th(div(ui.clone(), &eta[k])?)?;
                        b = b * th(div(qui.clone(), &eta[k])?)?;
                    }
                }
                for vk in &e.v {
                    b = b * div(th(div(ui.clone(), vk)?)?, &th(div(qui.clone(), vk)?)?)?;
                }
                let a = row1(i, &f1) * div(a, &td)?;
                let b = row1(i, &f2) * div(b, &td)?;
                Ok(a - z.clone() * b)
            })?;
            Ok(pre * m.det())
        }
    }
}

/// ∏_l (x − a_l)/(x − b_l) over paired lists.
fn ratio_prod<S: Scalar>(num: impl Iterator<Item = S>, den: impl Iterator<Item = S>) -> Result<S> {
    div(product(num), &product(den))
}

fn trig_mpt<S: Scalar>(t: &TrigParams<S>, side: Side, aux: &AuxParams<S>) -> Result<S> {
    let (n, m) = (t.u.len(), t.v.len());
    let (q, z, r) = (&t.q, &t.z, &aux.r);
    let p0 = S::zero();
    let tr = Truncation::default();
    let pre0 = trig_prefactor(t, side)?;
    let (xs, pm) = match side {
        Side::F => (&t.v, &aux.p_mat),
        Side::G => (&t.u, &aux.q_mat),
    };
    let size = xs.len();
    if size == 0 {
        return Ok(pre0);
    }
    let px = product(xs.iter().cloned());
    let norm = mixed_psi_matrix(pm, xs, &p0, r, &tr)?.det();
    let pre = pre0 * div(S::one() - r.clone() * px.clone(), &norm)?;
    let f1 = div(S::one(), &(S::one() - r.clone() * px.clone()))?;
    let (f2, coef, shifted, ratio): (S, S, Vec<S>, Vec<S>) = match side {
        Side::F => {
            let f2 = div(S::one(), &(S::one() - div(r.clone() * px, q)?))?;
            let coef = q.powi(m as i64 - 1)? * z.clone();
            let shifted = xs
                .iter()
                .map(|x| div(x.clone(), q))
                .collect::<Result<_>>()?;
            let ratio = xs
                .iter()
                .map(|vj| {
                    ratio_prod(
                        t.u.iter().map(|ul| vj.clone() - ul.clone()),
                        t.u.iter().map(|ul| vj.clone() - q.clone() * ul.clone()),
                    )
                })
                .collect::<Result<_>>()?;
            (f2, coef, shifted, ratio)
        }
        Side::G => {
            let f2 = div(S::one(), &(S::one() - q.clone() * r.clone() * px))?;
            let coef = q.powi(m as i64 - n as i64)? * z.clone();
            let shifted = xs.iter().map(|x| q.clone() * x.clone()).collect();
            let ratio = xs
                .iter()
                .map(|uj| {
                    ratio_prod(
                        t.v.iter().map(|vl| vl.clone() - uj.clone()),
                        t.v.iter().map(|vl| vl.clone() - q.clone() * uj.clone()),
                    )
                })
                .collect::<Result<_>>()?;
            (f2, coef, shifted, ratio)
        }
    };
    let mat = Matrix::try_from_fn(size, size, |i, j| {
        let a = row1(i, &f1) * mixed_psi(pm, i, &xs[j], &p0, r, &tr)?;
        let b = row1(i, &f2) * mixed_psi(pm, i, &shifted[j], &p0, r, &tr)? * ratio[j].clone();
        Ok(a - coef.clone() * b)
    })?;
    Ok(pre * mat.det())
}

fn rational_mpt<S: Scalar>(rp: &RatParams<S>, side: Side, aux: &AuxParams<S>) -> Result<S> {
    let (c, z, r) = (&rp.c, &rp.z, &aux.r);
    let p0 = S::zero();
    let tr = Truncation::default();
    let pre0 = rational_prefactor(rp, side)?;
    let (xs, pm) = match side {
        Side::F => (&rp.v, &aux.p_mat),
        Side::G => (&rp.u, &aux.q_mat),
    };
    let size = xs.len();
    if size == 0 {
        return Ok(pre0);
    }
    let px = product(xs.iter().cloned());
    let norm = mixed_psi_matrix(pm, xs, &p0, r, &tr)?.det();
    let pre = pre0 * div(S::one() - r.clone() * px.clone(), &norm)?;
    let f1 = div(S::one(), &(S::one() - r.clone() * px))?;
    let shifted: Vec<S> = xs
        .iter()
        .map(|x| match side {
            Side::F => x.clone() - c.clone(),
            Side::G => x.clone() + c.clone(),
        })
        .collect();
    // Row-1 factor of the shifted part: 1/(1 − r x_j' ∏_{l≠j} x_l).
    let f2: Vec<S> = (0..size)
        .map(|j| {
            let others = product((0..size).filter(|&l| l != j).map(|l| xs[l].clone()));
            div(
                S::one(),
                &(S::one() - r.clone() * shifted[j].clone() * others),
            )
        })
        .collect::<Result<_>>()?;
    let ratio: Vec<S> = xs
        .iter()
        .map(|x| match side {
            Side::F => ratio_prod(
                rp.u.iter().map(|ul| x.clone() - ul.clone()),
                rp.u.iter().map(|ul| x.clone() - ul.clone() - c.clone()),
            ),
            Side::G => ratio_prod(
                rp.v.iter().map(|vl| x.clone() - vl.clone()),
                rp.v.iter().map(|vl| x.clone() - vl.clone() + c.clone()),
            ),
        })
        .collect::<Result<_>>()?;
    let mat = Matrix::try_from_fn(size, size, |i, j| {
        let a = row1(i, &f1) * mixed_psi(pm, i, &xs[j], &p0, r, &tr)?;
        let b = row1(i, &f2[j]) * mixed_psi(pm, i, &shifted[j], &p0, r, &tr)? * ratio[j].clone();
        Ok(a - z.clone() * b)
    })?;
    Ok(pre * mat.det())
}

fn trig_scalar_product<S: Scalar>(t: &TrigParams<S>, side: Side) -> Result<S> {
    let (n, m) = (t.u.len(), t.v.len());
    let (q, z) = (&t.q, &t.z);
    match side {
        Side::F => {
            let mat = Matrix::try_from_fn(m, m, |i, j| {
                let vj = &t.v[j];
                let pw = vj.powi(i as i64)?;
                let ratio = ratio_prod(
                    t.u.iter().map(|ul| vj.clone() - ul.clone()),
                    t.u.iter().map(|ul| vj.clone() - q.clone() * ul.clone()),
                )?;
                Ok(pw.clone() - z.clone() * q.powi(m as i64 - 1 - i as i64)? * pw * ratio)
            })?;
            div(mat.det(), &vandermonde(&t.v))
        }
        Side::G => {
            let mat = Matrix::try_from_fn(n, n, |i, j| {
                let uj = &t.u[j];
                let pw = uj.powi(i as i64)?;
                let ratio = ratio_prod(
                    t.v.iter().map(|vl| vl.clone() - uj.clone()),
                    t.v.iter().map(|vl| vl.clone() - q.clone() * uj.clone()),
                )?;
                Ok(pw.clone() - z.clone() * q.powi(m as i64 - n as i64 + i as i64)? * pw * ratio)
            })?;
            Ok(trig_prefactor(t, side)? * div(mat.det(), &vandermonde(&t.u))?)
        }
    }
}

fn rational_scalar_product<S: Scalar>(rp: &RatParams<S>, side: Side) -> Result<S> {
    let (n, m) = (rp.u.len(), rp.v.len());
    let (c, z) = (&rp.c, &rp.z);
    match side {
        Side::F => {
            let mat = Matrix::try_from_fn(m, m, |i, j| {
                let vj = &rp.v[j];
                let ratio = ratio_prod(
                    rp.u.iter().map(|ul| vj.clone() - ul.clone()),
                    rp.u.iter().map(|ul| vj.clone() - ul.clone() - c.clone()),
                )?;
                Ok(vj.powi(i as i64)?
                    - z.clone() * (vj.clone() - c.clone()).powi(i as i64)? * ratio)
            })?;
            div(mat.det(), &vandermonde(&rp.v))
        }
        Side::G => {
            let mat = Matrix::try_from_fn(n, n, |i, j| {
                let uj = &rp.u[j];
                let ratio = ratio_prod(
                    rp.v.iter().map(|vl| uj.clone() - vl.clone()),
                    rp.v.iter().map(|vl| uj.clone() - vl.clone() + c.clone()),
                )?;
                Ok(uj.powi(i as i64)?
                    - z.clone() * (uj.clone() + c.clone()).powi(i as i64)? * ratio)
            })?;
            Ok(rational_prefactor(rp, side)? * div(mat.det(), &vandermonde(&rp.u))?)
        }
    }
}

/// The domain-wall-type matrix: Y (F) / Z (G) when n ≥ m, U (F) / V (G) when n < m.
pub fn build_dwbc_matrix<S: Scalar>(params: &Params<S>, side: Side) -> Result<Matrix<S>> {
    let (u, v) = (params.u(), params.v());
    let (n, m) = (u.len(), v.len());
    let z = params.z();
    // Top-block shift: trig x ↦ q x with weight q^{m−n}; rational x ↦ x ± c.
    match params {
        Params::Trig(t) => {
            let q = &t.q;
            let w = q.powi(m as i64 - n as i64)? * z.clone();
            if n >= m {
                Matrix::try_from_fn(n, n, |i, j| {
                    if i < m {
                        Ok(div(S::one(), &(v[i].clone() - u[j].clone()))?
                            - w.clone()
                                * div(S::one(), &(v[i].clone() - q.clone() * u[j].clone()))?)
                    } else {
                        let pw = u[j].powi((n - 1 - i) as i64)?;
                        match side {
                            Side::F => Ok(pw),
                            Side::G => {
                                Ok(pw.clone() - q.powi(m as i64 - 1 - i as i64)? * z.clone() * pw)
                            }
                        }
                    }
                })
            } else {
                Matrix::try_from_fn(m, m, |i, j| {
                    if i < n {
                        Ok(div(S::one(), &(u[i].clone() - v[j].clone()))?
                            - w.clone()
                                * div(S::one(), &(q.clone() * u[i].clone() - v[j].clone()))?)
                    } else {
                        let pw = v[j].powi((m - 1 - i) as i64)?;
                        match side {
                            Side::F => {
                                Ok(pw.clone() - z.clone() * q.powi(i as i64 - n as i64)? * pw)
                            }
                            Side::G => Ok(pw),
                        }
                    }
                })
            }
        }
        Params::Rational(r) => {
            let c = &r.c;
            if n >= m {
                Matrix::try_from_fn(n, n, |i, j| {
                    if i < m {
                        Ok(div(S::one(), &(v[i].clone() - u[j].clone()))?
                            - z.clone()
                                * div(S::one(), &(v[i].clone() - u[j].clone() - c.clone()))?)
                    } else {
                        let e = (n - 1 - i) as i64;
                        match side {
                            Side::F => u[j].powi(e),
                            Side::G => {
                                Ok(u[j].powi(e)?
                                    - z.clone() * (u[j].clone() + c.clone()).powi(e)?)
                            }
                        }
                    }
                })
            } else {
                Matrix::try_from_fn(m, m, |i, j| {
                    if i < n {
                        Ok(div(S::one(), &(u[i].clone() - v[j].clone()))?
                            - z.clone()
                                * div(S::one(), &(u[i].clone() - v[j].clone() + c.clone()))?)
                    } else {
                        let e = (m - 1 - i) as i64;
                        match side {
                            Side::F => {
                                Ok(v[j].powi(e)?
                                    - z.clone() * (v[j].clone() - c.clone()).powi(e)?)
                            }
                            Side::G => v[j].powi(e),
                        }
                    }
                })
            }
        }
        Params::Elliptic(_) => Err(EvalError::Unavailable(
            "no domain-wall form in the elliptic regime",
        )),
    }
}

fn dwbc<S: Scalar>(params: &Params<S>, side: Side) -> Result<S> {
    let (u, v) = (params.u(), params.v());
    let (n, m) = (u.len(), v.len());
    let mat = build_dwbc_matrix(params, side)?;
    let pre = if n >= m {
        let num = product(
            v.iter()
                .flat_map(|vi| u.iter().map(move |uk| vi.clone() - uk.clone())),
        );
        div(num, &(vandermonde(v) * vandermonde_rev(u)))?
    } else {
        let num = product(
            v.iter()
                .flat_map(|vi| u.iter().map(move |uk| uk.clone() - vi.clone())),
        );
        div(num, &(vandermonde_rev(v) * vandermonde(u)))?
    };
    let side_pre = match (params, side) {
        (_, Side::F) => S::one(),
        (Params::Trig(t), Side::G) => trig_prefactor(t, side)?,
        (Params::Rational(r), Side::G) => rational_prefactor(r, side)?,
        _ => S::one(),
    };
    Ok(side_pre * pre * mat.det())
}

fn trig_bs<S: Scalar>(t: &TrigParams<S>, side: Side, aux: &AuxParams<S>, limit: bool) -> Result<S> {
    let (n, m) = (t.u.len(), t.v.len());
    let (q, z, d) = (&t.q, &t.z, &aux.delta);
    let pre0 = trig_prefactor(t, side)?;
    let (xs, eta) = match side {
        Side::F => (&t.v, &aux.eta_f),
        Side::G => (&t.u, &aux.eta_g),
    };
    let size = xs.len();
    if size == 0 {
        return Ok(pre0);
    }
    let one_d = S::one() - d.clone();
    let pe = product(eta.iter().cloned());
    let px = product(xs.iter().cloned());
    let den = vandermonde(xs) * vandermonde_rev(eta);
    let pre = if limit {
        div(pre0, &den)?
    } else {
        div(pre0 * one_d.clone(), &den)?
    };
    let (coef, f1, f2) = match side {
        Side::F => (
            z.clone(),
            div(S::one(), &(px.clone() - d.clone() * pe.clone()))?,
            div(S::one(), &(div(px, q)? - d.clone() * pe))?,
        ),
        Side::G => (
            q.powi(m as i64 - n as i64)? * z.clone(),
            div(S::one(), &(px.clone() - d.clone() * pe.clone()))?,
            div(S::one(), &(q.clone() * px - d.clone() * pe))?,
        ),
    };
    let ratio: Vec<S> = xs
        .iter()
        .map(|x| match side {
            Side::F => ratio_prod(
                t.u.iter().map(|uk| x.clone() - uk.clone()),
                t.u.iter().map(|uk| x.clone() - q.clone() * uk.clone()),
            ),
            Side::G => ratio_prod(
                t.v.iter().map(|vk| x.clone() - vk.clone()),
                t.v.iter().map(|vk| q.clone() * x.clone() - vk.clone()),
            ),
        })
        .collect::<Result<_>>()?;
    let mat = Matrix::try_from_fn(size, size, |i, j| {
        let x = &xs[i];
        let (a_rest, b_rest, b_lead) = match side {
            Side::F => (
                product(
                    (0..size)
                        .filter(|&k| k != j)
                        .map(|k| x.clone() - eta[k].clone()),
                ),
                product(
                    (0..size)
                        .filter(|&k| k != j)
                        .map(|k| x.clone() - q.clone() * eta[k].clone()),
                ),
                div(x.clone(), q)? - d.clone() * eta[j].clone(),
            ),
            Side::G => {
                let qx = q.clone() * x.clone();
                (
                    product(
                        (0..size)
                            .filter(|&k| k != j)
                            .map(|k| x.clone() - eta[k].clone()),
                    ),
                    product(
                        (0..size)
                            .filter(|&k| k != j)
                            .map(|k| qx.clone() - eta[k].clone()),
                    ),
                    qx.clone() - d.clone() * eta[j].clone(),
                )
            }
        };
        if limit {
            return Ok(a_rest - coef.clone() * b_rest * ratio[i].clone());
        }
        let a = row1(i, &f1) * div((x.clone() - d.clone() * eta[j].clone()) * a_rest, &one_d)?;
        let b = row1(i, &f2) * div(b_lead * b_rest, &one_d)? * ratio[i].clone();
        Ok(a - coef.clone() * b)
    })?;
    Ok(pre * mat.det())
}

fn rational_bs<S: Scalar>(
    rp: &RatParams<S>,
    side: Side,
    aux: &AuxParams<S>,
    limit: bool,
) -> Result<S> {
    let (c, z, d) = (&rp.c, &rp.z, &aux.delta);
    let pre0 = rational_prefactor(rp, side)?;
    let (xs, eta) = match side {
        Side::F => (&rp.v, &aux.eta_f),
        Side::G => (&rp.u, &aux.eta_g),
    };
    let size = xs.len();
    if size == 0 {
        return Ok(pre0);
    }
    // F shifts x ↦ x − c, G shifts x ↦ x + c.
    let sh = match side {
        Side::F => -c.clone(),
        Side::G => c.clone(),
    };
    let one_d = S::one() - d.clone();
    let pe = product(eta.iter().cloned());
    let px = product(xs.iter().cloned());
    let den = vandermonde(xs) * vandermonde_rev(eta);
    let pre = if limit {
        div(pre0, &den)?
    } else {
        div(pre0 * one_d.clone(), &den)?
    };
    let f1 = div(S::one(), &(px - d.clone() * pe.clone()))?;
    let ratio: Vec<S> = xs
        .iter()
        .map(|x| match side {
            Side::F => ratio_prod(
                rp.u.iter().map(|uk| x.clone() - uk.clone()),
                rp.u.iter().map(|uk| x.clone() - uk.clone() - c.clone()),
            ),
            Side::G => ratio_prod(
                rp.v.iter().map(|vk| x.clone() - vk.clone()),
                rp.v.iter().map(|vk| x.clone() - vk.clone() + c.clone()),
            ),
        })
        .collect::<Result<_>>()?;
    let mat = Matrix::try_from_fn(size, size, |i, j| {
        let x = &xs[i];
        let xs_i = x.clone() + sh.clone();
        let a_rest = product(
            (0..size)
                .filter(|&k| k != j)
                .map(|k| x.clone() - eta[k].clone()),
        );
        let b_rest = product(
            (0..size)
                .filter(|&k| k != j)
                .map(|k| xs_i.clone() - eta[k].clone()),
        );
        if limit {
            return Ok(a_rest - z.clone() * b_rest * ratio[i].clone());
        }
        let others = product((0..size).filter(|&l| l != i).map(|l| xs[l].clone()));
        let f2 = div(S::one(), &(xs_i.clone() * others - d.clone() * pe.clone()))?;
        let a = row1(i, &f1) * div((x.clone() - d.clone() * eta[j].clone()) * a_rest, &one_d)?;
        let b = row1(i, &f2)
            * div((xs_i - d.clone() * eta[j].clone()) * b_rest, &one_d)?
            * ratio[i].clone();
        Ok(a - z.clone() * b)
    })?;
    Ok(pre * mat.det())
}

/// P_{n,n}^{(z=1)} through the Gaudin-Izergin-Korepin determinant.
pub fn izergin_korepin<S: Scalar>(rp: &RatParams<S>) -> Result<S> {
    let n = rp.u.len();
    if rp.v.len() != n {
        return Err(EvalError::Domain("the IK determinant needs n = m"));
    }
    if rp.z != S::one() {
        return Err(EvalError::Domain("the IK determinant is the z = 1 case"));
    }
    ik_value(&rp.u, &rp.v, &rp.c)
}

/// (−c)^n ∏(v_i−u_k)(v_i−u_k−c)/(∏_{i<j}(v_j−v_i)∏_{i<j}(u_i−u_j)) · det(1/((v_j−u_k)(v_j−u_k−c))).
pub fn ik_value<S: Scalar>(u: &[S], v: &[S], c: &S) -> Result<S> {
    let n = u.len();
    let mut num = (-c.clone()).powi(n as i64)?;
    for vi in v {
        for uk in u {
            num = num * (vi.clone() - uk.clone()) * (vi.clone() - uk.clone() - c.clone());
        }
    }
    let mat = Matrix::try_from_fn(n, n, |j, k| {
        div(
            S::one(),
            &((v[j].clone() - u[k].clone()) * (v[j].clone() - u[k].clone() - c.clone())),
        )
    })?;
    Ok(div(num, &(vandermonde(v) * vandermonde_rev(u)))? * mat.det())
}
