//! Divided differences, the twisted symmetrizer Sym_c, the θ and τ shifts,
//! and the two rational Lascoux symmetrization theorems.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{EvalError, Result};
use crate::field::{div, product, sign, Scalar};
use crate::linalg::{vandermonde, vandermonde_rev, Matrix};
use crate::source::{source_polynomial_form, Params, RatParams, Regime, Side};
use crate::special::Truncation;

pub const MAX_POLY_DEGREE: usize = 12;
pub const MAX_SYM: usize = 8;
pub const MAX_SYMMETRIZATION: usize = 7;

/// A multivariate function evaluated at a point.
pub type MultiFn<'a, S> = &'a dyn Fn(&[S]) -> Result<S>;

/// Univariate polynomial, coefficients in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() > MAX_POLY_DEGREE + 1 {
            return Err(EvalError::SizeCap {
                size: coeffs.len() - 1,
                cap: MAX_POLY_DEGREE,
            });
        }
        Ok(UniPoly { coeffs })
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// ∏(x − r_i).
    pub fn from_roots(roots: &[S]) -> Result<Self> {
        let mut c = vec![S::one()];
        for r in roots {
            let mut next = vec![S::zero(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + a.clone();
                next[i] = next[i].clone() - a.clone() * r.clone();
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(S::zero);
        UniPoly {
            coeffs: (0..n).map(|i| get(self, i) - get(other, i)).collect(),
        }
    }
}

fn check_distinct<S: Scalar>(u: &[S]) -> Result<()> {
    for j in 0..u.len() {
        for i in 0..j {
            if u[i] == u[j] {
                return Err(EvalError::Domain("coincident points"));
            }
        }
    }
    Ok(())
}

/// ∂_k f at u (k is 1-based, 1 ≤ k < n).
pub fn divided_difference<S: Scalar>(f: MultiFn<S>, u: &[S], k: usize) -> Result<S> {
    if k == 0 || k >= u.len() {
        return Err(EvalError::Domain("divided difference index outside 1..n−1"));
    }
    let (a, b) = (k - 1, k);
    if u[a] == u[b] {
        return Err(EvalError::Domain("coincident points"));
    }
    let mut w = u.to_vec();
    w.swap(a, b);
    div(f(u)? - f(&w)?, &(u[a].clone() - u[b].clone()))
}

/// ∂_{n−1}⋯∂_1 f(u_1) as the Newton divided difference f[u_1,…,u_n].
pub fn newton_chain<S: Scalar>(f: &UniPoly<S>, u: &[S]) -> Result<S> {
    if u.is_empty() {
        return Err(EvalError::Domain("newton_chain needs n ≥ 1"));
    }
    check_distinct(u)?;
    let n = u.len();
    let mut t: Vec<S> = u.iter().map(|x| f.eval(x)).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            t[i] = div(
                t[i].clone() - t[i - 1].clone(),
                &(u[i].clone() - u[i - level].clone()),
            )?;
        }
    }
    Ok(t[n - 1].clone())
}

/// ∂_{n−1}⋯∂_1 f(u_1) by applying the operators one after another.
pub fn newton_chain_operator<S: Scalar>(f: &UniPoly<S>, u: &[S]) -> Result<S> {
    fn go<S: Scalar>(f: &UniPoly<S>, u: &[S], k: usize) -> Result<S> {
        if k == 0 {
            return Ok(f.eval(&u[0]));
        }
        let inner = |x: &[S]| go(f, x, k - 1);
        divided_difference(&inner, u, k)
    }
    if u.is_empty() {
        return Err(EvalError::Domain("newton_chain needs n ≥ 1"));
    }
    check_distinct(u)?;
    go(f, u, u.len() - 1)
}

/// Δ(k_1,…,k_n) = ∏_{i<j}(u_{k_i}−u_{k_j}−c)/(u_{k_i}−u_{k_j}), indices 0-based.
pub fn delta_factor<S: Scalar>(u: &[S], idx: &[usize], c: &S) -> Result<S> {
    let mut acc = S::one();
    for j in 0..idx.len() {
        for i in 0..j {
            let d = u[idx[i]].clone() - u[idx[j]].clone();
            acc = acc * div(d.clone() - c.clone(), &d)?;
        }
    }
    Ok(acc)
}

/// Every permutation of 0..n, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
    out
}

/// Sym_c g = Σ_{w∈S_n} w·(Δ(1,…,n) g).
pub fn sym_c<S: Scalar>(g: MultiFn<S>, u: &[S], c: &S) -> Result<S> {
    let n = u.len();
    if n > MAX_SYM {
        return Err(EvalError::SizeCap {
            size: n,
            cap: MAX_SYM,
        });
    }
    check_distinct(u)?;
    let id: Vec<usize> = (0..n).collect();
    let mut total = S::zero();
    for w in permutations(n) {
        let uw: Vec<S> = w.iter().map(|&i| u[i].clone()).collect();
        total = total + delta_factor(&uw, &id, c)? * g(&uw)?;
    }
    Ok(total)
}

/// θ^ℓ: ũ_i = u_{i+ℓ}, wrapping around as u_{k+n} = u_k + c.
pub fn theta_shift<S: Scalar>(u: &[S], l: usize, c: &S) -> Vec<S> {
    let n = u.len();
    (0..n)
        .map(|i| {
            let j = i + l;
            let wraps = j / n;
            let mut x = u[j % n].clone();
            for _ in 0..wraps {
                x = x + c.clone();
            }
            x
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

fn factorial<S: Scalar>(n: usize) -> S {
    product((1..=n).map(|j| S::from_i64(j as i64)))
}

fn prod_diff<S: Scalar>(x: &S, v: &[S], shift: &S) -> S {
    product(v.iter().map(|vk| x.clone() - vk.clone() + shift.clone()))
}

/// Both sides of the rational Lascoux symmetrization of an arbitrary f(u₁) (Sym_c of the divided-difference chain).
pub fn lascoux_theorem3<S: Scalar>(u: &[S], v: &[S], c: &S, f: &UniPoly<S>) -> Result<(S, S)> {
    let n = u.len();
    if n < 2 || v.len() != n {
        return Err(EvalError::Domain(
            "the symmetrization identity needs n ≥ 2 and |u| = |v|",
        ));
    }
    if n > MAX_SYMMETRIZATION {
        return Err(EvalError::SizeCap {
            size: n,
            cap: MAX_SYMMETRIZATION,
        });
    }
    let zero = S::zero();
    let g =
        |x: &[S]| -> S { product(x[1..].iter().map(|xj| prod_diff(xj, v, &zero))) * f.eval(&x[0]) };
    let h = |x: &[S]| -> Result<S> {
        let mut acc = S::zero();
        for l in 0..n {
            let b = S::from_i64(binomial(n - 1, l)) * sign::<S>(l);
            acc = acc + b * g(&theta_shift(x, l, c));
        }
        Ok(acc)
    };
    let lhs = sym_c(&h, u, c)?;
    let rhs = factorial::<S>(n - 1)
        * (-c.clone()).powi(n as i64 - 1)?
        * ik_body(u, v, c)?
        * newton_chain(f, u)?;
    Ok((lhs, rhs))
}

/// ∏(v_i−u_k)(v_i−u_k−c)/(∏_{i<j}(v_j−v_i)∏_{i<j}(u_i−u_j)) · det(1/((v_j−u_k)(v_j−u_k−c))).
fn ik_body<S: Scalar>(u: &[S], v: &[S], c: &S) -> Result<S> {
    let n = u.len();
    let mut num = S::one();
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

/// Right side of the symmetrization identity rewritten through P_{n,n}^{(z=1)}: (n−1)!/(−c) · P · ∂f (c ≠ 0).
pub fn lascoux_symmetrization_via_source<S: Scalar>(
    u: &[S],
    v: &[S],
    c: &S,
    f: &UniPoly<S>,
) -> Result<S> {
    let n = u.len();
    let p = rational_p_z1(u, v, c)?;
    Ok(div(factorial::<S>(n - 1) * p, &(-c.clone()))? * newton_chain(f, u)?)
}

fn rational_p_z1<S: Scalar>(u: &[S], v: &[S], c: &S) -> Result<S> {
    let params = Params::Rational(RatParams {
        c: c.clone(),
        z: S::one(),
        u: u.to_vec(),
        v: v.to_vec(),
    });
    source_polynomial_form(Regime::Rational, Side::F, &params, &Truncation::default())
}

/// R(x) = ∏_k (x−v_k−c)/(x−v_k).
fn r_factor<S: Scalar>(x: &S, v: &[S], c: &S) -> Result<S> {
    let mut acc = S::one();
    for vk in v {
        acc = acc
            * div(
                x.clone() - vk.clone() - c.clone(),
                &(x.clone() - vk.clone()),
            )?;
    }
    Ok(acc)
}

/// Both sides of the rational Lascoux explicit symmetrization (closed form through the Izergin–Korepin determinant).
pub fn lascoux_theorem4<S: Scalar>(u: &[S], v: &[S], c: &S) -> Result<(S, S)> {
    let n = u.len();
    if n == 0 || v.len() != n {
        return Err(EvalError::Domain(
            "the explicit symmetrization needs n ≥ 1 and |u| = |v|",
        ));
    }
    if n > MAX_SYM {
        return Err(EvalError::SizeCap {
            size: n,
            cap: MAX_SYM,
        });
    }
    // τ^m keeps only the factors with j > m.
    let h = |x: &[S]| -> Result<S> {
        let r: Vec<S> = x
            .iter()
            .map(|xj| r_factor(xj, v, c))
            .collect::<Result<_>>()?;
        let mut acc = S::zero();
        for m in 0..=n {
            let b = S::from_i64(binomial(n, m)) * sign::<S>(m);
            acc = acc + b * product(r[m..].iter().cloned());
        }
        Ok(acc)
    };
    let lhs = sym_c(&h, u, c)?;
    let mut num = factorial::<S>(n) * c.powi(n as i64)?;
    for vi in v {
        for uk in u {
            num = num * (vi.clone() - uk.clone() + c.clone());
        }
    }
    let mat = Matrix::try_from_fn(n, n, |j, k| {
        let d = v[j].clone() - u[k].clone();
        div(S::one(), &((d.clone() + c.clone()) * d))
    })?;
    let rhs = div(num, &(vandermonde(v) * vandermonde_rev(u)))? * mat.det();
    Ok((lhs, rhs))
}

/// Right side of the explicit symmetrization as n!/∏(u_j−v_k) · P_{n,n}^{(z=1)}(u | v+c).
pub fn lascoux_explicit_via_source<S: Scalar>(u: &[S], v: &[S], c: &S) -> Result<S> {
    let n = u.len();
    let vc: Vec<S> = v.iter().map(|x| x.clone() + c.clone()).collect();
    let den = product(u.iter().map(|uj| prod_diff(uj, v, &S::zero())));
    div(factorial::<S>(n) * rational_p_z1(u, &vc, c)?, &den)
}

/// Both sides of the reduction to the coefficient of f(u_1) used to prove the symmetrization identity.
pub fn reduction_identity<S: Scalar>(u: &[S], v: &[S], c: &S) -> Result<(S, S)> {
    let n = u.len();
    if n < 2 || v.len() != n {
        return Err(EvalError::Domain("the reduction needs n ≥ 2 and |u| = |v|"));
    }
    if n > MAX_SYM {
        return Err(EvalError::SizeCap {
            size: n,
            cap: MAX_SYM,
        });
    }
    check_distinct(u)?;
    let perms: Vec<Vec<usize>> = permutations(n).into_iter().filter(|w| w[0] == 0).collect();
    let mut lhs = S::zero();
    for l in 1..=n {
        let b = S::from_i64(binomial(n - 1, l - 1)) * sign::<S>(l - 1);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.swap(0, l - 1);
        let mut inner = S::zero();
        for w in &perms {
            let uw: Vec<S> = w.iter().map(|&i| u[i].clone()).collect();
            let mut t = delta_factor(&uw, &idx, c)?;
            for x in &uw[l..] {
                t = t * prod_diff(x, v, &S::zero());
            }
            for x in &uw[1..l] {
                t = t * prod_diff(x, v, c);
            }
            inner = inner + t;
        }
        lhs = lhs + b * inner;
    }
    let den = -c.clone() * product(u[1..].iter().map(|uj| u[0].clone() - uj.clone()));
    let rhs = div(factorial::<S>(n - 1) * rational_p_z1(u, v, c)?, &den)?;
    Ok((lhs, rhs))
}

/// The three n = 2 factors that each expand to the common cubic in c: the
/// numerators of the f(u_1) and f(u_2) coefficients, and the determinant part.
pub fn symmetrization_n2_factors<S: Scalar>(u: &[S], v: &[S], c: &S) -> Result<[S; 3]> {
    if u.len() != 2 || v.len() != 2 {
        return Err(EvalError::Domain("n = 2 only"));
    }
    let (u1, u2) = (u[0].clone(), u[1].clone());
    let z = S::zero();
    let a = (u1.clone() - u2.clone() - c.clone()) * prod_diff(&u2, v, &z)
        + (u2.clone() - u1.clone() - c.clone()) * prod_diff(&u2, v, c);
    let b = (u1.clone() - u2.clone() - c.clone()) * prod_diff(&u1, v, c)
        + (u2.clone() - u1.clone() - c.clone()) * prod_diff(&u1, v, &z);
    let d = -c.clone() * ik_body(u, v, c)?;
    Ok([a, b, d])
}

/// −c(c²+cu₁+cu₂−cv₁−cv₂−u₁v₁−u₂v₁−u₁v₂−u₂v₂+2u₁u₂+2v₁v₂) as coefficients in c.
pub fn symmetrization_n2_cubic<S: Scalar>(u: &[S], v: &[S]) -> [S; 4] {
    let (u1, u2, v1, v2) = (u[0].clone(), u[1].clone(), v[0].clone(), v[1].clone());
    let two = S::from_i64(2);
    let c0 = -(u1.clone() * v1.clone())
        - u2.clone() * v1.clone()
        - u1.clone() * v2.clone()
        - u2.clone() * v2.clone()
        + two.clone() * u1.clone() * u2.clone()
        + two * v1.clone() * v2.clone();
    let c1 = u1 + u2 - v1 - v2;
    [S::zero(), -c0, -c1, -S::one()]
}

/// 2c²(c²−cu₁−cu₂+cv₁+cv₂−u₁v₁−u₂v₁−u₁v₂−u₂v₂+2u₁u₂+2v₁v₂)/∏(u_i−v_j).
pub fn explicit_n2_closed<S: Scalar>(u: &[S], v: &[S], c: &S) -> Result<S> {
    let (u1, u2, v1, v2) = (u[0].clone(), u[1].clone(), v[0].clone(), v[1].clone());
    let two = S::from_i64(2);
    let inner = c.clone() * c.clone()
        - c.clone() * (u1.clone() + u2.clone() - v1.clone() - v2.clone())
        - u1.clone() * v1.clone()
        - u2.clone() * v1.clone()
        - u1.clone() * v2.clone()
        - u2.clone() * v2.clone()
        + two.clone() * u1.clone() * u2.clone()
        + two.clone() * v1.clone() * v2.clone();
    let den = product(u.iter().map(|ui| prod_diff(ui, v, &S::zero())));
    div(two * c.clone() * c.clone() * inner, &den)
}

/// Monomial coefficients of the interpolating polynomial through (x_i, y_i).
pub fn interpolate<S: Scalar>(xs: &[S], ys: &[S]) -> Result<Vec<S>> {
    let n = xs.len();
    if ys.len() != n {
        return Err(EvalError::Domain("interpolation needs matching lengths"));
    }
    check_distinct(xs)?;
    // Newton form, then expand.
    let mut a = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            a[i] = div(
                a[i].clone() - a[i - 1].clone(),
                &(xs[i].clone() - xs[i - level].clone()),
            )?;
        }
    }
    let mut coeffs = vec![S::zero(); n];
    for k in (0..n).rev() {
        // coeffs ← coeffs·(x − x_k) + a_k
        let mut next = vec![S::zero(); n];
        for i in 0..n {
            if i + 1 < n {
                next[i + 1] = next[i + 1].clone() + coeffs[i].clone();
            }
            next[i] = next[i].clone() - coeffs[i].clone() * xs[k].clone();
        }
        next[0] = next[0].clone() + a[k].clone();
        coeffs = next;
    }
    Ok(coeffs)
}
