//! q-Pochhammer symbols, the odd theta function, q-integers and friends.

use crate::error::{EvalError, Result};
use crate::field::{div, product, Scalar};

/// Truncation policy for infinite products.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncation {
    pub epsilon: f64,
    pub max_terms: usize,
    pub guard_terms: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            epsilon: 1e-14,
            max_terms: 10_000,
            guard_terms: 8,
        }
    }
}

pub const MAX_NOME: f64 = 0.9;

impl Truncation {
    /// Number of factors kept for nome modulus `a` (0 < a ≤ 0.9).
    pub fn terms(&self, a: f64) -> usize {
        if a == 0.0 {
            return 1;
        }
        let n = libm::ceil(libm::log(self.epsilon) / libm::log(a));
        let n = if n.is_finite() && n > 0.0 {
            n as usize
        } else {
            0
        };
        (n + self.guard_terms).min(self.max_terms).max(1)
    }
}

/// (u;q)_∞, truncated.
pub fn qpoch_inf<S: Scalar>(u: &S, q: &S, trunc: &Truncation) -> Result<S> {
    if q.is_zero() {
        return Ok(S::one() - u.clone());
    }
    if S::is_exact() {
        return Err(EvalError::Domain("infinite product over the exact field"));
    }
    let a = q.modulus();
    if !(a <= MAX_NOME) {
        return Err(EvalError::Domain("|q| > 0.9 in an infinite product"));
    }
    let n = trunc.terms(a);
    let mut acc = S::one();
    let mut x = u.clone();
    for _ in 0..n {
        acc = acc * (S::one() - x.clone());
        x = x * q.clone();
    }
    Ok(acc)
}

/// (u;q)_n for any integer n, negative n through 1/∏_{j=1}^{−n}(1−uq^{−j}).
pub fn qpoch_n<S: Scalar>(u: &S, q: &S, n: i64) -> Result<S> {
    if n >= 0 {
        let mut acc = S::one();
        let mut x = u.clone();
        for _ in 0..n {
            acc = acc * (S::one() - x.clone());
            x = x * q.clone();
        }
        return Ok(acc);
    }
    let qi = q.checked_inv(0.0)?;
    let mut den = S::one();
    let mut x = u.clone() * qi.clone();
    for _ in 0..(-n) {
        den = den * (S::one() - x.clone());
        x = x * qi.clone();
    }
    div(S::one(), &den)
}

/// θ(u;p) = (u;p)_∞ (p/u;p)_∞, with θ(u;0) = 1−u.
pub fn theta<S: Scalar>(u: &S, p: &S, trunc: &Truncation) -> Result<S> {
    if u.is_zero() {
        return Err(EvalError::Domain("theta at u = 0"));
    }
    if p.is_zero() {
        return Ok(S::one() - u.clone());
    }
    let a = qpoch_inf(u, p, trunc)?;
    if a.is_zero() {
        return Ok(a);
    }
    let b = qpoch_inf(&div(p.clone(), u)?, p, trunc)?;
    Ok(a * b)
}

/// [k]_q = 1 + q + … + q^{k−1} (k ≥ 0).
pub fn q_int<S: Scalar>(k: i64, q: &S) -> S {
    let mut acc = S::zero();
    let mut x = S::one();
    for _ in 0..k.max(0) {
        acc = acc + x.clone();
        x = x * q.clone();
    }
    acc
}

pub fn q_factorial<S: Scalar>(k: i64, q: &S) -> S {
    product((1..=k).map(|j| q_int(j, q)))
}

/// Gaussian binomial [n choose l]_q.
pub fn q_binomial<S: Scalar>(n: i64, l: i64, q: &S) -> Result<S> {
    if l < 0 || l > n {
        return Err(EvalError::Domain("q-binomial index out of range"));
    }
    let num = product((n - l + 1..=n).map(|j| q_int(j, q)));
    div(num, &q_factorial(l, q))
}

/// (n)_t = (s^n − s^{−n})/(s − s^{−1}) with s = t^{1/2}.
pub fn sym_q_number<S: Scalar>(n: i64, s: &S) -> Result<S> {
    if s.is_zero() || *s == S::one() || *s == -S::one() {
        return Err(EvalError::Domain("symmetric q-number needs s ∉ {0, ±1}"));
    }
    let num = s.powi(n)? - s.powi(-n)?;
    let den = s.clone() - s.powi(-1)?;
    div(num, &den)
}

/// (n)_t! = ∏_{j=1}^{n} (j)_t.
pub fn sym_q_factorial<S: Scalar>(n: i64, s: &S) -> Result<S> {
    let mut acc = S::one();
    for j in 1..=n {
        acc = acc * sym_q_number(j, s)?;
    }
    Ok(acc)
}

/// ψ_j^{A_{n−1}}(u;p,r) = u^{j−1} θ(p^{j−1}(−1)^{n−1} r u^n; p^n).
pub fn psi_a<S: Scalar>(j: usize, n: usize, u: &S, p: &S, r: &S, trunc: &Truncation) -> Result<S> {
    if j < 1 || j > n {
        return Err(EvalError::Domain("ψ index outside 1..=n"));
    }
    let sgn = if (n - 1) % 2 == 0 {
        S::one()
    } else {
        -S::one()
    };
    let un = u.powi(n as i64)?;
    let uj = u.powi(j as i64 - 1)?;
    if p.is_zero() {
        return Ok(if j == 1 {
            S::one() - sgn * r.clone() * un
        } else {
            uj
        });
    }
    let arg = p.powi(j as i64 - 1)? * sgn * r.clone() * un;
    Ok(uj * theta(&arg, &p.powi(n as i64)?, trunc)?)
}
