//! Finite q-series identities used by the degeneration arguments.

use alloc::vec::Vec;

use crate::error::{EvalError, Result};
use crate::field::{div, Scalar};
use crate::special::q_binomial;

/// All `l`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < l - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if l <= n {
        rec(0, n, l, &mut Vec::new(), &mut out);
    }
    out
}

/// Σ_ℓ z^ℓ q^{ℓ(ℓ+1)/2} [n,ℓ]_q against ∏_{j=1}^n (1 + q^j z).
pub fn qbinomial_theorem<S: Scalar>(n: usize, q: &S, z: &S) -> Result<(S, S)> {
    let mut lhs = S::zero();
    for l in 0..=n {
        lhs = lhs
            + z.powi(l as i64)?
                * q.powi((l * (l + 1) / 2) as i64)?
                * q_binomial(n as i64, l as i64, q)?;
    }
    let mut rhs = S::one();
    for j in 1..=n {
        rhs = rhs * (S::one() + q.powi(j as i64)? * z.clone());
    }
    Ok((lhs, rhs))
}

/// Σ_{|K|=ℓ} ∏_{i∈K, j∉K} (u_i − q^{−1}u_j)/(u_i − u_j) against [n,ℓ]_{q^{−1}}.
pub fn one_q_identity<S: Scalar>(u: &[S], l: usize, q: &S) -> Result<(S, S)> {
    let n = u.len();
    if l > n {
        return Err(EvalError::Domain("ℓ exceeds n"));
    }
    let qi = q.powi(-1)?;
    let mut lhs = S::zero();
    for k in subsets(n, l) {
        let mut t = S::one();
        for &i in &k {
            for j in (0..n).filter(|j| !k.contains(j)) {
                t = t * div(
                    u[i].clone() - qi.clone() * u[j].clone(),
                    &(u[i].clone() - u[j].clone()),
                )?;
            }
        }
        lhs = lhs + t;
    }
    Ok((lhs, q_binomial(n as i64, l as i64, &qi)?))
}

/// Σ_{|K|=ℓ} q^{−#{i∈K, j∉K, i>j}} against [n,ℓ]_{q^{−1}}.
pub fn inversion_count_identity<S: Scalar>(n: usize, l: usize, q: &S) -> Result<(S, S)> {
    if l > n {
        return Err(EvalError::Domain("ℓ exceeds n"));
    }
    let mut lhs = S::zero();
    for k in subsets(n, l) {
        let inv = k
            .iter()
            .map(|&i| (0..i).filter(|j| !k.contains(j)).count())
            .sum::<usize>();
        lhs = lhs + q.powi(-(inv as i64))?;
    }
    Ok((lhs, q_binomial(n as i64, l as i64, &q.powi(-1)?)?))
}

/// Σ_{|K|=ℓ} ∏_{i∈K, j∉K} (u_i − u_j + c)/(u_i − u_j) against the binomial C(n,ℓ).
pub fn rational_binomial<S: Scalar>(u: &[S], l: usize, c: &S) -> Result<(S, S)> {
    let n = u.len();
    if l > n {
        return Err(EvalError::Domain("ℓ exceeds n"));
    }
    let mut lhs = S::zero();
    for k in subsets(n, l) {
        let mut t = S::one();
        for &i in &k {
            for j in (0..n).filter(|j| !k.contains(j)) {
                let d = u[i].clone() - u[j].clone();
                t = t * div(d.clone() + c.clone(), &d)?;
            }
        }
        lhs = lhs + t;
    }
    let mut b: i64 = 1;
    for i in 0..l {
        b = b * (n - i) as i64 / (i + 1) as i64;
    }
    Ok((lhs, S::from_i64(b)))
}
