//! Wall-crossing combinatorics: Dec(ℓ) collections, s-statistics, the χ_t-genus
//! subset sums on both sides of a wall, and the hook-product identity.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{EvalError, Result};
use crate::field::{div, Scalar};
use crate::special::{q_binomial, q_factorial, sym_q_factorial, sym_q_number};

pub const MAX_DEC: usize = 8;

/// Ordered disjoint subsets of [1..ℓ] with strictly decreasing minima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecCollection {
    /// Each subset sorted ascending, elements 1-based.
    pub sets: Vec<Vec<usize>>,
}

impl DecCollection {
    pub fn size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).sum()
    }

    pub fn is_singletons(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 1)
    }

    /// 𝕴_{>i} = [1..ℓ] ∖ (I_1 ∪ … ∪ I_i), with i 1-based.
    pub fn complement_after(&self, l: usize, i: usize) -> Vec<usize> {
        (1..=l)
            .filter(|x| !self.sets[..i].iter().any(|s| s.contains(x)))
            .collect()
    }
}

/// All collections in Dec(ℓ) with |𝕴| = k.
pub fn enumerate_dec(l: usize, k: usize, singletons_only: bool) -> Result<Vec<DecCollection>> {
    if l > MAX_DEC {
        return Err(EvalError::SizeCap {
            size: l,
            cap: MAX_DEC,
        });
    }
    if k > l {
        return Err(EvalError::Domain("Dec(ℓ) needs k ≤ ℓ"));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    dec_rec(l, l + 1, k, 0, singletons_only, &mut cur, &mut out);
    Ok(out)
}

fn dec_rec(
    l: usize,
    bound: usize,
    left: usize,
    used: u32,
    singles: bool,
    cur: &mut Vec<Vec<usize>>,
    out: &mut Vec<DecCollection>,
) {
    if left == 0 {
        out.push(DecCollection { sets: cur.clone() });
        return;
    }
    for h in (1..bound).rev() {
        if used >> h & 1 == 1 {
            continue;
        }
        let pool: Vec<usize> = (h + 1..=l).filter(|x| used >> x & 1 == 0).collect();
        let max_extra = if singles {
            0
        } else {
            (left - 1).min(pool.len())
        };
        for extra in 0..=max_extra {
            for pick in combinations(&pool, extra) {
                let mut set = vec![h];
                set.extend(pick.iter().copied());
                let mask = set.iter().fold(used, |m, &x| m | 1 << x);
                cur.push(set);
                dec_rec(l, h, left - 1 - extra, mask, singles, cur, out);
                cur.pop();
            }
        }
    }
}

fn combinations(pool: &[usize], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in pool.iter().enumerate() {
        for mut rest in combinations(&pool[i + 1..], r - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// #{(i,j) ∈ I₁×I₂ : i<j}, minus #{i>j} when signed.
pub fn s_stat(a: &[usize], b: &[usize], signed: bool) -> i64 {
    let mut less = 0i64;
    let mut greater = 0i64;
    for &i in a {
        for &j in b {
            if i < j {
                less += 1;
            } else if i > j {
                greater += 1;
            }
        }
    }
    if signed {
        less - greater
    } else {
        less
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WallSign {
    Plus,
    Minus,
}

fn subsets_of_size(n: usize, l: usize) -> impl Iterator<Item = u32> {
    (0u32..(1u32 << n)).filter(move |m| m.count_ones() as usize == l)
}

/// χ_t-genus integral over M^±(ℓ), as the localized subset sum.
pub fn chi_genus_integral<S: Scalar>(
    sign: WallSign,
    l: usize,
    t: &S,
    u: &[S],
    v: &[S],
) -> Result<S> {
    let one = S::one();
    let ratio = |a: &S, b: &S| -> Result<S> {
        // (1 − t a/b)/(1 − a/b) = (b − t a)/(b − a)
        div(b.clone() - t.clone() * a.clone(), &(b.clone() - a.clone()))
    };
    let (own, other) = match sign {
        WallSign::Plus => (v, u),
        WallSign::Minus => (u, v),
    };
    let n = own.len();
    if n > 16 {
        return Err(EvalError::SizeCap { size: n, cap: 16 });
    }
    let mut total = S::zero();
    for mask in subsets_of_size(n, l) {
        let mut term = one.clone();
        for i in 0..n {
            if mask >> i & 1 == 0 {
                continue;
            }
            for j in 0..n {
                if mask >> j & 1 == 0 {
                    term = term
                        * match sign {
                            WallSign::Plus => ratio(&own[i], &own[j])?,
                            WallSign::Minus => ratio(&own[j], &own[i])?,
                        };
                }
            }
            for x in other {
                term = term
                    * match sign {
                        WallSign::Plus => ratio(x, &own[i])?,
                        WallSign::Minus => ratio(&own[i], x)?,
                    };
            }
        }
        total = total + term;
    }
    Ok(total)
}

fn tri(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

/// Both sides of the (−z)^ℓ coefficient identity between the two χ_t-genus sums.
pub fn verify_coeff_identity<S: Scalar>(l: usize, t: &S, u: &[S], v: &[S]) -> Result<(S, S)> {
    let (n, m) = (u.len(), v.len());
    if n > m {
        return Err(EvalError::Domain("the coefficient identity needs n ≤ m"));
    }
    let lhs = t.powi(tri(l))? * chi_genus_integral(WallSign::Plus, l, t, u, v)?;
    let mut rhs = S::zero();
    for k in 0..=l.min(m - n) {
        let w = t.powi((n * k) as i64 + tri(k) + tri(l - k))?
            * q_binomial((m - n) as i64, k as i64, t)?;
        rhs = rhs + w * chi_genus_integral(WallSign::Minus, l - k, t, u, v)?;
    }
    Ok((lhs, rhs))
}

/// γ^K_d: 1 for d = 1, 0 otherwise.
pub fn gamma_k(d: usize) -> i64 {
    i64::from(d == 1)
}

/// The K-theoretic wall-crossing formula: (+) − (−) against the Dec(ℓ) sum.
/// Without `gamma_filter` every γ_d is taken to be 1.
pub fn verify_wallcrossing_k<S: Scalar>(
    l: usize,
    t: &S,
    u: &[S],
    v: &[S],
    gamma_filter: bool,
) -> Result<(S, S)> {
    let (n, m) = (u.len(), v.len());
    let lhs = chi_genus_integral(WallSign::Plus, l, t, u, v)?
        - chi_genus_integral(WallSign::Minus, l, t, u, v)?;
    let tm1 = t.clone() - S::one();
    let mut rhs = S::zero();
    for k in 1..=l {
        let pref = div(q_factorial((l - k) as i64, t), &q_factorial(l as i64, t))?;
        let tail = chi_genus_integral(WallSign::Minus, l - k, t, u, v)?;
        let mut inner = S::zero();
        for coll in enumerate_dec(l, k, false)? {
            let mut term = S::one();
            for (idx, set) in coll.sets.iter().enumerate() {
                let i = idx + 1;
                let d = set.len();
                let gamma = if gamma_filter { gamma_k(d) } else { 1 };
                if gamma == 0 {
                    term = S::zero();
                    break;
                }
                let rest = coll.complement_after(l, i);
                let a = s_stat(set, &rest, false) + (m * d) as i64;
                let b = s_stat(&rest, set, false) + (n * d) as i64;
                let f = div(q_factorial(d as i64 - 1, t), &tm1)?
                    * S::from_i64(gamma)
                    * t.powi(-(((l - i) * d) as i64))?
                    * (t.powi(a)? - t.powi(b)?);
                term = term * f;
            }
            inner = inner + term;
        }
        rhs = rhs + pref * inner * tail;
    }
    Ok((lhs, rhs))
}

/// The rewritten singleton form with symmetric q-numbers (s = t^{1/2}):
/// t^{ℓ(ℓ−1)/2}((+) − (−)) against Σ_k t^{(m+n−1)k/2}(ℓ−k)_t!/(ℓ)_t! Σ ∏(m−n−s(𝕴_{>i},I_i)+s(I_i,𝕴_{>i}))_t t^{(ℓ−k)(ℓ−k−1)/2}(−).
pub fn verify_wallcrossing_k_symmetric<S: Scalar>(
    l: usize,
    s: &S,
    u: &[S],
    v: &[S],
) -> Result<(S, S)> {
    let (n, m) = (u.len(), v.len());
    let t = s.clone() * s.clone();
    let diff = chi_genus_integral(WallSign::Plus, l, &t, u, v)?
        - chi_genus_integral(WallSign::Minus, l, &t, u, v)?;
    let lhs = t.powi(tri(l))? * diff;
    let mut rhs = S::zero();
    for k in 1..=l {
        let pref = s.powi((m as i64 + n as i64 - 1) * k as i64)?
            * div(
                sym_q_factorial((l - k) as i64, s)?,
                &sym_q_factorial(l as i64, s)?,
            )?;
        let mut inner = S::zero();
        for coll in enumerate_dec(l, k, true)? {
            let mut term = S::one();
            for (idx, set) in coll.sets.iter().enumerate() {
                let rest = coll.complement_after(l, idx + 1);
                let arg =
                    m as i64 - n as i64 - s_stat(&rest, set, false) + s_stat(set, &rest, false);
                term = term * sym_q_number(arg, s)?;
            }
            inner = inner + term;
        }
        let tail = t.powi(tri(l - k))? * chi_genus_integral(WallSign::Minus, l - k, &t, u, v)?;
        rhs = rhs + pref * inner * tail;
    }
    Ok((lhs, rhs))
}

/// Decreasing chains ℓ ≥ h₁ > … > h_k ≥ 1.
pub fn chains(l: usize, k: usize) -> Vec<Vec<usize>> {
    let pool: Vec<usize> = (1..=l).rev().collect();
    combinations(&pool, k)
}

/// Σ_{ℓ≥h₁>…>h_k≥1} ∏(ℓ−2h_i−i+2+d)_t against (d)_t!(ℓ)_t!/((k)_t!(d−k)_t!(ℓ−k)_t!).
pub fn hook_product_identity<S: Scalar>(l: usize, k: usize, d: usize, s: &S) -> Result<(S, S)> {
    check_hook(l, k, d)?;
    let mut lhs = S::zero();
    for ch in chains(l, k) {
        let mut term = S::one();
        for (idx, &h) in ch.iter().enumerate() {
            let i = idx as i64 + 1;
            term = term * sym_q_number(l as i64 - 2 * h as i64 - i + 2 + d as i64, s)?;
        }
        lhs = lhs + term;
    }
    let f = |x: usize| sym_q_factorial(x as i64, s);
    let rhs = div(f(d)? * f(l)?, &(f(k)? * f(d - k)? * f(l - k)?))?;
    Ok((lhs, rhs))
}

fn check_hook(l: usize, k: usize, d: usize) -> Result<()> {
    if l > MAX_DEC {
        return Err(EvalError::SizeCap {
            size: l,
            cap: MAX_DEC,
        });
    }
    if k > l || k > d {
        return Err(EvalError::Domain("the hook identity needs k ≤ ℓ and k ≤ d"));
    }
    Ok(())
}

fn factorial_i(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// The t → 1 limit: Σ (ℓ−k)!/ℓ! ∏(s({h_i}, [ℓ]∖{h₁..h_i}) + d) against C(d,k),
/// with the signed statistic computed from the sets themselves.
pub fn hook_cohomological<S: Scalar>(l: usize, k: usize, d: usize) -> Result<(S, S)> {
    check_hook(l, k, d)?;
    let mut acc = S::zero();
    for coll in enumerate_dec(l, k, true)? {
        let mut term = S::one();
        for (idx, set) in coll.sets.iter().enumerate() {
            let rest = coll.complement_after(l, idx + 1);
            term = term * S::from_i64(s_stat(set, &rest, true) + d as i64);
        }
        acc = acc + term;
    }
    let lhs = div(
        acc * S::from_i64(factorial_i(l - k)),
        &S::from_i64(factorial_i(l)),
    )?;
    let rhs = S::from_i64(factorial_i(d) / (factorial_i(k) * factorial_i(d - k)));
    Ok((lhs, rhs))
}

/// Euler-class integral over M^±(ℓ) in the cohomological setting (the rational subset sums).
pub fn euler_integral<S: Scalar>(sign: WallSign, l: usize, c: &S, u: &[S], v: &[S]) -> Result<S> {
    let (own, other) = match sign {
        WallSign::Plus => (v, u),
        WallSign::Minus => (u, v),
    };
    let n = own.len();
    if n > 16 {
        return Err(EvalError::SizeCap { size: n, cap: 16 });
    }
    let mut total = S::zero();
    for mask in subsets_of_size(n, l) {
        let mut term = S::one();
        for i in 0..n {
            if mask >> i & 1 == 0 {
                continue;
            }
            for j in 0..n {
                if mask >> j & 1 == 0 {
                    let dd = own[i].clone() - own[j].clone();
                    let num = match sign {
                        WallSign::Plus => dd.clone() - c.clone(),
                        WallSign::Minus => dd.clone() + c.clone(),
                    };
                    term = term * div(num, &dd)?;
                }
            }
            for x in other {
                let dd = own[i].clone() - x.clone();
                let den = match sign {
                    WallSign::Plus => dd.clone() - c.clone(),
                    WallSign::Minus => dd.clone() + c.clone(),
                };
                term = term * div(dd, &den)?;
            }
        }
        total = total + term;
    }
    Ok(total)
}

/// The cohomological wall-crossing formula with the general Dec(ℓ) sum and γ_d.
pub fn verify_wallcrossing_cohomological<S: Scalar>(
    l: usize,
    c: &S,
    u: &[S],
    v: &[S],
) -> Result<(S, S)> {
    let (n, m) = (u.len() as i64, v.len() as i64);
    let lhs =
        euler_integral(WallSign::Plus, l, c, u, v)? - euler_integral(WallSign::Minus, l, c, u, v)?;
    let mut rhs = S::zero();
    for k in 1..=l {
        let tail = euler_integral(WallSign::Minus, l - k, c, u, v)?;
        let mut inner = 0i64;
        for coll in enumerate_dec(l, k, false)? {
            let mut term = 1i64;
            for (idx, set) in coll.sets.iter().enumerate() {
                let d = set.len() as i64;
                let rest = coll.complement_after(l, idx + 1);
                term *= factorial_i(set.len() - 1)
                    * gamma_k(set.len())
                    * (s_stat(set, &rest, true) - (n - m) * d);
            }
            inner += term;
        }
        let w = div(
            S::from_i64(inner * factorial_i(l - k)),
            &S::from_i64(factorial_i(l)),
        )?;
        rhs = rhs + w * tail;
    }
    Ok((lhs, rhs))
}

/// Coefficient of (−z)^ℓ on the left of the geometric trigonometric identity.
pub fn geometric_coefficient<S: Scalar>(l: usize, t: &S, u: &[S], v: &[S]) -> Result<S> {
    Ok(t.powi(tri(l))? * chi_genus_integral(WallSign::Plus, l, t, u, v)?)
}

/// ∏_{j=1}^{m−n}(1 − t^{m−j} z) expanded: coefficient of (−z)^k is t^{nk+k(k−1)/2}[m−n choose k]_t.
pub fn geometric_prefactor_coeffs<S: Scalar>(n: usize, m: usize, t: &S) -> Result<Vec<S>> {
    if n > m {
        return Err(EvalError::Domain("needs n ≤ m"));
    }
    (0..=m - n)
        .map(|k| Ok(t.powi((n * k) as i64 + tri(k))? * q_binomial((m - n) as i64, k as i64, t)?))
        .collect()
}
