//! Dense matrices, determinants, and the factorized determinant evaluations.

use alloc::vec::Vec;

use crate::error::{EvalError, Result};
use crate::field::{div, product, Scalar};
use crate::special::{psi_a, qpoch_inf, theta, Truncation};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<S>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: S) {
        self.data[i * self.cols + j] = x;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Determinant: Bareiss over the exact field, partial-pivot LU over the complex one.
    /// A singular matrix gives 0.
    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if S::is_exact() {
            self.det_bareiss()
        } else {
            self.det_lu()
        }
    }

    fn det_lu(&self) -> S {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for k in 0..n {
            let mut piv = k;
            let mut best = a.get(k, k).modulus();
            for i in k + 1..n {
                let m = a.get(i, k).modulus();
                if m > best {
                    best = m;
                    piv = i;
                }
            }
            if a.get(piv, k).is_zero() {
                return S::zero();
            }
            if piv != k {
                a.swap_rows(piv, k);
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det = det * pivot.clone();
            for i in k + 1..n {
                let f = a.get(i, k).clone() / pivot.clone();
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let v = a.get(i, j).clone() - f.clone() * a.get(k, j).clone();
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    fn det_bareiss(&self) -> S {
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let mut a = self.clone();
        let mut sign = S::one();
        let mut prev = S::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return S::zero(),
                }
            }
            let akk = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (akk.clone() * a.get(i, j).clone()
                        - a.get(i, k).clone() * a.get(k, j).clone())
                        / prev.clone();
                    a.set(i, j, v);
                }
            }
            prev = akk;
        }
        sign * a.get(n - 1, n - 1).clone()
    }
}

/// Matrix with entries θ(Λu_i/v_j;p)/(θ(Λ;p)θ(u_i/v_j;p)).
pub fn frobenius_matrix<S: Scalar>(
    u: &[S],
    v: &[S],
    lambda: &S,
    p: &S,
    trunc: &Truncation,
) -> Result<Matrix<S>> {
    let n = u.len();
    if v.len() != n {
        return Err(EvalError::Domain("Frobenius matrix needs |u| = |v|"));
    }
    let tl = theta(lambda, p, trunc)?;
    Matrix::try_from_fn(n, n, |i, j| {
        let x = div(u[i].clone(), &v[j])?;
        let num = theta(&(lambda.clone() * x.clone()), p, trunc)?;
        div(num, &(tl.clone() * theta(&x, p, trunc)?))
    })
}

/// Factorized value of det(frobenius_matrix).
pub fn frobenius_closed<S: Scalar>(
    u: &[S],
    v: &[S],
    lambda: &S,
    p: &S,
    trunc: &Truncation,
) -> Result<S> {
    let n = u.len();
    if v.len() != n {
        return Err(EvalError::Domain("Frobenius matrix needs |u| = |v|"));
    }
    let pu = product(u.iter().cloned());
    let pv = product(v.iter().cloned());
    let mut num = theta(&div(lambda.clone() * pu, &pv)?, p, trunc)?;
    for j in 0..n {
        for i in 0..j {
            num = num
                * u[j].clone()
                * theta(&div(u[i].clone(), &u[j])?, p, trunc)?
                * theta(&div(v[j].clone(), &v[i])?, p, trunc)?;
            num = div(num, &v[j])?;
        }
    }
    let mut den = theta(lambda, p, trunc)?;
    for ui in u {
        for vj in v {
            den = den * theta(&div(ui.clone(), vj)?, p, trunc)?;
        }
    }
    div(num, &den)
}

/// The p = 0 factorization (∏v − Λ∏u)∏_{i<j}(u_j−u_i)(v_i−v_j)/((1−Λ)∏(v_j−u_i)).
pub fn trig_frobenius_closed<S: Scalar>(u: &[S], v: &[S], lambda: &S) -> Result<S> {
    let n = u.len();
    let mut num = product(v.iter().cloned()) - lambda.clone() * product(u.iter().cloned());
    for j in 0..n {
        for i in 0..j {
            num = num * (u[j].clone() - u[i].clone()) * (v[i].clone() - v[j].clone());
        }
    }
    let mut den = S::one() - lambda.clone();
    for ui in u {
        for vj in v {
            den = den * (vj.clone() - ui.clone());
        }
    }
    div(num, &den)
}

/// Matrix (ψ_j^{A_{n−1}}(u_k;p,r))_{j,k}.
pub fn psi_matrix<S: Scalar>(u: &[S], p: &S, r: &S, trunc: &Truncation) -> Result<Matrix<S>> {
    let n = u.len();
    Matrix::try_from_fn(n, n, |j, k| psi_a(j + 1, n, &u[k], p, r, trunc))
}

/// Both sides of the elliptic Vandermonde factorization.
pub fn elliptic_vandermonde_check<S: Scalar>(
    u: &[S],
    p: &S,
    r: &S,
    trunc: &Truncation,
) -> Result<(S, S)> {
    let n = u.len();
    if n == 0 {
        return Err(EvalError::Domain(
            "the Vandermonde factorization needs n ≥ 1",
        ));
    }
    let lhs = psi_matrix(u, p, r, trunc)?.det();
    let pn = p.powi(n as i64)?;
    let ratio = div(qpoch_inf(p, p, trunc)?, &qpoch_inf(&pn, &pn, trunc)?)?.powi(n as i64)?;
    let mut rhs = ratio * theta(&(r.clone() * product(u.iter().cloned())), p, trunc)?;
    for j in 0..n {
        for i in 0..j {
            rhs = rhs * u[j].clone() * theta(&div(u[i].clone(), &u[j])?, p, trunc)?;
        }
    }
    Ok((lhs, rhs))
}

/// Cauchy-Vandermonde matrix X: rows 1/(v_i−u_j) for i ≤ m, then u_j^{n−i}.
pub fn cauchy_vandermonde_matrix<S: Scalar>(u: &[S], v: &[S]) -> Result<Matrix<S>> {
    let (n, m) = (u.len(), v.len());
    if m > n {
        return Err(EvalError::Domain("Cauchy-Vandermonde matrix needs n ≥ m"));
    }
    Matrix::try_from_fn(n, n, |i, j| {
        if i < m {
            div(S::one(), &(v[i].clone() - u[j].clone()))
        } else {
            u[j].powi((n - 1 - i) as i64)
        }
    })
}

/// ∏_{i<j≤m}(v_j−v_i) ∏_{i<j≤n}(u_i−u_j) / ∏(v_i−u_k).
pub fn cauchy_vandermonde_closed<S: Scalar>(u: &[S], v: &[S]) -> Result<S> {
    if v.len() > u.len() {
        return Err(EvalError::Domain("Cauchy-Vandermonde matrix needs n ≥ m"));
    }
    let num = vandermonde(v) * vandermonde_rev(u);
    let mut den = S::one();
    for vi in v {
        for uk in u {
            den = den * (vi.clone() - uk.clone());
        }
    }
    div(num, &den)
}

/// ∏_{i<j}(x_j − x_i).
pub fn vandermonde<S: Scalar>(x: &[S]) -> S {
    let mut acc = S::one();
    for j in 0..x.len() {
        for i in 0..j {
            acc = acc * (x[j].clone() - x[i].clone());
        }
    }
    acc
}

/// ∏_{i<j}(x_i − x_j).
pub fn vandermonde_rev<S: Scalar>(x: &[S]) -> S {
    let mut acc = S::one();
    for j in 0..x.len() {
        for i in 0..j {
            acc = acc * (x[i].clone() - x[j].clone());
        }
    }
    acc
}
