use num_complex::Complex64;
use proptest::prelude::*;
use qsource::engine::{Sample, Sampler};
use qsource::linalg::*;
use qsource::special::{psi_a, qpoch_inf, theta};
use qsource::{FieldKind, Matrix, Scalar, Truncation, C64, Q};

fn q(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

fn cofactor_det(m: &Matrix<Q>) -> Q {
    let n = m.rows();
    if n == 0 {
        return q(1, 1);
    }
    let mut total = q(0, 1);
    for j in 0..n {
        let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
            m.get(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = m.get(0, j).clone() * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn rational_matrix(s: &mut Sampler, n: usize) -> Matrix<Q> {
    Matrix::from_fn(n, n, |_, _| Q::draw(s))
}

#[test]
fn det_small_cases() {
    assert_eq!(Matrix::<Q>::identity(3).det(), q(1, 1));
    let m = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(3, 1), q(4, 1)]]);
    assert_eq!(m.det(), q(-2, 1));
    let c = Matrix::from_rows(vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
        vec![Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)],
    ]);
    assert!((c.det() - Complex64::new(-2.0, 0.0)).norm() < 1e-14);
}

#[test]
fn singular_matrix_has_zero_determinant() {
    let m = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]);
    assert_eq!(m.det(), q(0, 1));
    let zero = Matrix::from_fn(3, 3, |_, _| Complex64::new(0.0, 0.0));
    assert_eq!(zero.det(), Complex64::new(0.0, 0.0));
}

#[test]
fn exact_det_matches_cofactor_expansion() {
    let mut s = Sampler::new(11, FieldKind::Exact, 1e-3);
    for _ in 0..10 {
        let m = rational_matrix(&mut s, 5);
        assert_eq!(m.det(), cofactor_det(&m));
    }
}

#[test]
fn complex_det_matches_exact_det() {
    let mut s = Sampler::new(12, FieldKind::Exact, 1e-3);
    let m = rational_matrix(&mut s, 5);
    let exact = m.det().to_c64();
    let c = Matrix::from_fn(5, 5, |i, j| m.get(i, j).to_c64());
    assert!(c.det().residual(&exact) < 1e-12);
}

#[test]
fn det_multiplicative_on_seeded_pairs() {
    let mut s = Sampler::new(13, FieldKind::Exact, 1e-3);
    for _ in 0..100 {
        let a = rational_matrix(&mut s, 4);
        let b = rational_matrix(&mut s, 4);
        assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }
}

#[test]
fn frobenius_one_by_one() {
    let tr = Truncation::default();
    let (u, v, l, p) = (
        Complex64::new(0.7, 0.2),
        Complex64::new(1.4, -0.5),
        Complex64::new(0.3, 0.9),
        Complex64::new(0.2, 0.1),
    );
    let m = frobenius_matrix(&[u], &[v], &l, &p, &tr).unwrap();
    let want = theta(&(l * u / v), &p, &tr).unwrap()
        / (theta(&l, &p, &tr).unwrap() * theta(&(u / v), &p, &tr).unwrap());
    assert!(m.det().residual(&want) < 1e-14);
    assert!(
        frobenius_closed(&[u], &[v], &l, &p, &tr)
            .unwrap()
            .residual(&want)
            < 1e-14
    );
}

#[test]
fn frobenius_at_zero_nome_is_trigonometric() {
    let tr = Truncation::default();
    let mut s = Sampler::new(14, FieldKind::Exact, 1e-3);
    let u: Vec<Q> = s.draw_vec(2);
    let v: Vec<Q> = s.draw_vec(2);
    let l: Q = s.draw();
    let zero = q(0, 1);
    let det = frobenius_matrix(&u, &v, &l, &zero, &tr).unwrap().det();
    assert_eq!(det, trig_frobenius_closed(&u, &v, &l).unwrap());
    assert_eq!(frobenius_closed(&u, &v, &l, &zero, &tr).unwrap(), det);
}

#[test]
fn frobenius_closed_matches_determinant() {
    let tr = Truncation::default();
    let mut s = Sampler::new(15, FieldKind::Complex, 1e-3);
    let p = Complex64::new(0.3, 0.0);
    for _ in 0..10 {
        let u: Vec<C64> = s.draw_vec(4);
        let v: Vec<C64> = s.draw_vec(4);
        let l: C64 = s.draw();
        let det = frobenius_matrix(&u, &v, &l, &p, &tr).unwrap().det();
        let closed = frobenius_closed(&u, &v, &l, &p, &tr).unwrap();
        assert!(det.residual(&closed) <= 1e-9, "{det} vs {closed}");
    }
}

#[test]
fn frobenius_closed_follows_row_and_column_swaps() {
    let tr = Truncation::default();
    let mut s = Sampler::new(16, FieldKind::Complex, 1e-3);
    let p = Complex64::new(0.25, 0.1);
    let u: Vec<C64> = s.draw_vec(3);
    let v: Vec<C64> = s.draw_vec(3);
    let l: C64 = s.draw();
    let base = frobenius_closed(&u, &v, &l, &p, &tr).unwrap();
    let mut u2 = u.clone();
    u2.swap(0, 2);
    let swapped_u = frobenius_closed(&u2, &v, &l, &p, &tr).unwrap();
    assert!(swapped_u.residual(&-base) <= 1e-10);
    let mut v2 = v.clone();
    v2.swap(0, 1);
    let both = frobenius_closed(&u2, &v2, &l, &p, &tr).unwrap();
    assert!(both.residual(&base) <= 1e-10);
}

#[test]
fn elliptic_vandermonde_single_variable() {
    let tr = Truncation::default();
    let (u, p, r) = (
        Complex64::new(0.8, 0.3),
        Complex64::new(0.2, 0.0),
        Complex64::new(1.1, -0.4),
    );
    let (lhs, rhs) = elliptic_vandermonde_check(&[u], &p, &r, &tr).unwrap();
    let want = theta(&(r * u), &p, &tr).unwrap();
    assert!(lhs.residual(&want) < 1e-13);
    assert!(rhs.residual(&want) < 1e-13);
    assert!(psi_a(1, 1, &u, &p, &r, &tr).unwrap().residual(&want) < 1e-13);
}

#[test]
fn elliptic_vandermonde_at_zero_nome_is_exact() {
    let tr = Truncation::default();
    let u = vec![q(1, 2), q(-3, 1), q(5, 7)];
    let r = q(2, 3);
    let (lhs, rhs) = elliptic_vandermonde_check(&u, &q(0, 1), &r, &tr).unwrap();
    let mut want = q(1, 1) - r * u[0].clone() * u[1].clone() * u[2].clone();
    for j in 0..3 {
        for i in 0..j {
            want *= u[j].clone() - u[i].clone();
        }
    }
    assert_eq!(lhs, want);
    assert_eq!(rhs, want);
}

#[test]
fn elliptic_vandermonde_seeded_points() {
    let tr = Truncation::default();
    for n in 1..=5 {
        let mut s = Sampler::new(100 + n as u64, FieldKind::Complex, 1e-3);
        for _ in 0..50 {
            let u: Vec<C64> = s.draw_vec(n);
            let r: C64 = s.draw();
            let p = s.draw_p();
            let (lhs, rhs) = elliptic_vandermonde_check(&u, &p, &r, &tr).unwrap();
            assert!(lhs.residual(&rhs) <= 1e-9, "n={n}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn elliptic_vandermonde_prefactor_at_three_quarters() {
    let tr = Truncation::default();
    let p = Complex64::new(0.25, 0.0);
    let u = vec![
        Complex64::new(0.9, 0.1),
        Complex64::new(-0.4, 1.2),
        Complex64::new(1.7, -0.6),
    ];
    let r = Complex64::new(0.6, 0.5);
    let (lhs, rhs) = elliptic_vandermonde_check(&u, &p, &r, &tr).unwrap();
    let ratio = qpoch_inf(&p, &p, &tr).unwrap() / qpoch_inf(&p.powi(3), &p.powi(3), &tr).unwrap();
    let mut manual = ratio.powi(3) * theta(&(r * u[0] * u[1] * u[2]), &p, &tr).unwrap();
    for j in 0..3 {
        for i in 0..j {
            manual *= u[j] * theta(&(u[i] / u[j]), &p, &tr).unwrap();
        }
    }
    assert!(rhs.residual(&manual) < 1e-12);
    assert!(lhs.residual(&rhs) <= 1e-9);
}

#[test]
fn elliptic_vandermonde_rejects_empty_input() {
    let tr = Truncation::default();
    assert!(elliptic_vandermonde_check::<C64>(
        &[],
        &Complex64::new(0.2, 0.0),
        &Complex64::new(1.0, 0.0),
        &tr
    )
    .is_err());
}

#[test]
fn cauchy_vandermonde_small() {
    let (u, v) = (q(3, 1), q(7, 2));
    let m = cauchy_vandermonde_matrix(&[u.clone()], &[v.clone()]).unwrap();
    let want = q(1, 1) / (v - u.clone());
    assert_eq!(m.det(), want);
    assert_eq!(cauchy_vandermonde_closed(&[u], &[q(7, 2)]).unwrap(), want);

    let u = vec![q(2, 1), q(-5, 3)];
    let m = cauchy_vandermonde_matrix(&u, &[]).unwrap();
    assert_eq!(m.det(), u[0].clone() - u[1].clone());
    assert_eq!(
        cauchy_vandermonde_closed(&u, &[]).unwrap(),
        u[0].clone() - u[1].clone()
    );
}

#[test]
fn cauchy_vandermonde_four_by_two() {
    let mut s = Sampler::new(17, FieldKind::Exact, 1e-3);
    for _ in 0..10 {
        let u: Vec<Q> = s.draw_vec(4);
        let v: Vec<Q> = s.draw_vec(2);
        let Ok(closed) = cauchy_vandermonde_closed(&u, &v) else {
            continue;
        };
        assert_eq!(cauchy_vandermonde_matrix(&u, &v).unwrap().det(), closed);
    }
}

#[test]
fn cauchy_vandermonde_rejects_coincident_points() {
    assert!(cauchy_vandermonde_closed(&[q(1, 1)], &[q(1, 1)]).is_err());
    assert!(cauchy_vandermonde_matrix(&[q(1, 1)], &[q(1, 1)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn det_multiplicative(seed in any::<u64>()) {
        let mut s = Sampler::new(seed, FieldKind::Exact, 1e-3);
        let a = rational_matrix(&mut s, 4);
        let b = rational_matrix(&mut s, 4);
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }

    #[test]
    fn det_of_transpose(seed in any::<u64>()) {
        let mut s = Sampler::new(seed, FieldKind::Exact, 1e-3);
        let a = rational_matrix(&mut s, 4);
        prop_assert_eq!(a.transpose().det(), a.det());
    }
}
