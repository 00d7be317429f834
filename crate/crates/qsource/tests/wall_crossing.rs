use proptest::prelude::*;
use qsource::engine::Sampler;
use qsource::special::{q_binomial, sym_q_number};
use qsource::wall_crossing::*;
use qsource::{FieldKind, Scalar, Q};

fn q(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

fn distinct(s: &mut Sampler, n: usize, taken: &[Q]) -> Vec<Q> {
    loop {
        let u: Vec<Q> = s.draw_vec(n);
        let fresh = (0..n).all(|j| (0..j).all(|i| u[i] != u[j]) && !taken.contains(&u[j]));
        if fresh {
            return u;
        }
    }
}

fn point(s: &mut Sampler, n: usize, m: usize) -> (Vec<Q>, Vec<Q>, Q) {
    let u = distinct(s, n, &[]);
    let v = distinct(s, m, &u);
    let t = loop {
        let t: Q = s.draw();
        if t != q(1, 1) && t != q(-1, 1) {
            break t;
        }
    };
    (u, v, t)
}

fn sets(c: &DecCollection) -> Vec<Vec<usize>> {
    c.sets.clone()
}

#[test]
fn dec_enumeration_examples() {
    let mut one_block: Vec<Vec<Vec<usize>>> = (1..=2)
        .flat_map(|k| enumerate_dec(2, k, false).unwrap())
        .filter(|c| c.sets.len() == 1)
        .map(|c| sets(&c))
        .collect();
    one_block.sort();
    assert_eq!(
        one_block,
        vec![vec![vec![1]], vec![vec![1, 2]], vec![vec![2]]]
    );
    assert_eq!(enumerate_dec(2, 1, false).unwrap().len(), 2);

    let single = enumerate_dec(2, 2, true).unwrap();
    assert_eq!(single.len(), 1);
    assert_eq!(sets(&single[0]), vec![vec![2], vec![1]]);

    for l in 0..=5 {
        let empty = enumerate_dec(l, 0, false).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].sets.is_empty());
    }
    assert!(enumerate_dec(MAX_DEC + 1, 1, false).is_err());
}

#[test]
fn dec_collections_satisfy_invariants() {
    for l in 0..=6 {
        for k in 0..=l {
            for c in enumerate_dec(l, k, false).unwrap() {
                assert_eq!(c.size(), k);
                let mins: Vec<usize> = c.sets.iter().map(|s| s[0]).collect();
                assert!(mins.windows(2).all(|w| w[0] > w[1]));
                let mut all: Vec<usize> = c.sets.concat();
                all.sort();
                all.dedup();
                assert_eq!(all.len(), k);
                assert!(all.iter().all(|&x| (1..=l).contains(&x)));
            }
        }
    }
}

#[test]
fn singleton_collections_biject_with_chains() {
    for l in 0..=7 {
        for k in 0..=l {
            let dec = enumerate_dec(l, k, true).unwrap();
            let ch = chains(l, k);
            assert_eq!(dec.len(), ch.len());
            let mut from_dec: Vec<Vec<usize>> = dec.iter().map(|c| c.sets.concat()).collect();
            let mut from_chain = ch.clone();
            from_dec.sort();
            from_chain.sort();
            assert_eq!(from_dec, from_chain);
        }
    }
}

#[test]
fn dec_counts_by_brute_force() {
    // An ordered partition into blocks with decreasing minima is fixed by its set of blocks,
    // so |Dec(ℓ, k)| = C(ℓ, k) · Bell(k).
    let bell = [1usize, 1, 2, 5, 15, 52, 203];
    let binom = |n: usize, k: usize| -> usize { (0..k).fold(1, |a, i| a * (n - i) / (i + 1)) };
    for l in 0..=6 {
        for k in 0..=l {
            assert_eq!(
                enumerate_dec(l, k, false).unwrap().len(),
                binom(l, k) * bell[k],
                "l={l} k={k}"
            );
        }
    }
}

#[test]
fn s_statistic_examples() {
    assert_eq!(s_stat(&[2], &[1, 3], false), 1);
    assert_eq!(s_stat(&[1], &[2, 3], true), 2);
    assert_eq!(s_stat(&[3], &[1, 2], true), -2);
    assert_eq!(s_stat(&[], &[1, 2], true), 0);
}

#[test]
fn chi_genus_examples() {
    let mut s = Sampler::new(1, FieldKind::Exact, 1e-3);
    let (u, v, t) = point(&mut s, 2, 4);
    for sign in [WallSign::Plus, WallSign::Minus] {
        assert_eq!(chi_genus_integral(sign, 0, &t, &u, &v).unwrap(), q(1, 1));
    }
    for l in 0..=4 {
        let want = q_binomial(4, l as i64, &q(1, 1)).unwrap();
        assert_eq!(
            chi_genus_integral(WallSign::Plus, l, &q(1, 1), &u, &v).unwrap(),
            want
        );
    }
}

#[test]
fn coefficient_identity_examples() {
    let mut s = Sampler::new(2, FieldKind::Exact, 1e-3);
    let (u, v, t) = point(&mut s, 3, 5);
    assert_eq!(
        verify_coeff_identity(0, &t, &u, &v).unwrap(),
        (q(1, 1), q(1, 1))
    );
    let (lhs, rhs) = verify_coeff_identity(3, &t, &u, &v).unwrap();
    assert_eq!(lhs, rhs);
    let (u, v, t) = point(&mut s, 3, 3);
    let (lhs, rhs) = verify_coeff_identity(2, &t, &u, &v).unwrap();
    assert_eq!(lhs, rhs);
    assert!(verify_coeff_identity(1, &t, &v, &u[..2]).is_err());
}

#[test]
fn coefficient_identity_grid() {
    let mut s = Sampler::new(3, FieldKind::Exact, 1e-3);
    for m in 0..=5 {
        for n in 0..=m {
            for l in 0..=4 {
                let (u, v, t) = point(&mut s, n, m);
                let (lhs, rhs) = verify_coeff_identity(l, &t, &u, &v).unwrap();
                assert_eq!(lhs, rhs, "l={l} n={n} m={m}");
            }
        }
    }
}

#[test]
fn k_theoretic_formula_single_wall() {
    let mut s = Sampler::new(4, FieldKind::Exact, 1e-3);
    let (u, v, t) = point(&mut s, 2, 3);
    let (lhs, rhs) = verify_wallcrossing_k(1, &t, &u, &v, true).unwrap();
    assert_eq!(lhs, rhs);
    let (lhs, rhs) = verify_wallcrossing_k(3, &t, &u, &v, true).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn k_theoretic_formula_needs_gamma_filter() {
    let mut s = Sampler::new(5, FieldKind::Exact, 1e-3);
    let (u, v, t) = point(&mut s, 2, 4);
    let (lhs, rhs) = verify_wallcrossing_k(2, &t, &u, &v, false).unwrap();
    assert_ne!(lhs, rhs);
}

#[test]
fn k_theoretic_forms_on_grid() {
    let mut s = Sampler::new(6, FieldKind::Exact, 1e-3);
    for m in 0..=4 {
        for n in 0..=m {
            for l in 0..=3 {
                let (u, v, t) = point(&mut s, n, m);
                let (lhs, rhs) = verify_wallcrossing_k(l, &t, &u, &v, true).unwrap();
                assert_eq!(lhs, rhs, "l={l} n={n} m={m}");
                let (lhs, rhs) = verify_wallcrossing_k_symmetric(l, &t, &u, &v).unwrap();
                assert_eq!(lhs, rhs, "symmetric l={l} n={n} m={m}");
            }
        }
    }
}

#[test]
fn hook_identity_examples() {
    let s = q(2, 1);
    let (lhs, rhs) = hook_product_identity(4, 2, 3, &s).unwrap();
    assert_eq!(lhs, rhs);
    for l in 0..=4 {
        assert_eq!(
            hook_product_identity(l, 0, 3, &s).unwrap(),
            (q(1, 1), q(1, 1))
        );
    }
    for k in 1..=3 {
        let d = 4;
        let want = (0..k).fold(q(1, 1), |a, j| a * sym_q_number(d - j, &s).unwrap());
        let (lhs, rhs) = hook_product_identity(k as usize, k as usize, d as usize, &s).unwrap();
        assert_eq!(lhs, want);
        assert_eq!(rhs, want);
    }
    assert!(hook_product_identity(3, 2, 1, &s).is_err());
}

#[test]
fn hook_identity_full_grid() {
    let values = [q(2, 1), q(-3, 1), q(1, 2), q(5, 3), q(-7, 4)];
    for l in 0..=6 {
        for d in 0..=6 {
            for k in 0..=l.min(d) {
                for s in &values {
                    let (lhs, rhs) = hook_product_identity(l, k, d, s).unwrap();
                    assert_eq!(lhs, rhs, "l={l} k={k} d={d} s={s}");
                }
                let (lhs, rhs) = hook_cohomological::<Q>(l, k, d).unwrap();
                assert_eq!(lhs, rhs, "t=1 l={l} k={k} d={d}");
            }
        }
    }
}

#[test]
fn cohomological_wall_crossing() {
    let mut s = Sampler::new(7, FieldKind::Exact, 1e-3);
    for m in 0..=4 {
        for n in 0..=m {
            for l in 0..=3 {
                let (u, v, c) = point(&mut s, n, m);
                let (lhs, rhs) = verify_wallcrossing_cohomological(l, &c, &u, &v).unwrap();
                assert_eq!(lhs, rhs, "l={l} n={n} m={m}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn s_statistic_pairs_sum_to_product(mask in 0u32..(1 << 8), side in 0u32..(1 << 8)) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for x in 0..8 {
            if mask >> x & 1 == 1 {
                if side >> x & 1 == 1 { a.push(x as usize + 1) } else { b.push(x as usize + 1) }
            }
        }
        let total = (a.len() * b.len()) as i64;
        prop_assert_eq!(s_stat(&a, &b, false) + s_stat(&b, &a, false), total);
        prop_assert_eq!(s_stat(&a, &b, true), s_stat(&a, &b, false) - s_stat(&b, &a, false));
    }
}
