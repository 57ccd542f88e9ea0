//! Orders, class equations and the projective Weil representation.

use std::sync::OnceLock;

use modcurve::cyclo::CycloNum;
use modcurve::group::{self, coset_decomposition, Group, Variant, WeilGenerators, WeilTable};
use modcurve::ExactMatrix;
use proptest::prelude::*;

fn tables() -> &'static [(Group, WeilTable)] {
    static T: OnceLock<Vec<(Group, WeilTable)>> = OnceLock::new();
    T.get_or_init(|| {
        [7u32, 11, 13]
            .iter()
            .map(|&p| {
                let g = Group::new(p, Variant::Psl).unwrap();
                let t = WeilTable::new(&g, WeilGenerators::new(p).unwrap()).unwrap();
                (g, t)
            })
            .collect()
    })
}

fn equal_up_to_sign(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    a == b || a == &b.scale(&CycloNum::int(-1))
}

#[test]
fn group_orders_by_direct_count() {
    for p in [5u32, 7, 11, 13, 17] {
        // Oracle: count matrices of determinant one over F_p, then halve.
        let mut sl = 0usize;
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a * d + p * p - b * c) % p == 1 {
                            sl += 1;
                        }
                    }
                }
            }
        }
        let g = Group::new(p, Variant::Psl).unwrap();
        assert_eq!(g.order(), sl / 2, "p = {p}");
        assert_eq!(g.order(), (p * (p * p - 1) / 2) as usize);
    }
}

#[test]
fn class_equation() {
    for p in [5u32, 7, 11, 13] {
        for v in [Variant::Psl, Variant::Sl] {
            let g = Group::new(p, v).unwrap();
            let classes = g.conjugacy_classes();
            assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), g.order());
            for c in classes {
                assert_eq!(g.order() % c.size, 0);
                assert_eq!(c.members.len(), c.size);
                for &m in &c.members {
                    assert_eq!(g.element_order(m), c.order);
                    assert_eq!(g.class_of(m), g.class_of(c.rep));
                }
            }
        }
    }
}

#[test]
fn words_evaluate_to_their_elements() {
    for p in [7u32, 13] {
        let g = Group::new(p, Variant::Psl).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.eval_word(g.word(i)), i);
        }
    }
}

#[test]
fn weil_generators_satisfy_the_presentation() {
    for p in [7u32, 11, 13] {
        let w = WeilGenerators::new(p).unwrap();
        let id = ExactMatrix::identity(w.dim);
        let s2 = w.s.mul(&w.s);
        let want = if p == 13 { id.scale(&CycloNum::int(-1)) } else { id.clone() };
        assert_eq!(s2, want, "S² at p = {p}");
        assert_eq!(w.t.pow(p as u64), id, "T^p at p = {p}");
        assert_eq!(w.s.mul(&w.t).pow(3), id, "(ST)³ at p = {p}");
        assert!(group::generator_relations(&w).iter().all(|r| r.passed()));
    }
}

#[test]
fn t_is_diagonal_with_distinct_quadratic_eigenvalues() {
    // In the theta basis, T acts on E_t by a root of unity ζ^(c t²).
    for p in [7u32, 11, 13] {
        let w = WeilGenerators::theta_basis(p).unwrap();
        let m = w.dim;
        let mut exps = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    assert!(w.t.get(i, j).is_zero_value());
                }
            }
            let d = w.t.get(i, i).clone();
            let k = (0..p as i64).find(|&k| d == CycloNum::root_of_unity(p, k)).expect("diagonal entry is a p-th root of unity");
            exps.push(k);
        }
        // The exponents are c·t² for t = 1..m and a fixed unit c.
        let c = exps[0];
        for (i, &e) in exps.iter().enumerate() {
            let t = i as i64 + 1;
            assert_eq!(e, (c * t * t).rem_euclid(p as i64), "p = {p}, t = {t}");
        }
    }
}

#[test]
fn cosets_of_the_borel_subgroup() {
    for p in [7u32, 11, 13] {
        let g = Group::new(p, Variant::Psl).unwrap();
        let cos = coset_decomposition(&g).unwrap();
        assert_eq!(cos.len(), p as usize + 1);
        // Each generator permutes the cosets.
        for gen in [g.s(), g.t()] {
            let mut perm = cos.action(&g, gen);
            perm.sort_unstable();
            assert_eq!(perm, (0..=p as usize).collect::<Vec<_>>());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn weil_table_is_a_projective_homomorphism(k in 0usize..3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (g, t) = &tables()[k];
        let i = a.index(g.order());
        let j = b.index(g.order());
        let prod = t.matrix_of(i).mul(t.matrix_of(j));
        prop_assert!(equal_up_to_sign(&prod, t.matrix_of(g.mul(i, j))));
    }

    #[test]
    fn group_law_is_associative(k in 0usize..3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let (g, _) = &tables()[k];
        let (i, j, l) = (a.index(g.order()), b.index(g.order()), c.index(g.order()));
        prop_assert_eq!(g.mul(g.mul(i, j), l), g.mul(i, g.mul(j, l)));
        prop_assert_eq!(g.mul(i, g.inv(i)), g.identity());
    }
}
