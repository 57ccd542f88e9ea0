//! Substitution, division and symmetric-function properties of sparse
//! polynomials, plus the homogeneity of every named form.

use modcurve::cyclo::CycloNum;
use modcurve::group::WeilGenerators;
use modcurve::invariants;
use modcurve::mpoly::{elementary_symmetric, elementary_symmetric_polys, parse_poly};
use modcurve::{ExactMatrix, Poly};
use proptest::prelude::*;

const N: usize = 3;

fn poly(max_deg: u16, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, N), -5i64..=5), 1..=max_terms).prop_map(|ts| {
        Poly::from_terms(N, ts.into_iter().map(|(e, c)| (e, CycloNum::int(c))))
    })
}

fn matrix() -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(-3i64..=3, N * N).prop_map(|v| {
        ExactMatrix::from_rows((0..N).map(|i| (0..N).map(|j| CycloNum::int(v[i * N + j])).collect()).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linear_substitution_respects_products(f in poly(3, 5), g in poly(3, 5), a in matrix()) {
        let lhs = f.mul(&g).substitute_linear(&a);
        let rhs = f.substitute_linear(&a).mul(&g.substitute_linear(&a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_substitution_respects_sums(f in poly(3, 5), g in poly(3, 5), a in matrix()) {
        prop_assert_eq!(f.add(&g).substitute_linear(&a), f.substitute_linear(&a).add(&g.substitute_linear(&a)));
    }

    #[test]
    fn exact_quotients_are_recovered(f in poly(3, 4), d in poly(2, 3)) {
        prop_assume!(!d.is_zero());
        let q = f.mul(&d).divides_into(&d);
        prop_assert_eq!(q, Some(f));
    }

    #[test]
    fn division_identity(f in poly(4, 6), d in poly(2, 3)) {
        prop_assume!(!d.is_zero());
        let (r, q) = f.div_rem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), f.clone());
        match f.divides_into(&d) {
            Some(q2) => prop_assert_eq!(q2.mul(&d), f),
            None => prop_assert!(!r.is_zero()),
        }
    }

    #[test]
    fn elementary_symmetric_is_permutation_invariant(mut xs in prop::collection::vec(-9i64..=9, 1..7), seed in any::<u64>()) {
        let vals: Vec<CycloNum> = xs.iter().map(|&x| CycloNum::int(x)).collect();
        let e = elementary_symmetric(&vals);
        let k = xs.len();
        xs.rotate_left((seed as usize) % k);
        xs.swap(0, (seed as usize / 7) % k);
        let perm: Vec<CycloNum> = xs.iter().map(|&x| CycloNum::int(x)).collect();
        prop_assert_eq!(e, elementary_symmetric(&perm));
    }

    #[test]
    fn derivative_obeys_leibniz(f in poly(3, 4), g in poly(3, 4), i in 0..N) {
        let lhs = f.mul(&g).diff(i);
        let rhs = f.diff(i).mul(&g).add(&f.mul(&g.diff(i)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn elementary_symmetric_of_roots_gives_the_monic_polynomial() {
    // (x - 1)(x - 2)(x - 3) = x³ - 6x² + 11x - 6
    let e = elementary_symmetric(&[1, 2, 3].map(CycloNum::int));
    assert_eq!(e, [1, 6, 11, 6].map(CycloNum::int).to_vec());
    let vars = ["a", "b"];
    let ps: Vec<Poly> = vec![parse_poly("a", &vars), parse_poly("b", &vars)];
    let es = elementary_symmetric_polys(&ps);
    assert_eq!(es[1], parse_poly("a + b", &vars));
    assert_eq!(es[2], parse_poly("a*b", &vars));
}

#[test]
fn every_named_form_is_homogeneous_of_its_degree() {
    let k = invariants::covariants7();
    assert_eq!(k.f.homogeneous_degree(), Some(4));
    assert_eq!(k.nabla.homogeneous_degree(), Some(6));
    assert_eq!(k.c.homogeneous_degree(), Some(14));
    assert_eq!(k.k.homogeneous_degree(), Some(21));
    assert!(k.deltas.iter().all(|d| d.homogeneous_degree() == Some(3)));
    assert!(k.conics.iter().flatten().all(|c| c.homogeneous_degree() == Some(2)));

    let w11 = WeilGenerators::new(11).unwrap();
    let s = invariants::forms11(&w11);
    assert_eq!(s.nabla.homogeneous_degree(), Some(3));
    assert!(s.phi.iter().all(|p| p.homogeneous_degree() == Some(2)));
    assert!(s.h_relations.iter().chain(&s.bb).all(|p| p.homogeneous_degree() == Some(4)));

    assert!(invariants::a_forms13().iter().all(|a| a.homogeneous_degree() == Some(2)));
    let d = invariants::d_forms13();
    assert!(d.iter().all(|x| x.homogeneous_degree() == Some(3)));
    assert!(invariants::g_forms13(&d).iter().all(|g| g.homogeneous_degree() == Some(6)));
    assert!(invariants::b_forms13().iter().all(|b| b.homogeneous_degree() == Some(4)));
    assert_eq!(invariants::phi4().homogeneous_degree(), Some(4));
}

#[test]
fn non_divisibility_leaves_a_remainder() {
    let vars = ["x", "y"];
    let f: Poly = parse_poly("x^2 + y^2", &vars);
    let d: Poly = parse_poly("x + y", &vars);
    assert!(f.divides_into(&d).is_none());
    let (r, _) = f.div_rem(&d);
    assert!(!r.is_zero());
    let g: Poly = parse_poly("x^2 - y^2", &vars);
    assert_eq!(g.divides_into(&d), Some(parse_poly("x - y", &vars)));
}
