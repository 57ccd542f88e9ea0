//! Invariance of the named forms under the full group, not just the
//! generators, and the exact identity suites.

use std::sync::OnceLock;

use modcurve::group::{coset_decomposition, Group, Variant, WeilGenerators, WeilTable};
use modcurve::invariants::{self, Poly};
use proptest::prelude::*;

const PRIMES: [u32; 3] = [7, 11, 13];

fn tables() -> &'static [(Group, WeilTable)] {
    static T: OnceLock<Vec<(Group, WeilTable)>> = OnceLock::new();
    T.get_or_init(|| {
        PRIMES
            .iter()
            .map(|&p| {
                let variant = if p == 13 { Variant::Sl } else { Variant::Psl };
                let g = Group::new(p, variant).unwrap();
                let t = WeilTable::new(&g, WeilGenerators::new(p).unwrap()).unwrap();
                (g, t)
            })
            .collect()
    })
}

fn invariant_forms() -> &'static [Vec<Poly>] {
    static F: OnceLock<Vec<Vec<Poly>>> = OnceLock::new();
    F.get_or_init(|| {
        let k = invariants::covariants7();
        vec![vec![k.f, k.nabla, k.c], vec![invariants::nabla11()], vec![invariants::phi4()]]
    })
}

fn all_pass(rows: &[modcurve::VerificationReport]) -> Result<(), String> {
    match rows.iter().find(|r| !r.passed()) {
        Some(r) => Err(format!("{}: {}", r.check_id, r.details)),
        None => Ok(()),
    }
}

#[test]
fn klein_identities_hold_exactly() {
    all_pass(&invariants::klein7_identities(&WeilGenerators::new(7).unwrap())).unwrap();
}

#[test]
fn level_eleven_exact_identities() {
    all_pass(&invariants::forms11_exact(&WeilGenerators::new(11).unwrap())).unwrap();
}

#[test]
fn level_thirteen_exact_identities() {
    all_pass(&invariants::forms13_identities(&WeilGenerators::new(13).unwrap())).unwrap();
}

#[test]
fn fourteen_forms_are_permuted_like_the_cosets() {
    let (g, t) = &tables()[2];
    let cos = coset_decomposition(g).unwrap();
    let row = invariants::phi_coset_check(g, t, &cos);
    assert!(row.passed(), "{}", row.details);
}

#[test]
fn variant_cubic_is_not_homogeneous() {
    assert_eq!(invariants::nabla11_inhomogeneous_variant().homogeneous_degree(), None);
    assert_eq!(invariants::nabla11().homogeneous_degree(), Some(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn forms_are_invariant_under_random_elements(k in 0usize..3, a in any::<prop::sample::Index>()) {
        let (g, t) = &tables()[k];
        let m = t.matrix_of(a.index(g.order()));
        for f in &invariant_forms()[k] {
            prop_assert_eq!(&f.substitute_linear(m), f);
        }
    }
}
