//! The action of `PSL(2, p)` on quartic spans, character tables and the
//! decompositions built from them.

use std::sync::OnceLock;

use modcurve::cyclo::CycloNum;
use modcurve::group::{Group, Variant, WeilTable};
use modcurve::invariants;
use modcurve::rep::{self, CharacterTable, SpanRep};
use proptest::prelude::*;

struct Setup {
    grp: Group,
    table: WeilTable,
    rep: SpanRep,
}

fn setups() -> &'static [Setup] {
    static S: OnceLock<Vec<Setup>> = OnceLock::new();
    S.get_or_init(|| {
        [7u32, 11, 13]
            .iter()
            .map(|&p| {
                let rep = SpanRep::preferred(p).unwrap();
                let grp = Group::new(p, Variant::Psl).unwrap();
                let table = WeilTable::new(&grp, rep.gens.clone()).unwrap();
                Setup { grp, table, rep }
            })
            .collect()
    })
}

/// Irreducible degrees of `PSL(2, p)` for odd `p ≥ 5`, sorted.
fn psl_degrees(p: u32) -> Vec<u32> {
    let mut d = vec![1, p];
    let (half, a, b) = if p % 4 == 1 { ((p + 1) / 2, (p - 1) / 4, (p - 5) / 4) } else { ((p - 1) / 2, (p - 3) / 4, (p - 3) / 4) };
    d.extend([half, half]);
    d.extend(std::iter::repeat(p - 1).take(a as usize));
    d.extend(std::iter::repeat(p + 1).take(b as usize));
    d.sort_unstable();
    d
}

/// Genus of `X(p)` from Riemann–Hurwitz over the `j`-line.
fn genus_riemann_hurwitz(p: u32) -> i64 {
    let order = (p * (p * p - 1) / 2) as i64;
    1 + order * (p as i64 - 6) / (12 * p as i64)
}

#[test]
fn character_degrees_match_the_known_list() {
    for p in [5u32, 7, 11, 13] {
        let grp = Group::new(p, Variant::Psl).unwrap();
        let tbl = CharacterTable::compute(&grp, 1 << 16).unwrap();
        let mut d = tbl.degrees.clone();
        d.sort_unstable();
        assert_eq!(d, psl_degrees(p), "p = {p}");
        assert!(tbl.orthogonal());
        assert_eq!(tbl.degree_square_sum(), grp.order() as u64);
        assert_eq!(tbl.degrees[tbl.trivial_index()], 1);
    }
}

#[test]
fn hecke_multiplicities_give_the_genus() {
    for s in setups() {
        let p = s.grp.p();
        let tbl = CharacterTable::compute(&s.grp, 1 << 16).unwrap();
        let r: Vec<i64> = (0..tbl.degrees.len()).map(|i| rep::hecke_multiplicity(&s.grp, &tbl, i).unwrap()).collect();
        assert!(r.iter().all(|&x| x >= 0), "p = {p}: {r:?}");
        assert_eq!(r[tbl.trivial_index()], 0);
        let twice: i64 = r.iter().zip(&tbl.degrees).map(|(r, &d)| r * d as i64).sum();
        assert_eq!(twice, 2 * genus_riemann_hurwitz(p), "p = {p}");
        assert_eq!(rep::genus_formula(p), genus_riemann_hurwitz(p));
    }
}

#[test]
fn decompositions_reconstruct_the_character() {
    for s in setups() {
        let p = s.grp.p();
        let tbl = CharacterTable::compute(&s.grp, 1 << 16).unwrap();
        let chi = s.rep.class_character(&s.grp, &s.table).unwrap();
        assert_eq!(chi[s.grp.class_of(s.grp.identity())], CycloNum::int(s.rep.dim() as i64));
        let dec = rep::decompose(&chi, &tbl).unwrap();
        assert!(dec.reconstructs);
        assert_eq!(dec.dim as usize, s.rep.dim(), "p = {p}");
    }
}

#[test]
fn trivial_isotypic_component() {
    let (rank, dev) = rep::trivial_projector_check(13, Some(&invariants::phi4()), 1e-9).unwrap();
    assert_eq!(rank, 1);
    assert!(dev < 1e-9);
    let (rank, _) = rep::trivial_projector_check(11, None, 1e-9).unwrap();
    assert_eq!(rank, 0);
}

#[test]
fn level_thirteen_subspaces_are_invariant_and_independent() {
    let s = &setups()[2];
    let (v1, v7, v13) = rep::subspaces13();
    assert_eq!((v1.len(), v7.len(), v13.len()), (1, 7, 13));
    for v in [&v1, &v7, &v13] {
        assert!(s.rep.is_invariant_subspace(v));
    }
    let all: Vec<_> = v1.iter().chain(&v7).chain(&v13).cloned().collect();
    assert_eq!(modcurve::linalg::poly_span_rank(&all, 0.0), 21);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn span_action_is_a_homomorphism(k in 0usize..3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let s = &setups()[k];
        let (g, h) = (a.index(s.grp.order()), b.index(s.grp.order()));
        let lhs = s.rep.action_matrix(&s.grp, &s.table, g).unwrap().mul(&s.rep.action_matrix(&s.grp, &s.table, h).unwrap());
        let rhs = s.rep.action_matrix(&s.grp, &s.table, s.grp.mul(g, h)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn character_is_a_class_function(k in 0usize..3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let s = &setups()[k];
        let g = a.index(s.grp.order());
        let x = b.index(s.grp.order());
        let conj = s.grp.mul(s.grp.mul(x, g), s.grp.inv(x));
        let t1 = s.rep.action_matrix(&s.grp, &s.table, g).unwrap().trace();
        let t2 = s.rep.action_matrix(&s.grp, &s.table, conj).unwrap().trace();
        prop_assert_eq!(t1, t2);
    }
}
