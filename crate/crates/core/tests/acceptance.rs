//! Acceptance run: ten end-to-end criteria, each with a time budget.
//! Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use modcurve::cyclo::{self, CycloNum};
use modcurve::group::{Group, Variant, WeilGenerators};
use modcurve::invariants::{self, check_mod_f};
use modcurve::linalg::{poly_span_rank, Matrix};
use modcurve::locus::{self, KappaPoint};
use modcurve::qtheta;
use modcurve::rep::{self, CharacterTable, SpanRep};
use modcurve::suite::{self, SuiteConfig};
use modcurve::{Poly, VerificationReport};
use num_complex::Complex64;
use num_rational::Rational64;

mod common;
use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn row<'a>(rows: &'a [VerificationReport], id: &str) -> Result<&'a VerificationReport, String> {
    rows.iter().find(|r| r.check_id == id).ok_or_else(|| format!("no row {id}"))
}

fn require_rows(rows: &[VerificationReport], ids: &[&str]) -> Result<(), String> {
    for id in ids {
        let r = row(rows, id)?;
        ensure(r.passed(), format!("{id}: {}", r.details))?;
    }
    Ok(())
}

fn ideal_generation() -> Outcome {
    let start = Instant::now();
    let sys13 = locus::generate_ideal(13).map_err(err)?;
    compare_level13_list(&sys13)?;
    let t13 = start.elapsed();
    let start = Instant::now();
    let sys7 = locus::generate_ideal(7).map_err(err)?;
    ensure(sys7.distinct_count() == 1, format!("p = 7 gives {} quartics", sys7.distinct_count()))?;
    let w = locus::klein_relabel(&sys7).map_err(err)?.ok_or("no signed permutation to the Klein quartic")?;
    let vars: Vec<Poly> = (0..3).map(|i| Poly::var(3, w.perm[i]).scale(&CycloNum::int(w.signs[i]))).collect();
    let klein: Poly = modcurve::mpoly::parse_poly("l^3*m + m^3*n + n^3*l", &["l", "m", "n"]);
    let image = sys7.quartics[0].poly.substitute(&vars);
    ensure(w.scale.abs() == 1 && image == klein.scale(&CycloNum::int(w.scale)), "p = 7 quartic is not λ³μ+μ³ν+ν³λ")?;
    let t7 = start.elapsed();
    ensure(t13 < Duration::from_secs(1) && t7 < Duration::from_secs(1), format!("over 1 s: {t13:?}, {t7:?}"))?;
    Ok(format!("21 quartics at p = 13 match the list; p = 7 is the Klein quartic ({t13:.2?}, {t7:.2?})"))
}

fn generator_relations() -> Outcome {
    for p in [7u32, 11, 13] {
        let w = WeilGenerators::new(p).map_err(err)?;
        let id = Matrix::identity(w.dim);
        let neg = id.scale(&CycloNum::int(-1));
        let s2 = w.s.mul(&w.s);
        ensure(s2 == id || s2 == neg, format!("S² is not ±I at p = {p}"))?;
        ensure(w.t.pow(p as u64) == id, format!("T^p ≠ I at p = {p}"))?;
        ensure(w.s.mul(&w.t).pow(3) == id, format!("(ST)³ ≠ I at p = {p}"))?;
        if p == 13 {
            let pm = w.s.mul(&w.t.pow(12)).mul(&w.s);
            let qm = w.s.mul(&w.t.pow(3));
            ensure(qm.pow(3).mul(&pm.pow(4)).pow(3) == neg, "(Q³P⁴)³ ≠ -I")?;
        }
    }
    Ok("S² = ±I, T^p = I, (ST)³ = I at 7, 11, 13 and (Q³P⁴)³ = -I at 13".into())
}

fn traces() -> Outcome {
    let (s, t) = SpanRep::preferred(11).map_err(err)?.trace_pair();
    ensure((s.clone(), t.clone()) == (CycloNum::int(2), CycloNum::int(-1)), format!("p = 11 traces ({s}, {t})"))?;
    let (s, t) = SpanRep::preferred(13).map_err(err)?.trace_pair();
    let want = (&CycloNum::int(3) + &cyclo::sqrt_p(13, 1).map_err(err)?).scale(1, 2);
    ensure(s == CycloNum::int(1) && t == want, format!("p = 13 traces ({}, {})", s.pretty(), t.pretty()))?;
    Ok(format!("(2, -1) at p = 11 and (1, {}) at p = 13", t.pretty()))
}

fn decomposition() -> Outcome {
    for p in [7u32, 11, 13] {
        let grp = Group::new(p, Variant::Psl).map_err(err)?;
        let tbl = CharacterTable::compute(&grp, 1 << 16).map_err(err)?;
        ensure(tbl.orthogonal(), format!("character table at p = {p} is not orthogonal"))?;
        ensure(tbl.degree_square_sum() == grp.order() as u64, format!("Σd² ≠ |G| at p = {p}"))?;
        let (summary, dec, _) = rep::decompose_preferred(p).map_err(err)?;
        ensure(dec.reconstructs, format!("decomposition at p = {p} does not reconstruct χ"))?;
        let norm: u32 = dec.multiplicities.iter().map(|m| m * m).sum();
        let mut dims = summary.dims.clone();
        dims.sort_unstable();
        match p {
            7 => ensure(dims == [1] && dec.multiplicities[tbl.trivial_index()] == 1, "p = 7 span is not trivial")?,
            11 => ensure(dims == [10] && norm == 1, format!("p = 11: dims {dims:?}, ⟨χ,χ⟩ = {norm}"))?,
            _ => ensure(dims == [1, 7, 13] && norm == 3, format!("p = 13: dims {dims:?}"))?,
        }
    }
    let span = SpanRep::preferred(13).map_err(err)?;
    let (v1, v7, v13) = rep::subspaces13();
    ensure((v1.len(), v7.len(), v13.len()) == (1, 7, 13), "p = 13 bases have the wrong sizes")?;
    for v in [&v1, &v7, &v13] {
        ensure(span.is_invariant_subspace(v), "a p = 13 basis is not closed under the action")?;
    }
    let all: Vec<Poly> = v1.iter().chain(&v7).chain(&v13).cloned().collect();
    ensure(poly_span_rank(&all, 0.0) == 21, "the p = 13 bases are not independent")?;
    Ok("7: trivial; 11: one irreducible of degree 10; 13: 1 ⊕ 7 ⊕ 13, closed and direct".into())
}

fn klein_identities() -> Outcome {
    let k = invariants::covariants7();
    ensure(check_mod_f(&k.syzygy(), &k.f), "syzygy fails")?;
    let deltas = k.all_deltas();
    ensure(deltas.len() == 8, "expected eight δ forms")?;
    for (i, d) in deltas.iter().enumerate() {
        ensure(check_mod_f(&k.resolvent8(d), &k.f), format!("degree-8 resolvent fails for δ #{i}"))?;
    }
    let mut branches = Vec::new();
    for family in &k.conics {
        ensure(family.len() == 7, "expected seven conics per family")?;
        let passing: Vec<i64> = [1i64, -1].into_iter().filter(|&b| family.iter().all(|c| check_mod_f(&k.resolvent7(c, b), &k.f))).collect();
        ensure(passing.len() == 1, format!("branches passing for a conic family: {passing:?}"))?;
        branches.push(passing[0]);
    }
    Ok(format!("syzygy, 8/8 degree-8 resolvents, one degree-7 branch per family {branches:?}"))
}

fn level_thirteen_identities() -> Outcome {
    let rows = invariants::forms13_identities(&WeilGenerators::new(13).map_err(err)?);
    require_rows(&rows, &["forms13.a_twists", "forms13.g_twists", "forms13.psi2", "forms13.e1", "forms13.d_expansions", "forms13.phi6"])?;
    Ok(format!("13/13 twists, Ψ₂ = 2Φ₄, e₁ = 26Ψ₂, D and G expansions; {}", row(&rows, "forms13.phi6")?.details))
}

fn q_series() -> Outcome {
    let j = qtheta::j_series(3);
    let c = |e: i64| j.coefficient(Rational64::from_integer(e));
    for (e, want) in [(-1, 1), (0, 744), (1, 196884), (2, 21493760)] {
        ensure(c(e) == CycloNum::int(want), format!("j coefficient of q^{e} is {}", c(e)))?;
    }
    for p in [2u32, 3, 5, 7, 13] {
        for m in qtheta::verify_modular_equation(p, 30).map_err(err)? {
            ensure(m.status && m.order >= 30, format!("{} fails at {:?}", m.identity, m.first_bad_order))?;
        }
    }
    let k = 30;
    let t = hauptmodul(13, 2, k + 20);
    let j13 = qtheta::j_series(k + 5).substitute_power(13);
    let inner = [1165, 9604, 27272, 41140, 39182, 25660, 12086, 4180, 1064, 196, 25, 2];
    let mut coeffs = vec![13, -982];
    coeffs.extend(inner.iter().map(|c| 13 * c));
    coeffs.push(1);
    let lhs = &(&j13 - &konst(1728)) * &t;
    ensure(vanishes_through(&(&lhs - &poly_in(&t, &coeffs)), k), "p = 13 expansion of 1728(J-1)t fails")?;
    let tau = Complex64::new(0.3, 1.7);
    let mut worst: f64 = 0.0;
    for (p, want) in [(2u32, 4096i64), (3, 729), (5, 125), (7, 49), (13, 13)] {
        let f = qtheta::fricke_check(p, tau, 1e-6).map_err(err)?;
        ensure(f.expected == want && f.passed, format!("Fricke product at p = {p}: {:?} vs {want}", f.product))?;
        worst = worst.max(f.error);
    }
    Ok(format!("j coefficients, modular equations through q^30, p = 13 list, Fricke constants (max error {worst:.1e})"))
}

fn sampling() -> Outcome {
    let cfg = SuiteConfig::default();
    ensure(cfg.taus.len() == 5, "expected five sample parameters")?;
    let mut worst: f64 = 0.0;
    for p in [7u32, 11, 13] {
        let sys = locus::generate_ideal(p).map_err(err)?;
        let (points, bad) = suite::sample_points(&sys, &cfg);
        ensure(bad.is_empty() && points.len() == 5, format!("p = {p}: failed samples {bad:?}"))?;
        for pt in &points {
            let r = sys.residual(&pt.coords).map_err(err)?;
            ensure(r < 1e-9, format!("p = {p}, τ = {}: residual {r:.3e}", pt.tau))?;
            worst = worst.max(r);
        }
    }
    let rows7 = suite::run_suite("sample", 7, &cfg).map_err(err)?;
    let rows11 = suite::run_suite("sample", 11, &cfg).map_err(err)?;
    let residual = |rows: &[VerificationReport], id: &str| -> Result<f64, String> {
        let r = row(rows, id)?;
        ensure(r.passed(), format!("{id}: {}", r.details))?;
        r.residual.ok_or_else(|| format!("{id} has no residual"))
    };
    let cubic = residual(&rows11, "forms11.cubic_relation_on_curve")?;
    ensure(cubic < 1e-8, format!("cubic identity residual {cubic:.3e}"))?;
    let j7 = residual(&rows7, "sample7.j_ratio")?;
    let j11 = residual(&rows11, "forms11.j_ratio")?;
    ensure(j7 < 1e-6 && j11 < 1e-6, format!("J ratio residuals {j7:.3e}, {j11:.3e}"))?;
    Ok(format!("membership {worst:.1e}, cubic {cubic:.1e}, J ratios {j7:.1e} / {j11:.1e}"))
}

fn hecke() -> Outcome {
    let expected: [(u32, i64, Vec<(i64, i64)>); 3] =
        [(7, 3, vec![(3, 1)]), (11, 26, vec![(5, 1), (10, 1), (11, 1)]), (13, 50, vec![(12, 3), (14, 1)])];
    for (p, genus, parts) in expected {
        let grp = Group::new(p, Variant::Psl).map_err(err)?;
        let tbl = CharacterTable::compute(&grp, 1 << 16).map_err(err)?;
        let r: Vec<i64> = (0..tbl.degrees.len()).map(|i| rep::hecke_multiplicity(&grp, &tbl, i)).collect::<Result<_, _>>().map_err(err)?;
        ensure(r.iter().all(|&x| x >= 0), format!("negative multiplicity at p = {p}: {r:?}"))?;
        ensure(r[tbl.trivial_index()] == 0, format!("trivial multiplicity nonzero at p = {p}"))?;
        let twice: i64 = r.iter().zip(&tbl.degrees).map(|(r, &d)| r * d as i64).sum();
        ensure(twice == 2 * genus && rep::genus_formula(p) == genus, format!("Σ r f / 2 = {} at p = {p}", twice / 2))?;
        let mut by_degree = BTreeMap::new();
        for (ri, d) in r.iter().zip(&tbl.degrees) {
            *by_degree.entry(*d as i64).or_insert(0) += ri;
        }
        let got: Vec<(i64, i64)> = by_degree.into_iter().filter(|(_, c)| *c > 0).map(|(d, c)| (d, c / 2)).collect();
        ensure(got == parts, format!("p = {p}: differentials by degree {got:?}"))?;
        ensure(got.iter().map(|(d, c)| d * c).sum::<i64>() == genus, "degree sum differs from the genus")?;
    }
    Ok("genera 3, 26, 50 with 3 = 3, 5+10+11 = 26, 3·12+14 = 50".into())
}

fn kappa_points() -> Outcome {
    for p in [7u32, 11, 13] {
        let sys = locus::generate_ideal(p).map_err(err)?;
        let want_rank = (p as usize - 1) / 2 - 2;
        for t in 1..p as i64 {
            let k = KappaPoint::new(p, t).map_err(err)?;
            ensure(sys.contains(&k.coords).map_err(err)?, format!("κ_{t} is not on X({p})"))?;
            let c = locus::tangent_check(t, &sys).map_err(err)?;
            ensure(c.rank == want_rank, format!("Jacobian rank {} at κ_{t}, p = {p}", c.rank))?;
            ensure(c.kernel_is_line_to_3t, format!("tangent at κ_{t} misses κ_{{3t}}, p = {p}"))?;
        }
    }
    Ok("every κ_t lies on X(p) with Jacobian rank (p-1)/2 - 2 and tangent through κ_{3t}".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("ideal generation", Duration::from_secs(2), ideal_generation),
        ("generator relations", Duration::from_secs(5), generator_relations),
        ("traces", Duration::from_secs(30), traces),
        ("decomposition", Duration::from_secs(120), decomposition),
        ("Klein syzygy and resolvents", Duration::from_secs(300), klein_identities),
        ("level-13 identities", Duration::from_secs(600), level_thirteen_identities),
        ("q-series", Duration::from_secs(120), q_series),
        ("sampling", Duration::from_secs(60), sampling),
        ("Hecke multiplicities", Duration::from_secs(60), hecke),
        ("κ-points", Duration::from_secs(30), kappa_points),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *budget => Err(format!("{msg}; over budget {budget:?}")),
            o => o,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
