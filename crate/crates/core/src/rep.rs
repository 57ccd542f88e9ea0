//! The representation of `PSL(2, p)` on the degree-4 span of the defining
//! quartics: action matrices, traces, invariant subspaces, a computed
//! character table, isotypic decomposition and Hecke's multiplicity formula.
//!
//! Action convention: a matrix `A` acts on forms by `L_A(f) = f ∘ A`. The
//! column `j` of the matrix of `L_A` holds the coordinates of `b_j ∘ A` in
//! the basis `b`. Because `L_{AB} = L_B ∘ L_A`, the homomorphism from the
//! group is `g ↦ L_{W(g⁻¹)}`.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{self, CycloNum};
use crate::group::{Gen, Group, WeilGenerators, WeilTable};
use crate::invariants::{self, b13_index, Poly};
use crate::linalg::{poly_span_rank, Matrix};
use crate::mpoly::Monomial;
use crate::report::VerificationReport;

/// Errors from the representation computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    /// The basis forms are linearly dependent.
    #[error("basis forms are linearly dependent (rank {rank} < {len})")]
    Dependent {
        /// Rank found.
        rank: usize,
        /// Number of forms.
        len: usize,
    },
    /// A transformed basis form left the span.
    #[error("the image of basis form {index} under {generator} is not in the span")]
    NotClosed {
        /// Which generator.
        generator: String,
        /// Index of the offending basis form.
        index: usize,
    },
    /// No preferred basis is stored for this prime.
    #[error("no basis is stored for p = {0}")]
    UnsupportedPrime(u32),
    /// The table builder could not split or lift the class algebra.
    #[error("character table construction failed: {0}")]
    TableFailure(String),
    /// An inner product or multiplicity was not a non-negative integer.
    #[error("expected a non-negative integer, got {0}")]
    NotIntegral(String),
    /// The group is larger than the configured cap.
    #[error("group order {order} exceeds the cap {cap}")]
    TooLarge {
        /// Order of the group.
        order: usize,
        /// The cap.
        cap: usize,
    },
}

// ------------------------------------------------------------ mixed fields --

fn lift_to(x: &CycloNum, m: u32) -> CycloNum {
    if x.conductor() == m {
        x.clone()
    } else {
        let f = cyclo::field(m).expect("conductor within cap");
        x.embed(&f).expect("conductor divides target")
    }
}

fn mixed_mul(a: &CycloNum, b: &CycloNum) -> CycloNum {
    let m = a.conductor().lcm(&b.conductor());
    lift_to(a, m) * lift_to(b, m)
}

fn mixed_sum<'a>(xs: impl IntoIterator<Item = &'a CycloNum>) -> CycloNum {
    let xs: Vec<&CycloNum> = xs.into_iter().collect();
    let m = xs.iter().fold(1u32, |acc, x| acc.lcm(&x.conductor()));
    xs.iter().fold(lift_to(&CycloNum::int(0), m), |acc, x| acc + lift_to(x, m))
}

fn as_integer(x: &CycloNum) -> Option<i64> {
    let r = x.to_rational()?;
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}

// ---------------------------------------------------------------- SpanRep --

/// A `G`-stable span of forms with a fixed ordered basis.
#[derive(Clone, Debug)]
pub struct SpanRep {
    /// The prime.
    pub p: u32,
    /// Basis forms.
    pub basis: Vec<Poly>,
    /// Names of the basis forms.
    pub labels: Vec<String>,
    /// The generator matrices acting on the variables.
    pub gens: WeilGenerators,
    monos: Vec<Monomial>,
    pivot_rows: Vec<usize>,
    solver: Matrix<CycloNum>,
    /// Matrix of `L_S`.
    pub s_action: Matrix<CycloNum>,
    /// Matrix of `L_T`.
    pub t_action: Matrix<CycloNum>,
}

impl SpanRep {
    /// Builds the representation, checking independence and closure under
    /// both generators.
    pub fn new(p: u32, basis: Vec<Poly>, labels: Vec<String>, gens: WeilGenerators) -> Result<Self, RepError> {
        let mut monos: Vec<Monomial> = basis.iter().flat_map(|b| b.terms().map(|(m, _)| m.clone())).collect();
        monos.sort();
        monos.dedup();
        let n = basis.len();
        // rows of the coefficient matrix M (monomial × form); pick n independent rows
        let mt = Matrix::from_rows(basis.iter().map(|b| monos.iter().map(|m| b.coeff(m)).collect()).collect());
        let (_, pivot_rows) = mt.rref(0.0);
        if pivot_rows.len() < n {
            return Err(RepError::Dependent { rank: pivot_rows.len(), len: n });
        }
        let square = Matrix::from_rows(pivot_rows.iter().map(|&r| (0..n).map(|j| mt.get(j, r).clone()).collect()).collect());
        let solver = square.inverse(0.0).expect("pivot rows are independent");
        let mut rep = SpanRep {
            p,
            basis,
            labels,
            gens: gens.clone(),
            monos,
            pivot_rows,
            solver,
            s_action: Matrix::identity(n),
            t_action: Matrix::identity(n),
        };
        rep.s_action = rep.action_of("S", &gens.s)?;
        rep.t_action = rep.action_of("T", &gens.t)?;
        Ok(rep)
    }

    /// The preferred basis for `p = 7, 11, 13`: Klein's quartic, the ten
    /// forms `𝔹`, and the twenty-one forms `B`.
    pub fn preferred(p: u32) -> Result<Self, RepError> {
        let gens = WeilGenerators::new(p).map_err(|_| RepError::UnsupportedPrime(p))?;
        let (basis, labels): (Vec<Poly>, Vec<String>) = match p {
            7 => (vec![invariants::klein_quartic()], vec!["f".into()]),
            11 => {
                let names = ["B1_1", "B1_2", "B1_3", "B1_4", "B1_5", "B2_1", "B2_2", "B2_3", "B2_4", "B2_5"];
                (invariants::bb_forms11(), names.iter().map(|s| s.to_string()).collect())
            }
            13 => (invariants::b_forms13(), invariants::B13_LABELS.iter().map(|s| format!("B{s}")).collect()),
            _ => return Err(RepError::UnsupportedPrime(p)),
        };
        Self::new(p, basis, labels, gens)
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `q` in the basis, or `None` when `q` is outside the span.
    pub fn coords(&self, q: &Poly) -> Option<Vec<CycloNum>> {
        if q.terms().any(|(m, _)| self.monos.binary_search(m).is_err()) {
            return None;
        }
        let rhs: Vec<CycloNum> = self.pivot_rows.iter().map(|&r| q.coeff(&self.monos[r])).collect();
        let c = self.solver.apply(&rhs);
        (self.combine(&c) == *q).then_some(c)
    }

    /// The form with the given coordinates.
    pub fn combine(&self, c: &[CycloNum]) -> Poly {
        self.basis.iter().zip(c).fold(Poly::zero(self.basis[0].nvars()), |acc, (b, x)| acc.add(&b.scale(x)))
    }

    fn action_of(&self, name: &str, a: &Matrix<CycloNum>) -> Result<Matrix<CycloNum>, RepError> {
        let cols = self
            .basis
            .iter()
            .enumerate()
            .map(|(j, b)| self.coords(&b.substitute_linear(a)).ok_or(RepError::NotClosed { generator: name.into(), index: j }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_cols(&cols))
    }

    /// Matrix of `L_A` for a variable substitution `A`.
    pub fn action_of_matrix(&self, a: &Matrix<CycloNum>) -> Result<Matrix<CycloNum>, RepError> {
        self.action_of("matrix", a)
    }

    /// The representing matrix of the group element `g`, i.e. `L_{W(g⁻¹)}`.
    pub fn action_matrix(&self, grp: &Group, table: &WeilTable, g: usize) -> Result<Matrix<CycloNum>, RepError> {
        self.action_of(&format!("element {g}"), table.matrix_of(grp.inv(g)))
    }

    /// `(Tr L_S, Tr L_T)`.
    pub fn trace_pair(&self) -> (CycloNum, CycloNum) {
        (self.s_action.trace(), self.t_action.trace())
    }

    /// Character values on the conjugacy classes of `grp`.
    pub fn class_character(&self, grp: &Group, table: &WeilTable) -> Result<Vec<CycloNum>, RepError> {
        grp.conjugacy_classes().iter().map(|c| Ok(self.action_matrix(grp, table, c.rep)?.trace())).collect()
    }

    /// True when the span of `vectors` (forms inside this span) is mapped
    /// into itself by `L_S` and `L_T`.
    pub fn is_invariant_subspace(&self, vectors: &[Poly]) -> bool {
        let r = poly_span_rank(vectors, 0.0);
        [&self.gens.s, &self.gens.t].iter().all(|a| {
            vectors.iter().all(|v| {
                let mut ext = vectors.to_vec();
                ext.push(v.substitute_linear(a));
                poly_span_rank(&ext, 0.0) == r
            })
        })
    }

    /// Numeric average `(1/|G|) Σ_g ρ(g)`: the projector onto the invariants.
    ///
    /// The matrices are accumulated along the breadth-first tree of the
    /// group, `ρ(h·x) = ρ(h)·ρ(x)` for a generator `x`.
    pub fn trivial_projector(&self, grp: &Group, table: &WeilTable) -> Result<Matrix<Complex64>, RepError> {
        let n = self.dim();
        let rho_s = self.action_matrix(grp, table, grp.s())?.map(|x| x.to_complex());
        let rho_t = self.action_matrix(grp, table, grp.t())?.map(|x| x.to_complex());
        let mut mats: Vec<Option<Matrix<Complex64>>> = vec![None; grp.order()];
        let mut order: Vec<usize> = (0..grp.order()).collect();
        order.sort_by_key(|&i| grp.word(i).len());
        let mut acc = Matrix::<Complex64>::zeros(n, n);
        for g in order {
            let m = match grp.parent(g) {
                None => Matrix::identity(n),
                Some((h, x)) => {
                    let parent = mats[h].as_ref().expect("parents precede children");
                    parent.mul(if x == Gen::S { &rho_s } else { &rho_t })
                }
            };
            acc = acc.add(&m);
            mats[g] = Some(m);
        }
        Ok(acc.scale(&Complex64::new(1.0 / grp.order() as f64, 0.0)))
    }
}

// -------------------------------------------------------- character table --

/// Data of one conjugacy class.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassInfo {
    /// Index of a representative element.
    pub rep: usize,
    /// Class size.
    pub size: usize,
    /// Element order.
    pub order: usize,
    /// Index of the class of inverses.
    pub inverse: usize,
}

/// The exact character table of a finite group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    /// Group order.
    pub order: usize,
    /// Group exponent.
    pub exponent: usize,
    /// The auxiliary prime used by the construction.
    pub ell: u64,
    /// Conjugacy classes, in the group's order.
    pub classes: Vec<ClassInfo>,
    /// Degrees of the irreducibles, sorted.
    pub degrees: Vec<u32>,
    /// `values[i][k]`: character `i` on class `k`.
    pub values: Vec<Vec<CycloNum>>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

/// Kernel of an `r × c` matrix over `F_ℓ` (rows given as vectors).
fn kernel_mod(rows: &[Vec<u64>], cols: usize, ell: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pi) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pi);
        let inv = inv_mod(m[r][c], ell);
        for x in m[r].iter_mut() {
            *x = *x * inv % ell;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + ell - f * m[r][j] % ell) % ell;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = (ell - m[ri][f]) % ell;
            }
            v
        })
        .collect()
}

fn primitive_root_mod(ell: u64) -> u64 {
    let n = ell - 1;
    let mut factors = Vec::new();
    let mut x = n;
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            factors.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        factors.push(x);
    }
    (2..ell).find(|&g| factors.iter().all(|&f| pow_mod(g, n / f, ell) != 1)).expect("prime modulus")
}

impl CharacterTable {
    /// Builds the table from the class algebra of `grp`: the normalized
    /// characters are common eigenvectors of the class multiplication
    /// matrices, computed modulo a prime `ℓ ≡ 1 (mod exponent)` and lifted
    /// to sums of roots of unity. Fails when the order exceeds `cap`.
    pub fn compute(grp: &Group, cap: usize) -> Result<Self, RepError> {
        let order = grp.order();
        if order > cap {
            return Err(RepError::TooLarge { order, cap });
        }
        let cls = grp.conjugacy_classes();
        let r = cls.len();
        let classes: Vec<ClassInfo> = cls
            .iter()
            .enumerate()
            .map(|(i, c)| ClassInfo { rep: c.rep, size: c.size, order: c.order, inverse: grp.inverse_class(i) })
            .collect();
        let id_class = grp.class_of(grp.identity());
        // c[i][j][k] = #{x ∈ C_i : x⁻¹ z ∈ C_j} for a fixed z ∈ C_k
        let mut coef = vec![vec![vec![0u64; r]; r]; r];
        for (k, c) in cls.iter().enumerate() {
            for x in 0..order {
                let y = grp.mul(grp.inv(x), c.rep);
                coef[grp.class_of(x)][grp.class_of(y)][k] += 1;
            }
        }
        let exponent = grp.exponent();
        let bound = 2.0 * (order as f64).sqrt();
        let mut last_err = String::new();
        let mut ell = exponent as u64 + 1;
        for _ in 0..50 {
            while !(cyclo::is_prime(ell) && ell as f64 > bound) {
                ell += exponent as u64;
            }
            match Self::try_prime(grp, &classes, &coef, id_class, exponent, ell) {
                Ok(t) => return Ok(t),
                Err(e) => last_err = e,
            }
            ell += exponent as u64;
        }
        Err(RepError::TableFailure(last_err))
    }

    fn try_prime(
        grp: &Group,
        classes: &[ClassInfo],
        coef: &[Vec<Vec<u64>>],
        id_class: usize,
        exponent: usize,
        ell: u64,
    ) -> Result<Self, String> {
        let r = classes.len();
        let order = grp.order();
        let apply = |i: usize, v: &[u64]| -> Vec<u64> {
            (0..r).map(|j| (0..r).fold(0, |acc, k| (acc + coef[i][j][k] % ell * v[k]) % ell)).collect()
        };
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
        for i in 0..r {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mut next = Vec::new();
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                    continue;
                }
                let images: Vec<Vec<u64>> = space.iter().map(|v| apply(i, v)).collect();
                let d = space.len();
                let mut found = 0;
                for lam in 0..ell {
                    // columns (A_i - λ) v_b, solve for a with Σ a_b (A_i - λ) v_b = 0
                    let rows: Vec<Vec<u64>> =
                        (0..r).map(|j| (0..d).map(|b| (images[b][j] + ell - lam * space[b][j] % ell) % ell).collect()).collect();
                    let ker = kernel_mod(&rows, d, ell);
                    if ker.is_empty() {
                        continue;
                    }
                    found += ker.len();
                    next.push(
                        ker.iter()
                            .map(|a| (0..r).map(|j| (0..d).fold(0, |acc, b| (acc + a[b] * space[b][j]) % ell)).collect())
                            .collect(),
                    );
                    if found == d {
                        break;
                    }
                }
                if found != d {
                    return Err(format!("class matrix {i} not diagonalizable mod {ell}"));
                }
            }
            spaces = next;
        }
        if spaces.len() != r {
            return Err(format!("only {} common eigenvectors mod {ell}", spaces.len()));
        }
        let z = pow_mod(primitive_root_mod(ell), (ell - 1) / exponent as u64, ell);
        let mut rows = Vec::new();
        for s in spaces {
            let v = &s[0];
            let scale = inv_mod(v[id_class], ell);
            let w: Vec<u64> = v.iter().map(|x| x * scale % ell).collect();
            let denom = (0..r).fold(0, |acc, k| (acc + w[k] * w[classes[k].inverse] % ell * inv_mod(classes[k].size as u64 % ell, ell)) % ell);
            let d2 = order as u64 % ell * inv_mod(denom, ell) % ell;
            let deg = (1..=(order as f64).sqrt() as u64 + 1)
                .find(|d| d * d % ell == d2)
                .ok_or_else(|| format!("no degree for d² ≡ {d2} mod {ell}"))?;
            let chi: Vec<u64> = (0..r).map(|k| w[k] * deg % ell * inv_mod(classes[k].size as u64 % ell, ell) % ell).collect();
            let mut vals = Vec::with_capacity(r);
            for (k, c) in classes.iter().enumerate() {
                let o = c.order;
                let zo = pow_mod(z, (exponent / o) as u64, ell);
                let inv_o = inv_mod(o as u64 % ell, ell);
                let mut val = lift_to(&CycloNum::int(0), o as u32);
                for j in 0..o {
                    let mut m = 0;
                    for n in 0..o {
                        let pc = grp.power_class(k, n as i64);
                        let e = (j * n) % o;
                        m = (m + chi[pc] * pow_mod(zo, ((o - e) % o) as u64, ell)) % ell;
                    }
                    let m = m * inv_o % ell;
                    if m > deg {
                        return Err(format!("eigenvalue multiplicity {m} exceeds degree {deg} mod {ell}"));
                    }
                    if m > 0 {
                        val = val + CycloNum::root_of_unity(o as u32, j as i64).scale(m as i64, 1);
                    }
                }
                vals.push(val);
            }
            rows.push((deg as u32, vals));
        }
        rows.sort_by(|a, b| {
            a.0.cmp(&b.0).then_with(|| {
                let key = |v: &Vec<CycloNum>| v.iter().map(|x| { let c = x.to_complex(); ((c.re * 1e6).round() as i64, (c.im * 1e6).round() as i64) }).collect::<Vec<_>>();
                key(&b.1).cmp(&key(&a.1))
            })
        });
        let table = CharacterTable {
            order,
            exponent,
            ell,
            classes: classes.to_vec(),
            degrees: rows.iter().map(|r| r.0).collect(),
            values: rows.into_iter().map(|r| r.1).collect(),
        };
        if !table.orthogonal() {
            return Err(format!("lifted table fails orthogonality mod {ell}"));
        }
        Ok(table)
    }

    /// `(1/|G|) Σ_k |C_k| a_k conj(b_k)`.
    pub fn inner_product(&self, a: &[CycloNum], b: &[CycloNum]) -> CycloNum {
        let terms: Vec<CycloNum> = (0..self.classes.len())
            .map(|k| mixed_mul(&a[k], &b[k].conj()).scale(self.classes[k].size as i64, 1))
            .collect();
        mixed_sum(&terms).scale(1, self.order as i64)
    }

    /// Exact row orthogonality `⟨χ_i, χ_j⟩ = δ_ij` and column orthogonality
    /// `Σ_i χ_i(k) conj χ_i(l) = δ_kl |G|/|C_k|`.
    pub fn orthogonal(&self) -> bool {
        let n = self.values.len();
        for i in 0..n {
            for j in i..n {
                let ip = self.inner_product(&self.values[i], &self.values[j]);
                if ip != CycloNum::int(i64::from(i == j)) {
                    return false;
                }
            }
        }
        let r = self.classes.len();
        for k in 0..r {
            for l in k..r {
                let terms: Vec<CycloNum> = self.values.iter().map(|row| mixed_mul(&row[k], &row[l].conj())).collect();
                let s = mixed_sum(&terms);
                let want = if k == l { (self.order / self.classes[k].size) as i64 } else { 0 };
                if s != CycloNum::int(want) {
                    return false;
                }
            }
        }
        true
    }

    /// `Σ degree²`.
    pub fn degree_square_sum(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d) * u64::from(d)).sum()
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        self.values.iter().position(|row| row.iter().all(|v| *v == CycloNum::int(1))).expect("trivial character present")
    }
}

// ----------------------------------------------------------- decomposition --

/// Multiplicities of the irreducible constituents of a representation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Decomposition {
    /// Multiplicity of each irreducible in table order.
    pub multiplicities: Vec<u32>,
    /// Degrees of the constituents that occur, with multiplicity.
    pub constituent_degrees: Vec<u32>,
    /// Total dimension `Σ m·deg`.
    pub dim: u32,
    /// True when `Σ m χ_i` reproduces the character on every class.
    pub reconstructs: bool,
}

/// Decomposes a class function into irreducibles.
pub fn decompose(character: &[CycloNum], tbl: &CharacterTable) -> Result<Decomposition, RepError> {
    let mut multiplicities = Vec::new();
    for row in &tbl.values {
        let ip = tbl.inner_product(character, row);
        let m = as_integer(&ip).filter(|m| *m >= 0).ok_or_else(|| RepError::NotIntegral(ip.to_string()))?;
        multiplicities.push(m as u32);
    }
    let dim = multiplicities.iter().zip(&tbl.degrees).map(|(m, d)| m * d).sum();
    let constituent_degrees = multiplicities
        .iter()
        .zip(&tbl.degrees)
        .flat_map(|(&m, &d)| std::iter::repeat(d).take(m as usize))
        .collect();
    let reconstructs = (0..tbl.classes.len()).all(|k| {
        let terms: Vec<CycloNum> = multiplicities.iter().zip(&tbl.values).map(|(&m, row)| row[k].scale(m as i64, 1)).collect();
        let mut all = terms;
        all.push(-character[k].clone());
        mixed_sum(&all).is_zero_value()
    });
    Ok(Decomposition { multiplicities, constituent_degrees, dim, reconstructs })
}

/// Hecke's multiplicity `f − (1/p)Σχ(Tⁿ) − (1/2)Σχ(Sⁿ) − (1/3)Σχ((ST)ⁿ)`,
/// the sums running over `n mod p`, `n mod 2`, `n mod 3`. This counts the
/// character in the first cohomology of `X(p)`; for the trivial character
/// the expression equals `2g(X(1)) − 2 = −2` and the true count `0` is
/// returned.
pub fn hecke_multiplicity(grp: &Group, tbl: &CharacterTable, index: usize) -> Result<i64, RepError> {
    let row = &tbl.values[index];
    let p = grp.p() as i64;
    let chi = |g: usize| &row[grp.class_of(g)];
    let sum_powers = |g: usize, n: i64| -> CycloNum {
        let vals: Vec<CycloNum> = (0..n).map(|k| chi(grp.pow(g, k)).clone()).collect();
        mixed_sum(&vals)
    };
    let st = grp.mul(grp.s(), grp.t());
    let f = tbl.degrees[index] as i64;
    let terms = [
        CycloNum::int(f),
        -sum_powers(grp.t(), p).scale(1, p),
        -sum_powers(grp.s(), 2).scale(1, 2),
        -sum_powers(st, 3).scale(1, 3),
    ];
    let r = mixed_sum(&terms);
    let r = as_integer(&r).ok_or_else(|| RepError::NotIntegral(r.to_string()))?;
    Ok(if index == tbl.trivial_index() { r + 2 } else { r })
}

/// Genus from the Hecke multiplicities: `Σ r·deg / 2`.
pub fn genus_from_hecke(grp: &Group, tbl: &CharacterTable) -> Result<i64, RepError> {
    let mut total = 0;
    for i in 0..tbl.values.len() {
        total += hecke_multiplicity(grp, tbl, i)? * tbl.degrees[i] as i64;
    }
    Ok(total / 2)
}

/// The genus formula `(p+2)(p−3)(p−5)/24` for `X(p)`.
pub fn genus_formula(p: u32) -> i64 {
    let p = p as i64;
    (p + 2) * (p - 3) * (p - 5) / 24
}

/// Summary of the decomposition of the preferred span.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionSummary {
    /// The prime.
    pub p: u32,
    /// Dimension of the span.
    pub dim: usize,
    /// Degrees of the irreducibles that occur.
    pub dims: Vec<u32>,
    /// Multiplicities over the full table.
    pub multiplicities: Vec<u32>,
    /// `(Tr L_S, Tr L_T)` as text.
    pub traces: (String, String),
    /// Description of the constituent when it is a single irreducible.
    pub identification: String,
}

/// Decomposes the preferred span for `p = 7, 11, 13` over `PSL(2, p)`.
pub fn decompose_preferred(p: u32) -> Result<(DecompositionSummary, Decomposition, CharacterTable), RepError> {
    let rep = SpanRep::preferred(p)?;
    let grp = Group::new(p, crate::group::Variant::Psl).map_err(|e| RepError::TableFailure(e.to_string()))?;
    let table = WeilTable::new(&grp, rep.gens.clone()).map_err(|e| RepError::TableFailure(e.to_string()))?;
    let tbl = CharacterTable::compute(&grp, 1 << 16)?;
    let chi = rep.class_character(&grp, &table)?;
    let dec = decompose(&chi, &tbl)?;
    let (ts, tt) = rep.trace_pair();
    let occurring: Vec<usize> = dec.multiplicities.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, _)| i).collect();
    let identification = if occurring.len() == 1 && dec.multiplicities[occurring[0]] == 1 {
        let i = occurring[0];
        let deg = tbl.degrees[i];
        let s_class = grp.class_of(grp.s());
        let t_class = grp.class_of(grp.t());
        let fp = |k: usize| (tbl.values[k][s_class].clone(), tbl.values[k][t_class].clone());
        let same = (0..tbl.values.len()).filter(|&k| tbl.degrees[k] == deg && fp(k) == fp(i)).count();
        let kind = if deg == p { "Steinberg" } else if deg == p - 1 { "discrete series" } else if deg == p + 1 { "principal series" } else if deg == (p - 1) / 2 { "half discrete series" } else if deg == (p + 1) / 2 { "half principal series" } else if deg == 1 { "trivial" } else { "irreducible" };
        format!(
            "irreducible {kind} of degree {deg} with χ(S) = {}, χ(T) = {}{}",
            fp(i).0.pretty(),
            fp(i).1.pretty(),
            if same == 1 { " (fingerprint unique)" } else { " (fingerprint shared)" }
        )
    } else {
        format!("sum of {} irreducibles", dec.constituent_degrees.len())
    };
    let summary = DecompositionSummary {
        p,
        dim: rep.dim(),
        dims: dec.constituent_degrees.clone(),
        multiplicities: dec.multiplicities.clone(),
        traces: (ts.pretty(), tt.pretty()),
        identification,
    };
    Ok((summary, dec, tbl))
}

// ----------------------------------------------------- stated bases, p=13 --

fn b(label: &str) -> Poly {
    invariants::b_forms13()[b13_index(label)].clone()
}

fn bsum(labels: &[&str]) -> Poly {
    labels.iter().fold(Poly::zero(6), |acc, l| acc.add(&b(l)))
}

/// The invariant line, the 7-dimensional and 13-dimensional subspaces of the
/// `p = 13` span.
pub fn subspaces13() -> (Vec<Poly>, Vec<Poly>, Vec<Poly>) {
    let i = |n: i64| CycloNum::int(n);
    let v1 = vec![invariants::phi4()];
    let mut v7 = vec![b("01").add(&b("02"))];
    for k in ["1", "3", "9"] {
        v7.push(b(&format!("{k}_1")).sub(&b(&format!("{k}_2")).scale(&i(3))));
    }
    for k in ["12", "10", "4"] {
        v7.push(b(&format!("{k}_1")).add(&b(&format!("{k}_2")).scale(&i(3))));
    }
    let mut v13 = vec![b("00").scale(&i(4)).sub(&b("01")).add(&b("02"))];
    for k in ["5", "2", "6", "8", "11", "7"] {
        v13.push(b(k));
    }
    for k in ["1", "3", "9"] {
        v13.push(b(&format!("{k}_1")).add(&b(&format!("{k}_2"))));
    }
    for k in ["12", "10", "4"] {
        v13.push(b(&format!("{k}_2")).sub(&b(&format!("{k}_1"))));
    }
    (v1, v7, v13)
}

/// Checks the stated invariant subspaces and expansions of the preferred
/// bases: closure, traces, the direct-sum decomposition at `p = 13` and the
/// Galois symmetry between the images of `B_1^{(1)}` and `B_3^{(1)}`.
pub fn verify_tabulated_bases(p: u32) -> Result<Vec<VerificationReport>, RepError> {
    let rep = SpanRep::preferred(p)?;
    let pp = Some(p);
    let mut rows = Vec::new();
    let (ts, tt) = rep.trace_pair();
    rows.push(VerificationReport::new(
        format!("rep{p}.closure"),
        pp,
        true,
        format!("span of the {} basis forms is closed under S and T", rep.dim()),
    ));
    let i = |n: i64| CycloNum::int(n);
    match p {
        7 => {
            rows.push(VerificationReport::new("rep7.traces", pp, ts == i(1) && tt == i(1), format!("(Tr S, Tr T) = ({}, {})", ts.pretty(), tt.pretty())));
        }
        11 => {
            rows.push(VerificationReport::new("rep11.traces", pp, ts == i(2) && tt == i(-1), format!("(Tr S, Tr T) = ({}, {})", ts.pretty(), tt.pretty())));
            let expected = [10, 7, 6, 2, 8, 1, 4, 5, 9, 3];
            let diag = Matrix::diag(&expected.iter().map(|&k| CycloNum::root_of_unity(11, k)).collect::<Vec<_>>());
            rows.push(VerificationReport::new("rep11.t_eigenvalues", pp, rep.t_action == diag, "T diagonal on the basis with eigenvalues ρ^10, ρ^7, ρ^6, ρ^2, ρ^8, ρ, ρ^4, ρ^5, ρ^9, ρ^3"));
        }
        13 => {
            let s13 = cyclo::sqrt_p(13, 1).expect("√13");
            let want_t = (i(3) + s13.clone()).scale(1, 2);
            rows.push(VerificationReport::new("rep13.traces", pp, ts == i(1) && tt == want_t, format!("(Tr S, Tr T) = ({}, {})", ts.pretty(), tt.pretty())));
            let (v1, v7, v13) = subspaces13();
            for (name, v, d) in [("v1", &v1, 1), ("v7", &v7, 7), ("v13", &v13, 13)] {
                let ok = poly_span_rank(v, 0.0) == d && rep.is_invariant_subspace(v);
                rows.push(VerificationReport::new(format!("rep13.{name}_invariant"), pp, ok, format!("subspace of dimension {d} closed under S and T")));
            }
            let all: Vec<Poly> = v1.iter().chain(&v7).chain(&v13).cloned().collect();
            rows.push(VerificationReport::new("rep13.direct_sum", pp, poly_span_rank(&all, 0.0) == 21, "1 + 7 + 13 = 21 and the three subspaces are independent"));
            let s = &rep.gens.s;
            let sub = |f: &Poly| f.substitute_linear(s);
            let lhs = sub(&b("00")).scale(&i(13));
            let rhs = b("00").scale(&i(5)).add(&b("01").scale(&i(2))).sub(&b("02").scale(&i(2)))
                .add(&bsum(&["5", "2", "6", "8", "11", "7"]).scale(&i(2)))
                .add(&bsum(&["1_2", "3_2", "9_2", "12_2", "10_2", "4_2"]))
                .add(&bsum(&["1_1", "3_1", "9_1"]))
                .sub(&bsum(&["12_1", "10_1", "4_1"]));
            rows.push(VerificationReport::new("rep13.s_on_b00", pp, lhs == rhs, "13·S(B00) expansion"));
            let lhs = sub(&b("01").add(&b("02"))).scale(&s13);
            let mut rhs = b("01").add(&b("02"));
            for k in ["1", "3", "9"] {
                rhs = rhs.add(&b(&format!("{k}_1"))).sub(&b(&format!("{k}_2")).scale(&i(3)));
            }
            for k in ["12", "10", "4"] {
                rhs = rhs.add(&b(&format!("{k}_1"))).add(&b(&format!("{k}_2")).scale(&i(3)));
            }
            rows.push(VerificationReport::new("rep13.s_on_v7_generator", pp, lhs == rhs, "√13·S(B01+B02) expansion"));
            let u = b("00").scale(&i(4)).sub(&b("01")).add(&b("02"));
            let lhs = sub(&u).scale(&i(13));
            let mut rhs = u.neg().add(&bsum(&["5", "2", "6", "8", "11", "7"]).scale(&i(14)));
            let mut inner = Poly::zero(6);
            for k in ["1", "3", "9"] {
                inner = inner.add(&b(&format!("{k}_1"))).add(&b(&format!("{k}_2")));
            }
            for k in ["12", "10", "4"] {
                inner = inner.sub(&b(&format!("{k}_1"))).add(&b(&format!("{k}_2")));
            }
            rhs = rhs.add(&inner.scale(&i(7)));
            rows.push(VerificationReport::new("rep13.s_on_v13_generator", pp, lhs == rhs, "13·S(4B00−B01+B02) expansion"));
            let phi4 = invariants::phi4();
            rows.push(VerificationReport::new("rep13.phi4_fixed", pp, sub(&phi4) == phi4 && phi4.substitute_linear(&rep.gens.t) == phi4, "S and T fix 3B00+B01−B02"));
            let c1 = rep.s_action.col(b13_index("1_1"));
            let c3 = rep.s_action.col(b13_index("3_1"));
            let galois_ok = c1.iter().zip(&c3).all(|(x, y)| x.galois(9).map(|g| g == *y).unwrap_or(false));
            rows.push(VerificationReport::new("rep13.galois_triple", pp, galois_ok, "ζ ↦ ζ⁹ carries the coordinates of S(B1_1) to those of S(B3_1)"));
        }
        _ => {}
    }
    Ok(rows)
}

/// Projector onto the invariants of the preferred span: its rank (the trace
/// of the idempotent group average) and the largest deviation of its image
/// from the line through the given vector.
pub fn trivial_projector_check(p: u32, line: Option<&Poly>, tol: f64) -> Result<(usize, f64), RepError> {
    let rep = SpanRep::preferred(p)?;
    let grp = Group::new(p, crate::group::Variant::Psl).map_err(|e| RepError::TableFailure(e.to_string()))?;
    let table = WeilTable::new(&grp, rep.gens.clone()).map_err(|e| RepError::TableFailure(e.to_string()))?;
    let proj = rep.trivial_projector(&grp, &table)?;
    let idempotent = proj.mul(&proj).approx_eq(&proj, tol);
    let rank = proj.trace().re.round();
    if !idempotent || rank < 0.0 {
        return Err(RepError::NotIntegral(format!("group average is not a projector (trace {})", proj.trace())));
    }
    let rank = rank as usize;
    let mut dev = 0.0f64;
    if let Some(l) = line {
        let v: Vec<Complex64> = rep.coords(l).ok_or(RepError::NotClosed { generator: "line".into(), index: 0 })?.iter().map(|x| x.to_complex()).collect();
        let vn: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for j in 0..rep.dim() {
            let col = proj.col(j);
            let dot: Complex64 = col.iter().zip(&v).map(|(a, b)| a * b.conj()).sum::<Complex64>() / (vn * vn);
            let resid: f64 = col.iter().zip(&v).map(|(a, b)| (a - dot * b).norm_sqr()).sum::<f64>().sqrt();
            dev = dev.max(resid);
        }
    }
    Ok((rank, dev))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_kernel() {
        let rows = vec![vec![1, 2], vec![2, 4]];
        let k = kernel_mod(&rows, 2, 7);
        assert_eq!(k, vec![vec![5, 1]]);
    }

    #[test]
    fn primitive_root_small() {
        assert_eq!(primitive_root_mod(7), 3);
        assert_eq!(pow_mod(3, 6, 7), 1);
    }
}
