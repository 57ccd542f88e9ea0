//! `PSL(2, p)` and `SL(2, p)` as explicit permutation-free finite groups.
//!
//! Elements are stored as canonical 2x2 matrices over `F_p`. The module
//! enumerates the group, partitions it into conjugacy classes, decomposes it
//! into cosets of the Borel subgroup and builds the `(p-1)/2`-dimensional
//! Weil generator matrices, extended to every element by breadth-first
//! search over words in the two generators.
//!
//! The abstract generators are `S = (0 1; -1 0)` and `T = (1 1; 0 1)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{self, CycloError, CycloNum};
use crate::linalg::Matrix;
use crate::report::VerificationReport;

/// Errors raised while building groups and representations.
#[derive(Debug, Error)]
pub enum GroupError {
    /// The modulus is not an odd prime.
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    /// Neither square-root branch satisfies the defining relations.
    #[error("no square-root branch satisfies the relations for p = {0}")]
    RelationFailure(u32),
    /// The generator assignment does not extend to a homomorphism.
    #[error("generator matrices do not define a representation of the group for p = {0}")]
    NotHomomorphic(u32),
    /// A requested subgroup has the wrong order.
    #[error("subgroup has order {got}, expected {expected}")]
    SubgroupOrder {
        /// Order found.
        got: usize,
        /// Order required.
        expected: usize,
    },
    /// Cyclotomic arithmetic failed.
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Whether elements are identified up to sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// The projective group, matrices modulo `±I`.
    Psl,
    /// The special linear group.
    Sl,
}

/// A 2x2 matrix of determinant one over `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    /// Top-left entry.
    pub a: u32,
    /// Top-right entry.
    pub b: u32,
    /// Bottom-left entry.
    pub c: u32,
    /// Bottom-right entry.
    pub d: u32,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl GroupElement {
    /// Builds an element from integer entries reduced mod `p`.
    pub fn new(p: u32, a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| x.rem_euclid(p as i64) as u32;
        GroupElement { a: r(a), b: r(b), c: r(c), d: r(d) }
    }

    /// Matrix product mod `p`.
    pub fn mul(&self, o: &GroupElement, p: u32) -> GroupElement {
        let p = p as u64;
        let m = |x: u32, y: u32, z: u32, w: u32| ((x as u64 * y as u64 + z as u64 * w as u64) % p) as u32;
        GroupElement {
            a: m(self.a, o.a, self.b, o.c),
            b: m(self.a, o.b, self.b, o.d),
            c: m(self.c, o.a, self.d, o.c),
            d: m(self.c, o.b, self.d, o.d),
        }
    }

    /// Inverse `(d -b; -c a)`.
    pub fn inverse(&self, p: u32) -> GroupElement {
        GroupElement::new(p, self.d as i64, -(self.b as i64), -(self.c as i64), self.a as i64)
    }

    /// Negation `-g`.
    pub fn negate(&self, p: u32) -> GroupElement {
        GroupElement::new(p, -(self.a as i64), -(self.b as i64), -(self.c as i64), -(self.d as i64))
    }

    /// Canonical representative: for `Psl` the sign making the first nonzero
    /// entry lie in `1..=(p-1)/2`.
    pub fn canonical(&self, p: u32, variant: Variant) -> GroupElement {
        if variant == Variant::Sl {
            return *self;
        }
        let first = [self.a, self.b, self.c, self.d].into_iter().find(|&x| x != 0).unwrap_or(0);
        if first > (p - 1) / 2 {
            self.negate(p)
        } else {
            *self
        }
    }

    /// Determinant mod `p`.
    pub fn det(&self, p: u32) -> u32 {
        let p = p as u64;
        ((self.a as u64 * self.d as u64 + p * p - (self.b as u64 * self.c as u64) % p) % p) as u32
    }
}

/// A generator letter in a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Gen {
    /// The involution-type generator.
    S,
    /// The unipotent generator.
    T,
}

/// A conjugacy class.
#[derive(Clone, Debug, Serialize)]
pub struct ConjClass {
    /// Index of the representative (the smallest index in the class).
    pub rep: usize,
    /// Number of elements.
    pub size: usize,
    /// Order of the elements.
    pub order: usize,
    /// Indices of all members.
    #[serde(skip)]
    pub members: Vec<usize>,
}

/// An enumerated `PSL(2, p)` or `SL(2, p)`.
#[derive(Clone, Debug)]
pub struct Group {
    p: u32,
    variant: Variant,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    words: Vec<Vec<Gen>>,
    parent: Vec<Option<(usize, Gen)>>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

/// Order of `PSL(2, p)` (`p(p^2-1)/2`) or `SL(2, p)` (`p(p^2-1)`).
pub fn group_order(p: u32, variant: Variant) -> usize {
    let p = p as usize;
    let n = p * (p * p - 1);
    match variant {
        Variant::Psl => n / 2,
        Variant::Sl => n,
    }
}

impl Group {
    /// Enumerates the group, classes and generator words.
    pub fn new(p: u32, variant: Variant) -> Result<Self, GroupError> {
        if p < 3 || !cyclo::is_prime(p as u64) {
            return Err(GroupError::NotOddPrime(p));
        }
        let id = GroupElement::new(p, 1, 0, 0, 1);
        let mut elements = vec![id];
        let mut index = HashMap::new();
        index.insert(id, 0);
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        let g = GroupElement { a, b, c, d };
                        if g.det(p) != 1 {
                            continue;
                        }
                        let g = g.canonical(p, variant);
                        if !index.contains_key(&g) {
                            index.insert(g, elements.len());
                            elements.push(g);
                        }
                    }
                }
            }
        }
        let mut grp = Group {
            p,
            variant,
            elements,
            index,
            words: Vec::new(),
            parent: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        grp.build_words();
        grp.build_classes();
        Ok(grp)
    }

    fn build_words(&mut self) {
        let n = self.order();
        let mut words: Vec<Option<Vec<Gen>>> = vec![None; n];
        let mut parent = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        let gens = [(Gen::S, self.s()), (Gen::T, self.t())];
        while let Some(i) = queue.pop_front() {
            for (gl, g) in gens {
                let j = self.mul(i, g);
                if words[j].is_none() {
                    let mut w = words[i].clone().expect("visited");
                    w.push(gl);
                    words[j] = Some(w);
                    parent[j] = Some((i, gl));
                    queue.push_back(j);
                }
            }
        }
        self.words = words.into_iter().map(|w| w.expect("S and T generate the group")).collect();
        self.parent = parent;
    }

    fn build_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let conj = [self.s(), self.t()];
        let conj_inv: Vec<usize> = conj.iter().map(|&g| self.inv(g)).collect();
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                for (g, gi) in conj.iter().zip(&conj_inv) {
                    let y = self.mul(self.mul(*g, x), *gi);
                    if class_of[y] == usize::MAX {
                        class_of[y] = cid;
                        members.push(y);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(ConjClass { rep: members[0], size: members.len(), order: self.element_order(start), members });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    /// The prime `p`.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Projective or linear.
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements; index 0 is the identity.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Element at an index.
    pub fn element(&self, i: usize) -> GroupElement {
        self.elements[i]
    }

    /// Index of an element given by any representative.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        self.index[&g.canonical(self.p, self.variant)]
    }

    /// Index of the identity.
    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `S = (0 1; -1 0)`.
    pub fn s(&self) -> usize {
        self.index_of(&GroupElement::new(self.p, 0, 1, -1, 0))
    }

    /// Index of `T = (1 1; 0 1)`.
    pub fn t(&self) -> usize {
        self.index_of(&GroupElement::new(self.p, 1, 1, 0, 1))
    }

    /// Product of indexed elements.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.elements[i].mul(&self.elements[j], self.p))
    }

    /// Inverse of an indexed element.
    pub fn inv(&self, i: usize) -> usize {
        self.index_of(&self.elements[i].inverse(self.p))
    }

    /// Power of an indexed element (negative exponents allowed).
    pub fn pow(&self, i: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(i) } else { i };
        let mut r = 0;
        for _ in 0..e.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    /// Evaluates a word in the abstract generators.
    pub fn eval_word(&self, w: &[Gen]) -> usize {
        w.iter().fold(0, |acc, g| self.mul(acc, self.gen_index(*g)))
    }

    fn gen_index(&self, g: Gen) -> usize {
        match g {
            Gen::S => self.s(),
            Gen::T => self.t(),
        }
    }

    /// Shortest word for an element (breadth-first, `S` before `T`).
    pub fn word(&self, i: usize) -> &[Gen] {
        &self.words[i]
    }

    /// Breadth-first parent: `element(i) = element(parent) * gen`.
    pub fn parent(&self, i: usize) -> Option<(usize, Gen)> {
        self.parent[i]
    }

    /// Order of an indexed element.
    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Conjugacy classes sorted by representative index.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.classes
    }

    /// Class index of an element.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Class index of `g^k` for `g` in class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of(self.pow(self.classes[c].rep, k))
    }

    /// Class index of the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(self.inv(self.classes[c].rep))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        self.classes.iter().fold(1, |acc, c| num_integer::lcm(acc, c.order))
    }

    /// The subgroup generated by a set of elements.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }
}

/// The coset decomposition `G = H ∪ H·S ∪ H·ST ∪ ... ∪ H·ST^{p-1}` for the
/// upper-triangular subgroup `H`.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    /// Sorted member indices of the subgroup.
    pub subgroup: Vec<usize>,
    /// Representatives `e, S, ST, ..., ST^{p-1}`.
    pub reps: Vec<usize>,
    /// Coset label of every element: `0` for `H`, `1 + ν` for `H·ST^ν`.
    pub coset_of: Vec<usize>,
}

impl CosetDecomposition {
    /// Number of cosets.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    /// True when there are no cosets.
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// The permutation of coset labels induced by right multiplication by `g`.
    pub fn action(&self, grp: &Group, g: usize) -> Vec<usize> {
        self.reps.iter().map(|&r| self.coset_of[grp.mul(r, g)]).collect()
    }
}

/// Label of the right coset `H·x` of the upper-triangular subgroup: the
/// bottom row `(c, d)` of `x` determines it up to scalars.
fn borel_label(x: &GroupElement, p: u32) -> usize {
    if x.c == 0 {
        0
    } else {
        // bottom row of S T^ν is (-1, -ν); ratio d/c = ν
        let cinv = modinv(x.c, p);
        1 + ((x.d as u64 * cinv as u64) % p as u64) as usize
    }
}

fn modinv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u32) -> u32 {
    (2..p)
        .find(|&g| {
            let mut x = 1u64;
            for k in 1..p - 1 {
                x = x * g as u64 % p as u64;
                if x == 1 && k < p - 1 {
                    return false;
                }
            }
            true
        })
        .unwrap_or(1)
}

/// Decomposes the group into right cosets of `H = ⟨T, diag(g, g^{-1})⟩`,
/// the normalizer of `⟨T⟩`, of order `p(p-1)/2` in `PSL`.
pub fn coset_decomposition(grp: &Group) -> Result<CosetDecomposition, GroupError> {
    let p = grp.p();
    let g = primitive_root(p);
    let d = grp.index_of(&GroupElement::new(p, g as i64, 0, 0, modinv(g, p) as i64));
    let subgroup = grp.generated_subgroup(&[grp.t(), d]);
    let expected = grp.order() / (p as usize + 1);
    if subgroup.len() != expected {
        return Err(GroupError::SubgroupOrder { got: subgroup.len(), expected });
    }
    let mut reps = vec![0];
    let st = grp.mul(grp.s(), 0);
    let mut cur = st;
    for _ in 0..p {
        reps.push(cur);
        cur = grp.mul(cur, grp.t());
    }
    let coset_of = grp.elements().iter().map(|x| borel_label(x, p)).collect();
    Ok(CosetDecomposition { subgroup, reps, coset_of })
}

/// The Weil generator matrices acting on `(p-1)/2` coordinates.
#[derive(Clone, Debug)]
pub struct WeilGenerators {
    /// The prime.
    pub p: u32,
    /// Dimension `(p-1)/2`.
    pub dim: usize,
    /// Image of `S`.
    pub s: Matrix<CycloNum>,
    /// Image of `T`.
    pub t: Matrix<CycloNum>,
    /// `S^2 = central_sign * I`.
    pub central_sign: i32,
    /// Sign of the square root used relative to the tabulated formula:
    /// `+1` when the tabulated matrix satisfies the relations as written.
    pub branch: i32,
    /// The tabulated `S` before any branch correction.
    pub s_tabulated: Matrix<CycloNum>,
}

fn zeta(p: u32, k: i64) -> CycloNum {
    CycloNum::root_of_unity(p, k)
}

fn zdiff(p: u32, a: i64, b: i64) -> CycloNum {
    zeta(p, a) - zeta(p, b)
}

/// Unnormalized `S` (entries are differences of roots of unity) and the
/// diagonal exponents of `T` for the tabulated primes 7, 11, 13.
fn tabulated(p: u32) -> Option<(Vec<Vec<CycloNum>>, Vec<i64>, i32, i32)> {
    // returns (matrix, T exponents, sign of the radicand, sign of the prefactor)
    match p {
        7 => {
            let r = |a: i64, b: i64| zdiff(7, a, b);
            let m = vec![
                vec![r(5, 2), r(3, 4), r(6, 1)],
                vec![r(3, 4), r(6, 1), r(5, 2)],
                vec![r(6, 1), r(5, 2), r(3, 4)],
            ];
            Some((m, vec![1, 4, 2], -1, 1))
        }
        11 => {
            let first = [(9, 2), (4, 7), (3, 8), (5, 6), (1, 10)];
            let m = (0..5)
                .map(|i| (0..5).map(|j| {
                    let (a, b) = first[(i + j) % 5];
                    zdiff(11, a, b)
                }).collect())
                .collect();
            Some((m, vec![1, 4, 5, 9, 3], -1, 1))
        }
        13 => Some((matrix13(), vec![7, 11, 8, 6, 2, 5], 1, -1)),
        _ => None,
    }
}

/// The 6x6 root-of-unity difference matrix underlying the `p = 13` generator.
pub fn matrix13() -> Vec<Vec<CycloNum>> {
    let d = |a: i64, b: i64| zdiff(13, a, b);
    vec![
        vec![d(12, 1), d(10, 3), d(4, 9), d(5, 8), d(2, 11), d(6, 7)],
        vec![d(10, 3), d(4, 9), d(12, 1), d(2, 11), d(6, 7), d(5, 8)],
        vec![d(4, 9), d(12, 1), d(10, 3), d(6, 7), d(5, 8), d(2, 11)],
        vec![d(5, 8), d(2, 11), d(6, 7), d(1, 12), d(3, 10), d(9, 4)],
        vec![d(2, 11), d(6, 7), d(5, 8), d(3, 10), d(9, 4), d(1, 12)],
        vec![d(6, 7), d(5, 8), d(2, 11), d(9, 4), d(1, 12), d(3, 10)],
    ]
}

/// Generic Weil matrices: `T = diag(ε^{α(α-p)/2})` and
/// `S ∝ [ε^{αβ} - ε^{-αβ}]` for `α, β = 1..(p-1)/2`.
fn generic(p: u32) -> (Vec<Vec<CycloNum>>, Vec<i64>, i32, i32) {
    let n = (p as i64 - 1) / 2;
    let m = (1..=n).map(|a| (1..=n).map(|b| zdiff(p, a * b, -a * b)).collect()).collect();
    let t = (1..=n).map(|a| (a * (a - p as i64) / 2).rem_euclid(p as i64)).collect();
    let radicand = if p % 4 == 1 { 1 } else { -1 };
    let pre = if ((p + 1) / 2) % 2 == 0 { 1 } else { -1 };
    (m, t, radicand, pre)
}

impl WeilGenerators {
    /// Builds and verifies the generator pair for the prime `p >= 5`.
    ///
    /// Tabulated matrices are used for 7, 11 and 13. When the tabulated
    /// square-root sign violates the relations the opposite branch is tried.
    pub fn new(p: u32) -> Result<Self, GroupError> {
        if p < 5 || !cyclo::is_prime(p as u64) {
            return Err(GroupError::NotOddPrime(p));
        }
        let (m, texp, radicand, pre) = tabulated(p).unwrap_or_else(|| generic(p));
        Self::from_parts(p, m, texp, radicand, pre)
    }

    /// The generator pair in the basis of odd theta constants `E_1..E_{(p-1)/2}`,
    /// where `T` is diagonal with entries `ζ^{α(α-p)/2}`.
    pub fn theta_basis(p: u32) -> Result<Self, GroupError> {
        if p < 5 || !cyclo::is_prime(p as u64) {
            return Err(GroupError::NotOddPrime(p));
        }
        let (m, texp, radicand, pre) = generic(p);
        Self::from_parts(p, m, texp, radicand, pre)
    }

    fn from_parts(p: u32, m: Vec<Vec<CycloNum>>, texp: Vec<i64>, radicand: i32, pre: i32) -> Result<Self, GroupError> {
        let root = cyclo::sqrt_p(p, radicand)?;
        let rinv = root.inv()?;
        let dim = m.len();
        let base = Matrix::from_rows(m).scale(&(rinv * CycloNum::int(pre as i64)));
        let t = Matrix::diag(&texp.iter().map(|&k| zeta(p, k)).collect::<Vec<_>>());
        let id = Matrix::identity(dim);
        for branch in [1i32, -1] {
            let s = base.scale(&CycloNum::int(branch as i64));
            let s2 = s.mul(&s);
            let central_sign = if s2 == id {
                1
            } else if s2 == id.scale(&CycloNum::int(-1)) {
                -1
            } else {
                continue;
            };
            if t.pow(p as u64) != id || s.mul(&t).pow(3) != id {
                continue;
            }
            return Ok(WeilGenerators { p, dim, s, t, central_sign, branch, s_tabulated: base });
        }
        Err(GroupError::RelationFailure(p))
    }

    /// Image of a word in the generators.
    pub fn word_matrix(&self, w: &[Gen]) -> Matrix<CycloNum> {
        w.iter().fold(Matrix::identity(self.dim), |acc, g| match g {
            Gen::S => acc.mul(&self.s),
            Gen::T => acc.mul(&self.t),
        })
    }
}

/// The Weil generators extended to every group element.
#[derive(Clone, Debug)]
pub struct WeilTable {
    /// The generators.
    pub gens: WeilGenerators,
    mats: Vec<Matrix<CycloNum>>,
    exact: bool,
}

impl WeilTable {
    /// Extends the generators along the breadth-first word tree and checks
    /// that every Cayley-graph edge is respected (up to `±I` for `PSL`).
    pub fn new(grp: &Group, gens: WeilGenerators) -> Result<Self, GroupError> {
        let n = grp.order();
        let mut mats: Vec<Option<Matrix<CycloNum>>> = vec![None; n];
        mats[0] = Some(Matrix::identity(gens.dim));
        // breadth-first order guarantees parents precede children
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| grp.word(i).len());
        for &i in &order[1..] {
            let (par, g) = grp.parent(i).expect("non-identity has a parent");
            let pm = mats[par].as_ref().expect("parent computed");
            mats[i] = Some(match g {
                Gen::S => pm.mul(&gens.s),
                Gen::T => pm.mul(&gens.t),
            });
        }
        let mats: Vec<_> = mats.into_iter().map(|m| m.expect("all reached")).collect();
        let neg = CycloNum::int(-1);
        let mut exact = true;
        for i in 0..n {
            for (gi, gm) in [(grp.s(), &gens.s), (grp.t(), &gens.t)] {
                let j = grp.mul(i, gi);
                let prod = mats[i].mul(gm);
                if prod == mats[j] {
                    continue;
                }
                if grp.variant() == Variant::Psl && prod.scale(&neg) == mats[j] {
                    exact = false;
                    continue;
                }
                return Err(GroupError::NotHomomorphic(grp.p()));
            }
        }
        Ok(WeilTable { gens, mats, exact })
    }

    /// Image of an indexed element.
    pub fn matrix_of(&self, i: usize) -> &Matrix<CycloNum> {
        &self.mats[i]
    }

    /// True when the table is an honest homomorphism rather than one up to sign.
    pub fn is_exact(&self) -> bool {
        self.exact
    }
}

/// The words `P = S T^{-1} S`, `Q = S T^3` and
/// `H = Q^5 P^2 · P^2 Q^6 P^8 · Q^5 P^2 · P^3 Q` evaluated on generator images.
pub fn normalizer_word_matrices(w: &WeilGenerators) -> (Matrix<CycloNum>, Matrix<CycloNum>, Matrix<CycloNum>) {
    let tinv = w.t.pow(w.p as u64 - 1);
    let pm = w.s.mul(&tinv).mul(&w.s);
    let qm = w.s.mul(&w.t.pow(3));
    let h = qm
        .pow(5)
        .mul(&pm.pow(2))
        .mul(&pm.pow(2))
        .mul(&qm.pow(6))
        .mul(&pm.pow(8))
        .mul(&qm.pow(5))
        .mul(&pm.pow(2))
        .mul(&pm.pow(3))
        .mul(&qm);
    (pm, qm, h)
}

/// The same word `H` evaluated in the abstract group.
pub fn normalizer_word_element(grp: &Group) -> usize {
    let (s, t) = (grp.s(), grp.t());
    let pe = grp.mul(grp.mul(s, grp.inv(t)), s);
    let qe = grp.mul(s, grp.pow(t, 3));
    let seq: [(usize, i64); 9] = [(qe, 5), (pe, 2), (pe, 2), (qe, 6), (pe, 8), (qe, 5), (pe, 2), (pe, 3), (qe, 1)];
    seq.iter().fold(0, |acc, &(x, e)| grp.mul(acc, grp.pow(x, e)))
}

/// Exact checks of the defining relations of the generator pair:
/// `S² = ±I`, `T^p = I`, `(ST)³ = I`, and at `p = 13` also `(Q³P⁴)³ = −I`
/// with `P = S T⁻¹ S`, `Q = S T³`.
pub fn generator_relations(w: &WeilGenerators) -> Vec<VerificationReport> {
    let p = w.p;
    let id = Matrix::identity(w.dim);
    let neg = id.scale(&CycloNum::int(-1));
    let want_s2 = if p == 13 { &neg } else { &id };
    let pp = Some(p);
    let mut rows = vec![
        VerificationReport::new(
            format!("group{p}.s_squared"),
            pp,
            w.s.mul(&w.s) == *want_s2,
            format!("S² = {}I", if p == 13 { "-" } else { "" }),
        ),
        VerificationReport::new(format!("group{p}.t_power"), pp, w.t.pow(p as u64) == id, format!("T^{p} = I")),
        VerificationReport::new(format!("group{p}.st_cubed"), pp, w.s.mul(&w.t).pow(3) == id, "(ST)³ = I"),
    ];
    if p == 13 {
        let (pm, qm, _) = normalizer_word_matrices(w);
        let word = qm.pow(3).mul(&pm.pow(4)).pow(3);
        rows.push(VerificationReport::new("group13.q3p4_cubed", pp, word == neg, "(Q³P⁴)³ = -I for P = ST⁻¹S, Q = ST³"));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for p in [5, 7, 11] {
            assert_eq!(Group::new(p, Variant::Psl).unwrap().order(), group_order(p, Variant::Psl));
        }
    }

    #[test]
    fn words_evaluate_to_elements() {
        let g = Group::new(7, Variant::Psl).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.eval_word(g.word(i)), i);
        }
    }
}
