//! Concrete matrix realizations of the graded algebras.
//!
//! Generalized Pauli (clock/shift) matrices generate a grading of M(n,C) by
//! Z_n² whose product law is a bimultiplicative cocycle; tensor products of
//! such gradings realize gradings of M(2^k, C). An involution X* = Φ⁻¹XᵗΦ
//! from a symmetric or skew form splits each graded component into the ±1
//! eigenspaces K (anti-fixed, a classical Lie algebra) and H (fixed). This
//! module keeps every entry in Q(ζ_N), verifies bracket intertwiners
//! φ: u_a ↦ M_a between abstract root algebras and matrix models, solves
//! for basis rescalings η when the model's product law differs from the
//! generating cocycle by a coboundary, and checks the dual conjugation
//! action whose characters must separate the support.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::lcm;
use thiserror::Error;

use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::cyclotomic::{CyclotomicNumber, RootOfUnity};
use crate::liealg::GradedLieAlgebra;
use crate::symplectic::Cocycle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixModelError {
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("form matrix is neither symmetric nor skew-symmetric")]
    NotSignSymmetric,
    #[error("component {element:?} is not a ±1 eigenvector of the involution")]
    NotCompatible { element: GroupElement },
    #[error("no basis rescaling exists for the requested cocycle ratio")]
    NoRescaling,
}

/// A failed bracket-intertwining check, with the offending pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntertwinerFailure {
    MissingImage { a: GroupElement },
    ZeroImage { a: GroupElement },
    Pair { a: GroupElement, b: GroupElement },
}

/// A failed conjugation-action check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualActionFailure {
    /// Conjugation by some generator scatters this basis matrix.
    NotPreserved { element: GroupElement },
    /// Two support elements receive identical character vectors.
    NotSeparated { a: GroupElement, b: GroupElement },
}

/// Square matrix over Q(ζ_N), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    modulus: u64,
    entries: Vec<CyclotomicNumber>,
}

impl ExactMatrix {
    pub fn zero(n: usize, modulus: u64) -> Self {
        Self { n, modulus, entries: vec![CyclotomicNumber::zero(modulus); n * n] }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zero(n, modulus);
        for i in 0..n {
            m.set(i, i, CyclotomicNumber::one(modulus));
        }
        m
    }

    pub fn from_rows(modulus: u64, rows: Vec<Vec<CyclotomicNumber>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            for e in row {
                assert_eq!(e.modulus(), modulus, "mixed moduli in one matrix");
                entries.push(e);
            }
        }
        Self { n, modulus, entries }
    }

    /// Integer matrix embedded at the given cyclotomic modulus.
    pub fn from_integers(modulus: u64, rows: &[Vec<i64>]) -> Self {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&v| CyclotomicNumber::from_integer(v, modulus)).collect())
            .collect();
        Self::from_rows(modulus, converted)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) {
        assert_eq!(v.modulus(), self.modulus, "entry modulus mismatch");
        self.entries[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn lift_to(&self, modulus: u64) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| e.lift(modulus).expect("target modulus must be a multiple"))
            .collect();
        Self { n: self.n, modulus, entries }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, CyclotomicNumber::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, CyclotomicNumber::sub)
    }

    fn zip_with(&self, other: &Self, op: fn(&CyclotomicNumber, &CyclotomicNumber) -> CyclotomicNumber) -> Self {
        assert_eq!(self.n, other.n, "size mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| op(a, b)).collect();
        Self { n: self.n, modulus: self.modulus, entries }
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|e| e.neg()).collect();
        Self { n: self.n, modulus: self.modulus, entries }
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        assert_eq!(c.modulus(), self.modulus, "scalar modulus mismatch");
        let entries = self.entries.iter().map(|e| e.mul(c)).collect();
        Self { n: self.n, modulus: self.modulus, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "size mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut out = Self::zero(self.n, self.modulus);
        for i in 0..self.n {
            for k in 0..self.n {
                let left = self.get(i, k);
                if left.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let right = other.get(k, j);
                    if right.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&left.mul(right));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.n, self.modulus);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> CyclotomicNumber {
        let mut t = CyclotomicNumber::zero(self.modulus);
        for i in 0..self.n {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Kronecker product; block (i,j) of the result is self[i][j]·other.
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let n = self.n * other.n;
        let mut out = Self::zero(n, self.modulus);
        for i in 0..self.n {
            for j in 0..self.n {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                for r in 0..other.n {
                    for s in 0..other.n {
                        let v = c.mul(other.get(r, s));
                        out.set(i * other.n + r, j * other.n + s, v);
                    }
                }
            }
        }
        out
    }

    /// Gauss–Jordan inverse over the cyclotomic field.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n, self.modulus);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(col * n + j, pivot * n + j);
                    inv.entries.swap(col * n + j, pivot * n + j);
                }
            }
            let scale = a.get(col, col).inverse().expect("pivot is nonzero");
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&scale));
                inv.set(col, j, inv.get(col, j).mul(&scale));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let av = a.get(r, j).sub(&factor.mul(a.get(col, j)));
                    a.set(r, j, av);
                    let iv = inv.get(r, j).sub(&factor.mul(inv.get(col, j)));
                    inv.set(r, j, iv);
                }
            }
        }
        Some(inv)
    }

    /// The scalar c with self = c·other, when the matrices are proportional.
    pub fn scalar_ratio_to(&self, other: &Self) -> Option<CyclotomicNumber> {
        assert_eq!(self.n, other.n, "size mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let Some(k) = other.entries.iter().position(|e| !e.is_zero()) else {
            return self.is_zero().then(|| CyclotomicNumber::one(self.modulus));
        };
        let c = self.entries[k].mul(&other.entries[k].inverse().expect("nonzero entry"));
        for (x, y) in self.entries.iter().zip(&other.entries) {
            if *x != c.mul(y) {
                return None;
            }
        }
        Some(c)
    }
}

/// The clock/shift pair of order n: X = diag(ε^{n−1}, …, ε, 1) and the
/// cyclic shift Y, satisfying XY = εYX and Xⁿ = Yⁿ = I exactly.
pub fn generalized_pauli(n: u64) -> (ExactMatrix, ExactMatrix) {
    assert!(n >= 2, "need at least a 2×2 model");
    let size = n as usize;
    let mut x = ExactMatrix::zero(size, n);
    let mut y = ExactMatrix::zero(size, n);
    for i in 0..size {
        x.set(i, i, CyclotomicNumber::root(n, (n - 1 - i as u64) as i64));
        y.set(i, (i + 1) % size, CyclotomicNumber::one(n));
    }
    (x, y)
}

/// A grading of M(n,C): one basis matrix per support element, with
/// M_a·M_b proportional to M_{a+b}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGrading {
    group: FiniteAbelianGroup,
    basis: BTreeMap<GroupElement, ExactMatrix>,
}

impl MatrixGrading {
    pub fn new(group: FiniteAbelianGroup, basis: BTreeMap<GroupElement, ExactMatrix>) -> Self {
        for a in basis.keys() {
            assert!(group.contains(a), "support element outside the group");
        }
        Self { group, basis }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.basis.keys()
    }

    pub fn matrix(&self, a: &GroupElement) -> Option<&ExactMatrix> {
        self.basis.get(a)
    }

    pub fn basis(&self) -> &BTreeMap<GroupElement, ExactMatrix> {
        &self.basis
    }

    /// Keeps only the listed support elements.
    pub fn restricted_to(&self, keep: &BTreeSet<GroupElement>) -> Self {
        let basis = self
            .basis
            .iter()
            .filter(|(a, _)| keep.contains(*a))
            .map(|(a, m)| (a.clone(), m.clone()))
            .collect();
        Self { group: self.group.clone(), basis }
    }

    /// Checks M_a·M_b = ξ(a,b)·M_{a+b} over every support pair.
    pub fn verify_product_law(&self, xi: &Cocycle) -> Result<(), (GroupElement, GroupElement)> {
        for (a, ma) in &self.basis {
            for (b, mb) in &self.basis {
                let sum = self.group.add(a, b);
                let Some(target) = self.basis.get(&sum) else {
                    return Err((a.clone(), b.clone()));
                };
                let modulus = lcm(ma.modulus(), xi.modulus());
                let expected = target
                    .lift_to(modulus)
                    .scale(&xi.eval(a, b).rescale(modulus).expect("lcm").embed());
                if ma.lift_to(modulus).mul(&mb.lift_to(modulus)) != expected {
                    return Err((a.clone(), b.clone()));
                }
            }
        }
        Ok(())
    }

    /// Kronecker product over the direct product of the two groups.
    pub fn tensor(&self, other: &MatrixGrading) -> MatrixGrading {
        let mut orders = self.group.orders().to_vec();
        orders.extend_from_slice(other.group.orders());
        let group = FiniteAbelianGroup::new(orders).expect("nonempty orders");
        let modulus = lcm(
            self.basis.values().next().map_or(1, ExactMatrix::modulus),
            other.basis.values().next().map_or(1, ExactMatrix::modulus),
        );
        let mut basis = BTreeMap::new();
        for (a, ma) in &self.basis {
            for (b, mb) in &other.basis {
                let mut coords = a.coords().to_vec();
                coords.extend_from_slice(b.coords());
                let element = group.element(
                    &coords.iter().map(|&c| c as i64).collect::<Vec<_>>(),
                );
                basis.insert(element, ma.lift_to(modulus).kron(&mb.lift_to(modulus)));
            }
        }
        MatrixGrading { group, basis }
    }
}

/// The grading of M(n,C) by Z_n² with M_{(i,j)} = XⁱY^{−j}; its product
/// law is ξ((i,j),(s,t)) = ε^{js}.
pub fn epsilon_grading(n: u64) -> MatrixGrading {
    let (x, y) = generalized_pauli(n);
    let group = FiniteAbelianGroup::new(vec![n, n]).unwrap();
    let mut basis = BTreeMap::new();
    let mut x_pow = ExactMatrix::identity(n as usize, n);
    for i in 0..n {
        let mut m = x_pow.clone();
        // Multiply in Y^{n−j} = Y^{−j} one factor at a time, j = 0 first.
        basis.insert(group.element(&[i as i64, 0]), m.clone());
        for j in 1..n {
            for _ in 0..(n - 1) {
                // Y^{−1} = Y^{n−1}; stepping by it keeps every entry exact.
                m = m.mul(&y);
            }
            basis.insert(group.element(&[i as i64, j as i64]), m.clone());
        }
        x_pow = x_pow.mul(&x);
    }
    MatrixGrading::new(group, basis)
}

/// The product-law cocycle of the ε-grading: exponent j·s on Z_n².
pub fn epsilon_grading_cocycle(n: u64) -> Cocycle {
    let group = FiniteAbelianGroup::new(vec![n, n]).unwrap();
    Cocycle::new(group, vec![vec![0, 0], vec![1, 0]]).unwrap()
}

/// An involution X ↦ Φ⁻¹XᵗΦ from an invertible (skew-)symmetric form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    phi: ExactMatrix,
    phi_inv: ExactMatrix,
    skew: bool,
}

impl Involution {
    pub fn new(phi: ExactMatrix) -> Result<Self, MatrixModelError> {
        let t = phi.transpose();
        let skew = if t == phi {
            false
        } else if t == phi.neg() {
            true
        } else {
            return Err(MatrixModelError::NotSignSymmetric);
        };
        let phi_inv = phi.inverse().ok_or(MatrixModelError::NotInvertible)?;
        Ok(Self { phi, phi_inv, skew })
    }

    /// The identity form: plain transpose, symmetric.
    pub fn symmetric_identity(n: usize, modulus: u64) -> Self {
        Self::new(ExactMatrix::identity(n, modulus)).expect("identity form")
    }

    /// The standard 2×2 skew form [[0,1],[−1,0]].
    pub fn skew_standard(modulus: u64) -> Self {
        Self::new(ExactMatrix::from_integers(modulus, &[vec![0, 1], vec![-1, 0]]))
            .expect("standard skew form")
    }

    pub fn is_skew(&self) -> bool {
        self.skew
    }

    pub fn form(&self) -> &ExactMatrix {
        &self.phi
    }

    pub fn apply(&self, x: &ExactMatrix) -> ExactMatrix {
        self.phi_inv.mul(&x.transpose()).mul(&self.phi)
    }

    /// Tensor involution; the combined form is skew iff an odd number of
    /// factors are skew.
    pub fn tensor(&self, other: &Involution) -> Involution {
        let modulus = lcm(self.phi.modulus(), other.phi.modulus());
        let phi = self.phi.lift_to(modulus).kron(&other.phi.lift_to(modulus));
        let phi_inv =
            self.phi_inv.lift_to(modulus).kron(&other.phi_inv.lift_to(modulus));
        Involution { phi, phi_inv, skew: self.skew != other.skew }
    }
}

/// Folds a list of graded factors with involutions into one tensor model.
pub fn tensor_model(factors: &[(MatrixGrading, Involution)]) -> (MatrixGrading, Involution) {
    assert!(!factors.is_empty(), "need at least one factor");
    let (mut grading, mut inv) = factors[0].clone();
    for (g, i) in &factors[1..] {
        grading = grading.tensor(g);
        inv = inv.tensor(i);
    }
    (grading, inv)
}

/// Splits the support into the anti-fixed part K = {M : M* = −M} and the
/// fixed part H = {M : M* = M} of the involution.
pub fn split_by_involution(
    grading: &MatrixGrading,
    inv: &Involution,
) -> Result<(BTreeSet<GroupElement>, BTreeSet<GroupElement>), MatrixModelError> {
    let mut k_support = BTreeSet::new();
    let mut h_support = BTreeSet::new();
    for (a, m) in grading.basis() {
        let modulus = lcm(m.modulus(), inv.form().modulus());
        let lifted = m.lift_to(modulus);
        let star = Involution {
            phi: inv.form().lift_to(modulus),
            phi_inv: inv.phi_inv.lift_to(modulus),
            skew: inv.skew,
        }
        .apply(&lifted);
        if star == lifted.neg() {
            k_support.insert(a.clone());
        } else if star == lifted {
            h_support.insert(a.clone());
        } else {
            return Err(MatrixModelError::NotCompatible { element: a.clone() });
        }
    }
    Ok((k_support, h_support))
}

/// Checks that u_a ↦ images[a] is a bracket intertwiner: for every support
/// pair, [φ(u_a), φ(u_b)] = c(a,b)·φ(u_{a+b}) exactly (and the commutator
/// vanishes whenever the structure constant does).
pub fn verify_intertwiner(
    algebra: &GradedLieAlgebra,
    images: &BTreeMap<GroupElement, ExactMatrix>,
) -> Result<(), IntertwinerFailure> {
    let mut modulus = algebra.modulus();
    for m in images.values() {
        modulus = lcm(modulus, m.modulus());
    }
    let mut lifted: BTreeMap<&GroupElement, ExactMatrix> = BTreeMap::new();
    for a in algebra.support() {
        let m = images.get(a).ok_or(IntertwinerFailure::MissingImage { a: a.clone() })?;
        if m.is_zero() {
            return Err(IntertwinerFailure::ZeroImage { a: a.clone() });
        }
        lifted.insert(a, m.lift_to(modulus));
    }
    let support = algebra.support();
    for (i, a) in support.iter().enumerate() {
        for b in &support[i + 1..] {
            let comm = lifted[a].commutator(&lifted[b]);
            let c = algebra.constant(a, b).lift(modulus).expect("lcm modulus");
            let expected = if c.is_zero() {
                ExactMatrix::zero(comm.size(), modulus)
            } else {
                let sum = algebra.group().add(a, b);
                lifted[&sum].scale(&c)
            };
            if comm != expected {
                return Err(IntertwinerFailure::Pair { a: a.clone(), b: b.clone() });
            }
        }
    }
    Ok(())
}

/// Checks that conjugation by every generator fixes each graded component
/// up to a scalar, and that the resulting character vectors separate the
/// support.
pub fn verify_dual_action(
    grading: &MatrixGrading,
    generators: &[ExactMatrix],
) -> Result<(), DualActionFailure> {
    let mut modulus = grading.basis().values().next().map_or(1, ExactMatrix::modulus);
    for g in generators {
        modulus = lcm(modulus, g.modulus());
    }
    let inverses: Vec<(ExactMatrix, ExactMatrix)> = generators
        .iter()
        .map(|g| {
            let lifted = g.lift_to(modulus);
            let inv = lifted.inverse().expect("generators must be invertible");
            (lifted, inv)
        })
        .collect();
    let mut characters: Vec<(Vec<CyclotomicNumber>, GroupElement)> = Vec::new();
    for (a, m) in grading.basis() {
        let lifted = m.lift_to(modulus);
        let mut chi = Vec::with_capacity(inverses.len());
        for (g, g_inv) in &inverses {
            let conj = g.mul(&lifted).mul(g_inv);
            match conj.scalar_ratio_to(&lifted) {
                Some(c) => chi.push(c),
                None => return Err(DualActionFailure::NotPreserved { element: a.clone() }),
            }
        }
        if let Some((_, previous)) = characters.iter().find(|(seen, _)| *seen == chi) {
            return Err(DualActionFailure::NotSeparated {
                a: previous.clone(),
                b: a.clone(),
            });
        }
        characters.push((chi, a.clone()));
    }
    Ok(())
}

/// Solves u_a ↦ η(a)·u_a so that the rescaled constants follow `target`
/// instead of `actual`: η(a)η(b)η(a+b)^{−1} = target(a,b)/actual(a,b) for
/// all pairs. Values are searched in μ_W with W = 2N, assigned by closure
/// from the standard generators and verified globally; generator seeds are
/// backtracked when a closure choice fails downstream.
pub fn fit_basis_scaling(
    target: &Cocycle,
    actual: &Cocycle,
) -> Result<BTreeMap<GroupElement, RootOfUnity>, MatrixModelError> {
    assert_eq!(target.group(), actual.group(), "cocycles on different groups");
    assert_eq!(target.modulus(), actual.modulus(), "cocycles at different moduli");
    let group = target.group().clone();
    let n = target.modulus();
    let w = 2 * n;
    let ratio = |a: &GroupElement, b: &GroupElement| -> RootOfUnity {
        let e = (target.exponent_of(a, b) + n - actual.exponent_of(a, b)) % n;
        RootOfUnity::new(n, e as i64).rescale(w).expect("N divides 2N")
    };
    // Backtrack over the seed value of η at each standard generator; the
    // rest of η follows by η(x + e) = η(x)·η(e)/ratio(x, e) along the
    // lexicographic closure, and a global pair check accepts or rejects.
    let rank = group.rank();
    let mut seeds = vec![0u64; rank];
    'outer: loop {
        let mut eta: BTreeMap<GroupElement, RootOfUnity> = BTreeMap::new();
        eta.insert(group.zero(), RootOfUnity::one(w));
        // Enumerate G as words in the generators, extending by one
        // generator step at a time so every element gets a defined value.
        let mut frontier = vec![group.zero()];
        let mut gen_values = Vec::with_capacity(rank);
        for (i, seed) in seeds.iter().enumerate() {
            gen_values.push(RootOfUnity::new(w, *seed as i64));
            let e = group.basis_element(i);
            let mut grown = frontier.clone();
            for x in &frontier {
                let mut cur = x.clone();
                loop {
                    let next = group.add(&cur, &e);
                    if eta.contains_key(&next) {
                        break;
                    }
                    let value = eta[&cur].mul(&gen_values[i]).mul(&ratio(&cur, &e).inv());
                    eta.insert(next.clone(), value);
                    grown.push(next.clone());
                    cur = next;
                }
            }
            frontier = grown;
        }
        // Global verification over all pairs.
        let consistent = group.elements().all(|a| {
            group.elements().all(|b| {
                let lhs = eta[&a].mul(&eta[&b]).mul(&eta[&group.add(&a, &b)].inv());
                lhs == ratio(&a, &b)
            })
        });
        if consistent {
            return Ok(eta);
        }
        // Advance the seed odometer in μ_W per generator.
        for i in 0..rank {
            seeds[i] += 1;
            if seeds[i] < w {
                continue 'outer;
            }
            seeds[i] = 0;
        }
        return Err(MatrixModelError::NoRescaling);
    }
}
