//! Graded Lie algebras with exact structure constants.
//!
//! From a bimultiplicative cocycle ξ on a finite abelian group G one gets a
//! Lie algebra on basis vectors u_a with bracket
//! [u_a, u_b] = (ξ(a,b) − ξ(b,a))·u_{a+b} — the commutator algebra of the
//! twisted group algebra. Taken over all of G this is a reductive algebra
//! whose center sits exactly on the radical of β = Ψ(ξ); restricted to a
//! verified root system R it is semisimple of dimension |R|. This module
//! builds the constants exactly, checks the Jacobi identity, reads off
//! center and derived subalgebra from the brackets, and computes the
//! diagonal Killing pairings (u_a, u_{−a}) by three routes that document
//! each other.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::FromPrimitive;
use thiserror::Error;

use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::cyclotomic::{CyclotomicNumber, RootOfUnity};
use crate::rootsystem::{AxiomViolation, RootSystem};
use crate::symplectic::Cocycle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieAlgError {
    #[error("root system axioms fail: {0}")]
    InvalidRootSystem(AxiomViolation),
    #[error("cocycle does not polarize to the root system's bicharacter")]
    NotCompatible,
    #[error("killing routes disagree at root {root:?}")]
    OracleMismatch { root: GroupElement },
}

/// One diagonal Killing pairing, with the independent closed-form column.
///
/// `value` is the true pairing (u_a, u_{−a}) = tr(ad u_{−a} ∘ ad u_a). The
/// `closed_form` column holds Σ_b (2 − ξ(a,b)ξ(b,−a) − ξ(b,a)ξ(−a,b)), which
/// equals ξ(a,a)·value: the sum telescopes to ξ(a,a)^{−1}·Σ_b(2 − β(a,b) −
/// β(b,a)) before the ξ(a,a) factor is dropped, so the two columns agree
/// exactly when ξ(a,a) = 1 and differ by that root of unity otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KillingEntry {
    pub root: GroupElement,
    pub value: CyclotomicNumber,
    pub closed_form: CyclotomicNumber,
}

impl KillingEntry {
    pub fn closed_form_matches(&self) -> bool {
        self.value == self.closed_form
    }

    /// Certifies that the true pairing is a strictly positive real number.
    pub fn is_strictly_positive(&self) -> bool {
        self.value.real_sign() == Ok(1)
    }
}

/// Diagonal Killing data. Off-diagonal pairings (u_a, u_b) with a + b ≠ 0
/// vanish identically, so the Gram matrix is a generalized permutation
/// matrix and nondegeneracy is equivalent to all diagonal values nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KillingReport {
    entries: Vec<KillingEntry>,
    nondegenerate: bool,
}

impl KillingReport {
    pub fn entries(&self) -> &[KillingEntry] {
        &self.entries
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn value_at(&self, a: &GroupElement) -> Option<&CyclotomicNumber> {
        self.entries.iter().find(|e| e.root == *a).map(|e| &e.value)
    }
}

/// A Lie algebra graded by a finite abelian group, one dimension per
/// support element, with exact cyclotomic structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    group: FiniteAbelianGroup,
    cocycle: Cocycle,
    modulus: u64,
    support: Vec<GroupElement>,
    index: BTreeMap<GroupElement, usize>,
    // Nonzero constants c(a_i, a_j) for i < j; antisymmetry is implicit and
    // c(a, a) = 0 always.
    constants: BTreeMap<(usize, usize), CyclotomicNumber>,
}

impl GradedLieAlgebra {
    fn assemble(cocycle: Cocycle, support: Vec<GroupElement>) -> Self {
        let group = cocycle.group().clone();
        let modulus = cocycle.modulus();
        let index: BTreeMap<GroupElement, usize> =
            support.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        assert_eq!(index.len(), support.len(), "support contains duplicates");
        let mut constants = BTreeMap::new();
        for i in 0..support.len() {
            for j in (i + 1)..support.len() {
                let p = cocycle.exponent_of(&support[i], &support[j]);
                let q = cocycle.exponent_of(&support[j], &support[i]);
                if p == q {
                    continue;
                }
                let c = CyclotomicNumber::root(modulus, p as i64)
                    .sub(&CyclotomicNumber::root(modulus, q as i64));
                // c ≠ 0 forces β(a_i, a_j) ≠ 1 and hence a_i + a_j in the
                // support for every construction that reaches this point.
                debug_assert!(index.contains_key(&group.add(&support[i], &support[j])));
                constants.insert((i, j), c);
            }
        }
        Self { group, cocycle, modulus, support, index, constants }
    }

    /// The algebra on all of G: dimension |G|, reductive, with center on
    /// the radical of the polarized form.
    pub fn build_full(cocycle: &Cocycle) -> Self {
        let support: Vec<GroupElement> = cocycle.group().elements().collect();
        Self::assemble(cocycle.clone(), support)
    }

    /// The semisimple algebra on a verified root system, using the
    /// lower-triangular splitting of its bicharacter as the cocycle.
    pub fn build_root(system: &RootSystem) -> Result<Self, LieAlgError> {
        Self::build_root_with(system, &system.beta().split())
    }

    /// Same, with an explicitly chosen cocycle; it must polarize back to
    /// the system's bicharacter so the brackets close over R.
    pub fn build_root_with(
        system: &RootSystem,
        cocycle: &Cocycle,
    ) -> Result<Self, LieAlgError> {
        if cocycle.polarize() != *system.beta() {
            return Err(LieAlgError::NotCompatible);
        }
        let report = system.verify();
        if let Some(v) = report.violations.into_iter().next() {
            return Err(LieAlgError::InvalidRootSystem(v));
        }
        let support: Vec<GroupElement> = system.roots().iter().cloned().collect();
        Ok(Self::assemble(cocycle.clone(), support))
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    /// Cyclotomic modulus of the structure constants (lifted by rescaling).
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn support(&self) -> &[GroupElement] {
        &self.support
    }

    pub fn dim(&self) -> usize {
        self.support.len()
    }

    fn constant_by_index(&self, i: usize, j: usize) -> CyclotomicNumber {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => CyclotomicNumber::zero(self.modulus),
            Ordering::Less => self
                .constants
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| CyclotomicNumber::zero(self.modulus)),
            Ordering::Greater => self
                .constants
                .get(&(j, i))
                .map(|c| c.neg())
                .unwrap_or_else(|| CyclotomicNumber::zero(self.modulus)),
        }
    }

    /// The coefficient in [u_a, u_b] = c(a,b)·u_{a+b}; zero when either
    /// element is outside the support.
    pub fn constant(&self, a: &GroupElement, b: &GroupElement) -> CyclotomicNumber {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.constant_by_index(i, j),
            _ => CyclotomicNumber::zero(self.modulus),
        }
    }

    /// Fault-injection hook: a copy with one constant replaced. The result
    /// generally fails `check_jacobi`; it exists to validate the checker.
    pub fn with_constant(
        &self,
        a: &GroupElement,
        b: &GroupElement,
        value: CyclotomicNumber,
    ) -> Self {
        let i = self.index[a];
        let j = self.index[b];
        assert_ne!(i, j, "diagonal constants are identically zero");
        let (key, stored) = if i < j { ((i, j), value) } else { ((j, i), value.neg()) };
        let mut out = self.clone();
        if stored.is_zero() {
            out.constants.remove(&key);
        } else {
            out.constants.insert(key, stored);
        }
        out
    }

    /// First support triple (a, b, c) where the Jacobi identity fails, if
    /// any. Each triple reduces to one identity in the a+b+c component.
    pub fn jacobi_witness(&self) -> Option<(GroupElement, GroupElement, GroupElement)> {
        let n = self.support.len();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let total = self
                        .double_bracket(i, j, k)
                        .add(&self.double_bracket(j, k, i))
                        .add(&self.double_bracket(k, i, j));
                    if !total.is_zero() {
                        return Some((
                            self.support[i].clone(),
                            self.support[j].clone(),
                            self.support[k].clone(),
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_witness().is_none()
    }

    // Coefficient of u_{x+y+z} in [[u_x, u_y], u_z].
    fn double_bracket(&self, x: usize, y: usize, z: usize) -> CyclotomicNumber {
        let inner = self.constant_by_index(x, y);
        if inner.is_zero() {
            return inner;
        }
        let sum = self.group.add(&self.support[x], &self.support[y]);
        let si = *self
            .index
            .get(&sum)
            .expect("nonzero bracket lands outside the support; the grading is not closed");
        inner.mul(&self.constant_by_index(si, z))
    }

    /// Support of the center, read off the brackets: elements whose bracket
    /// with the whole algebra vanishes.
    pub fn center(&self) -> BTreeSet<GroupElement> {
        let mut noncentral = vec![false; self.support.len()];
        for &(i, j) in self.constants.keys() {
            noncentral[i] = true;
            noncentral[j] = true;
        }
        self.support
            .iter()
            .zip(&noncentral)
            .filter(|(_, &busy)| !busy)
            .map(|(a, _)| a.clone())
            .collect()
    }

    /// Support of the derived subalgebra: all targets of nonzero brackets.
    pub fn derived(&self) -> BTreeSet<GroupElement> {
        self.constants
            .keys()
            .map(|&(i, j)| self.group.add(&self.support[i], &self.support[j]))
            .collect()
    }

    /// Cross-check: when the support generates G, the bracket-computed
    /// center must sit exactly on the radical of the polarized form.
    pub fn center_matches_radical(&self) -> bool {
        let radical: BTreeSet<GroupElement> =
            self.cocycle.polarize().radical().into_iter().collect();
        let on_radical: BTreeSet<GroupElement> =
            self.support.iter().filter(|a| radical.contains(*a)).cloned().collect();
        self.center() == on_radical
    }

    /// Diagonal Killing pairings by three routes: an accumulation over the
    /// structure constants, an independent trace of composed ad-matrices
    /// (these two must agree — `OracleMismatch` otherwise), and the
    /// closed-form cocycle sum stored for comparison in the report.
    pub fn killing(&self) -> Result<KillingReport, LieAlgError> {
        let dim = self.support.len();
        let big_n = self.cocycle.modulus();
        let mut entries = Vec::with_capacity(dim);
        let mut nondegenerate = true;
        for (i, a) in self.support.iter().enumerate() {
            let neg = self.group.neg(a);
            let ni = *self
                .index
                .get(&neg)
                .expect("support is closed under negation for built algebras");

            // Route one: (u_a, u_{-a}) = Σ_b c(a,b)·c(−a, a+b).
            let mut value = CyclotomicNumber::zero(self.modulus);
            for (j, b) in self.support.iter().enumerate() {
                let c1 = self.constant_by_index(i, j);
                if c1.is_zero() {
                    continue;
                }
                let sum = self.group.add(a, b);
                let si = *self.index.get(&sum).expect("bracket target missing from support");
                value = value.add(&c1.mul(&self.constant_by_index(ni, si)));
            }

            // Route two: literal trace of ad(u_{-a})·ad(u_a) over the basis.
            let ad_a = self.ad_matrix(i);
            let ad_n = self.ad_matrix(ni);
            let mut trace = CyclotomicNumber::zero(self.modulus);
            for r in 0..dim {
                for c in 0..dim {
                    if !ad_n[r][c].is_zero() && !ad_a[c][r].is_zero() {
                        trace = trace.add(&ad_n[r][c].mul(&ad_a[c][r]));
                    }
                }
            }
            if trace != value {
                return Err(LieAlgError::OracleMismatch { root: a.clone() });
            }

            // Route three: the closed-form sum over the generating cocycle,
            // accumulated as integer multiplicities of roots of unity.
            let mut tally = vec![0i64; big_n as usize];
            for b in self.support.iter() {
                let p = (self.cocycle.exponent_of(a, b)
                    + self.cocycle.exponent_of(b, &neg))
                    % big_n;
                let q = (self.cocycle.exponent_of(b, a)
                    + self.cocycle.exponent_of(&neg, b))
                    % big_n;
                tally[0] += 2;
                tally[p as usize] -= 1;
                tally[q as usize] -= 1;
            }
            let mut closed = CyclotomicNumber::zero(big_n);
            for (e, &m) in tally.iter().enumerate() {
                if m != 0 {
                    closed = closed.add(
                        &CyclotomicNumber::root(big_n, e as i64)
                            .scale(&BigRational::from_i64(m).unwrap()),
                    );
                }
            }
            let closed = closed.lift(self.modulus).expect("constant modulus is a lift");

            if value.is_zero() {
                nondegenerate = false;
            }
            entries.push(KillingEntry { root: a.clone(), value, closed_form: closed });
        }
        Ok(KillingReport { entries, nondegenerate })
    }

    // Matrix of ad(u_{a_i}) over the support basis: column j carries
    // c(a_i, a_j) in the row of a_i + a_j.
    fn ad_matrix(&self, i: usize) -> Vec<Vec<CyclotomicNumber>> {
        let dim = self.support.len();
        let mut m = vec![vec![CyclotomicNumber::zero(self.modulus); dim]; dim];
        for j in 0..dim {
            let c = self.constant_by_index(i, j);
            if c.is_zero() {
                continue;
            }
            let sum = self.group.add(&self.support[i], &self.support[j]);
            let row = *self.index.get(&sum).expect("bracket target missing from support");
            m[row][j] = c;
        }
        m
    }

    /// Basis change u_a ↦ η(a)·u_a for a unit character-like scaling η:
    /// constants transform to η(a)η(b)η(a+b)^{−1}·c(a,b), which preserves
    /// Jacobi, center, derived support, and Killing nondegeneracy.
    pub fn with_rescaled_basis(&self, eta: &BTreeMap<GroupElement, RootOfUnity>) -> Self {
        let mut modulus = self.modulus;
        for v in eta.values() {
            modulus = num_integer::lcm(modulus, v.modulus());
        }
        let factor = |g: &GroupElement| -> RootOfUnity {
            eta.get(g)
                .map(|r| r.rescale(modulus).expect("lcm modulus admits every value"))
                .unwrap_or_else(|| RootOfUnity::one(modulus))
        };
        let mut constants = BTreeMap::new();
        for (&(i, j), c) in &self.constants {
            let a = &self.support[i];
            let b = &self.support[j];
            let scale = factor(a)
                .mul(&factor(b))
                .mul(&factor(&self.group.add(a, b)).inv());
            let lifted = c.lift(modulus).expect("modulus grows by lcm");
            constants.insert((i, j), lifted.mul(&scale.embed()));
        }
        Self {
            group: self.group.clone(),
            cocycle: self.cocycle.clone(),
            modulus,
            support: self.support.clone(),
            index: self.index.clone(),
            constants,
        }
    }

    /// Compares bracket tables through a support bijection: true when `map`
    /// carries this support onto the other's and preserves every constant.
    pub fn matches_via<F>(&self, other: &GradedLieAlgebra, map: F) -> bool
    where
        F: Fn(&GroupElement) -> GroupElement,
    {
        let image: BTreeSet<GroupElement> = self.support.iter().map(&map).collect();
        if image.len() != self.support.len() || image != other.index.keys().cloned().collect()
        {
            return false;
        }
        let common = num_integer::lcm(self.modulus, other.modulus);
        for i in 0..self.support.len() {
            for j in (i + 1)..self.support.len() {
                let left = self.constant_by_index(i, j);
                let right = other.constant(&map(&self.support[i]), &map(&self.support[j]));
                let left = left.lift(common).expect("lcm modulus admits both");
                let right = right.lift(common).expect("lcm modulus admits both");
                if left != right {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::Bicharacter;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn plane_system(n: u64) -> RootSystem {
        let g = FiniteAbelianGroup::new(vec![n, n]).unwrap();
        let beta = Bicharacter::new(g.clone(), vec![vec![0, n - 1], vec![1, 0]]).unwrap();
        let roots: BTreeSet<GroupElement> = g.elements().filter(|e| !e.is_zero()).collect();
        RootSystem::checked(beta, roots).unwrap()
    }

    #[test]
    fn trivial_cocycle_gives_an_abelian_algebra() {
        let g = FiniteAbelianGroup::new(vec![4]).unwrap();
        let xi = Cocycle::new(g, vec![vec![0]]).unwrap();
        let alg = GradedLieAlgebra::build_full(&xi);
        assert_eq!(alg.dim(), 4);
        assert!(alg.check_jacobi());
        assert_eq!(alg.center().len(), 4);
        assert!(alg.derived().is_empty());
        let report = alg.killing().unwrap();
        assert!(!report.is_nondegenerate());
        assert!(report.entries().iter().all(|e| e.value.is_zero()));
        assert!(alg.center_matches_radical());
    }

    #[test]
    fn full_algebra_on_the_klein_plane_behaves_like_gl2() {
        let system = plane_system(2);
        let alg = GradedLieAlgebra::build_full(&system.beta().split());
        assert_eq!(alg.dim(), 4);
        assert!(alg.check_jacobi());
        // Center is the span of u_0; derived support is everything else.
        assert_eq!(alg.center().len(), 1);
        assert_eq!(alg.derived().len(), 3);
        assert!(alg.center_matches_radical());
        let report = alg.killing().unwrap();
        assert!(!report.is_nondegenerate());
        let zero = system.group().zero();
        assert!(report.value_at(&zero).unwrap().is_zero());
    }

    #[test]
    fn root_algebra_on_the_klein_plane_is_sl2() {
        let system = plane_system(2);
        let alg = GradedLieAlgebra::build_root(&system).unwrap();
        assert_eq!(alg.dim(), 3);
        assert!(alg.check_jacobi());
        assert!(alg.center().is_empty());
        assert_eq!(alg.derived().len(), 3);
        let g = system.group().clone();
        // [u_{(1,0)}, u_{(0,1)}] = 2·u_{(1,1)}, matching [X, Y] = 2XY for
        // the clock/shift pair; distinct roots anticommute in the twisted
        // product, as Pauli matrices do.
        let c = alg.constant(&g.element(&[1, 0]), &g.element(&[0, 1]));
        assert_eq!(c.as_rational(), Some(BigRational::from_i64(2).unwrap()));
    }

    #[test]
    fn killing_diagonals_on_the_two_torsion_plane() {
        // The dimension-3 algebra realized by clock/shift matrices X, Y
        // over Z₂²: with the lower-triangular cocycle, ξ(a,a) = 1 for the
        // roots (1,0) and (0,1) but ξ(a,a) = −1 for (1,1). The true traces
        // are κ(X,X) = κ(Y,Y) = 4·tr(X²) = 8 while κ(XY,XY) = 4·tr((XY)²)
        // = −8, since (XY)² = −I. The closed-form column drops the ξ(a,a)
        // factor and therefore reads 8 at all three roots.
        let system = plane_system(2);
        let alg = GradedLieAlgebra::build_root(&system).unwrap();
        let report = alg.killing().unwrap();
        assert!(report.is_nondegenerate());
        let g = system.group().clone();
        let eight = CyclotomicNumber::from_integer(8, 2);
        assert_eq!(report.value_at(&g.element(&[1, 0])), Some(&eight));
        assert_eq!(report.value_at(&g.element(&[0, 1])), Some(&eight));
        assert_eq!(report.value_at(&g.element(&[1, 1])), Some(&eight.neg()));
        for entry in report.entries() {
            assert_eq!(entry.closed_form, eight);
            // value·ξ(a,a) = closed form, exactly.
            let xi_aa = CyclotomicNumber::root(
                2,
                alg.cocycle().exponent_of(&entry.root, &entry.root) as i64,
            );
            assert_eq!(entry.value.mul(&xi_aa), entry.closed_form);
            assert_eq!(
                entry.is_strictly_positive(),
                entry.root != g.element(&[1, 1])
            );
        }
    }

    #[test]
    fn killing_routes_agree_on_larger_planes() {
        for n in [3u64, 4] {
            let system = plane_system(n);
            let alg = GradedLieAlgebra::build_root(&system).unwrap();
            assert!(alg.check_jacobi());
            let report = alg.killing().unwrap();
            assert!(report.is_nondegenerate());
            for entry in report.entries() {
                // value·ξ(a,a) equals the closed form at every root.
                let xi_aa = CyclotomicNumber::root(
                    alg.cocycle().modulus(),
                    alg.cocycle().exponent_of(&entry.root, &entry.root) as i64,
                );
                assert_eq!(entry.value.mul(&xi_aa), entry.closed_form);
                assert!(!entry.value.is_zero());
            }
        }
    }

    #[test]
    fn corrupted_constant_fails_jacobi_with_witness() {
        let system = plane_system(3);
        let alg = GradedLieAlgebra::build_root(&system).unwrap();
        assert!(alg.check_jacobi());
        let g = system.group().clone();
        let bad = alg.with_constant(
            &g.element(&[1, 0]),
            &g.element(&[0, 1]),
            CyclotomicNumber::from_integer(17, alg.modulus() as u64),
        );
        assert!(!bad.check_jacobi());
        assert!(bad.jacobi_witness().is_some());
    }

    #[test]
    fn degenerate_full_algebra_splits_center_and_derived() {
        // Z₂⁴ with β pairing only the first two coordinates: radical of
        // size 4, so the full algebra has a 4-dimensional center and a
        // 12-dimensional derived support.
        let g = FiniteAbelianGroup::new(vec![2, 2, 2, 2]).unwrap();
        let beta = Bicharacter::new(
            g.clone(),
            vec![
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
            ],
        )
        .unwrap();
        let alg = GradedLieAlgebra::build_full(&beta.split());
        assert_eq!(alg.center().len(), 4);
        assert_eq!(alg.derived().len(), 12);
        assert!(alg.center_matches_radical());
        assert!(alg.check_jacobi());
        let report = alg.killing().unwrap();
        assert!(!report.is_nondegenerate());
        // Pairings vanish exactly on the radical.
        let radical: BTreeSet<GroupElement> =
            beta.radical().into_iter().collect();
        for entry in report.entries() {
            assert_eq!(entry.value.is_zero(), radical.contains(&entry.root));
        }
    }

    #[test]
    fn build_root_rejects_broken_systems_and_foreign_cocycles() {
        let system = plane_system(2);
        let mut roots = system.roots().clone();
        roots.remove(&system.group().element(&[1, 1]));
        let broken = RootSystem::new_unchecked(system.beta().clone(), roots);
        assert!(matches!(
            GradedLieAlgebra::build_root(&broken),
            Err(LieAlgError::InvalidRootSystem(_))
        ));
        // A cocycle polarizing to a different form is refused.
        let g = system.group().clone();
        let trivial = Cocycle::new(g, vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(matches!(
            GradedLieAlgebra::build_root_with(&system, &trivial),
            Err(LieAlgError::NotCompatible)
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Rescaling the basis by roots of unity preserves Jacobi, center,
        /// derived support, and Killing nondegeneracy, and multiplies each
        /// diagonal pairing by η(a)η(−a).
        #[test]
        fn basis_rescaling_preserves_structure(seed in 0u64..10_000) {
            let system = plane_system(2);
            let alg = GradedLieAlgebra::build_root(&system).unwrap();
            let g = system.group().clone();
            // Derive a deterministic η: G → μ₄ from the seed.
            let mut eta = BTreeMap::new();
            let mut state = seed;
            for a in alg.support() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                eta.insert(a.clone(), RootOfUnity::new(4, (state >> 33) as i64));
            }
            let rescaled = alg.with_rescaled_basis(&eta);
            prop_assert!(rescaled.check_jacobi());
            prop_assert_eq!(rescaled.center(), alg.center());
            prop_assert_eq!(rescaled.derived(), alg.derived());
            let before = alg.killing().unwrap();
            let after = rescaled.killing().unwrap();
            prop_assert_eq!(before.is_nondegenerate(), after.is_nondegenerate());
            for (b, a) in before.entries().iter().zip(after.entries()) {
                let factor = eta[&b.root].mul(&eta[&g.neg(&b.root)]);
                let expected = b.value.lift(rescaled.modulus()).unwrap().mul(&factor.embed());
                prop_assert_eq!(&a.value, &expected);
            }
        }
    }
}
