//! Finite root systems over symplectic abelian groups.
//!
//! A root system here is a triple (G, β, R): a finite abelian group G, an
//! alternating bicharacter β on it, and a set of roots R ⊆ G subject to
//! three axioms — R avoids the radical and generates G, R = −R, and R is
//! closed under addition of non-orthogonal pairs. This module verifies the
//! axioms with explicit witnesses, applies and enumerates transvections
//! (whose closure is the Weyl group), reduces a system modulo a central
//! subgroup, decides irreducibility, and searches for isomorphisms between
//! two systems by exhaustive backtracking with a node budget.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{
    FiniteAbelianGroup, GroupElement, GroupEndomorphism, GroupHomomorphism,
    QuotientPresentation,
};
use crate::symplectic::{Bicharacter, SymplecticError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("transvections are only defined for nonzero elements")]
    ZeroElement,
    #[error("closure exceeded the cap after {explored} elements")]
    CapExceeded { explored: usize },
    #[error("search exceeded the node budget after {explored} nodes")]
    BudgetExceeded { explored: u64 },
    #[error("subgroup is not contained in the radical")]
    NotInRadical,
    #[error("the given set is not a subgroup")]
    NotASubgroup,
    #[error("root system axioms fail: {0}")]
    InvalidRootSystem(AxiomViolation),
}

/// A concrete witness for a failed axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// A root lies in the radical of β (zero always does).
    RootInRadical { root: GroupElement },
    /// The roots generate a proper subgroup.
    GenerationGap { generated: u64, group: u64 },
    /// A root whose negative is missing.
    NegationMissing { root: GroupElement },
    /// A non-orthogonal pair whose sum is missing.
    SumMissing { a: GroupElement, b: GroupElement, sum: GroupElement },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::RootInRadical { root } => {
                write!(f, "root {:?} lies in the radical", root.coords())
            }
            AxiomViolation::GenerationGap { generated, group } => {
                write!(f, "roots generate only {generated} of {group} elements")
            }
            AxiomViolation::NegationMissing { root } => {
                write!(f, "negative of root {:?} is missing", root.coords())
            }
            AxiomViolation::SumMissing { a, b, sum } => write!(
                f,
                "pair {:?}, {:?} is non-orthogonal but the sum {:?} is missing",
                a.coords(),
                b.coords(),
                sum.coords()
            ),
        }
    }
}

/// Outcome of checking the three axioms, with at most one witness per axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub frs0: bool,
    pub frs1: bool,
    pub frs2: bool,
    pub violations: Vec<AxiomViolation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.frs0 && self.frs1 && self.frs2
    }
}

/// A root system (G, β, R). Construction does not validate the axioms;
/// call [`RootSystem::verify`] or use [`RootSystem::checked`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    group: FiniteAbelianGroup,
    beta: Bicharacter,
    roots: BTreeSet<GroupElement>,
}

impl RootSystem {
    pub fn new_unchecked(beta: Bicharacter, roots: BTreeSet<GroupElement>) -> Self {
        let group = beta.group().clone();
        for r in &roots {
            assert!(group.contains(r), "root has coordinates outside the group");
        }
        Self { group, beta, roots }
    }

    /// Builds the system and fails with the first axiom violation, if any.
    pub fn checked(
        beta: Bicharacter,
        roots: BTreeSet<GroupElement>,
    ) -> Result<Self, RootSystemError> {
        let system = Self::new_unchecked(beta, roots);
        let report = system.verify();
        match report.violations.into_iter().next() {
            None => Ok(system),
            Some(v) => Err(RootSystemError::InvalidRootSystem(v)),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn beta(&self) -> &Bicharacter {
        &self.beta
    }

    pub fn roots(&self) -> &BTreeSet<GroupElement> {
        &self.roots
    }

    pub fn radical(&self) -> Vec<GroupElement> {
        self.beta.radical()
    }

    /// Reduced means β has trivial radical.
    pub fn is_reduced(&self) -> bool {
        self.beta.is_nondegenerate()
    }

    /// Checks the three axioms, recording the first witness per axiom.
    pub fn verify(&self) -> VerifyReport {
        let mut violations = Vec::new();
        let radical: BTreeSet<GroupElement> = self.beta.radical().into_iter().collect();

        let mut frs0 = true;
        if let Some(bad) = self.roots.iter().find(|r| radical.contains(*r)) {
            frs0 = false;
            violations.push(AxiomViolation::RootInRadical { root: bad.clone() });
        } else {
            let seeds: Vec<GroupElement> = self.roots.iter().cloned().collect();
            let generated = self.group.subgroup_generated(&seeds).len() as u64;
            if u128::from(generated) != self.group.size() {
                frs0 = false;
                violations.push(AxiomViolation::GenerationGap {
                    generated,
                    group: self.group.size() as u64,
                });
            }
        }

        let mut frs1 = true;
        for r in &self.roots {
            if !self.roots.contains(&self.group.neg(r)) {
                frs1 = false;
                violations.push(AxiomViolation::NegationMissing { root: r.clone() });
                break;
            }
        }

        let mut frs2 = true;
        'outer: for a in &self.roots {
            for b in &self.roots {
                if self.beta.exponent_of(a, b) != 0 {
                    let sum = self.group.add(a, b);
                    if !self.roots.contains(&sum) {
                        frs2 = false;
                        violations.push(AxiomViolation::SumMissing {
                            a: a.clone(),
                            b: b.clone(),
                            sum,
                        });
                        break 'outer;
                    }
                }
            }
        }

        VerifyReport { frs0, frs1, frs2, violations }
    }

    pub fn transvection(&self, a: &GroupElement) -> Result<GroupEndomorphism, RootSystemError> {
        transvection(&self.beta, a)
    }

    /// Breadth-first closure of the transvections {s_a : a ∈ R} under
    /// composition. `cap` bounds the number of stored elements.
    pub fn weyl_group(&self, cap: usize) -> Result<WeylGroup, RootSystemError> {
        let mut closure = WeylClosure::start(self)?;
        if closure.advance(cap) {
            Ok(closure.into_group().expect("closure completed"))
        } else {
            Err(RootSystemError::CapExceeded { explored: closure.explored() })
        }
    }

    /// Quotient system modulo a subgroup H of the radical: roots map to
    /// their cosets and β descends since H pairs trivially with everything.
    pub fn reduce(
        &self,
        subgroup: &BTreeSet<GroupElement>,
    ) -> Result<(RootSystem, QuotientPresentation), RootSystemError> {
        let pres = self.group.quotient(subgroup).map_err(|_| RootSystemError::NotASubgroup)?;
        let beta_bar = self.beta.induced_on_quotient(&pres).map_err(|e| match e {
            SymplecticError::NotInRadical => RootSystemError::NotInRadical,
            other => panic!("unexpected failure inducing the quotient form: {other}"),
        })?;
        let roots_bar: BTreeSet<GroupElement> =
            self.roots.iter().map(|r| pres.project(r)).collect();
        Ok((RootSystem::new_unchecked(beta_bar, roots_bar), pres))
    }

    /// A system is reducible when the graph on R with edges β(a,b) ≠ 1
    /// splits into parts whose generated subgroups factor G as an orthogonal
    /// direct product; irreducible otherwise.
    pub fn is_irreducible(&self) -> bool {
        let roots: Vec<GroupElement> = self.roots.iter().cloned().collect();
        if roots.is_empty() {
            return true;
        }
        // Connected components under non-orthogonality.
        let mut component = vec![usize::MAX; roots.len()];
        let mut count = 0;
        for start in 0..roots.len() {
            if component[start] != usize::MAX {
                continue;
            }
            let id = count;
            count += 1;
            let mut stack = vec![start];
            component[start] = id;
            while let Some(i) = stack.pop() {
                for j in 0..roots.len() {
                    if component[j] == usize::MAX
                        && self.beta.exponent_of(&roots[i], &roots[j]) != 0
                    {
                        component[j] = id;
                        stack.push(j);
                    }
                }
            }
        }
        if count == 1 {
            return true;
        }
        // Try every proper bipartition of the components. Cross-component
        // pairs are orthogonal by construction, so the two sides split the
        // system exactly when their generated subgroups factor |G|.
        assert!(count < 63, "too many components to enumerate bipartitions");
        for mask in 1..(1u64 << (count - 1)) {
            let mut left: Vec<GroupElement> = Vec::new();
            let mut right: Vec<GroupElement> = Vec::new();
            for (r, &c) in roots.iter().zip(&component) {
                if mask >> c & 1 == 1 {
                    left.push(r.clone());
                } else {
                    right.push(r.clone());
                }
            }
            let left_size = self.group.subgroup_generated(&left).len() as u128;
            let right_size = self.group.subgroup_generated(&right).len() as u128;
            if left_size * right_size == self.group.size() {
                return false;
            }
        }
        true
    }

    /// Searches for an isomorphism (G₁,β₁,R₁) → (G₂,β₂,R₂): a group
    /// isomorphism matching β on all pairs and carrying roots exactly onto
    /// roots. Backtracks over generator images; `Ok(None)` is an exhaustion
    /// proof, while exceeding `budget` nodes is an error, never a "no".
    pub fn find_isomorphism(
        &self,
        other: &RootSystem,
        budget: u64,
    ) -> Result<Option<GroupHomomorphism>, RootSystemError> {
        if self.group.invariant_factors() != other.group.invariant_factors()
            || self.roots.len() != other.roots.len()
            || self.beta.radical().len() != other.beta.radical().len()
        {
            return Ok(None);
        }
        let g1 = &self.group;
        let g2 = &other.group;
        let m = g1.rank();
        // Candidate images per generator: elements of the exact same order
        // (isomorphisms preserve element orders), in lexicographic order.
        let candidates: Vec<Vec<GroupElement>> = (0..m)
            .map(|i| {
                let want = g1.orders()[i];
                g2.elements().filter(|x| g2.element_order(x) == want).collect()
            })
            .collect();
        let mut search = IsoSearch {
            left: self,
            right: other,
            candidates,
            placed: Vec::with_capacity(m),
            nodes: 0,
            budget,
        };
        let span0 = vec![(g1.zero(), g2.zero())];
        match search.extend(0, &span0) {
            Ok(Some(images)) => {
                let hom = GroupHomomorphism::new(g1, g2, &images)
                    .expect("search yields well-defined images");
                debug_assert!(hom.is_bijective());
                Ok(Some(hom))
            }
            Ok(None) => Ok(None),
            Err(explored) => Err(RootSystemError::BudgetExceeded { explored }),
        }
    }
}

struct IsoSearch<'a> {
    left: &'a RootSystem,
    right: &'a RootSystem,
    candidates: Vec<Vec<GroupElement>>,
    placed: Vec<GroupElement>,
    nodes: u64,
    budget: u64,
}

impl IsoSearch<'_> {
    /// `span` holds every (x, φx) with x in the subgroup generated by the
    /// first `level` generators; the images are known to be distinct and
    /// root-consistent. Returns the full image list on success.
    fn extend(
        &mut self,
        level: usize,
        span: &[(GroupElement, GroupElement)],
    ) -> Result<Option<Vec<GroupElement>>, u64> {
        let g1 = self.left.group();
        let g2 = self.right.group();
        if level == g1.rank() {
            return Ok(Some(self.placed.clone()));
        }
        let e = g1.basis_element(level);
        let order = g1.orders()[level];
        for cand_index in 0..self.candidates[level].len() {
            let y = self.candidates[level][cand_index].clone();
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(self.nodes);
            }
            // β-compatibility against the generators already placed.
            let mut compatible = true;
            for (j, yj) in self.placed.iter().enumerate() {
                let ej = g1.basis_element(j);
                if self.left.beta().eval(&e, &ej).canonical()
                    != self.right.beta().eval(&y, yj).canonical()
                {
                    compatible = false;
                    break;
                }
            }
            if !compatible {
                continue;
            }
            // Grow the span by all multiples of the new generator, checking
            // injectivity and root membership on both sides as we go.
            let mut new_span: Vec<(GroupElement, GroupElement)> = span.to_vec();
            let mut seen: BTreeSet<GroupElement> =
                span.iter().map(|(_, img)| img.clone()).collect();
            let mut consistent = true;
            'grow: for c in 1..order {
                for (x, fx) in span {
                    let xs = g1.add(x, &g1.scale(c as i64, &e));
                    let ys = g2.add(fx, &g2.scale(c as i64, &y));
                    if !seen.insert(ys.clone()) {
                        consistent = false;
                        break 'grow;
                    }
                    if self.left.roots().contains(&xs) != self.right.roots().contains(&ys) {
                        consistent = false;
                        break 'grow;
                    }
                    new_span.push((xs, ys));
                }
            }
            if !consistent {
                continue;
            }
            self.placed.push(y);
            let result = self.extend(level + 1, &new_span)?;
            if result.is_some() {
                return Ok(result);
            }
            self.placed.pop();
        }
        Ok(None)
    }
}

/// The transvection s_a: b ↦ b − i·a where β(a,b) = ε^i for the fixed
/// primitive root ε of order ord(a) (i is read off the exponent of β(a,b)
/// rescaled from the group exponent to ord(a)).
pub fn transvection(
    beta: &Bicharacter,
    a: &GroupElement,
) -> Result<GroupEndomorphism, RootSystemError> {
    if a.is_zero() {
        return Err(RootSystemError::ZeroElement);
    }
    let group = beta.group();
    let n = group.exponent();
    let ord = group.element_order(a);
    let step = n / ord;
    let rank = group.rank();
    let mut raw = vec![vec![0i64; rank]; rank];
    for j in 0..rank {
        let exp = beta.exponent_of(a, &group.basis_element(j));
        // β(a, e_j) has order dividing ord(a), so the exponent is a
        // multiple of N / ord(a).
        debug_assert_eq!(exp % step, 0);
        let i = (exp / step) as i64;
        for r in 0..rank {
            raw[r][j] = if r == j { 1 } else { 0 } - i * a.coords()[r] as i64;
        }
    }
    Ok(GroupEndomorphism::new(group, raw).expect("transvection columns are well defined"))
}

/// A fully enumerated Weyl group.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: BTreeSet<GroupEndomorphism>,
    generators: Vec<GroupEndomorphism>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = &GroupEndomorphism> {
        self.elements.iter()
    }

    pub fn generators(&self) -> &[GroupEndomorphism] {
        &self.generators
    }

    pub fn contains(&self, w: &GroupEndomorphism) -> bool {
        self.elements.contains(w)
    }
}

/// Incremental breadth-first closure state, resumable after a cap stop.
pub struct WeylClosure {
    elements: BTreeSet<GroupEndomorphism>,
    frontier: VecDeque<GroupEndomorphism>,
    generators: Vec<GroupEndomorphism>,
    complete: bool,
}

impl WeylClosure {
    pub fn start(system: &RootSystem) -> Result<Self, RootSystemError> {
        let mut generator_set: BTreeSet<GroupEndomorphism> = BTreeSet::new();
        for a in system.roots() {
            generator_set.insert(transvection(system.beta(), a)?);
        }
        let generators: Vec<GroupEndomorphism> = generator_set.into_iter().collect();
        let identity = GroupEndomorphism::identity(system.group());
        let mut elements = BTreeSet::new();
        elements.insert(identity.clone());
        let mut frontier = VecDeque::new();
        frontier.push_back(identity);
        Ok(Self { elements, frontier, generators, complete: false })
    }

    pub fn explored(&self) -> usize {
        self.elements.len()
    }

    /// Runs until closed or until more than `cap` elements are stored.
    /// Returns true when the closure is complete; state is kept either way.
    pub fn advance(&mut self, cap: usize) -> bool {
        while let Some(w) = self.frontier.pop_front() {
            for s in &self.generators {
                let next = w.compose(s);
                if !self.elements.contains(&next) {
                    if self.elements.len() >= cap {
                        self.frontier.push_front(w);
                        return false;
                    }
                    self.elements.insert(next.clone());
                    self.frontier.push_back(next);
                }
            }
        }
        self.complete = true;
        true
    }

    pub fn into_group(self) -> Option<WeylGroup> {
        if self.complete {
            Some(WeylGroup { elements: self.elements, generators: self.generators })
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FiniteAbelianGroup;

    fn plane(n: u64) -> Bicharacter {
        // The rank-2 form β((a1,a2),(b1,b2)) = ζ^{a2·b1 − a1·b2}.
        let g = FiniteAbelianGroup::new(vec![n, n]).unwrap();
        Bicharacter::new(g, vec![vec![0, n - 1], vec![1, 0]]).unwrap()
    }

    fn full_system(n: u64) -> RootSystem {
        let beta = plane(n);
        let roots: BTreeSet<GroupElement> =
            beta.group().elements().filter(|e| !e.is_zero()).collect();
        RootSystem::checked(beta, roots).unwrap()
    }

    #[test]
    fn nonzero_elements_of_a_plane_form_a_root_system() {
        for n in [2u64, 3, 4] {
            let system = full_system(n);
            let report = system.verify();
            assert!(report.passed(), "n = {n}: {:?}", report.violations);
            assert!(system.is_reduced());
            assert!(system.is_irreducible());
        }
    }

    #[test]
    fn removing_a_root_is_detected_with_witness() {
        let system = full_system(2);
        let mut roots = system.roots().clone();
        let removed = system.group().element(&[1, 1]);
        roots.remove(&removed);
        let broken = RootSystem::new_unchecked(system.beta().clone(), roots);
        let report = broken.verify();
        assert!(!report.passed());
        // (1,0) + (0,1) is a non-orthogonal pair whose sum was removed.
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::SumMissing { sum, .. } if *sum == removed)));
    }

    #[test]
    fn zero_root_and_generation_gap_are_detected() {
        let beta = plane(2);
        let g = beta.group().clone();
        let mut roots: BTreeSet<GroupElement> = BTreeSet::new();
        roots.insert(g.zero());
        let report = RootSystem::new_unchecked(beta.clone(), roots).verify();
        assert!(matches!(report.violations[0], AxiomViolation::RootInRadical { .. }));

        let mut line: BTreeSet<GroupElement> = BTreeSet::new();
        line.insert(g.element(&[1, 0]));
        let report = RootSystem::new_unchecked(beta, line).verify();
        assert!(!report.frs0);
        assert!(matches!(
            report.violations[0],
            AxiomViolation::GenerationGap { generated: 2, group: 4 }
        ));
    }

    #[test]
    fn transvection_examples_on_the_klein_plane() {
        let system = full_system(2);
        let g = system.group().clone();
        let a = g.element(&[1, 0]);
        let b = g.element(&[0, 1]);
        let s = system.transvection(&a).unwrap();
        // β(a,b) = −1 so b moves to a + b; a is fixed (β(a,a) = 1).
        assert_eq!(s.apply(&b), g.element(&[1, 1]));
        assert_eq!(s.apply(&a), a);
        // s_a is an involution here and an isometry always.
        assert_eq!(s.compose(&s), GroupEndomorphism::identity(&g));
        assert!(system.beta().is_isometry(&s));
        assert!(matches!(
            system.transvection(&g.zero()),
            Err(RootSystemError::ZeroElement)
        ));
    }

    #[test]
    fn transvection_order_matches_element_order() {
        let system = full_system(4);
        let g = system.group().clone();
        for a in system.roots() {
            let s = system.transvection(a).unwrap();
            let ord = g.element_order(a);
            let mut power = s.clone();
            for _ in 1..ord {
                power = power.compose(&s);
            }
            assert_eq!(power, GroupEndomorphism::identity(&g));
            // Roots are permuted by every transvection.
            let image: BTreeSet<GroupElement> =
                system.roots().iter().map(|r| s.apply(r)).collect();
            assert_eq!(&image, system.roots());
        }
    }

    #[test]
    fn weyl_group_orders_for_small_planes() {
        // Closures of rank-2 full systems: orders 6, 24, 48 as n = 2, 3, 4.
        assert_eq!(full_system(2).weyl_group(1_000_000).unwrap().order(), 6);
        assert_eq!(full_system(3).weyl_group(1_000_000).unwrap().order(), 24);
        assert_eq!(full_system(4).weyl_group(1_000_000).unwrap().order(), 48);
    }

    #[test]
    fn weyl_closure_is_resumable_after_a_cap() {
        let system = full_system(3);
        let mut closure = WeylClosure::start(&system).unwrap();
        assert!(!closure.advance(5));
        assert!(closure.into_group().is_none());
        let mut closure = WeylClosure::start(&system).unwrap();
        assert!(!closure.advance(5));
        // Resume with room to finish.
        assert!(closure.advance(1_000_000));
        assert_eq!(closure.into_group().unwrap().order(), 24);
        assert!(matches!(
            system.weyl_group(5),
            Err(RootSystemError::CapExceeded { .. })
        ));
    }

    #[test]
    fn weyl_elements_are_isometries() {
        let system = full_system(3);
        let weyl = system.weyl_group(1_000_000).unwrap();
        for w in weyl.elements() {
            assert!(system.beta().is_isometry(w));
            assert!(w.is_bijective(system.group()));
        }
    }

    /// Rank-3 two-torsion system with a one-dimensional radical: the form
    /// pairs the first two coordinates and ignores the third.
    fn degenerate_system() -> RootSystem {
        let g = FiniteAbelianGroup::new(vec![2, 2, 2]).unwrap();
        let beta = Bicharacter::new(
            g.clone(),
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]],
        )
        .unwrap();
        // Roots: both elements of every nonzero coset of the radical that
        // pair nontrivially with something, chosen symmetrically.
        let roots: BTreeSet<GroupElement> = g
            .elements()
            .filter(|e| e.coords()[0] != 0 || e.coords()[1] != 0)
            .collect();
        RootSystem::checked(beta, roots).unwrap()
    }

    #[test]
    fn reduce_by_radical_yields_a_reduced_system() {
        let system = degenerate_system();
        assert!(!system.is_reduced());
        let rad: BTreeSet<GroupElement> = system.radical().into_iter().collect();
        assert_eq!(rad.len(), 2);
        let (reduced, pres) = system.reduce(&rad).unwrap();
        assert!(reduced.is_reduced());
        assert!(reduced.verify().passed());
        assert_eq!(reduced.group().orders(), &[2, 2]);
        assert_eq!(reduced.roots().len(), 3);
        // Projection carries roots onto roots.
        for r in system.roots() {
            assert!(reduced.roots().contains(&pres.project(r)));
        }
        // Reducing by a non-central subgroup is rejected.
        let line = system.group().subgroup_generated(&[system.group().element(&[1, 0, 0])]);
        assert!(matches!(system.reduce(&line), Err(RootSystemError::NotInRadical)));
        // Reducing by the trivial subgroup relabels without loss.
        let trivial = system.group().subgroup_generated(&[]);
        let (same, _) = system.reduce(&trivial).unwrap();
        assert_eq!(same.roots().len(), system.roots().len());
    }

    #[test]
    fn orthogonal_unions_are_reducible() {
        // Two orthogonal Klein planes inside Z2^4 with roots avoiding the
        // cross terms: the disjoint union of two rank-2 full systems.
        let g = FiniteAbelianGroup::new(vec![2, 2, 2, 2]).unwrap();
        let beta = Bicharacter::new(
            g.clone(),
            vec![
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
            ],
        )
        .unwrap();
        let roots: BTreeSet<GroupElement> = g
            .elements()
            .filter(|e| {
                let c = e.coords();
                let left = c[0] != 0 || c[1] != 0;
                let right = c[2] != 0 || c[3] != 0;
                left != right
            })
            .collect();
        let split = RootSystem::checked(beta.clone(), roots).unwrap();
        assert!(!split.is_irreducible());
        // The full set of nonzero elements over the same form is connected.
        let every: BTreeSet<GroupElement> = g.elements().filter(|e| !e.is_zero()).collect();
        let joined = RootSystem::checked(beta, every).unwrap();
        assert!(joined.is_irreducible());
    }

    #[test]
    fn isomorphism_search_finds_relabelings() {
        // The same 3-torsion plane written on swapped generators (the form
        // matrix is transposed); swapping them back is an isomorphism.
        let system = full_system(3);
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let other_beta = Bicharacter::new(g.clone(), vec![vec![0, 1], vec![2, 0]]).unwrap();
        let other = RootSystem::checked(
            other_beta,
            g.elements().filter(|e| !e.is_zero()).collect(),
        )
        .unwrap();
        let iso = system.find_isomorphism(&other, 10_000).unwrap().unwrap();
        assert!(iso.is_bijective());
        for a in system.roots() {
            assert!(other.roots().contains(&iso.apply(a)));
        }
        for a in system.group().elements() {
            for b in system.group().elements() {
                assert_eq!(
                    system.beta().eval(&a, &b).canonical(),
                    other.beta().eval(&iso.apply(&a), &iso.apply(&b)).canonical()
                );
            }
        }
    }

    #[test]
    fn isomorphism_search_refutes_and_respects_budget() {
        // Z3-plane vs Z2-plane: different groups, immediate refusal.
        assert_eq!(full_system(3).find_isomorphism(&full_system(2), 10).unwrap(), None);
        // Same group but roots of different sizes: refused without search.
        let small = degenerate_system();
        let rad: BTreeSet<GroupElement> = small.radical().into_iter().collect();
        let (reduced, _) = small.reduce(&rad).unwrap();
        assert!(reduced.find_isomorphism(&full_system(2), 1_000).unwrap().is_some());
        // A tiny budget is reported as exhaustion of budget, not a "no".
        let a = full_system(4);
        let b = full_system(4);
        assert!(matches!(
            a.find_isomorphism(&b, 1),
            Err(RootSystemError::BudgetExceeded { .. })
        ));
    }
}
