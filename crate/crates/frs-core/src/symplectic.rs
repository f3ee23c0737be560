//! Bicharacters and bimultiplicative cocycles on finite abelian groups.
//!
//! Both are stored as integer exponent matrices: for a group with generator
//! orders n₁,…,n_m and exponent N, the matrix B encodes the pairing
//! β(a, b) = ζ_N^{Σ aᵢ B[i][j] bⱼ}. Well-definedness on residue classes
//! forces nᵢ·B[i][j] ≡ nⱼ·B[i][j] ≡ 0 (mod N), which every constructor
//! checks. Alternating bicharacters are the symplectic forms underlying root
//! systems; cocycles are the twists that turn a form into structure
//! constants. The two are related by polarization β(a,b) = ξ(a,b)·ξ(b,a)⁻¹
//! and by the canonical lower-triangular splitting in the other direction.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::abelian::snf::{kernel_basis, IntMatrix};
use crate::abelian::{
    FiniteAbelianGroup, GroupElement, GroupEndomorphism, QuotientPresentation,
    SubgroupPresentation,
};
use crate::cyclotomic::RootOfUnity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("exponent matrix must be {rank}x{rank} to match the group rank, got {rows}x{cols}")]
    ShapeMismatch { rank: usize, rows: usize, cols: usize },
    #[error("entry at ({row},{col}) is not well defined on residue classes")]
    NotWellDefined { row: usize, col: usize },
    #[error("matrix is not alternating at ({row},{col})")]
    NotAlternating { row: usize, col: usize },
    #[error("subgroup is not contained in the radical")]
    NotInRadical,
}

fn check_shape(group: &FiniteAbelianGroup, m: &[Vec<u64>]) -> Result<(), SymplecticError> {
    let rank = group.rank();
    if m.len() != rank || m.iter().any(|row| row.len() != rank) {
        return Err(SymplecticError::ShapeMismatch {
            rank,
            rows: m.len(),
            cols: m.first().map_or(0, |r| r.len()),
        });
    }
    Ok(())
}

fn check_well_defined(group: &FiniteAbelianGroup, m: &[Vec<u64>]) -> Result<(), SymplecticError> {
    let n = group.exponent();
    let orders = group.orders();
    for (i, row) in m.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            let e = e % n;
            if (u128::from(orders[i]) * u128::from(e)) % u128::from(n) != 0
                || (u128::from(orders[j]) * u128::from(e)) % u128::from(n) != 0
            {
                return Err(SymplecticError::NotWellDefined { row: i, col: j });
            }
        }
    }
    Ok(())
}

fn pairing_exponent(n: u64, m: &[Vec<u64>], a: &GroupElement, b: &GroupElement) -> u64 {
    let mut acc: u128 = 0;
    for (i, &ai) in a.coords().iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let mut row_acc: u128 = 0;
        for (j, &bj) in b.coords().iter().enumerate() {
            if bj != 0 {
                row_acc += (u128::from(m[i][j]) * u128::from(bj)) % u128::from(n);
            }
        }
        acc += (u128::from(ai) * (row_acc % u128::from(n))) % u128::from(n);
    }
    (acc % u128::from(n)) as u64
}

/// Solve Mᵀ·a ≡ 0 (mod n) over the group: the annihilator of the columns of
/// M, returned as the full sorted list of solutions. Computed from the
/// integer kernel of [Mᵀ | n·I] projected onto its first block.
fn annihilator_subgroup(
    group: &FiniteAbelianGroup,
    m: &[Vec<u64>],
    n: u64,
) -> Vec<GroupElement> {
    let rank = group.rank();
    let mut rel: IntMatrix = vec![vec![0; 2 * rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            // row i of the system is the condition Σ_j m[j][i]·a_j ≡ 0 (mod n):
            // coefficients come from the transpose.
            rel[i][j] = m[j][i] as i128;
        }
        rel[i][rank + i] = n as i128;
    }
    let kernel = kernel_basis(&rel);
    let seeds: Vec<GroupElement> = kernel
        .iter()
        .map(|v| group.element_from_i128(&v[..rank]))
        .collect();
    group.subgroup_generated(&seeds).into_iter().collect()
}

/// Alternating bicharacter β: G × G → μ_N given by an exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    group: FiniteAbelianGroup,
    entries: Vec<Vec<u64>>,
}

impl Bicharacter {
    /// Validates shape, well-definedness, and the alternating law
    /// (zero diagonal, antisymmetric off-diagonal mod N).
    pub fn new(group: FiniteAbelianGroup, entries: Vec<Vec<u64>>) -> Result<Self, SymplecticError> {
        check_shape(&group, &entries)?;
        check_well_defined(&group, &entries)?;
        let n = group.exponent();
        let entries: Vec<Vec<u64>> =
            entries.iter().map(|row| row.iter().map(|e| e % n).collect()).collect();
        for i in 0..entries.len() {
            if entries[i][i] != 0 {
                return Err(SymplecticError::NotAlternating { row: i, col: i });
            }
            for j in 0..i {
                if (entries[i][j] + entries[j][i]) % n != 0 {
                    return Err(SymplecticError::NotAlternating { row: i, col: j });
                }
            }
        }
        Ok(Self { group, entries })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.exponent()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn exponent_of(&self, a: &GroupElement, b: &GroupElement) -> u64 {
        pairing_exponent(self.modulus(), &self.entries, a, b)
    }

    pub fn eval(&self, a: &GroupElement, b: &GroupElement) -> RootOfUnity {
        RootOfUnity::new(self.modulus(), self.exponent_of(a, b) as i64)
    }

    /// The radical {a : β(a, b) = 1 for all b}, as a sorted list of elements.
    pub fn radical(&self) -> Vec<GroupElement> {
        annihilator_subgroup(&self.group, &self.entries, self.modulus())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }

    /// Whether an endomorphism preserves the form: β(φa, φb) = β(a, b),
    /// checked on all pairs of generators (enough, by bimultiplicativity).
    pub fn is_isometry(&self, phi: &GroupEndomorphism) -> bool {
        assert_eq!(phi.orders(), self.group.orders(), "map acts on a different group");
        let rank = self.group.rank();
        for i in 0..rank {
            let ei = self.group.basis_element(i);
            let pi = phi.apply(&ei);
            for j in 0..rank {
                let ej = self.group.basis_element(j);
                if self.exponent_of(&pi, &phi.apply(&ej)) != self.exponent_of(&ei, &ej) {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical cocycle with polarization β: keep the strictly lower
    /// triangle of the exponent matrix, zero elsewhere.
    pub fn split(&self) -> Cocycle {
        let rank = self.group.rank();
        let mut entries = vec![vec![0u64; rank]; rank];
        for i in 0..rank {
            for j in 0..i {
                entries[i][j] = self.entries[i][j];
            }
        }
        Cocycle::new(self.group.clone(), entries)
            .expect("lower triangle of a valid form is a valid cocycle")
    }

    /// The form β restricted to a subgroup, written on the subgroup's own
    /// generators with exponents rescaled to the subgroup exponent.
    pub fn restrict(&self, sub: &SubgroupPresentation) -> Bicharacter {
        let target = sub.group().clone();
        let nh = target.exponent();
        let rank = target.rank();
        let mut entries = vec![vec![0u64; rank]; rank];
        for s in 0..rank {
            let gs = sub.embed(&target.basis_element(s));
            for t in 0..rank {
                let gt = sub.embed(&target.basis_element(t));
                let value = self.eval(&gs, &gt);
                entries[s][t] = value
                    .rescale(nh)
                    .expect("restricted pairing values have order dividing the subgroup exponent")
                    .exponent();
            }
        }
        Bicharacter::new(target, entries).expect("restriction of a valid form is valid")
    }

    /// The form induced on a quotient G/H, defined when H lies in the
    /// radical (so the pairing is constant on cosets).
    pub fn induced_on_quotient(
        &self,
        pres: &QuotientPresentation,
    ) -> Result<Bicharacter, SymplecticError> {
        let radical: BTreeSet<GroupElement> = self.radical().into_iter().collect();
        for h in pres.kernel_elements() {
            if !radical.contains(h) {
                return Err(SymplecticError::NotInRadical);
            }
        }
        let target = pres.group().clone();
        let nq = target.exponent();
        let rank = target.rank();
        let mut entries = vec![vec![0u64; rank]; rank];
        for s in 0..rank {
            let ls = pres.lift(&target.basis_element(s));
            for t in 0..rank {
                let lt = pres.lift(&target.basis_element(t));
                entries[s][t] = self
                    .eval(&ls, &lt)
                    .rescale(nq)
                    .expect("induced pairing values have order dividing the quotient exponent")
                    .exponent();
            }
        }
        Ok(Bicharacter::new(target, entries).expect("induced form inherits validity"))
    }
}

/// Bimultiplicative map ξ: G × G → μ_N given by an exponent matrix; serves
/// as a 2-cocycle twisting structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    group: FiniteAbelianGroup,
    entries: Vec<Vec<u64>>,
}

impl Cocycle {
    pub fn new(group: FiniteAbelianGroup, entries: Vec<Vec<u64>>) -> Result<Self, SymplecticError> {
        check_shape(&group, &entries)?;
        check_well_defined(&group, &entries)?;
        let n = group.exponent();
        let entries = entries.iter().map(|row| row.iter().map(|e| e % n).collect()).collect();
        Ok(Self { group, entries })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.exponent()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn exponent_of(&self, a: &GroupElement, b: &GroupElement) -> u64 {
        pairing_exponent(self.modulus(), &self.entries, a, b)
    }

    pub fn eval(&self, a: &GroupElement, b: &GroupElement) -> RootOfUnity {
        RootOfUnity::new(self.modulus(), self.exponent_of(a, b) as i64)
    }

    /// The alternating bicharacter β(a,b) = ξ(a,b)·ξ(b,a)⁻¹.
    pub fn polarize(&self) -> Bicharacter {
        let n = self.modulus();
        let rank = self.group.rank();
        let mut entries = vec![vec![0u64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                entries[i][j] = (n + self.entries[i][j] - self.entries[j][i]) % n;
            }
        }
        Bicharacter::new(self.group.clone(), entries)
            .expect("polarization of a valid cocycle is a valid alternating form")
    }

    /// ξ written on a subgroup's own generators (exponents rescaled).
    pub fn restrict(&self, sub: &SubgroupPresentation) -> Cocycle {
        let target = sub.group().clone();
        let nh = target.exponent();
        let rank = target.rank();
        let mut entries = vec![vec![0u64; rank]; rank];
        for s in 0..rank {
            let gs = sub.embed(&target.basis_element(s));
            for t in 0..rank {
                let gt = sub.embed(&target.basis_element(t));
                entries[s][t] = self
                    .eval(&gs, &gt)
                    .rescale(nh)
                    .expect("restricted cocycle values have order dividing the subgroup exponent")
                    .exponent();
            }
        }
        Cocycle::new(target, entries).expect("restriction of a valid cocycle is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(orders.to_vec()).unwrap()
    }

    /// Reference radical by exhaustive search, for cross-checking the
    /// lattice computation.
    fn radical_by_search(beta: &Bicharacter) -> Vec<GroupElement> {
        let g = beta.group();
        let elements: Vec<GroupElement> = g.elements().collect();
        let mut rad: Vec<GroupElement> = elements
            .iter()
            .filter(|a| elements.iter().all(|b| beta.exponent_of(a, b) == 0))
            .cloned()
            .collect();
        rad.sort();
        rad
    }

    #[test]
    fn rejects_ill_defined_entries() {
        // On Z2 x Z4 the exponent is 4 and the (0,1) entry must kill order 2,
        // i.e. be even.
        let g = group(&[2, 4]);
        let bad = Bicharacter::new(g.clone(), vec![vec![0, 1], vec![3, 0]]);
        assert_eq!(bad, Err(SymplecticError::NotWellDefined { row: 0, col: 1 }));
        let good = Bicharacter::new(g, vec![vec![0, 2], vec![2, 0]]);
        assert!(good.is_ok());
    }

    #[test]
    fn rejects_non_alternating_matrices() {
        let g = group(&[3, 3]);
        assert_eq!(
            Bicharacter::new(g.clone(), vec![vec![1, 0], vec![0, 0]]),
            Err(SymplecticError::NotAlternating { row: 0, col: 0 })
        );
        assert_eq!(
            Bicharacter::new(g, vec![vec![0, 1], vec![1, 0]]),
            Err(SymplecticError::NotAlternating { row: 1, col: 0 })
        );
    }

    #[test]
    fn split_then_polarize_recovers_the_form() {
        let g = group(&[4, 4]);
        let beta = Bicharacter::new(g, vec![vec![0, 1], vec![3, 0]]).unwrap();
        let xi = beta.split();
        assert_eq!(xi.entries(), &[vec![0, 0], vec![3, 0]]);
        assert_eq!(xi.polarize(), beta);
    }

    #[test]
    fn standard_plane_is_nondegenerate() {
        let g = group(&[2, 2]);
        let beta = Bicharacter::new(g, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(beta.is_nondegenerate());
        assert_eq!(beta.radical().len(), 1);
    }

    #[test]
    fn all_ones_spans_the_radical_on_odd_rank() {
        // On Z2^3 with β(a,b) = (−1)^{Σ_{i≠j} aᵢbⱼ}, the radical is
        // {0, (1,1,1)}.
        let g = group(&[2, 2, 2]);
        let beta = Bicharacter::new(
            g.clone(),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
        )
        .unwrap();
        let rad = beta.radical();
        assert_eq!(rad, vec![g.zero(), g.element(&[1, 1, 1])]);
        assert_eq!(rad, radical_by_search(&beta));
    }

    #[test]
    fn restriction_to_even_weight_subgroup_is_nondegenerate() {
        // Restricting the rank-3 form above to its even-weight subgroup
        // kills the radical.
        let g = group(&[2, 2, 2]);
        let beta = Bicharacter::new(
            g.clone(),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
        )
        .unwrap();
        let seeds = vec![g.element(&[1, 1, 0]), g.element(&[0, 1, 1])];
        let sub = g.present_subgroup(&seeds);
        assert_eq!(sub.group().orders(), &[2, 2]);
        let restricted = beta.restrict(&sub);
        assert!(restricted.is_nondegenerate());
        // Spot value: β on embedded generators matches the restriction.
        let h = sub.group().clone();
        for s in 0..2 {
            for t in 0..2 {
                let a = h.basis_element(s);
                let b = h.basis_element(t);
                assert_eq!(
                    restricted.eval(&a, &b).canonical(),
                    beta.eval(&sub.embed(&a), &sub.embed(&b)).canonical()
                );
            }
        }
    }

    #[test]
    fn induced_form_on_quotient_by_radical() {
        let g = group(&[2, 2, 2]);
        let beta = Bicharacter::new(
            g.clone(),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
        )
        .unwrap();
        let rad: BTreeSet<GroupElement> = beta.radical().into_iter().collect();
        let pres = g.quotient(&rad).unwrap();
        let induced = beta.induced_on_quotient(&pres).unwrap();
        assert!(induced.is_nondegenerate());
        // Values agree through the projection.
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(
                    beta.eval(&a, &b).canonical(),
                    induced.eval(&pres.project(&a), &pres.project(&b)).canonical()
                );
            }
        }
        // Quotient by a subgroup outside the radical is rejected.
        let line = g.subgroup_generated(&[g.element(&[1, 0, 0])]);
        let bad_pres = g.quotient(&line).unwrap();
        assert_eq!(beta.induced_on_quotient(&bad_pres), Err(SymplecticError::NotInRadical));
    }

    #[test]
    fn isometry_detection_on_the_standard_plane() {
        let g = group(&[2, 2]);
        let beta = Bicharacter::new(g, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let g2 = group(&[2, 2]);
        let swap = GroupEndomorphism::new(&g2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(beta.is_isometry(&swap));
        let collapse = GroupEndomorphism::new(&g2, vec![vec![1, 1], vec![0, 0]]).unwrap();
        assert!(!beta.is_isometry(&collapse));
    }

    /// Strategy: a random group of rank ≤ 3 with small smooth orders and a
    /// random well-defined alternating form on it.
    fn arb_group_and_form() -> impl Strategy<Value = Bicharacter> {
        let orders = prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 6]), 1..=3);
        orders.prop_flat_map(|orders| {
            let g = group(&orders);
            let n = g.exponent();
            let rank = g.rank();
            let picks = prop::collection::vec(0u64..12, rank * rank);
            (Just(g), Just(n), picks).prop_map(move |(g, n, picks)| {
                let orders = g.orders().to_vec();
                let rank = orders.len();
                let mut entries = vec![vec![0u64; rank]; rank];
                for i in 0..rank {
                    for j in 0..i {
                        // Entries must be multiples of N / gcd(nᵢ, nⱼ) to be
                        // well defined; sample within that lattice.
                        let stride = n / num_integer::gcd(orders[i], orders[j]);
                        let max = n / stride;
                        let e = (picks[i * rank + j] % max) * stride;
                        entries[i][j] = e;
                        entries[j][i] = (n - e) % n;
                    }
                }
                Bicharacter::new(g, entries).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn radical_matches_exhaustive_search(beta in arb_group_and_form()) {
            prop_assert_eq!(beta.radical(), radical_by_search(&beta));
        }

        #[test]
        fn polarize_after_split_is_identity(beta in arb_group_and_form()) {
            prop_assert_eq!(beta.split().polarize(), beta);
        }

        #[test]
        fn pairing_is_bimultiplicative(beta in arb_group_and_form(), seed in 0usize..1000) {
            let g = beta.group().clone();
            let elements: Vec<GroupElement> = g.elements().collect();
            let pick = |k: usize| elements[(seed * 7 + k * 13) % elements.len()].clone();
            let (a, b, c) = (pick(0), pick(1), pick(2));
            let lhs = beta.eval(&g.add(&a, &b), &c);
            let rhs = beta.eval(&a, &c).mul(&beta.eval(&b, &c));
            prop_assert_eq!(lhs, rhs);
            let lhs2 = beta.eval(&a, &g.add(&b, &c));
            let rhs2 = beta.eval(&a, &b).mul(&beta.eval(&a, &c));
            prop_assert_eq!(lhs2, rhs2);
        }
    }
}
