//! Finite abelian groups presented as Z_{n₁} × … × Z_{n_m}, with normalized
//! residue-vector elements, subgroup closure, quotient presentations, and
//! subgroup re-presentations in invariant-factor coordinates.
//!
//! The quotient and presentation machinery is exact integer linear algebra on
//! relation matrices (Smith normal form); there are no modular shortcuts.

pub mod snf;

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use snf::{kernel_basis, smith_normal_form, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("a group needs at least one cyclic factor")]
    EmptyOrders,
    #[error("cyclic factor orders must be >= 1, got {0}")]
    InvalidOrder(u64),
    #[error("element has {got} coordinates, group has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("the given set is not a subgroup (fails closure under + or -)")]
    NotASubgroup,
    #[error("map is not well defined: order of generator {generator} does not annihilate its image")]
    NotWellDefined { generator: usize },
}

/// G = Z_{n₁} × … × Z_{n_m}. The orders list is kept exactly as declared;
/// `invariant_factors` canonicalizes on demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

/// Element of a specific group: residues `0 <= coords[i] < n_i`.
/// Ordering is lexicographic on coordinates, which fixes every "canonical
/// order" used elsewhere (root listings, search order, report output).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, AbelianError> {
        if orders.is_empty() {
            return Err(AbelianError::EmptyOrders);
        }
        if let Some(&bad) = orders.iter().find(|&&n| n == 0) {
            return Err(AbelianError::InvalidOrder(bad));
        }
        Ok(Self { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Exponent N = lcm of the factor orders; every element order divides N.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &n| acc.lcm(&n))
    }

    pub fn size(&self) -> u128 {
        self.orders.iter().map(|&n| u128::from(n)).product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    /// Standard generator e_i (zero if n_i = 1 — the factor is trivial).
    pub fn basis_element(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        coords[i] = if self.orders[i] == 1 { 0 } else { 1 };
        GroupElement { coords }
    }

    /// Build an element from arbitrary integer coordinates, reducing mod n_i.
    pub fn element(&self, raw: &[i64]) -> GroupElement {
        assert_eq!(raw.len(), self.rank(), "coordinate count mismatch");
        let coords = raw
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
            .collect();
        GroupElement { coords }
    }

    /// Same, for wide intermediate values from integer linear algebra.
    pub fn element_from_i128(&self, raw: &[i128]) -> GroupElement {
        assert_eq!(raw.len(), self.rank(), "coordinate count mismatch");
        let coords = raw
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| c.rem_euclid(i128::from(n)) as u64)
            .collect();
        GroupElement { coords }
    }

    /// Input-validating variant of `element` for data read from files.
    pub fn try_element(&self, raw: &[i64]) -> Result<GroupElement, AbelianError> {
        if raw.len() != self.rank() {
            return Err(AbelianError::RankMismatch { expected: self.rank(), got: raw.len() });
        }
        Ok(self.element(raw))
    }

    /// True when the element is a normalized residue vector of this group.
    pub fn contains(&self, e: &GroupElement) -> bool {
        e.coords.len() == self.rank() && e.coords.iter().zip(&self.orders).all(|(&c, &n)| c < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
            .collect();
        GroupElement { coords }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| {
                let kk = k.rem_euclid(n as i64) as u128;
                ((kk * u128::from(x)) % u128::from(n)) as u64
            })
            .collect();
        GroupElement { coords }
    }

    /// Least t >= 1 with t·g = 0: lcm over coordinates of n_i / gcd(n_i, g_i).
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| n / n.gcd(&c))
            .fold(1u64, |acc, o| acc.lcm(&o))
    }

    /// All |G| elements in lexicographic coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let rank = self.rank();
        let mut cur = Some(vec![0u64; rank]);
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            // Odometer increment, rightmost coordinate fastest.
            let mut next = out.clone();
            let mut i = rank;
            loop {
                if i == 0 {
                    cur = None;
                    break;
                }
                i -= 1;
                next[i] += 1;
                if next[i] < self.orders[i] {
                    cur = Some(next);
                    break;
                }
                next[i] = 0;
            }
            Some(GroupElement { coords: out })
        })
    }

    /// Invariant factors d₁ | d₂ | … (1-entries dropped) via Smith normal form
    /// of the diagonal relation matrix.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let m = self.rank();
        let mut rel: IntMatrix = vec![vec![0; m]; m];
        for i in 0..m {
            rel[i][i] = self.orders[i] as i128;
        }
        let snf = smith_normal_form(&rel);
        let factors: Vec<u64> =
            snf.invariant_entries().iter().map(|&d| d as u64).filter(|&d| d > 1).collect();
        if factors.is_empty() {
            vec![1]
        } else {
            factors
        }
    }

    /// Closure of S ∪ {0} under addition and negation, by breadth-first search.
    pub fn subgroup_generated(&self, seeds: &[GroupElement]) -> BTreeSet<GroupElement> {
        let mut closed = BTreeSet::new();
        closed.insert(self.zero());
        let mut queue: VecDeque<GroupElement> = VecDeque::new();
        queue.push_back(self.zero());
        while let Some(x) = queue.pop_front() {
            for s in seeds {
                for step in [self.add(&x, s), self.sub(&x, s)] {
                    if closed.insert(step.clone()) {
                        queue.push_back(step);
                    }
                }
            }
        }
        closed
    }

    /// Closure check: contains 0 and is closed under + and −.
    pub fn is_subgroup(&self, set: &BTreeSet<GroupElement>) -> bool {
        if !set.contains(&self.zero()) {
            return false;
        }
        for a in set {
            if !self.contains(a) || !set.contains(&self.neg(a)) {
                return false;
            }
            for b in set {
                if !set.contains(&self.add(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Quotient G/H in invariant-factor form together with the projection and
    /// a lifting section, computed from the Smith normal form of the relation
    /// matrix whose columns are n_i·e_i and the elements of H.
    pub fn quotient(&self, subgroup: &BTreeSet<GroupElement>) -> Result<QuotientPresentation, AbelianError> {
        if !self.is_subgroup(subgroup) {
            return Err(AbelianError::NotASubgroup);
        }
        let m = self.rank();
        let mut rel: IntMatrix = vec![Vec::with_capacity(m + subgroup.len()); m];
        for i in 0..m {
            for j in 0..m {
                rel[i].push(if i == j { self.orders[i] as i128 } else { 0 });
            }
        }
        for h in subgroup {
            for i in 0..m {
                rel[i].push(h.coords[i] as i128);
            }
        }
        let snf = smith_normal_form(&rel);
        // The first m diagonal entries are the orders of the quotient's cyclic
        // factors (the relation matrix has full row rank m).
        let diag: Vec<u64> = (0..m).map(|i| snf.s[i][i] as u64).collect();
        let kept: Vec<usize> = (0..m).filter(|&i| diag[i] > 1).collect();
        let (kept, orders) = if kept.is_empty() {
            (vec![m - 1], vec![1u64])
        } else {
            let orders = kept.iter().map(|&i| diag[i]).collect();
            (kept, orders)
        };
        let group = FiniteAbelianGroup::new(orders).expect("quotient orders are valid");
        let proj_rows: IntMatrix = kept.iter().map(|&t| snf.u[t].clone()).collect();
        let lift_cols: IntMatrix = kept
            .iter()
            .map(|&t| (0..m).map(|i| snf.u_inv[i][t]).collect())
            .collect();
        Ok(QuotientPresentation {
            source: self.clone(),
            group,
            proj_rows,
            lift_cols,
            kernel: subgroup.iter().cloned().collect(),
        })
    }

    /// Re-present the subgroup generated by `seeds` on its own invariant-factor
    /// coordinates, with the embedding back into this group and the coordinates
    /// of every seed.
    pub fn present_subgroup(&self, seeds: &[GroupElement]) -> SubgroupPresentation {
        let m = self.rank();
        let k = seeds.len();
        if k == 0 {
            let group = FiniteAbelianGroup::new(vec![1]).unwrap();
            return SubgroupPresentation {
                ambient: self.clone(),
                group,
                gen_images: vec![self.zero()],
                seed_coords: vec![],
            };
        }
        // Kernel of Z^k -> G, x ↦ Σ x_j seeds_j: project ker[S | diag(n)] to
        // the first k coordinates (injective because diag(n) is injective on
        // the complement).
        let mut stacked: IntMatrix = vec![Vec::with_capacity(k + m); m];
        for i in 0..m {
            for s in seeds {
                stacked[i].push(s.coords[i] as i128);
            }
            for j in 0..m {
                stacked[i].push(if i == j { self.orders[i] as i128 } else { 0 });
            }
        }
        let ker = kernel_basis(&stacked);
        assert_eq!(ker.len(), k, "relation lattice of a finite subgroup has full rank");
        let mut rel: IntMatrix = vec![vec![0; k]; k];
        for (j, basis_vec) in ker.iter().enumerate() {
            for i in 0..k {
                rel[i][j] = basis_vec[i];
            }
        }
        let snf = smith_normal_form(&rel);
        let diag: Vec<u64> = (0..k).map(|i| snf.s[i][i] as u64).collect();
        assert!(diag.iter().all(|&d| d > 0), "subgroup presentation must be finite");
        let kept: Vec<usize> = (0..k).filter(|&i| diag[i] > 1).collect();
        let (kept, orders) = if kept.is_empty() {
            (vec![], vec![1u64])
        } else {
            let orders = kept.iter().map(|&i| diag[i]).collect();
            (kept, orders)
        };
        let group = FiniteAbelianGroup::new(orders).expect("subgroup orders are valid");
        // Generator t of the presentation embeds as Σ_i u_inv[i][t]·seeds_i.
        let gen_images: Vec<GroupElement> = if kept.is_empty() {
            vec![self.zero()]
        } else {
            kept.iter()
                .map(|&t| {
                    let mut acc = self.zero();
                    for i in 0..k {
                        acc = self.add(&acc, &self.scale(snf.u_inv[i][t] as i64, &seeds[i]));
                    }
                    acc
                })
                .collect()
        };
        // Seed j has presentation coordinates (U e_j) mod d on the kept rows.
        let seed_coords: Vec<GroupElement> = (0..k)
            .map(|j| {
                if kept.is_empty() {
                    group.zero()
                } else {
                    let raw: Vec<i64> = kept.iter().map(|&t| snf.u[t][j] as i64).collect();
                    group.element(&raw)
                }
            })
            .collect();
        SubgroupPresentation { ambient: self.clone(), group, gen_images, seed_coords }
    }
}

/// Quotient Ḡ = G/H with projection p and a lifting section (p ∘ lift = id).
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    source: FiniteAbelianGroup,
    group: FiniteAbelianGroup,
    proj_rows: IntMatrix,
    lift_cols: IntMatrix,
    kernel: Vec<GroupElement>,
}

impl QuotientPresentation {
    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// The subgroup that was quotiented out, sorted.
    pub fn kernel_elements(&self) -> &[GroupElement] {
        &self.kernel
    }

    pub fn project(&self, a: &GroupElement) -> GroupElement {
        assert!(self.source.contains(a), "element not in the source group");
        let raw: Vec<i128> = self
            .proj_rows
            .iter()
            .map(|row| row.iter().zip(a.coords()).map(|(&r, &c)| r * i128::from(c)).sum())
            .collect();
        self.group.element_from_i128(&raw)
    }

    /// A preimage of x under the projection (one fixed section, not a hom).
    pub fn lift(&self, x: &GroupElement) -> GroupElement {
        assert!(self.group.contains(x), "element not in the quotient group");
        let mut acc = self.source.zero();
        for (t, col) in self.lift_cols.iter().enumerate() {
            let gen_lift = self.source.element_from_i128(col);
            acc = self.source.add(&acc, &self.source.scale(x.coords()[t] as i64, &gen_lift));
        }
        acc
    }
}

/// The subgroup generated by a seed list, on its own coordinates.
#[derive(Debug, Clone)]
pub struct SubgroupPresentation {
    ambient: FiniteAbelianGroup,
    group: FiniteAbelianGroup,
    gen_images: Vec<GroupElement>,
    seed_coords: Vec<GroupElement>,
}

impl SubgroupPresentation {
    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Image in the ambient group of the presentation element x.
    pub fn embed(&self, x: &GroupElement) -> GroupElement {
        assert!(self.group.contains(x), "element not in the presented subgroup");
        let mut acc = self.ambient.zero();
        for (t, img) in self.gen_images.iter().enumerate() {
            let coeff = if t < x.coords().len() { x.coords()[t] } else { 0 };
            acc = self.ambient.add(&acc, &self.ambient.scale(coeff as i64, img));
        }
        acc
    }

    /// Presentation coordinates of the j-th original seed.
    pub fn seed_coords(&self, j: usize) -> &GroupElement {
        &self.seed_coords[j]
    }
}

/// Endomorphism of a group, stored as the matrix whose column j holds the
/// coordinates of the image of the j-th standard generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupEndomorphism {
    orders: Vec<u64>,
    m: Vec<Vec<u64>>,
}

impl GroupEndomorphism {
    /// Normalizes entries and rejects assignments where some generator's order
    /// does not annihilate its image (the map would not be well defined).
    pub fn new(group: &FiniteAbelianGroup, raw: Vec<Vec<i64>>) -> Result<Self, AbelianError> {
        let r = group.rank();
        if raw.len() != r || raw.iter().any(|row| row.len() != r) {
            return Err(AbelianError::RankMismatch { expected: r, got: raw.len() });
        }
        let m: Vec<Vec<u64>> = raw
            .iter()
            .zip(group.orders())
            .map(|(row, &n)| row.iter().map(|&x| x.rem_euclid(n as i64) as u64).collect())
            .collect();
        for j in 0..r {
            let nj = group.orders()[j];
            for i in 0..r {
                let ni = group.orders()[i];
                if (u128::from(nj) * u128::from(m[i][j])) % u128::from(ni) != 0 {
                    return Err(AbelianError::NotWellDefined { generator: j });
                }
            }
        }
        Ok(Self { orders: group.orders().to_vec(), m })
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        let r = group.rank();
        let m = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| if i == j && group.orders()[i] > 1 { 1 } else { 0 })
                    .collect()
            })
            .collect();
        Self { orders: group.orders().to_vec(), m }
    }

    pub fn matrix(&self) -> &Vec<Vec<u64>> {
        &self.m
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        let coords = self
            .m
            .iter()
            .zip(&self.orders)
            .map(|(row, &n)| {
                let acc: u128 = row
                    .iter()
                    .zip(a.coords())
                    .map(|(&mij, &aj)| u128::from(mij) * u128::from(aj))
                    .sum();
                (acc % u128::from(n)) as u64
            })
            .collect();
        GroupElement { coords }
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.orders, other.orders);
        let r = self.orders.len();
        let mut m = vec![vec![0u64; r]; r];
        for i in 0..r {
            let n = u128::from(self.orders[i]);
            for j in 0..r {
                let mut acc: u128 = 0;
                for k in 0..r {
                    acc += u128::from(self.m[i][k]) * u128::from(other.m[k][j]);
                }
                m[i][j] = (acc % n) as u64;
            }
        }
        Self { orders: self.orders.clone(), m }
    }

    /// Surjective (hence bijective) iff the generator images span the group.
    pub fn is_bijective(&self, group: &FiniteAbelianGroup) -> bool {
        let images: Vec<GroupElement> = (0..group.rank())
            .map(|j| {
                let raw: Vec<i64> = (0..group.rank()).map(|i| self.m[i][j] as i64).collect();
                group.element(&raw)
            })
            .collect();
        group.subgroup_generated(&images).len() as u128 == group.size()
    }
}

/// Homomorphism between two (possibly different) groups, columns = generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHomomorphism {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    m: Vec<Vec<u64>>,
}

impl GroupHomomorphism {
    pub fn new(
        source: &FiniteAbelianGroup,
        target: &FiniteAbelianGroup,
        images: &[GroupElement],
    ) -> Result<Self, AbelianError> {
        if images.len() != source.rank() {
            return Err(AbelianError::RankMismatch { expected: source.rank(), got: images.len() });
        }
        for (j, img) in images.iter().enumerate() {
            assert!(target.contains(img), "image outside the target group");
            let nj = source.orders()[j];
            if !target.scale(nj as i64, img).is_zero() {
                return Err(AbelianError::NotWellDefined { generator: j });
            }
        }
        let m = (0..target.rank())
            .map(|i| images.iter().map(|img| img.coords()[i]).collect())
            .collect();
        Ok(Self { source: source.clone(), target: target.clone(), m })
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn generator_image(&self, j: usize) -> GroupElement {
        let raw: Vec<i64> = (0..self.target.rank()).map(|i| self.m[i][j] as i64).collect();
        self.target.element(&raw)
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        assert!(self.source.contains(a), "element not in the source group");
        let coords = (0..self.target.rank())
            .map(|i| {
                let n = u128::from(self.target.orders()[i]);
                let acc: u128 = self.m[i]
                    .iter()
                    .zip(a.coords())
                    .map(|(&mij, &aj)| u128::from(mij) * u128::from(aj))
                    .sum();
                (acc % n) as u64
            })
            .collect();
        GroupElement { coords }
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size() != self.target.size() {
            return false;
        }
        let images: Vec<GroupElement> =
            (0..self.source.rank()).map(|j| self.generator_image(j)).collect();
        self.target.subgroup_generated(&images).len() as u128 == self.target.size()
    }
}
