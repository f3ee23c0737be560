//! Catalog of the classified irreducible finite root systems.
//!
//! Seven families cover the classification. I(n₁,…,n_k) lives on
//! (Z_{n₁}×…×Z_{n_k})² with every nonzero element a root (type sl);
//! I′(k) sits on Z₂^{2k+1} with a two-element radical and reduces to
//! I(2,…,2). II(k) and IV′(k) live on the even-weight subgroup of Z₂ⁿ
//! (n = 2k+1 odd, n = 2k even) with the weight-two vectors as roots
//! (types so(2k+1) and so(2k); the even case is not reduced), and IV(k)
//! is the reduction of IV′(k). III(k) and V(k) live on Z₂^{2k} as the
//! level sets {f = 1} and {g = 1} of the two quadratic forms polarizing
//! the standard symplectic pairing (types sp(2^k) and so(2^k)). Each
//! entry carries the verified root system, a cocycle fixing the bracket,
//! a generating certificate, and closed-form expected invariants used by
//! the verification suite.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{FiniteAbelianGroup, GroupElement, SubgroupPresentation};
use crate::rootsystem::RootSystem;
use crate::symplectic::{Bicharacter, Cocycle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("malformed type tag `{0}`; expected forms like I:2,4 or III:2")]
    MalformedTag(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

/// Name of one catalog entry, e.g. `I:2,4` or `IVprime:3`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TypeTag {
    I(Vec<u64>),
    IPrime(u64),
    II(u64),
    III(u64),
    IV(u64),
    IVPrime(u64),
    V(u64),
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::I(ns) => {
                let parts: Vec<String> = ns.iter().map(u64::to_string).collect();
                write!(f, "I:{}", parts.join(","))
            }
            TypeTag::IPrime(k) => write!(f, "Iprime:{k}"),
            TypeTag::II(k) => write!(f, "II:{k}"),
            TypeTag::III(k) => write!(f, "III:{k}"),
            TypeTag::IV(k) => write!(f, "IV:{k}"),
            TypeTag::IVPrime(k) => write!(f, "IVprime:{k}"),
            TypeTag::V(k) => write!(f, "V:{k}"),
        }
    }
}

impl FromStr for TypeTag {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (family, params) =
            s.split_once(':').ok_or_else(|| CatalogError::MalformedTag(s.to_string()))?;
        let single = || -> Result<u64, CatalogError> {
            params.parse().map_err(|_| CatalogError::MalformedTag(s.to_string()))
        };
        match family {
            "I" => {
                let ns = params
                    .split(',')
                    .map(|p| p.parse::<u64>())
                    .collect::<Result<Vec<u64>, _>>()
                    .map_err(|_| CatalogError::MalformedTag(s.to_string()))?;
                Ok(TypeTag::I(ns))
            }
            "Iprime" => Ok(TypeTag::IPrime(single()?)),
            "II" => Ok(TypeTag::II(single()?)),
            "III" => Ok(TypeTag::III(single()?)),
            "IV" => Ok(TypeTag::IV(single()?)),
            "IVprime" => Ok(TypeTag::IVPrime(single()?)),
            "V" => Ok(TypeTag::V(single()?)),
            other => Err(CatalogError::UnknownFamily(other.to_string())),
        }
    }
}

impl TypeTag {
    /// Checks the parameter constraints of the family.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |msg: String| Err(CatalogError::BadParameters(msg));
        match self {
            TypeTag::I(ns) => {
                if ns.is_empty() {
                    return bad("family I needs at least one modulus".into());
                }
                for &n in ns {
                    if n < 2 {
                        return bad(format!("modulus {n} must be at least 2"));
                    }
                    if n > 64 {
                        return bad(format!("modulus {n} exceeds the supported bound 64"));
                    }
                }
                for w in ns.windows(2) {
                    if w[1] % w[0] != 0 {
                        return bad(format!("{} does not divide {}", w[0], w[1]));
                    }
                }
                Ok(())
            }
            TypeTag::IPrime(k) if *k < 2 => bad("family Iprime needs k >= 2".into()),
            TypeTag::II(k) | TypeTag::III(k) if *k < 1 => {
                bad("families II and III need k >= 1".into())
            }
            TypeTag::IV(k) | TypeTag::IVPrime(k) | TypeTag::V(k) if *k < 3 => {
                bad("families IV, IVprime and V need k >= 3".into())
            }
            _ => Ok(()),
        }
    }

    /// Closed-form invariants of the entry, computable without building it.
    pub fn expected(&self) -> ExpectedProfile {
        match self {
            TypeTag::I(ns) => {
                let product: u64 = ns.iter().product();
                let mut factors = Vec::new();
                for &n in ns {
                    factors.push(n);
                    factors.push(n);
                }
                factors.sort_unstable();
                let (weyl_label, weyl_order) = if ns.len() == 1 {
                    (Some(format!("SL(2, Z_{})", ns[0])), Some(sl2_order(ns[0])))
                } else if ns.iter().all(|&n| n == 2) {
                    let k = ns.len() as u64;
                    (Some(format!("Sp({}, F_2)", 2 * k)), Some(sp_order(k)))
                } else {
                    // Mixed moduli: no closed form is recorded.
                    (None, None)
                };
                ExpectedProfile {
                    invariant_factors: factors,
                    root_count: (product * product - 1) as usize,
                    radical_size: 1,
                    lie_type: format!("sl({product})"),
                    weyl_label,
                    weyl_order,
                }
            }
            TypeTag::IPrime(k) => ExpectedProfile {
                invariant_factors: vec![2; (2 * k + 1) as usize],
                root_count: (1usize << (2 * k)) - 1,
                radical_size: 2,
                lie_type: format!("sl({})", 1u64 << k),
                weyl_label: Some(format!("Sp({}, F_2)", 2 * k)),
                weyl_order: Some(sp_order(*k)),
            },
            TypeTag::II(k) => ExpectedProfile {
                invariant_factors: vec![2; (2 * k) as usize],
                root_count: (k * (2 * k + 1)) as usize,
                radical_size: 1,
                lie_type: format!("so({})", 2 * k + 1),
                weyl_label: Some(format!("S_{}", 2 * k + 1)),
                weyl_order: Some(factorial(2 * k + 1)),
            },
            TypeTag::III(k) => ExpectedProfile {
                invariant_factors: vec![2; (2 * k) as usize],
                root_count: (1usize << (2 * k - 1)) + (1usize << (k - 1)),
                radical_size: 1,
                lie_type: format!("sp({})", 1u64 << k),
                weyl_label: Some(format!("O-({}, F_2)", 2 * k)),
                weyl_order: Some(orthogonal_order(*k, false)),
            },
            TypeTag::IV(k) => ExpectedProfile {
                invariant_factors: vec![2; (2 * k - 2) as usize],
                root_count: (k * (2 * k - 1)) as usize,
                radical_size: 1,
                lie_type: format!("so({})", 2 * k),
                weyl_label: Some(format!("S_{}", 2 * k)),
                weyl_order: Some(factorial(2 * k)),
            },
            TypeTag::IVPrime(k) => ExpectedProfile {
                invariant_factors: vec![2; (2 * k - 1) as usize],
                root_count: (k * (2 * k - 1)) as usize,
                radical_size: 2,
                lie_type: format!("so({})", 2 * k),
                weyl_label: Some(format!("S_{}", 2 * k)),
                weyl_order: Some(factorial(2 * k)),
            },
            TypeTag::V(k) => ExpectedProfile {
                invariant_factors: vec![2; (2 * k) as usize],
                root_count: (1usize << (2 * k - 1)) - (1usize << (k - 1)),
                radical_size: 1,
                lie_type: format!("so({})", 1u64 << k),
                weyl_label: Some(format!("O+({}, F_2)", 2 * k)),
                weyl_order: Some(orthogonal_order(*k, true)),
            },
        }
    }
}

/// Invariants every catalog entry is tested against. The graded algebra's
/// dimension equals `root_count`; `radical_size` is 1 exactly for the
/// reduced families; the Weyl fields are populated together whenever a
/// closed form is known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedProfile {
    pub invariant_factors: Vec<u64>,
    pub root_count: usize,
    pub radical_size: usize,
    pub lie_type: String,
    pub weyl_label: Option<String>,
    pub weyl_order: Option<u128>,
}

/// A constructed catalog entry: the root system, the cocycle fixing its
/// bracket, an optional ambient presentation (for the even-weight
/// families) and a short list of roots that generates the group.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    tag: TypeTag,
    system: RootSystem,
    cocycle: Cocycle,
    ambient: Option<SubgroupPresentation>,
    generating_roots: Vec<GroupElement>,
}

impl CatalogEntry {
    pub fn tag(&self) -> &TypeTag {
        &self.tag
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    /// For II(k) and IV′(k): the presentation of the even-weight subgroup
    /// inside Z₂ⁿ, used by the matrix models.
    pub fn ambient(&self) -> Option<&SubgroupPresentation> {
        self.ambient.as_ref()
    }

    /// Roots that generate the whole group (a certificate for the
    /// generation axiom).
    pub fn generating_roots(&self) -> &[GroupElement] {
        &self.generating_roots
    }

    pub fn expected(&self) -> ExpectedProfile {
        self.tag.expected()
    }
}

/// Builds the named entry, verifying the root system axioms on the way.
pub fn make(tag: &TypeTag) -> Result<CatalogEntry, CatalogError> {
    tag.validate()?;
    let entry = match tag {
        TypeTag::I(ns) => make_type_i(ns),
        TypeTag::IPrime(k) => make_type_i_prime(*k),
        TypeTag::II(k) => make_even_weight(tag.clone(), 2 * k + 1),
        TypeTag::IVPrime(k) => make_even_weight(tag.clone(), 2 * k),
        TypeTag::IV(k) => make_type_iv(*k)?,
        TypeTag::III(k) => make_quadric(tag.clone(), *k, true),
        TypeTag::V(k) => make_quadric(tag.clone(), *k, false),
    };
    Ok(entry)
}

/// All tags whose algebra dimension (= root count) is at most `max_dim`,
/// in a fixed family-by-family order.
pub fn enumerate(max_dim: usize) -> Vec<TypeTag> {
    let mut out = Vec::new();
    // Family I: divisor chains n₁ | n₂ | … with (Π nᵢ)² − 1 ≤ max_dim.
    let mut bound = 1u64;
    while (bound + 1) * (bound + 1) <= (max_dim as u64) + 1 {
        bound += 1;
    }
    let mut chain = Vec::new();
    extend_chains(&mut chain, 1, bound, &mut out);
    let mut push_range = |lo: u64, make_tag: &dyn Fn(u64) -> TypeTag| {
        for k in lo.. {
            let tag = make_tag(k);
            if tag.expected().root_count > max_dim {
                break;
            }
            out.push(tag);
        }
    };
    push_range(2, &TypeTag::IPrime);
    push_range(1, &TypeTag::II);
    push_range(1, &TypeTag::III);
    push_range(3, &TypeTag::IV);
    push_range(3, &TypeTag::IVPrime);
    push_range(3, &TypeTag::V);
    out
}

fn extend_chains(chain: &mut Vec<u64>, product: u64, bound: u64, out: &mut Vec<TypeTag>) {
    // The first modulus is free; each later one must be a multiple of the
    // previous, keeping the divisor chain n₁ | n₂ | … intact.
    let (mut next, step) = match chain.last() {
        Some(&last) => (last, last),
        None => (2, 1),
    };
    while product * next <= bound {
        chain.push(next);
        out.push(TypeTag::I(chain.clone()));
        extend_chains(chain, product * next, bound, out);
        chain.pop();
        next += step;
    }
}

/// Pairs of distinct tags naming isomorphic root systems.
pub fn coincidences() -> Vec<(TypeTag, TypeTag)> {
    vec![
        (TypeTag::II(1), TypeTag::I(vec![2])),
        (TypeTag::III(1), TypeTag::I(vec![2])),
        (TypeTag::III(2), TypeTag::II(2)),
        (TypeTag::IV(3), TypeTag::I(vec![2, 2])),
    ]
}

/// The pair sharing every cheap invariant (group, root count, radical)
/// that the classical tables nevertheless record as non-isomorphic, so
/// only the full search can settle it. The search in fact finds an
/// isomorphism: both root sets are the non-singular points of plus-type
/// quadratic refinements of their pairings, hence equivalent under the
/// symplectic group. The recorded expectation is kept as the tables
/// state it; callers comparing against it will see the contradiction.
pub fn distinguished_pair() -> (TypeTag, TypeTag) {
    (TypeTag::IV(4), TypeTag::V(3))
}

// ---------------------------------------------------------------------
// Family constructions.

fn make_type_i(ns: &[u64]) -> CatalogEntry {
    let k = ns.len();
    let n_max = *ns.last().expect("validated nonempty");
    let mut orders = Vec::with_capacity(2 * k);
    for &n in ns {
        orders.push(n);
        orders.push(n);
    }
    let group = FiniteAbelianGroup::new(orders).expect("orders are at least 2");
    let mut b = vec![vec![0u64; 2 * k]; 2 * k];
    for (t, &n) in ns.iter().enumerate() {
        // Each factor contributes a nondegenerate plane of order n; the
        // pairing exponent lives in Z_{n_max}.
        b[2 * t][2 * t + 1] = n_max - n_max / n;
        b[2 * t + 1][2 * t] = n_max / n;
    }
    let beta = Bicharacter::new(group.clone(), b).expect("plane pairing is alternating");
    let cocycle = beta.split();
    let roots: BTreeSet<GroupElement> = group.elements().filter(|a| !a.is_zero()).collect();
    let system = RootSystem::checked(beta, roots).expect("all nonzero elements form a system");
    let generating_roots = (0..2 * k).map(|i| group.basis_element(i)).collect();
    CatalogEntry { tag: TypeTag::I(ns.to_vec()), system, cocycle, ambient: None, generating_roots }
}

fn make_type_i_prime(k: u64) -> CatalogEntry {
    let k = k as usize;
    let rank = 2 * k + 1;
    let group = FiniteAbelianGroup::new(vec![2; rank]).expect("nonempty orders");
    let mut b = vec![vec![0u64; rank]; rank];
    for t in 0..k {
        b[2 * t][2 * t + 1] = 1;
        b[2 * t + 1][2 * t] = 1;
    }
    let beta = Bicharacter::new(group.clone(), b).expect("padded plane pairing");
    let cocycle = beta.split();
    // h(a) = Σ a_{2t}a_{2t+1} + a_{2k}; roots are the nonradical solutions
    // of h = 1, the radical being {0, e_{2k}}.
    let h = |a: &GroupElement| -> u64 {
        let c = a.coords();
        ((0..k).map(|t| c[2 * t] * c[2 * t + 1]).sum::<u64>() + c[2 * k]) % 2
    };
    let spike = group.basis_element(2 * k);
    let roots: BTreeSet<GroupElement> = group
        .elements()
        .filter(|a| !a.is_zero() && *a != spike && h(a) == 1)
        .collect();
    let system = RootSystem::checked(beta, roots).expect("quadric avoids the radical");
    let mut generating_roots = Vec::new();
    for t in 0..k {
        generating_roots.push(two_sum(&group, 2 * t, 2 * t + 1));
        generating_roots.push(two_sum(&group, 2 * t + 1, 2 * k));
    }
    // A single root touching five coordinates closes the span over the
    // pair sums: it recovers e_{2k} and from there every basis vector.
    let wide: Vec<i64> =
        (0..rank).map(|i| if i >= 2 * k - 4 { 1 } else { 0 }).collect();
    generating_roots.push(group.element(&wide));
    CatalogEntry {
        tag: TypeTag::IPrime(k as u64),
        system,
        cocycle,
        ambient: None,
        generating_roots,
    }
}

/// II(k) for odd n = 2k+1 and IV′(k) for even n = 2k: the weight-two
/// vectors inside the even-weight subgroup of Z₂ⁿ.
fn make_even_weight(tag: TypeTag, n: u64) -> CatalogEntry {
    let n = n as usize;
    let ambient = FiniteAbelianGroup::new(vec![2; n]).expect("nonempty orders");
    let mut b = vec![vec![1u64; n]; n];
    for (i, row) in b.iter_mut().enumerate() {
        row[i] = 0;
    }
    let beta_ambient = Bicharacter::new(ambient.clone(), b).expect("hollow ones matrix");
    let mut c = vec![vec![0u64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        for entry in row.iter_mut().take(i) {
            *entry = 1;
        }
    }
    let xi_ambient = Cocycle::new(ambient.clone(), c).expect("strictly lower ones");
    let mut weight_two = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            weight_two.push(two_sum(&ambient, i, j));
        }
    }
    let sub = ambient.present_subgroup(&weight_two);
    let beta = beta_ambient.restrict(&sub);
    let cocycle = xi_ambient.restrict(&sub);
    // Presentation coordinates of each ambient root.
    let locate: BTreeMap<GroupElement, GroupElement> =
        sub.group().elements().map(|x| (sub.embed(&x), x)).collect();
    let roots: BTreeSet<GroupElement> =
        weight_two.iter().map(|v| locate[v].clone()).collect();
    let system = RootSystem::checked(beta, roots)
        .expect("weight-two vectors form a system on the even-weight subgroup");
    let generating_roots: Vec<GroupElement> =
        (0..n - 1).map(|i| locate[&two_sum(&ambient, i, i + 1)].clone()).collect();
    CatalogEntry { tag, system, cocycle, ambient: Some(sub), generating_roots }
}

fn make_type_iv(k: u64) -> Result<CatalogEntry, CatalogError> {
    let primed = make(&TypeTag::IVPrime(k))?;
    let kernel: BTreeSet<GroupElement> = primed.system.radical().into_iter().collect();
    let (system, quotient) =
        primed.system.reduce(&kernel).expect("radical is a valid kernel");
    let cocycle = system.beta().split();
    let generating_roots: BTreeSet<GroupElement> = primed
        .generating_roots
        .iter()
        .map(|a| quotient.project(a))
        .collect();
    Ok(CatalogEntry {
        tag: TypeTag::IV(k),
        system,
        cocycle,
        ambient: None,
        generating_roots: generating_roots.into_iter().collect(),
    })
}

/// III(k) (with the diagonal-twisted cocycle) and V(k) (with the plain
/// split cocycle): level sets of the two quadratic forms over Z₂^{2k}.
fn make_quadric(tag: TypeTag, k: u64, twisted: bool) -> CatalogEntry {
    let k = k as usize;
    let rank = 2 * k;
    let group = FiniteAbelianGroup::new(vec![2; rank]).expect("nonempty orders");
    let mut b = vec![vec![0u64; rank]; rank];
    for t in 0..k {
        b[2 * t][2 * t + 1] = 1;
        b[2 * t + 1][2 * t] = 1;
    }
    let beta = Bicharacter::new(group.clone(), b).expect("hyperbolic planes");
    let mut c = vec![vec![0u64; rank]; rank];
    for t in 0..k {
        c[2 * t + 1][2 * t] = 1;
    }
    if twisted {
        // The twist moves the quadratic form ξ(a,a) from Σ a_{2t}a_{2t+1}
        // to a₀ + a₁ + Σ a_{2t}a_{2t+1} without changing the pairing.
        c[0][0] = 1;
        c[1][1] = 1;
    }
    let cocycle = Cocycle::new(group.clone(), c).expect("split with optional twist");
    let form = |a: &GroupElement| -> u64 {
        let co = a.coords();
        let plane: u64 = (0..k).map(|t| co[2 * t] * co[2 * t + 1]).sum();
        let linear = if twisted { co[0] + co[1] } else { 0 };
        (plane + linear) % 2
    };
    let roots: BTreeSet<GroupElement> = group.elements().filter(|a| form(a) == 1).collect();
    let system = RootSystem::checked(beta, roots).expect("quadric level set is a system");
    let mut generating_roots = Vec::new();
    if twisted {
        generating_roots.push(group.basis_element(0));
        for t in 0..k {
            generating_roots.push(two_sum(&group, 2 * t, 2 * t + 1));
        }
        for t in 0..k.saturating_sub(1) {
            generating_roots.push(three_sum(&group, 2 * t, 2 * t + 1, 2 * t + 2));
        }
    } else {
        for t in 0..k {
            generating_roots.push(two_sum(&group, 2 * t, 2 * t + 1));
            // The last triple wraps around to the first coordinate.
            generating_roots.push(three_sum(&group, 2 * t, 2 * t + 1, (2 * t + 2) % rank));
        }
    }
    CatalogEntry { tag, system, cocycle, ambient: None, generating_roots }
}

fn two_sum(group: &FiniteAbelianGroup, i: usize, j: usize) -> GroupElement {
    let mut coords = vec![0i64; group.rank()];
    coords[i] = 1;
    coords[j] = 1;
    group.element(&coords)
}

fn three_sum(group: &FiniteAbelianGroup, i: usize, j: usize, l: usize) -> GroupElement {
    let mut coords = vec![0i64; group.rank()];
    coords[i] = 1;
    coords[j] = 1;
    coords[l] = 1;
    group.element(&coords)
}

// ---------------------------------------------------------------------
// Closed-form group orders.

fn factorial(n: u64) -> u128 {
    (2..=u128::from(n)).product()
}

/// |SL(2, Z_n)| = n³ · Π_{p | n} (1 − p⁻²).
fn sl2_order(n: u64) -> u128 {
    let mut order = u128::from(n).pow(3);
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            order = order / u128::from(p * p) * u128::from(p * p - 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        order = order / u128::from(m * m) * u128::from(m * m - 1);
    }
    order
}

/// |Sp(2k, F₂)| = 2^{k²} · Π_{i=1..k} (4^i − 1).
fn sp_order(k: u64) -> u128 {
    let mut order = 1u128 << (k * k);
    for i in 1..=k {
        order *= (1u128 << (2 * i)) - 1;
    }
    order
}

/// |O^±(2k, F₂)| = 2 · 2^{k(k−1)} · (2^k ∓ 1) · Π_{i=1..k−1} (4^i − 1).
fn orthogonal_order(k: u64, plus: bool) -> u128 {
    let middle = if plus { (1u128 << k) - 1 } else { (1u128 << k) + 1 };
    let mut order = 2 * (1u128 << (k * (k - 1))) * middle;
    for i in 1..k {
        order *= (1u128 << (2 * i)) - 1;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip_through_text() {
        let tags = [
            "I:2", "I:2,4", "I:2,2,2", "Iprime:3", "II:4", "III:2", "IV:3", "IVprime:5", "V:3",
        ];
        for text in tags {
            let tag: TypeTag = text.parse().unwrap();
            assert_eq!(tag.to_string(), text);
        }
        assert!(matches!("X:2".parse::<TypeTag>(), Err(CatalogError::UnknownFamily(_))));
        assert!(matches!("I".parse::<TypeTag>(), Err(CatalogError::MalformedTag(_))));
        assert!(matches!("II:x".parse::<TypeTag>(), Err(CatalogError::MalformedTag(_))));
    }

    #[test]
    fn parameter_constraints_are_enforced() {
        let bad = [
            TypeTag::I(vec![]),
            TypeTag::I(vec![1]),
            TypeTag::I(vec![2, 3]),
            TypeTag::I(vec![128]),
            TypeTag::IPrime(1),
            TypeTag::II(0),
            TypeTag::IV(2),
            TypeTag::IVPrime(2),
            TypeTag::V(2),
        ];
        for tag in bad {
            assert!(matches!(make(&tag), Err(CatalogError::BadParameters(_))), "{tag}");
        }
        assert!(make(&TypeTag::I(vec![2, 4])).is_ok());
    }

    #[test]
    fn every_small_entry_matches_its_profile() {
        for tag in enumerate(63) {
            let entry = make(&tag).unwrap();
            let profile = entry.expected();
            let system = entry.system();
            assert_eq!(
                system.group().invariant_factors(),
                profile.invariant_factors,
                "{tag}"
            );
            assert_eq!(system.roots().len(), profile.root_count, "{tag}");
            assert_eq!(system.radical().len(), profile.radical_size, "{tag}");
            assert_eq!(system.is_reduced(), profile.radical_size == 1, "{tag}");
            assert!(system.is_irreducible(), "{tag}");
        }
    }

    #[test]
    fn enumeration_is_ordered_and_bounded() {
        let tags = enumerate(63);
        let expected: Vec<&str> = vec![
            "I:2", "I:2,2", "I:2,2,2", "I:2,4", "I:3", "I:4", "I:5", "I:6", "I:7", "I:8",
            "Iprime:2", "Iprime:3", "II:1", "II:2", "II:3", "II:4", "II:5", "III:1", "III:2",
            "III:3", "IV:3", "IV:4", "IV:5", "IVprime:3", "IVprime:4", "IVprime:5", "V:3",
        ];
        let shown: Vec<String> = tags.iter().map(TypeTag::to_string).collect();
        assert_eq!(shown, expected);
        // A tighter bound trims the large entries.
        let small: Vec<String> =
            enumerate(15).iter().map(TypeTag::to_string).collect();
        assert_eq!(
            small,
            ["I:2", "I:2,2", "I:3", "I:4", "Iprime:2", "II:1", "II:2", "III:1", "III:2", "IV:3", "IVprime:3"]
        );
    }

    #[test]
    fn generating_certificates_span_their_groups() {
        for tag in enumerate(63) {
            let entry = make(&tag).unwrap();
            let group = entry.system().group();
            for root in entry.generating_roots() {
                assert!(entry.system().roots().contains(root), "{tag}: {root:?}");
            }
            let span = group.subgroup_generated(entry.generating_roots());
            assert_eq!(span.len() as u128, group.size(), "{tag}");
        }
    }

    #[test]
    fn even_weight_entries_embed_as_weight_two_vectors() {
        for (tag, n) in [(TypeTag::II(2), 5), (TypeTag::IVPrime(3), 6)] {
            let entry = make(&tag).unwrap();
            let sub = entry.ambient().unwrap();
            assert_eq!(sub.ambient().rank(), n);
            for root in entry.system().roots() {
                let image = sub.embed(root);
                let weight: u64 = image.coords().iter().sum();
                assert_eq!(weight, 2, "{tag}");
            }
        }
        // The even case keeps the all-ones vector in its radical.
        let entry = make(&TypeTag::IVPrime(3)).unwrap();
        let sub = entry.ambient().unwrap();
        let radical = entry.system().radical();
        assert_eq!(radical.len(), 2);
        let heavy = radical.iter().find(|r| !r.is_zero()).unwrap();
        assert!(sub.embed(heavy).coords().iter().all(|&c| c == 1));
    }

    #[test]
    fn cocycles_polarize_back_to_the_pairings() {
        for tag in enumerate(63) {
            let entry = make(&tag).unwrap();
            assert_eq!(entry.cocycle().polarize(), *entry.system().beta(), "{tag}");
        }
    }

    #[test]
    fn quadric_supports_match_the_cocycle_diagonal() {
        // For the 2-torsion quadrics the roots are exactly the elements
        // with ξ(a,a) = −1.
        for tag in [TypeTag::III(2), TypeTag::V(3)] {
            let entry = make(&tag).unwrap();
            let group = entry.system().group().clone();
            for a in group.elements() {
                let diagonal = entry.cocycle().exponent_of(&a, &a);
                assert_eq!(entry.system().roots().contains(&a), diagonal == 1, "{tag}");
            }
        }
    }

    #[test]
    fn small_weyl_groups_match_their_closed_forms() {
        for tag in [
            TypeTag::I(vec![2]),
            TypeTag::I(vec![3]),
            TypeTag::II(1),
            TypeTag::III(1),
            TypeTag::II(2),
            TypeTag::IPrime(2),
        ] {
            let entry = make(&tag).unwrap();
            let expected = entry.expected().weyl_order.unwrap();
            let weyl = entry.system().weyl_group(100_000).unwrap();
            assert_eq!(weyl.order() as u128, expected, "{tag}");
        }
    }

    #[test]
    fn coincidence_partners_share_cheap_invariants() {
        for (left, right) in coincidences() {
            let a = left.expected();
            let b = right.expected();
            assert_eq!(a.invariant_factors, b.invariant_factors, "{left} vs {right}");
            assert_eq!(a.root_count, b.root_count, "{left} vs {right}");
            assert_eq!(a.radical_size, b.radical_size, "{left} vs {right}");
        }
        // The distinguished pair agrees on every closed-form invariant —
        // group, root count, Lie type so(8), even the Weyl order 40320 —
        // so separating it genuinely requires the isomorphism search.
        let (left, right) = distinguished_pair();
        let a = left.expected();
        let b = right.expected();
        assert_eq!(a.invariant_factors, b.invariant_factors);
        assert_eq!(a.root_count, b.root_count);
        assert_eq!(a.lie_type, b.lie_type);
        assert_eq!(a.weyl_order, b.weyl_order);
        assert_ne!(a.weyl_label, b.weyl_label);
    }
}
