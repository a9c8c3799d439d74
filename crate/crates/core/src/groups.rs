//! Metacyclic groups Z/d ⋊_t Z/s, their distinguished subgroups, and
//! multiplication tables for arbitrary finite subgroups.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::znz::arith::{gcd, mult_order, pow_mod};

/// The family a group instance is built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cyclic,
    Dihedral,
    Semidirect,
    Arason,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::Semidirect => "semidirect",
            Family::Arason => "arason",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cyclic" => Ok(Family::Cyclic),
            "dihedral" | "dihedral-classic" => Ok(Family::Dihedral),
            "semidirect" => Ok(Family::Semidirect),
            "arason" => Ok(Family::Arason),
            other => Err(GroupError::InvalidParameters(format!(
                "unknown family '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(
        "invalid order: t = {t} has multiplicative order {actual} modulo d = {d}, expected s = {s}"
    )]
    InvalidOrder { d: u64, s: u64, t: u64, actual: u64 },
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("family {family} requires odd d, got d = {d}")]
    EvenD { d: u64, family: Family },
    #[error("d = {d} exceeds the configured maximum {max}")]
    TooLarge { d: u64, max: u64 },
}

/// G = ⟨τ, σ | τ^d = σ^s = 1, στσ⁻¹ = τ^t⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MetacyclicGroup {
    d: u64,
    s: u64,
    t: u64,
    family: Family,
}

/// The element τ^i σ^j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub i: u64,
    pub j: u64,
}

impl GroupElement {
    pub fn new(i: u64, j: u64) -> Self {
        GroupElement { i, j }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{} s^{}", self.i, self.j)
    }
}

/// Infers the family from the parameters: s = 1 is cyclic, s = 2 with t ≡ −1 is
/// dihedral, everything else is treated as semidirect.
pub fn infer_family(d: u64, s: u64, t: u64) -> Family {
    if s == 1 {
        Family::Cyclic
    } else if s == 2 && t % d == d - 1 {
        Family::Dihedral
    } else {
        Family::Semidirect
    }
}

/// Validates the parameters and builds the group.
pub fn make_group(d: u64, s: u64, t: u64, family: Family) -> Result<MetacyclicGroup, GroupError> {
    if d < 2 {
        return Err(GroupError::InvalidParameters(format!(
            "d must be at least 2, got {d}"
        )));
    }
    if s < 1 {
        return Err(GroupError::InvalidParameters("s must be positive".into()));
    }
    if t < 1 || t >= d {
        return Err(GroupError::InvalidParameters(format!(
            "t must satisfy 1 <= t < d, got t = {t}"
        )));
    }
    if gcd(t, d) != 1 {
        return Err(GroupError::InvalidParameters(format!(
            "t = {t} is not a unit modulo d = {d}"
        )));
    }
    let actual = mult_order(t, d).expect("unit has an order");
    if actual != s {
        return Err(GroupError::InvalidOrder { d, s, t, actual });
    }
    match family {
        Family::Cyclic => {
            if s != 1 {
                return Err(GroupError::FamilyMismatch(format!(
                    "cyclic family requires s = 1, got s = {s}"
                )));
            }
        }
        Family::Arason => {
            if d != 2 || s != 1 {
                return Err(GroupError::FamilyMismatch(
                    "arason family is the group Z/2 (d = 2, s = 1)".into(),
                ));
            }
        }
        Family::Dihedral => {
            if d.is_multiple_of(2) {
                return Err(GroupError::EvenD { d, family });
            }
            if s != 2 || t != d - 1 {
                return Err(GroupError::FamilyMismatch(format!(
                    "dihedral family requires s = 2 and t = -1 mod d, got s = {s}, t = {t}"
                )));
            }
        }
        Family::Semidirect => {
            if d.is_multiple_of(2) {
                return Err(GroupError::EvenD { d, family });
            }
            if !s.is_multiple_of(2) {
                return Err(GroupError::FamilyMismatch(format!(
                    "semidirect family requires even s, got s = {s}"
                )));
            }
            if pow_mod(t, s / 2, d) != d - 1 {
                return Err(GroupError::FamilyMismatch(format!(
                    "semidirect family requires t^(s/2) = -1 mod d, got {t}^{} = {} mod {d}",
                    s / 2,
                    pow_mod(t, s / 2, d)
                )));
            }
        }
    }
    Ok(MetacyclicGroup { d, s, t, family })
}

impl MetacyclicGroup {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        (self.d * self.s) as usize
    }

    /// θ_j = t^j mod d for any integer j (j is read modulo s).
    pub fn theta(&self, j: i64) -> u64 {
        let e = j.rem_euclid(self.s as i64) as u64;
        pow_mod(self.t, e, self.d)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(0, 0)
    }

    pub fn tau(&self) -> GroupElement {
        GroupElement::new(1 % self.d, 0)
    }

    pub fn sigma(&self) -> GroupElement {
        GroupElement::new(0, 1 % self.s)
    }

    pub fn tau_pow(&self, k: i64) -> GroupElement {
        GroupElement::new(k.rem_euclid(self.d as i64) as u64, 0)
    }

    pub fn sigma_pow(&self, k: i64) -> GroupElement {
        GroupElement::new(0, k.rem_euclid(self.s as i64) as u64)
    }

    /// (τ^i σ^j)(τ^k σ^l) = τ^(i + θ_j k) σ^(j + l).
    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let i = (g.i + self.theta(g.j as i64) * h.i) % self.d;
        let j = (g.j + h.j) % self.s;
        GroupElement::new(i, j)
    }

    pub fn inv(&self, g: GroupElement) -> GroupElement {
        let j = (self.s - g.j) % self.s;
        let i = (self.d - (self.theta(j as i64) * g.i) % self.d) % self.d;
        GroupElement::new(i, j)
    }

    pub fn pow(&self, g: GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut out = self.identity();
        for _ in 0..k.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        g.i < self.d && g.j < self.s
    }

    /// Canonical index, σ-exponent major.
    pub fn index(&self, g: GroupElement) -> usize {
        (g.j * self.d + g.i) as usize
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        let idx = idx as u64;
        GroupElement::new(idx % self.d, idx / self.d)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|k| self.element(k)).collect()
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        let mut gens = vec![self.tau()];
        if self.s > 1 {
            gens.push(self.sigma());
        }
        gens
    }

    pub fn subgroup(&self, name: SubgroupName) -> Result<Subgroup, GroupError> {
        let gens = match name {
            SubgroupName::J => vec![self.tau()],
            SubgroupName::H => vec![self.sigma()],
            SubgroupName::JPrime => {
                if !self.s.is_multiple_of(2) {
                    return Err(GroupError::FamilyMismatch("J' requires even s".into()));
                }
                vec![self.tau(), self.sigma_pow((self.s / 2) as i64)]
            }
            SubgroupName::HPrime => {
                if self.s != 2 {
                    return Err(GroupError::FamilyMismatch(
                        "H' is defined for s = 2 only".into(),
                    ));
                }
                vec![self.mul(self.sigma(), self.tau())]
            }
            SubgroupName::Trivial => vec![],
            SubgroupName::Full => self.generators(),
        };
        Ok(Subgroup {
            name,
            elements: self.closure(&gens),
        })
    }

    /// Subgroup generated by `gens`, sorted in canonical order.
    pub fn closure(&self, gens: &[GroupElement]) -> Vec<GroupElement> {
        let mut set = BTreeSet::new();
        let mut frontier = vec![self.identity()];
        set.insert(self.index(self.identity()));
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(self.index(y)) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().map(|k| self.element(k)).collect()
    }

    pub fn descriptor(&self) -> String {
        format!("metacyclic:{},{},{}", self.d, self.s, self.t)
    }
}

impl fmt::Display for MetacyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.descriptor(), self.family)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubgroupName {
    J,
    H,
    JPrime,
    HPrime,
    Trivial,
    Full,
}

impl fmt::Display for SubgroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubgroupName::J => "J",
            SubgroupName::H => "H",
            SubgroupName::JPrime => "Jprime",
            SubgroupName::HPrime => "Hprime",
            SubgroupName::Trivial => "trivial",
            SubgroupName::Full => "full",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub name: SubgroupName,
    pub elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.elements
            .binary_search_by_key(&(g.j, g.i), |e| (e.j, e.i))
            .is_ok()
    }
}

/// Explicit multiplication table of a finite group; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    labels: Vec<GroupElement>,
    /// Index in the ambient metacyclic group of each element.
    embedding: Vec<usize>,
}

impl GroupTable {
    pub fn of_group(g: &MetacyclicGroup) -> Self {
        Self::of_elements(g, &g.elements())
    }

    pub fn of_subgroup(g: &MetacyclicGroup, s: &Subgroup) -> Self {
        Self::of_elements(g, &s.elements)
    }

    /// Table of the subgroup whose elements are listed (must be closed, identity included).
    pub fn of_elements(g: &MetacyclicGroup, elements: &[GroupElement]) -> Self {
        let mut labels = elements.to_vec();
        labels.sort_by_key(|e| g.index(*e));
        assert_eq!(
            labels[0],
            g.identity(),
            "subgroup must contain the identity"
        );
        let n = labels.len();
        let embedding: Vec<usize> = labels.iter().map(|e| g.index(*e)).collect();
        let mut local = vec![usize::MAX; g.order()];
        for (k, &e) in embedding.iter().enumerate() {
            local[e] = k;
        }
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = g.index(g.mul(labels[a], labels[b]));
                assert!(
                    local[p] != usize::MAX,
                    "element list is not closed under multiplication"
                );
                mul[a * n + b] = local[p];
            }
        }
        let inv: Vec<usize> = labels.iter().map(|&e| local[g.index(g.inv(e))]).collect();
        let mut generators = Vec::new();
        let mut generated: BTreeSet<usize> = [0].into_iter().collect();
        for k in 1..n {
            if generated.contains(&k) {
                continue;
            }
            generators.push(k);
            generated = closure_indices(&mul, n, &generators);
        }
        GroupTable {
            order: n,
            mul,
            inv,
            generators,
            labels,
            embedding,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, a: usize) -> GroupElement {
        self.labels[a]
    }

    pub fn labels(&self) -> &[GroupElement] {
        &self.labels
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    /// Local index of an ambient element, if it belongs to this table.
    pub fn local_index(&self, ambient: usize) -> Option<usize> {
        self.embedding.binary_search(&ambient).ok()
    }
}

fn closure_indices(mul: &[usize], n: usize, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = [0].into_iter().collect();
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mul[x * n + g];
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let s3 = make_group(3, 2, 2, Family::Dihedral).unwrap();
        assert_eq!(s3.theta(1), 2);
        let st = s3.mul(s3.sigma(), s3.tau());
        assert_eq!(s3.mul(st, st), s3.identity());
        let g = make_group(5, 4, 2, Family::Semidirect).unwrap();
        assert_eq!(g.order(), 20);
        assert_eq!(
            g.mul(GroupElement::new(0, 1), GroupElement::new(1, 0)),
            GroupElement::new(2, 1)
        );
        assert_eq!(
            (0..4).map(|j| g.theta(j)).collect::<Vec<_>>(),
            vec![1, 2, 4, 3]
        );
        let big = make_group(13, 4, 5, Family::Semidirect).unwrap();
        assert_eq!(big.theta(2), 12);
        assert!(matches!(
            make_group(7, 2, 2, Family::Dihedral),
            Err(GroupError::InvalidOrder { .. })
        ));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            make_group(5, 4, 2, Family::Cyclic),
            Err(GroupError::FamilyMismatch(_))
        ));
        assert!(matches!(
            make_group(4, 2, 3, Family::Dihedral),
            Err(GroupError::EvenD { .. })
        ));
        assert!(matches!(
            make_group(5, 4, 3, Family::Dihedral),
            Err(GroupError::FamilyMismatch(_))
        ));
        assert!(matches!(
            make_group(6, 1, 2, Family::Cyclic),
            Err(GroupError::InvalidParameters(_))
        ));
        assert!(matches!(
            make_group(1, 1, 1, Family::Cyclic),
            Err(GroupError::InvalidParameters(_))
        ));
        assert!(make_group(2, 1, 1, Family::Arason).is_ok());
        assert!(make_group(3, 1, 1, Family::Arason).is_err());
        // 7 ≡ -1 mod 8 but 8 is even.
        assert!(matches!(
            make_group(8, 2, 7, Family::Semidirect),
            Err(GroupError::EvenD { .. })
        ));
    }

    #[test]
    fn group_axioms_exhaustive() {
        for (d, s, t, f) in [
            (3, 2, 2, Family::Dihedral),
            (5, 4, 2, Family::Semidirect),
            (7, 3, 2, Family::Cyclic),
        ] {
            let g = match make_group(d, s, t, f) {
                Ok(g) => g,
                Err(_) => MetacyclicGroup { d, s, t, family: f },
            };
            let els = g.elements();
            for &a in &els {
                assert_eq!(g.mul(a, g.inv(a)), g.identity());
                assert_eq!(g.mul(g.identity(), a), a);
                for &b in &els {
                    for &c in &els {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_orders() {
        let g = make_group(5, 4, 2, Family::Semidirect).unwrap();
        assert_eq!(g.subgroup(SubgroupName::J).unwrap().order(), 5);
        assert_eq!(g.subgroup(SubgroupName::H).unwrap().order(), 4);
        assert_eq!(g.subgroup(SubgroupName::JPrime).unwrap().order(), 10);
        assert_eq!(g.subgroup(SubgroupName::Trivial).unwrap().order(), 1);
        assert_eq!(g.subgroup(SubgroupName::Full).unwrap().order(), 20);
        assert!(g.subgroup(SubgroupName::HPrime).is_err());
        let s3 = make_group(3, 2, 2, Family::Dihedral).unwrap();
        assert_eq!(s3.subgroup(SubgroupName::HPrime).unwrap().order(), 2);
    }

    #[test]
    fn tables_match_group() {
        let g = make_group(5, 4, 2, Family::Semidirect).unwrap();
        let t = GroupTable::of_group(&g);
        for a in 0..t.order() {
            for b in 0..t.order() {
                assert_eq!(t.label(t.mul(a, b)), g.mul(g.element(a), g.element(b)));
            }
            assert_eq!(t.mul(a, t.inv(a)), 0);
        }
        let jp = g.subgroup(SubgroupName::JPrime).unwrap();
        let tj = GroupTable::of_subgroup(&g, &jp);
        assert_eq!(tj.order(), 10);
        assert_eq!(closure_indices(&tj.mul, 10, tj.generators()).len(), 10);
    }
}
