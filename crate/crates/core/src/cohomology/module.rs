//! Finite modules (Z/m)^r with a left group action given by matrices.

use crate::group_ring::FreeModuleBasis;
use crate::groups::GroupTable;
use crate::sequences::FourTermSequence;
use crate::znz::MatrixZn;

/// (Z/m)^r with g·x = x·A(g) for row vectors x; `actions` is indexed by the
/// local element index of the group table the module lives over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnModule {
    pub name: String,
    pub modulus: u64,
    pub rank: usize,
    pub actions: Vec<MatrixZn>,
}

impl ZnModule {
    pub fn new(name: impl Into<String>, modulus: u64, rank: usize, actions: Vec<MatrixZn>) -> Self {
        for a in &actions {
            assert!(
                a.rows() == rank && a.cols() == rank && a.modulus() == modulus,
                "action matrix shape mismatch"
            );
        }
        ZnModule {
            name: name.into(),
            modulus,
            rank,
            actions,
        }
    }

    /// (Z/m)^r with trivial action of a group of the given order.
    pub fn trivial(name: impl Into<String>, modulus: u64, rank: usize, order: usize) -> Self {
        Self::new(
            name,
            modulus,
            rank,
            vec![MatrixZn::identity(rank, modulus); order],
        )
    }

    /// Module of a group-ring basis over its own modulus.
    pub fn from_basis(basis: &FreeModuleBasis) -> Self {
        let actions = basis
            .all_action_matrices()
            .expect("basis spans a G-stable submodule");
        Self::new(
            basis.name().to_string(),
            basis.modulus(),
            basis.rank(),
            actions,
        )
    }

    /// Module k (0-based: M₁..M₄) of a sequence over Z/d².
    pub fn from_sequence(seq: &FourTermSequence, k: usize) -> Self {
        Self::new(
            format!("M{}", k + 1),
            seq.modulus,
            seq.modules[k].rank(),
            seq.actions[k].clone(),
        )
    }

    /// Module k of a sequence reduced mod d.
    pub fn from_sequence_mod_d(seq: &FourTermSequence, k: usize) -> Self {
        Self::from_sequence(seq, k).reduce_mod(seq.d())
    }

    /// Δ = ker d₃ ⊂ M₃, spanned by the first basis vectors, over the given modulus.
    pub fn delta(seq: &FourTermSequence, modulus: u64) -> Self {
        let idx: Vec<usize> = (0..seq.delta_rank).collect();
        let actions = seq.actions[2]
            .iter()
            .map(|a| a.select_rows(&idx).select_cols(&idx).reduce_mod(modulus))
            .collect();
        Self::new("Delta", modulus, seq.delta_rank, actions)
    }

    /// The regular module (Z/m)[G] with basis the group elements.
    pub fn regular(table: &GroupTable, modulus: u64) -> Self {
        let n = table.order();
        let actions = (0..n)
            .map(|g| {
                let mut a = MatrixZn::zeros(n, n, modulus);
                for h in 0..n {
                    a.set(h, table.mul(g, h), 1);
                }
                a
            })
            .collect();
        Self::new("ring", modulus, n, actions)
    }

    pub fn order(&self) -> usize {
        self.actions.len()
    }

    pub fn action(&self, g: usize) -> &MatrixZn {
        &self.actions[g]
    }

    pub fn reduce_mod(&self, modulus: u64) -> Self {
        let actions = self.actions.iter().map(|a| a.reduce_mod(modulus)).collect();
        Self::new(self.name.clone(), modulus, self.rank, actions)
    }

    /// Restriction along the embedding of a subgroup table.
    pub fn restrict(&self, sub: &GroupTable) -> Self {
        let actions = sub
            .embedding()
            .iter()
            .map(|&e| self.actions[e].clone())
            .collect();
        Self::new(
            format!("res {}", self.name),
            self.modulus,
            self.rank,
            actions,
        )
    }

    pub fn direct_sum(&self, other: &ZnModule) -> Self {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.order(), other.order(), "group mismatch");
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Self::new(
            format!("{}+{}", self.name, other.name),
            self.modulus,
            self.rank + other.rank,
            actions,
        )
    }

    /// Checks that `map` (rows = self basis, cols = target basis) commutes with the action.
    pub fn is_equivariant_map(&self, target: &ZnModule, map: &MatrixZn) -> bool {
        self.actions
            .iter()
            .zip(&target.actions)
            .all(|(a, b)| a.mul(map) == map.mul(b))
    }
}
