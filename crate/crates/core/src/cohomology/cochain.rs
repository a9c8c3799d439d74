//! Inhomogeneous bar-resolution cochains G^n → (Z/m)^r.

use serde::{Deserialize, Serialize};

use crate::groups::{GroupElement, GroupTable};
use crate::znz::arith::{add_mod, mul_mod, reduce, sub_mod};
use crate::znz::MatrixZn;

use super::module::ZnModule;
use super::CohomologyError;

/// Dense table of values; the tuple (g₁,…,gₙ) has index Σ g_k·|G|^(n−k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub order: usize,
    pub rank: usize,
    pub modulus: u64,
    pub values: Vec<u64>,
}

impl Cochain {
    pub fn zero(degree: usize, order: usize, rank: usize, modulus: u64) -> Self {
        let len = order.pow(degree as u32) * rank;
        Cochain {
            degree,
            order,
            rank,
            modulus,
            values: vec![0; len],
        }
    }

    pub fn zero_for(degree: usize, table: &GroupTable, module: &ZnModule) -> Self {
        Self::zero(degree, table.order(), module.rank, module.modulus)
    }

    pub fn from_values(
        degree: usize,
        order: usize,
        rank: usize,
        modulus: u64,
        values: Vec<u64>,
    ) -> Self {
        assert_eq!(
            values.len(),
            order.pow(degree as u32) * rank,
            "cochain table size mismatch"
        );
        let values = values.into_iter().map(|v| v % modulus).collect();
        Cochain {
            degree,
            order,
            rank,
            modulus,
            values,
        }
    }

    /// Builds a cochain from a function of the tuple.
    pub fn from_fn<F>(degree: usize, order: usize, rank: usize, modulus: u64, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> Vec<u64>,
    {
        let mut c = Self::zero(degree, order, rank, modulus);
        let mut tuple = vec![0usize; degree];
        for idx in 0..c.num_tuples() {
            decode(idx, order, &mut tuple);
            let v = f(&tuple);
            assert_eq!(v.len(), rank, "value width mismatch");
            for (k, x) in v.into_iter().enumerate() {
                c.values[idx * rank + k] = x % modulus;
            }
        }
        c
    }

    pub fn num_tuples(&self) -> usize {
        self.order.pow(self.degree as u32)
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        encode(tuple, self.order)
    }

    pub fn tuple_of(&self, idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.degree];
        decode(idx, self.order, &mut t);
        t
    }

    pub fn value(&self, idx: usize) -> &[u64] {
        &self.values[idx * self.rank..(idx + 1) * self.rank]
    }

    pub fn value_at(&self, tuple: &[usize]) -> &[u64] {
        self.value(self.tuple_index(tuple))
    }

    pub fn set_value(&mut self, idx: usize, v: &[u64]) {
        for (k, &x) in v.iter().enumerate() {
            self.values[idx * self.rank + k] = x % self.modulus;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check_shape(&self, other: &Cochain) {
        assert!(
            self.degree == other.degree
                && self.order == other.order
                && self.rank == other.rank
                && self.modulus == other.modulus,
            "cochain shape mismatch"
        );
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.check_shape(other);
        let m = self.modulus;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| add_mod(a, b, m))
            .collect();
        Cochain {
            values,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.check_shape(other);
        let m = self.modulus;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| sub_mod(a, b, m))
            .collect();
        Cochain {
            values,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: i64) -> Cochain {
        let m = self.modulus;
        let c = reduce(c, m);
        let values = self.values.iter().map(|&a| mul_mod(a, c, m)).collect();
        Cochain {
            values,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(-1)
    }

    /// Applies a module map pointwise: value ↦ value·map.
    pub fn map_values(&self, map: &MatrixZn) -> Cochain {
        assert_eq!(map.rows(), self.rank, "map source rank mismatch");
        let mut out = Cochain::zero(self.degree, self.order, map.cols(), map.modulus());
        for idx in 0..self.num_tuples() {
            let v: Vec<u64> = self.value(idx).iter().map(|&x| x % map.modulus()).collect();
            let w = map.apply(&v);
            out.set_value(idx, &w);
        }
        out
    }

    /// Reinterprets the values modulo a different modulus (entries reduced).
    pub fn with_modulus(&self, modulus: u64) -> Cochain {
        Cochain::from_values(
            self.degree,
            self.order,
            self.rank,
            modulus,
            self.values.clone(),
        )
    }

    /// Divides every value by `q`, failing unless all values are multiples of q.
    pub fn divide(&self, q: u64, modulus: u64) -> Option<Cochain> {
        if self.values.iter().any(|&v| v % q != 0) {
            return None;
        }
        Some(Cochain::from_values(
            self.degree,
            self.order,
            self.rank,
            modulus,
            self.values.iter().map(|v| v / q).collect(),
        ))
    }

    /// Coordinates [lo, hi) of every value.
    pub fn project(&self, lo: usize, hi: usize) -> Cochain {
        let mut out = Cochain::zero(self.degree, self.order, hi - lo, self.modulus);
        for idx in 0..self.num_tuples() {
            out.set_value(idx, &self.value(idx)[lo..hi]);
        }
        out
    }

    pub fn to_json(&self, table: &GroupTable, module: &str) -> CochainJson {
        let entries = (0..self.num_tuples())
            .filter(|&idx| self.value(idx).iter().any(|&v| v != 0))
            .map(|idx| CochainEntry {
                tuple: self
                    .tuple_of(idx)
                    .into_iter()
                    .map(|g| table.label(g))
                    .map(|e| [e.i, e.j])
                    .collect(),
                value: self.value(idx).to_vec(),
            })
            .collect();
        CochainJson {
            degree: self.degree,
            module: module.to_string(),
            modulus: self.modulus,
            entries,
        }
    }

    pub fn from_json(
        json: &CochainJson,
        table: &GroupTable,
        rank: usize,
    ) -> Result<Cochain, CohomologyError> {
        let mut c = Cochain::zero(json.degree, table.order(), rank, json.modulus);
        let lookup = |e: [u64; 2]| {
            table
                .labels()
                .iter()
                .position(|l| *l == GroupElement::new(e[0], e[1]))
                .ok_or_else(|| {
                    CohomologyError::Input(format!(
                        "element ({}, {}) is not in the group",
                        e[0], e[1]
                    ))
                })
        };
        for entry in &json.entries {
            if entry.tuple.len() != json.degree || entry.value.len() != rank {
                return Err(CohomologyError::Input(
                    "entry shape does not match degree/rank".into(),
                ));
            }
            let tuple = entry
                .tuple
                .iter()
                .map(|&e| lookup(e))
                .collect::<Result<Vec<_>, _>>()?;
            let idx = c.tuple_index(&tuple);
            c.set_value(idx, &entry.value);
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainEntry {
    pub tuple: Vec<[u64; 2]>,
    pub value: Vec<u64>,
}

/// Serialized cochain; zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub degree: usize,
    pub module: String,
    pub modulus: u64,
    pub entries: Vec<CochainEntry>,
}

pub(crate) fn encode(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

pub(crate) fn decode(mut idx: usize, order: usize, out: &mut [usize]) {
    for k in (0..out.len()).rev() {
        out[k] = idx % order;
        idx /= order;
    }
}

/// Accumulates sign·(v·A) into acc.
pub(crate) fn add_action(acc: &mut [u64], v: &[u64], a: &MatrixZn, sign: u64, m: u64) {
    for (r, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let xs = mul_mod(x, sign, m);
        let row = a.row(r);
        for (c, &y) in row.iter().enumerate() {
            if y != 0 {
                acc[c] = add_mod(acc[c], mul_mod(xs, y, m), m);
            }
        }
    }
}

pub(crate) fn add_scaled(acc: &mut [u64], v: &[u64], sign: u64, m: u64) {
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = add_mod(*a, mul_mod(x, sign, m), m);
    }
}

/// δf(g₁,…,g_{n+1}) = g₁·f(g₂,…) + Σᵢ (−1)^i f(…,gᵢg_{i+1},…) + (−1)^{n+1} f(g₁,…,gₙ).
pub fn coboundary(table: &GroupTable, module: &ZnModule, c: &Cochain) -> Cochain {
    assert_eq!(c.order, table.order(), "group mismatch");
    assert_eq!(c.rank, module.rank, "module mismatch");
    let m = c.modulus;
    let n = c.degree;
    let order = table.order();
    let mut out = Cochain::zero(n + 1, order, c.rank, m);
    let mut tuple = vec![0usize; n + 1];
    let mut merged = vec![0usize; n];
    let minus = m - 1;
    let actions: Vec<MatrixZn> = module.actions.iter().map(|a| a.reduce_mod(m)).collect();
    let mut acc = vec![0u64; c.rank];
    for idx in 0..out.num_tuples() {
        decode(idx, order, &mut tuple);
        acc.iter_mut().for_each(|x| *x = 0);
        let tail = encode(&tuple[1..], order);
        add_action(&mut acc, c.value(tail), &actions[tuple[0]], 1, m);
        for i in 0..n {
            for (k, slot) in merged.iter_mut().enumerate() {
                *slot = if k < i {
                    tuple[k]
                } else if k == i {
                    table.mul(tuple[i], tuple[i + 1])
                } else {
                    tuple[k + 1]
                };
            }
            let sign = if i % 2 == 0 { minus } else { 1 };
            add_scaled(&mut acc, c.value(encode(&merged, order)), sign, m);
        }
        let sign = if (n + 1).is_multiple_of(2) { 1 } else { minus };
        add_scaled(&mut acc, c.value(encode(&tuple[..n], order)), sign, m);
        out.set_value(idx, &acc);
    }
    out
}

/// (χ ⌣ c)(g₁,…,g_{q+1}) = χ(g₁)·c(g₂,…,g_{q+1}) for a degree-1 scalar χ.
pub fn cup1(table: &GroupTable, chi: &Cochain, c: &Cochain) -> Result<Cochain, CohomologyError> {
    if chi.degree != 1 || chi.rank != 1 {
        return Err(CohomologyError::UnsupportedDegree(format!(
            "cup product is implemented for a scalar degree-1 left factor, got degree {} rank {}",
            chi.degree, chi.rank
        )));
    }
    let m = c.modulus;
    let order = table.order();
    let tail_len = c.num_tuples();
    let mut out = Cochain::zero(c.degree + 1, order, c.rank, m);
    for g in 0..order {
        let x = chi.values[g] % m;
        for t in 0..tail_len {
            let v: Vec<u64> = c.value(t).iter().map(|&y| mul_mod(x, y, m)).collect();
            out.set_value(g * tail_len + t, &v);
        }
    }
    Ok(out)
}
