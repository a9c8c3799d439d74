//! Solving δx = y for x ∈ Cᵏ(G, M) through a reduced set of unknowns.
//!
//! Values x(h, w) with h the identity or a generator are free parameters; every
//! other value is forced by the equation at (a, g, w) with h = a·g found by a
//! breadth-first search of the Cayley graph. The remaining equations are fed to
//! a streaming affine solver over Z/m.

use crate::groups::GroupTable;
use crate::znz::arith::{add_mod, mul_mod, reduce, sub_mod};
use crate::znz::{howell, howell_and_kernel, MatrixZn};

use super::cochain::{decode, encode, Cochain};
use super::module::ZnModule;
use super::{CohomologyError, DegreePolicy};

/// Affine expressions of every value of a degree-k cochain in the parameters.
#[derive(Clone, Debug)]
pub struct Parametrization {
    degree: usize,
    order: usize,
    rank: usize,
    modulus: u64,
    /// Identity followed by the generators.
    slots: Vec<usize>,
    nparams: usize,
    /// For every k-tuple, a (P+1)×r block; row P is the constant term.
    forms: Vec<u64>,
    inhomogeneous: Option<Cochain>,
}

fn sign_of(neg: bool, m: u64) -> u64 {
    if neg {
        m - 1
    } else {
        1
    }
}

impl Parametrization {
    /// Estimated (memory, work) of building and solving in degree k.
    pub fn cost(order: usize, rank: usize, ngens: usize, k: usize) -> (f64, f64) {
        let n = order as f64;
        let r = rank as f64;
        let p = if k == 0 {
            r
        } else {
            (1 + ngens) as f64 * n.powi(k as i32 - 1) * r
        };
        let memory = n.powi(k as i32) * (p + 1.0) * r;
        let work = p * p * n.powi(k as i32 + 1) * r + memory * r;
        (memory, work)
    }

    pub fn check_cost(
        table: &GroupTable,
        module: &ZnModule,
        k: usize,
        policy: &DegreePolicy,
    ) -> Result<(), CohomologyError> {
        let (mem, work) = Self::cost(table.order(), module.rank, table.generators().len(), k);
        if mem > policy.max_memory || work > policy.max_work {
            return Err(CohomologyError::DegreeTooLarge {
                degree: k,
                order: table.order(),
                detail: format!("estimated {mem:.2e} table entries and {work:.2e} operations exceed the configured budget"),
            });
        }
        Ok(())
    }

    /// Builds the parametrization for δx = y with x of degree k; y has degree k+1.
    pub fn new(table: &GroupTable, module: &ZnModule, k: usize, y: Option<&Cochain>) -> Self {
        let n = table.order();
        let r = module.rank;
        let m = module.modulus;
        if let Some(y) = y {
            assert_eq!(y.degree, k + 1, "inhomogeneous term has the wrong degree");
            assert_eq!(y.rank, r, "inhomogeneous term has the wrong rank");
        }
        let mut slots = vec![0usize];
        slots.extend(table.generators().iter().copied());
        let nw = n.pow(k.saturating_sub(1) as u32);
        let nparams = if k == 0 { r } else { slots.len() * nw * r };
        let block = (nparams + 1) * r;
        let ntuples = n.pow(k as u32);
        let mut forms = vec![0u64; ntuples * block];
        let mut this = Parametrization {
            degree: k,
            order: n,
            rank: r,
            modulus: m,
            slots,
            nparams,
            forms: Vec::new(),
            inhomogeneous: y.cloned(),
        };
        if k == 0 {
            for c in 0..r {
                forms[c * r + c] = 1;
            }
            this.forms = forms;
            return this;
        }

        let mut slot_of = vec![usize::MAX; n];
        for (s, &h) in this.slots.iter().enumerate() {
            slot_of[h] = s;
        }
        let mut def: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        visited[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            order.push(g);
            for &a in table.generators() {
                let h = table.mul(a, g);
                if !visited[h] {
                    visited[h] = true;
                    if slot_of[h] == usize::MAX {
                        def[h] = Some((a, g));
                    }
                    queue.push_back(h);
                }
            }
        }

        let actions: Vec<MatrixZn> = module.actions.iter().map(|a| a.reduce_mod(m)).collect();
        let mut tuple = vec![0usize; k + 1];
        let mut w = vec![0usize; k - 1];
        for wi in 0..nw {
            decode(wi, n, &mut w);
            for (s, &h) in this.slots.iter().enumerate() {
                let t = h * nw + wi;
                for c in 0..r {
                    forms[t * block + this.param_index(s, wi, c) * r + c] = 1;
                }
            }
            for &h in &order {
                let Some((a, g)) = def[h] else { continue };
                let t_h = h * nw + wi;
                let t_g = g * nw + wi;
                let mut out = vec![0u64; block];
                {
                    let src = &forms[t_g * block..(t_g + 1) * block];
                    let am = &actions[a];
                    for row in 0..=nparams {
                        let v = &src[row * r..(row + 1) * r];
                        if v.iter().all(|&x| x == 0) {
                            continue;
                        }
                        let dst = &mut out[row * r..(row + 1) * r];
                        for (i, &x) in v.iter().enumerate() {
                            if x == 0 {
                                continue;
                            }
                            for (c, &aij) in am.row(i).iter().enumerate() {
                                if aij != 0 {
                                    dst[c] = add_mod(dst[c], mul_mod(x, aij, m), m);
                                }
                            }
                        }
                    }
                }
                tuple[0] = a;
                tuple[1] = g;
                tuple[2..].copy_from_slice(&w);
                let mut merged = vec![0usize; k];
                for i in 1..k {
                    for (q, slot) in merged.iter_mut().enumerate() {
                        *slot = if q < i {
                            tuple[q]
                        } else if q == i {
                            table.mul(tuple[i], tuple[i + 1])
                        } else {
                            tuple[q + 1]
                        };
                    }
                    let sign = sign_of(i % 2 == 0, m);
                    this.add_param_unit(&mut out, slot_of[a], encode(&merged[1..], n), sign);
                }
                let last_sign = sign_of(k.is_multiple_of(2), m);
                this.add_param_unit(&mut out, slot_of[a], encode(&tuple[1..k], n), last_sign);
                if let Some(y) = y {
                    let yv = y.value(encode(&tuple, n));
                    let cst = &mut out[nparams * r..];
                    for c in 0..r {
                        cst[c] = sub_mod(cst[c], yv[c] % m, m);
                    }
                }
                forms[t_h * block..(t_h + 1) * block].copy_from_slice(&out);
            }
        }
        this.forms = forms;
        this
    }

    fn param_index(&self, slot: usize, w: usize, c: usize) -> usize {
        let nw = self.order.pow(self.degree.saturating_sub(1) as u32);
        (slot * nw + w) * self.rank + c
    }

    fn add_param_unit(&self, out: &mut [u64], slot: usize, w: usize, sign: u64) {
        let r = self.rank;
        for c in 0..r {
            let p = self.param_index(slot, w, c);
            out[p * r + c] = add_mod(out[p * r + c], sign, self.modulus);
        }
    }

    #[allow(dead_code)]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    fn block(&self, t: usize) -> &[u64] {
        let b = (self.nparams + 1) * self.rank;
        &self.forms[t * b..(t + 1) * b]
    }

    /// The cochain whose parameters are `p`.
    pub fn expand(&self, p: &[u64]) -> Cochain {
        assert_eq!(p.len(), self.nparams, "parameter vector length mismatch");
        let r = self.rank;
        let m = self.modulus;
        let mut c = Cochain::zero(self.degree, self.order, r, m);
        let mut acc = vec![0u64; r];
        for t in 0..c.num_tuples() {
            let blk = self.block(t);
            acc.copy_from_slice(&blk[self.nparams * r..]);
            for (i, &x) in p.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (c2, a) in acc.iter_mut().enumerate() {
                    let f = blk[i * r + c2];
                    if f != 0 {
                        *a = add_mod(*a, mul_mod(x, f, m), m);
                    }
                }
            }
            c.set_value(t, &acc);
        }
        c
    }

    /// Reads the parameter values of a cochain.
    pub fn project(&self, c: &Cochain) -> Vec<u64> {
        assert_eq!(c.degree, self.degree, "degree mismatch");
        if self.degree == 0 {
            return c.value(0).to_vec();
        }
        let nw = self.order.pow(self.degree as u32 - 1);
        let mut p = vec![0u64; self.nparams];
        for (s, &h) in self.slots.iter().enumerate() {
            for w in 0..nw {
                let v = c.value(h * nw + w);
                for (cc, &x) in v.iter().enumerate() {
                    p[self.param_index(s, w, cc)] = x % self.modulus;
                }
            }
        }
        p
    }

    /// Solution set of δx = y: a particular parameter vector and generators of
    /// the homogeneous solutions, or None when inconsistent.
    pub fn solve(&self, table: &GroupTable, module: &ZnModule) -> Option<(Vec<u64>, MatrixZn)> {
        let n = self.order;
        let k = self.degree;
        let r = self.rank;
        let m = self.modulus;
        let big_p = self.nparams;
        let blk = (big_p + 1) * r;
        let actions: Vec<MatrixZn> = module.actions.iter().map(|a| a.reduce_mod(m)).collect();
        let mut solver = AffineSolver::new(big_p, m);
        let chunk_cols = 96usize.max(r);
        let mut chunk_lin: Vec<Vec<u64>> = Vec::new();
        let mut chunk_cst: Vec<u64> = Vec::new();
        let mut tuple = vec![0usize; k + 1];
        let mut merged = vec![0usize; k];
        let mut e = vec![0u64; blk];
        let total = n.pow(k as u32 + 1);
        for idx in 0..total {
            decode(idx, n, &mut tuple);
            e.iter_mut().for_each(|x| *x = 0);
            let tail = self.block(encode(&tuple[1..], n));
            let am = &actions[tuple[0]];
            for row in 0..=big_p {
                let v = &tail[row * r..(row + 1) * r];
                if v.iter().all(|&x| x == 0) {
                    continue;
                }
                let dst = &mut e[row * r..(row + 1) * r];
                for (i, &x) in v.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (c, &aij) in am.row(i).iter().enumerate() {
                        if aij != 0 {
                            dst[c] = add_mod(dst[c], mul_mod(x, aij, m), m);
                        }
                    }
                }
            }
            for i in 0..k {
                for (q, slot) in merged.iter_mut().enumerate() {
                    *slot = if q < i {
                        tuple[q]
                    } else if q == i {
                        table.mul(tuple[i], tuple[i + 1])
                    } else {
                        tuple[q + 1]
                    };
                }
                let sign = sign_of(i % 2 == 0, m);
                let src = self.block(encode(&merged, n));
                for (d, &s) in e.iter_mut().zip(src) {
                    if s != 0 {
                        *d = add_mod(*d, mul_mod(s, sign, m), m);
                    }
                }
            }
            let sign = sign_of((k + 1) % 2 == 1, m);
            let src = self.block(encode(&tuple[..k], n));
            for (d, &s) in e.iter_mut().zip(src) {
                if s != 0 {
                    *d = add_mod(*d, mul_mod(s, sign, m), m);
                }
            }
            if let Some(y) = &self.inhomogeneous {
                let yv = y.value(idx);
                for c in 0..r {
                    let p = big_p * r + c;
                    e[p] = sub_mod(e[p], yv[c] % m, m);
                }
            }
            for c in 0..r {
                let col: Vec<u64> = (0..big_p).map(|row| e[row * r + c]).collect();
                let cst = e[big_p * r + c];
                if cst == 0 && col.iter().all(|&x| x == 0) {
                    continue;
                }
                chunk_lin.push(col);
                chunk_cst.push(cst);
            }
            if chunk_lin.len() >= chunk_cols {
                if !solver.feed(&chunk_lin, &chunk_cst) {
                    return None;
                }
                chunk_lin.clear();
                chunk_cst.clear();
            }
        }
        if !chunk_lin.is_empty() && !solver.feed(&chunk_lin, &chunk_cst) {
            return None;
        }
        Some(solver.finish())
    }

    /// Images in parameter coordinates of δ of the unit (k−1)-cochains.
    pub fn coboundary_generators(&self, table: &GroupTable, module: &ZnModule) -> MatrixZn {
        let k = self.degree;
        let r = self.rank;
        let m = self.modulus;
        let n = self.order;
        if k == 0 {
            return MatrixZn::zeros(0, self.nparams, m);
        }
        let nz = n.pow(k as u32 - 1);
        let mut dmat = MatrixZn::zeros(nz * r, self.nparams, m);
        let actions: Vec<MatrixZn> = module.actions.iter().map(|a| a.reduce_mod(m)).collect();
        let mut tuple = vec![0usize; k];
        let mut merged = vec![0usize; k - 1];
        for (s, &h) in self.slots.iter().enumerate() {
            for w in 0..nz {
                tuple[0] = h;
                decode(w, n, &mut tuple[1..]);
                for c in 0..r {
                    let col = self.param_index(s, w, c);
                    for c2 in 0..r {
                        let a = actions[h].get(c2, c);
                        if a != 0 {
                            let row = w * r + c2;
                            dmat.set(row, col, add_mod(dmat.get(row, col), a, m));
                        }
                    }
                    for i in 0..k - 1 {
                        for (q, slot) in merged.iter_mut().enumerate() {
                            *slot = if q < i {
                                tuple[q]
                            } else if q == i {
                                table.mul(tuple[i], tuple[i + 1])
                            } else {
                                tuple[q + 1]
                            };
                        }
                        let row = encode(&merged, n) * r + c;
                        let sign = sign_of(i % 2 == 0, m);
                        dmat.set(row, col, add_mod(dmat.get(row, col), sign, m));
                    }
                    let row = encode(&tuple[..k - 1], n) * r + c;
                    let sign = sign_of(k % 2 == 1, m);
                    dmat.set(row, col, add_mod(dmat.get(row, col), sign, m));
                }
            }
        }
        dmat
    }
}

/// Maintains the solution set p₀ + span(K) of a growing system p·L = −c.
struct AffineSolver {
    modulus: u64,
    particular: Vec<u64>,
    basis: MatrixZn,
}

impl AffineSolver {
    fn new(nparams: usize, modulus: u64) -> Self {
        AffineSolver {
            modulus,
            particular: vec![0; nparams],
            basis: MatrixZn::identity(nparams, modulus),
        }
    }

    /// Adds the equations p·col_j + cst_j = 0. Returns false when inconsistent.
    fn feed(&mut self, cols: &[Vec<u64>], cst: &[u64]) -> bool {
        let m = self.modulus;
        let q = self.basis.rows();
        let np = self.particular.len();
        let nc = cols.len();
        let mut lin = MatrixZn::zeros(np, nc, m);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                if x != 0 {
                    lin.set(i, j, x);
                }
            }
        }
        let rhs: Vec<u64> = {
            let p0l = lin.apply(&self.particular);
            p0l.iter()
                .zip(cst)
                .map(|(&a, &b)| reduce(-((a + b) as i64), m))
                .collect()
        };
        let reduced = self.basis.mul(&lin);
        let active: Vec<usize> = (0..nc)
            .filter(|&j| (0..q).any(|i| reduced.get(i, j) != 0))
            .collect();
        for j in 0..nc {
            if !active.contains(&j) && rhs[j] != 0 {
                return false;
            }
        }
        if active.is_empty() {
            return true;
        }
        let r_act = reduced.select_cols(&active);
        let rhs_act: Vec<u64> = active.iter().map(|&j| rhs[j]).collect();
        let (form, ker) = howell_and_kernel(&r_act);
        let z = match form.solve(&rhs_act) {
            Ok(z) => z,
            Err(_) => return false,
        };
        let shift = self.basis.apply(&z);
        for (p, s) in self.particular.iter_mut().zip(shift) {
            *p = add_mod(*p, s, m);
        }
        self.basis = howell(&ker.mul(&self.basis)).matrix().clone();
        true
    }

    fn finish(self) -> (Vec<u64>, MatrixZn) {
        (self.particular, self.basis)
    }
}
