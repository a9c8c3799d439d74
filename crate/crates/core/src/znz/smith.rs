//! Smith normal form over the principal ideal ring Z/mZ.
//!
//! Used to present quotients (Z/m)^k / rowspan(A) as direct sums of cyclic
//! groups together with explicit generators.

use super::arith::{gcd, inv_mod, mul_mod, normalizing_unit, sub_mod, unimodular_step};
use super::matrix::MatrixZn;

/// Diagonalization data `P · A · Q = D` for the row-span quotient problem.
///
/// Only the column transform is kept: the quotient (Z/m)^k / rowspan(A) is
/// isomorphic to ⊕ Z/diag[i] through v ↦ v·Q, with generator i equal to
/// row i of `q_inv`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub modulus: u64,
    /// One entry per column; each entry divides the modulus, the modulus
    /// standing for a zero diagonal entry. Sorted so that each divides the next.
    pub diagonal: Vec<u64>,
    pub q: MatrixZn,
    pub q_inv: MatrixZn,
}

struct Work {
    a: Vec<Vec<u64>>,
    q: Vec<Vec<u64>>,
    q_inv: Vec<Vec<u64>>,
    m: u64,
    cols: usize,
}

impl Work {
    fn row_combine(&mut self, r1: usize, r2: usize, c: usize) {
        let m = self.m;
        let (s, t, u, v) = unimodular_step(self.a[r1][c], self.a[r2][c], m);
        for k in 0..self.cols {
            let (x, y) = (self.a[r1][k], self.a[r2][k]);
            self.a[r1][k] = (mul_mod(s, x, m) + mul_mod(t, y, m)) % m;
            self.a[r2][k] = (mul_mod(u, x, m) + mul_mod(v, y, m)) % m;
        }
    }

    /// Column operation new_c1 = s·c1 + t·c2, new_c2 = u·c1 + v·c2 with s·v − t·u = 1.
    fn col_combine(&mut self, c1: usize, c2: usize, r: usize) {
        let m = self.m;
        let (s, t, u, v) = unimodular_step(self.a[r][c1], self.a[r][c2], m);
        self.apply_col_op(c1, c2, s, t, u, v);
    }

    fn apply_col_op(&mut self, c1: usize, c2: usize, s: u64, t: u64, u: u64, v: u64) {
        let m = self.m;
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            let (x, y) = (row[c1], row[c2]);
            row[c1] = (mul_mod(s, x, m) + mul_mod(t, y, m)) % m;
            row[c2] = (mul_mod(u, x, m) + mul_mod(v, y, m)) % m;
        }
        let (r1, r2) = (self.q_inv[c1].clone(), self.q_inv[c2].clone());
        for k in 0..self.cols {
            self.q_inv[c1][k] = sub_mod(mul_mod(v, r1[k], m), mul_mod(u, r2[k], m), m);
            self.q_inv[c2][k] = sub_mod(mul_mod(s, r2[k], m), mul_mod(t, r1[k], m), m);
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row.swap(c1, c2);
        }
        self.q_inv.swap(c1, c2);
    }

    fn scale_col(&mut self, c: usize, unit: u64) {
        let m = self.m;
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row[c] = mul_mod(row[c], unit, m);
        }
        let inv = inv_mod(unit, m).expect("unit");
        for x in self.q_inv[c].iter_mut() {
            *x = mul_mod(*x, inv, m);
        }
    }

    /// Clears row `t` and column `t` outside the diagonal, for rows ≥ t and cols ≥ t.
    fn eliminate(&mut self, t: usize) {
        let rows = self.a.len();
        loop {
            for r in t + 1..rows {
                if self.a[r][t] != 0 {
                    self.row_combine(t, r, t);
                }
            }
            let mut dirty = false;
            for c in t + 1..self.cols {
                if self.a[t][c] != 0 {
                    self.col_combine(t, c, t);
                    dirty = true;
                }
            }
            if !dirty || (t + 1..rows).all(|r| self.a[r][t] == 0) {
                break;
            }
        }
        let p = self.a[t][t];
        if p != 0 {
            let u = normalizing_unit(p, self.m);
            self.scale_col(t, u);
        }
    }

    fn diag(&self, i: usize) -> u64 {
        if i < self.a.len() && self.a[i][i] != 0 {
            gcd(self.a[i][i], self.m)
        } else {
            self.m
        }
    }
}

/// Smith form of `a` (rows × k) for presenting (Z/m)^k / rowspan(a).
pub fn smith_form(a: &MatrixZn) -> SmithForm {
    let m = a.modulus();
    let k = a.cols();
    let mut rows = a.row_vecs();
    rows.retain(|r| r.iter().any(|&x| x != 0));
    if rows.len() < k {
        rows.resize(k, vec![0; k]);
    }
    let mut w = Work {
        a: rows,
        q: MatrixZn::identity(k, m).row_vecs(),
        q_inv: MatrixZn::identity(k, m).row_vecs(),
        m,
        cols: k,
    };
    let nrows = w.a.len();
    for t in 0..k.min(nrows) {
        let mut best: Option<(usize, usize, u64)> = None;
        for r in t..nrows {
            for c in t..k {
                let x = w.a[r][c];
                if x != 0 {
                    let g = gcd(x, m);
                    if best.is_none_or(|(_, _, bg)| g < bg) {
                        best = Some((r, c, g));
                    }
                }
            }
        }
        let Some((r, c, _)) = best else { break };
        w.a.swap(t, r);
        w.swap_cols(t, c);
        w.eliminate(t);
    }
    // Enforce the divisibility chain on the diagonal.
    let n = k;
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in i + 1..n {
                let (di, dj) = (w.diag(i), w.diag(j));
                if dj % di != 0 {
                    ensure_square(&mut w, j);
                    // column i += column j brings D_jj into row j of column i.
                    w.apply_col_op(i, j, 1, 1, 0, 1);
                    w.eliminate(i);
                    let pj = w.a[j][j];
                    if pj != 0 {
                        let u = normalizing_unit(pj, m);
                        w.scale_col(j, u);
                    }
                    changed = true;
                }
            }
        }
    }
    let diagonal: Vec<u64> = (0..k).map(|i| w.diag(i)).collect();
    SmithForm {
        modulus: m,
        diagonal,
        q: MatrixZn::from_rows(m, k, &w.q),
        q_inv: MatrixZn::from_rows(m, k, &w.q_inv),
    }
}

fn ensure_square(w: &mut Work, j: usize) {
    while w.a.len() <= j {
        w.a.push(vec![0; w.cols]);
    }
}

/// Invariant factors (> 1) of (Z/m)^k / rowspan(a), each dividing the next.
pub fn quotient_invariants(a: &MatrixZn) -> Vec<u64> {
    smith_form(a)
        .diagonal
        .into_iter()
        .filter(|&f| f != 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::znz::howell::howell;

    fn check_transform(a: &MatrixZn) {
        let s = smith_form(a);
        let k = a.cols();
        assert_eq!(s.q.mul(&s.q_inv), MatrixZn::identity(k, a.modulus()));
        let aq = a.mul(&s.q);
        let d = MatrixZn::from_rows(
            a.modulus(),
            k,
            &(0..k)
                .map(|i| {
                    let mut r = vec![0; k];
                    r[i] = s.diagonal[i] % a.modulus();
                    r
                })
                .collect::<Vec<_>>(),
        );
        assert_eq!(
            howell(&aq).matrix(),
            howell(&d).matrix(),
            "rowspan(AQ) must equal rowspan(D)"
        );
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn simple_quotients() {
        let a = MatrixZn::from_signed_rows(6, 2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(quotient_invariants(&a), vec![6]);
        check_transform(&a);
        let b = MatrixZn::zeros(0, 3, 3);
        assert_eq!(quotient_invariants(&b), vec![3, 3, 3]);
        let c = MatrixZn::identity(2, 9);
        assert!(quotient_invariants(&c).is_empty());
        let d = MatrixZn::from_signed_rows(12, 2, &[vec![4, 6]]);
        check_transform(&d);
        assert_eq!(quotient_invariants(&d), vec![2, 12]);
    }

    #[test]
    fn exhaustive_small() {
        let m = 4u64;
        for code in 0..(m.pow(4)) {
            let e: Vec<i64> = (0..4).map(|i| ((code / m.pow(i)) % m) as i64).collect();
            let a = MatrixZn::from_signed_rows(m, 2, &[vec![e[0], e[1]], vec![e[2], e[3]]]);
            check_transform(&a);
        }
    }
}
