//! Howell normal form over Z/mZ, with kernels and canonical solving.

use super::arith::{mul_mod, normalizing_unit, sub_mod, unimodular_step, GroupOrder};
use super::matrix::MatrixZn;
use super::LinalgError;

/// Canonical Howell form of a row span.
///
/// `matrix` holds the nonzero Howell rows sorted by pivot column; every pivot is
/// a divisor of the modulus and entries above a pivot lie in [0, pivot). When
/// built with a transform, `transform · input = matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellForm {
    matrix: MatrixZn,
    pivot_cols: Vec<usize>,
    transform: Option<MatrixZn>,
}

fn combine_rows(p: &mut [u64], r: &mut [u64], col: usize, m: u64) {
    let (s, t, u, v) = unimodular_step(p[col], r[col], m);
    for k in col..p.len() {
        let (x, y) = (p[k], r[k]);
        p[k] = (mul_mod(s, x, m) + mul_mod(t, y, m)) % m;
        r[k] = (mul_mod(u, x, m) + mul_mod(v, y, m)) % m;
    }
}

fn scale_row(row: &mut [u64], c: u64, m: u64) {
    for x in row.iter_mut() {
        *x = mul_mod(*x, c, m);
    }
}

fn sub_scaled(target: &mut [u64], src: &[u64], q: u64, m: u64) {
    if q == 0 {
        return;
    }
    for (t, &s) in target.iter_mut().zip(src) {
        if s != 0 {
            *t = sub_mod(*t, mul_mod(q, s, m), m);
        }
    }
}

/// Core Howell reduction on rows of length `width`, pivoting only on the first
/// `pivot_cols` columns. Returns the pivot rows with their pivot columns; rows
/// that end up zero on the pivoting block are discarded.
fn howell_rows(rows: Vec<Vec<u64>>, pivot_cols: usize, m: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pool: Vec<Vec<u64>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut result: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..pivot_cols {
        if pool.is_empty() {
            break;
        }
        let mut pivot: Option<Vec<u64>> = None;
        let mut rest = Vec::with_capacity(pool.len());
        for mut r in pool.drain(..) {
            if r[col] == 0 {
                rest.push(r);
                continue;
            }
            match pivot.as_mut() {
                None => pivot = Some(r),
                Some(p) => {
                    combine_rows(p, &mut r, col, m);
                    if r.iter().any(|&x| x != 0) {
                        rest.push(r);
                    }
                }
            }
        }
        pool = rest;
        if let Some(mut p) = pivot {
            let u = normalizing_unit(p[col], m);
            scale_row(&mut p, u, m);
            let g = p[col];
            if g != 1 {
                let mut ann = p.clone();
                scale_row(&mut ann, m / g, m);
                if ann.iter().any(|&x| x != 0) {
                    pool.push(ann);
                }
            }
            result.push(p);
            pivots.push(col);
        }
    }
    for r in 0..result.len() {
        let c = pivots[r];
        let g = result[r][c];
        let (head, tail) = result.split_at_mut(r);
        let prow = &tail[0];
        for row in head.iter_mut() {
            let q = row[c] / g;
            sub_scaled(row, prow, q, m);
        }
    }
    (result, pivots)
}

impl HowellForm {
    /// Howell form without transform data.
    pub fn new(m: &MatrixZn) -> Self {
        let (rows, pivots) = howell_rows(m.row_vecs(), m.cols(), m.modulus());
        let matrix = MatrixZn::from_rows(m.modulus(), m.cols(), &rows);
        HowellForm {
            matrix,
            pivot_cols: pivots,
            transform: None,
        }
    }

    /// Howell form together with a transform `T` such that `T · m = matrix`.
    pub fn with_transform(m: &MatrixZn) -> Self {
        let n = m.rows();
        let c = m.cols();
        let aug = m.hstack(&MatrixZn::identity(n, m.modulus()));
        let (rows, pivots) = howell_rows(aug.row_vecs(), c, m.modulus());
        let left: Vec<Vec<u64>> = rows.iter().map(|r| r[..c].to_vec()).collect();
        let right: Vec<Vec<u64>> = rows.iter().map(|r| r[c..].to_vec()).collect();
        HowellForm {
            matrix: MatrixZn::from_rows(m.modulus(), c, &left),
            pivot_cols: pivots,
            transform: Some(MatrixZn::from_rows(m.modulus(), n, &right)),
        }
    }

    pub fn matrix(&self) -> &MatrixZn {
        &self.matrix
    }

    pub fn transform(&self) -> Option<&MatrixZn> {
        self.transform.as_ref()
    }

    pub fn modulus(&self) -> u64 {
        self.matrix.modulus()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Pivot column with the pivot value (a divisor of the modulus) per row.
    pub fn rank_profile(&self) -> Vec<(usize, u64)> {
        self.pivot_cols
            .iter()
            .enumerate()
            .map(|(r, &c)| (c, self.matrix.get(r, c)))
            .collect()
    }

    /// Additive order m/pivot of each Howell row's leading coefficient ideal.
    pub fn row_orders(&self) -> Vec<u64> {
        let m = self.modulus();
        self.rank_profile().iter().map(|&(_, p)| m / p).collect()
    }

    /// Order of the row span.
    pub fn span_order(&self) -> GroupOrder {
        self.row_orders()
            .iter()
            .fold(GroupOrder::one(), |acc, &o| acc.mul_n(o))
    }

    /// Reduces `v` against the Howell rows. Returns the remainder and the
    /// coefficients used on each Howell row; the remainder is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let m = self.modulus();
        assert_eq!(v.len(), self.matrix.cols(), "dimension mismatch");
        let mut b: Vec<u64> = v.iter().map(|x| x % m).collect();
        let mut coeffs = vec![0u64; self.rank()];
        for (r, &c) in self.pivot_cols.iter().enumerate() {
            if b[..c].iter().any(|&x| x != 0) {
                break;
            }
            let g = self.matrix.get(r, c);
            if !b[c].is_multiple_of(g) {
                break;
            }
            let q = b[c] / g;
            if q != 0 {
                sub_scaled(&mut b, self.matrix.row(r), q, m);
                coeffs[r] = q;
            }
        }
        (b, coeffs)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coefficients on the Howell rows expressing `v`, if `v` is in the span.
    pub fn coordinates(&self, v: &[u64]) -> Result<Vec<u64>, LinalgError> {
        let (rem, coeffs) = self.reduce(v);
        if rem.iter().all(|&x| x == 0) {
            Ok(coeffs)
        } else {
            Err(LinalgError::NoSolution)
        }
    }

    /// Canonical `x` with `x · input = v`; requires a transform.
    pub fn solve(&self, v: &[u64]) -> Result<Vec<u64>, LinalgError> {
        let t = self
            .transform
            .as_ref()
            .expect("solve requires a Howell form built with a transform");
        let coeffs = self.coordinates(v)?;
        Ok(t.apply(&coeffs))
    }

    pub fn contains_span(&self, other: &MatrixZn) -> bool {
        (0..other.rows()).all(|r| self.contains(other.row(r)))
    }
}

/// Howell normal form of `m`.
pub fn howell(m: &MatrixZn) -> HowellForm {
    HowellForm::new(m)
}

/// Generators (in Howell form) of the left kernel {x : x·m = 0}.
pub fn kernel(m: &MatrixZn) -> MatrixZn {
    let n = m.rows();
    let c = m.cols();
    let aug = m.hstack(&MatrixZn::identity(n, m.modulus()));
    let (rows, pivots) = howell_rows(aug.row_vecs(), c + n, m.modulus());
    let kernel_rows: Vec<Vec<u64>> = rows
        .iter()
        .zip(&pivots)
        .filter(|(_, &p)| p >= c)
        .map(|(r, _)| r[c..].to_vec())
        .collect();
    MatrixZn::from_rows(m.modulus(), n, &kernel_rows)
}

/// Howell form of `m` with transform, together with kernel generators, from a
/// single reduction of [m | I].
pub fn howell_and_kernel(m: &MatrixZn) -> (HowellForm, MatrixZn) {
    let n = m.rows();
    let c = m.cols();
    let modulus = m.modulus();
    let aug = m.hstack(&MatrixZn::identity(n, modulus));
    let (rows, pivots) = howell_rows(aug.row_vecs(), c + n, modulus);
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut piv = Vec::new();
    let mut ker = Vec::new();
    for (r, &p) in rows.iter().zip(&pivots) {
        if p < c {
            left.push(r[..c].to_vec());
            right.push(r[c..].to_vec());
            piv.push(p);
        } else {
            ker.push(r[c..].to_vec());
        }
    }
    let form = HowellForm {
        matrix: MatrixZn::from_rows(modulus, c, &left),
        pivot_cols: piv,
        transform: Some(MatrixZn::from_rows(modulus, n, &right)),
    };
    (form, MatrixZn::from_rows(modulus, n, &ker))
}

/// Canonical `x` with `x · m = b`.
pub fn solve(m: &MatrixZn, b: &[u64]) -> Result<Vec<u64>, LinalgError> {
    HowellForm::with_transform(m).solve(b)
}

/// Whether the row spans of `a` and `b` coincide.
pub fn same_span(a: &MatrixZn, b: &MatrixZn) -> bool {
    howell(a).matrix == howell(b).matrix
}

/// Generators of the intersection of the row spans of `a` and `b`.
pub fn span_intersection(a: &MatrixZn, b: &MatrixZn) -> MatrixZn {
    let stacked = a.vstack(b);
    let k = kernel(&stacked);
    let left = k.select_cols(&(0..a.rows()).collect::<Vec<_>>());
    howell(&left.mul(a)).matrix
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(modulus: u64, cols: usize, rows: &[Vec<i64>]) -> MatrixZn {
        MatrixZn::from_signed_rows(modulus, cols, rows)
    }

    #[test]
    fn zero_matrix_has_empty_form() {
        let h = howell(&MatrixZn::zeros(3, 2, 4));
        assert_eq!(h.rank(), 0);
        assert!(h.rank_profile().is_empty());
    }

    #[test]
    fn two_over_four() {
        let h = howell(&m(4, 1, &[vec![2]]));
        assert!(h.contains(&[2]));
        assert!(h.contains(&[0]));
        assert!(!h.contains(&[1]));
        assert!(!h.contains(&[3]));
    }

    #[test]
    fn identity_is_fixed() {
        let id = MatrixZn::identity(2, 9);
        assert_eq!(howell(&id).matrix(), &id);
    }

    #[test]
    fn howell_property_needs_extra_row() {
        let a = m(4, 2, &[vec![2, 1]]);
        let h = howell(&a);
        assert_eq!(h.matrix(), &m(4, 2, &[vec![2, 1], vec![0, 2]]));
        assert!(h.contains(&[0, 2]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&m(4, 1, &[vec![2]])), m(4, 1, &[vec![2]]));
        assert_eq!(kernel(&MatrixZn::identity(3, 5)).rows(), 0);
        let k = kernel(&MatrixZn::scalar(2, 3, 9));
        assert!(same_span(&k, &MatrixZn::scalar(2, 3, 9)));
    }

    #[test]
    fn solve_examples() {
        let id = MatrixZn::identity(3, 7);
        assert_eq!(solve(&id, &[1, 5, 6]).unwrap(), vec![1, 5, 6]);
        let two = m(4, 1, &[vec![2]]);
        assert_eq!(solve(&two, &[1]), Err(LinalgError::NoSolution));
        assert_eq!(solve(&two, &[2]).unwrap(), vec![1]);
    }

    #[test]
    fn intersection_of_spans() {
        let a = m(6, 1, &[vec![2]]);
        let b = m(6, 1, &[vec![3]]);
        let i = span_intersection(&a, &b);
        assert!(i.is_zero() || howell(&i).rank() == 0);
        let c = m(12, 1, &[vec![4]]);
        let d = m(12, 1, &[vec![6]]);
        assert!(same_span(&span_intersection(&c, &d), &m(12, 1, &[vec![0]])));
        let e = m(12, 1, &[vec![2]]);
        assert!(same_span(&span_intersection(&e, &d), &m(12, 1, &[vec![6]])));
    }
}
