//! Dense matrices over Z/mZ acting on row vectors.

use std::fmt;
use std::str::FromStr;

use super::arith::{add_mod, mul_mod, neg_mod, reduce, sub_mod};
use super::LinalgError;

/// Dense row-major matrix with entries in [0, modulus).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixZn {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl MatrixZn {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Self {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    pub fn scalar(n: usize, c: u64, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = c % modulus;
        }
        m
    }

    /// Builds a matrix from unreduced row-major data.
    pub fn from_vec(rows: usize, cols: usize, modulus: u64, data: Vec<u64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count does not match dimensions"
        );
        let data = data.into_iter().map(|x| x % modulus).collect();
        Self {
            rows,
            cols,
            modulus,
            data,
        }
    }

    /// Builds a matrix from signed rows, reducing every entry.
    pub fn from_signed_rows(modulus: u64, cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols, modulus);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = reduce(x, modulus);
            }
        }
        m
    }

    /// Builds a matrix from residue rows with a known width (allows zero rows).
    pub fn from_rows(modulus: u64, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|x| x % modulus));
        }
        Self {
            rows: rows.len(),
            cols,
            modulus,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.modulus;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &MatrixZn) -> MatrixZn {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let m = self.modulus;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let out_row = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(brow) {
                    *o = (*o + a * b) % m;
                }
            }
        }
        MatrixZn {
            rows: self.rows,
            cols: other.cols,
            modulus: m,
            data: out,
        }
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.rows, "dimension mismatch");
        let m = self.modulus;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let brow = self.row(k);
            for (o, &b) in out.iter_mut().zip(brow) {
                *o = (*o + a * b) % m;
            }
        }
        out
    }

    pub fn add(&self, other: &MatrixZn) -> MatrixZn {
        self.zip_with(other, add_mod)
    }

    pub fn sub(&self, other: &MatrixZn) -> MatrixZn {
        self.zip_with(other, sub_mod)
    }

    fn zip_with(&self, other: &MatrixZn, f: fn(u64, u64, u64) -> u64) -> MatrixZn {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "dimension mismatch"
        );
        let m = self.modulus;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b, m))
            .collect();
        MatrixZn {
            rows: self.rows,
            cols: self.cols,
            modulus: m,
            data,
        }
    }

    pub fn scale(&self, c: u64) -> MatrixZn {
        let m = self.modulus;
        let c = c % m;
        let data = self.data.iter().map(|&a| mul_mod(a, c, m)).collect();
        MatrixZn {
            rows: self.rows,
            cols: self.cols,
            modulus: m,
            data,
        }
    }

    pub fn neg(&self) -> MatrixZn {
        let m = self.modulus;
        let data = self.data.iter().map(|&a| neg_mod(a, m)).collect();
        MatrixZn {
            rows: self.rows,
            cols: self.cols,
            modulus: m,
            data,
        }
    }

    pub fn transpose(&self) -> MatrixZn {
        let mut out = MatrixZn::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Entrywise reduction to a divisor of the current modulus.
    pub fn reduce_mod(&self, modulus: u64) -> MatrixZn {
        assert!(
            self.modulus.is_multiple_of(modulus),
            "target modulus must divide the current one"
        );
        let data = self.data.iter().map(|&a| a % modulus).collect();
        MatrixZn {
            rows: self.rows,
            cols: self.cols,
            modulus,
            data,
        }
    }

    /// Reinterprets residues in [0, modulus) under a larger modulus.
    pub fn lift_mod(&self, modulus: u64) -> MatrixZn {
        assert!(
            modulus.is_multiple_of(self.modulus),
            "target modulus must be a multiple of the current one"
        );
        MatrixZn {
            rows: self.rows,
            cols: self.cols,
            modulus,
            data: self.data.clone(),
        }
    }

    pub fn vstack(&self, other: &MatrixZn) -> MatrixZn {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatrixZn {
            rows: self.rows + other.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        }
    }

    pub fn hstack(&self, other: &MatrixZn) -> MatrixZn {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.rows, other.rows, "dimension mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        MatrixZn {
            rows: self.rows,
            cols,
            modulus: self.modulus,
            data,
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &MatrixZn) -> MatrixZn {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut out = MatrixZn::zeros(self.rows + other.rows, self.cols + other.cols, self.modulus);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatrixZn {
        let rows: Vec<Vec<u64>> = idx.iter().map(|&r| self.row(r).to_vec()).collect();
        MatrixZn::from_rows(self.modulus, self.cols, &rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> MatrixZn {
        let mut out = MatrixZn::zeros(self.rows, idx.len(), self.modulus);
        for r in 0..self.rows {
            for (k, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + k] = self.get(r, c);
            }
        }
        out
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "dimension mismatch");
        self.data.extend(row.iter().map(|x| x % self.modulus));
        self.rows += 1;
    }
}

impl fmt::Display for MatrixZn {
    /// Debug file format: "rows cols modulus" then one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.modulus)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for MatrixZn {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        let mut next_num = |what: &str| -> Result<i64, LinalgError> {
            let tok = tokens
                .next()
                .ok_or_else(|| LinalgError::Parse(format!("missing {what}")))?;
            tok.parse::<i64>()
                .map_err(|_| LinalgError::Parse(format!("bad {what}: {tok}")))
        };
        let rows = next_num("row count")?;
        let cols = next_num("column count")?;
        let modulus = next_num("modulus")?;
        if rows < 0 || cols < 0 || modulus < 2 {
            return Err(LinalgError::Parse("invalid header".into()));
        }
        let (rows, cols, modulus) = (rows as usize, cols as usize, modulus as u64);
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            data.push(reduce(next_num("entry")?, modulus));
        }
        if tokens.next().is_some() {
            return Err(LinalgError::Parse("trailing entries".into()));
        }
        Ok(MatrixZn {
            rows,
            cols,
            modulus,
            data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_text_format() {
        let m = MatrixZn::from_signed_rows(9, 3, &[vec![1, -1, 4], vec![0, 8, 10]]);
        let text = m.to_string();
        assert!(text.starts_with("2 3 9\n"));
        assert_eq!(text.parse::<MatrixZn>().unwrap(), m);
    }

    #[test]
    fn parse_errors() {
        assert!("2 2 4\n1 2 3".parse::<MatrixZn>().is_err());
        assert!("1 1 1\n0".parse::<MatrixZn>().is_err());
        assert!("1 1 4\n0 5".parse::<MatrixZn>().is_err());
    }

    #[test]
    fn mul_and_apply_agree() {
        let a = MatrixZn::from_signed_rows(4, 2, &[vec![1, 2], vec![3, 1]]);
        let b = MatrixZn::from_signed_rows(4, 2, &[vec![2, 2], vec![1, 3]]);
        let ab = a.mul(&b);
        for r in 0..2 {
            assert_eq!(ab.row(r), b.apply(a.row(r)).as_slice());
        }
        assert_eq!(a.mul(&MatrixZn::identity(2, 4)), a);
    }

    #[test]
    fn stacking() {
        let a = MatrixZn::identity(2, 5);
        let v = a.vstack(&a);
        assert_eq!((v.rows(), v.cols()), (4, 2));
        let h = a.hstack(&a);
        assert_eq!((h.rows(), h.cols()), (2, 4));
        let d = a.direct_sum(&MatrixZn::identity(1, 5));
        assert_eq!(d, MatrixZn::identity(3, 5));
    }
}
