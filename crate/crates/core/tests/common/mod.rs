//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cohomkern::znz::{howell, kernel, solve, MatrixZn};
use rand::Rng;

/// Every vector of (Z/m)^n.
pub fn all_vectors(n: usize, m: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| (0..m).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// The row span {xA} by enumeration.
pub fn span_set(a: &MatrixZn) -> BTreeSet<Vec<u64>> {
    all_vectors(a.rows(), a.modulus())
        .iter()
        .map(|x| a.apply(x))
        .collect()
}

/// The left kernel {x : xA = 0} by enumeration.
pub fn kernel_set(a: &MatrixZn) -> BTreeSet<Vec<u64>> {
    all_vectors(a.rows(), a.modulus())
        .into_iter()
        .filter(|x| a.apply(x).iter().all(|&v| v == 0))
        .collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, m: u64, max_dim: usize) -> MatrixZn {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    MatrixZn::from_vec(
        rows,
        cols,
        m,
        (0..rows * cols).map(|_| rng.gen_range(0..m)).collect(),
    )
}

/// Compares Howell span, kernel and solve against enumeration on one matrix.
pub fn check_linalg_against_oracle<R: Rng>(a: &MatrixZn, rng: &mut R) -> Result<(), String> {
    let m = a.modulus();
    let span = span_set(a);
    let h = howell(a);
    if span_set(h.matrix()) != span {
        return Err(format!("Howell span differs for\n{a}"));
    }
    if howell(h.matrix()).matrix() != h.matrix() {
        return Err(format!("Howell form not idempotent for\n{a}"));
    }
    let mut shuffled: Vec<Vec<u64>> = a.row_vecs();
    shuffled.reverse();
    let extra: Vec<u64> = (0..a.cols())
        .map(|c| (0..a.rows()).map(|r| a.get(r, c)).sum::<u64>() % m)
        .collect();
    shuffled.push(extra);
    if howell(&MatrixZn::from_rows(m, a.cols(), &shuffled)).matrix() != h.matrix() {
        return Err(format!("Howell form not canonical for\n{a}"));
    }
    let k = kernel(a);
    if !k.mul(a).is_zero() || span_set(&k) != kernel_set(a) {
        return Err(format!("kernel differs for\n{a}"));
    }
    let b: Vec<u64> = (0..a.cols()).map(|_| rng.gen_range(0..m)).collect();
    match solve(a, &b) {
        Ok(x) if a.apply(&x) == b => {}
        Ok(_) => return Err(format!("solve returned a wrong solution for\n{a}")),
        Err(_) if span.contains(&b) => {
            return Err(format!("solve missed a solution of {b:?} for\n{a}"))
        }
        Err(_) => {}
    }
    let x: Vec<u64> = (0..a.rows()).map(|_| rng.gen_range(0..m)).collect();
    let b = a.apply(&x);
    match solve(a, &b) {
        Ok(y) if a.apply(&y) == b => Ok(()),
        _ => Err(format!("solve failed on an image vector {b:?} for\n{a}")),
    }
}
