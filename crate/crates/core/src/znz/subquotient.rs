//! Subquotients span(N)/span(D) of (Z/m)^n presented as direct sums of cyclic groups.

use super::arith::GroupOrder;
use super::howell::{kernel, HowellForm};
use super::matrix::MatrixZn;
use super::smith::smith_form;
use super::LinalgError;

/// Presentation of span(numerator) / span(denominator) as ⊕ Z/f_i.
#[derive(Clone, Debug)]
pub struct SubquotientPresentation {
    ambient_rank: usize,
    numerator: HowellForm,
    denominator: MatrixZn,
    invariant_factors: Vec<u64>,
    /// Row i is an ambient vector generating the Z/f_i summand.
    generators: MatrixZn,
    /// Maps Howell-row coefficients of a numerator element to factor coordinates.
    coord_map: MatrixZn,
}

impl SubquotientPresentation {
    pub fn new(numerator: &MatrixZn, denominator: &MatrixZn) -> Result<Self, LinalgError> {
        let m = numerator.modulus();
        assert_eq!(m, denominator.modulus(), "modulus mismatch");
        assert_eq!(numerator.cols(), denominator.cols(), "dimension mismatch");
        let hn = HowellForm::new(numerator);
        let h = hn.matrix().clone();
        let k = h.rows();
        let mut relations = kernel(&h);
        for r in 0..denominator.rows() {
            let coords = hn
                .coordinates(denominator.row(r))
                .map_err(|_| LinalgError::NotContained)?;
            relations.push_row(&coords);
        }
        if relations.cols() != k {
            relations = MatrixZn::zeros(0, k, m);
        }
        let snf = smith_form(&relations);
        let keep: Vec<usize> = (0..k).filter(|&i| snf.diagonal[i] != 1).collect();
        let invariant_factors: Vec<u64> = keep.iter().map(|&i| snf.diagonal[i]).collect();
        let generators = snf.q_inv.select_rows(&keep).mul(&h);
        let coord_map = snf.q.select_cols(&keep);
        Ok(SubquotientPresentation {
            ambient_rank: numerator.cols(),
            numerator: hn,
            denominator: denominator.clone(),
            invariant_factors,
            generators,
            coord_map,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.generators.modulus()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn numerator(&self) -> &HowellForm {
        &self.numerator
    }

    pub fn denominator(&self) -> &MatrixZn {
        &self.denominator
    }

    /// Ambient representatives of the cyclic summands, aligned with the invariant factors.
    pub fn generators(&self) -> &MatrixZn {
        &self.generators
    }

    pub fn order(&self) -> GroupOrder {
        self.invariant_factors
            .iter()
            .fold(GroupOrder::one(), |acc, &f| acc.mul_n(f))
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Coordinates of the class of `v` in ⊕ Z/f_i, each reduced mod f_i.
    pub fn coordinates(&self, v: &[u64]) -> Result<Vec<u64>, LinalgError> {
        let coeffs = self
            .numerator
            .coordinates(v)
            .map_err(|_| LinalgError::NotContained)?;
        let raw = self.coord_map.apply(&coeffs);
        Ok(raw
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &f)| x % f)
            .collect())
    }

    /// Whether `v` (in the numerator) represents the zero class.
    pub fn is_zero_class(&self, v: &[u64]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.iter().all(|&x| x == 0))
    }
}

/// Presentation of span(numerator) / span(denominator).
pub fn subquotient(
    numerator: &MatrixZn,
    denominator: &MatrixZn,
) -> Result<SubquotientPresentation, LinalgError> {
    SubquotientPresentation::new(numerator, denominator)
}

/// Invariant factors of the row span of `m` viewed as an abstract group.
pub fn span_invariants(m: &MatrixZn) -> Vec<u64> {
    let zero = MatrixZn::zeros(0, m.cols(), m.modulus());
    subquotient(m, &zero)
        .expect("zero denominator is always contained")
        .invariant_factors
}

/// Rank of the row span when it is a free Z/m-module, `None` otherwise.
pub fn free_rank(m: &MatrixZn) -> Option<usize> {
    let inv = span_invariants(m);
    if inv.iter().all(|&f| f == m.modulus()) {
        Some(inv.len())
    } else {
        None
    }
}
