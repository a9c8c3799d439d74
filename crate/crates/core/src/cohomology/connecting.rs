//! Snake-lemma connecting maps of short exact sequences of modules and the
//! Bockstein map of a free Z/d²-module.

use crate::groups::GroupTable;
use crate::znz::{HowellForm, MatrixZn};

use super::cochain::{coboundary, Cochain};
use super::module::ZnModule;
use super::CohomologyError;

/// 0 → sub --inclusion--> mid --projection--> quot → 0 with a Z/m-linear
/// (not necessarily equivariant) section quot → mid.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub sub: ZnModule,
    pub mid: ZnModule,
    pub quot: ZnModule,
    pub inclusion: MatrixZn,
    pub projection: MatrixZn,
    pub section: MatrixZn,
}

impl ShortExact {
    /// Checks equivariance, injectivity, exactness in the middle and that the section splits the projection.
    pub fn validate(&self) -> Result<(), CohomologyError> {
        let fail = |msg: &str| Err(CohomologyError::Input(msg.to_string()));
        if !self.sub.is_equivariant_map(&self.mid, &self.inclusion) {
            return fail("inclusion is not equivariant");
        }
        if !self.mid.is_equivariant_map(&self.quot, &self.projection) {
            return fail("projection is not equivariant");
        }
        if !self.inclusion.mul(&self.projection).is_zero() {
            return fail("projection does not vanish on the submodule");
        }
        if self.section.mul(&self.projection)
            != MatrixZn::identity(self.quot.rank, self.quot.modulus)
        {
            return fail("section does not split the projection");
        }
        if !crate::znz::kernel(&self.inclusion).is_zero() {
            return fail("inclusion is not injective");
        }
        let ker = crate::znz::kernel(&self.projection);
        if !crate::znz::same_span(&ker, &self.inclusion) {
            return fail("sequence is not exact in the middle");
        }
        Ok(())
    }

    /// ∂: Hⁿ(quot) → Hⁿ⁺¹(sub) on a cocycle: inclusion⁻¹(δ(section ∘ c)).
    pub fn connecting(&self, table: &GroupTable, c: &Cochain) -> Result<Cochain, CohomologyError> {
        let lifted = c.map_values(&self.section);
        let dc = coboundary(table, &self.mid, &lifted);
        let inc = HowellForm::with_transform(&self.inclusion);
        let mut out = Cochain::zero(dc.degree, dc.order, self.sub.rank, self.sub.modulus);
        for idx in 0..dc.num_tuples() {
            let v = dc.value(idx);
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let x = inc.solve(v).map_err(|_| {
                CohomologyError::SectionFailure(format!(
                    "coboundary of the lifted cochain leaves the submodule at tuple {:?}",
                    dc.tuple_of(idx)
                ))
            })?;
            out.set_value(idx, &x);
        }
        Ok(out)
    }
}

/// Bockstein of 0 → M/d → M/d² → M/d → 0 for `big` free over Z/d²: lift the
/// mod-d cocycle digitwise, apply δ over Z/d², divide by d.
pub fn bockstein(
    table: &GroupTable,
    big: &ZnModule,
    c: &Cochain,
) -> Result<Cochain, CohomologyError> {
    let d = c.modulus;
    if big.modulus != d * d {
        return Err(CohomologyError::Input(format!(
            "module modulus {} is not the square of {}",
            big.modulus, d
        )));
    }
    let lifted = c.with_modulus(big.modulus);
    let dc = coboundary(table, big, &lifted);
    dc.divide(d, d).ok_or_else(|| {
        CohomologyError::LiftFailure("coboundary of the lift is not divisible by d".into())
    })
}
