//! Cohomology groups as subquotients Zⁿ/Bⁿ, induced maps, and exactness of
//! sequences of finite abelian groups given by matrices on generators.

use rand::Rng;
use serde::Serialize;

use crate::groups::GroupTable;
use crate::znz::arith::{mul_mod, GroupOrder};
use crate::znz::{howell, kernel, same_span, HowellForm, MatrixZn, SubquotientPresentation};

use super::cochain::{coboundary, Cochain};
use super::module::ZnModule;
use super::param::Parametrization;
use super::{CohomologyError, DegreePolicy};

/// Hⁿ(G, M) = Zⁿ/Bⁿ presented in parameter coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub module_name: String,
    pub modulus: u64,
    param: Parametrization,
    cocycles: HowellForm,
    presentation: SubquotientPresentation,
    generators: Vec<Cochain>,
}

/// Whether `c` satisfies δc = 0.
pub fn is_cocycle(table: &GroupTable, module: &ZnModule, c: &Cochain) -> bool {
    coboundary(table, module, c).is_zero()
}

/// Some x with δx = y, or None when y is not a coboundary.
pub fn solve_coboundary(
    table: &GroupTable,
    module: &ZnModule,
    y: &Cochain,
    policy: &DegreePolicy,
) -> Result<Option<Cochain>, CohomologyError> {
    if y.degree == 0 {
        return Ok(if y.is_zero() {
            Some(Cochain::zero(0, table.order(), module.rank, module.modulus))
        } else {
            None
        });
    }
    let k = y.degree - 1;
    policy.check(k, table.order())?;
    Parametrization::check_cost(table, module, k, policy)?;
    let p = Parametrization::new(table, module, k, Some(y));
    Ok(p.solve(table, module).map(|(p0, _)| p.expand(&p0)))
}

pub fn is_coboundary(
    table: &GroupTable,
    module: &ZnModule,
    y: &Cochain,
    policy: &DegreePolicy,
) -> Result<bool, CohomologyError> {
    Ok(solve_coboundary(table, module, y, policy)?.is_some())
}

/// Computes Hⁿ(G, M).
pub fn cohomology_group(
    table: &GroupTable,
    module: &ZnModule,
    n: usize,
    policy: &DegreePolicy,
) -> Result<CohomologyGroup, CohomologyError> {
    policy.check(n, table.order())?;
    Parametrization::check_cost(table, module, n, policy)?;
    let param = Parametrization::new(table, module, n, None);
    let (_, z) = param
        .solve(table, module)
        .expect("homogeneous system is consistent");
    let b = param.coboundary_generators(table, module);
    let presentation = SubquotientPresentation::new(&z, &b)?;
    let generators = (0..presentation.generators().rows())
        .map(|i| param.expand(presentation.generators().row(i)))
        .collect();
    Ok(CohomologyGroup {
        degree: n,
        module_name: module.name.clone(),
        modulus: module.modulus,
        param,
        cocycles: howell(&z),
        presentation,
        generators,
    })
}

impl CohomologyGroup {
    pub fn invariant_factors(&self) -> &[u64] {
        self.presentation.invariant_factors()
    }

    pub fn order(&self) -> GroupOrder {
        self.presentation.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.presentation.is_trivial()
    }

    pub fn generators(&self) -> &[Cochain] {
        &self.generators
    }

    pub fn presentation(&self) -> &SubquotientPresentation {
        &self.presentation
    }

    /// Order of the cocycle group Zⁿ.
    pub fn cocycle_count(&self) -> GroupOrder {
        self.cocycles.span_order()
    }

    /// Class coordinates of a cocycle (each reduced mod its invariant factor).
    pub fn classify(&self, c: &Cochain) -> Result<Vec<u64>, CohomologyError> {
        let p = self.param.project(c);
        if !self.cocycles.contains(&p) {
            return Err(CohomologyError::NotACocycle(format!(
                "degree {} cochain in {}",
                c.degree, self.module_name
            )));
        }
        Ok(self.presentation.coordinates(&p)?)
    }

    pub fn is_zero_class(&self, c: &Cochain) -> Result<bool, CohomologyError> {
        Ok(self.classify(c)?.iter().all(|&x| x == 0))
    }

    /// Σ coords_i · generator_i.
    pub fn cocycle_of(&self, coords: &[u64]) -> Cochain {
        let m = self.modulus;
        let mut c = Cochain::zero(self.degree, self.param_order(), self.param_rank(), m);
        for (g, &x) in self.generators.iter().zip(coords) {
            if x % m != 0 {
                c = c.add(&g.scale(x as i64));
            }
        }
        c
    }

    fn param_order(&self) -> usize {
        self.generators
            .first()
            .map_or_else(|| self.cocycle_template().order, |g| g.order)
    }

    fn param_rank(&self) -> usize {
        self.generators
            .first()
            .map_or_else(|| self.cocycle_template().rank, |g| g.rank)
    }

    fn cocycle_template(&self) -> Cochain {
        self.param.expand(&vec![0; self.param.nparams()])
    }

    /// Generators of the coboundary group as cochains.
    pub fn coboundary_cochains(&self) -> Vec<Cochain> {
        let d = self.presentation.denominator();
        (0..d.rows()).map(|i| self.param.expand(d.row(i))).collect()
    }

    /// Howell generators of Zⁿ as cochains.
    pub fn cocycle_basis(&self) -> Vec<Cochain> {
        let z = self.cocycles.matrix();
        (0..z.rows()).map(|i| self.param.expand(z.row(i))).collect()
    }

    /// A uniformly random cocycle.
    pub fn random_cocycle<R: Rng>(&self, rng: &mut R) -> Cochain {
        let z = self.cocycles.matrix();
        let m = self.modulus;
        let mut p = vec![0u64; self.param.nparams()];
        for (i, ord) in self.cocycles.row_orders().into_iter().enumerate() {
            let c = rng.gen_range(0..ord);
            for (x, &v) in p.iter_mut().zip(z.row(i)) {
                *x = (*x + mul_mod(c, v, m)) % m;
            }
        }
        self.param.expand(&p)
    }

    /// Every cocycle, when there are at most `limit` of them.
    pub fn all_cocycles(&self, limit: u128) -> Option<Vec<Cochain>> {
        let count = self.cocycle_count().value()?;
        if count > limit {
            return None;
        }
        let z = self.cocycles.matrix();
        let orders = self.cocycles.row_orders();
        let m = self.modulus;
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0u64; orders.len()];
        loop {
            let mut p = vec![0u64; self.param.nparams()];
            for (i, &c) in digits.iter().enumerate() {
                if c != 0 {
                    for (x, &v) in p.iter_mut().zip(z.row(i)) {
                        *x = (*x + mul_mod(c, v, m)) % m;
                    }
                }
            }
            out.push(self.param.expand(&p));
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    return Some(out);
                }
                digits[pos] += 1;
                if digits[pos] < orders[pos] {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    pub fn summary(&self) -> CohomologySummary {
        CohomologySummary {
            degree: self.degree,
            module: self.module_name.clone(),
            modulus: self.modulus,
            invariant_factors: self.invariant_factors().to_vec(),
            order: self.order().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologySummary {
    pub degree: usize,
    pub module: String,
    pub modulus: u64,
    pub invariant_factors: Vec<u64>,
    pub order: String,
}

/// A homomorphism between presented finite abelian groups, as the matrix of
/// images of source generators in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyMap {
    pub matrix: MatrixZn,
    pub source_factors: Vec<u64>,
    pub target_factors: Vec<u64>,
    /// Whether coboundaries were verified to map to coboundaries.
    pub well_defined: bool,
}

/// Map on cohomology induced by a cochain-level map `f`.
pub fn induced_map<F>(
    src: &CohomologyGroup,
    tgt: &CohomologyGroup,
    mut f: F,
) -> Result<CohomologyMap, CohomologyError>
where
    F: FnMut(&Cochain) -> Result<Cochain, CohomologyError>,
{
    let k = tgt.invariant_factors().len();
    let mut rows = Vec::with_capacity(src.generators().len());
    for g in src.generators() {
        rows.push(tgt.classify(&f(g)?)?);
    }
    let mut well_defined = true;
    for b in src.coboundary_cochains() {
        if !tgt.is_zero_class(&f(&b)?)? {
            well_defined = false;
            break;
        }
    }
    Ok(CohomologyMap {
        matrix: MatrixZn::from_rows(tgt.modulus, k, &rows),
        source_factors: src.invariant_factors().to_vec(),
        target_factors: tgt.invariant_factors().to_vec(),
        well_defined,
    })
}

/// Map induced by a module homomorphism applied pointwise.
pub fn module_map(
    src: &CohomologyGroup,
    tgt: &CohomologyGroup,
    map: &MatrixZn,
) -> Result<CohomologyMap, CohomologyError> {
    induced_map(src, tgt, |c| Ok(c.map_values(map)))
}

fn diag(factors: &[u64], modulus: u64) -> MatrixZn {
    let k = factors.len();
    let mut d = MatrixZn::zeros(k, k, modulus);
    for (i, &f) in factors.iter().enumerate() {
        d.set(i, i, f % modulus);
    }
    d
}

/// Result of checking exactness of A --f--> B --g--> C at B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessCheck {
    pub composite_zero: bool,
    pub image_order: String,
    pub kernel_order: String,
    pub exact: bool,
}

impl ExactnessCheck {
    pub fn detail(&self) -> String {
        format!(
            "|im| = {}, |ker| = {}, composite {}",
            self.image_order,
            self.kernel_order,
            if self.composite_zero {
                "zero"
            } else {
                "nonzero"
            }
        )
    }
}

/// Exactness at the middle group; B's presentation is shared by f's target and g's source.
pub fn exactness(f: &CohomologyMap, g: &CohomologyMap) -> ExactnessCheck {
    assert_eq!(f.target_factors, g.source_factors, "maps do not compose");
    let m = g.matrix.modulus();
    let kb = f.target_factors.len();
    let diag_b = diag(&f.target_factors, m);
    let comp = f.matrix.mul(&g.matrix);
    let composite_zero = (0..comp.rows()).all(|i| {
        (0..comp.cols()).all(|j| comp.get(i, j).is_multiple_of(g.target_factors[j].max(1)))
    });
    let image = f.matrix.vstack(&diag_b);
    let stacked = g.matrix.vstack(&diag(&g.target_factors, m));
    let ker_full = kernel(&stacked);
    let ker = ker_full
        .select_cols(&(0..kb).collect::<Vec<_>>())
        .vstack(&diag_b);
    let base = HowellForm::new(&diag_b).span_order();
    let im_order = HowellForm::new(&image)
        .span_order()
        .div(&base)
        .expect("image contains the relations");
    let ker_order = HowellForm::new(&ker)
        .span_order()
        .div(&base)
        .expect("kernel contains the relations");
    let exact = composite_zero && same_span(&image, &ker);
    ExactnessCheck {
        composite_zero,
        image_order: im_order.to_string(),
        kernel_order: ker_order.to_string(),
        exact,
    }
}

/// Invariant factors of target/im(f).
pub fn cokernel_invariants(f: &CohomologyMap) -> Vec<u64> {
    let m = f.matrix.modulus();
    let k = f.target_factors.len();
    let rel = f.matrix.vstack(&diag(&f.target_factors, m));
    crate::znz::subquotient(&MatrixZn::identity(k, m), &rel)
        .expect("relations lie in the ambient group")
        .invariant_factors()
        .to_vec()
}

/// Invariant factors of im(f).
pub fn image_invariants(f: &CohomologyMap) -> Vec<u64> {
    let m = f.matrix.modulus();
    let d = diag(&f.target_factors, m);
    crate::znz::subquotient(&f.matrix.vstack(&d), &d)
        .expect("relations lie in the image span")
        .invariant_factors()
        .to_vec()
}

/// Invariant factors of ker(f).
pub fn kernel_invariants(f: &CohomologyMap) -> Vec<u64> {
    let m = f.matrix.modulus();
    let ks = f.source_factors.len();
    let stacked = f.matrix.vstack(&diag(&f.target_factors, m));
    let ker = kernel(&stacked).select_cols(&(0..ks).collect::<Vec<_>>());
    let d = diag(&f.source_factors, m);
    crate::znz::subquotient(&ker.vstack(&d), &d)
        .expect("relations lie in the kernel")
        .invariant_factors()
        .to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, Family};
    use rand::SeedableRng;

    fn table(d: u64, s: u64, t: u64, f: Family) -> GroupTable {
        GroupTable::of_group(&make_group(d, s, t, f).unwrap())
    }

    #[test]
    fn cyclic_cohomology_with_trivial_coefficients() {
        let policy = DegreePolicy::default();
        for d in [2u64, 3, 5] {
            let tab = table(d, 1, 1, Family::Cyclic);
            let m = ZnModule::trivial("Z/d", d, 1, tab.order());
            for n in 0..=3 {
                let h = cohomology_group(&tab, &m, n, &policy).unwrap();
                assert_eq!(h.invariant_factors(), &[d], "H^{n}(Z/{d})");
            }
        }
    }

    #[test]
    fn s3_trivial_coefficients() {
        let policy = DegreePolicy::default();
        let tab = table(3, 2, 2, Family::Dihedral);
        let m3 = ZnModule::trivial("Z/3", 3, 1, 6);
        let m2 = ZnModule::trivial("Z/2", 2, 1, 6);
        let factors = |m: &ZnModule, n| {
            cohomology_group(&tab, m, n, &policy)
                .unwrap()
                .invariant_factors()
                .to_vec()
        };
        assert_eq!(factors(&m3, 1), Vec::<u64>::new());
        assert_eq!(factors(&m3, 2), Vec::<u64>::new());
        assert_eq!(factors(&m3, 3), vec![3]);
        assert_eq!(factors(&m2, 1), vec![2]);
        assert_eq!(factors(&m2, 2), vec![2]);
    }

    #[test]
    fn coboundary_squares_to_zero_and_cocycles_classify() {
        let policy = DegreePolicy::default();
        let tab = table(3, 2, 2, Family::Dihedral);
        let mut actions = Vec::new();
        for g in tab.labels() {
            let sign = if g.j % 2 == 1 { 2 } else { 1 };
            actions.push(MatrixZn::scalar(1, sign, 3));
        }
        let sgn = ZnModule::new("sgn", 3, 1, actions);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let c = Cochain::from_fn(2, 6, 1, 3, |_| vec![rng.gen_range(0..3)]);
        assert!(coboundary(&tab, &sgn, &coboundary(&tab, &sgn, &c)).is_zero());
        let h = cohomology_group(&tab, &sgn, 1, &policy).unwrap();
        assert_eq!(h.invariant_factors(), &[3]);
        for _ in 0..10 {
            let z = h.random_cocycle(&mut rng);
            assert!(is_cocycle(&tab, &sgn, &z));
            let coords = h.classify(&z).unwrap();
            let diff = z.sub(&h.cocycle_of(&coords));
            assert!(is_coboundary(&tab, &sgn, &diff, &policy).unwrap());
        }
        let all = h.all_cocycles(1000).unwrap();
        let brute = (0..3u64.pow(6))
            .filter(|&code| {
                let c = Cochain::from_fn(1, 6, 1, 3, |t| vec![code / 3u64.pow(t[0] as u32) % 3]);
                is_cocycle(&tab, &sgn, &c)
            })
            .count();
        assert_eq!(all.len(), brute);
    }

    #[test]
    fn exactness_of_a_short_sequence() {
        let m = 4;
        let f = CohomologyMap {
            matrix: MatrixZn::from_rows(m, 1, &[vec![2]]),
            source_factors: vec![2],
            target_factors: vec![4],
            well_defined: true,
        };
        let g = CohomologyMap {
            matrix: MatrixZn::from_rows(m, 1, &[vec![1]]),
            source_factors: vec![4],
            target_factors: vec![2],
            well_defined: true,
        };
        assert!(exactness(&f, &g).exact);
        assert_eq!(cokernel_invariants(&f), vec![2]);
        assert_eq!(image_invariants(&f), vec![2]);
        assert_eq!(kernel_invariants(&g), vec![2]);
    }
}
