//! The sequence 0 → Z/2 → Z/2[Z/2] → Z/2 → 0 over G = Z/2, whose connecting
//! map is the cup product with the nonzero character.

use rand::Rng;

use crate::cohomology::{
    cohomology_group, cup1, is_coboundary, Cochain, CohomologyError, DegreePolicy, ShortExact,
    ZnModule,
};
use crate::groups::{make_group, Family, GroupTable, MetacyclicGroup};
use crate::report::{Claim, InstanceDescriptor, VerificationReport};
use crate::znz::MatrixZn;

#[derive(Clone, Debug)]
pub struct ArasonData {
    pub group: MetacyclicGroup,
    pub table: GroupTable,
    pub sequence: ShortExact,
    /// The nonzero homomorphism χ: G → Z/2.
    pub chi: Cochain,
}

pub fn build_arason() -> ArasonData {
    let group = make_group(2, 1, 1, Family::Arason).expect("Z/2 is a valid group");
    let table = GroupTable::of_group(&group);
    let tau = table
        .labels()
        .iter()
        .position(|g| *g == group.tau())
        .expect("tau is in the table");
    let id = MatrixZn::identity(1, 2);
    let swap = MatrixZn::from_rows(2, 2, &[vec![0, 1], vec![1, 0]]);
    let mut mid_actions = vec![MatrixZn::identity(2, 2); 2];
    mid_actions[tau] = swap;
    let sequence = ShortExact {
        sub: ZnModule::new("Z/2", 2, 1, vec![id.clone(), id.clone()]),
        mid: ZnModule::new("Z/2[G]", 2, 2, mid_actions),
        quot: ZnModule::new("Z/2", 2, 1, vec![id.clone(), id]),
        inclusion: MatrixZn::from_rows(2, 2, &[vec![1, 1]]),
        projection: MatrixZn::from_rows(2, 1, &[vec![1], vec![1]]),
        section: MatrixZn::from_rows(2, 2, &[vec![1, 0]]),
    };
    let chi = Cochain::from_fn(1, 2, 1, 2, |t| vec![u64::from(t[0] == tau)]);
    ArasonData {
        group,
        table,
        sequence,
        chi,
    }
}

/// ∂(z) = χ ⌣ z for cocycles z in degree n: every cocycle when there are at
/// most `exhaustive_limit` of them, otherwise `samples` random ones.
pub fn arason_check<R: Rng>(
    data: &ArasonData,
    n: usize,
    exhaustive_limit: u128,
    samples: usize,
    policy: &DegreePolicy,
    rng: &mut R,
) -> Result<Claim, CohomologyError> {
    let seq = &data.sequence;
    let h = cohomology_group(&data.table, &seq.quot, n, policy)?;
    let (cocycles, mode) = match h.all_cocycles(exhaustive_limit) {
        Some(all) => (all, "exhaustive"),
        None => (
            (0..samples).map(|_| h.random_cocycle(rng)).collect(),
            "sampled",
        ),
    };
    let mut exact = 0;
    let mut classes = 0;
    for z in &cocycles {
        let dz = seq.connecting(&data.table, z)?;
        let cup = cup1(&data.table, &data.chi, z)?;
        if dz == cup {
            exact += 1;
        }
        if is_coboundary(&data.table, &seq.sub, &dz.sub(&cup), policy)? {
            classes += 1;
        }
    }
    let total = cocycles.len();
    Ok(Claim::new(
        format!("arason.n{n}"),
        classes == total,
        format!("{mode}: connecting map equals chi cup z on {exact}/{total} cochains and {classes}/{total} classes"),
    ))
}

/// Arason checks in degrees 0..=max_n.
pub fn verify_arason<R: Rng>(
    max_n: usize,
    samples: usize,
    policy: &DegreePolicy,
    rng: &mut R,
) -> VerificationReport {
    let data = build_arason();
    let mut rep = VerificationReport::new(InstanceDescriptor::new(&data.group, "arason"));
    rep.check(
        "arason.sequence",
        data.sequence.validate().is_ok(),
        "0 -> Z/2 -> Z/2[G] -> Z/2 -> 0 is exact and equivariant",
    );
    for n in 0..=max_n {
        let limit = if n <= 1 { u128::MAX } else { 0 };
        match arason_check(&data, n, limit, samples, policy, rng) {
            Ok(c) => rep.push(c),
            Err(e) => rep.check(format!("arason.n{n}"), false, e.to_string()),
        }
    }
    rep.sort();
    rep
}
