//! Cohomology orders against enumeration of all cochains, and cochain
//! identities checked as property tests.

use cohomkern::cohomology::{
    coboundary, cohomology_group, random_cochain, restrict, Cochain, DegreePolicy,
    SequenceCohomology, ZnModule,
};
use cohomkern::config::InstanceSpec;
use cohomkern::groups::{make_group, Family, GroupTable, SubgroupName};
use cohomkern::sequences::{build_sequence, SequenceFamily};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every cochain of the given degree, by odometer over all values.
fn all_cochains(degree: usize, table: &GroupTable, module: &ZnModule) -> Vec<Cochain> {
    let len = table.order().pow(degree as u32) * module.rank;
    let m = module.modulus;
    let total = (m as usize).pow(len as u32);
    (0..total)
        .map(|mut k| {
            let values = (0..len)
                .map(|_| {
                    let v = (k % m as usize) as u64;
                    k /= m as usize;
                    v
                })
                .collect();
            Cochain::from_values(degree, table.order(), module.rank, m, values)
        })
        .collect()
}

/// |Zⁿ| / |Bⁿ| by enumeration.
fn brute_order(table: &GroupTable, module: &ZnModule, n: usize) -> usize {
    let cocycles = all_cochains(n, table, module)
        .iter()
        .filter(|c| coboundary(table, module, c).is_zero())
        .count();
    if n == 0 {
        return cocycles;
    }
    let boundaries: std::collections::BTreeSet<Vec<u64>> = all_cochains(n - 1, table, module)
        .iter()
        .map(|c| coboundary(table, module, c).values)
        .collect();
    cocycles / boundaries.len()
}

fn order_of(factors: &[u64]) -> usize {
    factors.iter().map(|&f| f as usize).product()
}

fn seq_cohomology(d: u64, s: u64, t: u64, f: SequenceFamily) -> SequenceCohomology {
    let spec = InstanceSpec::new(d, s, t, f);
    let seq = build_sequence(spec.group().unwrap(), f).unwrap();
    SequenceCohomology::new(&seq, &DegreePolicy::default())
}

#[test]
fn trivial_coefficients_match_enumeration() {
    let policy = DegreePolicy::default();
    for (d, max_n) in [(2u64, 2usize), (3, 1)] {
        let g = make_group(d, 1, 1, Family::Cyclic).unwrap();
        let table = GroupTable::of_group(&g);
        let m = ZnModule::trivial("Z/d", d, 1, table.order());
        for n in 0..=max_n {
            let h = cohomology_group(&table, &m, n, &policy).unwrap();
            assert_eq!(
                order_of(h.invariant_factors()),
                brute_order(&table, &m, n),
                "Z/{d} n={n}"
            );
            assert_eq!(h.invariant_factors(), [d]);
        }
    }
}

#[test]
fn sequence_modules_match_enumeration() {
    let sc = seq_cohomology(3, 1, 1, SequenceFamily::Cyclic);
    for k in 0..4 {
        for n in 0..=1 {
            let h = sc.h(k + 1, n).unwrap();
            assert_eq!(
                order_of(h.invariant_factors()),
                brute_order(&sc.table, &sc.bar[k], n),
                "M{} n={n}",
                k + 1
            );
        }
    }
    for f in [SequenceFamily::DihedralClassic, SequenceFamily::Semidirect] {
        let sc = seq_cohomology(3, 2, 2, f);
        for k in [0usize, 3] {
            for n in 0..=1 {
                let h = sc.h(k + 1, n).unwrap();
                assert_eq!(
                    order_of(h.invariant_factors()),
                    brute_order(&sc.table, &sc.bar[k], n),
                    "{f} M{} n={n}",
                    k + 1
                );
            }
        }
    }
}

#[test]
fn fixed_points_of_trivial_module_and_m4() {
    for (d, s, t, f) in [
        (3, 2, 2, SequenceFamily::DihedralClassic),
        (5, 4, 2, SequenceFamily::Semidirect),
        (13, 4, 5, SequenceFamily::Semidirect),
    ] {
        let sc = seq_cohomology(d, s, t, f);
        assert_eq!(sc.h(1, 0).unwrap().invariant_factors(), [d]);
    }
    assert!(seq_cohomology(5, 4, 2, SequenceFamily::Semidirect)
        .h(4, 0)
        .unwrap()
        .is_trivial());
}

#[test]
fn generators_are_cocycles_with_matching_orders() {
    let sc = seq_cohomology(5, 4, 2, SequenceFamily::Semidirect);
    for k in 1..=4 {
        for n in 0..=2 {
            let h = sc.h(k, n).unwrap();
            for (z, &f) in h.generators().iter().zip(h.invariant_factors()) {
                assert!(coboundary(&sc.table, &sc.bar[k - 1], z).is_zero());
                assert!(h.is_zero_class(&z.scale(f as i64)).unwrap());
                if f > 1 {
                    assert!(!h.is_zero_class(z).unwrap());
                }
            }
        }
    }
}

fn instance_strategy() -> impl Strategy<Value = (u64, u64, u64, SequenceFamily)> {
    prop::sample::select(vec![
        (2, 1, 1, SequenceFamily::Cyclic),
        (3, 1, 1, SequenceFamily::Cyclic),
        (3, 2, 2, SequenceFamily::DihedralClassic),
        (5, 2, 4, SequenceFamily::DihedralClassic),
        (3, 2, 2, SequenceFamily::Semidirect),
        (5, 4, 2, SequenceFamily::Semidirect),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn coboundary_squares_to_zero(inst in instance_strategy(), k in 0usize..4, n in 0usize..2, seed in any::<u64>()) {
        let (d, s, t, f) = inst;
        let sc = seq_cohomology(d, s, t, f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for module in [&sc.bar[k], &sc.big[k]] {
            let c = random_cochain(n, &sc.table, module, &mut rng);
            let dc = coboundary(&sc.table, module, &c);
            prop_assert!(coboundary(&sc.table, module, &dc).is_zero());
        }
    }

    #[test]
    fn coboundaries_are_zero_classes(inst in instance_strategy(), k in 1usize..=4, seed in any::<u64>()) {
        let (d, s, t, f) = inst;
        let sc = seq_cohomology(d, s, t, f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cochain(0, &sc.table, &sc.bar[k - 1], &mut rng);
        let h = sc.h(k, 1).unwrap();
        prop_assert!(h.is_zero_class(&coboundary(&sc.table, &sc.bar[k - 1], &c)).unwrap());
    }

    #[test]
    fn restriction_commutes_with_coboundary(inst in instance_strategy(), k in 0usize..4, seed in any::<u64>()) {
        let (d, s, t, f) = inst;
        let sc = seq_cohomology(d, s, t, f);
        let g = *sc.group();
        let sub = GroupTable::of_subgroup(&g, &g.subgroup(SubgroupName::J).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cochain(1, &sc.table, &sc.bar[k], &mut rng);
        let res_module = sc.bar[k].restrict(&sub);
        let lhs = restrict(&sub, &coboundary(&sc.table, &sc.bar[k], &c));
        let rhs = coboundary(&sub, &res_module, &restrict(&sub, &c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta_sends_coboundaries_to_coboundaries(inst in instance_strategy(), seed in any::<u64>()) {
        let (d, s, t, f) = inst;
        let sc = seq_cohomology(d, s, t, f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_cochain(0, &sc.table, &sc.bar[3], &mut rng);
        let y = coboundary(&sc.table, &sc.bar[3], &x);
        let e = sc.eta(&y).unwrap();
        prop_assert!(sc.is_coboundary(&sc.bar[0], &e).unwrap());
    }

    #[test]
    fn eta_is_additive_on_classes(inst in instance_strategy(), seed in any::<u64>()) {
        let (d, s, t, f) = inst;
        let sc = seq_cohomology(d, s, t, f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = sc.h(4, 1).unwrap();
        let a = h.random_cocycle(&mut rng);
        let b = h.random_cocycle(&mut rng);
        let lhs = sc.eta(&a.add(&b)).unwrap();
        let rhs = sc.eta(&a).unwrap().add(&sc.eta(&b).unwrap());
        prop_assert!(sc.cohomologous(&sc.bar[0], &lhs, &rhs).unwrap());
    }
}
