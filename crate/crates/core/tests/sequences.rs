//! Four-term sequences against enumeration, and group-ring products against
//! naive convolution.

mod common;

use std::collections::BTreeSet;

use cohomkern::config::{default_grid, InstanceSpec};
use cohomkern::group_ring::RingElement;
use cohomkern::groups::{make_group, Family};
use cohomkern::sequences::{
    build_arason, build_sequence, verify_four_term, SequenceError, SequenceFamily,
};
use cohomkern::znz::MatrixZn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn image_set(a: &MatrixZn) -> BTreeSet<Vec<u64>> {
    common::span_set(a)
}

#[test]
fn exactness_by_enumeration_mod_9() {
    for f in [SequenceFamily::DihedralClassic, SequenceFamily::Semidirect] {
        let seq = build_sequence(make_group(3, 2, 2, Family::Semidirect).unwrap(), f).unwrap();
        let d = &seq.d;
        assert!(common::kernel_set(&d[0]).len() == 1, "d1 injective");
        assert_eq!(common::kernel_set(&d[1]), image_set(&d[0]), "exact at M2");
        assert_eq!(common::kernel_set(&d[2]), image_set(&d[1]), "exact at M3");
        assert_eq!(
            image_set(&d[2]).len(),
            9usize.pow(seq.ranks()[3] as u32),
            "d3 surjective"
        );
    }
}

#[test]
fn prism_identity_by_matrices() {
    for spec in default_grid() {
        let seq = build_sequence(spec.group().unwrap(), spec.family).unwrap();
        let m = seq.modulus;
        let dm = seq.d();
        let r = seq.ranks();
        for k in 0..4 {
            let mut sum = MatrixZn::zeros(r[k], r[k], m);
            if k < 3 {
                sum = sum.add(&seq.d[k].mul(&seq.h[k]));
            }
            if k > 0 {
                sum = sum.add(&seq.h[k - 1].mul(&seq.d[k - 1]));
            }
            assert_eq!(
                sum,
                MatrixZn::scalar(r[k], dm, m),
                "{} at M{}",
                spec.label(),
                k + 1
            );
        }
    }
}

fn naive_product(a: &RingElement, b: &RingElement) -> Vec<u64> {
    let g = a.group();
    let m = a.modulus();
    let elems = g.elements();
    let mut out = vec![0u64; elems.len()];
    for &x in &elems {
        for &y in &elems {
            let z = g.index(g.mul(x, y));
            out[z] = (out[z] + a.coeff(x) * b.coeff(y)) % m;
        }
    }
    out
}

#[test]
fn ring_products_match_convolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for spec in default_grid() {
        let g = spec.group().unwrap();
        let m = spec.d * spec.d;
        for _ in 0..20 {
            let a = RingElement::from_coeffs(
                g,
                m,
                (0..g.order()).map(|_| rng.gen_range(0..m)).collect(),
            );
            let b = RingElement::from_coeffs(
                g,
                m,
                (0..g.order()).map(|_| rng.gen_range(0..m)).collect(),
            );
            assert_eq!((&a * &b).coeffs(), naive_product(&a, &b).as_slice());
        }
    }
}

#[test]
fn whole_grid_verifies() {
    for spec in default_grid() {
        let rep = verify_four_term(&build_sequence(spec.group().unwrap(), spec.family).unwrap());
        assert!(rep.all_pass(), "{}: {:?}", spec.label(), rep.failures());
    }
}

#[test]
fn family_mismatch_is_reported() {
    let g = make_group(5, 4, 2, Family::Semidirect).unwrap();
    assert!(matches!(
        build_sequence(g, SequenceFamily::DihedralClassic),
        Err(SequenceError::FamilyMismatch(_))
    ));
    assert!(matches!(
        build_sequence(g, SequenceFamily::Cyclic),
        Err(SequenceError::FamilyMismatch(_))
    ));
    assert!(InstanceSpec::new(5, 4, 2, SequenceFamily::DihedralClassic)
        .group()
        .is_err());
}

#[test]
fn arason_maps_by_enumeration() {
    let a = build_arason();
    let s = &a.sequence;
    assert_eq!(s.inclusion.apply(&[1]), vec![1, 1]);
    assert_eq!(s.projection.apply(&[1, 0]), vec![1]);
    assert_eq!(s.projection.apply(&[1, 1]), vec![0]);
    let kernel: BTreeSet<Vec<u64>> = common::kernel_set(&s.projection);
    assert_eq!(kernel, image_set(&s.inclusion));
    assert_eq!(kernel, [vec![0, 0], vec![1, 1]].into_iter().collect());
}
