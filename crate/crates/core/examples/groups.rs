//! Metacyclic groups: construction, validation, θ, multiplication and subgroups.
//!
//! Run with `cargo run --example groups`.

use cohomkern::groups::{make_group, Family, GroupElement, SubgroupName};

fn main() {
    let g = make_group(5, 4, 2, Family::Semidirect).expect("valid group");
    println!("{g}: order {}", g.order());
    let thetas: Vec<u64> = (0..g.s() as i64).map(|j| g.theta(j)).collect();
    println!("theta_0..theta_3 = {thetas:?}");

    let st = g.mul(g.sigma(), g.tau());
    println!("sigma * tau = {st}  (expected t^2 s^1)");
    assert_eq!(st, GroupElement::new(2, 1));

    for name in [SubgroupName::J, SubgroupName::H, SubgroupName::JPrime] {
        let sub = g.subgroup(name).expect("subgroup exists");
        println!("subgroup {name}: order {}", sub.order());
    }

    let s3 = make_group(3, 2, 2, Family::Dihedral).expect("S3");
    let x = s3.mul(s3.sigma(), s3.tau());
    println!("in S3, (sigma tau)^2 = {}", s3.mul(x, x));
    let hp = s3
        .subgroup(SubgroupName::HPrime)
        .expect("H' exists for s = 2");
    println!("S3 subgroup H' = <sigma tau> has order {}", hp.order());

    match make_group(7, 2, 2, Family::Dihedral) {
        Ok(_) => unreachable!("2 has order 3 mod 7"),
        Err(e) => println!("metacyclic:7,2,2 rejected: {e}"),
    }
}
