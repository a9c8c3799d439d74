//! Bar-resolution cohomology Hⁿ(G, M) of finite Z/d[G]-modules, with
//! invariant factors and explicit generator cocycles.
//!
//! Run with `cargo run --example cohomology`.

use cohomkern::cohomology::{
    coboundary, cohomology_group, DegreePolicy, SequenceCohomology, ZnModule,
};
use cohomkern::groups::{make_group, Family, GroupTable};
use cohomkern::sequences::{build_sequence, SequenceFamily};

fn main() {
    let policy = DegreePolicy::default();
    for d in [2u64, 3, 5] {
        let g = make_group(d, 1, 1, Family::Cyclic).expect("cyclic");
        let table = GroupTable::of_group(&g);
        let m = ZnModule::trivial("Z/d", d, 1, table.order());
        let factors: Vec<Vec<u64>> = (0..=2)
            .map(|n| {
                cohomology_group(&table, &m, n, &policy)
                    .expect("small")
                    .invariant_factors()
                    .to_vec()
            })
            .collect();
        println!("H^0..2(Z/{d}, Z/{d}) = {factors:?}");
    }

    let g = make_group(5, 4, 2, Family::Semidirect).expect("valid group");
    let seq = build_sequence(g, SequenceFamily::Semidirect).expect("sequence builds");
    let sc = SequenceCohomology::new(&seq, &policy);
    for k in 1..=4 {
        for n in 0..=1 {
            let h = sc.h(k, n).expect("within cost cap");
            println!("(5,4,2) H^{n}(M{k} mod 5) = {:?}", h.invariant_factors());
            for z in h.generators() {
                assert!(coboundary(&sc.table, &sc.bar[k - 1], z).is_zero());
            }
        }
    }
    let h1 = sc.h(4, 1).expect("within cost cap");
    let z = &h1.generators()[0];
    let json = serde_json::to_string(&z.to_json(&sc.table, "M4")).expect("serializes");
    println!("a generator of H^1(M4) as JSON: {json}");
}
