//! Restriction, corestriction and Shapiro's lemma for the subgroups ⟨τ⟩ and ⟨σ⟩.
//!
//! Run with `cargo run --example transfer`.

use cohomkern::cohomology::{cor_res_check, shapiro_check, DegreePolicy, SequenceCohomology};
use cohomkern::groups::{make_group, Family, GroupTable, SubgroupName};
use cohomkern::sequences::{build_sequence, SequenceFamily};

fn main() {
    let policy = DegreePolicy::default();
    for (d, s, t, gf, sf) in [
        (3, 2, 2, Family::Dihedral, SequenceFamily::DihedralClassic),
        (5, 4, 2, Family::Semidirect, SequenceFamily::Semidirect),
    ] {
        let g = make_group(d, s, t, gf).expect("valid group");
        let seq = build_sequence(g, sf).expect("sequence builds");
        let sc = SequenceCohomology::new(&seq, &policy);
        println!("{g}");
        for name in [SubgroupName::J, SubgroupName::H] {
            let sub = g.subgroup(name).expect("subgroup exists");
            let table = GroupTable::of_subgroup(&g, &sub);
            for n in 0..=1 {
                let c = shapiro_check(&g, &sub, n, &policy).expect("small");
                println!("  [{:?}] {}: {}", c.status, c.id, c.detail);
                for m in &sc.bar {
                    let c = cor_res_check(&sc.table, &table, m, n, &policy).expect("small");
                    println!("  [{:?}] {} over {name}: {}", c.status, c.id, c.detail);
                }
            }
        }
    }
}
