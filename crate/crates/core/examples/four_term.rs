//! Builds the four-term sequence 0 → M₁ → M₂ → M₃ → M₄ → 0 over Z/d² for
//! each family and checks exactness, homotopies, equivariance and ranks.
//!
//! Run with `cargo run --example four_term`.

use cohomkern::groups::{make_group, Family};
use cohomkern::sequences::{build_sequence, verify_four_term, SequenceFamily};

fn main() {
    let cases = [
        (3, 1, 1, Family::Cyclic, SequenceFamily::Cyclic),
        (5, 2, 4, Family::Dihedral, SequenceFamily::DihedralClassic),
        (5, 4, 2, Family::Semidirect, SequenceFamily::Semidirect),
    ];
    for (d, s, t, gf, sf) in cases {
        let g = make_group(d, s, t, gf).expect("valid group");
        let seq = build_sequence(g, sf).expect("sequence builds");
        println!("{g} [{sf}] ranks {:?} over Z/{}", seq.ranks(), seq.modulus);
        println!("  d3 matrix:\n{}", seq.d[2]);
        let rep = verify_four_term(&seq);
        for c in &rep.claims {
            println!("  [{:?}] {}: {}", c.status, c.id, c.detail);
        }
        assert!(rep.all_pass());
    }
}
