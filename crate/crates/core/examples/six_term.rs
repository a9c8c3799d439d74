//! The six-term sequence Hⁿ(M̄₂⊕M̄₄) → Hⁿ(M̄₃) → Hⁿ(M̄₄) → Hⁿ⁺¹(M̄₁) →
//! Hⁿ⁺¹(M̄₂) → Hⁿ⁺¹(M̄₁⊕M̄₃), with exactness and Bockstein hypotheses.
//!
//! Run with `cargo run --example six_term`.

use cohomkern::cohomology::{six_term_verify, DegreePolicy, SequenceCohomology};
use cohomkern::groups::{make_group, Family};
use cohomkern::sequences::{build_sequence, SequenceFamily};

fn main() {
    let policy = DegreePolicy::default();
    let cases = [
        (3, 1, 1, Family::Cyclic, SequenceFamily::Cyclic),
        (3, 2, 2, Family::Dihedral, SequenceFamily::DihedralClassic),
        (5, 4, 2, Family::Semidirect, SequenceFamily::Semidirect),
    ];
    for (d, s, t, gf, sf) in cases {
        let g = make_group(d, s, t, gf).expect("valid group");
        let seq = build_sequence(g, sf).expect("sequence builds");
        let sc = SequenceCohomology::new(&seq, &policy);
        for n in 0..=1 {
            let (rep, summary) = six_term_verify(&sc, n).expect("within cost cap");
            println!("{g} [{sf}] n = {n}: exact at positions {:?}", summary.exact);
            for c in rep.claims.iter().filter(|c| c.id.starts_with("sixterm")) {
                println!("  [{:?}] {}: {}", c.status, c.id, c.detail);
            }
        }
    }
}
