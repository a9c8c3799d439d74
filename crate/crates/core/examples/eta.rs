//! The connecting map η: Hⁿ(M̄₄) → Hⁿ⁺¹(M̄₁), computed generically and by
//! closed form, and through the two short sequences around Δ.
//!
//! Run with `cargo run --example eta`.

use cohomkern::cohomology::{verify_eta, DegreePolicy, SequenceCohomology};
use cohomkern::groups::{make_group, Family};
use cohomkern::sequences::{build_sequence, SequenceFamily};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let policy = DegreePolicy::default();
    let cases = [
        (3, 1, 1, Family::Cyclic, SequenceFamily::Cyclic),
        (3, 2, 2, Family::Dihedral, SequenceFamily::DihedralClassic),
        (5, 4, 2, Family::Semidirect, SequenceFamily::Semidirect),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (d, s, t, gf, sf) in cases {
        let g = make_group(d, s, t, gf).expect("valid group");
        let seq = build_sequence(g, sf).expect("sequence builds");
        let sc = SequenceCohomology::new(&seq, &policy);
        let h = sc.h(4, 1).expect("small");
        let c = &h.generators()[0];
        let generic = sc.eta(c).expect("eta defined");
        let closed = sc.eta_closed(c);
        let same = sc
            .cohomologous(&sc.bar[0], &generic, &closed)
            .expect("small");
        println!("{g} [{sf}]: eta(generator) ~ closed form: {same}");
        for claim in verify_eta(&sc, 1, 10, &mut rng).expect("small") {
            println!("  [{:?}] {}: {}", claim.status, claim.id, claim.detail);
        }
    }
}
