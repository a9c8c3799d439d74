//! Connecting maps of short exact sequences: the Arason sequence over Z/2,
//! where ∂ = χ ⌣ (−), and the Bockstein for Z/d → Z/d² → Z/d.
//!
//! Run with `cargo run --example bockstein_arason`.

use cohomkern::cohomology::{bockstein, DegreePolicy, SequenceCohomology, ZnModule};
use cohomkern::groups::{make_group, Family};
use cohomkern::sequences::{build_sequence, verify_arason, SequenceFamily};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let policy = DegreePolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rep = verify_arason(2, 100, &policy, &mut rng);
    for c in &rep.claims {
        println!("[{:?}] {}: {}", c.status, c.id, c.detail);
    }

    let g = make_group(3, 1, 1, Family::Cyclic).expect("cyclic");
    let seq = build_sequence(g, SequenceFamily::Cyclic).expect("sequence builds");
    let sc = SequenceCohomology::new(&seq, &policy);
    let big = ZnModule::trivial("Z/9", 9, 1, sc.table.order());
    let h1 = sc.h(1, 1).expect("small");
    let z = &h1.generators()[0];
    let b = bockstein(&sc.table, &big, z).expect("lifts");
    let h2 = sc.h(1, 2).expect("small");
    println!(
        "Z/3: Bockstein of the generator of H^1 has class {:?} in H^2 = {:?}",
        h2.classify(&b).unwrap(),
        h2.invariant_factors()
    );
}
