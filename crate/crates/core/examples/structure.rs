//! Structural identities: the B lemma, M₄ as a quotient of Ind_J, the kernel
//! diagram, and the s = 2 sequences built from 1 ± στ.
//!
//! Run with `cargo run --example structure`.

use cohomkern::groups::{make_group, Family};
use cohomkern::report::VerificationReport;
use cohomkern::sequences::{
    build_sequence, verify_b_identities, verify_kernel_diagram, verify_m4_structure,
    verify_oldlemma14, SequenceFamily,
};

fn show(title: &str, rep: &VerificationReport) {
    println!("{title}");
    for c in &rep.claims {
        println!("  [{:?}] {}: {}", c.status, c.id, c.detail);
    }
}

fn main() {
    let g = make_group(13, 4, 5, Family::Semidirect).expect("valid group");
    show(
        "B identities on (13,4,5)",
        &verify_b_identities(g).expect("semidirect"),
    );
    let seq = build_sequence(g, SequenceFamily::Semidirect).expect("sequence builds");
    show("M4 structure", &verify_m4_structure(&seq).expect("s even"));
    show(
        "kernel diagram",
        &verify_kernel_diagram(&seq).expect("s even"),
    );

    let s3 = make_group(3, 2, 2, Family::Dihedral).expect("S3");
    let seq = build_sequence(s3, SequenceFamily::DihedralClassic).expect("sequence builds");
    show(
        "s = 2 sequences on S3",
        &verify_oldlemma14(&seq).expect("s = 2"),
    );
}
