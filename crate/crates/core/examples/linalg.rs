//! Exact linear algebra over Z/m: Howell form, kernels, solving, Smith form
//! and subquotient presentations.
//!
//! Run with `cargo run --example linalg`.

use cohomkern::znz::{howell, kernel, smith_form, solve, subquotient, MatrixZn};

fn main() {
    let a = MatrixZn::from_rows(4, 3, &[vec![2, 0, 1], vec![0, 2, 2], vec![2, 2, 3]]);
    println!("A over Z/4:\n{a}");
    let h = howell(&a);
    println!("Howell form:\n{}", h.matrix());
    println!(
        "row orders {:?}, span order {}",
        h.row_orders(),
        h.span_order()
    );

    let k = kernel(&a);
    println!("left kernel basis:\n{k}");
    assert!(k.mul(&a).is_zero());

    let b = a.apply(&[1, 3, 0]);
    let x = solve(&a, &b).expect("b is in the row span");
    println!("x A = {b:?} solved by x = {x:?}");
    assert_eq!(a.apply(&x), b);

    let s = smith_form(&MatrixZn::from_rows(9, 2, &[vec![3, 6], vec![0, 3]]));
    println!("Smith diagonal over Z/9: {:?}", s.diagonal);

    let num = MatrixZn::identity(2, 9);
    let den = MatrixZn::from_rows(9, 2, &[vec![3, 0]]);
    let q = subquotient(&num, &den).expect("denominator inside numerator");
    println!("(Z/9)^2 / <(3,0)> = factors {:?}", q.invariant_factors());
}
