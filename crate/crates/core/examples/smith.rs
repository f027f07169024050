//! Smith and Hermite normal forms of a small integer matrix.
//!
//! cargo run --example smith

use clover::linalg::{determinant, hermite_normal_form, smith_normal_form, IntegerMatrix};

fn show(name: &str, m: &IntegerMatrix) {
    println!("{name} =");
    for row in m.to_dense() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
        println!("  [{}]", cells.join(""));
    }
}

fn main() {
    let a = IntegerMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    show("A", &a);
    let s = smith_normal_form(&a);
    show("D", &s.d);
    println!(
        "det U = {}, det V = {}",
        determinant(&s.u),
        determinant(&s.v)
    );
    assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    let h = hermite_normal_form(&a);
    show("H", &h.h);
    println!("rank {}, pivots {:?}", h.rank, h.pivot_cols);
}
