//! IHX, LOOP and brane relations in low degree.
//!
//! cargo run --release --example relations

use clover::enumerate::{enumerate, enumerate_star};
use clover::model::closed_rational_model;
use clover::relations::{br_relations, ihx_relations, loop_relations};

fn main() -> clover::error::Result<()> {
    let phi = enumerate(2, &[])?;
    println!("IHX in degree 2 without legs:");
    for r in ihx_relations(&phi) {
        println!("{r}\n");
    }
    println!("LOOP relations: {}", loop_relations(&phi).len());

    let m = closed_rational_model(1, &[]);
    let stars = enumerate_star(2, &m.alphabet(), &Default::default())?;
    let br = br_relations(&stars, &m)?;
    println!("\nBR in degree 2 over {{x}}: {} relations", br.len());
    for r in br.iter().take(3) {
        println!("{r}\n");
    }
    Ok(())
}
