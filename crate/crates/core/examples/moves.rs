//! Kirby-type moves and the verification of their induced maps.
//!
//! cargo run --release --example moves

use clover::model::closed_rational_model;
use clover::moves::{apply_move_to_model, verify_isomorphism, Move};
use clover::quotient::Ring;

fn main() -> clover::error::Result<()> {
    let m = closed_rational_model(2, &[]);
    for text in ["m1:x:y:+1", "m2:x:-1", "m3:insert:u:x=1"] {
        let mv: Move = text.parse()?;
        let target = apply_move_to_model(&m, &mv)?;
        let names: Vec<String> = target
            .components
            .iter()
            .map(|c| c.name.to_string())
            .collect();
        println!("{mv}: components [{}]", names.join(", "));
        for ring in [Ring::Q, Ring::Z] {
            let r = verify_isomorphism(&mv, 2, &m, ring, &Default::default())?;
            println!("{r}\n");
        }
    }
    Ok(())
}
