//! Generator counts per degree, with and without disconnected graphs.
//!
//! cargo run --release --example enumerate_generators

use clover::color::colors;
use clover::enumerate::{enumerate_with, EnumerationOptions};

fn main() -> clover::error::Result<()> {
    let connected = EnumerationOptions {
        connected_only: true,
        ..Default::default()
    };
    let all = EnumerationOptions::default();
    for alphabet in [colors(&[]), colors(&["x"]), colors(&["x", "y"])] {
        let names: Vec<String> = alphabet.iter().map(|c| c.to_string()).collect();
        println!("alphabet {{{}}}", names.join(","));
        for d in 0..=3 {
            let b = enumerate_with(d, &alphabet, &all)?;
            let c = enumerate_with(d, &alphabet, &connected)?;
            println!(
                "  degree {d}: {} generators, {} degenerate, {} connected",
                b.generators.len(),
                b.degenerates.len(),
                c.len()
            );
        }
    }
    let theta = enumerate_with(2, &[], &all)?;
    println!("degree 2, no legs:");
    for g in theta.all() {
        println!("  {g}");
    }
    Ok(())
}
