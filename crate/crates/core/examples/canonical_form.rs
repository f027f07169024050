//! Canonical keys and AS signs of a few hand-written graphs.
//!
//! cargo run --example canonical_form

use clover::canon::canonicalize;
use clover::graph::ColoredGraph;

fn main() -> clover::error::Result<()> {
    let inputs = [
        "deg=1; legs=[x,y,z]; edges=[v0.0-l0, v0.1-l1, v0.2-l2]",
        // same tripod with two legs swapped: reversed cyclic order
        "deg=1; legs=[x,z,y]; edges=[v0.0-l0, v0.1-l1, v0.2-l2]",
        "deg=1; legs=[x,x,y]; edges=[v0.0-l0, v0.1-l1, v0.2-l2]",
        "deg=2; legs=[]; edges=[v0.0-v1.0, v0.1-v1.1, v0.2-v1.2]",
        "deg=2; legs=[x,y]; edges=[v0.0-v1.0, v0.1-v1.1, v0.2-l0, v1.2-l1]",
    ];
    for text in inputs {
        let g: ColoredGraph = text.parse()?;
        let (c, sign) = canonicalize(&g)?;
        let tag = if c.is_degenerate() { " (G = -G)" } else { "" };
        println!("{text}\n  -> {:+} {c}{tag}", sign.to_i32());
    }
    Ok(())
}
