//! Closed and open brackets of a star graph.
//!
//! cargo run --example brane_bracket

use clover::graph::Diagram;
use clover::model::ManifoldModel;
use clover::relations::{bracket_closed, bracket_open, StarGraph};
use num_bigint::BigInt;

const MODEL: &str = r#"{
  "b1": 1,
  "link": [{"name": "x", "class_free": [1]}, {"name": "y", "class_free": [1]}],
  "h2_generators": [{"name": "S", "pairing": {"x": 1, "y": 1}}],
  "h2_complete": true
}"#;

fn main() -> clover::error::Result<()> {
    let m = ManifoldModel::from_json(MODEL)?;
    // H-graph with legs (*, x, x, y)
    let g: Diagram =
        "deg=2; legs=[*,x,x,y]; edges=[v0.0-v1.0, v0.1-l0, v0.2-l1, v1.1-l2, v1.2-l3]".parse()?;
    let star = StarGraph::new(g)?;

    println!("symbolic gluings (one per non-star leg):");
    for (l, c, glued) in star.gluings() {
        println!("  [S].[{c}] * glue(*, leg {l}) = {glued}");
    }
    println!("\n<G, S> =\n{}", bracket_closed(&star, 0, &m)?);

    let a = [BigInt::from(1), BigInt::from(-1)];
    let p = [BigInt::from(2), BigInt::from(0)];
    println!(
        "\n<G, S0> for S0 bounding x - y =\n{}",
        bracket_open(&star, &a, &p, &m)?
    );
    Ok(())
}
