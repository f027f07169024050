//! The tower B, A, Ao, Aphi for a few closed models.
//!
//! cargo run --release --example rank_table [degree_max]

use clover::groups::tower;
use clover::model::closed_rational_model;
use clover::quotient::Ring;
use clover::report::RankTable;
use num_bigint::BigInt;

fn main() -> clover::error::Result<()> {
    let degree_max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let models = [
        ("b1=1", closed_rational_model(1, &[]), Ring::Q),
        ("b1=2", closed_rational_model(2, &[]), Ring::Q),
        (
            "Z/3, over Z",
            closed_rational_model(0, &[BigInt::from(3)]),
            Ring::Z,
        ),
    ];
    for (name, m, ring) in models {
        let towers = (0..=degree_max)
            .map(|d| tower(&m, d, ring, &Default::default()))
            .collect::<clover::error::Result<Vec<_>>>()?;
        println!("{name}");
        print!("{}", RankTable::from_towers(&towers).to_text(false));
        println!();
    }
    Ok(())
}
