//! All structural checks on the closed models with b1 = 1, 2 and on Z/3.
//!
//! cargo run --release --example corollaries

use clover::quotient::Ring;
use clover::report::{emit_reports, Format};
use clover::verify::{corollary_suite, labeled_closed_model};
use num_bigint::BigInt;

fn main() -> clover::error::Result<()> {
    for (b1, torsion) in [(1, vec![]), (2, vec![]), (0, vec![BigInt::from(3)])] {
        let (label, m) = labeled_closed_model(b1, &torsion);
        let reports = corollary_suite(&m, &label, 3, Ring::Q, &Default::default())?;
        print!("{}", emit_reports(&reports, Format::Text));
    }
    Ok(())
}
