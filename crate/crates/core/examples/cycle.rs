//! Verifies every chart of `I_n × I_n` for a cycle of projective lines.
//! Usage: `cargo run --release --example cycle -- [n]`.

use diagres::catalog::build_cycle;
use diagres::scalars::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let catalog = build_cycle(n, FieldSpec::default())?;
    let (diagonal, adjacent, distant) = catalog.counts();
    println!("I_{n}: {diagonal} diagonal, {adjacent} adjacent, {distant} distant charts");
    let report = catalog.verify()?;
    for c in &report.charts {
        println!("  chart {} {:?}: ranks {:?}, passed {}", c.id, c.kind, c.ranks, c.passed);
    }
    match report.conclusion {
        Some(c) => println!("{c}"),
        None => println!("some chart failed"),
    }
    Ok(())
}
