//! Verifies the resolution of the diagonal of the affine line and its
//! generation witness.

use diagres::catalog::{affine_line_mutations, build_affine_line};
use diagres::scalars::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let entry = build_affine_line(FieldSpec::Rationals)?;
    println!("{} over {}", entry.name, entry.ring.field().descriptor());
    println!("ranks {:?}", entry.complex.ranks());

    let report = entry.verify()?;
    for d in &report.exactness {
        println!("  H_{} = 0: {}", d.degree, d.exact);
    }
    println!(
        "  H_{} = R/(x1 - x2): {}",
        report.i0,
        report.well_defined && report.surjective && report.injective
    );

    if let Some(w) = entry.verify_witness() {
        let w = w?;
        println!("witness passed: {}", w.passed);
        if let Some(c) = w.conclusion {
            println!("  {c}");
        }
    }

    for m in affine_line_mutations(FieldSpec::Rationals)? {
        let r = m.verify()?;
        println!("mutation `{}`: first failure {:?}", m.description, r.first_failure);
    }
    Ok(())
}
