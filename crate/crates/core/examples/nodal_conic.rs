//! Checks both resolutions of the diagonal of the nodal conic `xy = 0` and the
//! certificates that `I_0^x`, `I_0^y` are weakly product.

use diagres::catalog::{build_nodal_conic, build_nodal_product};
use diagres::scalars::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = FieldSpec::default();
    for entry in [build_nodal_product(field)?, build_nodal_conic(field)?] {
        let r = entry.verify()?;
        println!("{}: ranks {:?}, passed {}", entry.name, entry.complex.ranks(), r.passed);
        let Some(w) = entry.verify_witness() else { continue };
        let w = w?;
        for c in &w.certificates {
            println!("  certificate {}: {}", c.label, c.passed);
            for (k, sum) in c.emitted.iter().enumerate() {
                let terms: Vec<String> = sum
                    .terms
                    .iter()
                    .map(|t| format!("{}^{}[{}]", t.label, t.multiplicity, t.degree))
                    .collect();
                println!("    probe {k}: {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
            }
        }
        println!("  generation time {}; {}", w.generation_time, w.conclusion.unwrap_or_default());
    }
    Ok(())
}
