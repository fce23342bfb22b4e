//! Writes a catalog chart as a job file, reads it back and verifies it.

use diagres::catalog::{build_chart, ChartId};
use diagres::cli::JobFile;
use diagres::complexes::verify_diagonal_qiso;
use diagres::scalars::FieldSpec;
use diagres::witness::verify_witness;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let id = ChartId::new(1, 2, 3)?;
    let chart = build_chart(3, id, FieldSpec::Rationals)?;
    let text = JobFile::from_chart(3, &chart).to_json();
    println!("job file: {} bytes", text.len());

    let job = JobFile::from_json(&text)?.build(Some(FieldSpec::prime(32003)?), Some(&text))?;
    let diagonal = job.diagonal.as_ref().expect("adjacent charts compare with a diagonal");
    let qiso = verify_diagonal_qiso(&job.complex, diagonal)?;
    println!("{} over {}: passed {}", job.name, job.ring.field().descriptor(), qiso.passed);
    if let Some(w) = &job.witness {
        let r = verify_witness(w, &job.complex, diagonal)?;
        println!("witness: {}", r.conclusion.unwrap_or_else(|| "failed".into()));
    }

    let mut value: serde_json::Value = serde_json::from_str(&text)?;
    value["complex"]["differentials"]["1"][0][0] = "x +* y".into();
    let broken = serde_json::to_string_pretty(&value)?;
    if let Err(e) = JobFile::from_json(&broken).and_then(|f| f.build(None, Some(&broken))) {
        println!("corrupted copy rejected: {e}");
    }
    Ok(())
}
