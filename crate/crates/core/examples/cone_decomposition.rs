//! Splits a graded linear map into kernel, rank and cokernel parts and reads
//! off the cone image `(U ⊗ G2)[1] ⊕ (V ⊗ cone) ⊕ (W ⊗ G2')`.

use std::collections::BTreeMap;

use diagres::bimodcalc::{cone_image_decomposition, decompose, ConeLabels, GradedLinearMap, GradedVectorSpace};
use diagres::linalg::DenseMatrix;
use diagres::scalars::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = FieldSpec::Rationals;
    let source = GradedVectorSpace::new([(0, 2), (1, 1)]);
    let target = GradedVectorSpace::new([(0, 2), (1, 2)]);
    let mut maps = BTreeMap::new();
    maps.insert(0, DenseMatrix::from_i64(field, &[&[1, 0], &[0, 0]]));
    maps.insert(1, DenseMatrix::from_i64(field, &[&[2], &[4]]));
    let phi = GradedLinearMap::new(field, source, target, maps)?;

    let dec = decompose(&phi);
    for d in [0, 1] {
        println!(
            "degree {d}: dim U {}, dim V {}, dim W {}, reassembles: {}",
            dec.u.dim(d),
            dec.v.dim(d),
            dec.w.dim(d),
            dec.reassemble(field, d) == phi.matrix(d)
        );
    }

    let labels = ConeLabels::new("G2", "cone(G2 -> G2')", "G2'");
    for t in cone_image_decomposition(&phi, &labels).terms {
        println!("  {} x {} in degree {}", t.multiplicity, t.label, t.degree);
    }
    Ok(())
}
