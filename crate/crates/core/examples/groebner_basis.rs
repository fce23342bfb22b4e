//! Gröbner bases, membership and syzygies for the twisted cubic.

use diagres::groebner::{buchberger, syzygies, FreeVector, Submodule};
use diagres::polyring::{PolyMatrix, PolyRing, QuotientRing};
use diagres::scalars::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let amb = PolyRing::grevlex(&["x", "y", "z", "w"], FieldSpec::Rationals)?;
    let ring = QuotientRing::free(amb.clone());
    let gens = ["x*z - y^2", "y*w - z^2", "x*w - y*z"];
    let ideal = Submodule::parse_ideal(ring.clone(), &gens)?;
    let gb = buchberger(&ideal);
    println!("reduced basis:");
    for g in gb.to_strings() {
        println!("  {g}");
    }
    for probe in ["x^2*w^2 - y^2*z^2", "x*y - z*w"] {
        let v = FreeVector::parse(&ring, &[probe])?;
        println!("{probe} in I: {}, normal form {}", gb.contains(&v)?, gb.normal_form(&v)?);
    }

    let m = PolyMatrix::parse(&amb, &[gens.to_vec()], 3)?;
    let syz = syzygies(ring, &m)?;
    println!("syzygies of the generators:");
    for s in syz.gens() {
        println!("  {s}");
    }
    Ok(())
}
