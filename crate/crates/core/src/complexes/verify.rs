use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ChainComplex, ComplexError};
use crate::groebner::{buchberger, Elimination, FreeVector, Submodule};
use crate::polyring::{PolyMatrix, Polynomial, QuotientRing};

/// A cyclic module `R / I_Δ` sitting in degree `i0`, detected through an
/// augmentation row `ε: C_{i0} -> R`.
#[derive(Clone, Debug)]
pub struct DiagonalSpec {
    ideal: Submodule,
    i0: i64,
    augmentation: Vec<Polynomial>,
}

impl DiagonalSpec {
    pub fn new(ideal: Submodule, i0: i64, augmentation: Vec<Polynomial>) -> Result<Self, ComplexError> {
        if ideal.rank() != 1 || buchberger(&ideal).is_unit_ideal() {
            return Err(ComplexError::BadDiagonalIdeal);
        }
        if augmentation.iter().all(Polynomial::is_zero) {
            return Err(ComplexError::ZeroAugmentation);
        }
        if augmentation.iter().any(|p| **p.ring() != **ideal.ring().ambient()) {
            return Err(ComplexError::RingMismatch);
        }
        Ok(DiagonalSpec {
            ideal,
            i0,
            augmentation,
        })
    }

    pub fn parse<S: AsRef<str>>(
        ring: Arc<QuotientRing>,
        ideal: &[S],
        i0: i64,
        augmentation: &[S],
    ) -> Result<Self, ComplexError> {
        let ideal = Submodule::parse_ideal(ring.clone(), ideal)?;
        let aug = augmentation
            .iter()
            .map(|s| ring.parse_poly(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ideal, i0, aug)
    }

    pub fn ideal(&self) -> &Submodule {
        &self.ideal
    }

    pub fn i0(&self) -> i64 {
        self.i0
    }

    pub fn augmentation(&self) -> &[Polynomial] {
        &self.augmentation
    }

    pub fn with_augmentation(&self, augmentation: Vec<Polynomial>) -> Result<Self, ComplexError> {
        Self::new(self.ideal.clone(), self.i0, augmentation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `d_{i-1} d_i` is nonzero modulo the relations.
    Differential,
    Exactness,
    WellDefined,
    Surjective,
    Injective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub condition: Condition,
    pub degree: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResult {
    pub degree: i64,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub i0: i64,
    pub window: (i64, i64),
    /// Degrees `i` with `d_{i-1} d_i ≢ 0`; other results are meaningless
    /// when this is nonempty.
    pub not_a_complex: Vec<i64>,
    /// Exactness at every window degree other than `i0`, ascending.
    pub exactness: Vec<DegreeResult>,
    pub well_defined: bool,
    pub surjective: bool,
    pub injective: bool,
    pub first_failure: Option<Failure>,
}

/// True iff `ker d_i ⊆ im d_{i+1} + J·C_i`. Degrees outside the complex are
/// vacuously exact.
pub fn homology_is_zero_at(c: &ChainComplex, i: i64) -> Result<bool, ComplexError> {
    if c.rank(i) == 0 {
        return Ok(true);
    }
    let kernel = Elimination::new(c.ring().clone(), &c.d(i), &[])?.kernel();
    contained_in_image(c, i + 1, &kernel)
}

/// Degrees where `C` fails to be a complex or has nonzero homology.
pub fn nonexact_degrees(c: &ChainComplex) -> Result<Vec<i64>, ComplexError> {
    let mut bad: std::collections::BTreeSet<i64> = c.nonzero_squares().into_iter().collect();
    for i in c.lo()..=c.hi() {
        if !homology_is_zero_at(c, i)? {
            bad.insert(i);
        }
    }
    Ok(bad.into_iter().collect())
}

fn contained_in_image(c: &ChainComplex, i: i64, vs: &Submodule) -> Result<bool, ComplexError> {
    if vs.gens().is_empty() {
        return Ok(true);
    }
    let image = Submodule::column_span(c.ring().clone(), &c.d(i));
    let gb = buchberger(&image);
    for v in vs.gens() {
        if !gb.contains(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn row_times(row: &[Polynomial], v: &FreeVector) -> Polynomial {
    let ring = v.ring();
    row.iter()
        .zip(v.comps())
        .fold(Polynomial::zero(ring), |acc, (a, b)| &acc + &(a * b))
}

/// Checks that `C` is exact away from `i0` within its window and that
/// `ε` induces `H_{i0}(C) ≅ R / I_Δ`.
pub fn verify_diagonal_qiso(c: &ChainComplex, spec: &DiagonalSpec) -> Result<VerificationReport, ComplexError> {
    let ring = c.ring().clone();
    if *spec.ideal.ring() != ring {
        return Err(ComplexError::RingMismatch);
    }
    let i0 = spec.i0;
    if i0 < c.lo() || i0 > c.hi() {
        return Err(ComplexError::DegreeOutOfRange { degree: i0 });
    }
    let r0 = c.rank(i0);
    if spec.augmentation.len() != r0 {
        return Err(ComplexError::AugmentationLength {
            expected: r0,
            found: spec.augmentation.len(),
        });
    }
    let window = c.effective_window();
    if i0 < window.0 || i0 > window.1 {
        return Err(ComplexError::DegreeOutOfRange { degree: i0 });
    }

    let not_a_complex = c.nonzero_squares();
    let degrees: Vec<i64> = (window.0..=window.1).filter(|&i| i != i0).collect();
    let exactness = degrees
        .par_iter()
        .map(|&degree| homology_is_zero_at(c, degree).map(|exact| DegreeResult { degree, exact }))
        .collect::<Result<Vec<_>, _>>()?;

    let ideal_gb = buchberger(&spec.ideal);
    let eps = &spec.augmentation;

    // (b) ε kills boundaries modulo I_Δ.
    let d_up = c.d(i0 + 1);
    let mut well_defined = true;
    for col in 0..d_up.cols() {
        let v = FreeVector::new(d_up.column(col))?;
        let p = row_times(eps, &v);
        if !ideal_gb.contains(&FreeVector::new(vec![p])?)? {
            well_defined = false;
            break;
        }
    }

    // (c) ε hits 1 on cycles.
    let kernel = Elimination::new(ring.clone(), &c.d(i0), &[])?.kernel();
    let mut images = spec.ideal.clone();
    for k in kernel.gens() {
        images.push(FreeVector::new(vec![row_times(eps, k)])?)?;
    }
    let surjective = buchberger(&images).is_unit_ideal();

    // (d) cycles with ε in I_Δ are boundaries.
    let d0 = c.d(i0);
    let m = d0.rows();
    let amb = ring.ambient();
    let mut stacked = PolyMatrix::zero(amb, m + 1, r0);
    stacked.set_block(0, 0, &d0);
    for (k, e) in eps.iter().enumerate() {
        stacked.set(m, k, e.clone());
    }
    let target: Vec<FreeVector> = spec
        .ideal
        .gens()
        .iter()
        .map(|g| {
            let mut comps = vec![Polynomial::zero(amb); m + 1];
            comps[m] = g.comps()[0].clone();
            FreeVector::new(comps)
        })
        .collect::<Result<_, _>>()?;
    let restricted = Elimination::new(ring.clone(), &stacked, &target)?.kernel();
    let injective = contained_in_image(c, i0 + 1, &restricted)?;

    let first_failure = not_a_complex
        .first()
        .map(|&degree| Failure {
            condition: Condition::Differential,
            degree,
        })
        .or_else(|| {
            exactness.iter().find(|r| !r.exact).map(|r| Failure {
                condition: Condition::Exactness,
                degree: r.degree,
            })
        })
        .or_else(|| {
            [
                (well_defined, Condition::WellDefined),
                (surjective, Condition::Surjective),
                (injective, Condition::Injective),
            ]
            .into_iter()
            .find(|(ok, _)| !ok)
            .map(|(_, condition)| Failure { condition, degree: i0 })
        });

    Ok(VerificationReport {
        passed: first_failure.is_none(),
        i0,
        window,
        not_a_complex,
        exactness,
        well_defined,
        surjective,
        injective,
        first_failure,
    })
}
