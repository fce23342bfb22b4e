//! Executable encodings of the worked examples: the affine line, the nodal
//! conic and the cycle of projective lines, checked chart by chart.

mod affine;
mod cells;
mod cycle;
mod nodal;
mod resolution;

use std::sync::Arc;

use thiserror::Error;

use crate::complexes::{verify_diagonal_qiso, ChainComplex, ComplexError, DiagonalSpec, VerificationReport};
use crate::groebner::{GroebnerError, Submodule};
use crate::polyring::{PolyError, Polynomial, QuotientRing, RingHom};
use crate::witness::{verify_witness, GenerationWitness, WitnessError, WitnessReport};

pub use affine::{affine_line_mutations, build_affine_line, FIGURE_SYZYGY, SYZYGY};
pub use cycle::{build_chart, build_cycle, cycle_chart_mutations, ChartId, ChartJob, ChartKind, ChartReport, CycleCatalog, CycleReport, Expectation};
pub use cells::{Cell, CellComplex, CellMap, Totalized};
pub use nodal::{build_nodal_conic, build_nodal_product, nodal_conic_mutations, nodal_product_mutations};
pub use resolution::{FactorModule, Resolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid cell complex: {0}")]
    Cell(String),
    #[error("no lift for D_{r} at module degree {p}, resolution degree {q}")]
    Lift { r: i64, p: i64, q: i64 },
    #[error("cycle of projective lines needs n >= 3, got {0}")]
    CycleLength(usize),
    #[error("chart ({0}, {1}) is outside 1..=n")]
    Chart(usize, usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A verified-by-construction example: a free complex with its expected
/// diagonal and generation witness.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub ring: Arc<QuotientRing>,
    pub complex: ChainComplex,
    pub diagonal: DiagonalSpec,
    pub witness: Option<GenerationWitness>,
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn verify(&self) -> Result<VerificationReport, ComplexError> {
        verify_diagonal_qiso(&self.complex, &self.diagonal)
    }

    /// Checks the generation witness, if the entry has one.
    pub fn verify_witness(&self) -> Option<Result<WitnessReport, WitnessError>> {
        self.witness
            .as_ref()
            .map(|w| verify_witness(w, &self.complex, &self.diagonal))
    }
}

/// A catalog entry with one deliberately wrong coefficient.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub description: String,
    pub complex: ChainComplex,
    pub diagonal: DiagonalSpec,
}

impl Mutation {
    pub fn verify(&self) -> Result<VerificationReport, ComplexError> {
        verify_diagonal_qiso(&self.complex, &self.diagonal)
    }
}

/// How a cell complex is turned into a catalog entry.
#[derive(Clone, Debug)]
pub(crate) struct Blueprint {
    pub cells: CellComplex,
    pub i0: i64,
    pub anchors: Vec<(String, Polynomial)>,
    pub ideal: Submodule,
}

/// Window above the designated degree in which truncated models are exact.
pub const WINDOW_ABOVE: i64 = 3;

/// Length of the one-factor resolutions used by weakly product certificates.
pub(crate) const FACTOR_LENGTH: usize = 5;

/// Extra degrees computed for generator models, so that shifted copies
/// still cover the truncated entry.
pub(crate) const MODEL_MARGIN: i64 = 2;

/// Totalizes a small cell complex, e.g. the model of one generator,
/// trusted below its top degree.
pub(crate) fn cell_model(
    ring: &Arc<QuotientRing>,
    factor_vars: &[(usize, usize)],
    cells: Vec<Cell>,
    maps: Vec<CellMap>,
    top: i64,
) -> Result<ChainComplex, CatalogError> {
    if cells.is_empty() {
        return Ok(ChainComplex::zero(ring.clone()));
    }
    let c = CellComplex::new(ring.clone(), factor_vars.to_vec(), cells, maps)?
        .totalize(top)?
        .complex;
    let lo = c.lo();
    Ok(c.with_window(lo - 1, top - 1)?)
}

impl Blueprint {
    pub fn top(&self) -> i64 {
        self.i0 + WINDOW_ABOVE + 1
    }

    /// Totalizes at `i0 + WINDOW_ABOVE + 1`, solves the augmentation and
    /// records the exactness window `[i0 - 1, i0 + WINDOW_ABOVE]`.
    pub fn assemble(&self) -> Result<(ChainComplex, DiagonalSpec, bool), CatalogError> {
        let t = self.cells.totalize(self.top())?;
        let anchors: Vec<(&str, Polynomial)> = self.anchors.iter().map(|(l, v)| (l.as_str(), v.clone())).collect();
        let (eps, complete) = t.augmentation(self.i0, &anchors, &self.ideal)?;
        let complex = t.complex.with_window(self.i0 - 1, self.i0 + WINDOW_ABOVE)?;
        let diagonal = DiagonalSpec::new(self.ideal.clone(), self.i0, eps)?;
        Ok((complex, diagonal, complete))
    }

    pub fn mutate(&self, description: &str, maps: Vec<CellMap>) -> Result<Mutation, CatalogError> {
        let bp = Blueprint {
            cells: self.cells.with_maps(maps)?,
            ..self.clone()
        };
        let (complex, diagonal, _) = bp.assemble()?;
        Ok(Mutation {
            description: description.to_string(),
            complex,
            diagonal,
        })
    }
}

/// Pulls a catalog complex back along a ring homomorphism, entrywise.
pub fn restrict_complex(entry: &CatalogEntry, hom: &RingHom) -> Result<ChainComplex, CatalogError> {
    Ok(entry.complex.restrict(hom)?)
}
