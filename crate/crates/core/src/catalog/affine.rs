//! The affine line: a resolution of the diagonal of `A¹ × A¹` over
//! `k[x1, x2]`, assembled as a cone between two rows of free modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{CatalogEntry, CatalogError, Mutation};
use crate::bimodcalc::{cone_label, ConeLabels};
use crate::complexes::{cone, koszul_complex, ChainComplex, ChainMap, DiagonalSpec};
use crate::polyring::{PolyMatrix, PolyRing, QuotientRing};
use crate::scalars::FieldSpec;
use crate::witness::{ConeSplit, FactorMorphism, GenerationWitness, GeneratorDecl, Step, Summand, WeakCertificate};

/// The syzygy of `(1 x1 x2)` as printed in the figure; it does not
/// compose to zero with that row.
pub const FIGURE_SYZYGY: [&str; 3] = ["0", "x1", "-x2"];

/// The syzygy used instead.
pub const SYZYGY: [&str; 3] = ["0", "x2", "-x1"];

pub(crate) fn affine_ring(field: FieldSpec) -> Arc<QuotientRing> {
    QuotientRing::free(PolyRing::grevlex(&["x1", "x2"], field).expect("valid names"))
}

fn labels(spec: &[(i64, &[&str])]) -> BTreeMap<i64, Vec<String>> {
    spec.iter()
        .map(|(d, l)| (*d, l.iter().map(|s| s.to_string()).collect()))
        .collect()
}

fn matrix(ring: &Arc<QuotientRing>, rows: &[&[&str]]) -> PolyMatrix {
    let grid: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    PolyMatrix::parse(ring.ambient(), &grid, cols).expect("valid entries")
}

/// The free model of `I_0 = cone(O_{A×A} -> O_0)[-1]`: `R <- R³ <- R` in
/// degrees -1..=1, with the cell `O` for `O_{A×A}` and `pt` for the
/// Koszul resolution of the origin.
fn middle_row(ring: &Arc<QuotientRing>, syzygy: [&str; 3]) -> Result<ChainComplex, CatalogError> {
    let diffs = BTreeMap::from([
        (0, matrix(ring, &[&["1", "x1", "x2"]])),
        (1, matrix(ring, &[&[syzygy[0]], &[syzygy[1]], &[syzygy[2]]])),
    ]);
    Ok(ChainComplex::new(ring.clone(), -1, vec![1, 3, 1], diffs)?.with_labels(labels(&[
        (-1, &["pt/0/0"]),
        (0, &["O/0/0", "pt/1/0", "pt/1/1"]),
        (1, &["pt/2/0"]),
    ]))?)
}

/// `O_{A×A}` in degree 0 next to the Koszul resolution of the origin in
/// degrees -1..=1, and its map into the middle row.
fn vertical_map(ring: &Arc<QuotientRing>, middle: ChainComplex) -> Result<ChainMap, CatalogError> {
    let diffs = BTreeMap::from([
        (0, matrix(ring, &[&["0", "x1", "x2"]])),
        (1, matrix(ring, &[&["0"], &["x2"], &["-x1"]])),
    ]);
    let bottom = ChainComplex::new(ring.clone(), -1, vec![1, 3, 1], diffs)?.with_labels(labels(&[
        (-1, &["K/0/0"]),
        (0, &["Top/0/0", "K/1/0", "K/1/1"]),
        (1, &["K/2/0"]),
    ]))?;
    let maps = BTreeMap::from([
        (-1, matrix(ring, &[&["1"]])),
        (0, matrix(ring, &[&["x1 - x2", "0", "0"], &["-1", "1", "0"], &["1", "0", "1"]])),
        (1, matrix(ring, &[&["1"]])),
    ]);
    Ok(ChainMap::new(bottom, middle, maps)?)
}

fn diagonal(ring: &Arc<QuotientRing>) -> Result<DiagonalSpec, CatalogError> {
    Ok(DiagonalSpec::parse(ring.clone(), &["x1 - x2"], 0, &["0", "1", "0", "0"])?)
}

/// The total complex with ranks 1, 4, 4, 1 in degrees -1..=2.
pub fn build_affine_line(field: FieldSpec) -> Result<CatalogEntry, CatalogError> {
    let ring = affine_ring(field);
    let middle = middle_row(&ring, SYZYGY)?;
    let f = vertical_map(&ring, middle)?;
    let total = cone(&f);
    let complex = ChainComplex::new(ring.clone(), total.lo(), total.ranks().to_vec(), total.differentials().clone())?
        .with_labels(total.all_labels().clone())?;
    Ok(CatalogEntry {
        name: "affine-line".into(),
        ring: ring.clone(),
        diagonal: diagonal(&ring)?,
        witness: Some(affine_witness(&ring)?),
        complex,
        notes: vec![
            "cone of the two-row figure for the diagonal of the affine line".into(),
            format!(
                "syzygy column ({}) used in place of the printed ({}), which does not compose to zero",
                SYZYGY.join("; "),
                FIGURE_SYZYGY.join("; ")
            ),
            "finite free resolution; no truncation".into(),
        ],
    })
}

fn affine_witness(ring: &Arc<QuotientRing>) -> Result<GenerationWitness, CatalogError> {
    let field = ring.field();
    let whole = ChainComplex::new(ring.clone(), 0, vec![1], BTreeMap::new())?.with_labels(labels(&[(0, &["O/0/0"])]))?;
    let origin = koszul_complex(ring.clone(), &[ring.parse_poly("x1")?, ring.parse_poly("x2")?])?.with_labels(labels(&[
        (0, &["O/0/0"]),
        (1, &["O/1/0", "O/1/1"]),
        (2, &["O/2/0"]),
    ]))?;
    let models = BTreeMap::from([
        ("O_AA".to_string(), whole),
        ("O_0".to_string(), origin),
        ("I_0".to_string(), middle_row(ring, SYZYGY)?),
    ]);

    // first factor: k[x], O_A -> O_0 lifted to R -> (R <-x- R)
    let line = QuotientRing::free(PolyRing::grevlex(&["x"], field)?);
    let src = ChainComplex::new(line.clone(), 0, vec![1], BTreeMap::new())?;
    let tgt = ChainComplex::new(line.clone(), 0, vec![1, 1], BTreeMap::from([(1, matrix(&line, &[&["x"]]))]))?;
    let factor = ChainMap::new(src, tgt, BTreeMap::from([(0, matrix(&line, &[&["1"]]))]))?;
    let certificate = WeakCertificate::cone_of_product("O_AA", "O_0", -1)
        .with_split(ConeSplit::new(&[("O", "O")], &[("pt", "O")]))
        .with_factor(FactorMorphism {
            map: factor,
            probes: [0, 1, 2].iter().map(|&a| vec![field.from_i64(a)]).collect(),
            labels: ConeLabels::new("O_A", &cone_label("O_A", "O_0"), "O_0"),
        });
    Ok(GenerationWitness {
        generators: vec![
            GeneratorDecl::product("O_AA"),
            GeneratorDecl::product("O_0"),
            GeneratorDecl::weakly_product("I_0", certificate),
        ],
        steps: vec![
            Step::new(vec![Summand::new("I_0", 0, &[("O", "O"), ("pt", "pt")])]),
            Step::new(vec![
                Summand::new("O_AA", 1, &[("Top", "O")]),
                Summand::new("O_0", 0, &[("K", "O")]),
            ]),
        ],
        models,
    })
}

fn entry_change(c: &ChainComplex, degree: i64, row: usize, col: usize, text: &str) -> Result<ChainComplex, CatalogError> {
    let mut diffs = c.differentials().clone();
    let ring = c.ring();
    let d = diffs.get_mut(&degree).expect("degree has a differential");
    d.set(row, col, ring.parse_poly(text)?);
    Ok(ChainComplex::unchecked(ring.clone(), c.lo(), c.ranks().to_vec(), diffs)?.with_labels(c.all_labels().clone())?)
}

/// Five single-entry changes: three in the differentials, two in the
/// augmentation row.
pub fn affine_line_mutations(field: FieldSpec) -> Result<Vec<Mutation>, CatalogError> {
    let e = build_affine_line(field)?;
    let ring = &e.ring;
    let diag = e.diagonal.clone();
    let aug = |row: [&str; 4]| -> Result<DiagonalSpec, CatalogError> { Ok(DiagonalSpec::parse(ring.clone(), &["x1 - x2"], 0, &row)?) };
    let m = |description: &str, complex: ChainComplex, diagonal: DiagonalSpec| Mutation {
        description: description.into(),
        complex,
        diagonal,
    };
    Ok(vec![
        m("syzygy entry x2 replaced by the printed x1", entry_change(&e.complex, 1, 2, 3, FIGURE_SYZYGY[1])?, diag.clone()),
        m("x1 - x2 replaced by x1 + x2 in d_1", entry_change(&e.complex, 1, 1, 0, "x1 + x2")?, diag.clone()),
        m("vertical map 1 replaced by -1 in d_2", entry_change(&e.complex, 2, 3, 0, "-1")?, diag.clone()),
        m("augmentation 1 replaced by x1", e.complex.clone(), aug(["0", "x1", "0", "0"])?),
        m("augmentation 0 replaced by 1 on the Koszul generator", e.complex.clone(), aug(["1", "1", "0", "0"])?),
    ])
}
