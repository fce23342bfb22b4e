//! The cycle `I_n` of projective lines, checked on the charts `Y_i × Y_j`.
//!
//! `Y_c` is the nodal conic made of `P_c` (the `x` branch, node at `x = 0`)
//! and `P_{c+1}` (the `y` branch). On `P_j` the section `x_{j,+}` vanishes
//! at `p_j` and `x_{j,-}` at `p_{j-1}`; in the chart `Y_j` we trivialize by
//! `x_{j,-}`, so `x_{j,+} = x`, and in `Y_{j-1}` by `x_{j,+}`, so
//! `x_{j,-} = y`. The two coordinates of `P_j` then satisfy `x y = 1` on
//! the overlap.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cells::{Cell, CellComplex, CellMap};
use super::nodal::nodal_ring;
use super::resolution::{branch_to_node, factor_ring, FactorModule::{self, Node, XBranch, YBranch}};
use super::{cell_model, Blueprint, CatalogError, Mutation, FACTOR_LENGTH, MODEL_MARGIN};
use crate::bimodcalc::{cone_label, ConeLabels};
use crate::complexes::{nonexact_degrees, verify_diagonal_qiso, ChainComplex, DiagonalSpec, VerificationReport};
use crate::groebner::Submodule;
use crate::polyring::{PolyRing, QuotientRing};
use crate::scalars::FieldSpec;
use crate::witness::{
    assemble_report, bound_statement, check_certificates, check_structure, ConeSplit, FactorMorphism, GenerationWitness,
    GeneratorDecl, Step, Summand, WeakCertificate, WitnessError, WitnessReport,
};

const FACTOR_VARS: [(usize, usize); 2] = [(0, 1), (2, 3)];
const DIAGONAL_NAMES: [&str; 4] = ["x1", "y1", "x2", "y2"];
const TORUS_NAMES: [&str; 4] = ["x", "y", "u", "v"];

/// The chart `Y_i × Y_j`, indices in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChartId {
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartKind {
    Diagonal,
    Adjacent,
    Distant,
}

impl ChartId {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self, CatalogError> {
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(CatalogError::Chart(i, j));
        }
        Ok(ChartId { i, j })
    }

    pub fn kind(&self, n: usize) -> ChartKind {
        if self.i == self.j {
            ChartKind::Diagonal
        } else if self.j == wrap(n, self.i + 1) || self.i == wrap(n, self.j + 1) {
            ChartKind::Adjacent
        } else {
            ChartKind::Distant
        }
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

impl FromStr for ChartId {
    type Err = String;

    /// Parses `I,J`; range is checked by [`ChartId::new`].
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected I,J, got `{s}`"))?;
        let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad chart index `{t}`: {e}"));
        Ok(ChartId { i: p(a)?, j: p(b)? })
    }
}

/// What the restricted complex must satisfy.
#[derive(Clone, Debug)]
pub enum Expectation {
    QisoTo(DiagonalSpec),
    ExactEverywhere,
}

#[derive(Clone, Debug)]
pub struct ChartJob {
    pub id: ChartId,
    pub kind: ChartKind,
    pub ring: Arc<QuotientRing>,
    pub complex: ChainComplex,
    pub expectation: Expectation,
    /// The global witness restricted to the chart; absent on distant charts.
    pub witness: Option<GenerationWitness>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartReport {
    pub id: ChartId,
    pub kind: ChartKind,
    pub ranks: Vec<usize>,
    pub passed: bool,
    pub qiso: Option<VerificationReport>,
    /// Degrees with nonzero homology or `d² ≠ 0`, for charts expected exact.
    pub nonexact: Vec<i64>,
    pub witness: Option<WitnessReport>,
}

impl ChartJob {
    pub fn verify(&self) -> Result<ChartReport, CatalogError> {
        let mut report = ChartReport {
            id: self.id,
            kind: self.kind,
            ranks: self.complex.ranks().to_vec(),
            passed: true,
            qiso: None,
            nonexact: Vec::new(),
            witness: None,
        };
        match &self.expectation {
            Expectation::QisoTo(spec) => {
                let qiso = verify_diagonal_qiso(&self.complex, spec)?;
                report.passed = qiso.passed;
                if let Some(w) = &self.witness {
                    let steps = check_structure(w, &self.complex).map_err(witness_error)?;
                    let certs = check_certificates(w).map_err(witness_error)?;
                    let wr = assemble_report(w, steps, certs, Some(qiso.clone()));
                    report.passed &= wr.passed;
                    report.witness = Some(wr);
                }
                report.qiso = Some(qiso);
            }
            Expectation::ExactEverywhere => {
                report.nonexact = nonexact_degrees(&self.complex)?;
                report.passed = report.nonexact.is_empty();
            }
        }
        Ok(report)
    }
}

fn witness_error(e: WitnessError) -> CatalogError {
    CatalogError::Cell(format!("chart witness: {e}"))
}

/// All `n²` chart jobs with the global generators and tower.
#[derive(Clone, Debug)]
pub struct CycleCatalog {
    pub n: usize,
    pub jobs: Vec<ChartJob>,
    pub generators: Vec<GeneratorDecl>,
    /// The tower on the global cells; each chart witness is its restriction.
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub n: usize,
    pub passed: bool,
    /// Diagonal, adjacent and distant chart counts.
    pub counts: (usize, usize, usize),
    pub generation_time: usize,
    pub charts: Vec<ChartReport>,
    pub conclusion: Option<String>,
}

impl CycleCatalog {
    pub fn generation_time(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let count = |k: ChartKind| self.jobs.iter().filter(|j| j.kind == k).count();
        (count(ChartKind::Diagonal), count(ChartKind::Adjacent), count(ChartKind::Distant))
    }

    pub fn job(&self, id: ChartId) -> Option<&ChartJob> {
        self.jobs.iter().find(|j| j.id == id)
    }

    /// Verifies every chart in parallel; reports are ordered by `(i, j)`.
    pub fn verify(&self) -> Result<CycleReport, CatalogError> {
        let charts = self.jobs.par_iter().map(ChartJob::verify).collect::<Result<Vec<_>, _>>()?;
        let passed = charts.iter().all(|c| c.passed);
        let k = self.generation_time();
        Ok(CycleReport {
            n: self.n,
            passed,
            counts: self.counts(),
            generation_time: k,
            charts,
            conclusion: passed.then(|| format!("{}; Rdim(D^bCoh(I_{})) ≤ {k}", bound_statement(k), self.n)),
        })
    }
}

fn wrap(n: usize, j: usize) -> usize {
    (j + n - 1) % n + 1
}

/// Which lines and points of `I_n × I_n` meet a chart, and in which
/// coordinates.
struct Geometry {
    n: usize,
    id: ChartId,
    names: [&'static str; 4],
}

impl Geometry {
    fn new(n: usize, id: ChartId) -> Self {
        let names = if id.i == id.j { DIAGONAL_NAMES } else { TORUS_NAMES };
        Geometry { n, id, names }
    }

    fn centre(&self, f: usize) -> usize {
        if f == 0 {
            self.id.i
        } else {
            self.id.j
        }
    }

    fn branch(&self, f: usize, line: usize) -> Option<FactorModule> {
        let c = self.centre(f);
        if line == c {
            Some(XBranch)
        } else if line == wrap(self.n, c + 1) {
            Some(YBranch)
        } else {
            None
        }
    }

    /// Branches of `P_line × P_line` in the chart, if it meets it.
    fn line(&self, line: usize) -> Option<Vec<FactorModule>> {
        Some(vec![self.branch(0, line)?, self.branch(1, line)?])
    }

    fn has_point(&self, m: usize) -> bool {
        self.id.i == m && self.id.j == m
    }

    fn x_plus(&self, f: usize, line: usize) -> &'static str {
        if self.centre(f) == line {
            self.names[2 * f]
        } else {
            "1"
        }
    }

    fn x_minus(&self, f: usize, line: usize) -> &'static str {
        if wrap(self.n, self.centre(f) + 1) == line {
            self.names[2 * f + 1]
        } else {
            "1"
        }
    }

    fn prev(&self, j: usize) -> usize {
        wrap(self.n, j + self.n - 1)
    }
}

fn cell(label: String, degree: i64, factors: Vec<FactorModule>) -> Cell {
    Cell { label, degree, factors }
}

/// Global cell names.
fn f_line(j: usize) -> String {
    format!("F{j}.O")
}
fn f_point(j: usize) -> String {
    format!("F{j}.pt")
}
fn g_line(j: usize) -> String {
    format!("G{j}.O")
}
fn g_point(j: usize) -> String {
    format!("G{j}.pt")
}
fn s_first(j: usize) -> String {
    format!("S1_{j}")
}
fn s_second(j: usize) -> String {
    format!("S2_{j}")
}
fn q_point(j: usize) -> String {
    format!("Q{j}")
}

/// Generator labels.
fn twisted(j: usize) -> String {
    format!("O_P{j}xP{j}(-1,-1)")
}
fn untwisted(j: usize) -> String {
    format!("O_P{j}xP{j}")
}
fn point(j: usize) -> String {
    format!("O_p{j}")
}
fn f_gen(j: usize) -> String {
    format!("F_{j}")
}
fn g_gen(j: usize) -> String {
    format!("G_{j}")
}

/// The two-term complex of the theorem, restricted to a chart: the cells
/// present there and the maps between them.
fn chart_cells(g: &Geometry, ring: &Arc<QuotientRing>) -> Result<(Vec<Cell>, Vec<CellMap>), CatalogError> {
    let node = || vec![Node, Node];
    let mut cells = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for j in 1..=g.n {
        let Some(branches) = g.line(j) else { continue };
        cells.push(cell(f_line(j), 0, branches.clone()));
        cells.push(cell(g_line(j), 0, branches.clone()));
        cells.push(cell(s_first(j), 1, branches.clone()));
        cells.push(cell(s_second(j), 1, branches));
        if g.has_point(j) {
            cells.push(cell(f_point(j), -1, node()));
            arrows.push((f_line(j), f_point(j), "1".into()));
        }
        if g.has_point(g.prev(j)) {
            cells.push(cell(g_point(j), -1, node()));
            arrows.push((g_line(j), g_point(j), "1".into()));
        }
        arrows.push((s_first(j), f_line(j), g.x_plus(0, j).into()));
        arrows.push((s_second(j), f_line(j), format!("-{}", g.x_plus(1, j))));
        arrows.push((s_first(j), g_line(j), format!("-{}", g.x_minus(0, j))));
        arrows.push((s_second(j), g_line(j), g.x_minus(1, j).into()));
    }
    for m in 1..=g.n {
        if g.has_point(m) {
            cells.push(cell(q_point(m), 0, node()));
            arrows.push((q_point(m), f_point(m), "1".into()));
            arrows.push((q_point(m), g_point(wrap(g.n, m + 1)), "1".into()));
        }
    }
    let index: HashMap<&str, usize> = cells.iter().enumerate().map(|(k, c)| (c.label.as_str(), k)).collect();
    let maps = arrows
        .iter()
        .filter_map(|(a, b, c)| Some((*index.get(a.as_str())?, *index.get(b.as_str())?, c)))
        .map(|(from, to, c)| {
            Ok(CellMap {
                from,
                to,
                coeff: ring.parse_poly(c)?,
            })
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    Ok((cells, maps))
}

fn torus_ring(field: FieldSpec) -> Arc<QuotientRing> {
    let amb = PolyRing::grevlex(&TORUS_NAMES, field).expect("valid names");
    QuotientRing::parse(amb, &["x*y", "u*v"]).expect("valid relations")
}

/// Generators of the global witness with their certificates.
fn generator_decls(n: usize, field: FieldSpec) -> Vec<GeneratorDecl> {
    let factor = factor_ring(field);
    let probes: Vec<Vec<_>> = [(0, 0), (1, 0), (0, 1), (3, 0)]
        .iter()
        .map(|&(a, b)| vec![field.from_i64(a), field.from_i64(b)])
        .collect();
    let certificate = |j: usize, target: usize, branch: FactorModule| {
        let tag = format!("O_P{j}");
        WeakCertificate::cone_of_product(&untwisted(j), &point(target), -1)
            .with_split(ConeSplit::new(&[("O", "O")], &[("pt", "O")]))
            .with_factor(FactorMorphism {
                map: branch_to_node(&factor, branch, FACTOR_LENGTH),
                probes: probes.clone(),
                labels: ConeLabels::new(&tag, &cone_label(&tag, &format!("O_p{target}")), &format!("O_p{target}")),
            })
    };
    let mut out = Vec::new();
    for j in 1..=n {
        out.push(GeneratorDecl::product(&twisted(j)));
        out.push(GeneratorDecl::product(&untwisted(j)));
        out.push(GeneratorDecl::product(&point(j)));
    }
    for j in 1..=n {
        out.push(GeneratorDecl::weakly_product(&f_gen(j), certificate(j, j, XBranch)));
        out.push(GeneratorDecl::weakly_product(&g_gen(j), certificate(j, wrap(n, j + n - 1), YBranch)));
    }
    out
}

/// `F_j, G_j` first; then `O_{p_j}` and the two twisted copies on `P_j`.
fn global_steps(n: usize) -> Vec<Step> {
    let own = |g: String, shift: i64, cells: Vec<(String, &str)>| Summand {
        generator: g,
        shift,
        cells: cells.into_iter().map(|(a, b)| (a, b.to_string())).collect(),
    };
    let first = (1..=n)
        .flat_map(|j| {
            [
                own(f_gen(j), 0, vec![(f_point(j), "pt"), (f_line(j), "O")]),
                own(g_gen(j), 0, vec![(g_point(j), "pt"), (g_line(j), "O")]),
            ]
        })
        .collect();
    let second = (1..=n)
        .flat_map(|j| {
            [
                own(point(j), 0, vec![(q_point(j), "O")]),
                own(twisted(j), 1, vec![(s_first(j), "O")]),
                own(twisted(j), 1, vec![(s_second(j), "O")]),
            ]
        })
        .collect();
    vec![Step::new(first), Step::new(second)]
}

/// Generator models restricted to a chart; zero where the support misses it.
fn chart_models(g: &Geometry, ring: &Arc<QuotientRing>, top: i64) -> Result<BTreeMap<String, ChainComplex>, CatalogError> {
    let one = ring.one();
    let node = || vec![Node, Node];
    let mut models = BTreeMap::new();
    let mut add = |label: String, cells: Vec<Cell>, maps: Vec<CellMap>| -> Result<(), CatalogError> {
        models.insert(label, cell_model(ring, &FACTOR_VARS, cells, maps, top)?);
        Ok(())
    };
    for j in 1..=g.n {
        let line: Vec<Cell> = g.line(j).map(|b| cell("O".into(), 0, b)).into_iter().collect();
        add(twisted(j), line.clone(), vec![])?;
        add(untwisted(j), line.clone(), vec![])?;
        let pt = if g.has_point(j) { vec![cell("O".into(), 0, node())] } else { vec![] };
        add(point(j), pt, vec![])?;
        for (label, m) in [(f_gen(j), j), (g_gen(j), g.prev(j))] {
            let mut cells = line.clone();
            let mut maps = vec![];
            if g.has_point(m) && !cells.is_empty() {
                cells.insert(0, cell("pt".into(), -1, node()));
                maps.push(CellMap {
                    from: 1,
                    to: 0,
                    coeff: one.clone(),
                });
            }
            add(label, cells, maps)?;
        }
    }
    Ok(models)
}

/// The global witness on one chart: summands cut down to the cells present,
/// empty summands and unused generators dropped.
fn chart_witness(
    g: &Geometry,
    ring: &Arc<QuotientRing>,
    top: i64,
    decls: &[GeneratorDecl],
    steps: &[Step],
    present: &BTreeSet<String>,
) -> Result<GenerationWitness, CatalogError> {
    let steps: Vec<Step> = steps
        .iter()
        .map(|s| {
            Step::new(
                s.summands
                    .iter()
                    .filter_map(|m| {
                        let cells: Vec<_> = m.cells.iter().filter(|(c, _)| present.contains(c)).cloned().collect();
                        (!cells.is_empty()).then(|| Summand { cells, ..m.clone() })
                    })
                    .collect(),
            )
        })
        .collect();
    let mut used: BTreeSet<String> = steps.iter().flat_map(|s| &s.summands).map(|s| s.generator.clone()).collect();
    for d in decls {
        if let (true, Some(WeakCertificate::ConeOfProduct(c))) = (used.contains(&d.label), &d.certificate) {
            used.insert(c.source.clone());
            used.insert(c.target.clone());
        }
    }
    let generators: Vec<GeneratorDecl> = decls.iter().filter(|d| used.contains(&d.label)).cloned().collect();
    let mut models = chart_models(g, ring, top)?;
    models.retain(|l, _| used.contains(l));
    Ok(GenerationWitness {
        generators,
        steps,
        models,
    })
}

/// The restricted cell complex with its diagonal ideal and anchors.
fn chart_blueprint(g: &Geometry, ring: &Arc<QuotientRing>) -> Result<(Blueprint, String), CatalogError> {
    let (n, id) = (g.n, g.id);
    let kind = id.kind(n);
    let (ideal, anchors, note): (&[&str], Vec<(String, &str)>, String) = if kind == ChartKind::Diagonal {
        (
            &["x1 - x2", "y1 - y2"],
            vec![(f_line(id.i), "1"), (g_line(wrap(n, id.i + 1)), "1"), (q_point(id.i), "-1")],
            "nodal conic chart, compared with the diagonal x1 = x2, y1 = y2".into(),
        )
    } else if id.j == wrap(n, id.i + 1) {
        (
            &["x", "v", "y*u - 1"],
            vec![(f_line(id.j), "1")],
            format!("torus chart on P_{0} x P_{0}, coordinates y and u with y u = 1", id.j),
        )
    } else {
        (
            &["y", "u", "x*v - 1"],
            vec![(f_line(id.i), "1")],
            format!("torus chart on P_{0} x P_{0}, coordinates x and v with x v = 1", id.i),
        )
    };
    let (cells, maps) = chart_cells(&g, &ring)?;
    let bp = Blueprint {
        cells: CellComplex::new(ring.clone(), FACTOR_VARS.to_vec(), cells, maps)?,
        i0: 0,
        anchors: anchors
            .into_iter()
            .map(|(l, v)| Ok((l, ring.parse_poly(v)?)))
            .collect::<Result<Vec<_>, CatalogError>>()?,
        ideal: Submodule::parse_ideal(ring.clone(), ideal)?,
    };
    Ok((bp, note))
}

fn build_job(n: usize, id: ChartId, field: FieldSpec, decls: &[GeneratorDecl], steps: &[Step]) -> Result<ChartJob, CatalogError> {
    let g = Geometry::new(n, id);
    let kind = id.kind(n);
    let ring = if kind == ChartKind::Diagonal { nodal_ring(field) } else { torus_ring(field) };
    if kind == ChartKind::Distant {
        return Ok(ChartJob {
            id,
            kind,
            ring: ring.clone(),
            complex: ChainComplex::zero(ring),
            expectation: Expectation::ExactEverywhere,
            witness: None,
            notes: vec!["no sheaf of the resolution meets this chart".into()],
        });
    }
    let (bp, note) = chart_blueprint(&g, &ring)?;
    let present: BTreeSet<String> = bp.cells.cells().iter().map(|c| c.label.clone()).collect();
    let (complex, diagonal, complete) = bp.assemble()?;
    let witness = chart_witness(&g, &ring, bp.top() + MODEL_MARGIN, decls, steps, &present)?;
    let mut notes = vec![note];
    if !complete {
        notes.push("augmentation could not be completed; anchor-only row used".into());
    }
    Ok(ChartJob {
        id,
        kind,
        ring,
        complex,
        expectation: Expectation::QisoTo(diagonal),
        witness: Some(witness),
        notes,
    })
}

/// All `n²` charts of `I_n × I_n`, built in parallel.
pub fn build_cycle(n: usize, field: FieldSpec) -> Result<CycleCatalog, CatalogError> {
    if n < 3 {
        return Err(CatalogError::CycleLength(n));
    }
    let decls = generator_decls(n, field);
    let steps = global_steps(n);
    let ids: Vec<ChartId> = (1..=n).flat_map(|i| (1..=n).map(move |j| ChartId { i, j })).collect();
    let jobs = ids
        .par_iter()
        .map(|&id| build_job(n, id, field, &decls, &steps))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CycleCatalog {
        n,
        jobs,
        generators: decls,
        steps,
    })
}

/// A single chart of `I_n × I_n`.
pub fn build_chart(n: usize, id: ChartId, field: FieldSpec) -> Result<ChartJob, CatalogError> {
    if n < 3 {
        return Err(CatalogError::CycleLength(n));
    }
    let id = ChartId::new(id.i, id.j, n)?;
    let decls = generator_decls(n, field);
    build_job(n, id, field, &decls, &global_steps(n))
}

/// Each `φ` coefficient of the chart complex negated in turn.
pub fn cycle_chart_mutations(n: usize, id: ChartId, field: FieldSpec) -> Result<Vec<Mutation>, CatalogError> {
    if n < 3 {
        return Err(CatalogError::CycleLength(n));
    }
    let id = ChartId::new(id.i, id.j, n)?;
    if id.kind(n) == ChartKind::Distant {
        return Ok(Vec::new());
    }
    let g = Geometry::new(n, id);
    let ring = if id.i == id.j { nodal_ring(field) } else { torus_ring(field) };
    let (bp, _) = chart_blueprint(&g, &ring)?;
    let cells = bp.cells.cells();
    let maps = bp.cells.maps();
    (0..maps.len())
        .filter(|&k| cells[maps[k].from].label.starts_with('S'))
        .map(|k| {
            let mut changed = maps.to_vec();
            changed[k].coeff = -&changed[k].coeff;
            let desc = format!("sign of {} -> {} flipped", cells[maps[k].from].label, cells[maps[k].to].label);
            bp.mutate(&desc, changed)
        })
        .collect()
}
