//! The JSON job file: a ring, a complex of free modules, the diagonal to
//! compare with and an optional generation witness. Polynomials are strings
//! in the polyring grammar.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::locate::locate;
use crate::bimodcalc::{ConeLabels, GradedLinearMap, GradedVectorSpace};
use crate::catalog::{CatalogEntry, ChartJob, Expectation};
use crate::complexes::{ChainComplex, ChainMap, DiagonalSpec};
use crate::groebner::{FreeVector, Submodule};
use crate::linalg::DenseMatrix;
use crate::polyring::{MonomialOrder, OrderKind, PolyMatrix, PolyRing, QuotientRing};
use crate::scalars::{FieldSpec, Scalar};
use crate::witness::{
    ConeOfProduct, ConeSplit, FactorMorphism, GenerationWitness, GeneratorDecl, GeneratorKind, Step, Summand,
    WeakCertificate,
};

pub const SCHEMA: u32 = 1;

type Grid = Vec<Vec<String>>;
type CellPairs = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JobError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("unsupported schema {0}; expected {SCHEMA}")]
    Schema(u32),
    #[error("{location}{path}: {message}")]
    Invalid { path: String, location: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub schema: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub ring: RingBlock,
    pub complex: ComplexBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<DiagonalBlock>,
    #[serde(default)]
    pub expectation: ExpectationBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessBlock>,
    /// Generators for `gb`; the diagonal ideal is used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner: Option<SubmoduleBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingBlock {
    pub variables: Vec<String>,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default = "default_order")]
    pub order: String,
    /// Variable indices from most to least significant; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priority: Option<Vec<usize>>,
    #[serde(default)]
    pub relations: Vec<String>,
}

fn default_field() -> String {
    "q".into()
}

fn default_order() -> String {
    "grevlex".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexBlock {
    pub lo: i64,
    pub ranks: Vec<usize>,
    /// `d_i: C_i -> C_{i-1}` as `rank(i-1)` rows of `rank(i)` entries.
    #[serde(default)]
    pub differentials: BTreeMap<i64, Grid>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<i64, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalBlock {
    pub ideal: Vec<String>,
    pub i0: i64,
    pub augmentation: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectationBlock {
    #[default]
    Qiso,
    ExactEverywhere,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmoduleBlock {
    pub rank: usize,
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessBlock {
    pub generators: Vec<GeneratorBlock>,
    pub steps: Vec<Vec<SummandBlock>>,
    pub models: BTreeMap<String, ComplexBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorBlock {
    pub label: String,
    pub kind: GeneratorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CertificateBlock {
    ConeOfProduct {
        source: String,
        target: String,
        shift: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        split: Option<SplitBlock>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        factor: Option<FactorBlock>,
    },
    Decomposition {
        maps: Vec<GradedMapBlock>,
        labels: ConeLabels,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitBlock {
    pub source_cells: CellPairs,
    pub target_cells: CellPairs,
}

/// A chain map of one-factor resolutions, over its own ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorBlock {
    pub ring: RingBlock,
    pub source: ComplexBlock,
    pub target: ComplexBlock,
    pub maps: BTreeMap<i64, Grid>,
    pub probes: Vec<Vec<String>>,
    pub labels: ConeLabels,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedMapBlock {
    pub source: BTreeMap<i64, usize>,
    pub target: BTreeMap<i64, usize>,
    pub matrices: BTreeMap<i64, Grid>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandBlock {
    pub generator: String,
    pub shift: i64,
    pub cells: CellPairs,
}

/// A job file turned into module-level objects.
#[derive(Clone, Debug)]
pub struct Job {
    pub name: String,
    pub notes: Vec<String>,
    pub ring: Arc<QuotientRing>,
    pub complex: ChainComplex,
    pub diagonal: Option<DiagonalSpec>,
    pub expectation: ExpectationBlock,
    pub witness: Option<GenerationWitness>,
    pub groebner: Option<Submodule>,
}

/// A position in the job file, as JSON keys and indices.
#[derive(Clone, Debug, Default)]
pub(crate) struct Path(Vec<Seg>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Seg {
    Key(String),
    Index(usize),
}

impl Path {
    fn key(&self, k: impl ToString) -> Path {
        let mut p = self.clone();
        p.0.push(Seg::Key(k.to_string()));
        p
    }

    fn at(&self, i: usize) -> Path {
        let mut p = self.clone();
        p.0.push(Seg::Index(i));
        p
    }

    pub(crate) fn segments(&self) -> &[Seg] {
        &self.0
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.0.iter().enumerate() {
            match s {
                Seg::Key(key) if k == 0 => write!(f, "{key}")?,
                Seg::Key(key) => write!(f, ".{key}")?,
                Seg::Index(i) => write!(f, "[{i}]")?,
            }
        }
        Ok(())
    }
}

/// Errors while building, before a source position is attached.
struct At {
    path: Path,
    message: String,
}

type Built<T> = Result<T, At>;

fn at<E: fmt::Display>(path: &Path) -> impl Fn(E) -> At + '_ {
    move |e| At {
        path: path.clone(),
        message: e.to_string(),
    }
}

impl JobFile {
    pub fn from_json(text: &str) -> Result<Self, JobError> {
        let job: JobFile = serde_json::from_str(text).map_err(|e| {
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let message = e.to_string();
            JobError::Json {
                line: e.line(),
                column: e.column(),
                message: message.strip_suffix(&suffix).unwrap_or(&message).to_string(),
            }
        })?;
        if job.schema != SCHEMA {
            return Err(JobError::Schema(job.schema));
        }
        Ok(job)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job files serialize")
    }

    /// Builds every object, over `field` if given. `source` is the original
    /// text, used to attach line and column to errors.
    pub fn build(&self, field: Option<FieldSpec>, source: Option<&str>) -> Result<Job, JobError> {
        self.build_inner(field).map_err(|e| {
            let location = source
                .and_then(|s| locate(s, e.path.segments()))
                .map(|(l, c)| format!("line {l}, column {c}: "))
                .unwrap_or_default();
            JobError::Invalid {
                path: e.path.to_string(),
                location,
                message: e.message,
            }
        })
    }

    fn build_inner(&self, field: Option<FieldSpec>) -> Built<Job> {
        let root = Path::default();
        let ring = self.ring.build(field, &root.key("ring"))?;
        let complex = self.complex.build(&ring, &root.key("complex"))?;
        let diagonal = self
            .diagonal
            .as_ref()
            .map(|d| d.build(&ring, &root.key("diagonal")))
            .transpose()?;
        let witness = self
            .witness
            .as_ref()
            .map(|w| w.build(&ring, field, &root.key("witness")))
            .transpose()?;
        let groebner = self
            .groebner
            .as_ref()
            .map(|g| g.build(&ring, &root.key("groebner")))
            .transpose()?;
        if self.expectation == ExpectationBlock::Qiso && diagonal.is_none() {
            return Err(At {
                path: root.key("diagonal"),
                message: "a qiso expectation needs a diagonal block".into(),
            });
        }
        Ok(Job {
            name: self.name.clone(),
            notes: self.notes.clone(),
            ring,
            complex,
            diagonal,
            expectation: self.expectation,
            witness,
            groebner,
        })
    }

    /// The job reproducing a catalog entry.
    pub fn from_entry(entry: &CatalogEntry) -> Self {
        JobFile {
            schema: SCHEMA,
            name: entry.name.clone(),
            notes: entry.notes.clone(),
            ring: RingBlock::from_ring(&entry.ring),
            complex: ComplexBlock::from_complex(&entry.complex),
            diagonal: Some(DiagonalBlock::from_spec(&entry.diagonal)),
            expectation: ExpectationBlock::Qiso,
            witness: entry.witness.as_ref().map(WitnessBlock::from_witness),
            groebner: None,
        }
    }

    /// The job reproducing one chart of the cycle.
    pub fn from_chart(n: usize, job: &ChartJob) -> Self {
        let (diagonal, expectation) = match &job.expectation {
            Expectation::QisoTo(d) => (Some(DiagonalBlock::from_spec(d)), ExpectationBlock::Qiso),
            Expectation::ExactEverywhere => (None, ExpectationBlock::ExactEverywhere),
        };
        JobFile {
            schema: SCHEMA,
            name: format!("cycle-{n}-chart-{}-{}", job.id.i, job.id.j),
            notes: job.notes.clone(),
            ring: RingBlock::from_ring(&job.ring),
            complex: ComplexBlock::from_complex(&job.complex),
            diagonal,
            expectation,
            witness: job.witness.as_ref().map(WitnessBlock::from_witness),
            groebner: None,
        }
    }
}

impl RingBlock {
    fn build(&self, field: Option<FieldSpec>, path: &Path) -> Built<Arc<QuotientRing>> {
        let field = match field {
            Some(f) => f,
            None => FieldSpec::parse(&self.field).map_err(at(&path.key("field")))?,
        };
        let kind = match self.order.as_str() {
            "grevlex" => OrderKind::Grevlex,
            "lex" => OrderKind::Lex,
            other => {
                return Err(At {
                    path: path.key("order"),
                    message: format!("unknown order `{other}`; expected grevlex or lex"),
                })
            }
        };
        let order = match &self.priority {
            Some(p) => MonomialOrder::new(kind, p.clone()).map_err(at(&path.key("priority")))?,
            None => MonomialOrder::standard(kind, self.variables.len()),
        };
        let amb = PolyRing::new(&self.variables, field, order).map_err(at(&path.key("variables")))?;
        let relations = self
            .relations
            .iter()
            .enumerate()
            .map(|(k, s)| amb_poly(&amb, s, &path.key("relations").at(k)))
            .collect::<Built<Vec<_>>>()?;
        QuotientRing::new(amb, relations).map_err(at(&path.key("relations")))
    }

    pub fn from_ring(ring: &QuotientRing) -> Self {
        let amb = ring.ambient();
        let order = amb.order();
        let identity = order.priority().iter().enumerate().all(|(k, &p)| k == p);
        RingBlock {
            variables: amb.names().to_vec(),
            field: amb.field().descriptor(),
            order: match order.kind() {
                OrderKind::Grevlex => "grevlex".into(),
                OrderKind::Lex => "lex".into(),
            },
            priority: (!identity).then(|| order.priority().to_vec()),
            relations: ring.relations().iter().map(|p| p.to_string()).collect(),
        }
    }
}

fn amb_poly(amb: &Arc<PolyRing>, text: &str, path: &Path) -> Built<crate::polyring::Polynomial> {
    crate::polyring::parse_poly(text, amb).map_err(at(path))
}

fn grid(ring: &Arc<QuotientRing>, g: &Grid, rows: usize, cols: usize, path: &Path) -> Built<PolyMatrix> {
    if g.len() != rows || g.iter().any(|r| r.len() != cols) {
        return Err(At {
            path: path.clone(),
            message: format!("expected a {rows} x {cols} matrix"),
        });
    }
    let mut m = PolyMatrix::zero(ring.ambient(), rows, cols);
    for (r, row) in g.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            m.set(r, c, ring.parse_poly(s).map_err(at(&path.at(r).at(c)))?);
        }
    }
    Ok(m)
}

fn grid_strings(m: &PolyMatrix) -> Grid {
    m.to_strings()
}

impl ComplexBlock {
    fn build(&self, ring: &Arc<QuotientRing>, path: &Path) -> Built<ChainComplex> {
        let rank = |i: i64| -> usize {
            let k = i - self.lo;
            if k < 0 {
                0
            } else {
                self.ranks.get(k as usize).copied().unwrap_or(0)
            }
        };
        let mut diffs = BTreeMap::new();
        for (&i, g) in &self.differentials {
            let p = path.key("differentials").key(i);
            diffs.insert(i, grid(ring, g, rank(i - 1), rank(i), &p)?);
        }
        let mut c = ChainComplex::new(ring.clone(), self.lo, self.ranks.clone(), diffs).map_err(at(path))?;
        if !self.labels.is_empty() {
            c = c.with_labels(self.labels.clone()).map_err(at(&path.key("labels")))?;
        }
        if let Some((lo, hi)) = self.window {
            c = c.with_window(lo, hi).map_err(at(&path.key("window")))?;
        }
        Ok(c)
    }

    pub fn from_complex(c: &ChainComplex) -> Self {
        ComplexBlock {
            lo: c.lo(),
            ranks: c.ranks().to_vec(),
            differentials: c.differentials().iter().map(|(&i, d)| (i, grid_strings(d))).collect(),
            labels: c.all_labels().clone(),
            window: c.window(),
        }
    }
}

impl DiagonalBlock {
    fn build(&self, ring: &Arc<QuotientRing>, path: &Path) -> Built<DiagonalSpec> {
        let polys = |v: &[String], key: &str| {
            v.iter()
                .enumerate()
                .map(|(k, s)| ring.parse_poly(s).map_err(at(&path.key(key).at(k))))
                .collect::<Built<Vec<_>>>()
        };
        let ideal = Submodule::ideal(ring.clone(), polys(&self.ideal, "ideal")?).map_err(at(&path.key("ideal")))?;
        DiagonalSpec::new(ideal, self.i0, polys(&self.augmentation, "augmentation")?).map_err(at(path))
    }

    pub fn from_spec(d: &DiagonalSpec) -> Self {
        DiagonalBlock {
            ideal: d.ideal().gens().iter().map(|v| v.comps()[0].to_string()).collect(),
            i0: d.i0(),
            augmentation: d.augmentation().iter().map(|p| p.to_string()).collect(),
        }
    }
}

impl SubmoduleBlock {
    fn build(&self, ring: &Arc<QuotientRing>, path: &Path) -> Built<Submodule> {
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(k, comps)| {
                let p = path.key("generators").at(k);
                if comps.len() != self.rank {
                    return Err(At {
                        path: p,
                        message: format!("expected {} components", self.rank),
                    });
                }
                let polys = comps
                    .iter()
                    .enumerate()
                    .map(|(c, s)| ring.parse_poly(s).map_err(at(&p.at(c))))
                    .collect::<Built<Vec<_>>>()?;
                FreeVector::new(polys).map_err(at(&p))
            })
            .collect::<Built<Vec<_>>>()?;
        Submodule::new(ring.clone(), self.rank, gens).map_err(at(path))
    }
}

fn scalar(field: FieldSpec, text: &str, path: &Path) -> Built<Scalar> {
    let constants = PolyRing::grevlex::<&str>(&[], field).expect("no variables");
    let p = crate::polyring::parse_poly(text, &constants).map_err(at(path))?;
    Ok(p.constant_coeff())
}

fn pairs(v: &[(String, String)]) -> Vec<(&str, &str)> {
    v.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
}

impl WitnessBlock {
    fn build(&self, ring: &Arc<QuotientRing>, field: Option<FieldSpec>, path: &Path) -> Built<GenerationWitness> {
        let generators = self
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| g.build(ring, field, &path.key("generators").at(k)))
            .collect::<Built<Vec<_>>>()?;
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Step::new(
                    s.iter()
                        .map(|m| Summand::new(&m.generator, m.shift, &pairs(&m.cells)))
                        .collect(),
                )
            })
            .collect();
        let models = self
            .models
            .iter()
            .map(|(l, c)| Ok((l.clone(), c.build(ring, &path.key("models").key(l))?)))
            .collect::<Built<BTreeMap<_, _>>>()?;
        Ok(GenerationWitness {
            generators,
            steps,
            models,
        })
    }

    pub fn from_witness(w: &GenerationWitness) -> Self {
        WitnessBlock {
            generators: w.generators.iter().map(GeneratorBlock::from_decl).collect(),
            steps: w
                .steps
                .iter()
                .map(|s| {
                    s.summands
                        .iter()
                        .map(|m| SummandBlock {
                            generator: m.generator.clone(),
                            shift: m.shift,
                            cells: m.cells.clone(),
                        })
                        .collect()
                })
                .collect(),
            models: w.models.iter().map(|(l, c)| (l.clone(), ComplexBlock::from_complex(c))).collect(),
        }
    }
}

impl GeneratorBlock {
    fn build(&self, ring: &Arc<QuotientRing>, field: Option<FieldSpec>, path: &Path) -> Built<GeneratorDecl> {
        let certificate = self
            .certificate
            .as_ref()
            .map(|c| c.build(ring.field(), field, &path.key("certificate")))
            .transpose()?;
        Ok(GeneratorDecl {
            label: self.label.clone(),
            kind: self.kind,
            certificate,
        })
    }

    fn from_decl(d: &GeneratorDecl) -> Self {
        GeneratorBlock {
            label: d.label.clone(),
            kind: d.kind,
            certificate: d.certificate.as_ref().map(CertificateBlock::from_certificate),
        }
    }
}

impl CertificateBlock {
    fn build(&self, base: FieldSpec, field: Option<FieldSpec>, path: &Path) -> Built<WeakCertificate> {
        match self {
            CertificateBlock::ConeOfProduct {
                source,
                target,
                shift,
                split,
                factor,
            } => {
                let p = path.key("cone_of_product");
                Ok(WeakCertificate::ConeOfProduct(ConeOfProduct {
                    source: source.clone(),
                    target: target.clone(),
                    shift: *shift,
                    split: split
                        .as_ref()
                        .map(|s| ConeSplit::new(&pairs(&s.source_cells), &pairs(&s.target_cells))),
                    factor: factor.as_ref().map(|f| f.build(field, &p.key("factor"))).transpose()?,
                }))
            }
            CertificateBlock::Decomposition { maps, labels } => {
                let p = path.key("decomposition").key("maps");
                let maps = maps
                    .iter()
                    .enumerate()
                    .map(|(k, m)| m.build(base, &p.at(k)))
                    .collect::<Built<Vec<_>>>()?;
                Ok(WeakCertificate::Decomposition {
                    maps,
                    labels: labels.clone(),
                })
            }
        }
    }

    fn from_certificate(c: &WeakCertificate) -> Self {
        match c {
            WeakCertificate::ConeOfProduct(c) => CertificateBlock::ConeOfProduct {
                source: c.source.clone(),
                target: c.target.clone(),
                shift: c.shift,
                split: c.split.as_ref().map(|s| SplitBlock {
                    source_cells: s.source_cells.clone(),
                    target_cells: s.target_cells.clone(),
                }),
                factor: c.factor.as_ref().map(FactorBlock::from_factor),
            },
            WeakCertificate::Decomposition { maps, labels } => CertificateBlock::Decomposition {
                maps: maps.iter().map(GradedMapBlock::from_map).collect(),
                labels: labels.clone(),
            },
        }
    }
}

impl FactorBlock {
    fn build(&self, field: Option<FieldSpec>, path: &Path) -> Built<FactorMorphism> {
        let ring = self.ring.build(field, &path.key("ring"))?;
        let source = self.source.build(&ring, &path.key("source"))?;
        let target = self.target.build(&ring, &path.key("target"))?;
        let mut maps = BTreeMap::new();
        for (&i, g) in &self.maps {
            let m = grid(&ring, g, target.rank(i), source.rank(i), &path.key("maps").key(i))?;
            maps.insert(i, m);
        }
        let map = ChainMap::new(source, target, maps).map_err(at(path))?;
        let probes = self
            .probes
            .iter()
            .enumerate()
            .map(|(k, v)| {
                v.iter()
                    .enumerate()
                    .map(|(c, s)| scalar(ring.field(), s, &path.key("probes").at(k).at(c)))
                    .collect::<Built<Vec<_>>>()
            })
            .collect::<Built<Vec<_>>>()?;
        Ok(FactorMorphism {
            map,
            probes,
            labels: self.labels.clone(),
        })
    }

    fn from_factor(f: &FactorMorphism) -> Self {
        let (s, t) = (f.map.source(), f.map.target());
        let (lo, hi) = (s.lo().min(t.lo()), s.hi().max(t.hi()));
        FactorBlock {
            ring: RingBlock::from_ring(s.ring()),
            source: ComplexBlock::from_complex(s),
            target: ComplexBlock::from_complex(t),
            maps: (lo..=hi)
                .filter(|&i| s.rank(i) > 0 && t.rank(i) > 0)
                .map(|i| (i, grid_strings(&f.map.map(i))))
                .collect(),
            probes: f.probes.iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect(),
            labels: f.labels.clone(),
        }
    }
}

impl GradedMapBlock {
    fn build(&self, field: FieldSpec, path: &Path) -> Built<GradedLinearMap> {
        let source = GradedVectorSpace::new(self.source.iter().map(|(&d, &n)| (d, n)));
        let target = GradedVectorSpace::new(self.target.iter().map(|(&d, &n)| (d, n)));
        let mut maps = BTreeMap::new();
        for (&d, g) in &self.matrices {
            let p = path.key("matrices").key(d);
            let rows = g
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, s)| scalar(field, s, &p.at(r).at(c)))
                        .collect::<Built<Vec<_>>>()
                })
                .collect::<Built<Vec<_>>>()?;
            let m = DenseMatrix::from_rows(field, rows, source.dim(d)).map_err(at(&p))?;
            maps.insert(d, m);
        }
        GradedLinearMap::new(field, source, target, maps).map_err(at(path))
    }

    fn from_map(m: &GradedLinearMap) -> Self {
        let dims = |v: &GradedVectorSpace| v.degrees().collect();
        GradedMapBlock {
            source: dims(m.source()),
            target: dims(m.target()),
            matrices: m
                .support()
                .into_iter()
                .map(|d| {
                    let a = m.matrix(d);
                    let g = (0..a.rows()).map(|r| (0..a.cols()).map(|c| a.get(r, c).to_string()).collect()).collect();
                    (d, g)
                })
                .collect(),
        }
    }
}
