//! Generation-time certificates for the diagonal: a tower
//! `0 -> R_0 -> R_1 -> ... -> R_k` of subcomplexes whose successive
//! quotients are finite sums of shifted, declared generators.
//!
//! A basis label of the form `cell/rest` belongs to the cell `cell`; steps
//! and models are matched through these cell names.

mod certificate;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bimodcalc::FormalSum;
use crate::complexes::{verify_diagonal_qiso, ChainComplex, ComplexError, DiagonalSpec, RelationTest, VerificationReport};

pub use certificate::{ConeOfProduct, ConeSplit, FactorMorphism, WeakCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("undeclared generator label `{0}`")]
    UndeclaredLabel(String),
    #[error("generator `{0}` is declared twice")]
    DuplicateLabel(String),
    #[error("no model complex for generator `{0}`")]
    MissingModel(String),
    #[error("cell `{0}` does not occur in the complex")]
    UnknownCell(String),
    #[error("cell `{0}` is assigned to more than one summand")]
    DuplicateCell(String),
    #[error("complex has no basis labels in degree {0}")]
    MissingLabels(i64),
    #[error("weakly product generator `{0}` has no certificate")]
    MissingCertificate(String),
    #[error("probe point {index} for `{label}` does not lie on the factor")]
    BadProbe { label: String, index: usize },
    #[error("a witness needs at least one step")]
    NoSteps,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Product,
    WeaklyProduct,
    Plain,
}

#[derive(Clone, Debug)]
pub struct GeneratorDecl {
    pub label: String,
    pub kind: GeneratorKind,
    pub certificate: Option<WeakCertificate>,
}

impl GeneratorDecl {
    pub fn product(label: &str) -> Self {
        GeneratorDecl {
            label: label.into(),
            kind: GeneratorKind::Product,
            certificate: None,
        }
    }

    pub fn plain(label: &str) -> Self {
        GeneratorDecl {
            label: label.into(),
            kind: GeneratorKind::Plain,
            certificate: None,
        }
    }

    pub fn weakly_product(label: &str, certificate: WeakCertificate) -> Self {
        GeneratorDecl {
            label: label.into(),
            kind: GeneratorKind::WeaklyProduct,
            certificate: Some(certificate),
        }
    }
}

/// One shifted copy of a generator, identified with a set of cells of the
/// complex; `cells` pairs each complex cell with the model cell it matches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub generator: String,
    pub shift: i64,
    pub cells: Vec<(String, String)>,
}

impl Summand {
    pub fn new(generator: &str, shift: i64, cells: &[(&str, &str)]) -> Self {
        Summand {
            generator: generator.into(),
            shift,
            cells: cells.iter().map(|&(a, b)| (a.into(), b.into())).collect(),
        }
    }

    fn describe(&self) -> String {
        format!("{}[{}]", self.generator, self.shift)
    }
}

/// The cells added at one stage of the tower, split into summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Step {
    pub summands: Vec<Summand>,
}

impl Step {
    pub fn new(summands: Vec<Summand>) -> Self {
        Step { summands }
    }

    pub fn cells(&self) -> impl Iterator<Item = &str> {
        self.summands.iter().flat_map(|s| s.cells.iter().map(|(c, _)| c.as_str()))
    }
}

/// Declared generators, the tower of steps and a model complex for each
/// generator used, over the ring of the final complex.
#[derive(Clone, Debug, Default)]
pub struct GenerationWitness {
    pub generators: Vec<GeneratorDecl>,
    pub steps: Vec<Step>,
    pub models: BTreeMap<String, ChainComplex>,
}

impl GenerationWitness {
    /// The claimed generation time `k`: one less than the number of steps.
    pub fn generation_time(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn generator(&self, label: &str) -> Option<&GeneratorDecl> {
        self.generators.iter().find(|g| g.label == label)
    }

    pub fn without_step(&self, index: usize) -> Self {
        let mut w = self.clone();
        w.steps.remove(index);
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    pub index: usize,
    pub summands: Vec<String>,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub label: String,
    pub passed: bool,
    pub detail: Option<String>,
    pub emitted: Vec<FormalSum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub passed: bool,
    pub generation_time: usize,
    pub product_only: bool,
    pub steps: Vec<StepCheck>,
    pub certificates: Vec<CertificateCheck>,
    pub qiso: Option<VerificationReport>,
    pub conclusion: Option<String>,
}

/// The sentence emitted by a passing witness of generation time `k`.
pub fn bound_statement(k: usize) -> String {
    format!("generation time of Δ by declared weakly product bimodules ≤ {k}, hence Rouquier dimension ≤ {k}")
}

fn cell_of(label: &str) -> (&str, &str) {
    match label.find('/') {
        Some(i) => (&label[..i], &label[i..]),
        None => (label, ""),
    }
}

/// Validates labels against the declarations without checking any algebra.
pub fn validate(w: &GenerationWitness) -> Result<(), WitnessError> {
    let mut seen = BTreeSet::new();
    for g in &w.generators {
        if !seen.insert(g.label.as_str()) {
            return Err(WitnessError::DuplicateLabel(g.label.clone()));
        }
        if g.kind == GeneratorKind::WeaklyProduct && g.certificate.is_none() {
            return Err(WitnessError::MissingCertificate(g.label.clone()));
        }
        if let Some(WeakCertificate::ConeOfProduct(c)) = &g.certificate {
            for l in [&c.source, &c.target] {
                if w.generator(l).is_none() {
                    return Err(WitnessError::UndeclaredLabel(l.clone()));
                }
            }
        }
    }
    if w.steps.is_empty() {
        return Err(WitnessError::NoSteps);
    }
    let mut cells = BTreeSet::new();
    for s in w.steps.iter().flat_map(|s| &s.summands) {
        if w.generator(&s.generator).is_none() {
            return Err(WitnessError::UndeclaredLabel(s.generator.clone()));
        }
        if !w.models.contains_key(&s.generator) {
            return Err(WitnessError::MissingModel(s.generator.clone()));
        }
        for (c, _) in &s.cells {
            if !cells.insert(c.as_str()) {
                return Err(WitnessError::DuplicateCell(c.clone()));
            }
        }
    }
    Ok(())
}

/// Checks the tower against `complex`: each `R_i` is a subcomplex, all cells
/// are covered, and each quotient `R_i / R_{i-1}` is the direct sum of its
/// summands, each isomorphic to the corresponding shifted model.
pub fn check_structure(w: &GenerationWitness, complex: &ChainComplex) -> Result<Vec<StepCheck>, WitnessError> {
    validate(w)?;
    let step_of_cell: HashMap<&str, (usize, usize)> = w
        .steps
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            s.summands
                .iter()
                .enumerate()
                .flat_map(move |(j, m)| m.cells.iter().map(move |(c, _)| (c.as_str(), (i, j))))
        })
        .collect();

    let mut present = BTreeSet::new();
    let mut position: HashMap<(i64, usize), (usize, usize)> = HashMap::new();
    let mut uncovered = BTreeSet::new();
    for i in complex.lo()..=complex.hi() {
        if complex.rank(i) == 0 {
            continue;
        }
        let labels = complex.labels(i).ok_or(WitnessError::MissingLabels(i))?;
        for (b, l) in labels.iter().enumerate() {
            let (cell, _) = cell_of(l);
            present.insert(cell.to_string());
            match step_of_cell.get(cell) {
                Some(&p) => {
                    position.insert((i, b), p);
                }
                None => {
                    uncovered.insert(cell.to_string());
                }
            }
        }
    }
    for c in step_of_cell.keys() {
        if !present.contains(*c) {
            return Err(WitnessError::UnknownCell(c.to_string()));
        }
    }

    let mut checks: Vec<StepCheck> = w
        .steps
        .iter()
        .enumerate()
        .map(|(index, s)| StepCheck {
            index,
            summands: s.summands.iter().map(Summand::describe).collect(),
            passed: true,
            detail: None,
        })
        .collect();
    let fail = |checks: &mut Vec<StepCheck>, i: usize, msg: String| {
        if checks[i].passed {
            checks[i].passed = false;
            checks[i].detail = Some(msg);
        }
    };
    if !uncovered.is_empty() {
        let last = checks.len() - 1;
        let list: Vec<_> = uncovered.into_iter().collect();
        fail(&mut checks, last, format!("cells not covered by any step: {}", list.join(", ")));
    }

    let rel = RelationTest::new(complex.ring());
    let label = |i: i64, b: usize| complex.labels(i).map(|l| l[b].clone()).unwrap_or_default();
    for (&i, d) in complex.differentials() {
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                let e = d.get(r, c);
                if e.is_zero() || rel.is_zero(e) {
                    continue;
                }
                let (Some(&(sa, ma)), Some(&(sb, mb))) = (position.get(&(i - 1, r)), position.get(&(i, c))) else {
                    continue;
                };
                if sa > sb {
                    let msg = format!("R_{sb} is not a subcomplex: d_{i} maps {} to {}", label(i, c), label(i - 1, r));
                    fail(&mut checks, sb, msg);
                } else if sa == sb && ma != mb {
                    let msg = format!(
                        "quotient is not block diagonal: d_{i} links {} and {}",
                        label(i, c),
                        label(i - 1, r)
                    );
                    fail(&mut checks, sb, msg);
                }
            }
        }
    }

    for (i, step) in w.steps.iter().enumerate() {
        for s in &step.summands {
            let decl = w.generator(&s.generator).expect("validated");
            if decl.kind == GeneratorKind::Plain {
                fail(&mut checks, i, format!("{} is neither product nor weakly product", s.generator));
                continue;
            }
            let model = &w.models[&s.generator];
            if let Err(msg) = match_block(complex, &rel, &s.cells, model, s.shift) {
                fail(&mut checks, i, format!("{}: {msg}", s.describe()));
            }
        }
    }
    Ok(checks)
}

/// Checks every weakly product declaration.
pub fn check_certificates(w: &GenerationWitness) -> Result<Vec<CertificateCheck>, WitnessError> {
    validate(w)?;
    w.generators
        .iter()
        .filter_map(|g| g.certificate.as_ref().map(|c| (g, c)))
        .map(|(g, c)| certificate::check(w, g, c))
        .collect()
}

/// Full check: tower structure, certificates and the quasi-isomorphism of
/// the final complex to the diagonal.
pub fn verify_witness(
    w: &GenerationWitness,
    complex: &ChainComplex,
    diagonal: &DiagonalSpec,
) -> Result<WitnessReport, WitnessError> {
    let steps = check_structure(w, complex)?;
    let certificates = check_certificates(w)?;
    let qiso = verify_diagonal_qiso(complex, diagonal)?;
    Ok(assemble_report(w, steps, certificates, Some(qiso)))
}

/// Combines partial checks into a report; `qiso` of `None` means the final
/// complex was checked elsewhere.
pub fn assemble_report(
    w: &GenerationWitness,
    steps: Vec<StepCheck>,
    certificates: Vec<CertificateCheck>,
    qiso: Option<VerificationReport>,
) -> WitnessReport {
    let k = w.generation_time();
    let passed =
        steps.iter().all(|s| s.passed) && certificates.iter().all(|c| c.passed) && qiso.as_ref().is_none_or(|q| q.passed);
    let used: BTreeSet<&str> = w.steps.iter().flat_map(|s| &s.summands).map(|s| s.generator.as_str()).collect();
    let product_only = used
        .iter()
        .all(|l| w.generator(l).is_some_and(|g| g.kind == GeneratorKind::Product));
    WitnessReport {
        passed,
        generation_time: k,
        product_only,
        steps,
        certificates,
        qiso,
        conclusion: passed.then(|| bound_statement(k)),
    }
}

/// Compares the part of `container` on the cells in `cells` with
/// `model[shift]`, allowing each basis vector to change sign.
pub(crate) fn match_block(
    container: &ChainComplex,
    rel: &RelationTest,
    cells: &[(String, String)],
    model: &ChainComplex,
    shift: i64,
) -> Result<(), String> {
    if *container.ring() != *model.ring() {
        return Err("model is over a different ring".into());
    }
    let map: HashMap<&str, &str> = cells.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    // per container degree: block basis as (container index, model index)
    let mut blocks: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    // a model with a window is a truncation: compare where both are computed
    // and insist that this covers the degrees the container is trusted in
    let lo = container.lo();
    let mut hi = container.hi();
    if model.window().is_some() {
        hi = hi.min(model.hi() + shift);
        let needed = container.effective_window().1.min(container.hi());
        if hi < needed {
            return Err(format!("model stops at degree {} but the complex is trusted up to {needed}", model.hi() + shift));
        }
    }
    for i in lo..=hi {
        let mut entries = Vec::new();
        if container.rank(i) == 0 {
            blocks.insert(i, entries);
            continue;
        }
        let labels = container.labels(i).ok_or_else(|| format!("no labels in degree {i}"))?;
        let j = i - shift;
        let model_index: HashMap<&str, usize> = model
            .labels(j)
            .map(|l| l.iter().enumerate().map(|(k, s)| (s.as_str(), k)).collect())
            .unwrap_or_default();
        for (b, l) in labels.iter().enumerate() {
            let (cell, rest) = cell_of(l);
            if let Some(mc) = map.get(cell) {
                let ml = format!("{mc}{rest}");
                let k = *model_index
                    .get(ml.as_str())
                    .ok_or_else(|| format!("model has no basis element `{ml}` in degree {j}"))?;
                entries.push((b, k));
            }
        }
        if entries.len() != model.rank(j) {
            return Err(format!(
                "degree {i}: {} basis elements against model rank {}",
                entries.len(),
                model.rank(j)
            ));
        }
        blocks.insert(i, entries);
    }
    for j in model.lo()..=model.hi() {
        if model.rank(j) > 0 && j + shift < lo {
            return Err(format!("model degree {j} falls below the complex"));
        }
    }

    let negate = shift.rem_euclid(2) == 1;
    let mut signs = Signs::default();
    for i in (lo + 1)..=hi {
        let (Some(src), Some(tgt)) = (blocks.get(&i), blocks.get(&(i - 1))) else {
            continue;
        };
        if src.is_empty() || tgt.is_empty() {
            continue;
        }
        let d = container.d(i);
        let m = model.d(i - shift);
        for &(c, mc) in src {
            for &(r, mr) in tgt {
                let q = d.get(r, c);
                let mut p = m.get(mr, mc).clone();
                if negate {
                    p = -&p;
                }
                let parity = if rel.is_zero(&(q - &p)) {
                    if rel.is_zero(q) {
                        continue;
                    }
                    false
                } else if rel.is_zero(&(q + &p)) {
                    true
                } else {
                    return Err(format!("d_{i} entry ({r}, {c}) is {q}, model has ±{p}"));
                };
                if !signs.relate((i, c), (i - 1, r), parity) {
                    return Err(format!("d_{i}: no consistent sign change of the basis"));
                }
            }
        }
    }
    Ok(())
}

/// Union-find with parities, for ±1 rescalings of basis vectors.
#[derive(Default)]
struct Signs {
    index: HashMap<(i64, usize), usize>,
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl Signs {
    fn node(&mut self, k: (i64, usize)) -> usize {
        let n = self.parent.len();
        *self.index.entry(k).or_insert_with(|| {
            self.parent.push(n);
            self.parity.push(false);
            n
        })
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, par) = self.find(p);
        self.parity[x] ^= par;
        self.parent[x] = root;
        (root, self.parity[x])
    }

    /// Records `sign(a) * sign(b) = (-1)^parity`; false on contradiction.
    fn relate(&mut self, a: (i64, usize), b: (i64, usize), parity: bool) -> bool {
        let (a, b) = (self.node(a), self.node(b));
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == parity;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ parity;
        true
    }
}

#[cfg(test)]
mod tests;
