//! Certificates that a generator is weakly product.

use std::collections::{BTreeMap, BTreeSet};

use super::{match_block, CertificateCheck, GenerationWitness, GeneratorDecl, GeneratorKind, WitnessError};
use crate::bimodcalc::{cone_image_decomposition, decompose, ConeLabels, FormalSum, GradedLinearMap, GradedVectorSpace};
use crate::complexes::{ChainComplex, ChainMap, RelationTest};
use crate::linalg::{coordinates_modulo, homology_basis, specialize, DenseMatrix};
use crate::scalars::Scalar;

#[derive(Clone, Debug)]
pub enum WeakCertificate {
    /// The generator is `cone(source -> target)[shift]` for a product
    /// morphism between the declared product generators.
    ConeOfProduct(ConeOfProduct),
    /// Induced maps `H(φ1 ⊗ F)` supplied directly.
    Decomposition { maps: Vec<GradedLinearMap>, labels: ConeLabels },
}

#[derive(Clone, Debug)]
pub struct ConeOfProduct {
    pub source: String,
    pub target: String,
    pub shift: i64,
    pub split: Option<ConeSplit>,
    pub factor: Option<FactorMorphism>,
}

/// How the cells of the generator's model divide into the source and
/// target parts of the cone, each pair naming the matching model cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSplit {
    pub source_cells: Vec<(String, String)>,
    pub target_cells: Vec<(String, String)>,
}

impl ConeSplit {
    pub fn new(source_cells: &[(&str, &str)], target_cells: &[(&str, &str)]) -> Self {
        let own = |v: &[(&str, &str)]| v.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
        ConeSplit {
            source_cells: own(source_cells),
            target_cells: own(target_cells),
        }
    }
}

/// The first-factor morphism `φ1: G1 -> G1'` between free resolutions over
/// one factor, with probe points `p` at which `H(φ1 ⊗ k_p)` is computed.
///
/// Resolutions truncated at some length should carry a window; homology is
/// only read in degrees inside both windows.
#[derive(Clone, Debug)]
pub struct FactorMorphism {
    pub map: ChainMap,
    pub probes: Vec<Vec<Scalar>>,
    pub labels: ConeLabels,
}

impl WeakCertificate {
    pub fn cone_of_product(source: &str, target: &str, shift: i64) -> Self {
        WeakCertificate::ConeOfProduct(ConeOfProduct {
            source: source.into(),
            target: target.into(),
            shift,
            split: None,
            factor: None,
        })
    }

    pub fn with_split(mut self, split: ConeSplit) -> Self {
        if let WeakCertificate::ConeOfProduct(c) = &mut self {
            c.split = Some(split);
        }
        self
    }

    pub fn with_factor(mut self, factor: FactorMorphism) -> Self {
        if let WeakCertificate::ConeOfProduct(c) = &mut self {
            c.factor = Some(factor);
        }
        self
    }
}

pub(super) fn check(w: &GenerationWitness, g: &GeneratorDecl, cert: &WeakCertificate) -> Result<CertificateCheck, WitnessError> {
    let mut out = CertificateCheck {
        label: g.label.clone(),
        passed: true,
        detail: None,
        emitted: Vec::new(),
    };
    let fail = |out: &mut CertificateCheck, msg: String| {
        if out.passed {
            out.passed = false;
            out.detail = Some(msg);
        }
    };
    match cert {
        WeakCertificate::Decomposition { maps, labels } => {
            for m in maps {
                match emit(m, labels) {
                    Ok(sum) => out.emitted.push(sum),
                    Err(msg) => fail(&mut out, msg),
                }
            }
        }
        WeakCertificate::ConeOfProduct(c) => {
            for l in [&c.source, &c.target] {
                let decl = w.generator(l).ok_or_else(|| WitnessError::UndeclaredLabel(l.clone()))?;
                if decl.kind != GeneratorKind::Product {
                    fail(&mut out, format!("{l} is not declared product"));
                }
            }
            if c.split.is_none() && c.factor.is_none() {
                fail(&mut out, "cone certificate carries neither a split nor a factor morphism".into());
            }
            if let Some(split) = &c.split {
                let model = |l: &str| w.models.get(l).ok_or_else(|| WitnessError::MissingModel(l.to_string()));
                let whole = model(&g.label)?;
                if let Err(msg) = check_split(whole, split, model(&c.source)?, model(&c.target)?, c.shift) {
                    fail(&mut out, msg);
                }
            }
            if let Some(f) = &c.factor {
                for (index, p) in f.probes.iter().enumerate() {
                    let ring = f.map.source().ring();
                    if !ring.relations().iter().all(|r| r.evaluate(p).is_zero()) || p.len() != ring.nvars() {
                        return Err(WitnessError::BadProbe {
                            label: g.label.clone(),
                            index,
                        });
                    }
                    let induced = induced_at(&f.map, p);
                    match induced.and_then(|m| emit(&m, &f.labels)) {
                        Ok(sum) => out.emitted.push(sum),
                        Err(msg) => fail(&mut out, format!("probe {index}: {msg}")),
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Decomposes the induced map, re-checks the split, and emits the formal sum.
fn emit(phi: &GradedLinearMap, labels: &ConeLabels) -> Result<FormalSum, String> {
    let dec = decompose(phi);
    for d in phi.support() {
        if dec.reassemble(phi.field(), d) != phi.matrix(d) {
            return Err(format!("decomposition does not reassemble in degree {d}"));
        }
    }
    let sum = cone_image_decomposition(phi, labels);
    if !sum.supported_on(&labels.all()) {
        return Err("decomposition uses a label outside the declared three".into());
    }
    Ok(sum)
}

fn check_split(
    whole: &ChainComplex,
    split: &ConeSplit,
    source: &ChainComplex,
    target: &ChainComplex,
    shift: i64,
) -> Result<(), String> {
    let src: BTreeSet<&str> = split.source_cells.iter().map(|(a, _)| a.as_str()).collect();
    let tgt: BTreeSet<&str> = split.target_cells.iter().map(|(a, _)| a.as_str()).collect();
    let part = |i: i64, b: usize| -> Option<bool> {
        let l = whole.labels(i)?.get(b)?;
        let (cell, _) = super::cell_of(l);
        if src.contains(cell) {
            Some(true)
        } else if tgt.contains(cell) {
            Some(false)
        } else {
            None
        }
    };
    for i in whole.lo()..=whole.hi() {
        for b in 0..whole.rank(i) {
            if part(i, b).is_none() {
                return Err(format!("cell of basis element {b} in degree {i} is in neither part"));
            }
        }
    }
    let rel = RelationTest::new(whole.ring());
    for (&i, d) in whole.differentials() {
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if part(i, c) == Some(false) && part(i - 1, r) == Some(true) && !rel.is_zero(d.get(r, c)) {
                    return Err(format!("target part is not a subcomplex at d_{i}"));
                }
            }
        }
    }
    match_block(whole, &rel, &split.target_cells, target, shift).map_err(|e| format!("target part: {e}"))?;
    match_block(whole, &rel, &split.source_cells, source, shift + 1).map_err(|e| format!("source part: {e}"))?;
    Ok(())
}

fn reliable(c: &ChainComplex, q: i64) -> bool {
    match c.window() {
        Some((lo, hi)) => lo <= q && q <= hi,
        None => true,
    }
}

/// `H(φ ⊗ k_p)` in every degree where both resolutions are trusted.
fn induced_at(map: &ChainMap, p: &[Scalar]) -> Result<GradedLinearMap, String> {
    let (s, t) = (map.source(), map.target());
    let field = s.ring().field();
    let lo = s.lo().min(t.lo());
    let hi = s.hi().max(t.hi());
    let homology = |c: &ChainComplex, q: i64| homology_basis(&specialize(&c.d(q), p), &specialize(&c.d(q + 1), p));
    let mut maps = BTreeMap::new();
    let mut src_dims = Vec::new();
    let mut tgt_dims = Vec::new();
    for q in lo..=hi {
        if !reliable(s, q) || !reliable(t, q) {
            continue;
        }
        let hs = homology(s, q);
        let ht = homology(t, q);
        let f = specialize(&map.map(q), p);
        let image = specialize(&t.d(q + 1), p);
        let mut cols = Vec::with_capacity(hs.len());
        for z in &hs {
            let fz: Vec<Scalar> = (0..f.rows())
                .map(|r| {
                    (0..f.cols()).fold(field.zero(), |acc, c| &acc + &(f.get(r, c) * &z[c]))
                })
                .collect();
            let coords = coordinates_modulo(&image, &ht, &fz).ok_or_else(|| format!("image of a cycle is not a cycle in degree {q}"))?;
            cols.push(coords);
        }
        src_dims.push((q, hs.len()));
        tgt_dims.push((q, ht.len()));
        maps.insert(q, DenseMatrix::from_columns(field, ht.len(), &cols));
    }
    GradedLinearMap::new(field, GradedVectorSpace::new(src_dims), GradedVectorSpace::new(tgt_dims), maps).map_err(|e| e.to_string())
}
