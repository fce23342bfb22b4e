//! Bounded chain complexes of free modules over a quotient ring, with
//! homological indexing: `d_i: C_i -> C_{i-1}`.

mod verify;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::groebner::{buchberger, check_hom, FreeVector, GroebnerBasis, GroebnerError, Submodule};
use crate::polyring::{PolyError, PolyMatrix, Polynomial, QuotientRing, RingHom};

pub use verify::{
    homology_is_zero_at, nonexact_degrees, verify_diagonal_qiso, Condition, DegreeResult, DiagonalSpec, Failure,
    VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("differential at degree {degree} has shape {found:?}, expected {expected:?}")]
    Shape {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("differential at degree {degree} lies outside the degree range")]
    StrayDifferential { degree: i64 },
    #[error("d_{lower} * d_{upper} is not zero modulo the relations", lower = degree - 1, upper = degree)]
    NotAComplex { degree: i64 },
    #[error("map does not commute with the differentials at degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("degree {degree} is outside the complex")]
    DegreeOutOfRange { degree: i64 },
    #[error("augmentation has length {found}, expected rank {expected}")]
    AugmentationLength { expected: usize, found: usize },
    #[error("augmentation row is zero")]
    ZeroAugmentation,
    #[error("diagonal ideal must be a proper rank-1 ideal")]
    BadDiagonalIdeal,
    #[error("basis labels at degree {degree}: {found} labels for rank {expected}")]
    LabelCount { degree: i64, expected: usize, found: usize },
    #[error("invalid window [{0}, {1}]")]
    BadWindow(i64, i64),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Gröbner basis of the relation ideal, for entrywise tests modulo `J`.
pub(crate) struct RelationTest {
    basis: GroebnerBasis,
}

impl RelationTest {
    pub fn new(ring: &Arc<QuotientRing>) -> Self {
        RelationTest {
            basis: buchberger(&Submodule::zero(ring.clone(), 1)),
        }
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let v = FreeVector::new(vec![p.clone()]).expect("one component");
        self.basis.contains(&v).expect("same ring")
    }

    pub fn matrix_is_zero(&self, m: &PolyMatrix) -> bool {
        (0..m.rows()).all(|r| m.row(r).iter().all(|p| self.is_zero(p)))
    }
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: Arc<QuotientRing>,
    lo: i64,
    ranks: Vec<usize>,
    diffs: BTreeMap<i64, PolyMatrix>,
    window: Option<(i64, i64)>,
    labels: BTreeMap<i64, Vec<String>>,
}

impl ChainComplex {
    /// Builds a complex and checks `d∘d ≡ 0` modulo the relations.
    pub fn new(
        ring: Arc<QuotientRing>,
        lo: i64,
        ranks: Vec<usize>,
        diffs: BTreeMap<i64, PolyMatrix>,
    ) -> Result<Self, ComplexError> {
        let c = Self::unchecked(ring, lo, ranks, diffs)?;
        if let Some(degree) = c.first_nonzero_square() {
            return Err(ComplexError::NotAComplex { degree });
        }
        Ok(c)
    }

    /// Builds a complex checking only matrix shapes.
    pub fn unchecked(
        ring: Arc<QuotientRing>,
        lo: i64,
        ranks: Vec<usize>,
        diffs: BTreeMap<i64, PolyMatrix>,
    ) -> Result<Self, ComplexError> {
        let mut c = ChainComplex {
            ring,
            lo,
            ranks,
            diffs: BTreeMap::new(),
            window: None,
            labels: BTreeMap::new(),
        };
        for (degree, m) in diffs {
            if degree <= c.lo || degree > c.hi() {
                if m.rows() * m.cols() == 0 || m.is_zero() {
                    continue;
                }
                return Err(ComplexError::StrayDifferential { degree });
            }
            let expected = (c.rank(degree - 1), c.rank(degree));
            if m.shape() != expected {
                return Err(ComplexError::Shape {
                    degree,
                    expected,
                    found: m.shape(),
                });
            }
            if **m.ring() != **c.ring.ambient() {
                return Err(ComplexError::RingMismatch);
            }
            if !m.is_zero() {
                c.diffs.insert(degree, m);
            }
        }
        Ok(c)
    }

    pub fn zero(ring: Arc<QuotientRing>) -> Self {
        ChainComplex {
            ring,
            lo: 0,
            ranks: Vec::new(),
            diffs: BTreeMap::new(),
            window: None,
            labels: BTreeMap::new(),
        }
    }

    /// Restricts the degrees in which verdicts are claimed.
    pub fn with_window(mut self, lo: i64, hi: i64) -> Result<Self, ComplexError> {
        if lo > hi {
            return Err(ComplexError::BadWindow(lo, hi));
        }
        self.window = Some((lo, hi));
        Ok(self)
    }

    pub fn with_labels(mut self, labels: BTreeMap<i64, Vec<String>>) -> Result<Self, ComplexError> {
        for (&degree, l) in &labels {
            if l.len() != self.rank(degree) {
                return Err(ComplexError::LabelCount {
                    degree,
                    expected: self.rank(degree),
                    found: l.len(),
                });
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_i` as a `rank(i-1) × rank(i)` matrix (zero if not stored).
    pub fn d(&self, i: i64) -> PolyMatrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zero(self.ring.ambient(), self.rank(i - 1), self.rank(i)))
    }

    /// Nonzero differentials keyed by source degree.
    pub fn differentials(&self) -> &BTreeMap<i64, PolyMatrix> {
        &self.diffs
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        self.window
    }

    /// The declared window, or `[lo - 1, hi + 1]`.
    pub fn effective_window(&self) -> (i64, i64) {
        self.window.unwrap_or((self.lo - 1, self.hi() + 1))
    }

    pub fn labels(&self, i: i64) -> Option<&[String]> {
        self.labels.get(&i).map(Vec::as_slice)
    }

    pub fn all_labels(&self) -> &BTreeMap<i64, Vec<String>> {
        &self.labels
    }

    fn first_nonzero_square(&self) -> Option<i64> {
        self.nonzero_squares().first().copied()
    }

    /// Degrees `i` where `d_{i-1} d_i` is nonzero modulo the relations.
    pub fn nonzero_squares(&self) -> Vec<i64> {
        let test = RelationTest::new(&self.ring);
        let mut out = Vec::new();
        for (&i, d) in &self.diffs {
            if let Some(below) = self.diffs.get(&(i - 1)) {
                let sq = below.try_mul(d).expect("shapes checked");
                if !test.matrix_is_zero(&sq) {
                    out.push(i);
                }
            }
        }
        out
    }

    /// Applies a ring homomorphism entrywise.
    pub fn restrict(&self, hom: &RingHom) -> Result<ChainComplex, ComplexError> {
        if *hom.source() != self.ring {
            return Err(ComplexError::RingMismatch);
        }
        check_hom(hom)?;
        let mut diffs = BTreeMap::new();
        for (&i, d) in &self.diffs {
            diffs.insert(i, d.apply_hom(hom)?);
        }
        let mut c = ChainComplex::new(hom.target().clone(), self.lo, self.ranks.clone(), diffs)?;
        c.window = self.window;
        c.labels = self.labels.clone();
        Ok(c)
    }
}

/// True iff every composite `d_{i-1} d_i` vanishes modulo the relations.
pub fn check_differential(c: &ChainComplex) -> bool {
    c.first_nonzero_square().is_none()
}

/// Degreewise maps `f_i: A_i -> B_i` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: BTreeMap<i64, PolyMatrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        maps: BTreeMap<i64, PolyMatrix>,
    ) -> Result<Self, ComplexError> {
        if *source.ring != *target.ring {
            return Err(ComplexError::RingMismatch);
        }
        let mut kept = BTreeMap::new();
        for (degree, m) in maps {
            let expected = (target.rank(degree), source.rank(degree));
            if m.shape() != expected {
                return Err(ComplexError::Shape {
                    degree,
                    expected,
                    found: m.shape(),
                });
            }
            if !m.is_zero() {
                kept.insert(degree, m);
            }
        }
        let f = ChainMap {
            source,
            target,
            maps: kept,
        };
        let test = RelationTest::new(&f.source.ring);
        let lo = f.source.lo.min(f.target.lo);
        let hi = f.source.hi().max(f.target.hi());
        for i in lo..=hi + 1 {
            let lhs = f.map(i - 1).try_mul(&f.source.d(i)).expect("shapes");
            let rhs = f.target.d(i).try_mul(&f.map(i)).expect("shapes");
            let diff = lhs.try_add(&rhs.neg()).expect("shapes");
            if !test.matrix_is_zero(&diff) {
                return Err(ComplexError::NotAChainMap { degree: i });
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let maps = (c.lo..=c.hi())
            .map(|i| (i, PolyMatrix::identity(c.ring.ambient(), c.rank(i))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            maps: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn map(&self, i: i64) -> PolyMatrix {
        self.maps.get(&i).cloned().unwrap_or_else(|| {
            PolyMatrix::zero(self.source.ring.ambient(), self.target.rank(i), self.source.rank(i))
        })
    }

    /// `f[s]`, with `f[s]_i = f_{i-s}`.
    pub fn shift(&self, s: i64) -> ChainMap {
        ChainMap {
            source: shift(&self.source, s),
            target: shift(&self.target, s),
            maps: self.maps.iter().map(|(&i, m)| (i + s, m.clone())).collect(),
        }
    }
}

fn degree_span(parts: &[(i64, i64)]) -> Option<(i64, i64)> {
    let nonempty: Vec<_> = parts.iter().filter(|(l, h)| l <= h).collect();
    let lo = nonempty.iter().map(|p| p.0).min()?;
    let hi = nonempty.iter().map(|p| p.1).max()?;
    Some((lo, hi))
}

/// `cone(f)_i = A_{i-1} ⊕ B_i` with differential `[[-d_A, 0], [f, d_B]]`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let (a, b) = (&f.source, &f.target);
    let ring = a.ring.clone();
    let Some((lo, hi)) = degree_span(&[(a.lo + 1, a.hi() + 1), (b.lo, b.hi())]) else {
        return ChainComplex::zero(ring);
    };
    let rank = |i: i64| a.rank(i - 1) + b.rank(i);
    let ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let mut diffs = BTreeMap::new();
    let amb = ring.ambient();
    for i in lo + 1..=hi {
        let mut m = PolyMatrix::zero(amb, rank(i - 1), rank(i));
        let (ra, ca) = (a.rank(i - 2), a.rank(i - 1));
        m.set_block(0, 0, &a.d(i - 1).neg());
        m.set_block(ra, 0, &f.map(i - 1));
        m.set_block(ra, ca, &b.d(i));
        diffs.insert(i, m);
    }
    let mut labels = BTreeMap::new();
    for i in lo..=hi {
        if let (Some(la), Some(lb)) = (label_or_empty(a, i - 1), label_or_empty(b, i)) {
            labels.insert(i, la.into_iter().chain(lb).collect());
        }
    }
    let mut c = ChainComplex::unchecked(ring, lo, ranks, diffs).expect("cone shapes are consistent");
    c.labels = labels;
    c
}

fn label_or_empty(c: &ChainComplex, i: i64) -> Option<Vec<String>> {
    if c.rank(i) == 0 {
        Some(Vec::new())
    } else {
        c.labels(i).map(|l| l.to_vec())
    }
}

/// `C[s]_i = C_{i-s}`, differentials scaled by `(-1)^s`.
pub fn shift(c: &ChainComplex, s: i64) -> ChainComplex {
    let negate = s.rem_euclid(2) == 1;
    ChainComplex {
        ring: c.ring.clone(),
        lo: c.lo + s,
        ranks: c.ranks.clone(),
        diffs: c
            .diffs
            .iter()
            .map(|(&i, d)| (i + s, if negate { d.neg() } else { d.clone() }))
            .collect(),
        window: c.window.map(|(l, h)| (l + s, h + s)),
        labels: c.labels.iter().map(|(&i, l)| (i + s, l.clone())).collect(),
    }
}

/// Degreewise block sum.
pub fn direct_sum(a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex, ComplexError> {
    if *a.ring != *b.ring {
        return Err(ComplexError::RingMismatch);
    }
    let ring = a.ring.clone();
    let Some((lo, hi)) = degree_span(&[(a.lo, a.hi()), (b.lo, b.hi())]) else {
        return Ok(ChainComplex::zero(ring));
    };
    let ranks = (lo..=hi).map(|i| a.rank(i) + b.rank(i)).collect();
    let diffs = (lo + 1..=hi).map(|i| (i, a.d(i).direct_sum(&b.d(i)))).collect();
    let mut labels = BTreeMap::new();
    for i in lo..=hi {
        if let (Some(la), Some(lb)) = (label_or_empty(a, i), label_or_empty(b, i)) {
            labels.insert(i, la.into_iter().chain(lb).collect());
        }
    }
    let mut c = ChainComplex::unchecked(ring, lo, ranks, diffs)?;
    c.labels = labels;
    Ok(c)
}

/// Koszul complex on `f_1, ..., f_n`, in degrees `0..=n`. The basis of
/// degree `k` is the `k`-subsets of `{1..n}` in lexicographic order.
pub fn koszul_complex(ring: Arc<QuotientRing>, seq: &[Polynomial]) -> Result<ChainComplex, ComplexError> {
    let n = seq.len();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| k_subsets(n, k)).collect();
    let amb = ring.ambient().clone();
    let mut diffs = BTreeMap::new();
    for k in 1..=n {
        let (src, tgt) = (&subsets[k], &subsets[k - 1]);
        let mut m = PolyMatrix::zero(&amb, tgt.len(), src.len());
        for (c, s) in src.iter().enumerate() {
            for (pos, &j) in s.iter().enumerate() {
                let face: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
                let r = tgt.binary_search(&face).expect("face is a subset");
                let entry = if pos % 2 == 0 { seq[j].clone() } else { -&seq[j] };
                m.set(r, c, entry);
            }
        }
        diffs.insert(k as i64, m);
    }
    let ranks = subsets.iter().map(Vec::len).collect();
    ChainComplex::new(ring, 0, ranks, diffs)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests;
