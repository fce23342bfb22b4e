//! Graded linear algebra behind weakly product bimodules: rank
//! decompositions of graded maps and the formal sums describing the
//! convolution of a cone of product morphisms.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::DenseMatrix;
use crate::scalars::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimodError {
    #[error("degree {degree}: expected a {expected:?} matrix, found {found:?}")]
    Shape {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix in degree {0} is over a different field")]
    Field(i64),
}

/// A finite-dimensional graded vector space, stored by nonzero degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    dims: BTreeMap<i64, usize>,
}

impl GradedVectorSpace {
    pub fn new<I: IntoIterator<Item = (i64, usize)>>(dims: I) -> Self {
        let mut out = BTreeMap::new();
        for (d, n) in dims {
            *out.entry(d).or_insert(0) += n;
        }
        out.retain(|_, n| *n > 0);
        GradedVectorSpace { dims: out }
    }

    /// `k^n` concentrated in one degree.
    pub fn concentrated(degree: i64, n: usize) -> Self {
        Self::new([(degree, n)])
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().map(|(&d, &n)| (d, n))
    }
}

/// A degree-preserving linear map; absent degrees carry the zero matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinearMap {
    field: FieldSpec,
    source: GradedVectorSpace,
    target: GradedVectorSpace,
    maps: BTreeMap<i64, DenseMatrix>,
}

impl GradedLinearMap {
    pub fn new(
        field: FieldSpec,
        source: GradedVectorSpace,
        target: GradedVectorSpace,
        maps: BTreeMap<i64, DenseMatrix>,
    ) -> Result<Self, BimodError> {
        for (&d, m) in &maps {
            let expected = (target.dim(d), source.dim(d));
            if (m.rows(), m.cols()) != expected {
                return Err(BimodError::Shape {
                    degree: d,
                    expected,
                    found: (m.rows(), m.cols()),
                });
            }
            if m.field() != field {
                return Err(BimodError::Field(d));
            }
        }
        let maps = maps.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(GradedLinearMap {
            field,
            source,
            target,
            maps,
        })
    }

    pub fn zero(field: FieldSpec, source: GradedVectorSpace, target: GradedVectorSpace) -> Self {
        GradedLinearMap {
            field,
            source,
            target,
            maps: BTreeMap::new(),
        }
    }

    pub fn identity(field: FieldSpec, space: GradedVectorSpace) -> Self {
        let maps = space
            .degrees()
            .map(|(d, n)| (d, DenseMatrix::identity(field, n)))
            .collect();
        GradedLinearMap {
            field,
            source: space.clone(),
            target: space,
            maps,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn source(&self) -> &GradedVectorSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedVectorSpace {
        &self.target
    }

    /// The matrix in `degree`, of shape `dim target × dim source`.
    pub fn matrix(&self, degree: i64) -> DenseMatrix {
        self.maps
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| DenseMatrix::zeros(self.field, self.target.dim(degree), self.source.dim(degree)))
    }

    /// All degrees where source or target is nonzero.
    pub fn support(&self) -> BTreeSet<i64> {
        self.source
            .degrees()
            .chain(self.target.degrees())
            .map(|(d, _)| d)
            .collect()
    }
}

/// Splitting `source = V ⊕ U` and `target = V ⊕ W` with `U` the kernel and
/// `W` a complement of the image.
#[derive(Clone, Debug)]
pub struct ConeDecomposition {
    pub u: GradedVectorSpace,
    pub v: GradedVectorSpace,
    pub w: GradedVectorSpace,
    /// `P` per degree: source coordinates to `(V, U)` coordinates.
    pub source_change: BTreeMap<i64, DenseMatrix>,
    /// `Q` per degree: target coordinates to `(V, W)` coordinates.
    pub target_change: BTreeMap<i64, DenseMatrix>,
}

impl ConeDecomposition {
    /// `[[Id_V, 0], [0, 0]]` of shape `dim target × dim source`.
    pub fn normal_form(&self, field: FieldSpec, degree: i64) -> DenseMatrix {
        let s = self.v.dim(degree) + self.u.dim(degree);
        let t = self.v.dim(degree) + self.w.dim(degree);
        let mut m = DenseMatrix::zeros(field, t, s);
        for i in 0..self.v.dim(degree) {
            m.set(i, i, field.one());
        }
        m
    }

    /// `Q⁻¹ · [[Id, 0], [0, 0]] · P`, which recovers the decomposed map.
    pub fn reassemble(&self, field: FieldSpec, degree: i64) -> DenseMatrix {
        let n = self.normal_form(field, degree);
        let (Some(p), Some(q)) = (self.source_change.get(&degree), self.target_change.get(&degree)) else {
            return n;
        };
        let qinv = q.inverse().expect("basis change is invertible");
        qinv.try_mul(&n).and_then(|m| m.try_mul(p)).expect("shapes agree")
    }
}

/// Rank decomposition of every degree of `phi`.
///
/// `P⁻¹` has the standard vectors at the pivot columns followed by a kernel
/// basis; `Q⁻¹` has the pivot columns of `phi` followed by the standard
/// vectors that complete them to a basis.
pub fn decompose(phi: &GradedLinearMap) -> ConeDecomposition {
    let field = phi.field;
    let mut out = ConeDecomposition {
        u: GradedVectorSpace::default(),
        v: GradedVectorSpace::default(),
        w: GradedVectorSpace::default(),
        source_change: BTreeMap::new(),
        target_change: BTreeMap::new(),
    };
    let (mut u, mut v, mut w) = (Vec::new(), Vec::new(), Vec::new());
    for d in phi.support() {
        let m = phi.matrix(d);
        let (t, s) = (m.rows(), m.cols());
        let pivots = m.echelon().pivots;
        let r = pivots.len();

        let mut pinv_cols: Vec<_> = pivots
            .iter()
            .map(|&j| {
                let mut e = vec![field.zero(); s];
                e[j] = field.one();
                e
            })
            .collect();
        pinv_cols.extend(m.kernel());
        let pinv = DenseMatrix::from_columns(field, s, &pinv_cols);

        let mut qinv_cols: Vec<_> = pivots.iter().map(|&j| m.column(j)).collect();
        let mut current = DenseMatrix::from_columns(field, t, &qinv_cols);
        for i in 0..t {
            if qinv_cols.len() == t {
                break;
            }
            let mut e = vec![field.zero(); t];
            e[i] = field.one();
            let mut trial = qinv_cols.clone();
            trial.push(e);
            let candidate = DenseMatrix::from_columns(field, t, &trial);
            if candidate.rank() > current.rank() {
                qinv_cols = trial;
                current = candidate;
            }
        }
        let qinv = DenseMatrix::from_columns(field, t, &qinv_cols);

        out.source_change.insert(d, pinv.inverse().expect("pivots and kernel span"));
        out.target_change.insert(d, qinv.inverse().expect("completed basis"));
        v.push((d, r));
        u.push((d, s - r));
        w.push((d, t - r));
    }
    out.u = GradedVectorSpace::new(u);
    out.v = GradedVectorSpace::new(v);
    out.w = GradedVectorSpace::new(w);
    out
}

/// `multiplicity` shifted copies of the object `label`, placed in `degree`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormalTerm {
    pub degree: i64,
    pub multiplicity: usize,
    pub label: String,
}

/// A finite direct sum of shifted objects, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalSum {
    pub terms: Vec<FormalTerm>,
}

impl FormalSum {
    fn push(&mut self, degree: i64, multiplicity: usize, label: &str) {
        if multiplicity == 0 {
            return;
        }
        match self.terms.iter_mut().find(|t| t.degree == degree && t.label == label) {
            Some(t) => t.multiplicity += multiplicity,
            None => self.terms.push(FormalTerm {
                degree,
                multiplicity,
                label: label.to_string(),
            }),
        }
    }

    fn finish(mut self) -> Self {
        self.terms.sort();
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.terms.iter().map(|t| t.label.as_str()).collect()
    }

    /// Whether every term uses one of `allowed`.
    pub fn supported_on<S: AsRef<str>>(&self, allowed: &[S]) -> bool {
        self.terms.iter().all(|t| allowed.iter().any(|a| a.as_ref() == t.label))
    }

    pub fn multiplicity(&self, label: &str) -> usize {
        self.terms.iter().filter(|t| t.label == label).map(|t| t.multiplicity).sum()
    }
}

/// `H ⊗ G2` as a sum of shifted copies of `G2`.
pub fn convolve_product(h: &GradedVectorSpace, label: &str) -> FormalSum {
    let mut out = FormalSum::default();
    for (d, n) in h.degrees() {
        out.push(d, n, label);
    }
    out.finish()
}

/// Object tags for the three pieces of a cone of product morphisms
/// `φ1 ⊠ φ2 : G1 ⊠ G2 -> G1' ⊠ G2'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeLabels {
    pub source: String,
    pub cone: String,
    pub target: String,
}

impl ConeLabels {
    pub fn new(source: &str, cone: &str, target: &str) -> Self {
        ConeLabels {
            source: source.into(),
            cone: cone.into(),
            target: target.into(),
        }
    }

    pub fn all(&self) -> [&str; 3] {
        [&self.source, &self.cone, &self.target]
    }
}

/// `(U ⊗ G2)[1] ⊕ (V ⊗ cone(φ2)) ⊕ (W ⊗ G2')` for the map induced by `φ1`.
pub fn cone_image_decomposition(phi1: &GradedLinearMap, labels: &ConeLabels) -> FormalSum {
    let dec = decompose(phi1);
    let mut out = FormalSum::default();
    for (d, n) in dec.u.degrees() {
        out.push(d + 1, n, &labels.source);
    }
    for (d, n) in dec.v.degrees() {
        out.push(d, n, &labels.cone);
    }
    for (d, n) in dec.w.degrees() {
        out.push(d, n, &labels.target);
    }
    out.finish()
}

/// Tag for the cone of a map between two pieces.
pub fn cone_label(from: &str, to: &str) -> String {
    format!("cone({from} -> {to})")
}

/// The labels an iterated cone over a commuting square may use: the six
/// pieces and the cones between a top piece and a bottom piece.
pub fn square_closure(top: &ConeLabels, bottom: &ConeLabels) -> Vec<String> {
    let mut out: Vec<String> = top.all().iter().chain(bottom.all().iter()).map(|s| s.to_string()).collect();
    for a in top.all() {
        for b in bottom.all() {
            out.push(cone_label(a, b));
        }
    }
    out
}

/// Certificate for the cone of a map between two cones of product
/// morphisms, given the induced maps `top: H(G1⊗F) -> H(G1'⊗F)` and
/// `bottom: H(H1⊗F) -> H(H1'⊗F)` and the vertical maps `left`, `right`
/// between their sources and targets.
///
/// Both horizontal maps are split as in [`decompose`]; the vertical maps are
/// rewritten in the split bases and every nonzero block between a top piece
/// and a bottom piece contributes its rank as a cone of those pieces, the
/// rest of each piece surviving on its own.
pub fn iterated_cone_decomposition(
    top: &GradedLinearMap,
    bottom: &GradedLinearMap,
    left: &GradedLinearMap,
    right: &GradedLinearMap,
    top_labels: &ConeLabels,
    bottom_labels: &ConeLabels,
) -> Result<FormalSum, BimodError> {
    let field = top.field;
    for (m, s, t) in [
        (left, top.source(), bottom.source()),
        (right, top.target(), bottom.target()),
    ] {
        for d in m.support().into_iter().chain(s.degrees().map(|(d, _)| d)) {
            let expected = (t.dim(d), s.dim(d));
            let mm = m.matrix(d);
            if (mm.rows(), mm.cols()) != expected {
                return Err(BimodError::Shape {
                    degree: d,
                    expected,
                    found: (mm.rows(), mm.cols()),
                });
            }
        }
    }
    let dt = decompose(top);
    let db = decompose(bottom);
    let degrees: BTreeSet<i64> = top.support().into_iter().chain(bottom.support()).collect();

    let mut out = FormalSum::default();
    for d in degrees {
        // The cone of `top` in degree d is (source piece U at d-1 shifted up
        // by one, V at d, W at d); the vertical map acts piece by piece.
        let pieces = |dec: &ConeDecomposition, labels: &ConeLabels| {
            [
                (labels.source.clone(), dec.v.dim(d), dec.u.dim(d), true),
                (labels.target.clone(), dec.v.dim(d), dec.w.dim(d), false),
            ]
        };
        let change = |dec: &ConeDecomposition, src: bool, n: usize| {
            let map = if src { &dec.source_change } else { &dec.target_change };
            map.get(&d).cloned().unwrap_or_else(|| DenseMatrix::identity(field, n))
        };
        let mut residual: BTreeMap<String, usize> = BTreeMap::new();
        residual.insert(top_labels.cone.clone(), dt.v.dim(d));
        residual.insert(bottom_labels.cone.clone(), db.v.dim(d));
        let mut blocks = Vec::new();
        for ((tl, tv, trest, src), (bl, bv, brest, _)) in pieces(&dt, top_labels).into_iter().zip(pieces(&db, bottom_labels)) {
            let vert = if src { left.matrix(d) } else { right.matrix(d) };
            let p_top = change(&dt, src, tv + trest);
            let p_bot = change(&db, src, bv + brest);
            let inv = p_top.inverse().expect("invertible");
            let m = p_bot.try_mul(&vert).and_then(|x| x.try_mul(&inv)).expect("shapes agree");
            // rows: (V_b, rest_b); cols: (V_t, rest_t)
            let split = |r0: usize, r1: usize, c0: usize, c1: usize| {
                let mut b = DenseMatrix::zeros(field, r1 - r0, c1 - c0);
                for r in r0..r1 {
                    for c in c0..c1 {
                        b.set(r - r0, c - c0, m.get(r, c).clone());
                    }
                }
                b
            };
            let (rows, cols) = (bv + brest, tv + trest);
            let entries = [
                (top_labels.cone.clone(), bottom_labels.cone.clone(), split(0, bv, 0, tv)),
                (top_labels.cone.clone(), bl.clone(), split(bv, rows, 0, tv)),
                (tl.clone(), bottom_labels.cone.clone(), split(0, bv, tv, cols)),
                (tl.clone(), bl.clone(), split(bv, rows, tv, cols)),
            ];
            residual.entry(tl.clone()).or_insert(trest);
            residual.entry(bl.clone()).or_insert(brest);
            blocks.extend(entries);
        }
        for (from, to, b) in blocks {
            let r = b.rank();
            if r == 0 {
                continue;
            }
            out.push(d, r, &cone_label(&from, &to));
            for l in [&from, &to] {
                let e = residual.get_mut(l).expect("piece recorded");
                *e = e.saturating_sub(r);
            }
        }
        for (label, n) in residual {
            let shift = if label == top_labels.source || label == bottom_labels.source { 1 } else { 0 };
            out.push(d + shift, n, &label);
        }
    }
    Ok(out.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F: FieldSpec = FieldSpec::Rationals;

    fn single(m: DenseMatrix) -> GradedLinearMap {
        let (t, s) = (m.rows(), m.cols());
        GradedLinearMap::new(
            F,
            GradedVectorSpace::concentrated(0, s),
            GradedVectorSpace::concentrated(0, t),
            BTreeMap::from([(0, m)]),
        )
        .unwrap()
    }

    fn uvw(phi: &GradedLinearMap) -> (usize, usize, usize) {
        let d = decompose(phi);
        (d.u.dim(0), d.v.dim(0), d.w.dim(0))
    }

    #[test]
    fn decompose_small_cases() {
        assert_eq!(uvw(&single(DenseMatrix::identity(F, 1))), (0, 1, 0));
        assert_eq!(uvw(&single(DenseMatrix::zeros(F, 3, 2))), (2, 0, 3));
        assert_eq!(uvw(&single(DenseMatrix::from_i64(F, &[&[1, 0], &[0, 0]]))), (1, 1, 1));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let err = GradedLinearMap::new(
            F,
            GradedVectorSpace::concentrated(0, 2),
            GradedVectorSpace::concentrated(0, 2),
            BTreeMap::from([(0, DenseMatrix::zeros(F, 3, 2))]),
        )
        .unwrap_err();
        assert!(matches!(err, BimodError::Shape { degree: 0, .. }));
    }

    #[test]
    fn convolution_examples() {
        let s = convolve_product(&GradedVectorSpace::concentrated(0, 1), "G2");
        assert_eq!(
            s.terms,
            vec![FormalTerm {
                degree: 0,
                multiplicity: 1,
                label: "G2".into()
            }]
        );
        let s = convolve_product(&GradedVectorSpace::concentrated(1, 2), "G2");
        assert_eq!((s.terms[0].degree, s.terms[0].multiplicity), (1, 2));
        assert!(convolve_product(&GradedVectorSpace::default(), "G2").is_empty());
    }

    #[test]
    fn cone_image_labels() {
        let labels = ConeLabels::new("G2", "C", "G2'");
        let id = cone_image_decomposition(&single(DenseMatrix::identity(F, 2)), &labels);
        assert_eq!(id.labels(), BTreeSet::from(["C"]));
        let zero = cone_image_decomposition(&single(DenseMatrix::zeros(F, 2, 2)), &labels);
        assert_eq!(zero.labels(), BTreeSet::from(["G2", "G2'"]));
        let mixed = cone_image_decomposition(&single(DenseMatrix::from_i64(F, &[&[1, 0], &[0, 0]])), &labels);
        assert_eq!(mixed.labels(), BTreeSet::from(["C", "G2", "G2'"]));
        for l in ["C", "G2", "G2'"] {
            assert_eq!(mixed.multiplicity(l), 1);
        }
        // the kernel part moves up one degree
        assert_eq!(mixed.terms.iter().find(|t| t.label == "G2").unwrap().degree, 1);
    }

    fn field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::prime(7).unwrap())]
    }

    fn graded_map() -> impl Strategy<Value = GradedLinearMap> {
        (field(), prop::collection::vec((-3i64..=3, 0usize..=5, 0usize..=5, any::<u64>()), 1..4)).prop_map(|(f, parts)| {
            let mut maps = BTreeMap::new();
            let mut src = Vec::new();
            let mut tgt = Vec::new();
            for (d, s, t, seed) in parts {
                if maps.contains_key(&d) {
                    continue;
                }
                let mut m = DenseMatrix::zeros(f, t, s);
                let mut x = seed;
                for r in 0..t {
                    for c in 0..s {
                        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        // sparse small entries make rank deficiency common
                        let v = ((x >> 33) % 5) as i64 - 2;
                        let v = if (x >> 20) % 3 == 0 { 0 } else { v };
                        m.set(r, c, f.from_i64(v));
                    }
                }
                maps.insert(d, m);
                src.push((d, s));
                tgt.push((d, t));
            }
            GradedLinearMap::new(f, GradedVectorSpace::new(src), GradedVectorSpace::new(tgt), maps).unwrap()
        })
    }

    fn invertible(f: FieldSpec, n: usize, seed: u64) -> DenseMatrix {
        // unit lower times unit upper triangular
        let mut l = DenseMatrix::identity(f, n);
        let mut u = DenseMatrix::identity(f, n);
        let mut x = seed;
        for r in 0..n {
            for c in 0..n {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let v = f.from_i64(((x >> 33) % 7) as i64 - 3);
                if r > c {
                    l.set(r, c, v);
                } else if r < c {
                    u.set(r, c, v);
                }
            }
        }
        l.try_mul(&u).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn reassembly_and_bookkeeping(phi in graded_map()) {
            let dec = decompose(&phi);
            for d in phi.support() {
                prop_assert_eq!(dec.reassemble(phi.field(), d), phi.matrix(d));
                prop_assert_eq!(dec.u.dim(d) + dec.v.dim(d), phi.source().dim(d));
                prop_assert_eq!(dec.v.dim(d) + dec.w.dim(d), phi.target().dim(d));
                prop_assert_eq!(dec.v.dim(d), phi.matrix(d).rank());
            }
            let labels = ConeLabels::new("G2", "cone(phi2)", "G2'");
            prop_assert!(cone_image_decomposition(&phi, &labels).supported_on(&labels.all()));
        }

        #[test]
        fn rank_is_invariant_under_basis_change(phi in graded_map(), seed in any::<u64>()) {
            let f = phi.field();
            let maps = phi.support().into_iter().map(|d| {
                let m = phi.matrix(d);
                let a = invertible(f, m.rows(), seed);
                let b = invertible(f, m.cols(), seed.rotate_left(17));
                (d, a.try_mul(&m).unwrap().try_mul(&b).unwrap())
            }).collect();
            let conj = GradedLinearMap::new(f, phi.source().clone(), phi.target().clone(), maps).unwrap();
            let (a, b) = (decompose(&phi), decompose(&conj));
            prop_assert_eq!(a.v, b.v);
        }

        #[test]
        fn iterated_cones_stay_in_closure(top in graded_map(), seed in any::<u64>()) {
            // bottom = top conjugated, vertical maps are the conjugating isomorphisms
            let f = top.field();
            let mut left = BTreeMap::new();
            let mut right = BTreeMap::new();
            let mut bottom = BTreeMap::new();
            for d in top.support() {
                let m = top.matrix(d);
                let a = invertible(f, m.rows(), seed);
                let b = invertible(f, m.cols(), seed.rotate_left(9));
                let binv = b.inverse().unwrap();
                bottom.insert(d, a.try_mul(&m).unwrap().try_mul(&binv).unwrap());
                left.insert(d, b);
                right.insert(d, a);
            }
            let (s, t) = (top.source().clone(), top.target().clone());
            let bottom = GradedLinearMap::new(f, s.clone(), t.clone(), bottom).unwrap();
            let left = GradedLinearMap::new(f, s.clone(), s, left).unwrap();
            let right = GradedLinearMap::new(f, t.clone(), t, right).unwrap();
            let tl = ConeLabels::new("G2", "cone(g2)", "G2'");
            let bl = ConeLabels::new("H2", "cone(h2)", "H2'");
            let sum = iterated_cone_decomposition(&top, &bottom, &left, &right, &tl, &bl).unwrap();
            prop_assert!(sum.supported_on(&square_closure(&tl, &bl)));
        }
    }

    #[test]
    fn iterated_cone_of_zero_square() {
        let phi = single(DenseMatrix::identity(F, 1));
        let z = GradedLinearMap::zero(F, phi.source().clone(), phi.source().clone());
        let tl = ConeLabels::new("G2", "cone(g2)", "G2'");
        let bl = ConeLabels::new("H2", "cone(h2)", "H2'");
        let sum = iterated_cone_decomposition(&phi, &phi, &z, &z, &tl, &bl).unwrap();
        assert_eq!(sum.labels(), BTreeSet::from(["cone(g2)", "cone(h2)"]));
        let id = GradedLinearMap::identity(F, phi.source().clone());
        let sum = iterated_cone_decomposition(&phi, &phi, &id, &id, &tl, &bl).unwrap();
        assert_eq!(sum.labels(), BTreeSet::from(["cone(cone(g2) -> cone(h2))"]));
    }
}
