//! Gröbner bases for submodules of free modules over a quotient ring
//! `R = S/J`: normal forms, membership, submodule equality, syzygies and
//! linear solving.
//!
//! All computations happen over the ambient polynomial ring `S`; a
//! submodule `M ⊆ R^n` is represented by its preimage `M + J·S^n`
//! ([`quotient_augment`]). The module order is position-over-term with the
//! lower component index taking priority, ties broken by the ring's
//! monomial order.

mod engine;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::polyring::{Monomial, PolyError, PolyMatrix, PolyRing, Polynomial, QuotientRing, RingHom};
use crate::scalars::Scalar;

use engine::{Basis, Engine, Term, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("free vectors need at least one component")]
    EmptyVector,
    #[error("relation {index} of the source ring is not mapped into the target relations")]
    HomRelation { index: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An element of `R^n`, stored as its component polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeVector {
    comps: Vec<Polynomial>,
}

impl FreeVector {
    pub fn new(comps: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        let first = comps.first().ok_or(GroebnerError::EmptyVector)?;
        if comps.iter().any(|p| **p.ring() != **first.ring()) {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(FreeVector { comps })
    }

    pub fn parse<S: AsRef<str>>(ring: &QuotientRing, comps: &[S]) -> Result<Self, GroebnerError> {
        let comps = comps
            .iter()
            .map(|s| ring.parse_poly(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(comps)
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeVector {
            comps: vec![Polynomial::zero(ring); rank],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(ring: &Arc<PolyRing>, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.comps[i] = Polynomial::one(ring);
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<Polynomial> {
        self.comps
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.comps[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, p: &Polynomial) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().map(|c| c * p).collect(),
        }
    }

    pub fn add(&self, other: &FreeVector) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &FreeVector) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        }
    }

    /// Leading term under position-over-term order.
    pub fn leading_term(&self) -> Option<(usize, &Monomial, &Scalar)> {
        self.comps
            .iter()
            .enumerate()
            .find_map(|(i, p)| p.leading_term().map(|(m, c)| (i, m, c)))
    }

    pub(crate) fn to_vector(&self, offset: u32) -> Vector {
        let mut out = Vec::new();
        for (i, p) in self.comps.iter().enumerate() {
            for (m, c) in p.terms() {
                out.push(Term {
                    comp: i as u32 + offset,
                    mono: m.clone(),
                    coeff: c.clone(),
                });
            }
        }
        out
    }

    /// Components `offset .. offset + rank` of an engine vector.
    pub(crate) fn from_vector(ring: &Arc<PolyRing>, v: &[Term], offset: u32, rank: usize) -> Self {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for t in v {
            if t.comp >= offset && ((t.comp - offset) as usize) < rank {
                buckets[(t.comp - offset) as usize].push((t.mono.clone(), t.coeff.clone()));
            }
        }
        FreeVector {
            comps: buckets
                .into_iter()
                .map(|terms| Polynomial::from_sorted_terms(ring, terms))
                .collect(),
        }
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join("; "))
    }
}

impl fmt::Debug for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finitely generated submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Arc<QuotientRing>,
    rank: usize,
    gens: Vec<FreeVector>,
}

impl Submodule {
    pub fn new(ring: Arc<QuotientRing>, rank: usize, gens: Vec<FreeVector>) -> Result<Self, GroebnerError> {
        for g in &gens {
            if g.rank() != rank {
                return Err(GroebnerError::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
            if **g.ring() != **ring.ambient() {
                return Err(GroebnerError::RingMismatch);
            }
        }
        Ok(Submodule { ring, rank, gens })
    }

    pub fn zero(ring: Arc<QuotientRing>, rank: usize) -> Self {
        Submodule {
            ring,
            rank,
            gens: Vec::new(),
        }
    }

    /// Ideal generated by the given polynomials, as a rank-1 submodule.
    pub fn ideal(ring: Arc<QuotientRing>, gens: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        let gens = gens
            .into_iter()
            .map(|p| FreeVector::new(vec![p]))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, 1, gens)
    }

    pub fn parse_ideal<S: AsRef<str>>(ring: Arc<QuotientRing>, gens: &[S]) -> Result<Self, GroebnerError> {
        let polys = gens
            .iter()
            .map(|s| ring.parse_poly(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::ideal(ring, polys)
    }

    /// Image of a matrix: the span of its columns.
    pub fn column_span(ring: Arc<QuotientRing>, m: &PolyMatrix) -> Self {
        let gens = (0..m.cols())
            .filter_map(|c| FreeVector::new(m.column(c)).ok())
            .collect();
        Submodule {
            ring,
            rank: m.rows(),
            gens,
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[FreeVector] {
        &self.gens
    }

    pub fn push(&mut self, v: FreeVector) -> Result<(), GroebnerError> {
        if v.rank() != self.rank {
            return Err(GroebnerError::RankMismatch {
                expected: self.rank,
                found: v.rank(),
            });
        }
        self.gens.push(v);
        Ok(())
    }

    /// Sum of two submodules of the same free module.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule, GroebnerError> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Submodule {
            ring: self.ring.clone(),
            rank: self.rank,
            gens,
        })
    }

    fn check(&self, other: &Submodule) -> Result<(), GroebnerError> {
        if self.rank != other.rank {
            return Err(GroebnerError::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        if *self.ring != *other.ring {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(())
    }
}

/// Adjoins `j·e_i` for every relation `j` and every component `i`.
pub fn quotient_augment(s: &Submodule) -> Submodule {
    let mut out = s.clone();
    let amb = s.ring.ambient();
    for i in 0..s.rank {
        for j in s.ring.relations() {
            let mut v = FreeVector::zero(amb, s.rank);
            v.comps[i] = j.clone();
            out.gens.push(v);
        }
    }
    out
}

fn relation_vectors(ring: &QuotientRing, rank: usize, offset: u32) -> Vec<Vector> {
    let amb = ring.ambient();
    let mut out = Vec::new();
    for i in 0..rank {
        for j in ring.relations() {
            let mut v = FreeVector::zero(amb, rank);
            v.comps[i] = j.clone();
            out.push(v.to_vector(offset));
        }
    }
    out
}

/// Reduced Gröbner basis of a submodule (augmented by the relations).
pub struct GroebnerBasis {
    base: Submodule,
    ring: Arc<QuotientRing>,
    rank: usize,
    basis: Basis,
}

/// Computes the reduced Gröbner basis of `quotient_augment(s)`.
pub fn buchberger(s: &Submodule) -> GroebnerBasis {
    let aug = quotient_augment(s);
    let gens: Vec<Vector> = aug.gens.iter().map(|g| g.to_vector(0)).collect();
    let engine = Engine {
        order: s.ring.ambient().order(),
    };
    let elems = engine.groebner(gens, s.rank == 1);
    GroebnerBasis {
        base: s.clone(),
        ring: s.ring.clone(),
        rank: s.rank,
        basis: Basis::from_elems(elems),
    }
}

impl GroebnerBasis {
    /// The submodule this basis was computed from (before augmentation).
    pub fn base(&self) -> &Submodule {
        &self.base
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.basis.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.elems.is_empty()
    }

    /// Basis vectors, ascending by leading term.
    pub fn vectors(&self) -> Vec<FreeVector> {
        self.basis
            .elems
            .iter()
            .map(|v| FreeVector::from_vector(self.ring.ambient(), v, 0, self.rank))
            .collect()
    }

    /// Does the basis contain the unit vector up to scaling, i.e. is the
    /// submodule everything? Only meaningful for rank one.
    pub fn is_unit_ideal(&self) -> bool {
        self.rank == 1
            && self
                .basis
                .elems
                .iter()
                .any(|v| v[0].comp == 0 && v[0].mono.is_one())
    }

    fn check(&self, v: &FreeVector) -> Result<(), GroebnerError> {
        if v.rank() != self.rank {
            return Err(GroebnerError::RankMismatch {
                expected: self.rank,
                found: v.rank(),
            });
        }
        if **v.ring() != **self.ring.ambient() {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(())
    }

    pub fn normal_form(&self, v: &FreeVector) -> Result<FreeVector, GroebnerError> {
        self.check(v)?;
        let engine = Engine {
            order: self.ring.ambient().order(),
        };
        let r = engine.reduce(v.to_vector(0), &self.basis);
        Ok(FreeVector::from_vector(self.ring.ambient(), &r, 0, self.rank))
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool, GroebnerError> {
        self.check(v)?;
        let engine = Engine {
            order: self.ring.ambient().order(),
        };
        Ok(engine.reduce(v.to_vector(0), &self.basis).is_empty())
    }

    /// Compact textual form, one basis vector per line.
    pub fn to_strings(&self) -> Vec<String> {
        self.vectors().iter().map(|v| v.to_string()).collect()
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vectors()).finish()
    }
}

pub fn normal_form(v: &FreeVector, g: &GroebnerBasis) -> Result<FreeVector, GroebnerError> {
    g.normal_form(v)
}

/// Is `v` in `s` as an element of `R^n`?
pub fn member(v: &FreeVector, s: &Submodule) -> Result<bool, GroebnerError> {
    if v.rank() != s.rank {
        return Err(GroebnerError::RankMismatch {
            expected: s.rank,
            found: v.rank(),
        });
    }
    buchberger(s).contains(v)
}

/// Equality of submodules of `R^n` by mutual generator membership.
pub fn submodule_equal(a: &Submodule, b: &Submodule) -> Result<bool, GroebnerError> {
    a.check(b)?;
    let (ga, gb) = (buchberger(a), buchberger(b));
    for g in &b.gens {
        if !ga.contains(g)? {
            return Ok(false);
        }
    }
    for g in &a.gens {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gröbner basis of the graph module of a matrix `M: R^c -> R^m`,
/// optionally modulo extra target relations. It yields the kernel of
/// `R^c -> R^m / T` and solves `M x ≡ b (mod J + T)`.
pub struct Elimination {
    ring: Arc<QuotientRing>,
    target_rank: usize,
    source_rank: usize,
    basis: Basis,
}

impl Elimination {
    pub fn new(ring: Arc<QuotientRing>, m: &PolyMatrix, target: &[FreeVector]) -> Result<Self, GroebnerError> {
        if **m.ring() != **ring.ambient() {
            return Err(GroebnerError::RingMismatch);
        }
        let (rows, cols) = m.shape();
        let amb = ring.ambient().clone();
        let mut gens: Vec<Vector> = Vec::with_capacity(cols + rows * ring.relations().len() + target.len());
        for c in 0..cols {
            let mut v = FreeVector::new(m.column(c)).map(|f| f.to_vector(0)).unwrap_or_default();
            v.push(Term {
                comp: (rows + c) as u32,
                mono: Monomial::one(amb.nvars()),
                coeff: amb.field().one(),
            });
            gens.push(v);
        }
        gens.extend(relation_vectors(&ring, rows, 0));
        for t in target {
            if t.rank() != rows {
                return Err(GroebnerError::RankMismatch {
                    expected: rows,
                    found: t.rank(),
                });
            }
            gens.push(t.to_vector(0));
        }
        let engine = Engine { order: amb.order() };
        let elems = engine.groebner(gens, false);
        Ok(Elimination {
            ring,
            target_rank: rows,
            source_rank: cols,
            basis: Basis::from_elems(elems),
        })
    }

    /// Generators of `{x ∈ R^c : M x ∈ J·R^m + T}`.
    pub fn kernel(&self) -> Submodule {
        let amb = self.ring.ambient();
        let off = self.target_rank as u32;
        let gens = self
            .basis
            .elems
            .iter()
            .filter(|v| v[0].comp >= off)
            .map(|v| FreeVector::from_vector(amb, v, off, self.source_rank))
            .collect();
        Submodule {
            ring: self.ring.clone(),
            rank: self.source_rank,
            gens,
        }
    }

    /// Some `x` with `M x ≡ b (mod J + T)`, or `None` if `b` is not reachable.
    pub fn solve(&self, b: &FreeVector) -> Result<Option<FreeVector>, GroebnerError> {
        if b.rank() != self.target_rank {
            return Err(GroebnerError::RankMismatch {
                expected: self.target_rank,
                found: b.rank(),
            });
        }
        let amb = self.ring.ambient();
        let engine = Engine { order: amb.order() };
        let r = engine.reduce(b.to_vector(0), &self.basis);
        if r.iter().any(|t| (t.comp as usize) < self.target_rank) {
            return Ok(None);
        }
        let x = FreeVector::from_vector(amb, &r, self.target_rank as u32, self.source_rank);
        Ok(Some(FreeVector {
            comps: x.comps.iter().map(|p| -p).collect(),
        }))
    }

    /// Column-wise solve of `M X ≡ B`; `None` if any column is unreachable.
    pub fn solve_matrix(&self, b: &PolyMatrix) -> Result<Option<PolyMatrix>, GroebnerError> {
        let amb = self.ring.ambient();
        let mut cols = Vec::with_capacity(b.cols());
        for c in 0..b.cols() {
            let col = if b.rows() == 0 {
                FreeVector { comps: Vec::new() }
            } else {
                FreeVector::new(b.column(c))?
            };
            if col.is_zero() {
                cols.push(vec![Polynomial::zero(amb); self.source_rank]);
                continue;
            }
            match self.solve(&col)? {
                Some(x) => cols.push(x.comps),
                None => return Ok(None),
            }
        }
        Ok(Some(PolyMatrix::from_columns(amb, self.source_rank, &cols)))
    }
}

/// Kernel of `M: R^c -> R^m` as an `R`-module.
pub fn syzygies(ring: Arc<QuotientRing>, m: &PolyMatrix) -> Result<Submodule, GroebnerError> {
    Ok(Elimination::new(ring, m, &[])?.kernel())
}

/// Kernel of `R^c -> R^m / target`.
pub fn syzygies_modulo(ring: Arc<QuotientRing>, m: &PolyMatrix, target: &Submodule) -> Result<Submodule, GroebnerError> {
    Ok(Elimination::new(ring, m, &target.gens)?.kernel())
}

/// Solves `M X ≡ B (mod J + target)`.
pub fn solve(
    ring: Arc<QuotientRing>,
    m: &PolyMatrix,
    b: &PolyMatrix,
    target: Option<&Submodule>,
) -> Result<Option<PolyMatrix>, GroebnerError> {
    let extra = target.map(|t| t.gens.as_slice()).unwrap_or(&[]);
    Elimination::new(ring, m, extra)?.solve_matrix(b)
}

/// Checks that every source relation maps into the target relation ideal.
pub fn check_hom(hom: &RingHom) -> Result<(), GroebnerError> {
    let target = hom.target().clone();
    let zero = buchberger(&Submodule::zero(target.clone(), 1));
    for (index, rel) in hom.source().relations().iter().enumerate() {
        let img = hom.apply(rel)?;
        if !zero.contains(&FreeVector::new(vec![img])?)? {
            return Err(GroebnerError::HomRelation { index });
        }
    }
    Ok(())
}

/// Position-over-term comparison of two module terms.
pub fn module_term_cmp(ring: &PolyRing, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => ring.order().cmp(a.1, b.1),
        o => o,
    }
}

#[cfg(test)]
mod tests;
