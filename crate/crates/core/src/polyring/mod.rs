//! Sparse multivariate polynomials over an exact field, monomial orders,
//! quotient-ring declarations and the polynomial text grammar.
//!
//! Polynomials are tagged with the [`PolyRing`] they live in. Arithmetic
//! between polynomials of different rings is an error; there is no implicit
//! coercion, moving between rings goes through a [`RingHom`].

mod hom;
mod matrix;
mod monomial;
mod order;
mod parse;
mod poly;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::scalars::{FieldSpec, ScalarError};

pub use hom::RingHom;
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_poly;
pub use poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("monomial length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("variable priority is not a permutation")]
    BadPriority,
    #[error("ring homomorphism needs {expected} images, got {found}")]
    ImageCount { expected: usize, found: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// An ambient polynomial ring `k[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    field: FieldSpec,
    order: MonomialOrder,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(
        names: &[S],
        field: FieldSpec,
        order: MonomialOrder,
    ) -> Result<Arc<Self>, PolyError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) {
                return Err(PolyError::InvalidVariable(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        if order.nvars() != names.len() {
            return Err(PolyError::LengthMismatch {
                expected: names.len(),
                found: order.nvars(),
            });
        }
        Ok(Arc::new(PolyRing {
            names,
            field,
            order,
        }))
    }

    /// Ring with the standard grevlex order on the declared variable sequence.
    pub fn grevlex<S: AsRef<str>>(names: &[S], field: FieldSpec) -> Result<Arc<Self>, PolyError> {
        Self::new(
            names,
            field,
            MonomialOrder::standard(OrderKind::Grevlex, names.len()),
        )
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same ring with a different coefficient field.
    pub fn with_field(&self, field: FieldSpec) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            names: self.names.clone(),
            field,
            order: self.order.clone(),
        })
    }
}

/// `k[x_1..x_n] / J`. Module computations over it are carried out over the
/// ambient ring with `J` adjoined (see `groebner::quotient_augment`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    ambient: Arc<PolyRing>,
    relations: Vec<Polynomial>,
}

impl QuotientRing {
    pub fn new(ambient: Arc<PolyRing>, relations: Vec<Polynomial>) -> Result<Arc<Self>, PolyError> {
        for (i, r) in relations.iter().enumerate() {
            if !Arc::ptr_eq(r.ring(), &ambient) && **r.ring() != *ambient {
                return Err(PolyError::RingMismatch);
            }
            if r.is_zero() {
                return Err(PolyError::ZeroRelation(i));
            }
        }
        Ok(Arc::new(QuotientRing { ambient, relations }))
    }

    /// Parses relations in the polynomial grammar.
    pub fn parse<S: AsRef<str>>(ambient: Arc<PolyRing>, relations: &[S]) -> Result<Arc<Self>, PolyError> {
        let rels = relations
            .iter()
            .map(|r| parse_poly(r.as_ref(), &ambient))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ambient, rels)
    }

    /// The polynomial ring itself, `J = 0`.
    pub fn free(ambient: Arc<PolyRing>) -> Arc<Self> {
        Arc::new(QuotientRing {
            ambient,
            relations: Vec::new(),
        })
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn field(&self) -> FieldSpec {
        self.ambient.field
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial, PolyError> {
        parse_poly(text, &self.ambient)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.ambient)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.ambient)
    }

    pub fn var(&self, name: &str) -> Option<Polynomial> {
        self.ambient
            .var_index(name)
            .map(|i| Polynomial::variable(&self.ambient, i))
    }

    /// Same presentation over another field; relations are re-read from
    /// their printed form, which is exact for integer-coefficient relations.
    pub fn with_field(&self, field: FieldSpec) -> Result<Arc<QuotientRing>, PolyError> {
        let ambient = self.ambient.with_field(field);
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        QuotientRing::parse(ambient, &rels)
    }

    pub fn same_ring(&self, other: &QuotientRing) -> bool {
        self == other
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ambient.field, self.ambient.names.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}
