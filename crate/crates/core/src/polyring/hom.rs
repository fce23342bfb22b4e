use std::sync::Arc;

use super::{PolyError, Polynomial, QuotientRing};

/// A ring map given by the images of the source variables.
///
/// Whether relations of the source land in the target relation ideal is a
/// Gröbner question; see `groebner::check_hom`.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Arc<QuotientRing>,
    target: Arc<QuotientRing>,
    images: Vec<Polynomial>,
}

impl RingHom {
    pub fn new(
        source: Arc<QuotientRing>,
        target: Arc<QuotientRing>,
        images: Vec<Polynomial>,
    ) -> Result<Self, PolyError> {
        if images.len() != source.nvars() {
            return Err(PolyError::ImageCount {
                expected: source.nvars(),
                found: images.len(),
            });
        }
        if images.iter().any(|p| **p.ring() != **target.ambient()) {
            return Err(PolyError::RingMismatch);
        }
        if source.field() != target.field() {
            return Err(PolyError::RingMismatch);
        }
        Ok(RingHom {
            source,
            target,
            images,
        })
    }

    /// Images given as polynomial strings in the target ring.
    pub fn parse<S: AsRef<str>>(
        source: Arc<QuotientRing>,
        target: Arc<QuotientRing>,
        images: &[S],
    ) -> Result<Self, PolyError> {
        let imgs = images
            .iter()
            .map(|s| target.parse_poly(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, imgs)
    }

    pub fn identity(ring: Arc<QuotientRing>) -> Self {
        let images = (0..ring.nvars())
            .map(|i| Polynomial::variable(ring.ambient(), i))
            .collect();
        RingHom {
            source: ring.clone(),
            target: ring,
            images,
        }
    }

    pub fn source(&self) -> &Arc<QuotientRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QuotientRing> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        if **p.ring() != **self.source.ambient() {
            return Err(PolyError::RingMismatch);
        }
        let tgt = self.target.ambient();
        // powers[v][e] = image_v^e, built lazily
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(tgt)]; self.images.len()];
        let mut acc = Polynomial::zero(tgt);
        for (m, c) in p.terms() {
            let mut t = Polynomial::constant(tgt, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[v].len() <= e {
                    let next = &powers[v][powers[v].len() - 1] * &self.images[v];
                    powers[v].push(next);
                }
                if e > 0 {
                    t = &t * &powers[v][e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}
