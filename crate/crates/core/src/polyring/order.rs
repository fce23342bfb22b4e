use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    #[default]
    Grevlex,
}

/// A monomial order together with a variable priority.
///
/// `priority[0]` is the most significant variable. With the identity priority
/// the declared variable sequence is `x_0 > x_1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self, PolyError> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= priority.len() || seen[p] {
                return Err(PolyError::BadPriority);
            }
            seen[p] = true;
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn standard(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            priority: (0..nvars).collect(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// Compares two monomials; errors on a length mismatch.
    pub fn try_cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars(),
                found: a.nvars().max(b.nvars()),
            });
        }
        Ok(self.cmp(a, b))
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &v in self.priority.iter().rev() {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_and_grevlex_examples() {
        let lex = MonomialOrder::standard(OrderKind::Lex, 2);
        let grevlex = MonomialOrder::standard(OrderKind::Grevlex, 2);
        // x^2 vs xy with x > y
        assert_eq!(lex.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(grevlex.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(grevlex.cmp(&m(&[1, 1]), &m(&[1, 1])), Ordering::Equal);
        // lex ignores degree: x > y^5
        assert_eq!(lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(grevlex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Less);
    }

    #[test]
    fn grevlex_differs_from_grlex() {
        // x*z^2 vs y^3 in three variables: grevlex says y^3 > x z^2
        let o = MonomialOrder::standard(OrderKind::Grevlex, 3);
        assert_eq!(o.cmp(&m(&[0, 3, 0]), &m(&[1, 0, 2])), Ordering::Greater);
    }

    #[test]
    fn priority_permutes_variables() {
        let o = MonomialOrder::new(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Less);
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn length_mismatch() {
        let o = MonomialOrder::standard(OrderKind::Lex, 2);
        assert!(o.try_cmp(&m(&[1, 0, 0]), &m(&[1, 0])).is_err());
    }

    fn mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, n).prop_map(|v| Monomial::from_exponents(&v))
    }

    proptest! {
        #[test]
        fn order_axioms(a in mono(4), b in mono(4), c in mono(4), lex in any::<bool>(),
                        perm in Just(vec![2usize, 0, 3, 1]).prop_shuffle()) {
            let kind = if lex { OrderKind::Lex } else { OrderKind::Grevlex };
            let o = MonomialOrder::new(kind, perm).unwrap();
            if o.cmp(&a, &b) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), Ordering::Less);
            }
            prop_assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
        }
    }
}
