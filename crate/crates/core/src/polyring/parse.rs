//! Recursive-descent reader for
//!
//! ```text
//! poly  := term (('+'|'-') term)*
//! term  := [coeff] ('*'? var ('^' uint)?)*
//! coeff := int | int '/' uint
//! var   := identifier
//! ```
//!
//! Whitespace is insignificant and a leading unary `-` is allowed.

use std::sync::Arc;

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::{PolyError, PolyRing, Polynomial};
use crate::scalars::Scalar;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn uint(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an unsigned integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn ident(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        (start, std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }
}

fn term(lx: &mut Lexer<'_>, ring: &Arc<PolyRing>) -> Result<(Monomial, Scalar), PolyError> {
    let field = ring.field();
    let mut coeff = field.one();
    let mut mono = Monomial::one(ring.nvars());
    let mut seen_any = false;
    if matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
        let num = lx.uint()?;
        let c = if lx.peek() == Some(b'/') {
            lx.pos += 1;
            let den = lx.uint()?;
            field.from_ratio(&num, &den).map_err(|e| PolyError::Syntax {
                pos: lx.pos,
                msg: e.to_string(),
            })?
        } else {
            field.from_bigint(&num)
        };
        coeff = c;
        seen_any = true;
    }
    loop {
        let save = lx.pos;
        let star = lx.peek() == Some(b'*');
        if star {
            if !seen_any {
                return Err(lx.err("`*` without a left operand"));
            }
            lx.pos += 1;
        }
        match lx.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let (pos, name) = lx.ident();
                let idx = ring.var_index(name).ok_or_else(|| PolyError::UnknownVariable {
                    name: name.to_string(),
                    pos,
                })?;
                let e: u16 = if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    let at = lx.pos;
                    let e = lx.uint()?;
                    u16::try_from(e).map_err(|_| PolyError::Syntax {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?
                } else {
                    1
                };
                let mut exps = mono.exponents().to_vec();
                exps[idx] += e;
                mono = Monomial::from_exponents(&exps);
                seen_any = true;
            }
            _ => {
                if star {
                    return Err(lx.err("expected a variable after `*`"));
                }
                lx.pos = save;
                break;
            }
        }
    }
    if !seen_any {
        return Err(lx.err("expected a term"));
    }
    Ok((mono, coeff))
}

/// Parses `text` into a canonical polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, PolyError> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negate = false;
    if lx.peek() == Some(b'-') {
        lx.pos += 1;
        negate = true;
    }
    loop {
        let (m, c) = term(&mut lx, ring)?;
        terms.push((m, if negate { -c } else { c }));
        match lx.peek() {
            Some(b'+') => {
                lx.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                lx.pos += 1;
                negate = true;
            }
            None => break,
            Some(_) => return Err(lx.err("unexpected character")),
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;

    fn ring() -> Arc<PolyRing> {
        PolyRing::grevlex(&["x1", "y1", "x2", "y2"], FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn parses_examples() {
        let r = ring();
        let p = parse_poly("x1*y1 - x2*y2", &r).unwrap();
        assert_eq!(p.len(), 2);
        let q = parse_poly("x1^2 + 2*x1 + 1", &r).unwrap();
        assert_eq!(q.len(), 3);
        assert_eq!(q.to_string(), "x1^2 + 2*x1 + 1");
        assert_eq!(parse_poly("-x1 + 1/2 x2", &r).unwrap().to_string(), "-x1 + 1/2*x2");
        assert_eq!(parse_poly("0", &r).unwrap().to_string(), "0");
        assert_eq!(parse_poly("x1 - x1", &r).unwrap().to_string(), "0");
        assert_eq!(parse_poly(" 3 x1 y1 ^2", &r).unwrap().to_string(), "3*x1*y1^2");
    }

    #[test]
    fn rejects_unknown_variable() {
        assert!(matches!(
            parse_poly("x1 + z9", &ring()),
            Err(PolyError::UnknownVariable { ref name, pos: 5 }) if name == "z9"
        ));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "x1 +", "*x1", "x1 ** x2", "x1^", "1/0", "x1 ) ", "--x1"] {
            assert!(
                matches!(parse_poly(bad, &ring()), Err(PolyError::Syntax { .. })),
                "{bad:?} should fail"
            );
        }
    }

    #[test]
    fn prime_field_coefficients() {
        let r = PolyRing::grevlex(&["x"], FieldSpec::PrimeField(7)).unwrap();
        assert_eq!(parse_poly("9*x - 1/2", &r).unwrap().to_string(), "2*x + 3");
    }
}
