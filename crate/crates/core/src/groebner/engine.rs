//! Buchberger's algorithm for submodules of `S^n`, `S` a polynomial ring,
//! under position-over-term order (lower component index is larger).

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::polyring::{Monomial, MonomialOrder};
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// Terms sorted strictly descending in module order, no zero coefficients.
pub(crate) type Vector = Vec<Term>;

#[derive(Clone, Copy)]
pub(crate) struct Engine<'a> {
    pub order: &'a MonomialOrder,
}

impl<'a> Engine<'a> {
    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        match b.comp.cmp(&a.comp) {
            Ordering::Equal => self.order.cmp(&a.mono, &b.mono),
            o => o,
        }
    }

    /// Sorts, merges and prunes arbitrary terms into a canonical vector.
    pub fn normalize(&self, mut terms: Vec<Term>) -> Vector {
        terms.sort_by(|a, b| self.cmp(b, a));
        let mut out: Vector = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mono == t.mono => l.coeff = &l.coeff + &t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        out
    }

    /// `f - c * m * g`
    pub fn sub_scaled(&self, f: &[Term], c: &Scalar, m: &Monomial, g: &[Term]) -> Vector {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let mut gj: Option<Term> = g.first().map(|t| shift(t, c, m));
        while i < f.len() {
            let Some(ref t) = gj else { break };
            match self.cmp(&f[i], t) {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        comp: t.comp,
                        mono: t.mono.clone(),
                        coeff: -&t.coeff,
                    });
                    j += 1;
                    gj = g.get(j).map(|t| shift(t, c, m));
                }
                Ordering::Equal => {
                    let co = &f[i].coeff - &t.coeff;
                    if !co.is_zero() {
                        out.push(Term {
                            comp: t.comp,
                            mono: t.mono.clone(),
                            coeff: co,
                        });
                    }
                    i += 1;
                    j += 1;
                    gj = g.get(j).map(|t| shift(t, c, m));
                }
            }
        }
        out.extend_from_slice(&f[i..]);
        while let Some(t) = gj {
            out.push(Term {
                comp: t.comp,
                mono: t.mono,
                coeff: -t.coeff,
            });
            j += 1;
            gj = g.get(j).map(|t| shift(t, c, m));
        }
        out
    }

    pub fn make_monic(&self, f: &mut Vector) {
        if let Some(lead) = f.first() {
            if !lead.coeff.is_one() {
                let inv = lead.coeff.inv().expect("nonzero lead");
                for t in f.iter_mut() {
                    t.coeff = &t.coeff * &inv;
                }
            }
        }
    }

    /// Full reduction of `f` by a monic basis.
    pub fn reduce(&self, f: Vector, basis: &Basis) -> Vector {
        let mut f = f;
        let mut rem = Vec::new();
        let mut start = 0;
        while start < f.len() {
            let t = &f[start];
            match basis.find_reducer(t) {
                Some(g) => {
                    let q = t.mono.div(&g[0].mono);
                    let c = t.coeff.clone();
                    f = self.sub_scaled(&f[start..], &c, &q, g);
                    start = 0;
                }
                None => {
                    rem.push(f[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }

    fn s_vector(&self, f: &[Term], g: &[Term]) -> Vector {
        let lcm = f[0].mono.lcm(&g[0].mono);
        let mf = lcm.div(&f[0].mono);
        let mg = lcm.div(&g[0].mono);
        let one = f[0].coeff.field().one();
        let zero_vec: Vector = f.iter().map(|t| shift(t, &one, &mf)).collect();
        self.sub_scaled(&zero_vec, &one, &mg, g)
    }

    /// Reduced Gröbner basis of the module generated by `gens`.
    ///
    /// `rank_one` enables the coprime-leading-monomial criterion, which is
    /// only valid for ideals.
    pub fn groebner(&self, gens: Vec<Vector>, rank_one: bool) -> Vec<Vector> {
        let mut basis = Basis::default();
        let mut pairs: BinaryHeap<Reverse<(u32, u64, usize, usize)>> = BinaryHeap::new();
        let mut seq = 0u64;

        let mut add = |f: Vector, basis: &mut Basis, pairs: &mut BinaryHeap<_>| {
            let mut f = f;
            self.make_monic(&mut f);
            let n = basis.elems.len();
            for i in 0..n {
                let g = &basis.elems[i];
                if g[0].comp != f[0].comp {
                    continue;
                }
                if rank_one && g[0].mono.is_coprime(&f[0].mono) {
                    continue;
                }
                let deg = g[0].mono.lcm(&f[0].mono).degree();
                pairs.push(Reverse((deg, seq, i, n)));
                seq += 1;
            }
            basis.push(f);
        };

        for g in gens {
            let g = self.normalize(g);
            let r = self.reduce(g, &basis);
            if !r.is_empty() {
                add(r, &mut basis, &mut pairs);
            }
        }
        while let Some(Reverse((_, _, i, j))) = pairs.pop() {
            let s = self.s_vector(&basis.elems[i], &basis.elems[j]);
            let r = self.reduce(s, &basis);
            if !r.is_empty() {
                add(r, &mut basis, &mut pairs);
            }
        }
        self.auto_reduce(basis.elems)
    }

    /// Minimalizes, tail-reduces, makes monic and sorts ascending.
    pub fn auto_reduce(&self, elems: Vec<Vector>) -> Vec<Vector> {
        let mut keep: Vec<Vector> = Vec::new();
        for (i, f) in elems.iter().enumerate() {
            let redundant = elems.iter().enumerate().any(|(j, g)| {
                j != i
                    && g[0].comp == f[0].comp
                    && g[0].mono.divides(&f[0].mono)
                    && (g[0].mono != f[0].mono || j < i)
            });
            if !redundant {
                keep.push(f.clone());
            }
        }
        let mut out = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let mut others = Basis::default();
            for (j, g) in keep.iter().enumerate() {
                if j != i {
                    others.push(g.clone());
                }
            }
            let f = &keep[i];
            let tail = self.reduce(f[1..].to_vec(), &others);
            let mut r = Vec::with_capacity(tail.len() + 1);
            r.push(f[0].clone());
            r.extend(tail);
            self.make_monic(&mut r);
            out.push(r);
        }
        out.sort_by(|a, b| self.cmp(&a[0], &b[0]));
        out
    }
}

#[inline]
fn shift(t: &Term, c: &Scalar, m: &Monomial) -> Term {
    Term {
        comp: t.comp,
        mono: t.mono.mul(m),
        coeff: &t.coeff * c,
    }
}

/// Monic vectors indexed by leading component.
#[derive(Default, Clone)]
pub(crate) struct Basis {
    pub elems: Vec<Vector>,
    by_comp: Vec<Vec<usize>>,
}

impl Basis {
    pub fn from_elems(elems: Vec<Vector>) -> Self {
        let mut b = Basis::default();
        for e in elems {
            b.push(e);
        }
        b
    }

    pub fn push(&mut self, f: Vector) {
        let comp = f[0].comp as usize;
        if self.by_comp.len() <= comp {
            self.by_comp.resize(comp + 1, Vec::new());
        }
        self.by_comp[comp].push(self.elems.len());
        self.elems.push(f);
    }

    #[inline]
    pub fn find_reducer(&self, t: &Term) -> Option<&Vector> {
        let idx = self.by_comp.get(t.comp as usize)?;
        idx.iter()
            .map(|&i| &self.elems[i])
            .find(|g| g[0].mono.divides(&t.mono))
    }
}
