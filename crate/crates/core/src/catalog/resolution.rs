//! Minimal free resolutions of the cyclic modules that occur on products of
//! nodal factors `A = k[x, y]/(xy)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use std::collections::BTreeMap;

use crate::complexes::{ChainComplex, ChainMap};
use crate::polyring::{PolyMatrix, PolyRing, Polynomial, QuotientRing};
use crate::scalars::FieldSpec;

/// A cyclic module over one nodal factor with coordinates `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorModule {
    /// `A` itself.
    Whole,
    /// `A/(y)`, the `x`-branch.
    XBranch,
    /// `A/(x)`, the `y`-branch.
    YBranch,
    /// `A/(x, y)`, the node.
    Node,
}

/// A free resolution `P_0 <- P_1 <- ... <- P_len`, stored as `d_q: P_q -> P_{q-1}`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>,
}

impl Resolution {
    pub fn free() -> Self {
        Resolution {
            ranks: vec![1],
            diffs: Vec::new(),
        }
    }

    /// Resolution of a factor module in the variables `x`, `y` of `ring`,
    /// computed up to homological degree `len`.
    pub fn factor(ring: &Arc<PolyRing>, module: FactorModule, x: usize, y: usize, len: usize) -> Self {
        let xv = Polynomial::variable(ring, x);
        let yv = Polynomial::variable(ring, y);
        let scalar = |p: &Polynomial| PolyMatrix::from_columns(ring, 1, &[vec![p.clone()]]);
        let diag = |a: &Polynomial, b: &Polynomial| {
            let mut m = PolyMatrix::zero(ring, 2, 2);
            m.set(0, 0, a.clone());
            m.set(1, 1, b.clone());
            m
        };
        let mut ranks = vec![1];
        let mut diffs = Vec::new();
        for q in 1..=len {
            let d = match module {
                FactorModule::Whole => break,
                FactorModule::XBranch => scalar(if q % 2 == 1 { &yv } else { &xv }),
                FactorModule::YBranch => scalar(if q % 2 == 1 { &xv } else { &yv }),
                FactorModule::Node if q == 1 => PolyMatrix::from_columns(ring, 1, &[vec![xv.clone()], vec![yv.clone()]]),
                FactorModule::Node if q % 2 == 0 => diag(&yv, &xv),
                FactorModule::Node => diag(&xv, &yv),
            };
            ranks.push(d.cols());
            diffs.push(d);
        }
        Resolution { ranks, diffs }
    }

    /// Length of the stored part.
    pub fn len(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self, q: usize) -> usize {
        self.ranks.get(q).copied().unwrap_or(0)
    }

    /// `d_q`, zero outside the stored range.
    pub fn d(&self, ring: &Arc<PolyRing>, q: usize) -> PolyMatrix {
        if q >= 1 && q <= self.diffs.len() {
            self.diffs[q - 1].clone()
        } else {
            PolyMatrix::zero(ring, if q == 0 { 0 } else { self.rank(q - 1) }, self.rank(q))
        }
    }

    /// Tensor product over `k` of resolutions in disjoint variables,
    /// truncated at `len`.
    ///
    /// The basis of degree `q` lists `P_i ⊗ Q_{q-i}` for ascending `i`, each
    /// block in row-major order.
    pub fn tensor(ring: &Arc<PolyRing>, a: &Resolution, b: &Resolution, len: usize) -> Self {
        let offsets = |q: usize| -> Vec<usize> {
            let mut acc = 0;
            (0..=q)
                .map(|i| {
                    let o = acc;
                    acc += a.rank(i) * b.rank(q - i);
                    o
                })
                .collect()
        };
        let total = |q: usize| (0..=q).map(|i| a.rank(i) * b.rank(q - i)).sum::<usize>();
        let mut ranks = vec![total(0)];
        let mut diffs = Vec::new();
        for q in 1..=len {
            let (src, tgt) = (offsets(q), offsets(q - 1));
            let mut m = PolyMatrix::zero(ring, total(q - 1), total(q));
            for i in 0..=q {
                let j = q - i;
                let (ra, rb) = (a.rank(i), b.rank(j));
                if ra * rb == 0 {
                    continue;
                }
                // d_P ⊗ 1 into P_{i-1} ⊗ Q_j
                if i >= 1 {
                    let da = a.d(ring, i);
                    for r in 0..a.rank(i - 1) {
                        for c in 0..ra {
                            let e = da.get(r, c);
                            if e.is_zero() {
                                continue;
                            }
                            for k in 0..rb {
                                m.set(tgt[i - 1] + r * rb + k, src[i] + c * rb + k, e.clone());
                            }
                        }
                    }
                }
                // (-1)^i 1 ⊗ d_Q into P_i ⊗ Q_{j-1}
                if j >= 1 {
                    let db = b.d(ring, j);
                    let rb1 = b.rank(j - 1);
                    for r in 0..rb1 {
                        for c in 0..rb {
                            let e = db.get(r, c);
                            if e.is_zero() {
                                continue;
                            }
                            let e = if i % 2 == 1 { -e } else { e.clone() };
                            for k in 0..ra {
                                m.set(tgt[i] + k * rb1 + r, src[i] + k * rb + c, e.clone());
                            }
                        }
                    }
                }
            }
            ranks.push(total(q));
            diffs.push(m);
        }
        Resolution { ranks, diffs }
    }

    /// The stored part as a complex in degrees `0..=len`, with homology
    /// trusted below the top degree.
    pub fn to_complex(&self, ring: &Arc<QuotientRing>) -> ChainComplex {
        let amb = ring.ambient();
        let diffs: BTreeMap<i64, PolyMatrix> = (1..=self.len()).map(|q| (q as i64, self.d(amb, q))).collect();
        let ranks = (0..=self.len()).map(|q| self.rank(q)).collect();
        let c = ChainComplex::new(ring.clone(), 0, ranks, diffs).expect("resolutions square to zero");
        if self.diffs.is_empty() {
            c
        } else {
            c.with_window(0, self.len() as i64 - 1).expect("nonempty window")
        }
    }

    /// The generators of the resolved ideal, i.e. the entries of `d_1`.
    pub fn ideal_generators(&self) -> Vec<Polynomial> {
        self.diffs
            .first()
            .map(|d| d.row(0).to_vec())
            .unwrap_or_default()
    }
}

/// One nodal factor `k[x, y]/(xy)`.
pub(crate) fn factor_ring(field: FieldSpec) -> Arc<QuotientRing> {
    let amb = PolyRing::grevlex(&["x", "y"], field).expect("valid names");
    QuotientRing::parse(amb, &["x*y"]).expect("valid relation")
}

/// The lift of the surjection from a branch onto the node, between
/// resolutions of length `len` over one nodal factor.
pub(crate) fn branch_to_node(ring: &Arc<QuotientRing>, branch: FactorModule, len: usize) -> ChainMap {
    let amb = ring.ambient();
    let source = Resolution::factor(amb, branch, 0, 1, len).to_complex(ring);
    let target = Resolution::factor(amb, FactorModule::Node, 0, 1, len).to_complex(ring);
    // the cycle picking out the branch's equation inside the node's relations
    let slot = match branch {
        FactorModule::XBranch => 1,
        FactorModule::YBranch => 0,
        _ => panic!("only branches map onto the node"),
    };
    let mut maps = BTreeMap::new();
    maps.insert(0, PolyMatrix::identity(amb, 1));
    for q in 1..=len {
        let mut m = PolyMatrix::zero(amb, 2, 1);
        m.set(slot, 0, Polynomial::one(amb));
        maps.insert(q as i64, m);
    }
    ChainMap::new(source, target, maps).expect("lift commutes")
}
