//! Complexes of cyclic modules over a product of nodal factors, and their
//! totalization into complexes of free modules.
//!
//! Each cell `R/I_a` in module degree `p` is replaced by its free
//! resolution `P^a`. The total differential is `D = D_0 + D_1 + D_2 + ...`
//! where `D_0 = (-1)^p d_res`, `D_1` lifts the module maps and `D_r` for
//! `r >= 2` maps `P^{(p)}_q -> P^{(p-r)}_{q+r-1}`. Each component is found
//! by lifting through the resolution differentials so that `D∘D = 0`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::resolution::{FactorModule, Resolution};
use super::CatalogError;
use crate::complexes::ChainComplex;
use crate::groebner::{buchberger, Elimination, FreeVector, Submodule};
use crate::polyring::{PolyMatrix, Polynomial, QuotientRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub label: String,
    pub degree: i64,
    /// One factor module per nodal factor of the ring.
    pub factors: Vec<FactorModule>,
}

/// Multiplication by `coeff` from cell `from` (degree `p`) to cell `to`
/// (degree `p - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap {
    pub from: usize,
    pub to: usize,
    pub coeff: Polynomial,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    ring: Arc<QuotientRing>,
    /// Variable indices `(x, y)` of each nodal factor.
    factor_vars: Vec<(usize, usize)>,
    cells: Vec<Cell>,
    maps: Vec<CellMap>,
}

/// A totalized complex with the position of each cell's generator.
#[derive(Clone, Debug)]
pub struct Totalized {
    pub complex: ChainComplex,
    /// Cell label -> (total degree, basis index) of its degree-0 generator.
    pub generators: BTreeMap<String, (i64, usize)>,
}

impl CellComplex {
    pub fn new(
        ring: Arc<QuotientRing>,
        factor_vars: Vec<(usize, usize)>,
        cells: Vec<Cell>,
        maps: Vec<CellMap>,
    ) -> Result<Self, CatalogError> {
        for c in &cells {
            if c.factors.len() != factor_vars.len() {
                return Err(CatalogError::Cell(format!("cell {} has the wrong number of factors", c.label)));
            }
        }
        for m in &maps {
            let (Some(a), Some(b)) = (cells.get(m.from), cells.get(m.to)) else {
                return Err(CatalogError::Cell("map refers to a missing cell".into()));
            };
            if b.degree != a.degree - 1 {
                return Err(CatalogError::Cell(format!("map {} -> {} does not lower degree by one", a.label, b.label)));
            }
        }
        let cc = CellComplex {
            ring,
            factor_vars,
            cells,
            maps,
        };
        cc.check_maps()?;
        Ok(cc)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn maps(&self) -> &[CellMap] {
        &self.maps
    }

    pub fn factor_vars(&self) -> &[(usize, usize)] {
        &self.factor_vars
    }

    /// The same cells with replaced maps.
    pub fn with_maps(&self, maps: Vec<CellMap>) -> Result<Self, CatalogError> {
        Self::new(self.ring.clone(), self.factor_vars.clone(), self.cells.clone(), maps)
    }

    fn resolution(&self, cell: &Cell, len: usize) -> Resolution {
        let amb = self.ring.ambient();
        let mut acc = Resolution::free();
        for (m, &(x, y)) in cell.factors.iter().zip(&self.factor_vars) {
            let f = Resolution::factor(amb, *m, x, y, len);
            acc = Resolution::tensor(amb, &acc, &f, len);
        }
        acc
    }

    fn annihilator(&self, cell: &Cell) -> Vec<Polynomial> {
        self.resolution(cell, 1).ideal_generators()
    }

    /// Each map must send the annihilator of its source into that of its target.
    fn check_maps(&self) -> Result<(), CatalogError> {
        for m in &self.maps {
            let (a, b) = (&self.cells[m.from], &self.cells[m.to]);
            let gb = buchberger(&Submodule::ideal(self.ring.clone(), self.annihilator(b))?);
            for g in self.annihilator(a) {
                let v = FreeVector::new(vec![&g * &m.coeff])?;
                if !gb.contains(&v)? {
                    return Err(CatalogError::Cell(format!(
                        "multiplication by {} is not well defined from {} to {}",
                        m.coeff, a.label, b.label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Totalizes and keeps total degrees `<= top`.
    pub fn totalize(&self, top: i64) -> Result<Totalized, CatalogError> {
        let amb = self.ring.ambient().clone();
        let Some(pmin) = self.cells.iter().map(|c| c.degree).min() else {
            return Ok(Totalized {
                complex: ChainComplex::zero(self.ring.clone()),
                generators: BTreeMap::new(),
            });
        };
        let pmax = self.cells.iter().map(|c| c.degree).max().unwrap_or(pmin);
        if top < pmin {
            return Err(CatalogError::Cell(format!("truncation degree {top} below the lowest cell")));
        }

        // Per level: the cells, their resolutions and block offsets.
        struct Level {
            cells: Vec<usize>,
            res: Vec<Resolution>,
        }
        let mut levels: BTreeMap<i64, Level> = BTreeMap::new();
        for p in pmin..=pmax {
            let cells: Vec<usize> = (0..self.cells.len()).filter(|&i| self.cells[i].degree == p).collect();
            let len = (top - p).max(0) as usize;
            let res = cells.iter().map(|&i| self.resolution(&self.cells[i], len)).collect();
            levels.insert(p, Level { cells, res });
        }
        let rank = |p: i64, q: i64| -> usize {
            if q < 0 || p + q > top {
                return 0;
            }
            levels.get(&p).map_or(0, |l| l.res.iter().map(|r| r.rank(q as usize)).sum())
        };
        let block_offsets = |p: i64, q: i64| -> Vec<usize> {
            let mut acc = 0;
            levels[&p]
                .res
                .iter()
                .map(|r| {
                    let o = acc;
                    acc += r.rank(q as usize);
                    o
                })
                .collect()
        };
        // Level differential d_res: P^{(p)}_q -> P^{(p)}_{q-1}.
        let delta = |p: i64, q: i64| -> PolyMatrix {
            let mut m = PolyMatrix::zero(&amb, rank(p, q - 1), rank(p, q));
            if q >= 1 && rank(p, q) > 0 {
                let (so, to) = (block_offsets(p, q), block_offsets(p, q - 1));
                for (k, r) in levels[&p].res.iter().enumerate() {
                    m.set_block(to[k], so[k], &r.d(&amb, q as usize));
                }
            }
            m
        };
        let d0 = |p: i64, q: i64| -> PolyMatrix {
            let m = delta(p, q);
            if p.rem_euclid(2) == 1 {
                m.neg()
            } else {
                m
            }
        };

        // comps[(r, p, q)]: P^{(p)}_q -> P^{(p-r)}_{q+r-1}, r >= 1.
        let mut comps: HashMap<(i64, i64, i64), PolyMatrix> = HashMap::new();
        let mut solvers: HashMap<(i64, i64), Elimination> = HashMap::new();
        for r in 1..=(pmax - pmin) {
            for p in (pmin + r)..=pmax {
                let tp = p - r;
                for q in 0..=(top - p) {
                    let (rows, cols) = (rank(tp, q + r - 1), rank(p, q));
                    if rows == 0 || cols == 0 {
                        continue;
                    }
                    if r == 1 && q == 0 {
                        comps.insert((1, p, 0), self.module_map(p, &levels[&p].cells, &levels[&tp].cells));
                        continue;
                    }
                    // D_0 X + D_r(p, q-1) D_0(p, q) + Σ D_a D_b = 0
                    let mut rhs = PolyMatrix::zero(&amb, rank(tp, q + r - 2), cols);
                    if let Some(prev) = comps.get(&(r, p, q - 1)) {
                        rhs = rhs.try_add(&prev.try_mul(&d0(p, q))?)?;
                    }
                    for b in 1..r {
                        let a = r - b;
                        let (Some(db), Some(da)) = (comps.get(&(b, p, q)), comps.get(&(a, p - b, q + b - 1))) else {
                            continue;
                        };
                        rhs = rhs.try_add(&da.try_mul(db)?)?;
                    }
                    if rhs.is_zero() {
                        continue;
                    }
                    // δ X = -(-1)^{tp} rhs
                    let b = if tp.rem_euclid(2) == 1 { rhs } else { rhs.neg() };
                    let key = (tp, q + r - 1);
                    if !solvers.contains_key(&key) {
                        solvers.insert(key, Elimination::new(self.ring.clone(), &delta(tp, q + r - 1), &[])?);
                    }
                    let x = solvers[&key]
                        .solve_matrix(&b)?
                        .ok_or(CatalogError::Lift { r, p, q })?;
                    comps.insert((r, p, q), x);
                }
            }
        }

        // Assemble: T_n = ⊕_{p ascending} P^{(p)}_{n-p}.
        let lo = pmin;
        let offsets = |n: i64| -> BTreeMap<i64, usize> {
            let mut acc = 0;
            let mut out = BTreeMap::new();
            for p in pmin..=pmax {
                out.insert(p, acc);
                acc += rank(p, n - p);
            }
            out
        };
        let trank = |n: i64| (pmin..=pmax).map(|p| rank(p, n - p)).sum::<usize>();
        let ranks: Vec<usize> = (lo..=top).map(trank).collect();
        let mut diffs = BTreeMap::new();
        for n in lo + 1..=top {
            let (so, to) = (offsets(n), offsets(n - 1));
            let mut m = PolyMatrix::zero(&amb, trank(n - 1), trank(n));
            for p in pmin..=pmax {
                let q = n - p;
                if rank(p, q) == 0 {
                    continue;
                }
                if q >= 1 {
                    m.set_block(to[&p], so[&p], &d0(p, q));
                }
                for r in 1..=(p - pmin) {
                    if let Some(c) = comps.get(&(r, p, q)) {
                        m.set_block(to[&(p - r)], so[&p], c);
                    }
                }
            }
            diffs.insert(n, m);
        }
        let mut labels = BTreeMap::new();
        let mut generators = BTreeMap::new();
        for n in lo..=top {
            let mut l = Vec::with_capacity(trank(n));
            for p in pmin..=pmax {
                let q = n - p;
                if rank(p, q) == 0 {
                    continue;
                }
                let level = &levels[&p];
                for (k, &ci) in level.cells.iter().enumerate() {
                    let name = &self.cells[ci].label;
                    if q == 0 {
                        generators.insert(name.clone(), (n, l.len()));
                    }
                    for b in 0..level.res[k].rank(q as usize) {
                        l.push(format!("{name}/{q}/{b}"));
                    }
                }
            }
            labels.insert(n, l);
        }
        let complex = ChainComplex::new(self.ring.clone(), lo, ranks, diffs)?
            .with_labels(labels)?;
        Ok(Totalized { complex, generators })
    }

    /// Matrix of module maps from the generators at level `p` to level `p - 1`.
    fn module_map(&self, p: i64, src: &[usize], tgt: &[usize]) -> PolyMatrix {
        let amb = self.ring.ambient();
        let mut m = PolyMatrix::zero(amb, tgt.len(), src.len());
        for map in &self.maps {
            if self.cells[map.from].degree != p {
                continue;
            }
            let c = src.iter().position(|&i| i == map.from).expect("source cell at level");
            let r = tgt.iter().position(|&i| i == map.to).expect("target cell at level");
            let e = m.get(r, c) + &map.coeff;
            m.set(r, c, e);
        }
        m
    }
}

impl Totalized {
    /// Solves for an augmentation row on `T_{i0}` with the given values on
    /// cell generators, such that `ε·d_{i0+1} ≡ 0` modulo `ideal`. Returns
    /// the anchor-only row when no completion exists.
    pub fn augmentation(
        &self,
        i0: i64,
        anchors: &[(&str, Polynomial)],
        ideal: &Submodule,
    ) -> Result<(Vec<Polynomial>, bool), CatalogError> {
        let c = &self.complex;
        let amb = c.ring().ambient().clone();
        let n = c.rank(i0);
        let mut eps = vec![Polynomial::zero(&amb); n];
        let mut fixed = vec![false; n];
        for (label, value) in anchors {
            let &(deg, idx) = self
                .generators
                .get(*label)
                .ok_or_else(|| CatalogError::Cell(format!("unknown anchor cell {label}")))?;
            if deg != i0 {
                return Err(CatalogError::Cell(format!("anchor {label} is not in degree {i0}")));
            }
            eps[idx] = value.clone();
            fixed[idx] = true;
        }
        let d = c.d(i0 + 1);
        if d.cols() == 0 {
            return Ok((eps, true));
        }
        let free: Vec<usize> = (0..n).filter(|&k| !fixed[k]).collect();
        let dt = d.transpose();
        // rhs = -(D^T restricted to anchors) ε_anchor
        let mut rhs = vec![Polynomial::zero(&amb); dt.rows()];
        for (k, e) in eps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            for (row, slot) in rhs.iter_mut().enumerate() {
                *slot = &*slot - &(dt.get(row, k) * e);
            }
        }
        if rhs.iter().all(Polynomial::is_zero) {
            return Ok((eps, true));
        }
        let cols: Vec<Vec<Polynomial>> = free.iter().map(|&k| dt.column(k)).collect();
        let unknown = PolyMatrix::from_columns(&amb, dt.rows(), &cols);
        let mut target = Vec::new();
        for g in ideal.gens() {
            for row in 0..dt.rows() {
                let mut comps = vec![Polynomial::zero(&amb); dt.rows()];
                comps[row] = g.comps()[0].clone();
                target.push(FreeVector::new(comps)?);
            }
        }
        let elim = Elimination::new(c.ring().clone(), &unknown, &target)?;
        match elim.solve(&FreeVector::new(rhs)?)? {
            Some(x) => {
                for (slot, k) in x.into_comps().into_iter().zip(&free) {
                    eps[*k] = slot;
                }
                Ok((eps, true))
            }
            None => Ok((eps, false)),
        }
    }
}
