//! The nodal conic `X = V(x y)` and its diagonal in `X × X`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::cells::{Cell, CellComplex, CellMap};
use super::resolution::{branch_to_node, factor_ring, FactorModule::{self, Node, XBranch, YBranch}};
use super::{cell_model, Blueprint, CatalogEntry, CatalogError, Mutation, FACTOR_LENGTH, MODEL_MARGIN, WINDOW_ABOVE};
use crate::bimodcalc::{cone_label, ConeLabels};
use crate::groebner::Submodule;
use crate::polyring::{PolyRing, QuotientRing};
use crate::scalars::FieldSpec;
use crate::witness::{ConeSplit, FactorMorphism, GenerationWitness, GeneratorDecl, Step, Summand, WeakCertificate};

pub(crate) fn nodal_ring(field: FieldSpec) -> Arc<QuotientRing> {
    let amb = PolyRing::grevlex(&["x1", "y1", "x2", "y2"], field).expect("valid names");
    QuotientRing::parse(amb, &["x1*y1", "x2*y2"]).expect("valid relations")
}

fn cell(label: &str, degree: i64, m: FactorModule) -> Cell {
    Cell {
        label: label.to_string(),
        degree,
        factors: vec![m, m],
    }
}

fn diagonal_ideal(ring: &Arc<QuotientRing>) -> Submodule {
    Submodule::parse_ideal(ring.clone(), &["x1 - x2", "y1 - y2"]).expect("valid ideal")
}

struct Spec {
    cells: Vec<Cell>,
    maps: Vec<(usize, usize, &'static str)>,
    anchors: Vec<(&'static str, &'static str)>,
}

fn blueprint(ring: &Arc<QuotientRing>, spec: &Spec, maps: &[(usize, usize, &str)]) -> Result<Blueprint, CatalogError> {
    let maps = maps
        .iter()
        .map(|&(from, to, c)| {
            Ok(CellMap {
                from,
                to,
                coeff: ring.parse_poly(c)?,
            })
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    let cells = CellComplex::new(ring.clone(), vec![(0, 1), (2, 3)], spec.cells.clone(), maps)?;
    let anchors = spec
        .anchors
        .iter()
        .map(|&(l, v)| Ok((l.to_string(), ring.parse_poly(v)?)))
        .collect::<Result<Vec<_>, CatalogError>>()?;
    Ok(Blueprint {
        cells,
        i0: 0,
        anchors,
        ideal: diagonal_ideal(ring),
    })
}

/// `O_0 <- O_x ⊕ O_y <- O_x ⊕ O_y` in degrees -1, 0, 1.
fn product_spec() -> Spec {
    Spec {
        cells: vec![
            cell("O0", -1, Node),
            cell("Ox", 0, XBranch),
            cell("Oy", 0, YBranch),
            cell("Ox'", 1, XBranch),
            cell("Oy'", 1, YBranch),
        ],
        maps: vec![(1, 0, "1"), (2, 0, "1"), (3, 1, "x1 - x2"), (4, 2, "y1 - y2")],
        anchors: vec![("Ox", "1"), ("Oy", "-1")],
    }
}

/// The two-term complex `I_x[-1] ⊕ I_y[-1] <- O_x ⊕ O_0 ⊕ O_y`, written
/// out with each `I = cone(O_branch -> O_0)[-1]` expanded into its cells.
fn lemma_spec() -> Spec {
    Spec {
        cells: vec![
            cell("Ix.pt", -1, Node),
            cell("Iy.pt", -1, Node),
            cell("Ix.O", 0, XBranch),
            cell("Iy.O", 0, YBranch),
            cell("O0", 0, Node),
            cell("Ox", 1, XBranch),
            cell("Oy", 1, YBranch),
        ],
        maps: vec![
            (2, 0, "1"),
            (3, 1, "1"),
            (4, 0, "1"),
            (4, 1, "1"),
            (5, 2, "x1 - x2"),
            (6, 3, "y1 - y2"),
        ],
        anchors: vec![("Ix.O", "1"), ("Iy.O", "1"), ("O0", "-1")],
    }
}

fn entry(name: &str, ring: Arc<QuotientRing>, spec: &Spec, with_witness: bool, note: &str) -> Result<CatalogEntry, CatalogError> {
    let bp = blueprint(&ring, spec, &spec.maps)?;
    let (complex, diagonal, complete) = bp.assemble()?;
    let witness = if with_witness {
        Some(nodal_witness(&ring, bp.top() + MODEL_MARGIN)?)
    } else {
        None
    };
    let mut notes = vec![
        note.to_string(),
        format!(
            "free models truncated at total degree {}; verdict claimed on window [-1, {}]",
            WINDOW_ABOVE + 1,
            WINDOW_ABOVE
        ),
    ];
    if !complete {
        notes.push("augmentation could not be completed; anchor-only row used".into());
    }
    Ok(CatalogEntry {
        name: name.to_string(),
        ring,
        complex,
        diagonal,
        witness,
        notes,
    })
}

/// The resolution of the diagonal by product objects.
pub fn build_nodal_product(field: FieldSpec) -> Result<CatalogEntry, CatalogError> {
    let ring = nodal_ring(field);
    entry(
        "nodal-conic-product",
        ring,
        &product_spec(),
        false,
        "product-object resolution O_0 <- O_x+O_y <- O_x+O_y of the diagonal",
    )
}

/// The length 1 resolution of the diagonal by weakly product bimodules.
pub fn build_nodal_conic(field: FieldSpec) -> Result<CatalogEntry, CatalogError> {
    let ring = nodal_ring(field);
    entry(
        "nodal-conic",
        ring,
        &lemma_spec(),
        true,
        "Lemma, length 1 resolution of the diagonal by weakly product bimodules",
    )
}

fn mutations(field: FieldSpec, spec: &Spec, changes: &[(&str, usize, &'static str)]) -> Result<Vec<Mutation>, CatalogError> {
    let ring = nodal_ring(field);
    let bp = blueprint(&ring, spec, &spec.maps)?;
    changes
        .iter()
        .map(|&(desc, idx, coeff)| {
            let mut maps = spec.maps.clone();
            maps[idx].2 = coeff;
            let mutated = blueprint(&ring, spec, &maps)?;
            bp.mutate(desc, mutated.cells.maps().to_vec())
        })
        .collect()
}

/// Five single-coefficient changes to the product-object resolution.
pub fn nodal_product_mutations(field: FieldSpec) -> Result<Vec<Mutation>, CatalogError> {
    mutations(
        field,
        &product_spec(),
        &[
            ("x1 - x2 replaced by x1 + x2", 2, "x1 + x2"),
            ("y1 - y2 replaced by y1", 3, "y1"),
            ("x1 - x2 replaced by x1 - 2*x2", 2, "x1 - 2*x2"),
            ("O_y -> O_0 map set to 0", 1, "0"),
            ("x1 - x2 replaced by 0", 2, "0"),
        ],
    )
}

/// Five single-coefficient changes to the weakly product resolution.
pub fn nodal_conic_mutations(field: FieldSpec) -> Result<Vec<Mutation>, CatalogError> {
    mutations(
        field,
        &lemma_spec(),
        &[
            ("phi^x1 - phi^x2 replaced by phi^x1 + phi^x2", 4, "x1 + x2"),
            ("delta^x set to 0", 2, "0"),
            ("phi^y1 - phi^y2 replaced by phi^y1", 5, "y1"),
            ("delta^y set to 0", 3, "0"),
            ("phi^x1 - phi^x2 replaced by phi^x1 - 2 phi^x2", 4, "x1 - 2*x2"),
        ],
    )
}

/// Generators `O_{Ax×Ax}, O_{Ay×Ay}, O_0, I_0^x, I_0^y`; one cone step.
pub(crate) fn nodal_witness(ring: &Arc<QuotientRing>, top: i64) -> Result<GenerationWitness, CatalogError> {
    let field = ring.field();
    let one = ring.one();
    let vars = vec![(0, 1), (2, 3)];
    let single = |m: FactorModule| vec![cell("O", 0, m)];
    let cone = |m: FactorModule| {
        (
            vec![cell("pt", -1, Node), cell("O", 0, m)],
            vec![CellMap {
                from: 1,
                to: 0,
                coeff: one.clone(),
            }],
        )
    };
    let mut models = BTreeMap::new();
    for (label, m) in [("O_AxAx", XBranch), ("O_AyAy", YBranch), ("O_0", Node)] {
        models.insert(label.to_string(), cell_model(ring, &vars, single(m), vec![], top)?);
    }
    for (label, m) in [("I_0^x", XBranch), ("I_0^y", YBranch)] {
        let (cells, maps) = cone(m);
        models.insert(label.to_string(), cell_model(ring, &vars, cells, maps, top)?);
    }

    let factor = factor_ring(field);
    let probes: Vec<Vec<_>> = [(0, 0), (1, 0), (0, 1), (3, 0)]
        .iter()
        .map(|&(a, b)| vec![field.from_i64(a), field.from_i64(b)])
        .collect();
    let certificate = |branch: FactorModule, product: &str, tag: &str| {
        WeakCertificate::cone_of_product(product, "O_0", -1)
            .with_split(ConeSplit::new(&[("O", "O")], &[("pt", "O")]))
            .with_factor(FactorMorphism {
                map: branch_to_node(&factor, branch, FACTOR_LENGTH),
                probes: probes.clone(),
                labels: ConeLabels::new(tag, &cone_label(tag, "O_0"), "O_0"),
            })
    };
    Ok(GenerationWitness {
        generators: vec![
            GeneratorDecl::product("O_AxAx"),
            GeneratorDecl::product("O_AyAy"),
            GeneratorDecl::product("O_0"),
            GeneratorDecl::weakly_product("I_0^x", certificate(XBranch, "O_AxAx", "O_Ax")),
            GeneratorDecl::weakly_product("I_0^y", certificate(YBranch, "O_AyAy", "O_Ay")),
        ],
        steps: vec![
            Step::new(vec![
                Summand::new("I_0^x", 0, &[("Ix.pt", "pt"), ("Ix.O", "O")]),
                Summand::new("I_0^y", 0, &[("Iy.pt", "pt"), ("Iy.O", "O")]),
            ]),
            Step::new(vec![
                Summand::new("O_0", 0, &[("O0", "O")]),
                Summand::new("O_AxAx", 1, &[("Ox", "O")]),
                Summand::new("O_AyAy", 1, &[("Oy", "O")]),
            ]),
        ],
        models,
    })
}
