use super::*;
use crate::catalog::{build_affine_line, build_nodal_conic, build_nodal_product, nodal_conic_mutations, CatalogEntry};
use crate::complexes::ChainComplex;
use crate::scalars::FieldSpec;

fn nodal() -> CatalogEntry {
    build_nodal_conic(FieldSpec::default()).unwrap()
}

fn report(e: &CatalogEntry, w: &GenerationWitness) -> Result<WitnessReport, WitnessError> {
    verify_witness(w, &e.complex, &e.diagonal)
}

#[test]
fn catalog_witnesses_pass() {
    for e in [nodal(), build_affine_line(FieldSpec::default()).unwrap()] {
        let r = report(&e, e.witness.as_ref().unwrap()).unwrap();
        assert!(r.passed, "{}: {:?}", e.name, r);
        assert_eq!(r.generation_time, 1);
        assert!(!r.product_only);
        assert_eq!(r.conclusion.as_deref(), Some(bound_statement(1).as_str()));
    }
}

#[test]
fn undeclared_labels_are_errors() {
    let e = nodal();
    let mut w = e.witness.clone().unwrap();
    w.steps[1].summands.push(Summand::new("O_nowhere", 0, &[]));
    assert_eq!(report(&e, &w).unwrap_err(), WitnessError::UndeclaredLabel("O_nowhere".into()));

    let mut w = e.witness.clone().unwrap();
    w.generators.retain(|g| g.label != "O_0");
    assert!(matches!(report(&e, &w), Err(WitnessError::UndeclaredLabel(l)) if l == "O_0"));
}

#[test]
fn malformed_declarations_are_errors() {
    let e = nodal();
    let mut w = e.witness.clone().unwrap();
    w.generators.push(GeneratorDecl::product("O_0"));
    assert_eq!(validate(&w).unwrap_err(), WitnessError::DuplicateLabel("O_0".into()));

    let mut w = e.witness.clone().unwrap();
    w.generators[3].certificate = None;
    assert_eq!(validate(&w).unwrap_err(), WitnessError::MissingCertificate("I_0^x".into()));

    let mut w = e.witness.clone().unwrap();
    w.models.remove("O_0");
    assert_eq!(validate(&w).unwrap_err(), WitnessError::MissingModel("O_0".into()));

    let mut w = e.witness.clone().unwrap();
    w.steps[1].summands.push(Summand::new("O_0", 0, &[("O0", "O")]));
    assert_eq!(validate(&w).unwrap_err(), WitnessError::DuplicateCell("O0".into()));

    let mut w = e.witness.clone().unwrap();
    w.steps.clear();
    assert_eq!(validate(&w).unwrap_err(), WitnessError::NoSteps);

    let mut w = e.witness.clone().unwrap();
    w.steps[1].summands[0].cells.push(("Nowhere".into(), "O".into()));
    assert_eq!(check_structure(&w, &e.complex).unwrap_err(), WitnessError::UnknownCell("Nowhere".into()));
}

#[test]
fn dropping_or_merging_steps_fails() {
    let e = nodal();
    let w = e.witness.clone().unwrap();
    for k in 0..w.steps.len() {
        let r = report(&e, &w.without_step(k)).unwrap();
        assert!(!r.passed, "without step {k}");
        assert!(r.conclusion.is_none());
    }
    let mut merged = w.clone();
    let last = merged.steps.pop().unwrap();
    merged.steps[0].summands.extend(last.summands);
    let r = report(&e, &merged).unwrap();
    assert_eq!(r.generation_time, 0);
    assert!(!r.passed);
}

#[test]
fn reversed_steps_fail() {
    let e = nodal();
    let mut w = e.witness.clone().unwrap();
    w.steps.reverse();
    let r = report(&e, &w).unwrap();
    assert!(!r.steps[0].passed);
    assert!(r.steps[0].detail.as_ref().unwrap().contains("not a subcomplex"));
}

#[test]
fn wrong_shift_or_plain_generator_fails() {
    let e = nodal();
    let mut w = e.witness.clone().unwrap();
    w.steps[1].summands[1].shift = 0;
    assert!(!report(&e, &w).unwrap().passed);

    let mut w = e.witness.clone().unwrap();
    w.generators[0] = GeneratorDecl::plain("O_AxAx");
    let r = report(&e, &w).unwrap();
    assert!(!r.passed);
    assert!(!r.certificates.iter().all(|c| c.passed), "certificate source is no longer product");
}

/// Negates basis vector `b` in degree `i`.
fn flip_basis(c: &ChainComplex, i: i64, b: usize) -> ChainComplex {
    let mut diffs = c.differentials().clone();
    if let Some(d) = diffs.get_mut(&i) {
        for r in 0..d.rows() {
            let v = -d.get(r, b);
            d.set(r, b, v);
        }
    }
    if let Some(d) = diffs.get_mut(&(i + 1)) {
        for k in 0..d.cols() {
            let v = -d.get(b, k);
            d.set(b, k, v);
        }
    }
    let (lo, hi) = c.window().unwrap_or(c.effective_window());
    ChainComplex::new(c.ring().clone(), c.lo(), c.ranks().to_vec(), diffs)
        .unwrap()
        .with_labels(c.all_labels().clone())
        .unwrap()
        .with_window(lo, hi)
        .unwrap()
}

#[test]
fn blocks_match_up_to_signs() {
    let e = nodal();
    let w = e.witness.as_ref().unwrap();
    for (i, b) in [(0, 0), (1, 3), (2, 7), (-1, 1)] {
        let c = flip_basis(&e.complex, i, b);
        let steps = check_structure(w, &c).unwrap();
        assert!(steps.iter().all(|s| s.passed), "flip ({i}, {b}): {steps:?}");
    }
}

#[test]
fn failing_final_complex_never_passes() {
    let e = nodal();
    let w = e.witness.as_ref().unwrap();
    for m in nodal_conic_mutations(FieldSpec::default()).unwrap() {
        let r = verify_witness(w, &m.complex, &m.diagonal).unwrap();
        assert!(!r.passed, "{}", m.description);
        assert!(r.conclusion.is_none());
    }
}

#[test]
fn product_only_tower() {
    let e = build_nodal_product(FieldSpec::default()).unwrap();
    let models = nodal().witness.unwrap().models;
    let w = GenerationWitness {
        generators: vec![
            GeneratorDecl::product("O_AxAx"),
            GeneratorDecl::product("O_AyAy"),
            GeneratorDecl::product("O_0"),
        ],
        steps: vec![
            Step::new(vec![Summand::new("O_0", -1, &[("O0", "O")])]),
            Step::new(vec![Summand::new("O_AxAx", 0, &[("Ox", "O")]), Summand::new("O_AyAy", 0, &[("Oy", "O")])]),
            Step::new(vec![Summand::new("O_AxAx", 1, &[("Ox'", "O")]), Summand::new("O_AyAy", 1, &[("Oy'", "O")])]),
        ],
        models,
    };
    let r = report(&e, &w).unwrap();
    assert!(r.passed, "{r:?}");
    assert!(r.product_only);
    assert_eq!(r.generation_time, 2);
}

#[test]
fn probes_off_the_factor_are_rejected() {
    let e = nodal();
    let mut w = e.witness.clone().unwrap();
    if let Some(WeakCertificate::ConeOfProduct(c)) = &mut w.generators[3].certificate {
        let f = c.factor.as_mut().unwrap();
        let field = FieldSpec::default();
        f.probes.push(vec![field.from_i64(1), field.from_i64(1)]);
    }
    assert!(matches!(check_certificates(&w), Err(WitnessError::BadProbe { index: 4, .. })));
}

#[test]
fn certificate_emissions_by_probe() {
    let e = nodal();
    let certs = check_certificates(e.witness.as_ref().unwrap()).unwrap();
    let c = certs.iter().find(|c| c.label == "I_0^x").unwrap();
    assert_eq!(c.emitted.len(), 4);
    // the node: H(φ1 ⊗ k_0) has a kernel and a nonzero image
    let node = &c.emitted[0];
    assert!(node.multiplicity("cone(O_Ax -> O_0)") > 0 && node.multiplicity("O_0") > 0);
    assert!(node.supported_on(&["O_Ax", "cone(O_Ax -> O_0)", "O_0"]));
    // smooth points of the x branch only see the source
    for k in [1, 3] {
        assert_eq!(c.emitted[k].labels().into_iter().collect::<Vec<_>>(), vec!["O_Ax"]);
        assert_eq!(c.emitted[k].multiplicity("O_Ax"), 1);
    }
    // the y branch misses both
    assert!(c.emitted[2].is_empty());
}

#[test]
fn wrong_split_fails() {
    let e = nodal();
    let mut w = e.witness.clone().unwrap();
    if let Some(WeakCertificate::ConeOfProduct(c)) = &mut w.generators[3].certificate {
        c.split = Some(ConeSplit::new(&[("pt", "O")], &[("O", "O")]));
    }
    let certs = check_certificates(&w).unwrap();
    assert!(!certs.iter().find(|c| c.label == "I_0^x").unwrap().passed);
}

#[test]
fn report_round_trips_through_json() {
    let e = nodal();
    let r = report(&e, e.witness.as_ref().unwrap()).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: WitnessReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}
