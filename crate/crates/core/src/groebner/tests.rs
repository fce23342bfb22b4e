use super::*;
use crate::polyring::{MonomialOrder, OrderKind};
use crate::scalars::FieldSpec;
use proptest::prelude::*;

fn ring(names: &[&str], rels: &[&str]) -> Arc<QuotientRing> {
    let amb = PolyRing::grevlex(names, FieldSpec::Rationals).unwrap();
    QuotientRing::parse(amb, rels).unwrap()
}

fn lex_ring(names: &[&str], field: FieldSpec) -> Arc<QuotientRing> {
    let order = MonomialOrder::standard(OrderKind::Lex, names.len());
    QuotientRing::free(PolyRing::new(names, field, order).unwrap())
}

fn ideal(r: &Arc<QuotientRing>, gens: &[&str]) -> Submodule {
    Submodule::parse_ideal(r.clone(), gens).unwrap()
}

fn fv(r: &QuotientRing, comps: &[&str]) -> FreeVector {
    FreeVector::parse(r, comps).unwrap()
}

fn mat(r: &QuotientRing, rows: &[&[&str]], cols: usize) -> PolyMatrix {
    let grid: Vec<Vec<&str>> = rows.iter().map(|row| row.to_vec()).collect();
    PolyMatrix::parse(r.ambient(), &grid, cols).unwrap()
}

/// S-vector of two module elements whose leading terms share a component.
fn s_vector(f: &FreeVector, g: &FreeVector) -> Option<FreeVector> {
    let (cf, mf, af) = f.leading_term()?;
    let (cg, mg, ag) = g.leading_term()?;
    if cf != cg {
        return None;
    }
    let ring = f.ring();
    let l = mf.lcm(mg);
    let tf = Polynomial::monomial(ring, l.div(mf), af.inv().unwrap());
    let tg = Polynomial::monomial(ring, l.div(mg), ag.inv().unwrap());
    Some(f.scale(&tf).sub(&g.scale(&tg)))
}

fn assert_buchberger_criterion(g: &GroebnerBasis) {
    let vs = g.vectors();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if let Some(s) = s_vector(&vs[i], &vs[j]) {
                assert!(g.normal_form(&s).unwrap().is_zero(), "S({i},{j}) does not reduce to 0");
            }
        }
    }
}

fn mat_vec(m: &PolyMatrix, v: &FreeVector) -> FreeVector {
    let ring = m.ring();
    let comps = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(v.comps())
                .fold(Polynomial::zero(ring), |acc, (a, b)| &acc + &(a * b))
        })
        .collect();
    FreeVector::new(comps).unwrap()
}

#[test]
fn augmentation_adds_relation_multiples() {
    let r = ring(&["x1", "y1", "x2", "y2"], &["x1*y1", "x2*y2"]);
    let aug = quotient_augment(&ideal(&r, &["x1 - x2"]));
    let gens: Vec<String> = aug.gens().iter().map(|g| g.to_string()).collect();
    assert_eq!(gens, ["(x1 - x2)", "(x1*y1)", "(x2*y2)"]);

    let free = ring(&["x", "y"], &[]);
    assert_eq!(quotient_augment(&ideal(&free, &["x"])).gens().len(), 1);

    let node = ring(&["x", "y"], &["x*y"]);
    let aug = quotient_augment(&Submodule::zero(node.clone(), 2));
    let gens: Vec<String> = aug.gens().iter().map(|g| g.to_string()).collect();
    assert_eq!(gens, ["(x*y; 0)", "(0; x*y)"]);
}

#[test]
fn monomial_ideal_is_its_own_basis() {
    let r = ring(&["x1", "y1", "x2", "y2"], &[]);
    let g = buchberger(&ideal(&r, &["x1*y1", "x2*y2"]));
    let mut got = g.to_strings();
    got.sort();
    assert_eq!(got, ["(x1*y1)", "(x2*y2)"]);
}

#[test]
fn lex_basis_of_xy_and_x_minus_y() {
    let r = lex_ring(&["x", "y"], FieldSpec::Rationals);
    let g = buchberger(&ideal(&r, &["x*y", "x - y"]));
    assert_eq!(g.to_strings(), ["(y^2)", "(x - y)"]);
    assert_buchberger_criterion(&g);
    assert!(g.normal_form(&fv(&r, &["x^2"])).unwrap().is_zero());
    let reduced = fv(&r, &["y + 3"]);
    assert_eq!(g.normal_form(&reduced).unwrap(), reduced);
    assert!(g.normal_form(&fv(&r, &["0"])).unwrap().is_zero());
}

#[test]
fn redundant_generator_dropped() {
    let r = ring(&["x"], &[]);
    assert_eq!(buchberger(&ideal(&r, &["x^2", "x^3"])).to_strings(), ["(x^2)"]);
}

#[test]
fn membership_examples() {
    let r = ring(&["x1", "y1", "x2", "y2"], &["x1*y1", "x2*y2"]);
    assert!(member(&fv(&r, &["x1 - x2"]), &ideal(&r, &["x1 - x2", "y1 - y2"])).unwrap());
    assert!(member(&fv(&r, &["x1*y1"]), &Submodule::zero(r.clone(), 1)).unwrap());
    let free = ring(&["x1", "x2"], &[]);
    assert!(!member(&fv(&free, &["1"]), &ideal(&free, &["x1 - x2"])).unwrap());
    assert!(matches!(
        member(&fv(&free, &["1", "0"]), &ideal(&free, &["x1"])),
        Err(GroebnerError::RankMismatch { .. })
    ));
}

#[test]
fn submodule_equality_examples() {
    let r = ring(&["x", "y"], &[]);
    assert!(submodule_equal(&ideal(&r, &["x", "y"]), &ideal(&r, &["y", "x"])).unwrap());
    assert!(!submodule_equal(&ideal(&r, &["x"]), &ideal(&r, &["x^2"])).unwrap());
    assert!(submodule_equal(&ideal(&r, &["x - y", "y^2"]), &ideal(&r, &["x*y", "x - y"])).unwrap());
}

#[test]
fn koszul_syzygy() {
    let r = ring(&["x1", "x2"], &[]);
    let syz = syzygies(r.clone(), &mat(&r, &[&["x1", "x2"]], 2)).unwrap();
    let expected = Submodule::new(r.clone(), 2, vec![fv(&r, &["x2", "-x1"])]).unwrap();
    assert!(submodule_equal(&syz, &expected).unwrap());
}

#[test]
fn syzygy_on_the_node() {
    let r = ring(&["x", "y"], &["x*y"]);
    let syz = syzygies(r.clone(), &mat(&r, &[&["x"]], 1)).unwrap();
    assert!(submodule_equal(&syz, &ideal(&r, &["y"])).unwrap());
}

#[test]
fn injective_map_has_zero_kernel() {
    let r = ring(&["x", "y"], &["x*y"]);
    let syz = syzygies(r.clone(), &mat(&r, &[&["1"]], 1)).unwrap();
    assert!(submodule_equal(&syz, &Submodule::zero(r.clone(), 1)).unwrap());
}

#[test]
fn module_basis_in_rank_two() {
    let r = ring(&["x", "y"], &[]);
    let s = Submodule::new(r.clone(), 2, vec![fv(&r, &["x", "y"]), fv(&r, &["y", "x"])]).unwrap();
    let g = buchberger(&s);
    assert_buchberger_criterion(&g);
    assert!(g.contains(&fv(&r, &["0", "x^2 - y^2"])).unwrap());
    assert!(!g.contains(&fv(&r, &["0", "x"])).unwrap());
}

#[test]
fn solve_finds_a_preimage() {
    let r = ring(&["x1", "x2"], &[]);
    let m = mat(&r, &[&["x1", "x2"]], 2);
    let b = mat(&r, &[&["x1^2 + x2^3"]], 1);
    let x = solve(r.clone(), &m, &b, None).unwrap().unwrap();
    assert_eq!(m.try_mul(&x).unwrap(), b);
    assert!(solve(r.clone(), &m, &mat(&r, &[&["1"]], 1), None).unwrap().is_none());
    let target = ideal(&r, &["1 - x1"]);
    let x = solve(r.clone(), &m, &mat(&r, &[&["1"]], 1), Some(&target)).unwrap().unwrap();
    let residual = &m.try_mul(&x).unwrap().get(0, 0).clone() - &Polynomial::one(r.ambient());
    assert!(member(&FreeVector::new(vec![residual]).unwrap(), &target).unwrap());
}

#[test]
fn hom_relations_checked() {
    let a = ring(&["x", "y"], &["x*y"]);
    let b = ring(&["t"], &[]);
    let good = RingHom::parse(a.clone(), b.clone(), &["t", "0"]).unwrap();
    assert!(check_hom(&good).is_ok());
    let bad = RingHom::parse(a, b, &["t", "t"]).unwrap();
    assert_eq!(check_hom(&bad), Err(GroebnerError::HomRelation { index: 0 }));
}

#[test]
fn unit_ideal_detection() {
    let r = ring(&["x", "y"], &["x*y"]);
    assert!(buchberger(&ideal(&r, &["x - 1", "y - 1"])).is_unit_ideal());
    assert!(!buchberger(&ideal(&r, &["x", "y"])).is_unit_ideal());
}

#[test]
fn deterministic_output() {
    let r = ring(&["x", "y", "z"], &[]);
    let s = ideal(&r, &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]);
    assert_eq!(buchberger(&s).to_strings(), buchberger(&s).to_strings());
}

fn poly_strategy() -> impl Strategy<Value = Vec<(i64, [u16; 3])>> {
    prop::collection::vec((-3i64..=3, [0u16..=3, 0u16..=3, 0u16..=3]), 1..4)
}

fn build(r: &QuotientRing, terms: &[(i64, [u16; 3])]) -> Polynomial {
    let amb = r.ambient();
    let terms = terms
        .iter()
        .filter(|(_, e)| e.iter().sum::<u16>() <= 3)
        .map(|(c, e)| (Monomial::from_exponents(e), amb.field().from_i64(*c)))
        .collect();
    Polynomial::from_terms(amb, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_ideals_satisfy_criterion(
        gens in prop::collection::vec(poly_strategy(), 1..=4),
        probe in poly_strategy(),
        mults in prop::collection::vec(poly_strategy(), 4),
    ) {
        let r = ring(&["x", "y", "z"], &[]);
        let polys: Vec<Polynomial> = gens.iter().map(|g| build(&r, g)).collect();
        let s = Submodule::ideal(r.clone(), polys.clone()).unwrap();
        let g = buchberger(&s);
        assert_buchberger_criterion(&g);
        for p in &polys {
            prop_assert!(g.contains(&FreeVector::new(vec![p.clone()]).unwrap()).unwrap());
        }
        let comb = polys
            .iter()
            .zip(&mults)
            .fold(Polynomial::zero(r.ambient()), |acc, (p, m)| &acc + &(p * &build(&r, m)));
        prop_assert!(g.contains(&FreeVector::new(vec![comb]).unwrap()).unwrap());
        let v = FreeVector::new(vec![build(&r, &probe)]).unwrap();
        let nf = g.normal_form(&v).unwrap();
        prop_assert_eq!(member(&v, &s).unwrap(), nf.is_zero());
        prop_assert!(g.contains(&v.sub(&nf)).unwrap());
        prop_assert_eq!(g.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn syzygies_annihilate(
        entries in prop::collection::vec(poly_strategy(), 3),
    ) {
        let r = ring(&["x", "y", "z"], &["x*y*z"]);
        let row: Vec<Polynomial> = entries.iter().map(|e| build(&r, e)).collect();
        let m = PolyMatrix::from_rows(r.ambient(), vec![row], 3).unwrap();
        let syz = syzygies(r.clone(), &m).unwrap();
        let zero = buchberger(&Submodule::zero(r.clone(), 1));
        for s in syz.gens() {
            prop_assert!(zero.contains(&mat_vec(&m, s)).unwrap());
        }
    }

    #[test]
    fn equality_is_an_equivalence(
        a in prop::collection::vec(poly_strategy(), 1..=2),
        b in prop::collection::vec(poly_strategy(), 1..=2),
    ) {
        let r = ring(&["x", "y", "z"], &[]);
        let mk = |gens: &[Vec<(i64, [u16; 3])>]| {
            Submodule::ideal(r.clone(), gens.iter().map(|g| build(&r, g)).collect()).unwrap()
        };
        let (sa, sb) = (mk(&a), mk(&b));
        let mut rev = a.clone();
        rev.reverse();
        let sc = mk(&rev);
        prop_assert!(submodule_equal(&sa, &sa).unwrap());
        prop_assert_eq!(submodule_equal(&sa, &sb).unwrap(), submodule_equal(&sb, &sa).unwrap());
        prop_assert!(submodule_equal(&sa, &sc).unwrap());
        if submodule_equal(&sa, &sb).unwrap() {
            prop_assert!(submodule_equal(&sc, &sb).unwrap());
        }
    }
}
