use super::*;
use crate::groebner::submodule_equal;
use crate::linalg::specialize;
use crate::polyring::PolyRing;
use crate::scalars::{FieldSpec, Scalar};
use proptest::prelude::*;

fn ring(names: &[&str], rels: &[&str], field: FieldSpec) -> Arc<QuotientRing> {
    let amb = PolyRing::grevlex(names, field).unwrap();
    QuotientRing::parse(amb, rels).unwrap()
}

fn polys(r: &QuotientRing, ps: &[&str]) -> Vec<Polynomial> {
    ps.iter().map(|p| r.parse_poly(p).unwrap()).collect()
}

fn mat(r: &QuotientRing, rows: &[&[&str]]) -> PolyMatrix {
    let cols = rows.first().map_or(0, |row| row.len());
    let grid: Vec<Vec<&str>> = rows.iter().map(|row| row.to_vec()).collect();
    PolyMatrix::parse(r.ambient(), &grid, cols).unwrap()
}

fn koszul(r: &Arc<QuotientRing>, ps: &[&str]) -> ChainComplex {
    koszul_complex(r.clone(), &polys(r, ps)).unwrap()
}

fn exact_degrees(c: &ChainComplex) -> Vec<i64> {
    exact_in(c, c.lo() - 1, c.hi() + 1)
}

fn exact_in(c: &ChainComplex, lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&i| homology_is_zero_at(c, i).unwrap()).collect()
}

#[test]
fn koszul_is_a_complex() {
    let r = ring(&["x1", "x2", "x3"], &[], FieldSpec::Rationals);
    for seq in [&["x1"][..], &["x1", "x2"], &["x1", "x2", "x3"]] {
        let k = koszul(&r, seq);
        assert!(check_differential(&k));
        assert_eq!(k.rank(k.hi()), 1);
    }
}

#[test]
fn sign_perturbation_breaks_d_squared() {
    let r = ring(&["x1", "x2"], &[], FieldSpec::Rationals);
    let mut diffs = BTreeMap::new();
    diffs.insert(1, mat(&r, &[&["x1", "x2"]]));
    diffs.insert(2, mat(&r, &[&["x2"], &["x1"]]));
    let c = ChainComplex::unchecked(r.clone(), 0, vec![1, 2, 1], diffs.clone()).unwrap();
    assert!(!check_differential(&c));
    assert_eq!(
        ChainComplex::new(r, 0, vec![1, 2, 1], diffs).unwrap_err(),
        ComplexError::NotAComplex { degree: 2 }
    );
}

#[test]
fn shape_errors_name_the_degree() {
    let r = ring(&["x"], &[], FieldSpec::Rationals);
    let mut diffs = BTreeMap::new();
    diffs.insert(1, mat(&r, &[&["x", "x"]]));
    let err = ChainComplex::new(r, 0, vec![1, 1], diffs).unwrap_err();
    assert!(matches!(err, ComplexError::Shape { degree: 1, .. }));
}

#[test]
fn d_squared_modulo_relations() {
    let r = ring(&["x", "y"], &["x*y"], FieldSpec::Rationals);
    let mut diffs = BTreeMap::new();
    diffs.insert(1, mat(&r, &[&["x"]]));
    diffs.insert(2, mat(&r, &[&["y"]]));
    diffs.insert(3, mat(&r, &[&["x"]]));
    let c = ChainComplex::new(r, 0, vec![1, 1, 1, 1], diffs).unwrap();
    assert_eq!(exact_degrees(&c), vec![-1, 1, 2, 4]);
}

#[test]
fn koszul_homology() {
    let r = ring(&["x1", "x2"], &[], FieldSpec::Rationals);
    let k = koszul(&r, &["x1", "x2"]);
    assert!(homology_is_zero_at(&k, 1).unwrap());
    assert!(homology_is_zero_at(&k, 2).unwrap());
    assert!(!homology_is_zero_at(&k, 0).unwrap());
    assert!(homology_is_zero_at(&ChainComplex::zero(r.clone()), 3).unwrap());
}

#[test]
fn multiplication_by_x() {
    let r = ring(&["x"], &[], FieldSpec::Rationals);
    let k = koszul(&r, &["x"]);
    assert!(homology_is_zero_at(&k, 1).unwrap());
    assert!(!homology_is_zero_at(&k, 0).unwrap());
}

#[test]
fn cone_of_identity_is_exact() {
    let r = ring(&["x1", "x2"], &[], FieldSpec::Rationals);
    let k = koszul(&r, &["x1", "x2"]);
    let c = cone(&ChainMap::identity(&k));
    assert!(check_differential(&c));
    assert_eq!(c.ranks(), &[1, 3, 3, 1]);
    assert_eq!(exact_degrees(&c).len(), 6);
}

#[test]
fn cone_from_zero_is_target() {
    let r = ring(&["x1", "x2"], &[], FieldSpec::Rationals);
    let k = koszul(&r, &["x1", "x2"]);
    let c = cone(&ChainMap::zero(&ChainComplex::zero(r.clone()), &k));
    assert_eq!(c.lo(), k.lo());
    assert_eq!(c.ranks(), k.ranks());
    for i in 1..=2 {
        assert_eq!(c.d(i), k.d(i));
    }
}

#[test]
fn cone_of_multiplication() {
    let r = ring(&["x"], &[], FieldSpec::Rationals);
    let one = ChainComplex::new(r.clone(), 0, vec![1], BTreeMap::new()).unwrap();
    let mut maps = BTreeMap::new();
    maps.insert(0, mat(&r, &[&["x"]]));
    let f = ChainMap::new(one.clone(), one, maps).unwrap();
    let c = cone(&f);
    assert_eq!((c.lo(), c.hi()), (0, 1));
    let spec = DiagonalSpec::parse(r.clone(), &["x"], 0, &["1"]).unwrap();
    assert!(verify_diagonal_qiso(&c, &spec).unwrap().passed);
}

#[test]
fn chain_map_commutation_checked() {
    let r = ring(&["x1", "x2"], &[], FieldSpec::Rationals);
    let k = koszul(&r, &["x1", "x2"]);
    let mut maps = BTreeMap::new();
    maps.insert(0, mat(&r, &[&["1"]]));
    assert!(matches!(
        ChainMap::new(k.clone(), k, maps),
        Err(ComplexError::NotAChainMap { .. })
    ));
}

#[test]
fn shifts() {
    let r = ring(&["x1", "x2"], &[], FieldSpec::Rationals);
    let k = koszul(&r, &["x1", "x2"]);
    let same = shift(&k, 0);
    assert_eq!((same.lo(), same.differentials()), (k.lo(), k.differentials()));
    let back = shift(&shift(&k, 1), -1);
    assert_eq!((back.lo(), back.differentials()), (k.lo(), k.differentials()));
    let s = shift(&k, 3);
    assert!(check_differential(&s));
    assert_eq!(s.lo(), 3);
    assert_eq!(s.d(4), k.d(1).neg());
}

#[test]
fn cone_commutes_with_shift() {
    let r = ring(&["x1", "x2"], &[], FieldSpec::Rationals);
    let a = koszul(&r, &["x1", "x2"]);
    let mut maps = BTreeMap::new();
    for i in 0..=2 {
        maps.insert(i, PolyMatrix::identity(r.ambient(), a.rank(i)).map(|p| p * &r.parse_poly("x1 + 2").unwrap()));
    }
    let f = ChainMap::new(a.clone(), a, maps).unwrap();
    let lhs = shift(&cone(&f), 1);
    let rhs = cone(&f.shift(1));
    assert_eq!((lhs.lo(), lhs.ranks()), (rhs.lo(), rhs.ranks()));
    // The two cones are identified by the sign change -1 on the target part.
    for i in lhs.lo()..=lhs.hi() {
        let (dl, dr) = (lhs.d(i), rhs.d(i));
        if dl.rows() == 0 || dl.cols() == 0 {
            continue;
        }
        let na = f.source().rank(i - 3);
        let mut sign = PolyMatrix::identity(r.ambient(), dr.rows());
        for k in na..dr.rows() {
            sign.set(k, k, r.parse_poly("-1").unwrap());
        }
        let sl = Submodule::column_span(r.clone(), &dl);
        let sr = Submodule::column_span(r.clone(), &sign.try_mul(&dr).unwrap());
        assert!(submodule_equal(&sl, &sr).unwrap(), "degree {i}");
    }
}

#[test]
fn direct_sums() {
    let r = ring(&["x1", "x2"], &[], FieldSpec::Rationals);
    let a = koszul(&r, &["x1", "x2"]);
    let z = direct_sum(&a, &ChainComplex::zero(r.clone())).unwrap();
    assert_eq!((z.lo(), z.ranks(), z.differentials()), (a.lo(), a.ranks(), a.differentials()));

    let b = shift(&koszul(&r, &["x1"]), 1);
    let s = direct_sum(&a, &b).unwrap();
    assert_eq!(s.ranks(), &[1, 3, 2]);
    let both: Vec<i64> = exact_in(&a, -1, 3)
        .into_iter()
        .filter(|i| exact_in(&b, -1, 3).contains(i))
        .collect();
    assert_eq!(both, vec![-1, 2, 3]);
    assert_eq!(exact_in(&s, -1, 3), both);
}

#[test]
fn koszul_resolves_the_residue_field() {
    let r = ring(&["x1", "x2", "x3"], &[], FieldSpec::Rationals);
    let k = koszul(&r, &["x1", "x2", "x3"]);
    let spec = DiagonalSpec::parse(r.clone(), &["x1", "x2", "x3"], 0, &["1"]).unwrap();
    let rep = verify_diagonal_qiso(&k, &spec).unwrap();
    assert!(rep.passed, "{rep:?}");

    let wrong = DiagonalSpec::parse(r.clone(), &["x1", "x2"], 0, &["1"]).unwrap();
    let rep = verify_diagonal_qiso(&k, &wrong).unwrap();
    assert!(!rep.passed);
    assert_eq!(
        rep.first_failure,
        Some(Failure {
            condition: Condition::WellDefined,
            degree: 0
        })
    );

    let big = DiagonalSpec::parse(r.clone(), &["x1", "x2", "x3", "x1 + 1"], 0, &["1"]);
    assert_eq!(big.unwrap_err(), ComplexError::BadDiagonalIdeal);
}

#[test]
fn failed_condition_is_reported() {
    let r = ring(&["x1", "x2"], &[], FieldSpec::Rationals);
    let k = koszul(&r, &["x1", "x2"]);
    let spec = DiagonalSpec::parse(r.clone(), &["x1", "x2"], 1, &["1", "0"]).unwrap();
    let rep = verify_diagonal_qiso(&k, &spec).unwrap();
    assert_eq!(rep.first_failure.unwrap().condition, Condition::Exactness);
    assert_eq!(rep.first_failure.unwrap().degree, 0);
    let bad = DiagonalSpec::parse(r.clone(), &["x1", "x2"], 0, &["x1"]).unwrap();
    let rep = verify_diagonal_qiso(&k, &bad).unwrap();
    assert!(!rep.surjective);
    assert!(matches!(
        verify_diagonal_qiso(&k, &DiagonalSpec::parse(r.clone(), &["x1"], 0, &["1", "1"]).unwrap()),
        Err(ComplexError::AugmentationLength { .. })
    ));
}

#[test]
fn window_limits_the_checked_degrees() {
    let r = ring(&["x", "y"], &["x*y"], FieldSpec::Rationals);
    let mut diffs = BTreeMap::new();
    diffs.insert(1, mat(&r, &[&["x"]]));
    diffs.insert(2, mat(&r, &[&["y"]]));
    let c = ChainComplex::new(r.clone(), 0, vec![1, 1, 1], diffs).unwrap();
    let spec = DiagonalSpec::parse(r.clone(), &["x"], 0, &["1"]).unwrap();
    assert!(!verify_diagonal_qiso(&c, &spec).unwrap().passed);
    let windowed = c.with_window(-1, 1).unwrap();
    assert!(verify_diagonal_qiso(&windowed, &spec).unwrap().passed);
}

#[test]
fn restriction_along_identity() {
    let r = ring(&["x", "y"], &["x*y"], FieldSpec::Rationals);
    let mut diffs = BTreeMap::new();
    diffs.insert(1, mat(&r, &[&["x"]]));
    diffs.insert(2, mat(&r, &[&["y"]]));
    let c = ChainComplex::new(r.clone(), 0, vec![1, 1, 1], diffs).unwrap();
    let id = RingHom::identity(r.clone());
    let same = c.restrict(&id).unwrap();
    assert_eq!(same.differentials(), c.differentials());
}

fn random_point(field: FieldSpec, n: usize, seed: &[u64]) -> Vec<Scalar> {
    (0..n).map(|i| field.from_i64((seed[i] % 30011) as i64 + 1)).collect()
}

fn rank_at(m: &PolyMatrix, point: &[Scalar]) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        specialize(m, point).rank()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Exactness over a polynomial ring forces rank d_i + rank d_{i+1} =
    /// rank C_i at a generic point.
    #[test]
    fn specialization_spot_check(
        coeffs in prop::collection::vec(-2i64..=2, 4),
        which in 0usize..3,
        seeds in prop::collection::vec(any::<u64>(), 15),
    ) {
        let field = FieldSpec::prime(32003).unwrap();
        let r = ring(&["x1", "x2", "x3"], &[], field);
        let seqs: [&[&str]; 3] = [&["x1", "x2"], &["x1", "x2", "x3"], &["x1 + x2", "x3"]];
        let k = koszul(&r, seqs[which]);
        let amb = r.ambient();
        let p = (0..3).fold(Polynomial::from_i64(amb, coeffs[0]), |acc, v| {
            &acc + &(&Polynomial::from_i64(amb, coeffs[v + 1]) * &Polynomial::variable(amb, v))
        });
        let maps = (k.lo()..=k.hi())
            .map(|i| (i, PolyMatrix::identity(r.ambient(), k.rank(i)).map(|e| e * &p)))
            .collect();
        let c = cone(&ChainMap::new(k.clone(), k, maps).unwrap());
        for i in c.lo()..=c.hi() {
            if homology_is_zero_at(&c, i).unwrap() {
                for s in 0..5 {
                    let pt = random_point(field, 3, &seeds[3 * s..3 * s + 3]);
                    let total = rank_at(&c.d(i), &pt) + rank_at(&c.d(i + 1), &pt);
                    prop_assert_eq!(total, c.rank(i), "degree {} at {:?}", i, pt);
                }
            }
        }
        if p.is_constant() && !p.is_zero() {
            prop_assert_eq!(exact_degrees(&c).len() as i64, c.hi() - c.lo() + 3);
        }
    }
}
