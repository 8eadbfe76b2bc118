use super::*;
use crate::expr::eval;
use crate::geometry::convert_basis;
use crate::verify::grid_residual_check;

fn metric(f1: &str, f2: &str) -> DiagonalMetric {
    DiagonalMetric::parse(f1, f2).unwrap()
}

fn build(case: FamilyCase, k: f64, c: &[f64], m: &DiagonalMetric) -> VectorField {
    build_family(case, &FamilyParams::new(k, c.to_vec()), m).unwrap()
}

fn max_residual(m: &DiagonalMetric, v: &VectorField) -> f64 {
    grid_residual_check(m, v, &Region::default(), 21, 0.0).unwrap().max_abs
}

/// Max difference of coordinate components against closed forms.
fn coord_gap(v: &VectorField, m: &DiagonalMetric, want: [&dyn Fn(f64, f64) -> f64; 2]) -> f64 {
    let c = convert_basis(v, m, Basis::Coordinate);
    let mut gap = 0.0f64;
    for p in Region::default().lattice(9) {
        gap = gap.max((eval(&c.c1, p).unwrap() - want[0](p[0], p[1])).abs());
        gap = gap.max((eval(&c.c2, p).unwrap() - want[1](p[0], p[1])).abs());
    }
    gap
}

#[test]
fn both_const_rotation() {
    let m = DiagonalMetric::euclidean();
    let v = build(FamilyCase::BothConst, 1.0, &[0.0, 0.0], &m);
    assert_eq!(v.basis, Basis::Frame);
    assert_eq!(v.c1.to_string(), "-x2");
    assert_eq!(v.c2.to_string(), "x1");
    assert_eq!(max_residual(&m, &v), 0.0);
}

#[test]
fn crossed_constants_example() {
    let m = metric("2", "3");
    let v = build(FamilyCase::CrossedBothConst, 1.0, &[0.0, 0.0], &m);
    let gap = coord_gap(&v, &m, [&|_, y| 4.0 * y, &|x, _| -9.0 * x]);
    assert!(gap < 1e-14, "{gap}");
    assert!(max_residual(&m, &v) < 1e-12);
}

#[test]
fn const_f2_f1_of_x1_example() {
    // anchor 0 gives F2 = 1 - exp(-x1), so c2 = 1 reproduces exp(-x1)
    let m = metric("exp(x1)", "1");
    let v = build(FamilyCase::ConstF2F1ofX1, -1.0, &[0.0, 1.0], &m);
    assert!(!v.is_closed_form());
    let gap = coord_gap(&v, &m, [&|x, y| y * x.exp(), &|x, _| (-x).exp()]);
    assert!(gap < 1e-11, "{gap}");
    assert!(max_residual(&m, &v) < 1e-9);
}

#[test]
fn const_f2_f1_of_x2_linear() {
    let m = metric("exp(x2)", "1");
    let fam = construct_family(
        FamilyCase::ConstF2F1ofX2,
        &FamilyParams::new(0.0, vec![1.0, 0.0, -0.5]),
        &m,
        &Region::default(),
    )
    .unwrap();
    assert_eq!(fam.k, Some(0.0));
    assert!((fam.lambda.unwrap() - 1.0).abs() < 1e-14);
    assert_eq!(fam.provenance.subcase, Some("linear (k = 0)"));
    let gap = coord_gap(&fam.field, &m, [&|x, y| (x * x - (2.0 * y).exp()) / 2.0, &|x, _| x]);
    assert!(gap < 1e-11, "{gap}");
    assert!(max_residual(&m, &fam.field) < 1e-9);
}

#[test]
fn const_f2_f1_of_x2_exponential() {
    let m = metric("1/cosh(x2)", "1");
    let fam = construct_family(
        FamilyCase::ConstF2F1ofX2,
        &FamilyParams::new(0.0, vec![1.0, 0.0, 0.0]),
        &m,
        &Region::default(),
    )
    .unwrap();
    assert!((fam.k.unwrap() - 1.0).abs() < 1e-12);
    for p in Region::default().lattice(5) {
        assert!((eval(&fam.field.c2, p).unwrap() - p[0].exp()).abs() < 1e-14);
    }
    assert!(max_residual(&m, &fam.field) < 1e-9);
}

#[test]
fn const_f2_f1_of_x2_trigonometric() {
    let m = metric("1/cos(x2)", "1");
    let v = build(FamilyCase::ConstF2F1ofX2, 0.0, &[0.3, -0.7, 0.2], &m);
    assert!(max_residual(&m, &v) < 1e-9);
}

#[test]
fn non_constant_k() {
    let m = metric("exp(x2^2)", "1");
    let err = build_family(FamilyCase::ConstF2F1ofX2, &FamilyParams::new(0.0, vec![1.0, 0.0, 0.0]), &m)
        .unwrap_err();
    assert!(matches!(err, Error::NonConstantK { .. }), "{err}");
    // only the V^2 = 0 branch survives
    let v = build(FamilyCase::ConstF2F1ofX2, 0.0, &[0.0, 0.0, 1.0], &m);
    assert!(max_residual(&m, &v) < 1e-12);
    assert_eq!(enumerate_basis(FamilyCase::ConstF2F1ofX2, &m).unwrap().len(), 1);
}

#[test]
fn requested_k_sign_must_match() {
    let m = metric("1/cosh(x2)", "1");
    let err = build_family(FamilyCase::ConstF2F1ofX2, &FamilyParams::new(-1.0, vec![1.0, 0.0, 0.0]), &m)
        .unwrap_err();
    assert!(matches!(err, Error::Inadmissible(_)));
}

#[test]
fn inadmissible_names_precondition() {
    let m = metric("exp(x1)", "1");
    let err = build_family(FamilyCase::BothConst, &FamilyParams::new(1.0, vec![0.0, 0.0]), &m).unwrap_err();
    assert_eq!(err.to_string(), "case inadmissible: f1 not constant on region");
    let err = build_family(FamilyCase::Euclidean, &FamilyParams::new(0.0, vec![1.0, 0.0, 0.0]), &metric("2", "1"))
        .unwrap_err();
    assert!(matches!(err, Error::Inadmissible(_)));
}

#[test]
fn wrong_parameter_count() {
    let err = build_family(FamilyCase::SeparableDiag, &FamilyParams::new(0.0, vec![1.0]), &DiagonalMetric::euclidean())
        .unwrap_err();
    assert!(matches!(err, Error::Params(_)), "{err}");
}

#[test]
fn euclidean_generators() {
    let g = enumerate_basis(FamilyCase::Euclidean, &DiagonalMetric::euclidean()).unwrap();
    let printed: Vec<_> = g.iter().map(|v| (v.basis, v.c1.to_string(), v.c2.to_string())).collect();
    assert_eq!(
        printed,
        [
            (Basis::Coordinate, "x2".to_string(), "-x1".to_string()),
            (Basis::Coordinate, "1".to_string(), "0".to_string()),
            (Basis::Coordinate, "0".to_string(), "-1".to_string()),
        ]
    );
}

#[test]
fn reciprocal_generator() {
    let m = metric("exp(-x1)", "exp(x1)");
    let g = enumerate_basis(FamilyCase::BothX1Reciprocal, &m).unwrap();
    assert_eq!(g.len(), 1);
    // frame component exp(-x1) is the coordinate field d/dx2
    assert!(coord_gap(&g[0], &m, [&|_, _| 0.0, &|_, _| 1.0]) < 1e-15);
}

#[test]
fn separable_generators() {
    let g = enumerate_basis(FamilyCase::SeparableDiag, &metric("exp(x1)", "exp(x2)")).unwrap();
    assert_eq!(g, [
        VectorField::parse(Basis::Frame, "1", "0").unwrap(),
        VectorField::parse(Basis::Frame, "0", "1").unwrap(),
    ]);
}

#[test]
fn counts_and_tags() {
    for case in FamilyCase::ALL {
        assert_eq!(case.tag().parse::<FamilyCase>().unwrap(), case);
        assert_eq!(serde_json::to_string(&case).unwrap(), format!("\"{}\"", case.tag()));
        assert_eq!(case.c_names().len(), case.c_len());
    }
    assert_eq!(FamilyCase::Euclidean.free_constants(), 3);
    assert_eq!(FamilyCase::BothConst.free_constants(), 3);
    assert_eq!(FamilyCase::CrossedZero.free_constants(), 0);
    assert!("Crossed_case5".parse::<FamilyCase>().is_err());
}
