//! Combinator suite for averaging operators: scalar multiples, commuting
//! compositions, polynomials without constant term, inverses, the sum
//! compatibility condition, the idempotent projection criterion, and the
//! operator error contract.

use std::collections::BTreeMap;

use qhom::graded::{AlgebraKind, HomAlgebra};
use qhom::laws::{
    check_averaging, check_projection_criterion, check_sum_compatibility, SplitSpec, Window,
};
use qhom::operators::{HomogeneousOperator, ProfileMatrix};
use qhom::scalars::ScalarField;
use qhom::Error;

/// Projection onto the zero component of the Witt-type algebra at q = 1.
fn point_mass(field: &ScalarField) -> HomogeneousOperator {
    let f = field.clone();
    HomogeneousOperator::witt_closed_form(field.clone(), 0, move |t| {
        Ok(if t == 0 { f.one() } else { f.zero() })
    })
}

/// Indicator of the even-degree subalgebra of the Witt-type algebra at q = 1.
fn even_indicator(field: &ScalarField) -> HomogeneousOperator {
    let f = field.clone();
    HomogeneousOperator::witt_closed_form(field.clone(), 0, move |t| {
        Ok(if t % 2 == 0 { f.one() } else { f.zero() })
    })
}

/// An invertible unipotent averaging operator on the W(2,2)-type algebra:
/// L_m maps to L_m + W_m and W_m maps to W_m.
fn unipotent_shear(field: &ScalarField) -> HomogeneousOperator {
    let f = field.clone();
    HomogeneousOperator::closed_form(AlgebraKind::W22, field.clone(), 0, move |_t| {
        let mut m = ProfileMatrix::identity(&f);
        m.g1 = f.one();
        Ok(m)
    })
}

#[test]
fn scalar_multiples_of_averaging_operators_average() {
    let field = ScalarField::rational_i64(2).unwrap();
    let alg = HomAlgebra::witt(field.clone(), 0);
    let window = Window::new(4).unwrap();
    let identity = HomogeneousOperator::identity(AlgebraKind::Witt, field.clone());
    let doubled = identity.scale(&field.from_i64(2)).unwrap();
    assert!(check_averaging(&alg, &doubled, &window).unwrap().passed());
    let tripled = doubled.scale(&field.from_i64(3)).unwrap();
    assert!(check_averaging(&alg, &tripled, &window).unwrap().passed());
    let zeroed = doubled.scale(&field.zero()).unwrap();
    assert!(check_averaging(&alg, &zeroed, &window).unwrap().passed());
}

#[test]
fn commuting_compositions_of_averaging_operators_average() {
    let field = ScalarField::rational_i64(1).unwrap();
    let alg = HomAlgebra::witt(field.clone(), 0);
    let window = Window::new(4).unwrap();
    let p = point_mass(&field);
    let q = p.scale(&field.from_i64(3)).unwrap();
    assert!(check_averaging(&alg, &p, &window).unwrap().passed());
    assert!(check_averaging(&alg, &q, &window).unwrap().passed());
    let pq = p.compose(&q).unwrap();
    let qp = q.compose(&p).unwrap();
    assert!(check_averaging(&alg, &pq, &window).unwrap().passed());
    assert!(check_averaging(&alg, &qp, &window).unwrap().passed());
    let squared = p.compose(&p).unwrap();
    assert!(check_averaging(&alg, &squared, &window).unwrap().passed());
}

#[test]
fn polynomials_without_constant_term_average() {
    let field = ScalarField::rational_i64(1).unwrap();
    let alg = HomAlgebra::witt(field.clone(), 0);
    let window = Window::new(4).unwrap();
    let p = point_mass(&field);
    // F(P) = 3P + P^2 with F(0) = 0.
    let poly = p
        .polynomial(&[field.zero(), field.from_i64(3), field.one()])
        .unwrap();
    assert!(check_averaging(&alg, &poly, &window).unwrap().passed());
    // The image of the zero-degree basis vector is scaled by F(1) = 4.
    let image = poly.matrix_at(0).unwrap();
    assert_eq!(image.f1, field.from_i64(4));

    let constant_term = p.polynomial(&[field.one(), field.one()]);
    assert!(matches!(constant_term, Err(Error::InvalidParameter(_))));
}

#[test]
fn inverses_of_invertible_averaging_operators_average() {
    let field = ScalarField::rational_i64(2).unwrap();
    let window = Window::new(4).unwrap();

    let witt = HomAlgebra::witt(field.clone(), 0);
    let doubled = HomogeneousOperator::identity(AlgebraKind::Witt, field.clone())
        .scale(&field.from_i64(2))
        .unwrap();
    let halved = doubled.inverse().unwrap();
    assert!(check_averaging(&witt, &halved, &window).unwrap().passed());
    assert_eq!(halved.matrix_at(3).unwrap().f1, field.parse("1/2").unwrap());

    let w22 = HomAlgebra::w22(field.clone(), 0);
    let shear = unipotent_shear(&field);
    assert!(check_averaging(&w22, &shear, &window).unwrap().passed());
    let unshear = shear.inverse().unwrap();
    assert!(check_averaging(&w22, &unshear, &window).unwrap().passed());
    assert_eq!(unshear.matrix_at(1).unwrap().g1, field.from_i64(-1));

    let singular = point_mass(&ScalarField::rational_i64(1).unwrap())
        .inverse()
        .unwrap();
    assert!(matches!(
        singular.matrix_at(1),
        Err(Error::SingularAtDegree(1))
    ));
}

#[test]
fn sums_average_only_under_the_compatibility_condition() {
    let field = ScalarField::rational_i64(1).unwrap();
    let alg = HomAlgebra::witt(field.clone(), 0);
    let window = Window::new(4).unwrap();
    let p = point_mass(&field);
    let q = even_indicator(&field);
    assert!(check_averaging(&alg, &p, &window).unwrap().passed());
    assert!(check_averaging(&alg, &q, &window).unwrap().passed());

    // The pair fails the cross condition, and so does the sum itself.
    let compat = check_sum_compatibility(&alg, &p, &q, &window).unwrap();
    assert!(!compat.passed());
    assert!(!compat.witnesses.is_empty());
    let sum = p.add(&q).unwrap();
    assert!(!check_averaging(&alg, &sum, &window).unwrap().passed());

    // A commuting multiple of the same operator is compatible.
    let r = p.scale(&field.from_i64(2)).unwrap();
    assert!(check_sum_compatibility(&alg, &p, &r, &window).unwrap().passed());
    let good_sum = p.add(&r).unwrap();
    assert!(check_averaging(&alg, &good_sum, &window).unwrap().passed());
}

#[test]
fn sums_of_mismatched_degrees_are_rejected() {
    let field = ScalarField::rational_i64(1).unwrap();
    let p = point_mass(&field);
    let f = field.clone();
    let shifted = HomogeneousOperator::witt_closed_form(field.clone(), 1, move |_t| Ok(f.zero()));
    assert!(matches!(p.add(&shifted), Err(Error::InvalidParameter(_))));
}

#[test]
fn projection_criterion_equivalence_holds_on_the_worked_splits() {
    let field = ScalarField::rational_i64(2).unwrap();
    let alg = HomAlgebra::w22(field, 0);
    let window = Window::new(3).unwrap();
    for (split, expected) in [
        (SplitSpec::Everything, "inclusions=pass,averaging=pass"),
        (SplitSpec::Nothing, "inclusions=pass,averaging=pass"),
        (SplitSpec::SpanL, "inclusions=pass,averaging=pass"),
        (SplitSpec::SpanW, "inclusions=fail,averaging=fail"),
    ] {
        let report = check_projection_criterion(&alg, split, &window).unwrap();
        assert!(report.passed(), "equivalence at {:?}", report.check);
        assert!(
            report.check.contains(expected),
            "check name {} lacks {expected}",
            report.check
        );
    }
}

#[test]
fn span_splits_require_both_families() {
    let field = ScalarField::rational_i64(2).unwrap();
    let alg = HomAlgebra::witt(field, 0);
    let window = Window::new(2).unwrap();
    assert!(matches!(
        check_projection_criterion(&alg, SplitSpec::SpanW, &window),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn table_operators_report_missing_degrees_in_order() {
    let field = ScalarField::rational_i64(1).unwrap();
    let alg = HomAlgebra::witt(field.clone(), 0);
    let window = Window::new(2).unwrap();
    let mut table = BTreeMap::new();
    table.insert(0, ProfileMatrix::witt(field.one()));
    let p = HomogeneousOperator::from_table(AlgebraKind::Witt, field, 0, table).unwrap();
    match check_averaging(&alg, &p, &window) {
        Err(Error::Domain { missing }) => {
            assert_eq!(missing, vec![-4, -3, -2, -1, 1, 2, 3, 4]);
        }
        other => panic!("expected a domain error, got {other:?}"),
    }
}
