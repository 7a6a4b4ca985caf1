//! Shared fixtures for the integration suites: field shorthands, family
//! parameter builders, and the verified sample roster with its expected
//! printed-form outcomes.

#![allow(dead_code)]

use qhom::families::{
    make_w22_family, make_witt_family, FamilyOperator, W22Case, W22FamilyParams, WittFamilyParams,
};
use qhom::scalars::ScalarField;

pub fn q_one() -> ScalarField {
    ScalarField::rational_i64(1).unwrap()
}

pub fn q_neg_one() -> ScalarField {
    ScalarField::cyclotomic(2).unwrap()
}

pub fn cyc(order: u32) -> ScalarField {
    ScalarField::cyclotomic(order).unwrap()
}

pub fn witt_params(
    field: &ScalarField,
    variant: u8,
    d: i64,
    beta: i64,
    nu: i64,
) -> WittFamilyParams {
    WittFamilyParams {
        variant,
        d,
        beta: field.from_i64(beta),
        nu: field.from_i64(nu),
        gamma: field.zero(),
        mu: 0,
    }
}

pub fn witt_fraction_params(field: &ScalarField, d: i64, mu: u8, gamma: i64) -> WittFamilyParams {
    WittFamilyParams {
        variant: 2,
        d,
        beta: field.zero(),
        nu: field.zero(),
        gamma: field.from_i64(gamma),
        mu,
    }
}

/// Builds W(2,2) parameters; `rest` lists gamma, theta, beta in order.
pub fn w22_params(
    field: &ScalarField,
    case: W22Case,
    variant: u8,
    d: i64,
    nus: [i64; 4],
    rest: [i64; 3],
) -> W22FamilyParams {
    W22FamilyParams {
        variant,
        case,
        d,
        nu1: field.from_i64(nus[0]),
        nu2: field.from_i64(nus[1]),
        nu3: field.from_i64(nus[2]),
        nu4: field.from_i64(nus[3]),
        gamma: field.from_i64(rest[0]),
        theta: field.from_i64(rest[1]),
        beta: field.from_i64(rest[2]),
    }
}

/// The verified Witt-type samples with the expected printed-form outcome of
/// the induced-bracket cross-check.
pub fn valid_witt_samples() -> Vec<(String, FamilyOperator, &'static str)> {
    let one = q_one();
    let neg = q_neg_one();
    let omega = cyc(3);
    let rows: Vec<(&ScalarField, WittFamilyParams, &'static str)> = vec![
        (&one, witt_params(&one, 1, 0, 0, 0), "match"),
        (&one, witt_params(&one, 1, 0, 1, 0), "match"),
        (&one, witt_params(&one, 1, 0, 0, 2), "match"),
        (&one, witt_params(&one, 1, 1, 0, 1), "diagnostics=input-shift"),
        (&one, witt_params(&one, 1, 2, 0, 3), "diagnostics=input-shift"),
        (&one, witt_fraction_params(&one, 0, 0, 1), "match"),
        (&one, witt_fraction_params(&one, 1, 0, 2), "match"),
        (&one, witt_fraction_params(&one, 2, 0, 1), "match"),
        (&neg, witt_params(&neg, 3, 0, 1, 0), "match"),
        (&neg, witt_params(&neg, 3, 0, 0, 1), "match"),
        (&neg, witt_params(&neg, 3, 2, 1, 0), "diagnostics=input-shift"),
        (&neg, witt_params(&neg, 3, 2, 0, 2), "diagnostics=input-shift"),
        (&omega, witt_params(&omega, 3, 3, 2, 0), "diagnostics=input-shift"),
        (&neg, witt_params(&neg, 3, 0, 0, 0), "match"),
    ];
    rows.into_iter()
        .map(|(field, params, tag)| {
            let label = format!(
                "witt v{} d={} beta={} nu={} gamma={} mu={} in {}",
                params.variant, params.d, params.beta, params.nu, params.gamma, params.mu, field
            );
            let family = make_witt_family(field, params).unwrap();
            (label, family, tag)
        })
        .collect()
}

/// The verified W(2,2)-type samples with the expected printed-form outcome
/// of the induced-bracket cross-check.
pub fn valid_w22_samples() -> Vec<(String, FamilyOperator, &'static str)> {
    use W22Case::{DegreeZero, RootOfUnity};
    let omega = cyc(3);
    let i4 = cyc(4);
    let one = q_one();
    let neg = q_neg_one();
    let shift = "diagnostics=input-shift";
    let slip = "diagnostics=ww-family-symbol";
    let both = "diagnostics=input-shift+ww-family-symbol";
    let rows: Vec<(&ScalarField, W22FamilyParams, &'static str)> = vec![
        (&omega, w22_params(&omega, RootOfUnity, 1, 3, [0, 0, 0, 0], [1, 0, 0]), shift),
        (&omega, w22_params(&omega, RootOfUnity, 1, 3, [1, 1, 1, 1], [0, 0, 0]), both),
        (&omega, w22_params(&omega, RootOfUnity, 1, 0, [0, 0, 2, 0], [1, 0, 0]), "match"),
        (&omega, w22_params(&omega, RootOfUnity, 1, 3, [0, 0, 0, 0], [0, 0, 0]), "match"),
        (&omega, w22_params(&omega, RootOfUnity, 2, 3, [0, 0, 0, 0], [0, 0, 1]), shift),
        (&omega, w22_params(&omega, RootOfUnity, 2, 0, [0, 0, 0, 0], [0, 0, 2]), "match"),
        (&omega, w22_params(&omega, RootOfUnity, 2, 0, [0, 0, 0, 0], [0, 0, 1]), "match"),
        (&omega, w22_params(&omega, RootOfUnity, 3, 3, [0, 0, 0, 0], [0, 0, 1]), shift),
        (&omega, w22_params(&omega, RootOfUnity, 3, 0, [0, 0, 0, 0], [0, 0, 2]), "match"),
        (&i4, w22_params(&i4, RootOfUnity, 3, 4, [0, 0, 0, 0], [0, 0, 1]), shift),
        (&omega, w22_params(&omega, RootOfUnity, 4, 3, [0, 0, 0, 0], [1, 0, 1]), shift),
        (&omega, w22_params(&omega, RootOfUnity, 4, 0, [0, 0, 0, 0], [2, 0, 2]), "match"),
        (&omega, w22_params(&omega, RootOfUnity, 4, 0, [0, 0, 0, 0], [1, 0, 1]), "match"),
        (&omega, w22_params(&omega, RootOfUnity, 5, 3, [0, 0, 0, 0], [1, 1, 1]), shift),
        (&omega, w22_params(&omega, RootOfUnity, 5, 0, [0, 0, 0, 0], [2, 2, 1]), "match"),
        (&omega, w22_params(&omega, RootOfUnity, 5, 3, [0, 0, 0, 0], [0, 0, 1]), shift),
        (&one, w22_params(&one, DegreeZero, 1, 0, [0, 0, 0, 0], [1, 0, 0]), "match"),
        (&neg, w22_params(&neg, DegreeZero, 1, 0, [1, 2, 0, 1], [0, 0, 0]), slip),
        (&one, w22_params(&one, DegreeZero, 1, 0, [0, 0, 1, 0], [2, 0, 0]), "match"),
        (&one, w22_params(&one, DegreeZero, 1, 0, [0, 0, 0, 0], [0, 0, 0]), "match"),
        (&one, w22_params(&one, DegreeZero, 2, 0, [0, 0, 0, 0], [0, 0, 1]), "match"),
        (&neg, w22_params(&neg, DegreeZero, 2, 0, [0, 0, 0, 0], [0, 0, 2]), "match"),
        (&neg, w22_params(&neg, DegreeZero, 2, 0, [0, 0, 0, 0], [0, 0, 1]), "match"),
        (&one, w22_params(&one, DegreeZero, 3, 0, [0, 0, 0, 0], [0, 0, 1]), "match"),
        (&neg, w22_params(&neg, DegreeZero, 3, 0, [0, 0, 0, 0], [0, 0, 2]), "match"),
        (&neg, w22_params(&neg, DegreeZero, 3, 0, [0, 0, 0, 0], [0, 0, 1]), "match"),
        (&one, w22_params(&one, DegreeZero, 4, 0, [0, 0, 0, 0], [1, 0, 1]), "match"),
        (&neg, w22_params(&neg, DegreeZero, 4, 0, [0, 0, 0, 0], [2, 0, 2]), "match"),
        (&neg, w22_params(&neg, DegreeZero, 4, 0, [0, 0, 0, 0], [1, 0, 1]), "match"),
        (&one, w22_params(&one, DegreeZero, 5, 0, [0, 0, 0, 0], [1, 1, 1]), "match"),
        (&neg, w22_params(&neg, DegreeZero, 5, 0, [0, 0, 0, 0], [2, 2, 1]), "match"),
        (&one, w22_params(&one, DegreeZero, 5, 0, [0, 0, 0, 0], [0, 0, 3]), "match"),
    ];
    rows.into_iter()
        .map(|(field, params, tag)| {
            let label = format!(
                "w22 v{} case={} d={} nus=({},{},{},{}) gamma={} theta={} beta={} in {}",
                params.variant,
                params.case.as_str(),
                params.d,
                params.nu1,
                params.nu2,
                params.nu3,
                params.nu4,
                params.gamma,
                params.theta,
                params.beta,
                field
            );
            let family = make_w22_family(field, params).unwrap();
            (label, family, tag)
        })
        .collect()
}
