//! Family suite: every classified averaging family is instantiated at
//! several parameter slices, verified against the averaging axiom on its
//! default window, cross-checked against its printed induced closed form,
//! and surveyed for multiplicativity of the induced bracket.
//!
//! Instantiations drawn from outside the verified parameter ranges are
//! constructed too; they must come back flagged, with the failure witnessed
//! in the attached report, never silently repaired.

use qhom::families::{
    induced_closed_form_crosscheck, induced_multiplicativity_verdict, make_w22_family,
    make_witt_family, W22Case, W22_VERIFY_WINDOW, WITT_VERIFY_WINDOW,
};
use qhom::laws::{check_hom_leibniz, Window};

mod common;
use common::*;

#[test]
fn valid_witt_instantiations_pass_averaging_on_the_default_window() {
    for (label, family, _) in valid_witt_samples() {
        assert!(!family.is_flagged(), "{label} came back flagged");
        let report = family.verification();
        assert!(report.passed());
        assert_eq!(report.window, WITT_VERIFY_WINDOW);
    }
}

#[test]
fn valid_w22_instantiations_pass_averaging_on_the_default_window() {
    for (label, family, _) in valid_w22_samples() {
        assert!(!family.is_flagged(), "{label} came back flagged");
        let report = family.verification();
        assert!(report.passed());
        assert_eq!(report.window, W22_VERIFY_WINDOW);
    }
}

#[test]
fn shifted_constant_witt_instantiation_is_the_flagged_exception() {
    // A constant slice with a nonzero shift: stated as averaging by the
    // classification it comes from, refuted by the verifier. The operator
    // is still constructed, with the failure witnessed in its report.
    let one = q_one();
    for d in [1, 2] {
        let family = make_witt_family(&one, witt_params(&one, 1, d, 1, 0)).unwrap();
        assert!(family.is_flagged(), "constant slice at d={d} must be flagged");
        let report = family.verification();
        assert!(!report.passed());
        assert!(!report.witnesses.is_empty());
    }
}

#[test]
fn out_of_range_instantiations_are_flagged_not_repaired() {
    use W22Case::{DegreeZero, RootOfUnity};
    let one = q_one();
    let neg = q_neg_one();
    let omega = cyc(3);

    let flagged_witt = vec![
        witt_params(&one, 1, 0, 1, 1),
        witt_fraction_params(&one, 1, 1, 1),
        witt_fraction_params(&one, 0, 1, 1),
    ];
    for params in flagged_witt {
        let label = format!("witt v{} d={}", params.variant, params.d);
        let family = make_witt_family(&one, params).unwrap();
        assert!(family.is_flagged(), "{label} must be flagged");
        assert!(!family.verification().passed());
    }
    let mixed = make_witt_family(&neg, witt_params(&neg, 3, 2, 1, 1)).unwrap();
    assert!(mixed.is_flagged(), "variant 3 with beta*nu != 0 must be flagged");

    let flagged_w22 = vec![
        (&omega, w22_params(&omega, RootOfUnity, 1, 3, [0, 1, 0, 0], [1, 0, 0])),
        (&omega, w22_params(&omega, RootOfUnity, 2, 3, [0, 0, 0, 0], [1, 0, 1])),
        (&omega, w22_params(&omega, RootOfUnity, 3, 3, [1, 0, 0, 0], [0, 0, 1])),
        (&omega, w22_params(&omega, RootOfUnity, 4, 3, [0, 0, 0, 0], [2, 0, 1])),
        (&one, w22_params(&one, DegreeZero, 5, 0, [0, 0, 0, 0], [1, 2, 1])),
        (&one, w22_params(&one, DegreeZero, 1, 0, [0, 1, 0, 0], [1, 0, 0])),
    ];
    for (field, params) in flagged_w22 {
        let label = format!("w22 v{} case={} d={}", params.variant, params.case.as_str(), params.d);
        let family = make_w22_family(field, params).unwrap();
        assert!(family.is_flagged(), "{label} must be flagged");
        assert!(!family.verification().passed());
    }
}

#[test]
fn induced_brackets_satisfy_the_twisted_leibniz_identity() {
    let window = Window::new(4).unwrap();
    for (label, family, _) in valid_witt_samples().into_iter().chain(valid_w22_samples()) {
        let induced = family.induced().unwrap();
        let report = check_hom_leibniz(&induced, &window).unwrap();
        assert!(report.passed(), "{label}: {:?}", report.witnesses);
    }
}

#[test]
fn closed_form_crosschecks_diagnose_exactly_the_predicted_slips() {
    let window = Window::new(4).unwrap();
    for (label, family, tag) in valid_witt_samples().into_iter().chain(valid_w22_samples()) {
        let report = induced_closed_form_crosscheck(&family, &window).unwrap();
        assert!(report.passed(), "{label}: {:?}", report.witnesses);
        let expected = format!("induced_crosscheck(printed-form:{tag},hom-leibniz:pass)");
        assert_eq!(report.check, expected, "at {label}");
    }
}

#[test]
fn multiplicativity_verdicts_agree_with_the_parameter_conditions() {
    let witt_window = Window::new(WITT_VERIFY_WINDOW).unwrap();
    for (label, family, _) in valid_witt_samples() {
        let report = induced_multiplicativity_verdict(&family, &witt_window).unwrap();
        assert!(report.passed(), "{label}: {}", report.check);
    }
    let w22_window = Window::new(W22_VERIFY_WINDOW).unwrap();
    for (label, family, _) in valid_w22_samples() {
        let report = induced_multiplicativity_verdict(&family, &w22_window).unwrap();
        assert!(report.passed(), "{label}: {}", report.check);
    }
}

#[test]
fn multiplicativity_survey_hits_both_outcomes() {
    let window = Window::new(4).unwrap();

    // Root-of-unity shifts at a fourth root: multiplicative.
    let i4 = cyc(4);
    let family = make_w22_family(
        &i4,
        w22_params(&i4, W22Case::RootOfUnity, 3, 4, [0, 0, 0, 0], [0, 0, 1]),
    )
    .unwrap();
    let report = induced_multiplicativity_verdict(&family, &window).unwrap();
    assert!(report.passed());
    assert!(report.check.contains("direct=pass"), "{}", report.check);

    // The same variant in the degree-zero regime: not multiplicative.
    let one = q_one();
    let family = make_w22_family(
        &one,
        w22_params(&one, W22Case::DegreeZero, 3, 0, [0, 0, 0, 0], [0, 0, 1]),
    )
    .unwrap();
    let report = induced_multiplicativity_verdict(&family, &window).unwrap();
    assert!(report.passed());
    assert!(report.check.contains("direct=fail"), "{}", report.check);

    // A mixed-parity slice at q = -1: every induced product vanishes under
    // the twist, so the direct check passes.
    let neg = q_neg_one();
    let family = make_witt_family(&neg, witt_params(&neg, 3, 2, 1, 0)).unwrap();
    let report = induced_multiplicativity_verdict(&family, &window).unwrap();
    assert!(report.passed());
    assert!(report.check.contains("direct=pass"), "{}", report.check);
}
