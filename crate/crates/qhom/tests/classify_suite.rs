//! Classifier suite: exhaustive window searches at desk scale, checked for
//! exact solution sets, for two-sided matching against family
//! instantiations, against an independent brute-force evaluation, and for
//! the forced-zero behavior away from roots of unity.

use std::collections::BTreeSet;

use qhom::classify::{enumerate_profiles, match_families, ProfileSet, SearchSpace};
use qhom::families::FamilyDescriptor;
use qhom::graded::AlgebraKind;
use qhom::scalars::ScalarField;

fn binary_values(field: &ScalarField) -> Vec<qhom::scalars::Scalar> {
    vec![field.zero(), field.one()]
}

/// The L-coefficient support of a Witt profile solution.
fn witt_support(set: &ProfileSet, index: usize) -> Vec<i64> {
    set.solutions[index]
        .table()
        .iter()
        .filter(|(_, m)| !m.f1.is_zero())
        .map(|(t, _)| *t)
        .collect()
}

fn all_witt_supports(set: &ProfileSet) -> BTreeSet<Vec<i64>> {
    (0..set.solutions.len()).map(|i| witt_support(set, i)).collect()
}

/// Every candidate that verifies as averaging and stays inside the value
/// set must be matched by some enumerated solution.
fn assert_candidate_soundness(space: &SearchSpace, set: &ProfileSet) {
    let report = match_families(space, set).unwrap();
    for candidate in &report.candidates {
        if candidate.averaging_pass && candidate.in_value_range {
            assert!(
                candidate.matched_solution.is_some(),
                "candidate {} verifies but is unmatched",
                candidate.label
            );
        }
    }
}

#[test]
fn unital_shifted_search_finds_the_point_mass_only() {
    let field = ScalarField::rational_i64(1).unwrap();
    let space = SearchSpace::new(
        AlgebraKind::Witt,
        field.clone(),
        1,
        3,
        binary_values(&field),
    )
    .unwrap();
    assert_eq!(space.domain(), (-4..=8).collect::<Vec<i64>>());
    assert_eq!(space.unknown_count(), 13);

    let set = enumerate_profiles(&space).unwrap();
    assert_eq!(set.solutions.len(), 2);
    assert!(set.solutions[0].is_zero());
    assert_eq!(witt_support(&set, 1), vec![-1]);

    let report = match_families(&space, &set).unwrap();
    assert!(report.unmatched_solutions.is_empty());
    assert_eq!(report.matched_solutions, vec![0, 1]);
    assert_eq!(report.unmatched_candidates.len(), 3);

    let mut unmatched: Vec<(u8, String, String, u8)> = Vec::new();
    for candidate in &report.candidates {
        if candidate.matched_solution.is_some() {
            continue;
        }
        assert!(!candidate.averaging_pass, "{}", candidate.label);
        match candidate.descriptor.as_ref().unwrap() {
            FamilyDescriptor::Witt {
                variant,
                beta,
                nu,
                mu,
                ..
            } => unmatched.push((
                *variant,
                beta.clone().unwrap_or_default(),
                nu.clone().unwrap_or_default(),
                mu.unwrap_or(0),
            )),
            other => panic!("unexpected candidate {other:?}"),
        }
    }
    unmatched.sort();
    assert_eq!(
        unmatched,
        vec![
            (1, "1".to_string(), "0".to_string(), 0),
            (1, "1".to_string(), "1".to_string(), 0),
            (2, String::new(), String::new(), 1),
        ]
    );
    assert_candidate_soundness(&space, &set);
}

#[test]
fn unital_unshifted_search_finds_the_subgroup_indicators() {
    let field = ScalarField::rational_i64(1).unwrap();
    let space = SearchSpace::new(
        AlgebraKind::Witt,
        field.clone(),
        0,
        3,
        binary_values(&field),
    )
    .unwrap();
    assert_eq!(space.domain(), (-6..=6).collect::<Vec<i64>>());

    let set = enumerate_profiles(&space).unwrap();
    assert_eq!(set.solutions.len(), 8);

    let mut expected: BTreeSet<Vec<i64>> = BTreeSet::new();
    expected.insert(Vec::new());
    expected.insert(vec![0]);
    for k in 1..=6 {
        expected.insert((-6..=6).filter(|t| t % k == 0).collect());
    }
    assert_eq!(all_witt_supports(&set), expected);

    // The point mass, the identity slice and the zero profile match family
    // instantiations; the five proper subgroup indicators match none.
    let report = match_families(&space, &set).unwrap();
    assert_eq!(report.unmatched_solutions.len(), 5);
    let unmatched_supports: BTreeSet<Vec<i64>> = report
        .unmatched_solutions
        .iter()
        .map(|&i| witt_support(&set, i))
        .collect();
    let expected_unmatched: BTreeSet<Vec<i64>> = (2..=6)
        .map(|k| (-6..=6).filter(|t| t % k == 0).collect())
        .collect();
    assert_eq!(unmatched_supports, expected_unmatched);

    assert_eq!(report.unmatched_candidates.len(), 2);
    for candidate in &report.candidates {
        if candidate.matched_solution.is_none() {
            assert!(!candidate.averaging_pass, "{}", candidate.label);
        }
    }
    assert_candidate_soundness(&space, &set);
}

#[test]
fn root_of_unity_search_agrees_with_brute_force() {
    let field = ScalarField::cyclotomic(3).unwrap();
    let d = 3;
    let space = SearchSpace::new(
        AlgebraKind::Witt,
        field.clone(),
        d,
        3,
        binary_values(&field),
    )
    .unwrap();
    let domain = space.domain();
    assert_eq!(domain, (0..=12).collect::<Vec<i64>>());

    // Independent evaluation: precompute, for every constraint instance,
    // whether each of the three value patterns violates it, then sweep all
    // 2^13 assignments as bitmasks.
    let in_domain = |t: i64| (0..=12).contains(&t);
    let commuting_forces_zero: Vec<bool> = domain
        .iter()
        .map(|&t| !field.q_pow(t).sub(&field.q_pow(t - d)).is_zero())
        .collect();
    struct PairFacts {
        a: usize,
        b: usize,
        sum: usize,
        c1_zero: bool,
        c2_zero: bool,
        c1_eq_c2: bool,
    }
    let mut pairs = Vec::new();
    for (ai, &a) in domain.iter().enumerate() {
        for (bi, &b) in domain.iter().enumerate() {
            if !in_domain(a + b) {
                continue;
            }
            let c1 = field.brace_num(a).sub(&field.brace_num(b));
            let c2 = field.brace_num(a).sub(&field.brace_num(b - d));
            pairs.push(PairFacts {
                a: ai,
                b: bi,
                sum: (a + b) as usize,
                c1_zero: c1.is_zero(),
                c2_zero: c2.is_zero(),
                c1_eq_c2: c1 == c2,
            });
        }
    }
    let mut brute: BTreeSet<Vec<i64>> = BTreeSet::new();
    'mask: for mask in 0u32..(1 << 13) {
        let f = |i: usize| mask >> i & 1 == 1;
        for (i, forced) in commuting_forces_zero.iter().enumerate() {
            if *forced && f(i) {
                continue 'mask;
            }
        }
        for p in &pairs {
            if !f(p.a) {
                continue;
            }
            let ok = match (f(p.b), f(p.sum)) {
                (true, true) => p.c1_eq_c2,
                (true, false) => p.c1_zero,
                (false, true) => p.c2_zero,
                (false, false) => true,
            };
            if !ok {
                continue 'mask;
            }
        }
        brute.insert(domain.iter().enumerate().filter(|(i, _)| f(*i)).map(|(_, &t)| t).collect());
    }

    let set = enumerate_profiles(&space).unwrap();
    assert_eq!(all_witt_supports(&set), brute);
    assert_candidate_soundness(&space, &set);
}

#[test]
fn w22_root_of_unity_search_is_complete_at_desk_scale() {
    let field = ScalarField::cyclotomic(3).unwrap();
    let d = 3;
    let space = SearchSpace::new(
        AlgebraKind::W22,
        field.clone(),
        d,
        2,
        binary_values(&field),
    )
    .unwrap();
    let domain = space.domain();
    assert_eq!(domain, (1..=10).collect::<Vec<i64>>());
    assert_eq!(space.unknown_count(), 40);

    // Structural collapse at a root of unity: both structure coefficients
    // of the averaging identity agree on every instance, [a-b] = [a-b+d].
    for &a in &domain {
        for &b in &domain {
            if a + b <= 10 {
                assert_eq!(field.bracket_num(a - b), field.bracket_num(a - b + d));
            }
        }
    }

    let set = enumerate_profiles(&space).unwrap();

    // Profiles supported on the W-shear slot alone are entirely
    // unconstrained here, so the g1-free block alone contributes 2^10
    // solutions; the search must find strictly more than that.
    let shear_only = set
        .solutions
        .iter()
        .filter(|s| {
            s.table()
                .values()
                .all(|m| m.f1.is_zero() && m.f2.is_zero() && m.g2.is_zero())
        })
        .count();
    assert_eq!(shear_only, 1 << 10);
    assert!(set.solutions.len() > 1 << 10);

    assert_candidate_soundness(&space, &set);
    assert!(set.coverage.statement.contains("not covered"));
}

#[test]
fn away_from_roots_of_unity_only_the_zero_profile_averages() {
    let field = ScalarField::rational_i64(2).unwrap();

    let witt = SearchSpace::new(
        AlgebraKind::Witt,
        field.clone(),
        1,
        3,
        binary_values(&field),
    )
    .unwrap();
    let set = enumerate_profiles(&witt).unwrap();
    assert_eq!(set.solutions.len(), 1);
    assert!(set.solutions[0].is_zero());

    let w22 = SearchSpace::new(
        AlgebraKind::W22,
        field.clone(),
        1,
        2,
        binary_values(&field),
    )
    .unwrap();
    let set = enumerate_profiles(&w22).unwrap();
    assert_eq!(set.solutions.len(), 1);
    assert!(set.solutions[0].is_zero());
}

#[test]
fn escape_degrees_carry_solutions_beyond_the_families() {
    // At cyclotomic(3) with d = 1 the twist-commuting factor vanishes on
    // the single domain degree t = 2, and every assignment there passes
    // the averaging instances. None of the classified families applies to
    // this regime, an honest completeness counterexample.
    let field = ScalarField::cyclotomic(3).unwrap();
    let space = SearchSpace::new(
        AlgebraKind::W22,
        field.clone(),
        1,
        1,
        binary_values(&field),
    )
    .unwrap();
    assert_eq!(space.domain(), (0..=4).collect::<Vec<i64>>());

    let set = enumerate_profiles(&space).unwrap();
    assert_eq!(set.solutions.len(), 16);
    for solution in &set.solutions {
        for (&t, matrix) in solution.table() {
            if t != 2 {
                assert!(matrix.is_zero());
            }
        }
    }

    let report = match_families(&space, &set).unwrap();
    assert_eq!(report.candidates.len(), 1, "only the synthetic zero applies");
    assert_eq!(report.unmatched_solutions.len(), 15);
}
