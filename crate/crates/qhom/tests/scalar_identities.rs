//! Identity suite for the two q-integer conventions over every field mode.
//!
//! Each identity is checked exactly, for all integer arguments in the
//! window [-8, 8], over rational fields with q = 2 and q = 1/3, the
//! cyclotomic fields of orders 1 through 6, and the rational-function
//! field with q as a free variable.

use qhom::scalars::ScalarField;

const RANGE: std::ops::RangeInclusive<i64> = -8..=8;

/// The field roster the identity grid runs over.
fn roster() -> Vec<ScalarField> {
    let mut fields = vec![
        ScalarField::rational_i64(2).unwrap(),
        ScalarField::rational_ratio(1, 3).unwrap(),
    ];
    for order in 1..=6 {
        fields.push(ScalarField::cyclotomic(order).unwrap());
    }
    fields.push(ScalarField::rational_function());
    fields
}

#[test]
fn brace_addition_rule_holds_on_the_grid() {
    for field in roster() {
        for m in RANGE {
            for n in RANGE {
                let lhs = field.brace_num(m + n);
                let rhs = field.brace_num(m).add(&field.q_pow(m).mul(&field.brace_num(n)));
                assert_eq!(lhs, rhs, "{{m+n}} = {{m}} + q^m {{n}} at m={m}, n={n} in {field}");
            }
        }
    }
}

#[test]
fn brace_negation_rule_holds_on_the_grid() {
    for field in roster() {
        for m in RANGE {
            let lhs = field.q_pow(m).mul(&field.brace_num(-m));
            let rhs = field.brace_num(m).neg();
            assert_eq!(lhs, rhs, "q^m {{-m}} = -{{m}} at m={m} in {field}");
        }
    }
}

#[test]
fn brace_successor_rule_holds_on_the_grid() {
    for field in roster() {
        for m in RANGE {
            let lhs = field.brace_num(m + 1);
            let rhs = field.one().add(&field.q().mul(&field.brace_num(m)));
            assert_eq!(lhs, rhs, "{{m+1}} = 1 + q {{m}} at m={m} in {field}");
        }
    }
}

#[test]
fn bracket_negation_rule_holds_on_the_grid() {
    for field in roster() {
        for n in RANGE {
            let lhs = field.bracket_num(-n);
            let rhs = field.bracket_num(n).neg();
            assert_eq!(lhs, rhs, "[-n] = -[n] at n={n} in {field}");
        }
    }
}

#[test]
fn bracket_difference_rule_holds_on_the_grid() {
    for field in roster() {
        for m in RANGE {
            for n in RANGE {
                let lhs = field
                    .q_pow(n)
                    .mul(&field.bracket_num(m))
                    .sub(&field.q_pow(m).mul(&field.bracket_num(n)));
                let rhs = field.bracket_num(m - n);
                assert_eq!(lhs, rhs, "q^n [m] - q^m [n] = [m-n] at m={m}, n={n} in {field}");
            }
        }
    }
}

#[test]
fn bracket_addition_rule_holds_on_the_grid() {
    for field in roster() {
        for m in RANGE {
            for n in RANGE {
                let lhs = field
                    .q_pow(-n)
                    .mul(&field.bracket_num(m))
                    .add(&field.q_pow(m).mul(&field.bracket_num(n)));
                let rhs = field.bracket_num(m + n);
                assert_eq!(lhs, rhs, "q^-n [m] + q^m [n] = [m+n] at m={m}, n={n} in {field}");
            }
        }
    }
}

#[test]
fn brace_vanishes_exactly_at_unit_powers() {
    // The vanishing equivalence is the root-of-unity criterion for the
    // geometric-sum branch; it presumes q != 1. At order 1 the field has
    // q = 1, the brace takes its integer branch {n} = n, and the honest
    // statement is that {n} vanishes exactly at n = 0.
    for order in 2..=6 {
        let field = ScalarField::cyclotomic(order).unwrap();
        for n in RANGE {
            assert_eq!(
                field.brace_num(n).is_zero(),
                field.q_pow_is_one(n),
                "{{n}} = 0 iff q^n = 1 at n={n}, order={order}"
            );
        }
    }
    let unit = ScalarField::cyclotomic(1).unwrap();
    assert!(unit.q_is_one());
    for n in RANGE {
        assert_eq!(unit.brace_num(n), unit.from_i64(n));
        assert_eq!(unit.brace_num(n).is_zero(), n == 0);
    }
}

#[test]
fn bracket_vanishes_exactly_at_unit_square_powers() {
    for order in 3..=8 {
        let field = ScalarField::cyclotomic(order).unwrap();
        assert!(!field.q_is_one() && !field.q_is_neg_one());
        for n in RANGE {
            assert_eq!(
                field.bracket_num(n).is_zero(),
                field.q_pow_is_one(2 * n),
                "[n] = 0 iff q^2n = 1 at n={n}, order={order}"
            );
        }
    }
}

#[test]
fn canonical_forms_round_trip_through_strings() {
    for field in roster() {
        for m in RANGE {
            for sample in [
                field.brace_num(m),
                field.bracket_num(m),
                field.q_pow(m),
                field.brace_num(m).mul(&field.bracket_num(m - 1)),
            ] {
                let reparsed = field.parse(&sample.to_string()).unwrap();
                assert_eq!(reparsed, sample, "canonical round trip in {field}");
            }
        }
    }
}
