//! Exact scalar arithmetic in the three field modes used by the library.
//!
//! A [`ScalarField`] fixes both the coefficient field 𝕂 and the deformation
//! parameter q:
//!
//! * rational mode: 𝕂 = ℚ with a fixed nonzero rational q;
//! * cyclotomic mode: 𝕂 = ℚ[x]/Φ_N(x) with q the residue class of x, an
//!   exact primitive N-th root of unity;
//! * rational-function mode: 𝕂 = ℚ(q) with q a free variable.
//!
//! Every [`Scalar`] is kept in a canonical representation, so equality of
//! field elements coincides with equality of representations, and the
//! canonical display strings (`3/4`, `q^2+1`, `(q^2+1)/(q-1)`) round-trip
//! through [`ScalarField::parse`].

mod parse;
pub mod poly;

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use poly::QPoly;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Serializable description of a scalar field, as used by configuration
/// files and the command-line interface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDescriptor {
    /// ℚ with a fixed q, serialized as `{"kind":"rational","q":"<num>/<den>"}`.
    Rational {
        /// The deformation parameter as a rational literal such as `2`,
        /// `-1` or `1/3`.
        q: String,
    },
    /// ℚ[x]/Φ_N, serialized as `{"kind":"cyclotomic","order":N}`.
    Cyclotomic {
        /// The order N of the root of unity realized by q.
        order: u32,
    },
    /// ℚ(q), serialized as `{"kind":"rational_function"}`.
    RationalFunction,
}

#[derive(Debug, PartialEq)]
enum FieldRepr {
    Rational { q: BigRational },
    Cyclotomic { order: u32, modulus: QPoly },
    RationalFunction,
}

/// An exact scalar field together with its deformation parameter q.
///
/// Fields are immutable and cheaply cloneable; scalars remember their field
/// so that accidental cross-field arithmetic is detected.
#[derive(Clone, Debug)]
pub struct ScalarField {
    repr: Arc<FieldRepr>,
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr) || *self.repr == *other.repr
    }
}

impl Eq for ScalarField {}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.repr {
            FieldRepr::Rational { q } => write!(f, "rational(q={q})"),
            FieldRepr::Cyclotomic { order, .. } => write!(f, "cyclotomic({order})"),
            FieldRepr::RationalFunction => write!(f, "rational_function"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum ScalarRepr {
    Rational(BigRational),
    Residue(QPoly),
    Ratio { num: QPoly, den: QPoly },
}

/// An exact element of a [`ScalarField`], kept in canonical form:
///
/// * rational mode: a reduced fraction;
/// * cyclotomic mode: the residue polynomial of degree < deg Φ_N;
/// * rational-function mode: a fraction of coprime polynomials with monic
///   denominator (zero is 0/1).
///
/// Two scalars are equal as field elements exactly when they compare equal.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: ScalarField,
    repr: ScalarRepr,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}

impl Eq for Scalar {}

impl ScalarField {
    /// ℚ with the given nonzero q.
    pub fn rational(q: BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidParameter(
                "the deformation parameter q must be nonzero".into(),
            ));
        }
        Ok(ScalarField {
            repr: Arc::new(FieldRepr::Rational { q }),
        })
    }

    /// ℚ with q the integer `n`.
    pub fn rational_i64(n: i64) -> Result<Self> {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// ℚ with q the fraction `num/den`.
    pub fn rational_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("zero denominator for q".into()));
        }
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ℚ[x]/Φ_N with q the residue class of x.
    pub fn cyclotomic(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "cyclotomic order must be at least 1".into(),
            ));
        }
        Ok(ScalarField {
            repr: Arc::new(FieldRepr::Cyclotomic {
                order,
                modulus: poly::cyclotomic(order),
            }),
        })
    }

    /// ℚ(q) with q a free variable.
    pub fn rational_function() -> Self {
        ScalarField {
            repr: Arc::new(FieldRepr::RationalFunction),
        }
    }

    /// Builds a field from its serialized descriptor.
    pub fn from_descriptor(descriptor: &FieldDescriptor) -> Result<Self> {
        match descriptor {
            FieldDescriptor::Rational { q } => {
                let q = BigRational::from_str(q.trim()).map_err(|e| {
                    Error::InvalidParameter(format!("invalid rational literal {q:?}: {e}"))
                })?;
                Self::rational(q)
            }
            FieldDescriptor::Cyclotomic { order } => Self::cyclotomic(*order),
            FieldDescriptor::RationalFunction => Ok(Self::rational_function()),
        }
    }

    /// The serialized descriptor of this field.
    pub fn descriptor(&self) -> FieldDescriptor {
        match &*self.repr {
            FieldRepr::Rational { q } => FieldDescriptor::Rational { q: q.to_string() },
            FieldRepr::Cyclotomic { order, .. } => FieldDescriptor::Cyclotomic { order: *order },
            FieldRepr::RationalFunction => FieldDescriptor::RationalFunction,
        }
    }

    /// The additive identity.
    pub fn zero(&self) -> Scalar {
        self.from_rational(BigRational::zero())
    }

    /// The multiplicative identity.
    pub fn one(&self) -> Scalar {
        self.from_rational(BigRational::one())
    }

    /// Embeds an integer.
    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Embeds a rational number.
    pub fn from_rational(&self, value: BigRational) -> Scalar {
        let repr = match &*self.repr {
            FieldRepr::Rational { .. } => ScalarRepr::Rational(value),
            FieldRepr::Cyclotomic { .. } => ScalarRepr::Residue(QPoly::constant(value)),
            FieldRepr::RationalFunction => ScalarRepr::Ratio {
                num: QPoly::constant(value),
                den: QPoly::one(),
            },
        };
        Scalar {
            field: self.clone(),
            repr,
        }
    }

    /// The deformation parameter q as a scalar.
    pub fn q(&self) -> Scalar {
        let repr = match &*self.repr {
            FieldRepr::Rational { q } => ScalarRepr::Rational(q.clone()),
            FieldRepr::Cyclotomic { modulus, .. } => ScalarRepr::Residue(QPoly::x().rem(modulus)),
            FieldRepr::RationalFunction => ScalarRepr::Ratio {
                num: QPoly::x(),
                den: QPoly::one(),
            },
        };
        Scalar {
            field: self.clone(),
            repr,
        }
    }

    /// q^n for any integer n (q is a unit in every mode).
    pub fn q_pow(&self, n: i64) -> Scalar {
        match &*self.repr {
            FieldRepr::Rational { .. } | FieldRepr::RationalFunction => self
                .q()
                .pow(n)
                .expect("q is a unit, so integer powers always exist"),
            FieldRepr::Cyclotomic { order, modulus } => {
                let e = n.rem_euclid(i64::from(*order)) as u64;
                Scalar {
                    field: self.clone(),
                    repr: ScalarRepr::Residue(QPoly::x().pow(e).rem(modulus)),
                }
            }
        }
    }

    /// Exact test for q^n = 1, the predicate behind the Kronecker deltas
    /// conditioned on powers of q.
    pub fn q_pow_is_one(&self, n: i64) -> bool {
        match &*self.repr {
            FieldRepr::Rational { .. } => self.q_pow(n).is_one(),
            FieldRepr::Cyclotomic { order, .. } => n.rem_euclid(i64::from(*order)) == 0,
            FieldRepr::RationalFunction => n == 0,
        }
    }

    /// Exact test for q = 1.
    pub fn q_is_one(&self) -> bool {
        self.q().is_one()
    }

    /// Exact test for q = -1.
    pub fn q_is_neg_one(&self) -> bool {
        self.q() == self.from_i64(-1)
    }

    /// The first q-integer convention: {n} = (1 - q^n)/(1 - q) for q ≠ 1 and
    /// {n} = n at q = 1.
    pub fn brace_num(&self, n: i64) -> Scalar {
        if self.q_is_one() {
            return self.from_i64(n);
        }
        let one = self.one();
        let num = one.sub(&self.q_pow(n));
        let den = one.sub(&self.q());
        num.div(&den)
            .expect("q != 1 was checked, so 1 - q is invertible")
    }

    /// The second q-integer convention: [n] = (q^n - q^{-n})/(q - q^{-1})
    /// for q ≠ ±1, with the limit branches [n] = n at q = 1 and
    /// [n] = (-1)^{n-1} n at q = -1.
    pub fn bracket_num(&self, n: i64) -> Scalar {
        if self.q_is_one() {
            return self.from_i64(n);
        }
        if self.q_is_neg_one() {
            let value = if n.rem_euclid(2) == 1 { n } else { -n };
            return self.from_i64(value);
        }
        let num = self.q_pow(n).sub(&self.q_pow(-n));
        let den = self.q_pow(1).sub(&self.q_pow(-1));
        num.div(&den)
            .expect("q != ±1 was checked, so q - q^{-1} is invertible")
    }

    /// Parses a scalar expression in this field. The grammar accepts integer
    /// literals, the symbol `q`, parentheses and the operators `+ - * / ^`
    /// (with integer exponents, possibly negative), so every canonical
    /// display string parses back to the same scalar.
    pub fn parse(&self, input: &str) -> Result<Scalar> {
        parse::parse_scalar(self, input)
    }

    fn modulus(&self) -> Option<&QPoly> {
        match &*self.repr {
            FieldRepr::Cyclotomic { modulus, .. } => Some(modulus),
            _ => None,
        }
    }
}

fn normalized_ratio(num: QPoly, den: QPoly) -> (QPoly, QPoly) {
    assert!(!den.is_zero(), "rational function with zero denominator");
    if num.is_zero() {
        return (QPoly::zero(), QPoly::one());
    }
    let g = QPoly::gcd(&num, &den);
    let (num, num_rem) = num.div_rem(&g);
    let (den, den_rem) = den.div_rem(&g);
    debug_assert!(num_rem.is_zero() && den_rem.is_zero());
    let lead = den.leading().expect("nonzero denominator").clone();
    if lead.is_one() {
        (num, den)
    } else {
        let inv = BigRational::one() / lead;
        (num.scale(&inv), den.scale(&inv))
    }
}

impl Scalar {
    /// The field this scalar belongs to.
    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    /// True for the additive identity.
    pub fn is_zero(&self) -> bool {
        match &self.repr {
            ScalarRepr::Rational(r) => r.is_zero(),
            ScalarRepr::Residue(p) => p.is_zero(),
            ScalarRepr::Ratio { num, .. } => num.is_zero(),
        }
    }

    /// True for the multiplicative identity.
    pub fn is_one(&self) -> bool {
        match &self.repr {
            ScalarRepr::Rational(r) => r.is_one(),
            ScalarRepr::Residue(p) => p.is_one(),
            ScalarRepr::Ratio { num, den } => num.is_one() && den.is_one(),
        }
    }

    fn assert_same_field(&self, rhs: &Scalar) {
        assert!(
            self.field == rhs.field,
            "scalar arithmetic across different fields: {} vs {}",
            self.field,
            rhs.field
        );
    }

    /// Sum.
    ///
    /// # Panics
    ///
    /// Panics if the operands belong to different fields; use [`arith`] for
    /// a validating entry point.
    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (ScalarRepr::Rational(a), ScalarRepr::Rational(b)) => ScalarRepr::Rational(a + b),
            (ScalarRepr::Residue(a), ScalarRepr::Residue(b)) => ScalarRepr::Residue(a.add(b)),
            (
                ScalarRepr::Ratio { num: n1, den: d1 },
                ScalarRepr::Ratio { num: n2, den: d2 },
            ) => {
                let num = n1.mul(d2).add(&n2.mul(d1));
                let den = d1.mul(d2);
                let (num, den) = normalized_ratio(num, den);
                ScalarRepr::Ratio { num, den }
            }
            _ => unreachable!("same field implies same representation kind"),
        };
        Scalar {
            field: self.field.clone(),
            repr,
        }
    }

    /// Difference. Panics on mixed fields like [`Scalar::add`].
    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Scalar {
        let repr = match &self.repr {
            ScalarRepr::Rational(a) => ScalarRepr::Rational(-a),
            ScalarRepr::Residue(a) => ScalarRepr::Residue(a.neg()),
            ScalarRepr::Ratio { num, den } => ScalarRepr::Ratio {
                num: num.neg(),
                den: den.clone(),
            },
        };
        Scalar {
            field: self.field.clone(),
            repr,
        }
    }

    /// Product. Panics on mixed fields like [`Scalar::add`].
    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (ScalarRepr::Rational(a), ScalarRepr::Rational(b)) => ScalarRepr::Rational(a * b),
            (ScalarRepr::Residue(a), ScalarRepr::Residue(b)) => {
                let modulus = self.field.modulus().expect("cyclotomic field");
                ScalarRepr::Residue(a.mul(b).rem(modulus))
            }
            (
                ScalarRepr::Ratio { num: n1, den: d1 },
                ScalarRepr::Ratio { num: n2, den: d2 },
            ) => {
                let (num, den) = normalized_ratio(n1.mul(n2), d1.mul(d2));
                ScalarRepr::Ratio { num, den }
            }
            _ => unreachable!("same field implies same representation kind"),
        };
        Scalar {
            field: self.field.clone(),
            repr,
        }
    }

    /// Multiplicative inverse.
    ///
    /// # Errors
    ///
    /// Returns [`Error::Arithmetic`] for zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        let repr = match &self.repr {
            ScalarRepr::Rational(a) => ScalarRepr::Rational(a.recip()),
            ScalarRepr::Residue(a) => {
                let modulus = self.field.modulus().expect("cyclotomic field");
                let (g, s, _) = a.ext_gcd(modulus);
                assert!(
                    g.is_one(),
                    "cyclotomic modulus is irreducible over the rationals"
                );
                ScalarRepr::Residue(s.rem(modulus))
            }
            ScalarRepr::Ratio { num, den } => {
                let (num, den) = normalized_ratio(den.clone(), num.clone());
                ScalarRepr::Ratio { num, den }
            }
        };
        Ok(Scalar {
            field: self.field.clone(),
            repr,
        })
    }

    /// Quotient.
    ///
    /// # Errors
    ///
    /// Returns [`Error::Arithmetic`] when dividing by zero. Panics on mixed
    /// fields like [`Scalar::add`].
    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.assert_same_field(rhs);
        Ok(self.mul(&rhs.inv()?))
    }

    /// Integer power, with negative exponents via the inverse.
    ///
    /// # Errors
    ///
    /// Returns [`Error::Arithmetic`] for a negative power of zero.
    pub fn pow(&self, n: i64) -> Result<Scalar> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            ScalarRepr::Rational(a) => write!(f, "{a}"),
            ScalarRepr::Residue(p) => f.write_str(&p.format_with_var("q")),
            ScalarRepr::Ratio { num, den } => {
                if den.is_one() {
                    f.write_str(&num.format_with_var("q"))
                } else {
                    write!(
                        f,
                        "({})/({})",
                        num.format_with_var("q"),
                        den.format_with_var("q")
                    )
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// The binary operations exposed by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    /// Addition.
    Add,
    /// Subtraction.
    Sub,
    /// Multiplication.
    Mul,
    /// Division.
    Div,
    /// Canonical-form equality test.
    Eq,
}

/// Result of [`arith`]: a scalar for the arithmetic operations, a boolean
/// for the equality test.
#[derive(Clone, Debug, PartialEq)]
pub enum ArithValue {
    /// Result of `+`, `-`, `*` or `/`.
    Scalar(Scalar),
    /// Result of the equality test.
    Bool(bool),
}

/// Validating arithmetic entry point: checks that both operands belong to
/// the same field before computing.
///
/// # Errors
///
/// Returns [`Error::InvalidParameter`] on mixed fields and
/// [`Error::Arithmetic`] on division by zero.
pub fn arith(a: &Scalar, op: ArithOp, b: &Scalar) -> Result<ArithValue> {
    if a.field() != b.field() {
        return Err(Error::InvalidParameter(format!(
            "operands belong to different fields: {} vs {}",
            a.field(),
            b.field()
        )));
    }
    Ok(match op {
        ArithOp::Add => ArithValue::Scalar(a.add(b)),
        ArithOp::Sub => ArithValue::Scalar(a.sub(b)),
        ArithOp::Mul => ArithValue::Scalar(a.mul(b)),
        ArithOp::Div => ArithValue::Scalar(a.div(b)?),
        ArithOp::Eq => ArithValue::Bool(a == b),
    })
}
