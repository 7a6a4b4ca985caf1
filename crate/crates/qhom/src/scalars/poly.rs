//! Dense univariate polynomials over the rationals.
//!
//! This is the arithmetic kernel shared by the cyclotomic-quotient and
//! rational-function scalar modes. Coefficients are arbitrary-precision
//! rationals; all operations are exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// A polynomial in one variable over ℚ, stored densely by ascending power.
///
/// Invariant: the coefficient vector never has a trailing zero, so the zero
/// polynomial is the empty vector and `coeffs.len() - 1` is the degree
/// otherwise. Two polynomials are equal as field elements exactly when their
/// representations are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    /// The monomial x.
    pub fn x() -> Self {
        QPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    /// A constant polynomial.
    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            QPoly::zero()
        } else {
            QPoly { coeffs: vec![c] }
        }
    }

    /// Builds a polynomial from ascending-power coefficients, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Builds a polynomial from ascending-power integer coefficients.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Coefficients by ascending power (no trailing zero).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True when the polynomial is constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant term (zero for the zero polynomial).
    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// True when the leading coefficient is 1.
    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Sum.
    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        QPoly::from_coeffs(out)
    }

    /// Difference.
    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        self.add(&rhs.neg())
    }

    /// Negation.
    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Product.
    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }

    /// Product with a rational constant.
    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut n: u64) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg remainder < deg divisor`.
    ///
    /// # Panics
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (QPoly::zero(), self.clone());
        }
        let lead = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top / &lead;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let delta = &q * b;
                rem[k + j] -= delta;
            }
            quot[k] = q;
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    /// Remainder of Euclidean division.
    pub fn rem(&self, divisor: &QPoly) -> QPoly {
        self.div_rem(divisor).1
    }

    /// Divides the polynomial by its leading coefficient; zero stays zero.
    pub fn make_monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(lead) if lead.is_one() => self.clone(),
            Some(lead) => {
                let inv = BigRational::one() / lead;
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm. The gcd of
    /// two zero polynomials is zero; otherwise the result is monic.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended Euclidean algorithm: returns `(g, s, t)` with
    /// `s * self + t * rhs = g` and `g` the monic gcd (zero if both inputs
    /// are zero).
    pub fn ext_gcd(&self, rhs: &QPoly) -> (QPoly, QPoly, QPoly) {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        let mut s0 = QPoly::one();
        let mut s1 = QPoly::zero();
        let mut t0 = QPoly::zero();
        let mut t1 = QPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => (QPoly::zero(), QPoly::zero(), QPoly::zero()),
            Some(lead) => {
                let inv = BigRational::one() / lead;
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Formats the polynomial canonically in the variable `var`: terms by
    /// descending power joined with `+`/`-`, coefficient 1 omitted on
    /// non-constant terms, explicit `*` between a non-unit coefficient and
    /// the variable (for example `q^2-q+1/2` or `3/4*q^3`).
    pub fn format_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (power, coeff) in self.coeffs.iter().enumerate().rev() {
            if coeff.is_zero() {
                continue;
            }
            let negative = coeff.is_negative();
            let mag = coeff.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push('-');
            } else {
                out.push('+');
            }
            let body = if power == 0 {
                mag.to_string()
            } else {
                let var_part = if power == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{power}")
                };
                if mag.is_one() {
                    var_part
                } else {
                    format!("{mag}*{var_part}")
                }
            };
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with_var("q"))
    }
}

/// The N-th cyclotomic polynomial, computed by dividing x^N - 1 by the
/// product of the cyclotomic polynomials of the proper divisors of N.
pub fn cyclotomic(n: u32) -> QPoly {
    assert!(n >= 1, "cyclotomic order must be at least 1");
    let mut table: Vec<Option<QPoly>> = vec![None; (n + 1) as usize];
    for m in 1..=n {
        if n % m != 0 {
            continue;
        }
        // x^m - 1
        let mut coeffs = vec![BigRational::zero(); (m + 1) as usize];
        coeffs[0] = -BigRational::one();
        coeffs[m as usize] = BigRational::one();
        let mut num = QPoly::from_coeffs(coeffs);
        for d in 1..m {
            if m % d == 0 {
                let phi = table[d as usize].as_ref().expect("divisors visited in order");
                let (q, r) = num.div_rem(phi);
                assert!(r.is_zero(), "cyclotomic division must be exact");
                num = q;
            }
        }
        table[m as usize] = Some(num);
    }
    table[n as usize].take().expect("target order computed")
}
