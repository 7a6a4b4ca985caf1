//! Integer-graded elements and the two built-in Hom-algebras.
//!
//! Elements are finitely supported linear combinations of basis symbols
//! `L_n` (both algebras) and `W_n` (the W(2,2) deformation only); the basis
//! degree realizes the grading. The two built-ins are:
//!
//! * the q-deformed Witt algebra: `[L_m, L_n] = ({m} - {n}) L_{m+n}` with
//!   the degree-k twist `α_k(L_n) = (1 + q^{n-k}) L_{n+k}`;
//! * the q-deformed W(2,2) algebra: `[L_m, L_n] = [m-n] L_{m+n}`,
//!   `[L_m, W_n] = [m-n] W_{m+n}`, `[W_m, L_n] = [m-n] W_{m+n}` and
//!   `[W_m, W_n] = 0`, with the degree-k twist multiplying both symbol
//!   families by `q^{n-k} + q^{k-n}`.
//!
//! Both bracket rules and both twist rules are total closed forms, so window
//! checks never truncate at the boundary.

use crate::scalars::{Scalar, ScalarField};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// The basis symbol family: `L` in both algebras, `W` only in W(2,2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// The Witt-type generators `L_n`.
    L,
    /// The additional W(2,2) generators `W_n`.
    W,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::L => f.write_str("L"),
            Family::W => f.write_str("W"),
        }
    }
}

/// A basis symbol: a family tag plus an integer degree. Ordered by degree
/// first, then family, which fixes the canonical term order of elements and
/// witness lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    /// The grading degree.
    pub degree: i64,
    /// The symbol family.
    pub family: Family,
}

impl BasisIndex {
    /// The symbol `L_degree`.
    pub fn l(degree: i64) -> Self {
        BasisIndex {
            degree,
            family: Family::L,
        }
    }

    /// The symbol `W_degree`.
    pub fn w(degree: i64) -> Self {
        BasisIndex {
            degree,
            family: Family::W,
        }
    }

    /// The same symbol shifted to `degree + shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        BasisIndex {
            degree: self.degree + shift,
            family: self.family,
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.degree)
    }
}

/// A finitely supported linear combination of basis symbols with exact
/// scalar coefficients. Zero coefficients are never stored, so equality of
/// maps is equality of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<BasisIndex, Scalar>,
}

impl Element {
    /// The zero element.
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `1·index`.
    pub fn basis(field: &ScalarField, index: BasisIndex) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(index, field.one());
        Element { terms }
    }

    /// A single term `coefficient·index` (zero coefficients give zero).
    pub fn term(index: BasisIndex, coefficient: Scalar) -> Self {
        let mut element = Element::zero();
        element.add_term(index, coefficient);
        element
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over the nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Scalar)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of a basis symbol (zero when absent).
    pub fn coefficient(&self, index: BasisIndex, field: &ScalarField) -> Scalar {
        self.terms
            .get(&index)
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    /// Adds `coefficient·index` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, index: BasisIndex, coefficient: Scalar) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.remove(&index) {
            None => {
                self.terms.insert(index, coefficient);
            }
            Some(existing) => {
                let sum = existing.add(&coefficient);
                if !sum.is_zero() {
                    self.terms.insert(index, sum);
                }
            }
        }
    }

    /// Sum of two elements.
    pub fn add(&self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (index, coefficient) in rhs.terms() {
            out.add_term(*index, coefficient.clone());
        }
        out
    }

    /// Difference of two elements.
    pub fn sub(&self, rhs: &Element) -> Element {
        self.add(&rhs.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(index, coefficient)| (*index, coefficient.neg()))
                .collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, scalar: &Scalar) -> Element {
        if scalar.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(index, coefficient)| (*index, coefficient.mul(scalar)))
                .collect(),
        }
    }

    /// The set of degrees carrying a nonzero term, ascending.
    pub fn support_degrees(&self) -> Vec<i64> {
        let mut degrees: Vec<i64> = self.terms.keys().map(|index| index.degree).collect();
        degrees.dedup();
        degrees
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (index, coefficient) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({coefficient})*{index}")?;
        }
        Ok(())
    }
}

/// A graded algebra with a twist map: the interface shared by the two
/// built-in Hom-Lie algebras and by induced bracket structures.
///
/// `product_basis` and `twist_basis` define the structure on basis symbols;
/// the provided `product` and `twist` methods extend them bilinearly and
/// linearly. Implementations must be total in the degree (no window
/// truncation).
pub trait GradedAlgebra {
    /// The coefficient field.
    fn field(&self) -> &ScalarField;

    /// Human-readable name used in reports.
    fn name(&self) -> String;

    /// The basis families present in the algebra.
    fn families(&self) -> &'static [Family];

    /// The degree shift of the twist map.
    fn twist_degree(&self) -> i64;

    /// The degree shift of the product: the product of degrees m and n is
    /// supported in degree `m + n + product_degree_shift()`.
    fn product_degree_shift(&self) -> i64 {
        0
    }

    /// Whether the product is skew-symmetric by construction. Checks may
    /// use this declaration to assert that the one-sided and two-sided
    /// averaging axioms agree; it is a hint, not a verified fact.
    fn is_skew_symmetric(&self) -> bool;

    /// The product of two basis symbols.
    fn product_basis(&self, x: BasisIndex, y: BasisIndex) -> Result<Element>;

    /// The twist of a basis symbol.
    fn twist_basis(&self, x: BasisIndex) -> Result<Element>;

    /// Validates that a basis symbol belongs to the algebra.
    fn check_index(&self, index: BasisIndex) -> Result<()> {
        if self.families().contains(&index.family) {
            Ok(())
        } else {
            Err(Error::InvalidBasis(format!(
                "basis symbol {index} is not part of {}",
                self.name()
            )))
        }
    }

    /// Bilinear extension of the basis product.
    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (ix, a) in x.terms() {
            for (iy, b) in y.terms() {
                let base = self.product_basis(*ix, *iy)?;
                out = out.add(&base.scale(&a.mul(b)));
            }
        }
        Ok(out)
    }

    /// Linear extension of the basis twist.
    fn twist(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (ix, a) in x.terms() {
            out = out.add(&self.twist_basis(*ix)?.scale(a));
        }
        Ok(out)
    }

    /// All basis symbols with |degree| ≤ M, in canonical order.
    fn basis_window(&self, window: i64) -> Vec<BasisIndex> {
        let mut out = Vec::new();
        for degree in -window..=window {
            for family in self.families() {
                out.push(BasisIndex {
                    degree,
                    family: *family,
                });
            }
        }
        out
    }
}

/// Which of the two built-in algebras an object refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// The q-deformed Witt algebra (basis `L_n`).
    Witt,
    /// The q-deformed W(2,2) algebra (basis `L_n`, `W_n`).
    W22,
}

impl AlgebraKind {
    /// The serialized name: `witt` or `w22`.
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgebraKind::Witt => "witt",
            AlgebraKind::W22 => "w22",
        }
    }

    /// Parses `witt` or `w22`.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "witt" => Ok(AlgebraKind::Witt),
            "w22" => Ok(AlgebraKind::W22),
            other => Err(Error::InvalidParameter(format!(
                "unknown algebra {other:?}; expected \"witt\" or \"w22\""
            ))),
        }
    }

    /// The basis families of the algebra.
    pub fn families(&self) -> &'static [Family] {
        match self {
            AlgebraKind::Witt => &[Family::L],
            AlgebraKind::W22 => &[Family::L, Family::W],
        }
    }
}

/// One of the two built-in Hom-Lie algebras, with a chosen twist degree k.
#[derive(Clone, Debug)]
pub struct HomAlgebra {
    kind: AlgebraKind,
    field: ScalarField,
    twist_degree: i64,
}

impl HomAlgebra {
    /// The q-deformed Witt algebra over `field` with twist `α_k`.
    pub fn witt(field: ScalarField, twist_degree: i64) -> Self {
        HomAlgebra {
            kind: AlgebraKind::Witt,
            field,
            twist_degree,
        }
    }

    /// The q-deformed W(2,2) algebra over `field` with twist `β_k`.
    pub fn w22(field: ScalarField, twist_degree: i64) -> Self {
        HomAlgebra {
            kind: AlgebraKind::W22,
            field,
            twist_degree,
        }
    }

    /// Builds the algebra from its serialized name.
    pub fn by_name(name: &str, field: ScalarField, twist_degree: i64) -> Result<Self> {
        Ok(HomAlgebra {
            kind: AlgebraKind::parse(name)?,
            field,
            twist_degree,
        })
    }

    /// Which built-in this is.
    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// The structure constant of `[x_m, y_n]` as a scalar: the bracket of
    /// basis symbols is this value times the output symbol (or zero for the
    /// `[W, W]` products).
    pub fn structure_constant(&self, m: i64, n: i64) -> Scalar {
        match self.kind {
            AlgebraKind::Witt => self.field.brace_num(m).sub(&self.field.brace_num(n)),
            AlgebraKind::W22 => self.field.bracket_num(m - n),
        }
    }

    /// The twist coefficient at input degree m: the twist of a degree-m
    /// basis symbol is this value times the symbol shifted by k.
    pub fn twist_coefficient(&self, m: i64) -> Scalar {
        let k = self.twist_degree;
        match self.kind {
            AlgebraKind::Witt => self.field.one().add(&self.field.q_pow(m - k)),
            AlgebraKind::W22 => self.field.q_pow(m - k).add(&self.field.q_pow(k - m)),
        }
    }
}

impl GradedAlgebra for HomAlgebra {
    fn field(&self) -> &ScalarField {
        &self.field
    }

    fn name(&self) -> String {
        format!("{}-q", self.kind.as_str())
    }

    fn families(&self) -> &'static [Family] {
        self.kind.families()
    }

    fn twist_degree(&self) -> i64 {
        self.twist_degree
    }

    fn is_skew_symmetric(&self) -> bool {
        true
    }

    fn product_basis(&self, x: BasisIndex, y: BasisIndex) -> Result<Element> {
        self.check_index(x)?;
        self.check_index(y)?;
        let output_family = match (x.family, y.family) {
            (Family::L, Family::L) => Family::L,
            (Family::W, Family::W) => return Ok(Element::zero()),
            _ => Family::W,
        };
        let coefficient = self.structure_constant(x.degree, y.degree);
        Ok(Element::term(
            BasisIndex {
                degree: x.degree + y.degree,
                family: output_family,
            },
            coefficient,
        ))
    }

    fn twist_basis(&self, x: BasisIndex) -> Result<Element> {
        self.check_index(x)?;
        Ok(Element::term(
            x.shifted(self.twist_degree),
            self.twist_coefficient(x.degree),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witt_q(n: i64, k: i64) -> HomAlgebra {
        HomAlgebra::witt(ScalarField::rational_i64(n).unwrap(), k)
    }

    #[test]
    fn element_terms_cancel_and_sort() {
        let field = ScalarField::rational_i64(2).unwrap();
        let mut x = Element::zero();
        x.add_term(BasisIndex::l(3), field.from_i64(2));
        x.add_term(BasisIndex::w(-1), field.one());
        x.add_term(BasisIndex::l(3), field.from_i64(-2));
        assert_eq!(x.term_count(), 1);
        assert_eq!(x.to_string(), "(1)*W_-1");

        let y = Element::basis(&field, BasisIndex::l(0));
        let sum = x.add(&y).sub(&y);
        assert_eq!(sum, x);
        assert!(x.sub(&x).is_zero());
        assert!(x.scale(&field.zero()).is_zero());
    }

    #[test]
    fn witt_bracket_at_q_one() {
        let alg = witt_q(1, 0);
        let field = alg.field().clone();
        let out = alg
            .product_basis(BasisIndex::l(2), BasisIndex::l(1))
            .unwrap();
        assert_eq!(out, Element::term(BasisIndex::l(3), field.one()));
    }

    #[test]
    fn brackets_are_skew_on_the_diagonal() {
        let alg = witt_q(2, 0);
        for m in -3..=3 {
            assert!(alg
                .product_basis(BasisIndex::l(m), BasisIndex::l(m))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn w22_mixed_bracket_generic_q() {
        let field = ScalarField::rational_function();
        let alg = HomAlgebra::w22(field.clone(), 0);
        // [L_1, W_4] = [1-4] W_5 = -(q^2 + 1 + q^{-2}) W_5
        let out = alg
            .product_basis(BasisIndex::l(1), BasisIndex::w(4))
            .unwrap();
        let expected = field
            .q_pow(2)
            .add(&field.one())
            .add(&field.q_pow(-2))
            .neg();
        assert_eq!(out, Element::term(BasisIndex::w(5), expected));
        // [W_2, W_5] = 0
        assert!(alg
            .product_basis(BasisIndex::w(2), BasisIndex::w(5))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn w_symbols_are_rejected_by_witt() {
        let alg = witt_q(2, 0);
        assert!(matches!(
            alg.product_basis(BasisIndex::l(0), BasisIndex::w(1)),
            Err(Error::InvalidBasis(_))
        ));
        assert!(matches!(
            alg.twist_basis(BasisIndex::w(1)),
            Err(Error::InvalidBasis(_))
        ));
    }

    #[test]
    fn twist_values() {
        // Witt, q = 2, k = 0: α(L_3) = (1 + 2^3) L_3.
        let alg = witt_q(2, 0);
        let field = alg.field().clone();
        assert_eq!(
            alg.twist_basis(BasisIndex::l(3)).unwrap(),
            Element::term(BasisIndex::l(3), field.from_i64(9))
        );
        // W(2,2), q = 2, k = 0: twist(W_2) = (4 + 1/4) W_2.
        let alg = HomAlgebra::w22(field.clone(), 0);
        assert_eq!(
            alg.twist_basis(BasisIndex::w(2)).unwrap(),
            Element::term(
                BasisIndex::w(2),
                field.parse("17/4").unwrap()
            )
        );
        // Witt, q = -1, k = 0: α(L_1) = (1 + (-1)) L_1 = 0.
        let minus = HomAlgebra::witt(ScalarField::cyclotomic(2).unwrap(), 0);
        assert!(minus.twist_basis(BasisIndex::l(1)).unwrap().is_zero());
        // Degree shift: α_k moves degree m to m + k.
        let shifted = witt_q(2, 3);
        let image = shifted.twist_basis(BasisIndex::l(1)).unwrap();
        assert_eq!(image.support_degrees(), vec![4]);
    }

    #[test]
    fn bilinearity_on_combinations() {
        let alg = witt_q(2, 0);
        let field = alg.field().clone();
        let x = Element::term(BasisIndex::l(1), field.from_i64(3))
            .add(&Element::term(BasisIndex::l(-2), field.parse("1/2").unwrap()));
        let y = Element::term(BasisIndex::l(2), field.from_i64(-1));
        let lhs = alg.product(&x, &y).unwrap();
        let mut rhs = Element::zero();
        for (ix, a) in x.terms() {
            for (iy, b) in y.terms() {
                rhs = rhs.add(
                    &alg.product_basis(*ix, *iy)
                        .unwrap()
                        .scale(&a.mul(b)),
                );
            }
        }
        assert_eq!(lhs, rhs);
    }
}
