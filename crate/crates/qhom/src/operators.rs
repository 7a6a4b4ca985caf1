//! Homogeneous operators and their combinators.
//!
//! A homogeneous operator of degree d maps each graded component A_m into
//! A_{m+d}. It is described by a profile: a rule assigning to every output
//! degree t a 2×2 coefficient matrix over the scalar field,
//!
//! ```text
//! P(L_m) = f1(t)·L_t + g1(t)·W_t        t = m + d
//! P(W_m) = f2(t)·L_t + g2(t)·W_t
//! ```
//!
//! Witt-algebra operators use only the `f1` entry; the other three entries
//! must be identically zero there. Profiles are indexed by the output degree
//! so that the classified coefficient formulas transcribe directly.
//!
//! Profiles are either closed forms (total on ℤ) or finite tables. Applying
//! a table-backed operator outside its stored domain is an error, never a
//! silent zero: silent zeros would fake averaging-law passes downstream.

use crate::graded::{AlgebraKind, BasisIndex, Element, Family, GradedAlgebra, HomAlgebra};
use crate::scalars::{Scalar, ScalarField};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// The 2×2 coefficient matrix of an operator at one output degree, in the
/// basis (L, W): columns are indexed by the input family and rows by the
/// output family.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileMatrix {
    /// Coefficient of `L_t` in the image of `L_m`.
    pub f1: Scalar,
    /// Coefficient of `L_t` in the image of `W_m`.
    pub f2: Scalar,
    /// Coefficient of `W_t` in the image of `L_m`.
    pub g1: Scalar,
    /// Coefficient of `W_t` in the image of `W_m`.
    pub g2: Scalar,
}

impl ProfileMatrix {
    /// The zero matrix.
    pub fn zero(field: &ScalarField) -> Self {
        ProfileMatrix {
            f1: field.zero(),
            f2: field.zero(),
            g1: field.zero(),
            g2: field.zero(),
        }
    }

    /// The identity matrix.
    pub fn identity(field: &ScalarField) -> Self {
        ProfileMatrix {
            f1: field.one(),
            f2: field.zero(),
            g1: field.zero(),
            g2: field.one(),
        }
    }

    /// A Witt-shaped matrix: only the `f1` entry is nonzero.
    pub fn witt(f1: Scalar) -> Self {
        let field = f1.field().clone();
        ProfileMatrix {
            f1,
            f2: field.zero(),
            g1: field.zero(),
            g2: field.zero(),
        }
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero() && self.g1.is_zero() && self.g2.is_zero()
    }

    /// True when the entries unused by Witt operators vanish.
    pub fn is_witt_shaped(&self) -> bool {
        self.f2.is_zero() && self.g1.is_zero() && self.g2.is_zero()
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &ProfileMatrix) -> ProfileMatrix {
        ProfileMatrix {
            f1: self.f1.add(&rhs.f1),
            f2: self.f2.add(&rhs.f2),
            g1: self.g1.add(&rhs.g1),
            g2: self.g2.add(&rhs.g2),
        }
    }

    /// Entrywise scalar multiple.
    pub fn scale(&self, scalar: &Scalar) -> ProfileMatrix {
        ProfileMatrix {
            f1: self.f1.mul(scalar),
            f2: self.f2.mul(scalar),
            g1: self.g1.mul(scalar),
            g2: self.g2.mul(scalar),
        }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &ProfileMatrix) -> ProfileMatrix {
        ProfileMatrix {
            f1: self.f1.mul(&rhs.f1).add(&self.f2.mul(&rhs.g1)),
            f2: self.f1.mul(&rhs.f2).add(&self.f2.mul(&rhs.g2)),
            g1: self.g1.mul(&rhs.f1).add(&self.g2.mul(&rhs.g1)),
            g2: self.g1.mul(&rhs.f2).add(&self.g2.mul(&rhs.g2)),
        }
    }

    /// Determinant.
    pub fn det(&self) -> Scalar {
        self.f1.mul(&self.g2).sub(&self.f2.mul(&self.g1))
    }

    /// Matrix inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<ProfileMatrix> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let inv = det.inv().expect("nonzero determinant");
        Some(ProfileMatrix {
            f1: self.g2.mul(&inv),
            f2: self.f2.neg().mul(&inv),
            g1: self.g1.neg().mul(&inv),
            g2: self.f1.mul(&inv),
        })
    }

    fn column(&self, family: Family) -> (Scalar, Scalar) {
        match family {
            Family::L => (self.f1.clone(), self.g1.clone()),
            Family::W => (self.f2.clone(), self.g2.clone()),
        }
    }
}

type ProfileFn = dyn Fn(i64) -> Result<ProfileMatrix> + Send + Sync;

#[derive(Clone)]
enum Profile {
    ClosedForm(Arc<ProfileFn>),
    Table(Arc<BTreeMap<i64, ProfileMatrix>>),
}

/// A homogeneous operator on one of the built-in algebras.
///
/// Operators are immutable; the combinators return new operators that share
/// their building blocks. Every evaluation path is exact and errors are
/// surfaced, never absorbed.
#[derive(Clone)]
pub struct HomogeneousOperator {
    kind: AlgebraKind,
    field: ScalarField,
    degree: i64,
    total: bool,
    profile: Profile,
}

impl HomogeneousOperator {
    /// The zero operator of the given degree.
    pub fn zero(kind: AlgebraKind, field: ScalarField, degree: i64) -> Self {
        let f = field.clone();
        HomogeneousOperator {
            kind,
            field,
            degree,
            total: true,
            profile: Profile::ClosedForm(Arc::new(move |_| Ok(ProfileMatrix::zero(&f)))),
        }
    }

    /// The identity operator (degree 0).
    pub fn identity(kind: AlgebraKind, field: ScalarField) -> Self {
        let f = field.clone();
        let profile = move |_t: i64| {
            Ok(match kind {
                AlgebraKind::Witt => ProfileMatrix::witt(f.one()),
                AlgebraKind::W22 => ProfileMatrix::identity(&f),
            })
        };
        HomogeneousOperator {
            kind,
            field,
            degree: 0,
            total: true,
            profile: Profile::ClosedForm(Arc::new(profile)),
        }
    }

    /// An operator given by a closed-form profile, total on ℤ.
    pub fn closed_form<F>(kind: AlgebraKind, field: ScalarField, degree: i64, profile: F) -> Self
    where
        F: Fn(i64) -> Result<ProfileMatrix> + Send + Sync + 'static,
    {
        HomogeneousOperator {
            kind,
            field,
            degree,
            total: true,
            profile: Profile::ClosedForm(Arc::new(profile)),
        }
    }

    /// A Witt operator given by a closed-form coefficient function
    /// `P(L_m) = f(m + d)·L_{m+d}`.
    pub fn witt_closed_form<F>(field: ScalarField, degree: i64, coefficient: F) -> Self
    where
        F: Fn(i64) -> Result<Scalar> + Send + Sync + 'static,
    {
        Self::closed_form(AlgebraKind::Witt, field, degree, move |t| {
            Ok(ProfileMatrix::witt(coefficient(t)?))
        })
    }

    /// An operator backed by an explicit finite table of per-degree
    /// matrices.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] when a matrix entry belongs to a
    /// different field or a Witt table uses the non-`f1` entries.
    pub fn from_table(
        kind: AlgebraKind,
        field: ScalarField,
        degree: i64,
        entries: BTreeMap<i64, ProfileMatrix>,
    ) -> Result<Self> {
        for (t, matrix) in &entries {
            for entry in [&matrix.f1, &matrix.f2, &matrix.g1, &matrix.g2] {
                if *entry.field() != field {
                    return Err(Error::InvalidParameter(format!(
                        "table entry at degree {t} belongs to field {}, expected {}",
                        entry.field(),
                        field
                    )));
                }
            }
            if kind == AlgebraKind::Witt && !matrix.is_witt_shaped() {
                return Err(Error::InvalidParameter(format!(
                    "table entry at degree {t} uses W-coefficients in a Witt operator"
                )));
            }
        }
        Ok(HomogeneousOperator {
            kind,
            field,
            degree,
            total: false,
            profile: Profile::Table(Arc::new(entries)),
        })
    }

    /// Which built-in algebra the operator acts on.
    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// The coefficient field.
    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    /// The degree d of the operator.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// True when no finite table occurs anywhere in the operator, so every
    /// degree can be evaluated.
    pub fn is_total(&self) -> bool {
        self.total
    }

    /// The explicit table domain, when the operator is directly
    /// table-backed.
    pub fn table_domain(&self) -> Option<Vec<i64>> {
        match &self.profile {
            Profile::Table(entries) => Some(entries.keys().copied().collect()),
            Profile::ClosedForm(_) => None,
        }
    }

    /// The profile matrix at output degree t.
    ///
    /// # Errors
    ///
    /// Returns [`Error::Domain`] outside a table domain and
    /// [`Error::SingularAtDegree`] from lazily inverted operators;
    /// a closed form violating the Witt shape is an
    /// [`Error::InvalidParameter`].
    pub fn matrix_at(&self, t: i64) -> Result<ProfileMatrix> {
        let matrix = match &self.profile {
            Profile::ClosedForm(f) => f(t)?,
            Profile::Table(entries) => entries
                .get(&t)
                .cloned()
                .ok_or(Error::Domain { missing: vec![t] })?,
        };
        if self.kind == AlgebraKind::Witt && !matrix.is_witt_shaped() {
            return Err(Error::InvalidParameter(format!(
                "profile at degree {t} uses W-coefficients in a Witt operator"
            )));
        }
        Ok(matrix)
    }

    /// Applies the operator to an element by linear extension.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidBasis`] for symbols outside the algebra and
    /// [`Error::Domain`] listing every uncovered output degree for
    /// table-backed operators.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        let mut missing: BTreeSet<i64> = BTreeSet::new();
        for (index, a) in x.terms() {
            if !self.kind.families().contains(&index.family) {
                return Err(Error::InvalidBasis(format!(
                    "basis symbol {index} is not part of the {} algebra",
                    self.kind.as_str()
                )));
            }
            let t = index.degree + self.degree;
            match self.matrix_at(t) {
                Ok(matrix) => {
                    let (to_l, to_w) = matrix.column(index.family);
                    out.add_term(BasisIndex::l(t), to_l.mul(a));
                    out.add_term(BasisIndex::w(t), to_w.mul(a));
                }
                Err(Error::Domain { missing: m }) => missing.extend(m),
                Err(e) => return Err(e),
            }
        }
        if missing.is_empty() {
            Ok(out)
        } else {
            Err(Error::Domain {
                missing: missing.into_iter().collect(),
            })
        }
    }

    /// Applies the operator to a single basis symbol.
    pub fn apply_basis(&self, index: BasisIndex) -> Result<Element> {
        let one = self.field.one();
        self.apply(&Element::term(index, one))
    }

    fn check_compatible(&self, rhs: &HomogeneousOperator) -> Result<()> {
        if self.kind != rhs.kind {
            return Err(Error::InvalidParameter(
                "operators act on different algebras".into(),
            ));
        }
        if self.field != rhs.field {
            return Err(Error::InvalidParameter(format!(
                "operators over different fields: {} vs {}",
                self.field, rhs.field
            )));
        }
        Ok(())
    }

    /// The scalar multiple λ·P.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] when λ belongs to another field.
    pub fn scale(&self, lambda: &Scalar) -> Result<HomogeneousOperator> {
        if *lambda.field() != self.field {
            return Err(Error::InvalidParameter(format!(
                "scaling factor belongs to field {}, expected {}",
                lambda.field(),
                self.field
            )));
        }
        let inner = self.clone();
        let lambda = lambda.clone();
        Ok(HomogeneousOperator {
            kind: self.kind,
            field: self.field.clone(),
            degree: self.degree,
            total: self.total,
            profile: Profile::ClosedForm(Arc::new(move |t| {
                Ok(inner.matrix_at(t)?.scale(&lambda))
            })),
        })
    }

    /// The sum P + Q of two operators of the same degree.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] on degree, algebra or field
    /// mismatch.
    pub fn add(&self, rhs: &HomogeneousOperator) -> Result<HomogeneousOperator> {
        self.check_compatible(rhs)?;
        if self.degree != rhs.degree {
            return Err(Error::InvalidParameter(format!(
                "cannot add operators of degrees {} and {}",
                self.degree, rhs.degree
            )));
        }
        let (left, right) = (self.clone(), rhs.clone());
        Ok(HomogeneousOperator {
            kind: self.kind,
            field: self.field.clone(),
            degree: self.degree,
            total: self.total && rhs.total,
            profile: Profile::ClosedForm(Arc::new(move |t| {
                Ok(left.matrix_at(t)?.add(&right.matrix_at(t)?))
            })),
        })
    }

    /// The composition P ∘ Q (apply Q first), of degree `deg P + deg Q`.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] on algebra or field mismatch.
    pub fn compose(&self, rhs: &HomogeneousOperator) -> Result<HomogeneousOperator> {
        self.check_compatible(rhs)?;
        let (outer, inner) = (self.clone(), rhs.clone());
        let outer_degree = self.degree;
        Ok(HomogeneousOperator {
            kind: self.kind,
            field: self.field.clone(),
            degree: self.degree + rhs.degree,
            total: self.total && rhs.total,
            profile: Profile::ClosedForm(Arc::new(move |t| {
                Ok(outer
                    .matrix_at(t)?
                    .mul(&inner.matrix_at(t - outer_degree)?))
            })),
        })
    }

    /// The polynomial F(P) = c_1·P + c_2·P² + … for a degree-0 operator,
    /// where `coefficients[i]` is the coefficient of Pⁱ.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] for a nonzero degree, a nonzero
    /// constant term (F(0) must be 0) or coefficients from another field.
    pub fn polynomial(&self, coefficients: &[Scalar]) -> Result<HomogeneousOperator> {
        if self.degree != 0 {
            return Err(Error::InvalidParameter(
                "operator polynomials require a degree-0 operator".into(),
            ));
        }
        if coefficients.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::InvalidParameter(
                "operator polynomial has a nonzero constant term".into(),
            ));
        }
        for c in coefficients {
            if *c.field() != self.field {
                return Err(Error::InvalidParameter(format!(
                    "polynomial coefficient belongs to field {}, expected {}",
                    c.field(),
                    self.field
                )));
            }
        }
        let inner = self.clone();
        let coefficients: Vec<Scalar> = coefficients.to_vec();
        let field = self.field.clone();
        Ok(HomogeneousOperator {
            kind: self.kind,
            field: self.field.clone(),
            degree: 0,
            total: self.total,
            profile: Profile::ClosedForm(Arc::new(move |t| {
                let m = inner.matrix_at(t)?;
                // Horner evaluation of c_1·M + … + c_n·Mⁿ = M·(c_1 + … ).
                let mut acc = ProfileMatrix::zero(&field);
                for c in coefficients.iter().skip(1).rev() {
                    acc = m.mul(&acc);
                    let mut with_c = acc;
                    with_c.f1 = with_c.f1.add(c);
                    with_c.g2 = with_c.g2.add(c);
                    acc = with_c;
                }
                Ok(m.mul(&acc))
            })),
        })
    }

    /// The inverse of a degree-0 operator, inverting the per-degree matrix
    /// lazily at each requested degree.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] for a nonzero degree; evaluation
    /// reports [`Error::SingularAtDegree`] where the matrix is singular.
    pub fn inverse(&self) -> Result<HomogeneousOperator> {
        if self.degree != 0 {
            return Err(Error::InvalidParameter(
                "only degree-0 operators map components to themselves and can be inverted".into(),
            ));
        }
        let inner = self.clone();
        let kind = self.kind;
        Ok(HomogeneousOperator {
            kind: self.kind,
            field: self.field.clone(),
            degree: 0,
            total: self.total,
            profile: Profile::ClosedForm(Arc::new(move |t| {
                let m = inner.matrix_at(t)?;
                Ok(match kind {
                    // For Witt operators only the f1 entry participates.
                    AlgebraKind::Witt => {
                        if m.f1.is_zero() {
                            return Err(Error::SingularAtDegree(t));
                        }
                        ProfileMatrix::witt(m.f1.inv().expect("nonzero entry"))
                    }
                    AlgebraKind::W22 => m.inverse().ok_or(Error::SingularAtDegree(t))?,
                })
            })),
        })
    }
}

/// The induced bracket structure `{x, y} = [P(x), y]` on the carrier of a
/// built-in algebra, with the same twist map. The product is graded of
/// shifted degree: the product of degrees m and n is supported in degree
/// `m + n + d`.
#[derive(Clone)]
pub struct InducedAlgebra {
    base: HomAlgebra,
    operator: HomogeneousOperator,
}

impl InducedAlgebra {
    /// Builds the induced structure.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] when the operator is
    /// table-backed (the induced product must be total) or does not act on
    /// the base algebra.
    pub fn new(base: &HomAlgebra, operator: &HomogeneousOperator) -> Result<Self> {
        if operator.kind() != base.kind() {
            return Err(Error::InvalidParameter(
                "operator and algebra refer to different built-ins".into(),
            ));
        }
        if operator.field() != base.field() {
            return Err(Error::InvalidParameter(format!(
                "operator field {} does not match algebra field {}",
                operator.field(),
                base.field()
            )));
        }
        if !operator.is_total() {
            return Err(Error::InvalidParameter(
                "induced products require a closed-form (total) operator".into(),
            ));
        }
        Ok(InducedAlgebra {
            base: base.clone(),
            operator: operator.clone(),
        })
    }

    /// The base algebra.
    pub fn base(&self) -> &HomAlgebra {
        &self.base
    }

    /// The inducing operator.
    pub fn operator(&self) -> &HomogeneousOperator {
        &self.operator
    }
}

impl GradedAlgebra for InducedAlgebra {
    fn field(&self) -> &ScalarField {
        self.base.field()
    }

    fn name(&self) -> String {
        format!(
            "induced({}, d={})",
            self.base.name(),
            self.operator.degree()
        )
    }

    fn families(&self) -> &'static [Family] {
        self.base.families()
    }

    fn twist_degree(&self) -> i64 {
        self.base.twist_degree()
    }

    fn product_degree_shift(&self) -> i64 {
        self.operator.degree()
    }

    fn is_skew_symmetric(&self) -> bool {
        false
    }

    fn product_basis(&self, x: BasisIndex, y: BasisIndex) -> Result<Element> {
        let px = self.operator.apply_basis(x)?;
        let y = Element::basis(self.base.field(), y);
        self.base.product(&px, &y)
    }

    fn twist_basis(&self, x: BasisIndex) -> Result<Element> {
        self.base.twist_basis(x)
    }
}
