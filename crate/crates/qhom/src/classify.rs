//! Desk-scale exhaustive classification of averaging operators on a finite
//! grading window.
//!
//! The search space fixes an algebra, a field, an operator degree d, a
//! window radius M and a finite value set S containing 0. The unknowns are
//! the coefficient-profile values on the degree domain
//! `([-M, M] + d) ∪ ([-2M, 2M] + 2d)`; the constraints are the averaging
//! equations for every ordered domain pair whose sum stays in the domain,
//! plus commutation with the twist at every domain degree. A depth-first
//! search with constraint propagation enumerates every solution, and each
//! solution is re-verified through the law checker before it is reported.
//!
//! The result is complete relative to the window and the value set, and
//! says nothing beyond them: profiles taking values outside S, or supported
//! outside the domain, are out of scope. [`CoverageReport`] states this
//! scope in every serialized result.

use crate::families::{
    family_from_descriptor_verified_at, FamilyDescriptor, FamilyOperator,
};
use crate::graded::{AlgebraKind, HomAlgebra};
use crate::laws::{check_averaging, Window};
use crate::operators::{HomogeneousOperator, ProfileMatrix};
use crate::scalars::{FieldDescriptor, Scalar, ScalarField};
use crate::{Error, Result};
/// Arbitrary-precision unsigned integer used for search-size bookkeeping,
/// re-exported so callers can build ceilings without a direct num dependency.
pub use num::BigUint;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Default bound on `|S|^unknowns` before a search is refused.
const DEFAULT_CEILING_LOG2: u32 = 48;
/// Environment variable overriding the default search ceiling.
pub const CEILING_ENV_VAR: &str = "QHOM_CLASSIFY_CEILING";

/// The parameters of an exhaustive window classification.
#[derive(Clone)]
pub struct SearchSpace {
    algebra: AlgebraKind,
    field: ScalarField,
    degree: i64,
    window: i64,
    values: Vec<Scalar>,
    ceiling: Option<BigUint>,
}

impl SearchSpace {
    /// Creates a search space.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] when the window radius is below
    /// 1, the value set is empty, contains duplicates or foreign-field
    /// scalars, or does not contain 0.
    pub fn new(
        algebra: AlgebraKind,
        field: ScalarField,
        degree: i64,
        window: i64,
        values: Vec<Scalar>,
    ) -> Result<Self> {
        if window < 1 {
            return Err(Error::InvalidParameter(format!(
                "window radius must be at least 1, got {window}"
            )));
        }
        if values.is_empty() {
            return Err(Error::InvalidParameter("the value set is empty".into()));
        }
        for value in &values {
            if *value.field() != field {
                return Err(Error::InvalidParameter(
                    "value set scalar belongs to a different field".into(),
                ));
            }
        }
        for (i, a) in values.iter().enumerate() {
            for b in values.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::InvalidParameter(format!(
                        "duplicate value {a} in the value set"
                    )));
                }
            }
        }
        if !values.iter().any(Scalar::is_zero) {
            return Err(Error::InvalidParameter(
                "the value set must contain 0".into(),
            ));
        }
        Ok(SearchSpace {
            algebra,
            field,
            degree,
            window,
            values,
            ceiling: None,
        })
    }

    /// Creates a search space with the default value set {0, 1, 2}.
    ///
    /// # Errors
    ///
    /// See [`SearchSpace::new`].
    pub fn with_default_values(
        algebra: AlgebraKind,
        field: ScalarField,
        degree: i64,
        window: i64,
    ) -> Result<Self> {
        let values = vec![field.zero(), field.one(), field.from_i64(2)];
        SearchSpace::new(algebra, field, degree, window, values)
    }

    /// Overrides the search ceiling (otherwise the `QHOM_CLASSIFY_CEILING`
    /// environment variable or the built-in default applies).
    pub fn set_ceiling(&mut self, ceiling: BigUint) {
        self.ceiling = Some(ceiling);
    }

    /// The algebra being classified.
    pub fn algebra(&self) -> AlgebraKind {
        self.algebra
    }

    /// The coefficient field.
    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    /// The operator degree d.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// The window radius M.
    pub fn window(&self) -> i64 {
        self.window
    }

    /// The value set S.
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// The degree domain `([-M, M] + d) ∪ ([-2M, 2M] + 2d)`, ascending.
    pub fn domain(&self) -> Vec<i64> {
        let (m, d) = (self.window, self.degree);
        let mut degrees: Vec<i64> = (-m..=m)
            .map(|t| t + d)
            .chain((-2 * m..=2 * m).map(|t| t + 2 * d))
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees
    }

    /// Domain degrees in search order: by absolute value, ties broken by
    /// the signed value.
    fn ordered_degrees(&self) -> Vec<i64> {
        let mut degrees = self.domain();
        degrees.sort_by_key(|&t| (t.abs(), t));
        degrees
    }

    fn slots(&self) -> usize {
        match self.algebra {
            AlgebraKind::Witt => 1,
            AlgebraKind::W22 => 4,
        }
    }

    /// Number of scalar unknowns (domain size times coefficient slots).
    pub fn unknown_count(&self) -> usize {
        self.domain().len() * self.slots()
    }

    /// `|S|^unknowns`, the size of the raw assignment space.
    pub fn candidate_estimate(&self) -> BigUint {
        BigUint::from(self.values.len()).pow(self.unknown_count() as u32)
    }

    fn effective_ceiling(&self) -> BigUint {
        if let Some(ceiling) = &self.ceiling {
            return ceiling.clone();
        }
        if let Ok(text) = std::env::var(CEILING_ENV_VAR) {
            if let Ok(parsed) = text.parse::<BigUint>() {
                return parsed;
            }
        }
        BigUint::from(1u8) << DEFAULT_CEILING_LOG2
    }
}

/// One multilinear term `coef · x_{vars[0]} · x_{vars[1]} · …` of a
/// compiled constraint.
struct Term {
    coef: Scalar,
    vars: Vec<usize>,
}

/// A compiled polynomial constraint `Σ terms = 0`, checked as soon as the
/// search has assigned every unknown it mentions.
struct Constraint {
    terms: Vec<Term>,
}

impl Constraint {
    fn bucket(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|t| t.vars.iter().copied())
            .max()
            .expect("compiled constraints always mention an unknown")
    }

    fn holds(&self, assignment: &[usize], values: &[Scalar], field: &ScalarField) -> bool {
        let mut sum = field.zero();
        'terms: for term in &self.terms {
            let mut product = term.coef.clone();
            for &var in &term.vars {
                let value = &values[assignment[var]];
                if value.is_zero() {
                    continue 'terms;
                }
                if !value.is_one() {
                    product = product.mul(value);
                }
            }
            sum = sum.add(&product);
        }
        sum.is_zero()
    }
}

/// Unknown ids for the coefficient slots at one degree. For the Witt
/// algebra only `f1` exists; the W(2,2) slot order is f1, f2, g1, g2.
#[derive(Clone, Copy)]
struct SlotIds {
    f1: usize,
    f2: usize,
    g1: usize,
    g2: usize,
}

struct CompiledSystem {
    ordered_degrees: Vec<i64>,
    buckets: Vec<Vec<Constraint>>,
}

fn compile_system(space: &SearchSpace) -> CompiledSystem {
    let field = &space.field;
    let d = space.degree;
    let ordered = space.ordered_degrees();
    let slots = space.slots();
    let ids: BTreeMap<i64, SlotIds> = ordered
        .iter()
        .enumerate()
        .map(|(pos, &t)| {
            let base = pos * slots;
            (
                t,
                SlotIds {
                    f1: base,
                    f2: base + 1,
                    g1: base + 2,
                    g2: base + 3,
                },
            )
        })
        .collect();
    let unknowns = ordered.len() * slots;
    let mut constraints: Vec<Constraint> = Vec::new();
    let mut push = |terms: Vec<Term>| {
        let terms: Vec<Term> = terms.into_iter().filter(|t| !t.coef.is_zero()).collect();
        if !terms.is_empty() {
            constraints.push(Constraint { terms });
        }
    };

    // Commutation with the degree-0 twist: at every domain degree t the
    // profile value is multiplied by the same twist eigenvalue before and
    // after the operator, so the difference of the two eigenvalues must
    // kill the value.
    for (&t, id) in &ids {
        let factor = match space.algebra {
            AlgebraKind::Witt => field.q_pow(t).sub(&field.q_pow(t - d)),
            AlgebraKind::W22 => field
                .q_pow(t)
                .add(&field.q_pow(-t))
                .sub(&field.q_pow(t - d))
                .sub(&field.q_pow(d - t)),
        };
        if factor.is_zero() {
            continue;
        }
        let slot_ids: Vec<usize> = match space.algebra {
            AlgebraKind::Witt => vec![id.f1],
            AlgebraKind::W22 => vec![id.f1, id.f2, id.g1, id.g2],
        };
        for slot in slot_ids {
            push(vec![Term {
                coef: factor.clone(),
                vars: vec![slot],
            }]);
        }
    }

    // Averaging constraints for every ordered domain pair (a, b) with
    // a + b in the domain, written in output coordinates. By skew symmetry
    // the right-sided equation over all ordered pairs covers the two-sided
    // axiom.
    let domain = space.domain();
    for &a in &domain {
        for &b in &domain {
            if !ids.contains_key(&(a + b)) {
                continue;
            }
            let (ia, ib, iab) = (ids[&a], ids[&b], ids[&(a + b)]);
            match space.algebra {
                AlgebraKind::Witt => {
                    // f(a)·f(b)·({a} - {b}) - f(a)·f(a+b)·({a} - {b-d}) = 0
                    let c1 = field.brace_num(a).sub(&field.brace_num(b));
                    let c2 = field.brace_num(a).sub(&field.brace_num(b - d));
                    push(vec![
                        Term {
                            coef: c1,
                            vars: vec![ia.f1, ib.f1],
                        },
                        Term {
                            coef: c2.neg(),
                            vars: vec![ia.f1, iab.f1],
                        },
                    ]);
                }
                AlgebraKind::W22 => {
                    let c1 = field.bracket_num(a - b);
                    let c2 = field.bracket_num(a - b + d);
                    let n2 = c2.neg();
                    let term = |coef: &Scalar, x: usize, y: usize| Term {
                        coef: coef.clone(),
                        vars: vec![x, y],
                    };
                    // L output of [P(L), P(L)] vs P([P(L), L]).
                    push(vec![
                        term(&c1, ia.f1, ib.f1),
                        term(&n2, ia.f1, iab.f1),
                        term(&n2, ia.g1, iab.f2),
                    ]);
                    // W output of [P(L), P(L)] vs P([P(L), L]).
                    push(vec![
                        term(&c1, ia.f1, ib.g1),
                        term(&c1, ia.g1, ib.f1),
                        term(&n2, ia.f1, iab.g1),
                        term(&n2, ia.g1, iab.g2),
                    ]);
                    // L output of [P(L), P(W)] vs P([P(L), W]).
                    push(vec![
                        term(&c1, ia.f1, ib.f2),
                        term(&n2, ia.f1, iab.f2),
                    ]);
                    // W output of [P(L), P(W)] vs P([P(L), W]).
                    push(vec![
                        term(&c1, ia.f1, ib.g2),
                        term(&c1, ia.g1, ib.f2),
                        term(&n2, ia.f1, iab.g2),
                    ]);
                    // L output of [P(W), P(L)] vs P([P(W), L]).
                    push(vec![
                        term(&c1, ia.f2, ib.f1),
                        term(&n2, ia.f2, iab.f1),
                        term(&n2, ia.g2, iab.f2),
                    ]);
                    // W output of [P(W), P(L)] vs P([P(W), L]).
                    push(vec![
                        term(&c1, ia.f2, ib.g1),
                        term(&c1, ia.g2, ib.f1),
                        term(&n2, ia.f2, iab.g1),
                        term(&n2, ia.g2, iab.g2),
                    ]);
                    // L output of [P(W), P(W)] vs P([P(W), W]).
                    push(vec![
                        term(&c1, ia.f2, ib.f2),
                        term(&n2, ia.f2, iab.f2),
                    ]);
                    // W output of [P(W), P(W)] vs P([P(W), W]).
                    push(vec![
                        term(&c1, ia.f2, ib.g2),
                        term(&c1, ia.g2, ib.f2),
                        term(&n2, ia.f2, iab.g2),
                    ]);
                }
            }
        }
    }

    let mut buckets: Vec<Vec<Constraint>> = (0..unknowns).map(|_| Vec::new()).collect();
    for constraint in constraints {
        let bucket = constraint.bucket();
        buckets[bucket].push(constraint);
    }
    CompiledSystem {
        ordered_degrees: ordered,
        buckets,
    }
}

/// One enumerated solution: the coefficient profile on the search domain.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileSolution {
    kind: AlgebraKind,
    table: BTreeMap<i64, ProfileMatrix>,
}

impl ProfileSolution {
    /// The profile values, keyed by output degree.
    pub fn table(&self) -> &BTreeMap<i64, ProfileMatrix> {
        &self.table
    }

    /// Converts the solution into a table-backed operator of the given
    /// degree.
    ///
    /// # Errors
    ///
    /// Propagates table validation errors.
    pub fn operator(&self, field: &ScalarField, degree: i64) -> Result<HomogeneousOperator> {
        HomogeneousOperator::from_table(self.kind, field.clone(), degree, self.table.clone())
    }

    /// True when every profile value is zero.
    pub fn is_zero(&self) -> bool {
        self.table.values().all(ProfileMatrix::is_zero)
    }
}

impl Serialize for ProfileSolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.table.len()))?;
        for (t, matrix) in &self.table {
            match self.kind {
                AlgebraKind::Witt => map.serialize_entry(&t.to_string(), &matrix.f1.to_string())?,
                AlgebraKind::W22 => map.serialize_entry(
                    &t.to_string(),
                    &[
                        matrix.f1.to_string(),
                        matrix.f2.to_string(),
                        matrix.g1.to_string(),
                        matrix.g2.to_string(),
                    ],
                )?,
            }
        }
        map.end()
    }
}

/// The scope statement attached to every classification result.
#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    /// Algebra name.
    pub algebra: String,
    /// Coefficient field.
    pub field: FieldDescriptor,
    /// Operator degree d.
    pub degree: i64,
    /// Window radius M.
    pub window: i64,
    /// The value set S, as canonical scalar strings.
    pub values: Vec<String>,
    /// The degree domain the unknowns live on.
    pub domain: Vec<i64>,
    /// Number of scalar unknowns.
    pub unknowns: usize,
    /// `|S|^unknowns` as a decimal string.
    pub candidates: String,
    /// Number of solutions found.
    pub solutions: usize,
    /// What the enumeration does and does not cover.
    pub statement: String,
}

/// The outcome of an exhaustive window classification.
#[derive(Clone, Serialize)]
pub struct ProfileSet {
    /// Every solution, in lexicographic search order.
    pub solutions: Vec<ProfileSolution>,
    /// Scope of the enumeration.
    pub coverage: CoverageReport,
    /// Search-tree nodes visited (diagnostic, excluded from comparisons).
    pub nodes_visited: u64,
}

struct Dfs<'a> {
    space: &'a SearchSpace,
    system: &'a CompiledSystem,
    assignment: Vec<usize>,
    solutions: Vec<Vec<usize>>,
    nodes: u64,
}

impl Dfs<'_> {
    fn run(&mut self, level: usize) {
        if level == self.assignment.len() {
            self.solutions.push(self.assignment.clone());
            return;
        }
        for choice in 0..self.space.values.len() {
            self.assignment[level] = choice;
            self.nodes += 1;
            let consistent = self.system.buckets[level]
                .iter()
                .all(|c| c.holds(&self.assignment, &self.space.values, &self.space.field));
            if consistent {
                self.run(level + 1);
            }
        }
    }
}

/// Enumerates every coefficient profile on the window domain, with values
/// in S, that satisfies the averaging equations and commutes with the
/// twist. Each solution is re-verified through the law checker before it
/// is returned.
///
/// # Errors
///
/// Returns [`Error::SearchTooLarge`] when `|S|^unknowns` exceeds the
/// ceiling, and [`Error::Arithmetic`] if a solution fails re-verification
/// (which would indicate an internal inconsistency).
pub fn enumerate_profiles(space: &SearchSpace) -> Result<ProfileSet> {
    let estimate = space.candidate_estimate();
    let ceiling = space.effective_ceiling();
    if estimate > ceiling {
        return Err(Error::SearchTooLarge {
            estimate: estimate.to_string(),
            ceiling: ceiling.to_string(),
        });
    }

    let system = compile_system(space);
    let unknowns = space.unknown_count();
    let mut dfs = Dfs {
        space,
        system: &system,
        assignment: vec![0; unknowns],
        solutions: Vec::new(),
        nodes: 0,
    };
    dfs.run(0);

    let slots = space.slots();
    let mut solutions = Vec::with_capacity(dfs.solutions.len());
    let window = Window::new(space.window)?;
    let verify_algebra: HomAlgebra = match space.algebra {
        AlgebraKind::Witt => HomAlgebra::witt(space.field.clone(), 0),
        AlgebraKind::W22 => HomAlgebra::w22(space.field.clone(), 0),
    };
    for assignment in &dfs.solutions {
        let mut table = BTreeMap::new();
        for (pos, &t) in system.ordered_degrees.iter().enumerate() {
            let value = |slot: usize| space.values[assignment[pos * slots + slot]].clone();
            let matrix = match space.algebra {
                AlgebraKind::Witt => ProfileMatrix::witt(value(0)),
                AlgebraKind::W22 => ProfileMatrix {
                    f1: value(0),
                    f2: value(1),
                    g1: value(2),
                    g2: value(3),
                },
            };
            table.insert(t, matrix);
        }
        let solution = ProfileSolution {
            kind: space.algebra,
            table,
        };
        let operator = solution.operator(&space.field, space.degree)?;
        let reverification = check_averaging(&verify_algebra, &operator, &window)?;
        if !reverification.passed() {
            return Err(Error::Arithmetic(format!(
                "enumerated profile failed re-verification: {}",
                serde_json::to_string(&reverification.witnesses)
                    .unwrap_or_else(|_| "unprintable witnesses".into())
            )));
        }
        solutions.push(solution);
    }

    let coverage = CoverageReport {
        algebra: space.algebra.as_str().to_string(),
        field: space.field.descriptor(),
        degree: space.degree,
        window: space.window,
        values: space.values.iter().map(Scalar::to_string).collect(),
        domain: space.domain(),
        unknowns,
        candidates: estimate.to_string(),
        solutions: solutions.len(),
        statement: format!(
            "exhaustive over degree-{} operator profiles supported on [{}, {}] with every \
             coefficient in the listed value set; profiles taking values outside the set or \
             supported outside the domain are not covered",
            space.degree,
            space.domain().first().copied().unwrap_or(0),
            space.domain().last().copied().unwrap_or(0),
        ),
    };
    Ok(ProfileSet {
        solutions,
        coverage,
        nodes_visited: dfs.nodes,
    })
}

/// One family instantiation (or the synthetic zero profile) compared
/// against the enumerated solutions.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyCandidate {
    /// Compact label: the descriptor JSON, or "zero".
    pub label: String,
    /// The instantiation parameters (absent for the synthetic zero).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<FamilyDescriptor>,
    /// Whether every profile value on the domain lies in the value set.
    pub in_value_range: bool,
    /// Whether the instantiation passed the averaging check at the search
    /// window when it was built.
    pub averaging_pass: bool,
    /// Index of the matching solution, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched_solution: Option<usize>,
}

/// Two-sided comparison of the enumerated solutions with the classified
/// family instantiations over the same value set.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyMatchReport {
    /// Every family instantiation drawn from the value set, plus the
    /// synthetic zero profile.
    pub candidates: Vec<FamilyCandidate>,
    /// Solution indices hit by at least one candidate.
    pub matched_solutions: Vec<usize>,
    /// Solution indices no candidate produces.
    pub unmatched_solutions: Vec<usize>,
    /// Labels of candidates matching no solution.
    pub unmatched_candidates: Vec<String>,
}

fn witt_descriptor(variant: u8, d: i64, beta: &Scalar, nu: &Scalar) -> FamilyDescriptor {
    FamilyDescriptor::Witt {
        variant,
        d,
        beta: Some(beta.to_string()),
        nu: Some(nu.to_string()),
        gamma: None,
        mu: None,
    }
}

/// All family instantiations whose scalar parameters are drawn from the
/// value set and whose structural constraints fit the search space.
fn family_descriptors(space: &SearchSpace) -> Vec<FamilyDescriptor> {
    let field = &space.field;
    let d = space.degree;
    let s = &space.values;
    let nonzero: Vec<&Scalar> = s.iter().filter(|v| !v.is_zero()).collect();
    let mut out = Vec::new();
    match space.algebra {
        AlgebraKind::Witt => {
            if field.q_is_one() {
                for beta in s {
                    for nu in s {
                        out.push(witt_descriptor(1, d, beta, nu));
                    }
                }
                for mu in [0u8, 1u8] {
                    for gamma in &nonzero {
                        out.push(FamilyDescriptor::Witt {
                            variant: 2,
                            d,
                            beta: None,
                            nu: None,
                            gamma: Some(gamma.to_string()),
                            mu: Some(mu),
                        });
                    }
                }
            } else if field.q_pow_is_one(d) {
                for beta in s {
                    for nu in s {
                        out.push(witt_descriptor(3, d, beta, nu));
                    }
                }
            }
        }
        AlgebraKind::W22 => {
            let case = if field.q_is_one() || field.q_is_neg_one() {
                if d == 0 {
                    Some("degree-zero")
                } else {
                    None
                }
            } else if field.q_pow_is_one(d) {
                Some("root-of-unity")
            } else {
                None
            };
            let Some(case) = case else {
                return out;
            };
            let mut push = |variant: u8,
                            nus: [&Scalar; 4],
                            gamma: Option<&Scalar>,
                            theta: Option<&Scalar>,
                            beta: Option<&Scalar>| {
                out.push(FamilyDescriptor::W22 {
                    variant,
                    case: case.to_string(),
                    d,
                    nu1: Some(nus[0].to_string()),
                    nu2: Some(nus[1].to_string()),
                    nu3: Some(nus[2].to_string()),
                    nu4: Some(nus[3].to_string()),
                    gamma: gamma.map(Scalar::to_string),
                    theta: theta.map(Scalar::to_string),
                    beta: beta.map(Scalar::to_string),
                });
            };
            for n1 in s {
                for n2 in s {
                    for n3 in s {
                        for n4 in s {
                            let nus = [n1, n2, n3, n4];
                            for gamma in s {
                                push(1, nus, Some(gamma), None, None);
                                for beta in &nonzero {
                                    push(2, nus, Some(gamma), None, Some(beta));
                                    push(4, nus, Some(gamma), None, Some(beta));
                                    for theta in s {
                                        push(5, nus, Some(gamma), Some(theta), Some(beta));
                                    }
                                }
                            }
                            for beta in &nonzero {
                                push(3, nus, None, None, Some(beta));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn candidate_table(
    space: &SearchSpace,
    family: &FamilyOperator,
) -> Result<BTreeMap<i64, ProfileMatrix>> {
    let mut table = BTreeMap::new();
    for t in space.domain() {
        table.insert(t, family.operator().matrix_at(t)?);
    }
    Ok(table)
}

/// Compares the enumerated solutions against every family instantiation
/// with parameters drawn from the value set (plus the synthetic zero
/// profile), and reports both directions: solutions no family explains,
/// and instantiations the enumeration rejects.
///
/// # Errors
///
/// Propagates family construction and table evaluation errors.
pub fn match_families(space: &SearchSpace, set: &ProfileSet) -> Result<FamilyMatchReport> {
    let window = Window::new(space.window)?;
    let mut candidates = Vec::new();

    let zero_table: BTreeMap<i64, ProfileMatrix> = space
        .domain()
        .into_iter()
        .map(|t| (t, ProfileMatrix::zero(&space.field)))
        .collect();
    let zero_match = set
        .solutions
        .iter()
        .position(|solution| *solution.table() == zero_table);
    candidates.push(FamilyCandidate {
        label: "zero".to_string(),
        descriptor: None,
        in_value_range: true,
        averaging_pass: true,
        matched_solution: zero_match,
    });

    for descriptor in family_descriptors(space) {
        let family = family_from_descriptor_verified_at(&space.field, &descriptor, Some(&window))?;
        let table = candidate_table(space, &family)?;
        let in_value_range = table.values().all(|matrix| {
            [&matrix.f1, &matrix.f2, &matrix.g1, &matrix.g2]
                .into_iter()
                .all(|entry| space.values.contains(entry))
        });
        let matched_solution = if in_value_range {
            set.solutions
                .iter()
                .position(|solution| *solution.table() == table)
        } else {
            None
        };
        candidates.push(FamilyCandidate {
            label: serde_json::to_string(&descriptor)
                .map_err(|e| Error::Arithmetic(format!("descriptor serialization failed: {e}")))?,
            descriptor: Some(descriptor),
            in_value_range,
            averaging_pass: !family.is_flagged(),
            matched_solution,
        });
    }

    let mut matched: Vec<usize> = candidates
        .iter()
        .filter_map(|c| c.matched_solution)
        .collect();
    matched.sort_unstable();
    matched.dedup();
    let unmatched_solutions: Vec<usize> = (0..set.solutions.len())
        .filter(|i| !matched.contains(i))
        .collect();
    let unmatched_candidates: Vec<String> = candidates
        .iter()
        .filter(|c| c.matched_solution.is_none())
        .map(|c| c.label.clone())
        .collect();
    Ok(FamilyMatchReport {
        candidates,
        matched_solutions: matched,
        unmatched_solutions,
        unmatched_candidates,
    })
}
