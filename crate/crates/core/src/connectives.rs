//! Adjoint families of fuzzy connectives on the unit interval.
//!
//! A family bundles a fuzzy conjunction C with its residual implication I
//! (and, when the family is dual-complete, a disjunction D with its residual
//! co-implication J). The defining adjunctions are
//!
//! ```text
//! I(a, x) >= y  <=>  x >= C(y, a)
//! J(a, x) <= y  <=>  x <= D(y, a)
//! ```
//!
//! All binary operators take and return values in [0, 1] as 64-bit floats and
//! branch on exact comparisons; no epsilon is applied inside an operator.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

/// Number of halvings used by the bisection residuals; 2^-60 is well below
/// the documented 1e-12 tolerance.
const RESIDUAL_ITERATIONS: usize = 60;

/// A validated scalar in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitScalar(f64);

impl UnitScalar {
    /// Rejects NaN and values outside [0, 1].
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || !(0.0..=1.0).contains(&value) {
            return Err(Error::Config(format!(
                "unit scalar out of range: {value}"
            )));
        }
        Ok(UnitScalar(value))
    }

    /// Clamps into [0, 1]; NaN maps to 0.
    pub fn clamped(value: f64) -> Self {
        if value.is_nan() {
            UnitScalar(0.0)
        } else {
            UnitScalar(value.clamp(0.0, 1.0))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Names of the builtin families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Godel,
    Goguen,
    Lukasiewicz,
    Gaines,
    CompensatoryAnd,
}

impl FamilyName {
    pub const ALL: [FamilyName; 5] = [
        FamilyName::Godel,
        FamilyName::Goguen,
        FamilyName::Lukasiewicz,
        FamilyName::Gaines,
        FamilyName::CompensatoryAnd,
    ];

    /// The four dual-complete families (everything except `compensatory_and`).
    pub const DUAL_COMPLETE: [FamilyName; 4] = [
        FamilyName::Godel,
        FamilyName::Goguen,
        FamilyName::Lukasiewicz,
        FamilyName::Gaines,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Godel => "godel",
            FamilyName::Goguen => "goguen",
            FamilyName::Lukasiewicz => "lukasiewicz",
            FamilyName::Gaines => "gaines",
            FamilyName::CompensatoryAnd => "compensatory_and",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "godel" => Ok(FamilyName::Godel),
            "goguen" => Ok(FamilyName::Goguen),
            "lukasiewicz" => Ok(FamilyName::Lukasiewicz),
            "gaines" => Ok(FamilyName::Gaines),
            "compensatory_and" | "compensatory-and" => Ok(FamilyName::CompensatoryAnd),
            other => Err(Error::NotFound(format!("connective family `{other}`"))),
        }
    }
}

/// One scalar connective: a pure function on [0, 1]^2 plus the number of
/// order comparisons a single evaluation performs (used by the operation
/// counter; min/max/branch-style operators compare once, arithmetic ones
/// not at all).
#[derive(Clone, Copy)]
pub struct ScalarOp {
    name: &'static str,
    eval: fn(f64, f64) -> f64,
    comparisons_per_eval: u64,
}

impl ScalarOp {
    pub const fn new(name: &'static str, eval: fn(f64, f64) -> f64, comparisons_per_eval: u64) -> Self {
        ScalarOp {
            name,
            eval,
            comparisons_per_eval,
        }
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.eval)(x, y)
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn comparisons_per_eval(&self) -> u64 {
        self.comparisons_per_eval
    }
}

impl fmt::Debug for ScalarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarOp").field("name", &self.name).finish()
    }
}

/// An adjoint family of connectives. The conjunctive side (C, I) is always
/// present; the disjunctive side (D, J) only for dual-complete families.
#[derive(Debug, Clone)]
pub struct ConnectiveFamily {
    name: Cow<'static, str>,
    builtin: Option<FamilyName>,
    conjunction: ScalarOp,
    implication: ScalarOp,
    disjunction: Option<ScalarOp>,
    coimplication: Option<ScalarOp>,
    left_identity_c: Option<f64>,
    left_identity_d: Option<f64>,
}

impl ConnectiveFamily {
    /// Assembles a user-defined family. The adjunctions are not verified here;
    /// run [`check_adjunction`] on the result.
    pub fn custom(
        name: &'static str,
        conjunction: ScalarOp,
        implication: ScalarOp,
        disjunction: Option<ScalarOp>,
        coimplication: Option<ScalarOp>,
        left_identity_c: Option<f64>,
        left_identity_d: Option<f64>,
    ) -> Self {
        ConnectiveFamily {
            name: Cow::Borrowed(name),
            builtin: None,
            conjunction,
            implication,
            disjunction,
            coimplication,
            left_identity_c,
            left_identity_d,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `Some` when this is one of the builtin families.
    pub fn builtin(&self) -> Option<FamilyName> {
        self.builtin
    }

    pub fn conjunction(&self) -> ScalarOp {
        self.conjunction
    }

    pub fn implication(&self) -> ScalarOp {
        self.implication
    }

    pub fn disjunction(&self) -> Option<ScalarOp> {
        self.disjunction
    }

    pub fn coimplication(&self) -> Option<ScalarOp> {
        self.coimplication
    }

    /// Both lattice sides present.
    pub fn is_dual_complete(&self) -> bool {
        self.disjunction.is_some() && self.coimplication.is_some()
    }

    /// e with C(e, x) = x for all x, when one exists.
    pub fn left_identity_c(&self) -> Option<f64> {
        self.left_identity_c
    }

    /// e with D(e, x) = x for all x, when one exists.
    pub fn left_identity_d(&self) -> Option<f64> {
        self.left_identity_d
    }

    /// The standard strong negation 1 - x.
    #[inline]
    pub fn negation(&self, x: f64) -> f64 {
        1.0 - x
    }
}

// Gödel family: minimum conjunction, maximum disjunction.
fn godel_c(x: f64, y: f64) -> f64 {
    x.min(y)
}
fn godel_i(x: f64, y: f64) -> f64 {
    if x <= y {
        1.0
    } else {
        y
    }
}
fn godel_d(x: f64, y: f64) -> f64 {
    x.max(y)
}
fn godel_j(x: f64, y: f64) -> f64 {
    if x >= y {
        0.0
    } else {
        y
    }
}

// Goguen family: product conjunction, probabilistic-sum disjunction.
fn goguen_c(x: f64, y: f64) -> f64 {
    x * y
}
fn goguen_i(x: f64, y: f64) -> f64 {
    // x > y implies x > 0, so the quotient is well defined.
    if x <= y {
        1.0
    } else {
        y / x
    }
}
fn goguen_d(x: f64, y: f64) -> f64 {
    // Factored probabilistic sum: keeps D(0, y) = y and D(1, y) = 1 exact
    // in floats, which the adjunction and the identity laws rely on.
    x + y * (1.0 - x)
}
fn goguen_j(x: f64, y: f64) -> f64 {
    // x < y <= 1 implies x < 1.
    if x >= y {
        0.0
    } else {
        (y - x) / (1.0 - x)
    }
}

// Lukasiewicz family. The (x - 1) + y evaluation order keeps the left
// identity exact: C(1, y) = y bitwise.
fn lukasiewicz_c(x: f64, y: f64) -> f64 {
    ((x - 1.0) + y).max(0.0)
}
fn lukasiewicz_i(x: f64, y: f64) -> f64 {
    ((y - x) + 1.0).min(1.0)
}
fn lukasiewicz_d(x: f64, y: f64) -> f64 {
    (x + y).min(1.0)
}
fn lukasiewicz_j(x: f64, y: f64) -> f64 {
    (y - x).max(0.0)
}

// Gaines family: the extreme residual pair.
fn gaines_c(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        y
    }
}
fn gaines_i(x: f64, y: f64) -> f64 {
    if x <= y {
        1.0
    } else {
        0.0
    }
}
fn gaines_d(x: f64, y: f64) -> f64 {
    if x == 1.0 {
        1.0
    } else {
        y
    }
}
fn gaines_j(x: f64, y: f64) -> f64 {
    if x >= y {
        0.0
    } else {
        1.0
    }
}

// Compensatory-and: geometric mean of the product t-norm and the
// probabilistic sum. Associativity and a left identity both fail, so the
// family has a conjunctive side only.
fn compensatory_c(x: f64, y: f64) -> f64 {
    ((x * y) * (x + y - x * y)).max(0.0).sqrt()
}
fn compensatory_i(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x == 1.0 {
        return y * y;
    }
    // Largest t with t^2 x(1-x) + t x^2 <= y^2; the discriminant is
    // clamped at zero to absorb rounding.
    let disc = (x.powi(4) + 4.0 * x * (1.0 - x) * y * y).max(0.0);
    let t = (disc.sqrt() - x * x) / (2.0 * x * (1.0 - x));
    t.clamp(0.0, 1.0)
}

/// Returns a builtin family by name.
pub fn builtin_family(name: FamilyName) -> ConnectiveFamily {
    let (conjunction, implication, disjunction, coimplication) = match name {
        FamilyName::Godel => (
            ScalarOp::new("godel_c", godel_c, 1),
            ScalarOp::new("godel_i", godel_i, 1),
            Some(ScalarOp::new("godel_d", godel_d, 1)),
            Some(ScalarOp::new("godel_j", godel_j, 1)),
        ),
        FamilyName::Goguen => (
            ScalarOp::new("goguen_c", goguen_c, 0),
            ScalarOp::new("goguen_i", goguen_i, 1),
            Some(ScalarOp::new("goguen_d", goguen_d, 0)),
            Some(ScalarOp::new("goguen_j", goguen_j, 1)),
        ),
        FamilyName::Lukasiewicz => (
            ScalarOp::new("lukasiewicz_c", lukasiewicz_c, 1),
            ScalarOp::new("lukasiewicz_i", lukasiewicz_i, 1),
            Some(ScalarOp::new("lukasiewicz_d", lukasiewicz_d, 1)),
            Some(ScalarOp::new("lukasiewicz_j", lukasiewicz_j, 1)),
        ),
        FamilyName::Gaines => (
            ScalarOp::new("gaines_c", gaines_c, 1),
            ScalarOp::new("gaines_i", gaines_i, 1),
            Some(ScalarOp::new("gaines_d", gaines_d, 1)),
            Some(ScalarOp::new("gaines_j", gaines_j, 1)),
        ),
        FamilyName::CompensatoryAnd => (
            ScalarOp::new("compensatory_c", compensatory_c, 0),
            ScalarOp::new("compensatory_i", compensatory_i, 1),
            None,
            None,
        ),
    };
    let (left_identity_c, left_identity_d) = match name {
        // Any e > 0 is a left identity for the Gaines conjunction and any
        // e < 1 for its disjunction; 1 and 0 keep all four families uniform.
        FamilyName::CompensatoryAnd => (None, None),
        _ => (Some(1.0), Some(0.0)),
    };
    ConnectiveFamily {
        name: Cow::Borrowed(name.as_str()),
        builtin: Some(name),
        conjunction,
        implication,
        disjunction,
        coimplication,
        left_identity_c,
        left_identity_d,
    }
}

/// Residual implication of an arbitrary conjunction, by bisection:
/// the supremum of {t : C(t, x) <= y}, located to within 1e-12.
///
/// The set is never empty because C(0, x) = 0 <= y. Builtin families expose
/// closed forms through [`ConnectiveFamily::implication`]; this fallback is
/// for user-supplied operators.
pub fn residual_implication<C>(conjunction: C, x: UnitScalar, y: UnitScalar) -> UnitScalar
where
    C: Fn(f64, f64) -> f64,
{
    let (x, y) = (x.value(), y.value());
    if conjunction(1.0, x) <= y {
        return UnitScalar(1.0);
    }
    // Invariant: C(lo, x) <= y < C(hi, x).
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..RESIDUAL_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if conjunction(mid, x) <= y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    UnitScalar(lo)
}

/// Residual co-implication of an arbitrary disjunction, by bisection:
/// the infimum of {t : D(t, x) >= y}, located to within 1e-12.
///
/// When even D(1, x) < y the set is empty and the infimum over the empty
/// subset of [0, 1] is 1.
pub fn residual_coimplication<D>(disjunction: D, x: UnitScalar, y: UnitScalar) -> UnitScalar
where
    D: Fn(f64, f64) -> f64,
{
    let (x, y) = (x.value(), y.value());
    if disjunction(0.0, x) >= y {
        return UnitScalar(0.0);
    }
    if disjunction(1.0, x) < y {
        return UnitScalar(1.0);
    }
    // Invariant: D(lo, x) < y <= D(hi, x).
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..RESIDUAL_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if disjunction(mid, x) >= y {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    UnitScalar(hi)
}

/// Outcome of a grid adjunction check.
#[derive(Debug, Clone)]
pub struct AdjunctionReport {
    pub holds: bool,
    pub grid_resolution: usize,
    pub triples_checked: usize,
    /// First (a, x, y) violating I(a, x) >= y <=> x >= C(y, a), if any.
    pub conjunctive_failure: Option<[f64; 3]>,
    /// First (a, x, y) violating J(a, x) <= y <=> x <= D(y, a), if any.
    pub disjunctive_failure: Option<[f64; 3]>,
}

/// Evenly spaced grid {0, 1/(g-1), ..., 1}.
pub(crate) fn unit_grid(resolution: usize) -> Vec<f64> {
    let step = (resolution - 1) as f64;
    (0..resolution).map(|i| i as f64 / step).collect()
}

// Grid triples that land exactly on the adjunction boundary can be pushed
// one ulp across it by float evaluation (e.g. 0.45 / 0.9 is an ulp above
// 0.5). A reported violation must exceed this slack.
const ADJUNCTION_SLACK: f64 = 1e-9;

/// Tests both adjunction equivalences over the grid {0, 1/(g-1), ..., 1}^3.
/// The disjunctive side is skipped for families without one. Requires g >= 2.
/// Boundary comparisons carry a 1e-9 slack so float rounding of exact ties
/// does not count as a violation.
pub fn check_adjunction(family: &ConnectiveFamily, resolution: usize) -> Result<AdjunctionReport> {
    if resolution < 2 {
        return Err(Error::Config(format!(
            "adjunction grid resolution must be at least 2, got {resolution}"
        )));
    }
    let grid = unit_grid(resolution);
    let conj = family.conjunction();
    let imp = family.implication();
    let dual = family.disjunction().zip(family.coimplication());

    let mut conjunctive_failure = None;
    let mut disjunctive_failure = None;
    let mut triples_checked = 0usize;

    'conj: for &a in &grid {
        for &x in &grid {
            for &y in &grid {
                triples_checked += 1;
                let lhs = imp.eval(a, x) - y;
                let rhs = x - conj.eval(y, a);
                // I(a,x) >= y must hold exactly when x >= C(y,a).
                if (lhs >= 0.0 && rhs < -ADJUNCTION_SLACK)
                    || (lhs < -ADJUNCTION_SLACK && rhs >= 0.0)
                {
                    conjunctive_failure = Some([a, x, y]);
                    break 'conj;
                }
            }
        }
    }
    if let Some((disj, coimp)) = dual {
        'disj: for &a in &grid {
            for &x in &grid {
                for &y in &grid {
                    triples_checked += 1;
                    let lhs = y - coimp.eval(a, x);
                    let rhs = disj.eval(y, a) - x;
                    // J(a,x) <= y must hold exactly when x <= D(y,a).
                    if (lhs >= 0.0 && rhs < -ADJUNCTION_SLACK)
                        || (lhs < -ADJUNCTION_SLACK && rhs >= 0.0)
                    {
                        disjunctive_failure = Some([a, x, y]);
                        break 'disj;
                    }
                }
            }
        }
    }

    Ok(AdjunctionReport {
        holds: conjunctive_failure.is_none() && disjunctive_failure.is_none(),
        grid_resolution: resolution,
        triples_checked,
        conjunctive_failure,
        disjunctive_failure,
    })
}
