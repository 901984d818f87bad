//! Built-in reference checks over a frozen worked example.
//!
//! One three-vector memory set and one probe exercise the whole recall
//! stack: fixed-point training, the four min-D distributed recalls, the
//! projective recalls of every connective family (including the
//! compensatory family's imperfect recall of its own stored vectors), the
//! inclusion-based recall, and a normalized-error row comparing all eight
//! memories on the same probe. The expected values were derived by hand
//! and are embedded here, so the checks run self-contained and fast.
//!
//! Several expectations are recorded at two decimals. One recall error and
//! one compensatory coefficient truncate rather than round at that
//! precision, so [`matches_printed`] accepts a value whose two-decimal
//! rounding or truncation equals the expectation.

use crate::afmm::{DistributedKind, DistributedMemory, Recall};
use crate::classifier::nmse;
use crate::connectives::FamilyName;
use crate::error::Result;
use crate::lattice::{FundamentalMemorySet, FuzzyVector};
use crate::pafmm::ProjectionMemory;

/// Outcome of one reference check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        CheckResult {
            name,
            passed,
            detail,
        }
    }
}

/// The worked fundamental memories (k = 3, n = 4).
pub fn worked_memories() -> FundamentalMemorySet {
    FundamentalMemorySet::from_rows(&[
        vec![0.4, 0.3, 0.7, 0.2],
        vec![0.1, 0.7, 0.5, 0.8],
        vec![0.8, 0.5, 0.4, 0.2],
    ])
    .expect("worked memories are valid")
}

/// The worked probe, a mixed-noise corruption of the first stored vector.
pub fn worked_probe() -> FuzzyVector {
    FuzzyVector::new(vec![0.4, 0.3, 0.8, 0.7]).expect("worked probe is valid")
}

// Fixed-point weights of min-D training on the worked memories (godel).
const WORKED_WEIGHTS: [[f64; 4]; 4] = [
    [0.0, 0.8, 0.8, 0.8],
    [0.7, 0.0, 0.7, 0.5],
    [0.7, 0.7, 0.0, 0.7],
    [0.8, 0.8, 0.8, 0.0],
];

// Two-decimal expected recalls of the probe through min-D distributed
// memories, one row per family.
const DISTRIBUTED_RECALLS: [(FamilyName, [f64; 4]); 4] = [
    (FamilyName::Godel, [0.40, 0.30, 0.70, 0.70]),
    (FamilyName::Goguen, [0.40, 0.30, 0.70, 0.53]),
    (FamilyName::Lukasiewicz, [0.40, 0.30, 0.70, 0.40]),
    (FamilyName::Gaines, [0.40, 0.30, 0.80, 0.70]),
];

// Two-decimal expected recalls of the probe through max-C projections.
const PROJECTION_RECALLS: [(FamilyName, [f64; 4]); 3] = [
    (FamilyName::Godel, [0.40, 0.30, 0.70, 0.30]),
    (FamilyName::Goguen, [0.40, 0.30, 0.70, 0.34]),
    (FamilyName::Lukasiewicz, [0.40, 0.30, 0.70, 0.40]),
];

const GODEL_COEFFICIENTS: [f64; 3] = [1.0, 0.3, 0.3];

// Compensatory projection of the first stored vector: coefficients and the
// recalls of all three stored vectors (none is a fixed point).
const COMPENSATORY_COEFFICIENTS: [f64; 3] = [0.39, 0.06, 0.23];
const COMPENSATORY_RECALLS: [[f64; 4]; 3] = [
    [0.40, 0.27, 0.47, 0.20],
    [0.10, 0.39, 0.30, 0.44],
    [0.52, 0.37, 0.40, 0.20],
];

// Normalized errors against the first stored vector for: the probe itself,
// the four min-D recalls, the three max-C family recalls, and the
// inclusion-based recall.
const ERROR_ROW: [f64; 9] = [0.33, 0.32, 0.14, 0.05, 0.33, 0.01, 0.02, 0.05, 0.00];

const PRINT_TOLERANCE: f64 = 0.005;
const EXACT_TOLERANCE: f64 = 1e-12;

/// True when `value` prints as `expected` at two decimals, whether the
/// print rounds or truncates.
pub fn matches_printed(value: f64, expected: f64) -> bool {
    let diff = value - expected;
    diff.abs() <= PRINT_TOLERANCE + 1e-9 || (diff >= -1e-9 && diff < 0.01)
}

/// Runs every reference check and reports one result per check.
pub fn run_reference_checks() -> Vec<CheckResult> {
    let mut results = vec![run(
        "fixed-point-weights",
        check_weights(&WORKED_WEIGHTS),
    )];
    for (family, expected) in DISTRIBUTED_RECALLS {
        let name = match family {
            FamilyName::Godel => "distributed-recall-godel",
            FamilyName::Goguen => "distributed-recall-goguen",
            FamilyName::Lukasiewicz => "distributed-recall-lukasiewicz",
            FamilyName::Gaines => "distributed-recall-gaines",
            FamilyName::CompensatoryAnd => unreachable!("no distributed compensatory recall"),
        };
        results.push(run(name, check_distributed_recall(family, &expected)));
    }
    results.push(run(
        "projection-coefficients-godel",
        check_godel_coefficients(),
    ));
    for (family, expected) in PROJECTION_RECALLS {
        let name = match family {
            FamilyName::Godel => "projection-recall-godel",
            FamilyName::Goguen => "projection-recall-goguen",
            FamilyName::Lukasiewicz => "projection-recall-lukasiewicz",
            _ => unreachable!("unexpected projection family"),
        };
        results.push(run(name, check_projection_recall(family, &expected)));
    }
    results.push(run(
        "compensatory-coefficients",
        check_compensatory_coefficients(),
    ));
    results.push(run("compensatory-recall", check_compensatory_recalls()));
    results.push(run("inclusion-exact-recall", check_zadeh_recall()));
    results.push(run("error-table-row", check_error_row()));
    results
}

/// Perturbs an embedded expectation and confirms the comparison trips.
pub fn run_negative_control() -> CheckResult {
    let mut perturbed = WORKED_WEIGHTS;
    perturbed[0][1] += 0.05;
    let outcome = check_weights(&perturbed);
    let (passed, detail) = match outcome {
        Ok(result) if !result.passed => (
            true,
            format!(
                "perturbed weight expectation was rejected by fixed-point-weights ({})",
                result.detail
            ),
        ),
        Ok(_) => (
            false,
            "perturbed weight expectation was NOT detected".to_string(),
        ),
        Err(e) => (false, format!("negative control errored: {e}")),
    };
    CheckResult::new("negative-control", passed, detail)
}

fn run(name: &'static str, outcome: Result<CheckResult>) -> CheckResult {
    match outcome {
        Ok(mut result) => {
            result.name = name;
            result
        }
        Err(e) => CheckResult::new(name, false, format!("check errored: {e}")),
    }
}

// Compares per entry at the exact tolerance, reporting the worst deviation.
fn check_weights(expected: &[[f64; 4]; 4]) -> Result<CheckResult> {
    let trained = DistributedMemory::train_fla(
        &worked_memories(),
        FamilyName::Godel,
        DistributedKind::MinD,
    )?;
    let mut worst = 0.0f64;
    for (i, row) in expected.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            worst = worst.max((trained.weights().get(i, j) - e).abs());
        }
    }
    Ok(CheckResult::new(
        "",
        worst <= EXACT_TOLERANCE,
        format!("max entry deviation {worst:.1e} (tolerance {EXACT_TOLERANCE:.0e})"),
    ))
}

fn compare_row(computed: &FuzzyVector, expected: &[f64]) -> (bool, String) {
    let worst = computed
        .iter()
        .zip(expected)
        .map(|(c, e)| (c - e).abs())
        .fold(0.0f64, f64::max);
    (
        worst <= PRINT_TOLERANCE,
        format!("max component deviation {worst:.4} (tolerance {PRINT_TOLERANCE})"),
    )
}

fn check_distributed_recall(family: FamilyName, expected: &[f64; 4]) -> Result<CheckResult> {
    let trained =
        DistributedMemory::train_fla(&worked_memories(), family, DistributedKind::MinD)?;
    let out = trained.recall(&worked_probe())?;
    let (passed, detail) = compare_row(&out, expected);
    Ok(CheckResult::new("", passed, detail))
}

fn check_godel_coefficients() -> Result<CheckResult> {
    let memory = ProjectionMemory::max_c(worked_memories(), FamilyName::Godel)?;
    let (_, trace) = memory.recall_traced(&worked_probe())?;
    let worst = trace
        .coefficients
        .iter()
        .zip(GODEL_COEFFICIENTS)
        .map(|(c, e)| (c - e).abs())
        .fold(0.0f64, f64::max);
    Ok(CheckResult::new(
        "",
        worst <= PRINT_TOLERANCE,
        format!("max coefficient deviation {worst:.4} (tolerance {PRINT_TOLERANCE})"),
    ))
}

fn check_projection_recall(family: FamilyName, expected: &[f64; 4]) -> Result<CheckResult> {
    let memory = ProjectionMemory::max_c(worked_memories(), family)?;
    let out = memory.recall(&worked_probe())?;
    let (passed, detail) = compare_row(&out, expected);
    Ok(CheckResult::new("", passed, detail))
}

fn check_compensatory_coefficients() -> Result<CheckResult> {
    let memory = ProjectionMemory::max_c(worked_memories(), FamilyName::CompensatoryAnd)?;
    let first = worked_memories().get(0).clone();
    let (_, trace) = memory.recall_traced(&first)?;
    let all_match = trace
        .coefficients
        .iter()
        .zip(COMPENSATORY_COEFFICIENTS)
        .all(|(c, e)| matches_printed(*c, e));
    let rendered: Vec<String> = trace.coefficients.iter().map(|c| format!("{c:.4}")).collect();
    Ok(CheckResult::new(
        "",
        all_match,
        format!(
            "coefficients ({}) print as ({:.2}, {:.2}, {:.2}) at two decimals",
            rendered.join(", "),
            COMPENSATORY_COEFFICIENTS[0],
            COMPENSATORY_COEFFICIENTS[1],
            COMPENSATORY_COEFFICIENTS[2]
        ),
    ))
}

fn check_compensatory_recalls() -> Result<CheckResult> {
    let memories = worked_memories();
    let memory = ProjectionMemory::max_c(memories.clone(), FamilyName::CompensatoryAnd)?;
    let mut worst = 0.0f64;
    let mut drift = f64::INFINITY;
    for (stored, expected) in memories.iter().zip(&COMPENSATORY_RECALLS) {
        let out = memory.recall(stored)?;
        for (c, e) in out.iter().zip(expected) {
            worst = worst.max((c - e).abs());
        }
        // Imperfect recall: the output must move away from the stored vector.
        let moved = out
            .iter()
            .zip(stored.iter())
            .map(|(c, s)| (c - s).abs())
            .fold(0.0f64, f64::max);
        drift = drift.min(moved);
    }
    Ok(CheckResult::new(
        "",
        worst <= PRINT_TOLERANCE && drift > 0.01,
        format!(
            "max component deviation {worst:.4} (tolerance {PRINT_TOLERANCE}); \
             every stored vector drifts by at least {drift:.4}"
        ),
    ))
}

fn check_zadeh_recall() -> Result<CheckResult> {
    let memories = worked_memories();
    let memory = ProjectionMemory::zadeh_max(memories.clone());
    let (out, trace) = memory.recall_traced(&worked_probe())?;
    let first = memories.get(0);
    let exact = out.as_slice() == first.as_slice();
    let index_ok = trace.index_set.as_deref() == Some(&[0][..]);
    Ok(CheckResult::new(
        "",
        exact && index_ok,
        format!(
            "recall of the probe is bit-exactly the first stored vector: {exact}; \
             selected index set {:?}",
            trace.index_set
        ),
    ))
}

fn check_error_row() -> Result<CheckResult> {
    let memories = worked_memories();
    let x = worked_probe();
    let first = memories.get(0).clone();
    let mut computed = vec![nmse(&x, &first)?];
    for (family, _) in DISTRIBUTED_RECALLS {
        let trained = DistributedMemory::train_fla(&memories, family, DistributedKind::MinD)?;
        computed.push(nmse(&trained.recall(&x)?, &first)?);
    }
    for (family, _) in PROJECTION_RECALLS {
        let memory = ProjectionMemory::max_c(memories.clone(), family)?;
        computed.push(nmse(&memory.recall(&x)?, &first)?);
    }
    let zadeh = ProjectionMemory::zadeh_max(memories.clone());
    computed.push(nmse(&zadeh.recall(&x)?, &first)?);

    let all_match = computed
        .iter()
        .zip(ERROR_ROW)
        .all(|(c, e)| matches_printed(*c, e));
    let rendered: Vec<String> = computed.iter().map(|c| format!("{c:.4}")).collect();
    Ok(CheckResult::new(
        "",
        all_match && computed[8] == 0.0,
        format!(
            "errors ({}) print as {:?} at two decimals; final entry exactly zero",
            rendered.join(", "),
            ERROR_ROW
        ),
    ))
}
