//! Vectors, matrices, and the max-C / min-D lattice operations.
//!
//! A max-C product takes suprema of conjunctions, G = A (max-C) B with
//! g_ij = sup_xi C(a_i,xi, b_xi,j); the min-D product is its dual with
//! infima of disjunctions. Combinations mix a coefficient vector across a
//! set of stored vectors the same way.
//!
//! # Operation counting
//!
//! [`OpCounter`] tracks the work of counted variants:
//!
//! - `fuzzy_op_evals` increments once per scalar connective evaluation;
//! - `comparisons` counts lattice fold steps (length - 1 per sup/inf fold)
//!   plus the order comparisons performed inside each connective evaluation
//!   (one for min/max/branch-style operators, zero for arithmetic ones, as
//!   advertised by [`ScalarOp::comparisons_per_eval`]);
//! - `float_ops` is reserved for similarity measures (see the masking
//!   module).
//!
//! The uncounted entry points monomorphize the tally away entirely, so the
//! hot paths carry no instrumentation cost when disabled.

use crate::connectives::ScalarOp;
use crate::error::{Error, Result};
use std::ops::Index;

/// Totals accumulated by counted operations. Mergeable so per-worker
/// counters can be combined after parallel sections.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounter {
    pub fuzzy_op_evals: u64,
    pub comparisons: u64,
    pub float_ops: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        OpCounter::default()
    }

    pub fn reset(&mut self) {
        *self = OpCounter::default();
    }

    pub fn merge(&mut self, other: OpCounter) {
        self.fuzzy_op_evals += other.fuzzy_op_evals;
        self.comparisons += other.comparisons;
        self.float_ops += other.float_ops;
    }
}

/// Sink for operation counts; `NoTally` is a zero-sized no-op.
pub(crate) trait Tally {
    fn fuzzy_evals(&mut self, n: u64);
    fn comparisons(&mut self, n: u64);
    fn float_ops(&mut self, n: u64);
}

pub(crate) struct NoTally;

impl Tally for NoTally {
    #[inline(always)]
    fn fuzzy_evals(&mut self, _: u64) {}
    #[inline(always)]
    fn comparisons(&mut self, _: u64) {}
    #[inline(always)]
    fn float_ops(&mut self, _: u64) {}
}

impl Tally for OpCounter {
    #[inline(always)]
    fn fuzzy_evals(&mut self, n: u64) {
        self.fuzzy_op_evals += n;
    }
    #[inline(always)]
    fn comparisons(&mut self, n: u64) {
        self.comparisons += n;
    }
    #[inline(always)]
    fn float_ops(&mut self, n: u64) {
        self.float_ops += n;
    }
}

fn validate_components(values: &[f64], context: &'static str) -> Result<()> {
    for &v in values {
        if v.is_nan() || !(0.0..=1.0).contains(&v) {
            return Err(Error::Config(format!(
                "{context}: component {v} outside [0, 1]"
            )));
        }
    }
    Ok(())
}

/// A nonempty vector with components in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyVector(Vec<f64>);

impl FuzzyVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("fuzzy vector must be nonempty".into()));
        }
        validate_components(&values, "fuzzy vector")?;
        Ok(FuzzyVector(values))
    }

    pub fn zeros(n: usize) -> Result<Self> {
        FuzzyVector::new(vec![0.0; n])
    }

    pub fn ones(n: usize) -> Result<Self> {
        FuzzyVector::new(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &FuzzyVector) -> Result<FuzzyVector> {
        self.check_len(other)?;
        Ok(FuzzyVector(
            self.iter().zip(other.iter()).map(|(a, b)| a.max(*b)).collect(),
        ))
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &FuzzyVector) -> Result<FuzzyVector> {
        self.check_len(other)?;
        Ok(FuzzyVector(
            self.iter().zip(other.iter()).map(|(a, b)| a.min(*b)).collect(),
        ))
    }

    /// Componentwise strong negation 1 - x.
    pub fn complement(&self) -> FuzzyVector {
        FuzzyVector(self.iter().map(|v| 1.0 - v).collect())
    }

    /// Componentwise order: self <= other in every coordinate.
    pub fn leq(&self, other: &FuzzyVector) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.iter().zip(other.iter()).all(|(a, b)| a <= b))
    }

    fn check_len(&self, other: &FuzzyVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::dimension(self.len(), other.len(), "vector pair"));
        }
        Ok(())
    }
}

impl Index<usize> for FuzzyVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a FuzzyVector {
    type Item = &'a f64;
    type IntoIter = std::slice::Iter<'a, f64>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A dense row-major matrix with entries in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl FuzzyMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Config("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::dimension(rows * cols, data.len(), "matrix data"));
        }
        validate_components(&data, "fuzzy matrix")?;
        Ok(FuzzyMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Config("matrix dimensions must be positive".into()));
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::dimension(cols, row.len(), "matrix row"));
            }
            data.extend_from_slice(row);
        }
        FuzzyMatrix::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

/// A nonempty set of stored vectors sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalMemorySet {
    vectors: Vec<FuzzyVector>,
}

impl FundamentalMemorySet {
    pub fn new(vectors: Vec<FuzzyVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Config("memory set must be nonempty".into()));
        }
        let n = vectors[0].len();
        for v in &vectors {
            if v.len() != n {
                return Err(Error::dimension(n, v.len(), "memory set"));
            }
        }
        Ok(FundamentalMemorySet { vectors })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let vectors = rows
            .iter()
            .map(|r| FuzzyVector::new(r.clone()))
            .collect::<Result<Vec<_>>>()?;
        FundamentalMemorySet::new(vectors)
    }

    /// Number of stored vectors (k).
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Shared vector dimension (n).
    pub fn dimension(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn get(&self, xi: usize) -> &FuzzyVector {
        &self.vectors[xi]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FuzzyVector> {
        self.vectors.iter()
    }

    pub fn vectors(&self) -> &[FuzzyVector] {
        &self.vectors
    }
}

fn check_inner_dims(a_cols: usize, b_rows: usize) -> Result<()> {
    if a_cols != b_rows {
        return Err(Error::dimension(a_cols, b_rows, "product inner dimension"));
    }
    Ok(())
}

pub(crate) fn max_c_product_tallied<T: Tally>(
    a: &FuzzyMatrix,
    b: &FuzzyMatrix,
    conjunction: ScalarOp,
    tally: &mut T,
) -> Result<FuzzyMatrix> {
    check_inner_dims(a.cols(), b.rows())?;
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    let mut data = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut acc = conjunction.eval(a.get(i, 0), b.get(0, j));
            for xi in 1..k {
                acc = acc.max(conjunction.eval(a.get(i, xi), b.get(xi, j)));
            }
            data.push(acc);
        }
    }
    tally.fuzzy_evals((m * k * n) as u64);
    tally.comparisons(
        (m * k * n) as u64 * conjunction.comparisons_per_eval()
            + (m * (k - 1) * n) as u64,
    );
    FuzzyMatrix::new(m, n, data)
}

pub(crate) fn min_d_product_tallied<T: Tally>(
    a: &FuzzyMatrix,
    b: &FuzzyMatrix,
    disjunction: ScalarOp,
    tally: &mut T,
) -> Result<FuzzyMatrix> {
    check_inner_dims(a.cols(), b.rows())?;
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    let mut data = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut acc = disjunction.eval(a.get(i, 0), b.get(0, j));
            for xi in 1..k {
                acc = acc.min(disjunction.eval(a.get(i, xi), b.get(xi, j)));
            }
            data.push(acc);
        }
    }
    tally.fuzzy_evals((m * k * n) as u64);
    tally.comparisons(
        (m * k * n) as u64 * disjunction.comparisons_per_eval()
            + (m * (k - 1) * n) as u64,
    );
    FuzzyMatrix::new(m, n, data)
}

pub(crate) fn max_c_apply_tallied<T: Tally>(
    a: &FuzzyMatrix,
    x: &FuzzyVector,
    conjunction: ScalarOp,
    tally: &mut T,
) -> Result<FuzzyVector> {
    check_inner_dims(a.cols(), x.len())?;
    let (m, k) = (a.rows(), a.cols());
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let row = a.row(i);
        let mut acc = conjunction.eval(row[0], x[0]);
        for j in 1..k {
            acc = acc.max(conjunction.eval(row[j], x[j]));
        }
        out.push(acc);
    }
    tally.fuzzy_evals((m * k) as u64);
    tally.comparisons((m * k) as u64 * conjunction.comparisons_per_eval() + (m * (k - 1)) as u64);
    FuzzyVector::new(out)
}

pub(crate) fn min_d_apply_tallied<T: Tally>(
    a: &FuzzyMatrix,
    x: &FuzzyVector,
    disjunction: ScalarOp,
    tally: &mut T,
) -> Result<FuzzyVector> {
    check_inner_dims(a.cols(), x.len())?;
    let (m, k) = (a.rows(), a.cols());
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let row = a.row(i);
        let mut acc = disjunction.eval(row[0], x[0]);
        for j in 1..k {
            acc = acc.min(disjunction.eval(row[j], x[j]));
        }
        out.push(acc);
    }
    tally.fuzzy_evals((m * k) as u64);
    tally.comparisons((m * k) as u64 * disjunction.comparisons_per_eval() + (m * (k - 1)) as u64);
    FuzzyVector::new(out)
}

pub(crate) fn max_c_combination_tallied<T: Tally>(
    coefficients: &FuzzyVector,
    memories: &FundamentalMemorySet,
    conjunction: ScalarOp,
    tally: &mut T,
) -> Result<FuzzyVector> {
    if coefficients.len() != memories.len() {
        return Err(Error::dimension(
            memories.len(),
            coefficients.len(),
            "combination coefficients",
        ));
    }
    let (k, n) = (memories.len(), memories.dimension());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = conjunction.eval(coefficients[0], memories.get(0)[i]);
        for xi in 1..k {
            acc = acc.max(conjunction.eval(coefficients[xi], memories.get(xi)[i]));
        }
        out.push(acc);
    }
    tally.fuzzy_evals((n * k) as u64);
    tally.comparisons((n * k) as u64 * conjunction.comparisons_per_eval() + (n * (k - 1)) as u64);
    FuzzyVector::new(out)
}

pub(crate) fn min_d_combination_tallied<T: Tally>(
    coefficients: &FuzzyVector,
    memories: &FundamentalMemorySet,
    disjunction: ScalarOp,
    tally: &mut T,
) -> Result<FuzzyVector> {
    if coefficients.len() != memories.len() {
        return Err(Error::dimension(
            memories.len(),
            coefficients.len(),
            "combination coefficients",
        ));
    }
    let (k, n) = (memories.len(), memories.dimension());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = disjunction.eval(coefficients[0], memories.get(0)[i]);
        for xi in 1..k {
            acc = acc.min(disjunction.eval(coefficients[xi], memories.get(xi)[i]));
        }
        out.push(acc);
    }
    tally.fuzzy_evals((n * k) as u64);
    tally.comparisons((n * k) as u64 * disjunction.comparisons_per_eval() + (n * (k - 1)) as u64);
    FuzzyVector::new(out)
}

/// G = A (max-C) B with g_ij = sup_xi C(a_i,xi, b_xi,j).
pub fn max_c_product(a: &FuzzyMatrix, b: &FuzzyMatrix, conjunction: ScalarOp) -> Result<FuzzyMatrix> {
    max_c_product_tallied(a, b, conjunction, &mut NoTally)
}

/// Counted variant of [`max_c_product`].
pub fn max_c_product_counted(
    a: &FuzzyMatrix,
    b: &FuzzyMatrix,
    conjunction: ScalarOp,
    counter: &mut OpCounter,
) -> Result<FuzzyMatrix> {
    max_c_product_tallied(a, b, conjunction, counter)
}

/// H = A (min-D) B with h_ij = inf_xi D(a_i,xi, b_xi,j).
pub fn min_d_product(a: &FuzzyMatrix, b: &FuzzyMatrix, disjunction: ScalarOp) -> Result<FuzzyMatrix> {
    min_d_product_tallied(a, b, disjunction, &mut NoTally)
}

/// Counted variant of [`min_d_product`].
pub fn min_d_product_counted(
    a: &FuzzyMatrix,
    b: &FuzzyMatrix,
    disjunction: ScalarOp,
    counter: &mut OpCounter,
) -> Result<FuzzyMatrix> {
    min_d_product_tallied(a, b, disjunction, counter)
}

/// Matrix-vector max-C product.
pub fn max_c_apply(a: &FuzzyMatrix, x: &FuzzyVector, conjunction: ScalarOp) -> Result<FuzzyVector> {
    max_c_apply_tallied(a, x, conjunction, &mut NoTally)
}

/// Matrix-vector min-D product.
pub fn min_d_apply(a: &FuzzyMatrix, x: &FuzzyVector, disjunction: ScalarOp) -> Result<FuzzyVector> {
    min_d_apply_tallied(a, x, disjunction, &mut NoTally)
}

/// z_i = sup_xi C(lambda_xi, a_i^xi): a max-C mix of the stored vectors.
pub fn max_c_combination(
    coefficients: &FuzzyVector,
    memories: &FundamentalMemorySet,
    conjunction: ScalarOp,
) -> Result<FuzzyVector> {
    max_c_combination_tallied(coefficients, memories, conjunction, &mut NoTally)
}

/// z_i = inf_xi D(theta_xi, a_i^xi): a min-D mix of the stored vectors.
pub fn min_d_combination(
    coefficients: &FuzzyVector,
    memories: &FundamentalMemorySet,
    disjunction: ScalarOp,
) -> Result<FuzzyVector> {
    min_d_combination_tallied(coefficients, memories, disjunction, &mut NoTally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectives::{builtin_family, FamilyName};
    use proptest::prelude::*;

    fn memories() -> FundamentalMemorySet {
        FundamentalMemorySet::from_rows(&[
            vec![0.4, 0.3, 0.7, 0.2],
            vec![0.1, 0.7, 0.5, 0.8],
            vec![0.8, 0.5, 0.4, 0.2],
        ])
        .unwrap()
    }

    #[test]
    fn identity_pattern_is_neutral_for_max_c() {
        let godel = builtin_family(FamilyName::Godel);
        let eye = FuzzyMatrix::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let b = FuzzyMatrix::from_rows(&[
            vec![0.3, 0.9],
            vec![0.5, 0.1],
            vec![0.7, 0.6],
        ])
        .unwrap();
        let g = max_c_product(&eye, &b, godel.conjunction()).unwrap();
        assert_eq!(g, b);
    }

    #[test]
    fn one_by_one_product() {
        let goguen = builtin_family(FamilyName::Goguen);
        let a = FuzzyMatrix::new(1, 1, vec![0.5]).unwrap();
        let b = FuzzyMatrix::new(1, 1, vec![0.5]).unwrap();
        let g = max_c_product(&a, &b, goguen.conjunction()).unwrap();
        assert_eq!(g.get(0, 0), 0.25);
    }

    #[test]
    fn min_d_apply_reproduces_worked_recall() {
        let godel = builtin_family(FamilyName::Godel);
        let m = FuzzyMatrix::from_rows(&[
            vec![0.0, 0.8, 0.8, 0.8],
            vec![0.7, 0.0, 0.7, 0.5],
            vec![0.7, 0.7, 0.0, 0.7],
            vec![0.8, 0.8, 0.8, 0.0],
        ])
        .unwrap();
        let x = FuzzyVector::new(vec![0.4, 0.3, 0.8, 0.7]).unwrap();
        let out = min_d_apply(&m, &x, godel.disjunction().unwrap()).unwrap();
        assert_eq!(out.as_slice(), &[0.4, 0.3, 0.7, 0.7]);
    }

    #[test]
    fn combination_with_one_hot_identity_selects_the_vector() {
        let mems = memories();
        for name in FamilyName::DUAL_COMPLETE {
            let f = builtin_family(name);
            let e = f.left_identity_c().unwrap();
            let coeff = FuzzyVector::new(vec![e, 0.0, 0.0]).unwrap();
            let z = max_c_combination(&coeff, &mems, f.conjunction()).unwrap();
            assert_eq!(z, *mems.get(0), "{name}");

            let e_d = f.left_identity_d().unwrap();
            let coeff = FuzzyVector::new(vec![e_d, 1.0, 1.0]).unwrap();
            let z = min_d_combination(&coeff, &mems, f.disjunction().unwrap()).unwrap();
            assert_eq!(z, *mems.get(0), "{name}");
        }
    }

    #[test]
    fn godel_combination_matches_worked_values() {
        let godel = builtin_family(FamilyName::Godel);
        let mems = memories();
        let coeff = FuzzyVector::new(vec![1.0, 0.3, 0.3]).unwrap();
        let z = max_c_combination(&coeff, &mems, godel.conjunction()).unwrap();
        assert_eq!(z.as_slice(), &[0.4, 0.3, 0.7, 0.3]);

        let coeff = FuzzyVector::new(vec![0.8, 0.6, 0.8]).unwrap();
        let z = min_d_combination(&coeff, &mems, godel.disjunction().unwrap()).unwrap();
        assert_eq!(z.as_slice(), &[0.6, 0.7, 0.6, 0.8]);
    }

    #[test]
    fn compensatory_combination_matches_worked_values() {
        // Coefficients are the full-precision residuals of the first stored
        // vector against the set; the printed two-decimal expectations carry
        // a 0.005 tolerance.
        let comp = builtin_family(FamilyName::CompensatoryAnd);
        let mems = memories();
        let imp = comp.implication();
        let target = mems.get(0).clone();
        let coeff: Vec<f64> = (0..3)
            .map(|xi| {
                (0..4)
                    .map(|j| imp.eval(mems.get(xi)[j], target[j]))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        assert!((coeff[0] - 0.39).abs() < 0.005);
        assert!((coeff[1] - 0.06).abs() < 0.005);
        assert!(coeff[2] >= 0.23 && coeff[2] < 0.24);
        let coeff = FuzzyVector::new(coeff).unwrap();
        let z = max_c_combination(&coeff, &mems, comp.conjunction()).unwrap();
        let expected = [0.40, 0.27, 0.47, 0.20];
        for (zi, ei) in z.iter().zip(expected.iter()) {
            assert!((zi - ei).abs() <= 0.005, "{zi} vs {ei}");
        }
    }

    #[test]
    fn products_reject_mismatched_inner_dimension() {
        let godel = builtin_family(FamilyName::Godel);
        let a = FuzzyMatrix::new(2, 3, vec![0.1; 6]).unwrap();
        let b = FuzzyMatrix::new(2, 2, vec![0.1; 4]).unwrap();
        assert!(max_c_product(&a, &b, godel.conjunction()).is_err());
        assert!(min_d_product(&a, &b, godel.disjunction().unwrap()).is_err());
        let x = FuzzyVector::new(vec![0.5, 0.5]).unwrap();
        assert!(max_c_apply(&a, &x, godel.conjunction()).is_err());
    }

    #[test]
    fn counter_totals_for_square_apply() {
        // n x n times n x 1 with a branch-style disjunction: n^2 evaluations
        // and (2n - 1) n comparisons.
        let godel = builtin_family(FamilyName::Godel);
        let n = 6;
        let m = FuzzyMatrix::new(n, n, vec![0.5; n * n]).unwrap();
        let x = FuzzyVector::new(vec![0.5; n]).unwrap();
        let mut counter = OpCounter::new();
        min_d_apply_tallied(&m, &x, godel.disjunction().unwrap(), &mut counter).unwrap();
        assert_eq!(counter.fuzzy_op_evals, (n * n) as u64);
        assert_eq!(counter.comparisons, ((2 * n - 1) * n) as u64);
        assert_eq!(counter.float_ops, 0);
    }

    #[test]
    fn counter_totals_for_arithmetic_product() {
        // Arithmetic conjunction: only the fold comparisons are counted,
        // m k n evaluations and m (k - 1) n comparisons.
        let goguen = builtin_family(FamilyName::Goguen);
        let (m, k, n) = (3, 4, 5);
        let a = FuzzyMatrix::new(m, k, vec![0.5; m * k]).unwrap();
        let b = FuzzyMatrix::new(k, n, vec![0.5; k * n]).unwrap();
        let mut counter = OpCounter::new();
        max_c_product_counted(&a, &b, goguen.conjunction(), &mut counter).unwrap();
        assert_eq!(counter.fuzzy_op_evals, (m * k * n) as u64);
        assert_eq!(counter.comparisons, (m * (k - 1) * n) as u64);
    }

    #[test]
    fn counter_merge_accumulates() {
        let mut a = OpCounter {
            fuzzy_op_evals: 3,
            comparisons: 5,
            float_ops: 1,
        };
        let b = OpCounter {
            fuzzy_op_evals: 2,
            comparisons: 1,
            float_ops: 4,
        };
        a.merge(b);
        assert_eq!(a.fuzzy_op_evals, 5);
        assert_eq!(a.comparisons, 6);
        assert_eq!(a.float_ops, 5);
    }

    #[test]
    fn vector_constructors_validate() {
        assert!(FuzzyVector::new(vec![]).is_err());
        assert!(FuzzyVector::new(vec![0.5, 1.2]).is_err());
        assert!(FuzzyVector::new(vec![f64::NAN]).is_err());
        assert!(FuzzyMatrix::new(2, 2, vec![0.0; 3]).is_err());
        assert!(FuzzyMatrix::new(0, 2, vec![]).is_err());
        assert!(FundamentalMemorySet::from_rows(&[vec![0.1], vec![0.1, 0.2]]).is_err());
    }

    proptest! {
        #[test]
        fn max_c_product_is_monotone(
            data_a in proptest::collection::vec(0.0..=1.0f64, 6),
            data_b in proptest::collection::vec(0.0..=1.0f64, 6),
            bumps in proptest::collection::vec(0.0..=1.0f64, 6),
        ) {
            let godel = builtin_family(FamilyName::Godel);
            let a = FuzzyMatrix::new(2, 3, data_a).unwrap();
            let b = FuzzyMatrix::new(3, 2, data_b.clone()).unwrap();
            let bigger: Vec<f64> = data_b
                .iter()
                .zip(bumps.iter())
                .map(|(v, bump)| (v + bump).min(1.0))
                .collect();
            let b2 = FuzzyMatrix::new(3, 2, bigger).unwrap();
            let g1 = max_c_product(&a, &b, godel.conjunction()).unwrap();
            let g2 = max_c_product(&a, &b2, godel.conjunction()).unwrap();
            for (v1, v2) in g1.data().iter().zip(g2.data().iter()) {
                prop_assert!(v1 <= v2);
            }
        }

        #[test]
        fn min_d_product_is_monotone(
            data_a in proptest::collection::vec(0.0..=1.0f64, 6),
            data_b in proptest::collection::vec(0.0..=1.0f64, 6),
            bumps in proptest::collection::vec(0.0..=1.0f64, 6),
        ) {
            let godel = builtin_family(FamilyName::Godel);
            let a = FuzzyMatrix::new(2, 3, data_a).unwrap();
            let b = FuzzyMatrix::new(3, 2, data_b.clone()).unwrap();
            let bigger: Vec<f64> = data_b
                .iter()
                .zip(bumps.iter())
                .map(|(v, bump)| (v + bump).min(1.0))
                .collect();
            let b2 = FuzzyMatrix::new(3, 2, bigger).unwrap();
            let h1 = min_d_product(&a, &b, godel.disjunction().unwrap()).unwrap();
            let h2 = min_d_product(&a, &b2, godel.disjunction().unwrap()).unwrap();
            for (v1, v2) in h1.data().iter().zip(h2.data().iter()) {
                prop_assert!(v1 <= v2);
            }
        }
    }
}
