//! Projection autoassociative memories: recall projects the input onto the
//! lattice generated by the stored vectors instead of going through an
//! n x n weight matrix.
//!
//! The max-C kind computes coefficients lambda_xi = inf_j I(a_j^xi, x_j)
//! and returns the max-C combination sup_xi C(lambda_xi, a^xi); the min-D
//! kind is its order dual. The Zadeh kinds use crisp inclusion instead:
//! join every stored vector below the input (max), or meet every stored
//! vector above it (min), using comparisons only.

use crate::afmm::{Negated, Recall};
use crate::connectives::{builtin_family, ConnectiveFamily, FamilyName};
use crate::error::{Error, Result};
use crate::lattice::{
    max_c_combination_tallied, min_d_combination_tallied, FundamentalMemorySet, FuzzyVector,
    NoTally, OpCounter, Tally,
};

/// Which projection rule the memory recalls through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectionKind {
    MaxC,
    MinD,
    ZadehMax,
    ZadehMin,
}

impl ProjectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProjectionKind::MaxC => "max_c",
            ProjectionKind::MinD => "min_d",
            ProjectionKind::ZadehMax => "zadeh_max",
            ProjectionKind::ZadehMin => "zadeh_min",
        }
    }

    pub fn uses_family(self) -> bool {
        matches!(self, ProjectionKind::MaxC | ProjectionKind::MinD)
    }
}

/// How a recall was assembled: the per-memory coefficients, and for the
/// Zadeh kinds the 0-based indices of the stored vectors that passed the
/// inclusion test (their coefficients are exactly 1).
#[derive(Debug, Clone, PartialEq)]
pub struct RecallTrace {
    pub coefficients: Vec<f64>,
    pub index_set: Option<Vec<usize>>,
}

/// A projection memory over a fixed stored set.
#[derive(Debug, Clone)]
pub struct ProjectionMemory {
    kind: ProjectionKind,
    memories: FundamentalMemorySet,
    family: Option<ConnectiveFamily>,
    inclusion_tolerance: f64,
}

impl ProjectionMemory {
    /// Max-C kind. Any built-in family works here: the conjunctive side is
    /// all it needs, so even `compensatory_and` is accepted.
    pub fn max_c(memories: FundamentalMemorySet, family: FamilyName) -> Result<Self> {
        Ok(ProjectionMemory {
            kind: ProjectionKind::MaxC,
            memories,
            family: Some(builtin_family(family)),
            inclusion_tolerance: 0.0,
        })
    }

    /// Min-D kind; requires the disjunctive side of the family.
    pub fn min_d(memories: FundamentalMemorySet, family: FamilyName) -> Result<Self> {
        let family = builtin_family(family);
        if !family.is_dual_complete() {
            return Err(Error::Config(format!(
                "family `{}` has no disjunction, so it cannot drive a min-D projection",
                family.name()
            )));
        }
        Ok(ProjectionMemory {
            kind: ProjectionKind::MinD,
            memories,
            family: Some(family),
            inclusion_tolerance: 0.0,
        })
    }

    /// Zadeh join-of-included kind: comparisons only, no connectives.
    pub fn zadeh_max(memories: FundamentalMemorySet) -> Self {
        ProjectionMemory {
            kind: ProjectionKind::ZadehMax,
            memories,
            family: None,
            inclusion_tolerance: 0.0,
        }
    }

    /// Zadeh meet-of-covering kind, the order dual of [`zadeh_max`].
    ///
    /// [`zadeh_max`]: ProjectionMemory::zadeh_max
    pub fn zadeh_min(memories: FundamentalMemorySet) -> Self {
        ProjectionMemory {
            kind: ProjectionKind::ZadehMin,
            memories,
            family: None,
            inclusion_tolerance: 0.0,
        }
    }

    /// Rebuilds a memory from serialized parts.
    pub fn from_parts(
        kind: ProjectionKind,
        memories: FundamentalMemorySet,
        family: Option<FamilyName>,
        inclusion_tolerance: f64,
    ) -> Result<Self> {
        let mem = match (kind, family) {
            (ProjectionKind::MaxC, Some(f)) => ProjectionMemory::max_c(memories, f)?,
            (ProjectionKind::MinD, Some(f)) => ProjectionMemory::min_d(memories, f)?,
            (ProjectionKind::ZadehMax, None) => ProjectionMemory::zadeh_max(memories),
            (ProjectionKind::ZadehMin, None) => ProjectionMemory::zadeh_min(memories),
            (k, f) => {
                return Err(Error::Config(format!(
                    "projection kind `{}` {} a family",
                    k.as_str(),
                    if f.is_some() { "does not take" } else { "requires" },
                )))
            }
        };
        if inclusion_tolerance == 0.0 {
            Ok(mem)
        } else {
            mem.with_inclusion_tolerance(inclusion_tolerance)
        }
    }

    /// Loosens the Zadeh inclusion test to `a_j <= x_j + tol` (dually
    /// `a_j >= x_j - tol`). Only meaningful for the Zadeh kinds.
    pub fn with_inclusion_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !matches!(
            self.kind,
            ProjectionKind::ZadehMax | ProjectionKind::ZadehMin
        ) {
            return Err(Error::Config(
                "inclusion tolerance only applies to the Zadeh kinds".into(),
            ));
        }
        if !(0.0..=1.0).contains(&tolerance) || tolerance.is_nan() {
            return Err(Error::Config(format!(
                "inclusion tolerance {tolerance} outside [0, 1]"
            )));
        }
        self.inclusion_tolerance = tolerance;
        Ok(self)
    }

    pub fn kind(&self) -> ProjectionKind {
        self.kind
    }

    pub fn memories(&self) -> &FundamentalMemorySet {
        &self.memories
    }

    pub fn family(&self) -> Option<&ConnectiveFamily> {
        self.family.as_ref()
    }

    pub fn inclusion_tolerance(&self) -> f64 {
        self.inclusion_tolerance
    }

    fn recall_tallied<T: Tally>(
        &self,
        x: &FuzzyVector,
        tally: &mut T,
    ) -> Result<(FuzzyVector, RecallTrace)> {
        let n = self.memories.dimension();
        if x.len() != n {
            return Err(Error::dimension(n, x.len(), "projection recall input"));
        }
        let k = self.memories.len();
        match self.kind {
            ProjectionKind::MaxC => {
                let family = self.family.as_ref().expect("max_c stores a family");
                let imp = family.implication();
                let mut lambda = Vec::with_capacity(k);
                for a in self.memories.iter() {
                    let mut acc = imp.eval(a[0], x[0]);
                    for j in 1..n {
                        acc = acc.min(imp.eval(a[j], x[j]));
                    }
                    lambda.push(acc);
                }
                tally.fuzzy_evals((n * k) as u64);
                tally.comparisons(
                    (n * k) as u64 * imp.comparisons_per_eval() + (k * (n - 1)) as u64,
                );
                let coeff = FuzzyVector::new(lambda.clone())?;
                let out =
                    max_c_combination_tallied(&coeff, &self.memories, family.conjunction(), tally)?;
                Ok((
                    out,
                    RecallTrace {
                        coefficients: lambda,
                        index_set: None,
                    },
                ))
            }
            ProjectionKind::MinD => {
                let family = self.family.as_ref().expect("min_d stores a family");
                let coimp = family.coimplication().expect("dual-complete family");
                let mut theta = Vec::with_capacity(k);
                for a in self.memories.iter() {
                    let mut acc = coimp.eval(a[0], x[0]);
                    for j in 1..n {
                        acc = acc.max(coimp.eval(a[j], x[j]));
                    }
                    theta.push(acc);
                }
                tally.fuzzy_evals((n * k) as u64);
                tally.comparisons(
                    (n * k) as u64 * coimp.comparisons_per_eval() + (k * (n - 1)) as u64,
                );
                let coeff = FuzzyVector::new(theta.clone())?;
                let out = min_d_combination_tallied(
                    &coeff,
                    &self.memories,
                    family.disjunction().expect("dual-complete family"),
                    tally,
                )?;
                Ok((
                    out,
                    RecallTrace {
                        coefficients: theta,
                        index_set: None,
                    },
                ))
            }
            ProjectionKind::ZadehMax => {
                let tol = self.inclusion_tolerance;
                let mut included = Vec::new();
                for (xi, a) in self.memories.iter().enumerate() {
                    let mut inside = true;
                    for j in 0..n {
                        inside &= a[j] <= x[j] + tol;
                    }
                    if inside {
                        included.push(xi);
                    }
                }
                tally.comparisons((k * n) as u64);
                let mut out = vec![0.0f64; n];
                for (rank, &xi) in included.iter().enumerate() {
                    let a = self.memories.get(xi);
                    for j in 0..n {
                        out[j] = out[j].max(a[j]);
                    }
                    if rank > 0 {
                        tally.comparisons(n as u64);
                    }
                }
                let coefficients = (0..k)
                    .map(|xi| if included.contains(&xi) { 1.0 } else { 0.0 })
                    .collect();
                Ok((
                    FuzzyVector::new(out)?,
                    RecallTrace {
                        coefficients,
                        index_set: Some(included),
                    },
                ))
            }
            ProjectionKind::ZadehMin => {
                let tol = self.inclusion_tolerance;
                let mut included = Vec::new();
                for (xi, a) in self.memories.iter().enumerate() {
                    let mut inside = true;
                    for j in 0..n {
                        inside &= a[j] >= x[j] - tol;
                    }
                    if inside {
                        included.push(xi);
                    }
                }
                tally.comparisons((k * n) as u64);
                let mut out = vec![1.0f64; n];
                for (rank, &xi) in included.iter().enumerate() {
                    let a = self.memories.get(xi);
                    for j in 0..n {
                        out[j] = out[j].min(a[j]);
                    }
                    if rank > 0 {
                        tally.comparisons(n as u64);
                    }
                }
                let coefficients = (0..k)
                    .map(|xi| if included.contains(&xi) { 1.0 } else { 0.0 })
                    .collect();
                Ok((
                    FuzzyVector::new(out)?,
                    RecallTrace {
                        coefficients,
                        index_set: Some(included),
                    },
                ))
            }
        }
    }

    /// Recall together with the coefficient trace.
    pub fn recall_traced(&self, x: &FuzzyVector) -> Result<(FuzzyVector, RecallTrace)> {
        self.recall_tallied(x, &mut NoTally)
    }

    /// Counted variant of [`recall_traced`].
    ///
    /// [`recall_traced`]: ProjectionMemory::recall_traced
    pub fn recall_traced_counted(
        &self,
        x: &FuzzyVector,
        counter: &mut OpCounter,
    ) -> Result<(FuzzyVector, RecallTrace)> {
        self.recall_tallied(x, counter)
    }

    /// The strong-negation conjugate. Requires a self-dualizable rule: any
    /// Zadeh kind, or a max-C/min-D kind over a dual-complete family.
    pub fn negation(&self) -> Result<Negated<ProjectionMemory>> {
        if let Some(family) = &self.family {
            if !family.is_dual_complete() {
                return Err(Error::Config(format!(
                    "family `{}` has no strong-negation dual",
                    family.name()
                )));
            }
        }
        Ok(Negated::wrap(self.clone()))
    }
}

impl Recall for ProjectionMemory {
    fn dimension(&self) -> usize {
        self.memories.dimension()
    }

    fn recall(&self, x: &FuzzyVector) -> Result<FuzzyVector> {
        Ok(self.recall_traced(x)?.0)
    }
}
