//! Distributed autoassociative memories: an n x n weight matrix trained by
//! adjunction, recalled through a max-C or min-D product.
//!
//! Training stores w_ij = inf_xi I(a_j^xi, a_i^xi) for the max-C kind and
//! m_ij = sup_xi J(a_j^xi, a_i^xi) for the min-D kind; with an adjoint
//! family both kinds fix every stored vector, and min-D recall yields the
//! largest fixed point below the input (dually for max-C).

use crate::connectives::{builtin_family, ConnectiveFamily, FamilyName};
use crate::error::{Error, Result};
use crate::lattice::{
    max_c_apply_tallied, min_d_apply_tallied, FundamentalMemorySet, FuzzyMatrix, FuzzyVector,
    NoTally, OpCounter, Tally,
};

/// Anything that maps input vectors to recalled vectors of the same
/// dimension.
pub trait Recall {
    fn dimension(&self) -> usize;
    fn recall(&self, x: &FuzzyVector) -> Result<FuzzyVector>;
}

/// Which lattice product the memory recalls through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistributedKind {
    MaxC,
    MinD,
}

impl DistributedKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DistributedKind::MaxC => "max_c",
            DistributedKind::MinD => "min_d",
        }
    }
}

/// A trained weight-matrix memory.
#[derive(Debug, Clone)]
pub struct DistributedMemory {
    kind: DistributedKind,
    family: ConnectiveFamily,
    weights: FuzzyMatrix,
}

impl DistributedMemory {
    /// Trains by adjunction on the stored set. Rejects `compensatory_and`:
    /// it has no co-implication for the min-D kind and no left identity, so
    /// neither kind comes with the fixed-point guarantees training relies on.
    pub fn train_fla(
        memories: &FundamentalMemorySet,
        family: FamilyName,
        kind: DistributedKind,
    ) -> Result<Self> {
        let family = builtin_family(family);
        if family.left_identity_c().is_none() || !family.is_dual_complete() {
            return Err(Error::Config(format!(
                "family `{}` cannot train a distributed memory (needs a dual-complete family with a left identity)",
                family.name()
            )));
        }
        let n = memories.dimension();
        let mut data = Vec::with_capacity(n * n);
        match kind {
            DistributedKind::MaxC => {
                let imp = family.implication();
                for i in 0..n {
                    for j in 0..n {
                        let w = memories
                            .iter()
                            .map(|a| imp.eval(a[j], a[i]))
                            .fold(f64::INFINITY, f64::min);
                        data.push(w);
                    }
                }
            }
            DistributedKind::MinD => {
                let coimp = family.coimplication().expect("dual-complete family");
                for i in 0..n {
                    for j in 0..n {
                        let m = memories
                            .iter()
                            .map(|a| coimp.eval(a[j], a[i]))
                            .fold(f64::NEG_INFINITY, f64::max);
                        data.push(m);
                    }
                }
            }
        }
        Ok(DistributedMemory {
            kind,
            family,
            weights: FuzzyMatrix::new(n, n, data)?,
        })
    }

    /// Builds a memory from an explicit weight matrix (used when loading a
    /// serialized model). The matrix must be square.
    pub fn from_weights(
        weights: FuzzyMatrix,
        family: FamilyName,
        kind: DistributedKind,
    ) -> Result<Self> {
        if weights.rows() != weights.cols() {
            return Err(Error::dimension(
                weights.rows(),
                weights.cols(),
                "distributed weights",
            ));
        }
        let family = builtin_family(family);
        if !family.is_dual_complete() {
            return Err(Error::Config(format!(
                "family `{}` cannot drive a distributed memory",
                family.name()
            )));
        }
        Ok(DistributedMemory {
            kind,
            family,
            weights,
        })
    }

    pub fn kind(&self) -> DistributedKind {
        self.kind
    }

    pub fn family(&self) -> &ConnectiveFamily {
        &self.family
    }

    pub fn weights(&self) -> &FuzzyMatrix {
        &self.weights
    }

    fn recall_tallied<T: Tally>(&self, x: &FuzzyVector, tally: &mut T) -> Result<FuzzyVector> {
        match self.kind {
            DistributedKind::MaxC => {
                max_c_apply_tallied(&self.weights, x, self.family.conjunction(), tally)
            }
            DistributedKind::MinD => min_d_apply_tallied(
                &self.weights,
                x,
                self.family.disjunction().expect("dual-complete family"),
                tally,
            ),
        }
    }

    pub fn recall(&self, x: &FuzzyVector) -> Result<FuzzyVector> {
        self.recall_tallied(x, &mut NoTally)
    }

    pub fn recall_counted(&self, x: &FuzzyVector, counter: &mut OpCounter) -> Result<FuzzyVector> {
        self.recall_tallied(x, counter)
    }

    /// The strong-negation conjugate x -> 1 - recall(1 - x). For an adjoint
    /// dual-complete family this behaves exactly like the opposite-kind
    /// memory trained on the complemented set.
    pub fn negation(&self) -> Result<Negated<DistributedMemory>> {
        // Training already guarantees dual completeness; keep the check for
        // memories built from explicit weights.
        if !self.family.is_dual_complete() {
            return Err(Error::Config(format!(
                "family `{}` has no strong-negation dual",
                self.family.name()
            )));
        }
        Ok(Negated {
            inner: self.clone(),
        })
    }
}

impl Recall for DistributedMemory {
    fn dimension(&self) -> usize {
        self.weights.rows()
    }

    fn recall(&self, x: &FuzzyVector) -> Result<FuzzyVector> {
        DistributedMemory::recall(self, x)
    }
}

/// x -> 1 - inner.recall(1 - x).
#[derive(Debug, Clone)]
pub struct Negated<M> {
    inner: M,
}

impl<M: Recall> Negated<M> {
    // Gatekeeping lives on the concrete types; they call this once the
    // family is known to dualize.
    pub(crate) fn wrap(inner: M) -> Negated<M> {
        Negated { inner }
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    /// Negating twice recovers the inner operator.
    pub fn negation(&self) -> Negated<Negated<M>>
    where
        M: Clone,
    {
        Negated {
            inner: self.clone(),
        }
    }
}

impl<M: Recall> Recall for Negated<M> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn recall(&self, x: &FuzzyVector) -> Result<FuzzyVector> {
        Ok(self.inner.recall(&x.complement())?.complement())
    }
}
