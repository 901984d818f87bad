//! Similarity measures and the noise-masking wrapper.
//!
//! Mixed noise (some components pushed up, some down) defeats memories that
//! only tolerate one polarity. Masking first picks the stored vector most
//! similar to the input, then joins (dilative mask, x v a^eta) or meets
//! (erosive mask, x ^ a^eta) it with the input so the surviving corruption
//! has a single polarity, and only then recalls.
//!
//! Polarity is derived from the inner memory, pairing each mask with the
//! recall rule that absorbs it: a dilative mask raises the input, so it
//! pairs with rules that project from above (max-C and Zadeh-max
//! projections, which open the input downward, and min-D distributed
//! recall, whose output is the largest fixed point below the input); the
//! erosive mask pairs with their order duals.
//!
//! # Float-operation counting
//!
//! Counted recalls charge similarity work to `OpCounter::float_ops`: one
//! Hamming evaluation on length-n vectors costs 2n + 1 (a subtraction and
//! an accumulation per component, plus the final normalization), so the
//! selection phase over k stored vectors costs (2n+1)k. The NMSE-compare
//! strategy charges 5n + 1 per NMSE term (difference, square, and
//! accumulation per component for the numerator, square and accumulation
//! for the denominator, one division).

use std::fmt;
use std::sync::Arc;

use crate::afmm::{DistributedKind, DistributedMemory, Recall};
use crate::classifier::nmse;
use crate::connectives::UnitScalar;
use crate::error::{Error, Result};
use crate::lattice::{FundamentalMemorySet, FuzzyVector, NoTally, OpCounter, Tally};
use crate::pafmm::{ProjectionKind, ProjectionMemory};

type SimilarityFn = dyn Fn(&FuzzyVector, &FuzzyVector) -> Result<UnitScalar> + Send + Sync;

/// A symmetric measure of agreement between two vectors, 1 on identical
/// inputs.
#[derive(Clone)]
pub enum SimilarityMeasure {
    /// 1 - mean absolute difference.
    Hamming,
    /// A caller-supplied measure; not serializable.
    Custom {
        name: String,
        func: Arc<SimilarityFn>,
    },
}

impl SimilarityMeasure {
    pub fn name(&self) -> &str {
        match self {
            SimilarityMeasure::Hamming => "hamming",
            SimilarityMeasure::Custom { name, .. } => name,
        }
    }

    /// Looks a builtin measure up by name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "hamming" => Ok(SimilarityMeasure::Hamming),
            other => Err(Error::NotFound(format!("similarity measure `{other}`"))),
        }
    }

    pub fn eval(&self, a: &FuzzyVector, b: &FuzzyVector) -> Result<UnitScalar> {
        self.eval_tallied(a, b, &mut NoTally)
    }

    fn eval_tallied<T: Tally>(
        &self,
        a: &FuzzyVector,
        b: &FuzzyVector,
        tally: &mut T,
    ) -> Result<UnitScalar> {
        match self {
            SimilarityMeasure::Hamming => {
                tally.float_ops(2 * a.len() as u64 + 1);
                hamming_similarity(a, b)
            }
            SimilarityMeasure::Custom { func, .. } => func(a, b),
        }
    }
}

impl fmt::Debug for SimilarityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimilarityMeasure")
            .field("name", &self.name())
            .finish()
    }
}

/// sigma_H(a, b) = 1 - (1/n) sum |a_i - b_i|.
pub fn hamming_similarity(a: &FuzzyVector, b: &FuzzyVector) -> Result<UnitScalar> {
    if a.len() != b.len() {
        return Err(Error::dimension(a.len(), b.len(), "similarity operands"));
    }
    let sum: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).sum();
    Ok(UnitScalar::clamped(1.0 - sum / a.len() as f64))
}

/// Which way the mask pushes the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaskPolarity {
    /// x v a^eta: raises the input.
    Dilative,
    /// x ^ a^eta: lowers the input.
    Erosive,
}

impl MaskPolarity {
    pub fn as_str(self) -> &'static str {
        match self {
            MaskPolarity::Dilative => "dilative",
            MaskPolarity::Erosive => "erosive",
        }
    }
}

/// How the masking vector is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaskStrategy {
    /// Highest similarity to the raw input, smallest index on ties.
    MostSimilar,
    /// Smallest nmse(mask, stored) + nmse(mask, input) over the candidate
    /// masked vectors (the compare-both variant), smallest index on ties.
    NmseCompare,
}

impl MaskStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            MaskStrategy::MostSimilar => "similarity",
            MaskStrategy::NmseCompare => "nmse-compare",
        }
    }
}

/// The memory a mask wraps.
#[derive(Debug, Clone)]
pub enum MaskedInner {
    Distributed(DistributedMemory),
    Projection(ProjectionMemory),
}

/// A memory that masks its input before recalling.
#[derive(Debug, Clone)]
pub struct MaskedMemory {
    inner: MaskedInner,
    memories: FundamentalMemorySet,
    similarity: SimilarityMeasure,
    strategy: MaskStrategy,
    polarity: MaskPolarity,
}

impl MaskedMemory {
    /// Wraps a projection memory; the mask polarity follows its kind.
    pub fn from_projection(
        inner: ProjectionMemory,
        similarity: SimilarityMeasure,
        strategy: MaskStrategy,
    ) -> Result<Self> {
        let polarity = match inner.kind() {
            ProjectionKind::MaxC | ProjectionKind::ZadehMax => MaskPolarity::Dilative,
            ProjectionKind::MinD | ProjectionKind::ZadehMin => MaskPolarity::Erosive,
        };
        let memories = inner.memories().clone();
        Ok(MaskedMemory {
            inner: MaskedInner::Projection(inner),
            memories,
            similarity,
            strategy,
            polarity,
        })
    }

    /// Wraps a distributed memory. The stored set must be supplied (the
    /// weight matrix does not retain it) and match the memory's dimension.
    /// Min-D recall settles on the largest fixed point below the input, so
    /// it absorbs a dilative mask; max-C recall takes the erosive one.
    pub fn from_distributed(
        inner: DistributedMemory,
        memories: FundamentalMemorySet,
        similarity: SimilarityMeasure,
        strategy: MaskStrategy,
    ) -> Result<Self> {
        if memories.dimension() != inner.dimension() {
            return Err(Error::dimension(
                inner.dimension(),
                memories.dimension(),
                "masking memory set",
            ));
        }
        let polarity = match inner.kind() {
            DistributedKind::MinD => MaskPolarity::Dilative,
            DistributedKind::MaxC => MaskPolarity::Erosive,
        };
        Ok(MaskedMemory {
            inner: MaskedInner::Distributed(inner),
            memories,
            similarity,
            strategy,
            polarity,
        })
    }

    pub fn inner(&self) -> &MaskedInner {
        &self.inner
    }

    pub fn memories(&self) -> &FundamentalMemorySet {
        &self.memories
    }

    pub fn similarity(&self) -> &SimilarityMeasure {
        &self.similarity
    }

    pub fn strategy(&self) -> MaskStrategy {
        self.strategy
    }

    pub fn polarity(&self) -> MaskPolarity {
        self.polarity
    }

    /// The 0-based index of the stored vector this input would be masked
    /// with.
    pub fn select_mask_index(&self, x: &FuzzyVector) -> Result<usize> {
        self.select_tallied(x, &mut NoTally)
    }

    fn select_tallied<T: Tally>(&self, x: &FuzzyVector, tally: &mut T) -> Result<usize> {
        match self.strategy {
            MaskStrategy::MostSimilar => {
                select_mask_index_tallied(x, &self.memories, &self.similarity, tally)
            }
            MaskStrategy::NmseCompare => {
                let mut best = 0usize;
                let mut best_score = f64::INFINITY;
                for (xi, a) in self.memories.iter().enumerate() {
                    let mask = self.mask_with(x, a)?;
                    tally.comparisons(x.len() as u64);
                    let score =
                        nmse_or_extreme(&mask, a, tally) + nmse_or_extreme(&mask, x, tally);
                    if score < best_score {
                        best = xi;
                        best_score = score;
                    }
                }
                Ok(best)
            }
        }
    }

    fn mask_with(&self, x: &FuzzyVector, a: &FuzzyVector) -> Result<FuzzyVector> {
        match self.polarity {
            MaskPolarity::Dilative => x.join(a),
            MaskPolarity::Erosive => x.meet(a),
        }
    }

    fn recall_tallied<T: Tally>(
        &self,
        x: &FuzzyVector,
        tally: &mut T,
    ) -> Result<(FuzzyVector, usize)> {
        if x.len() != self.memories.dimension() {
            return Err(Error::dimension(
                self.memories.dimension(),
                x.len(),
                "masked recall input",
            ));
        }
        let eta = self.select_tallied(x, tally)?;
        let masked = self.mask_with(x, self.memories.get(eta))?;
        tally.comparisons(x.len() as u64);
        let out = match &self.inner {
            MaskedInner::Distributed(mem) => {
                let mut counter = OpCounter::new();
                let out = mem.recall_counted(&masked, &mut counter)?;
                replay(counter, tally);
                out
            }
            MaskedInner::Projection(mem) => {
                let mut counter = OpCounter::new();
                let (out, _) = mem.recall_traced_counted(&masked, &mut counter)?;
                replay(counter, tally);
                out
            }
        };
        Ok((out, eta))
    }

    /// Recall together with the chosen mask index.
    pub fn recall_with_mask(&self, x: &FuzzyVector) -> Result<(FuzzyVector, usize)> {
        self.recall_tallied(x, &mut NoTally)
    }

    /// Counted variant of [`recall_with_mask`].
    ///
    /// [`recall_with_mask`]: MaskedMemory::recall_with_mask
    pub fn recall_with_mask_counted(
        &self,
        x: &FuzzyVector,
        counter: &mut OpCounter,
    ) -> Result<(FuzzyVector, usize)> {
        self.recall_tallied(x, counter)
    }
}

impl Recall for MaskedMemory {
    fn dimension(&self) -> usize {
        self.memories.dimension()
    }

    fn recall(&self, x: &FuzzyVector) -> Result<FuzzyVector> {
        Ok(self.recall_with_mask(x)?.0)
    }
}

/// The smallest 0-based index maximizing sigma(x, a^xi) over the stored
/// set.
pub fn select_mask_index(
    x: &FuzzyVector,
    memories: &FundamentalMemorySet,
    similarity: &SimilarityMeasure,
) -> Result<usize> {
    select_mask_index_tallied(x, memories, similarity, &mut NoTally)
}

fn select_mask_index_tallied<T: Tally>(
    x: &FuzzyVector,
    memories: &FundamentalMemorySet,
    similarity: &SimilarityMeasure,
    tally: &mut T,
) -> Result<usize> {
    let mut best = 0usize;
    let mut best_sigma = f64::NEG_INFINITY;
    for (xi, a) in memories.iter().enumerate() {
        let sigma = similarity.eval_tallied(x, a, tally)?.value();
        if sigma > best_sigma {
            best = xi;
            best_sigma = sigma;
        }
    }
    Ok(best)
}

// NMSE with the zero-reference convention the compare-both strategy needs:
// a zero reference scores 0 when the vectors agree and worst otherwise.
fn nmse_or_extreme<T: Tally>(x: &FuzzyVector, reference: &FuzzyVector, tally: &mut T) -> f64 {
    tally.float_ops(5 * x.len() as u64 + 1);
    match nmse(x, reference) {
        Ok(v) => v,
        Err(_) => {
            if x == reference {
                0.0
            } else {
                f64::INFINITY
            }
        }
    }
}

fn replay<T: Tally>(counter: OpCounter, tally: &mut T) {
    tally.fuzzy_evals(counter.fuzzy_op_evals);
    tally.comparisons(counter.comparisons);
    tally.float_ops(counter.float_ops);
}
