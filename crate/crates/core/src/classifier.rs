//! One-memory-per-class classification.
//!
//! A bank stores one autoassociative memory per class. To classify, every
//! class memory recalls the input and the input is assigned to the class
//! whose recalled vector is most similar to it; on ties the class that
//! appeared first in training wins.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use serde_json::json;

use crate::afmm::{DistributedKind, DistributedMemory};
use crate::connectives::FamilyName;
use crate::error::{Error, Result};
use crate::lattice::{FundamentalMemorySet, FuzzyVector};
use crate::masking::{MaskStrategy, MaskedMemory, SimilarityMeasure};
use crate::model::MemoryModel;
use crate::pafmm::ProjectionMemory;

/// ||x - a||^2 / ||a||^2.
pub fn nmse(x: &FuzzyVector, a: &FuzzyVector) -> Result<f64> {
    if x.len() != a.len() {
        return Err(Error::dimension(a.len(), x.len(), "NMSE operands"));
    }
    let denom: f64 = a.iter().map(|v| v * v).sum();
    if denom == 0.0 {
        return Err(Error::DivisionByZero);
    }
    let num: f64 = x
        .iter()
        .zip(a.iter())
        .map(|(p, q)| (p - q) * (p - q))
        .sum();
    Ok(num / denom)
}

/// The memory architecture a bank trains per class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    DistributedMaxC,
    DistributedMinD,
    ProjectionMaxC,
    ProjectionMinD,
    ZadehMax,
    ZadehMin,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::DistributedMaxC,
        ModelKind::DistributedMinD,
        ModelKind::ProjectionMaxC,
        ModelKind::ProjectionMinD,
        ModelKind::ZadehMax,
        ModelKind::ZadehMin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::DistributedMaxC => "distributed-max-c",
            ModelKind::DistributedMinD => "distributed-min-d",
            ModelKind::ProjectionMaxC => "projection-max-c",
            ModelKind::ProjectionMinD => "projection-min-d",
            ModelKind::ZadehMax => "zadeh-max",
            ModelKind::ZadehMin => "zadeh-min",
        }
    }

    pub fn needs_family(self) -> bool {
        !matches!(self, ModelKind::ZadehMax | ModelKind::ZadehMin)
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s || k.as_str().replace('-', "_") == s)
            .ok_or_else(|| Error::NotFound(format!("model kind `{s}`")))
    }
}

/// Everything needed to train one class memory.
#[derive(Debug, Clone)]
pub struct ModelConfig {
    pub kind: ModelKind,
    pub family: Option<FamilyName>,
    pub masked: bool,
    pub mask_strategy: MaskStrategy,
    pub similarity: SimilarityMeasure,
    pub inclusion_tolerance: f64,
}

impl Default for ModelConfig {
    /// The recommended configuration: masked Zadeh-max recall.
    fn default() -> Self {
        ModelConfig {
            kind: ModelKind::ZadehMax,
            family: None,
            masked: true,
            mask_strategy: MaskStrategy::MostSimilar,
            similarity: SimilarityMeasure::Hamming,
            inclusion_tolerance: 0.0,
        }
    }
}

impl ModelConfig {
    /// Trains a single memory on one stored set.
    pub fn build(&self, memories: FundamentalMemorySet) -> Result<MemoryModel> {
        if self.kind.needs_family() && self.family.is_none() {
            return Err(Error::Config(format!(
                "model kind `{}` requires a connective family",
                self.kind.as_str()
            )));
        }
        if !self.kind.needs_family() && self.family.is_some() {
            return Err(Error::Config(format!(
                "model kind `{}` does not take a connective family",
                self.kind.as_str()
            )));
        }
        if self.inclusion_tolerance != 0.0 && !matches!(self.kind, ModelKind::ZadehMax | ModelKind::ZadehMin)
        {
            return Err(Error::Config(
                "inclusion tolerance only applies to the Zadeh kinds".into(),
            ));
        }
        let model = match self.kind {
            ModelKind::DistributedMaxC | ModelKind::DistributedMinD => {
                let kind = if self.kind == ModelKind::DistributedMaxC {
                    DistributedKind::MaxC
                } else {
                    DistributedKind::MinD
                };
                let inner =
                    DistributedMemory::train_fla(&memories, self.family.unwrap(), kind)?;
                if self.masked {
                    MemoryModel::Masked(MaskedMemory::from_distributed(
                        inner,
                        memories,
                        self.similarity.clone(),
                        self.mask_strategy,
                    )?)
                } else {
                    MemoryModel::Distributed(inner)
                }
            }
            _ => {
                let inner = match self.kind {
                    ModelKind::ProjectionMaxC => {
                        ProjectionMemory::max_c(memories, self.family.unwrap())?
                    }
                    ModelKind::ProjectionMinD => {
                        ProjectionMemory::min_d(memories, self.family.unwrap())?
                    }
                    ModelKind::ZadehMax => ProjectionMemory::zadeh_max(memories),
                    ModelKind::ZadehMin => ProjectionMemory::zadeh_min(memories),
                    _ => unreachable!("distributed kinds handled above"),
                };
                let inner = if self.inclusion_tolerance != 0.0 {
                    inner.with_inclusion_tolerance(self.inclusion_tolerance)?
                } else {
                    inner
                };
                if self.masked {
                    MemoryModel::Masked(MaskedMemory::from_projection(
                        inner,
                        self.similarity.clone(),
                        self.mask_strategy,
                    )?)
                } else {
                    MemoryModel::Projection(inner)
                }
            }
        };
        Ok(model)
    }
}

/// A classification outcome: the winning label and the per-class
/// similarity scores in bank order.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub label: String,
    pub scores: Vec<f64>,
}

/// One trained memory per class, in first-appearance order.
#[derive(Debug, Clone)]
pub struct MemoryBank {
    classes: Vec<(String, MemoryModel)>,
    similarity: SimilarityMeasure,
}

impl MemoryBank {
    pub fn new(
        classes: Vec<(String, MemoryModel)>,
        similarity: SimilarityMeasure,
    ) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Config("a memory bank needs at least one class".into()));
        }
        let mut seen = HashSet::new();
        for (label, _) in &classes {
            if !seen.insert(label.clone()) {
                return Err(Error::Config(format!("duplicate class label `{label}`")));
            }
        }
        let n = classes[0].1.dimension();
        for (label, model) in &classes {
            if model.dimension() != n {
                return Err(Error::Config(format!(
                    "class `{label}` has dimension {} but the bank uses {n}",
                    model.dimension()
                )));
            }
        }
        Ok(MemoryBank {
            classes,
            similarity,
        })
    }

    /// Groups the dataset by label (first-appearance order) and trains one
    /// memory per class.
    pub fn build(dataset: &[(String, FuzzyVector)], config: &ModelConfig) -> Result<Self> {
        if dataset.is_empty() {
            return Err(Error::Config("cannot build a bank from an empty dataset".into()));
        }
        let mut order: Vec<String> = Vec::new();
        let mut groups: Vec<Vec<FuzzyVector>> = Vec::new();
        for (label, vector) in dataset {
            match order.iter().position(|l| l == label) {
                Some(i) => groups[i].push(vector.clone()),
                None => {
                    order.push(label.clone());
                    groups.push(vec![vector.clone()]);
                }
            }
        }
        let mut classes = Vec::with_capacity(order.len());
        for (label, vectors) in order.into_iter().zip(groups) {
            let memories = FundamentalMemorySet::new(vectors)?;
            classes.push((label, config.build(memories)?));
        }
        MemoryBank::new(classes, config.similarity.clone())
    }

    pub fn classes(&self) -> &[(String, MemoryModel)] {
        &self.classes
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(|(l, _)| l.as_str())
    }

    pub fn similarity(&self) -> &SimilarityMeasure {
        &self.similarity
    }

    pub fn dimension(&self) -> usize {
        self.classes[0].1.dimension()
    }

    /// Scores every class by the similarity between the input and that
    /// class's recalled vector; the first class attaining the maximum wins.
    pub fn classify(&self, x: &FuzzyVector) -> Result<Classification> {
        let mut scores = Vec::with_capacity(self.classes.len());
        let mut best = 0usize;
        for (i, (_, model)) in self.classes.iter().enumerate() {
            let recalled = model.recall(x)?;
            let sigma = self.similarity.eval(x, &recalled)?.value();
            if sigma > scores.get(best).copied().unwrap_or(f64::NEG_INFINITY) {
                best = i;
            }
            scores.push(sigma);
        }
        Ok(Classification {
            label: self.classes[best].0.clone(),
            scores,
        })
    }

    /// Classifies a labeled test set and aggregates recognition rates.
    pub fn evaluate(&self, test_set: &[(String, FuzzyVector)]) -> Result<EvalReport> {
        if test_set.is_empty() {
            return Err(Error::Config("cannot evaluate an empty test set".into()));
        }
        let labels: Vec<String> = self.classes.iter().map(|(l, _)| l.clone()).collect();
        let c = labels.len();
        let mut confusion = vec![vec![0u64; c]; c];
        let start = Instant::now();
        for (truth, x) in test_set {
            let row = labels
                .iter()
                .position(|l| l == truth)
                .ok_or_else(|| Error::NotFound(format!("test label `{truth}` not in bank")))?;
            let outcome = self.classify(x)?;
            let col = labels
                .iter()
                .position(|l| *l == outcome.label)
                .expect("classify returns a bank label");
            confusion[row][col] += 1;
        }
        let elapsed = start.elapsed();
        let correct: u64 = (0..c).map(|i| confusion[i][i]).sum();
        let overall_rr = correct as f64 / test_set.len() as f64;
        Ok(EvalReport {
            labels,
            confusion,
            overall_rr,
            elapsed,
        })
    }
}

/// Recognition rates and the confusion matrix from one evaluation run.
#[derive(Debug, Clone)]
pub struct EvalReport {
    /// Class labels in bank order.
    pub labels: Vec<String>,
    /// Counts indexed by [true class][predicted class].
    pub confusion: Vec<Vec<u64>>,
    pub overall_rr: f64,
    pub elapsed: Duration,
}

impl EvalReport {
    /// Per-class recognition rates in bank order; classes without test
    /// vectors report a rate of 0 over 0.
    pub fn per_class_rr(&self) -> Vec<(String, f64)> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, label)| {
                let total: u64 = self.confusion[i].iter().sum();
                let rate = if total == 0 {
                    0.0
                } else {
                    self.confusion[i][i] as f64 / total as f64
                };
                (label.clone(), rate)
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes: Vec<serde_json::Value> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, label)| {
                let total: u64 = self.confusion[i].iter().sum();
                json!({
                    "label": label,
                    "total": total,
                    "correct": self.confusion[i][i],
                })
            })
            .collect();
        json!({
            "overall_rr": self.overall_rr,
            "elapsed_seconds": self.elapsed.as_secs_f64(),
            "classes": classes,
            "labels": self.labels,
            "confusion": self.confusion,
        })
    }

    /// One row per class plus an `_overall` row.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "label,total,correct,recognition_rate")?;
        let mut total_all = 0u64;
        let mut correct_all = 0u64;
        for (i, label) in self.labels.iter().enumerate() {
            let total: u64 = self.confusion[i].iter().sum();
            let correct = self.confusion[i][i];
            total_all += total;
            correct_all += correct;
            let rate = if total == 0 {
                0.0
            } else {
                correct as f64 / total as f64
            };
            writeln!(w, "{label},{total},{correct},{rate:.6}")?;
        }
        let overall = if total_all == 0 {
            0.0
        } else {
            correct_all as f64 / total_all as f64
        };
        writeln!(w, "_overall,{total_all},{correct_all},{overall:.6}")?;
        Ok(())
    }
}
