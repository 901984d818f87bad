//! A tagged union over the memory types, plus JSON (de)serialization.
//!
//! Components are written as decimal strings with 17 significant digits
//! (`{:.16e}`), enough to round-trip every f64 bit-exactly, so a
//! saved-then-loaded memory recalls identically. Masked models embed the
//! stored set at the top level even when the inner projection memory
//! repeats it: the distributed inner kinds do not retain their training
//! set, and one uniform layout beats two.
//!
//! Only builtin connective families and similarity measures serialize;
//! custom ones have no portable representation and are rejected.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::afmm::{DistributedKind, DistributedMemory, Recall};
use crate::connectives::FamilyName;
use crate::error::{Error, Result};
use crate::lattice::{FundamentalMemorySet, FuzzyMatrix, FuzzyVector, OpCounter};
use crate::masking::{MaskStrategy, MaskedInner, MaskedMemory, SimilarityMeasure};
use crate::pafmm::{ProjectionKind, ProjectionMemory, RecallTrace};

/// Any recall-capable memory, for banks and serialized artifacts.
#[derive(Debug, Clone)]
pub enum MemoryModel {
    Distributed(DistributedMemory),
    Projection(ProjectionMemory),
    Masked(MaskedMemory),
}

impl MemoryModel {
    pub fn dimension(&self) -> usize {
        match self {
            MemoryModel::Distributed(m) => m.dimension(),
            MemoryModel::Projection(m) => m.dimension(),
            MemoryModel::Masked(m) => m.dimension(),
        }
    }

    pub fn recall(&self, x: &FuzzyVector) -> Result<FuzzyVector> {
        match self {
            MemoryModel::Distributed(m) => m.recall(x),
            MemoryModel::Projection(m) => Ok(m.recall_traced(x)?.0),
            MemoryModel::Masked(m) => Ok(m.recall_with_mask(x)?.0),
        }
    }

    pub fn recall_counted(&self, x: &FuzzyVector, counter: &mut OpCounter) -> Result<FuzzyVector> {
        match self {
            MemoryModel::Distributed(m) => m.recall_counted(x, counter),
            MemoryModel::Projection(m) => Ok(m.recall_traced_counted(x, counter)?.0),
            MemoryModel::Masked(m) => Ok(m.recall_with_mask_counted(x, counter)?.0),
        }
    }

    /// The projection coefficient trace, when the model exposes one.
    pub fn recall_traced(&self, x: &FuzzyVector) -> Result<(FuzzyVector, Option<RecallTrace>)> {
        match self {
            MemoryModel::Projection(m) => {
                let (out, trace) = m.recall_traced(x)?;
                Ok((out, Some(trace)))
            }
            other => Ok((other.recall(x)?, None)),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            MemoryModel::Distributed(_) => "distributed",
            MemoryModel::Projection(_) => "projection",
            MemoryModel::Masked(_) => "masked",
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let repr = ModelRepr::from_model(self)?;
        serde_json::to_string_pretty(&repr)
            .map_err(|e| Error::Format(format!("model encoding failed: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ModelRepr = serde_json::from_str(text)
            .map_err(|e| Error::Format(format!("model decoding failed: {e}")))?;
        repr.into_model()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        MemoryModel::from_json(&fs::read_to_string(path)?)
    }
}

impl Recall for MemoryModel {
    fn dimension(&self) -> usize {
        MemoryModel::dimension(self)
    }

    fn recall(&self, x: &FuzzyVector) -> Result<FuzzyVector> {
        MemoryModel::recall(self, x)
    }
}

/// A serializable bank: the per-class models plus the bank similarity.
pub fn bank_to_json(bank: &crate::classifier::MemoryBank) -> Result<String> {
    let classes = bank
        .classes()
        .iter()
        .map(|(label, model)| {
            Ok(ClassRepr {
                label: label.clone(),
                model: ModelRepr::from_model(model)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let repr = BankRepr {
        similarity: similarity_name(bank.similarity())?,
        classes,
    };
    serde_json::to_string_pretty(&repr)
        .map_err(|e| Error::Format(format!("bank encoding failed: {e}")))
}

pub fn bank_from_json(text: &str) -> Result<crate::classifier::MemoryBank> {
    let repr: BankRepr = serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("bank decoding failed: {e}")))?;
    let similarity = SimilarityMeasure::by_name(&repr.similarity)?;
    let classes = repr
        .classes
        .into_iter()
        .map(|c| Ok((c.label, c.model.into_model()?)))
        .collect::<Result<Vec<_>>>()?;
    crate::classifier::MemoryBank::new(classes, similarity)
}

pub fn save_bank(bank: &crate::classifier::MemoryBank, path: &Path) -> Result<()> {
    fs::write(path, bank_to_json(bank)?)?;
    Ok(())
}

pub fn load_bank(path: &Path) -> Result<crate::classifier::MemoryBank> {
    bank_from_json(&fs::read_to_string(path)?)
}

// 17 significant digits: enough to reproduce any f64 exactly on parse.
fn encode_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn decode_f64(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::Format(format!("bad decimal component `{s}`")))
}

fn encode_rows<'a>(rows: impl Iterator<Item = &'a [f64]>) -> Vec<Vec<String>> {
    rows.map(|row| row.iter().copied().map(encode_f64).collect())
        .collect()
}

fn decode_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<f64>>> {
    rows.iter()
        .map(|row| row.iter().map(|s| decode_f64(s)).collect())
        .collect()
}

fn family_name(family: &crate::connectives::ConnectiveFamily) -> Result<String> {
    family
        .builtin()
        .map(|f| f.as_str().to_string())
        .ok_or_else(|| {
            Error::Config(format!(
                "custom family `{}` cannot be serialized",
                family.name()
            ))
        })
}

fn similarity_name(similarity: &SimilarityMeasure) -> Result<String> {
    match similarity {
        SimilarityMeasure::Hamming => Ok("hamming".to_string()),
        SimilarityMeasure::Custom { name, .. } => Err(Error::Config(format!(
            "custom similarity `{name}` cannot be serialized"
        ))),
    }
}

fn memory_set_rows(memories: &FundamentalMemorySet) -> Vec<Vec<String>> {
    encode_rows(memories.iter().map(|v| v.as_slice()))
}

fn memory_set_from_rows(rows: &[Vec<String>]) -> Result<FundamentalMemorySet> {
    FundamentalMemorySet::from_rows(&decode_rows(rows)?)
}

#[derive(Serialize, Deserialize)]
struct BankRepr {
    similarity: String,
    classes: Vec<ClassRepr>,
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    label: String,
    model: ModelRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum ModelRepr {
    Distributed {
        kind: String,
        family: String,
        n: usize,
        weights: Vec<Vec<String>>,
    },
    Projection {
        kind: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        family: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        inclusion_tolerance: Option<String>,
        k: usize,
        n: usize,
        memories: Vec<Vec<String>>,
    },
    Masked {
        polarity: String,
        strategy: String,
        similarity: String,
        k: usize,
        n: usize,
        memories: Vec<Vec<String>>,
        inner: Box<ModelRepr>,
    },
}

impl ModelRepr {
    fn from_model(model: &MemoryModel) -> Result<ModelRepr> {
        Ok(match model {
            MemoryModel::Distributed(m) => ModelRepr::Distributed {
                kind: m.kind().as_str().to_string(),
                family: family_name(m.family())?,
                n: m.dimension(),
                weights: encode_rows((0..m.weights().rows()).map(|i| m.weights().row(i))),
            },
            MemoryModel::Projection(m) => ModelRepr::Projection {
                kind: m.kind().as_str().to_string(),
                family: m.family().map(family_name).transpose()?,
                inclusion_tolerance: (m.inclusion_tolerance() != 0.0)
                    .then(|| encode_f64(m.inclusion_tolerance())),
                k: m.memories().len(),
                n: m.dimension(),
                memories: memory_set_rows(m.memories()),
            },
            MemoryModel::Masked(m) => {
                let inner = match m.inner() {
                    MaskedInner::Distributed(d) => {
                        ModelRepr::from_model(&MemoryModel::Distributed(d.clone()))?
                    }
                    MaskedInner::Projection(p) => {
                        ModelRepr::from_model(&MemoryModel::Projection(p.clone()))?
                    }
                };
                ModelRepr::Masked {
                    polarity: m.polarity().as_str().to_string(),
                    strategy: m.strategy().as_str().to_string(),
                    similarity: similarity_name(m.similarity())?,
                    k: m.memories().len(),
                    n: m.dimension(),
                    memories: memory_set_rows(m.memories()),
                    inner: Box::new(inner),
                }
            }
        })
    }

    fn into_model(self) -> Result<MemoryModel> {
        Ok(match self {
            ModelRepr::Distributed {
                kind,
                family,
                n,
                weights,
            } => {
                let kind = match kind.as_str() {
                    "max_c" => DistributedKind::MaxC,
                    "min_d" => DistributedKind::MinD,
                    other => {
                        return Err(Error::Format(format!("unknown distributed kind `{other}`")))
                    }
                };
                let family = FamilyName::from_str(&family)?;
                let rows = decode_rows(&weights)?;
                let matrix = FuzzyMatrix::from_rows(&rows)?;
                if matrix.rows() != n {
                    return Err(Error::dimension(n, matrix.rows(), "serialized weights"));
                }
                MemoryModel::Distributed(DistributedMemory::from_weights(matrix, family, kind)?)
            }
            ModelRepr::Projection {
                kind,
                family,
                inclusion_tolerance,
                k,
                n,
                memories,
            } => {
                let kind = match kind.as_str() {
                    "max_c" => ProjectionKind::MaxC,
                    "min_d" => ProjectionKind::MinD,
                    "zadeh_max" => ProjectionKind::ZadehMax,
                    "zadeh_min" => ProjectionKind::ZadehMin,
                    other => {
                        return Err(Error::Format(format!("unknown projection kind `{other}`")))
                    }
                };
                let family = family.as_deref().map(FamilyName::from_str).transpose()?;
                let set = memory_set_from_rows(&memories)?;
                if set.len() != k || set.dimension() != n {
                    return Err(Error::Format(
                        "serialized projection shape disagrees with its memories".into(),
                    ));
                }
                let tolerance = inclusion_tolerance
                    .as_deref()
                    .map(decode_f64)
                    .transpose()?
                    .unwrap_or(0.0);
                MemoryModel::Projection(ProjectionMemory::from_parts(kind, set, family, tolerance)?)
            }
            ModelRepr::Masked {
                polarity,
                strategy,
                similarity,
                k,
                n,
                memories,
                inner,
            } => {
                let strategy = match strategy.as_str() {
                    "similarity" => MaskStrategy::MostSimilar,
                    "nmse-compare" => MaskStrategy::NmseCompare,
                    other => return Err(Error::Format(format!("unknown mask strategy `{other}`"))),
                };
                let similarity = SimilarityMeasure::by_name(&similarity)?;
                let set = memory_set_from_rows(&memories)?;
                if set.len() != k || set.dimension() != n {
                    return Err(Error::Format(
                        "serialized mask shape disagrees with its memories".into(),
                    ));
                }
                let masked = match inner.into_model()? {
                    MemoryModel::Distributed(d) => {
                        MaskedMemory::from_distributed(d, set, similarity, strategy)?
                    }
                    MemoryModel::Projection(p) => {
                        MaskedMemory::from_projection(p, similarity, strategy)?
                    }
                    MemoryModel::Masked(_) => {
                        return Err(Error::Format("masked models cannot nest".into()))
                    }
                };
                // The stored polarity is redundant; treat disagreement as
                // file corruption.
                if masked.polarity().as_str() != polarity {
                    return Err(Error::Format(format!(
                        "mask polarity `{polarity}` disagrees with inner kind `{}`",
                        masked.polarity().as_str()
                    )));
                }
                MemoryModel::Masked(masked)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{MemoryBank, ModelConfig};
    use crate::masking::MaskPolarity;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn memories() -> FundamentalMemorySet {
        FundamentalMemorySet::from_rows(&[
            vec![0.4, 0.3, 0.7, 0.2],
            vec![0.1, 0.7, 0.5, 0.8],
            vec![0.8, 0.5, 0.4, 0.2],
        ])
        .unwrap()
    }

    fn random_vector(rng: &mut ChaCha12Rng, n: usize) -> FuzzyVector {
        FuzzyVector::new((0..n).map(|_| rng.gen_range(0.0..=1.0)).collect()).unwrap()
    }

    #[test]
    fn decimal_encoding_round_trips_exactly() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for _ in 0..1000 {
            let v: f64 = rng.gen_range(0.0..=1.0);
            assert_eq!(decode_f64(&encode_f64(v)).unwrap(), v);
        }
        for v in [0.0, 1.0, f64::MIN_POSITIVE, 0.1 + 0.2] {
            assert_eq!(decode_f64(&encode_f64(v)).unwrap(), v);
        }
    }

    #[test]
    fn distributed_round_trip_is_bit_exact() {
        let mem = DistributedMemory::train_fla(
            &memories(),
            FamilyName::Lukasiewicz,
            DistributedKind::MinD,
        )
        .unwrap();
        let model = MemoryModel::Distributed(mem);
        let loaded = MemoryModel::from_json(&model.to_json().unwrap()).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(32);
        for _ in 0..50 {
            let x = random_vector(&mut rng, 4);
            assert_eq!(model.recall(&x).unwrap(), loaded.recall(&x).unwrap());
        }
        match (&model, &loaded) {
            (MemoryModel::Distributed(a), MemoryModel::Distributed(b)) => {
                assert_eq!(a.weights().data(), b.weights().data());
                assert_eq!(a.kind(), b.kind());
            }
            _ => panic!("kind changed in round trip"),
        }
    }

    #[test]
    fn projection_round_trip_keeps_tolerance() {
        let mem = ProjectionMemory::zadeh_min(memories())
            .with_inclusion_tolerance(0.25)
            .unwrap();
        let model = MemoryModel::Projection(mem);
        let loaded = MemoryModel::from_json(&model.to_json().unwrap()).unwrap();
        match &loaded {
            MemoryModel::Projection(p) => {
                assert_eq!(p.kind(), ProjectionKind::ZadehMin);
                assert_eq!(p.inclusion_tolerance(), 0.25);
            }
            _ => panic!("kind changed in round trip"),
        }
    }

    #[test]
    fn masked_round_trip_preserves_behavior() {
        let config = ModelConfig::default();
        let model = config.build(memories()).unwrap();
        let loaded = MemoryModel::from_json(&model.to_json().unwrap()).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(33);
        for _ in 0..50 {
            let x = random_vector(&mut rng, 4);
            assert_eq!(model.recall(&x).unwrap(), loaded.recall(&x).unwrap());
        }
    }

    #[test]
    fn bank_round_trip_classifies_identically() {
        let dataset: Vec<(String, FuzzyVector)> = memories()
            .iter()
            .enumerate()
            .map(|(i, v)| (format!("s{i}"), v.clone()))
            .collect();
        let bank = MemoryBank::build(&dataset, &ModelConfig::default()).unwrap();
        let loaded = bank_from_json(&bank_to_json(&bank).unwrap()).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(34);
        for _ in 0..50 {
            let x = random_vector(&mut rng, 4);
            let a = bank.classify(&x).unwrap();
            let b = loaded.classify(&x).unwrap();
            assert_eq!(a.label, b.label);
            assert_eq!(a.scores, b.scores);
        }
    }

    #[test]
    fn corrupted_files_are_rejected() {
        let model = ModelConfig::default().build(memories()).unwrap();
        let text = model.to_json().unwrap();
        assert_eq!(
            match &model {
                MemoryModel::Masked(m) => m.polarity(),
                _ => unreachable!(),
            },
            MaskPolarity::Dilative
        );
        let tampered = text.replace("\"polarity\": \"dilative\"", "\"polarity\": \"erosive\"");
        assert!(tampered.contains("erosive"), "fixture must actually change");
        assert!(MemoryModel::from_json(&tampered).is_err());

        let bad_similarity =
            text.replace("\"similarity\": \"hamming\"", "\"similarity\": \"cosine\"");
        assert!(MemoryModel::from_json(&bad_similarity).is_err());

        assert!(MemoryModel::from_json("{\"type\":\"nonsense\"}").is_err());
        let bad_float = text.replace("4.0000000000000002e-1", "forty");
        assert!(MemoryModel::from_json(&bad_float).is_err());
    }

    #[test]
    fn custom_configurations_refuse_to_serialize() {
        let custom = SimilarityMeasure::Custom {
            name: "test".into(),
            func: std::sync::Arc::new(|_, _| Ok(crate::connectives::UnitScalar::clamped(0.5))),
        };
        let masked = MaskedMemory::from_projection(
            ProjectionMemory::zadeh_max(memories()),
            custom,
            MaskStrategy::MostSimilar,
        )
        .unwrap();
        assert!(MemoryModel::Masked(masked).to_json().is_err());
    }

    #[test]
    fn save_and_load_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        let model = ModelConfig::default().build(memories()).unwrap();
        model.save(&path).unwrap();
        let loaded = MemoryModel::load(&path).unwrap();
        let probe = FuzzyVector::new(vec![0.4, 0.3, 0.8, 0.7]).unwrap();
        assert_eq!(model.recall(&probe).unwrap(), loaded.recall(&probe).unwrap());
        assert!(MemoryModel::load(&dir.path().join("missing.json")).is_err());
    }
}
