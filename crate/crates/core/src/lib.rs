//! Fuzzy morphological associative memories over the complete lattice [0, 1].
//!
//! The crate is organized bottom-up:
//!
//! - [`connectives`]: adjoint families of fuzzy conjunctions, disjunctions,
//!   implications, and co-implications, plus residual construction and
//!   adjunction checking.
//! - [`lattice`]: vectors, matrices, the max-C / min-D products and
//!   combinations, and the operation counter.
//! - [`afmm`]: distributed (weight-matrix) autoassociative memories trained
//!   by adjunction.
//! - [`pafmm`]: projection autoassociative memories, including the
//!   comparison-only Zadeh variants.
//! - [`masking`]: similarity-driven noise masking around either memory type.
//! - [`classifier`]: one-memory-per-class banks, NMSE, and evaluation reports.
//! - [`encoding`]: image and embedding vectorization into [0, 1]^n.
//! - [`noise`]: seeded salt-and-pepper, Gaussian, and motion-blur corruption.
//! - [`verify`]: embedded reference fixtures and the checks behind
//!   `fuzzymm verify-paper`.

pub mod afmm;
pub mod classifier;
pub mod connectives;
pub mod encoding;
mod error;
pub mod lattice;
pub mod masking;
pub mod model;
pub mod noise;
pub mod pafmm;
pub mod verify;

pub use afmm::{DistributedKind, DistributedMemory, Negated, Recall};
pub use classifier::{nmse, Classification, EvalReport, MemoryBank, ModelConfig, ModelKind};
pub use connectives::{
    builtin_family, check_adjunction, residual_coimplication, residual_implication,
    AdjunctionReport, ConnectiveFamily, FamilyName, UnitScalar,
};
pub use encoding::{
    bilinear_resize, fit_embedding_stats, image_to_vector, read_image, read_labeled_reals,
    read_labeled_vectors, standardize_logistic, write_labeled_vectors, EmbeddingStats,
    ImagePlane,
};
pub use error::{Error, Result};
pub use lattice::{
    max_c_apply, max_c_combination, max_c_product, min_d_apply, min_d_combination,
    min_d_product, FundamentalMemorySet, FuzzyMatrix, FuzzyVector, OpCounter,
};
pub use masking::{
    hamming_similarity, select_mask_index, MaskPolarity, MaskStrategy, MaskedInner,
    MaskedMemory, SimilarityMeasure,
};
pub use model::{bank_from_json, bank_to_json, load_bank, save_bank, MemoryModel};
pub use noise::{corrupt, corrupt_batch, ImageGeometry, NoiseKind, NoiseSpec};
pub use pafmm::{ProjectionKind, ProjectionMemory, RecallTrace};
pub use verify::{matches_printed, run_negative_control, run_reference_checks, CheckResult};
