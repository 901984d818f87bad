//! Seeded corruption models for recall experiments.
//!
//! Three kinds: salt-and-pepper (each component independently replaced by
//! 0 or 1), additive Gaussian with clamping, and horizontal motion blur
//! over the image geometry. All draws come from a ChaCha12 stream seeded
//! explicitly, so a (spec, seed) pair reproduces the same corruption on
//! any platform. Batch corruption derives the per-item seed as
//! `seed ^ index`, which keeps items independent while still reproducible.
//!
//! Degenerate parameters (rho = 0, variance = 0, length-1 blur) return the
//! input unchanged, bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::lattice::FuzzyVector;

/// Image shape carried alongside flattened vectors for blur.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImageGeometry {
    pub width: usize,
    pub height: usize,
}

impl ImageGeometry {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Config(format!(
                "degenerate image geometry {width}x{height}"
            )));
        }
        Ok(ImageGeometry { width, height })
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A corruption model with validated parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseKind {
    /// Each component flips to 0 or 1 with probability rho.
    SaltPepper { rho: f64 },
    /// Adds N(0, variance) and clamps to [0, 1].
    Gaussian { variance: f64 },
    /// Horizontal box blur spanning `pixels` columns.
    MotionBlur { pixels: usize },
}

impl NoiseKind {
    pub fn salt_pepper(rho: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&rho) {
            return Err(Error::Config(format!(
                "salt-and-pepper rate {rho} outside [0, 0.5]"
            )));
        }
        Ok(NoiseKind::SaltPepper { rho })
    }

    pub fn gaussian(variance: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&variance) {
            return Err(Error::Config(format!(
                "gaussian variance {variance} outside [0, 0.5]"
            )));
        }
        Ok(NoiseKind::Gaussian { variance })
    }

    pub fn motion_blur(pixels: usize) -> Result<Self> {
        if !(1..=20).contains(&pixels) {
            return Err(Error::Config(format!(
                "motion blur length {pixels} outside 1..=20"
            )));
        }
        Ok(NoiseKind::MotionBlur { pixels })
    }

    /// Parses `salt_pepper:RHO`, `gaussian:VARIANCE`, or `motion:PIXELS`.
    pub fn parse(text: &str) -> Result<Self> {
        let (name, arg) = text
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("noise spec `{text}` missing `:`")))?;
        let bad_arg = || Error::Config(format!("bad noise parameter `{arg}` in `{text}`"));
        match name {
            "salt_pepper" | "salt-pepper" => {
                NoiseKind::salt_pepper(arg.parse().map_err(|_| bad_arg())?)
            }
            "gaussian" => NoiseKind::gaussian(arg.parse().map_err(|_| bad_arg())?),
            "motion" | "motion_blur" | "motion-blur" => {
                NoiseKind::motion_blur(arg.parse().map_err(|_| bad_arg())?)
            }
            other => Err(Error::Config(format!("unknown noise kind `{other}`"))),
        }
    }

    /// True when corruption needs the image geometry.
    pub fn needs_geometry(&self) -> bool {
        matches!(self, NoiseKind::MotionBlur { .. })
    }
}

impl std::fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoiseKind::SaltPepper { rho } => write!(f, "salt_pepper:{rho}"),
            NoiseKind::Gaussian { variance } => write!(f, "gaussian:{variance}"),
            NoiseKind::MotionBlur { pixels } => write!(f, "motion:{pixels}"),
        }
    }
}

/// A noise kind plus the seed that makes it reproducible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(kind: NoiseKind, seed: u64) -> Self {
        NoiseSpec { kind, seed }
    }
}

/// Corrupts one vector. Blur requires `geometry`; the other kinds ignore it
/// beyond a consistency check.
pub fn corrupt(
    x: &FuzzyVector,
    spec: &NoiseSpec,
    geometry: Option<ImageGeometry>,
) -> Result<FuzzyVector> {
    if let Some(g) = geometry {
        if g.len() != x.len() {
            return Err(Error::dimension(g.len(), x.len(), "noise geometry"));
        }
    }
    match spec.kind {
        NoiseKind::SaltPepper { rho } => {
            if rho == 0.0 {
                return Ok(x.clone());
            }
            let mut rng = ChaCha12Rng::seed_from_u64(spec.seed);
            let out = x
                .iter()
                .map(|&v| {
                    if rng.gen::<f64>() < rho {
                        if rng.gen::<bool>() {
                            1.0
                        } else {
                            0.0
                        }
                    } else {
                        v
                    }
                })
                .collect();
            FuzzyVector::new(out)
        }
        NoiseKind::Gaussian { variance } => {
            if variance == 0.0 {
                return Ok(x.clone());
            }
            let mut rng = ChaCha12Rng::seed_from_u64(spec.seed);
            let normal = Normal::new(0.0, variance.sqrt())
                .map_err(|e| Error::Config(format!("gaussian noise: {e}")))?;
            let out = x
                .iter()
                .map(|&v| (v + normal.sample(&mut rng)).clamp(0.0, 1.0))
                .collect();
            FuzzyVector::new(out)
        }
        NoiseKind::MotionBlur { pixels } => {
            if pixels == 1 {
                return Ok(x.clone());
            }
            let g = geometry.ok_or_else(|| {
                Error::Config("motion blur needs the image geometry (width x height)".into())
            })?;
            Ok(horizontal_blur(x, g, pixels))
        }
    }
}

// Box kernel of weight 1/len anchored (len - 1) / 2 columns to the left,
// with edge columns replicated.
fn horizontal_blur(x: &FuzzyVector, g: ImageGeometry, len: usize) -> FuzzyVector {
    let left = (len - 1) / 2;
    let w = g.width as i64;
    let mut out = Vec::with_capacity(x.len());
    for row in 0..g.height {
        let base = row * g.width;
        for col in 0..g.width {
            let mut sum = 0.0;
            for t in 0..len {
                let src = (col as i64 + t as i64 - left as i64).clamp(0, w - 1) as usize;
                sum += x[base + src];
            }
            out.push((sum / len as f64).clamp(0.0, 1.0));
        }
    }
    FuzzyVector::new(out).expect("blur of unit values stays in range")
}

/// Corrupts a batch, item `i` using seed `spec.seed ^ i`.
pub fn corrupt_batch(
    inputs: &[FuzzyVector],
    spec: &NoiseSpec,
    geometry: Option<ImageGeometry>,
) -> Result<Vec<FuzzyVector>> {
    inputs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let item = NoiseSpec::new(spec.kind, spec.seed ^ (i as u64));
            corrupt(x, &item, geometry)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp(n: usize) -> FuzzyVector {
        FuzzyVector::new((0..n).map(|i| i as f64 / (n - 1) as f64).collect()).unwrap()
    }

    #[test]
    fn zero_parameters_copy_exactly() {
        let x = ramp(16);
        let sp = NoiseSpec::new(NoiseKind::salt_pepper(0.0).unwrap(), 7);
        assert_eq!(corrupt(&x, &sp, None).unwrap(), x);
        let ga = NoiseSpec::new(NoiseKind::gaussian(0.0).unwrap(), 7);
        assert_eq!(corrupt(&x, &ga, None).unwrap(), x);
        let mb = NoiseSpec::new(NoiseKind::motion_blur(1).unwrap(), 7);
        // Length-1 blur copies even without geometry.
        assert_eq!(corrupt(&x, &mb, None).unwrap(), x);
    }

    #[test]
    fn corruption_is_deterministic_per_seed() {
        let x = ramp(64);
        for kind in [
            NoiseKind::salt_pepper(0.3).unwrap(),
            NoiseKind::gaussian(0.05).unwrap(),
        ] {
            let a = corrupt(&x, &NoiseSpec::new(kind, 42), None).unwrap();
            let b = corrupt(&x, &NoiseSpec::new(kind, 42), None).unwrap();
            assert_eq!(a, b);
            let c = corrupt(&x, &NoiseSpec::new(kind, 43), None).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn salt_pepper_only_writes_extremes() {
        let x = FuzzyVector::new(vec![0.5; 10_000]).unwrap();
        let spec = NoiseSpec::new(NoiseKind::salt_pepper(0.5).unwrap(), 9);
        let y = corrupt(&x, &spec, None).unwrap();
        let flipped = y.iter().filter(|&&v| v != 0.5).count();
        for &v in y.iter() {
            assert!(v == 0.0 || v == 1.0 || v == 0.5);
        }
        // Binomial(10000, 0.5): +-3 sigma is about +-150.
        assert!((flipped as f64 - 5_000.0).abs() < 200.0, "{flipped}");
        let ones = y.iter().filter(|&&v| v == 1.0).count();
        let zeros = flipped - ones;
        assert!((ones as f64 - zeros as f64).abs() < 300.0);
    }

    #[test]
    fn gaussian_clamps_and_stays_centered() {
        let x = FuzzyVector::new(vec![0.5; 10_000]).unwrap();
        let spec = NoiseSpec::new(NoiseKind::gaussian(0.01).unwrap(), 11);
        let y = corrupt(&x, &spec, None).unwrap();
        let mean = y.iter().sum::<f64>() / y.len() as f64;
        // sigma = 0.1, so the sample mean sits within 3 * 0.1 / 100.
        assert!((mean - 0.5).abs() < 0.003, "{mean}");
        assert!(y.iter().any(|&v| v != 0.5));
    }

    #[test]
    fn blur_matches_hand_computed_row() {
        let x = FuzzyVector::new(vec![1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let g = ImageGeometry::new(5, 1).unwrap();
        let spec = NoiseSpec::new(NoiseKind::motion_blur(3).unwrap(), 0);
        let y = corrupt(&x, &spec, Some(g)).unwrap();
        let expected = [2.0 / 3.0, 1.0 / 3.0, 0.0, 1.0 / 3.0, 2.0 / 3.0];
        for (v, e) in y.iter().zip(expected) {
            assert!((v - e).abs() <= 1e-15, "{:?}", y.as_slice());
        }
    }

    #[test]
    fn blur_keeps_constant_rows_constant() {
        let x = FuzzyVector::new(vec![0.3; 12]).unwrap();
        let g = ImageGeometry::new(4, 3).unwrap();
        let spec = NoiseSpec::new(NoiseKind::motion_blur(3).unwrap(), 0);
        let y = corrupt(&x, &spec, Some(g)).unwrap();
        for &v in y.iter() {
            assert!((v - 0.3).abs() <= 1e-12);
        }
    }

    #[test]
    fn blur_does_not_mix_rows() {
        // Two rows, top all ones, bottom all zeros: blur changes nothing.
        let x = FuzzyVector::new(vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let g = ImageGeometry::new(3, 2).unwrap();
        let spec = NoiseSpec::new(NoiseKind::motion_blur(5).unwrap(), 0);
        let y = corrupt(&x, &spec, Some(g)).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn blur_requires_matching_geometry() {
        let x = ramp(6);
        let spec = NoiseSpec::new(NoiseKind::motion_blur(3).unwrap(), 0);
        assert!(corrupt(&x, &spec, None).is_err());
        let wrong = ImageGeometry::new(4, 2).unwrap();
        assert!(corrupt(&x, &spec, Some(wrong)).is_err());
    }

    #[test]
    fn parameters_are_validated() {
        assert!(NoiseKind::salt_pepper(0.6).is_err());
        assert!(NoiseKind::salt_pepper(-0.1).is_err());
        assert!(NoiseKind::gaussian(0.51).is_err());
        assert!(NoiseKind::motion_blur(0).is_err());
        assert!(NoiseKind::motion_blur(21).is_err());
        assert!(ImageGeometry::new(0, 3).is_err());
    }

    #[test]
    fn spec_strings_parse_and_print() {
        assert_eq!(
            NoiseKind::parse("salt_pepper:0.05").unwrap(),
            NoiseKind::SaltPepper { rho: 0.05 }
        );
        assert_eq!(
            NoiseKind::parse("gaussian:0.01").unwrap(),
            NoiseKind::Gaussian { variance: 0.01 }
        );
        assert_eq!(
            NoiseKind::parse("motion:9").unwrap(),
            NoiseKind::MotionBlur { pixels: 9 }
        );
        for text in ["salt_pepper:0.05", "gaussian:0.01", "motion:9"] {
            assert_eq!(NoiseKind::parse(text).unwrap().to_string(), text);
        }
        assert!(NoiseKind::parse("motion").is_err());
        assert!(NoiseKind::parse("sparkle:0.1").is_err());
        assert!(NoiseKind::parse("gaussian:high").is_err());
        assert!(NoiseKind::parse("salt_pepper:0.9").is_err());
    }

    #[test]
    fn batch_seeds_are_index_derived() {
        let x = FuzzyVector::new(vec![0.5; 64]).unwrap();
        let inputs = vec![x.clone(), x.clone(), x.clone()];
        let spec = NoiseSpec::new(NoiseKind::salt_pepper(0.4).unwrap(), 100);
        let batch = corrupt_batch(&inputs, &spec, None).unwrap();
        for (i, item) in batch.iter().enumerate() {
            let single = NoiseSpec::new(spec.kind, 100 ^ (i as u64));
            assert_eq!(*item, corrupt(&x, &single, None).unwrap());
        }
        // Same input, different indices: corruption differs.
        assert_ne!(batch[0], batch[1]);
        assert_ne!(batch[1], batch[2]);
    }
}
