//! Turning raw inputs into vectors over [0, 1].
//!
//! Two routes:
//!
//! - images: grayscale (luma weights 0.299/0.587/0.114), bilinear resize
//!   to a target shape, row-major flatten;
//! - embeddings: componentwise standardization against training statistics
//!   followed by the logistic function.
//!
//! The resize uses half-pixel-centered sampling with edge replication, so
//! resizing to the source shape is the identity and shrinking 2x2 to 1x1
//! averages the four pixels. The paper-independent pixel conventions
//! (kernel, luma weights) are pinned by the tests in this module.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lattice::FuzzyVector;

/// A grayscale image with row-major intensities in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ImagePlane {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl ImagePlane {
    /// Builds a plane, clamping intensities into [0, 1]. NaN is rejected.
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Format(format!(
                "degenerate image shape {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::dimension(
                width * height,
                pixels.len(),
                "image pixel count",
            ));
        }
        let mut clamped = pixels;
        for p in &mut clamped {
            if p.is_nan() {
                return Err(Error::Format("NaN pixel intensity".into()));
            }
            *p = p.clamp(0.0, 1.0);
        }
        Ok(ImagePlane {
            width,
            height,
            pixels: clamped,
        })
    }

    pub fn constant(width: usize, height: usize, value: f64) -> Result<Self> {
        ImagePlane::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.width + col]
    }

    pub fn to_vector(&self) -> FuzzyVector {
        FuzzyVector::new(self.pixels.clone()).expect("plane intensities are in range")
    }

    pub fn from_vector(v: &FuzzyVector, width: usize, height: usize) -> Result<Self> {
        ImagePlane::new(width, height, v.as_slice().to_vec())
    }
}

/// Bilinear resize with half-pixel centers and replicated edges. Resizing
/// to the source shape returns a bit-identical plane.
pub fn bilinear_resize(img: &ImagePlane, target_w: usize, target_h: usize) -> Result<ImagePlane> {
    if target_w == 0 || target_h == 0 {
        return Err(Error::Format(format!(
            "degenerate resize target {target_w}x{target_h}"
        )));
    }
    if target_w == img.width && target_h == img.height {
        return Ok(img.clone());
    }
    let (w, h) = (img.width, img.height);
    let scale_x = w as f64 / target_w as f64;
    let scale_y = h as f64 / target_h as f64;
    let clamp = |v: i64, hi: usize| -> usize { v.clamp(0, hi as i64 - 1) as usize };
    let mut out = Vec::with_capacity(target_w * target_h);
    for i in 0..target_h {
        let sy = (i as f64 + 0.5) * scale_y - 0.5;
        let y0f = sy.floor();
        let dy = sy - y0f;
        let y0 = clamp(y0f as i64, h);
        let y1 = clamp(y0f as i64 + 1, h);
        for j in 0..target_w {
            let sx = (j as f64 + 0.5) * scale_x - 0.5;
            let x0f = sx.floor();
            let dx = sx - x0f;
            let x0 = clamp(x0f as i64, w);
            let x1 = clamp(x0f as i64 + 1, w);
            let top = img.get(y0, x0) * (1.0 - dx) + img.get(y0, x1) * dx;
            let bottom = img.get(y1, x0) * (1.0 - dx) + img.get(y1, x1) * dx;
            out.push((top * (1.0 - dy) + bottom * dy).clamp(0.0, 1.0));
        }
    }
    ImagePlane::new(target_w, target_h, out)
}

/// Grayscale, resize, flatten.
pub fn image_to_vector(img: &ImagePlane, target_w: usize, target_h: usize) -> Result<FuzzyVector> {
    Ok(bilinear_resize(img, target_w, target_h)?.to_vector())
}

const LUMA: [f64; 3] = [0.299, 0.587, 0.114];

/// Reads a PGM or PNG file by extension.
pub fn read_image(path: &Path) -> Result<ImagePlane> {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .as_deref()
    {
        Some("pgm") => read_pgm(path),
        Some("png") => read_png(path),
        other => Err(Error::Format(format!(
            "unsupported image extension {other:?} (expected pgm or png)"
        ))),
    }
}

/// Reads a binary (P5) PGM with maxval up to 255.
pub fn read_pgm(path: &Path) -> Result<ImagePlane> {
    parse_pgm(&fs::read(path)?)
}

/// Parses binary PGM bytes: `P5`, whitespace-separated width/height/maxval
/// with `#` comments, one whitespace byte, then raw intensities.
pub fn parse_pgm(bytes: &[u8]) -> Result<ImagePlane> {
    let mut pos = 0usize;
    let magic = pgm_token(bytes, &mut pos)?;
    if magic != "P5" {
        return Err(Error::Format(format!(
            "unsupported PGM magic `{magic}` (only binary P5)"
        )));
    }
    let width: usize = pgm_number(bytes, &mut pos, "width")?;
    let height: usize = pgm_number(bytes, &mut pos, "height")?;
    let maxval: usize = pgm_number(bytes, &mut pos, "maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::Format(format!(
            "PGM maxval {maxval} outside 1..=255 (16-bit PGM unsupported)"
        )));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(Error::Format("missing separator before PGM raster".into()));
    }
    pos += 1;
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::Format("PGM dimensions overflow".into()))?;
    let raster = &bytes[pos..];
    if raster.len() < expected {
        return Err(Error::Format(format!(
            "PGM raster truncated: expected {expected} bytes, found {}",
            raster.len()
        )));
    }
    let pixels = raster[..expected]
        .iter()
        .map(|&b| b as f64 / maxval as f64)
        .collect();
    ImagePlane::new(width, height, pixels)
}

fn pgm_token(bytes: &[u8], pos: &mut usize) -> Result<String> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Format("truncated PGM header".into()));
    }
    String::from_utf8(bytes[start..*pos].to_vec())
        .map_err(|_| Error::Format("non-ASCII PGM header".into()))
}

fn pgm_number(bytes: &[u8], pos: &mut usize, what: &str) -> Result<usize> {
    let token = pgm_token(bytes, pos)?;
    token
        .parse()
        .map_err(|_| Error::Format(format!("bad PGM {what} `{token}`")))
}

/// Writes a binary PGM with maxval 255, rounding intensities.
pub fn write_pgm(img: &ImagePlane, path: &Path) -> Result<()> {
    let mut data = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    data.extend(
        img.pixels
            .iter()
            .map(|&p| (p * 255.0).round().clamp(0.0, 255.0) as u8),
    );
    fs::write(path, data)?;
    Ok(())
}

/// Reads a PNG, applying the luma weights to color inputs. Inputs deeper
/// than 8 bits are quantized to 8.
pub fn read_png(path: &Path) -> Result<ImagePlane> {
    let img = image::open(path).map_err(|e| Error::Format(format!("PNG decode failed: {e}")))?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let pixels = match img {
        image::DynamicImage::ImageLuma8(gray) => gray
            .pixels()
            .map(|p| p.0[0] as f64 / 255.0)
            .collect::<Vec<_>>(),
        other => other
            .to_rgb8()
            .pixels()
            .map(|p| {
                (LUMA[0] * p.0[0] as f64 + LUMA[1] * p.0[1] as f64 + LUMA[2] * p.0[2] as f64)
                    / 255.0
            })
            .collect(),
    };
    ImagePlane::new(w, h, pixels)
}

/// Componentwise training statistics for embedding standardization.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingStats {
    mu: Vec<f64>,
    sd: Vec<f64>,
}

// Zero spread would make the logistic argument infinite.
const SD_FLOOR: f64 = 1e-8;

impl EmbeddingStats {
    pub fn dimension(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn sd(&self) -> &[f64] {
        &self.sd
    }
}

/// Componentwise mean and population standard deviation (floored at 1e-8).
pub fn fit_embedding_stats(vectors: &[Vec<f64>]) -> Result<EmbeddingStats> {
    if vectors.len() < 2 {
        return Err(Error::Config(format!(
            "need at least 2 vectors to fit statistics, got {}",
            vectors.len()
        )));
    }
    let dim = vectors[0].len();
    if dim == 0 {
        return Err(Error::Config("cannot fit statistics on empty vectors".into()));
    }
    for v in vectors {
        if v.len() != dim {
            return Err(Error::dimension(dim, v.len(), "embedding vectors"));
        }
        if v.iter().any(|c| !c.is_finite()) {
            return Err(Error::Format("non-finite embedding component".into()));
        }
    }
    let count = vectors.len() as f64;
    let mut mu = vec![0.0; dim];
    for v in vectors {
        for (m, c) in mu.iter_mut().zip(v) {
            *m += c;
        }
    }
    for m in &mut mu {
        *m /= count;
    }
    let mut sd = vec![0.0; dim];
    for v in vectors {
        for (s, (c, m)) in sd.iter_mut().zip(v.iter().zip(&mu)) {
            *s += (c - m) * (c - m);
        }
    }
    for s in &mut sd {
        *s = (*s / count).sqrt().max(SD_FLOOR);
    }
    Ok(EmbeddingStats { mu, sd })
}

/// x_i = logistic((v_i - mu_i) / sd_i).
pub fn standardize_logistic(v: &[f64], stats: &EmbeddingStats) -> Result<FuzzyVector> {
    if v.len() != stats.dimension() {
        return Err(Error::dimension(
            stats.dimension(),
            v.len(),
            "standardized vector",
        ));
    }
    let out = v
        .iter()
        .zip(stats.mu.iter().zip(&stats.sd))
        .map(|(c, (m, s))| 1.0 / (1.0 + (-(c - m) / s).exp()))
        .collect();
    FuzzyVector::new(out)
}

// CSV layout shared by datasets: header `label,x0,...`, one row per vector.

/// Writes labeled vectors with full-precision decimal components.
pub fn write_labeled_vectors(path: &Path, rows: &[(String, FuzzyVector)]) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Config("refusing to write an empty dataset".into()));
    }
    let n = rows[0].1.len();
    let mut writer = csv::Writer::from_path(path).map_err(csv_error)?;
    let mut header = vec!["label".to_string()];
    header.extend((0..n).map(|i| format!("x{i}")));
    writer
        .write_record(&header)
        .map_err(csv_error)?;
    for (label, vector) in rows {
        if vector.len() != n {
            return Err(Error::dimension(n, vector.len(), "dataset rows"));
        }
        let mut record = vec![label.clone()];
        record.extend(vector.iter().map(|v| format!("{v:.16e}")));
        writer.write_record(&record).map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads labeled vectors with components in [0, 1].
pub fn read_labeled_vectors(path: &Path) -> Result<Vec<(String, FuzzyVector)>> {
    read_labeled_reals(path)?
        .into_iter()
        .map(|(label, values)| Ok((label, FuzzyVector::new(values)?)))
        .collect()
}

/// Reads labeled rows of arbitrary finite reals (raw embeddings).
pub fn read_labeled_reals(path: &Path) -> Result<Vec<(String, Vec<f64>)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(csv_error)?;
    let headers = reader.headers().map_err(csv_error)?;
    if headers.get(0) != Some("label") {
        return Err(Error::Format(format!(
            "dataset header must start with `label`, found {:?}",
            headers.get(0)
        )));
    }
    let width = headers.len();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        if record.len() != width {
            return Err(Error::Format(format!(
                "ragged CSV row: expected {} fields, found {}",
                width,
                record.len()
            )));
        }
        let label = record.get(0).unwrap_or_default().to_string();
        let values = record
            .iter()
            .skip(1)
            .map(|field| {
                field
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Format(format!("bad CSV component `{field}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((label, values));
    }
    if rows.is_empty() {
        return Err(Error::Format("dataset contains no rows".into()));
    }
    Ok(rows)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Format(format!("CSV error: {e}"))
}
