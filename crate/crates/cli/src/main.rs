//! Command-line surface for the fuzzy associative memory pipeline:
//! encode datasets, train class banks, recall and classify vectors,
//! evaluate recognition rates, sweep noise grids, and run the embedded
//! reference checks.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 I/O or data-format error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fuzzymm::{
    corrupt, corrupt_batch, load_bank, read_image, read_labeled_reals, read_labeled_vectors,
    run_negative_control, run_reference_checks, save_bank, standardize_logistic,
    write_labeled_vectors, CheckResult, Error, FamilyName, FundamentalMemorySet, FuzzyVector,
    ImageGeometry, MaskStrategy, MemoryBank, ModelConfig, ModelKind, NoiseKind, NoiseSpec,
    Result, SimilarityMeasure,
};

#[derive(Parser)]
#[command(
    name = "fuzzymm",
    version,
    about = "Fuzzy morphological associative memories: train, recall, classify, benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode an image tree or an embeddings CSV into a unit-interval dataset
    Encode(EncodeArgs),
    /// Train a one-memory-per-class bank from a labeled CSV dataset
    Train(TrainArgs),
    /// Recall one vector through a trained class memory
    Recall(RecallArgs),
    /// Classify one vector with a trained bank
    Classify(ClassifyArgs),
    /// Evaluate a bank on a labeled dataset or an image tree split
    Eval(EvalArgs),
    /// Corrupt the test set over a noise grid and report recognition rates
    NoiseSweep(SweepArgs),
    /// Run the embedded reference checks and the negative control
    VerifyPaper(VerifyArgs),
}

/// Model configuration shared by train, eval, and noise-sweep.
#[derive(Args, Clone)]
struct ModelFlags {
    /// Memory kind per class: distributed-max-c | distributed-min-d |
    /// projection-max-c | projection-min-d | zadeh-max | zadeh-min
    #[arg(long, default_value = "zadeh-max")]
    kind: String,
    /// Connective family for kinds that need one:
    /// godel | goguen | lukasiewicz | gaines | compensatory_and
    #[arg(long)]
    family: Option<String>,
    /// Similarity-driven noise masking
    #[arg(long, default_value = "on", value_parser = ["on", "off"])]
    mask: String,
    /// How the mask memory is chosen: similarity | nmse-compare
    #[arg(long, default_value = "similarity", value_parser = ["similarity", "nmse-compare"])]
    mask_strategy: String,
    /// Similarity measure: hamming
    #[arg(long, default_value = "hamming")]
    similarity: String,
    /// Inclusion tolerance for the Zadeh kinds
    #[arg(long, default_value_t = 0.0)]
    inclusion_tolerance: f64,
}

impl ModelFlags {
    fn to_config(&self) -> Result<ModelConfig> {
        let kind: ModelKind = self.kind.parse()?;
        let family = self
            .family
            .as_deref()
            .map(str::parse::<FamilyName>)
            .transpose()?;
        let mask_strategy = match self.mask_strategy.as_str() {
            "similarity" => MaskStrategy::MostSimilar,
            "nmse-compare" => MaskStrategy::NmseCompare,
            other => return Err(Error::Config(format!("unknown mask strategy `{other}`"))),
        };
        Ok(ModelConfig {
            kind,
            family,
            masked: self.mask == "on",
            mask_strategy,
            similarity: SimilarityMeasure::by_name(&self.similarity)?,
            inclusion_tolerance: self.inclusion_tolerance,
        })
    }
}

#[derive(Args)]
struct EncodeArgs {
    /// Image tree (one subdirectory per label) or embeddings CSV
    #[arg(long)]
    input: PathBuf,
    /// Output dataset CSV
    #[arg(long)]
    output: PathBuf,
    /// Force embeddings-CSV mode (default: inferred from the input path)
    #[arg(long)]
    embeddings: bool,
    /// Target image width
    #[arg(long, default_value_t = 16)]
    width: usize,
    /// Target image height
    #[arg(long, default_value_t = 16)]
    height: usize,
    /// Rows used to fit embedding statistics: all | first:N
    #[arg(long, default_value = "all")]
    stats_from: String,
}

#[derive(Args)]
struct TrainArgs {
    /// Labeled dataset CSV
    #[arg(long)]
    data: PathBuf,
    /// Where to write the serialized bank
    #[arg(long)]
    model_out: PathBuf,
    #[command(flatten)]
    model: ModelFlags,
}

#[derive(Args)]
struct RecallArgs {
    /// Serialized bank
    #[arg(long)]
    model: PathBuf,
    /// Class whose memory recalls the input (default: first class)
    #[arg(long)]
    class: Option<String>,
    /// Comma-separated components, or @path.csv for the first row of a dataset
    #[arg(long)]
    input: String,
    /// Corrupt the input first: salt_pepper:RHO | gaussian:VAR | motion:PIXELS
    #[arg(long)]
    noise: Option<String>,
    /// Seed for --noise
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Image geometry WxH (needed by motion blur)
    #[arg(long)]
    geometry: Option<String>,
    /// Print full-precision machine output only
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Serialized bank
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated components, or @path.csv for the first row of a dataset
    #[arg(long)]
    input: String,
    /// Corrupt the input first: salt_pepper:RHO | gaussian:VAR | motion:PIXELS
    #[arg(long)]
    noise: Option<String>,
    /// Seed for --noise
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Image geometry WxH (needed by motion blur)
    #[arg(long)]
    geometry: Option<String>,
    /// Print the predicted label and scores in machine format
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Serialized bank (CSV mode; use with --data)
    #[arg(long)]
    model: Option<PathBuf>,
    /// Labeled dataset CSV to evaluate
    #[arg(long)]
    data: Option<PathBuf>,
    /// Image tree mode: train on the first images of each class, test on the rest
    #[arg(long)]
    images: Option<PathBuf>,
    /// Images per class used for training in image mode
    #[arg(long, default_value_t = 5)]
    train_first: usize,
    /// Target image width in image mode
    #[arg(long, default_value_t = 16)]
    width: usize,
    /// Target image height in image mode
    #[arg(long, default_value_t = 16)]
    height: usize,
    #[command(flatten)]
    model_flags: ModelFlags,
    /// Corrupt the test set first: salt_pepper:RHO | gaussian:VAR | motion:PIXELS
    #[arg(long)]
    noise: Option<String>,
    /// Seed for --noise
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Image geometry WxH for motion blur in CSV mode
    #[arg(long)]
    geometry: Option<String>,
    /// Write the per-class report CSV here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Save the bank trained in image mode
    #[arg(long)]
    model_out: Option<PathBuf>,
    /// Print the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Serialized bank (CSV mode; use with --data)
    #[arg(long)]
    model: Option<PathBuf>,
    /// Labeled dataset CSV to corrupt and evaluate
    #[arg(long)]
    data: Option<PathBuf>,
    /// Image tree mode: train on the first images of each class, test on the rest
    #[arg(long)]
    images: Option<PathBuf>,
    /// Images per class used for training in image mode
    #[arg(long, default_value_t = 5)]
    train_first: usize,
    /// Target image width in image mode
    #[arg(long, default_value_t = 16)]
    width: usize,
    /// Target image height in image mode
    #[arg(long, default_value_t = 16)]
    height: usize,
    #[command(flatten)]
    model_flags: ModelFlags,
    /// Noise kind to sweep: salt_pepper | gaussian | motion
    #[arg(long, default_value = "salt_pepper")]
    noise: String,
    /// Comma-separated levels (default grid depends on the kind)
    #[arg(long)]
    levels: Option<String>,
    /// Repetitions per level with fresh seeds
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Base seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Image geometry WxH for motion blur in CSV mode
    #[arg(long)]
    geometry: Option<String>,
    /// Write the sweep rows here as CSV
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Print a machine-readable report
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Encode(args) => cmd_encode(args),
        Command::Train(args) => cmd_train(args),
        Command::Recall(args) => cmd_recall(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Eval(args) => cmd_eval(args),
        Command::NoiseSweep(args) => cmd_noise_sweep(args),
        Command::VerifyPaper(args) => return cmd_verify_paper(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::File(_) | Error::Format(_) => 3,
                _ => 2,
            })
        }
    }
}

// ---------------------------------------------------------------- encode

fn cmd_encode(args: EncodeArgs) -> Result<()> {
    let rows = if args.embeddings || args.input.is_file() {
        encode_embeddings(&args.input, &args.stats_from)?
    } else {
        let classes = load_image_tree(&args.input, args.width, args.height)?;
        classes
            .into_iter()
            .flat_map(|(label, vectors)| {
                vectors.into_iter().map(move |v| (label.clone(), v))
            })
            .collect()
    };
    let dimension = rows[0].1.len();
    write_labeled_vectors(&args.output, &rows)?;
    println!(
        "wrote {} rows of dimension {} to {}",
        rows.len(),
        dimension,
        args.output.display()
    );
    Ok(())
}

fn encode_embeddings(path: &Path, stats_from: &str) -> Result<Vec<(String, FuzzyVector)>> {
    let rows = read_labeled_reals(path)?;
    let fit_count = match stats_from {
        "all" => rows.len(),
        other => match other.strip_prefix("first:") {
            Some(n) => n
                .parse()
                .map_err(|_| Error::Config(format!("bad --stats-from `{other}`")))?,
            None => {
                return Err(Error::Config(format!(
                    "--stats-from must be `all` or `first:N`, got `{other}`"
                )))
            }
        },
    };
    if fit_count > rows.len() {
        return Err(Error::Config(format!(
            "--stats-from first:{fit_count} exceeds the {} dataset rows",
            rows.len()
        )));
    }
    let sample: Vec<Vec<f64>> = rows[..fit_count].iter().map(|(_, v)| v.clone()).collect();
    let stats = fuzzymm::fit_embedding_stats(&sample)?;
    rows.into_iter()
        .map(|(label, values)| Ok((label, standardize_logistic(&values, &stats)?)))
        .collect()
}

// ------------------------------------------------------------------ train

fn cmd_train(args: TrainArgs) -> Result<()> {
    let dataset = read_labeled_vectors(&args.data)?;
    let config = args.model.to_config()?;
    let bank = MemoryBank::build(&dataset, &config)?;
    save_bank(&bank, &args.model_out)?;
    println!(
        "trained {} classes of dimension {} -> {}",
        bank.classes().len(),
        bank.dimension(),
        args.model_out.display()
    );
    Ok(())
}

// ----------------------------------------------------------------- recall

fn cmd_recall(args: RecallArgs) -> Result<()> {
    let bank = load_bank(&args.model)?;
    let x = read_input_vector(&args.input)?;
    let x = apply_noise(&x, args.noise.as_deref(), args.seed, args.geometry.as_deref())?;
    let (label, model) = match &args.class {
        Some(c) => bank
            .classes()
            .iter()
            .find(|(label, _)| label == c)
            .ok_or_else(|| Error::NotFound(format!("class `{c}`")))?,
        None => &bank.classes()[0],
    };
    let (output, trace) = model.recall_traced(&x)?;
    if args.machine {
        println!("{}", join_machine(output.as_slice()));
    } else {
        println!("class: {label} ({})", model.kind_name());
        println!("recalled: {}", join_human(output.as_slice()));
        if let Some(trace) = trace {
            println!("coefficients: {}", join_human(&trace.coefficients));
            if let Some(index_set) = trace.index_set {
                println!("index set: {index_set:?}");
            }
        }
    }
    Ok(())
}

// --------------------------------------------------------------- classify

fn cmd_classify(args: ClassifyArgs) -> Result<()> {
    let bank = load_bank(&args.model)?;
    let x = read_input_vector(&args.input)?;
    let x = apply_noise(&x, args.noise.as_deref(), args.seed, args.geometry.as_deref())?;
    let outcome = bank.classify(&x)?;
    if args.machine {
        println!("{}", outcome.label);
        for (label, score) in bank.labels().zip(&outcome.scores) {
            println!("{label},{score:.16e}");
        }
    } else {
        println!("label: {}", outcome.label);
        let scores: Vec<String> = bank
            .labels()
            .zip(&outcome.scores)
            .map(|(label, score)| format!("{label}={score:.4}"))
            .collect();
        println!("scores: {}", scores.join(", "));
    }
    Ok(())
}

// ------------------------------------------------------------------- eval

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let (bank, test) = prepare_bank_and_test(
        args.model.as_deref(),
        args.data.as_deref(),
        args.images.as_deref(),
        args.train_first,
        args.width,
        args.height,
        &args.model_flags,
        args.model_out.as_deref(),
    )?;
    let test = match &args.noise {
        Some(spec) => {
            let geometry = eval_geometry(args.images.is_some(), args.width, args.height, args.geometry.as_deref())?;
            let kind = NoiseKind::parse(spec)?;
            let vectors: Vec<FuzzyVector> = test.iter().map(|(_, v)| v.clone()).collect();
            let corrupted = corrupt_batch(&vectors, &NoiseSpec::new(kind, args.seed), geometry)?;
            test.iter()
                .zip(corrupted)
                .map(|((label, _), v)| (label.clone(), v))
                .collect()
        }
        None => test,
    };
    let report = bank.evaluate(&test)?;
    if let Some(path) = &args.report {
        let file = std::fs::File::create(path)?;
        report.write_csv(file)?;
    }
    if args.json {
        println!("{}", report.to_json());
    } else {
        let total: u64 = report.confusion.iter().flatten().sum();
        println!(
            "overall recognition rate: {:.4} over {} test vectors ({:.3}s)",
            report.overall_rr,
            total,
            report.elapsed.as_secs_f64()
        );
        for (label, rate) in report.per_class_rr() {
            println!("  {label}: {rate:.4}");
        }
    }
    Ok(())
}

// ------------------------------------------------------------ noise sweep

fn cmd_noise_sweep(args: SweepArgs) -> Result<()> {
    if args.reps == 0 {
        return Err(Error::Config("noise sweep needs at least one repetition".into()));
    }
    let (bank, test) = prepare_bank_and_test(
        args.model.as_deref(),
        args.data.as_deref(),
        args.images.as_deref(),
        args.train_first,
        args.width,
        args.height,
        &args.model_flags,
        None,
    )?;
    let geometry = eval_geometry(args.images.is_some(), args.width, args.height, args.geometry.as_deref())?;
    let levels = sweep_levels(&args.noise, args.levels.as_deref())?;
    let vectors: Vec<FuzzyVector> = test.iter().map(|(_, v)| v.clone()).collect();

    let mut rows = vec!["noise,level,rep,recognition_rate".to_string()];
    for (li, level) in levels.iter().enumerate() {
        let kind = NoiseKind::parse(&format!("{}:{level}", args.noise))?;
        for rep in 0..args.reps {
            // Fresh deterministic seed per (level, repetition) cell.
            let cell = (li * args.reps + rep + 1) as u64;
            let seed = args.seed ^ cell.wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let corrupted = corrupt_batch(&vectors, &NoiseSpec::new(kind, seed), geometry)?;
            let noisy: Vec<(String, FuzzyVector)> = test
                .iter()
                .zip(corrupted)
                .map(|((label, _), v)| (label.clone(), v))
                .collect();
            let report = bank.evaluate(&noisy)?;
            rows.push(format!(
                "{},{level},{rep},{:.6}",
                args.noise, report.overall_rr
            ));
        }
    }
    for row in &rows {
        println!("{row}");
    }
    if let Some(path) = &args.output {
        std::fs::write(path, rows.join("\n") + "\n")?;
    }
    Ok(())
}

fn sweep_levels(kind: &str, levels: Option<&str>) -> Result<Vec<String>> {
    if let Some(text) = levels {
        let parsed: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
        if parsed.iter().any(|s| s.is_empty()) {
            return Err(Error::Config(format!("bad --levels `{text}`")));
        }
        return Ok(parsed);
    }
    Ok(match kind {
        "salt_pepper" | "salt-pepper" | "gaussian" => vec![
            "0".into(),
            "0.1".into(),
            "0.2".into(),
            "0.3".into(),
            "0.4".into(),
            "0.5".into(),
        ],
        "motion" | "motion_blur" | "motion-blur" => {
            (1..=20).map(|l| l.to_string()).collect()
        }
        other => return Err(Error::Config(format!("unknown noise kind `{other}`"))),
    })
}

// ----------------------------------------------------------- verify-paper

fn cmd_verify_paper(args: VerifyArgs) -> ExitCode {
    let started = Instant::now();
    let mut checks = run_reference_checks();
    checks.push(run_negative_control());
    let failed = checks.iter().filter(|c| !c.passed).count();
    if args.json {
        let report = serde_json::json!({
            "passed": failed == 0,
            "elapsed_seconds": started.elapsed().as_secs_f64(),
            "checks": checks
                .iter()
                .map(|c: &CheckResult| {
                    serde_json::json!({
                        "name": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                    })
                })
                .collect::<Vec<_>>(),
        });
        println!("{report:#}");
    } else {
        for check in &checks {
            let status = if check.passed { "PASS" } else { "FAIL" };
            println!("{status} {}: {}", check.name, check.detail);
        }
        if failed == 0 {
            println!("all {} checks passed ({:.3}s)", checks.len(), started.elapsed().as_secs_f64());
        } else {
            println!("{failed} of {} checks FAILED", checks.len());
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

// ---------------------------------------------------------------- shared

/// Builds the bank and the test set from either a (model, data) pair or an
/// image tree split.
#[allow(clippy::too_many_arguments)]
fn prepare_bank_and_test(
    model: Option<&Path>,
    data: Option<&Path>,
    images: Option<&Path>,
    train_first: usize,
    width: usize,
    height: usize,
    flags: &ModelFlags,
    model_out: Option<&Path>,
) -> Result<(MemoryBank, Vec<(String, FuzzyVector)>)> {
    match (model, data, images) {
        (Some(model), Some(data), None) => {
            let bank = load_bank(model)?;
            let test = read_labeled_vectors(data)?;
            Ok((bank, test))
        }
        (None, None, Some(dir)) => {
            if train_first == 0 {
                return Err(Error::Config("--train-first must be at least 1".into()));
            }
            let classes = load_image_tree(dir, width, height)?;
            let mut train = Vec::new();
            let mut test = Vec::new();
            for (label, vectors) in classes {
                if vectors.len() <= train_first {
                    return Err(Error::Config(format!(
                        "class `{label}` has {} images; --train-first {train_first} leaves no test split",
                        vectors.len()
                    )));
                }
                for (i, v) in vectors.into_iter().enumerate() {
                    if i < train_first {
                        train.push((label.clone(), v));
                    } else {
                        test.push((label.clone(), v));
                    }
                }
            }
            let config = flags.to_config()?;
            let bank = MemoryBank::build(&train, &config)?;
            if let Some(path) = model_out {
                save_bank(&bank, path)?;
            }
            Ok((bank, test))
        }
        _ => Err(Error::Config(
            "pass either --model with --data, or --images".into(),
        )),
    }
}

/// Geometry for noise: image mode implies it, CSV mode takes --geometry WxH.
fn eval_geometry(
    image_mode: bool,
    width: usize,
    height: usize,
    flag: Option<&str>,
) -> Result<Option<ImageGeometry>> {
    if let Some(text) = flag {
        let (w, h) = text
            .split_once('x')
            .ok_or_else(|| Error::Config(format!("bad --geometry `{text}`, expected WxH")))?;
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Config(format!("bad --geometry `{text}`, expected WxH")))
        };
        return Ok(Some(ImageGeometry::new(parse(w)?, parse(h)?)?));
    }
    if image_mode {
        return Ok(Some(ImageGeometry::new(width, height)?));
    }
    Ok(None)
}

fn apply_noise(
    x: &FuzzyVector,
    noise: Option<&str>,
    seed: u64,
    geometry: Option<&str>,
) -> Result<FuzzyVector> {
    match noise {
        Some(spec) => {
            let kind = NoiseKind::parse(spec)?;
            let geometry = eval_geometry(false, 0, 0, geometry)?;
            corrupt(x, &NoiseSpec::new(kind, seed), geometry)
        }
        None => Ok(x.clone()),
    }
}

/// Parses `0.4,0.3,...` inline or `@path.csv` (first row of a labeled CSV).
fn read_input_vector(text: &str) -> Result<FuzzyVector> {
    if let Some(path) = text.strip_prefix('@') {
        let rows = read_labeled_vectors(Path::new(path))?;
        return Ok(rows.into_iter().next().expect("reader rejects empty").1);
    }
    let values = text
        .split(',')
        .map(|field| {
            field
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad vector component `{field}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    FuzzyVector::new(values)
}

fn join_human(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:.4}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn join_machine(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:.16e}"))
        .collect::<Vec<_>>()
        .join(",")
}

// ------------------------------------------------------------ image trees

/// Loads `dir/<label>/<image>.{pgm,png}` with natural-ordered labels and
/// file names, encoding each image to a width x height vector.
fn load_image_tree(
    dir: &Path,
    width: usize,
    height: usize,
) -> Result<Vec<(String, Vec<FuzzyVector>)>> {
    let mut labels = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_dir() {
            labels.push((entry.file_name().to_string_lossy().into_owned(), entry.path()));
        }
    }
    if labels.is_empty() {
        return Err(Error::NotFound(format!(
            "no class subdirectories under {}",
            dir.display()
        )));
    }
    labels.sort_by(|a, b| natural_key(&a.0).cmp(&natural_key(&b.0)));

    let mut classes = Vec::new();
    for (label, path) in labels {
        let mut files = Vec::new();
        for entry in std::fs::read_dir(&path)? {
            let entry = entry?;
            let file = entry.path();
            let supported = matches!(
                file.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase()).as_deref(),
                Some("pgm") | Some("png")
            );
            if entry.file_type()?.is_file() && supported {
                files.push(file);
            }
        }
        if files.is_empty() {
            return Err(Error::NotFound(format!(
                "class `{label}` has no .pgm or .png images"
            )));
        }
        files.sort_by(|a, b| {
            let name = |p: &Path| p.file_name().map(|n| n.to_string_lossy().into_owned());
            natural_key(&name(a).unwrap_or_default()).cmp(&natural_key(&name(b).unwrap_or_default()))
        });
        let mut vectors = Vec::with_capacity(files.len());
        for file in files {
            let img = read_image(&file)?;
            vectors.push(fuzzymm::image_to_vector(&img, width, height)?);
        }
        classes.push((label, vectors));
    }
    // Uniform dimensionality across classes.
    let _ = FundamentalMemorySet::new(
        classes
            .iter()
            .flat_map(|(_, vs)| vs.iter().cloned())
            .collect(),
    )?;
    Ok(classes)
}

/// Natural sort key: digit runs compare numerically, so `2.pgm` < `10.pgm`.
fn natural_key(name: &str) -> Vec<(u8, u128, String)> {
    let mut key = Vec::new();
    let mut chars = name.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_ascii_digit() {
            let mut run = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    run.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            match run.parse::<u128>() {
                Ok(v) => key.push((0, v, String::new())),
                Err(_) => key.push((1, 0, run)),
            }
        } else {
            let mut run = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    break;
                }
                run.push(d);
                chars.next();
            }
            key.push((1, 0, run));
        }
    }
    key
}
