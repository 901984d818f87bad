//! End-to-end tests of the command-line binary: encode/train/recall round
//! trips on a synthetic image tree, mask-flag behavior, evaluation and
//! noise sweeps, the embedded verification command, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzymm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes a 4x4 grayscale PNG.
fn write_png(path: &Path, pixels: &[u8]) {
    image::GrayImage::from_raw(4, 4, pixels.to_vec())
        .unwrap()
        .save(path)
        .unwrap();
}

/// Two-class image tree: `one` is bright in the top half, `two` in the
/// bottom half, with one background pixel varying per image.
fn write_image_tree(root: &Path, images_per_class: usize) {
    for (label, bright_rows) in [("one", 0..2), ("two", 2..4)] {
        let dir = root.join(label);
        std::fs::create_dir_all(&dir).unwrap();
        for i in 0..images_per_class {
            let mut pixels = [20u8; 16];
            for row in bright_rows.clone() {
                for col in 0..4 {
                    pixels[row * 4 + col] = 230;
                }
            }
            let jitter = if label == "one" { 15 } else { 12 };
            pixels[jitter] = 20 + 3 * i as u8;
            write_png(&dir.join(format!("{}.png", i + 1)), &pixels);
        }
    }
}

/// The worked two-class CSV: masking decides between `one` and `two` for
/// the probe 0.35,0.35,0.6,0.3.
fn write_two_class_csv(path: &Path) {
    std::fs::write(
        path,
        "label,x0,x1,x2,x3\n\
         one,0.4,0.3,0.7,0.2\n\
         one,0.8,0.5,0.4,0.2\n\
         two,0.1,0.1,0.4,0.1\n",
    )
    .unwrap();
}

fn parse_machine_vector(line: &str) -> Vec<f64> {
    line.trim()
        .split(',')
        .map(|v| v.parse::<f64>().unwrap())
        .collect()
}

#[test]
fn encode_train_recall_round_trip() {
    let dir = TempDir::new().unwrap();
    let tree = dir.path().join("tree");
    write_image_tree(&tree, 2);
    let data = dir.path().join("data.csv");
    let bank = dir.path().join("bank.json");

    let out = run(&[
        "encode",
        "--input",
        path_str(&tree),
        "--output",
        path_str(&data),
        "--width",
        "4",
        "--height",
        "4",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("wrote 4 rows of dimension 16"));

    let out = run(&["train", "--data", path_str(&data), "--model-out", path_str(&bank)]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("trained 2 classes of dimension 16"));

    // Recalling a stored vector through its own class memory echoes it
    // bit for bit.
    let input = format!("@{}", data.display());
    let out = run(&[
        "recall", "--model", path_str(&bank), "--class", "one", "--input", &input, "--machine",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let recalled = parse_machine_vector(&stdout(&out));

    let csv = std::fs::read_to_string(&data).unwrap();
    let first_row = csv.lines().nth(1).unwrap();
    let (label, rest) = first_row.split_once(',').unwrap();
    assert_eq!(label, "one");
    let stored = parse_machine_vector(rest);
    assert_eq!(recalled, stored);

    // Human output names the class and prints the recalled vector.
    let out = run(&[
        "recall", "--model", path_str(&bank), "--class", "one", "--input", &input,
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("class: one"));
    assert!(text.contains("recalled:"));
}

#[test]
fn mask_flag_flips_the_borderline_classification() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("data.csv");
    write_two_class_csv(&data);
    let probe = "0.35,0.35,0.6,0.3";

    // Masked (default): the probe is attributed to the class whose stored
    // vector it resembles, even though the recall there is imperfect.
    let masked = dir.path().join("masked.json");
    let out = run(&["train", "--data", path_str(&data), "--model-out", path_str(&masked)]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let out = run(&[
        "classify", "--model", path_str(&masked), "--input", probe, "--machine",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().next().unwrap(), "one");

    // Unmasked: the inclusion recall for `one` collapses to zero and the
    // small vector of `two` wins.
    let unmasked = dir.path().join("unmasked.json");
    let out = run(&[
        "train", "--data", path_str(&data), "--model-out", path_str(&unmasked), "--mask", "off",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let out = run(&[
        "classify", "--model", path_str(&unmasked), "--input", probe, "--machine",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().next().unwrap(), "two");

    // Human output lists one score per class.
    let out = run(&["classify", "--model", path_str(&masked), "--input", probe]);
    let text = stdout(&out);
    assert!(text.contains("label: one"));
    assert!(text.contains("one=") && text.contains("two="));
}

#[test]
fn eval_on_training_data_is_perfect() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("data.csv");
    write_two_class_csv(&data);
    let bank = dir.path().join("bank.json");
    run(&["train", "--data", path_str(&data), "--model-out", path_str(&bank)]);

    let report = dir.path().join("report.csv");
    let out = run(&[
        "eval",
        "--model",
        path_str(&bank),
        "--data",
        path_str(&data),
        "--report",
        path_str(&report),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("overall recognition rate: 1.0000 over 3 test vectors"));

    let report = std::fs::read_to_string(&report).unwrap();
    assert!(report.starts_with("label,total,correct,recognition_rate"));
    assert!(report.contains("one,2,2,1.000000"));
    assert!(report.contains("two,1,1,1.000000"));

    let out = run(&[
        "eval", "--model", path_str(&bank), "--data", path_str(&data), "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["overall_rr"], 1.0);
    assert_eq!(value["labels"].as_array().unwrap().len(), 2);
}

#[test]
fn eval_splits_an_image_tree_on_the_first_images() {
    let dir = TempDir::new().unwrap();
    let tree = dir.path().join("tree");
    write_image_tree(&tree, 7);
    let bank = dir.path().join("bank.json");

    let out = run(&[
        "eval",
        "--images",
        path_str(&tree),
        "--train-first",
        "5",
        "--width",
        "4",
        "--height",
        "4",
        "--model-out",
        path_str(&bank),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("over 4 test vectors"), "{text}");
    assert!(text.contains("  one:") && text.contains("  two:"));

    // The bank trained on the split is saved and immediately usable.
    let probe = vec!["0.5"; 16].join(",");
    let out = run(&["classify", "--model", path_str(&bank), "--input", &probe]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));

    // A class with too few images for the split is a configuration error.
    let out = run(&["eval", "--images", path_str(&tree), "--train-first", "7"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("leaves no test split"));
}

#[test]
fn noise_sweep_reports_the_full_grid() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("data.csv");
    write_two_class_csv(&data);
    let bank = dir.path().join("bank.json");
    run(&["train", "--data", path_str(&data), "--model-out", path_str(&bank)]);

    let sweep = dir.path().join("sweep.csv");
    let args = [
        "noise-sweep",
        "--model",
        path_str(&bank),
        "--data",
        path_str(&data),
        "--seed",
        "7",
        "--output",
        path_str(&sweep),
    ];
    let out = run(&args);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    // Default salt-pepper grid: 6 levels x 3 repetitions, plus the header.
    assert_eq!(lines.len(), 19);
    assert_eq!(lines[0], "noise,level,rep,recognition_rate");
    for line in &lines[1..4] {
        // Zero corruption on the training set recalls perfectly.
        assert!(line.starts_with("salt_pepper,0,"), "{line}");
        assert!(line.ends_with("1.000000"), "{line}");
    }
    assert_eq!(std::fs::read_to_string(&sweep).unwrap().trim(), text.trim());

    // Same seed, same rows.
    assert_eq!(stdout(&run(&args)), text);

    // Zero repetitions is a configuration error.
    let out = run(&[
        "noise-sweep", "--model", path_str(&bank), "--data", path_str(&data), "--reps", "0",
    ]);
    assert_eq!(exit_code(&out), 2);

    // Motion blur over CSV data needs the image geometry.
    let out = run(&[
        "noise-sweep", "--model", path_str(&bank), "--data", path_str(&data),
        "--noise", "motion", "--levels", "3",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("geometry"));
    let out = run(&[
        "noise-sweep", "--model", path_str(&bank), "--data", path_str(&data),
        "--noise", "motion", "--levels", "3", "--geometry", "2x2",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
}

#[test]
fn noisy_classification_is_seed_deterministic() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("data.csv");
    write_two_class_csv(&data);
    let bank = dir.path().join("bank.json");
    run(&["train", "--data", path_str(&data), "--model-out", path_str(&bank)]);

    let args = [
        "classify",
        "--model",
        path_str(&bank),
        "--input",
        "0.4,0.3,0.7,0.2",
        "--noise",
        "salt_pepper:0.3",
        "--seed",
        "42",
        "--machine",
    ];
    let first = stdout(&run(&args));
    assert_eq!(stdout(&run(&args)), first);

    // Retraining from the same data reproduces the bank and its scores.
    let again = dir.path().join("again.json");
    run(&["train", "--data", path_str(&data), "--model-out", path_str(&again)]);
    let rerun = [
        "classify", "--model", path_str(&again), "--input", "0.4,0.3,0.7,0.2",
        "--noise", "salt_pepper:0.3", "--seed", "42", "--machine",
    ];
    assert_eq!(stdout(&run(&rerun)), first);
}

#[test]
fn embeddings_are_standardized_into_the_unit_interval() {
    let dir = TempDir::new().unwrap();
    let reals = dir.path().join("reals.csv");
    std::fs::write(
        &reals,
        "label,f0,f1\n\
         a,10.0,-3.0\n\
         a,12.0,-1.0\n\
         b,-5.0,4.0\n",
    )
    .unwrap();
    let encoded = dir.path().join("encoded.csv");

    let out = run(&[
        "encode",
        "--input",
        path_str(&reals),
        "--output",
        path_str(&encoded),
        "--stats-from",
        "first:2",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("wrote 3 rows of dimension 2"));
    let text = std::fs::read_to_string(&encoded).unwrap();
    for line in text.lines().skip(1) {
        let (_, rest) = line.split_once(',').unwrap();
        for v in parse_machine_vector(rest) {
            assert!((0.0..=1.0).contains(&v), "{v} out of range");
        }
    }

    // More fit rows than the dataset holds is a configuration error.
    let out = run(&[
        "encode", "--input", path_str(&reals), "--output", path_str(&encoded),
        "--stats-from", "first:99",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&[
        "encode", "--input", path_str(&reals), "--output", path_str(&encoded),
        "--stats-from", "oops",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_paper_reports_all_checks_as_json() {
    let out = run(&["verify-paper", "--json"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["passed"], true);
    let checks = value["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 14);
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert!(value["elapsed_seconds"].as_f64().unwrap() < 1.0);
}

#[test]
fn exit_codes_distinguish_usage_and_data_errors() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("data.csv");
    write_two_class_csv(&data);
    let bank = dir.path().join("bank.json");
    run(&["train", "--data", path_str(&data), "--model-out", path_str(&bank)]);
    let missing = dir.path().join("missing");

    // I/O and format errors exit 3.
    let out = run(&["classify", "--model", path_str(&missing), "--input", "0.1,0.2"]);
    assert_eq!(exit_code(&out), 3, "{}", stderr(&out));
    let out = run(&["train", "--data", path_str(&missing), "--model-out", path_str(&bank)]);
    assert_eq!(exit_code(&out), 3);
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "not a model").unwrap();
    let out = run(&["classify", "--model", path_str(&garbled), "--input", "0.1,0.2"]);
    assert_eq!(exit_code(&out), 3);

    // Configuration errors exit 2.
    let out = run(&[
        "train", "--data", path_str(&data), "--model-out", path_str(&bank),
        "--kind", "nonsense",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["eval", "--data", path_str(&data)]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("--model"));
    let out = run(&[
        "recall", "--model", path_str(&bank), "--input", "0.1,0.2,0.3,0.4",
        "--noise", "motion:3",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["classify", "--model", path_str(&bank), "--input", "0.1,0.2,oops"]);
    assert_eq!(exit_code(&out), 2);

    // Clap rejects unknown flags and bad enum values with the usage code.
    let out = run(&["classify", "--model", path_str(&bank), "--input", "0.1", "--bogus"]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&[
        "train", "--data", path_str(&data), "--model-out", path_str(&bank),
        "--mask", "sideways",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn every_memory_kind_trains_and_classifies() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("data.csv");
    write_two_class_csv(&data);
    for kind in [
        "distributed-max-c",
        "distributed-min-d",
        "projection-max-c",
        "projection-min-d",
    ] {
        for family in ["godel", "goguen", "lukasiewicz", "gaines"] {
            let bank = dir.path().join(format!("{kind}-{family}.json"));
            let out = run(&[
                "train", "--data", path_str(&data), "--model-out", path_str(&bank),
                "--kind", kind, "--family", family,
            ]);
            assert_eq!(exit_code(&out), 0, "{kind}/{family}: {}", stderr(&out));
            let out = run(&[
                "eval", "--model", path_str(&bank), "--data", path_str(&data),
            ]);
            assert_eq!(exit_code(&out), 0, "{kind}/{family}: {}", stderr(&out));
            let text = stdout(&out);
            assert!(text.contains("overall recognition rate:"), "{kind}/{family}: {text}");
            if kind.starts_with("projection") {
                // Projection recall of a stored vector is that vector, and
                // no other class can reproduce it, so the training set is
                // classified perfectly. Distributed memories make no such
                // promise: their fixed-point sets are large enough that a
                // small stored vector of one class can also be a fixed
                // point of another class's dilation, and the resulting
                // similarity tie may break the wrong way.
                assert!(text.contains("overall recognition rate: 1.0000"), "{kind}/{family}: {text}");
            }
        }
    }
    for kind in ["zadeh-max", "zadeh-min"] {
        let bank = dir.path().join(format!("{kind}.json"));
        let out = run(&[
            "train", "--data", path_str(&data), "--model-out", path_str(&bank),
            "--kind", kind,
        ]);
        assert_eq!(exit_code(&out), 0, "{kind}: {}", stderr(&out));
        let out = run(&["eval", "--model", path_str(&bank), "--data", path_str(&data)]);
        assert_eq!(exit_code(&out), 0, "{kind}: {}", stderr(&out));
        assert!(stdout(&out).contains("overall recognition rate: 1.0000"));
        // The comparison-only kinds take no connective family.
        let out = run(&[
            "train", "--data", path_str(&data), "--model-out", path_str(&bank),
            "--kind", kind, "--family", "godel",
        ]);
        assert_eq!(exit_code(&out), 2);
    }

    // The conjunctive-only family works for max-c kinds and is refused
    // where a disjunctive side or a strong negation would be needed.
    let bank = dir.path().join("compensatory.json");
    let out = run(&[
        "train", "--data", path_str(&data), "--model-out", path_str(&bank),
        "--kind", "projection-max-c", "--family", "compensatory_and", "--mask", "off",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let out = run(&[
        "train", "--data", path_str(&data), "--model-out", path_str(&bank),
        "--kind", "projection-min-d", "--family", "compensatory_and",
    ]);
    assert_eq!(exit_code(&out), 2);
}
