use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

const ENV_VARS: [&str; 14] = [
    "MONKEY_H",
    "MONKEY_M",
    "MONKEY_WPM",
    "MONKEY_CHARS_PER_WORD",
    "MONKEY_HOURS_PER_DAY",
    "MONKEY_DAYS_PER_YEAR",
    "MONKEY_MODE",
    "MONKEY_FORMAT",
    "MONKEY_TRIALS",
    "MONKEY_SEED",
    "MONKEY_WINDOW",
    "MONKEY_NGRAM_ORDER",
    "MONKEY_METHOD",
    "RAYON_NUM_THREADS",
];

fn monkey(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_monkey"));
    for var in ENV_VARS {
        cmd.env_remove(var);
    }
    cmd.args(args).envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_rows(args: &[&str], env: &[(&str, &str)]) -> Vec<Value> {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    stdout(&monkey(&full, env))
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is one JSON object"))
        .collect()
}

fn csv_rows(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut full = vec!["--format", "csv"];
    full.extend_from_slice(args);
    let text = stdout(&monkey(&full, &[]));
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

/// `field value` pairs from the single-record table layout.
fn table_record(args: &[&str]) -> Vec<(String, String)> {
    stdout(&monkey(args, &[]))
        .lines()
        .filter(|l| !l.starts_with("note:"))
        .map(|l| {
            let (k, v) = l.split_once(' ').unwrap();
            (k.to_owned(), v.trim_start().to_owned())
        })
        .collect()
}

fn temp_file(bytes: &[u8]) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(bytes).unwrap();
    f
}

fn years_log10(row: &Value, who: &str) -> f64 {
    row[format!("{who}_log10_years")].as_f64().unwrap()
}

#[test]
fn formats_carry_identical_fields() {
    let args = ["quote", "I'll be back"];
    let record = table_record(&args);
    let (header, rows) = csv_rows(&args);
    let json = json_rows(&args, &[]);
    assert_eq!(rows.len(), 1);
    assert_eq!(json.len(), 1);
    let names: Vec<&str> = record.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(names, header);
    let object = json[0].as_object().unwrap();
    assert_eq!(object.keys().map(String::as_str).collect::<Vec<_>>(), names);
    for ((name, table_value), csv_value) in record.iter().zip(&rows[0]) {
        assert_eq!(table_value, csv_value, "{name}");
        match &object[name.as_str()] {
            Value::String(s) => assert_eq!(s, csv_value, "{name}"),
            Value::Number(n) => {
                assert_eq!(n.as_f64().unwrap(), csv_value.parse::<f64>().unwrap(), "{name}")
            }
            other => panic!("{name}: unexpected {other}"),
        }
    }
}

#[test]
fn table_rows_round_trip() {
    let (header, rows) = csv_rows(&["table"]);
    let json = json_rows(&["table"], &[]);
    assert_eq!(rows.len(), json.len());
    assert_eq!(rows.len(), 14);
    for (row, obj) in rows.iter().zip(&json) {
        for (name, cell) in header.iter().zip(row) {
            match &obj[name] {
                Value::Null => assert!(cell.is_empty()),
                Value::String(s) => assert_eq!(s, cell),
                Value::Number(n) => assert_eq!(n.as_f64().unwrap(), cell.parse::<f64>().unwrap()),
                other => panic!("{other}"),
            }
        }
    }
    let bundled: Vec<&Value> = json.iter().filter(|r| r["status"] == "ok").collect();
    assert_eq!(bundled.len(), 10);
    let external = json.iter().filter(|r| r["status"] == "external input required").count();
    assert_eq!(external, 4);
}

#[test]
fn table_golden_rows() {
    let json = json_rows(&["table"], &[]);
    let row = |phrase: &str| {
        json.iter()
            .find(|r| r["phrase"] == phrase)
            .unwrap_or_else(|| panic!("{phrase}"))
    };
    let spice = row("I'll tell you what I want, what I really really want");
    assert_eq!(spice["length"], 50);
    assert_eq!(spice["educated_time"], "73,000 years");
    let fdr = row("The only thing we have to fear is fear itself");
    assert_eq!(fdr["length"], 45);
    let years = 10f64.powf(years_log10(fdr, "educated"));
    assert!((years / 3_658.6 - 1.0).abs() < 1e-3, "{years}");
    assert_eq!(row("To be or not to be")["educated_time"], "3 hours and 4 minutes");
}

#[test]
fn precise_table_is_footnoted() {
    let text = stdout(&monkey(&["--mode", "precise", "table"], &[]));
    assert!(text.contains("note: unrounded coefficients"), "{text}");
    let text = stdout(&monkey(&["table"], &[]));
    assert!(!text.contains("unrounded coefficients"));
}

#[test]
fn config_precedence_matrix() {
    // educated years scale as 1/wpm, so the winner is visible in the output
    let base = years_log10(&json_rows(&["quote", "me we"], &[])[0], "educated");
    let cases: [(Option<&str>, Option<&str>, f64); 4] = [
        (None, None, 52.0),
        (None, Some("26"), 26.0),
        (Some("104"), None, 104.0),
        (Some("104"), Some("26"), 104.0),
    ];
    for (flag, env, expected_wpm) in cases {
        let mut args = vec![];
        if let Some(f) = flag {
            args.extend(["--wpm", f]);
        }
        args.extend(["quote", "me we"]);
        let env: Vec<(&str, &str)> = env.map(|v| ("MONKEY_WPM", v)).into_iter().collect();
        let got = years_log10(&json_rows(&args, &env)[0], "educated");
        let want = base + (52.0 / expected_wpm).log10();
        assert!((got - want).abs() < 2e-4, "flag {flag:?} env {env:?}: {got} vs {want}");
    }

    let modes = [
        (vec![], vec![], "rounded_rule"),
        (vec![], vec![("MONKEY_MODE", "precise")], "full_precision"),
        (vec!["--mode", "exact"], vec![("MONKEY_MODE", "precise")], "full_precision"),
        (vec!["--mode", "rounded"], vec![("MONKEY_MODE", "precise")], "rounded_rule"),
    ];
    for (mut args, env, educated_mode) in modes {
        args.extend(["quote", "me we"]);
        let row = &json_rows(&args, &env)[0];
        assert_eq!(row["educated_mode"], educated_mode, "{args:?} {env:?}");
    }

    // env format, overridden by a flag
    let out = stdout(&monkey(&["quote", "me we"], &[("MONKEY_FORMAT", "csv")]));
    assert!(out.starts_with("phrase,normalized,length"));
    let out = stdout(&monkey(&["--format", "table", "quote", "me we"], &[("MONKEY_FORMAT", "csv")]));
    assert!(out.starts_with("phrase "));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], env: &[(&str, &str)]| monkey(args, env).status.code().unwrap();
    assert_eq!(code(&["quote", "me we"], &[]), 0);
    assert_eq!(code(&["--help"], &[]), 0);
    assert_eq!(code(&[], &[]), 1);
    assert_eq!(code(&["quote"], &[]), 1);
    assert_eq!(code(&["--mode", "fast", "table"], &[]), 1);
    assert_eq!(code(&["table"], &[("MONKEY_M", "many")]), 1);
    assert_eq!(code(&["--wpm", "0", "table"], &[]), 1);
    assert_eq!(code(&["--m", "1", "table"], &[]), 1);
    assert_eq!(code(&["simulate", "aa", "--trials", "0"], &[]), 1);
    assert_eq!(code(&["quote", "1234 !!"], &[]), 2);
    assert_eq!(code(&["corpus", "/definitely/not/here.txt"], &[]), 2);
    // rounded educated rule is only defined at h = 0.863
    let out = monkey(&["--h", "1.1", "quote", "me we"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--mode precise"));
    assert_eq!(code(&["--h", "1.1", "--mode", "precise", "quote", "me we"], &[]), 0);
}

#[test]
fn corpus_reads_files() {
    let same = temp_file(b"me we\n");
    let corpus = &json_rows(&["corpus", same.path().to_str().unwrap()], &[])[0];
    let quote = &json_rows(&["quote", "Me, we"], &[])[0];
    assert_eq!(corpus["length"], 5);
    for field in ["educated_log10_years", "random_log10_years", "educated_time", "random_time"] {
        assert_eq!(corpus[field], quote[field], "{field}");
    }

    let empty = temp_file(b"");
    let row = &json_rows(&["corpus", empty.path().to_str().unwrap()], &[])[0];
    assert_eq!(row["length"], 0);
    assert_eq!(row["educated_log10_keystrokes"], 0.0);
    assert_eq!(row["random_log10_keystrokes"], 0.0);

    let bad = temp_file(b"to be\xff or not");
    let out = monkey(&["corpus", bad.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte offset 5"));
}

#[test]
fn corpus_large_exponents_are_bare() {
    let hamlet = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/hamlet.txt");
    let row = &json_rows(&["corpus", hamlet], &[])[0];
    let educated = row["educated_time"].as_str().unwrap();
    assert!(educated.starts_with("10^41,9"), "{educated}");
    assert!(!educated.contains('×'));
}

#[test]
fn estimate_command() {
    let alternating = temp_file("ab".repeat(5_000).as_bytes());
    let path = alternating.path().to_str().unwrap();
    let row = &json_rows(&["estimate", path, "--ngram-order", "2"], &[])[0];
    assert!(row["bits_per_character"].as_f64().unwrap() < 1e-3);
    assert_eq!(row["sample_size"], 10_000);

    let row = &json_rows(&["estimate", path, "--method", "matchlen", "--window", "1024"], &[])[0];
    assert_eq!(row["method"], "matchlen");
    assert_eq!(row["parameter"], 1024);

    assert_eq!(monkey(&["estimate", path, "--method", "zip"], &[]).status.code(), Some(1));
    assert_eq!(
        monkey(&["estimate", path, "--method", "matchlen", "--window", "65536"], &[]).status.code(),
        Some(2)
    );
    assert_eq!(monkey(&["estimate", path, "--ngram-order", "0"], &[]).status.code(), Some(1));
}

#[test]
fn simulate_command() {
    let row = &json_rows(&["--m", "2", "simulate", "aa", "--trials", "100000", "--seed", "1"], &[])[0];
    assert_eq!(row["exact"], 6);
    assert_eq!(row["rule_of_thumb"], 4);
    let mean = row["empirical_mean"].as_f64().unwrap();
    let se = row["std_error"].as_f64().unwrap();
    assert!((mean - 6.0).abs() <= 3.0 * se, "{row}");

    let row = &json_rows(&["simulate", "abc", "--trials", "2000"], &[])[0];
    assert_eq!(row["exact"], 19_683);
    assert_eq!(row["rule_of_thumb"], 19_683);
    assert_eq!(row["exact_over_rule"], 1.0);
}

#[test]
fn simulate_is_byte_identical() {
    let args = ["--format", "csv", "--m", "3", "simulate", "aba", "--trials", "3000", "--seed", "7"];
    let first = monkey(&args, &[]).stdout;
    assert_eq!(first, monkey(&args, &[]).stdout);
    for threads in ["1", "2", "5"] {
        assert_eq!(first, monkey(&args, &[("RAYON_NUM_THREADS", threads)]).stdout, "{threads}");
    }
}

#[test]
fn presets_listing() {
    let rows = json_rows(&["presets"], &[]);
    assert_eq!(rows.len(), 7);
    let default: Vec<&Value> = rows.iter().filter(|r| r["default"] == "yes").collect();
    assert_eq!(default.len(), 1);
    assert_eq!(default[0]["estimate"], "0.863");
}
