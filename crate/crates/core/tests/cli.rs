mod common;

use std::io::Write;
use std::process::{Command, Output};

use common::corpus_path;

fn qcenc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcenc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path_str(name: &str) -> String {
    corpus_path(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn validate_exit_codes() {
    assert_eq!(
        qcenc(&["validate", &path_str("running1")]).status.code(),
        Some(0)
    );

    let malformed = temp_file("n=4\nk=2\nh XXX|IIXX\nh ZZZZ\n");
    let out = qcenc(&["validate", malformed.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let invalid = temp_file("n=4\nk=2\nh XXXX|XXIX|IXII|IIXX\nh ZZZZ|ZZII|IZII|IIZZ\n");
    let out = qcenc(&["validate", invalid.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("violation: (1, 2, 0)"), "{stderr}");

    let out = qcenc(&["validate", "/nonexistent/code.qcc"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_json_lists_violations() {
    let invalid = temp_file("n=3\nk=1\nh XII\nh ZII\n");
    let out = qcenc(&["validate", "--json", invalid.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["t"], 0);
}

#[test]
fn synthesize_running_examples() {
    let out = qcenc(&["synthesize", "--json", &path_str("running1")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["synth"]["m"], 3);
    assert_eq!(v["analysis"]["catastrophic"], false);
    assert_eq!(v["analysis"]["recursive"], false);
    assert_eq!(v["analysis"]["roundtrip"], true);
    assert!(v.get("timing").is_none());

    let v = json(&qcenc(&["synthesize", "--json", &path_str("running2")]));
    assert_eq!(v["synth"]["m"], 6);
    assert_eq!(v["synth"]["added_rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["synth"]["memory_ops"].as_object().unwrap().len(), 8);
}

#[test]
fn forney8_adds_six_rows_onto_z_memory_basis() {
    let v = json(&qcenc(&["synthesize", "--json", &path_str("forney8")]));
    assert_eq!(v["synth"]["m"], 6);
    let rows = v["synth"]["added_rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for (a, row) in rows.iter().enumerate() {
        let mut x = ['I'; 6];
        x[a] = 'X';
        let mut z = ['I'; 6];
        z[a] = 'Z';
        assert_eq!(row["info_in"], x.iter().collect::<String>());
        assert_eq!(row["mem_out"], z.iter().collect::<String>());
        assert_eq!(row["phys_out"], "IIIIIIII");
    }
}

#[test]
fn same_seed_gives_identical_json() {
    for name in ["running1", "running2", "forney4"] {
        let args = ["synthesize", "--json", "--seed", "17", &path_str(name)];
        let a = qcenc(&args);
        let b = qcenc(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn timing_is_opt_in() {
    let out = qcenc(&["synthesize", "--json", "--timing", &path_str("running1")]);
    let v = json(&out);
    assert!(v["timing"].as_object().unwrap().contains_key("synth"));
    let text = String::from_utf8(out.stdout).unwrap();
    let at: Vec<usize> = ["code", "shorten", "synth", "analysis", "timing"]
        .iter()
        .map(|k| text.find(&format!("\n  \"{k}\":")).unwrap())
        .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "{at:?}");
}

#[test]
fn analyze_codes_and_tableaux() {
    let out = qcenc(&["analyze", "--json", &path_str("running1")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["analysis"]["catastrophic"], false);
    assert_eq!(v["analysis"]["recursive"], false);

    let tab = common::corpus_dir().join("catastrophic.tab");
    let out = qcenc(&["analyze", "--json", tab.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["analysis"]["catastrophic"], true);
    let edges = v["analysis"]["cycle_witness"]["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 1);
    assert_eq!(edges[0]["m"], "X");
    assert_eq!(edges[0]["m_prime"], "X");
}

#[test]
fn analyze_memory_bound() {
    let out = qcenc(&["analyze", "--max-memory", "4", &path_str("gr07-third")]);
    assert_eq!(out.status.code(), Some(4));
    let out = qcenc(&["analyze", "--max-memory", "6", &path_str("gr07-third")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn shorten_prints_canonical_code_and_logs_steps() {
    // h2 replaced by h1 x D(h2): its first block repeats h1's.
    let code = common::load("running1");
    let h2 = qcenc::code::delay_generator(code.generator(1), 1).unwrap();
    let h2 = qcenc::code::multiply_generators(&h2, code.generator(0)).unwrap();
    let variant = temp_file(&code.with_generator(1, h2).unwrap().to_text());
    let out = qcenc(&["shorten", variant.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("n=4\nk=2\nh "), "{stdout}");
    qcenc::code::parse_code(&stdout).unwrap();
    assert!(!out.stderr.is_empty());

    let out = qcenc(&["shorten", &path_str("running1")]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        common::load("running1").to_text()
    );
    assert!(out.stderr.is_empty());
}

#[test]
fn omega_reports_rank_and_memory() {
    let out = qcenc(&["omega", &path_str("running1")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dim 6 rank 6 m 3"), "{text}");
    let v = json(&qcenc(&["omega", "--json", &path_str("forney8")]));
    assert_eq!(v["synth"]["rank"], 0);
    assert_eq!(v["synth"]["m"], 6);
}

#[test]
fn circuit_gate_lists() {
    let tab = common::corpus_dir().join("catastrophic.tab");
    let out = qcenc(&["circuit", tab.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&qcenc(&["circuit", "--json", &path_str("running1")]));
    let gates = v["analysis"]["gates"].as_array().unwrap();
    assert_eq!(
        v["analysis"]["gate_count"].as_u64().unwrap() as usize,
        gates.len()
    );
    assert!(gates
        .iter()
        .all(|g| g["kind"].is_string() && g["qubits"].is_array()));
}

#[test]
fn bad_tableau_is_a_parse_error() {
    let bad = temp_file("m=1\nn=1\nk=1\nx XI\nz XI\nx XX\nz IZ\n");
    let out = qcenc(&["analyze", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
