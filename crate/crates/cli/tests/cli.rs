use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde::Deserialize;

/// Set to rewrite the golden files from the current build.
const BLESS_ENV: &str = "RELCAT_BLESS";

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn relcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcat"))
        .args(args)
        .env_remove("RELCAT_BUDGET")
        .output()
        .expect("relcat runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[derive(Deserialize)]
struct Entry {
    input: String,
    command: String,
    args: Vec<String>,
    exit: i32,
    /// Distinguishes two goldens of the same command on the same input.
    #[serde(default)]
    variant: Option<String>,
}

impl Entry {
    fn golden_name(&self) -> String {
        let stem = self.input.trim_end_matches(".json");
        match &self.variant {
            Some(v) => format!("{stem}.{}.{v}.json", self.command),
            None => format!("{stem}.{}.json", self.command),
        }
    }

    fn argv(&self, extra: &[&str]) -> Vec<String> {
        let mut v = vec![
            self.command.clone(),
            corpus().join(&self.input).display().to_string(),
            "--format".into(),
            "json".into(),
        ];
        v.extend(self.args.iter().cloned());
        v.extend(extra.iter().map(|s| s.to_string()));
        v
    }

    fn run(&self, extra: &[&str]) -> Output {
        let argv = self.argv(extra);
        let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
        relcat(&refs)
    }
}

fn manifest() -> Vec<Entry> {
    let text = fs::read_to_string(corpus().join("golden/manifest.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn manifest_covers_every_corpus_input() {
    let entries = manifest();
    let mut names: Vec<_> = fs::read_dir(corpus())
        .unwrap()
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            name.ends_with(".json").then_some(name)
        })
        .collect();
    names.sort();
    for name in names {
        assert!(
            entries.iter().any(|e| e.input == name),
            "{name} has no golden"
        );
    }
    let mut golden: Vec<_> = entries.iter().map(Entry::golden_name).collect();
    let n = golden.len();
    golden.sort();
    golden.dedup();
    assert_eq!(golden.len(), n, "golden names collide");
}

#[test]
fn goldens_reproduce_and_verify() {
    let bless = std::env::var_os(BLESS_ENV).is_some();
    for entry in manifest() {
        let path = corpus().join("golden").join(entry.golden_name());
        let out = entry.run(&[]);
        assert_eq!(
            code(&out),
            entry.exit,
            "{}: {}",
            entry.golden_name(),
            stderr(&out)
        );
        let produced = String::from_utf8(out.stdout).unwrap();
        if bless {
            fs::write(&path, &produced).unwrap();
        } else {
            let expected = fs::read_to_string(&path).unwrap_or_else(|_| {
                panic!(
                    "missing golden {}; rerun with {BLESS_ENV}=1",
                    path.display()
                )
            });
            assert!(
                produced == expected,
                "{} differs from its golden",
                entry.golden_name()
            );
        }
        let check = relcat(&["verify", path.to_str().unwrap()]);
        assert_eq!(
            code(&check),
            0,
            "{} does not verify: {}",
            entry.golden_name(),
            String::from_utf8_lossy(&check.stdout)
        );
    }
}

#[test]
fn json_is_identical_across_runs_and_thread_counts() {
    for entry in manifest()
        .iter()
        .filter(|e| ["segal", "htac", "check-fibration", "ho-hom"].contains(&e.command.as_str()))
    {
        let one = entry.run(&["--jobs", "1"]);
        let four = entry.run(&["--jobs", "4"]);
        let again = entry.run(&["--jobs", "4"]);
        assert!(
            one.stdout == four.stdout,
            "{} depends on --jobs",
            entry.golden_name()
        );
        assert!(
            four.stdout == again.stdout,
            "{} differs between runs",
            entry.golden_name()
        );
    }
}

#[test]
fn segal_on_c2of3_passes() {
    let c = corpus().join("c2of3.json");
    let out = relcat(&[
        "segal",
        "--n",
        "1",
        "--d",
        "2",
        c.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "segal");
    assert_eq!(doc["config"]["d"], 2);
}

#[test]
fn text_output_summarizes() {
    let c = corpus().join("c2of3.json");
    let out = relcat(&["validate", c.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("two-out-of-three: fails at f = a, g = b, g∘f = a'"),
        "{text}"
    );
}

#[test]
fn malformed_composition_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"objects": ["0", "1", "2"],
            "morphisms": [{"id": "i0", "src": "0", "tgt": "0"}, {"id": "i1", "src": "1", "tgt": "1"},
                          {"id": "i2", "src": "2", "tgt": "2"},
                          {"id": "f", "src": "0", "tgt": "1"}, {"id": "g", "src": "1", "tgt": "2"}],
            "identities": {"0": "i0", "1": "i1", "2": "i2"},
            "composition": [], "weq_generators": []}"#,
    )
    .unwrap();
    let out = relcat(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("missing composite for composable pair (g, f)"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn unreadable_input_exits_2() {
    let out = relcat(&["validate", "/nonexistent/c.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn budget_overflow_exits_2_with_hint() {
    let c = corpus().join("c2of3.json");
    let out = relcat(&["htac", c.to_str().unwrap(), "--budget", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--budget"), "{}", stderr(&out));
}

#[test]
fn refusal_exits_1() {
    let c = corpus().join("htac_fail.json");
    let out = relcat(&["htac", c.to_str().unwrap(), "--K", "1"]);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
}

#[test]
fn tampered_document_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let golden = fs::read_to_string(corpus().join("golden/c2of3.validate.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&golden).unwrap();
    let holds = &mut doc["report"]["two_out_of_three"];
    assert!(holds.is_boolean(), "unexpected validate layout: {doc}");
    *holds = serde_json::Value::Bool(true);
    let path = dir.path().join("t.json");
    fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let out = relcat(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stdout));

    let mut doc: serde_json::Value = serde_json::from_str(&golden).unwrap();
    doc["schema_version"] = serde_json::json!(999);
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(code(&relcat(&["verify", path.to_str().unwrap()])), 2);
}
