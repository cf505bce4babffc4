use std::process::{Command, Output};

fn lamcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn norm_examples() {
    let o = lamcat(&["norm", r"(\x.x) y", "--context", "y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "y");

    let o = lamcat(&["norm", "#app a b", "--context", "a,b"]);
    assert_eq!(stdout(&o), "a b");

    let o = lamcat(&["norm", r"(\x.x x)(\x.x x)", "--fuel", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("fuel exhausted"));
}

#[test]
fn norm_json() {
    let o = lamcat(&["norm", r"(\x y. y x) a", "--context", "a", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "normal_form");
    assert_eq!(v["term"], r"\x. x a");
    assert_eq!(v["steps"], 1);
}

#[test]
fn parse_errors_exit_one() {
    let o = lamcat(&["norm", "free"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unbound identifier `free` at 0"));
    assert_eq!(lamcat(&["norm", r"(\x. x"]).status.code(), Some(1));
    assert_eq!(lamcat(&["suite", "nonsense"]).status.code(), Some(1));
    assert_eq!(lamcat(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn eq_examples() {
    let o = lamcat(&["eq", "#T", "#F"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("Distinct"));

    let o = lamcat(&["eq", "#Theta f", "f (#Theta f)", "--context", "f"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Equal"));

    let o = lamcat(&["eq", "#Omega", "#I", "--fuel", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("Unknown"));
}

#[test]
fn eta_flag() {
    assert_eq!(lamcat(&["eq", r"\x. f x", "f", "--context", "f"]).status.code(), Some(3));
    assert_eq!(lamcat(&["eq", r"\x. f x", "f", "--context", "f", "--eta"]).status.code(), Some(0));
}

#[test]
fn interpret_in_extension() {
    let dir = std::env::temp_dir().join(format!("lamcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("alg.json");
    std::fs::write(
        &path,
        r#"{"name": "demo", "constants": [{"name": "c", "unfolding": null}, {"name": "d", "unfolding": "\\x. #K x"}]}"#,
    )
    .unwrap();
    let theory = format!("lambda-ext:{}", path.display());
    let o = lamcat(&["interpret", "#d #c z", "--theory", &theory, "--context", "z"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "#c");

    let o = lamcat(&["interpret", r"(\x. x) #c", "--theory", &theory, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["theory"], "lambda[demo]");
    assert_eq!(v["element"], "#c");

    let o = lamcat(&["interpret", "#nope", "--theory", &theory]);
    assert_eq!(o.status.code(), Some(1));
    let o = lamcat(&["interpret", "#I", "--theory", "lambda-ext:/no/such/file.json"]);
    assert_eq!(o.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn interpret_in_lambda() {
    let o = lamcat(&["interpret", r"(\x. x) y", "--context", "y"]);
    assert_eq!(stdout(&o), "y");
}

#[test]
fn paper_suite_report() {
    let o = lamcat(&["suite", "paper", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "paper");
    assert_eq!(v["summary"]["distinct"], 0);
    assert_eq!(v["summary"]["unknown"], 0);
    let ids: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn obstruction_and_text_output() {
    let o = lamcat(&["suite", "obstruction"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("obstruction: 4 equal, 0 distinct, 0 unknown"));
}

#[test]
fn low_fuel_suite_is_inconclusive() {
    let o = lamcat(&["suite", "paper", "--fuel", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suite_reports_are_deterministic() {
    let a = lamcat(&["karoubi-suite", "--seed", "7", "--json"]);
    let b = lamcat(&["suite", "karoubi", "--seed", "7", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    let (va, vb): (serde_json::Value, serde_json::Value) =
        (serde_json::from_str(&stdout(&a)).unwrap(), serde_json::from_str(&stdout(&b)).unwrap());
    assert_eq!(va["records"], vb["records"]);
    let c = lamcat(&["fundamental-suite", "--json"]);
    assert_eq!(c.status.code(), Some(0));
}
