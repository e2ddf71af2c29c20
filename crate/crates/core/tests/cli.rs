mod common;

use common::*;
use dglie::io;
use serde_json::Value;
use std::path::Path;

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn exit_codes_partition_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let mut seen = [0usize; 3];
    for (i, (args, expected)) in corpus().iter().enumerate() {
        let out = dir.path().join(format!("{i}.json"));
        let code = run_cli(args, &out);
        assert_eq!(code, *expected, "{args:?}");
        seen[code as usize] += 1;
        if code == 2 {
            assert!(!out.exists(), "{args:?} wrote a report on malformed input");
        } else {
            let r = report(&out);
            assert_eq!(r["pass"], Value::Bool(code == 0), "{args:?}");
            let verdicts = r["verdicts"].as_array().unwrap();
            let all = verdicts.iter().all(|v| v["pass"] == Value::Bool(true));
            assert_eq!(all, code == 0, "{args:?}: verdicts disagree with the exit code");
        }
    }
    assert!(seen.iter().all(|&n| n > 0), "{seen:?}");
}

#[test]
fn check_on_w11_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let input = fixture("presentations/w11.json").to_string_lossy().into_owned();
    assert_eq!(run_cli(&["check".into(), input], &out), 0);
    let r = report(&out);
    assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == Value::Bool(true)));
}

#[test]
fn check_names_the_generator_when_d_squared_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let input = fixture("broken/d_squared.json").to_string_lossy().into_owned();
    assert_eq!(run_cli(&["check".into(), input], &out), 1);
    let r = report(&out);
    let failed: Vec<&Value> = r["verdicts"].as_array().unwrap().iter().filter(|v| v["pass"] == Value::Bool(false)).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["check"], "d^2 = 0");
    assert!(failed[0]["witness"].as_str().unwrap().starts_with("d(d(z))"));
}

#[test]
fn homology_of_free_lie_on_an_odd_generator() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "la.json", r#"{"generators":[{"name":"a","degree":1}],"differential":{}}"#);
    let out = dir.path().join("r.json");
    let args: Vec<String> = ["homology", &input, "--min", "1", "--max", "3"].iter().map(|s| s.to_string()).collect();
    assert_eq!(run_cli(&args, &out), 0);
    let r = report(&out);
    let betti: Vec<u64> = r["tables"]["betti"].as_array().unwrap().iter().map(|b| b["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, vec![1, 1, 0]);
}

#[test]
fn windows_are_mandatory() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("presentations/w11.json").to_string_lossy().into_owned();
    let out = dir.path().join("r.json");
    assert_eq!(run_cli(&["homology".into(), input.clone(), "--min".into(), "1".into()], &out), 2);
    assert_eq!(run_cli(&["homology".into(), input, "--min".into(), "3".into(), "--max".into(), "1".into()], &out), 2);
}

#[test]
fn minimal_file_loads() {
    let text = r#"{"generators":[{"name":"x","degree":3}],"differential":{}}"#;
    let p = io::parse_presentation("min.json", text).unwrap();
    assert_eq!(p.ngens(), 1);
    assert!(dglie::report::all_pass(&p.validate()));
}

#[test]
fn grammar_errors_point_at_the_bracket() {
    let text = r#"{"generators":[{"name":"x","degree":1}],"differential":{"x":"[x"}}"#;
    let e = io::parse_presentation("bad.json", text).unwrap_err();
    assert_eq!(e.pointer, "/differential/x");
    assert!(e.message.contains("unclosed '['"), "{}", e.message);
    assert!(e.message.contains("byte 0"), "{}", e.message);
    let text = r#"{"generators":[{"name":"x","degree":1},{"name":"y","degree":2}],"differential":{"y":"[x, [x,x]"}}"#;
    let e = io::parse_presentation("bad.json", text).unwrap_err();
    assert!(e.message.contains("byte 0"), "{}", e.message);
}

#[test]
fn schema_errors_carry_a_json_pointer() {
    let cases = [
        (r#"{"generators":[{"name":"x","degree":1,"weight":2}]}"#, "/generators/0/weight"),
        (r#"{"generators":[{"name":"x","degree":"one"}]}"#, "/generators/0/degree"),
        (r#"{"generators":[],"extra":1}"#, "/extra"),
        (r#"{"generators":[{"name":"x","degree":1}],"subalgebras":{"A":{"generators":["x"],"elements":[]}}}"#, "/subalgebras/A"),
    ];
    for (text, pointer) in cases {
        let e = io::parse_presentation("s.json", text).unwrap_err();
        assert!(e.pointer.starts_with(pointer), "{text}: pointer {:?}, message {}", e.pointer, e.message);
    }
}

#[test]
fn unknown_names_are_input_errors() {
    let text = r#"{"generators":[{"name":"x","degree":1}],"differential":{"y":"0"}}"#;
    assert!(io::parse_presentation("s.json", text).is_err());
    let text = r#"{"generators":[{"name":"x","degree":2}],"differential":{"x":"[x,z]"}}"#;
    assert!(io::parse_presentation("s.json", text).is_err());
}

#[test]
fn presentations_round_trip() {
    for (name, p) in presentations() {
        let json = serde_json::to_string(&io::presentation_to_json(&p)).unwrap();
        let back = io::parse_presentation(&name, &json).unwrap();
        assert_eq!(*p, back, "{name}");
        assert_eq!(serde_json::to_string(&io::presentation_to_json(&back)).unwrap(), json);
    }
    let mut rng = rng(21);
    for _ in 0..50 {
        let p = random_presentation(&mut rng, 4, 5);
        let json = serde_json::to_string(&io::presentation_to_json(&p)).unwrap();
        assert_eq!(*p, io::parse_presentation("r.json", &json).unwrap());
    }
}

#[test]
fn models_round_trip() {
    for (name, m) in models() {
        let json = serde_json::to_string(&io::model_to_json(&m)).unwrap();
        let back = io::parse_model_data(&name, &json).unwrap().build().unwrap();
        assert_eq!(back.presentation(), m.presentation(), "{name}");
        assert_eq!(back.space().pairing(), m.space().pairing(), "{name}");
        assert_eq!(back.pontryagin(), m.pontryagin(), "{name}");
        assert_eq!(serde_json::to_string(&io::model_to_json(&back)).unwrap(), json);
    }
}

#[test]
fn rationals_are_strings_in_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let input = fixture("models/w21.json").to_string_lossy().into_owned();
    assert_eq!(run_cli(&["model".into(), input], &out), 0);
    fn no_floats(v: &Value) -> bool {
        match v {
            Value::Number(n) => n.is_i64() || n.is_u64(),
            Value::Array(a) => a.iter().all(no_floats),
            Value::Object(o) => o.values().all(no_floats),
            _ => true,
        }
    }
    assert!(no_floats(&report(&out)));
}

#[test]
fn timing_is_the_only_nondeterminism() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("models/w21.json").to_string_lossy().into_owned();
    let args = ["block-g", &input, "--max", "3", "--assert-semisimple"];
    let mut bodies = Vec::new();
    for _ in 0..2 {
        let out = dir.path().join("r.json");
        let mut argv: Vec<String> = vec!["dglie".into()];
        argv.extend(args.iter().map(|s| s.to_string()));
        argv.extend(["--out".into(), out.to_string_lossy().into_owned()]);
        assert_eq!(dglie::cli::run(argv), 0);
        let mut r = report(&out);
        assert!(r.get("elapsed_us").is_some());
        r.as_object_mut().unwrap().remove("elapsed_us");
        bodies.push(r);
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn reports_hash_their_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let path = fixture("presentations/mixed.json");
    assert_eq!(run_cli(&["check".into(), path.to_string_lossy().into_owned()], &out), 0);
    let r = report(&out);
    let want = io::sha256_hex(&std::fs::read(&path).unwrap());
    assert_eq!(r["inputs"][0]["sha256"], Value::String(want));
}
