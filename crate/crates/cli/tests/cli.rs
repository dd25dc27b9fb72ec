use std::path::PathBuf;
use std::process::{Command, Output};

use setconj::gen::Gen;
use setconj::polyhedra::Polyhedron;
use setconj::rational::format_vec;
use setconj::setvalued::SetFn;
use setconj::Error;
use setconj_cli::harness::{self, exit_code, Options};
use setconj_cli::instance::{Document, FunctionDoc, Instance, Kind, RowDoc, Space, Spaces, TaskDoc};

fn bundled(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(name)
}

fn setconj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setconj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn shifted_cone_biconjugate_is_g() {
    let out = setconj(&["run", bundled("shifted-cone.json").to_str().unwrap(), "--task", "biconjugate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let d = &r["tasks"][0]["details"];
    assert_eq!(r["tasks"].as_array().unwrap().len(), 1);
    assert_eq!(d["equals_hull"], true);
    assert_eq!(d["equals_input"], true);
}

#[test]
fn two_point_biconjugate_is_hull() {
    let out = setconj(&["run", bundled("two-point.json").to_str().unwrap(), "--task", "biconjugate"]);
    assert_eq!(out.status.code(), Some(0));
    let d = &report(&out)["tasks"][0]["details"];
    assert_eq!(d["equals_hull"], true);
    assert_eq!(d["equals_input"], false);
    assert_eq!(d["biconjugate"]["pieces"][0], "{[0 -1 -1] <= -1; [0 -1 0] <= 0; [0 0 -1] <= 0}");
}

#[test]
fn all_bundled_tasks_pass() {
    for name in ["shifted-cone.json", "two-point.json"] {
        let out = setconj(&["run", bundled(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(&out)["passed"], true);
    }
}

#[test]
fn zero_denominator_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(bundled("two-point.json")).unwrap();
    let bad = text.replacen("\"b\": \"-1\"", "\"b\": \"1/0\"", 1);
    let out = setconj(&["run", &write_tmp(&dir, "bad.json", &bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("functions.g.pieces[0][1].b"), "{err}");
}

#[test]
fn structural_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(bundled("two-point.json")).unwrap();
    for bad in [
        text.replace("\"seed\"", "\"sede\""),
        text.replace("\"function\": \"g\"", "\"function\": \"h\""),
        text.replace("[\"0\", \"1\"]]", "[\"0\", \"1\"], [\"-1\", \"-1\"]]"),
        "{".to_string(),
    ] {
        let out = setconj(&["run", &write_tmp(&dir, "bad.json", &bad)]);
        assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(setconj(&["run", "/nonexistent/instance.json"]).status.code(), Some(2));
}

#[test]
fn truncated_directions_exit_1_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(bundled("two-point.json")).unwrap();
    let bad = text.replace(
        "{\"task\": \"biconjugate\", \"function\": \"g\"}",
        "{\"task\": \"biconjugate\", \"function\": \"g\", \"directions\": [{\"x_star\": [\"0\"], \"z_star\": [\"-1\", \"0\"]}]}",
    );
    let out = setconj(&["run", &write_tmp(&dir, "short.json", &bad), "--task", "biconjugate"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("g** and cl co g disagree"), "{err}");
    assert_eq!(report(&out)["tasks"][0]["details"]["equals_hull"], false);
}

#[test]
fn resource_cap_exits_3() {
    let out = setconj(&["run", bundled("shifted-cone.json").to_str().unwrap(), "--cap", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource cap"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = setconj(&["run", bundled("shifted-cone.json").to_str().unwrap(), "--seed", "99", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().contains("\"seed\": 99"));
}

#[test]
fn props_smoke() {
    let out = setconj(&["props", "--iters", "2", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() >= 12 && !text.contains("FAIL"));
}

#[test]
fn bundled_round_trip() {
    for name in ["shifted-cone.json", "two-point.json"] {
        let inst = Instance::parse(&std::fs::read_to_string(bundled(name)).unwrap()).unwrap();
        let text = inst.to_json();
        assert_eq!(Instance::parse(&text).unwrap().to_json(), text);
    }
}

fn rows(p: &Polyhedron) -> Vec<RowDoc> {
    p.constraints
        .iter()
        .map(|c| RowDoc {
            a: format_vec(&c.normal),
            b: format_vec(std::slice::from_ref(&c.bound)).remove(0),
            strict: c.strict,
        })
        .collect()
}

fn document(g: &SetFn, tasks: Vec<TaskDoc>, seed: u64) -> Document {
    let f = FunctionDoc {
        kind: Kind::Set,
        space: Space::X,
        pieces: g.pieces().iter().map(rows).collect(),
        full_region: g.full_region().iter().map(rows).collect(),
        minus_inf: Vec::new(),
    };
    Document {
        name: format!("generated-{seed}"),
        spaces: Spaces { x_dim: g.x_dim(), y_dim: 0, z_dim: g.z_dim() },
        cone: g.cone().generators().iter().map(|v| format_vec(v)).collect(),
        functions: [("g".to_string(), f)].into(),
        matrices: Default::default(),
        tasks,
        seed,
    }
}

/// Generated instances: clean ones pass, injected zero denominators are
/// parse errors, a starved constraint cap is a resource error.
#[test]
fn exit_contract_on_generated_instances() {
    let mut gen = Gen::new(0x5E7C);
    for i in 0..40u64 {
        let cone = gen.cone(2);
        let g = gen.any_set_fn(&cone, 1);
        let tasks = vec![
            TaskDoc::Biconjugate { function: "g".into(), directions: Default::default() },
            TaskDoc::Properties { function: "g".into() },
        ];
        let text = serde_json::to_string(&document(&g, tasks, i)).unwrap();
        let inst = Instance::parse(&text).unwrap();
        let rep = harness::run(&inst, &Options::default()).unwrap();
        assert!(rep.passed, "instance {i}: {:?}", rep.first_failure());

        let again = Instance::parse(&inst.to_json()).unwrap();
        assert_eq!(again.to_json(), inst.to_json());

        let quoted: Vec<usize> = text.match_indices("\"b\":\"").map(|(k, _)| k + 5).collect();
        if !quoted.is_empty() {
            let at = quoted[gen.int(0, quoted.len() as i64 - 1) as usize];
            let end = at + text[at..].find('"').unwrap();
            let bad = format!("{}1/0{}", &text[..at], &text[end..]);
            let err = Instance::parse(&bad).unwrap_err();
            assert!(matches!(err, Error::Parse { .. }));
            assert_eq!(exit_code(&err), 2);
        }
    }
}

/// Replays the checked-in fuzz seeds through the fuzz target bodies.
#[test]
fn fuzz_corpus_seeds() {
    use setconj::rational::{format_rat, parse_rat};
    use setconj::ExtReal;

    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let read = |target: &str| -> Vec<String> {
        let mut files: Vec<_> = std::fs::read_dir(root.join(target)).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        files.iter().map(|p| std::fs::read_to_string(p).unwrap()).collect()
    };
    for s in read("parse_rat") {
        if let Ok(r) = parse_rat(&s) {
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
    }
    for s in read("parse_extreal") {
        if let Ok(r) = s.parse::<ExtReal>() {
            assert_eq!(r.to_string().parse::<ExtReal>().unwrap(), r);
        }
    }
    let mut parsed = 0;
    for s in read("parse_instance") {
        if let Ok(inst) = Instance::parse(&s) {
            let text = inst.to_json();
            assert_eq!(Instance::parse(&text).unwrap().to_json(), text);
            parsed += 1;
        }
    }
    assert_eq!(parsed, 3);
}
