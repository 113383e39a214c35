use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn wallkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallkit")).args(args).output().expect("run wallkit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

fn unit_square() -> Value {
    json!({ "name": "square", "base": [[0, 0], [1, 0], [1, 1], [0, 1]] })
}

#[test]
fn exported_pentagon_validates() {
    let dir = tempfile::tempdir().unwrap();
    let o = wallkit(&["shape", "export", "heesch_pentagon"]);
    assert_eq!(o.status.code(), Some(0));
    let path = dir.path().join("p.json");
    std::fs::write(&path, stdout(&o)).unwrap();
    let v = wallkit(&["shape", "validate", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    assert!(stdout(&v).starts_with(&stdout(&o)));
    assert!(stdout(&v).contains("valid: 5 vertices"));
}

#[test]
fn dent_leaving_the_base_names_its_edge() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = unit_square();
    s["profiles"] = json!({ "deep": { "apex": [[[1, 0, 4], 0], [[1, 0, 2], 2], [[3, 0, 4], 0]] } });
    s["decorations"] = json!([null, { "profile": "deep", "side": "in" }, null, null]);
    let p = write(dir.path(), "s.json", &s);
    let o = wallkit(&["shape", "validate", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("edge 1"), "{}", stderr(&o));
}

#[test]
fn self_intersecting_base_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bow.json", &json!({ "name": "bow", "base": [[0, 0], [1, 1], [1, 0], [0, 1]] }));
    let o = wallkit(&["shape", "validate", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("base"));
}

#[test]
fn bad_arguments_are_input_errors() {
    assert_eq!(wallkit(&["wall", "find", "no_such_shape"]).status.code(), Some(2));
    assert_eq!(wallkit(&["corona", "chopped_disk", "--rotations", "5"]).status.code(), Some(2));
    assert_eq!(wallkit(&["corona", "chopped_disk", "-p", "m=5"]).status.code(), Some(2));
    assert_eq!(wallkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn square_reaches_the_cap() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "sq.json", &unit_square());
    let o = wallkit(&["thickness", &p, "--max-thickness", "6", "--corona-cap", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("interval: [6, ?]"), "{out}");
    assert!(out.contains("≥6 (cap reached); shape may tile"), "{out}");
}

#[test]
fn certificates_reverify_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = wallkit(&["wall", "find", "square_semicircle", "-t", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert = out.join("wall-t2.json");
    let v = wallkit(&["wall", "verify", cert.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("valid: wall of thickness 2"));

    let svg = dir.path().join("w.svg");
    let r = wallkit(&["render", cert.to_str().unwrap(), "--out", svg.to_str().unwrap(), "--periods", "3"]);
    assert_eq!(r.status.code(), Some(0), "{}", stderr(&r));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<path").count(), 6);

    // a tampered certificate no longer verifies
    let mut c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    c["period"] = json!([[1, 0, 2], 0]);
    let bad = write(dir.path(), "bad.json", &c);
    assert_eq!(wallkit(&["wall", "verify", &bad]).status.code(), Some(1));
}

#[test]
fn witness_renders_with_highlighted_center() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c");
    let o = wallkit(&["corona", "heesch_pentagon", "-n", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = dir.path().join("c.svg");
    let r = wallkit(&["render", out.join("corona-1.json").to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("fill=\"#222222\"").count(), 1);
    assert!(text.contains("<title>center</title>"));
}

#[test]
fn infeasible_and_exhausted_exit_one() {
    let w = wallkit(&["wall", "find", "chopped_disk", "-t", "2", "--max-units-per-period", "4"]);
    assert_eq!(w.status.code(), Some(1));
    assert!(stdout(&w).contains("infeasible within bounds K=4"));
    let c = wallkit(&["corona", "chopped_disk", "-n", "1"]);
    assert_eq!(c.status.code(), Some(1));
    assert!(stdout(&c).contains("exhausted"));
}

#[test]
fn manifests_replay_and_ignore_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let args = ["thickness", "square_semicircle", "--max-units-per-period", "6", "--corona-cap", "1"];
    let run = |out: &Path, jobs: &str| {
        let mut v: Vec<&str> = args.to_vec();
        v.extend(["--jobs", jobs, "--out", out.to_str().unwrap()]);
        wallkit(&v)
    };
    let oa = run(&a, "1");
    let ob = run(&b, "4");
    assert_eq!(oa.status.code(), ob.status.code());
    assert_eq!(stdout(&oa), stdout(&ob));
    for f in ["manifest.json", "wall-t2.json", "corona-1-exhaustion.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    let m: Value = serde_json::from_str(&std::fs::read_to_string(a.join("manifest.json")).unwrap()).unwrap();
    assert!(!m["command"].as_array().unwrap().iter().any(|x| x == "--jobs" || x == "--out"));
    let r = wallkit(&["replay", a.join("manifest.json").to_str().unwrap()]);
    assert_eq!(r.status.code(), oa.status.code());
    assert!(stdout(&r).contains("replay: outcome identical"));

    let mut tampered = m.clone();
    tampered["outcome"][0] = json!("something else");
    let p = write(dir.path(), "t.json", &tampered);
    assert_eq!(wallkit(&["replay", &p]).status.code(), Some(3));
}
