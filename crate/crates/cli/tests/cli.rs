use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::Value;
use skellim::limit::category::FiniteCategory;
use skellim::simplicial::io::map_to_json;
use skellim::simplicial::map::SimplicialMap;
use skellim::simplicial::nerve::nerve;
use tempfile::TempDir;

struct Run {
    dir: TempDir,
}

impl Run {
    fn new() -> Self {
        Run { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn exec(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_skellim")).args(args).current_dir(self.dir.path()).env_remove("SKELLIM_BOUND").output().unwrap()
    }

    /// Runs and saves stdout to `name`.
    fn save(&self, name: &str, args: &[&str]) -> PathBuf {
        let out = self.exec(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        self.write(name, &String::from_utf8(out.stdout).unwrap())
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn info_filtration_and_dot() {
    let r = Run::new();
    let d2 = r.save("d2.json", &["sset", "std", "2"]);
    assert_eq!(stdout(&r.exec(&["sset", "info", s(&d2), "--format", "text"])), "counts: 3 3 1\n");
    assert_eq!(json(&r.exec(&["sset", "info", s(&d2)]))["counts"], serde_json::json!([3, 3, 1]));
    let f = json(&r.exec(&["sset", "filtration", s(&d2)]));
    let stages = f["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 2);
    assert_eq!(stages[1]["cells"].as_array().unwrap().len(), 1);
    let b = r.save("b2.json", &["sset", "boundary", "2"]);
    let dot = stdout(&r.exec(&["sset", "export", s(&b), "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 3);
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 3);
}

#[test]
fn reserialization_is_byte_identical() {
    let r = Run::new();
    let x = r.save("x.json", &["gen", "sset", "--seed", "5"]);
    let again = r.save("y.json", &["sset", "export", s(&x)]);
    assert_eq!(std::fs::read(&x).unwrap(), std::fs::read(&again).unwrap());
    let text = std::fs::read_to_string(&x).unwrap().replace("sset/1", "sset/2");
    let bad = r.write("bad.json", &text);
    let out = r.exec(&["sset", "info", s(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["schema"]["path"], "format");
}

#[test]
fn lifting_exit_codes() {
    let r = Run::new();
    let h = r.save("h.json", &["sset", "horn", "2", "1"]);
    let out = r.exec(&["check", "qcat", s(&h)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"]["square"]["kind"], "horn");
    let p = r.save("p.json", &["gen", "poset", "--seed", "2", "--size", "4"]);
    let n = r.save("n.json", &["sset", "nerve", "--cat", s(&p)]);
    assert_eq!(r.exec(&["check", "qcat", s(&n)]).status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_skellim")).args(["check", "qcat", s(&n)]).env("SKELLIM_BOUND", "2").output().unwrap();
    assert_eq!(json(&out)["bound"], 2);
}

#[test]
fn arrow_object_projection_is_an_isofibration() {
    let r = Run::new();
    let a = nerve(Arc::new(FiniteCategory::chain(1)), None).unwrap().sset().clone();
    let id = r.write("id.json", &map_to_json(&SimplicialMap::identity(a)));
    let proj = r.save("proj.json", &["comma", "--f", s(&id), "--g", s(&id), "--emit", "projection"]);
    assert_eq!(r.exec(&["check", "isofib", s(&proj), "--bound", "3"]).status.code(), Some(0));
}

#[test]
fn pseudo_weight_of_the_cospan() {
    let r = Run::new();
    let shape = r.save("shape.json", &["sset", "horn", "2", "2"]);
    let w = json(&r.exec(&["weight", "pseudo", "--shape", s(&shape)]));
    let middle = &w["values"]["2"]["generators"];
    assert_eq!(middle["0"].as_array().unwrap().len(), 3);
    assert_eq!(middle["1"].as_array().unwrap().len(), 2);
}

#[test]
fn terminal_weighted_limit_is_the_strict_limit() {
    let r = Run::new();
    for shape in [vec!["sset", "std", "1"], vec!["sset", "horn", "2", "2"]] {
        let x = r.save("x.json", &shape);
        let f = r.save("f.json", &["weight", "pseudo", "--shape", s(&x)]);
        let t = r.save("t.json", &["weight", "terminal", "--diagram", s(&f)]);
        let wlim = r.exec(&["wlim", "--weight", s(&t), "--diagram", s(&f)]);
        let strict = r.exec(&["limit", "strict", "--diagram", s(&f)]);
        assert_eq!(wlim.status.code(), Some(0));
        assert_eq!(wlim.stdout, strict.stdout);
    }
}

#[test]
fn generation_is_deterministic() {
    let r = Run::new();
    let a = r.exec(&["gen", "lattice", "--seed", "7", "--size", "8"]);
    let b = r.exec(&["gen", "lattice", "--seed", "7", "--size", "8"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["format"], "cat/1");
}

const VEE: &str = r#"{"format":"cat/1","objects":["a","b","c"],"morphisms":[{"name":"ida","src":"a","tgt":"a"},{"name":"idb","src":"b","tgt":"b"},{"name":"idc","src":"c","tgt":"c"},{"name":"ac","src":"a","tgt":"c"},{"name":"bc","src":"b","tgt":"c"}],"identities":{"a":"ida","b":"idb","c":"idc"},"compose":[]}"#;

#[test]
fn missing_meet_names_the_stage() {
    let r = Run::new();
    let cat = r.write("vee.json", VEE);
    let shape = r.write("two.json", r#"{"format":"sset/1","dim":0,"generators":{"0":[{"id":"x","faces":[]},{"id":"y","faces":[]}]}}"#);
    let diag = r.write("d.json", r#"{"format":"diag/1","objects":{"x":"a","y":"b"},"arrows":{}}"#);
    for engine in ["induction", "both"] {
        let out = r.exec(&["limit", "compute", "--cat", s(&cat), "--shape", s(&shape), "--diagram", s(&diag), "--engine", engine]);
        assert_eq!(out.status.code(), Some(1));
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["missing"]["stage"], "sk0");
    }
    let out = r.exec(&["colimit", "--cat", s(&cat), "--shape", s(&shape), "--diagram", s(&diag), "--engine", "both"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["apex"], "c");
}

#[test]
fn engines_agree_and_certificates_replay() {
    let r = Run::new();
    for seed in 0..5 {
        let seed = seed.to_string();
        let c = r.save("c.json", &["gen", "lattice", "--seed", &seed, "--size", "10"]);
        let x = r.save("x.json", &["gen", "sset", "--seed", &seed]);
        let d = r.save("d.json", &["gen", "diagram", "--seed", &seed, "--cat", s(&c), "--shape", s(&x)]);
        let args = ["--cat", s(&c), "--shape", s(&x), "--diagram", s(&d)];
        let both = r.exec(&[&["limit", "compute", "--engine", "both"][..], &args].concat());
        assert_eq!(both.status.code(), Some(0));
        let cert = r.save("cert.json", &[&["limit", "compute"][..], &args].concat());
        assert_eq!(r.exec(&[&["limit", "check", "--cert", s(&cert)][..], &args].concat()).status.code(), Some(0));
        let j = r.save("j.json", &["gen", "semilattice", "--seed", &seed, "--size", "10"]);
        let dj = r.save("dj.json", &["gen", "diagram", "--seed", &seed, "--cat", s(&j), "--shape", s(&x)]);
        let out = r.exec(&["colimit", "--engine", "both", "--cat", s(&j), "--shape", s(&x), "--diagram", s(&dj)]);
        assert_eq!(out.status.code(), Some(0));
    }
}

#[test]
fn kappa_bounds_products() {
    let r = Run::new();
    let c = r.save("c.json", &["gen", "lattice", "--seed", "1", "--size", "8"]);
    let x = r.save("x.json", &["sset", "boundary", "2"]);
    let d = r.save("d.json", &["gen", "diagram", "--seed", "1", "--cat", s(&c), "--shape", s(&x)]);
    let out = r.exec(&["limit", "compute", "--cat", s(&c), "--shape", s(&x), "--diagram", s(&d), "--kappa", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kappa_exceeded"]["arity"], 3);
}

#[test]
fn cones_and_limit_cones() {
    let r = Run::new();
    let cat = r.write("vee.json", VEE);
    let n = r.save("n.json", &["sset", "nerve", "--cat", s(&cat)]);
    let pt = r.save("pt.json", &["sset", "std", "0"]);
    let nv: Value = serde_json::from_str(&std::fs::read_to_string(&n).unwrap()).unwrap();
    let ptv: Value = serde_json::from_str(&std::fs::read_to_string(&pt).unwrap()).unwrap();
    let c_id = nv["generators"]["0"][2]["id"].clone();
    let d = serde_json::json!({"format": "map/1", "source": ptv, "target": nv, "images": {"0": {"t": c_id, "w": []}}});
    let d = r.write("d.json", &d.to_string());
    assert_eq!(stdout(&r.exec(&["cones", "--diagram", s(&d), "--format", "text"])), "counts: 3 2\n");
    let mut limits = 0;
    for v in ["0.0", "0.1", "0.2"] {
        let cone = r.save("cone.json", &["cones", "--diagram", s(&d), "--vertex", v]);
        let code = r.exec(&["limit", "check", "--diagram", s(&d), "--cone", s(&cone)]).status.code();
        assert!(code == Some(0) || code == Some(1));
        limits += (code == Some(0)) as usize;
    }
    assert_eq!(limits, 1);
}

#[test]
fn bad_usage_is_not_a_verdict() {
    let r = Run::new();
    assert_eq!(r.exec(&["check", "qcat"]).status.code(), Some(3));
    assert_eq!(r.exec(&["sset", "info", "missing.json"]).status.code(), Some(3));
    let g = r.save("g.json", &["gen", "lattice"]);
    assert_eq!(r.exec(&["gen", "lattice", "--format", "dot"]).status.code(), Some(3));
    assert!(g.exists());
}
