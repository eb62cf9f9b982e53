use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lagdegen"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--out", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let code = o.status.code().unwrap();
    let v = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn write(dir: &tempfile::TempDir, name: &str, v: &Value) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

fn term(c: i64, e: &[u32]) -> Value {
    json!({ "c": c, "e": e })
}

fn ring3() -> Value {
    json!({ "field": "Q", "vars": ["x", "y", "z"] })
}

#[test]
fn generate_is_byte_identical() {
    for kind in ["alternating", "lagrangian-pair", "split-pair", "symmetric"] {
        let args = ["--out", "json", "--seed", "42", "generate", "--kind", kind, "--size", "3"];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{kind}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{kind}");
        let other = run(&["--out", "json", "--seed", "43", "generate", "--kind", kind, "--size", "3"]);
        assert_ne!(a.stdout, other.stdout, "{kind}");
    }
    assert_eq!(run(&["generate", "--kind", "banana"]).status.code(), Some(2));
}

#[test]
fn generated_pairs_reload() {
    let dir = tempfile::tempdir().unwrap();
    for field in ["Q", "Fp:2", "Fp:3"] {
        let (code, v) = run_json(&["--field", field, "--seed", "7", "generate", "--kind", "lagrangian-pair"]);
        assert_eq!(code, 0);
        // reading back validates E and F as Lagrangians of the ambient form
        let path = write(&dir, "pair.json", &v);
        let (code, out) = run_json(&["pair", "intersect", &path]);
        assert_eq!(code, 0);
        assert_eq!(out["rank"], 3);
    }
}

#[test]
fn fixtures_validate() {
    let (code, v) = run_json(&["resolve", "be", fixture("koszul-point.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["exact"], true);
    assert_eq!(v["complex"]["twists"], json!([[0], [-1, -1, -1], [-2, -2, -2], [-3]]));

    let (code, v) = run_json(&["resolve", "be", fixture("generic-5x5.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["complex"]["ranks"], json!([1, 5, 5, 1]));

    let f2 = fixture("f2-space.json");
    let (code, v) = run_json(&["pair", "complement", f2.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!((v["rank_with_e"].clone(), v["rank_with_f"].clone()), (json!(4), json!(4)));

    let three = fixture("threefold-chi.json");
    let (code, v) = run_json(&["resolve", "parity", three.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["chi"], "1");
    assert_eq!(v["obstructed"], true);
    let (_, v) = run_json(&["resolve", "euler", three.to_str().unwrap(), "--m", "-3"]);
    assert_eq!(v["chi"], "1");
}

#[test]
fn pfaffian_commands() {
    let k = fixture("koszul-point.json");
    let k = k.to_str().unwrap();
    let (code, v) = run_json(&["pfaffian", "kernel", k]);
    assert_eq!(code, 0);
    assert_eq!(v["kernel_identity"], true);
    let (_, v) = run_json(&["pfaffian", "subs", k, "--order", "2"]);
    assert_eq!(v["pfaffians"].as_array().unwrap().len(), 3);
    // odd size has no Pfaffian
    assert_eq!(run(&["pfaffian", "compute", k]).status.code(), Some(2));
}

#[test]
fn degeneracy_of_the_koszul_graph() {
    let dir = tempfile::tempdir().unwrap();
    let zero: Vec<Value> = vec![];
    let one = json!([term(1, &[0, 0, 0])]);
    let var = |i: usize, c: i64| {
        let mut e = [0u32; 3];
        e[i] = 1;
        json!([term(c, &e)])
    };
    let id = |i, j| if i == j { one.clone() } else { json!(zero) };
    // E is the graph of the Koszul matrix k: rows (I; k), F the first summand
    let k = [
        [json!(zero), var(2, 1), var(1, -1)],
        [var(2, -1), json!(zero), var(0, 1)],
        [var(1, 1), var(0, -1), json!(zero)],
    ];
    let mut e_rows = Vec::new();
    for i in 0..3 {
        e_rows.push((0..3).map(|j| id(i, j)).collect::<Vec<_>>());
    }
    for row in &k {
        e_rows.push(row.to_vec());
    }
    let f_rows: Vec<Vec<Value>> = (0..6).map(|i| (0..3).map(|j| id(i, j)).collect()).collect();
    let mut gram = vec![vec![json!(zero); 6]; 6];
    for i in 0..3 {
        gram[i][i + 3] = one.clone();
    }
    let pair = json!({
        "kind": "lagrangian-pair",
        "ring": ring3(),
        "ambient": { "rank": 6, "gram_upper": { "rows": 6, "cols": 6, "entries": gram } },
        "e": { "gens": { "rows": 6, "cols": 3, "entries": e_rows } },
        "f": { "gens": { "rows": 6, "cols": 3, "entries": f_rows } },
    });
    let path = write(&dir, "koszul-pair.json", &pair);
    let (code, v) = run_json(&["degeneracy", "ideal", &path, "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["codim"], 3);
    assert_eq!(v["samples"]["agree"], v["samples"]["checked"]);
    assert!(v.get("kernel_line").is_some());
    let (code, v) = run_json(&["--seed", "5", "degeneracy", "check-independence", &path, "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["independent"], true);
    // wrong parity is an input error
    assert_eq!(run(&["degeneracy", "ideal", &path, "--m", "2"]).status.code(), Some(2));
}

#[test]
fn symmetric_degeneracy() {
    let dir = tempfile::tempdir().unwrap();
    let zero: Vec<Value> = vec![];
    let one = json!([term(1, &[0, 0, 0])]);
    let (x, y, z) = (json!([term(1, &[1, 0, 0])]), json!([term(1, &[0, 1, 0])]), json!([term(1, &[0, 0, 1])]));
    let neg = json!([term(-1, &[0, 0, 0])]);
    let o = json!(zero);
    let omega = json!({ "rows": 4, "cols": 4, "entries": [
        [o, o, one, o], [o, o, o, one], [neg, o, o, o], [o, neg, o, o]] });
    // E = (I; S) with S = [[x, y], [y, z]], F = (I; 0), so λ = S
    let e = json!({ "rows": 4, "cols": 2, "entries": [[one, o], [o, one], [x, y], [y, z]] });
    let f = json!({ "rows": 4, "cols": 2, "entries": [[one, o], [o, one], [o, o], [o, o]] });
    let path = write(&dir, "sym.json", &json!({ "ring": ring3(), "omega": omega, "e": e, "f": f }));
    let (code, v) = run_json(&["degeneracy", "symmetric", &path, "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["codim"], 1);
    assert_eq!(v["ideal"]["gens"].as_array().unwrap().len(), 1);
    let (_, v) = run_json(&["degeneracy", "symmetric", &path, "--m", "2"]);
    assert_eq!(v["codim"], 3);
}

#[test]
fn ideal_commands() {
    let dir = tempfile::tempdir().unwrap();
    let sq = json!([
        [term(1, &[2, 0, 0])],
        [term(1, &[1, 1, 0])],
        [term(1, &[0, 2, 0])]
    ]);
    let max = json!([[term(1, &[1, 0, 0])], [term(1, &[0, 1, 0])]]);
    let input = json!({
        "ring": ring3(),
        "ideal": { "gens": sq },
        "other": { "gens": max },
        "f": [term(1, &[1, 0, 0])],
    });
    let path = write(&dir, "ideal.json", &input);
    let (_, v) = run_json(&["ideal", "member", &path]);
    assert_eq!(v["member"], false);
    let (_, v) = run_json(&["ideal", "equal", &path]);
    assert_eq!(v["equal"], false);
    let (_, v) = run_json(&["ideal", "codim", &path]);
    assert_eq!(v["codim"], 2);
    // ((x, y)^2 : x) = (x, y)
    let (_, v) = run_json(&["ideal", "colon", &path]);
    let colon = json!({ "ring": ring3(), "ideal": v["colon"], "other": { "gens": max } });
    let path2 = write(&dir, "colon.json", &colon);
    let (_, v) = run_json(&["ideal", "equal", &path2]);
    assert_eq!(v["equal"], true);
    let bad = write(&dir, "bad.json", &json!({ "ring": ring3(), "ideal": { "gens": [[term(1, &[1])]] } }));
    assert_eq!(run(&["ideal", "codim", &bad]).status.code(), Some(2));
}

#[test]
fn split_pair_commands() {
    let dir = tempfile::tempdir().unwrap();
    let (_, inst) = run_json(&["--seed", "1", "generate", "--kind", "split-pair", "--size", "3"]);
    let path = write(&dir, "split.json", &inst);
    for cmd in ["dual", "symmetrize", "standard-form", "colon"] {
        let (code, _) = run_json(&["resolve", cmd, &path]);
        assert_eq!(code, 0, "{cmd}");
    }
    let (_, v) = run_json(&["resolve", "dual", &path]);
    assert_eq!(v["commutes"], true);
    let (_, v) = run_json(&["resolve", "colon", &path]);
    assert_eq!(v["codim"], 3);
    let (_, sym) = run_json(&["--seed", "2", "generate", "--kind", "symmetric", "--size", "2"]);
    let path = write(&dir, "sym.json", &sym);
    let (code, v) = run_json(&["resolve", "dual", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["twists_dual"], true);
}

#[test]
fn transform_is_an_involution() {
    let k = fixture("koszul-point.json");
    let (code, v) = run_json(&["--seed", "9", "pair", "transform", k.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["involution"], true);
}

#[test]
fn verify_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = run_json(&["--seed", "3", "verify", "pf-square", "--count", "20"]);
    assert_eq!(code, 0);
    assert_eq!((v["total"].clone(), v["passed"].clone()), (json!(20), json!(20)));
    assert!(v.get("wall_time").is_none());
    let again = run(&["--out", "json", "--seed", "3", "verify", "pf-square", "--count", "20"]);
    assert_eq!(serde_json::to_string(&v).unwrap().as_bytes(), again.stdout.trim_ascii_end());

    let (code, v) = run_json(&["verify", "f2-counterexample", "--count", "1"]);
    assert_eq!(code, 0);
    assert!(v["notes"][0].as_str().unwrap().contains("not Lagrangian"));

    let dump = json!({
        "lemma": "even-rank",
        "index": 0,
        "case_seed": 12345,
        "message": "",
        "instance": null,
    });
    let path = write(&dir, "dump.json", &dump);
    let (code, v) = run_json(&["--replay", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["total"], 1);

    assert_eq!(run(&["verify", "no-such-lemma"]).status.code(), Some(2));
    assert_eq!(run(&["resolve", "be", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}
