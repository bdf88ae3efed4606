use std::fs;
use std::path::Path;

use kswitch::cli::run;
use kswitch::gallery::{product_not_sum, two_node_k, two_node_network};

mod common;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["kswitch"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn hex(t: &kswitch::boolean_core::OrderedTuple) -> (String, String) {
    let f = t.functions();
    (f[0].to_string(), f[1].to_string())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_two_node(dir: &Path) -> (String, String) {
    let net = two_node_network();
    let (n, k) = (dir.join("net.json"), dir.join("k.json"));
    fs::write(&n, net.to_json()).unwrap();
    fs::write(&k, two_node_k().to_json(&net)).unwrap();
    (p(&n).to_string(), p(&k).to_string())
}

#[test]
fn enumerate_counts() {
    let (code, out, _) = call(&["enumerate", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("20"));
    assert_eq!(out.lines().count(), 21);
    let (_, out, _) = call(&["enumerate", "--n", "2", "--pairs"]);
    assert_eq!(out.lines().next(), Some("20"));
    assert_eq!(call(&["enumerate", "--n", "6"]).0, 2);
    assert_eq!(call(&["enumerate"]).0, 2);
}

#[test]
fn realize_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g) = hex(&product_not_sum());
    let cert = dir.path().join("c.json");
    let (code, out, _) = call(&["realize", "--pair", &f, &g, "--class", "sigma", "--out", p(&cert)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("NotRealizable"));
    let (code, out, _) = call(&["verify", "--certificate", p(&cert), "--pair", &f, &g]);
    assert_eq!((code, out.as_str()), (0, "valid\n"));

    let wit = dir.path().join("w.txt");
    let (code, out, _) = call(&["realize", "--pair", &f, &g, "--class", "pisigma", "--out", p(&wit)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Realizable"));
    assert_eq!(call(&["verify", "--witness", p(&wit)]).0, 0);
    // the certificate does not fit a pair that is realizable by a sum
    let (f2, g2) = ("mbf:3:80".to_string(), "mbf:3:fe".to_string());
    assert_eq!(call(&["realize", "--pair", &f2, &g2, "--class", "sigma"]).1.lines().next(), Some("Realizable"));
    assert_eq!(call(&["verify", "--certificate", p(&cert), "--pair", &f2, &g2]).0, 1);
}

#[test]
fn verify_tabulated_witness_and_a_corrupted_copy() {
    let dir = tempfile::tempdir().unwrap();
    let t = common::not_sum_pair(4);
    let w = common::not_sum_witness(4);
    let text = kswitch::realizability::write_witness_file(&w, Some(&t));
    let good = dir.path().join("good.txt");
    fs::write(&good, &text).unwrap();
    assert_eq!(call(&["verify", "--witness", p(&good)]), (0, "valid\n".into(), String::new()));
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, text.replace("thresholds = 13/2,7/2", "thresholds = 7/2,7/2")).unwrap();
    assert_ne!(fs::read_to_string(&bad).unwrap(), text);
    assert_eq!(call(&["verify", "--witness", p(&bad)]).0, 1);
    assert_eq!(call(&["verify"]).0, 2);
}

#[test]
fn realize_rejects_bad_input() {
    assert_eq!(call(&["realize", "--pair", "mbf:3:fe", "mbf:3:80", "--class", "sigma"]).0, 2);
    assert_eq!(call(&["realize", "--pair", "80", "fe", "--class", "sigma"]).0, 2);
    assert_eq!(call(&["realize", "--pair", "80", "fe", "--n", "3", "--class", "sigma"]).0, 0);
    assert_eq!(call(&["realize", "--pair", "mbf:3:80", "mbf:3:fe", "--class", "nope"]).0, 2);
}

#[test]
fn stg_and_parameter_graph() {
    let dir = tempfile::tempdir().unwrap();
    let (net, k) = write_two_node(dir.path());
    let (code, out, _) = call(&["stg", "--net", &net, "--k", &k]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph stg"));
    assert_eq!(out.matches("->").count(), 7);
    let dot = dir.path().join("stg.dot");
    assert_eq!(call(&["stg", "--net", &net, "--k", &k, "--out", p(&dot)]).1, "6 states, 7 edges\n");

    let bad = dir.path().join("bad.json");
    let text = fs::read_to_string(&k).unwrap().replace("\"1/5\"", "\"3/5\"");
    fs::write(&bad, text).unwrap();
    let (code, _, err) = call(&["stg", "--net", &net, "--k", p(&bad)]);
    assert_eq!(code, 2);
    assert!(err.contains("not monotone"));

    let pgdir = dir.path().join("pg");
    let (code, out, _) = call(&["pg", "--net", &net, "--out", p(&pgdir), "--annotate", "sigma"]);
    assert_eq!(code, 0);
    assert_eq!(out, "60 vertices\n136 edges\nsigma 60/0/0\n");
    assert_eq!(fs::read_to_string(pgdir.join("pg.csv")).unwrap().lines().count(), 61);
    assert!(pgdir.join("pg.dot").exists() && pgdir.join("pg.json").exists());
}

#[test]
fn census_resumes_and_guards_its_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = p(dir.path()).to_string();
    let (code, summary, _) = call(&["census", "--n", "3", "--classes", "sigma,pisigma", "--out", &out_dir, "--jobs", "3"]);
    assert_eq!(code, 0);
    assert!(summary.contains("sigma 150/18/0"));
    assert!(summary.contains("pisigma 165/3/0"));
    let csv = fs::read_to_string(dir.path().join("census.csv")).unwrap();
    assert!(csv.starts_with("pair_index,f_hex,g_hex,class,verdict,witness_path,certificate_path\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 168);
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let artifact = if cols[5].is_empty() { cols[6] } else { cols[5] };
        assert!(dir.path().join(artifact).exists(), "{line}");
    }

    for i in [0, 17, 100, 167] {
        fs::remove_file(dir.path().join(format!("results/sigma/{i:06}.txt"))).unwrap();
    }
    let (code, again, _) = call(&["census", "--n", "3", "--classes", "sigma,pisigma", "--out", &out_dir]);
    assert_eq!((code, again), (0, summary));
    assert_eq!(fs::read_to_string(dir.path().join("census.csv")).unwrap(), csv);

    assert_eq!(call(&["census", "--n", "3", "--classes", "sigma", "--out", &out_dir]).0, 3);
    assert_eq!(call(&["census", "--n", "2", "--out", &out_dir]).0, 2);
}
