//! Scheme files and the `schemeforge` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use schemeforge::cli::{parse_scheme_file, sha256_hex, SchemeFile, GOLDEN, MANIFEST};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_schemeforge"));
    c.env_remove("SCHEMEFORGE_BUDGET");
    c
}

fn data(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(file)
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("schemeforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

/// Symmetric matrix with zero diagonal and off-diagonal entries in `1..n`.
fn relation_matrix() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (2usize..9).prop_flat_map(|n| {
        prop::collection::vec(1..n, n * (n - 1) / 2).prop_map(move |vals| {
            let mut m = vec![vec![0; n]; n];
            let mut it = vals.into_iter();
            for x in 0..n {
                for y in x + 1..n {
                    let v = it.next().unwrap();
                    m[x][y] = v;
                    m[y][x] = v;
                }
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn files_round_trip(relations in relation_matrix(), id in "[A-Z]{2}[0-9]{2}") {
        let f = SchemeFile { id: Some(id), comments: vec!["generated".into()], relations };
        let back = parse_scheme_file(&f.to_string()).unwrap();
        prop_assert_eq!(&back.relations, &f.relations);
        prop_assert_eq!(&back.id, &f.id);
    }

    #[test]
    fn asymmetry_is_located(relations in relation_matrix(), pick in any::<prop::sample::Index>()) {
        let n = relations.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
        let (x, y) = pairs[pick.index(pairs.len())];
        prop_assume!(n > 2);
        let mut bad = relations.clone();
        bad[x][y] = if bad[x][y] == 1 { 2 } else { 1 };
        let text = SchemeFile { id: None, comments: vec![], relations: bad }.to_string();
        let e = parse_scheme_file(&text).unwrap_err();
        prop_assert!(e.message.contains("asymmetric"), "{}", e);
        // the offending entry or its mirror, each on line `row + 2` at column `2 * col + 1`
        let at = |r: usize, c: usize| (r + 2, 2 * c + 1);
        prop_assert!((e.line, e.column) == at(x, y) || (e.line, e.column) == at(y, x), "{}", e);
    }
}

#[test]
fn manifest_covers_the_bundle() {
    assert_eq!(MANIFEST.lines().count(), GOLDEN.len());
    for g in GOLDEN {
        let on_disk = std::fs::read_to_string(data(g.file_name)).unwrap();
        assert_eq!(on_disk, g.text, "{}", g.file_name);
        assert!(MANIFEST.contains(&format!("{}  {}", sha256_hex(&on_disk), g.file_name)));
    }
}

#[test]
fn exit_codes() {
    let ok = bin().args(["verify", data("AS06_3.txt").to_str().unwrap()]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["results"]["size"], 6);

    let p3 = scratch("p3.txt", "3\n0 1 2\n1 0 1\n2 1 0\n");
    let refuted = bin().args(["verify", p3.to_str().unwrap()]).output().unwrap();
    assert_eq!(refuted.status.code(), Some(1));
    assert_eq!(json(&refuted)["status"], "refuted");

    let bad = scratch("bad.txt", "2\n0 1\n1\n");
    let parse = bin().args(["verify", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 3"));

    assert_eq!(bin().args(["verify", "/nonexistent/file"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["classify", "--case", "K7"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["search", "--k1"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));

    let starved = bin().args(["search", "--k1", "3", "--a1", "0"]).env("SCHEMEFORGE_BUDGET", "10").output().unwrap();
    assert_eq!(starved.status.code(), Some(3));
    assert_eq!(json(&starved)["status"], "budget_exhausted");
    let flag_wins =
        bin().args(["search", "--k1", "3", "--a1", "0", "--budget", "1000000"]).env("SCHEMEFORGE_BUDGET", "10").output().unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn classify_output_is_deterministic_and_bundled() {
    for case in ["K3xK2", "N3", "C5"] {
        let run = || without_timing(json(&bin().args(["classify", "--case", case]).output().unwrap()));
        let (a, b) = (run(), run());
        assert_eq!(a, b, "{case}");
        assert_eq!(a["status"], "ok");
        for r in a["results"]["results"].as_array().unwrap() {
            let id = r["scheme_id"].as_str().unwrap();
            assert!(GOLDEN.iter().any(|g| g.id == id), "{id} not bundled");
        }
    }
}

#[test]
fn text_and_json_agree_on_spectra() {
    let j = json(&bin().args(["spectra", "--id", "AS10[3]"]).output().unwrap());
    let text = bin().args(["--emit", "text", "spectra", "--id", "AS10[3]"]).output().unwrap();
    assert_eq!(text.status.code(), Some(0));
    let t = String::from_utf8_lossy(&text.stdout);
    let sp = &j["results"]["spectra"];
    for (m, col) in sp["multiplicities"].as_array().unwrap().iter().zip(sp["cosines"].as_array().unwrap()) {
        let cos: Vec<&str> = col.as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
        let line = format!("m = {}, cosines ({})", m.as_str().unwrap(), cos.join(", "));
        assert!(t.contains(&line), "{line} missing from text output");
    }
}
