use std::fs;
use std::process::Command;

use hornlab::horn::{SetKey, TripleCache, Variant};
use hornlab_cli::cache::DiskCache;

fn hornlab(cache: &std::path::Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hornlab"))
        .env("HORNLAB_CACHE_DIR", cache)
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn cache_round_trip_through_the_triple_cache() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = TripleCache::with_store(Box::new(DiskCache::new(dir.path())));
    let first = fresh.get(7, 3, Variant::Tilde).unwrap();
    let reloaded = TripleCache::with_store(Box::new(DiskCache::new(dir.path())));
    assert_eq!(reloaded.get(7, 3, Variant::Tilde).unwrap().triples(), first.triples());
    let key = SetKey {
        n: 7,
        r: 3,
        variant: Variant::Tilde,
    };
    assert_eq!(DiskCache::new(dir.path()).read(key).unwrap(), first.triples());
}

#[test]
fn corrupted_files_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let disk = DiskCache::new(dir.path());
    let key = SetKey {
        n: 5,
        r: 2,
        variant: Variant::Tilde,
    };
    let expected = TripleCache::new().get(5, 2, Variant::Tilde).unwrap();
    for junk in ["", "not json\n", "{\"schema\":\"hornlab-triples\",\"version\":1,\"n\":5,\"r\":2,\"variant\":\"tilde\",\"count\":3}\n"] {
        fs::create_dir_all(dir.path()).unwrap();
        fs::write(disk.path_for(key), junk).unwrap();
        let cache = TripleCache::with_store(Box::new(DiskCache::new(dir.path())));
        assert_eq!(cache.get(5, 2, Variant::Tilde).unwrap().triples(), expected.triples());
        assert_eq!(disk.read(key).unwrap(), expected.triples(), "rewritten after {junk:?}");
    }
    // well-formed but wrong content is caught by the structural check
    let mut wrong = expected.triples().to_vec();
    wrong.swap(0, 1);
    disk.write(key, &wrong).unwrap();
    let cache = TripleCache::with_store(Box::new(DiskCache::new(dir.path())));
    assert_eq!(cache.get(5, 2, Variant::Tilde).unwrap().triples(), expected.triples());
}

#[test]
fn enum_counts_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = hornlab(dir.path(), &["enum", "--n", "3", "--r", "1", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
    let (_, out) = hornlab(dir.path(), &["enum", "--n", "1", "--r", "1", "--variant", "classic", "--format", "csv"]);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["n,r,variant,I,J,K", "1,1,classic,1,1,1"]);
    assert!(dir.path().join("tilde-n3-r1.jsonl").exists());
}

#[test]
fn exit_status_follows_verification() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = hornlab(dir.path(), &["lr", "--n", "6", "--i", "2,4,6"]);
    assert_eq!((code, out.trim()), (0, "2"));
    let (code, out) = hornlab(dir.path(), &["flag-witness", "--n", "5", "--i", "2,3,5", "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("P_5 verified (exact)"), "{out}");
    let (code, out) = hornlab(dir.path(), &["verify-horn", "--n", "3", "--samples", "40"]);
    assert_eq!(code, 0, "{out}");
    // an impossible tolerance makes exact boundary cases fail
    let (code, _) = hornlab(dir.path(), &["verify-horn", "--n", "3", "--samples", "40", "--tol=-1"]);
    assert_eq!(code, 1);
    let (code, _) = hornlab(dir.path(), &["lr", "--n", "3", "--i", "5"]);
    assert_eq!(code, 2);
    let (code, _) = hornlab(dir.path(), &["wheel", "--dim", "7"]);
    assert_eq!(code, 2);
}

#[test]
fn reduce_of_an_irreducible_triple_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = hornlab(dir.path(), &["reduce", "--n", "6", "--i", "2,4,6", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 0);
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("hornlab.conf");
    fs::write(&config, "format = json\nsamples = 12\nseed = 5\n").unwrap();
    let conf = config.to_str().unwrap();
    let (code, out) = hornlab(dir.path(), &["--config", conf, "verify-horn", "--n", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["config"]["samples"], 12);
    assert_eq!(v["config"]["seed"], 5);
    let (_, out) = hornlab(dir.path(), &["--config", conf, "verify-horn", "--n", "3", "--samples", "4", "--format", "table"]);
    assert!(out.contains("samples=4"), "{out}");
}

#[test]
fn table_marks_empty_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = hornlab(dir.path(), &["table", "5", "5", "--r", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().nth(1).unwrap(), "5   ∅");
    let (_, out) = hornlab(dir.path(), &["table", "3", "13", "--r", "3", "--format", "json"]);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let n = v["n"].as_u64().unwrap();
        assert_eq!(v["triples"].as_array().unwrap().len(), (n % 2) as usize, "n={n}");
    }
}
