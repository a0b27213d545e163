use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn actdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Writes the built-in example `name` into `dir` and returns its path.
fn example_file(dir: &TempDir, name: &str) -> String {
    let out = actdim(&["example", name]);
    assert!(out.status.success());
    let path = dir.path().join(format!("{name}.json"));
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn subdivide_a3() {
    let dir = TempDir::new().unwrap();
    let a3 = example_file(&dir, "a_3");
    let doc = json_of(&actdim(&["subdivide", "--input", &a3]));
    assert_eq!(
        doc["vertices"],
        json!([["a"], ["b"], ["c"], ["a", "b"], ["b", "c"], ["a", "b", "c"]])
    );
    assert_eq!(doc["f_vector"], json!([6, 10, 5]));
    assert_eq!(doc["euler_characteristic"], 1);
    assert_eq!(doc["faces_by_dim"][2].as_array().unwrap().len(), 5);
}

#[test]
fn report_on_spherical_and_right_angled_inputs() {
    let dir = TempDir::new().unwrap();
    let a3 = example_file(&dir, "a_3");
    let doc = json_of(&actdim(&["report", "--input", &a3]));
    assert_eq!(doc["spherical"], true);
    assert_eq!(doc["actdim_exact"], 5);
    assert_eq!(doc["kpi1_status"], "ProvedSpherical");

    let cycle = example_file(&dir, "raag-cycle-4");
    let doc = json_of(&actdim(&["report", "--input", &cycle]));
    assert_eq!(doc["actdim_exact"], 4);
    assert_eq!(doc["kpi1_status"], "ProvedFlagNerve");

    let affine = dir.path().join("affine.json");
    std::fs::write(
        &affine,
        r#"{"generators": ["a", "b", "c"], "default": 2,
            "relations": [{"pair": ["a", "b"], "m": 3}, {"pair": ["b", "c"], "m": 3},
                          {"pair": ["a", "c"], "m": 3}]}"#,
    )
    .unwrap();
    let affine = affine.to_str().unwrap();
    let doc = json_of(&actdim(&["report", "--input", affine]));
    assert_eq!(doc["kpi1_status"], "Unknown");
    assert_eq!(doc["actdim_upper"]["value"], "unknown");
    assert_eq!(doc["gd"]["value"], json!({"lower": 2, "upper": "unknown"}));
    let doc = json_of(&actdim(&["report", "--input", affine, "--assume-kpi1"]));
    assert_eq!(doc["kpi1_status"], "Assumed");
    assert_eq!(doc["gd"]["value"], 2);
    assert_eq!(doc["actdim_exact"], 4);
}

#[test]
fn examples() {
    let doc = json_of(&actdim(&["example", "i2_7"]));
    assert_eq!(
        doc,
        json!({"generators": ["a", "b"], "default": 2,
               "relations": [{"pair": ["a", "b"], "m": 7}]})
    );
    let doc = json_of(&actdim(&["example", "raag-cycle-4"]));
    assert_eq!(doc["default"], "inf");
    assert_eq!(doc["relations"].as_array().unwrap().len(), 4);
    assert_eq!(actdim(&["example", "nope"]).status.code(), Some(1));
}

#[test]
fn malformed_input_exits_one_with_location() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"generators\": [\"a\"],\n\"default\": 5}").unwrap();
    let out = actdim(&["nerve", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "{stderr}");

    let unknown = dir.path().join("unknown.json");
    std::fs::write(
        &unknown,
        r#"{"generators": ["a"], "default": 2, "relations": [{"pair": ["a", "z"], "m": 3}]}"#,
    )
    .unwrap();
    let out = actdim(&["nerve", "--input", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(actdim(&["nerve"]).status.code(), Some(1));
    assert_eq!(actdim(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(actdim(&["--help"]).status.code(), Some(0));
}

#[test]
fn generator_guard() {
    let dir = TempDir::new().unwrap();
    let a5 = example_file(&dir, "a_5");
    let out = actdim(&["nerve", "--input", &a5, "--max-generators", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(actdim(&["nerve", "--input", &a5, "--max-generators", "5"])
        .status
        .success());
}

#[test]
fn roots_of_a_subset() {
    let dir = TempDir::new().unwrap();
    let b3 = example_file(&dir, "b_3");
    let roots = json_of(&actdim(&["roots", "--input", &b3]));
    assert_eq!(roots.as_array().unwrap().len(), 9);
    let roots = json_of(&actdim(&["roots", "--input", &b3, "--subset", "a,b"]));
    let roots = roots.as_array().unwrap();
    assert_eq!(roots.len(), 3);
    for root in roots {
        assert_eq!(root["coeffs"].as_array().unwrap().len(), 3);
        assert_eq!(root["coeffs"][2], 0.0);
    }
    let out = actdim(&["roots", "--input", &b3, "--subset", "a,q"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn homology_of_the_projective_plane() {
    let dir = TempDir::new().unwrap();
    let rp2 = example_file(&dir, "rp2-nerve");
    let doc = json_of(&actdim(&["homology", "--input", &rp2]));
    for complex in ["nerve", "subdivision"] {
        assert_eq!(doc[complex]["reduced_betti_mod2"], json!([0, 1, 1]));
        assert_eq!(
            doc[complex]["top_integral_cohomology"],
            json!({"rank": 0, "torsion": [2]})
        );
    }
    let doc = json_of(&actdim(&["report", "--input", &rp2]));
    assert_eq!(doc["obdim_lower"]["value"], 6);
    assert_eq!(doc["actdim_lower"]["value"], 6);
}

#[test]
fn octahedralize_counts() {
    let dir = TempDir::new().unwrap();
    let a2 = example_file(&dir, "a_2");
    let doc = json_of(&actdim(&["octahedralize", "--input", &a2]));
    assert_eq!(doc["f_vector"], json!([4, 4]));
    assert_eq!(doc["vertices"][1], json!({"base": "a", "sign": -1}));
    let doc = json_of(&actdim(&[
        "octahedralize",
        "--input",
        &a2,
        "--complex",
        "subdivision",
    ]));
    assert_eq!(doc["f_vector"], json!([6, 8]));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let b3 = example_file(&dir, "b_3");
    let args = ["verify", "--input", &b3, "--random", "5", "--seed", "7"];
    let first = actdim(&args);
    let doc = json_of(&first);
    assert_eq!(doc["all_passed"], true);
    assert_eq!(doc["seed"], 7);
    assert!(doc["checks"]["j-map-rank"]["passed"].as_u64().unwrap() > 0);
    assert_eq!(first.stdout, actdim(&args).stdout);
}

#[test]
fn output_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let h3 = example_file(&dir, "h3");
    let target = dir.path().join("out.json");
    let target_str = target.to_str().unwrap();
    let out = actdim(&["report", "--input", &h3, "--output", target_str]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read(Path::new(target_str)).unwrap();
    assert_eq!(written, actdim(&["report", "--input", &h3]).stdout);
}
