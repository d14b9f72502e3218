use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn default_config() -> PathBuf {
    repo().join("data/config/default.toml")
}

fn mcfnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcfnet"))
        .args(args)
        .env_remove("MCFNET_CONFIG")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn column(table: &[Vec<String>], name: &str) -> usize {
    table[0]
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sweep_writes_three_tables() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sweep");
    let o = mcfnet(&[
        "--config",
        s(&default_config()),
        "sweep",
        "--out",
        s(&out),
        "--reach-km",
        "10000",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for name in ["pcc.csv", "mcc.csv", "icxt.csv"] {
        let t = read_csv(&out.join(name));
        assert_eq!(t[0], ["fiber", "ratio", "f_THz", "value"]);
        assert_eq!(t.len() - 1, 2 * 3 * 268);
    }
    let icxt = read_csv(&out.join("icxt.csv"));
    let mut mc04_r1_above = false;
    for row in &icxt[1..] {
        let v: f64 = row[3].parse().unwrap();
        if row[0] == "MC07" {
            assert!(v < -26.82, "{row:?}");
        }
        if row[0] == "MC04" && row[1] == "1" && v > -26.82 {
            mc04_r1_above = true;
        }
    }
    assert!(mc04_r1_above);
}

#[test]
fn empty_band_plan_fails_without_output() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("empty.toml");
    fs::write(&cfg, "[band]\nbands = []\n").unwrap();
    let out = dir.path().join("out");
    let o = mcfnet(&["--config", s(&cfg), "sweep", "--out", s(&out)]);
    assert_eq!(code(&o), 1);
    assert!(!out.exists());
}

#[test]
fn missing_files_are_validation_errors() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let o = mcfnet(&[
        "--config",
        s(&dir.path().join("nope.toml")),
        "sweep",
        "--out",
        s(&out),
    ]);
    assert_eq!(code(&o), 1);
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "[files]\ntopology = \"missing.topo\"\n[[scenario]]\nname = \"a\"\nmode = \"MCF\"\nlanes = 1\n").unwrap();
    let o = mcfnet(&["--config", s(&cfg), "evaluate", "--out", s(&out)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.topo"));
    assert!(!out.exists());
}

fn toy_config(dir: &Path) -> PathBuf {
    fs::write(
        dir.join("toy.topo"),
        "node A core\nnode B core\nnode C\nlink A C 250 MC04\nlink C B 310 MC04\n",
    )
    .unwrap();
    let cfg = dir.join("toy.toml");
    fs::write(
        &cfg,
        "[files]\ntopology = \"toy.topo\"\n\n[band]\nchannels_per_band = 3\n\n\
         [[scenario]]\nname = \"mcf\"\nmode = \"MCF\"\nlanes = 4\n\n\
         [[scenario]]\nname = \"bundle\"\nmode = \"BuMFP\"\nlanes = 4\nfiber = \"SSMF\"\n",
    )
    .unwrap();
    cfg
}

#[test]
fn toy_summary_equals_tuple_sum() {
    let dir = TempDir::new().unwrap();
    let cfg = toy_config(dir.path());
    let out = dir.path().join("out");
    let o = mcfnet(&["--config", s(&cfg), "evaluate", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let tuples = read_csv(&out.join("tuples.csv"));
    let summary = read_csv(&out.join("summary.csv"));
    let cpct = read_csv(&out.join("cpct.csv"));
    let (ts, tb) = (column(&tuples, "scenario"), column(&tuples, "bitrate_gbps"));
    for row in &summary[1..] {
        let name = &row[0];
        let expected: f64 = tuples[1..]
            .iter()
            .filter(|t| &t[ts] == name)
            .map(|t| t[tb].parse::<f64>().unwrap())
            .sum();
        let total: f64 = row[column(&summary, "total_gbps")].parse().unwrap();
        assert_eq!(total, expected);
        assert_eq!(row[column(&summary, "tuples")], (2 * 9 * 4).to_string());
    }
    assert_eq!(cpct.len(), 1 + 2 * 2);
    assert_eq!(tuples.len(), 1 + 2 * 2 * 9 * 4);
}

#[test]
fn env_var_supplies_config() {
    let dir = TempDir::new().unwrap();
    let cfg = toy_config(dir.path());
    let out = dir.path().join("out");
    let o = Command::new(env!("CARGO_BIN_EXE_mcfnet"))
        .args(["evaluate", "--out", s(&out), "--no-tuples"])
        .env("MCFNET_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("summary.csv").exists());
    assert!(!out.join("tuples.csv").exists());
}

#[test]
fn lane_scaling_and_mode_ratio_in_summary() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let o = mcfnet(&[
        "--config",
        s(&default_config()),
        "evaluate",
        "--out",
        s(&out),
        "--scenario",
        "MCF-MC07",
        "--scenario",
        "BuMFP-SSMF",
        "--lanes",
        "4,7",
        "--channels-per-band",
        "6",
        "--no-tuples",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_csv(&out.join("summary.csv"));
    let names: Vec<&str> = t[1..].iter().map(|r| r[0].as_str()).collect();
    assert_eq!(
        names,
        ["BuMFP-SSMF/4", "BuMFP-SSMF/7", "MCF-MC07/4", "MCF-MC07/7"]
    );
    let lanes = column(&t, "ratio_to_fewest_lanes");
    let mode = column(&t, "ratio_to_bumfp");
    for row in [&t[2], &t[4]] {
        let r: f64 = row[lanes].parse().unwrap();
        assert!((r - 1.75).abs() < 1e-9, "{row:?}");
    }
    for row in [&t[3], &t[4]] {
        let r: f64 = row[mode].parse().unwrap();
        assert!(r > 1.0, "{row:?}");
        assert_eq!(row[column(&t, "ul_icxt")], "true");
    }
}

#[test]
fn disable_icxt_changes_no_level_in_ul_zone() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let out = dir.path().join(name);
        let cfg = default_config();
        let mut args = vec!["--config", s(&cfg), "evaluate", "--out", s(&out)];
        args.extend_from_slice(&["--scenario", "MCF-MC04", "--channels-per-band", "6"]);
        args.extend_from_slice(extra);
        let o = mcfnet(&args);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        read_csv(&out.join("tuples.csv"))
    };
    let on = run("on", &[]);
    let off = run("off", &["--disable-icxt"]);
    let m = column(&on, "m");
    assert_eq!(on.len(), off.len());
    assert!(on.len() > 1000);
    for (a, b) in on[1..].iter().zip(&off[1..]) {
        assert_eq!(a[m], b[m]);
    }
}

#[test]
fn runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = toy_config(dir.path());
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        assert_eq!(
            code(&mcfnet(&[
                "--config",
                s(&cfg),
                "evaluate",
                "--out",
                s(out),
                "--k",
                "2"
            ])),
            0
        );
    }
    for f in ["tuples.csv", "cpct.csv", "summary.csv"] {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn validate_shipped_fibers_pass() {
    let o = mcfnet(&["--config", s(&default_config()), "validate"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let text = String::from_utf8_lossy(&o.stdout);
    for name in ["MC04", "MC07", "SSMF"] {
        assert!(text.contains(&format!("{name}: ok")), "{text}");
    }
}

#[test]
fn validate_flags_oversized_cladding() {
    let dir = TempDir::new().unwrap();
    let fiber = fs::read_to_string(repo().join("data/fibers/mc04.toml"))
        .unwrap()
        .replace("name = \"MC04\"", "name = \"BIG\"")
        .replace(
            "cladding_diameter_um = 125.0",
            "cladding_diameter_um = 250.0",
        );
    fs::write(dir.path().join("big.toml"), fiber).unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "[files]\nfibers = [\"big.toml\"]\n").unwrap();
    let o = mcfnet(&["--config", s(&cfg), "validate", "--fiber", "BIG"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("cladding exceeds 230 um"));
}

#[test]
fn validate_flags_wide_trench() {
    let o = mcfnet(&["validate", "--fiber", "MC04", "--ratios", "2,3"]);
    assert_eq!(code(&o), 1);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("trench-separation"), "{text}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("w_tr/r1 = 3"));
}

#[test]
fn lanes_beyond_cores_exit_with_validation_code() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let o = mcfnet(&[
        "--config",
        s(&default_config()),
        "evaluate",
        "--out",
        s(&out),
        "--scenario",
        "MCF-MC04",
        "--lanes",
        "7",
    ]);
    assert_eq!(code(&o), 1);
    assert!(!out.exists());
}
