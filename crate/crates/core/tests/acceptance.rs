//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use mcfnet::fiber::{mean_icxt, DEFAULT_UL_THRESHOLD_DB};
use mcfnet::qot::{
    backsolve_required_gsnr, IncoherentGn, GMI_BITS, PUBLISHED_CHI, PUBLISHED_ICXT_THRESHOLDS_DB,
};
use mcfnet::units::{db_to_linear, linear_to_db, KM};
use mcfnet::{
    accumulate_gsnr, ase_power, classify_ul_icxt, evaluate_scenario, icxt_threshold, BandPlan,
    CouplingModel, Engine, FiberLibrary, FiberSpec, GmiTable, LaunchPower, Mode, NliEstimator,
    Penalties, Scenario, ScenarioResult, SpanNoise, SpanState, Topology,
};

const TOPOLOGY: &str = include_str!("../../../data/topologies/usb60_like.topo");

fn engine() -> &'static Engine {
    static E: OnceLock<Engine> = OnceLock::new();
    E.get_or_init(|| {
        let topo = Topology::parse(TOPOLOGY).expect("shipped topology parses");
        Engine::new(topo, FiberLibrary::builtin(), BandPlan::default_clse()).expect("engine")
    })
}

fn run(name: &str, mode: Mode, lanes: usize, fiber: &str, disable_icxt: bool) -> ScenarioResult {
    let mut s = Scenario::new(name, mode, lanes, Some(fiber));
    s.disable_icxt = disable_icxt;
    evaluate_scenario(engine(), &s).expect("scenario evaluates")
}

/// Scenario results shared between criteria.
struct Runs {
    mc04_4: ScenarioResult,
    mc07_4: ScenarioResult,
    mc07_7: ScenarioResult,
    ssmf_4: ScenarioResult,
    ssmf_7: ScenarioResult,
}

fn runs() -> &'static Runs {
    static R: OnceLock<Runs> = OnceLock::new();
    R.get_or_init(|| Runs {
        mc04_4: run("MCF-MC04", Mode::Mcf, 4, "MC04", false),
        mc07_4: run("MCF-MC07-4", Mode::Mcf, 4, "MC07", false),
        mc07_7: run("MCF-MC07-7", Mode::Mcf, 7, "MC07", false),
        ssmf_4: run("BuMFP-4", Mode::Bumfp, 4, "SSMF", false),
        ssmf_7: run("BuMFP-7", Mode::Bumfp, 7, "SSMF", false),
    })
}

fn threshold_table() -> String {
    let t0 = Instant::now();
    let (g_th, spread) =
        backsolve_required_gsnr(&PUBLISHED_CHI, &PUBLISHED_ICXT_THRESHOLDS_DB, 1.0);
    let got: Vec<f64> = PUBLISHED_CHI
        .iter()
        .map(|&c| icxt_threshold(c, 1.0, g_th))
        .collect();
    let elapsed = t0.elapsed();
    let mut worst = 0.0f64;
    for (g, p) in got.iter().zip(PUBLISHED_ICXT_THRESHOLDS_DB) {
        worst = worst.max((g - p).abs());
    }
    assert!(worst <= 0.01, "max deviation {worst} dB");
    assert!(elapsed.as_secs_f64() < 1e-3, "took {elapsed:?}");
    format!("G_th = {g_th:.5} dB (spread {spread:.4}), max |dev| = {worst:.4} dB, {elapsed:?}")
}

/// Coupled-power equations for one victim and `n` aggressors, victim
/// excited, integrated with classical RK4 in t = Ω z. Returns the
/// aggressor-to-victim power ratio at t_end.
fn ode_ratio(n: usize, t_end: f64) -> f64 {
    let deriv = |p: &[f64]| -> Vec<f64> {
        let mut d = vec![0.0; p.len()];
        for j in 1..p.len() {
            d[0] += p[j] - p[0];
            d[j] = p[0] - p[j];
        }
        d
    };
    let steps = ((t_end / 2e-3).ceil() as usize).max(200);
    let h = t_end / steps as f64;
    let mut p = vec![0.0; n + 1];
    p[0] = 1.0;
    let axpy = |p: &[f64], k: &[f64], s: f64| -> Vec<f64> {
        p.iter().zip(k).map(|(a, b)| a + s * b).collect()
    };
    for _ in 0..steps {
        let k1 = deriv(&p);
        let k2 = deriv(&axpy(&p, &k1, h / 2.0));
        let k3 = deriv(&axpy(&p, &k2, h / 2.0));
        let k4 = deriv(&axpy(&p, &k3, h));
        for i in 0..p.len() {
            p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    p[1..].iter().sum::<f64>() / p[0]
}

fn ode_oracle() -> String {
    let mut worst = 0.0f64;
    let mut count = 0;
    for &n in &[2usize, 3, 6] {
        for i in 0..=35 {
            let x = 10f64.powf(-6.0 + 7.0 * i as f64 / 35.0);
            let omega = 1e-9;
            let closed = mean_icxt(omega, n, x / omega);
            let ode = ode_ratio(n, x);
            worst = worst.max(((closed - ode) / ode).abs());
            count += 1;
        }
    }
    assert!(worst < 0.01, "max relative error {worst}");
    format!("{count} points, max relative error {worst:.2e}")
}

fn ul_classification() -> String {
    let band = BandPlan::default_clse();
    let mut out = Vec::new();
    for (name, ratio, expect) in [
        ("MC04", 1.0, false),
        ("MC04", 1.5, true),
        ("MC04", 2.0, true),
        ("MC07", 1.0, true),
        ("MC07", 1.5, true),
        ("MC07", 2.0, true),
    ] {
        let spec = FiberSpec::builtin(name)
            .unwrap()
            .with_trench_ratio(ratio)
            .unwrap();
        assert_eq!(spec.trench().unwrap().delta1(), 0.0035);
        let c = classify_ul_icxt(
            &spec,
            &band,
            1e4 * KM,
            DEFAULT_UL_THRESHOLD_DB,
            CouplingModel::default(),
        )
        .unwrap();
        let w = c.worst.unwrap();
        assert_eq!(
            c.is_ul, expect,
            "{name} at {ratio}: worst {:.2} dB",
            w.mu_db
        );
        out.push(format!(
            "{name}@{ratio}:{}({:.1})",
            if c.is_ul { "UL" } else { "no" },
            w.mu_db
        ));
    }
    out.join(" ")
}

fn omega_grid(name: &str, ratio: f64, band: &BandPlan) -> Vec<f64> {
    let spec = FiberSpec::builtin(name)
        .unwrap()
        .with_trench_ratio(ratio)
        .unwrap();
    band.channels()
        .iter()
        .map(|ch| {
            spec.coupling(ch.freq_hz, CouplingModel::default())
                .unwrap()
                .1
        })
        .collect()
}

fn frequency_dependence() -> String {
    let band = BandPlan::default_clse();
    for ratio in [1.0, 1.5, 2.0] {
        let a = omega_grid("MC04", ratio, &band);
        let b = omega_grid("MC07", ratio, &band);
        for w in a.windows(2).chain(b.windows(2)) {
            assert!(w[1] < w[0], "Omega not decreasing at ratio {ratio}");
        }
        for (x, y) in a.iter().zip(&b) {
            assert!(x > y, "MC04 <= MC07 at ratio {ratio}");
        }
    }
    format!("{} channels x 3 ratios, both fibers", band.channel_count())
}

fn trench_monotonicity() -> String {
    let band = BandPlan::default_clse();
    let mut checks = 0;
    for name in ["MC04", "MC07"] {
        let base = FiberSpec::builtin(name).unwrap();
        let n_ac = base.layout().unwrap().max_adjacency();
        let specs: Vec<FiberSpec> = [1.0, 1.5, 2.0]
            .iter()
            .map(|&r| base.with_trench_ratio(r).unwrap())
            .collect();
        for ch in band.channels() {
            let vals: Vec<(f64, f64, f64)> = specs
                .iter()
                .map(|s| {
                    let (k, o) = s.coupling(ch.freq_hz, CouplingModel::default()).unwrap();
                    (k, o, mean_icxt(o, n_ac, 1e4 * KM))
                })
                .collect();
            for w in vals.windows(2) {
                assert!(
                    w[1].0 < w[0].0 && w[1].1 < w[0].1 && w[1].2 < w[0].2,
                    "{name} at {}",
                    ch.freq_hz
                );
                checks += 3;
            }
        }
    }
    format!("{checks} strict decreases")
}

fn linear_scaling() -> String {
    let r = runs();
    let mcf = r.mc07_7.total_gbps / r.mc07_4.total_gbps;
    let bun = r.ssmf_7.total_gbps / r.ssmf_4.total_gbps;
    for (what, x) in [("MCF MC07", mcf), ("BuMFP", bun)] {
        assert!(((x - 1.75) / 1.75).abs() < 1e-9, "{what}: ratio {x}");
    }
    format!("MC07 7/4 = {mcf:.12}, BuMFP 7/4 = {bun:.12}")
}

fn ul_equivalence() -> String {
    let r = runs();
    let mut out = Vec::new();
    for (res, fiber) in [(&r.mc04_4, "MC04"), (&r.mc07_7, "MC07")] {
        let verdicts = engine()
            .classify(&res.scenario, res.longest_path_km)
            .unwrap();
        assert!(
            verdicts.iter().all(|(_, c)| c.is_ul),
            "{fiber} not UL at {} km",
            res.longest_path_km
        );
        let off = run("off", Mode::Mcf, res.scenario.lanes, fiber, true);
        assert_eq!(off.tuples.len(), res.tuples.len());
        let changed = res
            .tuples
            .iter()
            .zip(&off.tuples)
            .filter(|(a, b)| a.m != b.m)
            .count();
        assert_eq!(changed, 0, "{fiber}: {changed} tuples changed level");
        out.push(format!("{fiber}: 0/{} changed", res.tuples.len()));
    }
    out.join(", ")
}

fn mcf_beats_bumfp() -> String {
    let r = runs();
    let ratio = r.mc04_4.total_gbps / r.ssmf_4.total_gbps;
    assert!(ratio > 1.0, "MCF/BuMFP = {ratio}");
    format!(
        "MCF {:.1} Tbps vs BuMFP {:.1} Tbps, ratio {ratio:.4}",
        r.mc04_4.total_gbps / 1e3,
        r.ssmf_4.total_gbps / 1e3
    )
}

fn span_noise(spec: &FiberSpec, band: &BandPlan, km: f64, dbm: f64, ch: usize) -> SpanNoise {
    let launch = LaunchPower::flat_dbm(dbm).powers_w(band);
    let s = SpanState::new(0, km * KM, launch, spec, band).unwrap();
    let c = band.channels()[ch];
    let nf = band.band(&c).nf_db;
    let (_, omega) = spec.coupling(c.freq_hz, CouplingModel::default()).unwrap();
    let signal = s.launch_power[ch];
    SpanNoise {
        signal_w: signal,
        ase_w: ase_power(nf, c.freq_hz, s.gain[ch], band.symbol_rate_baud()),
        nli_w: IncoherentGn.nli_power(&s, ch, spec, band).unwrap(),
        icxt_w: mean_icxt(omega, 2, s.length) * signal,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

fn gsnr_accumulation() -> String {
    let band = BandPlan::default_clse();
    let spec = FiberSpec::builtin("MC04").unwrap();
    let one = span_noise(&spec, &band, 80.0, 0.0, 100);
    let q1 = accumulate_gsnr(&[one], Penalties::NONE).unwrap();
    let mut worst_db = 0.0f64;
    for n in 2..=12 {
        let qn = accumulate_gsnr(&vec![one; n], Penalties::NONE).unwrap();
        let drop = 10.0 * (n as f64).log10();
        for (a, b) in [
            (q1.snr_ase_db(), qn.snr_ase_db()),
            (q1.snr_nli_db(), qn.snr_nli_db()),
            (q1.snr_icxt_db(), qn.snr_icxt_db()),
        ] {
            worst_db = worst_db.max((a - b - drop).abs());
        }
    }
    assert!(worst_db < 1e-9, "10log10(n) deviation {worst_db} dB");

    // Six unequal spans, mixed channel powers.
    let spans: Vec<SpanNoise> = [
        (80.0, 0.0),
        (62.5, 1.0),
        (75.0, -1.0),
        (40.0, 0.5),
        (80.0, 2.0),
        (55.0, -0.5),
    ]
    .iter()
    .enumerate()
    .map(|(i, &(km, dbm))| span_noise(&spec, &band, km, dbm, 30 * i))
    .collect();
    let pen = Penalties {
        snr_trx_db: 26.0,
        filter_db: 1.75,
        aging_db: 1.0,
    };
    let q = accumulate_gsnr(&spans, pen).unwrap();
    let (mut a, mut n, mut x) = (0.0, 0.0, 0.0);
    for s in &spans {
        a += s.ase_w / s.signal_w;
        n += s.nli_w / s.signal_w;
        x += s.icxt_w / s.signal_w;
    }
    let t = 1.0 / db_to_linear(26.0);
    let gsnr = linear_to_db(1.0 / (a + n + x + t)) - 2.75;
    let gsnr_ex = linear_to_db(1.0 / (a + n + t)) - 2.75;
    let worst = [
        rel(q.snr_ase, 1.0 / a),
        rel(q.snr_nli, 1.0 / n),
        rel(q.snr_icxt, 1.0 / x),
        rel(q.snr_trx, 1.0 / t),
        rel(q.gsnr_db, gsnr),
        rel(q.gsnr_excl_icxt_db, gsnr_ex),
        rel(q.penalty_filter_db, 1.75),
        rel(q.margin_aging_db, 1.0),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);
    assert!(worst < 1e-12, "6-span relative deviation {worst}");
    format!("10log10(n) within {worst_db:.1e} dB for n = 2..12; 6-span max rel dev {worst:.1e}")
}

fn bitrate_mapping() -> String {
    let table = GmiTable::standard(64.0);
    let rates: Vec<f64> = table.levels().iter().map(|l| l.net_bitrate_gbps).collect();
    assert_eq!(rates, vec![100.0, 200.0, 300.0, 400.0, 500.0, 600.0]);
    for (l, bits) in table.levels().iter().zip(GMI_BITS) {
        assert_eq!(l.gmi_bits, bits);
        assert_eq!(64.0 * bits as f64 / 1.28, l.net_bitrate_gbps);
    }
    format!("{rates:?} Gbps")
}

fn main() {
    type Criterion = (&'static str, fn() -> String);
    let criteria: [Criterion; 10] = [
        ("crosstalk threshold table", threshold_table),
        ("closed-form crosstalk vs coupled-power ODE", ode_oracle),
        ("UL-ICXT classification pattern", ul_classification),
        (
            "PCC frequency dependence and fiber ordering",
            frequency_dependence,
        ),
        ("trench width monotonicity", trench_monotonicity),
        ("linear spatial scaling 7/4 lanes", linear_scaling),
        ("UL equivalence with crosstalk disabled", ul_equivalence),
        ("MCF vs BuMFP throughput", mcf_beats_bumfp),
        ("GSNR span accumulation", gsnr_accumulation),
        ("bit-rate mapping", bitrate_mapping),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let t0 = Instant::now();
        match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.2?}]", t0.elapsed()),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    let _ = panic::take_hook();
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
