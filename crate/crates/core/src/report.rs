//! CSV output.
//!
//! Decibel columns carry 6 decimals, linear quantities 10 significant
//! digits in scientific notation, throughput 3 decimals (Gbps).

use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::Result;
use crate::net::{Mode, ScenarioResult, SweepRow};
use crate::units::THZ;

pub fn db(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.6}")
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn linear(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.9e}")
    } else {
        "inf".into()
    }
}

fn gbps(v: f64) -> String {
    format!("{v:.3}")
}

fn thz(f_hz: f64) -> String {
    format!("{:.6}", f_hz / THZ)
}

fn ratio(v: f64) -> String {
    format!("{v:.12}")
}

fn create(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).map_err(|e| crate::Error::File {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    Ok(csv::Writer::from_writer(file))
}

/// pcc.csv, mcc.csv and icxt.csv into `dir`.
pub fn write_sweep(dir: &Path, rows: &[SweepRow]) -> Result<()> {
    type Column = fn(&SweepRow) -> String;
    let files: [(&str, Column); 3] = [
        ("pcc.csv", |r| linear(r.pcc)),
        ("mcc.csv", |r| linear(r.mcc)),
        ("icxt.csv", |r| db(r.icxt_db)),
    ];
    for (name, value) in files {
        let mut w = create(&dir.join(name))?;
        w.write_record(["fiber", "ratio", "f_THz", "value"])?;
        for r in rows {
            w.write_record([
                r.fiber.clone(),
                format!("{}", r.ratio),
                thz(r.freq_hz),
                value(r),
            ])?;
        }
        w.flush()?;
    }
    Ok(())
}

pub fn write_tuples<W: Write>(out: W, results: &[ScenarioResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "scenario",
        "src",
        "dst",
        "path_id",
        "channel",
        "band",
        "f_THz",
        "lane",
        "snr_ase_db",
        "snr_nli_db",
        "snr_icxt_db",
        "snr_trx_db",
        "gsnr_db",
        "gsnr_excl_icxt_db",
        "mu_icxt_db",
        "m",
        "bitrate_gbps",
    ])?;
    for r in results {
        for t in &r.tuples {
            w.write_record([
                r.scenario.name.clone(),
                t.src.clone(),
                t.dst.clone(),
                t.path_id.to_string(),
                t.channel.to_string(),
                t.band.to_string(),
                thz(t.freq_hz),
                t.lane.to_string(),
                db(t.qot.snr_ase_db()),
                db(t.qot.snr_nli_db()),
                db(t.qot.snr_icxt_db()),
                db(t.qot.snr_trx_db()),
                db(t.qot.gsnr_db),
                db(t.qot.gsnr_excl_icxt_db),
                db(t.mu_icxt_db),
                t.m.map_or(String::new(), |m| m.to_string()),
                gbps(t.bitrate_gbps),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_cpct<W: Write>(out: W, results: &[ScenarioResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "scenario",
        "src",
        "dst",
        "paths",
        "shortest_km",
        "hops",
        "cpct_gbps",
    ])?;
    for r in results {
        for c in &r.connections {
            let first = &c.paths[0];
            w.write_record([
                r.scenario.name.clone(),
                c.src.clone(),
                c.dst.clone(),
                c.paths.len().to_string(),
                format!("{:.3}", first.length_km),
                (first.nodes.len() - 1).to_string(),
                gbps(c.cpct_gbps),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reference bundle scenario for `r`: same lane count if present, else the
/// first bundle scenario.
fn bumfp_reference<'a>(
    r: &ScenarioResult,
    all: &'a [ScenarioResult],
) -> Option<&'a ScenarioResult> {
    let bundles = || all.iter().filter(|x| x.scenario.mode == Mode::Bumfp);
    bundles()
        .find(|x| x.scenario.lanes == r.scenario.lanes)
        .or_else(|| bundles().next())
}

/// Same deployment with the fewest lanes.
fn lane_reference<'a>(r: &ScenarioResult, all: &'a [ScenarioResult]) -> Option<&'a ScenarioResult> {
    let s = &r.scenario;
    all.iter()
        .filter(|x| {
            let t = &x.scenario;
            t.mode == s.mode
                && t.fiber == s.fiber
                && t.k_paths == s.k_paths
                && t.disable_icxt == s.disable_icxt
        })
        .min_by_key(|x| x.scenario.lanes)
}

/// One row per scenario. `ul` holds the UL-ICXT verdict per scenario.
pub fn write_summary<W: Write>(out: W, results: &[ScenarioResult], ul: &[bool]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let bands: Vec<String> = results
        .first()
        .map(|r| {
            r.per_band_gbps
                .keys()
                .map(|b| format!("{b}_gbps"))
                .collect()
        })
        .unwrap_or_default();
    let mut header: Vec<String> = [
        "scenario",
        "mode",
        "lanes",
        "fiber",
        "k_paths",
        "icxt",
        "connections",
        "tuples",
        "total_gbps",
    ]
    .map(String::from)
    .to_vec();
    header.extend(bands);
    header.extend([
        "ul_icxt".into(),
        "ratio_to_bumfp".into(),
        "ratio_to_fewest_lanes".into(),
    ]);
    w.write_record(&header)?;
    for (i, r) in results.iter().enumerate() {
        let s = &r.scenario;
        let mut row = vec![
            s.name.clone(),
            s.mode.to_string(),
            s.lanes.to_string(),
            s.fiber.clone().unwrap_or_else(|| "topology".into()),
            s.k_paths.to_string(),
            if s.disable_icxt { "off" } else { "on" }.into(),
            r.connections.len().to_string(),
            r.tuples.len().to_string(),
            gbps(r.total_gbps),
        ];
        row.extend(r.per_band_gbps.values().map(|&v| gbps(v)));
        row.push(ul.get(i).map_or(String::new(), |u| u.to_string()));
        row.push(match bumfp_reference(r, results) {
            Some(b) if b.total_gbps > 0.0 => ratio(r.total_gbps / b.total_gbps),
            _ => String::new(),
        });
        row.push(match lane_reference(r, results) {
            Some(b) if b.total_gbps > 0.0 => ratio(r.total_gbps / b.total_gbps),
            _ => String::new(),
        });
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formats() {
        assert_eq!(db(-26.82), "-26.820000");
        assert_eq!(db(f64::NEG_INFINITY), "-inf");
        assert_eq!(db(f64::INFINITY), "inf");
        assert_eq!(linear(3.849880997760115e-12), "3.849880998e-12");
        assert_eq!(gbps(600.0), "600.000");
        assert_eq!(ratio(1.75), "1.750000000000");
    }
}
