//! Run configuration (TOML).
//!
//! Relative file paths resolve against the directory holding the
//! configuration file. Every section is optional.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::band::{Band, BandName, BandPlan};
use crate::error::{Error, Result};
use crate::fiber::{CouplingModel, FiberLibrary, GeometryLimits, UFormula, WApproximation};
use crate::net::{parse_connections, Engine, Mode, QotSettings, Scenario, Topology};
use crate::qot::{net_bitrate_gbps, GmiLevel, GmiTable, LaunchPower, SelectionBasis};
use crate::units::{GHZ, THZ};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub files: FilesConfig,
    pub band: BandConfig,
    pub physics: PhysicsConfig,
    pub qot: QotConfig,
    pub gmi: GmiConfig,
    pub sweep: SweepConfig,
    pub scenario: Vec<ScenarioConfig>,
    #[serde(skip)]
    base_dir: PathBuf,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilesConfig {
    /// Extra fiber files; the shipped MC04, MC07 and SSMF are always present.
    pub fibers: Vec<PathBuf>,
    pub topology: Option<PathBuf>,
    pub connections: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandEntry {
    pub name: BandName,
    pub f_start_thz: f64,
    pub channels: usize,
    pub nf_db: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BandConfig {
    pub channel_spacing_ghz: f64,
    pub symbol_rate_gbaud: f64,
    pub bands: Vec<BandEntry>,
    /// Evaluate only this many evenly spaced channels per band.
    pub channels_per_band: Option<usize>,
}

impl Default for BandConfig {
    fn default() -> Self {
        let plan = BandPlan::default_clse();
        Self {
            channel_spacing_ghz: plan.channel_spacing_hz() / GHZ,
            symbol_rate_gbaud: plan.symbol_rate_baud() / GHZ,
            bands: plan
                .bands()
                .iter()
                .map(|b| BandEntry {
                    name: b.name,
                    f_start_thz: b.f_start_hz / THZ,
                    channels: b.channel_count,
                    nf_db: b.nf_db,
                })
                .collect(),
            channels_per_band: None,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicsConfig {
    pub w_approximation: WApproximation,
    pub u_formula: UFormula,
    pub geometry: GeometryLimits,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QotConfig {
    pub max_span_km: f64,
    pub snr_trx_db: f64,
    pub filter_db_per_node: f64,
    pub aging_db: f64,
    pub selection: SelectionBasis,
    pub launch: LaunchPower,
}

impl Default for QotConfig {
    fn default() -> Self {
        let q = QotSettings::default();
        Self {
            max_span_km: q.max_span_km,
            snr_trx_db: q.snr_trx_db,
            filter_db_per_node: q.filter_db_per_node,
            aging_db: q.aging_db,
            selection: q.selection,
            launch: q.launch,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GmiConfig {
    /// Replaces the standard six-level table.
    pub levels: Option<Vec<GmiLevel>>,
    pub gsnr_thresholds_db: Option<Vec<f64>>,
    pub icxt_thresholds_db: Option<Vec<f64>>,
    pub fec_overhead: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub fibers: Vec<String>,
    pub ratios: Vec<f64>,
    pub reach_km: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            fibers: vec!["MC04".into(), "MC07".into()],
            ratios: vec![1.0, 1.5, 2.0],
            reach_km: 10_000.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub mode: Mode,
    pub lanes: usize,
    pub fiber: Option<String>,
    #[serde(default = "one")]
    pub k_paths: usize,
    #[serde(default)]
    pub disable_icxt: bool,
}

fn one() -> usize {
    1
}

impl Config {
    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.base_dir = base_dir.to_owned();
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::File {
            path: path.to_owned(),
            message: e.to_string(),
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml_str(&text, base).map_err(|e| Error::File {
            path: path.to_owned(),
            message: e.to_string(),
        })
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_owned()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn band_plan(&self) -> Result<BandPlan> {
        let bands = self
            .band
            .bands
            .iter()
            .map(|b| Band {
                name: b.name,
                f_start_hz: b.f_start_thz * THZ,
                channel_count: b.channels,
                nf_db: b.nf_db,
            })
            .collect();
        let plan = BandPlan::new(
            bands,
            self.band.channel_spacing_ghz * GHZ,
            self.band.symbol_rate_gbaud * GHZ,
        )?;
        match self.band.channels_per_band {
            Some(n) => plan.decimated(n),
            None => Ok(plan),
        }
    }

    pub fn fiber_library(&self) -> Result<FiberLibrary> {
        let mut lib = FiberLibrary::builtin();
        let paths: Vec<PathBuf> = self.files.fibers.iter().map(|p| self.resolve(p)).collect();
        for spec in FiberLibrary::load_files(&paths)?.iter() {
            lib.insert(spec.clone());
        }
        Ok(lib)
    }

    pub fn topology(&self) -> Result<Topology> {
        let path = self
            .files
            .topology
            .as_ref()
            .ok_or_else(|| Error::Config("no topology file configured".into()))?;
        Topology::load(&self.resolve(path))
    }

    pub fn connections(&self) -> Result<Option<Vec<(String, String)>>> {
        let Some(p) = &self.files.connections else {
            return Ok(None);
        };
        let path = self.resolve(p);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::File {
            path: path.clone(),
            message: e.to_string(),
        })?;
        parse_connections(&text).map(Some).map_err(|e| Error::File {
            path,
            message: e.to_string(),
        })
    }

    pub fn gmi_table(&self, symbol_rate_gbaud: f64) -> Result<GmiTable> {
        if let Some(levels) = &self.gmi.levels {
            return GmiTable::new(levels.clone());
        }
        let mut levels = GmiTable::standard(symbol_rate_gbaud).levels().to_vec();
        let n = levels.len();
        let check = |v: &Vec<f64>, what: &str| {
            if v.len() == n {
                Ok(())
            } else {
                Err(Error::Config(format!(
                    "{what} needs {n} entries, got {}",
                    v.len()
                )))
            }
        };
        if let Some(v) = &self.gmi.gsnr_thresholds_db {
            check(v, "gsnr_thresholds_db")?;
            for (l, &x) in levels.iter_mut().zip(v) {
                l.gsnr_threshold_db = x;
            }
        }
        if let Some(v) = &self.gmi.icxt_thresholds_db {
            check(v, "icxt_thresholds_db")?;
            for (l, &x) in levels.iter_mut().zip(v) {
                l.icxt_threshold_db = x;
            }
        }
        if let Some(oh) = self.gmi.fec_overhead {
            for l in &mut levels {
                l.net_bitrate_gbps = net_bitrate_gbps(symbol_rate_gbaud, l.gmi_bits, oh);
            }
        }
        GmiTable::new(levels)
    }

    pub fn coupling(&self) -> CouplingModel {
        CouplingModel {
            w_approximation: self.physics.w_approximation,
            u_formula: self.physics.u_formula,
        }
    }

    pub fn geometry_limits(&self) -> GeometryLimits {
        self.physics.geometry
    }

    pub fn qot_settings(&self) -> QotSettings {
        QotSettings {
            launch: self.qot.launch.clone(),
            max_span_km: self.qot.max_span_km,
            snr_trx_db: self.qot.snr_trx_db,
            filter_db_per_node: self.qot.filter_db_per_node,
            aging_db: self.qot.aging_db,
            selection: self.qot.selection,
        }
    }

    pub fn scenarios(&self) -> Vec<Scenario> {
        self.scenario
            .iter()
            .map(|s| Scenario {
                name: s.name.clone(),
                mode: s.mode,
                lanes: s.lanes,
                fiber: s.fiber.clone(),
                k_paths: s.k_paths,
                disable_icxt: s.disable_icxt,
            })
            .collect()
    }

    /// Fully assembled engine: topology, fibers, band plan, table, settings.
    pub fn engine(&self) -> Result<Engine> {
        let band = self.band_plan()?;
        let mut engine = Engine::new(self.topology()?, self.fiber_library()?, band)?;
        engine.gmi = self.gmi_table(self.band.symbol_rate_gbaud)?;
        engine.coupling = self.coupling();
        engine.qot = self.qot_settings();
        engine.connections = self.connections()?;
        Ok(engine)
    }
}
