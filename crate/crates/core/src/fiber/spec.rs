use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::coupling::{kappa_from, power_coupling_from, CouplingIntermediates, CouplingModel};
use super::{CoreLayout, TrenchProfile};
use crate::band::BandPlan;
use crate::curve::FrequencyCurve;
use crate::error::{Error, Result};
use crate::units::{db_per_km_to_per_m, KM, MM, UM};

/// On-disk fiber description (TOML). Units as named in the field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberFile {
    pub name: String,
    pub cladding_diameter_um: f64,
    pub cladding_thickness_um: f64,
    pub bend_radius_mm: f64,
    pub core_radius_um: f64,
    pub n_core: f64,
    #[serde(default)]
    pub layout: Option<LayoutFile>,
    #[serde(default)]
    pub trench: Option<TrenchFile>,
    pub curves: CurvesFile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayoutKind {
    Square,
    Hexagonal,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutFile {
    pub kind: LayoutKind,
    pub pitch_um: f64,
    /// Core centres for `kind = "custom"`, µm.
    #[serde(default)]
    pub cores_um: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrenchFile {
    pub core_trench_gap_um: f64,
    #[serde(default)]
    pub trench_width_ratio: Option<f64>,
    #[serde(default)]
    pub trench_width_um: Option<f64>,
    #[serde(default = "default_delta1")]
    pub delta1: f64,
    #[serde(default = "default_delta_ratio")]
    pub delta_ratio: f64,
}

fn default_delta1() -> f64 {
    0.0035
}

fn default_delta_ratio() -> f64 {
    2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvesFile {
    pub attenuation_db_per_km: Vec<(f64, f64)>,
    pub eff_area_um2: Vec<(f64, f64)>,
    pub dispersion_ps2_per_km: Vec<(f64, f64)>,
    pub nonlinear_gamma_per_w_km: Vec<(f64, f64)>,
}

/// Geometry and frequency-dependent profile of one fiber type.
///
/// Lengths are stored in metres. A single-core fiber has neither a layout
/// nor a trench.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberSpec {
    name: String,
    cladding_diameter: f64,
    cladding_thickness: f64,
    bend_radius: f64,
    core_radius: f64,
    n_core: f64,
    layout: Option<CoreLayout>,
    trench: Option<TrenchProfile>,
    attenuation: FrequencyCurve,
    eff_area: FrequencyCurve,
    dispersion: FrequencyCurve,
    gamma: FrequencyCurve,
}

impl TryFrom<FiberFile> for FiberSpec {
    type Error = Error;

    fn try_from(f: FiberFile) -> Result<Self> {
        let bad = |m: String| Error::invalid(format!("fiber `{}`: {m}", f.name));
        if f.name.trim().is_empty() {
            return Err(Error::invalid("fiber name is empty"));
        }
        for (what, v) in [
            ("cladding_diameter_um", f.cladding_diameter_um),
            ("cladding_thickness_um", f.cladding_thickness_um),
            ("bend_radius_mm", f.bend_radius_mm),
            ("core_radius_um", f.core_radius_um),
        ] {
            if !(v > 0.0) {
                return Err(bad(format!("{what} must be positive")));
            }
        }
        let layout = match &f.layout {
            None => None,
            Some(l) => {
                let pitch = l.pitch_um * UM;
                Some(match l.kind {
                    LayoutKind::Square => CoreLayout::square(pitch),
                    LayoutKind::Hexagonal => CoreLayout::hexagonal(pitch),
                    LayoutKind::Custom => {
                        let pos: Vec<(f64, f64)> =
                            l.cores_um.iter().map(|p| (p[0] * UM, p[1] * UM)).collect();
                        CoreLayout::from_positions(pitch, &pos)?
                    }
                })
            }
        };
        let trench = match &f.trench {
            None => None,
            Some(t) => {
                let width = match (t.trench_width_ratio, t.trench_width_um) {
                    (Some(r), None) => r * f.core_radius_um * UM,
                    (None, Some(w)) => w * UM,
                    _ => {
                        return Err(bad(
                            "trench needs exactly one of trench_width_ratio, trench_width_um"
                                .into(),
                        ))
                    }
                };
                Some(TrenchProfile::new(
                    f.core_radius_um * UM,
                    t.core_trench_gap_um * UM,
                    width,
                    t.delta1,
                    t.delta_ratio,
                    f.n_core,
                )?)
            }
        };
        if layout.is_some() != trench.is_some() {
            return Err(bad(
                "multi-core fibers need both [layout] and [trench]".into()
            ));
        }
        let curve = |n: &str, rows: &[(f64, f64)]| FrequencyCurve::from_thz_rows(n, rows);
        Ok(Self {
            attenuation: curve("attenuation_db_per_km", &f.curves.attenuation_db_per_km)?,
            eff_area: curve("eff_area_um2", &f.curves.eff_area_um2)?,
            dispersion: curve("dispersion_ps2_per_km", &f.curves.dispersion_ps2_per_km)?,
            gamma: curve(
                "nonlinear_gamma_per_w_km",
                &f.curves.nonlinear_gamma_per_w_km,
            )?,
            name: f.name,
            cladding_diameter: f.cladding_diameter_um * UM,
            cladding_thickness: f.cladding_thickness_um * UM,
            bend_radius: f.bend_radius_mm * MM,
            core_radius: f.core_radius_um * UM,
            n_core: f.n_core,
            layout,
            trench,
        })
    }
}

const MC04_TOML: &str = include_str!("../../../../data/fibers/mc04.toml");
const MC07_TOML: &str = include_str!("../../../../data/fibers/mc07.toml");
const SSMF_TOML: &str = include_str!("../../../../data/fibers/ssmf.toml");

impl FiberSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: FiberFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        file.try_into()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::File {
            path: path.to_owned(),
            message: e.to_string(),
        })?;
        Self::from_toml_str(&text).map_err(|e| Error::File {
            path: path.to_owned(),
            message: e.to_string(),
        })
    }

    /// Shipped fiber definitions: `MC04`, `MC07` and `SSMF`.
    pub fn builtin(name: &str) -> Option<Self> {
        let text = match name {
            "MC04" => MC04_TOML,
            "MC07" => MC07_TOML,
            "SSMF" => SSMF_TOML,
            _ => return None,
        };
        Some(Self::from_toml_str(text).expect("shipped fiber files parse"))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// CD, m.
    pub fn cladding_diameter(&self) -> f64 {
        self.cladding_diameter
    }

    /// CT, m.
    pub fn cladding_thickness(&self) -> f64 {
        self.cladding_thickness
    }

    /// r_b, m.
    pub fn bend_radius(&self) -> f64 {
        self.bend_radius
    }

    pub fn core_radius(&self) -> f64 {
        self.core_radius
    }

    pub fn n_core(&self) -> f64 {
        self.n_core
    }

    pub fn layout(&self) -> Option<&CoreLayout> {
        self.layout.as_ref()
    }

    pub fn trench(&self) -> Option<&TrenchProfile> {
        self.trench.as_ref()
    }

    pub fn is_multicore(&self) -> bool {
        self.layout.is_some()
    }

    pub fn core_count(&self) -> usize {
        self.layout.as_ref().map_or(1, |l| l.core_count())
    }

    pub fn with_trench_ratio(&self, ratio: f64) -> Result<Self> {
        let trench = self
            .trench
            .as_ref()
            .ok_or_else(|| Error::invalid(format!("fiber `{}` has no trench", self.name)))?
            .with_width_ratio(ratio)?;
        Ok(Self {
            trench: Some(trench),
            ..self.clone()
        })
    }

    pub fn with_delta1(&self, delta1: f64) -> Result<Self> {
        let Some(t) = &self.trench else {
            return Ok(self.clone());
        };
        Ok(Self {
            trench: Some(t.with_delta1(delta1)?),
            ..self.clone()
        })
    }

    pub fn with_cladding_diameter(&self, cd: f64) -> Self {
        Self {
            cladding_diameter: cd,
            ..self.clone()
        }
    }

    pub fn attenuation_db_per_km(&self, f_hz: f64) -> Result<f64> {
        self.attenuation.at(f_hz)
    }

    /// Power attenuation coefficient, 1/m.
    pub fn attenuation_per_m(&self, f_hz: f64) -> Result<f64> {
        Ok(db_per_km_to_per_m(self.attenuation.at(f_hz)?))
    }

    pub fn eff_area_m2(&self, f_hz: f64) -> Result<f64> {
        Ok(self.eff_area.at(f_hz)? * UM * UM)
    }

    /// Group-velocity dispersion β2, s²/m (signed as tabulated).
    pub fn beta2_s2_per_m(&self, f_hz: f64) -> Result<f64> {
        Ok(self.dispersion.at(f_hz)? * 1e-24 / KM)
    }

    /// Nonlinear coefficient γ, 1/(W·m).
    pub fn gamma_per_w_m(&self, f_hz: f64) -> Result<f64> {
        Ok(self.gamma.at(f_hz)? / KM)
    }

    pub fn curves(&self) -> [&FrequencyCurve; 4] {
        [
            &self.attenuation,
            &self.eff_area,
            &self.dispersion,
            &self.gamma,
        ]
    }

    /// Every frequency curve must span the whole band plan.
    pub fn check_coverage(&self, band: &BandPlan) -> Result<()> {
        for c in self.curves() {
            for f in [band.lowest_hz(), band.highest_hz()] {
                c.at(f)
                    .map_err(|e| Error::invalid(format!("fiber `{}`: {e}", self.name)))?;
            }
        }
        Ok(())
    }

    /// (κ, Ω) at `f_hz`; zero for single-core fibers.
    pub fn coupling(&self, f_hz: f64, model: CouplingModel) -> Result<(f64, f64)> {
        let (Some(layout), Some(trench)) = (&self.layout, &self.trench) else {
            return Ok((0.0, 0.0));
        };
        let aux = CouplingIntermediates::compute(f_hz, trench, layout.pitch(), model)?;
        let kappa = kappa_from(&aux, trench, layout.pitch());
        let omega = power_coupling_from(f_hz, kappa, self.bend_radius, self.n_core, layout.pitch());
        Ok((kappa, omega))
    }
}

/// Fiber types by name.
#[derive(Debug, Clone, Default)]
pub struct FiberLibrary {
    fibers: BTreeMap<String, FiberSpec>,
}

impl FiberLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut lib = Self::new();
        for n in ["MC04", "MC07", "SSMF"] {
            lib.insert(FiberSpec::builtin(n).expect("builtin"));
        }
        lib
    }

    pub fn insert(&mut self, spec: FiberSpec) -> Option<FiberSpec> {
        self.fibers.insert(spec.name().to_owned(), spec)
    }

    pub fn load_files<P: AsRef<Path>>(paths: &[P]) -> Result<Self> {
        let mut lib = Self::new();
        for p in paths {
            let spec = FiberSpec::load(p.as_ref())?;
            if lib.insert(spec.clone()).is_some() {
                return Err(Error::Config(format!(
                    "fiber `{}` defined twice",
                    spec.name()
                )));
            }
        }
        Ok(lib)
    }

    pub fn get(&self, name: &str) -> Result<&FiberSpec> {
        self.fibers
            .get(name)
            .ok_or_else(|| Error::UnknownFiber(name.to_owned()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.fibers.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &FiberSpec> {
        self.fibers.values()
    }

    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }
}
