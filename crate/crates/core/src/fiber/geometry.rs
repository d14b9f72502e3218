//! Fabrication sanity checks for fiber geometries.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{v_number, FiberSpec};
use crate::band::BandPlan;
use crate::units::UM;

/// Single-mode cutoff of a step-index core (first zero of J0).
pub const SINGLE_MODE_CUTOFF: f64 = 2.405;

/// Which way the trench-separation bound is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeparationRule {
    /// Adjacent trenches must stay at least the bound apart.
    #[default]
    Minimum,
    /// Adjacent trenches must stay at most the bound apart.
    Maximum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryLimits {
    pub max_cladding_diameter_um: f64,
    pub trench_separation_um: f64,
    pub separation_rule: SeparationRule,
}

impl Default for GeometryLimits {
    fn default() -> Self {
        Self {
            max_cladding_diameter_um: 230.0,
            trench_separation_um: 3.0,
            separation_rule: SeparationRule::Minimum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Hard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FindingKind {
    CladdingDiameter,
    CladdingThickness,
    TrenchSeparation,
    SingleModeCutoff,
}

impl FindingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FindingKind::CladdingDiameter => "cladding-diameter",
            FindingKind::CladdingThickness => "cladding-thickness",
            FindingKind::TrenchSeparation => "trench-separation",
            FindingKind::SingleModeCutoff => "single-mode-cutoff",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub severity: Severity,
    pub kind: FindingKind,
    pub value: f64,
    pub limit: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub fiber: String,
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn has_hard_violations(&self) -> bool {
        self.findings.iter().any(|f| f.severity == Severity::Hard)
    }

    pub fn hard(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Hard)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
    }

    pub fn has(&self, kind: FindingKind) -> bool {
        self.findings.iter().any(|f| f.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.has_hard_violations() {
            "FAIL"
        } else {
            "ok"
        };
        writeln!(f, "{}: {status}", self.fiber)?;
        for x in &self.findings {
            let sev = match x.severity {
                Severity::Hard => "violation",
                Severity::Warning => "warning",
            };
            writeln!(f, "  {sev} [{}] {}", x.kind.as_str(), x.message)?;
        }
        Ok(())
    }
}

/// Check `spec` against fabrication limits. With a band plan, the
/// single-mode cutoff is checked at the top of every band.
pub fn validate_geometry(
    spec: &FiberSpec,
    band: Option<&BandPlan>,
    limits: &GeometryLimits,
) -> ValidationReport {
    let mut findings = Vec::new();
    let cd_um = spec.cladding_diameter() / UM;
    if cd_um > limits.max_cladding_diameter_um {
        findings.push(Finding {
            severity: Severity::Hard,
            kind: FindingKind::CladdingDiameter,
            value: cd_um,
            limit: limits.max_cladding_diameter_um,
            message: format!(
                "cladding exceeds {} um (CD = {cd_um} um)",
                limits.max_cladding_diameter_um
            ),
        });
    }

    let outer_edge = match (spec.layout(), spec.trench()) {
        (Some(l), Some(t)) => l.outer_radius() + t.core_trench_gap() + t.trench_width(),
        _ => spec.core_radius(),
    };
    let needed = outer_edge + spec.cladding_thickness();
    if needed > spec.cladding_diameter() / 2.0 * (1.0 + 1e-12) {
        // Reported as a warning: the tabulated thickness of the standard
        // 125 um four-core design already exceeds this bound.
        findings.push(Finding {
            severity: Severity::Warning,
            kind: FindingKind::CladdingThickness,
            value: needed / UM,
            limit: cd_um / 2.0,
            message: format!(
                "outermost core structure + cladding thickness = {:.2} um exceeds CD/2 = {:.2} um",
                needed / UM,
                cd_um / 2.0
            ),
        });
    }

    if let (Some(l), Some(t)) = (spec.layout(), spec.trench()) {
        let sep_um = (l.pitch() - 2.0 * (t.core_trench_gap() + t.trench_width())) / UM;
        let bound = limits.trench_separation_um;
        let violated = match limits.separation_rule {
            SeparationRule::Minimum => sep_um < bound,
            SeparationRule::Maximum => sep_um < 0.0 || sep_um > bound,
        };
        if violated {
            let what = if sep_um < 0.0 {
                "adjacent trenches overlap".to_owned()
            } else {
                match limits.separation_rule {
                    SeparationRule::Minimum => format!("trench separation below {bound} um"),
                    SeparationRule::Maximum => format!("trench separation above {bound} um"),
                }
            };
            findings.push(Finding {
                severity: Severity::Hard,
                kind: FindingKind::TrenchSeparation,
                value: sep_um,
                limit: bound,
                message: format!(
                    "{what}: pitch - 2(r2 + w_tr) = {sep_um:.3} um at w_tr/r1 = {:.3}",
                    t.width_ratio()
                ),
            });
        }

        if let Some(band) = band {
            for b in band.bands() {
                let top = band
                    .channels()
                    .iter()
                    .filter(|c| c.band == b.name)
                    .map(|c| c.freq_hz)
                    .fold(f64::NEG_INFINITY, f64::max);
                if !top.is_finite() {
                    continue;
                }
                let v = v_number(top, t);
                if v > SINGLE_MODE_CUTOFF {
                    findings.push(Finding {
                        severity: Severity::Warning,
                        kind: FindingKind::SingleModeCutoff,
                        value: v,
                        limit: SINGLE_MODE_CUTOFF,
                        message: format!(
                            "V1 = {v:.4} exceeds {SINGLE_MODE_CUTOFF} in band {}",
                            b.name
                        ),
                    });
                }
            }
        }
    }

    ValidationReport {
        fiber: spec.name().to_owned(),
        findings,
    }
}
