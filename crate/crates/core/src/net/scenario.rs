//! Scenario evaluation: every (connection, path, channel, lane) tuple.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::paths::{yen, Path};
use super::Topology;
use crate::band::{BandName, BandPlan};
use crate::error::{Error, Result};
use crate::fiber::{
    classify_ul_icxt, mean_icxt, CouplingModel, FiberLibrary, FiberSpec, UlClassification,
};
use crate::qot::{
    accumulate_gsnr, ase_power, icxt_noise_power, segment_link, select_gmi, GmiTable, IncoherentGn,
    LaunchPower, NliEstimator, Penalties, QotBreakdown, SelectionBasis, SpanNoise, SpanState,
};
use crate::units::{linear_to_db, KM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// One multi-core fiber per link; lanes are cores.
    #[serde(rename = "MCF", alias = "mcf")]
    Mcf,
    /// A bundle of single-core fiber pairs per link; lanes are fibers.
    #[serde(rename = "BuMFP", alias = "bumfp")]
    Bumfp,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Mcf => "MCF",
            Mode::Bumfp => "BuMFP",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub mode: Mode,
    pub lanes: usize,
    /// Replaces the fiber named on every link.
    pub fiber: Option<String>,
    pub k_paths: usize,
    /// Drop the crosstalk noise term and the crosstalk constraint.
    pub disable_icxt: bool,
}

impl Scenario {
    pub fn new(name: impl Into<String>, mode: Mode, lanes: usize, fiber: Option<&str>) -> Self {
        Self {
            name: name.into(),
            mode,
            lanes,
            fiber: fiber.map(str::to_owned),
            k_paths: 1,
            disable_icxt: false,
        }
    }
}

/// Launch conditions, penalties and span rules shared by all tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct QotSettings {
    pub launch: LaunchPower,
    pub max_span_km: f64,
    pub snr_trx_db: f64,
    /// Filtering penalty per node on the path (endpoints included), dB.
    pub filter_db_per_node: f64,
    pub aging_db: f64,
    pub selection: SelectionBasis,
}

impl Default for QotSettings {
    fn default() -> Self {
        Self {
            launch: LaunchPower::default(),
            max_span_km: 80.0,
            snr_trx_db: 26.0,
            filter_db_per_node: 0.25,
            aging_db: 1.0,
            selection: SelectionBasis::IcxtBudget,
        }
    }
}

/// Everything a scenario is evaluated against. Immutable during evaluation.
#[derive(Clone)]
pub struct Engine {
    pub topology: Topology,
    pub fibers: FiberLibrary,
    pub band: BandPlan,
    pub gmi: GmiTable,
    pub coupling: CouplingModel,
    pub qot: QotSettings,
    pub nli: Arc<dyn NliEstimator>,
    /// Connections to evaluate; every ordered core pair when `None`.
    pub connections: Option<Vec<(String, String)>>,
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("topology", &self.topology.stats())
            .field("fibers", &self.fibers.len())
            .field("channels", &self.band.channel_count())
            .field("qot", &self.qot)
            .finish_non_exhaustive()
    }
}

impl Engine {
    pub fn new(topology: Topology, fibers: FiberLibrary, band: BandPlan) -> Result<Self> {
        topology.check_fibers(&fibers)?;
        let gmi = GmiTable::standard(band.symbol_rate_baud() / 1e9);
        Ok(Self {
            topology,
            fibers,
            band,
            gmi,
            coupling: CouplingModel::default(),
            qot: QotSettings::default(),
            nli: Arc::new(IncoherentGn),
            connections: None,
        })
    }

    fn connection_indices(&self) -> Result<Vec<(usize, usize)>> {
        let Some(list) = &self.connections else {
            return Ok(self.topology.core_connections());
        };
        list.iter()
            .map(|(s, d)| {
                let s_i = self.core_index(s)?;
                let d_i = self.core_index(d)?;
                if s_i == d_i {
                    return Err(Error::invalid(format!(
                        "connection `{s}` -> `{d}` is a loop"
                    )));
                }
                Ok((s_i, d_i))
            })
            .collect()
    }

    fn core_index(&self, id: &str) -> Result<usize> {
        let i = self
            .topology
            .node_index(id)
            .ok_or_else(|| Error::invalid(format!("unknown node `{id}`")))?;
        if !self.topology.node(i).core {
            return Err(Error::invalid(format!("`{id}` is not a core node")));
        }
        Ok(i)
    }

    fn fiber_for(&self, scenario: &Scenario, link: usize) -> Result<&FiberSpec> {
        let name = scenario
            .fiber
            .as_deref()
            .unwrap_or(&self.topology.link(link).fiber);
        self.fibers.get(name)
    }

    /// Names of the fibers a scenario places on links.
    pub fn fibers_used(&self, scenario: &Scenario) -> Vec<String> {
        let mut names: Vec<String> = match &scenario.fiber {
            Some(f) => vec![f.clone()],
            None => self
                .topology
                .links()
                .iter()
                .map(|l| l.fiber.clone())
                .collect(),
        };
        names.sort();
        names.dedup();
        names
    }

    fn validate(&self, scenario: &Scenario) -> Result<()> {
        if scenario.lanes == 0 {
            return Err(Error::invalid("a scenario needs at least one lane"));
        }
        if scenario.k_paths == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        for name in self.fibers_used(scenario) {
            let spec = self.fibers.get(&name)?;
            spec.check_coverage(&self.band)?;
            match scenario.mode {
                Mode::Mcf => {
                    if !spec.is_multicore() {
                        return Err(Error::invalid(format!(
                            "scenario `{}`: MCF mode needs a multi-core fiber, `{name}` has one core",
                            scenario.name
                        )));
                    }
                    if scenario.lanes > spec.core_count() {
                        return Err(Error::invalid(format!(
                            "scenario `{}`: {} lanes exceed the {} cores of `{name}`",
                            scenario.name,
                            scenario.lanes,
                            spec.core_count()
                        )));
                    }
                }
                Mode::Bumfp => {
                    if spec.is_multicore() {
                        return Err(Error::invalid(format!(
                            "scenario `{}`: BuMFP mode needs a single-core fiber, `{name}` is multi-core",
                            scenario.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// UL-ICXT classification of every fiber the scenario uses at `reach_km`
    /// against the highest level's crosstalk threshold. Single-core
    /// deployments are trivially UL.
    pub fn classify(
        &self,
        scenario: &Scenario,
        reach_km: f64,
    ) -> Result<Vec<(String, UlClassification)>> {
        let threshold = self.gmi.highest().icxt_threshold_db;
        self.fibers_used(scenario)
            .into_iter()
            .map(|name| {
                let spec = self.fibers.get(&name)?;
                let c =
                    classify_ul_icxt(spec, &self.band, reach_km * KM, threshold, self.coupling)?;
                Ok((name, c))
            })
            .collect()
    }

    fn omega_table(&self, scenario: &Scenario) -> Result<HashMap<String, Vec<f64>>> {
        let mut out = HashMap::new();
        if scenario.mode != Mode::Mcf || scenario.disable_icxt {
            return Ok(out);
        }
        for name in self.fibers_used(scenario) {
            let spec = self.fibers.get(&name)?;
            let omegas = self
                .band
                .channels()
                .iter()
                .map(|ch| spec.coupling(ch.freq_hz, self.coupling).map(|(_, o)| o))
                .collect::<Result<Vec<_>>>()?;
            out.insert(name, omegas);
        }
        Ok(out)
    }
}

/// One evaluated (connection, path, channel, lane) tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct TupleResult {
    pub src: String,
    pub dst: String,
    pub path_id: usize,
    pub channel: usize,
    pub band: BandName,
    pub freq_hz: f64,
    pub lane: usize,
    pub qot: QotBreakdown,
    /// Accumulated mean crosstalk on the path, dB; `-inf` without crosstalk.
    pub mu_icxt_db: f64,
    /// Selected level, `None` when the tuple is rejected.
    pub m: Option<u8>,
    pub bitrate_gbps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSummary {
    pub path_id: usize,
    pub nodes: Vec<String>,
    pub length_km: f64,
    pub spans: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionResult {
    pub src: String,
    pub dst: String,
    pub paths: Vec<PathSummary>,
    /// Sum of tuple bit rates over channels, lanes and evaluated paths, Gbps.
    pub cpct_gbps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub scenario: Scenario,
    pub connections: Vec<ConnectionResult>,
    pub tuples: Vec<TupleResult>,
    pub total_gbps: f64,
    pub per_band_gbps: BTreeMap<BandName, f64>,
    pub per_lane_gbps: Vec<f64>,
    pub longest_path_km: f64,
}

impl ScenarioResult {
    pub fn tuple(
        &self,
        src: &str,
        dst: &str,
        path_id: usize,
        channel: usize,
        lane: usize,
    ) -> Option<&TupleResult> {
        self.tuples.iter().find(|t| {
            t.src == src
                && t.dst == dst
                && t.path_id == path_id
                && t.channel == channel
                && t.lane == lane
        })
    }
}

struct Segment<'e> {
    spec: &'e FiberSpec,
    name: &'e str,
    state: SpanState,
    count: usize,
}

struct PathModel<'e> {
    segments: Vec<Segment<'e>>,
    nodes: usize,
}

impl PathModel<'_> {
    fn spans(&self) -> usize {
        self.segments.iter().map(|s| s.count).sum()
    }
}

fn path_model<'e>(
    engine: &'e Engine,
    scenario: &'e Scenario,
    path: &Path,
    launch: &[f64],
) -> Result<PathModel<'e>> {
    let mut segments = Vec::with_capacity(path.links.len());
    for &l in &path.links {
        let link = engine.topology.link(l);
        let spec = engine.fiber_for(scenario, l)?;
        let spans = segment_link(link.length_km, engine.qot.max_span_km)?;
        let state = SpanState::new(0, spans[0] * KM, launch.to_vec(), spec, &engine.band)?;
        segments.push(Segment {
            spec,
            name: spec.name(),
            state,
            count: spans.len(),
        });
    }
    Ok(PathModel {
        segments,
        nodes: path.nodes.len(),
    })
}

/// Per-segment crosstalk-free noise of one channel: (signal, ASE, NLI).
fn channel_noise(
    engine: &Engine,
    model: &PathModel,
    channel: usize,
) -> Result<Vec<(f64, f64, f64)>> {
    let ch = &engine.band.channels()[channel];
    let nf = engine.band.band(ch).nf_db;
    let r = engine.band.symbol_rate_baud();
    model
        .segments
        .iter()
        .map(|seg| {
            let signal = seg.state.launch_power[channel];
            let ase = ase_power(nf, ch.freq_hz, seg.state.gain[channel], r);
            let nli = engine
                .nli
                .nli_power(&seg.state, channel, seg.spec, &engine.band)?;
            Ok((signal, ase, nli))
        })
        .collect()
}

fn lane_tuple(
    engine: &Engine,
    omegas: &HashMap<String, Vec<f64>>,
    model: &PathModel,
    base: &[(f64, f64, f64)],
    channel: usize,
    lane: usize,
    (src, dst, path_id): (&str, &str, usize),
) -> Result<TupleResult> {
    let mut spans = Vec::with_capacity(model.spans());
    let mut mu_total = 0.0;
    for (seg, &(signal, ase, nli)) in model.segments.iter().zip(base) {
        let mu = match omegas.get(seg.name) {
            Some(o) => {
                let n_ac = seg.spec.layout().map_or(0, |l| l.cores()[lane].n_adjacent);
                mean_icxt(o[channel], n_ac, seg.state.length)
            }
            None => 0.0,
        };
        for _ in 0..seg.count {
            mu_total += mu;
            spans.push(SpanNoise {
                signal_w: signal,
                ase_w: ase,
                nli_w: nli,
                icxt_w: icxt_noise_power(mu, signal),
            });
        }
    }
    let penalties = Penalties {
        snr_trx_db: engine.qot.snr_trx_db,
        filter_db: engine.qot.filter_db_per_node * model.nodes as f64,
        aging_db: engine.qot.aging_db,
    };
    let qot = accumulate_gsnr(&spans, penalties)?;
    let mu_icxt_db = linear_to_db(mu_total);
    let level = select_gmi(&qot, mu_icxt_db, &engine.gmi, engine.qot.selection);
    let ch = &engine.band.channels()[channel];
    Ok(TupleResult {
        src: src.to_owned(),
        dst: dst.to_owned(),
        path_id,
        channel,
        band: ch.band,
        freq_hz: ch.freq_hz,
        lane,
        qot,
        mu_icxt_db,
        m: level.map(|l| l.m),
        bitrate_gbps: level.map_or(0.0, |l| l.net_bitrate_gbps),
    })
}

fn connection_paths(engine: &Engine, scenario: &Scenario, s: usize, d: usize) -> Result<Vec<Path>> {
    let paths = yen(&engine.topology, s, d, scenario.k_paths);
    if paths.is_empty() {
        return Err(Error::NoPath {
            src: engine.topology.node(s).id.clone(),
            dst: engine.topology.node(d).id.clone(),
        });
    }
    Ok(paths)
}

fn evaluate_connection(
    engine: &Engine,
    scenario: &Scenario,
    omegas: &HashMap<String, Vec<f64>>,
    launch: &[f64],
    (s, d): (usize, usize),
) -> Result<(ConnectionResult, Vec<TupleResult>)> {
    let topo = &engine.topology;
    let (src, dst) = (topo.node(s).id.as_str(), topo.node(d).id.as_str());
    let paths = connection_paths(engine, scenario, s, d)?;
    let mut tuples = Vec::with_capacity(paths.len() * engine.band.channel_count() * scenario.lanes);
    let mut summaries = Vec::with_capacity(paths.len());
    for (path_id, path) in paths.iter().enumerate() {
        let model = path_model(engine, scenario, path, launch)?;
        summaries.push(PathSummary {
            path_id,
            nodes: path.node_ids(topo).into_iter().map(str::to_owned).collect(),
            length_km: path.length_km,
            spans: model.spans(),
        });
        for channel in 0..engine.band.channel_count() {
            let base = channel_noise(engine, &model, channel)?;
            for lane in 0..scenario.lanes {
                tuples.push(lane_tuple(
                    engine,
                    omegas,
                    &model,
                    &base,
                    channel,
                    lane,
                    (src, dst, path_id),
                )?);
            }
        }
    }
    let cpct_gbps = tuples.iter().map(|t| t.bitrate_gbps).sum();
    Ok((
        ConnectionResult {
            src: src.to_owned(),
            dst: dst.to_owned(),
            paths: summaries,
            cpct_gbps,
        },
        tuples,
    ))
}

/// Evaluate every tuple of every connection and aggregate throughput.
pub fn evaluate_scenario(engine: &Engine, scenario: &Scenario) -> Result<ScenarioResult> {
    engine.validate(scenario)?;
    let connections = engine.connection_indices()?;
    let omegas = engine.omega_table(scenario)?;
    let launch = engine.qot.launch.powers_w(&engine.band);
    let per_connection = connections
        .par_iter()
        .map(|&c| evaluate_connection(engine, scenario, &omegas, &launch, c))
        .collect::<Result<Vec<_>>>()?;

    let mut result = ScenarioResult {
        scenario: scenario.clone(),
        connections: Vec::with_capacity(per_connection.len()),
        tuples: Vec::new(),
        total_gbps: 0.0,
        per_band_gbps: engine.band.bands().iter().map(|b| (b.name, 0.0)).collect(),
        per_lane_gbps: vec![0.0; scenario.lanes],
        longest_path_km: 0.0,
    };
    for (conn, tuples) in per_connection {
        result.total_gbps += conn.cpct_gbps;
        for p in &conn.paths {
            result.longest_path_km = result.longest_path_km.max(p.length_km);
        }
        for t in &tuples {
            *result.per_band_gbps.entry(t.band).or_insert(0.0) += t.bitrate_gbps;
            result.per_lane_gbps[t.lane] += t.bitrate_gbps;
        }
        result.connections.push(conn);
        result.tuples.extend(tuples);
    }
    Ok(result)
}

/// Recompute a single tuple from scratch.
pub fn evaluate_tuple(
    engine: &Engine,
    scenario: &Scenario,
    src: &str,
    dst: &str,
    path_id: usize,
    channel: usize,
    lane: usize,
) -> Result<TupleResult> {
    engine.validate(scenario)?;
    if channel >= engine.band.channel_count() {
        return Err(Error::invalid(format!(
            "channel {channel} not in band plan"
        )));
    }
    if lane >= scenario.lanes {
        return Err(Error::invalid(format!("lane {lane} not in scenario")));
    }
    let (s, d) = (engine.core_index(src)?, engine.core_index(dst)?);
    let paths = connection_paths(engine, scenario, s, d)?;
    let path = paths.get(path_id).ok_or_else(|| {
        Error::invalid(format!(
            "path {path_id} not among the {} found",
            paths.len()
        ))
    })?;
    let omegas = engine.omega_table(scenario)?;
    let launch = engine.qot.launch.powers_w(&engine.band);
    let model = path_model(engine, scenario, path, &launch)?;
    let base = channel_noise(engine, &model, channel)?;
    lane_tuple(
        engine,
        &omegas,
        &model,
        &base,
        channel,
        lane,
        (src, dst, path_id),
    )
}
