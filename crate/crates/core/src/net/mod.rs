//! Network layer: topologies, k-shortest paths and scenario evaluation.

mod paths;
mod scenario;
mod sweep;
mod topology;

pub use paths::{k_shortest_paths, Path};
pub use scenario::{
    evaluate_scenario, evaluate_tuple, ConnectionResult, Engine, Mode, PathSummary, QotSettings,
    Scenario, ScenarioResult, TupleResult,
};
pub use sweep::{sweep_fiber_response, SweepRow};
pub use topology::{parse_connections, Link, Node, Topology, TopologyError, TopologyStats};
