//! Topology files.
//!
//! Line-oriented records, `#` starts a comment:
//!
//! ```text
//! node <id> [core]
//! link <a> <b> <length_km> <fiber>
//! ```
//!
//! Only `core` nodes add or drop traffic; the rest are pass-through
//! cross-connects.

use std::collections::{HashMap, HashSet, VecDeque};
use std::path::Path as FsPath;

use thiserror::Error;

use crate::fiber::FiberLibrary;

#[derive(Debug, Error, PartialEq)]
pub enum TopologyError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: link endpoint `{node}` is not a declared node")]
    UnknownNode { line: usize, node: String },
    #[error("line {line}: node `{node}` declared twice")]
    DuplicateNode { line: usize, node: String },
    #[error("line {line}: duplicate link between `{a}` and `{b}`")]
    DuplicateLink { line: usize, a: String, b: String },
    #[error("topology is not connected: `{0}` is unreachable")]
    Disconnected(String),
    #[error("topology has no nodes")]
    Empty,
    #[error("link {a}-{b} references unknown fiber `{fiber}`")]
    UnknownFiber { a: String, b: String, fiber: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: String,
    pub core: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub a: usize,
    pub b: usize,
    pub length_km: f64,
    pub fiber: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopologyStats {
    pub nodes: usize,
    pub links: usize,
    pub core_nodes: usize,
    pub average_degree: f64,
    pub average_link_km: f64,
}

/// Undirected, connected graph. Node indices follow ascending id order, so
/// comparing index sequences compares id sequences lexicographically.
#[derive(Debug, Clone)]
pub struct Topology {
    nodes: Vec<Node>,
    links: Vec<Link>,
    adjacency: Vec<Vec<(usize, usize)>>,
    index: HashMap<String, usize>,
}

impl Topology {
    pub fn from_parts<S: AsRef<str>>(
        nodes: &[(S, bool)],
        links: &[(S, S, f64, S)],
    ) -> Result<Self, TopologyError> {
        let mut text = String::new();
        for (id, core) in nodes {
            text.push_str(&format!(
                "node {}{}\n",
                id.as_ref(),
                if *core { " core" } else { "" }
            ));
        }
        for (a, b, km, fiber) in links {
            text.push_str(&format!(
                "link {} {} {km} {}\n",
                a.as_ref(),
                b.as_ref(),
                fiber.as_ref()
            ));
        }
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, TopologyError> {
        let mut raw_nodes: Vec<(String, bool)> = Vec::new();
        let mut seen = HashSet::new();
        let mut raw_links: Vec<(usize, String, String, f64, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let parse_err = |message: String| TopologyError::Parse { line, message };
            match fields[0] {
                "node" => {
                    let (id, core) = match fields.as_slice() {
                        [_, id] => (*id, false),
                        [_, id, "core"] => (*id, true),
                        [_, _, other] => {
                            return Err(parse_err(format!("unknown node flag `{other}`")))
                        }
                        _ => return Err(parse_err("expected `node <id> [core]`".into())),
                    };
                    if !seen.insert(id.to_owned()) {
                        return Err(TopologyError::DuplicateNode {
                            line,
                            node: id.to_owned(),
                        });
                    }
                    raw_nodes.push((id.to_owned(), core));
                }
                "link" => {
                    let [_, a, b, km, fiber] = fields.as_slice() else {
                        return Err(parse_err(
                            "expected `link <a> <b> <length_km> <fiber>`".into(),
                        ));
                    };
                    let km: f64 = km
                        .parse()
                        .map_err(|_| parse_err(format!("length `{km}` is not a number")))?;
                    if !(km > 0.0) || !km.is_finite() {
                        return Err(parse_err(format!("length {km} km must be positive")));
                    }
                    if a == b {
                        return Err(parse_err(format!("self-loop at `{a}`")));
                    }
                    raw_links.push((line, a.to_string(), b.to_string(), km, fiber.to_string()));
                }
                other => return Err(parse_err(format!("unknown record `{other}`"))),
            }
        }
        if raw_nodes.is_empty() {
            return Err(TopologyError::Empty);
        }
        raw_nodes.sort_by(|x, y| x.0.cmp(&y.0));
        let nodes: Vec<Node> = raw_nodes
            .into_iter()
            .map(|(id, core)| Node { id, core })
            .collect();
        let index: HashMap<String, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.clone(), i))
            .collect();

        let mut links = Vec::with_capacity(raw_links.len());
        let mut pairs = HashSet::new();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (line, a, b, km, fiber) in raw_links {
            let lookup = |id: &str| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| TopologyError::UnknownNode {
                        line,
                        node: id.to_owned(),
                    })
            };
            let (ia, ib) = (lookup(&a)?, lookup(&b)?);
            if !pairs.insert((ia.min(ib), ia.max(ib))) {
                return Err(TopologyError::DuplicateLink { line, a, b });
            }
            let li = links.len();
            adjacency[ia].push((ib, li));
            adjacency[ib].push((ia, li));
            links.push(Link {
                a: ia,
                b: ib,
                length_km: km,
                fiber,
            });
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let topo = Self {
            nodes,
            links,
            adjacency,
            index,
        };
        topo.check_connected()?;
        Ok(topo)
    }

    /// The shipped synthetic 60-node sample.
    pub fn usb60_like() -> Self {
        Self::parse(include_str!("../../../../data/topologies/usb60_like.topo"))
            .expect("shipped topology is valid")
    }

    pub fn load(path: &FsPath) -> crate::Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| crate::Error::File {
            path: path.to_owned(),
            message: e.to_string(),
        })?;
        Self::parse(&text).map_err(|e| crate::Error::File {
            path: path.to_owned(),
            message: e.to_string(),
        })
    }

    fn check_connected(&self) -> Result<(), TopologyError> {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(i) => Err(TopologyError::Disconnected(self.nodes[i].id.clone())),
            None => Ok(()),
        }
    }

    /// Every link must name a fiber present in `fibers`.
    pub fn check_fibers(&self, fibers: &FiberLibrary) -> Result<(), TopologyError> {
        for l in &self.links {
            if !fibers.contains(&l.fiber) {
                return Err(TopologyError::UnknownFiber {
                    a: self.nodes[l.a].id.clone(),
                    b: self.nodes[l.b].id.clone(),
                    fiber: l.fiber.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn link(&self, i: usize) -> &Link {
        &self.links[i]
    }

    /// Sorted `(neighbour, link)` pairs of node `i`.
    pub fn neighbours(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn core_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].core)
            .collect()
    }

    /// Every ordered pair of distinct core nodes.
    pub fn core_connections(&self) -> Vec<(usize, usize)> {
        let cores = self.core_nodes();
        let mut out = Vec::with_capacity(cores.len() * cores.len().saturating_sub(1));
        for &s in &cores {
            for &d in &cores {
                if s != d {
                    out.push((s, d));
                }
            }
        }
        out
    }

    pub fn stats(&self) -> TopologyStats {
        let n = self.nodes.len();
        let m = self.links.len();
        TopologyStats {
            nodes: n,
            links: m,
            core_nodes: self.nodes.iter().filter(|x| x.core).count(),
            average_degree: 2.0 * m as f64 / n as f64,
            average_link_km: if m == 0 {
                0.0
            } else {
                self.links.iter().map(|l| l.length_km).sum::<f64>() / m as f64
            },
        }
    }

    /// Replace every link's fiber.
    pub fn with_fiber(&self, fiber: &str) -> Self {
        let mut t = self.clone();
        for l in &mut t.links {
            l.fiber = fiber.to_owned();
        }
        t
    }
}

/// Connection list override: one `src dst` pair per line.
pub fn parse_connections(text: &str) -> Result<Vec<(String, String)>, TopologyError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let f: Vec<&str> = content.split_whitespace().collect();
        let [s, d] = f.as_slice() else {
            return Err(TopologyError::Parse {
                line: i + 1,
                message: "expected `<src> <dst>`".into(),
            });
        };
        out.push((s.to_string(), d.to_string()));
    }
    Ok(out)
}
