//! Yen's k-shortest loopless paths with a deterministic tie-break.
//!
//! Paths are ordered by total length, then by their node-id sequence.
//! Lengths within a relative 1e-9 count as equal.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use super::Topology;
use crate::error::{Error, Result};

const LENGTH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    /// Node indices, source first.
    pub nodes: Vec<usize>,
    /// Link indices, `nodes.len() - 1` of them.
    pub links: Vec<usize>,
    pub length_km: f64,
}

impl Path {
    fn from_nodes(topo: &Topology, nodes: Vec<usize>) -> Self {
        let mut links = Vec::with_capacity(nodes.len().saturating_sub(1));
        let mut length_km = 0.0;
        for w in nodes.windows(2) {
            let &(_, l) = topo
                .neighbours(w[0])
                .iter()
                .find(|(v, _)| *v == w[1])
                .expect("consecutive path nodes are adjacent");
            length_km += topo.link(l).length_km;
            links.push(l);
        }
        Self {
            nodes,
            links,
            length_km,
        }
    }

    pub fn hops(&self) -> usize {
        self.links.len()
    }

    pub fn node_ids<'t>(&self, topo: &'t Topology) -> Vec<&'t str> {
        self.nodes
            .iter()
            .map(|&i| topo.node(i).id.as_str())
            .collect()
    }
}

fn lengths_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= LENGTH_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Total order used for ranking paths.
pub(crate) fn compare_paths(a: &Path, b: &Path) -> Ordering {
    if lengths_equal(a.length_km, b.length_km) {
        a.nodes.cmp(&b.nodes)
    } else {
        a.length_km.total_cmp(&b.length_km)
    }
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographically smallest shortest path from `src` to `dst` avoiding
/// the given nodes and links.
fn shortest(
    topo: &Topology,
    src: usize,
    dst: usize,
    blocked_nodes: &[bool],
    blocked_links: &HashSet<usize>,
) -> Option<Vec<usize>> {
    let n = topo.nodes().len();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    dist[dst] = 0.0;
    heap.push(Entry(0.0, dst));
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, l) in topo.neighbours(u) {
            if blocked_nodes[v] || blocked_links.contains(&l) {
                continue;
            }
            let nd = d + topo.link(l).length_km;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Entry(nd, v));
            }
        }
    }
    if !dist[src].is_finite() {
        return None;
    }
    // Walk forward, always taking the smallest neighbour on some shortest
    // route; sorted adjacency makes the first match the smallest.
    let mut path = vec![src];
    let mut u = src;
    while u != dst {
        let next = topo.neighbours(u).iter().find(|&&(v, l)| {
            !blocked_nodes[v]
                && !blocked_links.contains(&l)
                && dist[v].is_finite()
                && dist[v] < dist[u]
                && lengths_equal(dist[v] + topo.link(l).length_km, dist[u])
        })?;
        u = next.0;
        path.push(u);
    }
    Some(path)
}

/// Up to `k` loopless paths between two nodes, ranked shortest first.
pub fn k_shortest_paths(topo: &Topology, src: &str, dst: &str, k: usize) -> Result<Vec<Path>> {
    let lookup = |id: &str| {
        topo.node_index(id)
            .ok_or_else(|| Error::invalid(format!("unknown node `{id}`")))
    };
    let (s, t) = (lookup(src)?, lookup(dst)?);
    if s == t {
        return Err(Error::invalid(format!(
            "source and destination are both `{src}`"
        )));
    }
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let paths = yen(topo, s, t, k);
    if paths.is_empty() {
        return Err(Error::NoPath {
            src: src.to_owned(),
            dst: dst.to_owned(),
        });
    }
    Ok(paths)
}

pub(crate) fn yen(topo: &Topology, s: usize, t: usize, k: usize) -> Vec<Path> {
    let n = topo.nodes().len();
    let none = vec![false; n];
    let Some(first) = shortest(topo, s, t, &none, &HashSet::new()) else {
        return Vec::new();
    };
    let mut accepted = vec![Path::from_nodes(topo, first)];
    let mut candidates: Vec<Path> = Vec::new();
    while accepted.len() < k {
        let prev = accepted.last().expect("non-empty").clone();
        for i in 0..prev.nodes.len() - 1 {
            let root = &prev.nodes[..=i];
            let mut blocked_links = HashSet::new();
            for p in &accepted {
                if p.nodes.len() > i + 1 && p.nodes[..=i] == *root {
                    blocked_links.insert(p.links[i]);
                }
            }
            let mut blocked_nodes = vec![false; n];
            for &r in &root[..i] {
                blocked_nodes[r] = true;
            }
            let Some(spur) = shortest(topo, root[i], t, &blocked_nodes, &blocked_links) else {
                continue;
            };
            let mut nodes = root[..i].to_vec();
            nodes.extend(spur);
            if accepted.iter().chain(&candidates).any(|p| p.nodes == nodes) {
                continue;
            }
            candidates.push(Path::from_nodes(topo, nodes));
        }
        let Some(best) =
            (0..candidates.len()).min_by(|&a, &b| compare_paths(&candidates[a], &candidates[b]))
        else {
            break;
        };
        accepted.push(candidates.swap_remove(best));
    }
    accepted
}
