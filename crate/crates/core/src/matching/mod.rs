//! Exact minimum-weight perfect matching, plus the shortest-path tables the
//! T-join reduction feeds into it.
//!
//! The matching backend is a blossom implementation in [`blossom`]; this
//! module exposes the minimization wrapper (negate weights, demand maximum
//! cardinality, reject incomplete matchings) and Dijkstra over dual graphs.

pub mod blossom;

use std::collections::BTreeMap;

use crate::planar::DualGraph;
use crate::{Error, Result};

/// A matching instance on nodes `0..node_count` with weighted edges.
/// Weights may be any integers; parallel entries for the same pair keep the
/// cheapest, which is the only one a minimum matching could use.
#[derive(Clone, Debug)]
pub struct MatchingProblem {
    pub node_count: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

/// A perfect matching: node-disjoint pairs covering all nodes, and the
/// total weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectMatching {
    pub pairs: Vec<(usize, usize)>,
    pub value: i64,
}

/// Minimum-weight perfect matching by maximum-weight matching on negated
/// weights, with maximum cardinality enforced. Exact for any integer
/// weights.
pub fn min_weight_perfect_matching(p: &MatchingProblem) -> Result<PerfectMatching> {
    if !p.node_count.is_multiple_of(2) {
        return Err(Error::NoPerfectMatching);
    }
    if p.node_count == 0 {
        return Ok(PerfectMatching {
            pairs: Vec::new(),
            value: 0,
        });
    }

    let mut cheapest: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &(i, j, w) in &p.edges {
        assert!(i != j, "self-loop in matching problem");
        assert!(
            i < p.node_count && j < p.node_count,
            "edge endpoint out of range"
        );
        let key = (i.min(j), i.max(j));
        match cheapest.get_mut(&key) {
            Some(old) => *old = (*old).min(w),
            None => {
                cheapest.insert(key, w);
            }
        }
    }
    let negated: Vec<(usize, usize, i128)> = cheapest
        .iter()
        .map(|(&(i, j), &w)| (i, j, -(w as i128)))
        .collect();

    let mate = blossom::max_weight_matching(p.node_count, &negated);
    let mut pairs = Vec::new();
    let mut total: i128 = 0;
    for v in 0..p.node_count {
        let m = mate[v];
        if m == blossom::NONE {
            return Err(Error::NoPerfectMatching);
        }
        if v < m {
            pairs.push((v, m));
            total += cheapest[&(v, m)] as i128;
        }
    }
    let value = i64::try_from(total).map_err(|_| Error::Overflow)?;
    Ok(PerfectMatching { pairs, value })
}

/// Single-source shortest paths with predecessor links. Distances are `2 *
/// slack`-free plain sums of the supplied nonnegative edge weights; nodes a
/// source cannot reach report `None`.
#[derive(Clone, Debug)]
pub struct PathTable {
    pub source: usize,
    dist: Vec<Option<i64>>,
    // Predecessor dual-edge index on a shortest path, per node.
    prev: Vec<Option<usize>>,
}

impl PathTable {
    pub fn distance_to(&self, t: usize) -> Option<i64> {
        self.dist[t]
    }

    /// Edge indices (into the host's edge list) of one shortest path from
    /// the source to `t`.
    pub fn path_to(&self, host: &DualGraph, t: usize) -> Option<Vec<usize>> {
        self.dist[t]?;
        let mut edges = Vec::new();
        let mut at = t;
        while at != self.source {
            let k = self.prev[at].expect("reachable non-source node has a predecessor");
            edges.push(k);
            at = host.edges[k].other_face(at);
        }
        Some(edges)
    }
}

/// Dijkstra from `source` over the dual graph, using `weights[k]` for dual
/// edge `k`. All weights must be nonnegative. Parallel edges are fine; the
/// cheaper one wins the relaxation.
pub fn shortest_paths_from(host: &DualGraph, source: usize, weights: &[i64]) -> PathTable {
    assert_eq!(weights.len(), host.edges.len());
    assert!(weights.iter().all(|&w| w >= 0), "negative path weight");

    let n = host.face_count;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, e) in host.edges.iter().enumerate() {
        let (a, b) = e.faces;
        adj[a].push((b, k));
        adj[b].push((a, k));
    }

    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut heap = std::collections::BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(std::cmp::Reverse((0i64, source)));
    while let Some(std::cmp::Reverse((d, v))) = heap.pop() {
        if dist[v] != Some(d) {
            continue;
        }
        for &(w, k) in &adj[v] {
            let nd = d + weights[k];
            if dist[w].is_none_or(|old| nd < old) {
                dist[w] = Some(nd);
                prev[w] = Some(k);
                heap.push(std::cmp::Reverse((nd, w)));
            }
        }
    }
    PathTable { source, dist, prev }
}
