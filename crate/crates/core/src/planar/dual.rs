//! Dual graphs and minimum T-joins.
//!
//! The dual has one node per face of an embedding and one edge per primal
//! edge, joining the faces on the primal edge's two sides. A bridge would
//! produce a self-loop (the same face on both sides), so duals are only
//! formed for bridgeless graphs; the cut pipeline removes bridges first.
//!
//! A T-join is an edge set whose odd-degree nodes are exactly the terminal
//! set T. A minimum-weight one under nonnegative weights is the symmetric
//! difference of shortest paths pairing up the terminals, with the pairing
//! chosen by a minimum-weight perfect matching on the terminal distances.

use std::collections::BTreeSet;

use crate::graph::{Edge, WeightedGraph};
use crate::matching::{min_weight_perfect_matching, shortest_paths_from, MatchingProblem};
use crate::{Error, Result};

use super::embed::CombinatorialEmbedding;

/// Dual edge: the two faces flanking one primal edge. Parallel dual edges
/// are kept apart by their distinct primal edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub faces: (usize, usize),
    pub primal: Edge,
    pub weight: i64,
}

impl DualEdge {
    pub fn other_face(&self, f: usize) -> usize {
        if f == self.faces.0 {
            self.faces.1
        } else {
            debug_assert_eq!(f, self.faces.1);
            self.faces.0
        }
    }
}

/// Multigraph on the faces of an embedding. Edges are sorted by primal
/// edge, so indices are stable across runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub face_count: usize,
    pub edges: Vec<DualEdge>,
}

/// Build the dual of an embedded graph. Weights are copied from the primal
/// edges. A bridge is reported as an error because its dual edge would be
/// a self-loop.
pub fn dual(emb: &CombinatorialEmbedding, g: &WeightedGraph) -> Result<DualGraph> {
    let mut face_of = std::collections::BTreeMap::new();
    for (fi, walk) in emb.faces().iter().enumerate() {
        for &d in walk {
            face_of.insert(d, fi);
        }
    }
    let mut edges = Vec::with_capacity(g.edge_count());
    for (e, w) in g.edges() {
        let (u, v) = e.endpoints();
        let fa = face_of[&(u, v)];
        let fb = face_of[&(v, u)];
        if fa == fb {
            return Err(Error::Bridge(e));
        }
        edges.push(DualEdge {
            faces: (fa, fb),
            primal: e,
            weight: w,
        });
    }
    Ok(DualGraph {
        face_count: emb.faces().len(),
        edges,
    })
}

/// Faces incident to an odd number of the marked primal edges.
pub fn odd_set(d: &DualGraph, marked: &BTreeSet<Edge>) -> BTreeSet<usize> {
    let mut degree = vec![0usize; d.face_count];
    for de in &d.edges {
        if marked.contains(&de.primal) {
            degree[de.faces.0] += 1;
            degree[de.faces.1] += 1;
        }
    }
    let odd: BTreeSet<usize> = (0..d.face_count).filter(|&f| degree[f] % 2 == 1).collect();
    debug_assert!(odd.len().is_multiple_of(2), "odd-degree nodes come in pairs");
    odd
}

/// A T-join instance: host graph with nonnegative edge weights and an even
/// terminal set.
#[derive(Clone, Debug)]
pub struct TJoinProblem {
    pub host: DualGraph,
    pub terminals: BTreeSet<usize>,
}

impl TJoinProblem {
    /// Take the host's weights by absolute value so the shortest-path
    /// reduction applies regardless of the original signs.
    pub fn new(host: &DualGraph, terminals: BTreeSet<usize>) -> Self {
        assert!(terminals.len().is_multiple_of(2), "terminal set must be even");
        assert!(terminals.iter().all(|&t| t < host.face_count));
        let mut host = host.clone();
        for e in &mut host.edges {
            e.weight = e.weight.abs();
        }
        TJoinProblem { host, terminals }
    }
}

/// Minimum-weight T-join, identified by the primal edges of the chosen
/// dual edges. The empty terminal set yields the empty join.
pub fn t_join(p: &TJoinProblem) -> Result<BTreeSet<Edge>> {
    let terminals: Vec<usize> = p.terminals.iter().copied().collect();
    if terminals.is_empty() {
        return Ok(BTreeSet::new());
    }
    let weights: Vec<i64> = p.host.edges.iter().map(|e| e.weight).collect();
    let tables: Vec<_> = terminals
        .iter()
        .map(|&t| shortest_paths_from(&p.host, t, &weights))
        .collect();

    let mut pair_edges = Vec::new();
    for (i, table) in tables.iter().enumerate() {
        for (j, &t) in terminals.iter().enumerate().skip(i + 1) {
            if let Some(dist) = table.distance_to(t) {
                pair_edges.push((i, j, dist));
            }
        }
    }
    let matching = min_weight_perfect_matching(&MatchingProblem {
        node_count: terminals.len(),
        edges: pair_edges,
    })?;

    let mut join: BTreeSet<Edge> = BTreeSet::new();
    for &(i, j) in &matching.pairs {
        let path = tables[i]
            .path_to(&p.host, terminals[j])
            .expect("matched terminals are connected");
        for k in path {
            let e = p.host.edges[k].primal;
            if !join.remove(&e) {
                join.insert(e);
            }
        }
    }
    Ok(join)
}

/// Total weight of a dual edge subset, identified by primal edges, summed
/// over `|weight|`. Used to price a join against the instance it solves.
pub fn join_weight(d: &DualGraph, join: &BTreeSet<Edge>) -> i64 {
    d.edges
        .iter()
        .filter(|de| join.contains(&de.primal))
        .map(|de| de.weight.abs())
        .sum()
}
