//! Weighted undirected simple graphs and the structural operations the
//! solver is built from: cut evaluation, contraction, edge deletion, SPLIT,
//! and the block-cut decomposition.
//!
//! Everything here is a value type. Operations that change structure return
//! a new graph and leave the input untouched, so branch children never share
//! mutable state.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::{Error, Result};

/// Node identifier. Instance files use ids 1..=n; contraction mints fresh
/// ids above every id in the graph, so ids stay unique along a branch.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Unordered node pair stored with the smaller endpoint first. The derived
/// `Ord` is the canonical edge order used for crossing canonicalization,
/// serialization and every deterministic tie-break.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    u: NodeId,
    v: NodeId,
}

impl Edge {
    /// Canonical edge between two distinct nodes. Panics on a self-loop:
    /// loops are rejected at every input boundary before edges are built.
    pub fn new(a: NodeId, b: NodeId) -> Edge {
        assert!(a != b, "self-loop at node {a}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    /// Endpoints in canonical order: `.0 < .1`.
    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.u, self.v)
    }

    pub fn touches(&self, n: NodeId) -> bool {
        self.u == n || self.v == n
    }

    /// The endpoint that is not `n`. Panics if `n` is not an endpoint.
    pub fn other(&self, n: NodeId) -> NodeId {
        if self.u == n {
            self.v
        } else {
            assert!(self.v == n, "node {n} is not an endpoint of {self}");
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// One side `S` of a node bipartition. The complement is implicit; the
/// empty side is legal and evaluates to the value-0 cut.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CutSide {
    pub members: BTreeSet<NodeId>,
}

impl CutSide {
    pub fn new() -> CutSide {
        CutSide::default()
    }

    pub fn contains(&self, n: NodeId) -> bool {
        self.members.contains(&n)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl FromIterator<NodeId> for CutSide {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> CutSide {
        CutSide {
            members: iter.into_iter().collect(),
        }
    }
}

/// Trace of one contraction, enough to invert it. `weight_merges` lists
/// every neighbor of the merged pair with the weight it contributed from
/// each original endpoint (`None` when that edge did not exist), and
/// `dropped_weight` is the weight of the contracted edge itself, if any.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContractionRecord {
    pub merged_node: NodeId,
    pub originals: (NodeId, NodeId),
    pub weight_merges: Vec<(NodeId, Option<i64>, Option<i64>)>,
    pub dropped_weight: Option<i64>,
}

impl ContractionRecord {
    /// The parallel edge pairs that collapsed into a single edge: for each
    /// common neighbor `u` of the originals `(x, y)`, the pair
    /// `((u, x), (u, y))`. Crossing-set repair keys off these.
    pub fn merged_parallel_pairs(&self) -> Vec<(Edge, Edge)> {
        let (x, y) = self.originals;
        self.weight_merges
            .iter()
            .filter(|(_, wx, wy)| wx.is_some() && wy.is_some())
            .map(|&(u, _, _)| (Edge::new(u, x), Edge::new(u, y)))
            .collect()
    }
}

/// Undirected simple graph with signed integer edge weights.
///
/// Invariants: no self-loops, at most one edge per node pair, every edge
/// endpoint is a member of the node set. Nodes may be isolated. Storage is
/// ordered so that iteration, and everything derived from it, is
/// deterministic.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WeightedGraph {
    nodes: BTreeSet<NodeId>,
    edges: BTreeMap<Edge, i64>,
}

impl WeightedGraph {
    pub fn new() -> WeightedGraph {
        WeightedGraph::default()
    }

    /// Build from `(u, v, w)` triples. Parallel triples merge by summing
    /// their weights, the same rule contraction uses.
    pub fn from_edges<I: IntoIterator<Item = (u32, u32, i64)>>(iter: I) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::new();
        for (u, v, w) in iter {
            g.add_edge(NodeId(u), NodeId(v), w)?;
        }
        Ok(g)
    }

    pub fn add_node(&mut self, n: NodeId) {
        self.nodes.insert(n);
    }

    /// Insert an edge, adding both endpoints to the node set. If the edge
    /// already exists the weights are summed (checked).
    pub fn add_edge(&mut self, a: NodeId, b: NodeId, w: i64) -> Result<()> {
        let e = Edge::new(a, b);
        self.nodes.insert(a);
        self.nodes.insert(b);
        match self.edges.get_mut(&e) {
            Some(old) => *old = old.checked_add(w).ok_or(Error::Overflow)?,
            None => {
                self.edges.insert(e, w);
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_node(&self, n: NodeId) -> bool {
        self.nodes.contains(&n)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn weight(&self, e: Edge) -> Option<i64> {
        self.edges.get(&e).copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, i64)> + '_ {
        self.edges.iter().map(|(&e, &w)| (e, w))
    }

    pub fn max_node_id(&self) -> Option<NodeId> {
        self.nodes.iter().next_back().copied()
    }

    /// Sorted neighbor lists for every node, isolated nodes included.
    pub fn adjacency(&self) -> BTreeMap<NodeId, Vec<NodeId>> {
        let mut adj: BTreeMap<NodeId, Vec<NodeId>> =
            self.nodes.iter().map(|&n| (n, Vec::new())).collect();
        for &e in self.edges.keys() {
            let (u, v) = e.endpoints();
            adj.get_mut(&u).unwrap().push(v);
            adj.get_mut(&v).unwrap().push(u);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// Sum of `|w|` over all edges. Fits comfortably in `i128`; callers use
    /// it to decide whether plain `i64` sums are safe.
    pub fn total_abs_weight(&self) -> i128 {
        self.edges.values().map(|&w| (w as i128).abs()).sum()
    }

    /// Value of the cut induced by `s`: the weight sum over edges with
    /// exactly one endpoint in `s`.
    pub fn cut_value(&self, s: &CutSide) -> Result<i64> {
        for &n in &s.members {
            if !self.nodes.contains(&n) {
                return Err(Error::UnknownNode(n));
            }
        }
        let mut total: i128 = 0;
        for (&e, &w) in &self.edges {
            let (u, v) = e.endpoints();
            if s.contains(u) != s.contains(v) {
                total += w as i128;
            }
        }
        i64::try_from(total).map_err(|_| Error::Overflow)
    }

    /// Contract `x` and `y` into a fresh node (one above the current
    /// maximum id). Edges from a common neighbor merge by summing weights;
    /// the edge `(x, y)`, if present, disappears. `x` and `y` need not be
    /// adjacent.
    pub fn contract(&self, x: NodeId, y: NodeId) -> Result<(WeightedGraph, ContractionRecord)> {
        if x == y {
            return Err(Error::ContractSelf(x));
        }
        if !self.nodes.contains(&x) {
            return Err(Error::UnknownNode(x));
        }
        if !self.nodes.contains(&y) {
            return Err(Error::UnknownNode(y));
        }
        let merged = NodeId(self.max_node_id().expect("graph has nodes").0 + 1);

        let mut from_x: BTreeMap<NodeId, i64> = BTreeMap::new();
        let mut from_y: BTreeMap<NodeId, i64> = BTreeMap::new();
        let mut dropped_weight = None;
        let mut out = WeightedGraph::new();
        for (&e, &w) in &self.edges {
            let (u, v) = e.endpoints();
            match (e.touches(x), e.touches(y)) {
                (true, true) => dropped_weight = Some(w),
                (true, false) => {
                    from_x.insert(e.other(x), w);
                }
                (false, true) => {
                    from_y.insert(e.other(y), w);
                }
                (false, false) => out.add_edge(u, v, w)?,
            }
        }

        let mut weight_merges = Vec::new();
        let neighbors: BTreeSet<NodeId> = from_x.keys().chain(from_y.keys()).copied().collect();
        for u in neighbors {
            let wx = from_x.get(&u).copied();
            let wy = from_y.get(&u).copied();
            let w = match (wx, wy) {
                (Some(a), Some(b)) => a.checked_add(b).ok_or(Error::Overflow)?,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => unreachable!(),
            };
            out.add_edge(merged, u, w)?;
            weight_merges.push((u, wx, wy));
        }

        for &n in &self.nodes {
            if n != x && n != y {
                out.add_node(n);
            }
        }
        out.add_node(merged);

        let record = ContractionRecord {
            merged_node: merged,
            originals: (x, y),
            weight_merges,
            dropped_weight,
        };
        Ok((out, record))
    }

    /// Remove one edge; the node set is unchanged.
    pub fn delete_edge(&self, e: Edge) -> Result<WeightedGraph> {
        if !self.edges.contains_key(&e) {
            return Err(Error::MissingEdge(e));
        }
        let mut out = self.clone();
        out.edges.remove(&e);
        Ok(out)
    }

    /// Switch the graph at `v`: negate the weight of every edge incident to
    /// `v`, leaving structure untouched. Returns the switched graph and the
    /// offset `W`, the sum of the original weights at `v`.
    ///
    /// Switching relabels cuts rather than changing the problem: for every
    /// side `S`, `cut_value(S △ {v})` here equals the switched graph's
    /// `cut_value(S)` plus `W`. An edge at `v` is cut by `S △ {v}` exactly
    /// when `S` leaves it uncut, so its weight either moves out of the sum
    /// or enters it negated, and the two readings differ by the full
    /// incident weight. Every intermediate value stays within the graph's
    /// `total_abs_weight`, so switching never widens the overflow surface.
    pub fn switched_at(&self, v: NodeId) -> Result<(WeightedGraph, i64)> {
        if !self.nodes.contains(&v) {
            return Err(Error::UnknownNode(v));
        }
        let mut out = self.clone();
        let mut offset: i128 = 0;
        for (e, w) in out.edges.iter_mut() {
            if e.touches(v) {
                offset += *w as i128;
                *w = w.checked_neg().ok_or(Error::Overflow)?;
            }
        }
        let offset = i64::try_from(offset).map_err(|_| Error::Overflow)?;
        Ok((out, offset))
    }

    /// Connected components as sorted node lists, sorted by smallest member.
    /// Isolated nodes form singleton components.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.nodes {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Biconnected blocks, articulation nodes, and isolated nodes. Every
    /// edge lands in exactly one block; blocks overlap only at articulation
    /// nodes; a bridge is a 2-node block.
    pub fn blocks(&self) -> BlockDecomposition {
        let adj = self.adjacency();
        let mut disc: BTreeMap<NodeId, u32> = BTreeMap::new();
        let mut low: BTreeMap<NodeId, u32> = BTreeMap::new();
        let mut timer = 0u32;
        let mut edge_stack: Vec<Edge> = Vec::new();
        let mut blocks = Vec::new();
        let mut articulation = BTreeSet::new();
        let mut isolated = Vec::new();

        struct Frame {
            v: NodeId,
            parent: Option<NodeId>,
            next: usize,
        }

        for &root in &self.nodes {
            if disc.contains_key(&root) {
                continue;
            }
            if adj[&root].is_empty() {
                isolated.push(root);
                continue;
            }
            disc.insert(root, timer);
            low.insert(root, timer);
            timer += 1;
            let mut root_children = 0usize;
            let mut stack = vec![Frame {
                v: root,
                parent: None,
                next: 0,
            }];
            while let Some(frame) = stack.last_mut() {
                let v = frame.v;
                if frame.next < adj[&v].len() {
                    let w = adj[&v][frame.next];
                    frame.next += 1;
                    if frame.parent == Some(w) {
                        continue;
                    }
                    if let Some(&dw) = disc.get(&w) {
                        // Back edge to an ancestor. A visit in the other
                        // direction (dw > disc[v]) was already stacked when
                        // the descendant explored it.
                        if dw < disc[&v] {
                            edge_stack.push(Edge::new(v, w));
                            let lv = low.get_mut(&v).unwrap();
                            *lv = (*lv).min(dw);
                        }
                    } else {
                        disc.insert(w, timer);
                        low.insert(w, timer);
                        timer += 1;
                        edge_stack.push(Edge::new(v, w));
                        stack.push(Frame {
                            v: w,
                            parent: Some(v),
                            next: 0,
                        });
                    }
                } else {
                    let finished = stack.pop().unwrap();
                    if let Some(p) = finished.parent {
                        let lv = low[&v];
                        let lp = low.get_mut(&p).unwrap();
                        *lp = (*lp).min(lv);
                        if lv >= disc[&p] {
                            // The subtree under v cannot reach above p:
                            // the edges stacked since (p, v) form a block.
                            let tree_edge = Edge::new(p, v);
                            let mut block = WeightedGraph::new();
                            while let Some(e) = edge_stack.pop() {
                                block
                                    .add_edge(e.endpoints().0, e.endpoints().1, self.edges[&e])
                                    .expect("edge weights copied verbatim");
                                if e == tree_edge {
                                    break;
                                }
                            }
                            blocks.push(block);
                            if p == root {
                                root_children += 1;
                            } else {
                                articulation.insert(p);
                            }
                        }
                    }
                }
            }
            if root_children >= 2 {
                articulation.insert(root);
            }
        }
        BlockDecomposition {
            blocks,
            articulation,
            isolated,
        }
    }
}

/// Output of [`WeightedGraph::blocks`].
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub blocks: Vec<WeightedGraph>,
    pub articulation: BTreeSet<NodeId>,
    pub isolated: Vec<NodeId>,
}

/// Undo one contraction on a node side: if the merged node is in `s` it is
/// replaced by both originals, otherwise `s` passes through unchanged.
pub fn split(s: &CutSide, rec: &ContractionRecord) -> CutSide {
    if !s.contains(rec.merged_node) {
        return s.clone();
    }
    let mut members = s.members.clone();
    members.remove(&rec.merged_node);
    members.insert(rec.originals.0);
    members.insert(rec.originals.1);
    CutSide { members }
}
