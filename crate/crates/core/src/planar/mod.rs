//! Exact Max-Cut for planar graphs.
//!
//! The route is the classical planar-duality one. A set of edges is a cut
//! exactly when its image in the dual has even degree at every face. The
//! best cut therefore keeps as many positive edges as possible while
//! paying the smallest correction: with E+ the strictly positive edges and
//! T the faces meeting E+ an odd number of times, a minimum T-join J in
//! the dual (priced by absolute weight) makes E+ symmetric-difference J a
//! cut of value c(E+) - |c|(J), and no cut does better.
//!
//! Bridges and articulation nodes never carry the duality argument, so the
//! pipeline first splits the graph into biconnected blocks, solves each
//! block on its own, puts every positive bridge in the cut, and reconciles
//! the pieces by flipping whole blocks until shared nodes agree. Flipping
//! one block's bipartition keeps its cut value, so the composition stays
//! optimal.

pub mod dual;
pub mod embed;

pub use dual::{dual, join_weight, odd_set, t_join, DualEdge, DualGraph, TJoinProblem};
pub use embed::{planar_embedding, trace_faces, CombinatorialEmbedding, Dart};

use std::collections::{btree_map::Entry, BTreeMap, BTreeSet, VecDeque};
use std::time::Instant;

use crate::graph::{CutSide, Edge, NodeId, WeightedGraph};
use crate::solver::{CutSolution, SearchStats};
use crate::{Error, Result};

/// Maximum cut of a planar graph. The returned side never contains the
/// smallest node of any component, which pins down one representative of
/// each complement pair.
pub fn planar_max_cut(g: &WeightedGraph) -> Result<CutSolution> {
    let start = Instant::now();
    let decomposition = g.blocks();

    let mut value: i128 = 0;
    let mut block_sides: Vec<BTreeMap<NodeId, bool>> = Vec::new();
    for block in &decomposition.blocks {
        if block.edge_count() == 1 {
            let (e, w) = block.edges().next().unwrap();
            let (u, v) = e.endpoints();
            if w > 0 {
                value += i128::from(w);
                block_sides.push(BTreeMap::from([(u, false), (v, true)]));
            } else {
                block_sides.push(BTreeMap::from([(u, false), (v, false)]));
            }
        } else {
            let (flags, block_value) = block_max_cut(block)?;
            value += block_value;
            block_sides.push(flags);
        }
    }

    let mut node_blocks: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
    for (bi, flags) in block_sides.iter().enumerate() {
        for &v in flags.keys() {
            node_blocks.entry(v).or_default().push(bi);
        }
    }

    // Stitch each component's blocks together along its block-cut tree.
    // A block joins the assigned region through exactly one shared node,
    // so one flip bit per block suffices.
    let mut assigned: BTreeMap<NodeId, bool> = BTreeMap::new();
    let mut seen = vec![false; block_sides.len()];
    for comp in g.components() {
        let mut queue: VecDeque<(usize, bool)> = VecDeque::new();
        for &v in &comp {
            if let Some(list) = node_blocks.get(&v) {
                seen[list[0]] = true;
                queue.push_back((list[0], false));
                break;
            }
        }
        if queue.is_empty() {
            assigned.insert(comp[0], false);
        }
        while let Some((bi, flip)) = queue.pop_front() {
            for (&v, &side) in &block_sides[bi] {
                let s = side ^ flip;
                match assigned.entry(v) {
                    Entry::Vacant(slot) => {
                        slot.insert(s);
                    }
                    Entry::Occupied(slot) => debug_assert_eq!(*slot.get(), s),
                }
            }
            for &v in block_sides[bi].keys() {
                for &bj in &node_blocks[&v] {
                    if !seen[bj] {
                        seen[bj] = true;
                        queue.push_back((bj, assigned[&v] ^ block_sides[bj][&v]));
                    }
                }
            }
        }
        if assigned[&comp[0]] {
            for &v in &comp {
                let s = assigned.get_mut(&v).unwrap();
                *s = !*s;
            }
        }
    }

    let side: CutSide = assigned
        .iter()
        .filter(|&(_, &s)| s)
        .map(|(&v, _)| v)
        .collect();
    let value = i64::try_from(value).map_err(|_| Error::Overflow)?;
    debug_assert_eq!(g.cut_value(&side), Ok(value));

    let elapsed = start.elapsed();
    Ok(CutSolution {
        side,
        value,
        stats: SearchStats {
            leaves: 1,
            max_depth: 0,
            planar_solver_time: elapsed,
            total_time: elapsed,
        },
    })
}

/// Solve one bridgeless block. Returns its side flags and exact value.
fn block_max_cut(block: &WeightedGraph) -> Result<(BTreeMap<NodeId, bool>, i128)> {
    let emb = planar_embedding(block)?;
    let d = dual(&emb, block)?;

    let positive: BTreeSet<Edge> = block
        .edges()
        .filter(|&(_, w)| w > 0)
        .map(|(e, _)| e)
        .collect();
    let positive_total: i128 = block
        .edges()
        .filter(|&(_, w)| w > 0)
        .map(|(_, w)| i128::from(w))
        .sum();

    let terminals = odd_set(&d, &positive);
    let join = t_join(&TJoinProblem::new(&d, terminals))?;

    let mut cut_edges = positive;
    for &e in &join {
        if !cut_edges.remove(&e) {
            cut_edges.insert(e);
        }
    }
    let side = cut_edges_to_partition(block, &cut_edges)?;
    let value = positive_total - i128::from(join_weight(&d, &join));

    let mut flags: BTreeMap<NodeId, bool> = block.nodes().map(|v| (v, false)).collect();
    for &v in &side.members {
        flags.insert(v, true);
    }
    Ok((flags, value))
}

/// Turn a set of cut edges into the node bipartition inducing it. Walks
/// each component from its smallest node, which lands on the complement
/// side; crossing a cut edge flips sides. A parity conflict means the set
/// is not a cut.
pub fn cut_edges_to_partition(g: &WeightedGraph, cut_edges: &BTreeSet<Edge>) -> Result<CutSide> {
    for &e in cut_edges {
        if !g.has_edge(e) {
            return Err(Error::MissingEdge(e));
        }
    }
    let adj = g.adjacency();
    let mut flag: BTreeMap<NodeId, bool> = BTreeMap::new();
    for comp in g.components() {
        let root = comp[0];
        flag.insert(root, false);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let fv = flag[&v];
            for &w in &adj[&v] {
                let expected = fv ^ cut_edges.contains(&Edge::new(v, w));
                match flag.get(&w) {
                    None => {
                        flag.insert(w, expected);
                        queue.push_back(w);
                    }
                    Some(&fw) if fw != expected => return Err(Error::NotACut),
                    _ => {}
                }
            }
        }
    }
    Ok(flag
        .into_iter()
        .filter(|&(_, s)| s)
        .map(|(v, _)| v)
        .collect())
}
