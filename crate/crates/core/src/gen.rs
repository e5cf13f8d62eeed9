//! Seeded instance generators.
//!
//! Output is a pure function of the parameters. The PRNG is splitmix64
//! and the draw order is part of the contract:
//!
//! 1. one draw per inserted node (choosing a face of the growing
//!    triangulation), nodes 4 through n;
//! 2. one draw per deleted edge (choosing among the currently deletable
//!    edges, sorted), until the density target is met;
//! 3. one draw per crossing (choosing among the currently eligible faces,
//!    in embedding order);
//! 4. one draw per edge of the finished graph (weights, edges sorted).
//!
//! The planar base is a sphere triangulation grown by placing each new
//! node inside a face and joining it to the three corners, thinned by
//! deleting non-bridge edges. Crossings are made by adding the two
//! "diagonals" of a face with at least four distinct boundary nodes; the
//! diagonals cross each other once, inside that face, and nothing else,
//! so the crossing list is realizable by construction. A face that is not
//! a triangle only appears where an edge was deleted, so a graph thinned
//! by d deletions hosts at most d crossings; in particular m stays within
//! 4n - 8 and k within 2n - 4, the counting bounds every drawing with one
//! crossing per edge satisfies.

use std::collections::BTreeSet;

use crate::graph::{Edge, NodeId, WeightedGraph};
use crate::model::{Crossing, CrossingSet, OnePlanarInstance};
use crate::planar::planar_embedding;
use crate::rng::SplitMix64;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub nodes: u32,
    pub crossings: usize,
    pub weight_lo: i64,
    pub weight_hi: i64,
    /// Fraction of the triangulation's 3n - 6 edges to keep, clamped so
    /// the graph stays connected. 1.0 keeps the full triangulation.
    pub density: f64,
    pub seed: u64,
}

impl GenParams {
    fn check(&self) -> Result<()> {
        if self.nodes < 3 {
            return Err(Error::Generator("need at least 3 nodes".into()));
        }
        if self.weight_lo > self.weight_hi {
            return Err(Error::Generator(format!(
                "weight range {}:{} is empty",
                self.weight_lo, self.weight_hi
            )));
        }
        if !self.density.is_finite() {
            return Err(Error::Generator("density must be finite".into()));
        }
        Ok(())
    }
}

/// Random connected planar graph with an empty crossing list.
pub fn gen_planar(params: &GenParams) -> Result<OnePlanarInstance> {
    let planar = GenParams {
        crossings: 0,
        ..*params
    };
    gen_one_planar(&planar)
}

/// Random instance with exactly `params.crossings` crossings, or an error
/// when the thinned graph has too few faces that can host one.
pub fn gen_one_planar(params: &GenParams) -> Result<OnePlanarInstance> {
    params.check()?;
    let n = params.nodes;
    let mut rng = SplitMix64::new(params.seed);

    // Phase 1: triangulation of the sphere. Both orientations of the seed
    // triangle are faces; inserting into either works the same way.
    let mut faces: Vec<[u32; 3]> = vec![[1, 2, 3], [1, 3, 2]];
    let mut edges: BTreeSet<Edge> = [(1, 2), (1, 3), (2, 3)]
        .into_iter()
        .map(|(u, v)| Edge::new(NodeId(u), NodeId(v)))
        .collect();
    for v in 4..=n {
        let fi = rng.below(faces.len());
        let [a, b, c] = faces[fi];
        faces[fi] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
        for u in [a, b, c] {
            edges.insert(Edge::new(NodeId(u), NodeId(v)));
        }
    }

    // Phase 2: thin to the density target, never disconnecting.
    let full = edges.len();
    let target = (params.density * full as f64).round() as i64;
    let target = target.clamp(n as i64 - 1, full as i64) as usize;
    while edges.len() > target {
        let graph = unit_graph(&edges);
        let bridges: BTreeSet<Edge> = graph
            .blocks()
            .blocks
            .iter()
            .filter(|b| b.edge_count() == 1)
            .map(|b| b.edges().next().unwrap().0)
            .collect();
        let deletable: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|e| !bridges.contains(e))
            .collect();
        debug_assert!(!deletable.is_empty(), "a graph above tree size has a cycle");
        let pick = deletable[rng.below(deletable.len())];
        edges.remove(&pick);
    }

    // Phase 3: crossings. Work in a fixed embedding of the thinned graph;
    // a face is eligible while it has four distinct boundary nodes and
    // neither diagonal exists yet. Placing a crossing consumes its face
    // and may disqualify others that wanted the same diagonal.
    let mut crossings: Vec<Crossing> = Vec::new();
    if params.crossings > 0 {
        let emb = planar_embedding(&unit_graph(&edges))
            .expect("subgraphs of a planar triangulation are planar");
        let mut open: Vec<Vec<NodeId>> = emb
            .faces()
            .iter()
            .map(|walk| walk.iter().map(|&(from, _)| from).collect())
            .collect();
        for placed in 0..params.crossings {
            let eligible: Vec<usize> = (0..open.len())
                .filter(|&i| diagonals(&open[i], &edges).is_some())
                .collect();
            if eligible.is_empty() {
                return Err(Error::Generator(format!(
                    "placed {placed} of {} crossings: no face can host another",
                    params.crossings
                )));
            }
            let fi = eligible[rng.below(eligible.len())];
            let (d1, d2) = diagonals(&open[fi], &edges).unwrap();
            edges.insert(d1);
            edges.insert(d2);
            crossings.push(Crossing::new(d1, d2));
            open.swap_remove(fi);
        }
    }

    // Phase 4: weights.
    let mut graph = WeightedGraph::new();
    for &e in &edges {
        let (u, v) = e.endpoints();
        let w = rng.range_i64(params.weight_lo, params.weight_hi);
        graph.add_edge(u, v, w)?;
    }
    Ok(OnePlanarInstance {
        graph,
        crossings: CrossingSet::new(crossings),
    })
}

fn unit_graph(edges: &BTreeSet<Edge>) -> WeightedGraph {
    let mut g = WeightedGraph::new();
    for &e in edges {
        let (u, v) = e.endpoints();
        g.add_edge(u, v, 1).unwrap();
    }
    g
}

/// The crossing pair a face can host: chords between the first four
/// distinct nodes a, b, c, d along the walk, in walk order, connecting
/// a-c and b-d. `None` if the walk has fewer than four distinct nodes or
/// either chord is already an edge.
fn diagonals(walk: &[NodeId], edges: &BTreeSet<Edge>) -> Option<(Edge, Edge)> {
    let mut picked: Vec<NodeId> = Vec::with_capacity(4);
    for &v in walk {
        if !picked.contains(&v) {
            picked.push(v);
            if picked.len() == 4 {
                break;
            }
        }
    }
    let [a, b, c, d] = picked[..] else {
        return None;
    };
    let d1 = Edge::new(a, c);
    let d2 = Edge::new(b, d);
    if edges.contains(&d1) || edges.contains(&d2) {
        return None;
    }
    Some((d1, d2))
}
