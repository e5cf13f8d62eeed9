//! Planarity testing and combinatorial embeddings.
//!
//! The embedder works block by block. Each 2-connected block is embedded by
//! iterative face splitting: start from any cycle, and while edges remain,
//! place a path of some unembedded bridge into a face whose boundary
//! contains all of the bridge's attachment nodes. A bridge with no such
//! face proves non-planarity; always choosing a bridge with the fewest
//! admissible faces keeps the greedy choice safe. Blocks are then glued at
//! articulation nodes by splicing their rotations, which corresponds to
//! nesting one block inside a face of the other and is always planar.
//!
//! An embedding is stored both ways: `rotation` gives each node's cyclic
//! neighbor order, and `faces` lists the orbits of the walk rule "after
//! dart (a, b) comes (b, c) where c follows a in b's rotation". The two
//! views determine each other; faces are traced from the rotation, so the
//! closure property holds by construction and tests re-derive it.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{Edge, NodeId, WeightedGraph};
use crate::{Error, Result};

/// Directed half of an edge: `(from, to)`.
pub type Dart = (NodeId, NodeId);

/// Rotation system plus its face walks. `outer` designates one walk per
/// edged component as that component's unbounded face; in a single plane
/// drawing all components share one outer face, which is what
/// [`CombinatorialEmbedding::face_count`] counts.
#[derive(Clone, Debug)]
pub struct CombinatorialEmbedding {
    rotation: BTreeMap<NodeId, Vec<NodeId>>,
    faces: Vec<Vec<Dart>>,
    outer: Vec<usize>,
}

impl CombinatorialEmbedding {
    /// Cyclic neighbor order at `v`.
    pub fn rotation(&self, v: NodeId) -> &[NodeId] {
        &self.rotation[&v]
    }

    pub fn rotation_map(&self) -> &BTreeMap<NodeId, Vec<NodeId>> {
        &self.rotation
    }

    /// All face walks. Every dart appears in exactly one walk; a bridge
    /// contributes both of its darts to the same walk.
    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    /// Indices of the walks designated as outer, one per edged component.
    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    /// Number of faces of a plane drawing in which all components share the
    /// outer face. Satisfies Euler's formula n - m + f = 1 + #components.
    pub fn face_count(&self) -> usize {
        self.faces.len() - self.outer.len() + 1
    }
}

/// Trace the face walks of a rotation system: repeatedly apply
/// "next((a, b)) = (b, successor of a at b)" until the walk closes.
pub fn trace_faces(rotation: &BTreeMap<NodeId, Vec<NodeId>>) -> Vec<Vec<Dart>> {
    let mut index: BTreeMap<NodeId, BTreeMap<NodeId, usize>> = BTreeMap::new();
    for (&v, order) in rotation {
        let mut at = BTreeMap::new();
        for (i, &w) in order.iter().enumerate() {
            let dup = at.insert(w, i);
            assert!(dup.is_none(), "rotation at {v} repeats neighbor {w}");
        }
        index.insert(v, at);
    }

    let mut faces = Vec::new();
    let mut seen: BTreeSet<Dart> = BTreeSet::new();
    for (&v, order) in rotation {
        for &w in order {
            let start = (v, w);
            if seen.contains(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut cur = start;
            loop {
                seen.insert(cur);
                walk.push(cur);
                let (a, b) = cur;
                let order_b = &rotation[&b];
                let i = index[&b][&a];
                cur = (b, order_b[(i + 1) % order_b.len()]);
                if cur == start {
                    break;
                }
            }
            faces.push(walk);
        }
    }
    faces
}

/// Embed a planar graph, or report [`Error::NonPlanar`]. Any simple graph
/// is accepted; disconnected and non-2-connected inputs are embedded block
/// by block.
pub fn planar_embedding(g: &WeightedGraph) -> Result<CombinatorialEmbedding> {
    let decomposition = g.blocks();
    let mut blocks = decomposition.blocks;
    blocks.sort_by_key(|b| b.edges().next().map(|(e, _)| e));

    let mut rotation: BTreeMap<NodeId, Vec<NodeId>> =
        g.nodes().map(|v| (v, Vec::new())).collect();
    for block in &blocks {
        let block_rotation = if block.edge_count() == 1 {
            let (e, _) = block.edges().next().unwrap();
            let (u, v) = e.endpoints();
            BTreeMap::from([(u, vec![v]), (v, vec![u])])
        } else {
            embed_block(block)?
        };
        for (v, mut order) in block_rotation {
            rotation.get_mut(&v).unwrap().append(&mut order);
        }
    }

    let faces = trace_faces(&rotation);

    // First face discovered per edged component; the choice of outer walk
    // is free, this one is deterministic.
    let mut comp_of: BTreeMap<NodeId, usize> = BTreeMap::new();
    for (ci, comp) in g.components().iter().enumerate() {
        for &v in comp {
            comp_of.insert(v, ci);
        }
    }
    let mut outer = Vec::new();
    let mut outer_comps = BTreeSet::new();
    for (fi, walk) in faces.iter().enumerate() {
        let ci = comp_of[&walk[0].0];
        if outer_comps.insert(ci) {
            outer.push(fi);
        }
    }

    Ok(CombinatorialEmbedding {
        rotation,
        faces,
        outer,
    })
}

/// One unembedded fragment relative to the embedded subgraph: either a
/// single chord between embedded nodes, or a connected component of
/// unembedded nodes together with its attachment edges.
struct Fragment {
    attachments: BTreeSet<NodeId>,
    // Nodes strictly inside the fragment; empty for a chord.
    interior: BTreeSet<NodeId>,
    chord: Option<Edge>,
}

/// Embed one 2-connected block with at least three nodes. Returns the
/// rotation system; faces are re-traced by the caller after gluing.
fn embed_block(block: &WeightedGraph) -> Result<BTreeMap<NodeId, Vec<NodeId>>> {
    let n = block.node_count();
    let m = block.edge_count();
    if n >= 3 && m > 3 * n - 6 {
        return Err(Error::NonPlanar);
    }
    let adj = block.adjacency();

    // Faces as simple node cycles. The embedded subgraph stays 2-connected
    // because every added path has two distinct endpoints, so every face
    // visits a node at most once and splitting positions are unique.
    let mut faces: Vec<Vec<NodeId>> = {
        let cycle = some_cycle(&adj);
        let reversed: Vec<NodeId> = cycle.iter().rev().copied().collect();
        vec![cycle, reversed]
    };

    let mut embedded_nodes: BTreeSet<NodeId> = faces[0].iter().copied().collect();
    let mut embedded_edges: BTreeSet<Edge> = BTreeSet::new();
    for i in 0..faces[0].len() {
        let e = Edge::new(faces[0][i], faces[0][(i + 1) % faces[0].len()]);
        embedded_edges.insert(e);
    }

    while embedded_edges.len() < m {
        let fragments = find_fragments(block, &adj, &embedded_nodes, &embedded_edges);
        debug_assert!(!fragments.is_empty());

        // Admissible faces contain all attachments on their boundary. Any
        // fragment with a unique admissible face is forced; if none is
        // forced the choice cannot matter, so take the fewest-choices
        // fragment either way, first one on ties.
        let mut chosen: Option<(usize, usize)> = None;
        let mut fewest = usize::MAX;
        for (bi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| {
                    let boundary: BTreeSet<NodeId> = f.iter().copied().collect();
                    frag.attachments.is_subset(&boundary)
                })
                .map(|(fi, _)| fi)
                .collect();
            if admissible.is_empty() {
                return Err(Error::NonPlanar);
            }
            if admissible.len() < fewest {
                fewest = admissible.len();
                chosen = Some((bi, admissible[0]));
            }
        }
        let (bi, fi) = chosen.unwrap();
        let frag = &fragments[bi];

        // A path through the fragment between two distinct attachments.
        let (u, v, interior) = fragment_path(&adj, frag);

        let face = &faces[fi];
        let iu = face.iter().position(|&x| x == u).unwrap();
        let iv = face.iter().position(|&x| x == v).unwrap();
        let mut f1 = vec![u];
        f1.extend(interior.iter().copied());
        f1.extend(cyclic_slice(face, iv, iu));
        let mut f2 = vec![v];
        f2.extend(interior.iter().rev().copied());
        f2.extend(cyclic_slice(face, iu, iv));

        faces[fi] = f1;
        faces.push(f2);

        let mut path = vec![u];
        path.extend(interior.iter().copied());
        path.push(v);
        for w in path.windows(2) {
            embedded_edges.insert(Edge::new(w[0], w[1]));
        }
        embedded_nodes.extend(interior.iter().copied());
    }

    Ok(rotation_from_face_cycles(&faces))
}

/// Any cycle of a 2-connected graph: DFS until a back edge appears, then
/// read the cycle off the DFS path.
fn some_cycle(adj: &BTreeMap<NodeId, Vec<NodeId>>) -> Vec<NodeId> {
    let start = *adj.keys().next().unwrap();
    let mut path: Vec<NodeId> = vec![start];
    let mut on_path: BTreeMap<NodeId, usize> = BTreeMap::from([(start, 0)]);
    let mut next_ix: Vec<usize> = vec![0];
    let mut visited: BTreeSet<NodeId> = BTreeSet::from([start]);

    loop {
        let v = *path.last().unwrap();
        let i = *next_ix.last().unwrap();
        let neighbors = &adj[&v];
        if i >= neighbors.len() {
            let popped = path.pop().unwrap();
            on_path.remove(&popped);
            next_ix.pop();
            assert!(!path.is_empty(), "2-connected block must contain a cycle");
            continue;
        }
        *next_ix.last_mut().unwrap() += 1;
        let w = neighbors[i];
        if path.len() >= 2 && path[path.len() - 2] == w {
            continue;
        }
        if let Some(&pos) = on_path.get(&w) {
            return path[pos..].to_vec();
        }
        if visited.insert(w) {
            on_path.insert(w, path.len());
            path.push(w);
            next_ix.push(0);
        }
    }
}

fn find_fragments(
    block: &WeightedGraph,
    adj: &BTreeMap<NodeId, Vec<NodeId>>,
    embedded_nodes: &BTreeSet<NodeId>,
    embedded_edges: &BTreeSet<Edge>,
) -> Vec<Fragment> {
    let mut fragments = Vec::new();
    for (e, _) in block.edges() {
        let (a, b) = e.endpoints();
        if !embedded_edges.contains(&e)
            && embedded_nodes.contains(&a)
            && embedded_nodes.contains(&b)
        {
            fragments.push(Fragment {
                attachments: BTreeSet::from([a, b]),
                interior: BTreeSet::new(),
                chord: Some(e),
            });
        }
    }

    let mut grouped: BTreeSet<NodeId> = BTreeSet::new();
    for v in block.nodes() {
        if embedded_nodes.contains(&v) || grouped.contains(&v) {
            continue;
        }
        let mut interior = BTreeSet::from([v]);
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([v]);
        grouped.insert(v);
        while let Some(x) = queue.pop_front() {
            for &w in &adj[&x] {
                if embedded_nodes.contains(&w) {
                    attachments.insert(w);
                } else if grouped.insert(w) {
                    interior.insert(w);
                    queue.push_back(w);
                }
            }
        }
        fragments.push(Fragment {
            attachments,
            interior,
            chord: None,
        });
    }
    fragments
}

/// A simple path across a fragment joining two distinct attachments, with
/// its interior inside the fragment. For a chord the interior is empty.
fn fragment_path(
    adj: &BTreeMap<NodeId, Vec<NodeId>>,
    frag: &Fragment,
) -> (NodeId, NodeId, Vec<NodeId>) {
    if let Some(e) = frag.chord {
        let (u, v) = e.endpoints();
        return (u, v, Vec::new());
    }
    let u = *frag.attachments.iter().next().unwrap();
    let mut prev: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &c in &adj[&u] {
        if frag.interior.contains(&c) && !prev.contains_key(&c) {
            prev.insert(c, u);
            queue.push_back(c);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &w in &adj[&x] {
            if frag.interior.contains(&w) {
                if let Entry::Vacant(slot) = prev.entry(w) {
                    slot.insert(x);
                    queue.push_back(w);
                }
            } else if w != u {
                // Reached a second attachment; unwind the interior.
                let mut interior = vec![x];
                let mut at = x;
                while prev[&at] != u {
                    at = prev[&at];
                    interior.push(at);
                }
                interior.reverse();
                return (u, w, interior);
            }
        }
    }
    unreachable!("fragment of a 2-connected block reaches a second attachment");
}

/// Nodes of `face` starting at index `from`, walking cyclically, stopping
/// just before index `to`.
fn cyclic_slice(face: &[NodeId], from: usize, to: usize) -> Vec<NodeId> {
    let len = face.len();
    let mut out = Vec::new();
    let mut i = from;
    loop {
        out.push(face[i]);
        i = (i + 1) % len;
        if i == to {
            break;
        }
    }
    out
}

/// Recover the rotation system from face node-cycles: a walk visiting
/// `a, v, b` in order makes `b` the successor of `a` at `v`.
fn rotation_from_face_cycles(faces: &[Vec<NodeId>]) -> BTreeMap<NodeId, Vec<NodeId>> {
    let mut succ: BTreeMap<NodeId, BTreeMap<NodeId, NodeId>> = BTreeMap::new();
    for face in faces {
        let len = face.len();
        for i in 0..len {
            let a = face[i];
            let v = face[(i + 1) % len];
            let b = face[(i + 2) % len];
            let dup = succ.entry(v).or_default().insert(a, b);
            assert!(dup.is_none(), "dart visited by two faces");
        }
    }
    let mut rotation = BTreeMap::new();
    for (v, next) in succ {
        let first = *next.keys().next().unwrap();
        let mut order = vec![first];
        let mut cur = next[&first];
        while cur != first {
            order.push(cur);
            cur = next[&cur];
        }
        assert_eq!(order.len(), next.len(), "rotation at {v} is not one cycle");
        rotation.insert(v, order);
    }
    rotation
}
