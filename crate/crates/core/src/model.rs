//! Instances with crossing lists, and the three-way branching step.
//!
//! An instance pairs a weighted graph with a list of crossings, each
//! naming two edges that cross in some drawing where every edge is crossed
//! at most once. Realizability of the list is not checked here (that
//! problem is NP-hard); [`validate`] enforces the cheap necessary
//! conditions and the solver's planarity test catches lying lists later.
//!
//! Branching eliminates one crossing in each of three ways: merge the two
//! endpoints on one side of the crossing, merge the two on the other, or
//! delete one crossed edge. Every optimal cut is preserved by at least one
//! child, and each child's crossing list is strictly shorter.

use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{ContractionRecord, Edge, NodeId, WeightedGraph};
use crate::{Error, Result};

/// Two edges that cross. Stored with `first < second`, so equal crossings
/// compare equal no matter the construction order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Crossing {
    first: Edge,
    second: Edge,
}

/// The four endpoints of a crossing under the fixed naming rule: `v < y`
/// span the first edge, `w < z` span the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Roles {
    pub v: NodeId,
    pub y: NodeId,
    pub w: NodeId,
    pub z: NodeId,
}

impl Crossing {
    /// Panics if both edges are the same; an edge cannot cross itself.
    /// Edges sharing one endpoint are representable so that validation
    /// can report them.
    pub fn new(a: Edge, b: Edge) -> Crossing {
        assert_ne!(a, b, "a crossing needs two distinct edges");
        if a < b {
            Crossing { first: a, second: b }
        } else {
            Crossing { first: b, second: a }
        }
    }

    pub fn first(&self) -> Edge {
        self.first
    }

    pub fn second(&self) -> Edge {
        self.second
    }

    pub fn edges(&self) -> [Edge; 2] {
        [self.first, self.second]
    }

    pub fn endpoints(&self) -> [NodeId; 4] {
        let (v, y) = self.first.endpoints();
        let (w, z) = self.second.endpoints();
        [v, y, w, z]
    }

    pub fn involves(&self, node: NodeId) -> bool {
        self.first.touches(node) || self.second.touches(node)
    }

    pub fn roles(&self) -> Roles {
        let (v, y) = self.first.endpoints();
        let (w, z) = self.second.endpoints();
        Roles { v, y, w, z }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.first, self.second)
    }
}

/// List of crossings. Order is irrelevant to every consumer; selection is
/// by canonical order, not position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingSet {
    crossings: Vec<Crossing>,
}

impl CrossingSet {
    pub fn new(crossings: Vec<Crossing>) -> CrossingSet {
        CrossingSet { crossings }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Crossing> {
        self.crossings.iter()
    }

    pub fn contains(&self, x: &Crossing) -> bool {
        self.crossings.contains(x)
    }
}

impl FromIterator<Crossing> for CrossingSet {
    fn from_iter<I: IntoIterator<Item = Crossing>>(iter: I) -> Self {
        CrossingSet::new(iter.into_iter().collect())
    }
}

/// A weighted graph plus the crossing list of one of its drawings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePlanarInstance {
    pub graph: WeightedGraph,
    pub crossings: CrossingSet,
}

/// Conditions that make an instance unusable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationError {
    /// Crossing `index` references an edge absent from the graph.
    UnknownEdge { index: usize, edge: Edge },
    /// The two edges of crossing `index` share `node`.
    SharedEndpoint { index: usize, node: NodeId },
    /// `edge` appears in two crossings; each edge may be crossed once.
    EdgeCrossedTwice { edge: Edge, indices: (usize, usize) },
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::UnknownEdge { index, edge } => {
                write!(f, "crossing {index}: edge {edge} is not in the graph")
            }
            ValidationError::SharedEndpoint { index, node } => {
                write!(f, "crossing {index}: its edges share endpoint {node}")
            }
            ValidationError::EdgeCrossedTwice { edge, indices } => write!(
                f,
                "edge {edge} appears in crossings {} and {}",
                indices.0, indices.1
            ),
        }
    }
}

/// Violations of counting bounds that every crossing list of a real
/// drawing satisfies. A warning proves the list is not realizable but
/// does not stop the solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationWarning {
    /// More than 4n - 8 edges (n >= 3).
    TooManyEdges { m: usize, bound: usize },
    /// More than 2n - 4 crossings (n >= 3).
    TooManyCrossings { k: usize, bound: usize },
}

impl fmt::Display for ValidationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationWarning::TooManyEdges { m, bound } => write!(
                f,
                "{m} edges exceed the bound of {bound} for any drawing with one crossing per edge"
            ),
            ValidationWarning::TooManyCrossings { k, bound } => write!(
                f,
                "{k} crossings exceed the bound of {bound} for any drawing with one crossing per edge"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<ValidationError>,
    pub warnings: Vec<ValidationWarning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Check the crossing list against the graph. Self-loops and duplicate
/// edges cannot be represented by [`WeightedGraph`] at all; the text
/// format parser rejects them with line numbers before an instance
/// exists.
pub fn validate(inst: &OnePlanarInstance) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut used: BTreeMap<Edge, usize> = BTreeMap::new();

    for (i, x) in inst.crossings.iter().enumerate() {
        for e in x.edges() {
            if !inst.graph.has_edge(e) {
                report
                    .errors
                    .push(ValidationError::UnknownEdge { index: i, edge: e });
            }
            match used.get(&e) {
                Some(&j) => report.errors.push(ValidationError::EdgeCrossedTwice {
                    edge: e,
                    indices: (j, i),
                }),
                None => {
                    used.insert(e, i);
                }
            }
        }
        let (a1, b1) = x.first().endpoints();
        for node in [a1, b1] {
            if x.second().touches(node) {
                report
                    .errors
                    .push(ValidationError::SharedEndpoint { index: i, node });
            }
        }
    }

    let n = inst.graph.node_count();
    if n >= 3 {
        let m = inst.graph.edge_count();
        let k = inst.crossings.len();
        if m > 4 * n - 8 {
            report.warnings.push(ValidationWarning::TooManyEdges {
                m,
                bound: 4 * n - 8,
            });
        }
        if k > 2 * n - 4 {
            report.warnings.push(ValidationWarning::TooManyCrossings {
                k,
                bound: 2 * n - 4,
            });
        }
    }
    report
}

/// Rewrite a crossing list after `a` and `b` were contracted into
/// `merged`. Crossings touching both contracted nodes are dissolved;
/// elsewhere `a` and `b` become `merged`. When the contraction merged two
/// crossed parallel edges into one (reported in `merge_log` as original
/// edge pairs), only the crossing of the smaller original edge survives,
/// keeping each edge crossed at most once.
pub fn update(
    x: &CrossingSet,
    a: NodeId,
    b: NodeId,
    merged: NodeId,
    merge_log: &[(Edge, Edge)],
) -> CrossingSet {
    let mut drop = vec![false; x.len()];
    for (i, c) in x.iter().enumerate() {
        if c.involves(a) && c.involves(b) {
            drop[i] = true;
        }
    }

    let mut position: BTreeMap<Edge, usize> = BTreeMap::new();
    for (i, c) in x.iter().enumerate() {
        for e in c.edges() {
            position.insert(e, i);
        }
    }
    for &(ea, eb) in merge_log {
        if let (Some(&ia), Some(&ib)) = (position.get(&ea), position.get(&eb)) {
            if !drop[ia] && !drop[ib] {
                debug_assert_ne!(ia, ib, "one crossing cannot hold parallel edges");
                drop[if ea < eb { ib } else { ia }] = true;
            }
        }
    }

    let substitute = |v: NodeId| if v == a || v == b { merged } else { v };
    let rewrite = |e: Edge| {
        let (u, v) = e.endpoints();
        Edge::new(substitute(u), substitute(v))
    };
    x.iter()
        .zip(&drop)
        .filter(|&(_, &d)| !d)
        .map(|(c, _)| Crossing::new(rewrite(c.first()), rewrite(c.second())))
        .collect()
}

/// How a child instance was produced from its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchKind {
    ContractWy,
    ContractYz,
    DeleteWz,
}

#[derive(Clone, Debug)]
pub struct BranchTrace {
    pub kind: BranchKind,
    /// Present exactly for the contraction kinds.
    pub record: Option<ContractionRecord>,
}

/// The three children that eliminate crossing `x`: merge w with y, merge
/// y with z, or delete the edge wz. The roles come from [`Crossing::roles`].
/// Any maximum cut of the parent groups at least one of these pairs on a
/// common side, so the best child is as good as the parent optimum.
pub fn branch(
    inst: &OnePlanarInstance,
    x: &Crossing,
) -> Result<[(OnePlanarInstance, BranchTrace); 3]> {
    if !inst.crossings.contains(x) {
        return Err(Error::UnknownCrossing);
    }
    let Roles { v: _, y, w, z } = x.roles();

    let child_contract = |p: NodeId, q: NodeId, kind: BranchKind| -> Result<_> {
        let (graph, record) = inst.graph.contract(p, q)?;
        let crossings = update(
            &inst.crossings,
            p,
            q,
            record.merged_node,
            &record.merged_parallel_pairs(),
        );
        Ok((
            OnePlanarInstance { graph, crossings },
            BranchTrace {
                kind,
                record: Some(record),
            },
        ))
    };

    let wy = child_contract(w, y, BranchKind::ContractWy)?;
    let yz = child_contract(y, z, BranchKind::ContractYz)?;

    let graph = inst.graph.delete_edge(x.second())?;
    let crossings = inst.crossings.iter().filter(|&c| c != x).copied().collect();
    let del = (
        OnePlanarInstance { graph, crossings },
        BranchTrace {
            kind: BranchKind::DeleteWz,
            record: None,
        },
    );

    Ok([wy, yz, del])
}

/// The crossing with the smallest canonical edge pair. Independent of the
/// list order, so the whole branch tree is too.
pub fn select_crossing(inst: &OnePlanarInstance) -> Result<Crossing> {
    inst.crossings
        .iter()
        .min()
        .copied()
        .ok_or(Error::EmptyCrossingSet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn n(v: u32) -> NodeId {
        NodeId(v)
    }

    fn e(u: u32, v: u32) -> Edge {
        Edge::new(n(u), n(v))
    }

    fn x(a: (u32, u32), b: (u32, u32)) -> Crossing {
        Crossing::new(e(a.0, a.1), e(b.0, b.1))
    }

    fn complete(k: u32) -> WeightedGraph {
        let mut g = WeightedGraph::new();
        for u in 1..=k {
            for v in (u + 1)..=k {
                g.add_edge(n(u), n(v), 1).unwrap();
            }
        }
        g
    }

    #[test]
    fn crossing_is_canonical() {
        let a = x((2, 4), (1, 3));
        let b = x((1, 3), (2, 4));
        assert_eq!(a, b);
        assert_eq!(a.first(), e(1, 3));
        assert_eq!(a.second(), e(2, 4));
    }

    #[test]
    fn roles_follow_the_canonical_order() {
        let r = x((2, 4), (1, 3)).roles();
        assert_eq!((r.v, r.y), (n(1), n(3)));
        assert_eq!((r.w, r.z), (n(2), n(4)));
    }

    #[test]
    fn k5_with_one_crossing_is_valid() {
        let inst = OnePlanarInstance {
            graph: complete(5),
            crossings: [x((1, 3), (2, 4))].into_iter().collect(),
        };
        let report = validate(&inst);
        assert!(report.is_valid());
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn shared_endpoint_is_an_error() {
        let inst = OnePlanarInstance {
            graph: complete(4),
            crossings: [x((1, 2), (2, 3))].into_iter().collect(),
        };
        let report = validate(&inst);
        assert_eq!(
            report.errors,
            vec![ValidationError::SharedEndpoint {
                index: 0,
                node: n(2)
            }]
        );
    }

    #[test]
    fn unknown_edge_is_an_error() {
        let inst = OnePlanarInstance {
            graph: WeightedGraph::from_edges([(1, 2, 1), (3, 4, 1), (1, 3, 1)]).unwrap(),
            crossings: [x((1, 2), (3, 4)), x((1, 4), (2, 3))].into_iter().collect(),
        };
        let report = validate(&inst);
        assert_eq!(
            report.errors,
            vec![
                ValidationError::UnknownEdge {
                    index: 1,
                    edge: e(1, 4)
                },
                ValidationError::UnknownEdge {
                    index: 1,
                    edge: e(2, 3)
                },
            ]
        );
    }

    #[test]
    fn edge_in_two_crossings_is_an_error() {
        let inst = OnePlanarInstance {
            graph: complete(6),
            crossings: [x((1, 2), (3, 4)), x((1, 2), (5, 6))].into_iter().collect(),
        };
        let report = validate(&inst);
        assert_eq!(
            report.errors,
            vec![ValidationError::EdgeCrossedTwice {
                edge: e(1, 2),
                indices: (0, 1)
            }]
        );
    }

    #[test]
    fn bound_violations_warn_but_do_not_invalidate() {
        // K7 has 21 edges, above the 4n - 8 = 20 ceiling.
        let inst = OnePlanarInstance {
            graph: complete(7),
            crossings: CrossingSet::default(),
        };
        let report = validate(&inst);
        assert!(report.is_valid());
        assert_eq!(
            report.warnings,
            vec![ValidationWarning::TooManyEdges { m: 21, bound: 20 }]
        );
    }

    #[test]
    fn crossing_count_bound_warns() {
        // 13 crossings on 8 nodes exceed 2n - 4 = 12. Thirteen crossings
        // need 26 distinct edges, which already exceeds 4n - 8 = 24, so
        // the edge warning always accompanies this one.
        let pairs = [
            ((1, 2), (3, 4)),
            ((1, 3), (2, 4)),
            ((1, 4), (2, 3)),
            ((5, 6), (7, 8)),
            ((5, 7), (6, 8)),
            ((5, 8), (6, 7)),
            ((1, 5), (2, 6)),
            ((1, 6), (2, 5)),
            ((3, 7), (4, 8)),
            ((3, 8), (4, 7)),
            ((1, 7), (2, 8)),
            ((1, 8), (2, 7)),
            ((3, 5), (4, 6)),
        ];
        let inst = OnePlanarInstance {
            graph: complete(8),
            crossings: pairs.iter().map(|&(a, b)| x(a, b)).collect(),
        };
        let report = validate(&inst);
        assert!(report.is_valid());
        assert_eq!(
            report.warnings,
            vec![
                ValidationWarning::TooManyEdges { m: 28, bound: 24 },
                ValidationWarning::TooManyCrossings { k: 13, bound: 12 },
            ]
        );
    }

    #[test]
    fn update_dissolves_crossings_touching_both_nodes() {
        let xs: CrossingSet = [x((1, 2), (3, 4)), x((1, 5), (6, 7))].into_iter().collect();
        let out = update(&xs, n(2), n(3), n(8), &[]);
        assert_eq!(out, [x((1, 5), (6, 7))].into_iter().collect());
    }

    #[test]
    fn update_rewrites_surviving_endpoints() {
        let xs: CrossingSet = [x((1, 2), (3, 4))].into_iter().collect();
        let out = update(&xs, n(2), n(5), n(6), &[]);
        assert_eq!(out, [x((1, 6), (3, 4))].into_iter().collect());
    }

    #[test]
    fn update_keeps_the_smaller_original_edge_on_parallel_merge() {
        // Contracting 2 and 3 merges crossed edges (1,2) and (1,3); the
        // crossing of (1,2) wins and is rewritten.
        let xs: CrossingSet = [x((1, 2), (4, 5)), x((1, 3), (4, 6))].into_iter().collect();
        let out = update(&xs, n(2), n(3), n(7), &[(e(1, 2), e(1, 3))]);
        assert_eq!(out, [x((1, 7), (4, 5))].into_iter().collect());
    }

    #[test]
    fn update_never_leaves_an_edge_crossed_twice() {
        let xs: CrossingSet = [x((1, 2), (4, 5)), x((1, 3), (5, 6))].into_iter().collect();
        let out = update(&xs, n(2), n(3), n(7), &[(e(1, 2), e(1, 3))]);
        let mut seen = BTreeSet::new();
        for c in out.iter() {
            for edge in c.edges() {
                assert!(seen.insert(edge), "edge {edge} crossed twice");
            }
        }
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn update_is_idempotent_on_rewritten_sets() {
        let xs: CrossingSet = [x((1, 2), (4, 5)), x((2, 6), (3, 4)), x((1, 3), (5, 6))]
            .into_iter()
            .collect();
        let once = update(&xs, n(2), n(3), n(7), &[(e(1, 2), e(1, 3))]);
        let twice = update(&once, n(2), n(3), n(7), &[(e(1, 2), e(1, 3))]);
        assert_eq!(once, twice);
    }

    #[test]
    fn branch_on_the_k5_crossing() {
        let inst = OnePlanarInstance {
            graph: complete(5),
            crossings: [x((1, 3), (2, 4))].into_iter().collect(),
        };
        let sel = select_crossing(&inst).unwrap();
        let children = branch(&inst, &sel).unwrap();

        for (child, _) in &children {
            assert!(child.crossings.is_empty());
            assert!(validate(child).is_valid());
            assert!(crate::planar::planar_embedding(&child.graph).is_ok());
        }
        let [(wy, twy), (yz, tyz), (del, tdel)] = children;

        // w = 2 and y = 3 merge; the pair (1,2)+(1,3) doubles up.
        assert_eq!(twy.kind, BranchKind::ContractWy);
        assert_eq!(wy.graph.node_count(), 4);
        let rec = twy.record.unwrap();
        assert_eq!(rec.originals, (n(2), n(3)));
        assert_eq!(wy.graph.weight(e(1, rec.merged_node.0)), Some(2));

        assert_eq!(tyz.kind, BranchKind::ContractYz);
        assert_eq!(yz.graph.node_count(), 4);

        assert_eq!(tdel.kind, BranchKind::DeleteWz);
        assert!(tdel.record.is_none());
        assert_eq!(del.graph.edge_count(), 9);
        assert!(!del.graph.has_edge(e(2, 4)));
    }

    #[test]
    fn branch_children_lose_at_least_one_crossing() {
        let inst = OnePlanarInstance {
            graph: complete(6),
            crossings: [x((1, 5), (2, 4)), x((2, 6), (3, 5)), x((3, 4), (1, 6))]
                .into_iter()
                .collect(),
        };
        let sel = select_crossing(&inst).unwrap();
        for (child, _) in &branch(&inst, &sel).unwrap() {
            assert!(child.crossings.len() < inst.crossings.len());
            assert!(validate(child).is_valid());
        }
    }

    #[test]
    fn branch_rejects_foreign_crossings() {
        let inst = OnePlanarInstance {
            graph: complete(5),
            crossings: [x((1, 3), (2, 4))].into_iter().collect(),
        };
        let foreign = x((1, 4), (2, 5));
        assert!(matches!(
            branch(&inst, &foreign),
            Err(Error::UnknownCrossing)
        ));
    }

    #[test]
    fn selection_is_lexicographic_and_order_blind() {
        let a = x((1, 3), (2, 4));
        let b = x((1, 5), (2, 6));
        let graph = complete(6);
        let fwd = OnePlanarInstance {
            graph: graph.clone(),
            crossings: [a, b].into_iter().collect(),
        };
        let rev = OnePlanarInstance {
            graph,
            crossings: [b, a].into_iter().collect(),
        };
        assert_eq!(select_crossing(&fwd).unwrap(), a);
        assert_eq!(select_crossing(&rev).unwrap(), a);
    }

    #[test]
    fn selecting_from_an_empty_set_fails() {
        let inst = OnePlanarInstance {
            graph: complete(4),
            crossings: CrossingSet::default(),
        };
        assert!(matches!(
            select_crossing(&inst),
            Err(Error::EmptyCrossingSet)
        ));
    }
}
