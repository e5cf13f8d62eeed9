//! The branching solver.
//!
//! With no crossings left the instance is planar and goes straight to the
//! planar solver. Otherwise one crossing is eliminated three ways, the
//! children are solved recursively, and the best child cut is translated
//! back: deletion children share the parent's node set, contraction
//! children put both merged originals on the merged node's side. The
//! winner's value survives projection unchanged, so the best child value
//! is the parent's optimum.
//!
//! That last equality needs the deleted crossing edge to have nonnegative
//! weight. Deleting a negative edge relieves its child of a penalty the
//! parent still pays, so the child optimum can exceed every cut of the
//! parent and the argmax would chase a phantom value. When the edge slated
//! for deletion is negative the solver first switches the instance at one
//! of its endpoints, negating every weight incident to that node. Switching
//! relabels the cut space instead of shrinking it: sides map one-to-one by
//! toggling the pivot, values differ by the fixed incident-weight offset,
//! and the drawing, and with it the crossing list, is untouched. In the
//! switched instance the deleted edge is positive, the three-way branch is
//! exact, and the winning cut maps back by toggling the pivot and adding
//! the offset.
//!
//! Every step is deterministic: crossing selection, tie-breaking, and the
//! switching pivot are fixed, and the parallel variant joins its results
//! in branch order, so thread scheduling cannot leak into the output.

use std::time::{Duration, Instant};

use crate::graph::{split, CutSide};
use crate::model::{branch, select_crossing, BranchTrace, Crossing, OnePlanarInstance};
use crate::planar::planar_max_cut;
use crate::{Error, Result};

/// Work counters for one solve. `leaves` counts planar base cases, at
/// most 3^k of them; `max_depth` is the deepest branching level, at most k.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub leaves: u64,
    pub max_depth: u32,
    pub planar_solver_time: Duration,
    pub total_time: Duration,
}

#[derive(Clone, Debug)]
pub struct CutSolution {
    pub side: CutSide,
    pub value: i64,
    pub stats: SearchStats,
}

/// Maximum cut of a validated instance, sequentially.
pub fn solve(inst: &OnePlanarInstance) -> Result<CutSolution> {
    run(inst, false)
}

/// Maximum cut of a validated instance, solving sibling subtrees on a
/// thread pool. Output is identical to [`solve`].
pub fn solve_parallel(inst: &OnePlanarInstance) -> Result<CutSolution> {
    run(inst, true)
}

fn run(inst: &OnePlanarInstance, parallel: bool) -> Result<CutSolution> {
    let start = Instant::now();
    let mut sol = solve_at(inst, 0, parallel)?;
    sol.stats.total_time = start.elapsed();
    let check = inst.graph.cut_value(&sol.side)?;
    assert_eq!(
        check, sol.value,
        "projected cut disagrees with its claimed value"
    );
    Ok(sol)
}

fn solve_at(inst: &OnePlanarInstance, depth: u32, parallel: bool) -> Result<CutSolution> {
    if inst.crossings.is_empty() {
        return solve_leaf(inst, depth);
    }
    let x = select_crossing(inst)?;

    let wz = x.second();
    let weight = inst.graph.weight(wz).ok_or(Error::MissingEdge(wz))?;
    if weight < 0 {
        // Deleting a negative edge would hand the child a cut the parent
        // cannot afford. Switch at w so the edge turns positive, branch
        // there, and map the winner back: toggle the pivot, add the offset.
        let pivot = x.roles().w;
        let (graph, offset) = inst.graph.switched_at(pivot)?;
        let switched = OnePlanarInstance {
            graph,
            crossings: inst.crossings.clone(),
        };
        let mut sol = branch_on(&switched, &x, depth, parallel)?;
        if !sol.side.members.remove(&pivot) {
            sol.side.members.insert(pivot);
        }
        sol.value = i64::try_from(sol.value as i128 + offset as i128).map_err(|_| Error::Overflow)?;
        return Ok(sol);
    }
    branch_on(inst, &x, depth, parallel)
}

/// One branching step on an instance whose edge wz has nonnegative weight.
fn branch_on(
    inst: &OnePlanarInstance,
    x: &Crossing,
    depth: u32,
    parallel: bool,
) -> Result<CutSolution> {
    let [(c1, t1), (c2, t2), (c3, t3)] = branch(inst, x)?;
    let (r1, r2, r3) = if parallel {
        let (r1, (r2, r3)) = rayon::join(
            || solve_at(&c1, depth + 1, true),
            || {
                rayon::join(
                    || solve_at(&c2, depth + 1, true),
                    || solve_at(&c3, depth + 1, true),
                )
            },
        );
        (r1?, r2?, r3?)
    } else {
        (
            solve_at(&c1, depth + 1, false)?,
            solve_at(&c2, depth + 1, false)?,
            solve_at(&c3, depth + 1, false)?,
        )
    };
    Ok(combine(inst, [(r1, t1), (r2, t2), (r3, t3)]))
}

fn solve_leaf(inst: &OnePlanarInstance, depth: u32) -> Result<CutSolution> {
    let mut sol = planar_max_cut(&inst.graph).map_err(|e| match e {
        Error::NonPlanar => Error::InconsistentEmbedding,
        other => other,
    })?;
    sol.stats.max_depth = depth;
    Ok(sol)
}

/// Argmax over the three children in branch order; strict improvement
/// keeps the earliest winner on ties. Only the winner is projected: a
/// losing deletion child may hold a side that separates w and z, whose
/// parent value exceeds the child value, but the winner never does, so
/// its value carries over exactly.
fn combine(parent: &OnePlanarInstance, results: [(CutSolution, BranchTrace); 3]) -> CutSolution {
    let mut stats = SearchStats::default();
    for (sol, _) in &results {
        stats.leaves += sol.stats.leaves;
        stats.max_depth = stats.max_depth.max(sol.stats.max_depth);
        stats.planar_solver_time += sol.stats.planar_solver_time;
    }
    let (winner, trace) = results
        .into_iter()
        .reduce(|best, cand| if cand.0.value > best.0.value { cand } else { best })
        .unwrap();
    let side = project_back(&winner, &trace);
    debug_assert_eq!(parent.graph.cut_value(&side), Ok(winner.value));
    CutSolution {
        side,
        value: winner.value,
        stats,
    }
}

/// Lift a child's cut side into the parent graph. Deletion changes no
/// nodes. A contraction child's merged node stands for both originals, so
/// its side membership fans out to them.
pub fn project_back(child: &CutSolution, trace: &BranchTrace) -> CutSide {
    match &trace.record {
        None => child.side.clone(),
        Some(record) => split(&child.side, record),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, NodeId, WeightedGraph};
    use crate::model::{Crossing, CrossingSet};

    fn n(v: u32) -> NodeId {
        NodeId(v)
    }

    fn x(a: (u32, u32), b: (u32, u32)) -> Crossing {
        Crossing::new(Edge::new(n(a.0), n(a.1)), Edge::new(n(b.0), n(b.1)))
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

    fn planar_instance(graph: WeightedGraph) -> OnePlanarInstance {
        OnePlanarInstance {
            graph,
            crossings: CrossingSet::default(),
        }
    }

    #[test]
    fn crossing_free_four_cycle() {
        let g = WeightedGraph::from_edges([(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1)]).unwrap();
        let sol = solve(&planar_instance(g)).unwrap();
        assert_eq!(sol.value, 4);
        assert_eq!(sol.stats.leaves, 1);
        assert_eq!(sol.stats.max_depth, 0);
    }

    #[test]
    fn all_negative_stays_uncut() {
        let g = WeightedGraph::from_edges([(1, 2, -1), (2, 3, -2), (1, 3, -3)]).unwrap();
        let sol = solve(&planar_instance(g)).unwrap();
        assert_eq!(sol.value, 0);
        assert!(sol.side.members.is_empty());
    }

    #[test]
    fn k5_with_one_crossing() {
        let inst = OnePlanarInstance {
            graph: complete(5),
            crossings: [x((1, 3), (2, 4))].into_iter().collect(),
        };
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.value, 6);
        assert_eq!(sol.stats.leaves, 3);
        assert_eq!(sol.stats.max_depth, 1);
        assert_eq!(inst.graph.cut_value(&sol.side), Ok(6));
    }

    #[test]
    fn k6_with_three_crossings() {
        let inst = OnePlanarInstance {
            graph: complete(6),
            crossings: [x((1, 5), (2, 4)), x((2, 6), (3, 5)), x((3, 4), (1, 6))]
                .into_iter()
                .collect(),
        };
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.value, 9);
        assert!(sol.stats.leaves <= 27);
        assert!(sol.stats.max_depth <= 3);
        assert_eq!(inst.graph.cut_value(&sol.side), Ok(9));
    }

    #[test]
    fn parallel_solve_matches_sequential() {
        let inst = OnePlanarInstance {
            graph: complete(6),
            crossings: [x((1, 5), (2, 4)), x((2, 6), (3, 5)), x((3, 4), (1, 6))]
                .into_iter()
                .collect(),
        };
        let seq = solve(&inst).unwrap();
        let par = solve_parallel(&inst).unwrap();
        assert_eq!(seq.value, par.value);
        assert_eq!(seq.side, par.side);
        assert_eq!(seq.stats.leaves, par.stats.leaves);
        assert_eq!(seq.stats.max_depth, par.stats.max_depth);
    }

    #[test]
    fn lying_crossing_list_is_reported() {
        // K5 with an empty crossing list is not planar; the leaf check
        // names the real culprit.
        let inst = planar_instance(complete(5));
        assert!(matches!(solve(&inst), Err(Error::InconsistentEmbedding)));
    }

    #[test]
    fn deletion_trace_projects_identically() {
        let side: CutSide = [n(1), n(2)].into_iter().collect();
        let child = CutSolution {
            side: side.clone(),
            value: 7,
            stats: SearchStats::default(),
        };
        let trace = BranchTrace {
            kind: crate::model::BranchKind::DeleteWz,
            record: None,
        };
        assert_eq!(project_back(&child, &trace), side);
    }

    #[test]
    fn contraction_trace_fans_out_the_merged_node() {
        let g = complete(5);
        let (_, record) = g.contract(n(2), n(3)).unwrap();
        let merged = record.merged_node;
        let child = CutSolution {
            side: [n(1), merged].into_iter().collect(),
            value: 0,
            stats: SearchStats::default(),
        };
        let trace = BranchTrace {
            kind: crate::model::BranchKind::ContractWy,
            record: Some(record),
        };
        assert_eq!(
            project_back(&child, &trace),
            [n(1), n(2), n(3)].into_iter().collect()
        );
    }

    #[test]
    fn negative_crossing_edge_defeats_plain_deletion() {
        // Crossing (1,2) x (3,4) with weights (1,2): 0, (3,4): -10,
        // (1,3): 7, (1,4): -7. Every optimum keeps 3 and 4 together and is
        // worth 0, yet deleting (3,4) outright yields a child whose optimum
        // is 7 on a side that separates 3 and 4. Without switching, the
        // argmax would report 7 and return a side worth -3.
        let graph =
            WeightedGraph::from_edges([(1, 2, 0), (3, 4, -10), (1, 3, 7), (1, 4, -7)]).unwrap();
        let plain_delete = graph.delete_edge(Edge::new(n(3), n(4))).unwrap();
        let (parent_opt, _) = crate::oracle::brute_force_max_cut(&graph).unwrap();
        let (child_opt, _) = crate::oracle::brute_force_max_cut(&plain_delete).unwrap();
        assert_eq!(parent_opt, 0);
        assert_eq!(child_opt, 7);

        let inst = OnePlanarInstance {
            graph,
            crossings: [x((1, 2), (3, 4))].into_iter().collect(),
        };
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.value, 0);
        assert_eq!(inst.graph.cut_value(&sol.side), Ok(0));
    }

    #[test]
    fn signed_weights_match_the_oracle() {
        // K5 with one crossing under a sweep of sign patterns on the
        // crossed pair; the plain branch step is wrong for several of them.
        for (a, b) in [(1, 1), (-1, 1), (1, -1), (-1, -1), (-4, -6), (3, -5)] {
            let mut graph = WeightedGraph::new();
            let weights = [1, -2, 3, -1, 2, -3, 1, 2, -2, 1];
            let mut it = weights.into_iter();
            for u in 1..=5u32 {
                for v in (u + 1)..=5 {
                    graph.add_edge(n(u), n(v), it.next().unwrap()).unwrap();
                }
            }
            let scale = |e: Edge, w: i64| -> i64 {
                if e == Edge::new(n(1), n(3)) {
                    a * w.abs().max(1)
                } else if e == Edge::new(n(2), n(4)) {
                    b * w.abs().max(1)
                } else {
                    w
                }
            };
            let graph =
                WeightedGraph::from_edges(graph.edges().map(|(e, w)| {
                    let (u, v) = e.endpoints();
                    (u.0, v.0, scale(e, w))
                }))
                .unwrap();
            let (want, _) = crate::oracle::brute_force_max_cut(&graph).unwrap();
            let inst = OnePlanarInstance {
                graph,
                crossings: [x((1, 3), (2, 4))].into_iter().collect(),
            };
            let sol = solve(&inst).unwrap();
            assert_eq!(sol.value, want, "sign pattern ({a}, {b})");
        }
    }

    #[test]
    fn weighted_crossing_instance_prefers_heavy_edges() {
        // A four-cycle 1-2-3-4 with heavy crossing chords (1,3) and (2,4).
        // Keeping both chords in the cut forces the pairs {1,2},{3,4} or
        // {1,4},{2,3} together; with unit rim that yields 2 + 20.
        let graph = WeightedGraph::from_edges([
            (1, 2, 1),
            (2, 3, 1),
            (3, 4, 1),
            (1, 4, 1),
            (1, 3, 10),
            (2, 4, 10),
        ])
        .unwrap();
        let inst = OnePlanarInstance {
            graph,
            crossings: [x((1, 3), (2, 4))].into_iter().collect(),
        };
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.value, 22);
    }
}
