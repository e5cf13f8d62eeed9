//! Independent brute-force references.
//!
//! Everything here is deliberately naive so it can certify the clever
//! code: the cut oracle enumerates bipartitions, the matching oracle
//! enumerates pairings, and the classifier reads a partition straight off
//! its definition. None of them share code with the solvers they check.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{CutSide, NodeId, WeightedGraph};
use crate::matching::MatchingProblem;
use crate::model::{BranchKind, Crossing};
use crate::{Error, Result};

/// Node ceiling for [`brute_force_max_cut`]; 2^23 sides is where patience
/// runs out.
pub const MAX_CUT_LIMIT: usize = 24;

/// Node ceiling for [`brute_force_perfect_matching`].
pub const MATCHING_LIMIT: usize = 12;

/// Exact maximum cut by enumerating every side that excludes the smallest
/// node. The first optimum in mask order wins, so results are stable.
pub fn brute_force_max_cut(g: &WeightedGraph) -> Result<(i64, CutSide)> {
    brute_force_max_cut_limited(g, MAX_CUT_LIMIT)
}

pub fn brute_force_max_cut_limited(g: &WeightedGraph, limit: usize) -> Result<(i64, CutSide)> {
    let nodes: Vec<NodeId> = g.nodes().collect();
    let n = nodes.len();
    if n > limit || n > MAX_CUT_LIMIT {
        return Err(Error::TooLarge {
            nodes: n,
            limit: limit.min(MAX_CUT_LIMIT),
        });
    }
    if n == 0 {
        return Ok((0, CutSide::default()));
    }

    let index: std::collections::BTreeMap<NodeId, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let edges: Vec<(usize, usize, i64)> = g
        .edges()
        .map(|(e, w)| {
            let (u, v) = e.endpoints();
            (index[&u], index[&v], w)
        })
        .collect();

    let mut best_value: i128 = 0;
    let mut best_mask: u64 = 0;
    for mask in 0..(1u64 << (n - 1)) {
        let mut value: i128 = 0;
        for &(u, v, w) in &edges {
            // Bit i of the mask holds node i+1; node 0 stays outside.
            let su = u > 0 && (mask >> (u - 1)) & 1 == 1;
            let sv = v > 0 && (mask >> (v - 1)) & 1 == 1;
            if su != sv {
                value += i128::from(w);
            }
        }
        if value > best_value {
            best_value = value;
            best_mask = mask;
        }
    }

    let side: CutSide = (1..n)
        .filter(|i| (best_mask >> (i - 1)) & 1 == 1)
        .map(|i| nodes[i])
        .collect();
    let value = i64::try_from(best_value).map_err(|_| Error::Overflow)?;
    Ok((value, side))
}

/// How a bipartition splits the four endpoints of a crossing, up to
/// swapping the two sides. Letters b through e single out one endpoint;
/// f, g, h name the three ways of pairing them two and two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PartitionClass {
    /// All four endpoints on one side.
    A,
    /// v separated from y, w, z.
    B,
    /// w separated from v, y, z.
    C,
    /// y separated from v, w, z.
    D,
    /// z separated from v, w, y.
    E,
    /// Pairs {v, w} and {y, z}.
    F,
    /// Pairs {v, z} and {w, y}.
    G,
    /// Pairs {v, y} and {w, z}, the two crossing edges themselves.
    H,
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self {
            PartitionClass::A => 'a',
            PartitionClass::B => 'b',
            PartitionClass::C => 'c',
            PartitionClass::D => 'd',
            PartitionClass::E => 'e',
            PartitionClass::F => 'f',
            PartitionClass::G => 'g',
            PartitionClass::H => 'h',
        };
        write!(f, "{letter}")
    }
}

/// Classify how `s` splits the endpoints of `x`. The caller guarantees
/// the endpoints belong to the graph `s` partitions; membership in `s` is
/// all that is read here.
pub fn classify_partition(s: &CutSide, x: &Crossing) -> PartitionClass {
    let r = x.roles();
    let all = [r.v, r.y, r.w, r.z];
    let inside: BTreeSet<NodeId> = all
        .iter()
        .copied()
        .filter(|v| s.members.contains(v))
        .collect();
    let split: BTreeSet<NodeId> = if inside.len() <= 2 {
        inside
    } else {
        all.iter().copied().filter(|v| !inside.contains(v)).collect()
    };
    match split.len() {
        0 => PartitionClass::A,
        1 => {
            let lone = *split.iter().next().unwrap();
            match lone {
                _ if lone == r.v => PartitionClass::B,
                _ if lone == r.w => PartitionClass::C,
                _ if lone == r.y => PartitionClass::D,
                _ => PartitionClass::E,
            }
        }
        _ => {
            let has = |a: NodeId| split.contains(&a);
            if (has(r.v) && has(r.w)) || (has(r.y) && has(r.z)) {
                PartitionClass::F
            } else if (has(r.v) && has(r.z)) || (has(r.w) && has(r.y)) {
                PartitionClass::G
            } else {
                PartitionClass::H
            }
        }
    }
}

/// The branches whose child optimum is guaranteed to match the parent's
/// when an optimal cut splits the crossing this way. Each branch keeps its
/// merged pair (or the deleted edge's endpoints) on one side, and every
/// class leaves at least one of the three pairs unsplit.
pub fn covering_branches(class: PartitionClass) -> &'static [BranchKind] {
    use BranchKind::*;
    use PartitionClass::*;
    match class {
        A | B => &[ContractWy, ContractYz, DeleteWz],
        C | F => &[ContractYz],
        E | G => &[ContractWy],
        D | H => &[DeleteWz],
    }
}

/// Exact minimum-weight perfect matching by recursion on the lowest
/// unmatched node. Returns the optimal value.
pub fn brute_force_perfect_matching(p: &MatchingProblem) -> Result<i64> {
    let n = p.node_count;
    if n > MATCHING_LIMIT {
        return Err(Error::TooLarge {
            nodes: n,
            limit: MATCHING_LIMIT,
        });
    }
    if !n.is_multiple_of(2) {
        return Err(Error::NoPerfectMatching);
    }
    if n == 0 {
        return Ok(0);
    }

    let mut weight = vec![vec![None::<i64>; n]; n];
    for &(u, v, w) in &p.edges {
        assert!(u != v && u < n && v < n);
        let best = weight[u][v].map_or(w, |old: i64| old.min(w));
        weight[u][v] = Some(best);
        weight[v][u] = Some(best);
    }

    fn search(weight: &[Vec<Option<i64>>], unmatched: &[usize]) -> Option<i128> {
        let Some(&first) = unmatched.first() else {
            return Some(0);
        };
        let mut best: Option<i128> = None;
        for i in 1..unmatched.len() {
            let partner = unmatched[i];
            let Some(w) = weight[first][partner] else {
                continue;
            };
            let rest: Vec<usize> = unmatched
                .iter()
                .copied()
                .filter(|&v| v != first && v != partner)
                .collect();
            if let Some(sub) = search(weight, &rest) {
                let total = sub + i128::from(w);
                if best.is_none_or(|b| total < b) {
                    best = Some(total);
                }
            }
        }
        best
    }

    let all: Vec<usize> = (0..n).collect();
    match search(&weight, &all) {
        Some(total) => i64::try_from(total).map_err(|_| Error::Overflow),
        None => Err(Error::NoPerfectMatching),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn n(v: u32) -> NodeId {
        NodeId(v)
    }

    fn side(members: &[u32]) -> CutSide {
        members.iter().map(|&v| n(v)).collect()
    }

    fn crossing() -> Crossing {
        // v = 1, y = 3, w = 2, z = 4.
        Crossing::new(Edge::new(n(1), n(3)), Edge::new(n(2), n(4)))
    }

    #[test]
    fn cut_oracle_trivia() {
        let k2 = WeightedGraph::from_edges([(1, 2, 5)]).unwrap();
        assert_eq!(brute_force_max_cut(&k2).unwrap(), (5, side(&[2])));

        let empty = WeightedGraph::new();
        assert_eq!(brute_force_max_cut(&empty).unwrap(), (0, side(&[])));
    }

    #[test]
    fn cut_oracle_on_the_five_cycle() {
        let mut g = WeightedGraph::new();
        for i in 1..=5u32 {
            g.add_edge(n(i), n(i % 5 + 1), 1).unwrap();
        }
        let (value, s) = brute_force_max_cut(&g).unwrap();
        assert_eq!(value, 4);
        assert_eq!(g.cut_value(&s).unwrap(), 4);
    }

    #[test]
    fn cut_oracle_respects_negative_weights() {
        let g = WeightedGraph::from_edges([(1, 2, -1), (2, 3, -2), (1, 3, -3)]).unwrap();
        assert_eq!(brute_force_max_cut(&g).unwrap(), (0, side(&[])));
    }

    #[test]
    fn cut_oracle_refuses_large_inputs() {
        let mut g = WeightedGraph::new();
        for v in 1..=25u32 {
            g.add_node(n(v));
        }
        assert_eq!(
            brute_force_max_cut(&g),
            Err(Error::TooLarge {
                nodes: 25,
                limit: 24
            })
        );
        let small = WeightedGraph::from_edges([(1, 2, 1), (2, 3, 1)]).unwrap();
        assert!(matches!(
            brute_force_max_cut_limited(&small, 2),
            Err(Error::TooLarge { nodes: 3, limit: 2 })
        ));
    }

    #[test]
    fn classifier_covers_all_eight_shapes() {
        let x = crossing();
        assert_eq!(classify_partition(&side(&[]), &x), PartitionClass::A);
        assert_eq!(
            classify_partition(&side(&[1, 2, 3, 4]), &x),
            PartitionClass::A
        );
        assert_eq!(classify_partition(&side(&[1]), &x), PartitionClass::B);
        assert_eq!(classify_partition(&side(&[2, 3, 4]), &x), PartitionClass::B);
        assert_eq!(classify_partition(&side(&[2]), &x), PartitionClass::C);
        assert_eq!(classify_partition(&side(&[3]), &x), PartitionClass::D);
        assert_eq!(classify_partition(&side(&[4]), &x), PartitionClass::E);
        assert_eq!(classify_partition(&side(&[1, 2]), &x), PartitionClass::F);
        assert_eq!(classify_partition(&side(&[3, 4]), &x), PartitionClass::F);
        assert_eq!(classify_partition(&side(&[1, 4]), &x), PartitionClass::G);
        assert_eq!(classify_partition(&side(&[2, 3]), &x), PartitionClass::G);
        assert_eq!(classify_partition(&side(&[1, 3]), &x), PartitionClass::H);
        assert_eq!(classify_partition(&side(&[2, 4]), &x), PartitionClass::H);
    }

    #[test]
    fn classifier_ignores_outside_nodes() {
        let x = crossing();
        assert_eq!(
            classify_partition(&side(&[2, 3, 7, 9]), &x),
            PartitionClass::G
        );
    }

    #[test]
    fn every_class_has_a_covering_branch() {
        use PartitionClass::*;
        for class in [A, B, C, D, E, F, G, H] {
            assert!(!covering_branches(class).is_empty());
        }
        assert_eq!(covering_branches(G), &[BranchKind::ContractWy]);
        assert_eq!(covering_branches(F), &[BranchKind::ContractYz]);
        assert_eq!(covering_branches(H), &[BranchKind::DeleteWz]);
    }

    #[test]
    fn matching_oracle_trivia() {
        let k2 = MatchingProblem {
            node_count: 2,
            edges: vec![(0, 1, 5)],
        };
        assert_eq!(brute_force_perfect_matching(&k2), Ok(5));

        let odd = MatchingProblem {
            node_count: 3,
            edges: vec![(0, 1, 1), (1, 2, 1)],
        };
        assert_eq!(
            brute_force_perfect_matching(&odd),
            Err(Error::NoPerfectMatching)
        );

        let empty = MatchingProblem {
            node_count: 0,
            edges: vec![],
        };
        assert_eq!(brute_force_perfect_matching(&empty), Ok(0));
    }

    #[test]
    fn matching_oracle_on_cycles() {
        let c4 = MatchingProblem {
            node_count: 4,
            edges: vec![(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)],
        };
        assert_eq!(brute_force_perfect_matching(&c4), Ok(4));

        let k4 = MatchingProblem {
            node_count: 4,
            edges: vec![
                (0, 1, 1),
                (0, 2, 1),
                (0, 3, 1),
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, 1),
            ],
        };
        assert_eq!(brute_force_perfect_matching(&k4), Ok(2));
    }

    #[test]
    fn matching_oracle_structural_failure() {
        // A star cannot match its three leaves to one hub.
        let star = MatchingProblem {
            node_count: 4,
            edges: vec![(0, 1, 1), (0, 2, 1), (0, 3, 1)],
        };
        assert_eq!(
            brute_force_perfect_matching(&star),
            Err(Error::NoPerfectMatching)
        );
    }

    #[test]
    fn matching_oracle_size_limit() {
        let big = MatchingProblem {
            node_count: 13,
            edges: vec![],
        };
        assert!(matches!(
            brute_force_perfect_matching(&big),
            Err(Error::TooLarge {
                nodes: 13,
                limit: 12
            })
        ));
    }
}
