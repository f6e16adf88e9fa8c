//! Independent checks of the structural guarantees: every tree spans, the
//! trees are pairwise edge-disjoint, the leftover edges at even n form the
//! recorded path, and the tree count meets the edge-counting upper bound.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::ceist::{CeistSet, SpanningTree};
use crate::error::{Error, Result};
use crate::topology::{build_ltq_direct, edge_count, is_adjacent, Edge, LtqTopology, Vertex};

/// Machine-readable verification outcome for one tree set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: u32,
    pub tree_count: usize,
    /// Per-tree spanning-tree check, in tree order.
    pub spanning_ok: Vec<bool>,
    pub disjoint_ok: bool,
    pub leftover_edges: Vec<Edge>,
    /// Only meaningful for even n; `None` at odd n where the leftover
    /// carries no claimed structure.
    pub leftover_is_path: Option<bool>,
    /// Edge-counting upper bound on the number of disjoint spanning trees.
    pub bound: u64,
    pub bound_met: bool,
    pub all_ok: bool,
}

/// True iff `t` has exactly `2^n - 1` edges, all drawn from `topo`, and
/// they connect all `2^n` vertices. Count plus connectivity rules out
/// cycles without a separate check.
pub fn is_spanning_tree(t: &SpanningTree, topo: &LtqTopology) -> Result<bool> {
    if t.n() != topo.n() {
        return Err(Error::DimensionMismatch {
            expected: topo.n(),
            actual: t.n(),
        });
    }
    let vertices = t.vertex_count();
    if t.edges().len() as u64 != vertices - 1 {
        return Ok(false);
    }
    if !t.edges().iter().all(|e| topo.contains(*e)) {
        return Ok(false);
    }
    let mut adj = vec![Vec::new(); vertices as usize];
    for e in t.edges() {
        adj[e.lo() as usize].push(e.hi());
        adj[e.hi() as usize].push(e.lo());
    }
    let mut seen = vec![false; vertices as usize];
    let mut queue = VecDeque::from([0 as Vertex]);
    seen[0] = true;
    let mut reached = 1u64;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    Ok(reached == vertices)
}

/// True iff no edge occurs in two distinct trees.
pub fn pairwise_disjoint(trees: &[SpanningTree]) -> bool {
    let mut seen = HashSet::new();
    for t in trees {
        for e in t.edges() {
            if !seen.insert(*e) {
                return false;
            }
        }
    }
    true
}

/// Edges of the topology unused by any tree. A tree edge outside the
/// topology is a structural error.
pub fn leftover_edges(cs: &CeistSet, topo: &LtqTopology) -> Result<BTreeSet<Edge>> {
    if cs.n() != topo.n() {
        return Err(Error::DimensionMismatch {
            expected: topo.n(),
            actual: cs.n(),
        });
    }
    let mut used = BTreeSet::new();
    for (i, t) in cs.trees().iter().enumerate() {
        for e in t.edges() {
            if !topo.contains(*e) {
                return Err(Error::Structural(format!(
                    "tree {} edge {e} is not an LTQ_{} edge",
                    i + 1,
                    topo.n()
                )));
            }
            used.insert(*e);
        }
    }
    Ok(topo.edges().difference(&used).copied().collect())
}

/// Edge-counting upper bound floor(n*2^(n-1) / (2^n - 1)) on the number of
/// pairwise edge-disjoint spanning trees; equals floor(n/2) for all n >= 2.
pub fn max_tree_bound(n: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    Ok(edge_count(n) / ((1u64 << n) - 1))
}

/// Check that `leftover` is exactly the recorded path: right vertex count,
/// all even, distinct, consecutive vertices adjacent, starting at 0, and
/// its edge set equal to `leftover`. Reversed orientation is accepted.
fn leftover_matches_path(cs: &CeistSet, leftover: &BTreeSet<Edge>) -> bool {
    let Some(path) = cs.path() else {
        return false;
    };
    let mut verts = path.vertices().to_vec();
    if verts.last() == Some(&0) {
        verts.reverse();
    }
    let n = cs.n();
    let expected_len = (n / 2 + 1) as usize;
    if verts.len() != expected_len || verts[0] != 0 {
        return false;
    }
    if verts.iter().any(|v| v % 2 != 0) {
        return false;
    }
    if verts.iter().collect::<HashSet<_>>().len() != verts.len() {
        return false;
    }
    for w in verts.windows(2) {
        match is_adjacent(w[0], w[1], n) {
            Ok(true) => {}
            _ => return false,
        }
    }
    let path_edges: BTreeSet<Edge> = verts.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    path_edges == *leftover
}

/// Run every check against a freshly built topology.
pub fn verify(cs: &CeistSet) -> Result<VerificationReport> {
    let n = cs.n();
    let topo = build_ltq_direct(n)?;
    let spanning_ok: Vec<bool> = cs
        .trees()
        .iter()
        .map(|t| is_spanning_tree(t, &topo))
        .collect::<Result<_>>()?;
    let disjoint_ok = pairwise_disjoint(cs.trees());
    let leftover = leftover_edges(cs, &topo)?;
    let leftover_is_path = if n % 2 == 0 {
        Some(leftover_matches_path(cs, &leftover))
    } else {
        None
    };
    let bound = max_tree_bound(n)?;
    let bound_met = cs.trees().len() as u64 == bound;
    let all_ok = spanning_ok.iter().all(|&b| b)
        && disjoint_ok
        && bound_met
        && leftover_is_path.unwrap_or(true);
    Ok(VerificationReport {
        n,
        tree_count: cs.trees().len(),
        spanning_ok,
        disjoint_ok,
        leftover_edges: leftover.into_iter().collect(),
        leftover_is_path,
        bound,
        bound_met,
        all_ok,
    })
}
