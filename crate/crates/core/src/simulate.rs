//! Multi-tree broadcast latency model.
//!
//! A message is split into packets and dispatched round-robin over the
//! tree channels. One time unit moves one packet across one edge; packets
//! on the same tree are serialized (store-and-forward, no pipelining), so
//! the worst-case latency of a channel is its packet load times the tree
//! diameter. Two metrics are reported: MBL over the farthest pair and ABL
//! averaged over all vertex pairs, each for the multi-tree scheme and for
//! the best single tree.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::ceist::SpanningTree;
use crate::error::{Error, Result};
use crate::topology::{vertex_count, Vertex};

/// Packet-splitting parameters. The default packet count is pinned to 700
/// (1 M / 1500-byte frames); clearing `packet_count_override` switches to
/// the exact ceiling of `message_bytes / packet_payload_bytes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BroadcastConfig {
    pub message_bytes: u64,
    pub packet_payload_bytes: u64,
    pub packet_count_override: Option<u64>,
}

impl Default for BroadcastConfig {
    fn default() -> Self {
        BroadcastConfig {
            message_bytes: 1 << 20,
            packet_payload_bytes: 1500,
            packet_count_override: Some(700),
        }
    }
}

impl BroadcastConfig {
    /// Number of data packets `x`.
    pub fn packet_count(&self) -> u64 {
        match self.packet_count_override {
            Some(x) => x.max(1),
            None => self.message_bytes.div_ceil(self.packet_payload_bytes).max(1),
        }
    }
}

/// Latency figures for one dimension. The literal ABL values follow the
/// per-pair distance averages as printed; the scaled variants additionally
/// multiply by the per-channel packet load, mirroring the MBL formulas.
/// Both are reported because the literal formulas alone cannot rank the
/// multi-tree scheme ahead of the single tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencyReport {
    pub n: u32,
    /// Number of tree channels.
    pub k: usize,
    /// Number of packets.
    pub x: u64,
    /// Per-tree diameters in hops.
    pub mt: Vec<u32>,
    /// Round-robin packet loads per tree.
    pub loads: Vec<u64>,
    pub mbl_multi: u64,
    pub mbl_single: u64,
    pub abl_multi_literal: f64,
    pub abl_single_literal: f64,
    pub abl_multi_scaled: f64,
    pub abl_single_scaled: f64,
    /// Number of unordered vertex pairs `s`.
    pub pair_count: u64,
    /// Exact per-pair distance sums backing the ABL averages.
    pub multi_distance_sum: u64,
    pub per_tree_distance_sums: Vec<u64>,
    /// Whether the multi-tree MBL beat (or tied) the single tree here.
    pub mbl_multi_le_single: bool,
}

fn adjacency(t: &SpanningTree) -> Result<Vec<Vec<Vertex>>> {
    let mut adj = vec![Vec::new(); t.vertex_count() as usize];
    for e in t.edges() {
        adj[e.lo() as usize].push(e.hi());
        adj[e.hi() as usize].push(e.lo());
    }
    Ok(adj)
}

/// Hop distances from `src` to every vertex; an unreached vertex is a
/// structural error.
fn bfs_distances(adj: &[Vec<Vertex>], src: Vertex) -> Result<Vec<u32>> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[src as usize] = 0;
    let mut queue = VecDeque::from([src]);
    let mut reached = 1usize;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    if reached != adj.len() {
        return Err(Error::Structural(format!(
            "edge set does not connect all {} vertices",
            adj.len()
        )));
    }
    Ok(dist)
}

/// Tree diameter in hops by two traversals: the farthest vertex from an
/// arbitrary start is one end of a longest path.
pub fn tree_diameter(t: &SpanningTree) -> Result<u32> {
    let adj = adjacency(t)?;
    let first = bfs_distances(&adj, 0)?;
    let far = first
        .iter()
        .enumerate()
        .max_by_key(|(_, d)| **d)
        .map(|(v, _)| v as Vertex)
        .unwrap_or(0);
    let second = bfs_distances(&adj, far)?;
    Ok(second.into_iter().max().unwrap_or(0))
}

/// Number of unordered vertex pairs in `LTQ_n`: 2^(2n-1) - 2^(n-1).
pub fn pair_count(n: u32) -> u64 {
    (1u64 << (2 * n - 1)) - (1u64 << (n - 1))
}

/// Tree-path distances for every unordered vertex pair `(u, v)` with
/// `u < v`. Materializes the full table; intended for small dimensions.
pub fn pair_distances(t: &SpanningTree) -> Result<Vec<(Vertex, Vertex, u32)>> {
    let adj = adjacency(t)?;
    let vertices = adj.len() as Vertex;
    let mut table = Vec::with_capacity(pair_count(t.n()) as usize);
    for u in 0..vertices {
        let dist = bfs_distances(&adj, u)?;
        for v in u + 1..vertices {
            table.push((u, v, dist[v as usize]));
        }
    }
    Ok(table)
}

/// Packet loads under 1-based cyclic assignment: tree `j` (1-based) gets
/// ceil((x - j + 1) / k) packets.
pub fn round_robin_assign(x: u64, k: usize) -> Vec<u64> {
    let k64 = k as u64;
    (0..k64).map(|j| (x + k64 - 1 - j) / k64).collect()
}

/// Evaluate MBL and ABL for the tree channels against the best single
/// tree. The single tree is the one with minimal diameter for MBL and the
/// one with minimal distance sum for ABL.
pub fn compute_latency(trees: &[SpanningTree], cfg: &BroadcastConfig) -> Result<LatencyReport> {
    if trees.is_empty() {
        return Err(Error::EmptyTreeSet);
    }
    let n = trees[0].n();
    for t in trees {
        if t.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: t.n(),
            });
        }
    }
    let k = trees.len();
    let x = cfg.packet_count();
    let loads = round_robin_assign(x, k);
    let per_channel = x.div_ceil(k as u64);

    let mt: Vec<u32> = trees.iter().map(tree_diameter).collect::<Result<_>>()?;
    let max_mt = *mt.iter().max().unwrap() as u64;
    let min_mt = *mt.iter().min().unwrap() as u64;
    let mbl_multi = per_channel * max_mt;
    let mbl_single = x * min_mt;

    // One traversal per source per tree; pair aggregates accumulate
    // without materializing the table.
    let adjs: Vec<Vec<Vec<Vertex>>> = trees.iter().map(adjacency).collect::<Result<_>>()?;
    let vertices = vertex_count(n) as Vertex;
    let mut multi_sum = 0u64;
    let mut tree_sums = vec![0u64; k];
    let mut dists = Vec::with_capacity(k);
    for u in 0..vertices {
        dists.clear();
        for adj in &adjs {
            dists.push(bfs_distances(adj, u)?);
        }
        for v in (u + 1)..vertices {
            let mut worst = 0u32;
            for (ti, d) in dists.iter().enumerate() {
                let dv = d[v as usize];
                tree_sums[ti] += dv as u64;
                worst = worst.max(dv);
            }
            multi_sum += worst as u64;
        }
    }
    let s = pair_count(n);
    let min_tree_sum = *tree_sums.iter().min().unwrap();
    let abl_multi_literal = multi_sum as f64 / s as f64;
    let abl_single_literal = min_tree_sum as f64 / s as f64;
    let abl_multi_scaled = per_channel as f64 * abl_multi_literal;
    let abl_single_scaled = x as f64 * abl_single_literal;

    Ok(LatencyReport {
        n,
        k,
        x,
        mt,
        loads,
        mbl_multi,
        mbl_single,
        abl_multi_literal,
        abl_single_literal,
        abl_multi_scaled,
        abl_single_scaled,
        pair_count: s,
        multi_distance_sum: multi_sum,
        per_tree_distance_sums: tree_sums,
        mbl_multi_le_single: mbl_multi <= mbl_single,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ceist::{base_case, construct};
    use crate::topology::Edge;

    #[test]
    fn packet_count_defaults_and_ceiling() {
        let cfg = BroadcastConfig::default();
        assert_eq!(cfg.packet_count(), 700);
        let exact = BroadcastConfig {
            packet_count_override: None,
            ..BroadcastConfig::default()
        };
        // 2^20 / 1500 rounds up to 700 as well.
        assert_eq!(exact.packet_count(), 700);
        let small = BroadcastConfig {
            message_bytes: 1_000_000,
            packet_payload_bytes: 1500,
            packet_count_override: None,
        };
        assert_eq!(small.packet_count(), 667);
    }

    #[test]
    fn diameter_of_base_tree_and_star() {
        let tree = base_case().trees()[0].clone();
        assert_eq!(tree_diameter(&tree).unwrap(), 3);

        let star = SpanningTree::from_edges(3, (1..8).map(|v| Edge::new(0, v)));
        assert_eq!(tree_diameter(&star).unwrap(), 2);
    }

    #[test]
    fn diameter_rejects_disconnected_edges() {
        let broken = SpanningTree::from_edges(2, [Edge::new(0, 1), Edge::new(2, 3)]);
        assert!(matches!(tree_diameter(&broken), Err(Error::Structural(_))));
    }

    #[test]
    fn pair_counts() {
        assert_eq!(pair_count(2), 6);
        assert_eq!(pair_count(4), 120);
        assert_eq!(pair_count(6), 2016);
    }

    #[test]
    fn pair_distances_of_base_tree() {
        let tree = base_case().trees()[0].clone();
        let table = pair_distances(&tree).unwrap();
        assert_eq!(table.len(), 6);
        let lookup = |a: Vertex, b: Vertex| {
            table
                .iter()
                .find(|(u, v, _)| (*u, *v) == (a.min(b), a.max(b)))
                .unwrap()
                .2
        };
        assert_eq!(lookup(0, 1), 1);
        assert_eq!(lookup(0, 3), 2);
        assert_eq!(lookup(0, 2), 3);
        assert_eq!(lookup(1, 3), 1);
        assert_eq!(lookup(1, 2), 2);
        assert_eq!(lookup(3, 2), 1);
    }

    #[test]
    fn round_robin_examples() {
        assert_eq!(round_robin_assign(700, 2), vec![350, 350]);
        assert_eq!(round_robin_assign(700, 3), vec![234, 233, 233]);
        assert_eq!(round_robin_assign(1, 5), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn round_robin_invariants() {
        for x in 1..=50u64 {
            for k in 1..=7usize {
                let loads = round_robin_assign(x, k);
                assert_eq!(loads.iter().sum::<u64>(), x);
                assert_eq!(loads[0], x.div_ceil(k as u64));
                let max = *loads.iter().max().unwrap();
                let min = *loads.iter().min().unwrap();
                assert!(max - min <= 1);
            }
        }
    }

    #[test]
    fn latency_at_n2() {
        let cs = base_case();
        let report = compute_latency(cs.trees(), &BroadcastConfig::default()).unwrap();
        assert_eq!(report.k, 1);
        assert_eq!(report.mbl_multi, 2100);
        assert_eq!(report.mbl_single, 2100);
        assert_eq!(report.multi_distance_sum, 10);
        assert!((report.abl_multi_literal - 10.0 / 6.0).abs() < 1e-12);
        assert_eq!(report.abl_multi_literal, report.abl_single_literal);
    }

    #[test]
    fn latency_at_n6_uses_round_robin_load() {
        let cs = construct(6).unwrap();
        let report = compute_latency(cs.trees(), &BroadcastConfig::default()).unwrap();
        assert_eq!(report.loads, vec![234, 233, 233]);
        let max_mt = *report.mt.iter().max().unwrap() as u64;
        assert_eq!(report.mbl_multi, 234 * max_mt);
        assert!(report.abl_single_literal <= report.abl_multi_literal);
    }

    #[test]
    fn empty_tree_list_is_rejected() {
        assert!(matches!(
            compute_latency(&[], &BroadcastConfig::default()),
            Err(Error::EmptyTreeSet)
        ));
    }

    #[test]
    fn distance_one_pairs_equal_edge_count() {
        for n in [3u32, 4, 5] {
            let cs = construct(n).unwrap();
            for t in cs.trees() {
                let table = pair_distances(t).unwrap();
                let ones = table.iter().filter(|(_, _, d)| *d == 1).count() as u64;
                assert_eq!(ones, (1u64 << n) - 1);
                let diam = tree_diameter(t).unwrap();
                assert!(table.iter().all(|(_, _, d)| *d >= 1 && *d <= diam));
            }
        }
    }
}
