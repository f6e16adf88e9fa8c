//! The locally twisted cube `LTQ_n` and its adjacency arithmetic.
//!
//! `LTQ_n` is an n-regular graph on the 2^n binary strings of length n.
//! Crossing dimension `d >= 2` flips bit `d` and, when bit 0 of the vertex
//! is set, also flips bit `d-1`; dimensions 0 and 1 behave like a plain
//! hypercube. Vertices are stored as plain integer labels; the bit-string
//! reading is a view.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A vertex label in `[0, 2^n)`.
pub type Vertex = u32;

/// Number of vertices of `LTQ_n`.
pub fn vertex_count(n: u32) -> u64 {
    1u64 << n
}

/// Number of edges of `LTQ_n`: n * 2^(n-1).
pub fn edge_count(n: u32) -> u64 {
    (n as u64) << (n - 1)
}

/// Bit `i` of the label `v`, reading `v` as the string `u_{n-1}...u_0`.
#[inline]
pub fn bit(v: Vertex, i: u32) -> u32 {
    (v >> i) & 1
}

#[inline]
fn check_vertex(v: Vertex, n: u32) -> Result<()> {
    if (v as u64) < vertex_count(n) {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { v, n })
    }
}

#[inline]
fn check_dimension(n: u32, min: u32) -> Result<()> {
    if n >= min {
        Ok(())
    } else {
        Err(Error::DimensionTooSmall { n, min })
    }
}

/// An undirected edge, canonicalized so that `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    /// Canonicalizing constructor. Panics on a self-loop; edges between
    /// equal labels never arise in `LTQ_n`.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert!(a != b, "self-loop ({a},{a}) is not a valid edge");
        Edge {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Result<Self> {
        if a == b {
            return Err(Error::Malformed(format!("self-loop on vertex {a}")));
        }
        Ok(Edge::new(a, b))
    }

    pub fn lo(&self) -> Vertex {
        self.lo
    }

    pub fn hi(&self) -> Vertex {
        self.hi
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    /// Shift both endpoints by `offset`.
    pub fn translate(&self, offset: Vertex) -> Edge {
        Edge::new(self.lo + offset, self.hi + offset)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

// Wire format is a two-element array [lo, hi].
impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.lo, self.hi).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (a, b) = <(Vertex, Vertex)>::deserialize(deserializer)?;
        Edge::try_new(a, b).map_err(D::Error::custom)
    }
}

/// Parity class of an edge: both endpoint labels even, both odd, or one of
/// each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeParity {
    Even,
    Odd,
    Mixed,
}

/// Parity class of `e` from the decimal values of its endpoints.
pub fn edge_parity(e: Edge) -> EdgeParity {
    match (e.lo & 1, e.hi & 1) {
        (0, 0) => EdgeParity::Even,
        (1, 1) => EdgeParity::Odd,
        _ => EdgeParity::Mixed,
    }
}

/// One of the four (n-2)-dimensional subcubes of an even-dimensional
/// `LTQ_n`, keyed by the top two bits of the label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subcube {
    /// Prefix 00.
    A,
    /// Prefix 10.
    B,
    /// Prefix 11.
    C,
    /// Prefix 01.
    D,
}

impl Subcube {
    /// Base label of this subcube within `LTQ_n`.
    pub fn base(self, n: u32) -> Vertex {
        match self {
            Subcube::A => 0,
            Subcube::B => 1 << (n - 1),
            Subcube::C => 3 << (n - 2),
            Subcube::D => 1 << (n - 2),
        }
    }
}

/// Subcube containing `v`, for even `n >= 4`.
pub fn subcube_of(v: Vertex, n: u32) -> Result<Subcube> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidSubcubeDimension { n });
    }
    check_vertex(v, n)?;
    Ok(match (v >> (n - 2)) & 3 {
        0b00 => Subcube::A,
        0b10 => Subcube::B,
        0b11 => Subcube::C,
        _ => Subcube::D,
    })
}

/// The d-neighbor `N_d(v)`: the unique neighbor of `v` whose leftmost
/// differing bit is `d`. For `d >= 2` the bit below `d` also flips exactly
/// when bit 0 of `v` is set.
pub fn dimension_neighbor(v: Vertex, d: u32, n: u32) -> Result<Vertex> {
    check_dimension(n, 2)?;
    if d >= n {
        return Err(Error::DimensionIndexOutOfRange { d, n });
    }
    check_vertex(v, n)?;
    let mut w = v ^ (1 << d);
    if d >= 2 && v & 1 == 1 {
        w ^= 1 << (d - 1);
    }
    Ok(w)
}

/// Adjacency test on labels: either the labels differ in exactly one of the
/// two lowest bits, or they differ at some bit `i >= 2` together with bit
/// `i-1` flipped exactly when bit 0 is set.
pub fn is_adjacent(u: Vertex, v: Vertex, n: u32) -> Result<bool> {
    check_dimension(n, 2)?;
    check_vertex(u, n)?;
    check_vertex(v, n)?;
    let diff = u ^ v;
    if diff == 0 {
        return Ok(false);
    }
    if diff == 0b01 || diff == 0b10 {
        return Ok(true);
    }
    // diff has no bit 0 here when it matches, so u and v agree on bit 0.
    for i in 2..n {
        let expected = (1 << i) | ((u & 1) << (i - 1));
        if diff == expected {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Difference shape of an adjacent pair `u > v`: `u - v` is a power of two
/// when `u` is even; when `u` is odd it is 1, 2, or `2^i -+ 2^(i-1)` with
/// the sign picked by bit `i-1` of `u`.
pub fn lemma1_holds(u: Vertex, v: Vertex, n: u32) -> Result<bool> {
    if !is_adjacent(u, v, n)? {
        return Err(Error::NotAdjacent { u, v, n });
    }
    let (u, v) = (u.max(v), u.min(v));
    let diff = u - v;
    if u & 1 == 0 {
        return Ok(diff.is_power_of_two());
    }
    if diff == 1 || diff == 2 {
        return Ok(true);
    }
    for i in 2..n {
        let expected = if bit(u, i - 1) == 1 {
            (1 << i) + (1 << (i - 1))
        } else {
            (1 << i) - (1 << (i - 1))
        };
        if diff == expected {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The full edge set of `LTQ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LtqTopology {
    n: u32,
    edges: BTreeSet<Edge>,
}

impl LtqTopology {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn vertex_count(&self) -> u64 {
        vertex_count(self.n)
    }

    /// Degree of every vertex, indexed by label.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.vertex_count() as usize];
        for e in &self.edges {
            deg[e.lo as usize] += 1;
            deg[e.hi as usize] += 1;
        }
        deg
    }
}

/// Build `LTQ_n` from the adjacency rule: every vertex is joined to its n
/// dimension-neighbors.
pub fn build_ltq_direct(n: u32) -> Result<LtqTopology> {
    check_dimension(n, 2)?;
    let mut edges = BTreeSet::new();
    for v in 0..vertex_count(n) as Vertex {
        for d in 0..n {
            let w = dimension_neighbor(v, d, n)?;
            edges.insert(Edge::new(v, w));
        }
    }
    debug_assert_eq!(edges.len() as u64, edge_count(n));
    Ok(LtqTopology { n, edges })
}

/// Build `LTQ_n` by the recursive definition: two prefixed copies of
/// `LTQ_{n-1}` plus the cross edges `0u -- 1(u_{n-2} xor u_0)u_{n-3}...u_0`.
/// Independent of [`build_ltq_direct`]; the two must produce equal edge
/// sets.
pub fn build_ltq_recursive(n: u32) -> Result<LtqTopology> {
    check_dimension(n, 2)?;
    if n == 2 {
        let edges = [(0, 1), (0, 2), (1, 3), (2, 3)]
            .into_iter()
            .map(|(a, b)| Edge::new(a, b))
            .collect();
        return Ok(LtqTopology { n, edges });
    }
    let prev = build_ltq_recursive(n - 1)?;
    let half = 1u32 << (n - 1);
    let mut edges = BTreeSet::new();
    for e in prev.edges() {
        edges.insert(*e);
        edges.insert(e.translate(half));
    }
    for u in 0..half {
        let twisted = u ^ ((u & 1) << (n - 2));
        edges.insert(Edge::new(u, twisted | half));
    }
    Ok(LtqTopology { n, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal transcription of the two adjacency cases over the bit
    /// strings, used as an oracle for the arithmetic versions above.
    fn adjacent_bitwise(u: Vertex, v: Vertex, n: u32) -> bool {
        let same_except = |skip: &[u32]| {
            (0..n)
                .filter(|j| !skip.contains(j))
                .all(|j| bit(u, j) == bit(v, j))
        };
        // Case 1: u_i = !v_i and u_{i-1} = v_{i-1} xor u_0, all others equal.
        for i in 2..n {
            if bit(u, i) == 1 - bit(v, i)
                && bit(u, i - 1) == (bit(v, i - 1) ^ bit(u, 0))
                && same_except(&[i, i - 1])
            {
                return true;
            }
        }
        // Case 2: a single flip in bit 0 or bit 1.
        for i in 0..2u32 {
            if bit(u, i) == 1 - bit(v, i) && same_except(&[i]) {
                return true;
            }
        }
        false
    }

    #[test]
    fn dimension_neighbor_examples() {
        assert_eq!(dimension_neighbor(0, 0, 3).unwrap(), 1);
        assert_eq!(dimension_neighbor(0, 2, 3).unwrap(), 4);
        assert_eq!(dimension_neighbor(1, 2, 3).unwrap(), 7);
        assert_eq!(dimension_neighbor(5, 2, 3).unwrap(), 3);
    }

    #[test]
    fn dimension_neighbor_rejects_bad_input() {
        assert!(matches!(
            dimension_neighbor(0, 3, 3),
            Err(Error::DimensionIndexOutOfRange { .. })
        ));
        assert!(matches!(
            dimension_neighbor(8, 0, 3),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn dimension_neighbor_is_involution_with_distinct_neighbors() {
        for n in 2..=8 {
            for v in 0..vertex_count(n) as Vertex {
                let mut seen = std::collections::HashSet::new();
                for d in 0..n {
                    let w = dimension_neighbor(v, d, n).unwrap();
                    assert_eq!(dimension_neighbor(w, d, n).unwrap(), v);
                    assert!(seen.insert(w), "duplicate neighbor of {v} at d={d}");
                }
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        assert!(is_adjacent(0, 1, 3).unwrap());
        assert!(is_adjacent(1, 7, 3).unwrap());
        assert!(!is_adjacent(0, 3, 3).unwrap());
        assert!(!is_adjacent(5, 5, 3).unwrap());
    }

    #[test]
    fn adjacency_matches_bitwise_oracle() {
        for n in 2..=6 {
            for u in 0..vertex_count(n) as Vertex {
                for v in 0..vertex_count(n) as Vertex {
                    assert_eq!(
                        is_adjacent(u, v, n).unwrap(),
                        adjacent_bitwise(u, v, n),
                        "n={n} u={u} v={v}"
                    );
                }
            }
        }
    }

    #[test]
    fn adjacency_covers_dimension_neighbors() {
        for n in 2..=7 {
            for v in 0..vertex_count(n) as Vertex {
                for d in 0..n {
                    let w = dimension_neighbor(v, d, n).unwrap();
                    assert!(is_adjacent(v, w, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn ltq2_edges() {
        let topo = build_ltq_direct(2).unwrap();
        let expected: BTreeSet<Edge> = [(0, 1), (0, 2), (1, 3), (2, 3)]
            .into_iter()
            .map(|(a, b)| Edge::new(a, b))
            .collect();
        assert_eq!(topo.edges(), &expected);
    }

    #[test]
    fn edge_and_degree_counts() {
        for n in 2..=10 {
            let topo = build_ltq_direct(n).unwrap();
            assert_eq!(topo.edges().len() as u64, edge_count(n));
            assert!(topo.degrees().iter().all(|&d| d == n));
        }
    }

    #[test]
    fn recursive_matches_direct() {
        for n in 2..=10 {
            assert_eq!(
                build_ltq_recursive(n).unwrap().edges(),
                build_ltq_direct(n).unwrap().edges(),
                "n={n}"
            );
        }
    }

    #[test]
    fn recursive_cross_edges_at_n3() {
        let topo = build_ltq_recursive(3).unwrap();
        assert!(topo.contains(Edge::new(0, 4)));
        assert!(topo.contains(Edge::new(1, 7)));
    }

    #[test]
    fn rejects_too_small_dimension() {
        assert!(build_ltq_direct(1).is_err());
        assert!(build_ltq_recursive(0).is_err());
    }

    #[test]
    fn parity_classes() {
        assert_eq!(edge_parity(Edge::new(0, 4)), EdgeParity::Even);
        assert_eq!(edge_parity(Edge::new(1, 7)), EdgeParity::Odd);
        assert_eq!(edge_parity(Edge::new(0, 1)), EdgeParity::Mixed);
    }

    #[test]
    fn subcube_prefixes() {
        assert_eq!(subcube_of(0, 4).unwrap(), Subcube::A);
        assert_eq!(subcube_of(10, 4).unwrap(), Subcube::B);
        assert_eq!(subcube_of(50, 6).unwrap(), Subcube::C);
        assert_eq!(subcube_of(5, 4).unwrap(), Subcube::D);
        assert!(subcube_of(0, 3).is_err());
        assert!(subcube_of(0, 2).is_err());
    }

    #[test]
    fn subcube_bases() {
        assert_eq!(Subcube::A.base(6), 0);
        assert_eq!(Subcube::B.base(6), 32);
        assert_eq!(Subcube::C.base(6), 48);
        assert_eq!(Subcube::D.base(6), 16);
    }

    #[test]
    fn lemma1_examples() {
        assert!(lemma1_holds(4, 0, 3).unwrap());
        assert!(lemma1_holds(7, 1, 3).unwrap());
        assert!(lemma1_holds(5, 3, 3).unwrap());
        assert!(matches!(
            lemma1_holds(0, 3, 3),
            Err(Error::NotAdjacent { .. })
        ));
    }

    #[test]
    fn lemma1_on_every_edge() {
        for n in 2..=8 {
            for e in build_ltq_direct(n).unwrap().edges() {
                assert!(lemma1_holds(e.hi(), e.lo(), n).unwrap(), "n={n} e={e}");
            }
        }
    }

    #[test]
    fn cross_subcube_edges_respect_parity_classes() {
        use Subcube::*;
        for n in [4, 6, 8] {
            let topo = build_ltq_direct(n).unwrap();
            for e in topo.edges() {
                let a = subcube_of(e.lo(), n).unwrap();
                let b = subcube_of(e.hi(), n).unwrap();
                if a == b {
                    continue;
                }
                let joins = |x: Subcube, y: Subcube| (a, b) == (x, y) || (a, b) == (y, x);
                match edge_parity(*e) {
                    EdgeParity::Even => assert!(
                        joins(A, B) || joins(B, C) || joins(C, D) || joins(A, D),
                        "even edge {e} joins {a:?}-{b:?} at n={n}"
                    ),
                    EdgeParity::Odd => assert!(
                        joins(A, C) || joins(B, C) || joins(B, D) || joins(A, D),
                        "odd edge {e} joins {a:?}-{b:?} at n={n}"
                    ),
                    EdgeParity::Mixed => {}
                }
            }
        }
    }

    #[test]
    fn edge_canonical_order() {
        let e = Edge::new(7, 2);
        assert_eq!(e.endpoints(), (2, 7));
        assert!(Edge::try_new(3, 3).is_err());
    }
}
