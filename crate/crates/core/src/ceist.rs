//! Construction of the maximal family of pairwise edge-disjoint spanning
//! trees of `LTQ_n`.
//!
//! The recursion produces floor(n/2) trees. Odd dimensions splice two
//! isomorphic copies of the trees of `LTQ_{n-1}`; even dimensions assemble
//! the four (n-2)-subcubes A, B, C, D and add one extra tree out of the
//! cross-subcube edges. At even n the leftover edges form a path of even
//! vertices starting at 0, which the next even level consumes as its
//! splice anchors.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::topology::{dimension_neighbor, vertex_count, Edge, Subcube, Vertex};

/// An edge set meant to span all `2^n` vertices of `LTQ_n`. Structural
/// validity is checked by the verifier, not enforced on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    n: u32,
    edges: BTreeSet<Edge>,
}

impl SpanningTree {
    pub fn from_edges<I: IntoIterator<Item = Edge>>(n: u32, edges: I) -> Self {
        SpanningTree {
            n,
            edges: edges.into_iter().collect(),
        }
    }

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
}

/// The leftover path carried between even recursion levels: even vertex
/// labels, starting at 0, consecutive labels adjacent in `LTQ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplicePath {
    vertices: Vec<Vertex>,
}

impl SplicePath {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        SplicePath { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The edges between consecutive path vertices.
    pub fn edges(&self) -> BTreeSet<Edge> {
        self.vertices
            .windows(2)
            .map(|w| Edge::new(w[0], w[1]))
            .collect()
    }

    fn translate(&self, offset: Vertex) -> SplicePath {
        SplicePath {
            vertices: self.vertices.iter().map(|v| v + offset).collect(),
        }
    }
}

/// The full construction output at dimension `n`: floor(n/2) ordered trees
/// and, when `n` is even, the leftover path. Tree order is significant;
/// tree `i` at dimension `n` extends tree `i` of the previous level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeistSet {
    n: u32,
    trees: Vec<SpanningTree>,
    path: Option<SplicePath>,
}

impl CeistSet {
    pub fn new(n: u32, trees: Vec<SpanningTree>, path: Option<SplicePath>) -> Self {
        CeistSet { n, trees, path }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn trees(&self) -> &[SpanningTree] {
        &self.trees
    }

    pub fn path(&self) -> Option<&SplicePath> {
        self.path.as_ref()
    }
}

/// The `LTQ_2` seed: the path tree 0-1-3-2 and leftover path 0-2.
pub fn base_case() -> CeistSet {
    let tree = SpanningTree::from_edges(
        2,
        [(0, 1), (1, 3), (3, 2)].into_iter().map(|(a, b)| Edge::new(a, b)),
    );
    CeistSet {
        n: 2,
        trees: vec![tree],
        path: Some(SplicePath::new(vec![0, 2])),
    }
}

/// Copy a subcube tree into the subcube based at `offset` inside `LTQ_n`.
/// Valid offsets are the subcube bases `2^(n-1)`, `3*2^(n-2)`, `2^(n-2)`.
pub fn translate_tree(t: &SpanningTree, offset: Vertex, n: u32) -> Result<SpanningTree> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    let half = 1u32 << (n - 1);
    let quarter = 1u32 << (n - 2);
    let limit = if offset == half {
        half
    } else if offset == 3 * quarter || offset == quarter {
        quarter
    } else {
        return Err(Error::InvalidOffset { offset, n });
    };
    for e in t.edges() {
        if e.hi() >= limit {
            return Err(Error::VertexOutOfRange { v: e.hi(), n });
        }
    }
    Ok(SpanningTree::from_edges(
        n,
        t.edges().iter().map(|e| e.translate(offset)),
    ))
}

fn expect_path(prev: &CeistSet) -> Result<&SplicePath> {
    prev.path
        .as_ref()
        .ok_or_else(|| Error::Malformed(format!("input set at n={} carries no path", prev.n)))
}

/// Lift the trees of `LTQ_{n-1}` to odd `n`: each tree is joined to its
/// translated copy through the splice edge at its path anchor. Odd levels
/// emit no path.
pub fn odd_step(prev: &CeistSet, n: u32) -> Result<CeistSet> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Malformed(format!("odd step needs odd n >= 3, got {n}")));
    }
    if prev.n != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            actual: prev.n,
        });
    }
    let k = (n / 2) as usize;
    let path = expect_path(prev)?;
    if prev.trees.len() != k || path.len() != k + 1 {
        return Err(Error::Malformed(format!(
            "input set at n={} has {} trees and a {}-vertex path, expected {} and {}",
            prev.n,
            prev.trees.len(),
            path.len(),
            k,
            k + 1
        )));
    }
    let half = 1u32 << (n - 1);
    let mut trees = Vec::with_capacity(k);
    for (tree, &anchor) in prev.trees.iter().zip(path.vertices()) {
        let copy = translate_tree(tree, half, n)?;
        let mut edges = tree.edges().clone();
        edges.extend(copy.edges().iter().copied());
        edges.insert(Edge::new(anchor, anchor + half));
        trees.push(SpanningTree::from_edges(n, edges));
    }
    Ok(CeistSet {
        n,
        trees,
        path: None,
    })
}

/// Even vertices of the subcube based at `base` (subcube size `2^(n-2)`).
fn even_vertices(base: Vertex, n: u32) -> impl Iterator<Item = Vertex> {
    (0..1u32 << (n - 2)).step_by(2).map(move |u| base + u)
}

/// Odd vertices of the subcube based at `base`.
fn odd_vertices(base: Vertex, n: u32) -> impl Iterator<Item = Vertex> {
    (1..1u32 << (n - 2)).step_by(2).map(move |u| base + u)
}

/// Lift the trees of `LTQ_{n-2}` to even `n` across the four subcubes,
/// adding one new tree built from cross-subcube edges, and emit the
/// extended leftover path.
pub fn even_step(prev: &CeistSet, n: u32) -> Result<CeistSet> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::Malformed(format!("even step needs even n >= 4, got {n}")));
    }
    if prev.n != n - 2 {
        return Err(Error::DimensionMismatch {
            expected: n - 2,
            actual: prev.n,
        });
    }
    let k = (n / 2) as usize;
    let prev_path = expect_path(prev)?;
    if prev.trees.len() != k - 1 || prev_path.len() != k {
        return Err(Error::Malformed(format!(
            "input set at n={} has {} trees and a {}-vertex path, expected {} and {}",
            prev.n,
            prev.trees.len(),
            prev_path.len(),
            k - 1,
            k
        )));
    }

    let base_b = Subcube::B.base(n);
    let base_c = Subcube::C.base(n);
    let base_d = Subcube::D.base(n);

    let copies_b: Vec<SpanningTree> = prev
        .trees
        .iter()
        .map(|t| translate_tree(t, base_b, n))
        .collect::<Result<_>>()?;
    let copies_c: Vec<SpanningTree> = prev
        .trees
        .iter()
        .map(|t| translate_tree(t, base_c, n))
        .collect::<Result<_>>()?;
    let copies_d: Vec<SpanningTree> = prev
        .trees
        .iter()
        .map(|t| translate_tree(t, base_d, n))
        .collect::<Result<_>>()?;

    // Splice anchors per tree index, one per subcube.
    let va = prev_path.vertices().to_vec();
    let vb = prev_path.translate(base_b);
    let vc = prev_path.translate(base_c);
    let vd = prev_path.translate(base_d);
    let (vb, vc, vd) = (vb.vertices(), vc.vertices(), vd.vertices());
    debug_assert!(va.iter().all(|v| v % 2 == 0));

    let mut trees = Vec::with_capacity(k);

    // Trees 1..=k-2: four copies joined by three splice edges.
    for i in 0..k.saturating_sub(2) {
        let mut edges = prev.trees[i].edges().clone();
        edges.extend(copies_b[i].edges().iter().copied());
        edges.extend(copies_c[i].edges().iter().copied());
        edges.extend(copies_d[i].edges().iter().copied());
        edges.insert(Edge::new(va[i], vb[i]));
        edges.insert(Edge::new(vb[i], vc[i]));
        edges.insert(Edge::new(vc[i], vd[i]));
        trees.push(SpanningTree::from_edges(n, edges));
    }

    // Tree k-1: copies in B, C, D joined by two splices, with every vertex
    // of A attached through its (n-2)-dimension edge into D.
    {
        let i = k - 2;
        let mut edges = copies_b[i].edges().clone();
        edges.extend(copies_c[i].edges().iter().copied());
        edges.extend(copies_d[i].edges().iter().copied());
        edges.insert(Edge::new(vb[i], vc[i]));
        edges.insert(Edge::new(vc[i], vd[i]));
        for v in 0..1u32 << (n - 2) {
            edges.insert(Edge::new(v, dimension_neighbor(v, n - 2, n)?));
        }
        trees.push(SpanningTree::from_edges(n, edges));
    }

    // Tree k: built from the remaining cross-subcube edges around the copy
    // of tree k-1 inside A.
    {
        let mut edges = prev.trees[k - 2].edges().clone();

        // Even A->B edges, minus the splices of trees 1..=k-2 and of this
        // tree's own anchor (index k-1); the anchor of tree k-1 stays.
        let mut skip: BTreeSet<Edge> = (0..k - 2).map(|j| Edge::new(va[j], vb[j])).collect();
        skip.insert(Edge::new(va[k - 1], vb[k - 1]));
        for v in even_vertices(0, n) {
            let e = Edge::new(v, dimension_neighbor(v, n - 1, n)?);
            if !skip.contains(&e) {
                edges.insert(e);
            }
        }

        // Even B->C edges minus the splices of trees 1..=k-1.
        let skip: BTreeSet<Edge> = (0..k - 1).map(|j| Edge::new(vb[j], vc[j])).collect();
        for v in even_vertices(base_b, n) {
            let e = Edge::new(v, dimension_neighbor(v, n - 2, n)?);
            if !skip.contains(&e) {
                edges.insert(e);
            }
        }

        // Even C->D edges minus the splices of trees 1..=k-1.
        let skip: BTreeSet<Edge> = (0..k - 1).map(|j| Edge::new(vc[j], vd[j])).collect();
        for v in even_vertices(base_c, n) {
            let e = Edge::new(v, dimension_neighbor(v, n - 1, n)?);
            if !skip.contains(&e) {
                edges.insert(e);
            }
        }

        // All odd cross edges: A->C, C->B, B->D.
        for v in odd_vertices(0, n) {
            edges.insert(Edge::new(v, dimension_neighbor(v, n - 1, n)?));
        }
        for v in odd_vertices(base_c, n) {
            edges.insert(Edge::new(v, dimension_neighbor(v, n - 2, n)?));
        }
        for v in odd_vertices(base_b, n) {
            edges.insert(Edge::new(v, dimension_neighbor(v, n - 1, n)?));
        }

        // Path edges inside B, C, D reattach the anchors consumed above.
        for r in [vb, vc, vd] {
            for j in 0..k - 1 {
                edges.insert(Edge::new(r[j], r[j + 1]));
            }
        }

        trees.push(SpanningTree::from_edges(n, edges));
    }

    // The output path extends the input path by the B-side image of its
    // last vertex.
    let mut out_path = va;
    out_path.push(out_path[k - 1] + (1u32 << (n - 1)));

    Ok(CeistSet {
        n,
        trees,
        path: Some(SplicePath::new(out_path)),
    })
}

/// Build the floor(n/2) edge-disjoint spanning trees of `LTQ_n`, with the
/// leftover path when `n` is even.
pub fn construct(n: u32) -> Result<CeistSet> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if n == 2 {
        Ok(base_case())
    } else if n % 2 == 1 {
        let prev = construct(n - 1)?;
        odd_step(&prev, n)
    } else {
        let prev = construct(n - 2)?;
        even_step(&prev, n)
    }
}
