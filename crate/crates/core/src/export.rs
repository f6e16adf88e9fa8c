//! Wire formats: JSON and edge-list round-trips for topologies and tree
//! sets, DOT rendering, and the CSV row for latency reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ceist::{CeistSet, SpanningTree, SplicePath};
use crate::error::{Error, Result};
use crate::simulate::LatencyReport;
use crate::topology::{build_ltq_direct, vertex_count, Edge, LtqTopology, Vertex};

/// JSON shape of a topology: `{"n": int, "edges": [[lo, hi], ...]}` with
/// edges in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyFile {
    pub n: u32,
    pub edges: Vec<Edge>,
}

impl TopologyFile {
    pub fn from_topology(topo: &LtqTopology) -> Self {
        TopologyFile {
            n: topo.n(),
            edges: topo.edges().iter().copied().collect(),
        }
    }

    /// Validate labels and rebuild; the edge set must be the real `LTQ_n`
    /// edge set, since the type promises a full topology.
    pub fn into_topology(self) -> Result<LtqTopology> {
        check_labels(self.n, self.edges.iter())?;
        let topo = build_ltq_direct(self.n)?;
        let given: std::collections::BTreeSet<Edge> = self.edges.into_iter().collect();
        if &given != topo.edges() {
            return Err(Error::Malformed(format!(
                "edge set does not match LTQ_{}",
                self.n
            )));
        }
        Ok(topo)
    }
}

/// JSON shape of a tree set:
/// `{"n": int, "trees": [[[lo, hi], ...], ...], "path": [v, ...] | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CeistFile {
    pub n: u32,
    pub trees: Vec<Vec<Edge>>,
    pub path: Option<Vec<Vertex>>,
}

impl CeistFile {
    pub fn from_ceist_set(cs: &CeistSet) -> Self {
        CeistFile {
            n: cs.n(),
            trees: cs
                .trees()
                .iter()
                .map(|t| t.edges().iter().copied().collect())
                .collect(),
            path: cs.path().map(|p| p.vertices().to_vec()),
        }
    }

    pub fn into_ceist_set(self) -> Result<CeistSet> {
        if self.n < 2 {
            return Err(Error::DimensionTooSmall { n: self.n, min: 2 });
        }
        for tree in &self.trees {
            check_labels(self.n, tree.iter())?;
        }
        if let Some(path) = &self.path {
            for &v in path {
                if v as u64 >= vertex_count(self.n) {
                    return Err(Error::VertexOutOfRange { v, n: self.n });
                }
            }
        }
        let trees = self
            .trees
            .into_iter()
            .map(|edges| SpanningTree::from_edges(self.n, edges))
            .collect();
        Ok(CeistSet::new(self.n, trees, self.path.map(SplicePath::new)))
    }
}

fn check_labels<'a, I: Iterator<Item = &'a Edge>>(n: u32, edges: I) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let limit = vertex_count(n);
    for e in edges {
        if e.hi() as u64 >= limit {
            return Err(Error::VertexOutOfRange { v: e.hi(), n });
        }
    }
    Ok(())
}

fn label(v: Vertex, n: u32, binary: bool) -> String {
    if binary {
        format!("\"{:0width$b}\"", v, width = n as usize)
    } else {
        v.to_string()
    }
}

fn dot_graph<'a, I>(name: &str, n: u32, edges: I, binary: bool) -> String
where
    I: Iterator<Item = &'a Edge>,
{
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for e in edges {
        writeln!(
            out,
            "  {} -- {};",
            label(e.lo(), n, binary),
            label(e.hi(), n, binary)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// One undirected DOT graph, one line per edge, decimal labels by default.
pub fn topology_dot(topo: &LtqTopology, binary_labels: bool) -> String {
    dot_graph(
        &format!("ltq{}", topo.n()),
        topo.n(),
        topo.edges().iter(),
        binary_labels,
    )
}

/// DOT for the `idx`-th (1-based) tree of a set.
pub fn tree_dot(tree: &SpanningTree, idx: usize, binary_labels: bool) -> String {
    dot_graph(
        &format!("ltq{}_T{idx}", tree.n()),
        tree.n(),
        tree.edges().iter(),
        binary_labels,
    )
}

/// Plain edge list for a topology. The header line keeps the dimension so
/// the format round-trips.
pub fn topology_edgelist(topo: &LtqTopology) -> String {
    let mut out = format!("# ltq n={}\n", topo.n());
    for e in topo.edges() {
        writeln!(out, "{} {}", e.lo(), e.hi()).unwrap();
    }
    out
}

/// Edge list for a tree set: a header, one `# tree i` section per tree,
/// and the path vertices when present.
pub fn ceist_edgelist(cs: &CeistSet) -> String {
    let mut out = format!("# ceist n={} trees={}\n", cs.n(), cs.trees().len());
    if let Some(p) = cs.path() {
        let verts: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
        writeln!(out, "# path {}", verts.join(" ")).unwrap();
    }
    for (i, t) in cs.trees().iter().enumerate() {
        writeln!(out, "# tree {}", i + 1).unwrap();
        for e in t.edges() {
            writeln!(out, "{} {}", e.lo(), e.hi()).unwrap();
        }
    }
    out
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| malformed(format!("bad {what}: {s:?}")))
}

fn parse_edge_line(line: &str) -> Result<Edge> {
    let mut it = line.split_whitespace();
    let a: Vertex = parse_num(it.next().ok_or_else(|| malformed("empty edge line"))?, "vertex")?;
    let b: Vertex = parse_num(it.next().ok_or_else(|| malformed("edge line needs two vertices"))?, "vertex")?;
    if it.next().is_some() {
        return Err(malformed(format!("trailing tokens on edge line {line:?}")));
    }
    Edge::try_new(a, b)
}

/// Parse the output of [`topology_edgelist`].
pub fn parse_topology_edgelist(text: &str) -> Result<LtqTopology> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| malformed("empty edge list"))?;
    let n: u32 = header
        .trim()
        .strip_prefix("# ltq n=")
        .ok_or_else(|| malformed("missing '# ltq n=' header"))?
        .parse()
        .map_err(|_| malformed("bad dimension in header"))?;
    let edges = lines.map(parse_edge_line).collect::<Result<Vec<_>>>()?;
    TopologyFile { n, edges }.into_topology()
}

/// Parse the output of [`ceist_edgelist`].
pub fn parse_ceist_edgelist(text: &str) -> Result<CeistSet> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty()).peekable();
    let header = lines.next().ok_or_else(|| malformed("empty edge list"))?;
    let rest = header
        .trim()
        .strip_prefix("# ceist n=")
        .ok_or_else(|| malformed("missing '# ceist n=' header"))?;
    let (n_str, trees_str) = rest
        .split_once(" trees=")
        .ok_or_else(|| malformed("missing tree count in header"))?;
    let n: u32 = parse_num(n_str, "dimension")?;
    let tree_count: usize = parse_num(trees_str, "tree count")?;

    let mut path = None;
    if let Some(line) = lines.peek() {
        if let Some(rest) = line.trim().strip_prefix("# path ") {
            path = Some(
                rest.split_whitespace()
                    .map(|s| parse_num(s, "path vertex"))
                    .collect::<Result<Vec<Vertex>>>()?,
            );
            lines.next();
        }
    }

    let mut trees: Vec<Vec<Edge>> = Vec::new();
    for line in lines {
        let line = line.trim();
        if line.starts_with("# tree ") {
            trees.push(Vec::new());
        } else {
            let tree = trees
                .last_mut()
                .ok_or_else(|| malformed("edge line before any '# tree' marker"))?;
            tree.push(parse_edge_line(line)?);
        }
    }
    if trees.len() != tree_count {
        return Err(malformed(format!(
            "header promises {tree_count} trees, found {}",
            trees.len()
        )));
    }
    CeistFile { n, trees, path }.into_ceist_set()
}

/// CSV with one row per report:
/// `n,k,x,mt_1..mt_k,mbl_multi,mbl_single,abl_multi_literal,abl_single_literal,abl_multi_scaled,abl_single_scaled`.
pub fn latency_csv(reports: &[LatencyReport]) -> Result<String> {
    let k = reports
        .first()
        .ok_or_else(|| malformed("no latency reports"))?
        .k;
    let widest = reports.iter().map(|r| r.k).max().unwrap_or(k);
    let mut out = String::from("n,k,x");
    for i in 1..=widest {
        write!(out, ",mt_{i}").unwrap();
    }
    out.push_str(",mbl_multi,mbl_single,abl_multi_literal,abl_single_literal,abl_multi_scaled,abl_single_scaled\n");
    for r in reports {
        write!(out, "{},{},{}", r.n, r.k, r.x).unwrap();
        for i in 0..widest {
            match r.mt.get(i) {
                Some(d) => write!(out, ",{d}").unwrap(),
                None => out.push(','),
            }
        }
        writeln!(
            out,
            ",{},{},{},{},{},{}",
            r.mbl_multi,
            r.mbl_single,
            r.abl_multi_literal,
            r.abl_single_literal,
            r.abl_multi_scaled,
            r.abl_single_scaled
        )
        .unwrap();
    }
    Ok(out)
}
