//! Dual graphs of marked nodal curves.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) refers to a missing vertex")]
    BadEdge(usize, usize),
    #[error("mark {0} appears more than once")]
    DuplicateMark(u32),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("(g, n) = ({g}, {n}) is unstable")]
    UnstableType { g: u32, n: usize },
    #[error("pole orders do not match the marks: {0}")]
    PoleOrders(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("bad adjacency text at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub genus: u32,
    pub marks: Vec<u32>,
}

impl Vertex {
    pub fn new(genus: u32, mut marks: Vec<u32>) -> Self {
        marks.sort_unstable();
        Vertex { genus, marks }
    }

    pub fn rational(marks: Vec<u32>) -> Self {
        Vertex::new(0, marks)
    }
}

/// Vertices are components, edges are nodes; loops and multi-edges allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for &(a, b) in &edges {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(GraphError::BadEdge(a, b));
            }
        }
        let mut seen = BTreeSet::new();
        for m in vertices.iter().flat_map(|v| &v.marks) {
            if !seen.insert(*m) {
                return Err(GraphError::DuplicateMark(*m));
            }
        }
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        Ok(DualGraph { vertices, edges })
    }

    pub fn smooth(genus: u32, marks: Vec<u32>) -> Self {
        DualGraph { vertices: vec![Vertex::new(genus, marks)], edges: Vec::new() }
    }

    /// Genus-0 path with `len` vertices and no marks.
    pub fn path(len: usize) -> Self {
        let vertices = vec![Vertex::rational(vec![]); len];
        let edges = (1..len).map(|i| (i - 1, i)).collect();
        DualGraph { vertices, edges }
    }

    /// Genus-0 star: vertex 0 joined to `leaves` others.
    pub fn star(leaves: usize) -> Self {
        let vertices = vec![Vertex::rational(vec![]); leaves + 1];
        let edges = (1..=leaves).map(|i| (0, i)).collect();
        DualGraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn marks(&self) -> Vec<u32> {
        let mut m: Vec<u32> = self.vertices.iter().flat_map(|v| v.marks.iter().copied()).collect();
        m.sort_unstable();
        m
    }

    /// Node branches at `v`; a loop counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// First Betti number of a connected graph.
    pub fn betti(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    pub fn arithmetic_genus(&self) -> Result<u32, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.vertices.iter().map(|v| v.genus).sum::<u32>() + self.betti() as u32)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertices.len()
    }

    /// Same curve with vertex `i` renamed `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let mut vertices = self.vertices.clone();
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[perm[i]] = v.clone();
        }
        let mut edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b]))).collect();
        edges.sort_unstable();
        DualGraph { vertices, edges }
    }

    /// One line per vertex, `v: g=<genus> marks=<m,...> adj=<w,...>`, with
    /// neighbours sorted and repeated per edge.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let mut adj = Vec::new();
            for &(a, b) in &self.edges {
                if a == i {
                    adj.push(b);
                }
                if b == i {
                    adj.push(a);
                }
            }
            adj.sort_unstable();
            let join = |xs: Vec<String>| xs.join(",");
            out.push_str(&format!(
                "{i}: g={} marks={} adj={}\n",
                v.genus,
                join(v.marks.iter().map(u32::to_string).collect()),
                join(adj.iter().map(usize::to_string).collect()),
            ));
        }
        out
    }

    pub fn from_adjacency_text(text: &str) -> Result<Self, GraphError> {
        let mut vertices = Vec::new();
        let mut adjacency = Vec::new();
        for (i, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let err = |reason: &str| GraphError::Parse { line: i + 1, reason: reason.into() };
            let (idx, rest) = line.split_once(':').ok_or_else(|| err("missing ':'"))?;
            if idx.trim().parse::<usize>().ok() != Some(i) {
                return Err(err("vertices must be listed in order"));
            }
            let mut genus = None;
            let mut marks = Vec::new();
            let mut adj = Vec::new();
            for field in rest.split_whitespace() {
                let (key, value) = field.split_once('=').ok_or_else(|| err("expected key=value"))?;
                let nums = |v: &str| -> Result<Vec<usize>, GraphError> {
                    v.split(',').filter(|s| !s.is_empty()).map(|s| s.parse().map_err(|_| err("bad number"))).collect()
                };
                match key {
                    "g" => genus = Some(value.parse().map_err(|_| err("bad genus"))?),
                    "marks" => marks = nums(value)?.into_iter().map(|m| m as u32).collect(),
                    "adj" => adj = nums(value)?,
                    _ => return Err(err("unknown key")),
                }
            }
            vertices.push(Vertex::new(genus.ok_or_else(|| err("missing genus"))?, marks));
            adjacency.push(adj);
        }
        // a non-loop edge is listed once from each end, a loop twice at its vertex
        let mut edges = Vec::new();
        for (a, adj) in adjacency.iter().enumerate() {
            if let Some(&b) = adj.iter().find(|&&b| b >= adjacency.len()) {
                return Err(GraphError::BadEdge(a, b));
            }
            edges.extend(adj.iter().filter(|&&b| b > a).map(|&b| (a, b)));
            let loops = adj.iter().filter(|&&b| b == a).count();
            edges.extend(std::iter::repeat_n((a, a), loops / 2));
        }
        DualGraph::new(vertices, edges)
    }
}

impl fmt::Display for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_adjacency_text())
    }
}

/// Degree `d_v` on each vertex, indexed like the graph's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multidegree(pub Vec<i64>);

impl Multidegree {
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Every component has `2 g_v - 2 + 2 #marks_v + #branches_v > 0`.
///
/// Pole orders are checked against the marks but do not enter the count.
pub fn is_stable_polar(g: &DualGraph, pole_orders: &[(u32, u32)]) -> Result<bool, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let genus = g.arithmetic_genus()?;
    let marks = g.marks();
    if genus == 0 && marks.len() <= 2 {
        return Err(GraphError::UnstableType { g: genus, n: marks.len() });
    }
    let mut given: Vec<u32> = pole_orders.iter().map(|&(m, _)| m).collect();
    given.sort_unstable();
    if given != marks {
        return Err(GraphError::PoleOrders(format!("marks {marks:?}, orders given for {given:?}")));
    }
    if let Some(&(m, _)) = pole_orders.iter().find(|&&(_, k)| k == 0) {
        return Err(GraphError::PoleOrders(format!("mark {m} has pole order 0")));
    }
    Ok((0..g.vertices.len()).all(|v| {
        let vx = &g.vertices[v];
        2 * vx.genus as i64 - 2 + 2 * vx.marks.len() as i64 + g.valence(v) as i64 > 0
    }))
}

fn require_rational_tree(g: &DualGraph) -> Result<(), GraphError> {
    if !g.is_tree() {
        return Err(GraphError::Unsupported("graph is not a tree".into()));
    }
    if g.vertices.iter().any(|v| v.genus > 0) {
        return Err(GraphError::Unsupported("positive-genus component".into()));
    }
    Ok(())
}

/// `(h^0, h^1)` of a line bundle with nonnegative multidegree on a genus-0 tree.
pub fn h0_h1(g: &DualGraph, m: &Multidegree) -> Result<(i64, i64), GraphError> {
    require_rational_tree(g)?;
    if m.0.len() != g.vertices.len() {
        return Err(GraphError::Unsupported(format!("{} degrees for {} vertices", m.0.len(), g.vertices.len())));
    }
    if m.0.iter().any(|&d| d < 0) {
        return Err(GraphError::Unsupported("negative degree".into()));
    }
    Ok((1 + m.total(), 0))
}

/// Multidegree `-2 + val(v)` of the dualizing sheaf on a genus-0 tree.
pub fn omega_multidegree(g: &DualGraph) -> Result<Multidegree, GraphError> {
    require_rational_tree(g)?;
    Ok(Multidegree((0..g.vertices.len()).map(|v| g.valence(v) as i64 - 2).collect()))
}
