//! Coxeter graphs and vertex subsets.
//!
//! A Coxeter graph is a finite vertex set together with a symmetric label
//! matrix over {1, 2, 3, ...} ∪ {∞}: the diagonal is 1, off-diagonal labels
//! are at least 2, and a pair not listed in the input gets the default label
//! 2. Vertex order is the order of appearance in the input and is used for
//! every tie-break downstream.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};

/// An entry of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Label::Infinite)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LabelRepr {
    Number(u32),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct EdgeRepr {
    a: String,
    b: String,
    m: LabelRepr,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<String>,
    edges: Vec<EdgeRepr>,
}

/// A finite Coxeter graph with a fixed vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    vertices: Vec<String>,
    /// Full symmetric matrix; `labels[s][s] == Finite(1)`.
    labels: Vec<Vec<Label>>,
}

impl CoxeterGraph {
    /// Build a graph from vertex names and explicit edges; unlisted pairs
    /// default to label 2.
    pub fn from_parts<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, Label)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for name in &names {
            if name.is_empty() || name.split_whitespace().count() != 1 {
                return Err(EngineError::Parse(format!("bad vertex name {name:?}")));
            }
            if name.contains(':') || name.contains('^') {
                return Err(EngineError::Parse(format!(
                    "vertex name {name:?} collides with word syntax"
                )));
            }
            if !seen.insert(name.clone()) {
                return Err(EngineError::Parse(format!("duplicate vertex {name:?}")));
            }
        }
        let n = names.len();
        let mut labels = vec![vec![Label::Finite(2); n]; n];
        for (i, row) in labels.iter_mut().enumerate() {
            row[i] = Label::Finite(1);
        }
        let index = |name: &str| -> Result<usize> {
            names
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| EngineError::Parse(format!("unknown vertex {name:?} in edge")))
        };
        let mut listed = BTreeSet::new();
        for (a, b, m) in edges {
            let i = index(a.as_ref())?;
            let j = index(b.as_ref())?;
            if i == j {
                return Err(EngineError::Parse(format!(
                    "self edge on vertex {:?}",
                    a.as_ref()
                )));
            }
            if let Label::Finite(k) = m {
                if *k < 2 {
                    return Err(EngineError::Parse(format!("edge label {k} below 2")));
                }
            }
            if !listed.insert((i.min(j), i.max(j))) {
                return Err(EngineError::Parse(format!(
                    "duplicate edge {:?}-{:?}",
                    a.as_ref(),
                    b.as_ref()
                )));
            }
            labels[i][j] = *m;
            labels[j][i] = *m;
        }
        Ok(CoxeterGraph {
            vertices: names,
            labels,
        })
    }

    /// Parse the JSON graph format:
    /// `{"vertices": ["s","t"], "edges": [{"a":"s","b":"t","m":3}]}` with
    /// `"m": "inf"` for an infinite label.
    pub fn parse_json(text: &str) -> Result<Self> {
        let repr: GraphRepr =
            serde_json::from_str(text).map_err(|e| EngineError::Parse(e.to_string()))?;
        let mut edges = Vec::new();
        for edge in &repr.edges {
            let m = match &edge.m {
                LabelRepr::Number(k) => Label::Finite(*k),
                LabelRepr::Text(t) if t == "inf" => Label::Infinite,
                LabelRepr::Text(t) => {
                    return Err(EngineError::Parse(format!("bad edge label {t:?}")));
                }
            };
            edges.push((edge.a.clone(), edge.b.clone(), m));
        }
        CoxeterGraph::from_parts(&repr.vertices, &edges)
    }

    /// Serialize back to the JSON input format. Only non-default labels are
    /// listed, so `parse_json(to_json(g)) == g`.
    pub fn to_json(&self) -> String {
        let mut edges = Vec::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if self.labels[i][j] != Label::Finite(2) {
                    edges.push(EdgeRepr {
                        a: self.vertices[i].clone(),
                        b: self.vertices[j].clone(),
                        m: match self.labels[i][j] {
                            Label::Finite(k) => LabelRepr::Number(k),
                            Label::Infinite => LabelRepr::Text("inf".to_string()),
                        },
                    });
                }
            }
        }
        let repr = GraphRepr {
            vertices: self.vertices.clone(),
            edges,
        };
        serde_json::to_string(&repr).expect("graph serialization")
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, s: usize) -> &str {
        &self.vertices[s]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn label(&self, s: usize, t: usize) -> Label {
        self.labels[s][t]
    }

    /// Distinct finite off-diagonal labels, ascending.
    pub fn finite_labels(&self) -> Vec<u32> {
        let mut out = BTreeSet::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if let Label::Finite(m) = self.labels[i][j] {
                    out.insert(m);
                }
            }
        }
        out.into_iter().collect()
    }

    /// All vertex pairs labeled ∞, sorted by vertex order.
    pub fn infinite_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if self.labels[i][j].is_infinite() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_free_of_infinity(&self) -> bool {
        self.infinite_edges().is_empty()
    }

    /// The full subgraph spanned by `set`, with vertex order inherited.
    pub fn induced(&self, set: &VertexSet) -> CoxeterGraph {
        let members = set.members();
        let vertices: Vec<String> = members.iter().map(|&s| self.vertices[s].clone()).collect();
        let n = vertices.len();
        let mut labels = vec![vec![Label::Finite(2); n]; n];
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate() {
                labels[a][b] = self.labels[i][j];
            }
        }
        CoxeterGraph { vertices, labels }
    }

    /// Connected components with respect to edges of label ≥ 3 or ∞,
    /// each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for (u, &label) in self.labels[v].iter().enumerate() {
                    if comp[u] == usize::MAX && label != Label::Finite(2) && u != v {
                        comp[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Components of the subgraph keeping only odd finite labels; used by the
    /// abelianization certificate.
    pub fn odd_components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let odd = |l: Label| matches!(l, Label::Finite(m) if m >= 3 && m % 2 == 1);
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for (u, &label) in self.labels[v].iter().enumerate() {
                    if comp[u] == usize::MAX && u != v && odd(label) {
                        comp[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Canonical string key for memo tables and the oracle registry.
    pub fn fingerprint(&self) -> String {
        self.to_json()
    }

    /// The full vertex set.
    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::new((0..self.rank()).collect())
    }
}

/// A subset of the vertices of some Coxeter graph, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn empty() -> Self {
        VertexSet {
            members: Vec::new(),
        }
    }

    /// Parse a comma-separated list of vertex names.
    pub fn from_names(graph: &CoxeterGraph, csv: &str) -> Result<Self> {
        let mut members = Vec::new();
        for name in csv.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let idx = graph
                .vertex_index(name)
                .ok_or_else(|| EngineError::Parse(format!("unknown vertex {name:?} in subset")))?;
            members.push(idx);
        }
        Ok(VertexSet::new(members))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(
            self.members
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet::new(self.members.iter().copied().filter(|&u| u != v).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// Position of a global vertex inside the induced subgraph, if present.
    pub fn local_index(&self, global: usize) -> Option<usize> {
        self.members.binary_search(&global).ok()
    }

    /// Global vertex for a local index of the induced subgraph.
    pub fn global_index(&self, local: usize) -> usize {
        self.members[local]
    }
}
