//! Plain labeled graphs plus the BFS utilities everything else leans on.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex label: a free-form tag plus an integer depth (0 for Cayley-graph
/// vertices, k for horoball level k).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexLabel {
    pub tag: String,
    pub depth: u32,
}

impl VertexLabel {
    pub fn at(tag: impl Into<String>, depth: u32) -> Self {
        VertexLabel {
            tag: tag.into(),
            depth,
        }
    }
}

/// Undirected graph with labeled vertices. Edges are stored once, as ordered
/// index pairs (lo, hi).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LabeledGraph {
    pub labels: Vec<VertexLabel>,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
    #[serde(skip)]
    by_label: HashMap<VertexLabel, usize>,
}

impl LabeledGraph {
    pub fn new() -> Self {
        LabeledGraph::default()
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self, label: VertexLabel) -> usize {
        if let Some(&i) = self.by_label.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.by_label.insert(label.clone(), i);
        self.labels.push(label);
        self.adj.push(Vec::new());
        i
    }

    pub fn vertex(&self, label: &VertexLabel) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        if self.adj[lo].contains(&hi) {
            return;
        }
        self.edges.push((lo, hi));
        self.adj[lo].push(hi);
        self.adj[hi].push(lo);
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Rebuild the derived indices after deserializing.
    pub fn rebuild(&mut self) {
        self.adj = vec![Vec::new(); self.labels.len()];
        self.by_label = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let edges = std::mem::take(&mut self.edges);
        for (a, b) in edges {
            self.add_edge(a, b);
        }
    }

    /// BFS distances from a source; usize::MAX marks unreachable vertices.
    pub fn distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.labels.len()];
        dist[src] = 0;
        let mut q = VecDeque::new();
        q.push_back(src);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        let d = self.distances(a)[b];
        (d != usize::MAX).then_some(d)
    }

    /// One geodesic from a to b, deterministic: among equal-length choices
    /// the predecessor with the least index wins.
    pub fn geodesic(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let n = self.labels.len();
        let mut dist = vec![usize::MAX; n];
        let mut pred = vec![usize::MAX; n];
        dist[a] = 0;
        let mut q = VecDeque::new();
        q.push_back(a);
        while let Some(v) = q.pop_front() {
            let mut nbrs = self.adj[v].clone();
            nbrs.sort_unstable();
            for w in nbrs {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    pred[w] = v;
                    q.push_back(w);
                }
            }
        }
        if dist[b] == usize::MAX {
            return None;
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = pred[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut q = VecDeque::new();
            q.push_back(s);
            while let Some(v) = q.pop_front() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        members.push(w);
                        q.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.labels.is_empty() || self.components().len() == 1
    }

    /// Check for a label-respecting isomorphism. Labels must be unique on
    /// both sides (true for all graphs we build), so the bijection is forced.
    pub fn label_isomorphic(&self, other: &LabeledGraph) -> bool {
        if self.labels.len() != other.labels.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let map: Option<Vec<usize>> = self
            .labels
            .iter()
            .map(|l| other.vertex(l))
            .collect();
        let Some(map) = map else { return false };
        let mut their_edges: Vec<(usize, usize)> = other.edges.clone();
        their_edges.sort_unstable();
        let mut mapped: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (map[a], map[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        mapped.sort_unstable();
        mapped == their_edges
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph g {\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  v{} [label=\"{}@{}\"];\n", i, l.tag, l.depth));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("  v{a} -- v{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_graphml(&self) -> String {
        let mut s = String::from(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n  <key id=\"tag\" for=\"node\" attr.name=\"tag\" attr.type=\"string\"/>\n  <key id=\"depth\" for=\"node\" attr.name=\"depth\" attr.type=\"int\"/>\n  <graph edgedefault=\"undirected\">\n",
        );
        for (i, l) in self.labels.iter().enumerate() {
            let tag = l
                .tag
                .replace('&', "&amp;")
                .replace('<', "&lt;")
                .replace('>', "&gt;");
            s.push_str(&format!(
                "    <node id=\"v{i}\"><data key=\"tag\">{tag}</data><data key=\"depth\">{}</data></node>\n",
                l.depth
            ));
        }
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            s.push_str(&format!(
                "    <edge id=\"e{k}\" source=\"v{a}\" target=\"v{b}\"/>\n"
            ));
        }
        s.push_str("  </graph>\n</graphml>\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "vertices": self.labels.iter().map(|l| serde_json::json!({
                "tag": l.tag, "depth": l.depth,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let sv = v
            .get("schema_version")
            .and_then(|x| x.as_u64())
            .unwrap_or(0);
        if sv != 1 {
            return Err(Error::Invalid(format!("unsupported schema_version {sv}")));
        }
        let mut g = LabeledGraph::new();
        let verts = v
            .get("vertices")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Invalid("graph json needs vertices".into()))?;
        for vx in verts {
            let tag = vx
                .get("tag")
                .and_then(|t| t.as_str())
                .ok_or_else(|| Error::Invalid("vertex needs tag".into()))?;
            let depth = vx.get("depth").and_then(|d| d.as_u64()).unwrap_or(0) as u32;
            g.add_vertex(VertexLabel::at(tag, depth));
        }
        let edges = v
            .get("edges")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Invalid("graph json needs edges".into()))?;
        for e in edges {
            let pair = e
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Invalid("edge must be a pair".into()))?;
            let a = pair[0].as_u64().unwrap_or(u64::MAX) as usize;
            let b = pair[1].as_u64().unwrap_or(u64::MAX) as usize;
            if a >= g.num_vertices() || b >= g.num_vertices() {
                return Err(Error::UnknownVertex(format!("edge ({a},{b})")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }
}

/// Path graph P_n (n vertices) with tags "0".."n-1" at depth 0.
pub fn path_graph(n: usize) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    for i in 0..n {
        g.add_vertex(VertexLabel::at(i.to_string(), 0));
    }
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    g
}

/// Cycle graph C_n.
pub fn cycle_graph(n: usize) -> LabeledGraph {
    let mut g = path_graph(n);
    if n > 2 {
        g.add_edge(n - 1, 0);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_distances() {
        let p = path_graph(5);
        assert_eq!(p.distance(0, 4), Some(4));
        assert_eq!(p.geodesic(0, 3).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn cycle_distance_wraps() {
        let c = cycle_graph(6);
        assert_eq!(c.distance(0, 3), Some(3));
        assert_eq!(c.distance(0, 5), Some(1));
    }

    #[test]
    fn dedup_edges_and_no_loops() {
        let mut g = path_graph(3);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(2, 2);
        assert_eq!(g.num_edges(), 2);
    }

    #[test]
    fn components_split() {
        let mut g = LabeledGraph::new();
        for i in 0..4 {
            g.add_vertex(VertexLabel::at(i.to_string(), 0));
        }
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(!g.is_connected());
    }

    #[test]
    fn json_roundtrip_preserves_structure() {
        let c = cycle_graph(4);
        let j = c.to_json();
        let c2 = LabeledGraph::from_json(&j).unwrap();
        assert!(c.label_isomorphic(&c2));
    }

    #[test]
    fn label_isomorphism_detects_mismatch() {
        let c4 = cycle_graph(4);
        let p4 = path_graph(4);
        assert!(!c4.label_isomorphic(&p4));
    }
}
