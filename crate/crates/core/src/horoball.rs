//! Depth-truncated combinatorial horoballs.
//!
//! The horoball over a finite connected graph has vertex set
//! base × {0..=max_depth}; level-0 edges copy the base, a level-k (k > 0)
//! horizontal edge joins (v,k)-(w,k) exactly when 0 < d_base(v,w) < 2^k, and
//! vertical edges join (v,k)-(v,k+1). Base distances always mean distances in
//! the base graph itself, never in any ambient space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexLabel};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Horoball {
    pub base: LabeledGraph,
    pub max_depth: u32,
    pub graph: LabeledGraph,
}

/// Build the truncated horoball over a connected base graph.
pub fn build_horoball(base: &LabeledGraph, max_depth: u32) -> Result<Horoball> {
    if !base.is_connected() {
        return Err(Error::DisconnectedBase);
    }
    let n = base.num_vertices();
    let mut g = LabeledGraph::new();
    // vertex (v, k) gets index k*n + v
    for k in 0..=max_depth {
        for v in 0..n {
            g.add_vertex(VertexLabel::at(base.labels[v].tag.clone(), k));
        }
    }
    let idx = |v: usize, k: u32| (k as usize) * n + v;
    // level 0: copy base edges
    for &(a, b) in &base.edges {
        g.add_edge(idx(a, 0), idx(b, 0));
    }
    // horizontal edges per level from base distances
    let dist: Vec<Vec<usize>> = (0..n).map(|v| base.distances(v)).collect();
    for k in 1..=max_depth {
        let reach = 1usize << k.min(62);
        for v in 0..n {
            for w in (v + 1)..n {
                let d = dist[v][w];
                if d > 0 && d < reach {
                    g.add_edge(idx(v, k), idx(w, k));
                }
            }
        }
    }
    // vertical edges
    for k in 0..max_depth {
        for v in 0..n {
            g.add_edge(idx(v, k), idx(v, k + 1));
        }
    }
    Ok(Horoball {
        base: base.clone(),
        max_depth,
        graph: g,
    })
}

/// The depth (level) of a horoball vertex.
pub fn depth_of(h: &Horoball, vertex: usize) -> Result<u32> {
    h.graph
        .labels
        .get(vertex)
        .map(|l| l.depth)
        .ok_or_else(|| Error::UnknownVertex(format!("vertex {vertex}")))
}

/// Distance in the truncated horoball, plus a caveat flag: true when some
/// shortest path touches the top level, so a deeper truncation could shorten
/// the reported distance.
pub fn distance_with_caveat(h: &Horoball, u: usize, v: usize) -> Result<(usize, bool)> {
    let du = h.graph.distances(u);
    if du[v] == usize::MAX {
        return Err(Error::Disconnected(format!("vertices {u}, {v}")));
    }
    let dv = h.graph.distances(v);
    let d = du[v];
    let caveat = (0..h.graph.num_vertices()).any(|x| {
        h.graph.labels[x].depth == h.max_depth && du[x] != usize::MAX && du[x] + dv[x] == d
    });
    Ok((d, caveat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path_graph;

    #[test]
    fn single_vertex_base_is_a_path() {
        let base = path_graph(1);
        let h = build_horoball(&base, 3).unwrap();
        assert_eq!(h.graph.num_vertices(), 4);
        assert_eq!(h.graph.num_edges(), 3); // all vertical
    }

    #[test]
    fn one_edge_base_counts() {
        let base = path_graph(2);
        let h = build_horoball(&base, 2).unwrap();
        assert_eq!(h.graph.num_vertices(), 6);
        assert_eq!(h.graph.num_edges(), 7);
    }

    #[test]
    fn path3_base_counts() {
        let base = path_graph(3);
        let h = build_horoball(&base, 2).unwrap();
        assert_eq!(h.graph.num_vertices(), 9);
        // 2 level-0 + 2 level-1 + 3 level-2 horizontal, 6 vertical
        assert_eq!(h.graph.num_edges(), 13);
        // the distance-2 pair first connects at level 2 (2 < 4)
        let v0 = h.graph.vertex(&VertexLabel::at("0", 2)).unwrap();
        let v2 = h.graph.vertex(&VertexLabel::at("2", 2)).unwrap();
        assert!(h.graph.neighbors(v0).contains(&v2));
        let u0 = h.graph.vertex(&VertexLabel::at("0", 1)).unwrap();
        let u2 = h.graph.vertex(&VertexLabel::at("2", 1)).unwrap();
        assert!(!h.graph.neighbors(u0).contains(&u2));
    }

    #[test]
    fn disconnected_base_rejected() {
        let mut base = LabeledGraph::new();
        base.add_vertex(VertexLabel::at("x", 0));
        base.add_vertex(VertexLabel::at("y", 0));
        assert!(matches!(
            build_horoball(&base, 1),
            Err(Error::DisconnectedBase)
        ));
    }

    #[test]
    fn depth_of_reads_levels() {
        let h = build_horoball(&path_graph(2), 3).unwrap();
        let v = h.graph.vertex(&VertexLabel::at("1", 3)).unwrap();
        assert_eq!(depth_of(&h, v).unwrap(), 3);
        assert!(depth_of(&h, 999).is_err());
    }

    #[test]
    fn endpoint_shortcut_with_caveat() {
        // P_8 endpoints at depth 3: route up, across, down beats the base path
        let h = build_horoball(&path_graph(8), 3).unwrap();
        let a = h.graph.vertex(&VertexLabel::at("0", 0)).unwrap();
        let b = h.graph.vertex(&VertexLabel::at("7", 0)).unwrap();
        let (d, caveat) = distance_with_caveat(&h, a, b).unwrap();
        assert_eq!(d, 7); // 3 up + 1 across + 3 down
        assert!(caveat); // that route touches the top level
    }

    #[test]
    fn monotone_levels() {
        let base = path_graph(6);
        let h = build_horoball(&base, 4).unwrap();
        for &(a, b) in &h.graph.edges {
            let (la, lb) = (&h.graph.labels[a], &h.graph.labels[b]);
            if la.depth == lb.depth && la.depth >= 1 && la.depth < h.max_depth {
                let ua = h.graph.vertex(&VertexLabel::at(la.tag.clone(), la.depth + 1)).unwrap();
                let ub = h.graph.vertex(&VertexLabel::at(lb.tag.clone(), lb.depth + 1)).unwrap();
                assert!(h.graph.neighbors(ua).contains(&ub));
            }
        }
    }
}
