//! Truncated cusped spaces: a Cayley ball with a combinatorial horoball glued
//! over each peripheral coset that meets the ball.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexLabel};
use crate::group::{Element, GroupSpec};
use crate::subgroup::{self, SubgroupSpec};
use crate::word::{self, Word};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CuspedSpace {
    pub group: GroupSpec,
    pub peripherals: Vec<SubgroupSpec>,
    pub radius: usize,
    pub depth: u32,
    pub graph: LabeledGraph,
    /// horoball component -> (peripheral index, coset representative word)
    pub coset_index: Vec<(usize, Word)>,
}

/// Tag of a depth-0 (Cayley ball) vertex for a group element.
pub fn element_tag(g: &GroupSpec, e: &Element) -> String {
    if e.normal.is_empty() {
        "1".to_string()
    } else {
        word::format_word(&e.normal, &g.gen_names())
    }
}

/// The radius-R ball in the Cayley graph of `g`, as a labeled graph at
/// depth 0. Returns the graph together with the ball elements per vertex.
pub fn cayley_ball(g: &GroupSpec, radius: usize) -> Result<(LabeledGraph, Vec<Element>)> {
    let n = g.num_gens() as i32;
    let mut graph = LabeledGraph::new();
    let id = g.identity();
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Word, usize> = HashMap::new();
    index.insert(Vec::new(), 0);
    graph.add_vertex(VertexLabel::at(element_tag(g, &id), 0));
    let mut frontier = vec![0usize];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &i in &frontier {
            let cur = elems[i].clone();
            for l in (1..=n).flat_map(|k| [k, -k]) {
                let e = g.mul(&cur, &g.normalize(&[l])?);
                if !index.contains_key(&e.normal) {
                    let j = graph.add_vertex(VertexLabel::at(element_tag(g, &e), 0));
                    index.insert(e.normal.clone(), j);
                    elems.push(e);
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    // edges: x -- x*s whenever both endpoints are in the ball
    for i in 0..elems.len() {
        for l in 1..=n {
            let e = g.mul(&elems[i], &g.normalize(&[l])?);
            if let Some(&j) = index.get(&e.normal) {
                graph.add_edge(i, j);
            }
        }
    }
    Ok((graph, elems))
}

/// Build the truncated cusped space. Peripheral subgroup generators must be
/// single letters of the group's generating set (possibly inverted).
pub fn build_cusped(
    g: &GroupSpec,
    peripherals: &[SubgroupSpec],
    radius: usize,
    depth: u32,
) -> Result<CuspedSpace> {
    for (pi, p) in peripherals.iter().enumerate() {
        for w in &p.gens {
            if w.len() != 1 {
                return Err(Error::PeripheralNotInGeneratingSet(format!(
                    "peripheral {pi} generator {:?} is not a single generating letter",
                    w
                )));
            }
        }
    }
    let (mut graph, elems) = cayley_ball(g, radius)?;
    let mut coset_index = Vec::new();
    for (pi, p) in peripherals.iter().enumerate() {
        if p.gens.is_empty() {
            continue;
        }
        // group the ball by coset of this peripheral
        let keyer_sub = p.clone();
        let mut cosets: HashMap<Word, Vec<usize>> = HashMap::new();
        for (vi, e) in elems.iter().enumerate() {
            let key = coset_key(g, &keyer_sub, e)?;
            cosets.entry(key).or_default().push(vi);
        }
        let mut keys: Vec<Word> = cosets.keys().cloned().collect();
        keys.sort_by(|a, b| word::word_cmp(a, b));
        for key in keys {
            let members = &cosets[&key];
            let hb = coset_index.len();
            coset_index.push((pi, key.clone()));
            attach_horoball(g, p, &mut graph, &elems, members, depth, hb)?;
        }
    }
    Ok(CuspedSpace {
        group: g.clone(),
        peripherals: peripherals.to_vec(),
        radius,
        depth,
        graph,
        coset_index,
    })
}

fn coset_key(g: &GroupSpec, p: &SubgroupSpec, e: &Element) -> Result<Word> {
    if p.gens.len() == 1 {
        Ok(subgroup::coset_canonical(g, &p.gens[0], e)?.normal)
    } else {
        let h = subgroup::enumerate_finite_subgroup(g, p)?;
        let mut best: Option<Word> = None;
        for x in &h {
            let c = g.mul(e, x);
            if best.as_ref().is_none_or(|b| word::word_cmp(&c.normal, b).is_lt()) {
                best = Some(c.normal);
            }
        }
        Ok(best.expect("subgroup contains identity"))
    }
}

/// Glue a truncated horoball over one coset. Depth-0 vertices are the coset's
/// ball vertices; positive-depth vertices are tagged `h{hb}:{element}`.
/// Horizontal edges use the intrinsic coset distance: the word metric of the
/// peripheral subgroup, evaluated by BFS in its own Cayley graph.
fn attach_horoball(
    g: &GroupSpec,
    p: &SubgroupSpec,
    graph: &mut LabeledGraph,
    elems: &[Element],
    members: &[usize],
    depth: u32,
    hb: usize,
) -> Result<()> {
    if depth == 0 || members.is_empty() {
        return Ok(());
    }
    let m = members.len();
    // intrinsic pairwise distances: d(x, y) = peripheral word length of x^-1 y
    let reach = 1usize << (depth as usize).min(62);
    let dist = coset_distances(g, p, elems, members, reach)?;
    // vertex indices per (member position, level)
    let mut idx = vec![vec![0usize; m]; depth as usize + 1];
    for (mi, &vi) in members.iter().enumerate() {
        idx[0][mi] = vi;
    }
    for k in 1..=depth {
        for (mi, &vi) in members.iter().enumerate() {
            let tag = format!("h{hb}:{}", graph.labels[vi].tag.clone());
            idx[k as usize][mi] = graph.add_vertex(VertexLabel::at(tag, k));
        }
    }
    for k in 1..=depth {
        let r = 1usize << (k as usize).min(62);
        for a in 0..m {
            for b in (a + 1)..m {
                if dist[a][b] > 0 && dist[a][b] < r {
                    graph.add_edge(idx[k as usize][a], idx[k as usize][b]);
                }
            }
        }
    }
    for k in 0..depth {
        for a in 0..m {
            graph.add_edge(idx[k as usize][a], idx[k as usize + 1][a]);
        }
    }
    Ok(())
}

/// Pairwise distances between coset members in the peripheral word metric,
/// capped at `reach` (pairs at or beyond the cap never produce edges).
fn coset_distances(
    g: &GroupSpec,
    p: &SubgroupSpec,
    elems: &[Element],
    members: &[usize],
    reach: usize,
) -> Result<Vec<Vec<usize>>> {
    // BFS ball of radius `reach` in the peripheral subgroup
    let gens: Vec<Element> = p
        .gens
        .iter()
        .map(|w| g.normalize(w))
        .collect::<Result<Vec<_>>>()?;
    let mut dist_in_p: HashMap<Word, usize> = HashMap::new();
    dist_in_p.insert(Vec::new(), 0);
    let mut frontier = vec![g.identity()];
    for d in 1..=reach {
        let mut next = Vec::new();
        for cur in &frontier {
            for s in &gens {
                for e in [g.mul(cur, s), g.mul(cur, &g.inv(s))] {
                    if !dist_in_p.contains_key(&e.normal) {
                        dist_in_p.insert(e.normal.clone(), d);
                        next.push(e);
                    }
                }
            }
        }
        frontier = next;
    }
    let m = members.len();
    let mut out = vec![vec![usize::MAX; m]; m];
    for a in 0..m {
        out[a][a] = 0;
        for b in (a + 1)..m {
            let diff = g.mul(&g.inv(&elems[members[a]]), &elems[members[b]]);
            if let Some(&d) = dist_in_p.get(&diff.normal) {
                out[a][b] = d;
                out[b][a] = d;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_with_itself_is_a_grid() {
        // Z = <a>, peripheral <a>, radius 3, depth 2: ball is P_7, one
        // horoball over it -> 7 x 3 grid, 21 vertices
        let z = GroupSpec::free(1, &["a"]);
        let p = SubgroupSpec::cyclic(vec![1]);
        let c = build_cusped(&z, &[p], 3, 2).unwrap();
        assert_eq!(c.graph.num_vertices(), 21);
        assert_eq!(c.coset_index.len(), 1);
        assert!(c.graph.is_connected());
    }

    #[test]
    fn empty_peripherals_is_the_ball() {
        let f2 = GroupSpec::free(2, &["a", "b"]);
        let c = build_cusped(&f2, &[], 2, 5).unwrap();
        let (ball, _) = cayley_ball(&f2, 2).unwrap();
        assert!(c.graph.label_isomorphic(&ball));
        assert_eq!(c.graph.num_vertices(), 17);
        assert_eq!(c.graph.num_edges(), 16);
    }

    #[test]
    fn f2_with_cyclic_peripheral_coset_count() {
        let f2 = GroupSpec::free(2, &["a", "b"]);
        let p = SubgroupSpec::cyclic(vec![1]);
        let c = build_cusped(&f2, &[p], 2, 1).unwrap();
        assert_eq!(c.coset_index.len(), 9);
    }

    #[test]
    fn non_letter_peripheral_rejected() {
        let f2 = GroupSpec::free(2, &["a", "b"]);
        let p = SubgroupSpec::cyclic(vec![1, 2]); // <ab> is not a single letter
        assert!(matches!(
            build_cusped(&f2, &[p], 2, 1),
            Err(Error::PeripheralNotInGeneratingSet(_))
        ));
    }

    #[test]
    fn depth_growth_never_lengthens_distances() {
        let z = GroupSpec::free(1, &["a"]);
        let p = SubgroupSpec::cyclic(vec![1]);
        let shallow = build_cusped(&z, &[p.clone()], 3, 2).unwrap();
        let deep = build_cusped(&z, &[p], 3, 4).unwrap();
        // compare distances on the common vertex set (labels of the shallow space)
        for i in 0..shallow.graph.num_vertices() {
            let di = shallow.graph.distances(i);
            let li = &shallow.graph.labels[i];
            let i2 = deep.graph.vertex(li).unwrap();
            let di2 = deep.graph.distances(i2);
            for j in 0..shallow.graph.num_vertices() {
                let lj = &shallow.graph.labels[j];
                let j2 = deep.graph.vertex(lj).unwrap();
                assert!(di2[j2] <= di[j]);
            }
        }
    }
}
