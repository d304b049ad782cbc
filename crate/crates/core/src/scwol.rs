//! Scwols (small categories without loops), scwolification of cell
//! complexes, and geometric realization.
//!
//! For an arrow a we keep i(a) = source and t(a) = target; a pair (a, b) is
//! composable when i(a) = t(b), and then ab has i(ab) = i(b), t(ab) = t(a).
//! In a scwolification arrows point from a cell to each of its strict faces.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::CellComplex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scwol {
    pub object_names: Vec<String>,
    /// arrows as (i, t) object pairs
    pub arrows: Vec<(usize, usize)>,
    /// composition: (a, b) with i(a) = t(b) -> ab
    pub comp: HashMap<(usize, usize), usize>,
}

impl Scwol {
    pub fn num_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn i(&self, a: usize) -> usize {
        self.arrows[a].0
    }

    pub fn t(&self, a: usize) -> usize {
        self.arrows[a].1
    }

    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.comp.keys().copied().collect();
        out.sort_unstable();
        out
    }

    /// Composable triples (a, b, c): i(a) = t(b) and i(b) = t(c).
    pub fn composable_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &(a, b) in self.comp.keys() {
            for &(b2, c) in self.comp.keys() {
                if b2 == b {
                    out.push((a, b, c));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.comp.get(&(a, b)).copied()
    }

    /// Structural validation: no loops, composition well-typed, associative.
    pub fn validate(&self) -> Result<()> {
        for (ai, &(i, t)) in self.arrows.iter().enumerate() {
            if i == t {
                return Err(Error::Invalid(format!("arrow {ai} is a loop at object {i}")));
            }
            if i >= self.num_objects() || t >= self.num_objects() {
                return Err(Error::Invalid(format!("arrow {ai} has a dangling endpoint")));
            }
        }
        for (&(a, b), &ab) in &self.comp {
            if self.i(a) != self.t(b) {
                return Err(Error::Invalid(format!(
                    "composition ({a},{b}) listed but i({a}) != t({b})"
                )));
            }
            if self.i(ab) != self.i(b) || self.t(ab) != self.t(a) {
                return Err(Error::Invalid(format!(
                    "composite of ({a},{b}) has wrong endpoints"
                )));
            }
        }
        // every composable pair must have a composite
        for a in 0..self.arrows.len() {
            for b in 0..self.arrows.len() {
                if self.i(a) == self.t(b) && !self.comp.contains_key(&(a, b)) {
                    return Err(Error::Invalid(format!(
                        "composable pair ({a},{b}) has no composite"
                    )));
                }
            }
        }
        // associativity on triples
        for (a, b, c) in self.composable_triples() {
            let ab = self.comp[&(a, b)];
            let bc = self.comp[&(b, c)];
            if self.comp.get(&(ab, c)) != self.comp.get(&(a, bc)) {
                return Err(Error::Invalid(format!(
                    "composition not associative on ({a},{b},{c})"
                )));
            }
        }
        Ok(())
    }

    /// At most one arrow between any ordered pair of objects.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.arrows.iter().all(|&p| seen.insert(p))
    }

    /// True when `tree` (a set of arrow ids) is a spanning tree of the
    /// underlying undirected graph on the objects.
    pub fn is_spanning_tree(&self, tree: &[usize]) -> bool {
        let n = self.num_objects();
        if n == 0 {
            return tree.is_empty();
        }
        if tree.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        for &a in tree {
            if a >= self.arrows.len() {
                return false;
            }
            let (x, y) = (find(&mut parent, self.i(a)), find(&mut parent, self.t(a)));
            if x == y {
                return false; // cycle
            }
            parent[x] = y;
        }
        true
    }

    /// A deterministic spanning tree of the underlying graph (BFS from
    /// object 0, arrows in index order). Errors if disconnected.
    pub fn spanning_tree(&self) -> Result<Vec<usize>> {
        let n = self.num_objects();
        let mut seen = vec![false; n];
        let mut tree = Vec::new();
        if n == 0 {
            return Ok(tree);
        }
        seen[0] = true;
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &v in &frontier {
                for (ai, &(i, t)) in self.arrows.iter().enumerate() {
                    let other = if i == v {
                        t
                    } else if t == v {
                        i
                    } else {
                        continue;
                    };
                    if !seen[other] {
                        seen[other] = true;
                        tree.push(ai);
                        next.push(other);
                    }
                }
            }
            frontier = next;
        }
        if seen.iter().all(|&s| s) {
            tree.sort_unstable();
            Ok(tree)
        } else {
            Err(Error::Disconnected("scwol underlying graph".into()))
        }
    }
}

/// Scwolification of a regular cell complex: one object per cell, one arrow
/// per strict face relation (composites included), with the forced
/// composition table.
pub fn scwolify(c: &CellComplex) -> Result<Scwol> {
    c.validate()?;
    let mut arrows = Vec::new();
    let mut arrow_of: HashMap<(usize, usize), usize> = HashMap::new();
    for cell in 0..c.num_cells() {
        for f in c.strict_faces(cell) {
            arrow_of.insert((cell, f), arrows.len());
            arrows.push((cell, f));
        }
    }
    let mut comp = HashMap::new();
    for (&(ci, cf), &a) in &arrow_of {
        // b must end where a starts: t(b) = ci
        for (&(bi, bf), &b) in &arrow_of {
            if bf == ci {
                // ab : bi -> cf
                let ab = arrow_of[&(bi, cf)];
                comp.insert((a, b), ab);
                let _ = (cf, bf);
            }
        }
    }
    let s = Scwol {
        object_names: c.cells.iter().map(|x| x.name.clone()).collect(),
        arrows,
        comp,
    };
    s.validate()?;
    Ok(s)
}

/// Identity of a realization cell: the object (for vertices) or the
/// composable arrow chain (for n-simplices, n ≥ 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellKey {
    Object(usize),
    Chain(Vec<usize>),
}

/// Geometric realization as a simplicial cell complex: vertices V(𝒴), edges
/// E(𝒴), n-simplices = composable n-chains (a₁,…,aₙ) with i(aₖ) = t(aₖ₊₁).
pub fn geometric_realization(s: &Scwol) -> Result<CellComplex> {
    Ok(geometric_realization_with_keys(s)?.0)
}

/// Realization plus the key of each produced cell, in cell order.
pub fn geometric_realization_with_keys(s: &Scwol) -> Result<(CellComplex, Vec<CellKey>)> {
    s.validate()?;
    let mut out = CellComplex::new();
    let mut keys: Vec<CellKey> = Vec::new();
    // vertices
    let vcell: Vec<usize> = (0..s.num_objects())
        .map(|o| {
            keys.push(CellKey::Object(o));
            out.add_cell(s.object_names[o].clone(), 0, vec![])
        })
        .collect();
    // edges
    let ecell: Vec<usize> = (0..s.num_arrows())
        .map(|a| {
            keys.push(CellKey::Chain(vec![a]));
            out.add_cell(
                format!("[{}>{}]", s.object_names[s.i(a)], s.object_names[s.t(a)]),
                1,
                vec![vcell[s.i(a)], vcell[s.t(a)]],
            )
        })
        .collect();
    // higher chains; chain (a1,..,an) keyed by its arrow list
    let mut prev: HashMap<Vec<usize>, usize> = (0..s.num_arrows())
        .map(|a| (vec![a], ecell[a]))
        .collect();
    let mut n = 2usize;
    loop {
        let mut cur: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        for chain in prev.keys() {
            // extend on the right: (a1,..,an-1, c) with i(a_{n-1}) = t(c)
            for c in 0..s.num_arrows() {
                if s.t(c) == s.i(*chain.last().unwrap()) {
                    let mut ext = chain.clone();
                    ext.push(c);
                    chains.push(ext);
                }
            }
        }
        chains.sort();
        chains.dedup();
        if chains.is_empty() {
            break;
        }
        for chain in chains {
            // faces: drop first, drop last, or compose each adjacent pair
            let mut faces = Vec::new();
            let tail: Vec<usize> = chain[1..].to_vec();
            let head: Vec<usize> = chain[..n - 1].to_vec();
            faces.push(prev[&tail]);
            faces.push(prev[&head]);
            for k in 0..(n - 1) {
                let mut merged = chain.clone();
                let ab = s.comp[&(chain[k], chain[k + 1])];
                merged.splice(k..=k + 1, [ab]);
                faces.push(prev[&merged]);
            }
            faces.sort_unstable();
            faces.dedup();
            let name = format!(
                "c({})",
                chain
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            keys.push(CellKey::Chain(chain.clone()));
            let id = out.add_cell(name, n, faces);
            cur.insert(chain, id);
        }
        prev = cur;
        n += 1;
    }
    out.validate()?;
    Ok((out, keys))
}

/// Barycentric subdivision, defined as realization of the scwolification.
pub fn barycentric_subdivision(c: &CellComplex) -> Result<CellComplex> {
    geometric_realization(&scwolify(c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex;

    #[test]
    fn vertex_scwol() {
        let s = scwolify(&complex::vertex()).unwrap();
        assert_eq!(s.num_objects(), 1);
        assert_eq!(s.num_arrows(), 0);
        let r = geometric_realization(&s).unwrap();
        assert_eq!(r.cell_counts(), vec![1]);
    }

    #[test]
    fn segment_scwol() {
        let s = scwolify(&complex::segment()).unwrap();
        assert_eq!(s.num_objects(), 3);
        assert_eq!(s.num_arrows(), 2);
        assert!(s.is_simple());
        let r = geometric_realization(&s).unwrap();
        assert_eq!(r.cell_counts(), vec![3, 2]);
    }

    #[test]
    fn triangle_scwol_and_realization() {
        let s = scwolify(&complex::triangle()).unwrap();
        assert_eq!(s.num_objects(), 7);
        assert_eq!(s.num_arrows(), 12);
        assert_eq!(s.composable_pairs().len(), 6);
        assert!(s.composable_triples().is_empty());
        let r = geometric_realization(&s).unwrap();
        assert_eq!(r.cell_counts(), vec![7, 12, 6]);
    }

    #[test]
    fn tetrahedron_has_triples() {
        let s = scwolify(&complex::tetrahedron()).unwrap();
        // objects 15; arrows: 3-cell->14 faces, 4 triangles ->6 each, 6 edges ->2
        assert_eq!(s.num_arrows(), 14 + 4 * 6 + 6 * 2);
        assert!(!s.composable_triples().is_empty());
        s.validate().unwrap();
    }

    #[test]
    fn subdivision_counts_match_formula() {
        // barycentric subdivision of an n-simplex: (n+1)! top cells
        let b = barycentric_subdivision(&complex::triangle()).unwrap();
        assert_eq!(b.cell_counts(), vec![7, 12, 6]);
        let g = barycentric_subdivision(&complex::square_grid(3, 3)).unwrap();
        // per square: realization has 8 triangles; vertices 16+24+9,
        // edges: arrows of the grid scwol = 24*2 + 9*8
        assert_eq!(g.cell_counts(), vec![49, 24 * 2 + 9 * 8, 9 * 8]);
    }

    #[test]
    fn spanning_tree_of_theta() {
        let s = scwolify(&complex::theta_graph()).unwrap();
        let t = s.spanning_tree().unwrap();
        assert!(s.is_spanning_tree(&t));
        assert_eq!(t.len(), 4);
        assert!(!s.is_spanning_tree(&[0, 1, 2, 3, 4, 5]));
    }
}
