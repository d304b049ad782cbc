//! Regular cell complexes with explicit face incidence.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
    /// immediate (codimension-1) faces, as indices into the complex
    pub faces: Vec<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CellComplex {
    pub cells: Vec<Cell>,
}

impl CellComplex {
    pub fn new() -> Self {
        CellComplex::default()
    }

    pub fn add_cell(&mut self, name: impl Into<String>, dim: usize, faces: Vec<usize>) -> usize {
        self.cells.push(Cell {
            name: name.into(),
            dim,
            faces,
        });
        self.cells.len() - 1
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&c| self.cells[c].dim == d).collect()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// Regularity and closure: every immediate face has dimension one less,
    /// immediate faces are pairwise distinct, indices valid.
    pub fn validate(&self) -> Result<()> {
        for (ci, c) in self.cells.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &f in &c.faces {
                if f >= self.cells.len() {
                    return Err(Error::NonRegularComplex(format!(
                        "cell `{}` has a dangling face index {f}",
                        c.name
                    )));
                }
                if self.cells[f].dim + 1 != c.dim {
                    return Err(Error::NonRegularComplex(format!(
                        "cell `{}` (dim {}) lists face `{}` (dim {})",
                        c.name, c.dim, self.cells[f].name, self.cells[f].dim
                    )));
                }
                if !seen.insert(f) {
                    return Err(Error::NonRegularComplex(format!(
                        "cell `{}` repeats face `{}`",
                        c.name, self.cells[f].name
                    )));
                }
                if f == ci {
                    return Err(Error::NonRegularComplex(format!(
                        "cell `{}` is its own face",
                        c.name
                    )));
                }
            }
            if c.dim > 0 && c.faces.is_empty() {
                return Err(Error::NonRegularComplex(format!(
                    "positive-dimensional cell `{}` has no faces",
                    c.name
                )));
            }
        }
        Ok(())
    }

    /// All strict faces of a cell (transitive closure), sorted.
    pub fn strict_faces(&self, c: usize) -> Vec<usize> {
        let mut out = BTreeSet::new();
        let mut stack = self.cells[c].faces.clone();
        while let Some(f) = stack.pop() {
            if out.insert(f) {
                stack.extend(self.cells[f].faces.iter().copied());
            }
        }
        out.into_iter().collect()
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.dim() + 1];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }
}

/// A single vertex.
pub fn vertex() -> CellComplex {
    let mut c = CellComplex::new();
    c.add_cell("v", 0, vec![]);
    c
}

/// A single edge with two vertices.
pub fn segment() -> CellComplex {
    let mut c = CellComplex::new();
    let v0 = c.add_cell("v0", 0, vec![]);
    let v1 = c.add_cell("v1", 0, vec![]);
    c.add_cell("e", 1, vec![v0, v1]);
    c
}

/// A polygon: one 2-cell over an n-cycle of edges (n >= 3, regular).
pub fn polygon(n: usize) -> CellComplex {
    assert!(n >= 3);
    let mut c = CellComplex::new();
    let vs: Vec<usize> = (0..n).map(|i| c.add_cell(format!("v{i}"), 0, vec![])).collect();
    let es: Vec<usize> = (0..n)
        .map(|i| c.add_cell(format!("e{i}"), 1, vec![vs[i], vs[(i + 1) % n]]))
        .collect();
    c.add_cell("f", 2, es);
    c
}

/// A single triangle (filled).
pub fn triangle() -> CellComplex {
    polygon(3)
}

/// The θ-graph: two vertices joined by three edges.
pub fn theta_graph() -> CellComplex {
    let mut c = CellComplex::new();
    let v0 = c.add_cell("v0", 0, vec![]);
    let v1 = c.add_cell("v1", 0, vec![]);
    for i in 0..3 {
        c.add_cell(format!("e{i}"), 1, vec![v0, v1]);
    }
    c
}

/// An n×m grid of unit squares.
pub fn square_grid(n: usize, m: usize) -> CellComplex {
    let mut c = CellComplex::new();
    let v = |i: usize, j: usize| i * (m + 1) + j;
    for i in 0..=n {
        for j in 0..=m {
            c.add_cell(format!("v{i}_{j}"), 0, vec![]);
        }
    }
    // horizontal then vertical edges
    let mut he = vec![vec![0usize; m]; n + 1];
    for i in 0..=n {
        for j in 0..m {
            he[i][j] = c.add_cell(format!("h{i}_{j}"), 1, vec![v(i, j), v(i, j + 1)]);
        }
    }
    let mut ve = vec![vec![0usize; m + 1]; n];
    for i in 0..n {
        for j in 0..=m {
            ve[i][j] = c.add_cell(format!("u{i}_{j}"), 1, vec![v(i, j), v(i + 1, j)]);
        }
    }
    for i in 0..n {
        for j in 0..m {
            c.add_cell(
                format!("q{i}_{j}"),
                2,
                vec![he[i][j], he[i + 1][j], ve[i][j], ve[i][j + 1]],
            );
        }
    }
    c
}

/// A solid tetrahedron (needed for genuinely 3-dimensional scwols, where
/// composable triples exist).
pub fn tetrahedron() -> CellComplex {
    let mut c = CellComplex::new();
    let vs: Vec<usize> = (0..4).map(|i| c.add_cell(format!("v{i}"), 0, vec![])).collect();
    let mut edge = std::collections::HashMap::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let e = c.add_cell(format!("e{i}{j}"), 1, vec![vs[i], vs[j]]);
            edge.insert((i, j), e);
        }
    }
    let mut tris = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                let t = c.add_cell(
                    format!("f{i}{j}{k}"),
                    2,
                    vec![edge[&(i, j)], edge[&(i, k)], edge[&(j, k)]],
                );
                tris.push(t);
            }
        }
    }
    c.add_cell("s", 3, tris);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_counts() {
        let t = triangle();
        assert!(t.validate().is_ok());
        assert_eq!(t.cell_counts(), vec![3, 3, 1]);
        assert_eq!(t.strict_faces(6).len(), 6); // the 2-cell sees everything
    }

    #[test]
    fn theta_is_regular() {
        let t = theta_graph();
        assert!(t.validate().is_ok());
        assert_eq!(t.cell_counts(), vec![2, 3]);
    }

    #[test]
    fn tetrahedron_counts() {
        let t = tetrahedron();
        assert!(t.validate().is_ok());
        assert_eq!(t.cell_counts(), vec![4, 6, 4, 1]);
        assert_eq!(t.strict_faces(14).len(), 14);
    }

    #[test]
    fn grid_counts() {
        let g = square_grid(3, 3);
        assert!(g.validate().is_ok());
        assert_eq!(g.cell_counts(), vec![16, 24, 9]);
    }

    #[test]
    fn irregular_rejected() {
        let mut c = CellComplex::new();
        let v = c.add_cell("v", 0, vec![]);
        c.add_cell("loop", 1, vec![v, v]);
        assert!(matches!(c.validate(), Err(Error::NonRegularComplex(_))));
    }
}
