//! Integer Smith normal form, used for abelianization invariants.

/// Smith normal form diagonal (invariant factors, including 1s, excluding
/// trailing zeros) of an integer matrix given as rows.
pub fn smith_diagonal(mat: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i64>> = mat.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut r = 0;
    let mut c = 0;
    while r < rows && c < cols {
        // find a pivot: smallest nonzero entry in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in r..rows {
            for j in c..cols {
                if m[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r, pi);
        for row in m.iter_mut() {
            row.swap(c, pj);
        }
        loop {
            let mut done = true;
            for i in (r + 1)..rows {
                if m[i][c] != 0 {
                    let q = m[i][c].div_euclid(m[r][c]);
                    for j in c..cols {
                        m[i][j] -= q * m[r][j];
                    }
                    if m[i][c] != 0 {
                        m.swap(r, i);
                        done = false;
                    }
                }
            }
            for j in (c + 1)..cols {
                if m[r][j] != 0 {
                    let q = m[r][j].div_euclid(m[r][c]);
                    for i in r..rows {
                        m[i][j] -= q * m[i][c];
                    }
                    if m[r][j] != 0 {
                        for row in m.iter_mut().skip(r) {
                            row.swap(c, j);
                        }
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        // divisibility fixup: pivot must divide every remaining entry
        let mut clean = true;
        'outer: for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                if m[i][j] % m[r][c] != 0 {
                    for k in c..cols {
                        let add = m[i][k];
                        m[r][k] += add;
                    }
                    clean = false;
                    break 'outer;
                }
            }
        }
        if !clean {
            continue;
        }
        diag.push(m[r][c].abs());
        r += 1;
        c += 1;
    }
    diag
}

/// Invariant factors > 1 together with the free rank, for a presentation with
/// `n_gens` generators and the given relator exponent rows.
pub fn abelian_invariants(n_gens: usize, relator_rows: &[Vec<i64>]) -> (usize, Vec<i64>) {
    if relator_rows.is_empty() {
        return (n_gens, Vec::new());
    }
    let diag = smith_diagonal(relator_rows);
    let nonzero: Vec<i64> = diag.into_iter().filter(|&d| d != 0).collect();
    let free_rank = n_gens - nonzero.len();
    let torsion: Vec<i64> = nonzero.into_iter().filter(|&d| d > 1).collect();
    (free_rank, torsion)
}

/// Whether `v` lies in the integer row span of `rows` (lattice membership).
pub fn in_lattice(rows: &[Vec<i64>], v: &[i64]) -> bool {
    // Hermite-style reduction of v against a row echelon form of the lattice.
    let mut basis: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut v = v.to_vec();
    let cols = v.len();
    for col in 0..cols {
        loop {
            let mut idx: Option<usize> = None;
            for (i, b) in basis.iter().enumerate() {
                if b[..col].iter().all(|&x| x == 0)
                    && b[col] != 0
                    && idx.is_none_or(|j| b[col].abs() < basis[j][col].abs())
                {
                    idx = Some(i);
                }
            }
            let Some(p) = idx else { break };
            let mut changed = false;
            for i in 0..basis.len() {
                if i != p && basis[i][..col].iter().all(|&x| x == 0) && basis[i][col] != 0 {
                    let q = basis[i][col].div_euclid(basis[p][col]);
                    for j in 0..cols {
                        basis[i][j] -= q * basis[p][j];
                    }
                    changed = changed || basis[i][col] != 0;
                }
            }
            if !changed {
                if v[..col].iter().all(|&x| x == 0) && v[col] != 0 {
                    let q = v[col].div_euclid(basis[p][col]);
                    for j in 0..cols {
                        v[j] -= q * basis[p][j];
                    }
                }
                break;
            }
        }
        if v[..col].iter().all(|&x| x == 0) && v[col] != 0 {
            return false;
        }
    }
    v.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_amalgam_relators() {
        // <x,y | x^4, y^6, x^2 y^-3> abelianized
        let rows = vec![vec![4, 0], vec![0, 6], vec![2, -3]];
        let (rank, torsion) = abelian_invariants(2, &rows);
        assert_eq!(rank, 0);
        assert_eq!(torsion, vec![12]);
    }

    #[test]
    fn smith_free_rank() {
        let (rank, torsion) = abelian_invariants(3, &[vec![0, 0, 2]]);
        assert_eq!(rank, 2);
        assert_eq!(torsion, vec![2]);
    }

    #[test]
    fn lattice_membership() {
        let rows = vec![vec![2, 0], vec![0, 3]];
        assert!(in_lattice(&rows, &[4, 3]));
        assert!(!in_lattice(&rows, &[1, 0]));
        assert!(in_lattice(&rows, &[0, 0]));
    }
}
