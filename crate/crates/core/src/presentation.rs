//! Group presentations and elementary Tietze simplification.

use serde::{Deserialize, Serialize};

use crate::smith;
use crate::word::{self, Word};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Presentation {
    pub gen_names: Vec<String>,
    pub relators: Vec<Word>,
    /// names of generators killed by the maximal tree (before any Tietze pass)
    pub tree_killed: Vec<String>,
}

impl Presentation {
    /// (free rank, torsion coefficients > 1) of the abelianization.
    pub fn abelian_invariants(&self) -> (usize, Vec<i64>) {
        let n = self.gen_names.len();
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                let mut v = vec![0i64; n];
                for &l in r {
                    v[(l.unsigned_abs() - 1) as usize] += if l < 0 { -1 } else { 1 };
                }
                v
            })
            .collect();
        smith::abelian_invariants(n, &rows)
    }

    /// Elementary Tietze simplification:
    /// 1. free-reduce and cyclically reduce relators, drop empties/duplicates;
    /// 2. kill generators with a length-1 relator;
    /// 3. eliminate a generator that occurs exactly once in some relator by
    ///    substituting it away.
    /// Deterministic: always the lowest-index eliminable generator first.
    pub fn tietze_reduce(&self) -> Presentation {
        let mut gens = self.gen_names.clone();
        let mut rels: Vec<Word> = self.relators.clone();
        for _round in 0..1000 {
            // normalize
            rels = rels
                .iter()
                .map(|r| cyclic_reduce(&word::free_reduce(r)))
                .filter(|r| !r.is_empty())
                .collect();
            rels.sort_by(|a, b| word::word_cmp(a, b));
            rels.dedup();
            // find an elimination: (generator letter, defining word)
            let mut elim: Option<(i32, Word, usize)> = None;
            'search: for g in 1..=(gens.len() as i32) {
                for (ri, r) in rels.iter().enumerate() {
                    let occurrences = r.iter().filter(|&&l| l.abs() == g).count();
                    if occurrences == 1 {
                        let pos = r.iter().position(|&l| l.abs() == g).unwrap();
                        // r = u g v  =>  g = u^-1 v^-1 ; r = u g^-1 v => g = v u
                        let u = &r[..pos];
                        let v = &r[pos + 1..];
                        let replacement = if r[pos] > 0 {
                            word::free_reduce(&word::concat(&word::inverse(u), &word::inverse(v)))
                        } else {
                            word::free_reduce(&word::concat(v, u))
                        };
                        elim = Some((g, replacement, ri));
                        break 'search;
                    }
                }
            }
            let Some((g, replacement, ri)) = elim else { break };
            rels.remove(ri);
            // substitute g := replacement everywhere
            rels = rels
                .iter()
                .map(|r| {
                    let mut out = Vec::new();
                    for &l in r {
                        if l == g {
                            out.extend_from_slice(&replacement);
                        } else if l == -g {
                            out.extend(word::inverse(&replacement));
                        } else {
                            out.push(l);
                        }
                    }
                    word::free_reduce(&out)
                })
                .collect();
            // drop generator g, shifting higher letters down
            gens.remove((g - 1) as usize);
            rels = rels
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&l| {
                            let a = l.abs();
                            debug_assert_ne!(a, g);
                            let a2 = if a > g { a - 1 } else { a };
                            if l < 0 {
                                -a2
                            } else {
                                a2
                            }
                        })
                        .collect()
                })
                .collect();
        }
        rels.retain(|r| !r.is_empty());
        rels.sort_by(|a, b| word::word_cmp(a, b));
        rels.dedup();
        Presentation {
            gen_names: gens,
            relators: rels,
            tree_killed: self.tree_killed.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "generators": self.gen_names,
            "relators": self.relators.iter()
                .map(|r| word::format_word(r, &self.gen_names))
                .collect::<Vec<_>>(),
            "tree_killed": self.tree_killed,
        })
    }
}

fn cyclic_reduce(w: &[i32]) -> Word {
    let mut s = 0usize;
    let mut e = w.len();
    while e > s + 1 && w[s] == -w[e - 1] {
        s += 1;
        e -= 1;
    }
    w[s..e].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kills_trivial_generators() {
        // <x, y | x, y^3>  ->  <y | y^3>
        let p = Presentation {
            gen_names: vec!["x".into(), "y".into()],
            relators: vec![vec![1], vec![2, 2, 2]],
            tree_killed: vec![],
        };
        let q = p.tietze_reduce();
        assert_eq!(q.gen_names, vec!["y"]);
        assert_eq!(q.relators, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn substitutes_single_occurrence() {
        // <x, y, t | t x^-2, t y^-3>  ->  <x, y | x^2 y^-3>
        let p = Presentation {
            gen_names: vec!["x".into(), "y".into(), "t".into()],
            relators: vec![vec![3, -1, -1], vec![3, -2, -2, -2]],
            tree_killed: vec![],
        };
        let q = p.tietze_reduce();
        assert_eq!(q.gen_names.len(), 2);
        let (rank, torsion) = q.abelian_invariants();
        // abelianized: x^2 = y^3, free group otherwise -> Z (rank 1), no torsion
        assert_eq!((rank, torsion), (1, vec![]));
    }

    #[test]
    fn amalgam_invariants() {
        let p = Presentation {
            gen_names: vec!["x".into(), "y".into()],
            relators: vec![vec![1; 4], vec![2; 6], vec![1, 1, -2, -2, -2]],
            tree_killed: vec![],
        };
        assert_eq!(p.abelian_invariants(), (0, vec![12]));
    }
}
