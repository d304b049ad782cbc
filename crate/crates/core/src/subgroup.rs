//! Subgroups, membership oracles, and coset enumeration.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Backend, Element, Eq3, GroupSpec};
use crate::word::{self, Word};

/// A finitely generated subgroup, given by generator words in the ambient
/// group's generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub gens: Vec<Word>,
}

impl SubgroupSpec {
    pub fn new(gens: Vec<Word>) -> Self {
        SubgroupSpec { gens }
    }

    pub fn cyclic(w: Word) -> Self {
        SubgroupSpec { gens: vec![w] }
    }

    pub fn trivial() -> Self {
        SubgroupSpec { gens: Vec::new() }
    }
}

/// Outcome of a membership query, with a witness expression when decided
/// positively: the element as a word in the subgroup generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    In { witness: Word },
    NotIn,
    Unknown,
}

impl Membership {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In { .. })
    }
}

/// Decide membership of `x` in the subgroup generated by `sub.gens`.
///
/// Decidable cases:
/// - finite ambient backends (finite table, or finite free product): closure;
/// - free ambient group: Stallings folding for any finite generating set;
/// - other backends with a single cyclic generator: bounded root extraction.
pub fn member(g: &GroupSpec, sub: &SubgroupSpec, x: &Element) -> Result<Membership> {
    match &g.backend {
        Backend::FiniteTable(_) => Ok(finite_member(g, sub, x)),
        Backend::Free(_) => Ok(stallings_member(g, sub, x)),
        _ => {
            if g.order().is_some() {
                // finite free product (at most one nontrivial finite factor)
                return Ok(finite_member(g, sub, x));
            }
            if sub.gens.len() == 1 {
                return cyclic_member(g, &sub.gens[0], x);
            }
            if sub.gens.is_empty() {
                return Ok(match g.is_identity(x) {
                    Eq3::Equal => Membership::In { witness: Vec::new() },
                    Eq3::NotEqual => Membership::NotIn,
                    Eq3::Unknown => Membership::Unknown,
                });
            }
            Err(Error::UndecidableMembership(
                "membership for multi-generator subgroups is only decided in free or finite ambient groups".into(),
            ))
        }
    }
}

/// Closure computation in a finite group: BFS over subgroup generators,
/// remembering a witness word (in subgroup generator letters) per element.
fn finite_member(g: &GroupSpec, sub: &SubgroupSpec, x: &Element) -> Membership {
    let id = g.identity();
    let mut seen: HashMap<Word, Word> = HashMap::new();
    seen.insert(id.normal.clone(), Vec::new());
    let mut queue = VecDeque::new();
    queue.push_back(id);
    let sub_elts: Vec<Element> = sub
        .gens
        .iter()
        .map(|w| g.normalize(w).expect("subgroup generator letters are valid"))
        .collect();
    while let Some(cur) = queue.pop_front() {
        let cur_witness = seen[&cur.normal].clone();
        for (i, s) in sub_elts.iter().enumerate() {
            for sign in [1i32, -1] {
                let next = if sign > 0 {
                    g.mul(&cur, s)
                } else {
                    g.mul(&cur, &g.inv(s))
                };
                if !seen.contains_key(&next.normal) {
                    let mut w = cur_witness.clone();
                    w.push(sign * (i as i32 + 1));
                    seen.insert(next.normal.clone(), w);
                    queue.push_back(next);
                }
            }
        }
    }
    match seen.get(&x.normal) {
        Some(w) => Membership::In { witness: w.clone() },
        None => Membership::NotIn,
    }
}

/// Folded Stallings graph of the subgroup of a free group generated by
/// `gens`: deduplicated positive-direction edges plus the base vertex.
pub fn stallings_graph(gens: &[Word]) -> (Vec<(usize, u32, usize)>, usize) {
    let gens: Vec<Word> = gens.iter().map(|w| word::free_reduce(w)).collect();
    let mut edges: Vec<(usize, u32, usize)> = Vec::new();
    let base = 0usize;
    let mut n = 1usize;
    for w in &gens {
        let mut cur = base;
        for (i, &l) in w.iter().enumerate() {
            let next = if i + 1 == w.len() {
                base
            } else {
                n += 1;
                n - 1
            };
            if l > 0 {
                edges.push((cur, l as u32, next));
            } else {
                edges.push((next, (-l) as u32, cur));
            }
            cur = next;
        }
    }
    // Fold: union endpoints whenever two distinct same-labeled edges share a
    // source or share a target.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    loop {
        for e in edges.iter_mut() {
            e.0 = find(&mut parent, e.0);
            e.2 = find(&mut parent, e.2);
        }
        edges.sort_unstable();
        edges.dedup();
        let mut merged = false;
        let mut by_src: HashMap<(usize, u32), usize> = HashMap::new();
        let mut by_dst: HashMap<(usize, u32), usize> = HashMap::new();
        for &(s, l, t) in &edges {
            if let Some(&t0) = by_src.get(&(s, l)) {
                if t0 != t {
                    let (a, b) = (find(&mut parent, t0), find(&mut parent, t));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                        merged = true;
                    }
                }
            } else {
                by_src.insert((s, l), t);
            }
            if let Some(&s0) = by_dst.get(&(t, l)) {
                if s0 != s {
                    let (a, b) = (find(&mut parent, s0), find(&mut parent, s));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                        merged = true;
                    }
                }
            } else {
                by_dst.insert((t, l), s);
            }
        }
        if !merged {
            break;
        }
    }
    let base = find(&mut parent, base);
    (edges, base)
}

/// Rank of the subgroup of a free group generated by `gens`, read off the
/// folded Stallings graph (edges − vertices + 1).
pub fn free_subgroup_rank(gens: &[Word]) -> usize {
    let (edges, base) = stallings_graph(gens);
    let mut verts: HashSet<usize> = edges.iter().flat_map(|&(s, _, t)| [s, t]).collect();
    verts.insert(base);
    edges.len() + 1 - verts.len()
}

/// Stallings folding membership test in a free group.
fn stallings_member(g: &GroupSpec, sub: &SubgroupSpec, x: &Element) -> Membership {
    let (edges, base) = stallings_graph(&sub.gens);
    let gens: Vec<Word> = sub.gens.iter().map(|w| word::free_reduce(w)).collect();
    let mut out: HashMap<(usize, u32), usize> = HashMap::new();
    let mut inc: HashMap<(usize, u32), usize> = HashMap::new();
    for &(s, l, t) in &edges {
        out.insert((s, l), t);
        inc.insert((t, l), s);
    }
    // Trace x from the base; membership iff the full word reads back to base.
    let xr = word::free_reduce(&x.normal);
    let mut cur = base;
    for &l in &xr {
        let next = if l > 0 {
            out.get(&(cur, l as u32)).copied()
        } else {
            inc.get(&(cur, (-l) as u32)).copied()
        };
        match next {
            Some(v) => cur = v,
            None => return Membership::NotIn,
        }
    }
    if cur != base {
        return Membership::NotIn;
    }
    match express_in_gens(g, &gens, &xr) {
        Some(w) => Membership::In { witness: w },
        None => Membership::In { witness: Vec::new() },
    }
}

/// Express a free-group element as a word in subgroup generators by bounded
/// BFS over products; used only to produce a human-checkable witness.
fn express_in_gens(g: &GroupSpec, gens: &[Word], target: &Word) -> Option<Word> {
    let limit = 20_000usize;
    let mut seen: HashMap<Word, Word> = HashMap::new();
    seen.insert(Vec::new(), Vec::new());
    let mut queue = VecDeque::new();
    queue.push_back(Vec::<i32>::new());
    while let Some(cur) = queue.pop_front() {
        if seen.len() > limit {
            return None;
        }
        let witness = seen[&cur].clone();
        if &cur == target {
            return Some(witness);
        }
        for (i, gw) in gens.iter().enumerate() {
            for sign in [1i32, -1] {
                let step = if sign > 0 { gw.clone() } else { word::inverse(gw) };
                let next = g
                    .normalize(&word::concat(&cur, &step))
                    .expect("valid letters")
                    .normal;
                if next.len() <= target.len() + 2 * gens.iter().map(|w| w.len()).max().unwrap_or(0)
                    && !seen.contains_key(&next)
                {
                    let mut w = witness.clone();
                    w.push(sign * (i as i32 + 1));
                    seen.insert(next.clone(), w);
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

/// Membership in a cyclic subgroup <w>: bounded root extraction. Returns the
/// power as a one-letter witness word.
fn cyclic_member(g: &GroupSpec, w: &Word, x: &Element) -> Result<Membership> {
    let base = g.normalize(w)?;
    if base.is_empty() {
        return Ok(match g.is_identity(x) {
            Eq3::Equal => Membership::In { witness: Vec::new() },
            Eq3::NotEqual => Membership::NotIn,
            Eq3::Unknown => Membership::Unknown,
        });
    }
    // bound: |x| / |w| powers suffice when lengths grow; cap generously
    let cap = (x.normal.len() / base.normal.len().max(1) + 4).max(8);
    let mut pos = g.identity();
    let mut neg = g.identity();
    let mut unknown = false;
    for k in 0..=(cap as i32) {
        match g.equal(x, &pos) {
            Eq3::Equal => {
                return Ok(Membership::In {
                    witness: if k == 0 { Vec::new() } else { vec![1; k as usize] },
                })
            }
            Eq3::Unknown => unknown = true,
            Eq3::NotEqual => {}
        }
        if k > 0 {
            match g.equal(x, &neg) {
                Eq3::Equal => {
                    return Ok(Membership::In {
                        witness: vec![-1; k as usize],
                    })
                }
                Eq3::Unknown => unknown = true,
                Eq3::NotEqual => {}
            }
        }
        pos = g.mul(&pos, &base);
        neg = g.mul(&neg, &g.inv(&base));
    }
    if unknown {
        Ok(Membership::Unknown)
    } else if matches!(&g.backend, Backend::Fp(_)) {
        // rewriting cannot certify absence in general
        Ok(Membership::Unknown)
    } else {
        Ok(Membership::NotIn)
    }
}

/// Canonical representative of the left coset x·H for cyclic H = <w>:
/// the shortlex-least of x·w^k over |k| within a length-based bound.
pub fn coset_canonical(g: &GroupSpec, w: &Word, x: &Element) -> Result<Element> {
    let base = g.normalize(w)?;
    if base.is_empty() {
        return Ok(x.clone());
    }
    let cap = (x.normal.len() / base.normal.len().max(1) + 4).max(8) as i32;
    let mut best = x.clone();
    let mut pos = x.clone();
    let mut neg = x.clone();
    for _ in 1..=cap {
        pos = g.mul(&pos, &base);
        neg = g.mul(&neg, &g.inv(&base));
        for cand in [&pos, &neg] {
            if word::word_cmp(&cand.normal, &best.normal).is_lt() {
                best = cand.clone();
            }
        }
    }
    Ok(best)
}

/// Left cosets gH meeting a length ball, with the (well-defined) left
/// multiplication action of the generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CosetTable {
    /// minimal-length, shortlex-least representative per coset
    pub reps: Vec<Word>,
    /// coset reached from coset i by left multiplication with the letter
    /// sequence [+1,-1,+2,-2,...]; None when it leaves the enumerated set
    pub action: Vec<Vec<Option<usize>>>,
    pub complete: bool,
}

pub fn coset_keyer(g: &GroupSpec, sub: &SubgroupSpec) -> Result<Box<dyn Fn(&Element) -> Result<Word>>> {
    // For cyclic subgroups of infinite groups use root scanning; otherwise
    // enumerate H (must be finite) and take the shortlex-least of xH.
    if sub.gens.len() == 1 && !matches!(&g.backend, Backend::FiniteTable(_)) {
        let w = sub.gens[0].clone();
        let g2 = g.clone();
        Ok(Box::new(move |x: &Element| {
            Ok(coset_canonical(&g2, &w, x)?.normal)
        }))
    } else {
        let h_elements = enumerate_finite_subgroup(g, sub)?;
        let g2 = g.clone();
        Ok(Box::new(move |x: &Element| {
            let mut best: Option<Word> = None;
            for h in &h_elements {
                let c = g2.mul(x, h);
                if best.as_ref().is_none_or(|b| word::word_cmp(&c.normal, b).is_lt()) {
                    best = Some(c.normal);
                }
            }
            Ok(best.expect("subgroup contains identity"))
        }))
    }
}

/// Enumerate the left cosets of H=<sub> that meet the radius ball of the
/// Cayley graph, i.e. contain an element of word length at most `radius`.
/// `complete` is true when the left action table closes up over the set.
pub fn coset_table(
    g: &GroupSpec,
    sub: &SubgroupSpec,
    radius: usize,
    max_cosets: usize,
) -> Result<CosetTable> {
    let n = g.num_gens() as i32;
    let keyer = coset_keyer(g, sub)?;

    // BFS the ball; first visit of a coset key fixes its representative
    // (BFS explores letters in shortlex order, so reps are minimal).
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut reps: Vec<Word> = Vec::new();
    let mut rep_elts: Vec<Element> = Vec::new();
    let mut seen_elts: HashSet<Word> = HashSet::new();
    let id = g.identity();
    index.insert(keyer(&id)?, 0);
    reps.push(Vec::new());
    rep_elts.push(id.clone());
    seen_elts.insert(Vec::new());
    let mut frontier = vec![id];
    for _depth in 0..radius {
        let mut next = Vec::new();
        for cur in &frontier {
            for l in (1..=n).flat_map(|k| [k, -k]) {
                let e = g.mul(cur, &g.normalize(&[l])?);
                if !seen_elts.insert(e.normal.clone()) {
                    continue;
                }
                let key = keyer(&e)?;
                if !index.contains_key(&key) {
                    if reps.len() >= max_cosets {
                        return Err(Error::BudgetExhausted(format!(
                            "coset enumeration exceeded {max_cosets} cosets"
                        )));
                    }
                    index.insert(key, reps.len());
                    reps.push(e.normal.clone());
                    rep_elts.push(e.clone());
                }
                next.push(e);
            }
        }
        frontier = next;
    }
    // left action table; incomplete when an image leaves the enumerated set
    let mut complete = true;
    let mut action = Vec::with_capacity(reps.len());
    for e in &rep_elts {
        let mut row = Vec::with_capacity(2 * n as usize);
        for l in (1..=n).flat_map(|k| [k, -k]) {
            let img = g.mul(&g.normalize(&[l])?, e);
            let key = keyer(&img)?;
            match index.get(&key) {
                Some(&j) => row.push(Some(j)),
                None => {
                    row.push(None);
                    complete = false;
                }
            }
        }
        action.push(row);
    }
    Ok(CosetTable { reps, action, complete })
}

/// Enumerate the elements of the subgroup generated by `sub` when the ambient
/// group (or at least the closure) is finite.
pub fn enumerate_finite_subgroup(g: &GroupSpec, sub: &SubgroupSpec) -> Result<Vec<Element>> {
    if g.order().is_none() {
        // The closure might still be finite (e.g. a finite-order element in a
        // free product); try a bounded closure and fail if it doesn't stop.
        return bounded_closure(g, sub, 4096);
    }
    bounded_closure(g, sub, g.order().unwrap() + 1)
}

fn bounded_closure(g: &GroupSpec, sub: &SubgroupSpec, cap: usize) -> Result<Vec<Element>> {
    let mut seen: HashSet<Word> = HashSet::new();
    let mut out = vec![g.identity()];
    seen.insert(Vec::new());
    let gens: Vec<Element> = sub
        .gens
        .iter()
        .map(|w| g.normalize(w))
        .collect::<Result<Vec<_>>>()?;
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        i += 1;
        for s in &gens {
            for next in [g.mul(&cur, s), g.mul(&cur, &g.inv(s))] {
                if seen.insert(next.normal.clone()) {
                    if out.len() >= cap {
                        return Err(Error::BudgetExhausted(format!(
                            "subgroup closure exceeded {cap} elements"
                        )));
                    }
                    out.push(next);
                }
            }
        }
    }
    Ok(out)
}

/// Height of x above H: least k >= 1 with x^k in H, or None within the bound.
pub fn power_into_subgroup(
    g: &GroupSpec,
    sub: &SubgroupSpec,
    x: &Element,
    max_power: usize,
) -> Result<Option<usize>> {
    let mut p = x.clone();
    for k in 1..=max_power {
        if member(g, sub, &p)?.is_in() {
            return Ok(Some(k));
        }
        p = g.mul(&p, x);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stallings_commutator_subgroup_fragment() {
        // H = <a^2, b^2, ab> in F(a,b): index 2, contains ab and a^2 b^-2
        let f2 = GroupSpec::free(2, &["a", "b"]);
        let h = SubgroupSpec::new(vec![vec![1, 1], vec![2, 2], vec![1, 2]]);
        let inside = f2.parse("a a b^-1 b^-1").unwrap();
        assert!(member(&f2, &h, &inside).unwrap().is_in());
        let outside = f2.parse("a").unwrap();
        assert_eq!(member(&f2, &h, &outside).unwrap(), Membership::NotIn);
        // ab a^-1 b^-1 = (ab)(ba)^-1... commutator: a b a^-1 b^-1
        let comm = f2.parse("a b a^-1 b^-1").unwrap();
        assert!(member(&f2, &h, &comm).unwrap().is_in());
    }

    #[test]
    fn stallings_witness_checks_out() {
        let f2 = GroupSpec::free(2, &["a", "b"]);
        let gens = vec![vec![1, 1], vec![2, 2], vec![1, 2]];
        let h = SubgroupSpec::new(gens.clone());
        let x = f2.parse("a a b b").unwrap();
        if let Membership::In { witness } = member(&f2, &h, &x).unwrap() {
            // replay the witness through the generators
            let mut acc = f2.identity();
            for &l in &witness {
                let gw = &gens[(l.unsigned_abs() - 1) as usize];
                let step = if l > 0 {
                    f2.normalize(gw).unwrap()
                } else {
                    f2.inv(&f2.normalize(gw).unwrap())
                };
                acc = f2.mul(&acc, &step);
            }
            assert_eq!(acc, x);
        } else {
            panic!("expected membership");
        }
    }

    #[test]
    fn cyclic_membership_in_free_group() {
        let f2 = GroupSpec::free(2, &["a", "b"]);
        let h = SubgroupSpec::cyclic(vec![1, 2]); // <ab>
        let x = f2.parse("a b a b a b").unwrap();
        assert!(member(&f2, &h, &x).unwrap().is_in());
        let y = f2.parse("a b a").unwrap();
        assert_eq!(member(&f2, &h, &y).unwrap(), Membership::NotIn);
    }

    #[test]
    fn finite_closure_membership() {
        let z6 = GroupSpec::cyclic(6, "t");
        let h = SubgroupSpec::cyclic(vec![1, 1]); // <t^2> = {1, t^2, t^4}
        assert!(member(&z6, &h, &z6.parse("t^4").unwrap()).unwrap().is_in());
        assert_eq!(
            member(&z6, &h, &z6.parse("t^3").unwrap()).unwrap(),
            Membership::NotIn
        );
    }

    #[test]
    fn coset_table_z_in_f2() {
        // cosets of <a> in F(a,b) meeting the radius-2 ball: 9 of them
        let f2 = GroupSpec::free(2, &["a", "b"]);
        let h = SubgroupSpec::cyclic(vec![1]);
        let t = coset_table(&f2, &h, 2, 1000).unwrap();
        assert_eq!(t.reps.len(), 9);
        assert!(!t.complete); // infinite index: ball truncates
    }

    #[test]
    fn coset_table_finite_index() {
        // <t^2> in Z/6 has 2 cosets and the table closes
        let z6 = GroupSpec::cyclic(6, "t");
        let h = SubgroupSpec::cyclic(vec![1, 1]);
        let t = coset_table(&z6, &h, 6, 100).unwrap();
        assert_eq!(t.reps.len(), 2);
        assert!(t.complete);
    }

    #[test]
    fn coset_canonical_is_invariant() {
        let f2 = GroupSpec::free(2, &["a", "b"]);
        let w = vec![1]; // <a>
        let x = f2.parse("b a a a").unwrap();
        let y = f2.parse("b a^-1").unwrap(); // same coset: b a^3 <a> = b <a>
        let cx = coset_canonical(&f2, &w, &x).unwrap();
        let cy = coset_canonical(&f2, &w, &y).unwrap();
        assert_eq!(cx.normal, cy.normal);
        assert_eq!(cx.normal, vec![2]); // plain b is least
    }

    #[test]
    fn power_into_cyclic() {
        let f1 = GroupSpec::free(1, &["a"]);
        let h = SubgroupSpec::cyclic(vec![1, 1, 1]); // <a^3>
        let a = f1.parse("a").unwrap();
        assert_eq!(power_into_subgroup(&f1, &h, &a, 10).unwrap(), Some(3));
    }
}
