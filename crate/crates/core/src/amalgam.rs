//! Exact normal forms in an amalgamated free product G₀ ∗_H G₁.
//!
//! Every element is written uniquely as c₁ c₂ … cₙ · h where the cᵢ are
//! nontrivial canonical representatives of left H-cosets, alternating between
//! the two factors, and h ∈ H. The transversal is the shortlex-least element
//! of each coset, so equality is structural equality of normal forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::word::{self, Word};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Amalgam {
    pub sides: [GroupSpec; 2],
    /// the edge group H
    pub edge: GroupSpec,
    /// embed[s][k] = image in side s of generator k+1 of H
    pub embed: [Vec<Word>; 2],
}

/// Normal form: alternating nontrivial coset representatives plus an H-tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmalgamElt {
    /// (side, normal word of the representative in that side's group)
    pub syllables: Vec<(usize, Word)>,
    /// tail in the edge group's normal form
    pub tail: Word,
}

impl AmalgamElt {
    pub fn identity() -> Self {
        AmalgamElt {
            syllables: Vec::new(),
            tail: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && self.tail.is_empty()
    }

    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }
}

/// One input item for the normalizer: a factor syllable or an edge element.
#[derive(Debug, Clone)]
pub enum Item {
    Syl(usize, Word),
    Edge(Word),
}

impl Amalgam {
    pub fn new(
        sides: [GroupSpec; 2],
        edge: GroupSpec,
        embed: [Vec<Word>; 2],
    ) -> Result<Self> {
        let a = Amalgam { sides, edge, embed };
        a.validate()?;
        Ok(a)
    }

    /// Check the embeddings are injective homomorphisms where decidable.
    pub fn validate(&self) -> Result<()> {
        for s in 0..2 {
            if self.embed[s].len() != self.edge.num_gens() {
                return Err(Error::Invalid(format!(
                    "side {s} embedding has wrong number of generator images"
                )));
            }
            if let Some(elts) = self.edge.elements() {
                let mut images: Vec<Element> = Vec::new();
                for e in &elts {
                    let img = self.iota(s, &e.normal)?;
                    for prev in &images {
                        if self.sides[s].equal(prev, &img).is_equal() {
                            return Err(Error::Invalid(format!(
                                "edge group does not embed injectively into side {s}"
                            )));
                        }
                    }
                    images.push(img);
                }
                // homomorphism: the image of a product is the product of images
                for a in &elts {
                    for b in &elts {
                        let ab = self.edge.mul(a, b);
                        let lhs = self.sides[s].mul(
                            &self.iota(s, &a.normal)?,
                            &self.iota(s, &b.normal)?,
                        );
                        let rhs = self.iota(s, &ab.normal)?;
                        if !self.sides[s].equal(&lhs, &rhs).is_equal() {
                            return Err(Error::Invalid(format!(
                                "edge embedding into side {s} is not a homomorphism"
                            )));
                        }
                    }
                }
            } else {
                // free edge group: each generator must have a nontrivial image
                for w in &self.embed[s] {
                    if self.sides[s].elt(w)?.normal.is_empty() {
                        return Err(Error::Invalid(format!(
                            "edge generator maps to identity in side {s}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Map a word in the edge group's generators into side s.
    pub fn iota(&self, s: usize, h: &[i32]) -> Result<Element> {
        let mut out: Word = Vec::new();
        for &l in h {
            let img = self.embed[s]
                .get((l.unsigned_abs() - 1) as usize)
                .ok_or_else(|| Error::UnknownSymbol(format!("edge generator {l}")))?;
            if l > 0 {
                out.extend_from_slice(img);
            } else {
                out.extend(word::inverse(img));
            }
        }
        self.sides[s].normalize(&out)
    }

    /// Decompose g ∈ Gₛ as rep · ι(h) with rep the shortlex-least element of
    /// the coset g·ι(H); returns (rep, h) with h in the edge group.
    pub fn coset_decompose(&self, s: usize, g: &Element) -> Result<(Element, Word)> {
        let side = &self.sides[s];
        let mut best: Option<(Element, Word)> = None;
        let consider = |rep: Element, h: Word, best: &mut Option<(Element, Word)>| {
            let better = match best {
                None => true,
                Some((b, _)) => word::word_cmp(&rep.normal, &b.normal) == std::cmp::Ordering::Less,
            };
            if better {
                *best = Some((rep, h));
            }
        };
        if let Some(hs) = self.edge.elements() {
            for h in hs {
                let hinv = self.edge.inv(&h);
                let rep = side.mul(g, &self.iota(s, &hinv.normal)?);
                consider(rep, h.normal.clone(), &mut best);
            }
        } else if self.edge.num_gens() == 1 {
            // infinite cyclic edge group: only boundedly many exponents can
            // shorten the representative
            let w = self.iota(s, &[1])?;
            if w.normal.is_empty() {
                return Err(Error::Invalid("edge generator has trivial image".into()));
            }
            let bound = (2 * g.normal.len() / w.normal.len() + 2) as i64;
            for k in -bound..=bound {
                let mut pw = side.identity();
                let step = if k >= 0 { side.inv(&w) } else { w.clone() };
                for _ in 0..k.unsigned_abs() {
                    pw = side.mul(&pw, &step);
                }
                let rep = side.mul(g, &pw);
                let h: Word = if k >= 0 {
                    vec![1; k as usize]
                } else {
                    vec![-1; (-k) as usize]
                };
                consider(rep, h, &mut best);
            }
        } else {
            return Err(Error::UndecidableMembership(
                "edge group must be finite or infinite cyclic".into(),
            ));
        }
        let (rep, h) = best.unwrap();
        Ok((rep, self.edge.normalize(&h)?.normal))
    }

    /// Normalize a sequence of items into the unique normal form.
    pub fn normalize(&self, items: &[Item]) -> Result<AmalgamElt> {
        let mut emitted: Vec<(usize, Element)> = Vec::new();
        // pending edge element sitting to the left of whatever comes next
        let mut carry = self.edge.identity();
        for item in items {
            match item {
                Item::Edge(h) => {
                    carry = self.edge.mul(&carry, &self.edge.elt(h)?);
                }
                Item::Syl(s, w) => {
                    let s = *s;
                    if s > 1 {
                        return Err(Error::Invalid("side index must be 0 or 1".into()));
                    }
                    let c = std::mem::replace(&mut carry, self.edge.identity());
                    let mut g =
                        self.sides[s].mul(&self.iota(s, &c.normal)?, &self.sides[s].elt(w)?);
                    while let Some(&(ps, _)) = emitted.last() {
                        if ps != s {
                            break;
                        }
                        let (_, pe) = emitted.pop().unwrap();
                        g = self.sides[s].mul(&pe, &g);
                    }
                    let (rep, h) = self.coset_decompose(s, &g)?;
                    carry = self.edge.elt(&h)?;
                    if !rep.normal.is_empty() {
                        emitted.push((s, rep));
                    }
                }
            }
        }
        Ok(AmalgamElt {
            syllables: emitted.into_iter().map(|(s, e)| (s, e.normal)).collect(),
            tail: carry.normal,
        })
    }

    fn items_of(&self, a: &AmalgamElt) -> Vec<Item> {
        let mut items: Vec<Item> = a
            .syllables
            .iter()
            .map(|(s, w)| Item::Syl(*s, w.clone()))
            .collect();
        items.push(Item::Edge(a.tail.clone()));
        items
    }

    pub fn from_word(&self, side: usize, w: &[i32]) -> Result<AmalgamElt> {
        self.normalize(&[Item::Syl(side, w.to_vec())])
    }

    pub fn from_edge(&self, h: &[i32]) -> Result<AmalgamElt> {
        self.normalize(&[Item::Edge(h.to_vec())])
    }

    pub fn mul(&self, a: &AmalgamElt, b: &AmalgamElt) -> Result<AmalgamElt> {
        let mut items = self.items_of(a);
        items.extend(self.items_of(b));
        self.normalize(&items)
    }

    pub fn inv(&self, a: &AmalgamElt) -> Result<AmalgamElt> {
        let mut items = vec![Item::Edge(word::inverse(&a.tail))];
        for (s, w) in a.syllables.iter().rev() {
            items.push(Item::Syl(*s, word::inverse(w)));
        }
        self.normalize(&items)
    }

    pub fn equal(&self, a: &AmalgamElt, b: &AmalgamElt) -> bool {
        a == b
    }

    /// Canonical key of the left coset g·Gₛ: drop the tail (it lies in H ⊆ Gₛ)
    /// and a trailing syllable from side s.
    pub fn vertex_coset_key(&self, g: &AmalgamElt, s: usize) -> Vec<(usize, Word)> {
        let mut syl = g.syllables.clone();
        if let Some(&(ls, _)) = syl.last() {
            if ls == s {
                syl.pop();
            }
        }
        syl
    }

    /// Canonical key of the left coset g·H: the full syllable list.
    pub fn edge_coset_key(&self, g: &AmalgamElt) -> Vec<(usize, Word)> {
        g.syllables.clone()
    }

    pub fn format(&self, a: &AmalgamElt) -> String {
        if a.is_identity() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = a
            .syllables
            .iter()
            .map(|(s, w)| word::format_word(w, &self.sides[*s].gen_names()))
            .collect();
        if !a.tail.is_empty() {
            parts.push(word::format_word(&a.tail, &self.edge.gen_names()));
        }
        parts.join("·")
    }

    /// Replay an amalgam element as an element of another group G via images
    /// of each side's generators and of the edge generators.
    pub fn eval_in(
        &self,
        g: &GroupSpec,
        side_images: [&[Word]; 2],
        edge_images: &[Word],
        a: &AmalgamElt,
    ) -> Result<Element> {
        let map = |w: &[i32], imgs: &[Word]| -> Result<Word> {
            let mut out = Vec::new();
            for &l in w {
                let img = imgs
                    .get((l.unsigned_abs() - 1) as usize)
                    .ok_or_else(|| Error::UnknownSymbol(format!("generator {l}")))?;
                if l > 0 {
                    out.extend_from_slice(img.as_slice());
                } else {
                    out.extend(word::inverse(img));
                }
            }
            Ok(out)
        };
        let mut acc = g.identity();
        for (s, w) in &a.syllables {
            acc = g.mul(&acc, &g.elt(&map(w, side_images[*s])?)?);
        }
        acc = g.mul(&acc, &g.elt(&map(&a.tail, edge_images)?)?);
        Ok(acc)
    }
}

/// ℤ/m ∗_{ℤ/d} ℤ/n where d divides both m and n; the edge generator maps to
/// x^(m/d) and y^(n/d).
pub fn cyclic_amalgam(m: usize, d: usize, n: usize) -> Result<Amalgam> {
    if d == 0 || m % d != 0 || n % d != 0 {
        return Err(Error::Invalid(format!(
            "edge order {d} must divide both {m} and {n}"
        )));
    }
    Amalgam::new(
        [GroupSpec::cyclic(m, "x"), GroupSpec::cyclic(n, "y")],
        GroupSpec::cyclic(d, "z"),
        [vec![vec![1; m / d]], vec![vec![1; n / d]]],
    )
}

/// F₂ ∗_ℤ F₂ with the edge generator mapping to the commutator [a,b] on each
/// side: the fundamental group of a genus-2 surface split along a separating
/// curve.
pub fn genus2_amalgam() -> Result<Amalgam> {
    let comm = vec![1, 2, -1, -2];
    Amalgam::new(
        [
            GroupSpec::free(2, &["a", "b"]),
            GroupSpec::free(2, &["c", "d"]),
        ],
        GroupSpec::free(1, &["g"]),
        [vec![comm.clone()], vec![comm]],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_4_2_6_normal_forms() {
        let am = cyclic_amalgam(4, 2, 6).unwrap();
        // x^2 = y^3 = edge generator
        let x2 = am.from_word(0, &[1, 1]).unwrap();
        let y3 = am.from_word(1, &[1, 1, 1]).unwrap();
        assert_eq!(x2, y3);
        assert!(x2.syllables.is_empty());
        assert_eq!(x2.tail, vec![1]);
        // x has infinite order in the amalgam? no: x^4 = 1
        let x = am.from_word(0, &[1]).unwrap();
        let mut p = AmalgamElt::identity();
        for _ in 0..4 {
            p = am.mul(&p, &x).unwrap();
        }
        assert!(p.is_identity());
        // but xy has infinite order: syllable length grows
        let y = am.from_word(1, &[1]).unwrap();
        let xy = am.mul(&x, &y).unwrap();
        let mut q = AmalgamElt::identity();
        for k in 1..=5 {
            q = am.mul(&q, &xy).unwrap();
            assert_eq!(q.syllable_length(), 2 * k, "power {k}");
        }
    }

    #[test]
    fn inverse_and_associativity() {
        let am = cyclic_amalgam(4, 2, 6).unwrap();
        let x = am.from_word(0, &[1]).unwrap();
        let y = am.from_word(1, &[1, 1]).unwrap();
        let z = am.from_word(0, &[1, 1, 1]).unwrap();
        let xy = am.mul(&x, &y).unwrap();
        let lhs = am.mul(&xy, &z).unwrap();
        let yz = am.mul(&y, &z).unwrap();
        let rhs = am.mul(&x, &yz).unwrap();
        assert_eq!(lhs, rhs);
        let inv = am.inv(&lhs).unwrap();
        assert!(am.mul(&lhs, &inv).unwrap().is_identity());
        assert!(am.mul(&inv, &lhs).unwrap().is_identity());
    }

    #[test]
    fn genus2_commutator_is_central_in_no_side() {
        let am = genus2_amalgam().unwrap();
        let a = am.from_word(0, &[1]).unwrap();
        let c = am.from_word(1, &[1]).unwrap();
        // the two sides only meet along <[a,b]>
        let ac = am.mul(&a, &c).unwrap();
        assert_eq!(ac.syllable_length(), 2);
        let comm_left = am.from_word(0, &[1, 2, -1, -2]).unwrap();
        let comm_right = am.from_word(1, &[1, 2, -1, -2]).unwrap();
        let comm_edge = am.from_edge(&[1]).unwrap();
        assert_eq!(comm_left, comm_edge);
        assert_eq!(comm_right, comm_edge);
        assert!(comm_left.syllables.is_empty());
        // the edge element has infinite order: its powers pile up in the tail
        let mut p = AmalgamElt::identity();
        for k in 1..=4 {
            p = am.mul(&p, &comm_edge).unwrap();
            assert_eq!(p.tail, vec![1; k]);
        }
        // and a does not commute with it
        let lhs = am.mul(&a, &comm_edge).unwrap();
        let rhs = am.mul(&comm_edge, &a).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn genus2_mixed_word_roundtrip() {
        let am = genus2_amalgam().unwrap();
        let g = am
            .normalize(&[
                Item::Syl(0, vec![1, 2]),
                Item::Syl(1, vec![-1]),
                Item::Syl(0, vec![2, 2]),
                Item::Edge(vec![1, 1]),
            ])
            .unwrap();
        let ginv = am.inv(&g).unwrap();
        assert!(am.mul(&g, &ginv).unwrap().is_identity());
        // renormalizing a normal form is a fixed point
        let items: Vec<Item> = g
            .syllables
            .iter()
            .map(|(s, w)| Item::Syl(*s, w.clone()))
            .chain(std::iter::once(Item::Edge(g.tail.clone())))
            .collect();
        assert_eq!(am.normalize(&items).unwrap(), g);
    }

    #[test]
    fn vertex_coset_keys_are_invariant() {
        let am = cyclic_amalgam(4, 2, 6).unwrap();
        let x = am.from_word(0, &[1]).unwrap();
        let y = am.from_word(1, &[1]).unwrap();
        let g = am.mul(&x, &y).unwrap();
        // right-multiplying by anything in side 1 keeps the G1-coset key
        let k0 = am.vertex_coset_key(&g, 1);
        for e in 0..6 {
            let r = am.mul(&g, &am.from_word(1, &vec![1; e]).unwrap()).unwrap();
            assert_eq!(am.vertex_coset_key(&r, 1), k0);
        }
        // and x g is in a different G1-coset
        let xg = am.mul(&x, &g).unwrap();
        assert_ne!(am.vertex_coset_key(&xg, 1), k0);
    }

    #[test]
    fn bad_edge_embedding_rejected() {
        // Z/2 cannot embed into Z/3
        assert!(Amalgam::new(
            [GroupSpec::cyclic(4, "x"), GroupSpec::cyclic(3, "y")],
            GroupSpec::cyclic(2, "z"),
            [vec![vec![1, 1]], vec![vec![1]]],
        )
        .is_err());
    }
}
