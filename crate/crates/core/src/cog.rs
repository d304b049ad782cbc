//! Complexes of groups: local groups on scwol objects, injections ψ_a on
//! arrows, twisting elements g_{a,b} on composable pairs, and the two cocycle
//! identities. Also: inducing a complex of groups from an honest finite group
//! action on a cell complex.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::group::{Backend, Element, Eq3, FiniteTable, GroupSpec};
use crate::presentation::Presentation;
use crate::scwol::{self, Scwol};
use crate::subgroup;
use crate::word::{self, Word};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexOfGroups {
    pub scwol: Scwol,
    pub local_groups: Vec<GroupSpec>,
    /// psi[a][k] = image in G_{t(a)} of generator k+1 of G_{i(a)}
    pub psi: Vec<Vec<Word>>,
    /// twisting element per composable pair, as a word in G_{t(a)}
    pub twist: HashMap<(usize, usize), Word>,
    /// maximal tree: arrow ids spanning the underlying graph
    pub tree: Vec<usize>,
}

impl ComplexOfGroups {
    /// Apply ψ_a to a word in the generators of G_{i(a)}.
    pub fn apply_psi(&self, a: usize, w: &[i32]) -> Result<Element> {
        let target = &self.local_groups[self.scwol.t(a)];
        let images = &self.psi[a];
        let mut out: Word = Vec::new();
        for &l in w {
            let idx = (l.unsigned_abs() - 1) as usize;
            let img = images.get(idx).ok_or_else(|| {
                Error::UnknownSymbol(format!("psi on arrow {a} lacks generator {}", idx + 1))
            })?;
            if l > 0 {
                out.extend_from_slice(img);
            } else {
                out.extend(word::inverse(img));
            }
        }
        target.normalize(&out)
    }

    pub fn twist_elt(&self, a: usize, b: usize) -> Result<Element> {
        let target = &self.local_groups[self.scwol.t(a)];
        match self.twist.get(&(a, b)) {
            Some(w) => target.normalize(w),
            None => Ok(target.identity()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairViolation {
    pub a: usize,
    pub b: usize,
    pub generator: i32,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pair_violations: Vec<PairViolation>,
    pub triple_violations: Vec<TripleViolation>,
    pub psi_failures: Vec<String>,
    pub tree_ok: bool,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.pair_violations.is_empty()
            && self.triple_violations.is_empty()
            && self.psi_failures.is_empty()
            && self.tree_ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "valid": self.valid(),
            "pair_violations": self.pair_violations,
            "triple_violations": self.triple_violations,
            "psi_failures": self.psi_failures,
            "tree_ok": self.tree_ok,
        })
    }
}

/// Check both cocycle identities, ψ injectivity where decidable, and the
/// maximal tree. Every violation is reported with both evaluated sides.
pub fn validate_cocycles(cog: &ComplexOfGroups) -> Result<ValidationReport> {
    let s = &cog.scwol;
    s.validate()?;
    let mut report = ValidationReport {
        pair_violations: Vec::new(),
        triple_violations: Vec::new(),
        psi_failures: Vec::new(),
        tree_ok: s.is_spanning_tree(&cog.tree),
    };
    // psi injectivity, where we can decide it
    for a in 0..s.num_arrows() {
        let src = &cog.local_groups[s.i(a)];
        let tgt = &cog.local_groups[s.t(a)];
        if let Some(elts) = src.elements() {
            let mut images: Vec<Element> = Vec::new();
            for e in &elts {
                let img = cog.apply_psi(a, &e.normal)?;
                for prev in &images {
                    match tgt.equal(prev, &img) {
                        Eq3::Equal => {
                            report.psi_failures.push(format!(
                                "psi on arrow {a} is not injective: two of {} elements collide",
                                elts.len()
                            ));
                        }
                        Eq3::NotEqual => {}
                        Eq3::Unknown => {
                            return Err(Error::UndecidableEquality(format!(
                                "cannot decide psi injectivity on arrow {a}"
                            )))
                        }
                    }
                }
                images.push(img);
            }
            // well-definedness: substitution always extends off the free
            // group, so the source relations must map to relations
            for (x, ex) in elts.iter().enumerate() {
                for (y, ey) in elts.iter().enumerate() {
                    let prod = src.mul(ex, ey);
                    let pi = elts.iter().position(|e| {
                        matches!(src.equal(e, &prod), Eq3::Equal)
                    });
                    let Some(pi) = pi else { continue };
                    let lhs = tgt.mul(&images[x], &images[y]);
                    match tgt.equal(&lhs, &images[pi]) {
                        Eq3::Equal => {}
                        Eq3::NotEqual => {
                            report.psi_failures.push(format!(
                                "psi on arrow {a} is not a homomorphism at element pair ({x},{y})"
                            ));
                        }
                        Eq3::Unknown => {
                            return Err(Error::UndecidableEquality(format!(
                                "cannot decide psi homomorphism on arrow {a}"
                            )))
                        }
                    }
                }
            }
        } else if let (Backend::Free(f), Backend::Free(_)) = (&src.backend, &tgt.backend) {
            // free-to-free: images must generate a subgroup of full rank
            let rank = subgroup::free_subgroup_rank(&cog.psi[a]);
            if rank != f.rank {
                report.psi_failures.push(format!(
                    "psi on arrow {a}: images generate rank {rank}, expected {}",
                    f.rank
                ));
            }
        }
    }
    // cocycle (a): Ad(g_{a,b}) psi_{ab} = psi_a psi_b on generators of G_{i(b)}
    for (a, b) in s.composable_pairs() {
        let ab = s.compose(a, b).expect("validated scwol");
        let tgt = &cog.local_groups[s.t(a)];
        let g_ab = cog.twist_elt(a, b)?;
        let src = &cog.local_groups[s.i(b)];
        for k in 1..=(src.num_gens() as i32) {
            let via_ab = cog.apply_psi(ab, &[k])?;
            let lhs = tgt.mul(&tgt.mul(&g_ab, &via_ab), &tgt.inv(&g_ab));
            let via_b = cog.apply_psi(b, &[k])?;
            let rhs = cog.apply_psi(a, &via_b.normal)?;
            match tgt.equal(&lhs, &rhs) {
                Eq3::Equal => {}
                Eq3::NotEqual => report.pair_violations.push(PairViolation {
                    a,
                    b,
                    generator: k,
                    lhs: word::format_word(&lhs.normal, &tgt.gen_names()),
                    rhs: word::format_word(&rhs.normal, &tgt.gen_names()),
                }),
                Eq3::Unknown => {
                    return Err(Error::UndecidableEquality(format!(
                        "cocycle (a) undecidable on pair ({a},{b})"
                    )))
                }
            }
        }
    }
    // cocycle (b): psi_a(g_{b,c}) g_{a,bc} = g_{a,b} g_{ab,c}
    for (a, b, c) in s.composable_triples() {
        let ab = s.compose(a, b).expect("validated scwol");
        let bc = s.compose(b, c).expect("validated scwol");
        let tgt = &cog.local_groups[s.t(a)];
        let g_bc = cog.twist_elt(b, c)?;
        let lhs = tgt.mul(&cog.apply_psi(a, &g_bc.normal)?, &cog.twist_elt(a, bc)?);
        let rhs = tgt.mul(&cog.twist_elt(a, b)?, &cog.twist_elt(ab, c)?);
        match tgt.equal(&lhs, &rhs) {
            Eq3::Equal => {}
            Eq3::NotEqual => report.triple_violations.push(TripleViolation {
                a,
                b,
                c,
                lhs: word::format_word(&lhs.normal, &tgt.gen_names()),
                rhs: word::format_word(&rhs.normal, &tgt.gen_names()),
            }),
            Eq3::Unknown => {
                return Err(Error::UndecidableEquality(format!(
                    "cocycle (b) undecidable on triple ({a},{b},{c})"
                )))
            }
        }
    }
    Ok(report)
}

/// The fundamental group presentation: generators of each local group plus a
/// symbol a⁺ per arrow, with the five relator families (a⁻ is the inverse
/// letter of a⁺, so the inverse-pair family is implicit).
pub fn fundamental_group_presentation(cog: &ComplexOfGroups) -> Result<Presentation> {
    let s = &cog.scwol;
    if !s.is_spanning_tree(&cog.tree) {
        return Err(Error::InvalidTree(format!(
            "{:?} is not a spanning tree of the underlying graph",
            cog.tree
        )));
    }
    let mut gen_names: Vec<String> = Vec::new();
    let mut offset: Vec<i32> = Vec::new(); // letter offset per object
    let mut presentations = Vec::new();
    for (oi, g) in cog.local_groups.iter().enumerate() {
        offset.push(gen_names.len() as i32);
        let (names, rels) = g.presentation();
        gen_names.extend(
            names
                .iter()
                .map(|n| format!("{}.{}", s.object_names[oi], n)),
        );
        presentations.push(rels);
    }
    let arrow_offset = gen_names.len() as i32;
    for a in 0..s.num_arrows() {
        gen_names.push(format!("a{a}+"));
    }
    let shift = |w: &[i32], off: i32| -> Word {
        w.iter()
            .map(|&l| if l > 0 { l + off } else { l - off })
            .collect()
    };
    let arrow_letter = |a: usize| arrow_offset + a as i32 + 1;

    let mut relators: Vec<Word> = Vec::new();
    // 1. local group relators
    for (oi, rels) in presentations.iter().enumerate() {
        for r in rels {
            relators.push(shift(r, offset[oi]));
        }
    }
    // 3. a+ b+ = g_{a,b} (ab)+
    for (a, b) in s.composable_pairs() {
        let ab = s.compose(a, b).expect("valid scwol");
        let g_ab = cog.twist_elt(a, b)?;
        let mut r = vec![arrow_letter(a), arrow_letter(b), -arrow_letter(ab)];
        r.extend(word::inverse(&shift(&g_ab.normal, offset[s.t(a)])));
        relators.push(word::free_reduce(&r));
    }
    // 4. psi_a(g) = a+ g a-
    for a in 0..s.num_arrows() {
        let src = &cog.local_groups[s.i(a)];
        for k in 1..=(src.num_gens() as i32) {
            let img = cog.apply_psi(a, &[k])?;
            let mut r = vec![arrow_letter(a), k + offset[s.i(a)], -arrow_letter(a)];
            r.extend(word::inverse(&shift(&img.normal, offset[s.t(a)])));
            relators.push(word::free_reduce(&r));
        }
    }
    // 5. tree arrows die
    let mut tree_killed = Vec::new();
    for &a in &cog.tree {
        relators.push(vec![arrow_letter(a)]);
        tree_killed.push(format!("a{a}+"));
    }
    relators.retain(|r| !r.is_empty());
    Ok(Presentation {
        gen_names,
        relators,
        tree_killed,
    })
}

/// A finite group action on a cell complex: for each group generator, the
/// induced permutation of cells.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexAction {
    pub complex: CellComplex,
    pub group: GroupSpec,
    /// generator index -> cell permutation
    pub gen_perms: Vec<Vec<usize>>,
}

/// Everything produced when inducing a complex of groups from an action:
/// the complex of groups itself plus the bookkeeping needed to compare its
/// development back against the original complex.
#[derive(Debug, Clone)]
pub struct InducedComplex {
    pub cog: ComplexOfGroups,
    pub ambient: FiniteTable,
    /// permutation of cells per ambient element
    pub elt_perms: Vec<Vec<usize>>,
    /// chosen lift cell per quotient object
    pub lifts: Vec<usize>,
    /// chosen h_a per arrow (ambient element index)
    pub h: Vec<usize>,
    /// stabilizer elements (ambient indices) per quotient object
    pub stabs: Vec<Vec<usize>>,
    /// orbit (quotient object) of each cell
    pub orbit_of: Vec<usize>,
    pub quotient: CellComplex,
    /// the complex the action lived on
    pub complex: CellComplex,
}

/// Transport a permutation of a scwol's objects to the cells of its
/// geometric realization, via the realization cell keys.
pub fn transport_permutation(
    s: &Scwol,
    keys: &[scwol::CellKey],
    obj_perm: &[usize],
) -> Result<Vec<usize>> {
    use scwol::CellKey;
    let arrow_of: HashMap<(usize, usize), usize> = (0..s.num_arrows())
        .map(|a| ((s.i(a), s.t(a)), a))
        .collect();
    let arrow_img = |a: usize| -> Result<usize> {
        arrow_of
            .get(&(obj_perm[s.i(a)], obj_perm[s.t(a)]))
            .copied()
            .ok_or_else(|| Error::ActionViolation(format!("permutation breaks arrow {a}")))
    };
    let index: HashMap<&CellKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    keys.iter()
        .map(|k| {
            let img = match k {
                CellKey::Object(o) => CellKey::Object(obj_perm[*o]),
                CellKey::Chain(ch) => {
                    CellKey::Chain(ch.iter().map(|&a| arrow_img(a)).collect::<Result<Vec<_>>>()?)
                }
            };
            index
                .get(&img)
                .copied()
                .ok_or_else(|| Error::ActionViolation("permuted cell key missing".into()))
        })
        .collect()
}

impl ComplexAction {
    fn table(&self) -> Result<&FiniteTable> {
        match &self.group.backend {
            Backend::FiniteTable(t) => Ok(t),
            _ => Err(Error::Invalid("action group must be a finite table".into())),
        }
    }

    /// Permutations for every group element, via its canonical word.
    pub fn element_perms(&self) -> Result<Vec<Vec<usize>>> {
        let t = self.table()?;
        let n = self.complex.num_cells();
        if self.gen_perms.len() != t.gens.len()
            || self.gen_perms.iter().any(|p| p.len() != n)
        {
            return Err(Error::Invalid("generator permutation shape mismatch".into()));
        }
        let inv_perm = |p: &[usize]| -> Vec<usize> {
            let mut q = vec![0; p.len()];
            for (i, &x) in p.iter().enumerate() {
                q[x] = i;
            }
            q
        };
        let mut perms = Vec::with_capacity(t.order());
        for x in 0..t.order() {
            let mut p: Vec<usize> = (0..n).collect();
            for &l in t.canonical_words[x].iter().rev() {
                let gp = &self.gen_perms[(l.unsigned_abs() - 1) as usize];
                let step = if l < 0 { inv_perm(gp) } else { gp.clone() };
                // left action: (xy)(c) = x(y(c)); canonical word reads left
                // to right, so apply letters right-to-left onto p
                p = p.iter().map(|&c| step[c]).collect();
            }
            perms.push(p);
        }
        Ok(perms)
    }

    /// Structural checks: permutations respect dimension and incidence, the
    /// group relations hold, and stabilizers fix cells pointwise (the
    /// barycentric convention).
    pub fn validate(&self) -> Result<Vec<Vec<usize>>> {
        self.complex.validate()?;
        let t = self.table()?;
        let perms = self.element_perms()?;
        let n = self.complex.num_cells();
        // group homomorphism: perm(x) . perm(y) == perm(xy)
        for x in 0..t.order() {
            for y in 0..t.order() {
                let xy = t.mul[x][y];
                for c in 0..n {
                    if perms[x][perms[y][c]] != perms[xy][c] {
                        return Err(Error::ActionViolation(format!(
                            "permutations do not compose: elements {x},{y} on cell {c}"
                        )));
                    }
                }
            }
        }
        for (x, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            for c in 0..n {
                let img = p[c];
                if seen[img] {
                    return Err(Error::ActionViolation(format!(
                        "element {x} is not a permutation"
                    )));
                }
                seen[img] = true;
                if self.complex.cells[img].dim != self.complex.cells[c].dim {
                    return Err(Error::ActionViolation(format!(
                        "element {x} changes dimension of cell {c}"
                    )));
                }
                // incidence: image of faces == faces of image
                let mut fi: Vec<usize> =
                    self.complex.cells[c].faces.iter().map(|&f| p[f]).collect();
                fi.sort_unstable();
                let mut ff = self.complex.cells[img].faces.clone();
                ff.sort_unstable();
                if fi != ff {
                    return Err(Error::ActionViolation(format!(
                        "element {x} breaks incidence at cell {c}"
                    )));
                }
            }
            // pointwise-stabilizer convention
            for c in 0..n {
                if p[c] == c {
                    for f in self.complex.strict_faces(c) {
                        if p[f] != f {
                            return Err(Error::ActionViolation(format!(
                                "element {x} fixes cell {c} but moves its face {f}; \
                                 barycentrically subdivide first"
                            )));
                        }
                    }
                }
            }
        }
        Ok(perms)
    }
}

/// Induce a complex of groups from a finite group action following the
/// standard recipe: choose lifts of quotient cells (h_a = 1 along a spanning
/// tree), set G_τ = Stab(lift), ψ_a = conjugation by h_a, and
/// g_{a,b} = h_a h_b h_{ab}⁻¹. A seed randomizes the non-tree h_a choices.
pub fn induce_from_action(action: &ComplexAction, seed: Option<u64>) -> Result<InducedComplex> {
    let t = action.table()?.clone();
    let perms = action.validate()?;
    let n = action.complex.num_cells();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);

    // orbits and the quotient complex
    let mut orbit_rep = vec![usize::MAX; n];
    for c in 0..n {
        orbit_rep[c] = perms.iter().map(|p| p[c]).min().unwrap();
    }
    let mut reps: Vec<usize> = (0..n).filter(|&c| orbit_rep[c] == c).collect();
    reps.sort_unstable();
    let obj_of_rep: HashMap<usize, usize> =
        reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let orbit_of: Vec<usize> = (0..n).map(|c| obj_of_rep[&orbit_rep[c]]).collect();
    let mut quotient = CellComplex::new();
    for &r in &reps {
        let faces: Vec<usize> = action.complex.cells[r]
            .faces
            .iter()
            .map(|&f| orbit_of[f])
            .collect();
        let mut dedup = faces.clone();
        dedup.sort_unstable();
        dedup.dedup();
        if dedup.len() != faces.len() {
            return Err(Error::NonRegularComplex(
                "quotient identifies two faces of one cell; subdivide first".into(),
            ));
        }
        quotient.add_cell(format!("o{}", action.complex.cells[r].name), // orbit name
            action.complex.cells[r].dim, faces);
    }
    quotient.validate()?;
    let y = scwol::scwolify(&quotient)?;

    // lifts: BFS along a spanning tree of 𝒴, h_a = 1 on tree arrows
    let tree = y.spanning_tree()?;
    let mut lifts = vec![usize::MAX; y.num_objects()];
    lifts[0] = reps[0];
    let mut h = vec![usize::MAX; y.num_arrows()];
    // face of cell `c` lying in quotient object `obj`
    let face_in_orbit = |c: usize, obj: usize| -> Option<usize> {
        action
            .complex
            .strict_faces(c)
            .into_iter()
            .find(|&f| orbit_of[f] == obj)
    };
    let mut progress = true;
    while progress {
        progress = false;
        for &a in &tree {
            let (ia, ta) = (y.i(a), y.t(a));
            if lifts[ia] != usize::MAX && lifts[ta] == usize::MAX {
                lifts[ta] = face_in_orbit(lifts[ia], ta)
                    .ok_or_else(|| Error::ActionViolation(format!("no face lift on arrow {a}")))?;
                h[a] = t.identity;
                progress = true;
            } else if lifts[ta] != usize::MAX && lifts[ia] == usize::MAX {
                // pick the least cell in orbit ia having lifts[ta] as a face
                let cand = (0..n)
                    .filter(|&c| orbit_of[c] == ia)
                    .find(|&c| face_in_orbit(c, ta) == Some(lifts[ta]));
                lifts[ia] = cand.ok_or_else(|| {
                    Error::ActionViolation(format!("no co-face lift on arrow {a}"))
                })?;
                h[a] = t.identity;
                progress = true;
            }
        }
    }
    if lifts.iter().any(|&l| l == usize::MAX) {
        return Err(Error::Disconnected("quotient scwol".into()));
    }
    // remaining arrows: h_a moves the lifted arrow's target onto the chosen lift
    for a in 0..y.num_arrows() {
        if h[a] != usize::MAX {
            // a tree arrow; its lifted target may still disagree with the
            // chosen lift when both endpoints were lifted via other arrows
            let f = face_in_orbit(lifts[y.i(a)], y.t(a)).unwrap();
            if f == lifts[y.t(a)] {
                continue;
            }
            h[a] = usize::MAX;
        }
        let f = face_in_orbit(lifts[y.i(a)], y.t(a))
            .ok_or_else(|| Error::ActionViolation(format!("no lifted face for arrow {a}")))?;
        let mut candidates: Vec<usize> = (0..t.order())
            .filter(|&x| perms[x][f] == lifts[y.t(a)])
            .collect();
        if candidates.is_empty() {
            return Err(Error::ActionViolation(format!(
                "no group element aligns arrow {a}"
            )));
        }
        h[a] = match &mut rng {
            Some(r) => candidates[r.gen_range(0..candidates.len())],
            None => {
                candidates.sort_by(|&x, &y2| {
                    word::word_cmp(&t.canonical_words[x], &t.canonical_words[y2])
                });
                candidates[0]
            }
        };
    }

    // stabilizers as finite tables
    let mut stabs = Vec::new();
    let mut local_groups = Vec::new();
    for &l in &lifts {
        let members: Vec<usize> = (0..t.order()).filter(|&x| perms[x][l] == l).collect();
        let table = sub_table(&t, &members)?;
        stabs.push(members);
        local_groups.push(GroupSpec::finite(table));
    }

    // psi and twists
    let letter_of = |obj: usize, ambient_elt: usize| -> Result<Word> {
        if ambient_elt == t.identity {
            return Ok(Vec::new());
        }
        let pos = stabs[obj]
            .iter()
            .position(|&m| m == ambient_elt)
            .ok_or_else(|| {
                Error::ActionViolation(format!(
                    "element {ambient_elt} expected in stabilizer of object {obj}"
                ))
            })?;
        // generators of the sub table are its non-identity elements in order
        let id_pos = stabs[obj].iter().position(|&m| m == t.identity).unwrap();
        let letter = if pos > id_pos { pos } else { pos + 1 };
        Ok(vec![letter as i32])
    };
    let mut psi = Vec::new();
    for a in 0..y.num_arrows() {
        let (ia, ta) = (y.i(a), y.t(a));
        let mut images = Vec::new();
        for &x in stabs[ia].iter().filter(|&&x| x != t.identity) {
            let img = t.mul[t.mul[h[a]][x]][t.inv[h[a]]];
            images.push(letter_of(ta, img)?);
        }
        psi.push(images);
    }
    let mut twist = HashMap::new();
    for (a, b) in y.composable_pairs() {
        let ab = y.compose(a, b).expect("valid scwol");
        let g = t.mul[t.mul[h[a]][h[b]]][t.inv[h[ab]]];
        if g != t.identity {
            twist.insert((a, b), letter_of(y.t(a), g)?);
        }
    }

    let cog = ComplexOfGroups {
        scwol: y,
        local_groups,
        psi,
        twist,
        tree,
    };
    Ok(InducedComplex {
        cog,
        ambient: t,
        elt_perms: perms,
        lifts,
        h,
        stabs,
        orbit_of,
        quotient,
        complex: action.complex.clone(),
    })
}

/// Restriction of a finite table to a subgroup given by member indices; the
/// generators are all non-identity members.
fn sub_table(t: &FiniteTable, members: &[usize]) -> Result<FiniteTable> {
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let names = members.iter().map(|&m| t.names[m].clone()).collect();
    let mul = members
        .iter()
        .map(|&a| {
            members
                .iter()
                .map(|&b| {
                    pos.get(&t.mul[a][b]).copied().ok_or_else(|| {
                        Error::Invalid("member set is not closed under multiplication".into())
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let gens: Vec<usize> = members
        .iter()
        .enumerate()
        .filter(|&(_, &m)| m != t.identity)
        .map(|(i, _)| i)
        .collect();
    FiniteTable::new(names, mul, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex;

    fn trivial_cog_on(c: &CellComplex) -> ComplexOfGroups {
        let s = scwol::scwolify(c).unwrap();
        let tree = s.spanning_tree().unwrap();
        let n_arrows = s.num_arrows();
        let n_obj = s.num_objects();
        ComplexOfGroups {
            scwol: s,
            local_groups: (0..n_obj).map(|_| GroupSpec::trivial()).collect(),
            psi: vec![Vec::new(); n_arrows],
            twist: HashMap::new(),
            tree,
        }
    }

    #[test]
    fn trivial_groups_validate() {
        let cog = trivial_cog_on(&complex::triangle());
        assert!(validate_cocycles(&cog).unwrap().valid());
    }

    #[test]
    fn flipped_twist_on_tetrahedron_breaks_b() {
        // all-Z/2 local groups, identity psi, one twist flipped: on a scwol
        // with composable triples this must surface as a (b) violation
        let s = scwol::scwolify(&complex::tetrahedron()).unwrap();
        let tree = s.spanning_tree().unwrap();
        let n_arrows = s.num_arrows();
        let n_obj = s.num_objects();
        let mut cog = ComplexOfGroups {
            scwol: s,
            local_groups: (0..n_obj).map(|_| GroupSpec::cyclic(2, "t")).collect(),
            psi: vec![vec![vec![1]]; n_arrows],
            twist: HashMap::new(),
            tree,
        };
        assert!(validate_cocycles(&cog).unwrap().valid());
        let pair = cog.scwol.composable_pairs()[0];
        cog.twist.insert(pair, vec![1]);
        let report = validate_cocycles(&cog).unwrap();
        // abelian local groups: (a) is untouched, (b) must break
        assert!(report.pair_violations.is_empty());
        assert!(!report.triple_violations.is_empty());
        assert!(report
            .triple_violations
            .iter()
            .all(|v| (v.a, v.b) == pair || (v.a, v.b) == pair || v.lhs != v.rhs));
    }

    #[test]
    fn noncentral_twist_on_triangle_breaks_a() {
        // S3 local groups with identity psi: a non-central twist breaks (a)
        let s = scwol::scwolify(&complex::triangle()).unwrap();
        let tree = s.spanning_tree().unwrap();
        let n_arrows = s.num_arrows();
        let n_obj = s.num_objects();
        let d3 = FiniteTable::dihedral(3);
        let mut cog = ComplexOfGroups {
            scwol: s,
            local_groups: (0..n_obj).map(|_| GroupSpec::finite(d3.clone())).collect(),
            psi: vec![vec![vec![1], vec![2]]; n_arrows],
            twist: HashMap::new(),
            tree,
        };
        assert!(validate_cocycles(&cog).unwrap().valid());
        let pair = cog.scwol.composable_pairs()[0];
        cog.twist.insert(pair, vec![2]); // the reflection s is non-central
        let report = validate_cocycles(&cog).unwrap();
        assert!(report
            .pair_violations
            .iter()
            .any(|v| (v.a, v.b) == pair && v.lhs != v.rhs));
    }

    #[test]
    fn theta_presentation_is_free_of_rank_two() {
        let cog = trivial_cog_on(&complex::theta_graph());
        let p = fundamental_group_presentation(&cog).unwrap();
        let q = p.tietze_reduce();
        assert_eq!(q.gen_names.len(), 2);
        assert!(q.relators.is_empty());
    }

    fn z3_on_subdivided_triangle() -> ComplexAction {
        // rotation by one vertex on the barycentric subdivision of a triangle
        let tri = complex::triangle();
        let s = scwol::scwolify(&tri).unwrap();
        let (sub, keys) = scwol::geometric_realization_with_keys(&s).unwrap();
        // rotation on original cells: v_i -> v_{i+1}, e_i -> e_{i+1}, f fixed
        let rot: Vec<usize> = vec![1, 2, 0, 4, 5, 3, 6];
        let perm = transport_permutation(&s, &keys, &rot).unwrap();
        ComplexAction {
            complex: sub,
            group: GroupSpec::cyclic(3, "r"),
            gen_perms: vec![perm],
        }
    }

    #[test]
    fn induced_from_rotation_validates() {
        let action = z3_on_subdivided_triangle();
        let induced = induce_from_action(&action, None).unwrap();
        let report = validate_cocycles(&induced.cog).unwrap();
        assert!(report.valid(), "{report:?}");
        // quotient is one triangle's worth of subdivision: 3 vertex orbits...
        // 7 original cells -> orbits {v}, {e}, {f} -> subdivision of quotient
        assert_eq!(induced.cog.scwol.num_objects(), induced.quotient.num_cells());
        // the center vertex orbit carries the full Z/3
        let orders: Vec<usize> = induced
            .cog
            .local_groups
            .iter()
            .map(|g| g.order().unwrap())
            .collect();
        assert!(orders.contains(&3));
        assert!(orders.contains(&1));
    }

    #[test]
    fn induced_random_lifts_still_validate() {
        let action = z3_on_subdivided_triangle();
        for seed in 0..10 {
            let induced = induce_from_action(&action, Some(seed)).unwrap();
            assert!(validate_cocycles(&induced.cog).unwrap().valid());
        }
    }
}
