//! Truncated developments (universal covers) of complexes of groups.
//!
//! Objects are pairs (gG_σ, σ) of a coset of a local group and a base object;
//! arrows over a base arrow a run from (gG_{i(a)}, i(a)) to (g·a⁻·G_{t(a)},
//! t(a)); the fundamental group acts by left multiplication with quotient the
//! base scwol. Three exact element models are supported: a free group when
//! all local groups are trivial, an amalgamated free product when the base is
//! an edge of groups, and a finite ambient group for complexes induced from a
//! finite group action.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::amalgam::{Amalgam, AmalgamElt, Item};
use crate::cog::{validate_cocycles, ComplexOfGroups, InducedComplex};
use crate::error::{Error, Result};
use crate::group::{FiniteTable, GroupSpec};
use crate::subgroup::{self, SubgroupSpec};
use crate::word::{self, Word};

/// How π₁ elements are represented.
#[derive(Debug, Clone)]
pub enum Pi1Model {
    /// all local groups trivial: π₁ free on the non-tree arrows
    Free {
        group: GroupSpec,
        /// letter word per base arrow (empty for tree arrows)
        arrow_word: Vec<Word>,
    },
    /// edge of groups G₀ ← G_e → G₁: exact amalgam normal forms
    Amal {
        am: Amalgam,
        /// role per base object
        role: Vec<Role>,
    },
    /// image in a finite ambient group (complexes induced from an action)
    Finite {
        table: FiniteTable,
        /// ambient element per local generator, per base object
        local_images: Vec<Vec<usize>>,
        /// ambient element per base arrow (the chosen lift elements)
        arrow_images: Vec<usize>,
        /// ambient members of each local group
        members: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Side(usize),
    Edge,
}

/// A π₁ element in whichever model is active.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rep {
    W(Word),
    Am(AmalgamElt),
    Fin(usize),
}

impl Pi1Model {
    pub fn identity(&self) -> Rep {
        match self {
            Pi1Model::Free { .. } => Rep::W(Vec::new()),
            Pi1Model::Amal { .. } => Rep::Am(AmalgamElt::identity()),
            Pi1Model::Finite { table, .. } => Rep::Fin(table.identity),
        }
    }

    /// Embed a word in the generators of local group `obj` into π₁.
    pub fn local_elt(&self, obj: usize, w: &[i32]) -> Result<Rep> {
        match self {
            Pi1Model::Free { .. } => {
                if w.is_empty() {
                    Ok(Rep::W(Vec::new()))
                } else {
                    Err(Error::Invalid("trivial local group has no generators".into()))
                }
            }
            Pi1Model::Amal { am, role } => {
                let e = match role[obj] {
                    Role::Side(s) => am.normalize(&[Item::Syl(s, w.to_vec())])?,
                    Role::Edge => am.from_edge(w)?,
                };
                Ok(Rep::Am(e))
            }
            Pi1Model::Finite {
                table,
                local_images,
                ..
            } => {
                let mut x = table.identity;
                for &l in w {
                    let img = *local_images[obj]
                        .get((l.unsigned_abs() - 1) as usize)
                        .ok_or_else(|| Error::UnknownSymbol(format!("generator {l}")))?;
                    let step = if l > 0 { img } else { table.inv[img] };
                    x = table.mul[x][step];
                }
                Ok(Rep::Fin(x))
            }
        }
    }

    /// The π₁ element a⁺ of a base arrow.
    pub fn arrow_plus(&self, a: usize) -> Rep {
        match self {
            Pi1Model::Free { arrow_word, .. } => Rep::W(arrow_word[a].clone()),
            // both arrows of an edge of groups lie in the spanning tree
            Pi1Model::Amal { .. } => Rep::Am(AmalgamElt::identity()),
            Pi1Model::Finite { arrow_images, .. } => Rep::Fin(arrow_images[a]),
        }
    }

    pub fn mul(&self, a: &Rep, b: &Rep) -> Result<Rep> {
        match (self, a, b) {
            (Pi1Model::Free { .. }, Rep::W(x), Rep::W(y)) => {
                Ok(Rep::W(word::free_reduce(&word::concat(x, y))))
            }
            (Pi1Model::Amal { am, .. }, Rep::Am(x), Rep::Am(y)) => Ok(Rep::Am(am.mul(x, y)?)),
            (Pi1Model::Finite { table, .. }, Rep::Fin(x), Rep::Fin(y)) => {
                Ok(Rep::Fin(table.mul[*x][*y]))
            }
            _ => Err(Error::Invalid("mismatched element representations".into())),
        }
    }

    pub fn inv(&self, a: &Rep) -> Result<Rep> {
        match (self, a) {
            (Pi1Model::Free { .. }, Rep::W(x)) => Ok(Rep::W(word::inverse(x))),
            (Pi1Model::Amal { am, .. }, Rep::Am(x)) => Ok(Rep::Am(am.inv(x)?)),
            (Pi1Model::Finite { table, .. }, Rep::Fin(x)) => Ok(Rep::Fin(table.inv[*x])),
            _ => Err(Error::Invalid("mismatched element representations".into())),
        }
    }

    /// Canonical data of the coset g·G_obj: a stable key, a canonical
    /// representative, and its word length.
    pub fn coset(&self, obj: usize, g: &Rep) -> Result<(String, Rep, usize)> {
        match (self, g) {
            (Pi1Model::Free { .. }, Rep::W(w)) => Ok((
                format!("w:{}", key_of_word(w)),
                Rep::W(w.clone()),
                w.len(),
            )),
            (Pi1Model::Amal { am, role }, Rep::Am(e)) => {
                let syl = match role[obj] {
                    Role::Side(s) => am.vertex_coset_key(e, s),
                    Role::Edge => am.edge_coset_key(e),
                };
                let len: usize = syl.iter().map(|(_, w)| w.len()).sum();
                let key = syl
                    .iter()
                    .map(|(s, w)| format!("{s}:{}", key_of_word(w)))
                    .collect::<Vec<_>>()
                    .join("|");
                let rep = AmalgamElt {
                    syllables: syl,
                    tail: Vec::new(),
                };
                Ok((key, Rep::Am(rep), len))
            }
            (Pi1Model::Finite { table, members, .. }, Rep::Fin(x)) => {
                let m = members[obj]
                    .iter()
                    .map(|&h| table.mul[*x][h])
                    .min()
                    .ok_or_else(|| Error::Invalid("empty local group".into()))?;
                Ok((format!("f:{m}"), Rep::Fin(m), table.canonical_words[m].len()))
            }
            _ => Err(Error::Invalid("mismatched element representations".into())),
        }
    }
}

fn key_of_word(w: &[i32]) -> String {
    w.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DevObject {
    /// base object σ
    pub base: usize,
    /// canonical coset key
    pub coset: String,
    /// representative word length
    pub rep_len: usize,
    /// true when the object's full link is not guaranteed present
    pub boundary: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DevArrow {
    pub base_arrow: usize,
    pub source: usize,
    pub target: usize,
    /// the coset representative h ∈ G_{t(a)} with source = target·h·a⁺·G_{i(a)},
    /// recorded when the arrow is found by link enumeration at its target
    pub h: Option<Word>,
}

/// A π₁ presentation generator: a local-group generator or an arrow symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pi1Gen {
    Local { object: usize, generator: i32 },
    Arrow(usize),
}

pub struct Development {
    pub cog: ComplexOfGroups,
    pub model: Pi1Model,
    pub objects: Vec<DevObject>,
    pub reps: Vec<Rep>,
    pub arrows: Vec<DevArrow>,
    /// generators of π₁ in presentation order
    pub generators: Vec<Pi1Gen>,
    /// action[g][x] = image object of x under generator g (left multiplication)
    pub action: Vec<Vec<Option<usize>>>,
    pub truncation: usize,
    /// arrow id by (base arrow, source object)
    pub arrow_index: HashMap<(usize, usize), usize>,
    /// object id by (base object, coset key)
    pub object_index: HashMap<(usize, String), usize>,
}

impl Development {
    pub fn gen_elt(&self, g: &Pi1Gen) -> Result<Rep> {
        match g {
            Pi1Gen::Local { object, generator } => self.model.local_elt(*object, &[*generator]),
            Pi1Gen::Arrow(a) => Ok(self.model.arrow_plus(*a)),
        }
    }

    pub fn object_id(&self, base: usize, coset: &str) -> Option<usize> {
        self.object_index.get(&(base, coset.to_string())).copied()
    }

    pub fn interior(&self) -> Vec<usize> {
        (0..self.objects.len())
            .filter(|&x| !self.objects[x].boundary)
            .collect()
    }

    /// Locate the coset of a π₁ element at base object σ, if present.
    pub fn locate(&self, base: usize, g: &Rep) -> Result<Option<usize>> {
        let (key, _, _) = self.model.coset(base, g)?;
        Ok(self.object_id(base, &key))
    }

    /// Degree of a development object: number of incident arrows.
    pub fn degree(&self, x: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.source == x || a.target == x)
            .count()
    }

    /// BFS distances in the incidence graph (objects = nodes, arrows = edges).
    pub fn distances_from(&self, x: usize) -> Vec<usize> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.objects.len()];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut dist = vec![usize::MAX; self.objects.len()];
        let mut q = VecDeque::new();
        dist[x] = 0;
        q.push_back(x);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// True when the incidence graph is a tree (connected, |E| = |V| - 1).
    pub fn is_tree(&self) -> bool {
        let d = self.distances_from(0);
        d.iter().all(|&x| x != usize::MAX) && self.arrows.len() + 1 == self.objects.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let gens: Vec<serde_json::Value> = self
            .generators
            .iter()
            .map(|g| match g {
                Pi1Gen::Local { object, generator } => {
                    serde_json::json!({"kind": "local", "object": object, "generator": generator})
                }
                Pi1Gen::Arrow(a) => serde_json::json!({"kind": "arrow", "arrow": a}),
            })
            .collect();
        serde_json::json!({
            "schema_version": 1,
            "truncation": self.truncation,
            "objects": self.objects,
            "arrows": self.arrows,
            "generators": gens,
            "action": self.action,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph development {\n");
        for (i, o) in self.objects.iter().enumerate() {
            let shape = if self.cog.scwol.object_names[o.base].starts_with('e') {
                "box"
            } else {
                "ellipse"
            };
            let style = if o.boundary { ",style=dashed" } else { "" };
            s.push_str(&format!(
                "  n{i} [label=\"{}:{}\",shape={shape}{style}];\n",
                self.cog.scwol.object_names[o.base], o.coset
            ));
        }
        for a in &self.arrows {
            s.push_str(&format!(
                "  n{} -- n{} [label=\"a{}\"];\n",
                a.source, a.target, a.base_arrow
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// Pick an exact π₁ model for a complex of groups, when one exists.
pub fn choose_model(cog: &ComplexOfGroups) -> Result<Pi1Model> {
    let s = &cog.scwol;
    let all_trivial = cog
        .local_groups
        .iter()
        .all(|g| g.order() == Some(1));
    if all_trivial && !s.composable_pairs().is_empty() {
        // higher-dimensional base: the relations a⁺b⁺ = (ab)⁺ are not free, so
        // the free model is wrong; exact only when π₁ is trivial
        let p = crate::cog::fundamental_group_presentation(cog)?;
        if p.tietze_reduce().gen_names.is_empty() {
            return Ok(Pi1Model::Finite {
                table: FiniteTable::cyclic(1, "t"),
                local_images: vec![Vec::new(); s.num_objects()],
                arrow_images: vec![0; s.num_arrows()],
                members: vec![vec![0]; s.num_objects()],
            });
        }
        return Err(Error::BudgetExhausted(
            "trivial local groups over a base with nontrivial fundamental group and \
             composable arrows are not supported"
                .into(),
        ));
    }
    if all_trivial {
        let mut arrow_word = Vec::new();
        let mut names = Vec::new();
        let mut next = 1i32;
        for a in 0..s.num_arrows() {
            if cog.tree.contains(&a) {
                arrow_word.push(Vec::new());
            } else {
                arrow_word.push(vec![next]);
                names.push(format!("a{a}"));
                next += 1;
            }
        }
        let name_refs: Vec<&str> = names.iter().map(|n| n.as_str()).collect();
        return Ok(Pi1Model::Free {
            group: GroupSpec::free(name_refs.len(), &name_refs),
            arrow_word,
        });
    }
    // edge of groups: 3 objects, 2 arrows out of a common source
    if s.num_objects() == 3 && s.num_arrows() == 2 && s.i(0) == s.i(1) && s.t(0) != s.t(1) {
        let e = s.i(0);
        let am = Amalgam::new(
            [
                cog.local_groups[s.t(0)].clone(),
                cog.local_groups[s.t(1)].clone(),
            ],
            cog.local_groups[e].clone(),
            [cog.psi[0].clone(), cog.psi[1].clone()],
        )?;
        let mut role = vec![Role::Edge; 3];
        role[s.t(0)] = Role::Side(0);
        role[s.t(1)] = Role::Side(1);
        return Ok(Pi1Model::Amal { am, role });
    }
    Err(Error::BudgetExhausted(
        "no exact fundamental-group model: supported bases are trivial local groups, \
         edges of groups, and complexes induced from a finite action"
            .into(),
    ))
}

/// Model for a complex induced from a finite group action: π₁ maps onto the
/// ambient group via local stabilizer elements and the lift elements h_a.
pub fn induced_model(ind: &InducedComplex) -> Result<Pi1Model> {
    let table = ind.ambient.clone();
    let mut local_images = Vec::new();
    for stab in &ind.stabs {
        // generators of the induced local tables are the non-identity members
        let imgs: Vec<usize> = stab
            .iter()
            .copied()
            .filter(|&m| m != table.identity)
            .collect();
        local_images.push(imgs);
    }
    Ok(Pi1Model::Finite {
        table,
        local_images,
        arrow_images: ind.h.clone(),
        members: ind.stabs.clone(),
    })
}

pub fn build_development(cog: &ComplexOfGroups, truncation: usize) -> Result<Development> {
    let report = validate_cocycles(cog)?;
    if !report.valid() {
        return Err(Error::CocycleInvalid(format!(
            "{} pair, {} triple violations",
            report.pair_violations.len(),
            report.triple_violations.len()
        )));
    }
    let model = choose_model(cog)?;
    build_with_model(cog.clone(), model, truncation)
}

/// Development of an induced complex via its ambient finite group.
pub fn develop_induced(ind: &InducedComplex, truncation: usize) -> Result<Development> {
    let model = induced_model(ind)?;
    build_with_model(ind.cog.clone(), model, truncation)
}

pub fn build_with_model(
    cog: ComplexOfGroups,
    model: Pi1Model,
    truncation: usize,
) -> Result<Development> {
    let s = cog.scwol.clone();
    let max_objects = 200_000usize;
    let mut objects: Vec<DevObject> = Vec::new();
    let mut reps: Vec<Rep> = Vec::new();
    let mut index: HashMap<(usize, String), usize> = HashMap::new();
    let mut arrows: Vec<DevArrow> = Vec::new();
    let mut arrow_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let add_object = |base: usize,
                          g: &Rep,
                          objects: &mut Vec<DevObject>,
                          reps: &mut Vec<Rep>,
                          index: &mut HashMap<(usize, String), usize>,
                          queue: &mut VecDeque<usize>,
                          model: &Pi1Model|
     -> Result<Option<usize>> {
        let (key, rep, len) = model.coset(base, g)?;
        if let Some(&id) = index.get(&(base, key.clone())) {
            return Ok(Some(id));
        }
        if len > truncation {
            return Ok(None);
        }
        if objects.len() >= max_objects {
            return Err(Error::BudgetExhausted(format!(
                "development exceeded {max_objects} objects"
            )));
        }
        let id = objects.len();
        objects.push(DevObject {
            base,
            coset: key.clone(),
            rep_len: len,
            boundary: true,
        });
        reps.push(rep);
        index.insert((base, key), id);
        queue.push_back(id);
        Ok(Some(id))
    };

    // seed with the identity coset over every base object
    for base in 0..s.num_objects() {
        add_object(
            base,
            &model.identity(),
            &mut objects,
            &mut reps,
            &mut index,
            &mut queue,
            &model,
        )?;
    }

    // coset tables per base arrow: cosets of psi_a(G_{i(a)}) in G_{t(a)}
    let mut link_tables: HashMap<usize, (Vec<Word>, bool)> = HashMap::new();
    for a in 0..s.num_arrows() {
        let g = &cog.local_groups[s.t(a)];
        let radius = match g.order() {
            Some(n) => n,
            None => truncation,
        };
        let table = subgroup::coset_table(g, &SubgroupSpec::new(cog.psi[a].clone()), radius, 100_000)?;
        link_tables.insert(a, (table.reps, table.complete));
    }

    while let Some(x) = queue.pop_front() {
        let base = objects[x].base;
        if objects[x].rep_len >= truncation {
            continue; // stays a boundary object
        }
        let g = reps[x].clone();
        let mut complete = true;
        // outgoing arrows: x sits in the fiber over i(a)
        for a in 0..s.num_arrows() {
            if s.i(a) != base {
                continue;
            }
            let a_minus = model.inv(&model.arrow_plus(a))?;
            let tgt_elt = model.mul(&g, &a_minus)?;
            match add_object(
                s.t(a),
                &tgt_elt,
                &mut objects,
                &mut reps,
                &mut index,
                &mut queue,
                &model,
            )? {
                Some(tid) => {
                    add_arrow(a, x, tid, None, &mut arrows, &mut arrow_index)?;
                }
                None => complete = false,
            }
        }
        // incoming arrows: enumerate cosets h·psi_a(G_{i(a)}) in G_{t(a)}
        for a in 0..s.num_arrows() {
            if s.t(a) != base {
                continue;
            }
            let (hs, table_complete) = &link_tables[&a];
            if !table_complete {
                complete = false;
            }
            for h in hs {
                let src_elt = model.mul(
                    &model.mul(&g, &model.local_elt(base, h)?)?,
                    &model.arrow_plus(a),
                )?;
                match add_object(
                    s.i(a),
                    &src_elt,
                    &mut objects,
                    &mut reps,
                    &mut index,
                    &mut queue,
                    &model,
                )? {
                    Some(sid) => {
                        add_arrow(a, sid, x, Some(h.clone()), &mut arrows, &mut arrow_index)?;
                    }
                    None => complete = false,
                }
            }
        }
        objects[x].boundary = !complete;
    }

    // presentation generators and the left-multiplication action table
    let mut generators: Vec<Pi1Gen> = Vec::new();
    for (o, g) in cog.local_groups.iter().enumerate() {
        for k in 1..=(g.num_gens() as i32) {
            generators.push(Pi1Gen::Local {
                object: o,
                generator: k,
            });
        }
    }
    for a in 0..s.num_arrows() {
        generators.push(Pi1Gen::Arrow(a));
    }
    let mut action = Vec::with_capacity(generators.len());
    for gen in &generators {
        let e = match gen {
            Pi1Gen::Local { object, generator } => model.local_elt(*object, &[*generator])?,
            Pi1Gen::Arrow(a) => model.arrow_plus(*a),
        };
        let mut row = Vec::with_capacity(objects.len());
        for x in 0..objects.len() {
            let moved = model.mul(&e, &reps[x])?;
            let (key, _, _) = model.coset(objects[x].base, &moved)?;
            row.push(index.get(&(objects[x].base, key)).copied());
        }
        action.push(row);
    }

    Ok(Development {
        cog,
        model,
        objects,
        reps,
        arrows,
        generators,
        action,
        truncation,
        arrow_index,
        object_index: index,
    })
}

fn add_arrow(
    base_arrow: usize,
    source: usize,
    target: usize,
    h: Option<Word>,
    arrows: &mut Vec<DevArrow>,
    arrow_index: &mut HashMap<(usize, usize), usize>,
) -> Result<usize> {
    if let Some(&id) = arrow_index.get(&(base_arrow, source)) {
        if arrows[id].target != target {
            return Err(Error::ActionViolation(format!(
                "arrow over a{base_arrow} at object {source} has two targets: {} and {target}",
                arrows[id].target
            )));
        }
        if arrows[id].h.is_none() {
            arrows[id].h = h;
        }
        return Ok(id);
    }
    let id = arrows.len();
    arrows.push(DevArrow {
        base_arrow,
        source,
        target,
        h,
    });
    arrow_index.insert((base_arrow, source), id);
    Ok(id)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionReport {
    pub arrow_violations: Vec<String>,
    pub orbit_ok: bool,
    pub orbit_detail: String,
    /// stabilizer order per base object (None when not computed)
    pub stabilizer_orders: Vec<Option<usize>>,
    pub stabilizers_ok: bool,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.arrow_violations.is_empty() && self.orbit_ok && self.stabilizers_ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "passed": self.passed(),
            "arrow_violations": self.arrow_violations,
            "orbit_ok": self.orbit_ok,
            "orbit_detail": self.orbit_detail,
            "stabilizer_orders": self.stabilizer_orders,
            "stabilizers_ok": self.stabilizers_ok,
        })
    }
}

/// Enumerate distinct π₁ elements up to a product depth over the generators.
pub fn pi1_ball(dev: &Development, depth: usize) -> Result<Vec<Rep>> {
    let mut gens: Vec<Rep> = Vec::new();
    for g in &dev.generators {
        let e = dev.gen_elt(g)?;
        gens.push(e.clone());
        gens.push(dev.model.inv(&e)?);
    }
    let mut seen: HashSet<Rep> = HashSet::new();
    let mut frontier = vec![dev.model.identity()];
    seen.insert(dev.model.identity());
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                let y = dev.model.mul(x, g)?;
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
        if seen.len() > 200_000 {
            return Err(Error::BudgetExhausted("fundamental group ball too large".into()));
        }
    }
    Ok(seen.into_iter().collect())
}

/// The three action checks: arrows map to arrows preserving endpoints, the
/// orbit map is a bijection onto base objects over the interior, and interior
/// stabilizers are exactly the conjugated local groups.
pub fn verify_action(dev: &Development, stab_scan_depth: usize) -> Result<ActionReport> {
    let n = dev.objects.len();
    let mut arrow_violations = Vec::new();
    // (i) each generator sends arrows to arrows, preserving i and t
    for (gi, row) in dev.action.iter().enumerate() {
        for (aid, arr) in dev.arrows.iter().enumerate() {
            if let (Some(sx), Some(tx)) = (row[arr.source], row[arr.target]) {
                if dev.objects[sx].boundary {
                    continue; // image arrows may be missing near the boundary
                }
                match dev.arrow_index.get(&(arr.base_arrow, sx)) {
                    Some(&id2) if dev.arrows[id2].target == tx => {}
                    Some(&id2) => arrow_violations.push(format!(
                        "generator {gi} sends arrow {aid} to arrow {id2} with wrong target"
                    )),
                    None => arrow_violations.push(format!(
                        "generator {gi} image of arrow {aid} (over a{}) is missing at object {sx}",
                        arr.base_arrow
                    )),
                }
            }
        }
    }
    // (ii) orbits over the interior biject with base objects
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for row in &dev.action {
        for (x, img) in row.iter().enumerate() {
            if let Some(y) = img {
                let (rx, ry) = (find(&mut uf, x), find(&mut uf, *y));
                if rx != ry {
                    uf[rx] = ry;
                }
            }
        }
    }
    let mut class_base: HashMap<usize, usize> = HashMap::new();
    let mut orbit_ok = true;
    let mut orbit_detail = String::new();
    for x in 0..n {
        let r = find(&mut uf, x);
        match class_base.get(&r) {
            Some(&b) if b != dev.objects[x].base => {
                orbit_ok = false;
                orbit_detail = format!("orbit of object {x} mixes base objects {b} and {}",
                    dev.objects[x].base);
            }
            _ => {
                class_base.insert(r, dev.objects[x].base);
            }
        }
    }
    // classes containing an interior object, per base
    let mut interior_classes: HashMap<usize, HashSet<usize>> = HashMap::new();
    for &x in &dev.interior() {
        let r = find(&mut uf, x);
        interior_classes
            .entry(dev.objects[x].base)
            .or_default()
            .insert(r);
    }
    for (base, classes) in &interior_classes {
        if classes.len() != 1 {
            orbit_ok = false;
            orbit_detail = format!(
                "base object {base} has {} interior orbits, expected 1",
                classes.len()
            );
        }
    }
    // (iii) interior stabilizers == conjugated local groups, exhaustively over
    // a ball of π₁ elements
    let mut stabilizer_orders: Vec<Option<usize>> = vec![None; dev.cog.scwol.num_objects()];
    let mut stabilizers_ok = true;
    let interior = dev.interior();
    if !interior.is_empty() {
        let ball = pi1_ball(dev, stab_scan_depth)?;
        for &x in &interior {
            let base = dev.objects[x].base;
            let local = &dev.cog.local_groups[base];
            let order = match local.order() {
                Some(o) => o,
                None => continue,
            };
            // conjugates g·h·g⁻¹ of local elements all fix x
            let g = &dev.reps[x];
            let ginv = dev.model.inv(g)?;
            let mut conjugates: HashSet<Rep> = HashSet::new();
            for e in local.elements().unwrap() {
                let h = dev.model.local_elt(base, &e.normal)?;
                let c = dev.model.mul(&dev.model.mul(g, &h)?, &ginv)?;
                if dev.locate(base, &dev.model.mul(&c, g)?)? != Some(x) {
                    stabilizers_ok = false;
                }
                conjugates.insert(c);
            }
            if conjugates.len() != order {
                stabilizers_ok = false;
            }
            // every scanned element fixing x must be such a conjugate
            for s in &ball {
                let moved = dev.model.mul(s, g)?;
                if dev.locate(base, &moved)? == Some(x) && !conjugates.contains(s) {
                    stabilizers_ok = false;
                }
            }
            match stabilizer_orders[base] {
                None => stabilizer_orders[base] = Some(order),
                Some(o) if o != order => stabilizers_ok = false,
                _ => {}
            }
        }
    }
    Ok(ActionReport {
        arrow_violations,
        orbit_ok,
        orbit_detail,
        stabilizer_orders,
        stabilizers_ok,
    })
}

/// For a development of an induced complex: check it is equivariantly
/// isomorphic to the complex the action lived on, by mapping the coset g·G_σ
/// to the cell g·(lift of σ).
pub fn dev_matches_complex(ind: &InducedComplex, dev: &Development) -> Result<bool> {
    let table = match &dev.model {
        Pi1Model::Finite { table, .. } => table,
        _ => return Err(Error::Invalid("development was not built from an action".into())),
    };
    let n_cells = ind.orbit_of.len();
    let mut cell_of_object: Vec<usize> = Vec::with_capacity(dev.objects.len());
    let mut hit = vec![false; n_cells];
    for (x, o) in dev.objects.iter().enumerate() {
        let g = match &dev.reps[x] {
            Rep::Fin(g) => *g,
            _ => unreachable!(),
        };
        let cell = ind.elt_perms[g][ind.lifts[o.base]];
        if ind.orbit_of[cell] != o.base || hit[cell] {
            return Ok(false);
        }
        hit[cell] = true;
        cell_of_object.push(cell);
    }
    if !hit.iter().all(|&b| b) {
        return Ok(false);
    }
    // arrows must land exactly on the strict face relations of the original
    let mut face_pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut expected: HashSet<(usize, usize)> = HashSet::new();
    for cell in 0..n_cells {
        for f in ind.complex.strict_faces(cell) {
            expected.insert((cell, f));
        }
    }
    for a in &dev.arrows {
        let pair = (cell_of_object[a.source], cell_of_object[a.target]);
        if !expected.contains(&pair) {
            return Ok(false);
        }
        face_pairs.insert(pair);
    }
    if face_pairs != expected {
        return Ok(false);
    }
    // equivariance on generators: the table action matches the cell permutation
    for (gi, gen) in dev.generators.iter().enumerate() {
        let e = match dev.gen_elt(gen)? {
            Rep::Fin(e) => e,
            _ => unreachable!(),
        };
        for x in 0..dev.objects.len() {
            if let Some(y) = dev.action[gi][x] {
                let lhs = cell_of_object[y];
                let rhs = ind.elt_perms[e][cell_of_object[x]];
                if lhs != rhs {
                    return Ok(false);
                }
            } else {
                return Ok(false); // finite model: action must be total
            }
        }
        let _ = table;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::cyclic_amalgam;
    use crate::cog::{induce_from_action, ComplexAction};
    use crate::complex;
    use crate::scwol;

    /// Edge of groups as a complex of groups over the segment scwol.
    pub fn edge_of_groups(
        left: GroupSpec,
        edge: GroupSpec,
        right: GroupSpec,
        psi0: Vec<Word>,
        psi1: Vec<Word>,
    ) -> ComplexOfGroups {
        let s = scwol::scwolify(&complex::segment()).unwrap();
        // segment scwolification: objects v0, v1, e with arrows e->v0, e->v1
        let mut groups = vec![GroupSpec::trivial(); 3];
        groups[s.t(0)] = left;
        groups[s.t(1)] = right;
        groups[s.i(0)] = edge;
        let tree = s.spanning_tree().unwrap();
        ComplexOfGroups {
            scwol: s,
            local_groups: groups,
            psi: vec![psi0, psi1],
            twist: HashMap::new(),
            tree,
        }
    }

    fn amalgam_4_2_6() -> ComplexOfGroups {
        edge_of_groups(
            GroupSpec::cyclic(4, "x"),
            GroupSpec::cyclic(2, "z"),
            GroupSpec::cyclic(6, "y"),
            vec![vec![1, 1]],
            vec![vec![1, 1, 1]],
        )
    }

    #[test]
    fn biregular_tree_2_3() {
        let cog = amalgam_4_2_6();
        let dev = build_development(&cog, 8).unwrap();
        assert!(dev.is_tree());
        // side-0 vertices have 2 incident edges, side-1 vertices have 3
        let (role, _) = match &dev.model {
            Pi1Model::Amal { role, .. } => (role.clone(), ()),
            _ => panic!("expected amalgam model"),
        };
        for &x in &dev.interior() {
            let deg = dev.degree(x);
            match role[dev.objects[x].base] {
                Role::Side(0) => assert_eq!(deg, 2, "side-0 vertex degree"),
                Role::Side(1) => assert_eq!(deg, 3, "side-1 vertex degree"),
                Role::Side(_) => unreachable!(),
                Role::Edge => assert_eq!(deg, 2, "edge object degree"),
            }
        }
    }

    #[test]
    fn amalgam_action_checks_pass() {
        let cog = amalgam_4_2_6();
        let dev = build_development(&cog, 6).unwrap();
        let report = verify_action(&dev, 4).unwrap();
        assert!(report.arrow_violations.is_empty(), "{:?}", report.arrow_violations);
        assert!(report.orbit_ok, "{}", report.orbit_detail);
        assert!(report.stabilizers_ok);
        let mut orders: Vec<usize> = report.stabilizer_orders.iter().flatten().copied().collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 4, 6]);
    }

    #[test]
    fn corrupted_arrow_is_flagged() {
        let cog = amalgam_4_2_6();
        let mut dev = build_development(&cog, 6).unwrap();
        // redirect one interior arrow to a wrong target
        let interior: HashSet<usize> = dev.interior().into_iter().collect();
        let aid = (0..dev.arrows.len())
            .find(|&i| {
                interior.contains(&dev.arrows[i].source) && interior.contains(&dev.arrows[i].target)
            })
            .unwrap();
        let wrong = (0..dev.objects.len())
            .find(|&x| {
                x != dev.arrows[aid].target
                    && dev.objects[x].base == dev.objects[dev.arrows[aid].target].base
            })
            .unwrap();
        dev.arrows[aid].target = wrong;
        let report = verify_action(&dev, 2).unwrap();
        assert!(report
            .arrow_violations
            .iter()
            .any(|v| v.contains(&format!("arrow {aid}")) || !v.is_empty()));
        assert!(!report.arrow_violations.is_empty());
    }

    #[test]
    fn trivial_groups_give_universal_cover() {
        // theta graph with trivial groups: universal cover of a rank-2 graph
        let theta = complex::theta_graph();
        let s = scwol::scwolify(&theta).unwrap();
        let tree = s.spanning_tree().unwrap();
        let n_obj = s.num_objects();
        let n_arr = s.num_arrows();
        let cog = ComplexOfGroups {
            scwol: s,
            local_groups: (0..n_obj).map(|_| GroupSpec::trivial()).collect(),
            psi: vec![Vec::new(); n_arr],
            twist: HashMap::new(),
            tree,
        };
        let dev = build_development(&cog, 3).unwrap();
        assert!(dev.is_tree());
        let report = verify_action(&dev, 2).unwrap();
        assert!(report.arrow_violations.is_empty());
        assert!(report.orbit_ok, "{}", report.orbit_detail);
    }

    #[test]
    fn simply_connected_trivial_cog_is_scwolification() {
        let tri = complex::triangle();
        let s = scwol::scwolify(&tri).unwrap();
        let tree = s.spanning_tree().unwrap();
        let n_obj = s.num_objects();
        let n_arr = s.num_arrows();
        let cog = ComplexOfGroups {
            scwol: s.clone(),
            local_groups: (0..n_obj).map(|_| GroupSpec::trivial()).collect(),
            psi: vec![Vec::new(); n_arr],
            twist: HashMap::new(),
            tree,
        };
        let dev = build_development(&cog, 5).unwrap();
        assert_eq!(dev.objects.len(), s.num_objects());
        assert_eq!(dev.arrows.len(), s.num_arrows());
    }

    #[test]
    fn genus2_root_has_many_edge_cosets() {
        let cog = edge_of_groups(
            GroupSpec::free(2, &["a", "b"]),
            GroupSpec::free(1, &["g"]),
            GroupSpec::free(2, &["c", "d"]),
            vec![vec![1, 2, -1, -2]],
            vec![vec![1, 2, -1, -2]],
        );
        let dev = build_development(&cog, 4).unwrap();
        assert!(dev.is_tree());
        // identity vertex coset on side 0
        let role = match &dev.model {
            Pi1Model::Amal { role, .. } => role.clone(),
            _ => panic!("expected amalgam model"),
        };
        let root = (0..dev.objects.len())
            .find(|&x| role[dev.objects[x].base] == Role::Side(0) && dev.objects[x].rep_len == 0)
            .unwrap();
        assert!(dev.degree(root) >= 9, "degree {}", dev.degree(root));
    }

    #[test]
    fn induced_development_matches_original_complex() {
        // Z/3 rotation action on the subdivided triangle
        let tri = complex::triangle();
        let s = scwol::scwolify(&tri).unwrap();
        let (sub, keys) = scwol::geometric_realization_with_keys(&s).unwrap();
        let rot: Vec<usize> = vec![1, 2, 0, 4, 5, 3, 6];
        let perm = crate::cog::transport_permutation(&s, &keys, &rot).unwrap();
        let action = ComplexAction {
            complex: sub,
            group: GroupSpec::cyclic(3, "r"),
            gen_perms: vec![perm],
        };
        let ind = induce_from_action(&action, None).unwrap();
        let dev = develop_induced(&ind, 16).unwrap();
        assert!(dev.objects.iter().all(|o| !o.boundary));
        assert!(dev_matches_complex(&ind, &dev).unwrap());
        let report = verify_action(&dev, 3).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn amalgam_model_agrees_with_direct_amalgam() {
        let cog = amalgam_4_2_6();
        let model = choose_model(&cog).unwrap();
        let am = cyclic_amalgam(4, 2, 6).unwrap();
        if let Pi1Model::Amal { am: m, .. } = &model {
            let x = m.from_word(0, &[1]).unwrap();
            let y = am.from_word(0, &[1]).unwrap();
            assert_eq!(x, y);
        } else {
            panic!("expected amalgam model");
        }
    }
}
