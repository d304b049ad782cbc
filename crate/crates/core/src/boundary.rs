//! Finite skeleton of the glued boundary: parabolic points, their domains
//! (pointwise-fixed subcomplexes of the development), gluing classes of
//! boundary labels along ξ-paths, the injectivity check, and the
//! tree-of-circles layout for tree developments.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::development::{Development, Rep};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::subgroup::{self, SubgroupSpec};
use crate::word::Word;

/// Peripheral structure on the local groups, with declared compatibility
/// along arrows: each peripheral of G_{i(a)} maps into a conjugate of a
/// peripheral of G_{t(a)}.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PeripheralAssignment {
    /// per base object: its peripheral subgroups
    pub peripherals: Vec<Vec<SubgroupSpec>>,
    /// per base arrow: peripheral index of G_{i(a)} → (peripheral index of
    /// G_{t(a)}, conjugator word in G_{t(a)})
    pub arrow_maps: Vec<HashMap<usize, (usize, Word)>>,
}

impl PeripheralAssignment {
    pub fn empty(n_objects: usize, n_arrows: usize) -> Self {
        PeripheralAssignment {
            peripherals: vec![Vec::new(); n_objects],
            arrow_maps: vec![HashMap::new(); n_arrows],
        }
    }

    /// Verify every declared inclusion on generators: ψ_a of each peripheral
    /// generator, conjugated back, must be a member of the target peripheral.
    pub fn verify(&self, cog: &crate::cog::ComplexOfGroups) -> Result<()> {
        let s = &cog.scwol;
        if self.peripherals.len() != s.num_objects() || self.arrow_maps.len() != s.num_arrows() {
            return Err(Error::Invalid("peripheral assignment shape mismatch".into()));
        }
        for a in 0..s.num_arrows() {
            for (&p, (q, conj)) in &self.arrow_maps[a] {
                let src = self.peripherals[s.i(a)].get(p).ok_or_else(|| {
                    Error::Invalid(format!("arrow {a}: unknown source peripheral {p}"))
                })?;
                let tgt = self.peripherals[s.t(a)].get(*q).ok_or_else(|| {
                    Error::Invalid(format!("arrow {a}: unknown target peripheral {q}"))
                })?;
                let gt = &cog.local_groups[s.t(a)];
                let c = gt.elt(conj)?;
                for w in &src.gens {
                    let img = cog.apply_psi(a, w)?;
                    let x = gt.mul(&gt.mul(&gt.inv(&c), &img), &c);
                    match subgroup::member(gt, tgt, &x)? {
                        subgroup::Membership::In { .. } => {}
                        subgroup::Membership::NotIn => {
                            return Err(Error::Invalid(format!(
                                "arrow {a}: peripheral {p} does not map into conjugate of {q}"
                            )))
                        }
                        subgroup::Membership::Unknown => {
                            return Err(Error::UndecidableMembership(format!(
                                "arrow {a}: cannot verify peripheral {p} inclusion"
                            )))
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A parabolic point: a coset of a peripheral subgroup of a development
/// object's local group, by canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicPoint {
    pub object: usize,
    pub peripheral: usize,
    pub coset: Word,
}

/// All cells fixed pointwise by every listed group element, split into
/// determinate cells and frontier cells whose status depends on truncation.
pub fn fixed_subcomplex(dev: &Development, gens: &[Rep]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut fixed = Vec::new();
    let mut indeterminate = Vec::new();
    for x in 0..dev.objects.len() {
        let base = dev.objects[x].base;
        let mut ok = true;
        for g in gens {
            let moved = dev.model.mul(g, &dev.reps[x])?;
            if dev.locate(base, &moved)? != Some(x) {
                ok = false;
                break;
            }
        }
        if ok {
            if dev.objects[x].rep_len >= dev.truncation {
                indeterminate.push(x);
            } else {
                fixed.push(x);
            }
        }
    }
    Ok((fixed, indeterminate))
}

/// Fixed cells grown outward from a seed, valid when the incidence graph is
/// a tree (fixed sets of tree isometries are connected subtrees).
fn fixed_subtree_from(
    dev: &Development,
    gens: &[Rep],
    seed: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let is_fixed = |x: usize| -> Result<bool> {
        for g in gens {
            let moved = dev.model.mul(g, &dev.reps[x])?;
            if dev.locate(dev.objects[x].base, &moved)? != Some(x) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut fixed = Vec::new();
    let mut indeterminate = Vec::new();
    if !is_fixed(seed)? {
        return Ok((fixed, indeterminate));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); dev.objects.len()];
    for a in &dev.arrows {
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    let mut seen = HashSet::new();
    let mut q = VecDeque::new();
    seen.insert(seed);
    q.push_back(seed);
    while let Some(x) = q.pop_front() {
        if dev.objects[x].rep_len >= dev.truncation {
            indeterminate.push(x);
        } else {
            fixed.push(x);
        }
        for &y in &adj[x] {
            if !seen.contains(&y) && is_fixed(y)? {
                seen.insert(y);
                q.push_back(y);
            }
        }
    }
    fixed.sort_unstable();
    indeterminate.sort_unstable();
    Ok((fixed, indeterminate))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainResult {
    pub point: ParabolicPoint,
    /// development objects of the domain (vertex objects are 0-simplices,
    /// higher objects carry their base dimension)
    pub simplices: Vec<usize>,
    /// diameter in the unsubdivided metric (half the incidence-graph metric)
    pub diameter: usize,
    pub within_bound: bool,
    pub simplex_count: usize,
    pub count_ok: bool,
    pub connected: bool,
    pub convex: bool,
}

impl DomainResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "point": self.point,
            "simplices": self.simplices,
            "diameter": self.diameter,
            "within_bound": self.within_bound,
            "simplex_count": self.simplex_count,
            "count_ok": self.count_ok,
            "connected": self.connected,
            "convex": self.convex,
        })
    }
}

/// Canonicalize the coset x·P inside a local group.
pub fn canonical_peripheral_coset(
    g: &crate::group::GroupSpec,
    p: &SubgroupSpec,
    x: &Element,
) -> Result<Word> {
    let keyer = subgroup::coset_keyer(g, p)?;
    keyer(x)
}

/// The π₁ elements generating the stabilizer of a parabolic point: the
/// peripheral generators conjugated by the point's location.
fn point_stabilizer_gens(
    dev: &Development,
    assignment: &PeripheralAssignment,
    pt: &ParabolicPoint,
) -> Result<Vec<Rep>> {
    let base = dev.objects[pt.object].base;
    let p = assignment.peripherals[base]
        .get(pt.peripheral)
        .ok_or_else(|| Error::Invalid(format!("unknown peripheral {}", pt.peripheral)))?;
    let conj = dev
        .model
        .mul(&dev.reps[pt.object], &dev.model.local_elt(base, &pt.coset)?)?;
    let conj_inv = dev.model.inv(&conj)?;
    let mut gens = Vec::new();
    for w in &p.gens {
        let e = dev.model.local_elt(base, w)?;
        gens.push(dev.model.mul(&dev.model.mul(&conj, &e)?, &conj_inv)?);
    }
    Ok(gens)
}

pub fn compute_domain(
    dev: &Development,
    assignment: &PeripheralAssignment,
    pt: &ParabolicPoint,
    a_bound: usize,
    d_max: usize,
) -> Result<DomainResult> {
    let base = dev.objects[pt.object].base;
    let local = &dev.cog.local_groups[base];
    let p = assignment.peripherals[base]
        .get(pt.peripheral)
        .ok_or_else(|| Error::Invalid(format!("unknown peripheral {}", pt.peripheral)))?;
    // parabolic subgroups are infinite: finite local groups have none, and in
    // infinite local groups the peripheral must be nontrivial
    if local.order().is_some() || p.gens.iter().all(|w| local.elt(w).map(|e| e.normal.is_empty()).unwrap_or(true)) {
        return Err(Error::Invalid(
            "peripheral subgroup must be infinite to define a parabolic point".into(),
        ));
    }
    let gens = point_stabilizer_gens(dev, assignment, pt)?;
    let is_tree = dev.is_tree();
    let (fixed, indeterminate) = if is_tree {
        // fixed sets of tree isometries are connected subtrees, so growing
        // outward from the point's cell finds the whole fixed subcomplex
        fixed_subtree_from(dev, &gens, pt.object)?
    } else {
        fixed_subcomplex(dev, &gens)?
    };
    if !indeterminate.is_empty() {
        return Err(Error::TruncationTooSmall(format!(
            "domain of the parabolic point touches the truncation frontier \
             ({} frontier cells)",
            indeterminate.len()
        )));
    }
    if fixed.is_empty() {
        return Err(Error::TruncationTooSmall(
            "no fixed cells inside the truncation".into(),
        ));
    }
    // connectivity and convexity on the incidence graph
    let in_domain: HashSet<usize> = fixed.iter().copied().collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); dev.objects.len()];
    for a in &dev.arrows {
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    let mut seen = HashSet::new();
    let mut q = VecDeque::new();
    seen.insert(fixed[0]);
    q.push_back(fixed[0]);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if in_domain.contains(&w) && seen.insert(w) {
                q.push_back(w);
            }
        }
    }
    let connected = seen.len() == fixed.len();
    // in a tree, a connected subgraph is convex; otherwise check geodesics by
    // pairwise BFS through the whole graph
    let mut convex = connected;
    let mut diam_bary = 0usize;
    for &x in &fixed {
        let d = bfs_dist(&adj, x, None);
        for &y in &fixed {
            if d[y] != usize::MAX {
                diam_bary = diam_bary.max(d[y]);
            }
        }
        if !is_tree && convex {
            // sample check: some geodesic between each pair stays inside
            for &y in &fixed {
                if !geodesic_inside(&adj, &in_domain, x, y) {
                    convex = false;
                    break;
                }
            }
        }
    }
    let diameter = diam_bary / 2;
    Ok(DomainResult {
        point: pt.clone(),
        simplices: fixed.clone(),
        diameter,
        within_bound: diameter <= a_bound,
        simplex_count: fixed.len(),
        count_ok: fixed.len() <= d_max,
        connected,
        convex,
    })
}

fn geodesic_inside(adj: &[Vec<usize>], inside: &HashSet<usize>, x: usize, y: usize) -> bool {
    // BFS restricted to the subset must realize the unrestricted distance
    let dist_full = bfs_dist(adj, x, None);
    let dist_in = bfs_dist(adj, x, Some(inside));
    dist_full[y] == dist_in[y]
}

fn bfs_dist(adj: &[Vec<usize>], x: usize, inside: Option<&HashSet<usize>>) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut q = VecDeque::new();
    dist[x] = 0;
    q.push_back(x);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if let Some(s) = inside {
                if !s.contains(&w) {
                    continue;
                }
            }
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// One ξ-path step: a development arrow carrying a peripheral label from its
/// source object's group to its target object's group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XiStep {
    pub arrow: usize,
    pub from: ParabolicPoint,
    pub to: ParabolicPoint,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GluingClass {
    pub members: Vec<ParabolicPoint>,
    pub witness_paths: Vec<XiStep>,
}

/// Partition the parabolic labels of the truncation core by merging across
/// development arrows, following the declared peripheral maps.
pub fn glue_boundary_classes(
    dev: &Development,
    assignment: &PeripheralAssignment,
) -> Result<Vec<GluingClass>> {
    assignment.verify(&dev.cog)?;
    let s = &dev.cog.scwol;
    let core = |x: usize| dev.objects[x].rep_len < dev.truncation;

    let mut labels: Vec<ParabolicPoint> = Vec::new();
    let mut index: HashMap<ParabolicPoint, usize> = HashMap::new();
    let mut uf: Vec<usize> = Vec::new();
    let mut witnesses: Vec<XiStep> = Vec::new();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let intern = |pt: ParabolicPoint,
                      labels: &mut Vec<ParabolicPoint>,
                      index: &mut HashMap<ParabolicPoint, usize>,
                      uf: &mut Vec<usize>|
     -> usize {
        if let Some(&i) = index.get(&pt) {
            return i;
        }
        let i = labels.len();
        index.insert(pt.clone(), i);
        labels.push(pt);
        uf.push(i);
        i
    };

    // seed: the identity coset of every peripheral at every core object
    for x in 0..dev.objects.len() {
        if !core(x) {
            continue;
        }
        let base = dev.objects[x].base;
        for p in 0..assignment.peripherals[base].len() {
            intern(
                ParabolicPoint {
                    object: x,
                    peripheral: p,
                    coset: Vec::new(),
                },
                &mut labels,
                &mut index,
                &mut uf,
            );
        }
    }

    // merge across arrows with known link representatives; source-side
    // coset enumerations and canonical keyers are shared across dev arrows
    let mut tables: HashMap<(usize, usize), subgroup::CosetTable> = HashMap::new();
    let mut keyers: HashMap<(usize, usize), Box<dyn Fn(&Element) -> Result<Word>>> =
        HashMap::new();
    for a in 0..s.num_arrows() {
        for (&p, (q, _)) in &assignment.arrow_maps[a] {
            let gi = &dev.cog.local_groups[s.i(a)];
            let src_periph = &assignment.peripherals[s.i(a)][p];
            tables.insert(
                (a, p),
                subgroup::coset_table(gi, src_periph, dev.truncation, 50_000)?,
            );
            keyers
                .entry((s.i(a), p))
                .or_insert(subgroup::coset_keyer(gi, src_periph)?);
            let gt = &dev.cog.local_groups[s.t(a)];
            let tgt_periph = &assignment.peripherals[s.t(a)][*q];
            keyers
                .entry((s.t(a), *q))
                .or_insert(subgroup::coset_keyer(gt, tgt_periph)?);
        }
    }
    for (aid, arr) in dev.arrows.iter().enumerate() {
        if !core(arr.source) || !core(arr.target) {
            continue;
        }
        let Some(h) = &arr.h else { continue };
        let a = arr.base_arrow;
        let gi = &dev.cog.local_groups[s.i(a)];
        let gt = &dev.cog.local_groups[s.t(a)];
        for (&p, (q, conj)) in &assignment.arrow_maps[a] {
            let table = &tables[&(a, p)];
            for c in &table.reps {
                let src_pt = ParabolicPoint {
                    object: arr.source,
                    peripheral: p,
                    coset: keyers[&(s.i(a), p)](&gi.elt(c)?)?,
                };
                // label transported to the target: h · ψ_a(c) · conj
                let img = dev.cog.apply_psi(a, c)?;
                let x = gt.mul(&gt.mul(&gt.elt(h)?, &img), &gt.elt(conj)?);
                let tgt_pt = ParabolicPoint {
                    object: arr.target,
                    peripheral: *q,
                    coset: keyers[&(s.t(a), *q)](&x)?,
                };
                let i = intern(src_pt.clone(), &mut labels, &mut index, &mut uf);
                let j = intern(tgt_pt.clone(), &mut labels, &mut index, &mut uf);
                let (ri, rj) = (find(&mut uf, i), find(&mut uf, j));
                if ri != rj {
                    uf[ri] = rj;
                }
                witnesses.push(XiStep {
                    arrow: aid,
                    from: src_pt,
                    to: tgt_pt,
                });
            }
        }
    }

    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..labels.len() {
        let r = find(&mut uf, i);
        by_root.entry(r).or_default().push(i);
    }
    let mut roots: Vec<usize> = by_root.keys().copied().collect();
    roots.sort_unstable();
    let mut classes = Vec::new();
    for r in roots {
        let mut members: Vec<ParabolicPoint> =
            by_root[&r].iter().map(|&i| labels[i].clone()).collect();
        members.sort_by(|a, b| {
            (a.object, a.peripheral, &a.coset).cmp(&(b.object, b.peripheral, &b.coset))
        });
        let member_set: HashSet<&ParabolicPoint> = members.iter().collect();
        let witness_paths: Vec<XiStep> = witnesses
            .iter()
            .filter(|w| member_set.contains(&w.from))
            .cloned()
            .collect();
        classes.push(GluingClass {
            members,
            witness_paths,
        });
    }
    Ok(classes)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbedReport {
    pub pass: bool,
    pub violations: Vec<String>,
}

/// PASS iff no gluing class carries two distinct parabolic labels of the
/// same development object (the local boundaries inject into the glued one).
pub fn boundaries_embed_check(classes: &[GluingClass]) -> EmbedReport {
    let mut violations = Vec::new();
    for (ci, class) in classes.iter().enumerate() {
        let mut by_object: HashMap<usize, &ParabolicPoint> = HashMap::new();
        for m in &class.members {
            if let Some(prev) = by_object.get(&m.object) {
                if (prev.peripheral, &prev.coset) != (m.peripheral, &m.coset) {
                    violations.push(format!(
                        "class {ci}: object {} carries labels ({},{:?}) and ({},{:?}); \
                         xi-loop through {} steps",
                        m.object,
                        prev.peripheral,
                        prev.coset,
                        m.peripheral,
                        m.coset,
                        class.witness_paths.len()
                    ));
                }
            } else {
                by_object.insert(m.object, m);
            }
        }
    }
    EmbedReport {
        pass: violations.is_empty(),
        violations,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TocNode {
    pub id: usize,
    pub object: usize,
    pub kind: String,
    pub parent: Option<usize>,
    pub center: [f64; 2],
    pub radius: f64,
    pub color: usize,
    pub angle: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeOfCircles {
    pub nodes: Vec<TocNode>,
    pub depth: usize,
    pub seed: u64,
}

impl TreeOfCircles {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "depth": self.depth,
            "seed": self.seed,
            "nodes": self.nodes,
        })
    }
}

fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Deterministic radial layout of a tree development: circles for objects
/// with infinite local groups, points otherwise; children ordered by coset
/// key (Schreier lexicographic rank); colors by base-object orbit.
pub fn tree_of_circles(dev: &Development, depth: usize, seed: u64) -> Result<TreeOfCircles> {
    if !dev.is_tree() {
        return Err(Error::NotATree);
    }
    // root: shortest-representative object over a vertex-like base (a base
    // object that is not the source of any arrow)
    let s = &dev.cog.scwol;
    let is_vertex_base =
        |b: usize| -> bool { (0..s.num_arrows()).all(|a| s.i(a) != b) };
    let root = (0..dev.objects.len())
        .filter(|&x| is_vertex_base(dev.objects[x].base))
        .min_by_key(|&x| (dev.objects[x].rep_len, dev.objects[x].coset.clone()))
        .ok_or_else(|| Error::Invalid("development has no vertex objects".into()))?;

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); dev.objects.len()];
    for a in &dev.arrows {
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    for row in adj.iter_mut() {
        row.sort_unstable();
        row.dedup();
    }
    // BFS tree with children sorted by coset key
    let mut parent: Vec<Option<usize>> = vec![None; dev.objects.len()];
    let mut level = vec![usize::MAX; dev.objects.len()];
    level[root] = 0;
    let mut order = vec![root];
    let mut children: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut q = VecDeque::new();
    q.push_back(root);
    while let Some(v) = q.pop_front() {
        if level[v] >= 2 * depth {
            continue;
        }
        let mut kids: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&w| level[w] == usize::MAX)
            .collect();
        kids.sort_by(|&a, &b| dev.objects[a].coset.cmp(&dev.objects[b].coset));
        for w in kids {
            if level[w] != usize::MAX {
                continue;
            }
            level[w] = level[v] + 1;
            parent[w] = Some(v);
            children.entry(v).or_default().push(w);
            order.push(w);
            q.push_back(w);
        }
    }
    // angular sectors: root spans the full circle rotated by the seed phase
    let tau = std::f64::consts::TAU;
    let phase = (seed % 360) as f64 / 360.0 * tau;
    let mut sector: HashMap<usize, (f64, f64)> = HashMap::new();
    sector.insert(root, (phase, phase + tau));
    let mut nodes = Vec::new();
    for (idx, &x) in order.iter().enumerate() {
        let (lo, hi) = sector[&x];
        let angle = (lo + hi) / 2.0;
        let r = level[x] as f64;
        let infinite = dev.cog.local_groups[dev.objects[x].base]
            .order()
            .is_none();
        let kind = if is_vertex_base(dev.objects[x].base) {
            if infinite {
                "circle"
            } else {
                "point"
            }
        } else {
            "point"
        };
        nodes.push(TocNode {
            id: idx,
            object: x,
            kind: kind.to_string(),
            parent: parent[x].map(|p| order.iter().position(|&y| y == p).unwrap()),
            center: [round6(r * angle.cos()), round6(r * angle.sin())],
            radius: round6(if kind == "circle" { 0.4 / (level[x] as f64 + 1.0) } else { 0.0 }),
            color: dev.objects[x].base,
            angle: round6(angle),
        });
        if let Some(kids) = children.get(&x) {
            let span = (hi - lo) / kids.len() as f64;
            for (k, &w) in kids.iter().enumerate() {
                sector.insert(w, (lo + span * k as f64, lo + span * (k + 1) as f64));
            }
        }
    }
    Ok(TreeOfCircles {
        nodes,
        depth,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cog::ComplexOfGroups;
    use crate::complex;
    use crate::development::{build_development, Pi1Model, Role};
    use crate::group::GroupSpec;
    use crate::scwol;
    use std::collections::HashMap as Map;

    fn edge_of_groups(
        left: GroupSpec,
        edge: GroupSpec,
        right: GroupSpec,
        psi0: Vec<Word>,
        psi1: Vec<Word>,
    ) -> ComplexOfGroups {
        let s = scwol::scwolify(&complex::segment()).unwrap();
        let mut groups = vec![GroupSpec::trivial(); 3];
        groups[s.t(0)] = left;
        groups[s.t(1)] = right;
        groups[s.i(0)] = edge;
        let tree = s.spanning_tree().unwrap();
        ComplexOfGroups {
            scwol: s,
            local_groups: groups,
            psi: vec![psi0, psi1],
            twist: Map::new(),
            tree,
        }
    }

    fn genus2_cog() -> ComplexOfGroups {
        let comm = vec![1, 2, -1, -2];
        edge_of_groups(
            GroupSpec::free(2, &["a", "b"]),
            GroupSpec::free(1, &["g"]),
            GroupSpec::free(2, &["c", "d"]),
            vec![comm.clone()],
            vec![comm],
        )
    }

    fn genus2_assignment(cog: &ComplexOfGroups) -> PeripheralAssignment {
        let s = &cog.scwol;
        let mut pa = PeripheralAssignment::empty(3, 2);
        // each side's peripheral is <[a,b]>; the edge group's is itself
        let comm = vec![1, 2, -1, -2];
        pa.peripherals[s.t(0)] = vec![SubgroupSpec::cyclic(comm.clone())];
        pa.peripherals[s.t(1)] = vec![SubgroupSpec::cyclic(comm)];
        pa.peripherals[s.i(0)] = vec![SubgroupSpec::cyclic(vec![1])];
        pa.arrow_maps[0].insert(0, (0, Vec::new()));
        pa.arrow_maps[1].insert(0, (0, Vec::new()));
        pa
    }

    #[test]
    fn genus2_domain_is_closed_edge() {
        let cog = genus2_cog();
        let dev = build_development(&cog, 4).unwrap();
        let pa = genus2_assignment(&cog);
        pa.verify(&cog).unwrap();
        // base parabolic point: identity coset of <gamma> at the identity
        // edge object
        let s = &cog.scwol;
        let edge_base = s.i(0);
        let x = (0..dev.objects.len())
            .find(|&x| dev.objects[x].base == edge_base && dev.objects[x].rep_len == 0)
            .unwrap();
        let pt = ParabolicPoint {
            object: x,
            peripheral: 0,
            coset: Vec::new(),
        };
        let dom = compute_domain(&dev, &pa, &pt, 2, 12).unwrap();
        assert_eq!(dom.simplex_count, 3, "one edge and its two endpoints");
        assert_eq!(dom.diameter, 1);
        assert!(dom.within_bound && dom.count_ok && dom.connected && dom.convex);
        // exactly one edge object and two vertex objects
        let edges = dom
            .simplices
            .iter()
            .filter(|&&y| dev.objects[y].base == edge_base)
            .count();
        assert_eq!(edges, 1);
    }

    #[test]
    fn amalgam_vertex_peripheral_rejected() {
        // finite vertex groups have no infinite peripherals
        let cog = edge_of_groups(
            GroupSpec::cyclic(4, "x"),
            GroupSpec::cyclic(2, "z"),
            GroupSpec::cyclic(6, "y"),
            vec![vec![1, 1]],
            vec![vec![1, 1, 1]],
        );
        let dev = build_development(&cog, 6).unwrap();
        let s = &cog.scwol;
        let mut pa = PeripheralAssignment::empty(3, 2);
        pa.peripherals[s.t(0)] = vec![SubgroupSpec::cyclic(vec![1])];
        let x = (0..dev.objects.len())
            .find(|&x| dev.objects[x].base == s.t(0))
            .unwrap();
        let pt = ParabolicPoint {
            object: x,
            peripheral: 0,
            coset: Vec::new(),
        };
        assert!(matches!(
            compute_domain(&dev, &pa, &pt, 2, 12),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn genus2_classes_are_edge_with_endpoints() {
        let cog = genus2_cog();
        let dev = build_development(&cog, 4).unwrap();
        let pa = genus2_assignment(&cog);
        let classes = glue_boundary_classes(&dev, &pa).unwrap();
        assert!(!classes.is_empty());
        let s = &cog.scwol;
        let edge_base = s.i(0);
        for class in &classes {
            let edges: Vec<_> = class
                .members
                .iter()
                .filter(|m| dev.objects[m.object].base == edge_base)
                .collect();
            let verts: Vec<_> = class
                .members
                .iter()
                .filter(|m| dev.objects[m.object].base != edge_base)
                .collect();
            assert_eq!(edges.len(), 1, "class {class:?}");
            assert_eq!(verts.len(), 2, "class {class:?}");
        }
        let report = boundaries_embed_check(&classes);
        assert!(report.pass, "{:?}", report.violations);
    }

    #[test]
    fn no_assignment_means_no_classes() {
        let cog = genus2_cog();
        let dev = build_development(&cog, 3).unwrap();
        let pa = PeripheralAssignment::empty(3, 2);
        let classes = glue_boundary_classes(&dev, &pa).unwrap();
        assert!(classes.is_empty());
    }

    #[test]
    fn forced_merge_fails_embed_check() {
        // two distinct labels on one object artificially in one class
        let pt1 = ParabolicPoint {
            object: 0,
            peripheral: 0,
            coset: Vec::new(),
        };
        let pt2 = ParabolicPoint {
            object: 0,
            peripheral: 1,
            coset: Vec::new(),
        };
        let class = GluingClass {
            members: vec![pt1, pt2],
            witness_paths: Vec::new(),
        };
        let report = boundaries_embed_check(&[class]);
        assert!(!report.pass);
        assert_eq!(report.violations.len(), 1);
    }

    #[test]
    fn tree_of_circles_layout_is_deterministic() {
        let cog = genus2_cog();
        let dev = build_development(&cog, 4).unwrap();
        let toc1 = tree_of_circles(&dev, 2, 7).unwrap();
        let toc2 = tree_of_circles(&dev, 2, 7).unwrap();
        assert_eq!(
            serde_json::to_string(&toc1.to_json()).unwrap(),
            serde_json::to_string(&toc2.to_json()).unwrap()
        );
        // root has many child circles
        let root_children = toc1.nodes.iter().filter(|n| n.parent == Some(0)).count();
        assert!(root_children >= 9, "root has {root_children} children");
        // all side vertices are circles (infinite free groups)
        assert!(toc1
            .nodes
            .iter()
            .all(|n| n.kind == "point" || dev.cog.local_groups[dev.objects[n.object].base].order().is_none()));
    }

    #[test]
    fn finite_amalgam_circles_degenerate_to_points() {
        let cog = edge_of_groups(
            GroupSpec::cyclic(4, "x"),
            GroupSpec::cyclic(2, "z"),
            GroupSpec::cyclic(6, "y"),
            vec![vec![1, 1]],
            vec![vec![1, 1, 1]],
        );
        let dev = build_development(&cog, 6).unwrap();
        let toc = tree_of_circles(&dev, 2, 0).unwrap();
        assert!(toc.nodes.iter().all(|n| n.kind == "point"));
    }

    #[test]
    fn trivial_gens_fix_everything() {
        let cog = genus2_cog();
        let dev = build_development(&cog, 3).unwrap();
        let (fixed, indet) = fixed_subcomplex(&dev, &[]).unwrap();
        assert_eq!(fixed.len() + indet.len(), dev.objects.len());
    }

    #[test]
    fn domain_equivariance() {
        let cog = genus2_cog();
        let dev = build_development(&cog, 4).unwrap();
        let pa = genus2_assignment(&cog);
        let s = &cog.scwol;
        let edge_base = s.i(0);
        let x = (0..dev.objects.len())
            .find(|&x| dev.objects[x].base == edge_base && dev.objects[x].rep_len == 0)
            .unwrap();
        let pt = ParabolicPoint { object: x, peripheral: 0, coset: Vec::new() };
        let dom = compute_domain(&dev, &pa, &pt, 2, 12).unwrap();
        // translate the point by a generator of a side group and compare
        let side0 = match &dev.model {
            Pi1Model::Amal { role, .. } => {
                (0..3).find(|&o| role[o] == Role::Side(0)).unwrap()
            }
            _ => panic!(),
        };
        let g = dev.model.local_elt(side0, &[1]).unwrap();
        let moved = dev.model.mul(&g, &dev.reps[x]).unwrap();
        let gx = dev.locate(edge_base, &moved).unwrap().unwrap();
        let pt2 = ParabolicPoint { object: gx, peripheral: 0, coset: Vec::new() };
        let dom2 = compute_domain(&dev, &pa, &pt2, 2, 12).unwrap();
        // translated domain: image of each simplex under g
        let mut expect: Vec<usize> = dom
            .simplices
            .iter()
            .map(|&y| {
                let m = dev.model.mul(&g, &dev.reps[y]).unwrap();
                dev.locate(dev.objects[y].base, &m).unwrap().unwrap()
            })
            .collect();
        expect.sort_unstable();
        let mut got = dom2.simplices.clone();
        got.sort_unstable();
        assert_eq!(got, expect);
    }
}
