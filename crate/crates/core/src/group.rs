//! Finitely generated groups with word-problem backends.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smith;
use crate::word::{self, Letter, Word};

/// Three-valued equality answer. `Unknown` is a legal, reported outcome for
/// the finitely presented backend; it is never silently coerced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eq3 {
    Equal,
    NotEqual,
    Unknown,
}

impl Eq3 {
    pub fn is_equal(self) -> bool {
        self == Eq3::Equal
    }
}

/// A group element: the word it was built from and its backend normal form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Element {
    pub word: Word,
    pub normal: Word,
    /// False only when a finitely presented backend ran out of rewriting
    /// budget, so `normal` may not be canonical.
    pub canonical: bool,
}

// Equality and hashing go through the normal form; the originating word is
// informational only.
impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.normal == other.normal
    }
}
impl Eq for Element {}
impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.normal.hash(state);
    }
}

impl Element {
    pub fn is_empty(&self) -> bool {
        self.normal.is_empty()
    }
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiniteTable {
    pub names: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub gens: Vec<usize>,
    #[serde(skip)]
    pub identity: usize,
    #[serde(skip)]
    pub inv: Vec<usize>,
    /// Shortlex-minimal word over `gens` for each element.
    #[serde(skip)]
    pub canonical_words: Vec<Word>,
}

impl FiniteTable {
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>, gens: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid("multiplication table is not square".into()));
        }
        // identity
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| Error::Invalid("table has no identity".into()))?;
        // associativity by exhaustion
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::Invalid(format!(
                            "table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        // inverses
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                .ok_or_else(|| Error::Invalid(format!("element {a} has no inverse")))?;
        }
        if gens.iter().any(|&g| g >= n) {
            return Err(Error::Invalid("generator index out of range".into()));
        }
        let mut table = FiniteTable {
            names,
            mul,
            gens,
            identity,
            inv,
            canonical_words: Vec::new(),
        };
        table.rebuild_caches()?;
        Ok(table)
    }

    /// Recompute identity/inverses/canonical words (used after deserializing).
    pub fn rebuild_caches(&mut self) -> Result<()> {
        let n = self.names.len();
        if self.identity >= n || self.inv.len() != n {
            let rebuilt = FiniteTable::new(self.names.clone(), self.mul.clone(), self.gens.clone())?;
            *self = rebuilt;
            return Ok(());
        }
        // BFS from identity over generators for shortlex canonical words
        let mut canon: Vec<Option<Word>> = vec![None; n];
        canon[self.identity] = Some(Vec::new());
        let mut frontier = vec![self.identity];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                let base = canon[x].clone().unwrap();
                for (gi, &g) in self.gens.iter().enumerate() {
                    for sign in [1i32, -1] {
                        let target = if sign > 0 {
                            self.mul[x][g]
                        } else {
                            self.mul[x][self.inv[g]]
                        };
                        let mut w = base.clone();
                        w.push(sign * (gi as i32 + 1));
                        match &canon[target] {
                            None => {
                                canon[target] = Some(w);
                                next.push(target);
                            }
                            Some(existing) => {
                                if word::word_cmp(&w, existing).is_lt() {
                                    canon[target] = Some(w);
                                }
                            }
                        }
                    }
                }
            }
            frontier = next;
        }
        if canon.iter().any(|c| c.is_none()) {
            return Err(Error::Invalid(
                "generators do not generate the whole table".into(),
            ));
        }
        self.canonical_words = canon.into_iter().map(|c| c.unwrap()).collect();
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    /// Evaluate a word in generator letters to an element index.
    pub fn eval(&self, w: &[Letter]) -> usize {
        let mut x = self.identity;
        for &l in w {
            let g = self.gens[(l.unsigned_abs() - 1) as usize];
            let g = if l < 0 { self.inv[g] } else { g };
            x = self.mul[x][g];
        }
        x
    }

    pub fn cyclic(n: usize, gen_name: &str) -> Self {
        let names = (0..n)
            .map(|k| {
                if k == 0 {
                    "1".to_string()
                } else if k == 1 {
                    gen_name.to_string()
                } else {
                    format!("{gen_name}^{k}")
                }
            })
            .collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        FiniteTable::new(names, mul, gens).expect("cyclic table is a group")
    }

    /// Dihedral group of order 2n, generators: rotation r and reflection s.
    /// Element 2k = r^k, element 2k+1 = r^k s.
    pub fn dihedral(n: usize) -> Self {
        let order = 2 * n;
        let names = (0..order)
            .map(|i| {
                let k = i / 2;
                match (k, i % 2) {
                    (0, 0) => "1".to_string(),
                    (1, 0) => "r".to_string(),
                    (k, 0) => format!("r^{k}"),
                    (0, 1) => "s".to_string(),
                    (k, _) => format!("r^{k}s"),
                }
            })
            .collect();
        let idx = |k: usize, s: usize| 2 * (k % n) + s;
        let mut mul = vec![vec![0usize; order]; order];
        for k1 in 0..n {
            for s1 in 0..2 {
                for k2 in 0..n {
                    for s2 in 0..2 {
                        // (r^k1 s^s1)(r^k2 s^s2): s r^k = r^-k s
                        let k = if s1 == 0 { k1 + k2 } else { k1 + n - (k2 % n) };
                        mul[idx(k1, s1)][idx(k2, s2)] = idx(k % n, (s1 + s2) % 2);
                    }
                }
            }
        }
        let gens = if n > 1 { vec![2, 1] } else { vec![1] };
        FiniteTable::new(names, mul, gens).expect("dihedral table is a group")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FreeGroup {
    pub rank: usize,
    pub names: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FpGroup {
    pub gen_names: Vec<String>,
    pub relators: Vec<Word>,
    /// Max rewriting steps for an equality query.
    pub budget: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Backend {
    FiniteTable(FiniteTable),
    Free(FreeGroup),
    /// Free product of finite groups; generators are the factors' generators
    /// concatenated in order.
    FreeProduct(Vec<FiniteTable>),
    Fp(FpGroup),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub backend: Backend,
}

impl GroupSpec {
    pub fn free(rank: usize, names: &[&str]) -> Self {
        assert_eq!(names.len(), rank);
        GroupSpec {
            backend: Backend::Free(FreeGroup {
                rank,
                names: names.iter().map(|s| s.to_string()).collect(),
            }),
        }
    }

    pub fn cyclic(n: usize, gen_name: &str) -> Self {
        GroupSpec {
            backend: Backend::FiniteTable(FiniteTable::cyclic(n, gen_name)),
        }
    }

    pub fn finite(table: FiniteTable) -> Self {
        GroupSpec {
            backend: Backend::FiniteTable(table),
        }
    }

    pub fn trivial() -> Self {
        GroupSpec::cyclic(1, "t")
    }

    pub fn dihedral(n: usize) -> Self {
        GroupSpec {
            backend: Backend::FiniteTable(FiniteTable::dihedral(n)),
        }
    }

    pub fn gen_names(&self) -> Vec<String> {
        match &self.backend {
            Backend::FiniteTable(t) => t.gens.iter().map(|&g| t.names[g].clone()).collect(),
            Backend::Free(f) => f.names.clone(),
            Backend::FreeProduct(fs) => fs
                .iter()
                .enumerate()
                .flat_map(|(i, t)| {
                    t.gens
                        .iter()
                        .map(move |&g| format!("{}.{}", i, t.names[g]))
                        .collect::<Vec<_>>()
                })
                .collect(),
            Backend::Fp(f) => f.gen_names.clone(),
        }
    }

    pub fn num_gens(&self) -> usize {
        match &self.backend {
            Backend::FiniteTable(t) => t.gens.len(),
            Backend::Free(f) => f.rank,
            Backend::FreeProduct(fs) => fs.iter().map(|t| t.gens.len()).sum(),
            Backend::Fp(f) => f.gen_names.len(),
        }
    }

    pub fn identity(&self) -> Element {
        Element {
            word: Vec::new(),
            normal: Vec::new(),
            canonical: true,
        }
    }

    fn check_letters(&self, w: &[Letter]) -> Result<()> {
        let n = self.num_gens() as u32;
        for &l in w {
            if l == 0 || l.unsigned_abs() > n {
                return Err(Error::UnknownSymbol(format!("letter {l}")));
            }
        }
        Ok(())
    }

    /// Canonical form of a word per backend. Idempotent.
    pub fn normalize(&self, w: &[Letter]) -> Result<Element> {
        self.check_letters(w)?;
        match &self.backend {
            Backend::Free(_) => {
                let normal = word::free_reduce(w);
                Ok(Element {
                    word: w.to_vec(),
                    normal,
                    canonical: true,
                })
            }
            Backend::FiniteTable(t) => {
                let x = t.eval(w);
                Ok(Element {
                    word: w.to_vec(),
                    normal: t.canonical_words[x].clone(),
                    canonical: true,
                })
            }
            Backend::FreeProduct(fs) => Ok(Element {
                word: w.to_vec(),
                normal: free_product_normal(fs, w),
                canonical: true,
            }),
            Backend::Fp(fp) => {
                let (normal, canonical) = fp_reduce(fp, w);
                Ok(Element {
                    word: w.to_vec(),
                    normal,
                    canonical,
                })
            }
        }
    }

    pub fn elt(&self, w: &[Letter]) -> Result<Element> {
        self.normalize(w)
    }

    pub fn parse(&self, s: &str) -> Result<Element> {
        let w = word::parse_word(s, &self.gen_names())?;
        self.normalize(&w)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.normalize(&word::concat(&a.normal, &b.normal))
            .expect("normalized letters are valid")
    }

    pub fn inv(&self, a: &Element) -> Element {
        self.normalize(&word::inverse(&a.normal))
            .expect("normalized letters are valid")
    }

    pub fn equal(&self, a: &Element, b: &Element) -> Eq3 {
        match &self.backend {
            Backend::Free(_) | Backend::FiniteTable(_) | Backend::FreeProduct(_) => {
                if a.normal == b.normal {
                    Eq3::Equal
                } else {
                    Eq3::NotEqual
                }
            }
            Backend::Fp(fp) => {
                let w = word::free_reduce(&word::concat(&a.normal, &word::inverse(&b.normal)));
                fp_is_identity(fp, &w)
            }
        }
    }

    pub fn is_identity(&self, a: &Element) -> Eq3 {
        self.equal(a, &self.identity())
    }

    pub fn order(&self) -> Option<usize> {
        match &self.backend {
            Backend::FiniteTable(t) => Some(t.order()),
            Backend::Free(f) => {
                if f.rank == 0 {
                    Some(1)
                } else {
                    None
                }
            }
            Backend::FreeProduct(fs) => {
                let nontrivial: Vec<_> = fs.iter().filter(|t| t.order() > 1).collect();
                match nontrivial.len() {
                    0 => Some(1),
                    1 => Some(nontrivial[0].order()),
                    _ => None,
                }
            }
            Backend::Fp(_) => None,
        }
    }

    /// All elements, for finite backends.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match &self.backend {
            Backend::FiniteTable(t) => Some(
                t.canonical_words
                    .iter()
                    .map(|w| Element {
                        word: w.clone(),
                        normal: w.clone(),
                        canonical: true,
                    })
                    .collect(),
            ),
            _ => {
                if self.order() == Some(1) {
                    Some(vec![self.identity()])
                } else {
                    None
                }
            }
        }
    }

    /// A presentation (generator names, relators) of the group. Finite tables
    /// are presented by their full multiplication table over all non-identity
    /// elements, which is a valid if redundant presentation.
    pub fn presentation(&self) -> (Vec<String>, Vec<Word>) {
        match &self.backend {
            Backend::Free(f) => (f.names.clone(), Vec::new()),
            Backend::Fp(f) => (f.gen_names.clone(), f.relators.clone()),
            Backend::FiniteTable(t) => finite_table_presentation(t),
            Backend::FreeProduct(fs) => {
                let mut names = Vec::new();
                let mut relators = Vec::new();
                for (fi, t) in fs.iter().enumerate() {
                    let (ns, rs) = finite_table_presentation(t);
                    let offset = names.len() as i32;
                    names.extend(ns.into_iter().map(|n| format!("{fi}.{n}")));
                    relators.extend(rs.into_iter().map(|r| {
                        r.into_iter()
                            .map(|l| if l > 0 { l + offset } else { l - offset })
                            .collect::<Word>()
                    }));
                }
                (names, relators)
            }
        }
    }

    /// True when the group is certainly infinite, false when certainly
    /// finite, None when unknown (fp backend).
    pub fn is_infinite(&self) -> Option<bool> {
        match &self.backend {
            Backend::FiniteTable(_) => Some(false),
            Backend::Free(f) => Some(f.rank > 0),
            Backend::FreeProduct(_) => Some(self.order().is_none()),
            Backend::Fp(_) => None,
        }
    }
}

/// Presentation of a finite table group over its designated generators:
/// relators w_x · s · w_{x·s}⁻¹ from the BFS canonical words (cycles of the
/// Cayley graph against its canonical spanning tree).
fn finite_table_presentation(t: &FiniteTable) -> (Vec<String>, Vec<Word>) {
    let names: Vec<String> = t.gens.iter().map(|&g| t.names[g].clone()).collect();
    let mut relators: Vec<Word> = Vec::new();
    for x in 0..t.order() {
        for (si, &s) in t.gens.iter().enumerate() {
            let y = t.mul[x][s];
            let mut r = t.canonical_words[x].clone();
            r.push(si as i32 + 1);
            r.extend(word::inverse(&t.canonical_words[y]));
            let r = word::free_reduce(&r);
            if !r.is_empty() && !relators.contains(&r) {
                relators.push(r);
            }
        }
    }
    (names, relators)
}

/// Free product normal form: alternating nontrivial canonical syllables.
fn free_product_normal(factors: &[FiniteTable], w: &[Letter]) -> Word {
    // letter -> (factor index, local letter)
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for t in factors {
        offsets.push(total);
        total += t.gens.len();
    }
    let factor_of = |l: Letter| -> (usize, Letter) {
        let idx = (l.unsigned_abs() - 1) as usize;
        let f = offsets
            .iter()
            .rposition(|&o| o <= idx)
            .expect("letter in range");
        let local = (idx - offsets[f]) as i32 + 1;
        (f, if l < 0 { -local } else { local })
    };
    // syllables: (factor, element index)
    let mut syllables: Vec<(usize, usize)> = Vec::new();
    for &l in w {
        let (f, local) = factor_of(l);
        let t = &factors[f];
        let g = t.gens[(local.unsigned_abs() - 1) as usize];
        let g = if local < 0 { t.inv[g] } else { g };
        match syllables.last_mut() {
            Some((lf, x)) if *lf == f => {
                *x = t.mul[*x][g];
                if *x == t.identity {
                    syllables.pop();
                    // adjacent syllables of equal factor may now merge; handle
                    // by re-scanning the tail
                    while syllables.len() >= 2 {
                        let k = syllables.len();
                        let (f1, x1) = syllables[k - 2];
                        let (f2, x2) = syllables[k - 1];
                        if f1 == f2 {
                            let t1 = &factors[f1];
                            let merged = t1.mul[x1][x2];
                            syllables.truncate(k - 2);
                            if merged != t1.identity {
                                syllables.push((f1, merged));
                            }
                        } else {
                            break;
                        }
                    }
                }
            }
            _ => {
                if g != t.identity {
                    syllables.push((f, g));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (f, x) in syllables {
        let t = &factors[f];
        for &l in &t.canonical_words[x] {
            let global = offsets[f] as i32 + l.abs();
            out.push(if l < 0 { -global } else { global });
        }
    }
    out
}

/// Bounded rewriting for the fp backend: repeatedly replace long halves of
/// relators by the inverse of the short remainder (Dehn-style passes over
/// all cyclic rotations of relators and their inverses).
fn fp_reduce(fp: &FpGroup, w: &[Letter]) -> (Word, bool) {
    let mut rules: Vec<(Word, Word)> = Vec::new();
    for r in &fp.relators {
        let r = word::free_reduce(r);
        if r.is_empty() {
            continue;
        }
        for base in [r.clone(), word::inverse(&r)] {
            let n = base.len();
            for rot in 0..n {
                let rotated: Word = base[rot..].iter().chain(base[..rot].iter()).copied().collect();
                // replace prefix p by inverse of suffix when |p| * 2 >= |r| + 1
                for cut in (n / 2 + 1)..=n {
                    let lhs: Word = rotated[..cut].to_vec();
                    let rhs = word::inverse(&rotated[cut..]);
                    rules.push((lhs, rhs));
                }
            }
        }
    }
    let mut cur = word::free_reduce(w);
    let mut steps = 0usize;
    'outer: loop {
        if steps >= fp.budget {
            return (cur, false);
        }
        for (lhs, rhs) in &rules {
            if lhs.len() > cur.len() {
                continue;
            }
            for start in 0..=(cur.len() - lhs.len()) {
                if &cur[start..start + lhs.len()] == lhs.as_slice() {
                    let mut next = cur[..start].to_vec();
                    next.extend_from_slice(rhs);
                    next.extend_from_slice(&cur[start + lhs.len()..]);
                    let next = word::free_reduce(&next);
                    steps += 1;
                    if word::word_cmp(&next, &cur).is_lt() {
                        cur = next;
                        continue 'outer;
                    }
                }
            }
        }
        return (cur, true);
    }
}

/// Identity test for the fp backend: rewriting, then abelianization as a
/// NotEqual fast path, else Unknown.
fn fp_is_identity(fp: &FpGroup, w: &[Letter]) -> Eq3 {
    let (reduced, _) = fp_reduce(fp, w);
    if reduced.is_empty() {
        return Eq3::Equal;
    }
    let n = fp.gen_names.len();
    let exponent = |w: &[Letter]| -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &l in w {
            v[(l.unsigned_abs() - 1) as usize] += if l < 0 { -1 } else { 1 };
        }
        v
    };
    let rows: Vec<Vec<i64>> = fp.relators.iter().map(|r| exponent(r)).collect();
    if !smith::in_lattice(&rows, &exponent(&reduced)) {
        return Eq3::NotEqual;
    }
    Eq3::Unknown
}

/// Versioned JSON wrapper for the group schema.
#[derive(Serialize, Deserialize)]
struct GroupJson {
    schema_version: u32,
    backend: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<serde_json::Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<usize>,
}

impl GroupSpec {
    pub fn to_json(&self) -> serde_json::Value {
        fn table_json(t: &FiniteTable) -> GroupJson {
            GroupJson {
                schema_version: 1,
                backend: "finite_table".into(),
                rank: None,
                names: Some(t.names.clone()),
                table: Some(t.mul.clone()),
                generators: Some(t.gens.iter().map(|&g| t.names[g].clone()).collect()),
                factors: None,
                relators: None,
                budget: None,
            }
        }
        let j = match &self.backend {
            Backend::Free(f) => GroupJson {
                schema_version: 1,
                backend: "free".into(),
                rank: Some(f.rank),
                names: Some(f.names.clone()),
                table: None,
                generators: None,
                factors: None,
                relators: None,
                budget: None,
            },
            Backend::FiniteTable(t) => table_json(t),
            Backend::FreeProduct(fs) => GroupJson {
                schema_version: 1,
                backend: "free_product".into(),
                rank: None,
                names: None,
                table: None,
                generators: None,
                factors: Some(
                    fs.iter()
                        .map(|t| serde_json::to_value(table_json(t)).unwrap())
                        .collect(),
                ),
                relators: None,
                budget: None,
            },
            Backend::Fp(f) => GroupJson {
                schema_version: 1,
                backend: "fp".into(),
                rank: None,
                names: None,
                table: None,
                generators: Some(f.gen_names.clone()),
                factors: None,
                relators: Some(
                    f.relators
                        .iter()
                        .map(|r| word::format_word(r, &f.gen_names))
                        .collect(),
                ),
                budget: Some(f.budget),
            },
        };
        serde_json::to_value(j).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: GroupJson = serde_json::from_value(v.clone())?;
        if j.schema_version != 1 {
            return Err(Error::Invalid(format!(
                "unsupported schema_version {}",
                j.schema_version
            )));
        }
        fn table_from(j: &GroupJson) -> Result<FiniteTable> {
            let names = j
                .names
                .clone()
                .ok_or_else(|| Error::Invalid("finite_table needs names".into()))?;
            let mul = j
                .table
                .clone()
                .ok_or_else(|| Error::Invalid("finite_table needs table".into()))?;
            let gen_names = j
                .generators
                .clone()
                .ok_or_else(|| Error::Invalid("finite_table needs generators".into()))?;
            let gens = gen_names
                .iter()
                .map(|g| {
                    names
                        .iter()
                        .position(|n| n == g)
                        .ok_or_else(|| Error::UnknownSymbol(g.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            FiniteTable::new(names, mul, gens)
        }
        match j.backend.as_str() {
            "free" => {
                let names = j
                    .names
                    .ok_or_else(|| Error::Invalid("free needs names".into()))?;
                let rank = j.rank.unwrap_or(names.len());
                if rank != names.len() {
                    return Err(Error::Invalid("free rank/names mismatch".into()));
                }
                Ok(GroupSpec {
                    backend: Backend::Free(FreeGroup { rank, names }),
                })
            }
            "finite_table" => Ok(GroupSpec {
                backend: Backend::FiniteTable(table_from(&j)?),
            }),
            "free_product" => {
                let factors = j
                    .factors
                    .ok_or_else(|| Error::Invalid("free_product needs factors".into()))?;
                let tables = factors
                    .iter()
                    .map(|f| {
                        let fj: GroupJson = serde_json::from_value(f.clone())?;
                        table_from(&fj)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupSpec {
                    backend: Backend::FreeProduct(tables),
                })
            }
            "fp" => {
                let gen_names = j
                    .generators
                    .ok_or_else(|| Error::Invalid("fp needs generators".into()))?;
                let relators = j
                    .relators
                    .unwrap_or_default()
                    .iter()
                    .map(|r| word::parse_word(r, &gen_names))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupSpec {
                    backend: Backend::Fp(FpGroup {
                        gen_names,
                        relators,
                        budget: j.budget.unwrap_or(2000),
                    }),
                })
            }
            other => Err(Error::Invalid(format!("unknown backend `{other}`"))),
        }
    }
}

/// Cache of element products keyed by normal forms; handy in hot loops.
#[derive(Default)]
pub struct MulCache {
    map: HashMap<(Word, Word), Element>,
}

impl MulCache {
    pub fn mul(&mut self, g: &GroupSpec, a: &Element, b: &Element) -> Element {
        let key = (a.normal.clone(), b.normal.clone());
        if let Some(e) = self.map.get(&key) {
            return e.clone();
        }
        let e = g.mul(a, b);
        self.map.insert(key, e.clone());
        e
    }
}
