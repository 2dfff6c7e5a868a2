//! Finite groups as explicit multiplication tables.
//!
//! Every group here has order at most 32, so all structural facts
//! (associativity, inverses, normality, homomorphism laws) are checked
//! exhaustively. Element order is fixed by the constructor and is part of
//! the contract: conjugacy classes are listed by their lowest-index element,
//! and class functions are indexed in that order.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::hash::Hash;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};

/// The groups this crate knows how to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BuiltinGroup {
    K4,
    Z4,
    D4,
    D8,
    Pauli1,
}

impl BuiltinGroup {
    pub const ALL: [BuiltinGroup; 5] = [
        BuiltinGroup::K4,
        BuiltinGroup::Z4,
        BuiltinGroup::D4,
        BuiltinGroup::D8,
        BuiltinGroup::Pauli1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinGroup::K4 => "K4",
            BuiltinGroup::Z4 => "Z4",
            BuiltinGroup::D4 => "D4",
            BuiltinGroup::D8 => "D8",
            BuiltinGroup::Pauli1 => "Pauli1",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for BuiltinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k4" => Ok(BuiltinGroup::K4),
            "z4" => Ok(BuiltinGroup::Z4),
            "d4" => Ok(BuiltinGroup::D4),
            "d8" => Ok(BuiltinGroup::D8),
            "pauli1" | "p1" => Ok(BuiltinGroup::Pauli1),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

/// Partition of a group into conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassPartition {
    pub classes: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    class_of: Vec<usize>,
}

impl ConjClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing element `g`.
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generator_names: Vec<(String, usize)>,
    element_words: Vec<String>,
    classes: ConjClassPartition,
}

impl GroupTable {
    /// Validates the table (Latin square, unit, associativity, inverses) and
    /// derives the class structure.
    pub fn new(
        name: impl Into<String>,
        element_words: Vec<String>,
        mul: Vec<Vec<usize>>,
        generator_names: Vec<(String, usize)>,
    ) -> Result<Self> {
        let name = name.into();
        let n = mul.len();
        let bad = |reason: String| Error::InvalidGroup {
            group: name.clone(),
            reason,
        };
        if n == 0 {
            return Err(bad("empty table".into()));
        }
        if element_words.len() != n {
            return Err(bad(format!(
                "{} words for {} elements",
                element_words.len(),
                n
            )));
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(bad(format!("row {a} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(bad(format!("row {a} is not a permutation")));
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for row in &mul {
                if std::mem::replace(&mut seen[row[b]], true) {
                    return Err(bad(format!("column {b} is not a permutation")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| bad("no two-sided identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(bad(format!(
                            "associativity fails at ({}, {}, {})",
                            element_words[a], element_words[b], element_words[c]
                        )));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                .ok_or_else(|| bad(format!("{} has no inverse", element_words[a])))?;
            inverses.push(inv);
        }
        for (gname, g) in &generator_names {
            if *g >= n {
                return Err(bad(format!("generator {gname} out of range")));
            }
        }
        let classes = partition_classes(&mul, &inverses);
        Ok(GroupTable {
            name,
            mul,
            identity,
            inverses,
            generator_names,
            element_words,
            classes,
        })
    }

    /// Builds a group from an explicit element list and a multiplication
    /// closure. Element order is the list order.
    pub fn from_elements<T, F>(
        name: impl Into<String>,
        elements: &[T],
        words: Vec<String>,
        generators: Vec<(String, T)>,
        mul: F,
    ) -> Result<Self>
    where
        T: Eq + Hash + Clone,
        F: Fn(&T, &T) -> T,
    {
        let name = name.into();
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let lookup = |x: &T| {
            index.get(x).copied().ok_or_else(|| Error::InvalidGroup {
                group: name.clone(),
                reason: "element set is not closed".into(),
            })
        };
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            table.push(
                elements
                    .iter()
                    .map(|b| lookup(&mul(a, b)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let gens = generators
            .iter()
            .map(|(n, g)| Ok((n.clone(), lookup(g)?)))
            .collect::<Result<Vec<_>>>()?;
        GroupTable::new(name.clone(), words, table, gens)
    }

    /// Generates the group spanned by `generators` under `mul`, enumerating
    /// elements breadth-first so each element gets a shortest word.
    /// Returns the table together with the concrete elements in index order.
    pub fn from_closure<T, F>(
        name: impl Into<String>,
        identity: T,
        generators: Vec<(String, T)>,
        mul: F,
        max_order: usize,
    ) -> Result<(Self, Vec<T>)>
    where
        T: Eq + Hash + Clone,
        F: Fn(&T, &T) -> T,
    {
        let name = name.into();
        let mut elements = vec![identity.clone()];
        let mut words = vec!["e".to_string()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gname, g) in &generators {
                let p = mul(&elements[i], g);
                if index.contains_key(&p) {
                    continue;
                }
                if elements.len() >= max_order {
                    return Err(Error::InvalidGroup {
                        group: name,
                        reason: format!("closure exceeds {max_order} elements"),
                    });
                }
                let w = if i == 0 {
                    gname.clone()
                } else {
                    format!("{}·{}", words[i], gname)
                };
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
                words.push(w);
            }
        }
        let table = GroupTable::from_elements(name, &elements, words, generators, mul)?;
        Ok((table, elements))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `h · g · h⁻¹`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inverse(h))
    }

    pub fn word(&self, a: usize) -> &str {
        &self.element_words[a]
    }

    pub fn words(&self) -> &[String] {
        &self.element_words
    }

    pub fn element(&self, word: &str) -> Option<usize> {
        self.element_words.iter().position(|w| w == word)
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generator_names
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generator_names
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, g)| g)
    }

    pub fn classes(&self) -> &ConjClassPartition {
        &self.classes
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with every element, in index order.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.order()).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in set {
            if x >= self.order() {
                return false;
            }
            member[x] = true;
        }
        member[self.identity]
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        self.is_subgroup(set) && self.normality_witness(set).is_none()
    }

    fn normality_witness(&self, set: &[usize]) -> Option<(usize, usize)> {
        let mut member = vec![false; self.order()];
        for &x in set {
            member[x] = true;
        }
        for &n in set {
            for h in 0..self.order() {
                if !member[self.conjugate(n, h)] {
                    return Some((n, h));
                }
            }
        }
        None
    }

    /// Text dump: a `group <name> order <n>` header followed by the
    /// multiplication table, one row of element words per left factor.
    pub fn dump(&self) -> String {
        let width = self
            .element_words
            .iter()
            .map(|w| w.chars().count())
            .max()
            .unwrap_or(1);
        let mut out = format!("group {} order {}\n", self.name, self.order());
        for row in &self.mul {
            let cells: Vec<String> = row
                .iter()
                .map(|&x| {
                    let w = &self.element_words[x];
                    let pad = width - w.chars().count();
                    format!("{w}{}", " ".repeat(pad))
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(" ").trim_end());
        }
        out
    }
}

fn partition_classes(mul: &[Vec<usize>], inverses: &[usize]) -> ConjClassPartition {
    let n = mul.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = (0..n).map(|h| mul[mul[h][g]][inverses[h]]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    ConjClassPartition {
        representatives: classes.iter().map(|c| c[0]).collect(),
        sizes: classes.iter().map(Vec::len).collect(),
        classes,
        class_of,
    }
}

/// A map between two groups given elementwise.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: Arc<GroupTable>,
    pub target: Arc<GroupTable>,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<GroupTable>,
        target: Arc<GroupTable>,
        image: Vec<usize>,
    ) -> Result<Self> {
        if image.len() != source.order() || image.iter().any(|&x| x >= target.order()) {
            return Err(Error::DimensionMismatch(format!(
                "image map for {} -> {} has wrong shape",
                source.name(),
                target.name()
            )));
        }
        Ok(GroupHom {
            source,
            target,
            image,
        })
    }

    /// Extends generator images along a breadth-first spanning tree of the
    /// source's Cayley graph. The result is a homomorphism only if the
    /// assignment respects the source relations; check with [`verify_hom`].
    pub fn extend_from_generators(
        source: Arc<GroupTable>,
        target: Arc<GroupTable>,
        images: &[(&str, usize)],
    ) -> Result<Self> {
        let mut gens = Vec::with_capacity(source.generators().len());
        for (name, g) in source.generators() {
            let img = images
                .iter()
                .find(|(n, _)| n == name)
                .map(|&(_, t)| t)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            gens.push((*g, img));
        }
        for (name, _) in images {
            if source.generator(name).is_none() {
                return Err(Error::UnknownGenerator(name.to_string()));
            }
        }
        let image = spanning_tree_image(&source, &target, &gens).ok_or_else(|| {
            Error::InvalidInput(format!(
                "generators of {} do not generate it",
                source.name()
            ))
        })?;
        GroupHom::new(source, target, image)
    }

    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order())
            .filter(|&g| self.image[g] == self.target.identity())
            .collect()
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.image
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &x in &self.image {
            seen[x] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

fn spanning_tree_image(
    source: &GroupTable,
    target: &GroupTable,
    gens: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let mut image = vec![usize::MAX; source.order()];
    image[source.identity()] = target.identity();
    let mut queue = VecDeque::from([source.identity()]);
    while let Some(g) = queue.pop_front() {
        for &(x, tx) in gens {
            let h = source.mul(g, x);
            if image[h] == usize::MAX {
                image[h] = target.mul(image[g], tx);
                queue.push_back(h);
            }
        }
    }
    image.iter().all(|&x| x != usize::MAX).then_some(image)
}

/// True iff `h(g·k) = h(g)·h(k)` for every pair.
pub fn verify_hom(h: &GroupHom) -> bool {
    let (s, t) = (&h.source, &h.target);
    h.image.len() == s.order()
        && (0..s.order())
            .all(|a| (0..s.order()).all(|b| h.image[s.mul(a, b)] == t.mul(h.image[a], h.image[b])))
}

pub fn conjugacy_classes(g: &GroupTable) -> ConjClassPartition {
    g.classes().clone()
}

pub fn center(g: &GroupTable) -> Vec<usize> {
    g.center()
}

/// Quotient by a normal subgroup, with the projection homomorphism.
///
/// Cosets are ordered by their lowest-index member, which also serves as
/// the coset's word. Each source generator maps to a generator of the same
/// name in the quotient.
pub fn quotient(g: &Arc<GroupTable>, n: &[usize]) -> Result<(Arc<GroupTable>, GroupHom)> {
    if !g.is_subgroup(n) {
        return Err(Error::NotSubgroup {
            group: g.name().to_string(),
        });
    }
    if let Some((x, h)) = g.normality_witness(n) {
        return Err(Error::NotNormal {
            group: g.name().to_string(),
            witness: format!("{}·{}·{}⁻¹", g.word(h), g.word(x), g.word(h)),
        });
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in 0..g.order() {
        if coset_of[a] != usize::MAX {
            continue;
        }
        for &m in n {
            coset_of[g.mul(a, m)] = reps.len();
        }
        reps.push(a);
    }
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
        .collect();
    let words = reps.iter().map(|&a| g.word(a).to_string()).collect();
    let gens = g
        .generators()
        .iter()
        .map(|(name, x)| (name.clone(), coset_of[*x]))
        .collect();
    let n_words: Vec<&str> = n.iter().map(|&x| g.word(x)).collect();
    let name = format!("{}/{{{}}}", g.name(), n_words.join(","));
    let q = Arc::new(GroupTable::new(name, words, table, gens)?);
    let proj = GroupHom::new(Arc::clone(g), Arc::clone(&q), coset_of)?;
    Ok((q, proj))
}

/// Searches for an isomorphism `a → b` by trying every assignment of `a`'s
/// generators. Returns the first bijective homomorphism found.
pub fn find_isomorphism(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> Option<GroupHom> {
    if a.order() != b.order() || a.classes().sizes.len() != b.classes().sizes.len() {
        return None;
    }
    let gens: Vec<(String, usize)> = a.generators().to_vec();
    let k = gens.len();
    let mut choice = vec![0usize; k];
    loop {
        // Generator orders must match before trying the extension.
        let orders_ok = gens
            .iter()
            .zip(&choice)
            .all(|((_, g), &t)| a.element_order(*g) == b.element_order(t));
        if orders_ok {
            let pairs: Vec<(usize, usize)> = gens
                .iter()
                .map(|(_, g)| *g)
                .zip(choice.iter().copied())
                .collect();
            if let Some(image) = spanning_tree_image(a, b, &pairs) {
                if let Ok(h) = GroupHom::new(Arc::clone(a), Arc::clone(b), image) {
                    if h.is_bijective() && verify_hom(&h) {
                        return Some(h);
                    }
                }
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            choice[i] += 1;
            if choice[i] < b.order() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn dihedral(name: &str, n: usize, r: &str, s: &str) -> GroupTable {
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|f| (0..n).map(move |k| (k, f))).collect();
    let words = elements
        .iter()
        .map(|&(k, f)| {
            let rot = match k {
                0 => String::new(),
                1 => r.to_string(),
                _ => format!("{r}^{k}"),
            };
            match (rot.is_empty(), f) {
                (true, 0) => "e".to_string(),
                (_, 0) => rot,
                (_, _) => format!("{rot}{s}"),
            }
        })
        .collect();
    GroupTable::from_elements(
        name,
        &elements,
        words,
        vec![(r.to_string(), (1, 0)), (s.to_string(), (0, 1))],
        |&(a, f), &(b, g)| {
            let b = if f == 1 { (n - b) % n } else { b };
            ((a + b) % n, f ^ g)
        },
    )
    .expect("dihedral table is a group")
}

/// `σ_a σ_b = i^phase σ_c` on Pauli indices 0..4.
pub(crate) fn pauli_product(a: usize, b: usize) -> (usize, usize) {
    match (a, b) {
        (0, b) => (b, 0),
        (a, 0) => (a, 0),
        (a, b) if a == b => (0, 0),
        (a, b) => {
            let c = 6 - a - b;
            let cyclic = matches!((a, b, c), (1, 2, 3) | (2, 3, 1) | (3, 1, 2));
            (c, if cyclic { 1 } else { 3 })
        }
    }
}

fn build(which: BuiltinGroup) -> GroupTable {
    match which {
        BuiltinGroup::K4 => {
            let elements = [(0u8, 0u8), (1, 0), (0, 1), (1, 1)];
            let words = ["e", "a", "b", "ab"].map(String::from).to_vec();
            GroupTable::from_elements(
                "K4",
                &elements,
                words,
                vec![("a".into(), (1, 0)), ("b".into(), (0, 1))],
                |&(a, b), &(c, d)| (a ^ c, b ^ d),
            )
            .expect("K4 table is a group")
        }
        BuiltinGroup::Z4 => {
            let elements = [0usize, 1, 2, 3];
            let words = ["e", "t", "t^2", "t^3"].map(String::from).to_vec();
            GroupTable::from_elements("Z4", &elements, words, vec![("t".into(), 1)], |a, b| {
                (a + b) % 4
            })
            .expect("Z4 table is a group")
        }
        BuiltinGroup::D4 => dihedral("D4", 4, "r", "s"),
        BuiltinGroup::D8 => dihedral("D8", 8, "ζ", "η"),
        BuiltinGroup::Pauli1 => {
            // i^k σ_j at index 4j + k.
            let elements: Vec<(usize, usize)> =
                (0..4).flat_map(|j| (0..4).map(move |k| (j, k))).collect();
            let phase = ["", "i", "-", "-i"];
            let pauli = ["𝟙", "σx", "σy", "σz"];
            let words = elements
                .iter()
                .map(|&(j, k)| format!("{}{}", phase[k], pauli[j]))
                .collect();
            GroupTable::from_elements(
                "Pauli1",
                &elements,
                words,
                vec![
                    ("i𝟙".into(), (0, 1)),
                    ("σx".into(), (1, 0)),
                    ("σy".into(), (2, 0)),
                    ("σz".into(), (3, 0)),
                ],
                |&(j1, k1), &(j2, k2)| {
                    let (j, p) = pauli_product(j1, j2);
                    (j, (k1 + k2 + p) % 4)
                },
            )
            .expect("Pauli1 table is a group")
        }
    }
}

/// Shared, verified instance of a built-in group.
pub fn builtin_group(which: BuiltinGroup) -> Arc<GroupTable> {
    static CACHE: [OnceLock<Arc<GroupTable>>; 5] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    Arc::clone(CACHE[which.slot()].get_or_init(|| Arc::new(build(which))))
}
