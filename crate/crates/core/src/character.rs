//! Class functions and character tables over `Q(ζ8)`.
//!
//! Tables for the built-in groups are entered as data and checked against
//! row orthonormality, column orthogonality and the degree-sum identity
//! whenever they are loaded. Class functions are indexed by the canonical
//! class order of [`GroupTable::classes`].

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use num_traits::Signed;
use serde::Serialize;

use crate::cyclo::{CycloNum, RationalJson};
use crate::error::{Error, Result};
use crate::group::{builtin_group, verify_hom, BuiltinGroup, GroupHom, GroupTable};

/// A function on conjugacy classes.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<GroupTable>,
    values: Vec<CycloNum>,
}

fn same_group(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_same(a: &ClassFunction, b: &ClassFunction) -> Result<()> {
    if same_group(&a.group, &b.group) {
        Ok(())
    } else {
        Err(Error::GroupMismatch {
            left: a.group.name().to_string(),
            right: b.group.name().to_string(),
        })
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(group: Arc<GroupTable>, values: Vec<CycloNum>) -> Result<Self> {
        if values.len() != group.classes().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} classes of {}",
                values.len(),
                group.classes().len(),
                group.name()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn from_ints(group: Arc<GroupTable>, values: &[i64]) -> Result<Self> {
        ClassFunction::new(
            group,
            values.iter().map(|&v| CycloNum::from_int(v)).collect(),
        )
    }

    pub fn zero(group: Arc<GroupTable>) -> Self {
        let n = group.classes().len();
        ClassFunction {
            group,
            values: vec![CycloNum::zero(); n],
        }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn values(&self) -> &[CycloNum] {
        &self.values
    }

    /// Value at an element (not a class index).
    pub fn at(&self, g: usize) -> &CycloNum {
        &self.values[self.group.classes().class_of(g)]
    }

    /// Value at the element with the given word. Panics on an unknown word.
    pub fn at_word(&self, word: &str) -> &CycloNum {
        let g = self
            .group
            .element(word)
            .unwrap_or_else(|| panic!("no element `{word}` in {}", self.group.name()));
        self.at(g)
    }

    /// `f(e)` when it is a positive integer, i.e. the dimension of a character.
    pub fn degree(&self) -> Option<u64> {
        self.at(self.group.identity())
            .as_integer()
            .filter(|n| n.is_positive())
            .and_then(|n| u64::try_from(n).ok())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        check_same(self, other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ClassFunction {
            group: Arc::clone(&self.group),
            values,
        })
    }

    pub fn scale(&self, k: i64) -> ClassFunction {
        let k = CycloNum::from_int(k);
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v * &k).collect(),
        }
    }

    /// `Σ nᵢ χᵢ` over the given basis.
    pub fn combination(basis: &[ClassFunction], coeffs: &[u64]) -> Result<ClassFunction> {
        let first = basis
            .first()
            .ok_or_else(|| Error::InvalidInput("empty basis".into()))?;
        let mut acc = ClassFunction::zero(Arc::clone(&first.group));
        for (chi, &n) in basis.iter().zip(coeffs) {
            if n > 0 {
                acc = acc.add(&chi.scale(n as i64))?;
            }
        }
        Ok(acc)
    }

    pub fn map_values(&self, f: impl Fn(&CycloNum) -> CycloNum) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(f).collect(),
        }
    }
}

/// `(1/|G|) Σ_K |K| · conj(a(K)) · b(K)`
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<CycloNum> {
    check_same(a, b)?;
    let sizes = &a.group.classes().sizes;
    let sum: CycloNum = a
        .values
        .iter()
        .zip(&b.values)
        .zip(sizes)
        .map(|((x, y), &k)| x.conj() * y * CycloNum::from_int(k as i64))
        .sum();
    Ok(sum * CycloNum::frac(1, a.group.order() as i64))
}

/// Pointwise product, the character of the tensor product.
pub fn tensor(a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
    check_same(a, b)?;
    Ok(ClassFunction {
        group: Arc::clone(&a.group),
        values: a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect(),
    })
}

/// Character of the conjugation action `X ↦ U X U†`: pointwise `|χ_U|²`.
pub fn conj_character(u: &ClassFunction) -> ClassFunction {
    u.map_values(CycloNum::abs_sqr)
}

pub fn trivial_character(g: &Arc<GroupTable>) -> ClassFunction {
    let n = g.classes().len();
    ClassFunction {
        group: Arc::clone(g),
        values: vec![CycloNum::one(); n],
    }
}

/// `|G|` at the identity class, zero elsewhere.
pub fn regular_character(g: &Arc<GroupTable>) -> ClassFunction {
    let mut f = ClassFunction::zero(Arc::clone(g));
    let e = g.classes().class_of(g.identity());
    f.values[e] = CycloNum::from_int(g.order() as i64);
    f
}

/// `g ↦ f(proj(g))`, checked to be constant on every source class.
pub fn pullback(f: &ClassFunction, proj: &GroupHom) -> Result<ClassFunction> {
    if !same_group(&f.group, &proj.target) {
        return Err(Error::GroupMismatch {
            left: f.group.name().to_string(),
            right: proj.target.name().to_string(),
        });
    }
    let src = &proj.source;
    let mut values = Vec::with_capacity(src.classes().len());
    for class in &src.classes().classes {
        let v = f.at(proj.apply(class[0]));
        if let Some(&bad) = class.iter().find(|&&g| f.at(proj.apply(g)) != v) {
            return Err(Error::NotClassConstant {
                element: src.word(bad).to_string(),
            });
        }
        values.push(v.clone());
    }
    ClassFunction::new(Arc::clone(src), values)
}

/// Multiplicities `⟨χᵢ, f⟩`, required to be non-negative integers.
pub fn decompose(f: &ClassFunction, table: &CharTable) -> Result<Vec<u64>> {
    table
        .irreducibles
        .iter()
        .zip(&table.labels)
        .map(|(chi, label)| {
            let m = inner_product(chi, f)?;
            m.as_integer()
                .filter(|n| !n.is_negative())
                .and_then(|n| u64::try_from(n).ok())
                .ok_or_else(|| Error::NotACharacter {
                    label: label.clone(),
                    value: m.to_string(),
                })
        })
        .collect()
}

/// An ordered list of irreducible characters with labels.
#[derive(Clone, Debug)]
pub struct CharTable {
    pub group: Arc<GroupTable>,
    pub irreducibles: Vec<ClassFunction>,
    pub labels: Vec<String>,
}

impl CharTable {
    /// Builds a table from raw rows and runs the full verification.
    pub fn from_rows(
        group: Arc<GroupTable>,
        labels: Vec<String>,
        rows: Vec<Vec<CycloNum>>,
    ) -> Result<Self> {
        let fail = |reason: String| Error::TableVerificationFailed {
            group: group.name().to_string(),
            reason,
        };
        if labels.len() != rows.len() {
            return Err(fail(format!(
                "{} labels for {} rows",
                labels.len(),
                rows.len()
            )));
        }
        let irreducibles = rows
            .into_iter()
            .map(|r| ClassFunction::new(Arc::clone(&group), r))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| fail(e.to_string()))?;
        let table = CharTable {
            group: Arc::clone(&group),
            irreducibles,
            labels,
        };
        table.verify()?;
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&ClassFunction> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.irreducibles[i])
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles
            .iter()
            .map(|c| c.degree().unwrap_or(0))
            .collect()
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn trivial(&self) -> &ClassFunction {
        &self.irreducibles[0]
    }

    /// Row orthonormality, column orthogonality, degree sum, class count.
    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        let fail = |reason: String| Error::TableVerificationFailed {
            group: g.name().to_string(),
            reason,
        };
        let nc = g.classes().len();
        if self.irreducibles.len() != nc {
            return Err(fail(format!(
                "{} irreducibles for {} classes",
                self.irreducibles.len(),
                nc
            )));
        }
        if self.trivial() != &trivial_character(g) {
            return Err(fail("first row is not the trivial character".into()));
        }
        let mut degree_sum = 0u64;
        for (chi, label) in self.irreducibles.iter().zip(&self.labels) {
            let d = chi
                .degree()
                .ok_or_else(|| fail(format!("{label}(e) is not a positive integer")))?;
            degree_sum += d * d;
        }
        if degree_sum != g.order() as u64 {
            return Err(fail(format!(
                "Σ χ(e)² = {degree_sum} ≠ |G| = {}",
                g.order()
            )));
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate() {
                let ip = inner_product(a, b)?;
                let want = CycloNum::from_int((i == j) as i64);
                if ip != want {
                    return Err(fail(format!(
                        "⟨{}, {}⟩ = {} ≠ {}",
                        self.labels[i], self.labels[j], ip, want
                    )));
                }
            }
        }
        let sizes = &g.classes().sizes;
        for (a, &size) in sizes.iter().enumerate().take(nc) {
            for b in 0..nc {
                let s: CycloNum = self
                    .irreducibles
                    .iter()
                    .map(|chi| chi.values[a].conj() * &chi.values[b])
                    .sum();
                let want = if a == b {
                    CycloNum::from_int((g.order() / size) as i64)
                } else {
                    CycloNum::zero()
                };
                if s != want {
                    return Err(fail(format!(
                        "column orthogonality fails at classes ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Aligned text with class representatives as column heads.
    pub fn render(&self) -> String {
        let g = &self.group;
        let heads: Vec<String> = g
            .classes()
            .representatives
            .iter()
            .map(|&r| g.word(r).to_string())
            .collect();
        let cells: Vec<Vec<String>> = self
            .irreducibles
            .iter()
            .map(|c| c.values.iter().map(ToString::to_string).collect())
            .collect();
        let label_w = self
            .labels
            .iter()
            .map(|l| l.chars().count())
            .max()
            .unwrap_or(0);
        let sizes: Vec<String> = g.classes().sizes.iter().map(|s| format!("({s})")).collect();
        let col_w: Vec<usize> = (0..heads.len())
            .map(|k| {
                cells
                    .iter()
                    .map(|row| row[k].chars().count())
                    .chain([heads[k].chars().count(), sizes[k].chars().count()])
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let pad =
            |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
        let mut out = format!("character table {} order {}\n", g.name(), g.order());
        let head: Vec<String> = heads.iter().zip(&col_w).map(|(h, &w)| pad(h, w)).collect();
        let _ = writeln!(out, "{}  {}", pad("", label_w), head.join("  ").trim_end());
        let sizes: Vec<String> = sizes.iter().zip(&col_w).map(|(s, &w)| pad(s, w)).collect();
        let _ = writeln!(out, "{}  {}", pad("", label_w), sizes.join("  ").trim_end());
        for (label, row) in self.labels.iter().zip(&cells) {
            let r: Vec<String> = row.iter().zip(&col_w).map(|(c, &w)| pad(c, w)).collect();
            let _ = writeln!(out, "{}  {}", pad(label, label_w), r.join("  ").trim_end());
        }
        out
    }

    pub fn to_json(&self) -> TableJson {
        let g = &self.group;
        TableJson {
            group: g.name().to_string(),
            representatives: g
                .classes()
                .representatives
                .iter()
                .map(|&r| g.word(r).to_string())
                .collect(),
            class_sizes: g.classes().sizes.clone(),
            labels: self.labels.clone(),
            values: self
                .irreducibles
                .iter()
                .map(|c| {
                    c.values
                        .iter()
                        .map(|v| v.coeffs().iter().map(RationalJson::from).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// JSON export: every value is its 4-tuple of ζ-basis coefficients.
#[derive(Serialize, Debug, Clone)]
pub struct TableJson {
    pub group: String,
    pub representatives: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub labels: Vec<String>,
    pub values: Vec<Vec<Vec<RationalJson>>>,
}

/// Unverified table data for a built-in group.
#[derive(Clone, Debug)]
pub struct RawTable {
    pub group: BuiltinGroup,
    pub labels: Vec<String>,
    pub rows: Vec<Vec<CycloNum>>,
}

impl RawTable {
    pub fn build(self) -> Result<CharTable> {
        CharTable::from_rows(builtin_group(self.group), self.labels, self.rows)
    }
}

fn ints(row: &[i64]) -> Vec<CycloNum> {
    row.iter().map(|&v| CycloNum::from_int(v)).collect()
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The hard-coded table data, in canonical class order.
pub fn builtin_table_data(which: BuiltinGroup) -> RawTable {
    let (labels, rows) = match which {
        // (e, a, b, ab)
        BuiltinGroup::K4 => (
            labels(&["χ1", "χ2", "χ3", "χ4"]),
            vec![
                ints(&[1, 1, 1, 1]),
                ints(&[1, -1, 1, -1]),
                ints(&[1, 1, -1, -1]),
                ints(&[1, -1, -1, 1]),
            ],
        ),
        // χ_{k+1}(t^j) = i^{kj}
        BuiltinGroup::Z4 => (
            labels(&["χ1", "χ2", "χ3", "χ4"]),
            (0..4)
                .map(|k| (0..4).map(|j| CycloNum::zeta_pow(2 * k * j)).collect())
                .collect(),
        ),
        // (e, r, r², s, rs)
        BuiltinGroup::D4 => (
            labels(&["χ1", "χ2", "χ3", "χ4", "χ5"]),
            vec![
                ints(&[1, 1, 1, 1, 1]),
                ints(&[1, 1, 1, -1, -1]),
                ints(&[1, -1, 1, 1, -1]),
                ints(&[1, -1, 1, -1, 1]),
                ints(&[2, 0, -2, 0, 0]),
            ],
        ),
        // (e, ζ, ζ², ζ³, ζ⁴, η, ζη)
        BuiltinGroup::D8 => {
            let s = CycloNum::sqrt2();
            let z = CycloNum::zero();
            let n = CycloNum::from_int;
            (
                labels(&["χ1", "χ2", "χ3", "χ4", "χE1", "χE2", "χE3"]),
                vec![
                    ints(&[1, 1, 1, 1, 1, 1, 1]),
                    ints(&[1, 1, 1, 1, 1, -1, -1]),
                    ints(&[1, -1, 1, -1, 1, 1, -1]),
                    ints(&[1, -1, 1, -1, 1, -1, 1]),
                    vec![n(2), s.clone(), z.clone(), -&s, n(-2), z.clone(), z.clone()],
                    ints(&[2, 0, -2, 0, 2, 0, 0]),
                    vec![n(2), -&s, z.clone(), s.clone(), n(-2), z.clone(), z],
                ],
            )
        }
        // Classes at i^k σ_j for (j,k) = (0,0..3), (x,0), (x,1), (y,0), (y,1), (z,0), (z,1).
        // Eight linear characters λ with λ(i𝟙) = p, λ(σx) = x, λ(σz) = z,
        // λ(σy) = p·x·z; then the defining representation and its conjugate.
        BuiltinGroup::Pauli1 => {
            let reps: [(usize, u32); 10] = [
                (0, 0),
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 0),
                (1, 1),
                (2, 0),
                (2, 1),
                (3, 0),
                (3, 1),
            ];
            let mut rows = Vec::new();
            for p in [1i64, -1] {
                for x in [1i64, -1] {
                    for z in [1i64, -1] {
                        let mu = [1, x, p * x * z, z];
                        rows.push(
                            reps.iter()
                                .map(|&(j, k)| CycloNum::from_int(p.pow(k) * mu[j]))
                                .collect(),
                        );
                    }
                }
            }
            for sign in [1i64, 3] {
                rows.push(
                    reps.iter()
                        .map(|&(j, k)| {
                            if j == 0 {
                                CycloNum::from_int(2) * CycloNum::zeta_pow(2 * sign * k as i64)
                            } else {
                                CycloNum::zero()
                            }
                        })
                        .collect(),
                );
            }
            (
                labels(&["χ1", "χ2", "χ3", "χ4", "χ5", "χ6", "χ7", "χ8", "χ9", "χ10"]),
                rows,
            )
        }
    };
    RawTable {
        group: which,
        labels,
        rows,
    }
}

/// Verified character table of a built-in group.
pub fn char_table(which: BuiltinGroup) -> Result<Arc<CharTable>> {
    static CACHE: [OnceLock<Result<Arc<CharTable>>>; 5] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    CACHE[which as usize]
        .get_or_init(|| builtin_table_data(which).build().map(Arc::new))
        .clone()
}

/// The two projective classes of `D4` (its Schur multiplier is `Z2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ProjectiveClassTag {
    #[serde(rename = "trivial")]
    Trivial,
    #[serde(rename = "non-trivial")]
    NonTrivial,
}

impl ProjectiveClassTag {
    pub const ALL: [ProjectiveClassTag; 2] =
        [ProjectiveClassTag::Trivial, ProjectiveClassTag::NonTrivial];

    pub fn as_str(self) -> &'static str {
        match self {
            ProjectiveClassTag::Trivial => "trivial",
            ProjectiveClassTag::NonTrivial => "non-trivial",
        }
    }
}

/// `D8 → D4` as the Schur cover of `D4`, with fixed lifts of the `D4`
/// class representatives: `(e, r, r², s, rs) ↦ (e, ζ, ζ², η, ζη)`.
#[derive(Clone, Debug)]
pub struct SchurCover {
    pub cover: Arc<GroupTable>,
    pub base: Arc<GroupTable>,
    pub projection: GroupHom,
    pub central: usize,
    pub lifts: Vec<usize>,
}

fn build_schur_cover() -> SchurCover {
    let cover = builtin_group(BuiltinGroup::D8);
    let base = builtin_group(BuiltinGroup::D4);
    let r = base.generator("r").expect("D4 has r");
    let s = base.generator("s").expect("D4 has s");
    let projection = GroupHom::extend_from_generators(
        Arc::clone(&cover),
        Arc::clone(&base),
        &[("ζ", r), ("η", s)],
    )
    .expect("D8 generators are ζ, η");
    assert!(verify_hom(&projection) && projection.is_surjective());
    let central = cover.element("ζ^4").expect("D8 has ζ^4");
    assert_eq!(projection.kernel(), vec![cover.identity(), central]);
    let lifts: Vec<usize> = ["e", "ζ", "ζ^2", "η", "ζη"]
        .iter()
        .map(|w| cover.element(w).expect("lift word exists"))
        .collect();
    for (&lift, &rep) in lifts.iter().zip(&base.classes().representatives) {
        assert_eq!(projection.apply(lift), rep);
    }
    SchurCover {
        cover,
        base,
        projection,
        central,
        lifts,
    }
}

pub fn schur_cover_d4() -> &'static SchurCover {
    static COVER: OnceLock<SchurCover> = OnceLock::new();
    COVER.get_or_init(build_schur_cover)
}

/// Irreducible (projective) characters of `D4` in one projective class.
#[derive(Clone, Debug)]
pub struct ProjectiveIrreps {
    pub tag: ProjectiveClassTag,
    pub labels: Vec<String>,
    /// On `D4` for the trivial class, on the cover `D8` otherwise.
    pub characters: Vec<ClassFunction>,
}

pub fn projective_irreps_d4(tag: ProjectiveClassTag) -> Result<ProjectiveIrreps> {
    match tag {
        ProjectiveClassTag::Trivial => {
            let t = char_table(BuiltinGroup::D4)?;
            Ok(ProjectiveIrreps {
                tag,
                labels: t.labels.clone(),
                characters: t.irreducibles.clone(),
            })
        }
        ProjectiveClassTag::NonTrivial => {
            let t = char_table(BuiltinGroup::D8)?;
            let cover = schur_cover_d4();
            let (labels, characters) = t
                .labels
                .iter()
                .zip(&t.irreducibles)
                .filter(|(_, chi)| {
                    let e = chi.at(cover.cover.identity());
                    chi.at(cover.central) == &-e
                })
                .map(|(l, c)| (l.clone(), c.clone()))
                .unzip();
            Ok(ProjectiveIrreps {
                tag,
                labels,
                characters,
            })
        }
    }
}

/// Descends a class function on `D8` that is constant on `⟨ζ⁴⟩`-cosets to `D4`.
pub fn push_to_quotient(f: &ClassFunction) -> Result<ClassFunction> {
    let sc = schur_cover_d4();
    if !same_group(&f.group, &sc.cover) {
        return Err(Error::WrongGroup {
            expected: sc.cover.name().to_string(),
            found: f.group.name().to_string(),
        });
    }
    let d8 = &sc.cover;
    for g in 0..d8.order() {
        if f.at(d8.mul(sc.central, g)) != f.at(g) {
            return Err(Error::NotDescendable {
                element: d8.word(g).to_string(),
            });
        }
    }
    let values = sc.lifts.iter().map(|&l| f.at(l).clone()).collect();
    let pushed = ClassFunction::new(Arc::clone(&sc.base), values)?;
    for g in 0..d8.order() {
        if pushed.at(sc.projection.apply(g)) != f.at(g) {
            return Err(Error::NotDescendable {
                element: d8.word(g).to_string(),
            });
        }
    }
    Ok(pushed)
}

/// True iff every value of `f` is zero.
pub fn is_zero_function(f: &ClassFunction) -> bool {
    f.values.iter().all(CycloNum::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::quotient;

    fn d4() -> Arc<CharTable> {
        char_table(BuiltinGroup::D4).unwrap()
    }

    fn ints_of(f: &ClassFunction) -> Vec<i64> {
        f.values()
            .iter()
            .map(|v| v.as_i64().expect("integer value"))
            .collect()
    }

    #[test]
    fn all_builtin_tables_verify() {
        for which in BuiltinGroup::ALL {
            let t = char_table(which).unwrap();
            assert_eq!(t.len(), t.group.classes().len(), "{which}");
        }
    }

    #[test]
    fn table_values() {
        let t = d4();
        assert_eq!(ints_of(&t.irreducibles[4]), [2, 0, -2, 0, 0]);
        let k4 = char_table(BuiltinGroup::K4).unwrap();
        for chi in &k4.irreducibles {
            assert!(ints_of(chi).iter().all(|v| v.abs() == 1));
        }
        let d8 = char_table(BuiltinGroup::D8).unwrap();
        assert_eq!(d8.degrees(), [1, 1, 1, 1, 2, 2, 2]);
        assert_eq!(d8.degrees().iter().filter(|&&d| d == 2).count(), 3);
        let z4 = char_table(BuiltinGroup::Z4).unwrap();
        assert_eq!(z4.irreducibles[1].values()[1], CycloNum::i());
        assert_eq!(
            char_table(BuiltinGroup::Pauli1).unwrap().degrees(),
            [1, 1, 1, 1, 1, 1, 1, 1, 2, 2]
        );
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let mut raw = builtin_table_data(BuiltinGroup::D4);
        raw.rows[4][1] = CycloNum::from_int(1);
        assert!(matches!(
            raw.build(),
            Err(Error::TableVerificationFailed { .. })
        ));
        let mut raw = builtin_table_data(BuiltinGroup::D8);
        raw.rows.pop();
        raw.labels.pop();
        assert!(raw.build().is_err());
    }

    #[test]
    fn inner_products() {
        let t = d4();
        let chi5 = &t.irreducibles[4];
        assert_eq!(inner_product(chi5, chi5).unwrap(), CycloNum::one());
        let reg = regular_character(&t.group);
        assert_eq!(
            inner_product(&t.irreducibles[0], &reg).unwrap(),
            CycloNum::one()
        );
        assert_eq!(
            inner_product(&conj_character(chi5), chi5).unwrap(),
            CycloNum::zero()
        );
        let k4 = char_table(BuiltinGroup::K4).unwrap();
        assert!(matches!(
            inner_product(chi5, &k4.irreducibles[0]),
            Err(Error::GroupMismatch { .. })
        ));
    }

    #[test]
    fn decompositions() {
        let t = d4();
        let chi5 = &t.irreducibles[4];
        assert_eq!(
            decompose(&conj_character(chi5), &t).unwrap(),
            [1, 1, 1, 1, 0]
        );
        assert_eq!(
            decompose(&regular_character(&t.group), &t).unwrap(),
            [1, 1, 1, 1, 2]
        );
        let half = chi5.map_values(|v| v * &CycloNum::frac(1, 2));
        assert!(matches!(
            decompose(&half, &t),
            Err(Error::NotACharacter { .. })
        ));
        let neg = chi5.scale(-1);
        assert!(matches!(
            decompose(&neg, &t),
            Err(Error::NotACharacter { .. })
        ));
    }

    #[test]
    fn regular_decomposes_into_degrees() {
        for which in BuiltinGroup::ALL {
            let t = char_table(which).unwrap();
            assert_eq!(
                decompose(&regular_character(&t.group), &t).unwrap(),
                t.degrees()
            );
        }
        assert_eq!(
            ints_of(&regular_character(&builtin_group(BuiltinGroup::K4))),
            [4, 0, 0, 0]
        );
        assert_eq!(
            ints_of(&regular_character(&builtin_group(BuiltinGroup::D4))),
            [8, 0, 0, 0, 0]
        );
    }

    #[test]
    fn conj_characters() {
        let t = d4();
        assert_eq!(
            ints_of(&conj_character(&t.irreducibles[4])),
            [4, 0, 4, 0, 0]
        );
        assert_eq!(conj_character(t.trivial()), *t.trivial());
        let d8 = char_table(BuiltinGroup::D8).unwrap();
        let e1 = conj_character(d8.get("χE1").unwrap());
        assert_eq!(ints_of(&e1), [4, 2, 0, 2, 4, 0, 0]);
    }

    #[test]
    fn tensor_products() {
        let t = d4();
        let chi5 = &t.irreducibles[4];
        for chi in &t.irreducibles[..4] {
            assert_eq!(tensor(chi5, chi).unwrap(), *chi5);
        }
        assert_eq!(
            decompose(&tensor(chi5, chi5).unwrap(), &t).unwrap(),
            [1, 1, 1, 1, 0]
        );
        for a in &t.irreducibles {
            assert_eq!(tensor(t.trivial(), a).unwrap(), *a);
            for b in &t.irreducibles {
                assert_eq!(tensor(a, b).unwrap(), tensor(b, a).unwrap());
                assert!(decompose(&tensor(a, b).unwrap(), &t).is_ok());
                for c in &t.irreducibles {
                    let l = tensor(&tensor(a, b).unwrap(), c).unwrap();
                    let r = tensor(a, &tensor(b, c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn pullbacks_along_center_quotient() {
        let d4g = builtin_group(BuiltinGroup::D4);
        let k4 = builtin_group(BuiltinGroup::K4);
        let (q, proj) = quotient(&d4g, &d4g.center()).unwrap();
        let iso = crate::group::find_isomorphism(&q, &k4).unwrap();
        let composed = GroupHom::new(
            Arc::clone(&d4g),
            Arc::clone(&k4),
            proj.image.iter().map(|&x| iso.apply(x)).collect(),
        )
        .unwrap();
        assert!(verify_hom(&composed));
        assert_eq!(
            ints_of(&pullback(&regular_character(&k4), &composed).unwrap()),
            [4, 0, 4, 0, 0]
        );
        assert_eq!(
            pullback(&trivial_character(&k4), &composed).unwrap(),
            trivial_character(&d4g)
        );
        let t = d4();
        let k4t = char_table(BuiltinGroup::K4).unwrap();
        let mut hits = vec![false; 4];
        for chi in &k4t.irreducibles {
            let p = pullback(chi, &composed).unwrap();
            let idx = t.irreducibles[..4]
                .iter()
                .position(|c| *c == p)
                .expect("a linear D4 character");
            hits[idx] = true;
        }
        assert!(hits.into_iter().all(|h| h));
    }

    #[test]
    fn pullback_rejects_non_class_functions() {
        // r and r³ are conjugate in D4 but land on different Z4 classes.
        let d4g = builtin_group(BuiltinGroup::D4);
        let z4 = builtin_group(BuiltinGroup::Z4);
        let r = d4g.element("r").unwrap();
        let r3 = d4g.element("r^3").unwrap();
        let mut image = vec![0; 8];
        image[r] = 1;
        image[r3] = 3;
        let map = GroupHom::new(d4g, Arc::clone(&z4), image).unwrap();
        let z4t = char_table(BuiltinGroup::Z4).unwrap();
        assert!(matches!(
            pullback(&z4t.irreducibles[1], &map),
            Err(Error::NotClassConstant { .. })
        ));
    }

    #[test]
    fn projective_classes() {
        let nt = projective_irreps_d4(ProjectiveClassTag::NonTrivial).unwrap();
        assert_eq!(nt.labels, ["χE1", "χE3"]);
        assert!(nt.characters.iter().all(|c| c.degree() == Some(2)));
        let tr = projective_irreps_d4(ProjectiveClassTag::Trivial).unwrap();
        assert_eq!(
            tr.characters
                .iter()
                .map(|c| c.degree().unwrap())
                .collect::<Vec<_>>(),
            [1, 1, 1, 1, 2]
        );
        let d8 = char_table(BuiltinGroup::D8).unwrap();
        let e2 = d8.get("χE2").unwrap();
        assert_eq!(e2.at_word("ζ^4"), &CycloNum::from_int(2));
    }

    #[test]
    fn push_forward_to_d4() {
        let d8 = char_table(BuiltinGroup::D8).unwrap();
        for label in ["χE1", "χE3"] {
            let chi = d8.get(label).unwrap();
            let pushed = push_to_quotient(&conj_character(chi)).unwrap();
            assert_eq!(ints_of(&pushed), [4, 2, 0, 0, 0]);
            assert_eq!(decompose(&pushed, &d4()).unwrap(), [1, 1, 0, 0, 1]);
            assert!(matches!(
                push_to_quotient(chi),
                Err(Error::NotDescendable { .. })
            ));
        }
        let t = d4();
        assert!(matches!(
            push_to_quotient(t.trivial()),
            Err(Error::WrongGroup { .. })
        ));
    }

    #[test]
    fn render_and_json() {
        let t = d4();
        let text = t.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "character table D4 order 8");
        assert!(lines[1].contains("r^2") && lines[1].contains("rs"));
        assert!(lines.last().unwrap().starts_with("χ5"));
        let j = serde_json::to_value(t.to_json()).unwrap();
        assert_eq!(j["group"], "D4");
        assert_eq!(j["labels"][4], "χ5");
        assert_eq!(j["values"][4][2][0]["num"], "-2");
        assert_eq!(j["values"][4][2].as_array().unwrap().len(), 4);
    }
}
