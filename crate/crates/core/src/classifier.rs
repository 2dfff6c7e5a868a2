//! Realizability of the seven teleportation-stable families.
//!
//! Each family fixes a group `G` and a target character for the conjugation
//! action on `L(H)`. A quantum realization is a (projective) unitary
//! representation `U` with `|χ_U|² = target`. Witnesses are found by direct
//! search over irreducible candidates; obstructions are standalone checks,
//! each scoped to the projective classes it rules out. [`classify`]
//! cross-checks the two.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::character::{
    char_table, conj_character, decompose, inner_product, projective_irreps_d4, pullback,
    push_to_quotient, schur_cover_d4, trivial_character, CharTable, ClassFunction,
    ProjectiveClassTag,
};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::{
    builtin_group, find_isomorphism, quotient, verify_hom, BuiltinGroup, GroupHom, GroupTable,
};
use crate::quantum::{conj_rep_character_from_matrices, pauli_assignment_k4};

/// Names of the seven families. The trailing `2` in `D4_123452` is the
/// multiplicity of `χ5`.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyName {
    K4_1234,
    Z4_1234,
    D4_125,
    D4_135,
    D4_145,
    D4_12345,
    D4_123452,
}

impl FamilyName {
    pub const ALL: [FamilyName; 7] = [
        FamilyName::K4_1234,
        FamilyName::Z4_1234,
        FamilyName::D4_125,
        FamilyName::D4_135,
        FamilyName::D4_145,
        FamilyName::D4_12345,
        FamilyName::D4_123452,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::K4_1234 => "K4_1234",
            FamilyName::Z4_1234 => "Z4_1234",
            FamilyName::D4_125 => "D4_125",
            FamilyName::D4_135 => "D4_135",
            FamilyName::D4_145 => "D4_145",
            FamilyName::D4_12345 => "D4_12345",
            FamilyName::D4_123452 => "D4_123452",
        }
    }

    pub fn group(self) -> BuiltinGroup {
        match self {
            FamilyName::K4_1234 => BuiltinGroup::K4,
            FamilyName::Z4_1234 => BuiltinGroup::Z4,
            _ => BuiltinGroup::D4,
        }
    }

    /// Irreducible multiplicities of the target, in table label order.
    fn multiplicities(self) -> &'static [u64] {
        match self {
            FamilyName::K4_1234 | FamilyName::Z4_1234 => &[1, 1, 1, 1],
            FamilyName::D4_125 => &[1, 1, 0, 0, 1],
            FamilyName::D4_135 => &[1, 0, 1, 0, 1],
            FamilyName::D4_145 => &[1, 0, 0, 1, 1],
            FamilyName::D4_12345 => &[1, 1, 1, 1, 1],
            FamilyName::D4_123452 => &[1, 1, 1, 1, 2],
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown family {s:?}")))
    }
}

impl Serialize for FamilyName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A family: its group, target conjugation character, and `dim L(H)`.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: FamilyName,
    pub group: Arc<GroupTable>,
    pub target: ClassFunction,
    pub dimension: u64,
}

impl Family {
    /// Builds the family from the group's character table and checks that
    /// `dimension = target(e)` and that the trivial character occurs once.
    pub fn new(name: FamilyName) -> Result<Self> {
        let table = char_table(name.group())?;
        let target = ClassFunction::combination(&table.irreducibles, name.multiplicities())?;
        let dimension = target.degree().ok_or_else(|| Error::Inconsistent {
            family: name.to_string(),
            reason: "target degree is not a non-negative integer".into(),
        })?;
        let m1 = inner_product(&trivial_character(&table.group), &target)?;
        if !m1.is_one() {
            return Err(Error::Inconsistent {
                family: name.to_string(),
                reason: format!("trivial multiplicity {m1}, expected 1"),
            });
        }
        Ok(Family {
            name,
            group: Arc::clone(&table.group),
            target,
            dimension,
        })
    }

    /// Projective classes in which a realization is searched for. `Z4` is
    /// cyclic, so its Schur multiplier is trivial. `K4` families are matched
    /// on `D4` through the pullback, which has both classes.
    pub fn projective_classes(&self) -> &'static [ProjectiveClassTag] {
        match self.name.group() {
            BuiltinGroup::Z4 => &[ProjectiveClassTag::Trivial],
            _ => &ProjectiveClassTag::ALL,
        }
    }

    /// The class function that candidates are compared against: the target
    /// itself, or its pullback to `D4` for `K4` families.
    pub fn matching_target(&self) -> Result<ClassFunction> {
        match self.name.group() {
            BuiltinGroup::K4 => pullback(&self.target, &d4_to_k4()?),
            _ => Ok(self.target.clone()),
        }
    }
}

pub fn seven_families() -> Result<Vec<Family>> {
    FamilyName::ALL.into_iter().map(Family::new).collect()
}

/// `D4 → D4/{e, r²} ≅ K4`, composed with an explicit isomorphism onto the
/// built-in `K4`.
pub fn d4_to_k4() -> Result<GroupHom> {
    let d4 = builtin_group(BuiltinGroup::D4);
    let k4 = builtin_group(BuiltinGroup::K4);
    let r2 = d4.element("r^2").expect("D4 has r^2");
    let (q, proj) = quotient(&d4, &[d4.identity(), r2])?;
    let iso = find_isomorphism(&q, &k4)
        .ok_or_else(|| Error::IsoNotFound(format!("{} ≇ K4", q.name())))?;
    let image = (0..d4.order()).map(|g| iso.apply(proj.apply(g))).collect();
    let hom = GroupHom::new(d4, k4, image)?;
    debug_assert!(verify_hom(&hom) && hom.is_surjective());
    Ok(hom)
}

/// Named reasons a family cannot be realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ObstructionKind {
    DimensionBound,
    IrreducibilityForced,
    TrivialClassMismatch,
    ParityOfChi5,
    ReflectionVanishing,
    AbelianFixedProjectors,
}

impl ObstructionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ObstructionKind::DimensionBound => "DimensionBound",
            ObstructionKind::IrreducibilityForced => "IrreducibilityForced",
            ObstructionKind::TrivialClassMismatch => "TrivialClassMismatch",
            ObstructionKind::ParityOfChi5 => "ParityOfChi5",
            ObstructionKind::ReflectionVanishing => "ReflectionVanishing",
            ObstructionKind::AbelianFixedProjectors => "AbelianFixedProjectors",
        }
    }
}

/// Projective classes an obstruction rules out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    All,
    Trivial,
    NonTrivial,
}

impl Scope {
    pub fn covers(self, tag: ProjectiveClassTag) -> bool {
        matches!(
            (self, tag),
            (Scope::All, _)
                | (Scope::Trivial, ProjectiveClassTag::Trivial)
                | (Scope::NonTrivial, ProjectiveClassTag::NonTrivial)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionRecord {
    pub kind: ObstructionKind,
    pub detail: String,
    pub scope: Scope,
}

/// Largest irreducible degree over the ordinary and projective tables of `D4`.
fn max_irrep_degree() -> Result<u64> {
    let linear = char_table(BuiltinGroup::D4)?.max_degree();
    let projective = projective_irreps_d4(ProjectiveClassTag::NonTrivial)?
        .characters
        .iter()
        .filter_map(ClassFunction::degree)
        .max()
        .unwrap_or(0);
    Ok(linear.max(projective))
}

pub fn check_dimension_bound(f: &Family) -> Result<Option<ObstructionRecord>> {
    let d = max_irrep_degree()?;
    let bound = d * d;
    Ok((f.dimension > bound).then(|| ObstructionRecord {
        kind: ObstructionKind::DimensionBound,
        detail: format!(
            "dim L(H) = {} > {} = {d}², the largest irreducible dimension squared",
            f.dimension, bound
        ),
        scope: Scope::All,
    }))
}

fn require_group(f: &Family, want: BuiltinGroup) -> Result<()> {
    if f.name.group() == want {
        Ok(())
    } else {
        Err(Error::WrongGroup {
            expected: want.name().to_string(),
            found: f.group.name().to_string(),
        })
    }
}

/// All vectors `n` with `Σ nᵢ·wᵢ ≤ bound`.
pub fn bounded_multiplicities(weights: &[u64], bound: u64) -> Vec<Vec<u64>> {
    fn go(weights: &[u64], left: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let Some((&w, rest)) = weights.split_first() else {
            out.push(prefix.clone());
            return;
        };
        for n in 0..=left / w {
            prefix.push(n);
            go(rest, left - n * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, bound, &mut Vec::new(), &mut out);
    out
}

/// Every `χ_U` that is a sum of `d ≤ 4` linear characters of `Z4` has
/// `m1 = Σnᵢ² ≥ d`; with `m1 = 1` only `d = 1` remains, whose conjugation
/// character has dimension 1.
pub fn check_z4_abelian(f: &Family) -> Result<Option<ObstructionRecord>> {
    require_group(f, BuiltinGroup::Z4)?;
    let table = char_table(BuiltinGroup::Z4)?;
    let triv = trivial_character(&table.group);
    let mut realizing = Vec::new();
    for n in bounded_multiplicities(&[1; 4], 4) {
        let d: u64 = n.iter().sum();
        if d == 0 {
            continue;
        }
        let chi = ClassFunction::combination(&table.irreducibles, &n)?;
        let conj = conj_character(&chi);
        let m1 = inner_product(&triv, &conj)?
            .as_i64()
            .ok_or_else(|| Error::Inconsistent {
                family: f.name.to_string(),
                reason: "non-integral trivial multiplicity".into(),
            })? as u64;
        let sq: u64 = n.iter().map(|x| x * x).sum();
        if m1 != sq || m1 < d {
            return Err(Error::Inconsistent {
                family: f.name.to_string(),
                reason: format!("m1 = {m1} for multiplicities {n:?}"),
            });
        }
        if conj == f.target {
            realizing.push(n);
        }
    }
    Ok(realizing.is_empty().then(|| ObstructionRecord {
        kind: ObstructionKind::AbelianFixedProjectors,
        detail: format!(
            "Z4 is abelian: a sum of d linear characters has m1 = Σnᵢ² ≥ d, so m1 = 1 forces d = 1 and dim χ_conj = 1 ≠ {}",
            f.dimension
        ),
        scope: Scope::All,
    }))
}

/// Parity check on a `D4` class function.
pub fn check_parity_target(target: &ClassFunction) -> Result<Option<ObstructionRecord>> {
    let table = char_table(BuiltinGroup::D4)?;
    let m = decompose(target, &table)?;
    let m5 = m[4];
    Ok((m5 % 2 == 1).then(|| ObstructionRecord {
        kind: ObstructionKind::ParityOfChi5,
        detail: format!("χ5 occurs {m5} times in the target; every linear χ_conj has m5 = 2e(a+b+c+d), which is even"),
        scope: Scope::Trivial,
    }))
}

pub fn check_parity(f: &Family) -> Result<Option<ObstructionRecord>> {
    require_group(f, BuiltinGroup::D4)?;
    check_parity_target(&f.target)
}

/// The values of `|χ|²` at the `D4` reflection classes for every
/// non-trivial-class irreducible, computed on the cover.
pub fn nontrivial_reflection_values() -> Result<Vec<(String, CycloNum, CycloNum)>> {
    let irreps = projective_irreps_d4(ProjectiveClassTag::NonTrivial)?;
    let sc = schur_cover_d4();
    let (eta, zeta_eta) = (sc.lifts[3], sc.lifts[4]);
    Ok(irreps
        .labels
        .iter()
        .zip(&irreps.characters)
        .map(|(l, chi)| {
            let c = conj_character(chi);
            (l.clone(), c.at(eta).clone(), c.at(zeta_eta).clone())
        })
        .collect())
}

/// Reflection check on a `D4` class function.
pub fn check_reflection_target(target: &ClassFunction) -> Result<Option<ObstructionRecord>> {
    for (label, at_s, at_rs) in nontrivial_reflection_values()? {
        if !at_s.is_zero() || !at_rs.is_zero() {
            return Err(Error::Inconsistent {
                family: "D4".into(),
                reason: format!("|{label}|² does not vanish on the reflections"),
            });
        }
    }
    let g = target.group();
    let s = g.element("s").expect("D4 has s");
    let rs = g.element("rs").expect("D4 has rs");
    let (vs, vrs) = (target.at(s), target.at(rs));
    Ok((!vs.is_zero() || !vrs.is_zero()).then(|| ObstructionRecord {
        kind: ObstructionKind::ReflectionVanishing,
        detail: format!(
            "target(s) = {vs}, target(rs) = {vrs}; every non-trivial-class χ_conj vanishes on both reflection classes"
        ),
        scope: Scope::NonTrivial,
    }))
}

pub fn check_reflection_vanishing(f: &Family) -> Result<Option<ObstructionRecord>> {
    require_group(f, BuiltinGroup::D4)?;
    check_reflection_target(&f.target)
}

/// An irreducible candidate and its conjugation character on the matching group.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub label: String,
    pub tag: ProjectiveClassTag,
    pub character: ClassFunction,
    pub chi_conj: ClassFunction,
}

fn candidates(f: &Family) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    match f.name.group() {
        BuiltinGroup::Z4 => {
            let t = char_table(BuiltinGroup::Z4)?;
            for (l, chi) in t.labels.iter().zip(&t.irreducibles) {
                out.push(Candidate {
                    label: l.clone(),
                    tag: ProjectiveClassTag::Trivial,
                    character: chi.clone(),
                    chi_conj: conj_character(chi),
                });
            }
        }
        _ => {
            for tag in ProjectiveClassTag::ALL {
                let irreps = projective_irreps_d4(tag)?;
                for (l, chi) in irreps.labels.iter().zip(&irreps.characters) {
                    let conj = conj_character(chi);
                    let chi_conj = match tag {
                        ProjectiveClassTag::Trivial => conj,
                        ProjectiveClassTag::NonTrivial => push_to_quotient(&conj)?,
                    };
                    out.push(Candidate {
                        label: l.clone(),
                        tag,
                        character: chi.clone(),
                        chi_conj,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// A realizing irreducible character.
#[derive(Clone, Debug)]
pub struct Witness {
    pub label: String,
    /// Second name for the same realization, when one exists.
    pub alt_label: Option<String>,
    pub tag: ProjectiveClassTag,
    pub character: ClassFunction,
    pub chi_conj: ClassFunction,
    pub decomposition: Vec<u64>,
    pub basis_labels: Vec<String>,
}

fn matching_table(f: &Family) -> Result<Arc<CharTable>> {
    match f.name.group() {
        BuiltinGroup::Z4 => char_table(BuiltinGroup::Z4),
        _ => char_table(BuiltinGroup::D4),
    }
}

/// `|tr|²` of the conjugation action of the Pauli matrices, computed as a
/// `K4` class function from the matrices themselves.
pub fn k4_native_conj_character() -> Result<ClassFunction> {
    let (k4, mats) = pauli_assignment_k4();
    conj_rep_character_from_matrices(&k4, &mats)
}

pub fn enumerate_witnesses(f: &Family) -> Result<Vec<Witness>> {
    let target = f.matching_target()?;
    let table = matching_table(f)?;
    let native = match f.name.group() {
        BuiltinGroup::K4 => Some(k4_native_conj_character()? == f.target),
        _ => None,
    };
    let mut out = Vec::new();
    for c in candidates(f)? {
        if c.chi_conj != target {
            continue;
        }
        let alt_label = match native {
            Some(true) if c.label == "χ5" => {
                Some("Pauli projective rep of K4 (P1/Z(P1))".to_string())
            }
            Some(false) if c.label == "χ5" => {
                return Err(Error::Inconsistent {
                    family: f.name.to_string(),
                    reason: "D4 pullback and Pauli-matrix pictures disagree".into(),
                })
            }
            _ => None,
        };
        let label = match f.name.group() {
            BuiltinGroup::K4 => format!("{} of D4", c.label),
            _ => c.label.clone(),
        };
        out.push(Witness {
            label,
            alt_label,
            tag: c.tag,
            decomposition: decompose(&c.chi_conj, &table)?,
            basis_labels: table.labels.clone(),
            character: c.character,
            chi_conj: c.chi_conj,
        });
    }
    Ok(out)
}

/// The checks of the obstruction battery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    DimensionBound,
    AbelianFixedProjectors,
    ParityOfChi5,
    ReflectionVanishing,
}

impl Check {
    pub const ALL: [Check; 4] = [
        Check::DimensionBound,
        Check::AbelianFixedProjectors,
        Check::ParityOfChi5,
        Check::ReflectionVanishing,
    ];

    /// Runs the check if it applies to the family's group.
    pub fn run(self, f: &Family) -> Result<Option<ObstructionRecord>> {
        let g = f.name.group();
        match (self, g) {
            (Check::DimensionBound, _) => check_dimension_bound(f),
            (Check::AbelianFixedProjectors, BuiltinGroup::Z4) => check_z4_abelian(f),
            (Check::ParityOfChi5, BuiltinGroup::D4) => check_parity(f),
            (Check::ParityOfChi5, BuiltinGroup::K4) => check_parity_target(&f.matching_target()?),
            (Check::ReflectionVanishing, BuiltinGroup::D4) => check_reflection_vanishing(f),
            (Check::ReflectionVanishing, BuiltinGroup::K4) => {
                check_reflection_target(&f.matching_target()?)
            }
            _ => Ok(None),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub family: Family,
    pub realizable: bool,
    /// Preferred witness: first in trivial-class, then label order.
    pub witness: Option<Witness>,
    pub all_witnesses: Vec<Witness>,
    /// Non-empty exactly when there is no witness.
    pub obstructions: Vec<ObstructionRecord>,
    /// Obstructions that fire for a realizable family; each excludes some
    /// projective classes but not the one holding the witness.
    pub class_exclusions: Vec<ObstructionRecord>,
}

pub fn classify(f: &Family) -> Result<Verdict> {
    classify_ordered(f, &Check::ALL)
}

/// [`classify`] with the battery run in a caller-chosen order.
pub fn classify_ordered(f: &Family, order: &[Check]) -> Result<Verdict> {
    let mut fired = Vec::new();
    for c in order {
        if let Some(rec) = c.run(f)? {
            fired.push(rec);
        }
    }
    fired.sort_by_key(|r| (r.kind, r.scope));
    let witnesses = enumerate_witnesses(f)?;
    let classes = f.projective_classes();
    let covered = classes
        .iter()
        .all(|&t| fired.iter().any(|r| r.scope.covers(t)));
    for w in &witnesses {
        if let Some(r) = fired.iter().find(|r| r.scope.covers(w.tag)) {
            return Err(Error::Inconsistent {
                family: f.name.to_string(),
                reason: format!(
                    "{} rules out the class of witness {}",
                    r.kind.as_str(),
                    w.label
                ),
            });
        }
    }
    if witnesses.is_empty() != covered {
        return Err(Error::Inconsistent {
            family: f.name.to_string(),
            reason: "witness search and obstruction battery disagree".into(),
        });
    }
    let realizable = !witnesses.is_empty();
    let (obstructions, class_exclusions) = if realizable {
        (Vec::new(), fired)
    } else {
        (fired, Vec::new())
    };
    Ok(Verdict {
        family: f.clone(),
        realizable,
        witness: witnesses.first().cloned(),
        all_witnesses: witnesses,
        obstructions,
        class_exclusions,
    })
}

pub fn classify_all() -> Result<Vec<Verdict>> {
    seven_families()?.iter().map(classify).collect()
}

/// One row of the brute-force sweep that matched a family target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteMatch {
    pub family: FamilyName,
    pub tag: ProjectiveClassTag,
    pub multiplicities: Vec<u64>,
}

/// Every `χ_U = Σ nᵢχᵢ` of degree `≤ max_degree` in both projective classes
/// of `D4`, compared against every `D4`-matched family target.
pub fn brute_force_matches(max_degree: u64) -> Result<(usize, Vec<BruteMatch>)> {
    let families: Vec<(FamilyName, ClassFunction)> = seven_families()?
        .into_iter()
        .filter(|f| f.name.group() != BuiltinGroup::Z4)
        .map(|f| Ok((f.name, f.matching_target()?)))
        .collect::<Result<_>>()?;
    let mut checked = 0;
    let mut matches = Vec::new();
    for tag in ProjectiveClassTag::ALL {
        let irreps = projective_irreps_d4(tag)?;
        let degrees: Vec<u64> = irreps
            .characters
            .iter()
            .map(|c| c.degree().unwrap_or(0))
            .collect();
        for n in bounded_multiplicities(&degrees, max_degree) {
            if n.iter().all(|&x| x == 0) {
                continue;
            }
            checked += 1;
            let chi = ClassFunction::combination(&irreps.characters, &n)?;
            let conj = conj_character(&chi);
            let conj = match tag {
                ProjectiveClassTag::Trivial => conj,
                ProjectiveClassTag::NonTrivial => push_to_quotient(&conj)?,
            };
            for (name, target) in &families {
                if &conj == target {
                    matches.push(BruteMatch {
                        family: *name,
                        tag,
                        multiplicities: n.clone(),
                    });
                }
            }
        }
    }
    Ok((checked, matches))
}

/// Result of sweeping `m1 = Σnᵢ²` over all `D4` characters up to a degree.
#[derive(Clone, Debug, Default)]
pub struct MultiplicitySweep {
    pub cases: usize,
    pub failures: Vec<Vec<u64>>,
    /// How many sweep entries had each of `m1 = 1, 2, 4`.
    pub m1_counts: [usize; 3],
}

pub fn trivial_multiplicity_sweep(max_degree: u64) -> Result<MultiplicitySweep> {
    let table = char_table(BuiltinGroup::D4)?;
    let triv = trivial_character(&table.group);
    let mut sweep = MultiplicitySweep::default();
    for n in bounded_multiplicities(&table.degrees(), max_degree) {
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        sweep.cases += 1;
        let chi = ClassFunction::combination(&table.irreducibles, &n)?;
        let m1 = inner_product(&triv, &conj_character(&chi))?;
        let want: u64 = n.iter().map(|x| x * x).sum();
        if m1 != CycloNum::from_int(want as i64) {
            sweep.failures.push(n);
            continue;
        }
        match want {
            1 => sweep.m1_counts[0] += 1,
            2 => sweep.m1_counts[1] += 1,
            4 => sweep.m1_counts[2] += 1,
            _ => {}
        }
    }
    Ok(sweep)
}

/// Compares the closed form `m5 = 2e(a+b+c+d)` with the decomposition of
/// `|χ_U|²` for every linear `χ_U` up to the given degree. Returns the number
/// of cases and those that disagree or are odd.
pub fn parity_sweep(max_degree: u64) -> Result<(usize, Vec<Vec<u64>>)> {
    let table = char_table(BuiltinGroup::D4)?;
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in bounded_multiplicities(&table.degrees(), max_degree) {
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        cases += 1;
        let chi = ClassFunction::combination(&table.irreducibles, &n)?;
        let m5 = decompose(&conj_character(&chi), &table)?[4];
        let formula = 2 * n[4] * (n[0] + n[1] + n[2] + n[3]);
        if m5 != formula || m5 % 2 == 1 {
            bad.push(n);
        }
    }
    Ok((cases, bad))
}

#[derive(Serialize, Clone, Debug)]
pub struct WitnessJson {
    pub character_label: String,
    pub alt_label: Option<String>,
    pub projective_class: ProjectiveClassTag,
}

#[derive(Serialize, Clone, Debug)]
pub struct DecompositionJson {
    pub group: String,
    pub labels: Vec<String>,
    pub multiplicities: Vec<u64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct CandidateJson {
    pub label: String,
    pub projective_class: ProjectiveClassTag,
    pub chi_conj: Vec<String>,
    pub matches: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct ReportEntry {
    pub family: FamilyName,
    pub group: String,
    pub dimension: u64,
    pub realizable: bool,
    pub witness: Option<WitnessJson>,
    pub obstructions: Vec<ObstructionRecord>,
    pub class_exclusions: Vec<ObstructionRecord>,
    pub target: Vec<String>,
    pub candidates: Vec<CandidateJson>,
    pub chi_conj_decomposition: Option<DecompositionJson>,
}

/// All seven verdicts with their intermediate data.
#[derive(Serialize, Clone, Debug)]
pub struct ReportDocument {
    pub families: Vec<ReportEntry>,
    pub realizable: Vec<FamilyName>,
    pub notes: Vec<String>,
}

fn entry(v: &Verdict) -> Result<ReportEntry> {
    let f = &v.family;
    let target = f.matching_target()?;
    let table = matching_table(f)?;
    let candidates = candidates(f)?
        .into_iter()
        .map(|c| CandidateJson {
            matches: c.chi_conj == target,
            label: c.label,
            projective_class: c.tag,
            chi_conj: c
                .chi_conj
                .values()
                .iter()
                .map(ToString::to_string)
                .collect(),
        })
        .collect();
    Ok(ReportEntry {
        family: f.name,
        group: f.group.name().to_string(),
        dimension: f.dimension,
        realizable: v.realizable,
        witness: v.witness.as_ref().map(|w| WitnessJson {
            character_label: w.label.clone(),
            alt_label: w.alt_label.clone(),
            projective_class: w.tag,
        }),
        obstructions: v.obstructions.clone(),
        class_exclusions: v.class_exclusions.clone(),
        target: f.target.values().iter().map(ToString::to_string).collect(),
        candidates,
        chi_conj_decomposition: v.witness.as_ref().map(|w| DecompositionJson {
            group: table.group.name().to_string(),
            labels: w.basis_labels.clone(),
            multiplicities: w.decomposition.clone(),
        }),
    })
}

pub fn full_report() -> Result<ReportDocument> {
    let verdicts = classify_all()?;
    let families = verdicts.iter().map(entry).collect::<Result<Vec<_>>>()?;
    let realizable = verdicts
        .iter()
        .filter(|v| v.realizable)
        .map(|v| v.family.name)
        .collect();
    Ok(ReportDocument {
        families,
        realizable,
        notes: vec![
            "m1 = 1 is taken as a property of every family, not derived".into(),
            "K4 families are matched on D4 through D4 -> D4/{e,r^2} = K4 and cross-checked against the Pauli matrices".into(),
        ],
    })
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<10} {:>3}  {:<10}  {}\n",
            "family", "dim", "verdict", "witness / obstructions"
        ));
        for e in &self.families {
            let verdict = if e.realizable {
                "realizable"
            } else {
                "obstructed"
            };
            let detail = match &e.witness {
                Some(w) => {
                    let mut s = format!("{} [{}]", w.character_label, w.projective_class.as_str());
                    if let Some(alt) = &w.alt_label {
                        s.push_str(&format!(" = {alt}"));
                    }
                    s
                }
                None => e
                    .obstructions
                    .iter()
                    .map(|o| format!("{}({})", o.kind.as_str(), scope_str(o.scope)))
                    .collect::<Vec<_>>()
                    .join(", "),
            };
            out.push_str(&format!(
                "{:<10} {:>3}  {:<10}  {}\n",
                e.family.as_str(),
                e.dimension,
                verdict,
                detail
            ));
        }
        out.push('\n');
        for e in &self.families {
            if let Some(d) = &e.chi_conj_decomposition {
                let terms: Vec<String> = d
                    .labels
                    .iter()
                    .zip(&d.multiplicities)
                    .map(|(l, m)| format!("{m}{l}"))
                    .collect();
                out.push_str(&format!(
                    "{}: χ_conj on {} = {}\n",
                    e.family.as_str(),
                    d.group,
                    terms.join(" + ")
                ));
            }
            for o in e.obstructions.iter().chain(&e.class_exclusions) {
                out.push_str(&format!(
                    "{}: {} [{}] {}\n",
                    e.family.as_str(),
                    o.kind.as_str(),
                    scope_str(o.scope),
                    o.detail
                ));
            }
        }
        out.push('\n');
        let names: Vec<&str> = self.realizable.iter().map(|n| n.as_str()).collect();
        out.push_str(&format!("realizable: {}\n", names.join(", ")));
        out
    }
}

fn scope_str(s: Scope) -> &'static str {
    match s {
        Scope::All => "all classes",
        Scope::Trivial => "trivial",
        Scope::NonTrivial => "non-trivial",
    }
}

/// Distinct obstruction kinds in a verdict.
pub fn obstruction_kinds(v: &Verdict) -> BTreeSet<ObstructionKind> {
    v.obstructions.iter().map(|o| o.kind).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: FamilyName) -> Family {
        Family::new(n).unwrap()
    }

    #[test]
    fn family_dimensions() {
        let dims: Vec<u64> = seven_families()
            .unwrap()
            .iter()
            .map(|f| f.dimension)
            .collect();
        assert_eq!(dims, [4, 4, 4, 4, 4, 6, 8]);
    }

    #[test]
    fn family_names_roundtrip() {
        for n in FamilyName::ALL {
            assert_eq!(n.as_str().parse::<FamilyName>().unwrap(), n);
        }
        assert!("D4_999".parse::<FamilyName>().is_err());
    }

    #[test]
    fn k4_pullback() {
        let f = fam(FamilyName::K4_1234);
        let p = f.matching_target().unwrap();
        let ints: Vec<i64> = p.values().iter().map(|v| v.as_i64().unwrap()).collect();
        assert_eq!(ints, [4, 0, 4, 0, 0]);
        assert!(check_parity_target(&p).unwrap().is_none());
    }

    #[test]
    fn dimension_bound() {
        assert!(check_dimension_bound(&fam(FamilyName::D4_125))
            .unwrap()
            .is_none());
        let r = check_dimension_bound(&fam(FamilyName::D4_12345))
            .unwrap()
            .unwrap();
        assert!(r.detail.contains("6 > 4"));
        let r = check_dimension_bound(&fam(FamilyName::D4_123452))
            .unwrap()
            .unwrap();
        assert!(r.detail.contains("8 > 4"));
    }

    #[test]
    fn group_preconditions() {
        let z4 = fam(FamilyName::Z4_1234);
        assert!(matches!(check_parity(&z4), Err(Error::WrongGroup { .. })));
        assert!(matches!(
            check_reflection_vanishing(&z4),
            Err(Error::WrongGroup { .. })
        ));
        assert!(matches!(
            check_z4_abelian(&fam(FamilyName::D4_125)),
            Err(Error::WrongGroup { .. })
        ));
    }

    #[test]
    fn parity_and_reflection() {
        for n in [FamilyName::D4_135, FamilyName::D4_145] {
            assert_eq!(
                check_parity(&fam(n)).unwrap().unwrap().kind,
                ObstructionKind::ParityOfChi5
            );
            let r = check_reflection_vanishing(&fam(n)).unwrap().unwrap();
            assert!(r.detail.contains("= 2"));
        }
        assert!(check_reflection_vanishing(&fam(FamilyName::D4_125))
            .unwrap()
            .is_none());
        for (_, s, rs) in nontrivial_reflection_values().unwrap() {
            assert!(s.is_zero() && rs.is_zero());
        }
    }

    #[test]
    fn witnesses() {
        let w = enumerate_witnesses(&fam(FamilyName::D4_125)).unwrap();
        let labels: Vec<_> = w.iter().map(|w| (w.label.as_str(), w.tag)).collect();
        assert_eq!(
            labels,
            [
                ("χE1", ProjectiveClassTag::NonTrivial),
                ("χE3", ProjectiveClassTag::NonTrivial)
            ]
        );
        assert_eq!(w[0].decomposition, [1, 1, 0, 0, 1]);
        let k = enumerate_witnesses(&fam(FamilyName::K4_1234)).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].label, "χ5 of D4");
        assert!(k[0].alt_label.is_some());
        assert_eq!(k[0].decomposition, [1, 1, 1, 1, 0]);
        assert!(enumerate_witnesses(&fam(FamilyName::D4_135))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn seven_verdicts() {
        let v = classify_all().unwrap();
        let realizable: Vec<_> = v
            .iter()
            .filter(|v| v.realizable)
            .map(|v| v.family.name)
            .collect();
        assert_eq!(realizable, [FamilyName::K4_1234, FamilyName::D4_125]);
        for x in &v {
            assert_eq!(x.realizable, x.witness.is_some());
            assert_eq!(x.realizable, x.obstructions.is_empty());
        }
    }

    #[test]
    fn permuted_battery() {
        let orders = [
            [
                Check::ReflectionVanishing,
                Check::ParityOfChi5,
                Check::AbelianFixedProjectors,
                Check::DimensionBound,
            ],
            [
                Check::ParityOfChi5,
                Check::DimensionBound,
                Check::ReflectionVanishing,
                Check::AbelianFixedProjectors,
            ],
        ];
        for f in seven_families().unwrap() {
            let base = classify(&f).unwrap();
            for o in &orders {
                let v = classify_ordered(&f, o).unwrap();
                assert_eq!(v.obstructions, base.obstructions);
                assert_eq!(v.class_exclusions, base.class_exclusions);
            }
        }
    }

    #[test]
    fn multiplicity_enumeration() {
        assert_eq!(bounded_multiplicities(&[1, 1], 2).len(), 6);
        assert_eq!(bounded_multiplicities(&[2, 2], 4).len(), 6);
    }

    #[test]
    fn report_is_deterministic() {
        let a = full_report().unwrap();
        let b = full_report().unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.render().ends_with("realizable: K4_1234, D4_125\n"));
    }
}
