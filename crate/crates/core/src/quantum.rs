//! Exact qubit simulation of teleportation and entanglement swapping.
//!
//! States are unnormalized amplitude vectors over `Q(ζ8)`. Probabilities are
//! ratios of squared norms, which are rational for every state produced
//! here, so no square roots leave the field.
//!
//! Qubit order in tensor products is left to right: in a swap the 16-dim
//! register is `A1 ⊗ B1 ⊗ B2 ⊗ C1` and the instrument acts on `B1 ⊗ B2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::character::ClassFunction;
use crate::cyclo::{CycloNum, RationalJson};
use crate::error::{Error, Result};
use crate::group::{
    builtin_group, find_isomorphism, quotient, verify_hom, BuiltinGroup, GroupHom, GroupTable,
};
use crate::matrix::{inner, kron_vec, norm_sqr, proportionality, ExactMatrix};

/// `σ_k` for `k ∈ 0..4` (`σ0 = 𝟙`, then x, y, z).
pub fn pauli(k: usize) -> ExactMatrix {
    let z = CycloNum::zero;
    let o = CycloNum::one;
    let i = CycloNum::i;
    let rows = match k {
        0 => [o(), z(), z(), o()],
        1 => [z(), o(), o(), z()],
        2 => [z(), -i(), i(), z()],
        3 => [o(), z(), z(), -o()],
        _ => panic!("Pauli index {k} out of range 0..4"),
    };
    ExactMatrix::new(2, 2, rows.to_vec()).expect("2×2")
}

/// The phase gate `S = diag(1, i)`.
pub fn phase_s() -> ExactMatrix {
    ExactMatrix::new(
        2,
        2,
        vec![
            CycloNum::one(),
            CycloNum::zero(),
            CycloNum::zero(),
            CycloNum::i(),
        ],
    )
    .expect("2×2")
}

/// A pure state held as an unnormalized amplitude vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PureState {
    amps: Vec<CycloNum>,
}

impl PureState {
    pub fn new(amps: Vec<CycloNum>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::DimensionMismatch("empty state vector".into()));
        }
        Ok(PureState { amps })
    }

    pub fn from_ints(amps: &[i64]) -> Result<Self> {
        PureState::new(amps.iter().map(|&a| CycloNum::from_int(a)).collect())
    }

    /// `|b⟩` for a computational basis index.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![CycloNum::zero(); dim];
        amps[index] = CycloNum::one();
        PureState { amps }
    }

    pub fn amps(&self) -> &[CycloNum] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(CycloNum::is_zero)
    }

    /// `⟨ψ|ψ⟩` as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        norm_sqr(&self.amps)
            .as_rational()
            .cloned()
            .expect("⟨ψ|ψ⟩ is real and, for states in this crate, rational")
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState {
            amps: kron_vec(&self.amps, &other.amps),
        }
    }

    pub fn apply(&self, m: &ExactMatrix) -> Result<PureState> {
        PureState::new(m.apply(&self.amps)?)
    }

    /// The scalar `c` with `self = c · other`, if the rays coincide.
    pub fn proportional_to(&self, other: &PureState) -> Option<CycloNum> {
        proportionality(&self.amps, &other.amps)
    }

    /// Same ray, rescaled so the first non-zero amplitude is 1.
    pub fn rescaled(&self) -> Result<PureState> {
        let lead = self
            .amps
            .iter()
            .find(|a| !a.is_zero())
            .ok_or(Error::ZeroState)?
            .inv()
            .expect("non-zero");
        Ok(PureState {
            amps: self.amps.iter().map(|a| a * &lead).collect(),
        })
    }
}

/// `|00⟩ + |11⟩`, i.e. `√2 |Φ⁺⟩`.
pub fn phi_plus() -> PureState {
    PureState::from_ints(&[1, 0, 0, 1]).expect("non-empty")
}

/// The four Bell vectors `(σ_k ⊗ 𝟙)(|00⟩ + |11⟩)`, each with `⟨b|b⟩ = 2`.
pub fn bell_basis() -> Vec<PureState> {
    let id = ExactMatrix::identity(2);
    (0..4)
        .map(|k| phi_plus().apply(&pauli(k).kron(&id)).expect("4-dim"))
        .collect()
}

/// Gram matrix of the normalized Bell states, `½⟨b_j|b_k⟩`.
pub fn bell_gram() -> ExactMatrix {
    let b = bell_basis();
    let half = CycloNum::frac(1, 2);
    let data = b
        .iter()
        .flat_map(|x| {
            b.iter()
                .map(|y| inner(x.amps(), y.amps()) * &half)
                .collect::<Vec<_>>()
        })
        .collect();
    ExactMatrix::new(4, 4, data).expect("4×4")
}

/// Two dichotomic observables per side.
#[derive(Clone, Debug)]
pub struct ChshSettings {
    pub a0: ExactMatrix,
    pub a1: ExactMatrix,
    pub c0: ExactMatrix,
    pub c1: ExactMatrix,
}

impl ChshSettings {
    /// `A0 = σz`, `A1 = σx`, `C0 = (σz + σx)/√2`, `C1 = (σz − σx)/√2`.
    pub fn tsirelson() -> Self {
        let r = CycloNum::inv_sqrt2();
        let (x, z) = (pauli(1), pauli(3));
        ChshSettings {
            a0: z.clone(),
            a1: x.clone(),
            c0: (&z + &x).scale(&r),
            c1: (&z - &x).scale(&r),
        }
    }

    /// `B = A0 ⊗ (C0 + C1) + A1 ⊗ (C0 − C1)`
    pub fn bell_operator(&self) -> Result<ExactMatrix> {
        for (name, o) in [
            ("A0", &self.a0),
            ("A1", &self.a1),
            ("C0", &self.c0),
            ("C1", &self.c1),
        ] {
            if o.rows() != 2 || !o.is_hermitian() || !(o * o).is_identity() {
                return Err(Error::NotDichotomic(name.to_string()));
            }
        }
        Ok(&self.a0.kron(&(&self.c0 + &self.c1)) + &self.a1.kron(&(&self.c0 - &self.c1)))
    }
}

/// `⟨ψ|O|ψ⟩ / ⟨ψ|ψ⟩`
pub fn expectation(state: &PureState, op: &ExactMatrix) -> Result<CycloNum> {
    if state.is_zero() {
        return Err(Error::ZeroState);
    }
    let v = op.apply(state.amps())?;
    Ok(inner(state.amps(), &v) * CycloNum::from_rational(state.norm_sqr().recip()))
}

pub fn chsh_value(state: &PureState, settings: &ChshSettings) -> Result<CycloNum> {
    if state.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "CHSH needs a 2-qubit state, got dim {}",
            state.dim()
        )));
    }
    expectation(state, &settings.bell_operator()?)
}

/// Kraus operators on a 2-qubit register, one per outcome.
#[derive(Clone, Debug)]
pub struct Instrument {
    pub labels: Vec<String>,
    pub kraus: Vec<ExactMatrix>,
}

impl Instrument {
    pub fn new(labels: Vec<String>, kraus: Vec<ExactMatrix>) -> Result<Self> {
        if labels.len() != kraus.len() || kraus.is_empty() {
            return Err(Error::InvalidInput(
                "instrument needs one label per Kraus operator".into(),
            ));
        }
        if kraus.iter().any(|k| k.rows() != 4 || k.cols() != 4) {
            return Err(Error::DimensionMismatch(
                "Kraus operators must be 4×4".into(),
            ));
        }
        Ok(Instrument { labels, kraus })
    }

    pub fn len(&self) -> usize {
        self.kraus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus.is_empty()
    }

    /// `Σ K†K`
    pub fn completeness_sum(&self) -> ExactMatrix {
        self.kraus.iter().fold(ExactMatrix::zeros(4, 4), |acc, k| {
            &acc + &(&k.adjoint() * k)
        })
    }

    pub fn is_complete(&self) -> bool {
        self.completeness_sum().is_identity()
    }
}

/// A rank-one effect `weight · |v⟩⟨v|` with `weight > 0` rational.
#[derive(Clone, Debug)]
pub struct Effect {
    pub label: String,
    pub vector: PureState,
    pub weight: BigRational,
}

impl Effect {
    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::outer(self.vector.amps(), self.vector.amps())
            .scale(&CycloNum::from_rational(self.weight.clone()))
    }
}

fn povm_vectors() -> Vec<(String, PureState, ExactMatrix, String)> {
    let id = ExactMatrix::identity(2);
    let s = phase_s();
    let mut out = Vec::with_capacity(8);
    for k in 0..4 {
        let v = phi_plus().apply(&pauli(k).kron(&id)).expect("4-dim");
        out.push((format!("b{k}"), v, pauli(k), format!("σ{k}")));
    }
    for k in 0..4 {
        let sk = &s * &pauli(k);
        let v = phi_plus().apply(&sk.kron(&id)).expect("4-dim");
        out.push((format!("a{k}"), v, sk, format!("Sσ{k}")));
    }
    out
}

/// The eight effects `½|b_k⟩⟨b_k|`, `½|a_k⟩⟨a_k|` and their Lüders instrument.
///
/// With unnormalized `b_k = (σ_k ⊗ 𝟙)(|00⟩+|11⟩)` the effect is `¼ b_k b_k†`
/// and the Kraus operator `(1/√2)|b̂_k⟩⟨b̂_k| = b_k b_k† / (2√2)`.
pub fn povm_construction() -> Result<(Vec<Effect>, Instrument)> {
    let kraus_scale = CycloNum::inv_sqrt2() * CycloNum::frac(1, 2);
    let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
    let mut effects = Vec::with_capacity(8);
    let mut labels = Vec::with_capacity(8);
    let mut kraus = Vec::with_capacity(8);
    for (label, v, _, _) in povm_vectors() {
        kraus.push(ExactMatrix::outer(v.amps(), v.amps()).scale(&kraus_scale));
        labels.push(label.clone());
        effects.push(Effect {
            label,
            vector: v,
            weight: quarter.clone(),
        });
    }
    // Each family of four resolves the identity on its own.
    let half = CycloNum::frac(1, 2);
    for family in effects.chunks(4) {
        let s = family.iter().fold(ExactMatrix::zeros(4, 4), |acc, e| {
            &acc + &ExactMatrix::outer(e.vector.amps(), e.vector.amps()).scale(&half)
        });
        if !s.is_identity() {
            return Err(Error::IncompleteInstrument);
        }
    }
    let total = effects
        .iter()
        .fold(ExactMatrix::zeros(4, 4), |acc, e| &acc + &e.matrix());
    if !total.is_identity() {
        return Err(Error::IncompleteInstrument);
    }
    let inst = Instrument::new(labels, kraus)?;
    if !inst.is_complete() {
        return Err(Error::IncompleteInstrument);
    }
    Ok((effects, inst))
}

/// Outcome-indexed correction unitaries applied to the output qubit.
#[derive(Clone, Debug)]
pub struct CorrectionTable {
    pub entries: Vec<(String, ExactMatrix)>,
}

impl CorrectionTable {
    /// `V_(b,k) = σ_k`, `V_(a,k) = S σ_k`.
    pub fn swap_standard() -> Self {
        CorrectionTable {
            entries: povm_vectors()
                .into_iter()
                .map(|(_, _, v, l)| (l, v))
                .collect(),
        }
    }

    /// Negative control: every `σ_k` replaced by `σ_{k+1 mod 4}`.
    pub fn swap_shifted() -> Self {
        let s = phase_s();
        let mut entries = Vec::with_capacity(8);
        for k in 0..4 {
            entries.push((format!("σ{}", (k + 1) % 4), pauli((k + 1) % 4)));
        }
        for k in 0..4 {
            entries.push((format!("Sσ{}", (k + 1) % 4), &s * &pauli((k + 1) % 4)));
        }
        CorrectionTable { entries }
    }

    /// `σ_k` after Bell outcome `k`.
    pub fn teleport_standard() -> Self {
        CorrectionTable {
            entries: (0..4).map(|k| (format!("σ{k}"), pauli(k))).collect(),
        }
    }
}

/// Bell-basis measurement as an instrument with projectors `½ b_k b_k†`.
pub fn bell_instrument() -> Instrument {
    let half = CycloNum::frac(1, 2);
    let kraus = bell_basis()
        .iter()
        .map(|b| ExactMatrix::outer(b.amps(), b.amps()).scale(&half))
        .collect();
    Instrument::new((0..4).map(|k| format!("Φ{k}")).collect(), kraus).expect("4 projectors")
}

/// One branch of a protocol run.
#[derive(Clone, Debug)]
pub struct OutcomeRecord {
    pub outcome: String,
    pub probability: BigRational,
    pub conditional_state: PureState,
    pub correction_label: String,
    pub corrected_state: PureState,
    /// `corrected = scalar · reference` when the protocol restored the reference ray.
    pub restored_scalar: Option<CycloNum>,
    pub chsh: Option<CycloNum>,
}

impl OutcomeRecord {
    pub fn restored(&self) -> bool {
        self.restored_scalar.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct ProtocolTrace {
    pub outcomes: Vec<OutcomeRecord>,
}

impl ProtocolTrace {
    pub fn total_probability(&self) -> BigRational {
        self.outcomes.iter().map(|o| o.probability.clone()).sum()
    }

    pub fn all_restored(&self) -> bool {
        self.outcomes.iter().all(OutcomeRecord::restored)
    }

    pub fn to_json(&self) -> Vec<OutcomeJson> {
        self.outcomes
            .iter()
            .map(|o| OutcomeJson {
                outcome: o.outcome.clone(),
                probability: RationalJson::from(&o.probability),
                correction_label: o.correction_label.clone(),
                chsh: o.chsh.clone(),
                restored: o.restored(),
            })
            .collect()
    }
}

/// JSON form of one protocol branch.
#[derive(Serialize, Clone, Debug)]
pub struct OutcomeJson {
    pub outcome: String,
    pub probability: RationalJson,
    pub correction_label: String,
    pub chsh: Option<CycloNum>,
    pub restored: bool,
}

/// Applies `kraus` to the middle two qubits of `left ⊗ middle ⊗ right` and
/// returns the outcome probability together with the conditional state on
/// `left ⊗ right`. Fails if that conditional state is not pure.
fn measure_middle(
    state: &PureState,
    left: usize,
    right: usize,
    kraus: &ExactMatrix,
    label: &str,
) -> Result<(BigRational, Option<PureState>)> {
    let amps = state.amps();
    debug_assert_eq!(amps.len(), left * 4 * right);
    let idx = |l: usize, m: usize, r: usize| (l * 4 + m) * right + r;
    // post[m'][l, r] = Σ_m K[m', m] ψ[l, m, r]
    let mut post = vec![vec![CycloNum::zero(); left * right]; 4];
    for (mp, row) in post.iter_mut().enumerate() {
        for l in 0..left {
            for r in 0..right {
                let mut acc = CycloNum::zero();
                for m in 0..4 {
                    let k = kraus.get(mp, m);
                    if !k.is_zero() {
                        acc += &(k * &amps[idx(l, m, r)]);
                    }
                }
                row[l * right + r] = acc;
            }
        }
    }
    let weight: CycloNum = post.iter().map(|row| norm_sqr(row)).sum();
    let weight = weight.as_rational().cloned().expect("norm² is rational");
    let prob = weight / state.norm_sqr();
    if prob.is_zero() {
        return Ok((prob, None));
    }
    let lead = post
        .iter()
        .find(|row| row.iter().any(|x| !x.is_zero()))
        .expect("non-zero branch")
        .clone();
    for row in &post {
        if row.iter().any(|x| !x.is_zero()) && proportionality(row, &lead).is_none() {
            return Err(Error::MixedConditionalState(label.to_string()));
        }
    }
    Ok((prob, Some(PureState::new(lead)?)))
}

fn correct_last_qubit(state: &PureState, v: &ExactMatrix) -> Result<PureState> {
    let left = state.dim() / 2;
    state.apply(&ExactMatrix::identity(left).kron(v))
}

/// Bell-basis teleportation of the last qubit of `input`.
///
/// `input` is a 1-qubit state, or a 2-qubit state whose first qubit is a
/// reference system that is not touched. The teleported qubit and Alice's
/// half of `|Φ⁺⟩` are measured in the Bell basis; Bob's qubit receives the
/// correction `σ_k`.
pub fn teleport(input: &PureState) -> Result<ProtocolTrace> {
    teleport_with(input, &CorrectionTable::teleport_standard())
}

pub fn teleport_with(input: &PureState, corrections: &CorrectionTable) -> Result<ProtocolTrace> {
    if input.dim() != 2 && input.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "teleport input must have dim 2 or 4, got {}",
            input.dim()
        )));
    }
    if input.is_zero() {
        return Err(Error::ZeroState);
    }
    let reference = input.dim() / 2;
    let full = input.tensor(&phi_plus());
    let inst = bell_instrument();
    let settings = ChshSettings::tsirelson();
    let mut outcomes = Vec::with_capacity(4);
    for (k, (label, kraus)) in inst.labels.iter().zip(&inst.kraus).enumerate() {
        let (probability, cond) = measure_middle(&full, reference, 2, kraus, label)?;
        let cond = cond.ok_or_else(|| Error::ZeroProbabilityBranch(label.clone()))?;
        let (clabel, v) = &corrections.entries[k];
        let corrected = correct_last_qubit(&cond, v)?;
        let chsh = if corrected.dim() == 4 {
            Some(chsh_value(&corrected, &settings)?)
        } else {
            None
        };
        outcomes.push(OutcomeRecord {
            outcome: label.clone(),
            probability,
            restored_scalar: corrected.proportional_to(input),
            conditional_state: cond,
            correction_label: clabel.clone(),
            corrected_state: corrected,
            chsh,
        });
    }
    Ok(ProtocolTrace { outcomes })
}

/// One round: `pair ⊗ |Φ⁺⟩` with the instrument on the middle qubits.
fn swap_round(
    pair: &PureState,
    inst: &Instrument,
    corrections: &CorrectionTable,
    outcome: usize,
    settings: &ChshSettings,
) -> Result<Option<OutcomeRecord>> {
    let full = pair.tensor(&phi_plus());
    let label = &inst.labels[outcome];
    let (probability, cond) = measure_middle(&full, 2, 2, &inst.kraus[outcome], label)?;
    let Some(cond) = cond else {
        return Ok(None);
    };
    let (clabel, v) = corrections
        .entries
        .get(outcome)
        .ok_or_else(|| Error::InvalidInput(format!("no correction for outcome {label}")))?;
    let corrected = correct_last_qubit(&cond, v)?;
    let chsh = chsh_value(&corrected, settings)?;
    Ok(Some(OutcomeRecord {
        outcome: label.clone(),
        probability,
        restored_scalar: corrected.proportional_to(&phi_plus()),
        conditional_state: cond,
        correction_label: clabel.clone(),
        corrected_state: corrected,
        chsh: Some(chsh),
    }))
}

/// Entanglement swapping on `|Φ⁺⟩_{A1B1} ⊗ |Φ⁺⟩_{B2C1}` with the standard corrections.
pub fn entanglement_swap(inst: &Instrument) -> Result<ProtocolTrace> {
    entanglement_swap_with(inst, &CorrectionTable::swap_standard())
}

pub fn entanglement_swap_with(
    inst: &Instrument,
    corrections: &CorrectionTable,
) -> Result<ProtocolTrace> {
    if !inst.is_complete() {
        return Err(Error::IncompleteInstrument);
    }
    let settings = ChshSettings::tsirelson();
    let mut outcomes = Vec::with_capacity(inst.len());
    for k in 0..inst.len() {
        if let Some(rec) = swap_round(&phi_plus(), inst, corrections, k, &settings)? {
            outcomes.push(rec);
        }
    }
    Ok(ProtocolTrace { outcomes })
}

/// Chains swap rounds along a fixed outcome path. The corrected pair of each
/// round becomes the left leg of the next, with a fresh `|Φ⁺⟩` on the right.
/// Returns the post-correction CHSH value after every round.
pub fn iterate_swap_path(
    inst: &Instrument,
    corrections: &CorrectionTable,
    path: &[usize],
) -> Result<Vec<CycloNum>> {
    if path.is_empty() {
        return Err(Error::InvalidInput("at least one round is required".into()));
    }
    if !inst.is_complete() {
        return Err(Error::IncompleteInstrument);
    }
    let settings = ChshSettings::tsirelson();
    let mut pair = phi_plus();
    let mut values = Vec::with_capacity(path.len());
    for &k in path {
        if k >= inst.len() {
            return Err(Error::InvalidInput(format!(
                "outcome index {k} out of range"
            )));
        }
        let rec = swap_round(&pair, inst, corrections, k, &settings)?
            .ok_or_else(|| Error::ZeroProbabilityBranch(inst.labels[k].clone()))?;
        values.push(rec.chsh.expect("swap rounds record CHSH"));
        pair = rec.corrected_state.rescaled()?;
    }
    Ok(values)
}

/// Born-rule sampled path of `rounds` swaps from a seeded generator.
pub fn sample_swap_path(
    inst: &Instrument,
    corrections: &CorrectionTable,
    rounds: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    if rounds == 0 {
        return Err(Error::InvalidInput("at least one round is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let settings = ChshSettings::tsirelson();
    let mut pair = phi_plus();
    let mut path = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let mut branches = Vec::with_capacity(inst.len());
        for k in 0..inst.len() {
            branches.push(swap_round(&pair, inst, corrections, k, &settings)?);
        }
        let weights: Vec<f64> = branches
            .iter()
            .map(|b| {
                b.as_ref()
                    .map_or(0.0, |r| r.probability.to_f64().unwrap_or(0.0))
            })
            .collect();
        let dist = WeightedIndex::new(&weights).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let k = dist.sample(&mut rng);
        pair = branches[k]
            .take()
            .expect("sampled branch has positive weight")
            .corrected_state
            .rescaled()?;
        path.push(k);
    }
    Ok(path)
}

/// Seeded run of `rounds` chained swaps with the eight-outcome instrument.
pub fn iterate_swap(rounds: usize, seed: u64) -> Result<(Vec<usize>, Vec<CycloNum>)> {
    let (_, inst) = povm_construction()?;
    let table = CorrectionTable::swap_standard();
    let path = sample_swap_path(&inst, &table, rounds, seed)?;
    let values = iterate_swap_path(&inst, &table, &path)?;
    Ok((path, values))
}

/// Every outcome sequence of the given length over `outcomes` outcomes.
pub fn all_paths(outcomes: usize, depth: u32) -> impl Iterator<Item = Vec<usize>> {
    (0..outcomes.pow(depth)).map(move |mut n| {
        let mut p = vec![0; depth as usize];
        for slot in p.iter_mut().rev() {
            *slot = n % outcomes;
            n /= outcomes;
        }
        p
    })
}

/// Checks `σx S σx S = i𝟙` along with `σx S σx = iS³`, `S² = σz`, `S⁴ = 𝟙`,
/// and returns the phase `i`.
pub fn verify_cocycle() -> Result<CycloNum> {
    let s = phase_s();
    let x = pauli(1);
    let i = CycloNum::i();
    if s.pow(2) != pauli(3) {
        return Err(Error::CocycleMismatch("S² ≠ σz".into()));
    }
    if !s.pow(4).is_identity() {
        return Err(Error::CocycleMismatch("S⁴ ≠ 𝟙".into()));
    }
    let xsx = &(&x * &s) * &x;
    if xsx != s.pow(3).scale(&i) {
        return Err(Error::CocycleMismatch("σx S σx ≠ i S³".into()));
    }
    let phase = (&xsx * &s)
        .as_scalar()
        .ok_or_else(|| Error::CocycleMismatch("σx S σx S is not scalar".into()))?;
    if phase != i {
        return Err(Error::CocycleMismatch(format!(
            "σx S σx S = {phase}·𝟙, expected i·𝟙"
        )));
    }
    Ok(phase)
}

/// Outcome of [`correction_group_check`].
#[derive(Clone, Debug)]
pub struct CorrectionGroupReport {
    /// Matrix group generated by `{σ_k} ∪ {Sσ_k}`, phases included.
    pub matrix_group: Arc<GroupTable>,
    pub projective_group: Arc<GroupTable>,
    /// `D4 → projective group`, `r ↦ [S]`, `s ↦ [σx]`.
    pub d4_iso: GroupHom,
    pub order_s: usize,
    pub order_x: usize,
    pub pauli_group: Arc<GroupTable>,
    pub pauli_quotient: Arc<GroupTable>,
    /// `K4 → Pauli group mod phases`.
    pub k4_iso: GroupHom,
}

fn matrix_group(
    name: &str,
    gens: Vec<(String, ExactMatrix)>,
) -> Result<(Arc<GroupTable>, Vec<ExactMatrix>)> {
    let (g, elems) =
        GroupTable::from_closure(name, ExactMatrix::identity(2), gens, |a, b| a * b, 256)?;
    Ok((Arc::new(g), elems))
}

fn mod_scalars(g: &Arc<GroupTable>, elems: &[ExactMatrix]) -> Result<(Arc<GroupTable>, GroupHom)> {
    let scalars: Vec<usize> = (0..elems.len())
        .filter(|&i| elems[i].as_scalar().is_some())
        .collect();
    quotient(g, &scalars)
}

pub fn correction_group_check() -> Result<CorrectionGroupReport> {
    let s = phase_s();
    let gens: Vec<(String, ExactMatrix)> = povm_vectors()
        .into_iter()
        .map(|(_, _, v, l)| (l, v))
        .collect();
    let (mg, elems) = matrix_group("⟨σk, Sσk⟩", gens)?;
    let (pg, proj) = mod_scalars(&mg, &elems)?;
    let find = |m: &ExactMatrix| {
        elems
            .iter()
            .position(|e| e == m)
            .expect("generator is in its closure")
    };
    let cls_s = proj.apply(find(&s));
    let cls_x = proj.apply(find(&pauli(1)));
    let order_s = pg.element_order(cls_s);
    let order_x = pg.element_order(cls_x);
    if pg.order() != 8 {
        return Err(Error::IsoNotFound(format!(
            "projective correction group has order {}",
            pg.order()
        )));
    }
    let d4 = builtin_group(BuiltinGroup::D4);
    let d4_iso = GroupHom::extend_from_generators(
        Arc::clone(&d4),
        Arc::clone(&pg),
        &[("r", cls_s), ("s", cls_x)],
    )?;
    if !(verify_hom(&d4_iso) && d4_iso.is_bijective()) {
        return Err(Error::IsoNotFound(
            "r ↦ [S], s ↦ [σx] does not respect the D4 relations".into(),
        ));
    }

    let pgens = (1..4)
        .map(|k| (["σx", "σy", "σz"][k - 1].to_string(), pauli(k)))
        .collect();
    let (pauli_group, pelems) = matrix_group("⟨σx, σy, σz⟩", pgens)?;
    if find_isomorphism(&pauli_group, &builtin_group(BuiltinGroup::Pauli1)).is_none() {
        return Err(Error::IsoNotFound("generated Pauli group is not P1".into()));
    }
    let (pauli_quotient, _) = mod_scalars(&pauli_group, &pelems)?;
    let k4 = builtin_group(BuiltinGroup::K4);
    let k4_iso = find_isomorphism(&k4, &pauli_quotient)
        .ok_or_else(|| Error::IsoNotFound("Pauli group mod phases is not K4".into()))?;
    Ok(CorrectionGroupReport {
        matrix_group: mg,
        projective_group: pg,
        d4_iso,
        order_s,
        order_x,
        pauli_group,
        pauli_quotient,
        k4_iso,
    })
}

/// Outcome counting for rank-one PVMs on `C² ⊗ C²`.
#[derive(Clone, Debug, Serialize)]
pub struct PvmCount {
    pub dimension: usize,
    pub rank_one_pvm_outcomes: usize,
    pub d4_order: usize,
    pub povm_outcomes: usize,
    pub pvm_sufficient: bool,
}

impl PvmCount {
    pub fn line(&self) -> String {
        format!(
            "rank-one PVM on dim {} has {} outcomes < |D4| = {}; the {}-outcome POVM is required (a Naimark-dilated PVM is the unimplemented alternative)",
            self.dimension, self.rank_one_pvm_outcomes, self.d4_order, self.povm_outcomes
        )
    }
}

pub fn pvm_counting_check() -> Result<PvmCount> {
    let dimension = 4;
    // A rank-one PVM is a resolution of 𝟙 into projectors of trace 1.
    let outcomes = ExactMatrix::identity(dimension)
        .trace()
        .as_i64()
        .expect("integer trace") as usize;
    let d4_order = builtin_group(BuiltinGroup::D4).order();
    let (effects, _) = povm_construction()?;
    Ok(PvmCount {
        dimension,
        rank_one_pvm_outcomes: outcomes,
        d4_order,
        povm_outcomes: effects.len(),
        pvm_sufficient: outcomes >= d4_order,
    })
}

/// `X ↦ U X U†`
pub fn conjugate_by(u: &ExactMatrix, x: &ExactMatrix) -> ExactMatrix {
    &(u * x) * &u.adjoint()
}

/// Extends generator matrices to every group element along the group's
/// canonical spanning tree (no law is checked here).
pub fn extend_assignment(
    group: &GroupTable,
    images: &[(&str, ExactMatrix)],
) -> Result<Vec<ExactMatrix>> {
    let dim = images
        .first()
        .map(|(_, m)| m.rows())
        .ok_or_else(|| Error::InvalidInput("no generator images".into()))?;
    let mut gens = Vec::new();
    for (name, g) in group.generators() {
        let m = images
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        gens.push((*g, m));
    }
    let mut out: Vec<Option<ExactMatrix>> = vec![None; group.order()];
    out[group.identity()] = Some(ExactMatrix::identity(dim));
    let mut queue = std::collections::VecDeque::from([group.identity()]);
    while let Some(g) = queue.pop_front() {
        for (x, m) in &gens {
            let h = group.mul(g, *x);
            if out[h].is_none() {
                out[h] = Some(out[g].as_ref().expect("visited") * m);
                queue.push_back(h);
            }
        }
    }
    out.into_iter()
        .map(|m| {
            m.ok_or_else(|| Error::InvalidInput("generators do not generate the group".into()))
        })
        .collect()
}

/// Character of the conjugation action computed from the matrices: the trace
/// of `X ↦ U_g X U_g†` in the matrix-unit basis `E_ij`. The assignment must
/// obey the group law up to non-zero scalars.
pub fn conj_rep_character_from_matrices(
    group: &Arc<GroupTable>,
    unitaries: &[ExactMatrix],
) -> Result<ClassFunction> {
    if unitaries.len() != group.order() {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices for a group of order {}",
            unitaries.len(),
            group.order()
        )));
    }
    let d = unitaries[0].rows();
    for (g, u) in unitaries.iter().enumerate() {
        if u.rows() != d || !u.is_unitary() {
            return Err(Error::NotProjectiveRep(format!(
                "U({}) is not a {d}×{d} unitary",
                group.word(g)
            )));
        }
    }
    for a in 0..group.order() {
        for b in 0..group.order() {
            let lhs = &unitaries[a] * &unitaries[b];
            let rhs = &unitaries[group.mul(a, b)];
            let omega = (&lhs * &rhs.adjoint()).as_scalar();
            if omega.is_none_or(|w| w.is_zero()) {
                return Err(Error::NotProjectiveRep(format!(
                    "U({})U({}) is not a multiple of U({})",
                    group.word(a),
                    group.word(b),
                    group.word(group.mul(a, b))
                )));
            }
        }
    }
    let per_element: Vec<CycloNum> = unitaries
        .iter()
        .map(|u| {
            let mut tr = CycloNum::zero();
            for i in 0..d {
                for j in 0..d {
                    let e = ExactMatrix::unit(d, i, j);
                    tr += &ExactMatrix::hs_inner(&e, &conjugate_by(u, &e)).expect("same shape");
                }
            }
            tr
        })
        .collect();
    let classes = group.classes();
    let mut values = Vec::with_capacity(classes.len());
    for class in &classes.classes {
        let v = &per_element[class[0]];
        if class.iter().any(|&g| &per_element[g] != v) {
            return Err(Error::NotProjectiveRep(format!(
                "conjugation trace is not constant on the class of {}",
                group.word(class[0])
            )));
        }
        values.push(v.clone());
    }
    ClassFunction::new(Arc::clone(group), values)
}

/// `K4 → U(2)`: `e, a, b, ab ↦ σ0, σ1, σ2, σ3`.
pub fn pauli_assignment_k4() -> (Arc<GroupTable>, Vec<ExactMatrix>) {
    let k4 = builtin_group(BuiltinGroup::K4);
    let mats = ["e", "a", "b", "ab"]
        .iter()
        .enumerate()
        .map(|(k, w)| {
            debug_assert_eq!(k4.element(w), Some(k));
            pauli(k)
        })
        .collect();
    (k4, mats)
}

/// The projective assignment `r ↦ S`, `s ↦ σx` of `D4`.
pub fn projective_assignment_d4() -> Result<(Arc<GroupTable>, Vec<ExactMatrix>)> {
    let d4 = builtin_group(BuiltinGroup::D4);
    let mats = extend_assignment(&d4, &[("r", phase_s()), ("s", pauli(1))])?;
    Ok((d4, mats))
}

/// Linear lift of `r ↦ S`, `s ↦ σx` to the cover `D8`: `ζ ↦ ζ⁷ S`, `η ↦ σx`.
/// The phase `ζ⁷` makes `ηζη⁻¹ = ζ⁻¹` hold exactly, and `ζ⁴` acts as `−𝟙`.
pub fn linear_lift_d8() -> Result<(Arc<GroupTable>, Vec<ExactMatrix>)> {
    let d8 = builtin_group(BuiltinGroup::D8);
    let u_zeta = phase_s().scale(&CycloNum::zeta_pow(7));
    let mats = extend_assignment(&d8, &[("ζ", u_zeta), ("η", pauli(1))])?;
    for a in 0..d8.order() {
        for b in 0..d8.order() {
            if &mats[a] * &mats[b] != mats[d8.mul(a, b)] {
                return Err(Error::NotProjectiveRep(
                    "D8 lift is not a linear representation".into(),
                ));
            }
        }
    }
    Ok((d8, mats))
}

/// Character `g ↦ tr U_g` of a matrix assignment, checked class-constant.
pub fn trace_character(
    group: &Arc<GroupTable>,
    unitaries: &[ExactMatrix],
) -> Result<ClassFunction> {
    let classes = group.classes();
    let mut values = Vec::with_capacity(classes.len());
    for class in &classes.classes {
        let v = unitaries[class[0]].trace();
        if class.iter().any(|&g| unitaries[g].trace() != v) {
            return Err(Error::NotClassConstant {
                element: group.word(class[0]).to_string(),
            });
        }
        values.push(v);
    }
    ClassFunction::new(Arc::clone(group), values)
}

/// Random Gaussian-rational amplitudes with small numerators and denominators.
pub fn random_rational_state<R: Rng>(rng: &mut R, dim: usize) -> PureState {
    loop {
        let amps: Vec<CycloNum> = (0..dim)
            .map(|_| {
                let mut q = || {
                    BigRational::new(
                        BigInt::from(rng.gen_range(-5i64..=5)),
                        BigInt::from(rng.gen_range(1i64..=5)),
                    )
                };
                CycloNum::gaussian(q(), q())
            })
            .collect();
        let s = PureState { amps };
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random matrix with Gaussian-rational entries.
pub fn random_rational_matrix<R: Rng>(rng: &mut R, n: usize) -> ExactMatrix {
    let data = (0..n * n)
        .map(|_| {
            let mut q = || {
                BigRational::new(
                    BigInt::from(rng.gen_range(-7i64..=7)),
                    BigInt::from(rng.gen_range(1i64..=3)),
                )
            };
            CycloNum::gaussian(q(), q())
        })
        .collect();
    ExactMatrix::new(n, n, data).expect("n×n")
}
