//! The `repcheck` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::character::{builtin_table_data, char_table, RawTable};
use crate::classifier::{
    brute_force_matches, full_report, k4_native_conj_character, parity_sweep,
    trivial_multiplicity_sweep, FamilyName,
};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::{builtin_group, BuiltinGroup};
use crate::quantum::{
    all_paths, chsh_value, conj_rep_character_from_matrices, correction_group_check,
    entanglement_swap, entanglement_swap_with, iterate_swap, iterate_swap_path, phi_plus,
    povm_construction, pvm_counting_check, random_rational_state, teleport, verify_cocycle,
    ChshSettings, CorrectionTable, PureState,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "repcheck",
    version,
    about = "Exact realizability checks for teleportation-stable state-space families"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Output format; `--json` takes precedence.
    #[arg(long, global = true, value_enum, env = "REPCHECK_OUTPUT")]
    pub format: Option<OutputFormat>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Classify the seven families.
    Classify,
    /// Print a built-in group: K4, Z4, D4, D8 or Pauli1.
    ShowGroup { name: BuiltinGroup },
    /// Print the character table of a built-in group.
    ShowTable { name: BuiltinGroup },
    /// Teleport a qubit and report every Bell outcome.
    SimulateTeleport {
        /// Amplitudes as `re,im;re,im` with rational parts, e.g. `1,0;1/2,-1`.
        #[arg(long, allow_hyphen_values = true)]
        state: Option<String>,
    },
    /// Entanglement swapping with the eight-outcome POVM.
    SimulateSwap {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=64))]
        rounds: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run every invariant check; exit 1 on any failure.
    VerifyAll,
}

/// Parsed invocation.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub command: Command,
    pub output_format: OutputFormat,
    pub out_path: Option<PathBuf>,
}

impl From<Cli> for CliConfig {
    fn from(c: Cli) -> Self {
        let output_format = if c.json {
            OutputFormat::Json
        } else {
            c.format.unwrap_or(OutputFormat::Text)
        };
        CliConfig {
            command: c.command,
            output_format,
            out_path: c.out,
        }
    }
}

/// Parses `args` and runs. Returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.into(), out, err),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            code
        }
    }
}

pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let json = config.output_format == OutputFormat::Json;
    let result = match &config.command {
        Command::Classify => classify_cmd(json),
        Command::ShowGroup { name } => Ok((show_group(*name, json), 0)),
        Command::ShowTable { name } => show_table(*name, json).map(|s| (s, 0)),
        Command::SimulateTeleport { state } => {
            match state.as_deref().map(parse_state).transpose() {
                Ok(s) => simulate_teleport(s, json).map(|s| (s, 0)),
                Err(e) => {
                    let _ = writeln!(err, "error: invalid --state: {e}");
                    return 2;
                }
            }
        }
        Command::SimulateSwap { rounds, seed } => {
            simulate_swap(*rounds as usize, seed.unwrap_or(0), json).map(|s| (s, 0))
        }
        Command::VerifyAll => {
            let checks = verify_all();
            let code = if checks.iter().all(|c| c.passed) {
                0
            } else {
                1
            };
            Ok((render_checks(&checks, json), code))
        }
    };
    match result {
        Ok((text, code)) => {
            let written = match &config.out_path {
                Some(p) => std::fs::write(p, text.as_bytes()),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if code != 0 {
                let _ = writeln!(err, "verification failed");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn classify_cmd(json: bool) -> Result<(String, i32)> {
    let report = full_report()?;
    let text = if json {
        format!("{}\n", report.to_json())
    } else {
        report.render()
    };
    Ok((text, 0))
}

fn to_json_line<T: Serialize>(v: &T) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("serializable")
    )
}

fn show_group(which: BuiltinGroup, json: bool) -> String {
    let g = builtin_group(which);
    if !json {
        let mut s = g.dump();
        s.push_str("classes:");
        for (rep, size) in g.classes().representatives.iter().zip(&g.classes().sizes) {
            s.push_str(&format!(" {}({size})", g.word(*rep)));
        }
        s.push('\n');
        return s;
    }
    let classes: Vec<_> = g
        .classes()
        .classes
        .iter()
        .map(|c| json!({"representative": g.word(c[0]), "elements": c.iter().map(|&x| g.word(x)).collect::<Vec<_>>()}))
        .collect();
    let table: Vec<Vec<usize>> = (0..g.order())
        .map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect())
        .collect();
    to_json_line(&json!({
        "group": g.name(),
        "order": g.order(),
        "elements": g.words(),
        "generators": g.generators().iter().map(|(n, x)| json!({"name": n, "element": g.word(*x)})).collect::<Vec<_>>(),
        "classes": classes,
        "table": table,
    }))
}

fn show_table(which: BuiltinGroup, json: bool) -> Result<String> {
    let t = char_table(which)?;
    Ok(if json {
        to_json_line(&t.to_json())
    } else {
        t.render()
    })
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
    let d: BigInt = d.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Parses `re,im;re,im[;re,im;re,im]` into a 1- or 2-qubit state.
pub fn parse_state(s: &str) -> std::result::Result<PureState, String> {
    let amps = s
        .split(';')
        .map(|pair| {
            let (re, im) = pair
                .split_once(',')
                .ok_or_else(|| format!("expected re,im in {pair:?}"))?;
            Ok(CycloNum::gaussian(parse_rational(re)?, parse_rational(im)?))
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    if amps.len() != 2 && amps.len() != 4 {
        return Err(format!("expected 2 or 4 amplitudes, got {}", amps.len()));
    }
    PureState::new(amps).map_err(|e| e.to_string())
}

fn simulate_teleport(state: Option<PureState>, json: bool) -> Result<String> {
    let input = state.unwrap_or_else(|| parse_state("1,0;1,1").expect("default state"));
    let trace = teleport(&input)?;
    if json {
        return Ok(to_json_line(&json!({
            "input": input.amps(),
            "outcomes": trace.to_json(),
        })));
    }
    let amps: Vec<String> = input.amps().iter().map(ToString::to_string).collect();
    let mut s = format!("input [{}]\n", amps.join(", "));
    for o in &trace.outcomes {
        s.push_str(&format!(
            "{}  p = {}  correction {}  restored {}\n",
            o.outcome,
            o.probability,
            o.correction_label,
            if o.restored() { "yes" } else { "no" }
        ));
    }
    s.push_str(&format!(
        "total probability {}\n",
        trace.total_probability()
    ));
    Ok(s)
}

fn simulate_swap(rounds: usize, seed: u64, json: bool) -> Result<String> {
    let (_, inst) = povm_construction()?;
    let trace = entanglement_swap(&inst)?;
    let path = if rounds > 1 {
        Some(iterate_swap(rounds, seed)?)
    } else {
        None
    };
    if json {
        let path_json = path.as_ref().map(|(p, v)| {
            p.iter()
                .zip(v)
                .enumerate()
                .map(|(i, (k, c))| json!({"round": i + 1, "outcome": inst.labels[*k], "chsh": c}))
                .collect::<Vec<_>>()
        });
        return Ok(to_json_line(&json!({
            "rounds": rounds,
            "seed": seed,
            "outcomes": trace.to_json(),
            "path": path_json,
        })));
    }
    let mut s = String::new();
    for o in &trace.outcomes {
        s.push_str(&format!(
            "{}  p = {}  correction {}  CHSH = {}\n",
            o.outcome,
            o.probability,
            o.correction_label,
            o.chsh.as_ref().map_or("-".into(), ToString::to_string)
        ));
    }
    if let Some((p, v)) = path {
        s.push_str(&format!("path of {rounds} rounds, seed {seed}\n"));
        for (i, (k, c)) in p.iter().zip(&v).enumerate() {
            s.push_str(&format!(
                "round {}  {}  CHSH = {c}\n",
                i + 1,
                inst.labels[*k]
            ));
        }
    }
    Ok(s)
}

/// One line of `verify-all`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(
    name: &str,
    f: impl FnOnce() -> Result<std::result::Result<String, String>>,
) -> CheckOutcome {
    let (passed, detail) = match f() {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    CheckOutcome {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn ok_if(cond: bool, pass: String, fail: String) -> std::result::Result<String, String> {
    if cond {
        Ok(pass)
    } else {
        Err(fail)
    }
}

pub fn verify_all() -> Vec<CheckOutcome> {
    verify_all_with(builtin_table_data)
}

/// Runs the full battery with character tables taken from `tables`.
pub fn verify_all_with(tables: impl Fn(BuiltinGroup) -> RawTable) -> Vec<CheckOutcome> {
    let two_sqrt2 = CycloNum::from_ints([0, 2, 0, -2]);
    let mut out = Vec::new();
    for g in BuiltinGroup::ALL {
        out.push(check(&format!("table {g}"), || {
            let t = tables(g).build()?;
            Ok(Ok(format!("{} irreducibles, orthogonality exact", t.len())))
        }));
    }
    out.push(check("classify", || {
        let r = full_report()?;
        Ok(ok_if(
            r.realizable == [FamilyName::K4_1234, FamilyName::D4_125],
            "realizable = {K4_1234, D4_125}".into(),
            format!("realizable = {:?}", r.realizable),
        ))
    }));
    out.push(check("m1 sweep", || {
        let s = trivial_multiplicity_sweep(6)?;
        Ok(ok_if(
            s.failures.is_empty() && s.m1_counts.iter().all(|&c| c > 0),
            format!("{} characters, m1 = Σnᵢ² for all", s.cases),
            format!("failures {:?}", s.failures),
        ))
    }));
    out.push(check("parity sweep", || {
        let (n, bad) = parity_sweep(4)?;
        Ok(ok_if(
            bad.is_empty(),
            format!("{n} characters, m5 = 2e(a+b+c+d)"),
            format!("disagreements {bad:?}"),
        ))
    }));
    out.push(check("brute-force oracle", || {
        let (n, m) = brute_force_matches(4)?;
        let reducible: Vec<_> = m
            .iter()
            .filter(|b| b.multiplicities.iter().sum::<u64>() != 1)
            .collect();
        Ok(ok_if(
            reducible.is_empty() && !m.is_empty(),
            format!("{n} characters, {} matches, all irreducible", m.len()),
            format!("reducible matches {reducible:?}"),
        ))
    }));
    out.push(check("k4 native", || {
        let target = crate::classifier::Family::new(FamilyName::K4_1234)?.target;
        Ok(ok_if(
            k4_native_conj_character()? == target,
            "Pauli conjugation character = χK4_1234".into(),
            "Pauli conjugation character differs".into(),
        ))
    }));
    out.push(check("tsirelson", || {
        let v = chsh_value(&phi_plus(), &ChshSettings::tsirelson())?;
        Ok(ok_if(
            v == two_sqrt2,
            format!("CHSH(Φ+) = {v}"),
            format!("CHSH(Φ+) = {v}"),
        ))
    }));
    out.push(check("povm", || {
        let (effects, inst) = povm_construction()?;
        Ok(ok_if(
            effects.len() == 8 && inst.is_complete(),
            "8 effects sum to 𝟙, Kraus complete".into(),
            "incomplete".into(),
        ))
    }));
    out.push(check("teleport", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let quarter = BigRational::new(1.into(), 4.into());
        for _ in 0..25 {
            let s = random_rational_state(&mut rng, 2);
            let t = teleport(&s)?;
            if !t.all_restored() || t.outcomes.iter().any(|o| o.probability != quarter) {
                return Ok(Err(format!("failed on {:?}", s.amps())));
            }
        }
        Ok(Ok("25 random states, p = 1/4, restored".into()))
    }));
    out.push(check("swap", || {
        let (_, inst) = povm_construction()?;
        let t = entanglement_swap(&inst)?;
        let eighth = BigRational::new(1.into(), 8.into());
        let good = t.outcomes.len() == 8
            && t.all_restored()
            && t.outcomes
                .iter()
                .all(|o| o.probability == eighth && o.chsh.as_ref() == Some(&two_sqrt2));
        let depth2 = all_paths(8, 2).try_fold(true, |acc, p| {
            Ok::<_, Error>(
                acc && iterate_swap_path(&inst, &CorrectionTable::swap_standard(), &p)?
                    .iter()
                    .all(|v| *v == two_sqrt2),
            )
        })?;
        Ok(ok_if(
            good && depth2,
            "8 outcomes at 1/8, CHSH 2√2, depth-2 paths hold".into(),
            "swap mismatch".into(),
        ))
    }));
    out.push(check("negative control", || {
        let (_, inst) = povm_construction()?;
        let t = entanglement_swap_with(&inst, &CorrectionTable::swap_shifted())?;
        Ok(ok_if(
            !t.all_restored(),
            "shifted corrections detected".into(),
            "shifted corrections not detected".into(),
        ))
    }));
    out.push(check("cocycle", || {
        let w = verify_cocycle()?;
        Ok(Ok(format!("σx S σx S = {w}·𝟙")))
    }));
    out.push(check("correction group", || {
        let r = correction_group_check()?;
        Ok(Ok(format!(
            "{} matrices, mod phases order {} ≅ D4; Pauli mod phases ≅ K4",
            r.matrix_group.order(),
            r.projective_group.order()
        )))
    }));
    out.push(check("matrix χ_conj", || {
        let (d4, mats) = crate::quantum::projective_assignment_d4()?;
        let direct = conj_rep_character_from_matrices(&d4, &mats)?;
        let target = crate::classifier::Family::new(FamilyName::D4_125)?.target;
        Ok(ok_if(
            direct == target,
            "S, σx conjugation character = χD4_125".into(),
            "mismatch".into(),
        ))
    }));
    out.push(check("pvm counting", || {
        let c = pvm_counting_check()?;
        Ok(ok_if(!c.pvm_sufficient, c.line(), "unexpected".into()))
    }));
    out
}

fn render_checks(checks: &[CheckOutcome], json: bool) -> String {
    if json {
        let passed = checks.iter().all(|c| c.passed);
        return to_json_line(&json!({"passed": passed, "checks": checks}));
    }
    let w = checks
        .iter()
        .map(|c| c.name.chars().count())
        .max()
        .unwrap_or(0);
    let mut s = String::new();
    for c in checks {
        let pad = " ".repeat(w - c.name.chars().count());
        s.push_str(&format!(
            "{} {}{pad}  {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    s.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(
            std::iter::once("repcheck").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn state_parsing() {
        let s = parse_state("1,0;1/2,-1").unwrap();
        assert_eq!(
            s.amps()[1],
            CycloNum::gaussian(
                BigRational::new(1.into(), 2.into()),
                BigRational::from_integer((-1).into())
            )
        );
        assert!(parse_state("1,0").is_err());
        assert!(parse_state("1;0").is_err());
        assert!(parse_state("1,0;1/0,0").is_err());
    }

    #[test]
    fn misuse_exits_2() {
        assert_eq!(run_args(&["bogus"]).0, 2);
        assert_eq!(run_args(&["classify", "--rounds", "3"]).0, 2);
        assert_eq!(run_args(&["show-group", "S3"]).0, 2);
        assert_eq!(run_args(&["simulate-teleport", "--state", "x"]).0, 2);
    }

    #[test]
    fn fault_injection_fails_verification() {
        let checks = verify_all_with(|g| {
            let mut raw = builtin_table_data(g);
            if g == BuiltinGroup::D4 {
                raw.rows[4][1] = CycloNum::from_int(1);
            }
            raw
        });
        let failed: Vec<_> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failed, ["table D4"]);
    }
}
