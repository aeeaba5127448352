//! The `phaseshift` command line.
//!
//! Exit codes: 0 success, 1 input error, 2 policy error, 3 verification
//! failure.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand, ValueEnum};

use phaseshift_core::carrier::classify;
use phaseshift_core::pulsesim::{drive_unitary, integrate_sigma, Envelope};
use phaseshift_core::uniqueness::{coverage_fraction, covers_su2, product_coeffs, AngleTriple};
use phaseshift_core::{
    compile_circuit, conjugated_x, merge_adjacent_1q, simulate_schedule, CircuitIR, CompilePolicy,
    Error as CoreError, Mat4, PolicyKind, TwoQubitGate,
};

use crate::circuit_text::{parse_circuit, parse_gate_spec, parse_matrix_entries};
use crate::number::{fmt_angle, fmt_clean, fmt_sig};
use crate::schedule_text::{format_schedule, parse_schedule, stats_line};

/// Seed used by randomized subcommands unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 0;

/// Default verification tolerance (max-norm, up to global phase).
pub const DEFAULT_TOL: f64 = 1e-8;

const CONVENTIONS: &str = "\
Angles are in radians. Z_t = diag(e^{-it/2}, e^{it/2}), X_w = exp(-iwX/2), and a pulse \
(sigma, phase) applies Z_{-phase} X_sigma Z_phase. Schedules are listed in time order, \
first event first.

Exit codes: 0 success, 1 input error, 2 policy error, 3 verification failure.";

#[derive(Debug, Parser)]
#[command(name = "phaseshift", version, about = "Compile single-qubit gates into phase-shifted X pulses", long_about = None, after_help = CONVENTIONS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a circuit file into a time-ordered pulse schedule.
    #[command(after_help = CONVENTIONS)]
    Compile(CompileArgs),
    /// Classify a two-qubit gate: phase carrier, ENC, Weyl coordinates.
    #[command(after_help = CONVENTIONS)]
    Classify(ClassifyArgs),
    /// Compare pulse counts of every compile policy on a circuit.
    #[command(after_help = CONVENTIONS)]
    Stats(StatsArgs),
    /// Re-simulate a schedule and compare it with its circuit.
    #[command(after_help = CONVENTIONS)]
    Verify(VerifyArgs),
    /// Check whether three fixed X angles (radians) reach every gate.
    #[command(after_help = CONVENTIONS)]
    Uniqueness(UniquenessArgs),
    /// Integrate a drive envelope and compare with the closed-form pulse.
    #[command(after_help = CONVENTIONS)]
    Pulsesim(PulsesimArgs),
}

#[derive(Debug, clap::Args)]
struct CircuitInput {
    /// Circuit file, or '-' for stdin.
    input: String,
    /// Fold adjacent single-qubit gates on the same qubit before compiling.
    #[arg(long)]
    merge: bool,
    /// Always use the general scheme instead of shorter special-case pulses.
    #[arg(long)]
    no_special_cases: bool,
}

#[derive(Debug, clap::Args)]
struct CompileArgs {
    #[command(flatten)]
    circuit: CircuitInput,
    /// Compile policy.
    #[arg(long, default_value = "auto", value_parser = PossibleValuesParser::new(PolicyKind::ALL.map(|k| k.as_str())))]
    policy: String,
    /// Write the schedule here instead of stdout; stats then go to stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct ClassifyArgs {
    /// Gate name (CZ, CNOT, SWAP, ISWAP, SQISW, CPHASE(phi), FSIM(theta,phi)),
    /// or a file / '-' holding a gate name or 16 row-major re,im pairs.
    gate: String,
}

#[derive(Debug, clap::Args)]
struct StatsArgs {
    #[command(flatten)]
    circuit: CircuitInput,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    /// Circuit file, or '-' for stdin.
    circuit: String,
    /// Schedule file produced by `compile`.
    schedule: String,
    /// Largest accepted deviation (max-norm, up to global phase).
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, clap::Args)]
struct UniquenessArgs {
    /// First angle of the matrix product, in radians.
    #[arg(long, allow_hyphen_values = true)]
    omega1: f64,
    /// Second angle, in radians.
    #[arg(long, allow_hyphen_values = true)]
    omega2: f64,
    /// Third angle, in radians.
    #[arg(long, allow_hyphen_values = true)]
    omega3: f64,
    /// Haar-random targets used to estimate coverage.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Seed for the random targets.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Shape {
    Const,
    Gauss,
}

#[derive(Debug, clap::Args)]
struct PulsesimArgs {
    /// Envelope shape; a Gaussian is truncated at three standard deviations.
    #[arg(long, value_enum, default_value = "gauss")]
    shape: Shape,
    /// Pulse area sigma in radians.
    #[arg(long, allow_hyphen_values = true)]
    area: f64,
    /// Pulse phase in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phase: f64,
    /// Integration steps.
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    /// Pulse duration in seconds.
    #[arg(long, default_value_t = 2e-8)]
    duration: f64,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Policy(String),
    #[error("{0}")]
    Verify(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Policy(_) => 2,
            CliError::Verify(_) => 3,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

type Out<'a> = &'a mut dyn Write;

/// Run the command line with explicit streams; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Compile(a) => cmd_compile(a, stdin, out),
        Command::Classify(a) => cmd_classify(a, stdin, out),
        Command::Stats(a) => cmd_stats(a, stdin, out),
        Command::Verify(a) => cmd_verify(a, stdin, out),
        Command::Uniqueness(a) => cmd_uniqueness(a, out),
        Command::Pulsesim(a) => cmd_pulsesim(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| input_err(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| input_err(format!("{path}: {e}")))
    }
}

fn load_circuit(c: &CircuitInput, stdin: &mut dyn Read) -> Result<CircuitIR, CliError> {
    let text = read_source(&c.input, stdin)?;
    let ir = parse_circuit(&text).map_err(|e| input_err(format!("{}: {e}", c.input)))?;
    Ok(if c.merge { merge_adjacent_1q(&ir) } else { ir })
}

fn policy_for(kind: PolicyKind, special_cases: bool) -> CompilePolicy {
    let p = CompilePolicy::new(kind);
    if special_cases {
        p
    } else {
        p.without_special_cases()
    }
}

fn compile_err(e: CoreError) -> CliError {
    match e {
        CoreError::IllegalPolicy { .. } => CliError::Policy(e.to_string()),
        other => input_err(other),
    }
}

fn io_err(e: std::io::Error) -> CliError {
    input_err(format!("write failed: {e}"))
}

fn cmd_compile(a: CompileArgs, stdin: &mut dyn Read, out: Out) -> Result<(), CliError> {
    let ir = load_circuit(&a.circuit, stdin)?;
    let kind = PolicyKind::from_name(&a.policy).expect("clap restricts policy names");
    let schedule =
        compile_circuit(&ir, policy_for(kind, !a.circuit.no_special_cases)).map_err(compile_err)?;
    let text = format_schedule(&schedule);
    match &a.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
            writeln!(out, "{}", stats_line(&schedule)).map_err(io_err)
        }
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn gate_from_text(text: &str) -> Result<TwoQubitGate, String> {
    let toks: Vec<String> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .map(str::to_string)
        .collect();
    match toks.as_slice() {
        [] => Err("no gate given".to_string()),
        [one] => parse_gate_spec(one),
        [head, rest @ ..] if head.eq_ignore_ascii_case("CUSTOM") => {
            Ok(TwoQubitGate::Custom(parse_matrix_entries(rest)?))
        }
        _ => Ok(TwoQubitGate::Custom(parse_matrix_entries(&toks)?)),
    }
}

fn fmt_matrix4(m: &Mat4) -> String {
    m.0.iter()
        .map(|row| {
            row.iter()
                .map(|c| format!("{},{}", fmt_sig(c.re), fmt_sig(c.im)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n  ")
}

fn cmd_classify(a: ClassifyArgs, stdin: &mut dyn Read, out: Out) -> Result<(), CliError> {
    let text = if a.gate == "-" || Path::new(&a.gate).is_file() {
        read_source(&a.gate, stdin)?
    } else {
        a.gate.clone()
    };
    let gate = gate_from_text(&text).map_err(input_err)?;
    let u = gate.matrix();
    let r = classify(&u).map_err(input_err)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut s = format!("gate: {gate}\n");
    if matches!(gate, TwoQubitGate::Custom(_)) {
        s += &format!("matrix:\n  {}\n", fmt_matrix4(&u));
    }
    s += &format!("carrier: {}\n", yes(r.is_carrier));
    if let (Some(p), Some(c)) = (r.permutation, r.carry_map) {
        let pi = p.pi.map(|x| x.to_string()).join(" ");
        let [r0, r1] = c.coeffs;
        s += &format!("permutation: {pi}\n");
        s += &format!(
            "carry_map: theta0' = {}*theta0 + {}*theta1, theta1' = {}*theta0 + {}*theta1\n",
            r0[0], r0[1], r1[0], r1[1]
        );
    }
    s += &format!("enc: {}\n", yes(r.is_enc));
    match r.enc_map {
        Some(m) => s += &format!("generalized_enc: yes (k0={}, k1={})\n", m.k0, m.k1),
        None => s += "generalized_enc: no\n",
    }
    s += &format!(
        "weyl: {} {} {}\nsegment: {}\n",
        fmt_clean(r.weyl.c1),
        fmt_clean(r.weyl.c2),
        fmt_clean(r.weyl.c3),
        r.segment.as_str()
    );
    out.write_all(s.as_bytes()).map_err(io_err)
}

fn cmd_stats(a: StatsArgs, stdin: &mut dyn Read, out: Out) -> Result<(), CliError> {
    let ir = load_circuit(&a.circuit, stdin)?;
    let special = !a.circuit.no_special_cases;
    let baseline = compile_circuit(&ir, policy_for(PolicyKind::ThreeAlways, special))
        .map_err(compile_err)?
        .pulse_count();
    let mut s = format!("gate1: {}\n", ir.gate1_count());
    for kind in PolicyKind::ALL {
        match compile_circuit(&ir, policy_for(kind, special)) {
            Ok(sched) => {
                let n = sched.pulse_count();
                let ratio = if baseline == 0 {
                    "-".to_string()
                } else {
                    fmt_sig(n as f64 / baseline as f64)
                };
                s += &format!(
                    "{}: pulses={n} per_gate1={} ratio={ratio}\n",
                    kind.as_str(),
                    fmt_sig(sched.stats.pulses_per_gate1())
                );
            }
            Err(e @ CoreError::IllegalPolicy { .. }) => {
                s += &format!("{}: illegal ({e})\n", kind.as_str());
            }
            Err(e) => return Err(input_err(e)),
        }
    }
    out.write_all(s.as_bytes()).map_err(io_err)
}

fn cmd_verify(a: VerifyArgs, stdin: &mut dyn Read, out: Out) -> Result<(), CliError> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(input_err(format!(
            "tolerance must be positive, got {}",
            a.tol
        )));
    }
    let ir_text = read_source(&a.circuit, stdin)?;
    let ir = parse_circuit(&ir_text).map_err(|e| input_err(format!("{}: {e}", a.circuit)))?;
    let sched_text = read_source(&a.schedule, stdin)?;
    let sched =
        parse_schedule(&sched_text).map_err(|e| input_err(format!("{}: {e}", a.schedule)))?;
    let report = simulate_schedule(&sched, &ir).map_err(input_err)?;
    writeln!(out, "deviation: {}", fmt_sig(report.deviation)).map_err(io_err)?;
    if report.deviation <= a.tol {
        writeln!(out, "ok").map_err(io_err)
    } else {
        Err(CliError::Verify(format!(
            "deviation {} exceeds tolerance {}",
            fmt_sig(report.deviation),
            fmt_sig(a.tol)
        )))
    }
}

fn cmd_uniqueness(a: UniquenessArgs, out: Out) -> Result<(), CliError> {
    let t = AngleTriple::new(a.omega1, a.omega2, a.omega3).map_err(input_err)?;
    let (c, v) = product_coeffs(&t);
    let mut s = format!(
        "angles: {} {} {}\n",
        fmt_sig(t.omega1),
        fmt_sig(t.omega2),
        fmt_sig(t.omega3)
    );
    s += &format!("covers: {}\n", if covers_su2(&t) { "yes" } else { "no" });
    s += &format!(
        "U coefficients (1, u1, u2, u1u2): {} {} {} {}\n",
        fmt_clean(c.b00),
        fmt_clean(c.b01),
        fmt_clean(c.b10),
        fmt_clean(c.b11)
    );
    s += &format!(
        "V coefficients (u3, u2u3, u1u2u3, u1u3): {}\n",
        v.0.map(fmt_clean).join(" ")
    );
    if a.samples > 0 {
        s += &format!(
            "coverage: {} ({} samples, seed {})\n",
            fmt_sig(coverage_fraction(&t, a.samples, a.seed)),
            a.samples,
            a.seed
        );
    }
    out.write_all(s.as_bytes()).map_err(io_err)
}

fn cmd_pulsesim(a: PulsesimArgs, out: Out) -> Result<(), CliError> {
    let e = match a.shape {
        Shape::Const => Envelope::constant(a.area, a.duration, a.steps, a.phase),
        Shape::Gauss => Envelope::gaussian(a.area, a.duration / 6.0, a.steps, a.phase),
    }
    .map_err(input_err)?;
    let u = drive_unitary(&e).map_err(input_err)?;
    let sigma = integrate_sigma(&e).map_err(input_err)?;
    let target = conjugated_x(a.area, a.phase).map_err(input_err)?;
    let integrated = conjugated_x(sigma, a.phase).map_err(input_err)?;
    let mut s = String::from("matrix:\n");
    for row in u.0.iter() {
        let cells: Vec<String> = row
            .iter()
            .map(|c| format!("{},{}", fmt_sig(c.re), fmt_sig(c.im)))
            .collect();
        s += &format!("  {}\n", cells.join(" "));
    }
    s += &format!("sigma: {}\nphase: {}\n", fmt_sig(sigma), fmt_angle(a.phase));
    s += &format!("deviation: {}\n", fmt_sig(u.phase_distance(&target)));
    s += &format!(
        "deviation_integrated_sigma: {}\n",
        fmt_sig(u.max_abs_diff(&integrated))
    );
    out.write_all(s.as_bytes()).map_err(io_err)
}
