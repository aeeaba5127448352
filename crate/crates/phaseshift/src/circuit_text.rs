//! Line-based circuit format.
//!
//! ```text
//! qubits 2
//! U q0 <alpha> <beta> <gamma>
//! RZ q1 <theta>
//! X90 q0
//! X180 q1
//! G2 CZ q0 q1
//! G2 CPHASE(<phi>) q0 q1
//! G2 FSIM(<theta>,<phi>) q1 q0
//! G2 CUSTOM q0 q1 <re,im> ... (16 entries, row-major)
//! M q0
//! ```
//!
//! Angles are in radians. `#` starts a comment.

use std::fmt::Write as _;

use phaseshift_core::circuit::N_QUBITS;
use phaseshift_core::{
    params_from_unitary, x_rot, z_rot, CircuitIR, GateParams, Mat4, Op, TwoQubitGate, C64,
};

use crate::number::parse_finite;
use crate::ParseError;

/// Split a line into tokens, keeping `NAME(a, b)` together.
fn tokens(line: &str) -> Vec<String> {
    let code = line.split('#').next().unwrap_or("");
    let mut out: Vec<String> = Vec::new();
    let mut open = false;
    for t in code.split_whitespace() {
        if open {
            let last = out.last_mut().expect("open group has a head");
            last.push_str(t);
        } else {
            out.push(t.to_string());
        }
        let last = out.last().expect("just pushed");
        open = last.matches('(').count() > last.matches(')').count();
    }
    out
}

fn qubit(tok: &str) -> Result<usize, String> {
    let idx = tok
        .strip_prefix('q')
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| format!("expected a qubit like q0, found `{tok}`"))?;
    if idx >= N_QUBITS {
        return Err(format!(
            "qubit q{idx} out of range (circuits have {N_QUBITS} qubits)"
        ));
    }
    Ok(idx)
}

fn arity(op: &str, args: &[String], n: usize) -> Result<(), String> {
    if args.len() != n {
        return Err(format!("{op} takes {n} arguments, found {}", args.len()));
    }
    Ok(())
}

/// Resolve `CZ`, `CPHASE(0.3)`, `FSIM(0.1,0.2)` and the other named gates.
pub fn parse_gate_spec(spec: &str) -> Result<TwoQubitGate, String> {
    let (name, params) = match spec.split_once('(') {
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| format!("unbalanced parentheses in `{spec}`"))?;
            let params = inner
                .split(',')
                .map(|p| parse_finite(p.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            (name, params)
        }
        None => (spec, Vec::new()),
    };
    if name.eq_ignore_ascii_case("CUSTOM") {
        return Err("CUSTOM needs a matrix".to_string());
    }
    TwoQubitGate::from_name(name, &params).map_err(|e| e.to_string())
}

/// 16 complex entries from `re,im` tokens or 32 separate numbers.
pub fn parse_matrix_entries(args: &[String]) -> Result<Mat4, String> {
    let nums = args
        .iter()
        .flat_map(|a| a.split(','))
        .filter(|s| !s.is_empty())
        .map(parse_finite)
        .collect::<Result<Vec<_>, _>>()?;
    if nums.len() != 32 {
        return Err(format!(
            "a 4x4 matrix needs 16 re,im pairs (32 numbers), found {} numbers",
            nums.len()
        ));
    }
    let entries: Vec<C64> = nums.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
    Ok(Mat4::from_row_major(&entries).expect("16 entries"))
}

fn parse_line(toks: &[String]) -> Result<Option<Op>, String> {
    let (head, args) = toks.split_first().expect("non-empty line");
    let op = match head.to_ascii_uppercase().as_str() {
        "U" => {
            arity("U", args, 4)?;
            let a = [&args[1], &args[2], &args[3]]
                .map(|s| parse_finite(s))
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?;
            let p = GateParams {
                alpha: a[0],
                beta: a[1],
                gamma: a[2],
            };
            Op::Gate1 {
                qubit: qubit(&args[0])?,
                matrix: p.unitary(),
            }
        }
        "RZ" => {
            arity("RZ", args, 2)?;
            Op::Gate1 {
                qubit: qubit(&args[0])?,
                matrix: z_rot(parse_finite(&args[1])?).map_err(|e| e.to_string())?,
            }
        }
        "X90" | "X180" => {
            arity(head, args, 1)?;
            let angle = if head.eq_ignore_ascii_case("X90") {
                std::f64::consts::FRAC_PI_2
            } else {
                std::f64::consts::PI
            };
            Op::Gate1 {
                qubit: qubit(&args[0])?,
                matrix: x_rot(angle).map_err(|e| e.to_string())?,
            }
        }
        "G2" => {
            if args.len() < 3 {
                return Err("G2 takes a gate name and two qubits".to_string());
            }
            let (q0, q1) = (qubit(&args[1])?, qubit(&args[2])?);
            let gate = if args[0].eq_ignore_ascii_case("CUSTOM") {
                TwoQubitGate::Custom(parse_matrix_entries(&args[3..])?)
            } else {
                arity("G2", args, 3)?;
                parse_gate_spec(&args[0])?
            };
            Op::Gate2 { q0, q1, gate }
        }
        "M" => {
            arity("M", args, 1)?;
            Op::Measure {
                qubit: qubit(&args[0])?,
            }
        }
        "QUBITS" => {
            arity("qubits", args, 1)?;
            if args[0] != N_QUBITS.to_string() {
                return Err(format!("only {N_QUBITS}-qubit circuits are supported"));
            }
            return Ok(None);
        }
        other => return Err(format!("unknown operation `{other}`")),
    };
    Ok(Some(op))
}

/// Parse a circuit. Errors carry the 1-based line number.
pub fn parse_circuit(text: &str) -> Result<CircuitIR, ParseError> {
    let mut ir = CircuitIR::new();
    let mut seen_op = false;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let is_header = toks[0].eq_ignore_ascii_case("qubits");
        if is_header && seen_op {
            return Err(ParseError::new(
                n,
                "`qubits` must come before any operation",
            ));
        }
        if let Some(op) = parse_line(&toks).map_err(|m| ParseError::new(n, m))? {
            seen_op = true;
            ir.push(op).map_err(|e| ParseError::new(n, e.to_string()))?;
        }
    }
    Ok(ir)
}

/// Write `ir` in the circuit format. Single-qubit gates are written as
/// `U` lines, exact up to global phase.
pub fn format_circuit(ir: &CircuitIR) -> String {
    let mut s = format!("qubits {N_QUBITS}\n");
    for op in ir.ops() {
        match op {
            Op::Gate1 { qubit, matrix } => {
                let (p, _) = params_from_unitary(matrix).expect("circuit gates are unitary");
                writeln!(s, "U q{qubit} {:?} {:?} {:?}", p.alpha, p.beta, p.gamma)
            }
            Op::Gate2 {
                q0,
                q1,
                gate: TwoQubitGate::Custom(m),
            } => {
                let entries: Vec<String> = m
                    .entries()
                    .map(|c| format!("{:?},{:?}", c.re, c.im))
                    .collect();
                writeln!(s, "G2 CUSTOM q{q0} q{q1} {}", entries.join(" "))
            }
            Op::Gate2 { q0, q1, gate } => writeln!(s, "G2 {gate} q{q0} q{q1}"),
            Op::Measure { qubit } => writeln!(s, "M q{qubit}"),
        }
        .expect("writing to a String");
    }
    s
}
