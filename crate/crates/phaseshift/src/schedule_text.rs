//! Line-based pulse schedule format, in time order.
//!
//! ```text
//! PULSE q0 sigma=1.57079632679 phase=-0.785398163397
//! GATE2 CZ q0 q1
//! FRAME q1 z=0.3
//! # stats: pulses=... q0=... q1=... gate1=... gate2=... per_gate1=... vz=g/p ... absorbed=... elided=...
//! ```
//!
//! Phases and frame angles are reduced to `[−π, π)`. All angles are printed
//! with 12 significant digits. The `vz`, `three`, `four`, `two` and
//! `special` fields give compiled gates and pulses per scheme.

use std::fmt::Write as _;

use phaseshift_core::circuit::N_QUBITS;
use phaseshift_core::{Event, Pulse, PulseSchedule, SchemeTag};

use crate::number::{fmt_angle, fmt_sig, parse_finite};
use crate::ParseError;

/// The trailing `# stats:` line, without the newline.
pub fn stats_line(s: &PulseSchedule) -> String {
    let st = &s.stats;
    let gate2 = s
        .events
        .iter()
        .filter(|e| matches!(e, Event::Gate2 { .. }))
        .count();
    let mut line = format!("# stats: pulses={}", st.total_pulses());
    for (q, n) in st.pulses.iter().enumerate() {
        write!(line, " q{q}={n}").expect("writing to a String");
    }
    write!(
        line,
        " gate1={} gate2={gate2} per_gate1={}",
        st.gate1,
        fmt_sig(st.pulses_per_gate1())
    )
    .expect("writing to a String");
    for tag in SchemeTag::ALL {
        let g = st.scheme_gates.get(&tag).copied().unwrap_or(0);
        let p = st.scheme_pulses.get(&tag).copied().unwrap_or(0);
        write!(line, " {}={g}/{p}", tag.as_str()).expect("writing to a String");
    }
    write!(line, " absorbed={} elided={}", st.absorbed, st.elided).expect("writing to a String");
    line
}

pub fn format_event(e: &Event) -> String {
    match e {
        Event::Pulse { qubit, pulse } => format!(
            "PULSE q{qubit} sigma={} phase={}",
            fmt_sig(pulse.sigma),
            fmt_angle(pulse.phase)
        ),
        Event::Gate2 { q0, q1, name } => format!("GATE2 {name} q{q0} q{q1}"),
        Event::Frame { qubit, angle } => format!("FRAME q{qubit} z={}", fmt_angle(*angle)),
    }
}

pub fn format_schedule(s: &PulseSchedule) -> String {
    let mut out = String::new();
    for e in &s.events {
        out.push_str(&format_event(e));
        out.push('\n');
    }
    out.push_str(&stats_line(s));
    out.push('\n');
    out
}

fn qubit(tok: &str) -> Result<usize, String> {
    let idx = tok
        .strip_prefix('q')
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| format!("expected a qubit like q0, found `{tok}`"))?;
    if idx >= N_QUBITS {
        return Err(format!("qubit q{idx} out of range"));
    }
    Ok(idx)
}

fn keyed(tok: &str, key: &str) -> Result<f64, String> {
    let v = tok
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| format!("expected {key}=<value>, found `{tok}`"))?;
    parse_finite(v)
}

fn parse_event(toks: &[&str]) -> Result<Event, String> {
    match toks {
        ["PULSE", q, sigma, phase] => Ok(Event::Pulse {
            qubit: qubit(q)?,
            pulse: Pulse::new(keyed(sigma, "sigma")?, keyed(phase, "phase")?),
        }),
        ["GATE2", name, q0, q1] => Ok(Event::Gate2 {
            q0: qubit(q0)?,
            q1: qubit(q1)?,
            name: (*name).to_string(),
        }),
        ["FRAME", q, z] => Ok(Event::Frame {
            qubit: qubit(q)?,
            angle: keyed(z, "z")?,
        }),
        [head, ..] if ["PULSE", "GATE2", "FRAME"].contains(head) => {
            Err(format!("wrong number of fields for {head}"))
        }
        [head, ..] => Err(format!("unknown event `{head}`")),
        [] => unreachable!("blank lines are skipped"),
    }
}

/// Parse a schedule. Comments (including the stats line) are ignored, so
/// only per-qubit pulse counts are restored.
pub fn parse_schedule(text: &str) -> Result<PulseSchedule, ParseError> {
    let mut events = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let code = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = code.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        events.push(parse_event(&toks).map_err(|m| ParseError::new(i + 1, m))?);
    }
    Ok(PulseSchedule::from_events(events))
}
