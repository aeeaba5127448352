//! Number formatting shared by the text formats.

use phaseshift_core::normalize_angle;

/// Significant digits used for every printed angle.
pub const SIG_DIGITS: usize = 12;

/// `x` with [`SIG_DIGITS`] significant digits, trailing zeros removed.
/// Plain decimal for exponents in `[−5, 12)`, scientific otherwise.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

/// Like [`fmt_sig`], but values within `1e−12` of zero print as `0`.
pub fn fmt_clean(x: f64) -> String {
    fmt_sig(if x.abs() < 1e-12 { 0.0 } else { x })
}

/// An angle reduced to `[−π, π)` and printed with [`fmt_sig`].
pub fn fmt_angle(x: f64) -> String {
    fmt_sig(normalize_angle(x))
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Parse a finite decimal number.
pub fn parse_finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err(format!("non-finite number `{s}`")),
        Err(_) => Err(format!("expected a number, found `{s}`")),
    }
}
