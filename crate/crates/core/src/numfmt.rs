//! Deterministic decimal formatting for JSON and CSV output.

/// Formats a float with 17 significant digits in scientific notation.
///
/// 17 digits round-trip any f64 exactly, and the fixed layout makes repeated
/// runs byte-identical. The result is a valid JSON number.
pub fn fmt_f64(v: f64) -> String {
    format!("{:.16e}", v)
}
