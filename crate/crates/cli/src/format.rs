//! Fixed numeric text format: 12 significant digits, scientific notation.

/// `v` with 12 significant digits, e.g. `6.28704546566e-1`. Negative zero
/// prints as zero.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "NaN".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.11e}")
}

/// `v` rounded to exactly what [`fmt_num`] prints.
pub fn quantize(v: f64) -> f64 {
    if v.is_finite() {
        fmt_num(v).parse().unwrap_or(v)
    } else {
        v
    }
}
