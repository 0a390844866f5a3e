//! Fixed-precision number formatting shared by every text export.

/// Significant digits used for all floating-point output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with 12 significant digits, `%g` style: fixed notation for
/// moderate exponents, scientific otherwise, trailing zeros trimmed.
///
/// The result always contains a `.`, an exponent, or is a non-finite token,
/// so it parses back as a float (including as a TOML float).
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= p as i32 {
        return format!("{}e{}", trim_fraction(mantissa), exp);
    }
    let decimals = (p as i32 - 1 - exp).max(0) as usize;
    trim_fraction(&format!("{:.*}", decimals, x))
}

fn trim_fraction(s: &str) -> String {
    if !s.contains('.') {
        return format!("{s}.0");
    }
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_common_values() {
        assert_eq!(sig(0.5), "0.5");
        assert_eq!(sig(1.0), "1.0");
        assert_eq!(sig(-0.25), "-0.25");
        assert_eq!(sig(2.0 / std::f64::consts::PI), "0.636619772368");
        assert_eq!(sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig(1e-7), "1.0e-7");
        assert_eq!(sig(1.5e13), "1.5e13");
        assert_eq!(sig(-2.5e-9), "-2.5e-9");
        assert_eq!(sig(123456789012.0), "123456789012.0");
        assert_eq!(sig(0.0), "0.0");
        assert_eq!(sig(f64::NAN), "nan");
    }

    #[test]
    fn output_parses_back_within_precision() {
        for &x in &[0.1, 1e-12, 1.23456789012345, -2.5e-3, 9.87654321e20] {
            let back: f64 = sig(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-11, "{x} -> {}", sig(x));
        }
    }
}
