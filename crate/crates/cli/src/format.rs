//! Locale-free number formatting and CSV assembly.

/// `x` with 15 significant digits, positional for moderate exponents.
pub fn sig15(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.14e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

pub fn csv_line<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut line = fields
        .into_iter()
        .map(|f| f.as_ref().to_owned())
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(sig15(std::f64::consts::FRAC_PI_4), "0.785398163397448");
        assert_eq!(sig15(1.0), "1.00000000000000");
        assert_eq!(sig15(-2.5), "-2.50000000000000");
        assert_eq!(sig15(123.456), "123.456000000000");
        assert_eq!(sig15(0.0), "0");
        assert_eq!(sig15(1.5e-9), "1.50000000000000e-9");
        assert_eq!(sig15(f64::NAN), "NaN");
    }

    #[test]
    fn rounding_carry_keeps_width() {
        // 9.99...95 rounds up to 10, the exponent comes from the rounded form
        assert_eq!(sig15(9.999_999_999_999_999), "10.0000000000000");
    }

    #[test]
    fn csv_line_joins() {
        assert_eq!(csv_line(["a", "b"]), "a,b\n");
    }
}
