//! Complex-number text parsing and fixed-significance number formatting.

use holink_core::Complex64;

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("cannot parse {input:?} as a complex number (expected a+bi, a-bi, bi or a)")]
pub struct ParseComplexError {
    input: String,
}

/// Parse `a+bi`, `a-bi`, `bi` or `a`; whitespace is ignored and `j` is accepted
/// for `i`.
pub fn parse_complex(text: &str) -> Result<Complex64, ParseComplexError> {
    let err = || ParseComplexError {
        input: text.to_string(),
    };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err());
    }
    let number = |t: &str| -> Result<f64, ParseComplexError> {
        let v: f64 = t.parse().map_err(|_| err())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(err())
        }
    };
    let imag_coeff = |t: &str| -> Result<f64, ParseComplexError> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => number(t),
        }
    };
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(Complex64::new(number(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(number(&body[..k])?, imag_coeff(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag_coeff(body)?)),
    }
}

/// `x` rounded to `digits` significant digits, printed in the shortest form
/// that reproduces the rounded value.
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{:.*e}", digits - 1, x)
        .parse()
        .expect("formatted float parses");
    let exponent = rounded.abs().log10().floor() as i32;
    if (-5..15).contains(&exponent) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn format_complex(z: Complex64, digits: usize) -> String {
    let re = format_sig(z.re, digits);
    let im = format_sig(z.im.abs(), digits);
    let sign = if z.im.is_sign_negative() && z.im != 0.0 {
        '-'
    } else {
        '+'
    };
    format!("{re}{sign}{im}i")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_complex("0+1i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex(" 0.3 - 1.7 i ").unwrap(), c(0.3, -1.7));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1+i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex("-4").unwrap(), c(-4.0, 0.0));
        assert_eq!(parse_complex("1e-3+2E+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("-1e-2-3e-1j").unwrap(), c(-1e-2, -0.3));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["garbage", "", "1+2", "i+1", "1++2i", "nan", "inf+1i", "1+2ii"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.5000000000000001, 15), "0.5");
        assert_eq!(format_sig(-0.8825424006106063, 15), "-0.882542400610606");
        assert_eq!(format_sig(-0.8825424006106063, 12), "-0.882542400611");
        assert_eq!(format_sig(1.234e-17, 15), "1.234e-17");
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(f64::NEG_INFINITY, 12), "-inf");
        assert_eq!(format_complex(c(0.5, 0.0), 15), "0.5+0i");
        assert_eq!(format_complex(c(-1.0, -2.0), 15), "-1-2i");
    }
}
