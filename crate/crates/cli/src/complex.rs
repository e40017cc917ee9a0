//! Complex numbers written as `a+bi`, `a-bi`, `a`, `bi`.

use num_complex::Complex64 as C;

use crate::error::{usage, CliError};

pub fn parse_complex(text: &str) -> Result<C, CliError> {
    let bad = || usage(format!("cannot read '{text}' as a complex number (expected a+bi)"));
    if text.is_empty() || text.chars().any(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = text.strip_suffix('i') else {
        return match text.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(C::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // the sign that separates the parts: not leading, not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (body[..j].parse::<f64>().map_err(|_| bad())?, &body[j..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(C::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_complex("2").unwrap(), C::new(2.0, 0.0));
        assert_eq!(parse_complex("-1.5").unwrap(), C::new(-1.5, 0.0));
        assert_eq!(parse_complex("0.5+14.134725141734695i").unwrap(), C::new(0.5, 14.134725141734695));
        assert_eq!(parse_complex("0.5-3i").unwrap(), C::new(0.5, -3.0));
        assert_eq!(parse_complex("3i").unwrap(), C::new(0.0, 3.0));
        assert_eq!(parse_complex("-i").unwrap(), C::new(0.0, -1.0));
        assert_eq!(parse_complex("1+i").unwrap(), C::new(1.0, 1.0));
        assert_eq!(parse_complex("1e-3-2.5e+1i").unwrap(), C::new(1e-3, -25.0));
        assert_eq!(parse_complex("-2e-1i").unwrap(), C::new(0.0, -0.2));
    }

    #[test]
    fn rejects() {
        for t in ["", "1 + 2i", "a+bi", "1+2j", "1+2ii", "--1", "nan", "inf+1i"] {
            assert!(parse_complex(t).is_err(), "{t}");
        }
    }
}
