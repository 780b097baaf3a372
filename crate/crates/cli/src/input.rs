//! Polynomial and point parsing.
//!
//! Inline polynomials are comma-separated `re im` pairs in ascending powers:
//! `"-1 0, 0 0, 1 0"` is `z^2 - 1`. Coefficient files hold one `re im` pair
//! per line, ascending; lines starting with `#` and blank lines are skipped.

use num_complex::Complex64;
use polydescent::Polynomial;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum InputError {
    #[error("{context}: expected \"re im\", got {text:?}")]
    BadPair { context: String, text: String },

    #[error("{context}: {source}")]
    Polynomial {
        context: String,
        source: polydescent::Error,
    },
}

pub fn parse_pair(text: &str, context: &str) -> Result<Complex64, InputError> {
    let bad = || InputError::BadPair {
        context: context.to_string(),
        text: text.to_string(),
    };
    let mut parts = text.split_whitespace();
    let (Some(re), Some(im), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(bad());
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn build(coeffs: Vec<Complex64>, context: &str) -> Result<Polynomial, InputError> {
    Polynomial::new(coeffs).map_err(|source| InputError::Polynomial {
        context: context.to_string(),
        source,
    })
}

pub fn parse_inline(text: &str) -> Result<Polynomial, InputError> {
    let coeffs = text
        .split(',')
        .enumerate()
        .map(|(j, pair)| parse_pair(pair, &format!("--poly coefficient {j}")))
        .collect::<Result<Vec<_>, _>>()?;
    build(coeffs, "--poly")
}

pub fn parse_coefficient_file(text: &str, path: &str) -> Result<Polynomial, InputError> {
    let coeffs = text
        .lines()
        .enumerate()
        .filter(|(_, line)| {
            let line = line.trim();
            !line.is_empty() && !line.starts_with('#')
        })
        .map(|(n, line)| parse_pair(line, &format!("{path}:{}", n + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    build(coeffs, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_quadratic() {
        let p = parse_inline("-1 0, 0 0, 1 0").unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.coeffs()[0], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn file_with_comments() {
        let text = "# z^3 - 1\n-1 0\n\n0 0\n  # middle\n0 0\n1 0\n";
        let p = parse_coefficient_file(text, "cubic.txt").unwrap();
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn bad_pairs_are_reported_with_location() {
        let err = parse_inline("1 0, 2").unwrap_err();
        assert_eq!(
            err.to_string(),
            "--poly coefficient 1: expected \"re im\", got \" 2\""
        );
        let err = parse_coefficient_file("1 0\n1 x\n", "p.txt").unwrap_err();
        assert!(err.to_string().starts_with("p.txt:2:"));
        assert!(parse_pair("1 2 3", "seed").is_err());
        assert!(parse_pair("nan 0", "seed").is_err());
        assert!(parse_coefficient_file("# nothing\n", "empty.txt").is_err());
    }
}
