//! Canonical text form: `1*z^3*zb^0 + 3*z^1*zb^2`, coefficients as `num/den`.

use std::fmt;

use super::{BiPoly, CycloPoly, Monomial, RatPoly};
use crate::error::{Error, Result};
use crate::scalars::{format_rational, parse_rational, Rational};
use num_traits::{One, Signed};

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let mag = format_rational(&c.abs());
            match (k, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            write!(f, "{mag}*z^{}*zb^{}", m.z, m.zb)?;
        }
        Ok(())
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms().map(|(m, c)| format!("({c})*z^{}*zb^{}", m.z, m.zb)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parses the canonical text form. Also accepts the looser forms `3*z*zb^2`,
/// `z^2`, `-zb` and `5/3`, so hand-written input works on the command line.
pub fn parse_rational_poly(input: &str) -> Result<RatPoly> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut negative = false;
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('*') {
            chunks.push((negative, std::mem::take(&mut cur)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.is_empty() {
            if ch == '-' {
                negative = !negative;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {input:?}")));
    }
    chunks.push((negative, cur));

    let mut poly = BiPoly::zero();
    for (neg, chunk) in chunks {
        let (m, c) = parse_term(&chunk)?;
        poly.add_term(m, if neg { -c } else { c });
    }
    Ok(poly)
}

fn parse_term(term: &str) -> Result<(Monomial, Rational)> {
    let mut coeff = Rational::one();
    let mut mono = Monomial::new(0, 0);
    for factor in term.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let e: u32 =
                    e.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (b, e)
            }
            None => (factor, 1),
        };
        match base {
            "z" => mono.z += exp,
            "zb" => mono.zb += exp,
            _ => {
                let v = parse_rational(base)
                    .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
                for _ in 0..exp {
                    coeff *= &v;
                }
            }
        }
    }
    Ok((mono, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn canonical_form() {
        let p = parse_rational_poly("z^3 + 3*z*zb^2").unwrap();
        assert_eq!(p.to_string(), "1*z^3*zb^0 + 3*z^1*zb^2");
        let q = parse_rational_poly("z^5 - 5*z^3*zb^2").unwrap();
        assert_eq!(q.to_string(), "1*z^5*zb^0 - 5*z^3*zb^2");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }

    #[test]
    fn parses_canonical_output() {
        let text = "1*z^5*zb^0 + 5/3*z^1*zb^4";
        let p = parse_rational_poly(text).unwrap();
        assert_eq!(p.coeff(1, 4), Some(&rat(5, 3)));
        assert_eq!(p.to_string(), text);
        assert_eq!(parse_rational_poly("-1/2*zb").unwrap().to_string(), "-1/2*z^0*zb^1");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational_poly("").is_err());
        assert!(parse_rational_poly("z^x").is_err());
        assert!(parse_rational_poly("3*w").is_err());
        assert!(parse_rational_poly("z +").is_err());
        assert!(parse_rational_poly("1/0").is_err());
    }
}
