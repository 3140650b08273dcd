//! Text, JSON and LaTeX renderings shared by the subcommands.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::bipoly::{Monomial, RatPoly};
use crate::dihedral::DihedralSystem;
use crate::error::{Error, Result};
use crate::generators::{Generator, GeneratorSet, Label, Provenance};
use crate::scalars::Rational;

/// Bumped whenever a JSON layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

fn latex_power(var: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{{{e}}}")),
    }
}

fn latex_magnitude(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// `z^{3} + 3 z \bar{z}^{2}`, terms in canonical order.
pub fn latex_poly(p: &RatPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let mag = c.abs();
        match (k, c.is_negative()) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        let vars: Vec<String> =
            [latex_power("z", m.z), latex_power("\\bar{z}", m.zb)].into_iter().flatten().collect();
        let mut factors = Vec::new();
        if !mag.is_one() || vars.is_empty() {
            factors.push(latex_magnitude(&mag));
        }
        factors.extend(vars);
        out.push_str(&factors.join(" "));
    }
    out
}

fn latex_name(g: &Generator) -> String {
    match (g.label, g.i) {
        (Label::Q1I, Some(i)) => format!("q^{{1}}_{{{i}}}"),
        (Label::Q2I, Some(i)) => format!("q^{{2}}_{{{i}}}"),
        (label, _) => format!("q^{{{}}}", &label.as_str()[1..]),
    }
}

/// One `align*` environment with a row per generator.
pub fn emit_latex(gens: &GeneratorSet) -> String {
    let mut out = String::from("\\begin{align*}\n");
    let rows: Vec<String> =
        gens.entries.iter().map(|g| format!("{} &= {}", latex_name(g), latex_poly(&g.poly))).collect();
    out.push_str(&rows.join(" \\\\\n"));
    out.push_str("\n\\end{align*}\n");
    out
}

/// `name (degree d): poly` per generator.
pub fn emit_text(gens: &GeneratorSet) -> String {
    let mut out = String::new();
    for g in &gens.entries {
        out.push_str(&format!("{} (degree {}): {}\n", g.name(), g.degree, g.poly));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub z: u32,
    pub zb: u32,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub label: String,
    pub i: Option<u32>,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSetJson {
    pub schema_version: u32,
    pub system: DihedralSystem,
    pub provenance: String,
    pub generators: Vec<GeneratorJson>,
}

pub fn terms_json(p: &RatPoly) -> Vec<TermJson> {
    p.terms()
        .map(|(m, c)| TermJson { z: m.z, zb: m.zb, num: c.numer().to_string(), den: c.denom().to_string() })
        .collect()
}

pub fn poly_from_terms(terms: &[TermJson]) -> Result<RatPoly> {
    let mut p = RatPoly::zero();
    for t in terms {
        let num: BigInt = t.num.parse().map_err(|_| Error::Parse(format!("bad numerator {:?}", t.num)))?;
        let den: BigInt = t.den.parse().map_err(|_| Error::Parse(format!("bad denominator {:?}", t.den)))?;
        if den.sign() == num_bigint::Sign::NoSign {
            return Err(Error::DivisionByZero);
        }
        p.add_term(Monomial::new(t.z, t.zb), Rational::new(num, den));
    }
    Ok(p)
}

impl GeneratorSetJson {
    pub fn from_set(gens: &GeneratorSet) -> Self {
        let provenance = match gens.provenance {
            Provenance::Solver => "solver",
            Provenance::Determinant => "determinant",
        };
        GeneratorSetJson {
            schema_version: SCHEMA_VERSION,
            system: gens.system,
            provenance: provenance.into(),
            generators: gens
                .entries
                .iter()
                .map(|g| GeneratorJson {
                    label: g.label.as_str().into(),
                    i: g.i,
                    degree: g.degree,
                    terms: terms_json(&g.poly),
                })
                .collect(),
        }
    }

    pub fn to_set(&self) -> Result<GeneratorSet> {
        let provenance = match self.provenance.as_str() {
            "solver" => Provenance::Solver,
            "determinant" => Provenance::Determinant,
            other => return Err(Error::Parse(format!("unknown provenance {other:?}"))),
        };
        let s = self.system;
        let system = DihedralSystem::new(s.mirrors, s.mult_even, s.mult_odd)?;
        let entries = self
            .generators
            .iter()
            .map(|g| {
                let label =
                    Label::parse(&g.label).ok_or_else(|| Error::Parse(format!("unknown label {:?}", g.label)))?;
                Ok(Generator { label, i: g.i, degree: g.degree, poly: poly_from_terms(&g.terms)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorSet { system, entries, provenance })
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_rational_poly;
    use crate::generators::full_basis;

    #[test]
    fn latex_examples() {
        let p = |s: &str| parse_rational_poly(s).unwrap();
        assert_eq!(latex_poly(&p("z^3 + 3*z*zb^2")), "z^{3} + 3 z \\bar{z}^{2}");
        assert_eq!(latex_poly(&RatPoly::zero()), "0");
        assert_eq!(latex_poly(&p("z^5 + 5/3*z*zb^4")), "z^{5} + \\tfrac{5}{3} z \\bar{z}^{4}");
        assert_eq!(latex_poly(&p("-z^5 + 5*z^3*zb^2 - 2")), "-z^{5} + 5 z^{3} \\bar{z}^{2} - 2");
        assert_eq!(latex_poly(&p("-1/2*zb")), "-\\tfrac{1}{2} \\bar{z}");
    }

    #[test]
    fn json_round_trip() {
        let sys = DihedralSystem::new(4, 1, 1).unwrap();
        let gens = full_basis(&sys, Provenance::Solver).unwrap();
        let text = to_json(&GeneratorSetJson::from_set(&gens));
        let parsed: GeneratorSetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(to_json(&parsed), text);
        assert_eq!(parsed.to_set().unwrap(), gens);
    }
}
