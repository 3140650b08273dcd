//! The Calogero-Moser operator attached to `z zb`:
//!
//! ```text
//! L1 p = 4 d_z d_zb p + sum_j 4 m_j (zeta^j d_z - d_zb) p / (z - zeta^j zb)
//! ```
//!
//! Each mirror term is the usual `-4 m (e^{i phi} d_z - e^{-i phi} d_zb) /
//! (-e^{-i phi} z + e^{i phi} zb)` with numerator and denominator multiplied
//! by `e^{i phi}`, which keeps every coefficient in Q(zeta_M).

use serde::Serialize;

use crate::bipoly::{divide_by_linear, normal_derivative, CycloPoly, Monomial, RatPoly, Var};
use crate::dihedral::DihedralSystem;
use crate::error::Result;
use crate::generators::{solve_qi, GeneratorSet};
use crate::quasi::quasi_basis;
use crate::scalars::{CycloElem, ExactMatrix, Rational, Scalar};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum L1Value {
    Rational(RatPoly),
    Cyclotomic(CycloPoly),
}

impl L1Value {
    pub fn is_zero(&self) -> bool {
        match self {
            L1Value::Rational(p) => p.is_zero(),
            L1Value::Cyclotomic(p) => p.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&RatPoly> {
        match self {
            L1Value::Rational(p) => Some(p),
            L1Value::Cyclotomic(_) => None,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            L1Value::Rational(p) => p.to_string(),
            L1Value::Cyclotomic(p) => p.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum L1Result {
    Polynomial(L1Value),
    /// Lines whose numerator did not vanish on the line.
    NonPolynomial(Vec<u32>),
}

impl L1Result {
    pub fn is_zero(&self) -> bool {
        matches!(self, L1Result::Polynomial(v) if v.is_zero())
    }

    pub fn polynomial(&self) -> Option<&L1Value> {
        match self {
            L1Result::Polynomial(v) => Some(v),
            L1Result::NonPolynomial(_) => None,
        }
    }
}

/// `L1 p` over Q(zeta_M), or the failing lines when some quotient is not polynomial.
pub fn apply_l1_cyclo(sys: &DihedralSystem, p: &CycloPoly) -> std::result::Result<CycloPoly, Vec<u32>> {
    let field = sys.field();
    let mut out = p.partial(Var::Z).partial(Var::Zb).map_coeffs(|c| c.times_int(4));
    let mut failing = Vec::new();
    for line in sys.lines() {
        let mult = sys.line_multiplicity(line);
        if mult == 0 {
            continue;
        }
        let num = normal_derivative(p, line, &field);
        match divide_by_linear(&num, line, &field) {
            Ok(q) => {
                let w = CycloElem::from_rational(&field, Rational::from_integer((4 * mult).into()));
                out = &out + &q.scale(&w);
            }
            Err(_) => failing.push(line.get()),
        }
    }
    if failing.is_empty() {
        Ok(out)
    } else {
        Err(failing)
    }
}

pub fn apply_l1(sys: &DihedralSystem, p: &RatPoly) -> L1Result {
    let field = sys.field();
    match apply_l1_cyclo(sys, &p.promote(&field)) {
        Ok(v) => L1Result::Polynomial(match v.demote() {
            Some(r) => L1Value::Rational(r),
            None => L1Value::Cyclotomic(v),
        }),
        Err(lines) => L1Result::NonPolynomial(lines),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelEntry {
    pub generator: String,
    pub zero: bool,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelReport {
    pub entries: Vec<KernelEntry>,
    pub ok: bool,
}

/// Applies `L1` to every generator; passes iff every image is zero.
pub fn verify_l1_kernel(sys: &DihedralSystem, gens: &GeneratorSet) -> KernelReport {
    let entries: Vec<KernelEntry> = gens
        .entries
        .iter()
        .map(|g| {
            let r = apply_l1(sys, &g.poly);
            let image = match &r {
                L1Result::Polynomial(v) => v.to_text(),
                L1Result::NonPolynomial(lines) => format!("non-polynomial on lines {lines:?}"),
            };
            KernelEntry { generator: g.name(), zero: r.is_zero(), image }
        })
        .collect();
    let ok = entries.iter().all(|e| e.zero);
    KernelReport { entries, ok }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub i: u32,
    pub degree: u32,
    /// Dimension of the degree-`D` quasi-invariants.
    pub quasi_dim: usize,
    /// Dimension of the part of it annihilated by `L1`.
    pub kernel_dim: usize,
    pub unique: bool,
    pub matches_solver: bool,
}

/// Decides whether `q1_i` is the only homogeneous quasi-invariant of degree
/// `D = (m+n)N + i` that `L1` annihilates with coefficient 1 on `z^D` and 0
/// on `zb^D`, and whether it equals [`solve_qi`].
pub fn uniqueness_report(sys: &DihedralSystem, i: u32) -> Result<UniquenessReport> {
    let expected = solve_qi(sys, i)?;
    let degree = expected.degree().unwrap_or(0);
    let basis = quasi_basis(sys, degree);
    let r = basis.len();
    let mut report = UniquenessReport {
        i,
        degree,
        quasi_dim: r,
        kernel_dim: 0,
        unique: false,
        matches_solver: false,
    };

    // Columns: coordinates of the candidate in the quasi-invariant basis.
    let mut images = Vec::with_capacity(r);
    for b in &basis {
        match apply_l1(sys, b).polynomial().and_then(L1Value::as_rational) {
            Some(img) => images.push(img.clone()),
            None => return Ok(report),
        }
    }
    let img_degree = degree.saturating_sub(2);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    if degree >= 2 {
        for s in 0..=img_degree {
            let mono = Monomial::new(img_degree - s, s);
            rows.push(
                images.iter().map(|p| p.coeff(mono.z, mono.zb).cloned().unwrap_or_else(Rational::zero)).collect(),
            );
        }
    }
    let homogeneous = ExactMatrix::from_rows(rows.clone(), r)?;
    report.kernel_dim = r - homogeneous.rank();

    let lead = |b: &RatPoly, z: u32, zb: u32| b.coeff(z, zb).cloned().unwrap_or_else(Rational::zero);
    let mut aug_rows: Vec<Vec<Rational>> = rows.into_iter().map(|mut row| {
        row.push(Rational::zero());
        row
    }).collect();
    let mut top: Vec<Rational> = basis.iter().map(|b| lead(b, degree, 0)).collect();
    top.push(Rational::one());
    let mut bottom: Vec<Rational> = basis.iter().map(|b| lead(b, 0, degree)).collect();
    bottom.push(Rational::zero());
    aug_rows.push(top);
    aug_rows.push(bottom);
    let aug = ExactMatrix::from_rows(aug_rows, r + 1)?;
    let coeff = aug.minor(None, Some(r));
    let rank = coeff.rank();
    if rank != r || aug.rank() != rank {
        return Ok(report);
    }
    report.unique = true;

    let (reduced, pivots) = aug.rref();
    let mut weights = vec![Rational::zero(); r];
    for (row, &col) in pivots.iter().enumerate() {
        weights[col] = reduced.get(row, r).clone();
    }
    let candidate = basis
        .iter()
        .zip(&weights)
        .fold(RatPoly::zero(), |acc, (b, w)| &acc + &b.scale(w));
    report.matches_solver = candidate == expected;
    Ok(report)
}

pub fn uniqueness_check(sys: &DihedralSystem, i: u32) -> Result<bool> {
    let r = uniqueness_report(sys, i)?;
    Ok(r.unique && r.matches_solver)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_rational_poly;
    use crate::generators::{full_basis, Provenance};
    use crate::scalars::int;

    fn p(s: &str) -> RatPoly {
        parse_rational_poly(s).unwrap()
    }

    #[test]
    fn control_values() {
        for (half, m, n) in [(1, 0, 0), (2, 1, 0), (2, 1, 1), (3, 2, 1), (3, 0, 2)] {
            let sys = DihedralSystem::even(half, m, n).unwrap();
            assert!(apply_l1(&sys, &RatPoly::one()).is_zero());
            let want = RatPoly::constant(int(4 * (1 - half as i64 * (m + n) as i64)));
            let got = apply_l1(&sys, &p("z*zb"));
            if want.is_zero() {
                assert!(got.is_zero());
            } else {
                assert_eq!(got, L1Result::Polynomial(L1Value::Rational(want)));
            }
        }
    }

    #[test]
    fn worked_generator() {
        let sys = DihedralSystem::new(4, 1, 0).unwrap();
        assert!(apply_l1(&sys, &p("z^3 + 3*z*zb^2")).is_zero());
        assert!(matches!(apply_l1(&sys, &p("z")), L1Result::NonPolynomial(_)));
    }

    #[test]
    fn kernel_on_small_basis() {
        let sys = DihedralSystem::new(4, 1, 0).unwrap();
        let gens = full_basis(&sys, Provenance::Solver).unwrap();
        let report = verify_l1_kernel(&sys, &gens);
        assert!(report.ok, "{report:?}");
        assert_eq!(report.entries.len(), 8);
    }

    #[test]
    fn uniqueness_examples() {
        let sys = DihedralSystem::new(4, 1, 0).unwrap();
        assert!(uniqueness_check(&sys, 1).unwrap());
        assert!(uniqueness_check(&sys, 3).unwrap());
        let r = uniqueness_report(&sys, 3).unwrap();
        assert_eq!((r.quasi_dim, r.kernel_dim), (4, 2));
        assert!(uniqueness_check(&DihedralSystem::new(4, 1, 1).unwrap(), 1).unwrap());
    }
}
