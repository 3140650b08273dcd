//! Quasi-invariance: two independent checkers and the graded-dimension oracle.
//!
//! A polynomial `p` is quasi-invariant when, for every line `j` with
//! multiplicity `m_j`, the odd normal derivatives of orders `1, 3, ..,
//! 2 m_j - 1` vanish on that line. [`check_per_line`] tests this literally,
//! in Q(zeta_M).
//!
//! [`grouped_conditions`] is the rational route. For a homogeneous
//! `p = sum_s a_s z^{D-s} zb^s`, the order-`(2t-1)` condition on line `j` is
//! equivalent (given the lower orders) to
//!
//! ```text
//! sum_s a_s (D - 2s)^{2t-1} zeta^{-s j} = 0.
//! ```
//!
//! Collecting `s` by residue turns the conditions over a whole orbit of
//! lines into a Vandermonde system, so they hold iff each residue-class sum
//! vanishes:
//!
//! * both orbits of an even system (`M = 2N`): classes `s mod 2N`;
//! * even-index lines only: zeta^{-2sk} depends on `s mod N`, plain sums;
//! * odd-index lines only: `j = 2k + 1` gives an extra `zeta^{-s}`, and
//!   `zeta^{-(p + qN)} = (-1)^q zeta^{-p}`, so the sums over `s = p + qN`
//!   alternate in sign with `q`;
//! * odd `M`: a single orbit, classes `s mod M`.
//!
//! For `t <= min(m, n)` both orbits are active; for `min < t <= max` only the
//! orbit with the larger multiplicity is.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::bipoly::{normal_derivative, restrict_to_line, CycloPoly, LinePoly, RatPoly};
use crate::dihedral::DihedralSystem;
use crate::scalars::{ExactMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub line: u32,
    /// Derivative order `2t - 1`.
    pub order: u32,
    /// Degree of the offending homogeneous component.
    pub degree: u32,
    #[serde(serialize_with = "serialize_display")]
    pub residual: LinePoly,
}

fn serialize_display<S: Serializer>(v: &LinePoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasiReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks every line and every odd order directly with normal derivatives.
pub fn check_per_line(sys: &DihedralSystem, p: &RatPoly) -> QuasiReport {
    let field = sys.field();
    check_per_line_cyclo(sys, &p.promote(&field))
}

pub fn check_per_line_cyclo(sys: &DihedralSystem, p: &CycloPoly) -> QuasiReport {
    let field = sys.field();
    let mut violations = Vec::new();
    for (degree, comp) in p.homogeneous_components() {
        for line in sys.lines() {
            let mult = sys.line_multiplicity(line);
            if mult == 0 {
                continue;
            }
            let mut deriv = normal_derivative(&comp, line, &field);
            for t in 1..=mult {
                if t > 1 {
                    deriv = normal_derivative(&normal_derivative(&deriv, line, &field), line, &field);
                }
                if deriv.is_zero() {
                    break;
                }
                let residual = restrict_to_line(&deriv, line, &field);
                if !residual.is_zero() {
                    violations.push(Violation { line: line.get(), order: 2 * t - 1, degree, residual });
                }
            }
        }
    }
    QuasiReport { ok: violations.is_empty(), violations }
}

/// Coefficients `a_0..a_D` of `sum_s a_s z^{D-s} zb^s`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    pub degree: u32,
    pub entries: Vec<Rational>,
}

impl CoeffVector {
    pub fn new(degree: u32, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), degree as usize + 1, "coefficient vector length must be D + 1");
        CoeffVector { degree, entries }
    }

    pub fn zero(degree: u32) -> Self {
        CoeffVector { degree, entries: vec![Rational::zero(); degree as usize + 1] }
    }

    /// The degree-`D` component of `p`.
    pub fn from_poly(p: &RatPoly, degree: u32) -> Self {
        let entries = p
            .coefficient_vector(degree)
            .into_iter()
            .map(|c| c.unwrap_or_else(Rational::zero))
            .collect();
        CoeffVector { degree, entries }
    }

    pub fn to_poly(&self) -> RatPoly {
        let d = self.degree;
        RatPoly::from_terms(self.entries.iter().enumerate().map(|(s, c)| {
            (crate::bipoly::Monomial::new(d - s as u32, s as u32), c.clone())
        }))
    }
}

/// Which lines a grouped residual speaks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    /// Both orbits of an even system, classes mod 2N.
    Combined,
    /// Even-index lines, classes mod N.
    EvenOrbit,
    /// Odd-index lines, sign-alternating classes mod N.
    OddOrbit,
    /// The single orbit of an odd system, classes mod M.
    Single,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupedResidual {
    pub family: Family,
    pub t: u32,
    pub class: u32,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionRow {
    pub family: Family,
    pub t: u32,
    pub class: u32,
    pub coeffs: Vec<Rational>,
}

fn odd_power(base: i64, t: u32) -> Rational {
    Rational::from_integer(BigInt::from(base).pow(2 * t - 1))
}

fn class_row(degree: u32, t: u32, modulus: u32, class: u32, alternating: bool) -> Vec<Rational> {
    (0..=degree)
        .map(|s| {
            if s % modulus != class {
                return Rational::zero();
            }
            let v = odd_power(degree as i64 - 2 * s as i64, t);
            if alternating && ((s - class) / modulus) % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// The grouped linear conditions on `a_0..a_D` for homogeneous degree `D`.
pub fn grouped_condition_rows(sys: &DihedralSystem, degree: u32) -> Vec<ConditionRow> {
    let mut rows = Vec::new();
    let mut push = |family, t, modulus, alternating| {
        for class in 0..modulus {
            rows.push(ConditionRow {
                family,
                t,
                class,
                coeffs: class_row(degree, t, modulus, class, alternating),
            });
        }
    };
    if sys.is_even() {
        let n_half = sys.mirrors / 2;
        let (m, n) = (sys.mult_even, sys.mult_odd);
        for t in 1..=m.min(n) {
            push(Family::Combined, t, sys.mirrors, false);
        }
        for t in m.min(n) + 1..=m.max(n) {
            if m > n {
                push(Family::EvenOrbit, t, n_half, false);
            } else {
                push(Family::OddOrbit, t, n_half, true);
            }
        }
    } else {
        for t in 1..=sys.mult_even {
            push(Family::Single, t, sys.mirrors, false);
        }
    }
    rows
}

pub fn grouped_condition_matrix(sys: &DihedralSystem, degree: u32) -> ExactMatrix {
    let rows = grouped_condition_rows(sys, degree).into_iter().map(|r| r.coeffs).collect();
    ExactMatrix::from_rows(rows, degree as usize + 1).expect("rows have length D + 1")
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Residuals of every grouped condition; all zero iff the polynomial is quasi-invariant.
pub fn grouped_conditions(sys: &DihedralSystem, c: &CoeffVector) -> Vec<GroupedResidual> {
    grouped_condition_rows(sys, c.degree)
        .into_iter()
        .map(|row| GroupedResidual {
            family: row.family,
            t: row.t,
            class: row.class,
            value: dot(&row.coeffs, &c.entries),
        })
        .collect()
}

/// Grouped verdict for an arbitrary rational polynomial, component by component.
pub fn check_grouped(sys: &DihedralSystem, p: &RatPoly) -> bool {
    p.homogeneous_components().iter().all(|(d, comp)| {
        grouped_conditions(sys, &CoeffVector::from_poly(comp, *d)).iter().all(|r| r.value.is_zero())
    })
}

/// Dimension of the homogeneous quasi-invariants of degree `d`.
pub fn quasi_dimension(sys: &DihedralSystem, d: u32) -> usize {
    (d as usize + 1) - grouped_condition_matrix(sys, d).rank()
}

/// A basis of the homogeneous quasi-invariants of degree `d`.
pub fn quasi_basis(sys: &DihedralSystem, d: u32) -> Vec<RatPoly> {
    grouped_condition_matrix(sys, d)
        .nullspace()
        .into_iter()
        .map(|v| CoeffVector::new(d, v).to_poly())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Orbit {
    Even,
    Odd,
}

fn orbit_of(sys: &DihedralSystem, line: u32) -> Orbit {
    if sys.is_even() && line % 2 == 1 {
        Orbit::Odd
    } else {
        Orbit::Even
    }
}

/// Orbits whose order-`(2t-1)` grouped condition fails, taken per orbit
/// (plain sums for even lines, alternating sums for odd lines).
fn grouped_failing_orbits(sys: &DihedralSystem, c: &CoeffVector, t: u32) -> BTreeSet<Orbit> {
    let mut out = BTreeSet::new();
    let fails = |modulus, alternating| {
        (0..modulus).any(|class| {
            !dot(&class_row(c.degree, t, modulus, class, alternating), &c.entries).is_zero()
        })
    };
    if sys.is_even() {
        let n_half = sys.mirrors / 2;
        if t <= sys.mult_even && fails(n_half, false) {
            out.insert(Orbit::Even);
        }
        if t <= sys.mult_odd && fails(n_half, true) {
            out.insert(Orbit::Odd);
        }
    } else if t <= sys.mult_even && fails(sys.mirrors, false) {
        out.insert(Orbit::Even);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub trials: usize,
    pub passing: usize,
    pub failing: usize,
    pub disagreements: Vec<String>,
    pub agree: bool,
}

/// Compares the two checkers on one homogeneous polynomial. Returns a
/// description of the disagreement, if any.
pub fn compare_checkers(sys: &DihedralSystem, p: &RatPoly) -> Option<String> {
    let degree = p.degree().unwrap_or(0);
    let per_line = check_per_line(sys, p);
    let cv = CoeffVector::from_poly(p, degree);
    let residuals = grouped_conditions(sys, &cv);
    let grouped_ok = residuals.iter().all(|r| r.value.is_zero());
    if per_line.ok != grouped_ok {
        return Some(format!(
            "verdicts differ on {p}: per-line {}, grouped {}",
            per_line.ok, grouped_ok
        ));
    }
    if grouped_ok {
        return None;
    }
    let per_line_t = per_line.violations.iter().map(|v| v.order.div_ceil(2)).min();
    let grouped_t = residuals.iter().filter(|r| !r.value.is_zero()).map(|r| r.t).min();
    if per_line_t != grouped_t {
        return Some(format!(
            "first failing order differs on {p}: per-line t = {per_line_t:?}, grouped t = {grouped_t:?}"
        ));
    }
    let t = grouped_t.unwrap_or(0);
    let per_line_orbits: BTreeSet<Orbit> = per_line
        .violations
        .iter()
        .filter(|v| v.order == 2 * t - 1)
        .map(|v| orbit_of(sys, v.line))
        .collect();
    let grouped_orbits = grouped_failing_orbits(sys, &cv, t);
    if per_line_orbits != grouped_orbits {
        return Some(format!(
            "implicated orbits differ on {p} at t = {t}: per-line {per_line_orbits:?}, grouped {grouped_orbits:?}"
        ));
    }
    None
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=3);
    Rational::new(num.into(), den.into())
}

/// A random homogeneous polynomial of degree `d` with small rational coefficients.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, d: u32) -> RatPoly {
    CoeffVector::new(d, (0..=d).map(|_| random_rational(rng)).collect()).to_poly()
}

/// A random element of the degree-`d` quasi-invariants (possibly zero when that space is).
pub fn random_quasi_invariant(rng: &mut ChaCha8Rng, sys: &DihedralSystem, d: u32) -> RatPoly {
    quasi_basis(sys, d).iter().fold(RatPoly::zero(), |acc, b| {
        &acc + &b.scale(&random_rational(rng))
    })
}

/// Runs both checkers on `trials` seeded random homogeneous polynomials of
/// degree at most `max_degree`: a third drawn from the quasi-invariants, a
/// third of those perturbed by one random term, and a third fully random.
pub fn crosscheck_checkers(
    sys: &DihedralSystem,
    trials: usize,
    max_degree: u32,
    seed: u64,
) -> CrosscheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report =
        CrosscheckReport { trials, passing: 0, failing: 0, disagreements: Vec::new(), agree: true };
    for k in 0..trials {
        let d = rng.gen_range(0..=max_degree);
        let p = match k % 3 {
            0 => random_quasi_invariant(&mut rng, sys, d),
            1 => {
                let s = rng.gen_range(0..=d);
                let mut bump = RatPoly::monomial(Rational::one(), d - s, s);
                bump = bump.scale(&Rational::from_integer(rng.gen_range(1..=4i64).into()));
                &random_quasi_invariant(&mut rng, sys, d) + &bump
            }
            _ => random_homogeneous(&mut rng, d),
        };
        if check_grouped(sys, &p) {
            report.passing += 1;
        } else {
            report.failing += 1;
        }
        if let Some(why) = compare_checkers(sys, &p) {
            report.disagreements.push(why);
        }
    }
    report.agree = report.disagreements.is_empty();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_rational_poly;
    use crate::scalars::int;

    fn sys410() -> DihedralSystem {
        DihedralSystem::new(4, 1, 0).unwrap()
    }

    fn p(s: &str) -> RatPoly {
        parse_rational_poly(s).unwrap()
    }

    #[test]
    fn per_line_examples() {
        assert!(check_per_line(&sys410(), &p("z^3 + 3*z*zb^2")).ok);
        let (s1, s2) = sys410().invariant_generators();
        assert!(check_per_line(&sys410(), &(&s1 * &s2)).ok);
        let report = check_per_line(&sys410(), &p("z"));
        assert!(!report.ok);
        let lines: Vec<(u32, u32)> = report.violations.iter().map(|v| (v.line, v.order)).collect();
        assert_eq!(lines, vec![(0, 1), (2, 1)]);
    }

    #[test]
    fn grouped_examples() {
        let c = CoeffVector::new(3, vec![int(1), int(0), int(3), int(0)]);
        assert!(grouped_conditions(&sys410(), &c).iter().all(|r| r.value.is_zero()));

        let mut e = vec![int(0); 6];
        e[0] = int(1);
        let res = grouped_conditions(&sys410(), &CoeffVector::new(5, e));
        let bad: Vec<&GroupedResidual> = res.iter().filter(|r| !r.value.is_zero()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].class, bad[0].value.clone()), (0, int(5)));

        assert!(grouped_conditions(&sys410(), &CoeffVector::zero(7)).iter().all(|r| r.value.is_zero()));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(quasi_dimension(&sys410(), 2), 2);
        assert_eq!(quasi_dimension(&sys410(), 5), 4);
        for m in 1..=6 {
            let sys = DihedralSystem::new(m, 2, if m % 2 == 0 { 1 } else { 2 }).unwrap();
            assert_eq!(quasi_dimension(&sys, 0), 1);
        }
    }

    #[test]
    fn odd_orbit_alternating_rows() {
        // n > m: the extra conditions sit on the odd-index lines
        let sys = DihedralSystem::new(4, 0, 2).unwrap();
        for d in 0..=10 {
            for b in quasi_basis(&sys, d) {
                assert!(check_per_line(&sys, &b).ok, "{b} should be quasi-invariant");
            }
        }
    }

    #[test]
    fn crosscheck_small() {
        let r = crosscheck_checkers(&sys410(), 60, 9, 7);
        assert!(r.agree, "{:?}", r.disagreements);
        assert!(r.passing > 0 && r.failing > 0);
        assert!(compare_checkers(&sys410(), &RatPoly::zero()).is_none());
    }
}
