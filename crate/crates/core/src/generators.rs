//! Free basis of the quasi-invariants over the invariants for even systems
//! `I2(2N)`, built two ways: by solving the coefficient system directly and
//! by expanding the determinant of the bordered matrix `A(i)`.
//!
//! `q1_i = sum_{s=0}^{m+n} a_s z^{(m+n-s)N+i} zb^{Ns}` with `a_0 = 1`. The
//! coefficients satisfy one row per condition, with base values
//! `c_s(t) = ((m+n-2s)N + i)^{2t-1}`:
//!
//! * `t <= min(m, n)`: a row on even `s` and a row on odd `s`;
//! * `min < t <= max`: a full row when the even-index orbit carries the
//!   larger multiplicity, a sign-alternating row `(-1)^s c_s(t)` when the
//!   odd-index orbit does.

use serde::Serialize;

use crate::bipoly::{Monomial, RatPoly};
use crate::dihedral::DihedralSystem;
use crate::error::{Error, Result};
use crate::poincare::degree_table;
use crate::scalars::{det_fraction_free, solve_exact, ExactMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Label {
    #[serde(rename = "q0")]
    Q0,
    #[serde(rename = "q1")]
    Q1,
    #[serde(rename = "q2")]
    Q2,
    #[serde(rename = "q3")]
    Q3,
    #[serde(rename = "q1_i")]
    Q1I,
    #[serde(rename = "q2_i")]
    Q2I,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Q0 => "q0",
            Label::Q1 => "q1",
            Label::Q2 => "q2",
            Label::Q3 => "q3",
            Label::Q1I => "q1_i",
            Label::Q2I => "q2_i",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        Some(match s {
            "q0" => Label::Q0,
            "q1" => Label::Q1,
            "q2" => Label::Q2,
            "q3" => Label::Q3,
            "q1_i" => Label::Q1I,
            "q2_i" => Label::Q2I,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Solver,
    Determinant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub label: Label,
    pub i: Option<u32>,
    pub degree: u32,
    pub poly: RatPoly,
}

impl Generator {
    pub fn name(&self) -> String {
        match self.i {
            Some(i) => format!("{}{}", &self.label.as_str()[..3], i),
            None => self.label.as_str().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub system: DihedralSystem,
    pub entries: Vec<Generator>,
    pub provenance: Provenance,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Degree multiset in the form of [`degree_table`].
    pub fn degree_counts(&self) -> Vec<(u32, u64)> {
        let mut counts = std::collections::BTreeMap::new();
        for g in &self.entries {
            *counts.entry(g.degree).or_insert(0u64) += 1;
        }
        counts.into_iter().collect()
    }

    pub fn find(&self, label: Label, i: Option<u32>) -> Option<&Generator> {
        self.entries.iter().find(|g| g.label == label && g.i == i)
    }
}

fn check_index(big_n: u32, i: u32) -> Result<()> {
    if i == 0 || i >= 2 * big_n || i == big_n {
        return Err(Error::InvalidIndex { i, n: big_n });
    }
    Ok(())
}

/// Valid `i` for `q1_i`, `q2_i`: `1 <= i <= 2N-1`, `i != N`.
pub fn valid_indices(sys: &DihedralSystem) -> Result<Vec<u32>> {
    let big_n = sys.half()?;
    Ok((1..2 * big_n).filter(|&i| i != big_n).collect())
}

/// `q0 = 1`, `q1 = (z^N + zb^N)^{2n+1}`, `q2 = (z^N - zb^N)^{2m+1}`, `q3 = q1 q2`.
pub fn invariant_chain_gens(sys: &DihedralSystem) -> Result<[RatPoly; 4]> {
    let big_n = sys.half()?;
    let zn = RatPoly::int_monomial(1, big_n, 0);
    let zbn = RatPoly::int_monomial(1, 0, big_n);
    let q1 = (&zn + &zbn).powi(2 * sys.mult_odd + 1);
    let q2 = (&zn - &zbn).powi(2 * sys.mult_even + 1);
    let q3 = &q1 * &q2;
    Ok([RatPoly::one(), q1, q2, q3])
}

/// The bordered matrix `A(i)`: a symbolic first row of column monomials over
/// `m + n` numeric condition rows.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixA {
    pub half: u32,
    pub i: u32,
    /// `z^{(m+n-s)N+i} zb^{Ns}` for `s = 0..=m+n`.
    pub columns: Vec<Monomial>,
    /// The `m + n` numeric rows, `(m+n) x (m+n+1)`.
    pub numeric: ExactMatrix,
}

impl MatrixA {
    pub fn size(&self) -> usize {
        self.columns.len()
    }

    /// `A_1`: first column and symbolic row deleted.
    pub fn a1(&self) -> ExactMatrix {
        self.numeric.minor(None, Some(0))
    }

    /// `A_k` (1-based `k`): column `k` and the symbolic row deleted.
    pub fn a_k(&self, k: usize) -> ExactMatrix {
        self.numeric.minor(None, Some(k - 1))
    }
}

pub fn build_matrix_a(sys: &DihedralSystem, i: u32) -> Result<MatrixA> {
    let big_n = sys.half()?;
    check_index(big_n, i)?;
    let (m, n) = (sys.mult_even, sys.mult_odd);
    let size = (m + n + 1) as usize;
    let base = |s: usize| (m + n) as i64 * big_n as i64 - 2 * s as i64 * big_n as i64 + i as i64;
    let c = |s: usize, t: u32| Rational::from_integer(BigInt::from(base(s)).pow(2 * t - 1));
    let row = |t: u32, keep: &dyn Fn(usize) -> Option<bool>| -> Vec<Rational> {
        (0..size)
            .map(|s| match keep(s) {
                None => Rational::zero(),
                Some(false) => c(s, t),
                Some(true) => -c(s, t),
            })
            .collect()
    };
    let (lo, hi) = (m.min(n), m.max(n));
    let mut rows = Vec::with_capacity(size - 1);
    for t in 1..=lo {
        rows.push(row(t, &|s| (s % 2 == 0).then_some(false)));
    }
    for t in 1..=lo {
        rows.push(row(t, &|s| (s % 2 == 1).then_some(false)));
    }
    for t in lo + 1..=hi {
        if m >= n {
            rows.push(row(t, &|_| Some(false)));
        } else {
            rows.push(row(t, &|s| Some(s % 2 == 1)));
        }
    }
    let columns = (0..size as u32)
        .map(|s| Monomial::new((m + n - s) * big_n + i, big_n * s))
        .collect();
    Ok(MatrixA { half: big_n, i, columns, numeric: ExactMatrix::from_rows(rows, size)? })
}

fn assemble(a: &MatrixA, coeffs: &[Rational]) -> RatPoly {
    RatPoly::from_terms(a.columns.iter().copied().zip(coeffs.iter().cloned()))
}

/// Coefficients `a_0 = 1, a_1, .., a_{m+n}` from the linear solve.
pub fn solve_qi_coefficients(sys: &DihedralSystem, i: u32) -> Result<Vec<Rational>> {
    let a = build_matrix_a(sys, i)?;
    let a1 = a.a1();
    let rhs: Vec<Rational> = (0..a.numeric.rows()).map(|r| -a.numeric.get(r, 0)).collect();
    let rest = solve_exact(&a1, &rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularSystem { i },
        other => other,
    })?;
    Ok(std::iter::once(Rational::one()).chain(rest).collect())
}

/// `q1_i` by solving the coefficient system with `a_0 = 1`.
pub fn solve_qi(sys: &DihedralSystem, i: u32) -> Result<RatPoly> {
    let a = build_matrix_a(sys, i)?;
    Ok(assemble(&a, &solve_qi_coefficients(sys, i)?))
}

/// `(-1)^{k+1} det A_k / det A_1` for `k = 1..=m+n+1`.
pub fn determinant_coefficients(sys: &DihedralSystem, i: u32) -> Result<Vec<Rational>> {
    let a = build_matrix_a(sys, i)?;
    let det_a1 = det_fraction_free(&a.a1())?;
    if det_a1.is_zero() {
        return Err(Error::SingularA1 { i });
    }
    (1..=a.size())
        .map(|k| {
            let minor = det_fraction_free(&a.a_k(k))?;
            let signed = if k % 2 == 0 { -minor } else { minor };
            Ok(signed / &det_a1)
        })
        .collect()
}

/// `q1_i = det A / det A_1`, expanded along the symbolic row.
pub fn generator_from_determinant(sys: &DihedralSystem, i: u32) -> Result<RatPoly> {
    let a = build_matrix_a(sys, i)?;
    Ok(assemble(&a, &determinant_coefficients(sys, i)?))
}

/// Ordered free basis: `q0..q3` and `q1_i`, `q2_i` for every valid `i`.
pub fn full_basis(sys: &DihedralSystem, provenance: Provenance) -> Result<GeneratorSet> {
    let chain = invariant_chain_gens(sys)?;
    let mut entries: Vec<Generator> = [Label::Q0, Label::Q1, Label::Q2, Label::Q3]
        .into_iter()
        .zip(chain)
        .map(|(label, poly)| Generator { label, i: None, degree: poly.degree().unwrap_or(0), poly })
        .collect();
    for i in valid_indices(sys)? {
        let q1 = match provenance {
            Provenance::Solver => solve_qi(sys, i)?,
            Provenance::Determinant => generator_from_determinant(sys, i)?,
        };
        let degree = q1.degree().unwrap_or(0);
        let q2 = q1.bar_conjugate();
        entries.push(Generator { label: Label::Q1I, i: Some(i), degree, poly: q1 });
        entries.push(Generator { label: Label::Q2I, i: Some(i), degree, poly: q2 });
    }
    entries.sort_by_key(|g| (g.degree, g.label, g.i));
    let set = GeneratorSet { system: *sys, entries, provenance };
    debug_assert_eq!(set.degree_counts(), degree_table(sys)?);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_rational_poly;
    use crate::scalars::{int, rat};

    fn sys(n: u32, m: u32, k: u32) -> DihedralSystem {
        DihedralSystem::even(n, m, k).unwrap()
    }

    fn p(s: &str) -> RatPoly {
        parse_rational_poly(s).unwrap()
    }

    #[test]
    fn chain_examples() {
        let [q0, q1, q2, q3] = invariant_chain_gens(&sys(2, 1, 0)).unwrap();
        assert_eq!(q0, RatPoly::one());
        assert_eq!(q1, p("z^2 + zb^2"));
        assert_eq!(q2, p("z^2 - zb^2").powi(3));
        assert_eq!(q3, &p("z^2 + zb^2") * &p("z^2 - zb^2").powi(3));
        let [_, q1, q2, _] = invariant_chain_gens(&sys(1, 2, 1)).unwrap();
        assert_eq!(q1, p("z + zb").powi(3));
        assert_eq!(q2, p("z - zb").powi(5));
        assert_eq!(invariant_chain_gens(&DihedralSystem::odd(3, 1).unwrap()), Err(Error::OddMirrorCount(3)));
    }

    #[test]
    fn solver_examples() {
        assert_eq!(solve_qi(&sys(2, 1, 0), 1).unwrap(), p("z^3 + 3*z*zb^2"));
        assert_eq!(solve_qi(&sys(2, 1, 0), 3).unwrap(), p("z^5 - 5*z^3*zb^2"));
        assert_eq!(solve_qi(&sys(2, 1, 1), 1).unwrap(), p("z^5 + 5/3*z*zb^4"));
        assert!(matches!(solve_qi(&sys(2, 1, 0), 2), Err(Error::InvalidIndex { .. })));
        assert!(matches!(solve_qi(&sys(2, 1, 0), 4), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn matrix_examples() {
        let a = build_matrix_a(&sys(2, 1, 0), 1).unwrap();
        assert_eq!(a.numeric, ExactMatrix::from_i64_rows(&[&[3, -1]]));
        assert_eq!(a.columns, vec![Monomial::new(3, 0), Monomial::new(1, 2)]);
        let a = build_matrix_a(&sys(2, 1, 1), 1).unwrap();
        assert_eq!(a.numeric, ExactMatrix::from_i64_rows(&[&[5, 0, -3], &[0, 1, 0]]));
        let a = build_matrix_a(&sys(3, 3, 2), 2).unwrap();
        for r in 0..2 {
            for s in 0..a.size() {
                assert_eq!(a.numeric.get(r, s).is_zero(), s % 2 == 1);
                assert_eq!(a.numeric.get(r + 2, s).is_zero(), s % 2 == 0);
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let s = sys(2, 1, 0);
        assert_eq!(det_fraction_free(&build_matrix_a(&s, 1).unwrap().a1()).unwrap(), int(-1));
        assert_eq!(generator_from_determinant(&s, 1).unwrap(), p("z^3 + 3*z*zb^2"));
        let s = sys(2, 1, 1);
        assert_eq!(det_fraction_free(&build_matrix_a(&s, 1).unwrap().a1()).unwrap(), int(3));
        assert_eq!(generator_from_determinant(&s, 1).unwrap(), p("z^5 + 5/3*z*zb^4"));
        assert_eq!(determinant_coefficients(&s, 1).unwrap(), vec![int(1), int(0), rat(5, 3)]);
    }

    #[test]
    fn basis_shapes() {
        let b = full_basis(&sys(1, 2, 3), Provenance::Solver).unwrap();
        assert_eq!(b.len(), 4);
        let b = full_basis(&sys(2, 1, 0), Provenance::Solver).unwrap();
        let degrees: Vec<u32> = b.entries.iter().map(|g| g.degree).collect();
        assert_eq!(degrees, vec![0, 2, 3, 3, 5, 5, 6, 8]);
        let names: Vec<String> = b.entries.iter().map(Generator::name).collect();
        assert_eq!(names, vec!["q0", "q1", "q1_1", "q2_1", "q1_3", "q2_3", "q2", "q3"]);
    }
}
