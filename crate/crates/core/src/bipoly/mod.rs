//! Sparse bivariate polynomials in the complex coordinates `z` and `zb` (z-bar).
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! the canonical one used by every serializer: higher total degree first,
//! then higher power of `z` first.
//!
//! Reflection line `j` of a system with `M` mirrors is `{z = zeta_M^j zb}`.
//! The normal derivative across it is taken as `N_j = zeta^j d/dz - d/dzb`,
//! a nonzero multiple of the Euclidean unit-normal derivative, and the line
//! form is `l_j = z - zeta^j zb`. Both rescalings leave every vanishing and
//! divisibility statement unchanged while keeping arithmetic in Q(zeta_M).

mod text;

pub use text::parse_rational_poly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::{CycloElem, CyclotomicField, Rational, Scalar};
use num_traits::One;

/// Exponent pair of `z^z * zb^zb`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub z: u32,
    pub zb: u32,
}

impl Monomial {
    pub fn new(z: u32, zb: u32) -> Self {
        Monomial { z, zb }
    }

    pub fn degree(&self) -> u32 {
        self.z + self.zb
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then(other.z.cmp(&self.z))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Z,
    Zb,
}

/// Index of the reflection line `{z = zeta_M^j zb}`, reduced modulo `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineIndex(u32);

impl LineIndex {
    pub fn new(j: i64, mirrors: u32) -> Self {
        LineIndex(j.rem_euclid(mirrors as i64) as u32)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly<S: Scalar> {
    terms: BTreeMap<Monomial, S>,
}

pub type RatPoly = BiPoly<Rational>;
pub type CycloPoly = BiPoly<CycloElem>;

impl<S: Scalar> Default for BiPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> BiPoly<S> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(coeff: S, z: u32, zb: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(z, zb), coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `coeff * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, coeff: S) {
        if coeff.is_zero_elem() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                let sum = c.plus(&coeff);
                if sum.is_zero_elem() {
                    self.terms.remove(&m);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(m, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, z: u32, zb: u32) -> Option<&S> {
        self.terms.get(&Monomial::new(z, zb))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn sample(&self) -> Option<&S> {
        self.terms.values().next()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        match (self.sample(), other.sample()) {
            (Some(a), Some(b)) if !a.compatible(b) => Err(Error::ScalarKindMismatch(format!(
                "{a:?} and {b:?} live in different fields"
            ))),
            _ => Ok(()),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.negated());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(Monomial::new(ma.z + mb.z, ma.zb + mb.zb), a.times(b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero_elem() {
            return Self::zero();
        }
        self.map_coeffs(|v| v.times(c))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(S::negated)
    }

    /// `self^e`; `one` supplies the multiplicative identity of the scalar kind.
    pub fn pow(&self, e: u32, one: &S) -> Self {
        let mut acc = Self::monomial(one.one_like(), 0, 0);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn map_terms<T: Scalar>(&self, f: impl Fn(&Monomial, &S) -> (Monomial, T)) -> BiPoly<T> {
        BiPoly::from_terms(self.terms.iter().map(|(m, c)| f(m, c)))
    }

    pub fn partial(&self, var: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| match var {
            Var::Z if m.z > 0 => Some((Monomial::new(m.z - 1, m.zb), c.times_int(m.z as i64))),
            Var::Zb if m.zb > 0 => Some((Monomial::new(m.z, m.zb - 1), c.times_int(m.zb as i64))),
            _ => None,
        }))
    }

    /// Terms grouped by total degree, ascending.
    pub fn homogeneous_components(&self) -> Vec<(u32, Self)> {
        let mut by_degree: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree.entry(m.degree()).or_default().terms.insert(*m, c.clone());
        }
        by_degree.into_iter().collect()
    }

    /// Swaps `z <-> zb` and conjugates coefficients.
    pub fn bar_conjugate(&self) -> Self {
        self.map_terms(|m, c| (Monomial::new(m.zb, m.z), c.conj()))
    }

    /// Homogeneous coefficient vector `a_s` of `z^{D-s} zb^s`, `s = 0..=D`.
    pub fn coefficient_vector(&self, degree: u32) -> Vec<Option<S>> {
        (0..=degree).map(|s| self.coeff(degree - s, s).cloned()).collect()
    }
}

impl<'a, S: Scalar> std::ops::Add<&'a BiPoly<S>> for &'a BiPoly<S> {
    type Output = BiPoly<S>;
    fn add(self, rhs: &'a BiPoly<S>) -> BiPoly<S> {
        self.try_add(rhs).expect("scalar kinds must match")
    }
}

impl<'a, S: Scalar> std::ops::Sub<&'a BiPoly<S>> for &'a BiPoly<S> {
    type Output = BiPoly<S>;
    fn sub(self, rhs: &'a BiPoly<S>) -> BiPoly<S> {
        self.try_sub(rhs).expect("scalar kinds must match")
    }
}

impl<'a, S: Scalar> std::ops::Mul<&'a BiPoly<S>> for &'a BiPoly<S> {
    type Output = BiPoly<S>;
    fn mul(self, rhs: &'a BiPoly<S>) -> BiPoly<S> {
        self.try_mul(rhs).expect("scalar kinds must match")
    }
}

impl<S: Scalar> std::ops::Neg for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn neg(self) -> BiPoly<S> {
        BiPoly::neg(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<S: Scalar>(p: &BiPoly<S>, q: &BiPoly<S>, op: PolyOp) -> Result<BiPoly<S>> {
    match op {
        PolyOp::Add => p.try_add(q),
        PolyOp::Sub => p.try_sub(q),
        PolyOp::Mul => p.try_mul(q),
    }
}

impl RatPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn zb() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn int_monomial(c: i64, z: u32, zb: u32) -> Self {
        Self::monomial(Rational::from_integer(c.into()), z, zb)
    }

    pub fn powi(&self, e: u32) -> Self {
        self.pow(e, &Rational::one())
    }

    /// The same polynomial with coefficients in Q(zeta_M).
    pub fn promote(&self, field: &Arc<CyclotomicField>) -> CycloPoly {
        self.map_terms(|m, c| (*m, CycloElem::from_rational(field, c.clone())))
    }
}

impl CycloPoly {
    /// The rational polynomial, when every coefficient is rational.
    pub fn demote(&self) -> Option<RatPoly> {
        let mut out = RatPoly::zero();
        for (m, c) in self.terms() {
            out.add_term(*m, c.as_rational()?);
        }
        Some(out)
    }
}

/// Univariate polynomial in `zb` over Q(zeta_M): the restriction of a
/// bivariate polynomial to a reflection line.
#[derive(Debug, Clone, PartialEq)]
pub struct LinePoly {
    pub terms: BTreeMap<u32, CycloElem>,
}

impl LinePoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }
}

impl std::fmt::Display for LinePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().rev().map(|(e, c)| format!("({c})*zb^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The line form `z - zeta^j zb`.
pub fn line_form(line: LineIndex, field: &Arc<CyclotomicField>) -> CycloPoly {
    let mut p = CycloPoly::monomial(CycloElem::one(field), 1, 0);
    p.add_term(Monomial::new(0, 1), CycloElem::zeta_pow(field, line.get() as i64).negated());
    p
}

/// `(zeta^j d/dz - d/dzb) p`.
pub fn normal_derivative(p: &CycloPoly, line: LineIndex, field: &Arc<CyclotomicField>) -> CycloPoly {
    let zeta = CycloElem::zeta_pow(field, line.get() as i64);
    let mut out = p.partial(Var::Z).scale(&zeta);
    for (m, c) in p.partial(Var::Zb).terms() {
        out.add_term(*m, c.negated());
    }
    out
}

/// Substitutes `z := zeta^j zb`.
pub fn restrict_to_line(p: &CycloPoly, line: LineIndex, field: &Arc<CyclotomicField>) -> LinePoly {
    let mut terms: BTreeMap<u32, CycloElem> = BTreeMap::new();
    for (m, c) in p.terms() {
        let v = c.times(&CycloElem::zeta_pow(field, line.get() as i64 * m.z as i64));
        let e = m.degree();
        let sum = match terms.remove(&e) {
            Some(prev) => prev.plus(&v),
            None => v,
        };
        if !sum.is_zero_elem() {
            terms.insert(e, sum);
        }
    }
    LinePoly { terms }
}

/// Exact quotient `q` with `p = (z - zeta^j zb) q`, by synthetic division in `z`
/// over coefficients in `Q(zeta)[zb]`.
pub fn divide_by_linear(
    p: &CycloPoly,
    line: LineIndex,
    field: &Arc<CyclotomicField>,
) -> Result<CycloPoly> {
    if p.is_zero() {
        return Ok(CycloPoly::zero());
    }
    let c = CycloElem::zeta_pow(field, line.get() as i64);
    // slices[a] = coefficient of z^a, as a map zb-exponent -> scalar
    let top = p.terms().map(|(m, _)| m.z).max().unwrap_or(0) as usize;
    let mut slices: Vec<BTreeMap<u32, CycloElem>> = vec![BTreeMap::new(); top + 1];
    for (m, v) in p.terms() {
        slices[m.z as usize].insert(m.zb, v.clone());
    }
    let not_divisible = Error::NotDivisible { line: line.get() };
    if top == 0 {
        return Err(not_divisible);
    }
    // q_{a-1} = P_a + c zb q_a, remainder = P_0 + c zb q_0
    let shift = |q: &BTreeMap<u32, CycloElem>| -> BTreeMap<u32, CycloElem> {
        q.iter().map(|(e, v)| (e + 1, v.times(&c))).collect()
    };
    let add = |mut a: BTreeMap<u32, CycloElem>, b: BTreeMap<u32, CycloElem>| {
        for (e, v) in b {
            let sum = match a.remove(&e) {
                Some(prev) => prev.plus(&v),
                None => v,
            };
            if !sum.is_zero_elem() {
                a.insert(e, sum);
            }
        }
        a
    };
    let mut quotient = CycloPoly::zero();
    let mut q = slices[top].clone();
    for a in (1..top).rev() {
        for (e, v) in &q {
            quotient.add_term(Monomial::new(a as u32, *e), v.clone());
        }
        q = add(slices[a].clone(), shift(&q));
    }
    for (e, v) in &q {
        quotient.add_term(Monomial::new(0, *e), v.clone());
    }
    let remainder = add(slices[0].clone(), shift(&q));
    if remainder.is_empty() {
        Ok(quotient)
    } else {
        Err(not_divisible)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    fn p(text: &str) -> RatPoly {
        parse_rational_poly(text).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = &RatPoly::z() + &RatPoly::zb();
        let b = &RatPoly::z() - &RatPoly::zb();
        assert_eq!(&a * &b, p("z^2 - zb^2"));
        assert!(p("z^2 + zb^2").scale(&int(0)).is_zero());
        assert_eq!(p("z^2 - zb^2").powi(3), p("z^6 - 3*z^4*zb^2 + 3*z^2*zb^4 - zb^6"));
    }

    #[test]
    fn mismatched_fields_error() {
        let a = RatPoly::z().promote(&CyclotomicField::new(4));
        let b = RatPoly::z().promote(&CyclotomicField::new(6));
        assert!(matches!(poly_arith(&a, &b, PolyOp::Add), Err(Error::ScalarKindMismatch(_))));
        // the zero polynomial carries no field and combines with anything
        assert!(poly_arith(&a, &CycloPoly::zero(), PolyOp::Mul).unwrap().is_zero());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("z^3 + 3*z*zb^2").partial(Var::Z), p("3*z^2 + 3*zb^2"));
        assert!(p("z^7").partial(Var::Zb).is_zero());
        assert_eq!(p("z*zb").partial(Var::Z).partial(Var::Zb), RatPoly::one());
    }

    #[test]
    fn normal_derivative_examples() {
        let f = CyclotomicField::new(4);
        for j in 0..4 {
            let line = LineIndex::new(j, 4);
            let got = normal_derivative(&p("z*zb").promote(&f), line, &f);
            let mut want = CycloPoly::monomial(CycloElem::zeta_pow(&f, j), 0, 1);
            want.add_term(Monomial::new(1, 0), CycloElem::from_rational(&f, int(-1)));
            assert_eq!(got, want);
        }
        let got = normal_derivative(&p("z^3 + 3*z*zb^2").promote(&f), LineIndex::new(0, 4), &f);
        assert_eq!(got, p("3*z^2 - 6*z*zb + 3*zb^2").promote(&f));
        assert!(normal_derivative(&p("5").promote(&f), LineIndex::new(1, 4), &f).is_zero());
    }

    #[test]
    fn restriction_examples() {
        let f = CyclotomicField::new(6);
        for j in 0..6 {
            let line = LineIndex::new(j, 6);
            assert!(restrict_to_line(&line_form(line, &f), line, &f).is_zero());
            let r = restrict_to_line(&p("z*zb").promote(&f), line, &f);
            assert_eq!(r.terms.len(), 1);
            assert_eq!(r.terms[&2], CycloElem::zeta_pow(&f, j));
        }
        let f4 = CyclotomicField::new(4);
        let sq = p("3*z^2 - 6*z*zb + 3*zb^2").promote(&f4);
        assert!(restrict_to_line(&sq, LineIndex::new(0, 4), &f4).is_zero());
    }

    #[test]
    fn division_examples() {
        let f = CyclotomicField::new(4);
        let l0 = LineIndex::new(0, 4);
        assert_eq!(
            divide_by_linear(&p("z^2 - zb^2").promote(&f), l0, &f).unwrap(),
            p("z + zb").promote(&f)
        );
        assert_eq!(
            divide_by_linear(&p("3*z^2 - 6*z*zb + 3*zb^2").promote(&f), l0, &f).unwrap(),
            p("3*z - 3*zb").promote(&f)
        );
        assert_eq!(
            divide_by_linear(&p("z*zb").promote(&f), l0, &f),
            Err(Error::NotDivisible { line: 0 })
        );
        assert!(divide_by_linear(&p("7").promote(&f), l0, &f).is_err());
    }

    #[test]
    fn components() {
        let comps = p("1 + z*zb").homogeneous_components();
        assert_eq!(comps, vec![(0, p("1")), (2, p("z*zb"))]);
        let comps = p("z^2 + z + zb^2").homogeneous_components();
        assert_eq!(comps, vec![(1, p("z")), (2, p("z^2 + zb^2"))]);
        assert!(RatPoly::zero().homogeneous_components().is_empty());
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("z^3 + 3*z*zb^2").bar_conjugate(), p("zb^3 + 3*zb*z^2"));
        assert_eq!(p("z*zb").bar_conjugate(), p("z*zb"));
        assert_eq!(p("z^4 + zb^4").bar_conjugate(), p("z^4 + zb^4"));
        let f = CyclotomicField::new(6);
        let q = CycloPoly::monomial(CycloElem::zeta_pow(&f, 1), 2, 0);
        assert_eq!(q.bar_conjugate(), CycloPoly::monomial(CycloElem::zeta_pow(&f, 5), 0, 2));
    }

    #[test]
    fn canonical_order() {
        let q = p("1 + zb + z + z*zb^2 + z^3");
        let order: Vec<Monomial> = q.terms().map(|(m, _)| *m).collect();
        assert_eq!(
            order,
            vec![
                Monomial::new(3, 0),
                Monomial::new(1, 2),
                Monomial::new(1, 0),
                Monomial::new(0, 1),
                Monomial::new(0, 0)
            ]
        );
    }
}
