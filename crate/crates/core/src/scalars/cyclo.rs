use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

use super::upoly::{cyclotomic_polynomial, euler_phi, q_inverse_mod, QPoly};
use super::{format_rational, Rational, Scalar};
use crate::error::{Error, Result};

/// The field Q(zeta_M), represented as Q[x]/(Phi_M).
///
/// Holds the reduction table `zeta^k mod Phi_M` for `0 <= k < M`, so any
/// polynomial in zeta is reduced by first folding exponents modulo `M`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    phi: usize,
    modulus: QPoly,
    powers: Vec<Vec<Rational>>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = euler_phi(order);
        let modulus: QPoly = cyclotomic_polynomial(order)
            .coeffs()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(order as usize);
        let mut cur = vec![Rational::zero(); phi];
        cur[0] = Rational::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x, then use x^phi = -sum_{i<phi} c_i x^i
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rational::zero();
            if !top.is_zero() {
                for (i, c) in modulus.iter().take(phi).enumerate() {
                    cur[i] -= &top * c;
                }
            }
        }
        Arc::new(CyclotomicField { order, phi, modulus, powers })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.phi
    }

    fn reduce(&self, raw: &[Rational]) -> Vec<Rational> {
        let m = self.order as usize;
        let mut folded = vec![Rational::zero(); m.min(raw.len())];
        for (k, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                folded[k % m] += c;
            }
        }
        let mut out = vec![Rational::zero(); self.phi];
        for (k, c) in folded.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < self.phi {
                out[k] += c;
            } else {
                for (o, p) in out.iter_mut().zip(&self.powers[k]) {
                    if !p.is_zero() {
                        *o += c * p;
                    }
                }
            }
        }
        out
    }
}

/// Element of Q(zeta_M) in canonical form: a vector of `phi(M)` rationals,
/// the residue of a polynomial in zeta modulo Phi_M.
#[derive(Clone)]
pub struct CycloElem {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElem {}

impl CycloElem {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CycloElem { field: field.clone(), coeffs: vec![Rational::zero(); field.phi] }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: Rational) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = r;
        e
    }

    /// `zeta^k`, with `k` reduced modulo the order.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let idx = k.rem_euclid(field.order as i64) as usize;
        CycloElem { field: field.clone(), coeffs: field.powers[idx].clone() }
    }

    /// Builds `sum_k raw[k] zeta^k` for an arbitrary-length coefficient list.
    pub fn from_power_coeffs(field: &Arc<CyclotomicField>, raw: &[Rational]) -> Self {
        CycloElem { field: field.clone(), coeffs: field.reduce(raw) }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.field.order == other.field.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.field.order, other.field.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = q_inverse_mod(&self.coeffs, &self.field.modulus).ok_or(Error::DivisionByZero)?;
        Ok(CycloElem::from_power_coeffs(&self.field, &inv))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycloElem::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate: `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        let m = self.field.order as usize;
        let mut raw = vec![Rational::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[(m - k) % m] += c;
        }
        CycloElem::from_power_coeffs(&self.field, &raw)
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycloElem { field: self.field.clone(), coeffs }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CycloElem { field: self.field.clone(), coeffs }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        CycloElem::from_power_coeffs(&self.field, &raw)
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem[{}]({})", self.field.order, self)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = format_rational(c);
            parts.push(match k {
                0 => c,
                1 => format!("{c}*zeta"),
                _ => format!("{c}*zeta^{k}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Scalar for CycloElem {
    fn is_zero_elem(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        CycloElem::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        CycloElem::one(&self.field)
    }
    fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "cyclotomic order mismatch");
        self.add_unchecked(other)
    }
    fn minus(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "cyclotomic order mismatch");
        self.sub_unchecked(other)
    }
    fn times(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "cyclotomic order mismatch");
        self.mul_unchecked(other)
    }
    fn negated(&self) -> Self {
        CycloElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn times_int(&self, k: i64) -> Self {
        let k = Rational::from_integer(k.into());
        CycloElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * &k).collect() }
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn compatible(&self, other: &Self) -> bool {
        self.order() == other.order()
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyclo_arith(a: &CycloElem, b: &CycloElem, op: ArithOp) -> Result<CycloElem> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// `zeta_M^k` in a freshly built field of order `M`.
pub fn root_of_unity(order: u32, k: i64) -> CycloElem {
    CycloElem::zeta_pow(&CyclotomicField::new(order), k)
}
