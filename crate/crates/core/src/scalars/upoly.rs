use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

use super::Rational;

/// Dense univariate polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        let mut p = IntPoly(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        p.trim();
        p
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        IntPoly(c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let mut p = IntPoly(out);
        p.trim();
        p
    }

    /// Exact division by a monic divisor. Returns `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        debug_assert!(divisor.0[dd].is_one());
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return if rem.iter().all(Zero::is_zero) { Some(IntPoly(Vec::new())) } else { None };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut q = IntPoly(quot);
        q.trim();
        Some(q)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_mag { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_mag { "*" } else { "" })?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The M-th cyclotomic polynomial, computed as `(x^M - 1) / prod_{d | M, d < M} Phi_d`.
pub fn cyclotomic_polynomial(m: u32) -> IntPoly {
    assert!(m >= 1, "cyclotomic order must be positive");
    let m = m as usize;
    let mut divisor = IntPoly::from_i64(&[1]);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        divisor = divisor.mul(&cyclotomic_polynomial(d as u32));
    }
    IntPoly::x_pow_minus_one(m)
        .div_exact_monic(&divisor)
        .expect("x^M - 1 is divisible by the product of lower cyclotomic polynomials")
}

pub(crate) fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

// Dense rational polynomials used for inversion in Q[x]/(Phi_M).

pub(crate) type QPoly = Vec<Rational>;

pub(crate) fn q_trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(k).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    q_trim(&mut out);
    out
}

pub(crate) fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(&mut out);
    out
}

/// Polynomial long division; `b` must be nonzero.
pub(crate) fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.clone();
    q_trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            let t = &c * d;
            rem[k + j] -= t;
        }
        quot[k] = c;
    }
    q_trim(&mut rem);
    q_trim(&mut quot);
    (quot, rem)
}

/// Inverse of `a` modulo `modulus` via the extended Euclidean algorithm.
/// Returns `None` when `a` is not invertible.
pub(crate) fn q_inverse_mod(a: &QPoly, modulus: &QPoly) -> Option<QPoly> {
    let (mut r0, mut r1) = (modulus.clone(), a.clone());
    q_trim(&mut r1);
    let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let t = q_sub(&t0, &q_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    // r0 is the gcd; it must be a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let inv_c = r0[0].recip();
    let mut out: QPoly = t0.into_iter().map(|c| c * &inv_c).collect();
    let (_, rem) = q_divrem(&out, modulus);
    out = rem;
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn product_over_divisors_is_x_m_minus_one() {
        for m in 1..=24u32 {
            let prod = (1..=m)
                .filter(|d| m % d == 0)
                .fold(IntPoly::from_i64(&[1]), |acc, d| acc.mul(&cyclotomic_polynomial(d)));
            assert_eq!(prod, IntPoly::x_pow_minus_one(m as usize), "M = {m}");
            assert_eq!(cyclotomic_polynomial(m).degree(), Some(euler_phi(m)));
        }
    }

    #[test]
    fn display() {
        assert_eq!(cyclotomic_polynomial(1).to_string(), "x - 1");
        assert_eq!(cyclotomic_polynomial(6).to_string(), "x^2 - x + 1");
    }
}
