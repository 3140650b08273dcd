//! The dihedral reflection system I2(M) with orbit multiplicities.
//!
//! Line `j` (`0 <= j < M`) makes angle `pi j / M` with the real axis and is
//! the zero set of `z - zeta_M^j zb`. For even `M` the lines fall into two
//! conjugacy classes, even `j` and odd `j`, carrying multiplicities `m` and
//! `n`; for odd `M` all lines are conjugate and share one multiplicity.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bipoly::{CycloPoly, LineIndex, Monomial, RatPoly};
use crate::error::{Error, Result};
use crate::scalars::{CycloElem, CyclotomicField, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralSystem {
    pub mirrors: u32,
    pub mult_even: u32,
    pub mult_odd: u32,
}

impl DihedralSystem {
    pub fn new(mirrors: u32, mult_even: u32, mult_odd: u32) -> Result<Self> {
        if mirrors == 0 {
            return Err(Error::InvalidSystem("mirror count must be at least 1".into()));
        }
        if mirrors % 2 == 1 && mult_even != mult_odd {
            return Err(Error::InvalidSystem(format!(
                "odd mirror count {mirrors} admits a single multiplicity, got {mult_even} and {mult_odd}"
            )));
        }
        Ok(DihedralSystem { mirrors, mult_even, mult_odd })
    }

    /// I2(2N) with multiplicity `m` on even lines and `n` on odd lines.
    pub fn even(half: u32, m: u32, n: u32) -> Result<Self> {
        Self::new(2 * half, m, n)
    }

    /// I2(M) for odd `M` with constant multiplicity.
    pub fn odd(mirrors: u32, mult: u32) -> Result<Self> {
        if mirrors.is_multiple_of(2) {
            return Err(Error::EvenMirrorCount(mirrors));
        }
        Self::new(mirrors, mult, mult)
    }

    pub fn is_even(&self) -> bool {
        self.mirrors.is_multiple_of(2)
    }

    /// `N = M / 2` for even systems.
    pub fn half(&self) -> Result<u32> {
        if self.is_even() {
            Ok(self.mirrors / 2)
        } else {
            Err(Error::OddMirrorCount(self.mirrors))
        }
    }

    pub fn group_order(&self) -> u32 {
        2 * self.mirrors
    }

    pub fn field(&self) -> Arc<CyclotomicField> {
        CyclotomicField::new(self.mirrors)
    }

    pub fn lines(&self) -> impl Iterator<Item = LineIndex> + '_ {
        (0..self.mirrors).map(|j| LineIndex::new(j as i64, self.mirrors))
    }

    pub fn line_multiplicity(&self, line: LineIndex) -> u32 {
        if line.get().is_multiple_of(2) {
            self.mult_even
        } else {
            self.mult_odd
        }
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.mult_even.max(self.mult_odd)
    }

    /// Generators `z zb` and `z^M + zb^M` of the invariant ring.
    pub fn invariant_generators(&self) -> (RatPoly, RatPoly) {
        let sigma1 = RatPoly::int_monomial(1, 1, 1);
        let sigma2 = &RatPoly::int_monomial(1, self.mirrors, 0)
            + &RatPoly::int_monomial(1, 0, self.mirrors);
        (sigma1, sigma2)
    }

    /// All `2M` group elements.
    pub fn group_elements(&self) -> Vec<GroupElement> {
        [false, true]
            .into_iter()
            .flat_map(|reflection| {
                (0..self.mirrors).map(move |rotation| GroupElement { reflection, rotation })
            })
            .collect()
    }

    /// `s`, the reflection in line 0.
    pub fn reflection(&self) -> GroupElement {
        GroupElement { reflection: true, rotation: 0 }
    }

    /// `s tau`, the rotation by `2 pi / M`.
    pub fn rotation(&self) -> GroupElement {
        GroupElement { reflection: false, rotation: 1 % self.mirrors }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { reflection: false, rotation: 0 }
    }

    /// `g * h`, with `act(g * h, p) = act(g, act(h, p))`.
    pub fn compose(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let m = self.mirrors as i64;
        let kg = g.rotation as i64;
        let k = h.rotation as i64 + if h.reflection { -kg } else { kg };
        GroupElement { reflection: g.reflection ^ h.reflection, rotation: k.rem_euclid(m) as u32 }
    }

    /// Image of line `j` under the point map of `g`. Substitution reverses
    /// order, so the point map of `g * h` is that of `h` after that of `g`.
    pub fn act_on_line(&self, g: GroupElement, line: LineIndex) -> LineIndex {
        let (j, k) = (line.get() as i64, g.rotation as i64);
        let image = if g.reflection { 2 * k - j } else { j + 2 * k };
        LineIndex::new(image, self.mirrors)
    }
}

impl fmt::Display for DihedralSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_even() {
            write!(f, "I2({}) with m = {}, n = {}", self.mirrors, self.mult_even, self.mult_odd)
        } else {
            write!(f, "I2({}) with m = {}", self.mirrors, self.mult_even)
        }
    }
}

/// `rho^k` followed by `s` when `reflection` is set. As a point map it sends
/// `z` to `zeta^k z` (or `zeta^k zb`); on polynomials it acts by substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub reflection: bool,
    pub rotation: u32,
}

/// `p(zeta^k z, zeta^-k zb)`, with `z` and `zb` swapped afterwards for reflections.
pub fn group_action(
    sys: &DihedralSystem,
    g: GroupElement,
    p: &CycloPoly,
    field: &Arc<CyclotomicField>,
) -> CycloPoly {
    debug_assert_eq!(field.order(), sys.mirrors);
    let k = g.rotation as i64;
    p.map_terms(|m, c| {
        let phase = CycloElem::zeta_pow(field, k * (m.z as i64 - m.zb as i64));
        let mono = if g.reflection { Monomial::new(m.zb, m.z) } else { *m };
        (mono, c.times(&phase))
    })
}

/// [`group_action`] for a rational polynomial, promoted to Q(zeta_M).
pub fn group_action_rational(sys: &DihedralSystem, g: GroupElement, p: &RatPoly) -> CycloPoly {
    let field = sys.field();
    group_action(sys, g, &p.promote(&field), &field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_rational_poly;

    #[test]
    fn multiplicities() {
        let sys = DihedralSystem::new(4, 1, 0).unwrap();
        assert_eq!(sys.line_multiplicity(LineIndex::new(2, 4)), 1);
        assert_eq!(sys.line_multiplicity(LineIndex::new(3, 4)), 0);
        let odd = DihedralSystem::odd(3, 2).unwrap();
        assert!(odd.lines().all(|j| odd.line_multiplicity(j) == 2));
    }

    #[test]
    fn rejects_bad_systems() {
        assert!(DihedralSystem::new(0, 1, 1).is_err());
        assert!(DihedralSystem::new(3, 1, 0).is_err());
        assert_eq!(DihedralSystem::odd(4, 1), Err(Error::EvenMirrorCount(4)));
        assert_eq!(DihedralSystem::odd(3, 1).unwrap().half(), Err(Error::OddMirrorCount(3)));
    }

    #[test]
    fn invariants() {
        let sys = DihedralSystem::new(4, 1, 0).unwrap();
        let (s1, s2) = sys.invariant_generators();
        assert_eq!(s1, parse_rational_poly("z*zb").unwrap());
        assert_eq!(s2, parse_rational_poly("z^4 + zb^4").unwrap());
        let field = sys.field();
        for g in sys.group_elements() {
            assert_eq!(group_action(&sys, g, &s1.promote(&field), &field), s1.promote(&field));
            assert_eq!(group_action(&sys, g, &s2.promote(&field), &field), s2.promote(&field));
        }
    }

    #[test]
    fn action_examples() {
        let sys = DihedralSystem::new(4, 1, 0).unwrap();
        let field = sys.field();
        let anti = parse_rational_poly("z^4 - zb^4").unwrap();
        assert_eq!(group_action_rational(&sys, sys.reflection(), &anti), anti.neg().promote(&field));
        let chain = parse_rational_poly("z^2 + zb^2").unwrap();
        assert_eq!(group_action_rational(&sys, sys.rotation(), &chain), chain.neg().promote(&field));
        let q = parse_rational_poly("z^3 + 3*z*zb^2 - 2/7*zb").unwrap();
        assert_eq!(group_action_rational(&sys, sys.identity(), &q), q.promote(&field));
    }

    #[test]
    fn line_permutation_preserves_orbits() {
        for m in 1..=8 {
            let sys = DihedralSystem::new(m, 2, if m % 2 == 0 { 5 } else { 2 }).unwrap();
            for g in sys.group_elements() {
                for j in sys.lines() {
                    let image = sys.act_on_line(g, j);
                    assert_eq!(sys.line_multiplicity(image), sys.line_multiplicity(j));
                }
            }
        }
    }
}
