//! Poincare polynomials of the m-harmonic spaces of dihedral systems and the
//! Hilbert series of the quasi-invariant ring they induce.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::dihedral::DihedralSystem;
use crate::error::{Error, Result};

/// Finitely supported integer series, `degree -> coefficient`, zero entries dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SeriesPoly {
    pub coeffs: BTreeMap<u32, u64>,
}

impl SeriesPoly {
    pub fn add_term(&mut self, degree: u32, count: u64) {
        if count == 0 {
            return;
        }
        *self.coeffs.entry(degree).or_insert(0) += count;
    }

    pub fn coeff(&self, degree: u32) -> u64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// `P(1)`.
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let Some(top) = self.top_degree() else { return true };
        self.coeffs.iter().all(|(&d, &c)| self.coeff(top - d) == c)
    }

    /// Dense coefficient list for degrees `0..=d_max`.
    pub fn dense(&self, d_max: u32) -> Vec<u64> {
        (0..=d_max).map(|d| self.coeff(d)).collect()
    }

    /// `1 + t^2 + 2 t^3`
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&d, &c)| {
                let power = match d {
                    0 => String::new(),
                    1 => "t".into(),
                    _ => format!("t^{d}"),
                };
                match (c, d) {
                    (_, 0) => c.to_string(),
                    (1, _) => power,
                    _ => format!("{c} {power}"),
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// `1 + t^{2} + 2 t^{3}`
    pub fn to_latex(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&d, &c)| {
                let power = match d {
                    0 => String::new(),
                    1 => "t".into(),
                    _ => format!("t^{{{d}}}"),
                };
                match (c, d) {
                    (_, 0) => c.to_string(),
                    (1, _) => power,
                    _ => format!("{c} {power}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `1 + t^{2N(m+n+1)} + t^{(2m+1)N} + t^{(2n+1)N} + 2 sum_{i=1}^{N-1} t^{(m+n)N}(t^i + t^{2N-i})`
pub fn poincare_even(half: u32, m: u32, n: u32) -> SeriesPoly {
    let big_n = half;
    let mut p = SeriesPoly::default();
    p.add_term(0, 1);
    p.add_term((m + n + 1) * 2 * big_n, 1);
    p.add_term((2 * m + 1) * big_n, 1);
    p.add_term((2 * n + 1) * big_n, 1);
    for i in 1..big_n {
        p.add_term((m + n) * big_n + i, 2);
        p.add_term((m + n) * big_n + 2 * big_n - i, 2);
    }
    p
}

/// `1 + 2 sum_{i=1}^{N-1} t^{mN+i} + t^{(2m+1)N}` for odd `N` mirrors.
pub fn poincare_odd(mirrors: u32, m: u32) -> Result<SeriesPoly> {
    if mirrors.is_multiple_of(2) {
        return Err(Error::EvenMirrorCount(mirrors));
    }
    let mut p = SeriesPoly::default();
    p.add_term(0, 1);
    for i in 1..mirrors {
        p.add_term(m * mirrors + i, 2);
    }
    p.add_term((2 * m + 1) * mirrors, 1);
    Ok(p)
}

/// The Poincare polynomial for any system, dispatching on parity.
pub fn poincare(sys: &DihedralSystem) -> SeriesPoly {
    if sys.is_even() {
        poincare_even(sys.mirrors / 2, sys.mult_even, sys.mult_odd)
    } else {
        poincare_odd(sys.mirrors, sys.mult_even).expect("odd mirror count")
    }
}

/// Coefficients up to `d_max` of `P(t) / ((1 - t^2)(1 - t^M))`, by the
/// recurrences `h_d = g_d + h_{d-2}` and `g_d = p_d + g_{d-M}`.
pub fn hilbert_from_poincare(p: &SeriesPoly, mirrors: u32, d_max: u32) -> SeriesPoly {
    let len = d_max as usize + 1;
    let m = mirrors as usize;
    let mut g = vec![0u64; len];
    for d in 0..len {
        g[d] = p.coeff(d as u32) + if d >= m { g[d - m] } else { 0 };
    }
    let mut h = vec![0u64; len];
    for d in 0..len {
        h[d] = g[d] + if d >= 2 { h[d - 2] } else { 0 };
    }
    let mut out = SeriesPoly::default();
    for (d, c) in h.into_iter().enumerate() {
        out.add_term(d as u32, c);
    }
    out
}

/// Generator degrees with multiplicities, ascending.
pub fn degree_table(sys: &DihedralSystem) -> Result<Vec<(u32, u64)>> {
    let big_n = sys.half()?;
    let (m, n) = (sys.mult_even, sys.mult_odd);
    let mut table = SeriesPoly::default();
    table.add_term(0, 1);
    table.add_term((2 * n + 1) * big_n, 1);
    table.add_term((2 * m + 1) * big_n, 1);
    table.add_term((m + n + 1) * 2 * big_n, 1);
    for i in (1..2 * big_n).filter(|&i| i != big_n) {
        table.add_term((m + n) * big_n + i, 2);
    }
    Ok(table.coeffs.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(pairs: &[(u32, u64)]) -> SeriesPoly {
        let mut p = SeriesPoly::default();
        for &(d, c) in pairs {
            p.add_term(d, c);
        }
        p
    }

    #[test]
    fn even_examples() {
        assert_eq!(
            poincare_even(2, 1, 0),
            series(&[(0, 1), (2, 1), (3, 2), (5, 2), (6, 1), (8, 1)])
        );
        for (m, n) in [(0, 0), (1, 0), (2, 3), (4, 1)] {
            let want =
                series(&[(0, 1), (2 * n + 1, 1), (2 * m + 1, 1), (2 * (m + n + 1), 1)]);
            assert_eq!(poincare_even(1, m, n), want);
        }
        assert_eq!(poincare_even(2, 1, 1), series(&[(0, 1), (5, 2), (6, 2), (7, 2), (12, 1)]));
    }

    #[test]
    fn odd_examples() {
        assert_eq!(poincare_odd(3, 1).unwrap(), series(&[(0, 1), (4, 2), (5, 2), (9, 1)]));
        assert_eq!(poincare_odd(3, 0).unwrap(), series(&[(0, 1), (1, 2), (2, 2), (3, 1)]));
        for m in 0..4 {
            assert_eq!(poincare_odd(1, m).unwrap(), series(&[(0, 1), (2 * m + 1, 1)]));
        }
        assert_eq!(poincare_odd(4, 1), Err(Error::EvenMirrorCount(4)));
    }

    #[test]
    fn hilbert_examples() {
        let h = hilbert_from_poincare(&poincare_even(2, 1, 0), 4, 5);
        assert_eq!(h.dense(5), vec![1, 0, 2, 2, 3, 4]);
        for m in 1..=7u32 {
            let h = hilbert_from_poincare(&series(&[(0, 1)]), m, 30);
            for d in 0..=30u32 {
                let count = (0..=d / 2).filter(|a| (d - 2 * a) % m == 0).count() as u64;
                assert_eq!(h.coeff(d), count, "M = {m}, d = {d}");
            }
            assert_eq!(h.coeff(0), 1);
        }
    }

    #[test]
    fn degree_tables() {
        let sys = DihedralSystem::new(4, 1, 0).unwrap();
        assert_eq!(
            degree_table(&sys).unwrap(),
            vec![(0, 1), (2, 1), (3, 2), (5, 2), (6, 1), (8, 1)]
        );
        let sys = DihedralSystem::new(2, 2, 1).unwrap();
        assert_eq!(degree_table(&sys).unwrap(), vec![(0, 1), (3, 1), (5, 1), (8, 1)]);
        assert_eq!(degree_table(&DihedralSystem::odd(3, 1).unwrap()), Err(Error::OddMirrorCount(3)));
    }

    #[test]
    fn text_forms() {
        assert_eq!(poincare_even(2, 1, 0).to_text(), "1 + t^2 + 2 t^3 + 2 t^5 + t^6 + t^8");
        assert_eq!(series(&[(0, 1), (1, 2)]).to_latex(), "1 + 2 t");
        assert_eq!(series(&[(3, 1)]).to_latex(), "t^{3}");
    }
}
