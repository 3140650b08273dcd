//! Degree-by-degree freeness of the quasi-invariants over the invariant
//! subring `C[s1, s2]`, `s1 = z zb`, `s2 = z^M + zb^M`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bipoly::RatPoly;
use crate::dihedral::DihedralSystem;
use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::poincare::{hilbert_from_poincare, poincare};
use crate::quasi::{check_per_line, quasi_basis, quasi_dimension, CoeffVector};
use crate::scalars::{ExactMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub degree: u32,
    /// From the Hilbert series.
    pub expected_dim: u64,
    /// From the brute-force quasi-invariance system.
    pub oracle_dim: usize,
    /// Number of products `s1^a s2^b g` of degree `d`.
    pub products: usize,
    pub span_rank: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub max_degree: u32,
    pub degrees: Vec<DegreeCheck>,
    pub ok: bool,
}

fn coefficient_matrix(polys: &[RatPoly], degree: u32) -> ExactMatrix {
    let rows = polys.iter().map(|p| CoeffVector::from_poly(p, degree).entries).collect();
    ExactMatrix::from_rows(rows, degree as usize + 1).expect("rows have length D + 1")
}

/// Every product `s1^a s2^b g` of total degree `d`.
pub fn module_products(sys: &DihedralSystem, gens: &GeneratorSet, d: u32) -> Vec<RatPoly> {
    let (s1, s2) = sys.invariant_generators();
    let mut out = Vec::new();
    for g in &gens.entries {
        if g.degree > d {
            continue;
        }
        let rest = d - g.degree;
        for b in 0..=rest / sys.mirrors {
            let left = rest - b * sys.mirrors;
            if !left.is_multiple_of(2) {
                continue;
            }
            let factor = &s1.powi(left / 2) * &s2.powi(b);
            out.push(&factor * &g.poly);
        }
    }
    out
}

/// For each `d <= d_max`: the products of generators with invariant
/// monomials must be linearly independent and span the degree-`d`
/// quasi-invariants, whose dimension must also match the Hilbert series.
pub fn freeness_check(sys: &DihedralSystem, gens: &GeneratorSet, d_max: u32) -> FreenessReport {
    let hilbert = hilbert_from_poincare(&poincare(sys), sys.mirrors, d_max);
    let degrees: Vec<DegreeCheck> = (0..=d_max)
        .map(|d| {
            let products = module_products(sys, gens, d);
            let span_rank = coefficient_matrix(&products, d).rank();
            let expected_dim = hilbert.coeff(d);
            let oracle_dim = quasi_dimension(sys, d);
            let ok = expected_dim as usize == oracle_dim
                && oracle_dim == span_rank
                && span_rank == products.len();
            DegreeCheck { degree: d, expected_dim, oracle_dim, products: products.len(), span_rank, ok }
        })
        .collect();
    let ok = degrees.iter().all(|c| c.ok);
    FreenessReport { max_degree: d_max, degrees, ok }
}

/// Degree-`d` part of the ideal generated by positive-degree invariants:
/// a spanning set of `s1 Q_{d-2} + s2 Q_{d-M}`.
pub fn ideal_spanning_set(sys: &DihedralSystem, d: u32) -> Vec<RatPoly> {
    let (s1, s2) = sys.invariant_generators();
    let mut out = Vec::new();
    if d >= 2 {
        out.extend(quasi_basis(sys, d - 2).iter().map(|b| &s1 * b));
    }
    if d >= sys.mirrors {
        out.extend(quasi_basis(sys, d - sys.mirrors).iter().map(|b| &s2 * b));
    }
    out
}

/// Whether the span of `polys` (homogeneous quasi-invariants of one degree)
/// meets the ideal only in zero, i.e. `polys` stay independent modulo it.
pub fn independent_modulo_ideal(sys: &DihedralSystem, polys: &[RatPoly]) -> Result<bool> {
    let Some(first) = polys.iter().find(|p| !p.is_zero()) else {
        return Ok(polys.is_empty());
    };
    let d = first.degree().unwrap_or(0);
    for p in polys {
        if !p.is_homogeneous() || (!p.is_zero() && p.degree() != Some(d)) {
            return Err(Error::NotHomogeneous);
        }
        if !check_per_line(sys, p).ok {
            return Err(Error::NotQuasiInvariant);
        }
    }
    let ideal = ideal_spanning_set(sys, d);
    let base_rank = coefficient_matrix(&ideal, d).rank();
    let mut all = ideal;
    all.extend(polys.iter().cloned());
    Ok(coefficient_matrix(&all, d).rank() == base_rank + polys.len())
}

/// True iff the homogeneous quasi-invariant `candidate` is not in the ideal.
pub fn not_in_ideal_check(sys: &DihedralSystem, candidate: &RatPoly) -> Result<bool> {
    if candidate.is_zero() {
        return Ok(false);
    }
    independent_modulo_ideal(sys, std::slice::from_ref(candidate))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCheck {
    pub i: u32,
    pub members_independent: bool,
    /// Weights `(w1, w2)` of the random combinations `w1 q1_i + w2 q2_i` tried.
    pub combinations: Vec<(i64, i64)>,
    pub combinations_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdealReport {
    pub seed: u64,
    pub chain_ok: bool,
    pub pairs: Vec<PairCheck>,
    pub ok: bool,
}

/// `q1, q2, q3` are outside the ideal, and each pair `<q1_i, q2_i>` meets it
/// only in zero (checked as a whole and on seeded random combinations with
/// weights in `[-5, 5]`).
pub fn ideal_checks(sys: &DihedralSystem, gens: &GeneratorSet, seed: u64, samples: usize) -> Result<IdealReport> {
    use crate::generators::Label;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain_ok = true;
    for label in [Label::Q1, Label::Q2, Label::Q3] {
        if let Some(g) = gens.find(label, None) {
            chain_ok &= not_in_ideal_check(sys, &g.poly)?;
        }
    }
    let mut pairs = Vec::new();
    let indices: Vec<u32> = gens.entries.iter().filter_map(|g| g.i).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    for i in indices {
        let (Some(q1), Some(q2)) = (gens.find(Label::Q1I, Some(i)), gens.find(Label::Q2I, Some(i))) else {
            continue;
        };
        let members_independent = independent_modulo_ideal(sys, &[q1.poly.clone(), q2.poly.clone()])?;
        let mut combinations = Vec::new();
        let mut combinations_ok = true;
        while combinations.len() < samples {
            let w: (i64, i64) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5));
            if w == (0, 0) {
                continue;
            }
            let p = &q1.poly.scale(&Rational::from_integer(w.0.into()))
                + &q2.poly.scale(&Rational::from_integer(w.1.into()));
            combinations_ok &= not_in_ideal_check(sys, &p)?;
            combinations.push(w);
        }
        pairs.push(PairCheck { i, members_independent, combinations, combinations_ok });
    }
    let ok = chain_ok && pairs.iter().all(|p| p.members_independent && p.combinations_ok);
    Ok(IdealReport { seed, chain_ok, pairs, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_rational_poly;
    use crate::generators::{full_basis, Label, Provenance};

    fn worked() -> (DihedralSystem, GeneratorSet) {
        let sys = DihedralSystem::new(4, 1, 0).unwrap();
        let gens = full_basis(&sys, Provenance::Solver).unwrap();
        (sys, gens)
    }

    #[test]
    fn freeness_examples() {
        let (sys, gens) = worked();
        let report = freeness_check(&sys, &gens, 5);
        assert!(report.ok, "{report:?}");
        let d5 = &report.degrees[5];
        assert_eq!((d5.products, d5.span_rank, d5.oracle_dim), (4, 4, 4));
        let d2 = &report.degrees[2];
        assert_eq!((d2.products, d2.span_rank, d2.oracle_dim), (2, 2, 2));
        assert_eq!(report.degrees[0].products, 1);
    }

    #[test]
    fn ideal_examples() {
        let (sys, gens) = worked();
        let q2 = &gens.find(Label::Q2, None).unwrap().poly;
        assert!(not_in_ideal_check(&sys, q2).unwrap());
        let q3 = &gens.find(Label::Q3, None).unwrap().poly;
        assert!(not_in_ideal_check(&sys, q3).unwrap());
        let q1 = &gens.find(Label::Q1, None).unwrap().poly;
        let (s1, _) = sys.invariant_generators();
        assert!(!not_in_ideal_check(&sys, &(&s1 * q1)).unwrap());
        assert_eq!(
            not_in_ideal_check(&sys, &parse_rational_poly("z").unwrap()),
            Err(Error::NotQuasiInvariant)
        );
        let report = ideal_checks(&sys, &gens, 11, 4).unwrap();
        assert!(report.ok, "{report:?}");
    }
}
