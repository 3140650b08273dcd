//! The composite verification report behind `quasinv verify`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bipoly::RatPoly;
use crate::calogero::{apply_l1, uniqueness_report, verify_l1_kernel, L1Result};
use crate::dihedral::DihedralSystem;
use crate::error::Result;
use crate::generators::{full_basis, valid_indices, Provenance};
use crate::modstruct::{freeness_check, ideal_checks};
use crate::poincare::{degree_table, hilbert_from_poincare, poincare};
use crate::quasi::{check_per_line, crosscheck_checkers, quasi_dimension};

use super::emit::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub system: DihedralSystem,
    pub seed: u64,
    pub max_degree: u32,
    pub checks: Vec<CheckResult>,
    pub status: Status,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Degree bound for the Hilbert, crosscheck and freeness checks.
    pub max_degree: Option<u32>,
    pub trials: usize,
    pub ideal_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: super::DEFAULT_SEED, max_degree: None, trials: 200, ideal_samples: 3 }
    }
}

/// Top degree of the Poincare polynomial plus `2M`.
pub fn default_max_degree(sys: &DihedralSystem) -> u32 {
    poincare(sys).top_degree().unwrap_or(0) + 2 * sys.mirrors
}

fn check(name: &str, ok: bool, details: Value) -> CheckResult {
    CheckResult { name: name.into(), status: ok.into(), details }
}

/// Runs every check that applies to `sys`. Generator-based checks need an
/// even mirror count and are left out for odd systems.
pub fn verify(sys: &DihedralSystem, opts: VerifyOptions) -> Result<VerifyReport> {
    let d_max = opts.max_degree.unwrap_or_else(|| default_max_degree(sys));
    let mut checks = Vec::new();

    let p = poincare(sys);
    let total_ok = p.total() == u64::from(sys.group_order());
    checks.push(check(
        "poincare",
        total_ok && p.is_palindromic(),
        json!({"polynomial": p.to_text(), "value_at_one": p.total(), "palindromic": p.is_palindromic()}),
    ));

    let hilbert = hilbert_from_poincare(&p, sys.mirrors, d_max);
    let mismatches: Vec<Value> = (0..=d_max)
        .filter_map(|d| {
            let oracle = quasi_dimension(sys, d) as u64;
            (oracle != hilbert.coeff(d)).then(|| json!({"degree": d, "hilbert": hilbert.coeff(d), "oracle": oracle}))
        })
        .collect();
    checks.push(check("hilbert_oracle", mismatches.is_empty(), json!({"mismatches": mismatches})));

    let cross = crosscheck_checkers(sys, opts.trials, d_max, opts.seed);
    checks.push(check("checker_crosscheck", cross.agree, serde_json::to_value(&cross).expect("serializable")));

    let one_ok = apply_l1(sys, &RatPoly::one()).is_zero();
    let total_mult: i64 = sys.lines().map(|l| i64::from(sys.line_multiplicity(l))).sum();
    let expected = RatPoly::int_monomial(4 * (1 - total_mult), 0, 0);
    let s1_image = apply_l1(sys, &RatPoly::int_monomial(1, 1, 1));
    let s1_ok = matches!(&s1_image, L1Result::Polynomial(v) if v.as_rational() == Some(&expected));
    checks.push(check(
        "l1_control",
        one_ok && s1_ok,
        json!({"l1_of_one_is_zero": one_ok, "l1_of_z_zb": expected.to_string(), "l1_of_z_zb_ok": s1_ok}),
    ));

    if sys.is_even() {
        let gens = full_basis(sys, Provenance::Solver)?;
        let det = full_basis(sys, Provenance::Determinant)?;
        let differing: Vec<String> = gens
            .entries
            .iter()
            .zip(&det.entries)
            .filter(|(a, b)| a != b)
            .map(|(a, _)| a.name())
            .collect();
        checks.push(check(
            "dual_path",
            differing.is_empty() && gens.len() == det.len(),
            json!({"differing": differing}),
        ));

        let expected = degree_table(sys)?;
        let counts = gens.degree_counts();
        checks.push(check(
            "counting",
            gens.len() == sys.group_order() as usize && counts == expected,
            json!({"generators": gens.len(), "group_order": sys.group_order(), "degrees": counts}),
        ));

        let failing: Vec<String> =
            gens.entries.iter().filter(|g| !check_per_line(sys, &g.poly).ok).map(|g| g.name()).collect();
        checks.push(check("basis_quasi_invariance", failing.is_empty(), json!({"failing": failing})));

        let kernel = verify_l1_kernel(sys, &gens);
        checks.push(check("l1_kernel", kernel.ok, serde_json::to_value(&kernel).expect("serializable")));

        let free = freeness_check(sys, &gens, d_max);
        checks.push(check("freeness", free.ok, serde_json::to_value(&free).expect("serializable")));

        let ideal = ideal_checks(sys, &gens, opts.seed, opts.ideal_samples)?;
        checks.push(check("not_in_ideal", ideal.ok, serde_json::to_value(&ideal).expect("serializable")));

        let reports = valid_indices(sys)?
            .into_iter()
            .map(|i| uniqueness_report(sys, i))
            .collect::<Result<Vec<_>>>()?;
        let unique = reports.iter().all(|r| r.unique && r.matches_solver);
        checks.push(check("uniqueness", unique, serde_json::to_value(&reports).expect("serializable")));
    }

    let status = checks.iter().all(|c| c.status == Status::Pass).into();
    Ok(VerifyReport { schema_version: SCHEMA_VERSION, system: *sys, seed: opts.seed, max_degree: d_max, checks, status })
}
