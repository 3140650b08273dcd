//! Acceptance run: one PASS/FAIL line per criterion, exact equality only.
//! Exits nonzero if any criterion fails.

use std::time::Instant;

use quasinv::bipoly::{parse_rational_poly, RatPoly};
use quasinv::calogero::{apply_l1, uniqueness_check, verify_l1_kernel, L1Result};
use quasinv::cli::default_max_degree;
use quasinv::generators::{
    build_matrix_a, determinant_coefficients, full_basis, generator_from_determinant, solve_qi,
    solve_qi_coefficients, valid_indices, Label, Provenance,
};
use quasinv::modstruct::{freeness_check, ideal_checks};
use quasinv::poincare::{degree_table, hilbert_from_poincare, poincare, poincare_even, poincare_odd, SeriesPoly};
use quasinv::quasi::{check_per_line, crosscheck_checkers, quasi_dimension};
use quasinv::scalars::int;
use quasinv::DihedralSystem;

const SEED: u64 = 20240917;

type Criterion = (&'static str, fn() -> Vec<String>);

/// `N in {1,2,3}`, `m, n in {0,1,2}`.
fn grid() -> Vec<DihedralSystem> {
    grid_up_to(3, 2)
}

fn grid_up_to(max_half: u32, max_mult: u32) -> Vec<DihedralSystem> {
    let mut out = Vec::new();
    for half in 1..=max_half {
        for m in 0..=max_mult {
            for n in 0..=max_mult {
                out.push(DihedralSystem::even(half, m, n).unwrap());
            }
        }
    }
    out
}

/// Runs `f` on every system in parallel and collects failure messages in grid order.
fn each_system(systems: &[DihedralSystem], f: impl Fn(&DihedralSystem) -> Vec<String> + Sync) -> Vec<String> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = systems.iter().map(|s| scope.spawn(|| f(s))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn series(terms: &[(u32, u64)]) -> SeriesPoly {
    let mut s = SeriesPoly::default();
    for &(d, c) in terms {
        s.add_term(d, c);
    }
    s
}

fn poly(s: &str) -> RatPoly {
    parse_rational_poly(s).unwrap()
}

fn poincare_closed_forms() -> Vec<String> {
    let mut errs = Vec::new();
    if poincare_even(2, 1, 0) != series(&[(0, 1), (2, 1), (3, 2), (5, 2), (6, 1), (8, 1)]) {
        errs.push(format!("poincare_even(2,1,0) = {}", poincare_even(2, 1, 0)));
    }
    if poincare_odd(3, 1).unwrap() != series(&[(0, 1), (4, 2), (5, 2), (9, 1)]) {
        errs.push("poincare_odd(3,1)".into());
    }
    for half in 1..=4 {
        for m in 0..=3 {
            for n in 0..=3 {
                let p = poincare_even(half, m, n);
                if p.total() != u64::from(4 * half) || !p.is_palindromic() {
                    errs.push(format!("even ({half},{m},{n}): {p}"));
                }
            }
        }
    }
    for mirrors in [1u32, 3, 5, 7] {
        for m in 0..=3 {
            let p = poincare_odd(mirrors, m).unwrap();
            if p.total() != u64::from(2 * mirrors) || !p.is_palindromic() {
                errs.push(format!("odd ({mirrors},{m}): {p}"));
            }
        }
    }
    errs
}

fn constant_multiplicity() -> Vec<String> {
    let mut errs = Vec::new();
    for half in 1..=4 {
        for m in 0..=3 {
            let mut expected = series(&[(0, 1), (2 * half * (2 * m + 1), 1)]);
            for i in 1..2 * half {
                expected.add_term(2 * m * half + i, 2);
            }
            if poincare_even(half, m, m) != expected {
                errs.push(format!("({half},{m},{m}): {} vs {}", poincare_even(half, m, m), expected));
            }
        }
    }
    errs
}

fn hilbert_oracle() -> Vec<String> {
    let mut errs = each_system(&grid(), |sys| {
        let half = sys.mirrors / 2;
        let d_max = 2 * half * (sys.mult_even + sys.mult_odd + 1) + 4 * half;
        let h = hilbert_from_poincare(&poincare(sys), sys.mirrors, d_max);
        (0..=d_max)
            .filter(|&d| quasi_dimension(sys, d) as u64 != h.coeff(d))
            .map(|d| format!("{sys} at d = {d}"))
            .collect()
    });
    let sys = DihedralSystem::new(4, 1, 0).unwrap();
    let dims: Vec<usize> = (0..=5).map(|d| quasi_dimension(&sys, d)).collect();
    if dims != [1, 0, 2, 2, 3, 4] {
        errs.push(format!("(4,1,0) dims {dims:?}"));
    }
    errs
}

fn dual_path() -> Vec<String> {
    let mut errs = each_system(&grid_up_to(3, 3), |sys| {
        let mut errs = Vec::new();
        for i in valid_indices(sys).unwrap() {
            let a1 = build_matrix_a(sys, i).unwrap().a1();
            if a1.determinant() == Ok(int(0)) {
                errs.push(format!("{sys}, i = {i}: det A1 = 0"));
            }
            match (solve_qi(sys, i), generator_from_determinant(sys, i)) {
                (Ok(a), Ok(b)) if a == b => {}
                other => errs.push(format!("{sys}, i = {i}: {other:?}")),
            }
            if solve_qi_coefficients(sys, i) != determinant_coefficients(sys, i) {
                errs.push(format!("{sys}, i = {i}: minor ratios differ from the solve"));
            }
        }
        errs
    });
    let spots = [
        ((2, 1, 0, 1), "z^3 + 3*z*zb^2"),
        ((2, 1, 0, 3), "z^5 - 5*z^3*zb^2"),
        ((2, 1, 1, 1), "z^5 + 5/3*z*zb^4"),
    ];
    for ((half, m, n, i), want) in spots {
        let sys = DihedralSystem::even(half, m, n).unwrap();
        if solve_qi(&sys, i).unwrap() != poly(want) {
            errs.push(format!("({half},{m},{n},{i}) != {want}"));
        }
    }
    errs
}

fn basis_quasi_invariance() -> Vec<String> {
    each_system(&grid(), |sys| {
        let mut errs = Vec::new();
        let gens = full_basis(sys, Provenance::Solver).unwrap();
        for g in &gens.entries {
            if !check_per_line(sys, &g.poly).ok {
                errs.push(format!("{sys}: {} not quasi-invariant", g.name()));
            }
        }
        let report = crosscheck_checkers(sys, 200, default_max_degree(sys), SEED);
        if !report.agree || report.trials != 200 {
            errs.push(format!("{sys}: checkers disagree: {:?}", report.disagreements));
        }
        errs
    })
}

fn l1_kernel() -> Vec<String> {
    each_system(&grid(), |sys| {
        let mut errs = Vec::new();
        let gens = full_basis(sys, Provenance::Solver).unwrap();
        let report = verify_l1_kernel(sys, &gens);
        for e in report.entries.iter().filter(|e| !e.zero) {
            errs.push(format!("{sys}: L1 {} = {}", e.generator, e.image));
        }
        if !apply_l1(sys, &RatPoly::one()).is_zero() {
            errs.push(format!("{sys}: L1(1) != 0"));
        }
        let half = i64::from(sys.mirrors / 2);
        let want = RatPoly::int_monomial(4 * (1 - half * i64::from(sys.mult_even + sys.mult_odd)), 0, 0);
        match apply_l1(sys, &poly("z*zb")) {
            L1Result::Polynomial(v) if v.as_rational() == Some(&want) => {}
            other => errs.push(format!("{sys}: L1(z zb) = {other:?}")),
        }
        errs
    })
}

fn freeness() -> Vec<String> {
    each_system(&grid(), |sys| {
        let mut errs = Vec::new();
        let gens = full_basis(sys, Provenance::Solver).unwrap();
        let half = sys.mirrors / 2;
        let d_max = 2 * half * (sys.mult_even + sys.mult_odd + 1) + 2 * sys.mirrors;
        let report = freeness_check(sys, &gens, d_max);
        for c in report.degrees.iter().filter(|c| !c.ok) {
            errs.push(format!("{sys}: degree {} {c:?}", c.degree));
        }
        let ideal = ideal_checks(sys, &gens, SEED, 3).unwrap();
        if !ideal.ok {
            errs.push(format!("{sys}: ideal checks {ideal:?}"));
        }
        if !ideal.chain_ok || gens.find(Label::Q3, None).is_none() {
            errs.push(format!("{sys}: q1, q2, q3 not all outside the ideal"));
        }
        errs
    })
}

fn uniqueness() -> Vec<String> {
    each_system(&grid(), |sys| {
        valid_indices(sys)
            .unwrap()
            .into_iter()
            .filter(|&i| !matches!(uniqueness_check(sys, i), Ok(true)))
            .map(|i| format!("{sys}: q1_{i} not unique"))
            .collect()
    })
}

fn counting() -> Vec<String> {
    each_system(&grid(), |sys| {
        let gens = full_basis(sys, Provenance::Determinant).unwrap();
        let mut errs = Vec::new();
        if gens.len() != sys.group_order() as usize {
            errs.push(format!("{sys}: {} generators", gens.len()));
        }
        if gens.degree_counts() != degree_table(sys).unwrap() {
            errs.push(format!("{sys}: degrees {:?}", gens.degree_counts()));
        }
        errs
    })
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("poincare closed forms", poincare_closed_forms),
        ("constant multiplicity consistency", constant_multiplicity),
        ("hilbert oracle identity", hilbert_oracle),
        ("dual-path generator identity", dual_path),
        ("quasi-invariance of the full basis", basis_quasi_invariance),
        ("L1 kernel", l1_kernel),
        ("freeness", freeness),
        ("uniqueness", uniqueness),
        ("counting", counting),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let errs = run();
        let secs = start.elapsed().as_secs_f64();
        if errs.is_empty() {
            println!("criterion {} PASS {name} ({secs:.2}s)", k + 1);
        } else {
            failed += 1;
            println!("criterion {} FAIL {name} ({secs:.2}s)", k + 1);
            for e in errs.iter().take(10) {
                println!("    {e}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
