use pyo3::ffi::c_str;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module(code: &std::ffi::CStr) {
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(pyquasinv::pyquasinv)(py);
        let globals = PyDict::new(py);
        globals.set_item("q", module).unwrap();
        if let Err(e) = py.run(code, Some(&globals), None) {
            e.print(py);
            panic!("embedded python failed");
        }
    });
}

#[test]
fn system_and_series() {
    with_module(c_str!(
        r#"
s = q.DihedralSystem.even(2, 1, 0)
assert s.mirrors == 4 and s.group_order() == 8
assert q.poincare(s) == "1 + t^2 + 2 t^3 + 2 t^5 + t^6 + t^8"
assert q.poincare_coefficients(s) == [1, 0, 1, 2, 0, 2, 1, 0, 1]
assert q.hilbert(s, 5) == [1, 0, 2, 2, 3, 4]
assert q.dim(s, 5) == 4
"#
    ));
}

#[test]
fn polynomials_and_generators() {
    with_module(c_str!(
        r#"
s = q.DihedralSystem.even(2, 1, 1)
g = q.generators(s)
assert len(g) == 8
name, degree, q11 = g[1]
assert (name, degree) == ("q1_1", 5)
assert q11 == q.Poly("z^5 + 5/3*z*zb^4")
assert q11.terms() == [(5, 0, "1"), (1, 4, "5/3")]
assert q11.latex() == "z^{5} + \\tfrac{5}{3} z \\bar{z}^{4}"
assert str(q.l1(s, q11)) == "0"
assert q.is_quasi_invariant(s, q11 * q11.bar())
assert not q.is_quasi_invariant(s, q.Poly("z"))
try:
    q.generators(q.DihedralSystem.odd(3, 1))
    raise AssertionError("odd system accepted")
except ValueError:
    pass
"#
    ));
}
