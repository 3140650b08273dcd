"""Smoke test for the pyquasinv extension module.

Build and run from the repository root:

    cargo build --release -p quasinv-python --features extension-module
    cp target/release/libpyquasinv.so crates/python/python/pyquasinv.so
    python3 crates/python/python/smoke.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pyquasinv as q


def main():
    sys4 = q.DihedralSystem.even(2, 1, 0)
    assert sys4.mirrors == 4 and sys4.group_order() == 8, sys4
    assert q.poincare(sys4) == "1 + t^2 + 2 t^3 + 2 t^5 + t^6 + t^8"
    assert q.poincare(q.DihedralSystem.odd(3, 1)) == "1 + 2 t^4 + 2 t^5 + t^9"
    assert q.hilbert(sys4, 5) == [1, 0, 2, 2, 3, 4]
    assert [q.dim(sys4, d) for d in range(6)] == [1, 0, 2, 2, 3, 4]

    p = q.Poly("z^3 + 3*z*zb^2")
    assert str(p) == "1*z^3*zb^0 + 3*z^1*zb^2"
    assert p.latex() == "z^{3} + 3 z \\bar{z}^{2}"
    assert q.is_quasi_invariant(sys4, p)
    report = json.loads(q.check(sys4, q.Poly("z")))
    assert report["ok"] is False and len(report["violations"]) == 2

    gens = q.generators(sys4)
    names = [name for name, _, _ in gens]
    assert names == ["q0", "q1", "q1_1", "q2_1", "q1_3", "q2_3", "q2", "q3"], names
    assert [(n, str(g)) for n, _, g in q.generators(sys4, "det")] == [(n, str(g)) for n, _, g in gens]
    for _, _, g in gens:
        assert q.is_quasi_invariant(sys4, g)
        assert str(q.l1(sys4, g)) == "0"
    assert str(q.l1(sys4, q.Poly("z*zb"))) == "-4*z^0*zb^0"

    q11 = q.generators(q.DihedralSystem.even(2, 1, 1))[1][2]
    assert q11 == q.Poly("z^5 + 5/3*z*zb^4"), q11
    assert q11.bar() == q.Poly("5/3*z^4*zb + zb^5")

    data = json.loads(q.generators_json(sys4))
    assert data["schema_version"] == 1 and len(data["generators"]) == 8

    ok, text = q.verify_system(sys4, seed=7, trials=30)
    assert ok, text
    assert json.loads(text)["seed"] == 7

    try:
        q.DihedralSystem(3, 1, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("odd system with two multiplicities accepted")

    print("pyquasinv smoke test passed")


if __name__ == "__main__":
    main()
