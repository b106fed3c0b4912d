import math

import pytest

import polylab


def test_generate_has_designated_root():
    s = polylab.generate("orthogonal", d=2, param=1e-3, shift=1 / 3)
    assert s["d"] == 2
    assert len(s["polys"]) == 2
    assert s["family_tag"] == "orthogonal"
    assert any(abs(r[0][0] - 1 / 3) < 1e-15 and abs(r[1][0] - 1 / 3) < 1e-15 for r in s["true_roots"])


def test_solve_finds_every_root():
    s = polylab.generate("cyclic_squares", d=2, param=0.5)
    for method in ("nf", "macaulay"):
        report = polylab.solve(s, method, polish=True)
        roots = polylab.roots_as_complex(report)
        assert len(roots) == 4
        assert max(report["residuals"]) < 1e-10
        assert any(abs(r[0]) < 1e-10 and abs(r[1]) < 1e-10 for r in roots)


def test_audit_ratio_matches_prediction():
    s = polylab.generate("permutation", d=3, param=1e-2)
    reports = {r["method_tag"]: r for r in polylab.audit(s, [0, 0, 0])}
    assert math.isclose(reports["mep"]["ratio"], 1e4, rel_tol=1e-6)


def test_sweep_is_deterministic():
    a = polylab.sweep("mep", "permutation", [2, 3], axis="dim", param=0.1, trials=3, shift=1 / 3)
    b = polylab.sweep("mep", "permutation", [2, 3], axis="dim", param=0.1, trials=3, shift=1 / 3)
    assert a == b
    assert [r["n_trials"] for r in a["records"]] == [3, 3]


def test_verify_and_helpers():
    assert polylab.verify("lemmaA1")["pass"]
    assert polylab.digits_of_accuracy(1e-8) == pytest.approx(8.0)
    assert "1c" in polylab.figure_ids()
    assert "prop51" in polylab.suite_names()


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        polylab.generate("nonsense")
    s = polylab.generate("orthogonal")
    with pytest.raises(ValueError):
        polylab.solve(s, "qr")
