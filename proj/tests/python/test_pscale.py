import math

import pytest

import pscale

E2 = {"n": 3, "F": "abs2(z1)^2 + abs2(z2)", "label": "E2"}
TANGENTIAL = {"kind": "tangential", "params": {"powers": [1, 4]}, "jmax": 16}


def coeff(report, j, k):
    for t in report["P_limit"]:
        if t["j"] == j and t["k"] == k:
            return complex(t["re"], t["im"])
    return 0j


def test_parse():
    out = pscale.parse("abs2(z1)^2", 1)
    assert out["degree"] == 4
    assert out["terms"][0]["exact"] == "1"
    with pytest.raises(pscale.ParseError):
        pscale.parse("abs2(z1", 1)


def test_analyze():
    report = pscale.analyze(E2)
    assert report["type"] == 4
    assert report["corank"] == 1
    assert report["hypotheses"] == "pass"


def test_scale_exact():
    sd = pscale.scale(E2, [0.2, 0], "1/625")
    assert sd["tau"] == 0.1
    assert sd["epsilon_exact"] == "1/625"
    assert sd["diagnostics"]["coefficients_bounded"]


def test_normalize():
    norm = pscale.normalize(E2, "1/5;0")
    assert norm["normalized"]
    with pytest.raises(pscale.HypothesisError):
        pscale.normalize(E2, "2;0")


def test_limit_tangential():
    report = pscale.limit(E2, TANGENTIAL)
    assert report["converged"]
    expected = {(1, 1): 1.0, (2, 1): 0.25, (1, 2): 0.25, (2, 2): 1 / 16}
    for (j, k), value in expected.items():
        assert abs(coeff(report, j, k) - value) <= 1e-9
    assert report["model"]["is_subharmonic"]
    assert not report["model"]["is_homogeneous"]


def test_limit_normal_egg():
    report = pscale.limit({"n": 3, "F": "abs2(z1)^3 + abs2(z2)"}, {"kind": "normal", "jmax": 24})
    assert abs(coeff(report, 3, 3) - 1) <= 1e-12
    assert not report["strongly_pseudoconvex"]


def test_classify_and_match():
    assert pscale.classify("abs2(z1)")["is_strongly_pseudoconvex_model"]
    m = pscale.match("3*abs2(z1)^2 + 3*Re(i*z1^3*zb1)", "abs2(z1)^2 + Re(z1^3*zb1)")
    assert m["match"]
    assert abs(m["lambda"] - 3) <= 1e-9
    assert abs(m["nu"] - math.pi / 4) <= 1e-9
    assert pscale.match("abs2(z1)^2 + Re(z1^3*zb1)", "abs2(z1)^2") == {"match": False}
    with pytest.raises(pscale.HypothesisError):
        pscale.match("abs2(z1)^2", "abs2(z1)")
