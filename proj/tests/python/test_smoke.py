import json
import math

import pytest

import isospec


def test_ball_ratios():
    d = isospec.dirichlet_ball(2, 1.0, 3)
    assert d.provenance == "closed_form"
    assert d.values[1] / d.values[0] == pytest.approx(2.5387, abs=5e-4)
    g = isospec.clamped_ball(2, 1.0)
    assert g.values[1] / g.values[0] == pytest.approx(4.3311, abs=1e-3)
    assert isospec.bessel_zero(0, 1) == pytest.approx(2.404825557695773, abs=1e-10)


def test_constants():
    assert isospec.c_constant(2) == pytest.approx(0.7877, abs=5e-4)
    r = isospec.d_constant_result(4)
    assert r["d_n"] == pytest.approx(0.9537, abs=2e-3)
    assert r["t"] == pytest.approx(0.5, abs=0.02)
    pts = isospec.j_curve(6, [0.25, 0.75])
    assert pts[0][1] == pytest.approx(pts[1][1], rel=1e-7)


def test_grid_spectrum_square():
    h = 1 / 16
    s = isospec.grid_spectrum(isospec.Shape.rectangle(1, 1), isospec.ProblemKind.dirichlet, h, 3)
    exact = 8 / h**2 * math.sin(math.pi * h / 2) ** 2
    assert s.values[0] == pytest.approx(exact, rel=1e-9)
    assert s.provenance == "discrete"


def test_convergence_study_disk():
    levels, ext = isospec.convergence_study(isospec.Shape.disk(1), isospec.ProblemKind.dirichlet, 1 / 16, 2, 3)
    assert len(levels) == 2
    assert ext.provenance == "discrete_extrapolated"
    j = isospec.bessel_zero(0, 1)
    assert ext.values[0] == pytest.approx(j * j, rel=0.02)


def test_catalog_and_suite():
    ids = [e["id"] for e in isospec.catalog()]
    assert "faber_krahn" in ids and "polya_dirichlet" in ids
    d = isospec.dirichlet_ball(2, 1.0, 10)
    n = isospec.neumann_ball(2, 1.0, 11)
    rows = isospec.evaluate_suite(dirichlet=d, neumann=n, volume=math.pi)
    proven = [r for r in rows if r["status"] == "proven"]
    assert proven and all(r["holds"] for r in proven)
    assert isospec.chain_check(d, 2, 3)["ok"]
    only = isospec.evaluate_suite(dirichlet=d, volume=math.pi, only=["faber_krahn"])
    assert [r["id"] for r in only] == ["faber_krahn"]


def test_verify_and_errors():
    cfg = {
        "schema": "isospec-run/1",
        "domains": ["rectangle:1,1"],
        "problems": ["dirichlet"],
        "mesh": {"h": 0.0625, "levels": 2},
        "m_max": 3,
        "k_max": 3,
    }
    res = isospec.verify(json.dumps(cfg))
    assert res["exit_code"] == 0 and res["proven_failed"] == 0
    cfg["domains"] = []
    with pytest.raises(isospec.ConfigError):
        isospec.verify(json.dumps(cfg))
    with pytest.raises(ValueError):
        isospec.Shape.parse("hexagon:1")
