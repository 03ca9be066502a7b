"""Smoke test for the chernoff_lab extension module."""

import json
import math
import tempfile
from pathlib import Path

import chernoff_lab as cl


def check_measures():
    g1 = cl.heat_chernoff_measure("g1", 0.25)
    assert [w for _, w in g1.atoms] == [0.25, 0.5, 0.25]
    sq = g1.power(2)
    assert len(sq) == 5
    assert abs(sq.weight_sum() - 1.0) < 1e-15
    coeffs, norm = cl.heat_binomial_coefficients("g1", 2)
    assert coeffs == [1, 4, 6, 4, 1] and norm == 16
    for (_, w), c in zip(sq.atoms, coeffs):
        assert abs(w - c / norm) < 1e-15
    big, norm = cl.heat_binomial_coefficients("g1", 40)
    assert sum(big) == 4**40 == norm
    assert big[40] == math.comb(80, 40)


def check_exact_solutions():
    for x in (-2.0, 0.3, 1.0, 4.0):
        assert abs(cl.erfc(x) - math.erfc(x)) < 1e-15 * math.erfc(x)
    assert abs(cl.heat_exact("exp-abs", 1.0, 0.0) - math.e * math.erfc(1.0)) < 1e-15
    assert abs(cl.heat_exact("sin", 2.0, 1.0) - math.exp(-2.0) * math.sin(1.0)) < 1e-15
    tab = cl.InitialCondition.tabulated([0.0, 1.0], [0.0, 2.0])
    assert tab(0.5) == 1.0
    assert abs(cl.transport_exact(cl.InitialCondition.sin(), 1.0, 0.5) - math.sin(1.5)) < 1e-15


def check_convergence():
    records = cl.error_curve(
        "equation=transport scheme=power:1,1 initial=sin t=1 n=1..100 grid=0,2pi,2001"
    )
    for r in records:
        assert abs(r.measured_error - 2 * math.sin(1 / (2 * r.n))) < 1e-3
    slope, _, r2 = cl.loglog_fit([r.n for r in records], [r.measured_error for r in records], 4)
    assert -1.02 <= slope <= -0.98 and r2 > 0.999
    e = cl.heat_sin_error("g1", 2.0, 4096)
    assert abs(4096 * e - cl.g1_sin_leading_coefficient(2.0)) < 1e-2 * e * 4096


def check_runner():
    names = [name for name, _, _ in cl.list_presets()]
    assert "fig-heat-sin-g2" in names
    report = json.loads(cl.run_experiment("grid=0,2pi,2001", preset="fig-heat-sin-g2"))
    assert -2.1 <= report["fit"]["slope"] <= -1.9
    with tempfile.TemporaryDirectory() as d:
        cl.run_experiment(
            "equation=heat scheme=g1 initial=exp-abs t=1 n=8..64(geometric) grid=-5,5,1001",
            out_dir=d,
        )
        header = (Path(d) / "errors.csv").read_text().splitlines()[0]
        assert header == "n,measured_error,closed_form_error,abs_gap"
        assert (Path(d) / "loglog.svg").exists()
    try:
        cl.run_experiment("equation=heat scheme=power:1,1")
    except ValueError as err:
        assert "scheme incompatible with equation" in str(err)
    else:
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    check_measures()
    check_exact_solutions()
    check_convergence()
    check_runner()
    print("chernoff_lab smoke test passed")
