"""Oracle tests for entropy curves, gap-MI grids and PMI verdicts.

The Thue-Morse grid anchors below were computed with an independent
script (factor tables + gap marginalization + mutual information)
before this module existed and are frozen here as regression values.
"""

import math
import types
from fractions import Fraction as F

import pytest

from persistinfo.infocore import ExactBits
from persistinfo.measures import (
    EfficiencyReport,
    EmpiricalSource,
    EntropyCurve,
    GapMIGrid,
    PmiReport,
    UndersampledError,
    efficiency,
    entropy_curve,
    excess_entropy_finite,
    gap_mi_grid,
    geometric_decay_rate,
    pmi_verdict,
)
from persistinfo.processes import (
    IidProcess,
    MarkovProcess,
    PeriodicProcess,
    SubstitutionProcess,
    sample,
)
from persistinfo.substitution import thue_morse

LOG2_3 = ExactBits(F(0), {3: F(1)})


def goldenmean() -> MarkovProcess:
    return MarkovProcess.from_rows(
        {"0": (F(1, 2), F(1, 2)), "1": (F(1), F(0))})


def lopsided_chain() -> MarkovProcess:
    return MarkovProcess.from_rows({"0": (0.9, 0.1), "1": (0.2, 0.8)})


# ── entropy curves ──────────────────────────────────────────────────


def test_entropy_curve_fair_coin():
    c = entropy_curve(IidProcess.from_probs((F(1, 2), F(1, 2))), 5)
    assert list(c.H) == [1, 2, 3, 4, 5]
    assert list(c.dH) == [1, 1, 1, 1, 1]
    assert c.h_hat == 1
    assert c.E_hat == 0
    assert c.exact


def test_entropy_curve_period3():
    c = entropy_curve(PeriodicProcess.from_string("011"), 4)
    assert c.H[0] == ExactBits(F(-2, 3), {3: F(1)})
    for L in (2, 3, 4):
        assert c.H[L - 1] == LOG2_3
    assert c.h_hat == 0
    assert c.E_hat == LOG2_3


def test_entropy_curve_parity_fixed_point():
    c = entropy_curve(SubstitutionProcess(thue_morse()), 5)
    assert list(c.H) == [
        F(1),
        ExactBits(F(1, 3), {3: F(1)}),
        ExactBits(F(1), {3: F(1)}),
        ExactBits(F(5, 3), {3: F(1)}),
        ExactBits(F(2), {3: F(1)}),
    ]
    assert list(c.dH) == [
        F(1),
        ExactBits(F(-2, 3), {3: F(1)}),
        F(2, 3),
        F(2, 3),
        F(1, 3),
    ]
    assert c.h_hat == F(1, 3)
    assert c.E_hat == ExactBits(F(1, 3), {3: F(1)})
    assert c.h_ratio == ExactBits(F(2, 5), {3: F(1, 5)})


def test_entropy_curve_monotonicity_invariants():
    for model in [goldenmean(), PeriodicProcess.from_string("00101"),
                  SubstitutionProcess(thue_morse())]:
        c = entropy_curve(model, 6)
        for a, b in zip(c.H, c.H[1:]):
            assert float(b) >= float(a) - 1e-9
        for a, b in zip(c.dH, c.dH[1:]):
            assert float(b) <= float(a) + 1e-9


def test_entropy_curve_markov_increment_is_exact_rate():
    # H(L) is exactly linear from L = R on, so the last increment is
    # the exact rate and E_hat the exact excess entropy
    c = entropy_curve(goldenmean(), 8)
    assert c.h_hat == F(2, 3)
    assert c.E_hat == ExactBits(F(-4, 3), {3: F(1)})


def test_entropy_curve_from_plain_sequence():
    c = entropy_curve("01" * 500, 6)
    assert not c.exact
    assert float(c.H[0]) == pytest.approx(1.0, abs=1e-4)
    assert float(c.h_hat) == pytest.approx(0.0, abs=0.01)
    assert float(c.E_hat) == pytest.approx(1.0, abs=0.02)


def test_entropy_curve_csv_shape():
    c = entropy_curve(IidProcess.from_probs((F(1, 2), F(1, 2))), 3)
    lines = c.to_csv().strip().splitlines()
    assert lines[0] == "L,H_exact,H_bits,dH_exact,dH_bits"
    assert len(lines) == 4
    assert lines[1].startswith("1,1,1,1,1")


# ── finite-L excess entropy ─────────────────────────────────────────


def test_excess_entropy_finite_iid_zero():
    m = IidProcess.from_probs((F(3, 10), F(7, 10)))
    for L in (1, 2, 4):
        assert excess_entropy_finite(m, L) == 0


def test_excess_entropy_finite_periodic():
    assert excess_entropy_finite(PeriodicProcess.from_string("01"), 1) == 1
    m = PeriodicProcess.from_string("011")
    for L in (3, 5):
        assert excess_entropy_finite(m, L) == LOG2_3


def test_excess_entropy_finite_markov_exact_at_all_L():
    m = goldenmean()
    for L in (1, 2, 4, 8):
        assert excess_entropy_finite(m, L) == ExactBits(F(-4, 3), {3: F(1)})


def test_excess_entropy_finite_empirical():
    seq = sample(goldenmean(), 200_000, seed=3)
    est = float(excess_entropy_finite(seq, 4))
    assert est == pytest.approx(math.log2(3) - 4 / 3, abs=5e-3)


# ── gap-MI grids ────────────────────────────────────────────────────


def test_grid_period2_all_ones():
    g = gap_mi_grid(PeriodicProcess.from_string("01"), [1, 2, 3], [0, 1, 2])
    assert g.exact
    assert set(map(float, g.values.values())) == {1.0}
    assert g.missing == {}


def test_grid_iid_all_zero():
    g = gap_mi_grid(IidProcess.from_probs((F(1, 2), F(1, 2))),
                    [1, 2, 3], [0, 2, 4])
    assert all(v == 0 for v in g.values.values())


def test_grid_markov_decays_in_gap():
    g = gap_mi_grid(lopsided_chain(), [1, 2], [0, 4, 8, 12])
    for L in (1, 2):
        col = [float(g.value(L, gg)) for gg in (0, 4, 8, 12)]
        assert all(b < a for a, b in zip(col, col[1:]))


def test_grid_nondecreasing_in_L_at_fixed_gap():
    for model in [goldenmean(), SubstitutionProcess(thue_morse())]:
        g = gap_mi_grid(model, [2, 3, 4], [0, 2, 4])
        for gg in (0, 2, 4):
            col = [float(g.value(L, gg)) for L in (2, 3, 4)]
            assert all(b >= a - 1e-12 for a, b in zip(col, col[1:]))


def test_grid_parity_frozen_anchors():
    g = gap_mi_grid(SubstitutionProcess(thue_morse()), [3, 5, 7, 9], [2, 4, 8])
    assert float(g.value(3, 2)) == pytest.approx(0.918296, abs=1e-6)
    assert float(g.value(7, 4)) == pytest.approx(2.918296, abs=1e-6)
    assert float(g.value(9, 8)) == pytest.approx(3.043296, abs=1e-6)


def test_grid_marks_capped_cells_missing():
    g = gap_mi_grid(SubstitutionProcess(thue_morse()), [2, 3, 4], [2, 30])
    for L in (2, 3, 4):
        assert (L, 2) in g.values
        assert (L, 30) not in g.values
        assert "cap" in g.missing[(L, 30)]


def test_grid_undersampling_guard():
    seq = sample(IidProcess.from_probs((F(1, 2), F(1, 2))), 2000, seed=1)
    g = gap_mi_grid(seq, [2, 5], [0, 1])
    assert (2, 0) in g.values
    assert (5, 0) in g.missing and (5, 1) in g.missing
    src = EmpiricalSource(seq)
    with pytest.raises(UndersampledError):
        src.joint_gap_distribution(5, 0)


def test_grid_csv_layout():
    g = gap_mi_grid(PeriodicProcess.from_string("01"), [1, 2, 3], [0, 1, 2])
    lines = g.to_csv().strip().splitlines()
    assert lines[0] == "L,g,E_bits"
    assert len(lines) == 10
    assert lines[1] == "1,0,1"


# ── PMI verdicts ────────────────────────────────────────────────────


def test_verdict_periodic_converges_to_log_period():
    g = gap_mi_grid(PeriodicProcess.from_string("011"), [2, 3, 4], [2, 4, 8])
    report = pmi_verdict(g)
    assert report.verdict.kind == "converged"
    assert report.verdict.value == pytest.approx(math.log2(3), abs=1e-9)
    assert report.verdict.uncertainty <= 1e-9


def test_verdict_markov_converges_to_zero():
    g = gap_mi_grid(lopsided_chain(), [1, 2, 3], [16, 24, 48])
    report = pmi_verdict(g)
    assert report.verdict.kind == "converged"
    assert abs(report.verdict.value) <= 1e-6


def test_verdict_parity_diverges():
    g = gap_mi_grid(SubstitutionProcess(thue_morse()), [3, 5, 7, 9], [2, 4, 8])
    report = pmi_verdict(g)
    assert report.verdict.kind == "diverging"
    assert report.diagnostics["slope_top_half"] >= 0.05
    assert report.tail_values[9] == pytest.approx(3.043296, abs=1e-6)


def test_verdict_requires_three_by_three():
    g = gap_mi_grid(PeriodicProcess.from_string("01"), [1, 2], [0, 1, 2])
    with pytest.raises(ValueError):
        pmi_verdict(g)
    g = gap_mi_grid(PeriodicProcess.from_string("01"), [1, 2, 3], [0, 1])
    with pytest.raises(ValueError):
        pmi_verdict(g)


def test_verdict_converged_value_bounded_by_tail_column():
    g = gap_mi_grid(PeriodicProcess.from_string("011"), [2, 3, 4], [2, 4, 8])
    report = pmi_verdict(g)
    tail_min = min(float(g.value(L, 8)) for L in (2, 3, 4))
    assert report.verdict.value <= tail_min + report.verdict.uncertainty + 1e-12


def test_verdict_empirical_matches_exact_kinds():
    per = PeriodicProcess.from_string("011")
    seq = sample(per, 100_000, seed=5)
    emp = pmi_verdict(gap_mi_grid(seq, [2, 3, 4], [2, 4, 8]))
    assert emp.verdict.kind == "converged"
    assert emp.verdict.value == pytest.approx(math.log2(3), abs=1e-3)

    seq = sample(goldenmean(), 300_000, seed=6)
    emp = pmi_verdict(gap_mi_grid(seq, [1, 2, 3], [16, 24, 48]))
    assert emp.verdict.kind == "converged"
    assert abs(emp.verdict.value) <= 1e-3


def test_verdict_json_roundtrip_fields():
    g = gap_mi_grid(PeriodicProcess.from_string("011"), [2, 3, 4], [2, 4, 8])
    d = pmi_verdict(g).to_json_dict()
    assert d["verdict"]["kind"] == "converged"
    assert {"L_grid", "g_grid", "cells", "missing"} <= set(d["grid"])
    assert len(d["grid"]["cells"]) == 9


# ── efficiency and decay diagnostics ────────────────────────────────


def test_efficiency_basic_and_zero_convention():
    machine = types.SimpleNamespace(complexity=2.0)
    rep = efficiency(0.5, machine)
    assert rep == EfficiencyReport(excess_entropy=0.5, complexity_plus=2.0,
                                   e_plus=0.25, consistent=True)
    trivial = types.SimpleNamespace(complexity=0.0)
    rep = efficiency(0.0, trivial)
    assert rep.e_plus == 0 and rep.consistent


def test_efficiency_reports_inconsistency_unclamped():
    machine = types.SimpleNamespace(complexity=1.0)
    rep = efficiency(1.2, machine)
    assert rep.e_plus == pytest.approx(1.2)
    assert not rep.consistent


def test_geometric_decay_rate_exact_series():
    pts = [(g, 3.0 * 0.49 ** g) for g in range(4, 13)]
    assert geometric_decay_rate(pts) == pytest.approx(0.49, abs=1e-9)
    with pytest.raises(ValueError):
        geometric_decay_rate([(0, 1.0)])


def test_geometric_decay_rate_on_markov_grid():
    m = lopsided_chain()
    g = gap_mi_grid(m, [1, 2, 3], [4, 6, 8, 10, 12])
    pts = [(gg, float(g.value(1, gg))) for gg in (4, 6, 8, 10, 12)]
    assert geometric_decay_rate(pts) == pytest.approx(0.49, rel=0.10)
