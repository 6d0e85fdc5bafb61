"""Complexity measures over block statistics.

This layer turns block and joint-block laws (exact model laws or
plug-in estimates from a sequence) into the derived quantities: block
entropy curves with entropy-rate and excess-entropy estimates, the
grid of block mutual informations at growing time gaps, a convergence
verdict for the persistent mutual information, prediction efficiency,
and a geometric-decay diagnostic for Markov tails.

The gap grid takes the double limit in the iterated order: inner in
the gap g, outer in the block length L.  A verdict of "converged"
means the inner tail stabilized for the two largest L and the per-L
limits agree; "diverging" means the per-L limits keep growing at a
material rate; anything else is "inconclusive".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from .infocore import (
    Alphabet,
    BlockDistribution,
    JointBlockDistribution,
    Scalar,
    _coerce_sequence,
    decode_window_code,
    empirical_block_distribution,
    mutual_information,
    shannon_entropy,
    window_codes,
)
from .processes import WindowCapError

__all__ = [
    "UndersampledError",
    "EmpiricalSource",
    "EntropyCurve",
    "GapMIGrid",
    "PmiVerdict",
    "PmiReport",
    "EfficiencyReport",
    "entropy_curve",
    "excess_entropy_finite",
    "gap_mi_grid",
    "pmi_verdict",
    "efficiency",
    "geometric_decay_rate",
]


class UndersampledError(ValueError):
    """The sequence is too short to estimate the requested statistic."""


# exact arithmetic where both operands allow it, float otherwise
def _sub(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return float(a) - float(b)
    return a - b


def _mul_int(a, k: int):
    if isinstance(a, float):
        return a * k
    return a * k


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def _exact_str(x) -> str:
    return "" if isinstance(x, float) else str(x)


# ── empirical source adapter ────────────────────────────────────────


class EmpiricalSource:
    """Plug-in block and joint-block laws of one observed sequence.

    Joint estimation at gap g slides a window of length 2L + g and
    counts the (left block, right block) pairs.  Cells whose distinct
    pair count exceeds one tenth of the available windows are refused
    as undersampled.
    """

    __slots__ = ("arr", "alphabet", "n")

    def __init__(self, seq, alphabet: Optional[Alphabet] = None):
        arr, alphabet = _coerce_sequence(seq, alphabet)
        self.arr = arr
        self.alphabet = alphabet
        self.n = int(arr.size)

    @property
    def exact(self) -> bool:
        return False

    @property
    def empirical(self) -> bool:
        return True

    def block_distribution(self, L: int) -> BlockDistribution:
        if L < 1:
            raise ValueError("block length must be >= 1")
        if L > self.n:
            raise UndersampledError(
                f"no length-{L} window in a sequence of {self.n} symbols")
        return empirical_block_distribution(self.arr, L, self.alphabet)

    def joint_gap_distribution(self, L: int, g: int) -> JointBlockDistribution:
        if L < 1 or g < 0:
            raise ValueError("need L >= 1 and g >= 0")
        s = len(self.alphabet)
        win = 2 * L + g
        m = self.n - win + 1
        if m < 1:
            raise UndersampledError(
                f"no length-{win} window in a sequence of {self.n} symbols")
        pairs = self._pair_counts(L, g, m, s)
        if len(pairs) > m / 10:
            raise UndersampledError(
                f"{len(pairs)} distinct block pairs from {m} windows;"
                " refusing estimate beyond one pair per ten windows")
        probs = {k: c / m for k, c in pairs.items()}
        return JointBlockDistribution(self.alphabet, L, g, L, probs)

    def _pair_counts(self, L: int, g: int, m: int, s: int) -> dict:
        codes = window_codes(self.arr, L, s)
        if codes is not None and 2 * L * math.log2(max(s, 2)) < 63:
            left = codes[:m]
            right = codes[L + g:L + g + m]
            pair = left * (s ** L) + right
            uniq, counts = np.unique(pair, return_counts=True)
            out = {}
            for code, c in zip(uniq.tolist(), counts.tolist()):
                lw = decode_window_code(code // (s ** L), L, s)
                rw = decode_window_code(code % (s ** L), L, s)
                out[(lw, rw)] = c
            return out
        out: dict = {}
        a = self.arr
        for i in range(m):
            key = (tuple(a[i:i + L].tolist()),
                   tuple(a[i + L + g:i + 2 * L + g].tolist()))
            out[key] = out.get(key, 0) + 1
        return out


def _as_source(source, alphabet: Optional[Alphabet] = None):
    if hasattr(source, "block_distribution") \
            and hasattr(source, "joint_gap_distribution"):
        return source
    return EmpiricalSource(source, alphabet)


# ── entropy curves ──────────────────────────────────────────────────


@dataclass(frozen=True)
class EntropyCurve:
    """Block entropies H(1..L_max) with increments and the two
    entropy-rate estimators.

    h_hat is the last increment dH(L_max), which converges faster than
    the ratio and is exact from L_max = R + 1 on for an order-R chain;
    h_ratio = H(L_max)/L_max is exposed alongside.  E_hat is the
    excess-entropy estimate H(L_max) - L_max * h_hat.
    """

    L_max: int
    H: tuple
    dH: tuple
    h_hat: Scalar
    h_ratio: Scalar
    E_hat: Scalar
    exact: bool

    def to_rows(self):
        return [(L + 1, self.H[L], self.dH[L]) for L in range(self.L_max)]

    def to_csv(self) -> str:
        lines = ["L,H_exact,H_bits,dH_exact,dH_bits"]
        for L, Hv, dHv in self.to_rows():
            lines.append(f"{L},{_exact_str(Hv)},{_fmt(Hv)},"
                         f"{_exact_str(dHv)},{_fmt(dHv)}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "L_max": self.L_max,
            "H_bits": [float(x) for x in self.H],
            "dH_bits": [float(x) for x in self.dH],
            "h_hat_bits": float(self.h_hat),
            "h_ratio_bits": float(self.h_ratio),
            "E_hat_bits": float(self.E_hat),
            "exact": self.exact,
        }


def entropy_curve(source, L_max: int,
                  alphabet: Optional[Alphabet] = None) -> EntropyCurve:
    """Block entropy curve of a model or an observed sequence."""
    if L_max < 1:
        raise ValueError("L_max must be >= 1")
    src = _as_source(source, alphabet)
    dists = [src.block_distribution(L) for L in range(1, L_max + 1)]
    H = [shannon_entropy(d) for d in dists]
    dH = [H[0]] + [_sub(H[i], H[i - 1]) for i in range(1, L_max)]
    h_hat = dH[-1]
    E_hat = _sub(H[-1], _mul_int(h_hat, L_max))
    h_ratio = H[-1] / L_max
    return EntropyCurve(L_max=L_max, H=tuple(H), dH=tuple(dH), h_hat=h_hat,
                        h_ratio=h_ratio, E_hat=E_hat,
                        exact=all(d.exact for d in dists))


def excess_entropy_finite(source, L: int,
                          alphabet: Optional[Alphabet] = None) -> Scalar:
    """Mutual information between two adjacent length-L blocks,
    computed as 2 H(L) - H(2L)."""
    if L < 1:
        raise ValueError("L must be >= 1")
    src = _as_source(source, alphabet)
    hL = shannon_entropy(src.block_distribution(L))
    h2L = shannon_entropy(src.block_distribution(2 * L))
    return _sub(_mul_int(hL, 2), h2L)


# ── gap-MI grid ─────────────────────────────────────────────────────


@dataclass(frozen=True)
class GapMIGrid:
    """Mutual information between two length-L blocks with g symbols
    hidden between them, over a grid of (L, g).

    Cells that cannot be computed (window cap, undersampling) are
    absent from ``values`` and carry a reason string in ``missing``.
    """

    L_grid: tuple
    g_grid: tuple
    values: dict
    missing: dict
    exact: bool
    empirical: bool

    def value(self, L: int, g: int) -> Scalar:
        try:
            return self.values[(L, g)]
        except KeyError:
            reason = self.missing.get((L, g), "not on the grid")
            raise KeyError(f"no value at (L={L}, g={g}): {reason}") from None

    def to_csv(self) -> str:
        lines = ["L,g,E_bits"]
        for L in self.L_grid:
            for g in self.g_grid:
                if (L, g) in self.values:
                    lines.append(f"{L},{g},{_fmt(self.values[(L, g)])}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "L_grid": list(self.L_grid),
            "g_grid": list(self.g_grid),
            "exact": self.exact,
            "empirical": self.empirical,
            "cells": [{"L": L, "g": g, "E_bits": float(v)}
                      for (L, g), v in sorted(self.values.items())],
            "missing": [{"L": L, "g": g, "reason": r}
                        for (L, g), r in sorted(self.missing.items())],
        }


def gap_mi_grid(source, L_grid: Sequence[int], g_grid: Sequence[int],
                alphabet: Optional[Alphabet] = None) -> GapMIGrid:
    """Evaluate the block MI at every (L, g) on the grid; cells that
    exceed the window cap or the undersampling guard are marked
    missing rather than failing the grid."""
    Ls = tuple(sorted(set(int(L) for L in L_grid)))
    gs = tuple(sorted(set(int(g) for g in g_grid)))
    if not Ls or not gs:
        raise ValueError("grids must be nonempty")
    if Ls[0] < 1 or gs[0] < 0:
        raise ValueError("need L >= 1 and g >= 0 throughout the grid")
    src = _as_source(source, alphabet)
    values: dict = {}
    missing: dict = {}
    for L in Ls:
        for g in gs:
            try:
                values[(L, g)] = mutual_information(
                    src.joint_gap_distribution(L, g))
            except (WindowCapError, UndersampledError) as e:
                missing[(L, g)] = str(e)
    cell_exact = all(not isinstance(v, float) for v in values.values())
    return GapMIGrid(L_grid=Ls, g_grid=gs, values=values, missing=missing,
                     exact=bool(values) and cell_exact,
                     empirical=bool(getattr(src, "empirical", False)))


# ── PMI verdict ─────────────────────────────────────────────────────


@dataclass(frozen=True)
class PmiVerdict:
    kind: str  # "converged" | "diverging" | "inconclusive"
    value: Optional[float] = None
    uncertainty: Optional[float] = None


@dataclass(frozen=True)
class PmiReport:
    grid: GapMIGrid
    verdict: PmiVerdict
    tail_values: dict
    diagnostics: dict

    def to_json_dict(self) -> dict:
        return {
            "verdict": {"kind": self.verdict.kind,
                        "value": self.verdict.value,
                        "uncertainty": self.verdict.uncertainty},
            "tail_values": {str(L): v for L, v in self.tail_values.items()},
            "diagnostics": self.diagnostics,
            "grid": self.grid.to_json_dict(),
        }


def pmi_verdict(grid: GapMIGrid, eps_g: Optional[float] = None,
                eps_L: Optional[float] = None,
                delta: float = 0.05) -> PmiReport:
    """Classify the double limit of the gap-MI grid.

    The inner (gap) limit per L is taken as the value at the largest
    available g; it counts as stable when it differs from the value at
    the gap nearest half of g_max by at most eps_g.  Converged needs
    stability at the two largest L plus agreement of their limits
    within eps_L; diverging needs the per-L limits to grow
    monotonically at a least-squares rate of at least delta bits per
    unit L over the top half of the L grid.

    Default tolerances are 1e-6 for model grids and 1e-3 for grids
    estimated from a sequence.
    """
    if len(grid.L_grid) < 3 or len(grid.g_grid) < 3:
        raise ValueError("need at least 3 distinct L and 3 distinct g values")
    noise = 1e-3 if grid.empirical else 1e-6
    eps_g = noise if eps_g is None else eps_g
    eps_L = noise if eps_L is None else eps_L

    gs = grid.g_grid
    g_last = gs[-1]
    g_half = min(gs[:-1], key=lambda g: abs(g - g_last / 2))

    tail_values: dict = {}
    tail_ok: dict = {}
    tail_gaps: dict = {}
    for L in grid.L_grid:
        avail = [g for g in gs if (L, g) in grid.values]
        if not avail:
            tail_values[L] = None
            tail_ok[L] = False
            tail_gaps[L] = None
            continue
        tail_values[L] = float(grid.values[(L, avail[-1])])
        if g_last in avail and g_half in avail:
            gap = abs(float(grid.values[(L, g_last)])
                      - float(grid.values[(L, g_half)]))
            tail_gaps[L] = gap
            tail_ok[L] = gap <= eps_g
        else:
            tail_gaps[L] = None
            tail_ok[L] = False

    usable = [L for L in grid.L_grid if tail_values[L] is not None]
    vs = [tail_values[L] for L in usable]
    monotone = all(b >= a - eps_g for a, b in zip(vs, vs[1:]))

    top = usable[len(usable) // 2:]
    slope = None
    if len(top) >= 2:
        slope = float(np.polyfit(top, [tail_values[L] for L in top], 1)[0])
    top_monotone = all(
        tail_values[b] >= tail_values[a] - eps_g for a, b in zip(top, top[1:]))

    verdict = PmiVerdict("inconclusive")
    if len(usable) >= 2:
        L2, L1 = usable[-1], usable[-2]
        increment = abs(tail_values[L2] - tail_values[L1])
        if (L2, L1) == (grid.L_grid[-1], grid.L_grid[-2]) \
                and tail_ok[L2] and tail_ok[L1] and increment <= eps_L:
            verdict = PmiVerdict("converged", value=tail_values[L2],
                                 uncertainty=increment)
    if verdict.kind == "inconclusive" and slope is not None \
            and top_monotone and slope >= delta:
        verdict = PmiVerdict("diverging")

    diagnostics = {
        "eps_g": eps_g, "eps_L": eps_L, "delta": delta,
        "g_tail": g_last, "g_half": g_half,
        "tail_gaps": {int(L): tail_gaps[L] for L in grid.L_grid},
        "tail_ok": {int(L): tail_ok[L] for L in grid.L_grid},
        "monotone_in_L": monotone,
        "slope_top_half": slope,
    }
    return PmiReport(grid=grid, verdict=verdict, tail_values=tail_values,
                     diagnostics=diagnostics)


# ── efficiency and tail diagnostics ─────────────────────────────────


@dataclass(frozen=True)
class EfficiencyReport:
    """Prediction efficiency e+ = E / C+ with the convention e+ = 0
    when the complexity vanishes.  An estimate with E > C+ beyond
    1e-9 is reported with consistent=False, never clamped."""

    excess_entropy: float
    complexity_plus: float
    e_plus: float
    consistent: bool


def efficiency(E, machine) -> EfficiencyReport:
    E_f = float(E)
    C = float(machine.complexity)
    consistent = E_f <= C + 1e-9
    e_plus = 0.0 if C == 0 else E_f / C
    return EfficiencyReport(excess_entropy=E_f, complexity_plus=C,
                            e_plus=e_plus, consistent=consistent)


def geometric_decay_rate(points: Sequence) -> float:
    """Least-squares geometric rate of a positive decaying series:
    fits log v against g and returns exp(slope).  For an order-1 chain
    the MI tail decays at the squared second eigenvalue."""
    pts = [(float(g), float(v)) for g, v in points if float(v) > 0]
    if len(pts) < 2 or len({g for g, _ in pts}) < 2:
        raise ValueError("need at least two positive points to fit a rate")
    gs = [g for g, _ in pts]
    logs = [math.log(v) for _, v in pts]
    slope = float(np.polyfit(gs, logs, 1)[0])
    return math.exp(slope)
