"""Command-line front end: model loading, measure computation,
closed-form table reproduction, CSV/JSON emission.

Models come from a small built-in registry (tm, fib, coin, goldenmean),
from a JSON file, or from an inline JSON string; observed sequences
come from one-line text files.  All output is deterministic for a
fixed invocation, and every command exits nonzero when a violated
invariant is detected downstream.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from .emachine import reconstruct
from .infocore import Alphabet
from .measures import (
    EmpiricalSource,
    efficiency,
    entropy_curve,
    excess_entropy_finite,
    gap_mi_grid,
    pmi_verdict,
)
from .processes import (
    IidProcess,
    IsingChainProcess,
    LogisticSymbolizer,
    MarkovProcess,
    PeriodicProcess,
    SubstitutionProcess,
    closed_forms,
    sample,
)
from .substitution import (
    Substitution,
    factor_frequencies,
    fibonacci,
    shortcut_matrix,
    thue_morse,
    thue_morse_block_entropy_increment,
)

__all__ = [
    "RunConfig",
    "main",
    "cmd_entropy",
    "cmd_pmi",
    "cmd_table1",
    "cmd_substitution",
    "cmd_ising",
    "cmd_sample",
]

#: finite cells of the closed-form table must match the recomputed
#: pipeline within this
TABLE1_TOL = 1e-6

_fmt = "{:.12g}".format


def _exact_str(x) -> str:
    return "" if isinstance(x, float) else str(x)


def _render(x) -> str:
    """Exact value plus float rendering side by side when available."""
    if isinstance(x, float):
        return _fmt(x)
    return f"{x} ({_fmt(float(x))})"


# ── configuration ─────────────────────────────────────────────────────────────


@dataclass
class RunConfig:
    """One parsed invocation; grids are validated ascending here."""

    command: str
    model: Optional[str] = None
    seq: Optional[str] = None
    backend: str = "exact"
    L_max: int = 8
    L_grid: Optional[str] = None
    g_grid: Optional[str] = None
    eps_g: Optional[float] = None
    eps_L: Optional[float] = None
    delta: float = 0.05
    format: str = "table"
    out: Optional[str] = None
    seed: int = 0
    n: int = 1000
    rules: Optional[str] = None
    start: Optional[str] = None
    l: int = 2
    p: Optional[int] = None
    show_shortcut: bool = False
    J: float = 1.0
    h: float = 0.0
    Tmin: float = 0.1
    Tmax: float = 10.0
    points: int = 40

    def __post_init__(self):
        if self.backend not in ("exact", "float"):
            raise ValueError("backend must be 'exact' or 'float'")
        if self.format not in ("csv", "json", "table"):
            raise ValueError("format must be csv, json, or table")
        self.L_grid = _parse_grid(self.L_grid, minimum=1)
        self.g_grid = _parse_grid(self.g_grid, minimum=0)


def _parse_grid(text: Optional[str], minimum: int) -> Optional[Tuple[int, ...]]:
    if text is None or isinstance(text, tuple):
        return text
    values = tuple(int(part) for part in text.split(","))
    if any(v < minimum for v in values):
        raise ValueError(f"grid entries must be >= {minimum}: {text}")
    if any(a >= b for a, b in zip(values, values[1:])):
        raise ValueError(f"grids must be strictly ascending: {text}")
    return values


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    names = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(args).items() if k in names})


# ── model and sequence loading ────────────────────────────────────────────────


def _number(v, exact: bool):
    x = Fraction(str(v))
    return x if exact else float(x)


def _registry_model(name: str, exact: bool):
    if name == "tm":
        return SubstitutionProcess(thue_morse())
    if name == "fib":
        return SubstitutionProcess(fibonacci())
    if name == "coin":
        return IidProcess.from_probs(
            [_number("1/2", exact), _number("1/2", exact)])
    if name == "goldenmean":
        return MarkovProcess.from_rows(
            {"0": (_number("1/2", exact), _number("1/2", exact)),
             "1": (_number(1, exact), _number(0, exact))})
    return None


def _build_model(doc: dict, exact: bool):
    kind = doc.get("kind")
    if kind == "periodic":
        return PeriodicProcess.from_string(doc["cycle"])
    if kind == "markov":
        rows = {ctx: [_number(v, exact) for v in row]
                for ctx, row in doc["rows"].items()}
        alphabet = Alphabet(doc["alphabet"]) if "alphabet" in doc else None
        return MarkovProcess.from_rows(rows, alphabet=alphabet)
    if kind == "iid":
        probs = [_number(v, exact) for v in doc["probs"]]
        alphabet = Alphabet(doc["alphabet"]) if "alphabet" in doc else None
        return IidProcess.from_probs(probs, alphabet=alphabet)
    if kind == "ising":
        if exact:
            raise ValueError("the Ising chain has no rational structure; "
                             "use --backend float")
        return IsingChainProcess(J=float(doc["J"]), h=float(doc["h"]),
                                 beta=float(doc["beta"]))
    if kind == "substitution":
        return SubstitutionProcess(Substitution.from_strings(
            doc["rules"], start=doc["start"]))
    if kind == "logistic":
        if exact:
            raise ValueError("the logistic map has no rational structure; "
                             "use --backend float")
        return LogisticSymbolizer(r=float(doc["r"]),
                                  x0=float(doc.get("x0", 0.4)),
                                  burnin=int(doc.get("burnin", 1000)))
    raise ValueError(f"unknown model kind {kind!r}")


def _load_model(spec: str, backend: str):
    exact = backend == "exact"
    built = _registry_model(spec, exact)
    if built is not None:
        return built
    if spec.lstrip().startswith("{"):
        return _build_model(json.loads(spec), exact)
    path = Path(spec)
    if not path.exists():
        raise ValueError(f"model file not found: {spec}")
    return _build_model(json.loads(path.read_text()), exact)


def _load_sequence(path: str) -> EmpiricalSource:
    text = Path(path).read_text().strip()
    if not text:
        raise ValueError(f"sequence file is empty: {path}")
    if "\n" in text:
        raise ValueError("sequence files hold one line of symbols")
    if "," in text:
        parts = text.split(",")
        alphabet = Alphabet(sorted(set(parts)))
        return EmpiricalSource([alphabet.index(p) for p in parts], alphabet)
    return EmpiricalSource(text)


def _source(cfg: RunConfig):
    if (cfg.model is None) == (cfg.seq is None):
        raise ValueError("give exactly one of --model or --seq")
    if cfg.seq is not None:
        return _load_sequence(cfg.seq)
    return _load_model(cfg.model, cfg.backend)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ── entropy ───────────────────────────────────────────────────────────────────


def cmd_entropy(cfg: RunConfig) -> int:
    curve = entropy_curve(_source(cfg), cfg.L_max)
    if cfg.format == "csv":
        text = curve.to_csv()
    elif cfg.format == "json":
        text = json.dumps(curve.to_json_dict(), indent=2) + "\n"
    else:
        widths = (4, 24, 16, 24, 16)
        header = ("L", "H_exact", "H_bits", "dH_exact", "dH_bits")
        lines = ["".join(name.ljust(w) for name, w in zip(header, widths))]
        for L in range(1, cfg.L_max + 1):
            H, dH = curve.H[L - 1], curve.dH[L - 1]
            cells = (str(L), _exact_str(H), _fmt(float(H)),
                     _exact_str(dH), _fmt(float(dH)))
            lines.append("".join(c.ljust(w) for c, w in zip(cells, widths)))
        lines.append(f"h_hat = {_render(curve.h_hat)}")
        lines.append(f"E_hat = {_render(curve.E_hat)}")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out)
    return 0


# ── pmi ───────────────────────────────────────────────────────────────────────


def cmd_pmi(cfg: RunConfig) -> int:
    L_grid = cfg.L_grid or (1, 2, 3)
    g_grid = cfg.g_grid or (16, 24, 32)
    grid = gap_mi_grid(_source(cfg), L_grid, g_grid)
    report = pmi_verdict(grid, eps_g=cfg.eps_g, eps_L=cfg.eps_L,
                         delta=cfg.delta)
    if cfg.format == "csv":
        text = grid.to_csv()
    elif cfg.format == "json":
        text = json.dumps(report.to_json_dict(), indent=2) + "\n"
    else:
        lines = ["L    g    E_bits"]
        for (L, g), v in sorted(grid.values.items()):
            lines.append(f"{L:<5}{g:<5}{_fmt(float(v))}")
        for (L, g), reason in sorted(grid.missing.items()):
            lines.append(f"{L:<5}{g:<5}missing: {reason}")
        v = report.verdict
        if v.kind == "converged":
            lines.append(f"verdict: converged  PMI = {_fmt(v.value)}"
                         f"  uncertainty = {_fmt(v.uncertainty)}")
        elif v.kind == "diverging":
            slope = report.diagnostics["slope_top_half"]
            lines.append(f"verdict: diverging"
                         f"  ({_fmt(slope)} bits per unit L)")
        else:
            lines.append("verdict: inconclusive")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out)
    return 0


# ── table1 ────────────────────────────────────────────────────────────────────


def _canon_cell(x):
    if x is None:
        return "?"
    if isinstance(x, str):
        return x
    f = float(x)
    return "diverging" if math.isinf(f) else f


def _cell(closed, computed) -> dict:
    p, c = _canon_cell(closed), _canon_cell(computed)
    if isinstance(p, float) and isinstance(c, float):
        return {"closed": p, "computed": c, "diff": abs(p - c)}
    return {"closed": p, "computed": c,
            "diff": "ok" if p == c else "MISMATCH"}


def _pmi_cell(model, L_grid, g_grid):
    report = pmi_verdict(gap_mi_grid(model, L_grid, g_grid))
    v = report.verdict
    return v.value if v.kind == "converged" else v.kind


def _computed_small_memory(model, order: int) -> dict:
    """Pipeline values for models whose memory is a known small order:
    curve increments, the 2H(L) - H(2L) surrogate, reconstruction."""
    R = max(order, 1)
    curve = entropy_curve(model, R + 4)
    E = excess_entropy_finite(model, R + 2)
    machine = reconstruct(model, R, R + 1)
    gaps = (4, 8, 12) if order == 0 else (16, 24, 32)
    return {
        "h_P": curve.dH[-1],
        "E": E,
        "C_P": machine.complexity,
        "PMI": _pmi_cell(model, (R, R + 1, R + 2), gaps),
        "e": efficiency(E, machine).e_plus,
    }


def _computed_periodic(model: PeriodicProcess) -> dict:
    p = model.period
    curve = entropy_curve(model, p + 2)
    E = excess_entropy_finite(model, p)
    machine = reconstruct(model, p, p)
    return {
        "h_P": curve.dH[-1],
        "E": E,
        "C_P": machine.complexity,
        "PMI": _pmi_cell(model, (p, p + 1, p + 2), (p, 2 * p, 3 * p)),
        "e": efficiency(E, machine).e_plus,
    }


def _tm_rate_limit():
    """The exact increments on consecutive plateaus halve; their limit
    is 0.  Returns None when the halving pattern breaks."""
    vals = [float(thue_morse_block_entropy_increment(2 ** k + 2))
            for k in range(2, 9)]
    for a, b in zip(vals, vals[1:]):
        if abs(b / a - 0.5) > 1e-12:
            return None
    return 0.0


def _computed_thue_morse(model: SubstitutionProcess) -> dict:
    surrogates = [float(excess_entropy_finite(model, L))
                  for L in range(2, 10)]
    increments = [b - a for a, b in zip(surrogates, surrogates[1:])]
    E = "diverging" if all(inc >= 0.05 for inc in increments[-4:]) \
        else surrogates[-1]
    counts = [len(reconstruct(model, R, 5).states) for R in (3, 4, 5)]
    C = "diverging" if counts[0] < counts[1] < counts[2] else float(counts[-1])
    return {
        "h_P": _tm_rate_limit(),
        "E": E,
        "C_P": C,
        "PMI": _pmi_cell(model, (3, 5, 7, 9), (2, 4, 8)),
        "e": None,
    }


def _table1_rows(ising_J=1.0, ising_h=0.0, ising_beta=0.5):
    one = Fraction(1)
    rows = [
        ("period-2", PeriodicProcess.from_string("01"), _computed_periodic),
        ("period-3", PeriodicProcess.from_string("011"), _computed_periodic),
        ("period-5", PeriodicProcess.from_string("00111"),
         _computed_periodic),
        ("goldenmean", MarkovProcess.from_rows(
            {"0": (one / 2, one / 2), "1": (one, one * 0)}),
         lambda m: _computed_small_memory(m, 1)),
        ("markov-r2", MarkovProcess.from_rows(
            {"00": (Fraction(4, 5), Fraction(1, 5)),
             "01": (Fraction(3, 10), Fraction(7, 10)),
             "10": (Fraction(3, 5), Fraction(2, 5)),
             "11": (Fraction(1, 4), Fraction(3, 4))}),
         lambda m: _computed_small_memory(m, 2)),
        ("iid-fair", IidProcess.from_probs([one / 2, one / 2]),
         lambda m: _computed_small_memory(m, 0)),
        ("iid-biased", IidProcess.from_probs(
            [Fraction(3, 10), Fraction(7, 10)]),
         lambda m: _computed_small_memory(m, 0)),
        ("thue-morse", SubstitutionProcess(thue_morse()),
         _computed_thue_morse),
        ("ising", IsingChainProcess(J=ising_J, h=ising_h, beta=ising_beta),
         lambda m: _computed_small_memory(m, 1)),
    ]
    out = []
    for label, model, compute in rows:
        cf = closed_forms(model)
        c = compute(model)
        out.append((label, {
            "h_P": _cell(cf.entropy_rate, c["h_P"]),
            "E": _cell(cf.excess_entropy, c["E"]),
            "C_P": _cell(cf.complexity_plus, c["C_P"]),
            "PMI": _cell(cf.pmi, c["PMI"]),
            "e": _cell(cf.efficiency, c["e"]),
        }))
    return out


def cmd_table1(cfg: RunConfig) -> int:
    rows = _table1_rows()
    bad = 0
    for _label, cells in rows:
        for cell in cells.values():
            d = cell["diff"]
            if (isinstance(d, float) and d > TABLE1_TOL) or d == "MISMATCH":
                bad += 1
    if cfg.format == "json":
        text = json.dumps({
            "rows": [{"model": label, "cells": cells}
                     for label, cells in rows],
            "violations": bad,
        }, indent=2) + "\n"
    else:
        widths = (12, 6, 18, 18, 12)
        header = ("model", "qty", "closed", "computed", "|diff|")
        lines = ["".join(h.ljust(w) for h, w in zip(header, widths))]
        for label, cells in rows:
            for qty, cell in cells.items():
                vals = (label, qty,
                        _fmt(cell["closed"])
                        if isinstance(cell["closed"], float)
                        else cell["closed"],
                        _fmt(cell["computed"])
                        if isinstance(cell["computed"], float)
                        else cell["computed"],
                        _fmt(cell["diff"])
                        if isinstance(cell["diff"], float)
                        else cell["diff"])
                lines.append("".join(v.ljust(w)
                                     for v, w in zip(vals, widths)))
        lines.append(f"finite-cell tolerance {TABLE1_TOL:g}; "
                     f"violations: {bad}")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out)
    return 1 if bad else 0


# ── substitution ─────────────────────────────────────────────────────────────


def _load_substitution(cfg: RunConfig) -> Substitution:
    if cfg.rules == "tm":
        return thue_morse()
    if cfg.rules == "fib":
        return fibonacci()
    if cfg.rules and cfg.rules.lstrip().startswith("{"):
        if not cfg.start:
            raise ValueError("inline rules need --start")
        return Substitution.from_strings(json.loads(cfg.rules),
                                         start=cfg.start)
    raise ValueError(f"unknown rules {cfg.rules!r}; use tm, fib, or an "
                     "inline JSON object")


def cmd_substitution(cfg: RunConfig) -> int:
    sub = _load_substitution(cfg)
    table = factor_frequencies(sub, cfg.l)
    dec = sub.alphabet.decode
    items = [(dec(w), table.freq[w]) for w in table.factors]
    if cfg.format == "csv":
        lines = ["factor,freq_exact,freq_float"]
        lines += [f"{name},{_exact_str(p)},{_fmt(float(p))}"
                  for name, p in items]
        text = "\n".join(lines) + "\n"
    elif cfg.format == "json":
        doc = {"length": cfg.l,
               "factors": [{"factor": name, "freq": float(p),
                            "freq_exact": _exact_str(p)}
                           for name, p in items]}
        if cfg.show_shortcut:
            doc["shortcut"] = _shortcut_dict(sub, cfg)
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [f"factors of length {cfg.l} ({len(items)} total):"]
        lines += [f"  {name}  {_render(p)}" for name, p in items]
        if cfg.show_shortcut:
            lines += _shortcut_lines(sub, cfg)
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out)
    return 0


def _shortcut_data(sub: Substitution, cfg: RunConfig):
    if cfg.p is None:
        raise ValueError("--p (the substitution power) is required "
                         "with --show-shortcut")
    return shortcut_matrix(sub, cfg.l, cfg.p)


def _shortcut_lines(sub: Substitution, cfg: RunConfig) -> list:
    data = _shortcut_data(sub, cfg)
    dec = sub.alphabet.decode
    lines = [f"shortcut count matrix (length-{cfg.l} factors x pairs, "
             f"power {data.power}):"]
    pair_names = [dec(w) for w in data.factors_2]
    lines.append("  " + " " * (cfg.l + 2) + "  ".join(pair_names))
    for i, w in enumerate(data.factors_l):
        row = "  ".join(f"{int(v):>2}" for v in data.matrix[i])
        lines.append(f"  {dec(w)}  {row}")
    lines.append("pair frequencies: " + "  ".join(
        f"{name}={p}" for name, p in zip(pair_names, data.v2)))
    lines.append("shortcut frequencies: " + "  ".join(
        f"{dec(w)}={p}" for w, p in zip(data.factors_l, data.v_l)))
    return lines


def _shortcut_dict(sub: Substitution, cfg: RunConfig) -> dict:
    data = _shortcut_data(sub, cfg)
    dec = sub.alphabet.decode
    return {
        "power": data.power,
        "pairs": [dec(w) for w in data.factors_2],
        "pair_freqs": [str(p) for p in data.v2],
        "matrix": [[int(v) for v in row] for row in data.matrix],
        "freqs": [str(p) for p in data.v_l],
    }


# ── ising sweep ───────────────────────────────────────────────────────────────


def cmd_ising(cfg: RunConfig) -> int:
    if cfg.Tmin <= 0 or cfg.Tmax <= cfg.Tmin:
        raise ValueError("need 0 < Tmin < Tmax")
    if cfg.points < 3:
        raise ValueError("need at least 3 temperature points")
    temps = np.geomspace(cfg.Tmin, cfg.Tmax, cfg.points)
    rows = []
    for T in temps:
        cf = closed_forms(IsingChainProcess(J=cfg.J, h=cfg.h, beta=1.0 / T))
        rows.append((float(T), float(cf.entropy_rate),
                     float(cf.excess_entropy), float(cf.complexity_plus)))
    E = [r[2] for r in rows]
    peak = E.index(max(E))
    rising = all(a <= b + 1e-12 for a, b in zip(E[:peak], E[1:peak + 1]))
    falling = all(a >= b - 1e-12 for a, b in zip(E[peak:], E[peak + 1:]))
    probe_T = max(cfg.Tmax, 100.0)
    probe = closed_forms(IsingChainProcess(J=cfg.J, h=cfg.h,
                                           beta=1.0 / probe_T))
    violations = []
    if not (rising and falling):
        violations.append("E(T) is not unimodal")
    if float(probe.excess_entropy) > 1e-3:
        violations.append(
            f"E({_fmt(probe_T)}) = {_fmt(float(probe.excess_entropy))} "
            "exceeds 1e-3 at high temperature")
    if cfg.format == "json":
        text = json.dumps({
            "J": cfg.J, "h": cfg.h,
            "rows": [{"T": t, "h_P": hp, "E": e, "C_P": c, "PMI": 0}
                     for t, hp, e, c in rows],
            "violations": violations,
        }, indent=2) + "\n"
    else:
        lines = ["T,h_P,E,C_P,PMI"]
        lines += [f"{_fmt(t)},{_fmt(hp)},{_fmt(e)},{_fmt(c)},0"
                  for t, hp, e, c in rows]
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out)
    if violations:
        print("error: " + "; ".join(violations), file=sys.stderr)
        return 1
    return 0


# ── sample ────────────────────────────────────────────────────────────────────


def cmd_sample(cfg: RunConfig) -> int:
    if cfg.model is None:
        raise ValueError("sample needs --model")
    if cfg.n < 1:
        raise ValueError("need n >= 1")
    # sampling is a float operation whatever the analysis backend
    model = _load_model(cfg.model, "float")
    arr = sample(model, cfg.n, seed=cfg.seed)
    alphabet = model.alphabet
    labels = [alphabet.symbols[i] for i in arr]
    joiner = "" if all(len(s) == 1 for s in alphabet.symbols) else ","
    _emit(joiner.join(labels) + "\n", cfg.out)
    return 0


# ── parser and entry point ────────────────────────────────────────────────────


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("csv", "json", "table"),
                    default="table")
    sp.add_argument("--out", help="write here instead of standard output")
    sp.add_argument("--backend", choices=("exact", "float"),
                    default="exact")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persistinfo",
        description="Complexity measures of stationary symbolic processes")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("entropy", help="block entropy curve")
    sp.add_argument("--model", help="registry name, JSON file, or inline "
                    "JSON")
    sp.add_argument("--seq", help="one-line symbol sequence file")
    sp.add_argument("--Lmax", dest="L_max", type=int, default=8)
    _add_common(sp)
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("pmi", help="gap mutual-information grid and "
                        "double-limit verdict")
    sp.add_argument("--model")
    sp.add_argument("--seq")
    sp.add_argument("--L-grid", dest="L_grid",
                    help="comma list, e.g. 1,2,3")
    sp.add_argument("--g-grid", dest="g_grid",
                    help="comma list, e.g. 16,24,32")
    sp.add_argument("--eps-g", dest="eps_g", type=float)
    sp.add_argument("--eps-L", dest="eps_L", type=float)
    sp.add_argument("--delta", type=float, default=0.05)
    _add_common(sp)
    sp.set_defaults(func=cmd_pmi)

    sp = sub.add_parser("table1", help="closed forms vs recomputed "
                        "pipeline for the built-in model family")
    _add_common(sp)
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("substitution", help="factor frequencies of a "
                        "substitution fixed point")
    sp.add_argument("--rules", required=True,
                    help="tm, fib, or inline JSON rules")
    sp.add_argument("--start", help="start symbol for inline rules")
    sp.add_argument("--l", type=int, default=2, help="factor length")
    sp.add_argument("--show-shortcut", action="store_true",
                    dest="show_shortcut")
    sp.add_argument("--p", type=int, help="substitution power for the "
                    "shortcut matrix")
    _add_common(sp)
    sp.set_defaults(func=cmd_substitution)

    sp = sub.add_parser("ising", help="temperature sweep of the "
                        "nearest-neighbour chain")
    sp.add_argument("--J", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=0.0)
    sp.add_argument("--Tmin", type=float, default=0.1)
    sp.add_argument("--Tmax", type=float, default=10.0)
    sp.add_argument("--points", type=int, default=40)
    _add_common(sp)
    sp.set_defaults(func=cmd_ising)

    sp = sub.add_parser("sample", help="emit one sequence line from a "
                        "model")
    sp.add_argument("--model", required=True)
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="write here instead of standard output")
    sp.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return args.func(cfg)
    except (ValueError, ArithmeticError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
