"""Causal-state machines: minimal unifilar predictors of a process.

Two histories are causally equivalent when they predict the same
conditional law over futures.  Grouping the positive-probability
length-R histories by their length-F future conditionals yields the
causal states; for processes whose memory fits inside R symbols and
whose states are separated within F symbols this is the minimal
unifilar presentation.  The state entropy is the statistical
complexity C_P, and the mutual information between forward states and
the states of the time-reversed process is the excess entropy E,
giving the decomposition C_P = E + H(S+|S-).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .infocore import (
    Alphabet,
    BlockDistribution,
    Scalar,
    Word,
    entropy_of_probs,
)
from .processes import reversed_model

__all__ = [
    "EpsilonMachine",
    "NonUnifilarError",
    "reconstruct",
    "machine_excess_entropy",
    "complexity_decomposition",
]

#: float-backend identities (row sums, stationarity, C_P = E + H(S+|S-))
#: must hold within this
IDENTITY_TOL = 1e-9


class NonUnifilarError(ValueError):
    """Histories grouped into one state emit a symbol into different
    states; the partition is not a valid machine at these horizons."""


def _add(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return float(a) + float(b)
    return a + b


def _sub(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return float(a) - float(b)
    return a - b


def _tv(p: dict, q: dict) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(float(p.get(k, 0)) - float(q.get(k, 0)))
                     for k in keys)


# ── machine container ─────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class EpsilonMachine:
    """Finite unifilar presentation recovered from history partitions.

    ``states[i]`` is the sorted tuple of length-``history_length``
    histories merged into state ``i``; ``transitions[(i, a)]`` is the
    unique ``(j, P(a | state i))`` edge, with zero-probability edges
    absent.  ``complexity`` is the Shannon entropy of ``state_probs``.
    """

    alphabet: Alphabet
    history_length: int
    future_length: int
    tol: float
    exact: bool
    states: Tuple[Tuple[Word, ...], ...] = field(repr=False)
    state_probs: Tuple
    transitions: Dict = field(repr=False)
    complexity: Scalar
    history_index: Dict = field(repr=False)

    def state_of(self, history) -> int:
        """State index of a history given as a word or label string."""
        if isinstance(history, str):
            history = self.alphabet.encode(history)
        return self.history_index[tuple(history)]

    def block_distribution(self, L: int) -> BlockDistribution:
        """Law of length-L output blocks started from the stationary
        state mixture.  Matches the source process for L up to
        ``future_length``."""
        if L < 1:
            raise ValueError("block length must be >= 1")
        zero = Fraction(0) if self.exact else 0.0
        layer = {(i, ()): p
                 for i, p in enumerate(self.state_probs) if p != 0}
        for _ in range(L):
            new: dict = {}
            for (i, w), p in layer.items():
                for a in range(len(self.alphabet)):
                    edge = self.transitions.get((i, a))
                    if edge is None:
                        continue
                    j, q = edge
                    key = (j, w + (a,))
                    new[key] = new.get(key, zero) + p * q
            layer = new
        probs: dict = {}
        for (_j, w), p in layer.items():
            probs[w] = probs.get(w, zero) + p
        return BlockDistribution(self.alphabet, L, probs)

    def to_json_dict(self) -> dict:
        dec = self.alphabet.decode
        exact_str = (lambda x: "" if isinstance(x, float) else str(x))
        return {
            "alphabet": list(self.alphabet.symbols),
            "history_length": self.history_length,
            "future_length": self.future_length,
            "tol": self.tol,
            "exact": self.exact,
            "states": [[dec(h) for h in hs] for hs in self.states],
            "state_probs": [float(p) for p in self.state_probs],
            "state_probs_exact": [exact_str(p) for p in self.state_probs],
            "complexity": float(self.complexity),
            "complexity_exact": exact_str(self.complexity),
            "transitions": [
                {"from": i, "symbol": self.alphabet.symbols[a],
                 "to": j, "p": float(p), "p_exact": exact_str(p)}
                for (i, a), (j, p) in sorted(self.transitions.items())
            ],
        }

    def to_table(self) -> str:
        """Human-readable transition table, one state block per state."""
        lines = []
        for i, hs in enumerate(self.states):
            names = " ".join(self.alphabet.decode(h) for h in hs)
            lines.append(f"state {i}  P = {self.state_probs[i]}"
                         f"  histories: {names}")
            for a in range(len(self.alphabet)):
                edge = self.transitions.get((i, a))
                if edge is None:
                    continue
                j, p = edge
                lines.append(f"  {self.alphabet.symbols[a]} -> state {j}"
                             f"  p = {p}")
        return "\n".join(lines)


# ── reconstruction ────────────────────────────────────────────────────────────


def reconstruct(model, history_length: int, future_length: int,
                tol: Optional[float] = None) -> EpsilonMachine:
    """Partition length-R histories by their length-F future laws.

    ``tol`` is the total-variation radius within which two future
    conditionals count as equal; defaults to 0 on the exact backend and
    1e-12 on floats.  Raises :class:`NonUnifilarError` when the
    partition admits no deterministic successor map, which signals that
    ``history_length`` or ``future_length`` is too small.
    """
    R, F = history_length, future_length
    if R < 1 or F < 1:
        raise ValueError("need history_length >= 1 and future_length >= 1")
    win = model.block_distribution(R + F)
    if tol is None:
        tol = 0.0 if win.exact else 1e-12
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    alphabet = win.alphabet
    zero = Fraction(0) if win.exact else 0.0

    hist_prob: dict = {}
    cond: dict = {}
    for w, p in win.probs.items():
        if p == 0:
            continue
        d, f = w[:R], w[R:]
        hist_prob[d] = hist_prob.get(d, zero) + p
        table = cond.setdefault(d, {})
        table[f] = table.get(f, zero) + p
    for d, table in cond.items():
        tot = hist_prob[d]
        for f in table:
            table[f] = table[f] / tot

    histories = sorted(hist_prob)
    if tol == 0:
        groups: dict = {}
        for d in histories:
            key = tuple(sorted(cond[d].items()))
            groups.setdefault(key, []).append(d)
        classes = list(groups.values())
    else:
        classes, reps = [], []
        for d in histories:
            for k, rep in enumerate(reps):
                if _tv(cond[d], rep) <= tol:
                    classes[k].append(d)
                    break
            else:
                classes.append([d])
                reps.append(cond[d])
    classes.sort(key=lambda c: c[0])
    states = tuple(tuple(c) for c in classes)
    index = {d: i for i, c in enumerate(classes) for d in c}
    state_probs = tuple(sum((hist_prob[d] for d in c), zero)
                        for c in classes)

    # one-step symbol laws per history, from the future conditionals
    sym_prob: dict = {}
    for d, table in cond.items():
        row = [zero] * len(alphabet)
        for f, p in table.items():
            row[f[0]] = row[f[0]] + p
        sym_prob[d] = row

    transitions: dict = {}
    for i, cls in enumerate(states):
        for a in range(len(alphabet)):
            targets = set()
            num = zero
            for d in cls:
                pa = sym_prob[d][a]
                if pa == 0:
                    continue
                j = index.get(d[1:] + (a,))
                if j is None:
                    raise ArithmeticError(
                        "successor history has zero probability; "
                        "window law is inconsistent")
                targets.add(j)
                num = num + hist_prob[d] * pa
            if not targets:
                continue
            if len(targets) > 1:
                raise NonUnifilarError(
                    f"state {{{' '.join(alphabet.decode(d) for d in cls)}}} "
                    f"emits '{alphabet.symbols[a]}' into states "
                    f"{sorted(targets)}; increase history_length or "
                    f"future_length")
            transitions[(i, a)] = (targets.pop(), num / state_probs[i])

    _validate(states, state_probs, transitions, win.exact)
    return EpsilonMachine(
        alphabet=alphabet,
        history_length=R,
        future_length=F,
        tol=float(tol),
        exact=win.exact,
        states=states,
        state_probs=state_probs,
        transitions=transitions,
        complexity=entropy_of_probs(state_probs),
        history_index=index,
    )


def _validate(states, state_probs, transitions, exact) -> None:
    """Row sums must be 1 and the state law stationary under the edges."""
    zero = Fraction(0) if exact else 0.0
    flow = [zero] * len(states)
    for i in range(len(states)):
        row_sum = sum((p for (k, _a), (_j, p) in transitions.items()
                       if k == i), zero)
        if exact:
            ok = row_sum == 1
        else:
            ok = abs(row_sum - 1.0) <= IDENTITY_TOL
        if not ok:
            raise ArithmeticError(f"state {i} outgoing mass {row_sum}")
    for (i, _a), (j, p) in transitions.items():
        flow[j] = flow[j] + state_probs[i] * p
    for j in range(len(states)):
        if exact:
            ok = flow[j] == state_probs[j]
        else:
            ok = abs(flow[j] - state_probs[j]) <= IDENTITY_TOL
        if not ok:
            raise ArithmeticError("state law is not stationary")


# ── excess entropy from forward and reverse machines ─────────────────────────


def _state_joint(forward: EpsilonMachine, reverse: EpsilonMachine,
                 model) -> dict:
    """Joint law of (forward state of the past, reverse state of the
    future) across one instant, from a window of combined length."""
    Rf, Rr = forward.history_length, reverse.history_length
    win = model.block_distribution(Rf + Rr)
    zero = Fraction(0) if win.exact else 0.0
    joint: dict = {}
    for w, p in win.probs.items():
        if p == 0:
            continue
        i = forward.history_index[w[:Rf]]
        j = reverse.history_index[tuple(reversed(w[Rf:]))]
        joint[(i, j)] = joint.get((i, j), zero) + p
    return joint


def _joint_entropies(joint: dict):
    left: dict = {}
    right: dict = {}
    for (i, j), p in joint.items():
        left[i] = _add(left.get(i, 0), p)
        right[j] = _add(right.get(j, 0), p)
    return (entropy_of_probs(left.values()),
            entropy_of_probs(right.values()),
            entropy_of_probs(joint.values()))


def machine_excess_entropy(m_forward: EpsilonMachine, model) -> Scalar:
    """E = I(forward state; reverse state), the mutual information
    between the causal states on either side of one instant.

    The reverse machine is reconstructed from the time-reversed model
    at the same horizons and tolerance.
    """
    m_rev = reconstruct(reversed_model(model), m_forward.history_length,
                        m_forward.future_length, tol=m_forward.tol)
    h_fwd, h_rev, h_joint = _joint_entropies(
        _state_joint(m_forward, m_rev, model))
    return _sub(_add(h_fwd, h_rev), h_joint)


def complexity_decomposition(forward: EpsilonMachine,
                             reverse: EpsilonMachine, model):
    """Split C_P into (E, H(S+|S-), H(S-|S+)).

    Verifies C_P = E + H(S+|S-) for both reading directions within
    1e-9 against each machine's own state entropy; a violation means
    the machines do not describe the model they were handed.
    """
    h_fwd, h_rev, h_joint = _joint_entropies(
        _state_joint(forward, reverse, model))
    E = _sub(_add(h_fwd, h_rev), h_joint)
    h_fr = _sub(h_joint, h_rev)   # H(S+|S-)
    h_rf = _sub(h_joint, h_fwd)   # H(S-|S+)
    if abs(float(forward.complexity) - float(_add(E, h_fr))) > IDENTITY_TOL:
        raise ArithmeticError("C_P != E + H(S+|S-) for the forward machine")
    if abs(float(reverse.complexity) - float(_add(E, h_rf))) > IDENTITY_TOL:
        raise ArithmeticError("C_P != E + H(S-|S+) for the reverse machine")
    return E, h_fr, h_rf
