"""Stationary symbolic process models with exact block statistics.

Every model exposes the same small surface: the stationary law of
length-L blocks, the joint law of two length-L blocks separated by a
gap of g unseen symbols, closed-form complexity quantities where the
model class has them, and a seeded sampler.  Module-level functions
dispatch to the model methods so callers need not care about the class.

Rational model parameters give exact Fraction distributions end to
end; float parameters (and the Ising chain, whose transfer-matrix
eigendata is irrational) give float distributions.  Enumeration-based
paths refuse window sizes beyond WINDOW_STATE_CAP states; Markov and
i.i.d. models bridge the gap with a transition-matrix power instead of
enumerating it, so the cap there applies only to the two visible
blocks.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Mapping, Optional, Sequence

import numpy as np

from ._ratlinalg import stationary_from_transitions
from .infocore import (
    Alphabet,
    BlockDistribution,
    JointBlockDistribution,
    Word,
    marginalize_gap,
    shannon_entropy,
)
from .substitution import Substitution, factor_frequencies, fixed_point_prefix

__all__ = [
    "WINDOW_STATE_CAP",
    "WindowCapError",
    "ClosedFormUnavailable",
    "ClosedForms",
    "PeriodicProcess",
    "MarkovProcess",
    "IidProcess",
    "IsingChainProcess",
    "LogisticSymbolizer",
    "SubstitutionProcess",
    "block_distribution",
    "joint_gap_distribution",
    "closed_forms",
    "sample",
    "reversed_model",
    "ising_entropy_rate",
]

# Enumerated window states (alphabet size ** window length) above this
# are refused rather than attempted.
WINDOW_STATE_CAP = 1 << 26


class WindowCapError(ValueError):
    """Requested window needs more enumerated states than the cap."""


class ClosedFormUnavailable(ValueError):
    """The model class has no exact expression for the request."""


def _check_cap(s: int, window_length: int) -> None:
    if s ** window_length > WINDOW_STATE_CAP:
        raise WindowCapError(
            f"window of length {window_length} over {s} symbols needs"
            f" {s}**{window_length} states; cap is 2**26")


@dataclass(frozen=True)
class ClosedForms:
    """Closed-form complexity quantities of a model class.

    entropy_rate, excess_entropy, complexity_plus/minus and pmi are in
    bits (Fraction/ExactBits for exact models, float otherwise,
    math.inf where the quantity diverges).  efficiency is the ratio
    excess_entropy / complexity_plus with the conventions e = 0 when
    the complexity vanishes and e = None where no finite ratio exists.
    """

    entropy_rate: object
    excess_entropy: object
    complexity_plus: object
    complexity_minus: object
    pmi: object
    efficiency: object


# ── periodic ────────────────────────────────────────────────────────


@dataclass(frozen=True)
class PeriodicProcess:
    """Uniformly random phase on a fixed cycle whose rotations are all
    distinct (so the stated period is the true one)."""

    alphabet: Alphabet
    cycle: Word

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(self.cycle))
        p = len(self.cycle)
        if p < 1:
            raise ValueError("cycle must be nonempty")
        s = len(self.alphabet)
        if any(not (0 <= a < s) for a in self.cycle):
            raise ValueError("cycle uses a symbol outside the alphabet")
        rotations = {self.cycle[t:] + self.cycle[:t] for t in range(p)}
        if len(rotations) != p:
            raise ValueError(f"cycle of length {p} has a smaller period")

    @classmethod
    def from_string(cls, cycle: str,
                    alphabet: Optional[Alphabet] = None) -> "PeriodicProcess":
        if alphabet is None:
            alphabet = Alphabet(sorted(set(cycle)))
        return cls(alphabet, alphabet.encode(cycle))

    @property
    def period(self) -> int:
        return len(self.cycle)

    @property
    def exact(self) -> bool:
        return True

    def _window(self, phase: int, n: int) -> Word:
        p = self.period
        return tuple(self.cycle[(phase + i) % p] for i in range(n))

    def block_distribution(self, L: int) -> BlockDistribution:
        if L < 1:
            raise ValueError("block length must be >= 1")
        probs: dict = {}
        w = Fraction(1, self.period)
        for t in range(self.period):
            word = self._window(t, L)
            probs[word] = probs.get(word, 0) + w
        return BlockDistribution(self.alphabet, L, probs)

    def joint_gap_distribution(self, L: int, g: int) -> JointBlockDistribution:
        if L < 1 or g < 0:
            raise ValueError("need L >= 1 and g >= 0")
        probs: dict = {}
        w = Fraction(1, self.period)
        for t in range(self.period):
            window = self._window(t, 2 * L + g)
            key = (window[:L], window[L + g:])
            probs[key] = probs.get(key, 0) + w
        return JointBlockDistribution(self.alphabet, L, g, L, probs)

    def closed_forms(self) -> ClosedForms:
        H = shannon_entropy(self.block_distribution(self.period))
        e = Fraction(1) if self.period > 1 else Fraction(0)
        return ClosedForms(entropy_rate=Fraction(0), excess_entropy=H,
                           complexity_plus=H, complexity_minus=H,
                           pmi=H, efficiency=e)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        phase = int(rng.integers(self.period))
        idx = (phase + np.arange(n)) % self.period
        return np.asarray(self.cycle, dtype=np.int64)[idx]

    def reversed(self) -> "PeriodicProcess":
        return PeriodicProcess(self.alphabet, self.cycle[::-1])


# ── order-R Markov ──────────────────────────────────────────────────


def _as_weight(x):
    if isinstance(x, bool):
        raise ValueError("probabilities must be numbers, not bools")
    if isinstance(x, Rational):
        return Fraction(x)
    return float(x)


def _frac_matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def _frac_matpow(T, g: int):
    n = len(T)
    result = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    base = [list(row) for row in T]
    while g:
        if g & 1:
            result = _frac_matmul(result, base)
        base = _frac_matmul(base, base)
        g >>= 1
    return result


def _float_stationary(T: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eig(T.T)
    k = int(np.argmin(np.abs(vals - 1.0)))
    v = np.real(vecs[:, k])
    v = v / v.sum()
    if (v < -1e-10).any() or np.abs(T.T @ v - v).max() > 1e-10:
        # power iteration fallback for defective eigen output
        v = np.full(len(T), 1.0 / len(T))
        for _ in range(100_000):
            nxt = v @ T
            nxt /= nxt.sum()
            if np.abs(nxt - v).max() <= 1e-14:
                break
            v = nxt
        v = nxt
    v = np.clip(v, 0.0, None)
    return v / v.sum()


class MarkovProcess:
    """Order-R Markov chain given by one probability row per length-R
    context; order 0 degenerates to an i.i.d. source.

    The stationary law is solved on the context chain (exactly for
    rational rows); builders that already know it may pass
    ``stationary`` aligned with the lexicographic context order, which
    is then verified rather than re-solved.
    """

    __slots__ = ("alphabet", "order", "kernel", "exact", "stationary",
                 "contexts", "_cindex", "_T")

    def __init__(self, alphabet: Alphabet, order: int,
                 kernel: Mapping[Word, Sequence],
                 stationary: Optional[Sequence] = None):
        s = len(alphabet)
        if order < 0:
            raise ValueError("order must be >= 0")
        contexts = tuple(product(range(s), repeat=order))
        rows = {}
        for c in contexts:
            if c not in kernel:
                raise ValueError(f"kernel is missing context {c}")
            row = tuple(_as_weight(x) for x in kernel[c])
            if len(row) != s:
                raise ValueError(f"row for context {c} has wrong length")
            if any(x < 0 for x in row):
                raise ValueError(f"row for context {c} has negative entries")
            rows[c] = row
        if len(kernel) != len(contexts):
            raise ValueError("kernel has rows for unknown contexts")
        exact = all(isinstance(x, Fraction) for row in rows.values()
                    for x in row)
        if not exact:
            rows = {c: tuple(float(x) for x in row) for c, row in rows.items()}
        for c, row in rows.items():
            total = sum(row)
            ok = (total == 1) if exact else abs(total - 1.0) <= 1e-9
            if not ok:
                raise ValueError(f"row for context {c} sums to {total}, not 1")

        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "kernel", rows)
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "contexts", contexts)
        object.__setattr__(self, "_cindex",
                           {c: i for i, c in enumerate(contexts)})

        m = len(contexts)
        if exact:
            T = [[Fraction(0)] * m for _ in range(m)]
        else:
            T = np.zeros((m, m))
        for ci, c in enumerate(contexts):
            for a, p in enumerate(rows[c]):
                if p == 0:
                    continue
                cj = self._cindex[(c + (a,))[-order:] if order else ()]
                T[ci][cj] += p
        object.__setattr__(self, "_T", T)

        if stationary is not None:
            pi = tuple(_as_weight(x) for x in stationary)
            if len(pi) != m:
                raise ValueError("stationary vector has wrong length")
            flow = [sum(pi[i] * T[i][j] for i in range(m)) for j in range(m)]
            drift = max(abs(flow[j] - pi[j]) for j in range(m))
            if (drift != 0) if exact else (float(drift) > 1e-9):
                raise ValueError("supplied stationary vector is not stationary")
        elif exact:
            pi = stationary_from_transitions(T)
        else:
            pi = tuple(float(x) for x in _float_stationary(T))
        object.__setattr__(self, "stationary", pi)

    def __setattr__(self, name, value):
        raise AttributeError("MarkovProcess is immutable")

    @classmethod
    def from_rows(cls, rows: Mapping[str, Sequence],
                  alphabet: Optional[Alphabet] = None) -> "MarkovProcess":
        """Rows keyed by context strings, e.g. {"0": (.9, .1), "1": (.2, .8)}."""
        orders = {len(k) for k in rows}
        if len(orders) != 1:
            raise ValueError("context strings must share one length")
        order = orders.pop()
        widths = {len(v) for v in rows.values()}
        if len(widths) != 1:
            raise ValueError("rows must share one length")
        if alphabet is None:
            alphabet = Alphabet(str(i) for i in range(widths.pop()))
        kernel = {alphabet.encode(k): v for k, v in rows.items()}
        return cls(alphabet, order, kernel)

    # context-chain helpers -------------------------------------------------

    def _one(self):
        return Fraction(1) if self.exact else 1.0

    def _gap_matrix(self, g: int):
        if self.exact:
            return _frac_matpow(self._T, g)
        return np.linalg.matrix_power(self._T, g)

    def _extend(self, start: Mapping[Word, object], steps: int) -> dict:
        """Push a dict of weighted words forward ``steps`` symbols.

        Keys must already be at least ``order`` long so the context is
        the word suffix.  Zero-probability branches are never created.
        """
        layer = dict(start)
        R = self.order
        for _ in range(steps):
            new: dict = {}
            for w, p in layer.items():
                row = self.kernel[w[-R:] if R else ()]
                for a, pa in enumerate(row):
                    if pa == 0:
                        continue
                    key = w + (a,)
                    q = p * pa
                    new[key] = new.get(key, 0) + q
            layer = new
        return layer

    def _context_distribution(self) -> dict:
        return {c: p for c, p in zip(self.contexts, self.stationary) if p != 0}

    # public surface ---------------------------------------------------------

    def block_distribution(self, L: int) -> BlockDistribution:
        if L < 1:
            raise ValueError("block length must be >= 1")
        _check_cap(len(self.alphabet), L)
        R = self.order
        if R and L <= R:
            ctx = BlockDistribution(self.alphabet, R,
                                    self._context_distribution())
            return ctx.restrict(R - L, R)
        words = self._extend(self._context_distribution() if R else {(): self._one()},
                             L - R)
        return BlockDistribution(self.alphabet, L, words)

    def joint_gap_distribution(self, L: int, g: int) -> JointBlockDistribution:
        if L < 1 or g < 0:
            raise ValueError("need L >= 1 and g >= 0")
        # the gap is bridged by a matrix power, so only the two visible
        # blocks are enumerated
        _check_cap(len(self.alphabet), 2 * L)
        R = self.order
        s = len(self.alphabet)
        Tg = self._gap_matrix(g)

        # left block together with the context active at its right edge
        left: dict = {}
        if L >= R:
            for w, p in self.block_distribution(L).probs.items():
                left[(w, w[L - R:] if R else ())] = p
        else:
            for c, p in self._context_distribution().items():
                key = (c[R - L:], c)
                left[key] = left.get(key, 0) + p

        # right block conditioned on the context at its left edge
        ext: dict = {}
        for c in self.contexts:
            grown = self._extend({c: self._one()}, L)
            ext[c] = {w[R:]: p for w, p in grown.items()}

        probs: dict = {}
        for (a, c), p in left.items():
            ci = self._cindex[c]
            for cj, c2 in enumerate(self.contexts):
                bridge = Tg[ci][cj]
                if bridge == 0:
                    continue
                pa = p * bridge
                for b, q in ext[c2].items():
                    key = (a, b)
                    probs[key] = probs.get(key, 0) + pa * q
        return JointBlockDistribution(self.alphabet, L, g, L, probs)

    def closed_forms(self) -> ClosedForms:
        R = self.order
        H1 = shannon_entropy(self.block_distribution(1))
        if R == 0:
            return ClosedForms(entropy_rate=H1, excess_entropy=Fraction(0),
                               complexity_plus=Fraction(0),
                               complexity_minus=Fraction(0),
                               pmi=Fraction(0), efficiency=Fraction(0))
        HR = shannon_entropy(self.block_distribution(R))
        HR1 = shannon_entropy(self.block_distribution(R + 1))
        h = HR1 - HR
        E = HR - h * R
        if float(HR) == 0.0:
            eff = Fraction(0)
        else:
            eff = 1.0 - R * float(h) / float(HR)
        return ClosedForms(entropy_rate=h, excess_entropy=E,
                           complexity_plus=HR, complexity_minus=HR,
                           pmi=Fraction(0), efficiency=eff)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        s = len(self.alphabet)
        R = self.order
        cum_rows = [list(np.cumsum([float(x) for x in self.kernel[c]]))
                    for c in self.contexts]
        cum_pi = list(np.cumsum([float(x) for x in self.stationary]))
        ci = bisect_right(cum_pi, float(rng.random()))
        ci = min(ci, len(self.contexts) - 1)
        u = rng.random(n)
        out = np.empty(n, dtype=np.int64)
        mod = s ** R if R else 1
        for t in range(n):
            a = bisect_right(cum_rows[ci], u[t])
            a = min(a, s - 1)
            out[t] = a
            if R:
                ci = (ci * s + a) % mod
        return out

    def reversed(self) -> "MarkovProcess":
        """Time reversal: an order-R chain whose kernel is the Bayes
        inversion P(a | d) = P(a, reversed(d)) / P(reversed(d)).

        Contexts never visited forward get a uniform placeholder row;
        the reversed stationary law puts no mass there, and it is
        passed through explicitly because the placeholder rows would
        otherwise make the stationary solve ambiguous.
        """
        R = self.order
        if R == 0:
            return self
        s = len(self.alphabet)
        blocks_R = self.block_distribution(R)
        blocks_R1 = self.block_distribution(R + 1)
        uniform = tuple(
            Fraction(1, s) if self.exact else 1.0 / s for _ in range(s))
        kernel: dict = {}
        pi_rev = []
        for d in product(range(s), repeat=R):
            fwd = tuple(reversed(d))
            pd = blocks_R.prob(fwd)
            pi_rev.append(pd)
            if pd == 0:
                kernel[d] = uniform
            else:
                kernel[d] = tuple(blocks_R1.prob((a,) + fwd) / pd
                                  for a in range(s))
        return MarkovProcess(self.alphabet, R, kernel, stationary=pi_rev)

    def __repr__(self):
        return (f"MarkovProcess(order={self.order}, "
                f"alphabet={''.join(self.alphabet.symbols)!r}, "
                f"{'exact' if self.exact else 'float'})")


# ── i.i.d. ──────────────────────────────────────────────────────────


class IidProcess(MarkovProcess):
    """Independent symbols with a fixed marginal; order-0 Markov chain
    with the product-law shortcuts made explicit."""

    __slots__ = ("probs",)

    def __init__(self, alphabet: Alphabet, probs: Sequence):
        super().__init__(alphabet, 0, {(): probs})
        object.__setattr__(self, "probs", self.kernel[()])

    @classmethod
    def from_probs(cls, probs: Sequence,
                   alphabet: Optional[Alphabet] = None) -> "IidProcess":
        if alphabet is None:
            alphabet = Alphabet(str(i) for i in range(len(probs)))
        return cls(alphabet, probs)

    def joint_gap_distribution(self, L: int, g: int) -> JointBlockDistribution:
        if L < 1 or g < 0:
            raise ValueError("need L >= 1 and g >= 0")
        _check_cap(len(self.alphabet), 2 * L)
        block = self.block_distribution(L)
        probs = {(a, b): pa * pb
                 for a, pa in block.probs.items()
                 for b, pb in block.probs.items()}
        return JointBlockDistribution(self.alphabet, L, g, L, probs)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        p = np.array([float(x) for x in self.probs])
        return rng.choice(len(p), size=n, p=p / p.sum()).astype(np.int64)

    def reversed(self) -> "IidProcess":
        return self


# ── one-dimensional Ising chain ─────────────────────────────────────


def _ising_lambda1(J: float, h: float, beta: float):
    a = math.exp(beta * J) * math.cosh(beta * h)
    disc = math.exp(2 * beta * J) * math.sinh(beta * h) ** 2 \
        + math.exp(-2 * beta * J)
    return a + math.sqrt(disc)


def _ising_dlambda1(J: float, h: float, beta: float):
    a = math.exp(beta * J) * math.cosh(beta * h)
    da = J * a + h * math.exp(beta * J) * math.sinh(beta * h)
    disc = math.exp(2 * beta * J) * math.sinh(beta * h) ** 2 \
        + math.exp(-2 * beta * J)
    ddisc = (2 * J * math.exp(2 * beta * J) * math.sinh(beta * h) ** 2
             + 2 * h * math.exp(2 * beta * J) * math.sinh(beta * h)
             * math.cosh(beta * h)
             - 2 * J * math.exp(-2 * beta * J))
    return da + ddisc / (2 * math.sqrt(disc))


def ising_entropy_rate(J: float, h: float, beta: float) -> float:
    """Entropy rate (bits per spin) of the nearest-neighbour Ising
    chain: [ln lambda_1 - (beta / lambda_1) d(lambda_1)/d(beta)] in
    nats, from the analytic derivative of the transfer-matrix
    eigenvalue."""
    if not (beta > 0) or not math.isfinite(beta):
        raise ValueError("beta must be positive and finite")
    lam = _ising_lambda1(J, h, beta)
    nats = math.log(lam) - (beta / lam) * _ising_dlambda1(J, h, beta)
    return nats / math.log(2)


@dataclass(frozen=True)
class IsingChainProcess:
    """Spin chain with energy -J s s' - h s per bond/site, presented as
    a binary symbol process (spin -1 is symbol 0, spin +1 is symbol 1).

    The symmetric transfer matrix V(s, s') = exp(beta (J s s' +
    h (s + s')/2)) induces an order-1 Markov chain P(s'|s) =
    V(s, s') r(s') / (lambda_1 r(s)) with stationary law r(s)^2, which
    carries all block statistics.
    """

    J: float
    h: float
    beta: float

    def __post_init__(self):
        if not (self.beta > 0) or not math.isfinite(self.beta):
            raise ValueError("beta must be positive and finite")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(("-1", "+1"))

    @property
    def exact(self) -> bool:
        return False

    def transfer_matrix(self) -> np.ndarray:
        b, J, h = self.beta, self.J, self.h
        spins = (-1.0, 1.0)
        return np.array([[math.exp(b * (J * s * t + h * (s + t) / 2))
                          for t in spins] for s in spins])

    @property
    def lambda1(self) -> float:
        return _ising_lambda1(self.J, self.h, self.beta)

    @property
    def dlambda1_dbeta(self) -> float:
        return _ising_dlambda1(self.J, self.h, self.beta)

    def as_markov(self) -> MarkovProcess:
        V = self.transfer_matrix()
        vals, vecs = np.linalg.eigh(V)
        r = vecs[:, -1]
        if r[0] < 0:
            r = -r
        lam = float(vals[-1])
        kernel = {(i,): tuple(V[i, j] * r[j] / (lam * r[i]) for j in range(2))
                  for i in range(2)}
        pi = r ** 2 / (r ** 2).sum()
        return MarkovProcess(self.alphabet, 1, kernel, stationary=tuple(pi))

    def block_distribution(self, L: int) -> BlockDistribution:
        return self.as_markov().block_distribution(L)

    def joint_gap_distribution(self, L: int, g: int) -> JointBlockDistribution:
        return self.as_markov().joint_gap_distribution(L, g)

    def closed_forms(self) -> ClosedForms:
        h_rate = ising_entropy_rate(self.J, self.h, self.beta)
        H1 = float(shannon_entropy(self.block_distribution(1)))
        eff = 1.0 - h_rate / H1 if H1 > 0 else Fraction(0)
        return ClosedForms(entropy_rate=h_rate, excess_entropy=H1 - h_rate,
                           complexity_plus=H1, complexity_minus=H1,
                           pmi=Fraction(0), efficiency=eff)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return self.as_markov().sample(n, rng)

    def reversed(self) -> "IsingChainProcess":
        # V is symmetric, so the chain satisfies detailed balance
        return self


# ── symbolized logistic map ─────────────────────────────────────────


@dataclass(frozen=True)
class LogisticSymbolizer:
    """Threshold observation of x -> r x (1 - x): symbol 0 when
    x <= 1/2, else 1, after a deterministic burn-in.

    Purely deterministic given (r, x0); the sampler ignores its seed.
    No exact distributions are available.
    """

    r: float
    x0: float
    burnin: int = 1000

    def __post_init__(self):
        if not (0 <= self.r <= 4):
            raise ValueError("r must lie in [0, 4]")
        if not (0 <= self.x0 <= 1):
            raise ValueError("x0 must lie in [0, 1]")
        if self.burnin < 0:
            raise ValueError("burn-in must be >= 0")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet("01")

    @property
    def exact(self) -> bool:
        return False

    def block_distribution(self, L: int) -> BlockDistribution:
        raise ClosedFormUnavailable(
            "logistic symbol sequences have no exact block law; sample"
            " and use the empirical estimators")

    def joint_gap_distribution(self, L: int, g: int) -> JointBlockDistribution:
        raise ClosedFormUnavailable(
            "logistic symbol sequences have no exact joint law")

    def closed_forms(self) -> ClosedForms:
        raise ClosedFormUnavailable(
            "no closed-form complexity quantities for the logistic map")

    def sample(self, n: int, rng=None) -> np.ndarray:
        x = self.x0
        r = self.r
        for _ in range(self.burnin):
            x = r * x * (1 - x)
        out = np.empty(n, dtype=np.int64)
        for t in range(n):
            out[t] = 0 if x <= 0.5 else 1
            x = r * x * (1 - x)
        return out

    def reversed(self):
        raise ClosedFormUnavailable("logistic symbolization is not reversible")


# ── substitution fixed points ───────────────────────────────────────


_PARITY_RULES = ((0, 1), (1, 0))


@dataclass(frozen=True)
class SubstitutionProcess:
    """Uniquely ergodic process of a primitive substitution fixed
    point; block laws are the exact factor frequencies."""

    substitution: Substitution

    @property
    def alphabet(self) -> Alphabet:
        return self.substitution.alphabet

    @property
    def exact(self) -> bool:
        return True

    def block_distribution(self, L: int) -> BlockDistribution:
        if L < 1:
            raise ValueError("block length must be >= 1")
        _check_cap(len(self.alphabet), L)
        return factor_frequencies(self.substitution, L).as_distribution(
            self.alphabet)

    def joint_gap_distribution(self, L: int, g: int) -> JointBlockDistribution:
        if L < 1 or g < 0:
            raise ValueError("need L >= 1 and g >= 0")
        _check_cap(len(self.alphabet), 2 * L + g)
        window = self.block_distribution(2 * L + g)
        return marginalize_gap(window, L, g)

    def closed_forms(self) -> ClosedForms:
        """Only the parity (Thue-Morse) fixed point has tabulated
        values: zero entropy rate with diverging E, C and PMI; the
        efficiency of an infinite/infinite ratio is left undefined."""
        if len(self.alphabet) == 2 and self.substitution.rules == _PARITY_RULES \
                and self.substitution.start == 0:
            return ClosedForms(entropy_rate=Fraction(0),
                               excess_entropy=math.inf,
                               complexity_plus=math.inf,
                               complexity_minus=math.inf,
                               pmi=math.inf, efficiency=None)
        raise ClosedFormUnavailable(
            "no tabulated closed forms for this substitution")

    def sample(self, n: int, rng=None) -> np.ndarray:
        """The fixed-point prefix itself (deterministic); its sliding
        statistics converge to the block law by unique ergodicity."""
        return np.asarray(fixed_point_prefix(self.substitution, n),
                          dtype=np.int64)

    def reversed(self):
        raise ClosedFormUnavailable(
            "time reversal of a one-sided fixed point is not provided")


# ── dispatch ────────────────────────────────────────────────────────


def block_distribution(model, L: int) -> BlockDistribution:
    """Exact stationary law of length-L blocks."""
    return model.block_distribution(L)


def joint_gap_distribution(model, L: int, g: int) -> JointBlockDistribution:
    """Exact joint law of two length-L blocks separated by g symbols."""
    return model.joint_gap_distribution(L, g)


def closed_forms(model) -> ClosedForms:
    """Tabulated complexity quantities of the model class."""
    return model.closed_forms()


def sample(model, n: int, seed: int = 0) -> np.ndarray:
    """Length-n symbol sample, stationary at fixed seed where the model
    class allows a stationary start."""
    if n < 1:
        raise ValueError("sample length must be >= 1")
    rng = np.random.default_rng(seed)
    return model.sample(n, rng)


def reversed_model(model):
    """The time-reversed process as a model of the same family."""
    return model.reversed()
