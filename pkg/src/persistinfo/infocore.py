"""Alphabets, words, block distributions, and entropy/MI primitives.

Everything downstream (process models, substitution systems, complexity
measures, causal-state machines) consumes the types defined here.

Conventions
───────────
  * Words are tuples of symbol indices into an :class:`Alphabet`; the
    packed index tuple is the canonical dictionary key, so iteration
    order is reproducible after sorting.
  * All entropies are in bits (base-2 logarithms).
  * 0·log 0 = 0 is enforced structurally: zero-probability entries are
    skipped, absent words mean probability zero.
  * Two probability backends coexist.  Exact distributions carry
    :class:`fractions.Fraction` values and never round.  Float
    distributions carry doubles and track no error bounds.
  * Exact entropies are represented symbolically as
    a + Σ_p c_p·log₂(p) over odd primes p (:class:`ExactBits`) whenever
    every probability factors over small primes; log₂ of distinct
    primes are linearly independent over ℚ, so structural equality of
    the representation is equality of the value.  Distributions whose
    rationals do not factor cheaply fall back to float entropies
    computed from the exact probabilities.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

__all__ = [
    "Alphabet",
    "Word",
    "ExactBits",
    "Scalar",
    "BlockDistribution",
    "JointBlockDistribution",
    "log2_of",
    "shannon_entropy",
    "entropy_of_probs",
    "mutual_information",
    "marginalize_gap",
    "empirical_block_distribution",
]

Word = tuple  # tuple[int, ...]; alias documents intent

#: trial-division bound: exact symbolic entropies require all probability
#: numerators/denominators to factor completely over primes below this
SMOOTH_FACTOR_BOUND = 10_000

#: float distributions must sum to 1 within this
FLOAT_SUM_TOL = 1e-12


# ── Alphabet ──────────────────────────────────────────────────────────────────


class Alphabet:
    """Ordered finite set of distinct symbol labels.

    The index ↔ label bijection is fixed at construction and stable for
    the lifetime of the object.  Size 1 is permitted (degenerate but
    valid); size ≥ 2 is the nontrivial case.
    """

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[str]):
        self.symbols = tuple(str(s) for s in symbols)
        if len(self.symbols) == 0:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet labels must be distinct")
        self._index = {s: i for i, s in enumerate(self.symbols)}

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.symbols)!r})"

    def index(self, label: str) -> int:
        return self._index[label]

    def encode(self, text: Union[str, Iterable[str]]) -> Word:
        """Map a label sequence to a word of indices.

        Strings are read per character; any other iterable is read per
        element (for multi-character labels).
        """
        return tuple(self._index[c] for c in text)

    def decode(self, word: Sequence[int]) -> str:
        """Render a word as text; comma-joined if labels are not all
        single characters."""
        labels = [self.symbols[i] for i in word]
        if all(len(s) == 1 for s in self.symbols):
            return "".join(labels)
        return ",".join(labels)


#: the workhorse binary alphabet
BINARY = Alphabet("01")


# ── Exact symbolic bit values ─────────────────────────────────────────────────


def _factor_smooth(n: int, bound: int = SMOOTH_FACTOR_BOUND) -> dict:
    """Factor n ≥ 1 by trial division; raise if a cofactor above the
    bound survives (the value is then not smooth enough for symbolic
    entropy and the caller falls back to float)."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    for p in range(2, bound):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        if n >= bound * bound:
            raise _NotSmooth(n)
        out[n] = out.get(n, 0) + 1
    return out


class _NotSmooth(Exception):
    pass


class ExactBits:
    """Exact value in bits: ``rational + Σ coeff·log₂(prime)``.

    ``logs`` maps odd primes to rational coefficients (the prime 2 is
    folded into the rational part since log₂2 = 1).  Zero coefficients
    are dropped, so ``==`` is value equality.  Supports +, −, scaling
    by rationals, division by rationals, and float conversion.
    Immutable and hashable.
    """

    __slots__ = ("rational", "logs")

    def __init__(self, rational, logs: Mapping[int, Fraction] | tuple = ()):
        object.__setattr__(self, "rational", Fraction(rational))
        items = logs if isinstance(logs, tuple) else tuple(dict(logs).items())
        clean = tuple(
            sorted((int(p), Fraction(c)) for p, c in items if c != 0)
        )
        for p, _ in clean:
            if p < 3 or p % 2 == 0:
                raise ValueError("log coefficients must be on odd primes")
        object.__setattr__(self, "logs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExactBits is immutable")

    # arithmetic ──────────────────────────────────────────────────────

    def _combine(self, other: "ExactBits", sign: int) -> "ExactBits":
        coeffs = dict(self.logs)
        for p, c in other.logs:
            coeffs[p] = coeffs.get(p, Fraction(0)) + sign * c
        return ExactBits(self.rational + sign * other.rational, coeffs)

    def __add__(self, other):
        other = _as_exact(other)
        if other is NotImplemented:
            return NotImplemented
        return self._combine(other, +1)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_exact(other)
        if other is NotImplemented:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = _as_exact(other)
        if other is NotImplemented:
            return NotImplemented
        return other._combine(self, -1)

    def __neg__(self) -> "ExactBits":
        return ExactBits(-self.rational, {p: -c for p, c in self.logs})

    def __mul__(self, factor):
        if not isinstance(factor, Rational):
            return NotImplemented
        factor = Fraction(factor)
        return ExactBits(
            self.rational * factor, {p: c * factor for p, c in self.logs}
        )

    __rmul__ = __mul__

    def __truediv__(self, factor):
        if not isinstance(factor, Rational):
            return NotImplemented
        return self * (Fraction(1) / Fraction(factor))

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactBits):
            return self.rational == other.rational and self.logs == other.logs
        if isinstance(other, Rational):
            return not self.logs and self.rational == Fraction(other)
        return NotImplemented

    def __hash__(self) -> int:
        if not self.logs:
            return hash(self.rational)
        return hash((self.rational, self.logs))

    def __float__(self) -> float:
        return float(self.rational) + sum(
            float(c) * math.log2(p) for p, c in self.logs
        )

    # views ───────────────────────────────────────────────────────────

    @property
    def is_rational(self) -> bool:
        return not self.logs

    def as_log3_pair(self) -> tuple:
        """Return (a, b) with value a + b·log₂3; error if any other
        prime carries a nonzero coefficient."""
        extra = [p for p, _ in self.logs if p != 3]
        if extra:
            raise ValueError(f"value involves log2 of primes {extra}")
        b = dict(self.logs).get(3, Fraction(0))
        return (self.rational, b)

    def __repr__(self) -> str:
        return f"ExactBits({self!s})"

    def __str__(self) -> str:
        parts = [] if (self.rational == 0 and self.logs) else [str(self.rational)]
        for p, c in self.logs:
            if c == 1:
                parts.append(f"log2({p})")
            else:
                parts.append(f"{c}*log2({p})")
        return " + ".join(parts) if parts else "0"


def _as_exact(x) -> "ExactBits":
    if isinstance(x, ExactBits):
        return x
    if isinstance(x, Rational):
        return ExactBits(Fraction(x))
    return NotImplemented


def log2_of(q) -> ExactBits:
    """Exact log₂ of a positive rational as an :class:`ExactBits`.

    Requires numerator and denominator to be smooth (see
    SMOOTH_FACTOR_BOUND); raises ValueError otherwise.
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log2 of a nonpositive rational")
    try:
        num = _factor_smooth(q.numerator)
        den = _factor_smooth(q.denominator)
    except _NotSmooth as exc:
        raise ValueError(
            f"rational too rough for symbolic log2 (cofactor {exc})"
        ) from None
    rational = Fraction(num.pop(2, 0) - den.pop(2, 0))
    coeffs: dict[int, Fraction] = {p: Fraction(e) for p, e in num.items()}
    for p, e in den.items():
        coeffs[p] = coeffs.get(p, Fraction(0)) - e
    return ExactBits(rational, coeffs)


Scalar = Union[ExactBits, Fraction, float]


# ── Distributions ─────────────────────────────────────────────────────────────


def _is_exact_probs(values) -> bool:
    return all(isinstance(v, Rational) and not isinstance(v, float)
               for v in values)


def _validate_probs(probs, exact: bool) -> None:
    total = sum(probs.values())
    if exact:
        if any(p < 0 for p in probs.values()):
            raise ValueError("negative probability")
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
    else:
        if any(p < -FLOAT_SUM_TOL for p in probs.values()):
            raise ValueError("negative probability")
        if abs(total - 1.0) > FLOAT_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")


class BlockDistribution:
    """Probability table over fixed-length words.

    ``probs`` maps index words (tuples) to probabilities; absent words
    have probability 0.  ``exact`` is inferred from the value types:
    all-Fraction tables are exact, anything else is float.
    """

    __slots__ = ("alphabet", "block_length", "probs", "exact")

    def __init__(self, alphabet: Alphabet, block_length: int, probs: Mapping):
        if block_length < 0:
            raise ValueError("block length must be >= 0")
        self.alphabet = alphabet
        self.block_length = int(block_length)
        self.probs = dict(probs)
        s = len(alphabet)
        for w in self.probs:
            if len(w) != self.block_length:
                raise ValueError(
                    f"word {w} has length {len(w)}, expected {self.block_length}"
                )
            if any(not (0 <= a < s) for a in w):
                raise ValueError(f"word {w} leaves the alphabet")
        self.exact = _is_exact_probs(self.probs.values())
        _validate_probs(self.probs, self.exact)

    def prob(self, word: Word):
        zero = Fraction(0) if self.exact else 0.0
        return self.probs.get(tuple(word), zero)

    def support(self):
        return sorted(self.probs)

    def items_sorted(self):
        return sorted(self.probs.items())

    def restrict(self, start: int, stop: int) -> "BlockDistribution":
        """Marginal distribution of word[start:stop]."""
        if not (0 <= start <= stop <= self.block_length):
            raise ValueError("bad restriction bounds")
        out: dict = {}
        for w, p in self.probs.items():
            k = w[start:stop]
            out[k] = out.get(k, 0) + p
        return BlockDistribution(self.alphabet, stop - start, out)

    def __repr__(self) -> str:
        return (
            f"BlockDistribution(L={self.block_length}, "
            f"{len(self.probs)} words, exact={self.exact})"
        )


class JointBlockDistribution:
    """Joint law of two blocks separated by ``gap`` unseen symbols.

    Keys are (left word, right word) pairs.  Both marginals are valid
    :class:`BlockDistribution` objects.
    """

    __slots__ = ("alphabet", "left_length", "gap", "right_length", "probs",
                 "exact")

    def __init__(self, alphabet: Alphabet, left_length: int, gap: int,
                 right_length: int, probs: Mapping):
        if left_length < 1 or right_length < 1 or gap < 0:
            raise ValueError("need left, right >= 1 and gap >= 0")
        self.alphabet = alphabet
        self.left_length = int(left_length)
        self.gap = int(gap)
        self.right_length = int(right_length)
        self.probs = dict(probs)
        for lw, rw in self.probs:
            if len(lw) != self.left_length or len(rw) != self.right_length:
                raise ValueError(f"pair {(lw, rw)} has wrong block lengths")
        self.exact = _is_exact_probs(self.probs.values())
        _validate_probs(self.probs, self.exact)

    def prob(self, pair) -> Scalar:
        lw, rw = pair
        return self.probs.get((tuple(lw), tuple(rw)), Fraction(0))

    def left_marginal(self) -> BlockDistribution:
        out: dict = {}
        for (lw, _), p in self.probs.items():
            out[lw] = out.get(lw, 0) + p
        return BlockDistribution(self.alphabet, self.left_length, out)

    def right_marginal(self) -> BlockDistribution:
        out: dict = {}
        for (_, rw), p in self.probs.items():
            out[rw] = out.get(rw, 0) + p
        return BlockDistribution(self.alphabet, self.right_length, out)

    def __repr__(self) -> str:
        return (
            f"JointBlockDistribution(L={self.left_length}, g={self.gap}, "
            f"L'={self.right_length}, {len(self.probs)} pairs)"
        )


# ── Entropy and mutual information ────────────────────────────────────────────


def _entropy_exact(probs) -> Scalar:
    """Σ −p·log₂ p over Fractions; ExactBits when all entries are
    smooth, float fallback otherwise."""
    try:
        total = ExactBits(Fraction(0))
        for p in probs:
            if p == 0:
                continue
            total = total - Fraction(p) * log2_of(p)
        return total
    except ValueError:
        return _entropy_float(float(x) for x in probs)


def _entropy_float(probs) -> float:
    return -sum(p * math.log2(p) for p in probs if p > 0.0)


def shannon_entropy(d) -> Scalar:
    """Shannon entropy in bits of a block or joint distribution.

    Exact tables yield :class:`ExactBits` whenever every probability
    factors over small primes; otherwise a float computed from the
    exact rationals.  Float tables always yield floats.
    """
    values = d.probs.values()
    if d.exact:
        return _entropy_exact(values)
    return _entropy_float(values)


def entropy_of_probs(probs) -> Scalar:
    """Shannon entropy in bits of a bare probability collection.

    Exact (Fraction) entries follow the same smooth/float rules as
    :func:`shannon_entropy`; any float entry forces the float path.
    """
    values = list(probs)
    if any(isinstance(p, float) for p in values):
        return _entropy_float(float(p) for p in values)
    return _entropy_exact(values)


def mutual_information(j: JointBlockDistribution) -> Scalar:
    """I(left; right) = H(left) + H(right) − H(joint), in bits.

    Nonnegative (exactly on the exact backend, within ~1e-12 in float)
    and symmetric under swapping the two blocks.
    """
    h_left = shannon_entropy(j.left_marginal())
    h_right = shannon_entropy(j.right_marginal())
    h_joint = shannon_entropy(j)
    if isinstance(h_joint, float) or isinstance(h_left, float) \
            or isinstance(h_right, float):
        return float(h_left) + float(h_right) - float(h_joint)
    return h_left + h_right - h_joint


def marginalize_gap(window: BlockDistribution, left_length: int,
                    gap: int) -> JointBlockDistribution:
    """Collapse a length-(left+gap+right) window distribution to the
    joint of its first ``left_length`` and last remaining symbols,
    summing out the middle ``gap`` symbols.

    Marginal sums are preserved exactly on the exact backend.
    """
    right_length = window.block_length - left_length - gap
    if left_length < 1 or gap < 0 or right_length < 1:
        raise ValueError(
            f"window of length {window.block_length} cannot split into "
            f"left={left_length}, gap={gap}, right={right_length}"
        )
    out: dict = {}
    for w, p in window.probs.items():
        key = (w[:left_length], w[left_length + gap:])
        out[key] = out.get(key, 0) + p
    return JointBlockDistribution(
        window.alphabet, left_length, gap, right_length, out
    )


# ── Empirical estimation ──────────────────────────────────────────────────────


def _coerce_sequence(seq, alphabet: Alphabet | None):
    """Accept str / int sequence / ndarray; return (int array, alphabet)."""
    if isinstance(seq, str):
        if alphabet is None:
            alphabet = Alphabet(sorted(set(seq)))
        arr = np.fromiter((alphabet.index(c) for c in seq), dtype=np.int64,
                          count=len(seq))
        return arr, alphabet
    arr = np.asarray(seq, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("sequence must be one-dimensional")
    if alphabet is None:
        top = int(arr.max(initial=0))
        alphabet = Alphabet(str(i) for i in range(top + 1))
    return arr, alphabet


def window_codes(arr: np.ndarray, L: int, s: int):
    """Base-s integer code of every length-L window, or None when the
    codes would not fit in 63 bits."""
    if arr.size < L:
        raise ValueError(
            f"sequence of length {arr.size} has no length-{L} windows")
    if L * math.log2(max(s, 2)) >= 63:
        return None
    powers = (s ** np.arange(L - 1, -1, -1)).astype(np.int64)
    windows = np.lib.stride_tricks.sliding_window_view(arr, L)
    return windows @ powers


def decode_window_code(code: int, L: int, s: int) -> Word:
    w = []
    for _ in range(L):
        w.append(code % s)
        code //= s
    return tuple(reversed(w))


def sliding_window_counts(arr: np.ndarray, L: int, s: int):
    """Counts of all length-L windows of arr; returns (words, counts).

    Windows are packed into base-s integer codes when they fit in 63
    bits (the normal case); otherwise a plain dictionary pass is used.
    """
    codes = window_codes(arr, L, s)
    if codes is not None:
        uniq, counts = np.unique(codes, return_counts=True)
        words = [decode_window_code(code, L, s) for code in uniq.tolist()]
        return words, counts.tolist()
    n = arr.size
    counts: dict = {}
    for i in range(n - L + 1):
        w = tuple(arr[i:i + L].tolist())
        counts[w] = counts.get(w, 0) + 1
    return list(counts), list(counts.values())


def empirical_block_distribution(seq, L: int, alphabet: Alphabet | None = None,
                                 exact: bool = False) -> BlockDistribution:
    """Plug-in estimator: sliding-window counts over all n−L+1 positions.

    ``seq`` may be a plain string (one character per symbol; alphabet
    inferred from the distinct characters when not given), an integer
    sequence, or an integer ndarray.  ``exact=True`` keeps the counts
    as exact rationals count/total.
    """
    if L < 1:
        raise ValueError("block length must be >= 1")
    arr, alphabet = _coerce_sequence(seq, alphabet)
    words, counts = sliding_window_counts(arr, L, len(alphabet))
    total = sum(counts)
    if exact:
        probs = {w: Fraction(c, total) for w, c in zip(words, counts)}
    else:
        probs = {w: c / total for w, c in zip(words, counts)}
    return BlockDistribution(alphabet, L, probs)
