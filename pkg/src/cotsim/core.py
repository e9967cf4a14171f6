"""Core abstractions: CoT hypotheses, finite input/joint distributions, datasets, risks.

Conventions used everywhere downstream:

* an input is a tuple of small non-negative ints (symbols);
* a hypothesis maps an input to a ``CotOutput`` ``(y, z)`` where ``y`` is a
  single token and ``z`` is the chain-of-thought, a tuple of tokens;
* end-to-end risk compares only ``y``; CoT risk compares the full ``(y, z)``
  pair, so ``cot_risk >= e2e_risk`` always;
* extended reals are plain floats with ``math.inf``; serialization of
  infinity is the literal string ``"inf"`` (which is what ``repr`` gives).
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import DistributionError, DomainMismatchError

Symbol = int
StateId = int
Token = int
InputSeq = tuple[int, ...]

#: tolerance for validating that probabilities sum to one
PROB_TOL = 1e-12

#: largest input length for which a uniform distribution is allowed in exact mode
MAX_UNIFORM_LENGTH = 24


@dataclass(frozen=True)
class CotOutput:
    """Full output of a CoT hypothesis on one input: final token y and CoT z."""

    y: Token
    z: tuple[Token, ...]


class CotHypothesis(ABC):
    """An evaluable x -> (y, z) map with a stable integer id within its class.

    ``eval`` must be a pure function: identical inputs give identical outputs.
    """

    id: int

    @abstractmethod
    def eval(self, x: InputSeq) -> CotOutput:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# Finite distributions over inputs
# ---------------------------------------------------------------------------


class FiniteDistribution(ABC):
    """A distribution with finite support over input sequences.

    Supports lazy index-based access so that uniform distributions over
    ``alphabet_size ** n`` inputs never materialize their full support.
    """

    @abstractmethod
    def __len__(self) -> int:
        raise NotImplementedError

    @abstractmethod
    def input_at(self, i: int) -> InputSeq:
        raise NotImplementedError

    @abstractmethod
    def prob_at(self, i: int) -> float:
        raise NotImplementedError

    @property
    @abstractmethod
    def fixed_length(self) -> Optional[int]:
        """Common length of all support inputs, or None if lengths vary."""
        raise NotImplementedError

    def items(self) -> Iterator[tuple[InputSeq, float]]:
        for i in range(len(self)):
            yield self.input_at(i), self.prob_at(i)

    def weights(self, lo: int = 0, hi: Optional[int] = None) -> np.ndarray:
        hi = len(self) if hi is None else hi
        return np.array([self.prob_at(i) for i in range(lo, hi)], dtype=np.float64)

    def matrix(self, lo: int = 0, hi: Optional[int] = None) -> np.ndarray:
        """Support inputs lo..hi as an (hi-lo, n) int8 array; fixed length only."""
        if self.fixed_length is None:
            raise DistributionError("support has mixed lengths; no matrix form")
        hi = len(self) if hi is None else hi
        out = np.empty((hi - lo, self.fixed_length), dtype=np.int8)
        for r, i in enumerate(range(lo, hi)):
            out[r, :] = self.input_at(i)
        return out

    def sample_indices(self, rng: np.random.Generator, k: int) -> np.ndarray:
        """k i.i.d. support indices."""
        p = self.weights()
        return rng.choice(len(self), size=k, p=p)


class UniformInputs(FiniteDistribution):
    """Uniform distribution over all length-n strings of a given alphabet.

    The support is indexed lexicographically: index i encodes the string whose
    j-th symbol is digit j of i in base ``alphabet_size`` (most significant
    first). Nothing of size alphabet_size**n is ever stored.
    """

    def __init__(self, alphabet_size: int, length: int):
        if alphabet_size < 1:
            raise DistributionError("alphabet_size must be >= 1")
        if length < 0:
            raise DistributionError("length must be >= 0")
        if length > MAX_UNIFORM_LENGTH:
            raise DistributionError(
                f"uniform support of length {length} exceeds the exact-mode limit "
                f"of {MAX_UNIFORM_LENGTH}; use Monte Carlo sampling instead"
            )
        self.alphabet_size = alphabet_size
        self.length = length
        self._size = alphabet_size**length

    def __len__(self) -> int:
        return self._size

    @property
    def fixed_length(self) -> Optional[int]:
        return self.length

    def input_at(self, i: int) -> InputSeq:
        if not 0 <= i < self._size:
            raise IndexError(i)
        digits = []
        for _ in range(self.length):
            digits.append(i % self.alphabet_size)
            i //= self.alphabet_size
        return tuple(reversed(digits))

    def prob_at(self, i: int) -> float:
        return 1.0 / self._size

    def weights(self, lo: int = 0, hi: Optional[int] = None) -> np.ndarray:
        hi = self._size if hi is None else hi
        return np.full(hi - lo, 1.0 / self._size, dtype=np.float64)

    def matrix(self, lo: int = 0, hi: Optional[int] = None) -> np.ndarray:
        hi = self._size if hi is None else hi
        idx = np.arange(lo, hi, dtype=np.int64)
        out = np.empty((hi - lo, self.length), dtype=np.int8)
        for j in range(self.length - 1, -1, -1):
            out[:, j] = idx % self.alphabet_size
            idx //= self.alphabet_size
        return out

    def sample_indices(self, rng: np.random.Generator, k: int) -> np.ndarray:
        return rng.integers(0, self._size, size=k)


class ExplicitInputs(FiniteDistribution):
    """Explicit support list of (input, probability) pairs."""

    def __init__(self, pairs: Sequence[tuple[InputSeq, float]]):
        pairs = [(tuple(x), float(p)) for x, p in pairs]
        if not pairs:
            raise DistributionError("empty support")
        seen = set()
        for x, p in pairs:
            if p < 0:
                raise DistributionError(f"negative probability for {x}")
            if x in seen:
                raise DistributionError(f"duplicate support entry {x}")
            seen.add(x)
        total = math.fsum(p for _, p in pairs)
        if abs(total - 1.0) > PROB_TOL:
            raise DistributionError(f"probabilities sum to {total!r}, not 1")
        self.pairs = pairs
        lengths = {len(x) for x, _ in pairs}
        self._fixed = lengths.pop() if len(lengths) == 1 else None

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def fixed_length(self) -> Optional[int]:
        return self._fixed

    def input_at(self, i: int) -> InputSeq:
        return self.pairs[i][0]

    def prob_at(self, i: int) -> float:
        return self.pairs[i][1]


# ---------------------------------------------------------------------------
# Joint distributions and datasets
# ---------------------------------------------------------------------------


class JointDistribution:
    """Explicit distribution over (input, output token, CoT) triples."""

    def __init__(self, entries: Sequence[tuple[InputSeq, Token, Sequence[Token], float]]):
        self.entries = [
            (tuple(x), int(y), tuple(z), float(p)) for x, y, z, p in entries
        ]
        if not self.entries:
            raise DistributionError("empty joint support")
        total = math.fsum(p for *_, p in self.entries)
        if abs(total - 1.0) > PROB_TOL:
            raise DistributionError(f"probabilities sum to {total!r}, not 1")
        if any(p < 0 for *_, p in self.entries):
            raise DistributionError("negative probability")

    def __len__(self) -> int:
        return len(self.entries)

    def items(self) -> Iterator[tuple[InputSeq, Token, tuple[Token, ...], float]]:
        return iter(self.entries)


@dataclass(frozen=True)
class CotExample:
    """One training example; ``z is None`` marks an end-to-end-only example."""

    x: InputSeq
    y: Token
    z: Optional[tuple[Token, ...]] = None


CotDataset = list[CotExample]


def dataset_from_hypothesis(
    h: CotHypothesis, inputs: Sequence[InputSeq], with_cot: bool = True
) -> CotDataset:
    """Label the given inputs by h, with or without the CoT annotation."""
    out = []
    for x in inputs:
        res = h.eval(tuple(x))
        out.append(CotExample(tuple(x), res.y, res.z if with_cot else None))
    return out


# ---------------------------------------------------------------------------
# Risks
# ---------------------------------------------------------------------------


def _eval_or_raise(h: CotHypothesis, x: InputSeq) -> CotOutput:
    try:
        return h.eval(x)
    except DomainMismatchError:
        raise
    except (KeyError, IndexError) as exc:
        raise DomainMismatchError(f"input {x} outside hypothesis domain") from exc


def e2e_risk(h: CotHypothesis, hstar: CotHypothesis, d: FiniteDistribution) -> float:
    """P_d[ete(h)(x) != ete(hstar)(x)] by exact summation over the support."""
    return math.fsum(
        p for x, p in d.items() if _eval_or_raise(h, x).y != _eval_or_raise(hstar, x).y
    )


def cot_risk(h: CotHypothesis, hstar: CotHypothesis, d: FiniteDistribution) -> float:
    """P_d[h(x) != hstar(x)] comparing the full (y, z) pair; >= e2e_risk."""
    return math.fsum(
        p for x, p in d.items() if _eval_or_raise(h, x) != _eval_or_raise(hstar, x)
    )


def joint_risks(h: CotHypothesis, d: JointDistribution) -> tuple[float, float]:
    """(L_ete, L_cot) of h against an explicit joint distribution."""
    ete_terms = []
    cot_terms = []
    for x, y, z, p in d.items():
        out = _eval_or_raise(h, x)
        if out.y != y:
            ete_terms.append(p)
        if out.y != y or out.z != z:
            cot_terms.append(p)
    return math.fsum(ete_terms), math.fsum(cot_terms)


def empirical_risks(h: CotHypothesis, s: CotDataset) -> tuple[float, float]:
    """Empirical (e2e, cot) risks of h on a dataset.

    Examples lacking a CoT contribute only their output mismatch to both
    counts; an empty dataset has both risks defined as 0.
    """
    if not s:
        return 0.0, 0.0
    ete_bad = 0
    cot_bad = 0
    for ex in s:
        out = _eval_or_raise(h, ex.x)
        y_bad = out.y != ex.y
        if y_bad:
            ete_bad += 1
        if y_bad or (ex.z is not None and out.z != ex.z):
            cot_bad += 1
    n = len(s)
    return ete_bad / n, cot_bad / n
