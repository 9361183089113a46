"""Reproducible sampling of the random monomial ideal model I(n, D, p).

Every monomial of positive total degree at most D is selected independently
with probability p; the selected set generates the ideal.  The implementation
draws, for each degree d, a Binomial(#monomials of degree d, p) count and then
that many distinct monomials uniformly without replacement via unranking,
which is distribution-equivalent to the monomial-by-monomial Bernoulli scan
but costs O(E[#selected]) instead of O(D^n).

RNG contract: Philox4x64 (counter-based), key = (master seed, trial index),
counter block d for the degree-d draws, so any trial of any run can be
reproduced in isolation and trials parallelize with no shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from numpy.random import Generator, Philox

from .errors import ConfigError
from .ideals import Exponents, MonomialIdeal, minimalize_array

RNG_ALGORITHM = "philox4x64"
_MAX_DEGREE_CAP = 2 ** 32
_SPEC_TOL = 1e-12


@dataclass(frozen=True)
class PSpec:
    """How p was specified: explicit, p = D^-k, or p = c * D^-t."""

    kind: str  # "explicit" | "power" | "scaled"
    p: Optional[float] = None
    k: Optional[float] = None
    c: Optional[float] = None
    t: Optional[int] = None

    def __post_init__(self):
        if self.kind == "explicit":
            if self.p is None:
                raise ConfigError("explicit PSpec needs p")
        elif self.kind == "power":
            if self.k is None:
                raise ConfigError("power PSpec needs k")
        elif self.kind == "scaled":
            if self.c is None or self.t is None:
                raise ConfigError("scaled PSpec needs c and t")
        else:
            raise ConfigError(f"unknown PSpec kind {self.kind!r}")

    def resolve(self, max_degree: int) -> float:
        if self.kind == "explicit":
            return float(self.p)
        if self.kind == "power":
            return float(max_degree) ** (-self.k)
        return self.c * float(max_degree) ** (-self.t)

    def label(self) -> str:
        if self.kind == "explicit":
            return f"p={self.p}"
        if self.kind == "power":
            return f"p=D^-{self.k}"
        return f"p={self.c}*D^-{self.t}"


@dataclass(frozen=True)
class ModelParams:
    """I(n, D, p) parameters plus the master seed for the trial streams."""

    n: int
    max_degree: int
    p: Union[float, Fraction]
    seed: int
    p_spec: Optional[PSpec] = None

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if not 1 <= self.max_degree <= _MAX_DEGREE_CAP:
            raise ConfigError(f"max degree must be in [1, 2^32], got {self.max_degree}")
        if not 0 < float(self.p) < 1:
            raise ConfigError(f"p must lie in (0, 1), got {self.p}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must fit in 64 bits")
        if self.p_spec is not None:
            resolved = self.p_spec.resolve(self.max_degree)
            if abs(resolved - float(self.p)) > _SPEC_TOL:
                raise ConfigError(
                    f"p={self.p} disagrees with {self.p_spec.label()} at D={self.max_degree}"
                )

    @property
    def p_float(self) -> float:
        return float(self.p)

    @property
    def q(self) -> Union[float, Fraction]:
        """Non-selection probability 1 - p, exact when p is a Fraction."""
        if isinstance(self.p, Fraction):
            return 1 - self.p
        return 1.0 - self.p

    @classmethod
    def from_spec(cls, n: int, max_degree: int, spec: PSpec, seed: int) -> "ModelParams":
        return cls(n, max_degree, spec.resolve(max_degree), seed, p_spec=spec)

    def metadata(self) -> dict:
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "p_resolved": self.p_float,
            "p_spec": self.p_spec.label() if self.p_spec else f"p={self.p_float}",
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
        }


def count_monomials_exact_degree(n: int, d: int) -> int:
    """Monomials of total degree exactly d in n variables: C(n+d-1, n-1)."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return math.comb(n + d - 1, n - 1)


def count_monomials_up_to(n: int, max_degree: int) -> int:
    """Monomials of positive degree <= D: C(n+D, n) - 1 (the model's sample space)."""
    if n < 1 or max_degree < 1:
        raise ValueError("need n >= 1 and D >= 1")
    return math.comb(n + max_degree, n) - 1


def unrank_monomial(n: int, d: int, index: int) -> Exponents:
    """The index-th degree-d monomial in ascending lex order on exponent vectors."""
    if not 0 <= index < count_monomials_exact_degree(n, d):
        raise ValueError(f"rank {index} out of range for degree {d} in {n} variables")
    exps = []
    rem, idx = d, index
    for pos in range(n - 1):
        vars_left = n - pos
        a = 0
        while True:
            block = count_monomials_exact_degree(vars_left - 1, rem - a)
            if idx < block:
                break
            idx -= block
            a += 1
        exps.append(a)
        rem -= a
    exps.append(rem)
    return tuple(exps)


def rank_monomial(m: Sequence[int]) -> int:
    """Inverse of unrank_monomial for the same (n, total degree)."""
    n = len(m)
    rem = sum(m)
    rank = 0
    for pos in range(n - 1):
        vars_left = n - pos
        for a in range(m[pos]):
            rank += count_monomials_exact_degree(vars_left - 1, rem - a)
        rem -= m[pos]
    return rank


class _TrialStream:
    """One Philox bit generator per trial, repositioned to counter block d per degree.

    Equivalent to constructing ``Philox(key=(seed, trial), counter=(0, 0, 0, d))``
    fresh for every degree, but without per-degree entropy setup cost.
    """

    def __init__(self, seed: int, trial: int):
        self.key = np.array([seed, trial], dtype=np.uint64)
        self._bitgen = Philox(key=self.key)
        self.gen = Generator(self._bitgen)

    def at_degree(self, d: int) -> Generator:
        state = self._bitgen.state
        state["state"]["counter"] = np.array([0, 0, 0, d], dtype=np.uint64)
        state["state"]["key"] = self.key
        state["buffer_pos"] = 4  # discard buffered words from the previous block
        state["has_uint32"] = 0
        state["uinteger"] = 0
        self._bitgen.state = state
        return self.gen


def _degree_stream(seed: int, trial: int, d: int) -> Generator:
    """Reference construction of the (seed, trial, degree) stream."""
    key = np.array([seed, trial], dtype=np.uint64)
    counter = np.array([0, 0, 0, d], dtype=np.uint64)
    return Generator(Philox(key=key, counter=counter))


def _distinct_ranks(gen: Generator, population: int, want: int) -> np.ndarray:
    """``want`` distinct uniform ranks from [0, population), ascending.

    Sequential rejection (first ``want`` distinct values in draw order) keeps
    the subset uniform; near-full draws fall back to a permutation.
    """
    if want >= population:
        return np.arange(population, dtype=np.int64)
    if want * 4 >= population:
        return np.sort(gen.permutation(population)[:want].astype(np.int64))
    chosen = np.empty(0, dtype=np.int64)
    while len(chosen) < want:
        need = want - len(chosen)
        draw = gen.integers(0, population, size=need + 8).astype(np.int64)
        pool = np.concatenate([chosen, draw])
        _, first = np.unique(pool, return_index=True)
        keep = np.sort(first)[:want]
        chosen = pool[keep]
    return np.sort(chosen)


def _sample_raw_array(params: ModelParams, trial: int) -> np.ndarray:
    """All selected monomials of one trial as an (m, n) int64 exponent array."""
    if not 0 <= trial < 2 ** 64:
        raise ConfigError("trial index must fit in 64 bits")
    p = params.p_float
    n = params.n
    stream = _TrialStream(params.seed, trial)
    blocks: list[np.ndarray] = []
    for d in range(1, params.max_degree + 1):
        total = count_monomials_exact_degree(n, d)
        if total > 2 ** 62:
            raise ConfigError(f"degree-{d} slice too large for binomial sampling")
        gen = stream.at_degree(d)
        m = int(gen.binomial(total, p))
        if m == 0:
            continue
        ranks = _distinct_ranks(gen, total, m)
        if n == 2:
            block = np.column_stack([ranks, d - ranks])
        elif n == 3:
            sizes = np.arange(d, -1, -1, dtype=np.int64) + 1
            cum = np.concatenate(([0], np.cumsum(sizes)))
            a = np.searchsorted(cum, ranks, side="right") - 1
            b = ranks - cum[a]
            block = np.column_stack([a, b, d - a - b])
        else:
            block = np.array([unrank_monomial(n, d, int(r)) for r in ranks], dtype=np.int64)
        blocks.append(block)
    if not blocks:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(blocks)


def sample_raw(params: ModelParams, trial: int) -> list[Exponents]:
    """The selected generator set for one trial, ordered by (degree, rank)."""
    arr = _sample_raw_array(params, trial)
    return [tuple(int(e) for e in row) for row in arr]


def sample_ideal(params: ModelParams, trial: int) -> tuple[MonomialIdeal, int]:
    """One draw from I(n, D, p): the minimalized ideal plus the raw pick count."""
    arr = _sample_raw_array(params, trial)
    return minimalize_array(arr, params.n), int(arr.shape[0])


def prob_not_in_ideal(params: ModelParams, alpha: Sequence[int]) -> float:
    """P(x^alpha not in the ideal) = q^(prod(a_i + 1) - 1).

    The exponent counts the positive-degree divisors of x^alpha, all of which
    must go unselected.
    """
    _check_alpha(params, alpha)
    divisors = math.prod(a + 1 for a in alpha) - 1
    return float(params.q) ** divisors


def prob_minimal_generator(params: ModelParams, alpha: Sequence[int]) -> float:
    """P(x^alpha is a minimal generator) = p * q^(prod(a_i + 1) - 2).

    x^alpha must be selected and its proper positive-degree divisors (there
    are prod(a_i + 1) - 2 of them) must not be.
    """
    _check_alpha(params, alpha)
    proper = math.prod(a + 1 for a in alpha) - 2
    return params.p_float * float(params.q) ** proper


def _check_alpha(params: ModelParams, alpha: Sequence[int]) -> None:
    deg = sum(alpha)
    if not 1 <= deg <= params.max_degree:
        raise ValueError(f"|alpha| = {deg} outside [1, D={params.max_degree}]")
    if len(alpha) != params.n:
        raise ValueError(f"alpha has arity {len(alpha)}, model has n = {params.n}")


def default_thresholds(k: float, s: int, epsilon: float, max_degree: int) -> tuple[float, float, float]:
    """(f_s, g_s, h_s) = (D^(k-s-eps), D^(k-s+eps), D^(k-s+eps)) for p = D^-k."""
    if epsilon <= 0:
        raise ValueError("epsilon must be > 0")
    D = float(max_degree)
    f = D ** (k - s - epsilon)
    g = D ** (k - s + epsilon)
    return f, g, g
