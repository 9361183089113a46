"""Exact monomial and monomial-ideal arithmetic.

Monomials are exponent tuples ``(a_0, ..., a_{n-1})`` of non-negative ints
(Python ints never overflow, so total degrees are always exact).  A monomial
ideal is stored by its unique minimal generating set, kept as a
divisibility antichain sorted in graded lexicographic order, so two ideals
are equal iff their ``MonomialIdeal`` values are equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ArityError, UnitIdealError

Exponents = tuple[int, ...]


class UnitIdeal:
    """Marker for the unit ideal <1>, kept out of MonomialIdeal by construction."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UnitIdeal()"


UNIT_IDEAL = UnitIdeal()

IdealLike = Union["MonomialIdeal", UnitIdeal]


def _as_monomial(m: Sequence[int]) -> Exponents:
    exps = tuple(int(e) for e in m)
    if any(e < 0 for e in exps):
        raise ValueError(f"negative exponent in {exps}")
    return exps


def total_degree(m: Sequence[int]) -> int:
    return sum(m)


def support(m: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e > 0)


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    """Componentwise order: x^a | x^b iff a_i <= b_i for all i."""
    if len(a) != len(b):
        raise ArityError(f"monomials in {len(a)} and {len(b)} variables")
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Sequence[int], b: Sequence[int]) -> Exponents:
    if len(a) != len(b):
        raise ArityError(f"monomials in {len(a)} and {len(b)} variables")
    return tuple(max(x, y) for x, y in zip(a, b))


def grlex_key(m: Sequence[int]):
    return (sum(m), tuple(m))


def monomial_str(m: Sequence[int]) -> str:
    """Readable form like ``x1^8 x2^35 x3^5``; the empty product is ``1``."""
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return " ".join(parts) if parts else "1"


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generating set.

    ``generators`` must be a divisibility antichain in graded-lex order;
    construct through :func:`minimalize` unless you already have that.
    The empty generator tuple is the zero ideal.
    """

    n: int
    generators: tuple[Exponents, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one variable")
        for g in self.generators:
            if len(g) != self.n:
                raise ArityError(f"generator {g} has arity {len(g)}, expected {self.n}")
            if sum(g) == 0:
                raise UnitIdealError("degree-0 generator; use UNIT_IDEAL for the unit ideal")

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def exponent_array(self) -> np.ndarray:
        """Generators as a (k, n) int64 array (empty ideal gives shape (0, n))."""
        if not self.generators:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array(self.generators, dtype=np.int64)

    def max_exponents(self) -> Exponents:
        """Per-variable maximum exponent over the generators (0s for the zero ideal)."""
        return tuple(max((g[i] for g in self.generators), default=0) for i in range(self.n))

    def min_exponents(self) -> Exponents:
        """Per-variable minimum exponent over the generators."""
        return tuple(min((g[i] for g in self.generators), default=0) for i in range(self.n))

    def __repr__(self):
        gens = ", ".join(monomial_str(g) for g in self.generators) or "0"
        return f"<{gens}> in {self.n} vars"


def _pareto_min_2d(points: list[Exponents]) -> list[Exponents]:
    """Skyline sweep for n == 2; O(m log m) for the large raw sets the sampler makes."""
    arr = np.asarray(points, dtype=np.int64)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    xs, ys = arr[order, 0], arr[order, 1]
    first = np.r_[True, xs[1:] != xs[:-1]]  # min-y row per distinct x
    xs, ys = xs[first], ys[first]
    runmin = np.minimum.accumulate(ys)
    keep = np.r_[True, ys[1:] < runmin[:-1]]
    return [(int(x), int(y)) for x, y in zip(xs[keep], ys[keep])]


def _pareto_min_nd(points: list[Exponents]) -> list[Exponents]:
    """Minimal elements under componentwise <=, degree-batched numpy scan."""
    pts = sorted(set(points), key=grlex_key)
    kept: list[Exponents] = []
    kept_arr = None
    i = 0
    while i < len(pts):
        d = sum(pts[i])
        j = i
        while j < len(pts) and sum(pts[j]) == d:
            j += 1
        batch = pts[i:j]  # equal-degree monomials never divide each other
        if kept_arr is None:
            survivors = batch
        else:
            cand = np.array(batch, dtype=np.int64)
            dominated = (kept_arr[None, :, :] <= cand[:, None, :]).all(axis=2).any(axis=1)
            survivors = [m for m, dead in zip(batch, dominated) if not dead]
        if survivors:
            kept.extend(survivors)
            kept_arr = np.array(kept, dtype=np.int64)
        i = j
    return kept


def minimalize(gens: Iterable[Sequence[int]], n: int) -> MonomialIdeal:
    """Canonicalize a generating set: divisibility antichain, graded-lex sorted.

    Raises UnitIdealError if a degree-0 monomial slips in (the random model
    never produces one, but user-supplied JSON may).
    """
    cleaned = []
    for m in gens:
        mono = _as_monomial(m)
        if len(mono) != n:
            raise ArityError(f"generator {mono} has arity {len(mono)}, expected {n}")
        if sum(mono) == 0:
            raise UnitIdealError("generating set contains 1")
        cleaned.append(mono)
    cleaned = list(set(cleaned))
    if not cleaned:
        return MonomialIdeal(n, ())
    if len(cleaned) > 128:
        minimal = _pareto_min_2d(cleaned) if n == 2 else _pareto_min_nd(cleaned)
    else:
        minimal = [
            m for m in cleaned
            if not any(g != m and divides(g, m) for g in cleaned)
        ]
    return MonomialIdeal(n, tuple(sorted(minimal, key=grlex_key)))


def minimalize_array(arr: np.ndarray, n: int) -> MonomialIdeal:
    """minimalize() for a trusted (m, n) exponent array (the sampler's hot path).

    Rows must be non-negative with positive total degree; no per-row validation.
    """
    if arr.shape[0] == 0:
        return MonomialIdeal(n, ())
    if n == 2 and arr.shape[0] > 128:
        minimal = _pareto_min_2d(arr)
        return MonomialIdeal(n, tuple(sorted(minimal, key=grlex_key)))
    return minimalize([tuple(int(e) for e in row) for row in arr], n)


def contains(ideal: MonomialIdeal, m: Sequence[int]) -> bool:
    """Monomial membership: some generator divides m."""
    if len(m) != ideal.n:
        raise ArityError(f"monomial arity {len(m)} vs ideal arity {ideal.n}")
    return any(divides(g, m) for g in ideal.generators)


def restrict(ideal: MonomialIdeal, keep: Iterable[int]) -> IdealLike:
    """Set x_i -> 1 for i outside ``keep``; the result lives in the kept variables.

    Result coordinates follow the kept indices in ascending original order.
    Returns UNIT_IDEAL when some generator's support misses ``keep`` entirely.
    """
    cols = sorted(set(keep))
    if any(i < 0 or i >= ideal.n for i in cols):
        raise ValueError(f"variable indices {cols} out of range for n={ideal.n}")
    projected = []
    for g in ideal.generators:
        q = tuple(g[i] for i in cols)
        if sum(q) == 0:
            return UNIT_IDEAL
        projected.append(q)
    if not cols:
        # a nonzero ideal already returned UNIT_IDEAL above
        raise ValueError("restriction of the zero ideal to no variables is not representable")
    return minimalize(projected, len(cols))


def krull_dimension(ideal: IdealLike) -> int:
    """dim R/I = max |S| over S not containing any generator's support; 2^n scan."""
    if isinstance(ideal, UnitIdeal):
        raise UnitIdealError("the unit ideal has no Krull dimension here")
    n = ideal.n
    if ideal.is_zero:
        return n
    supp_masks = [sum(1 << i for i in support(g)) for g in ideal.generators]
    best = 0
    for s_mask in range(1 << n):
        if all(sm & ~s_mask for sm in supp_masks):
            size = bin(s_mask).count("1")
            if size > best:
                best = size
    return best


# --- JSON contract: {"n": <int>, "generators": [[e1,...,en], ...]} ---

def ideal_to_dict(ideal: MonomialIdeal) -> dict:
    return {"n": ideal.n, "generators": [list(g) for g in ideal.generators]}


def ideal_from_dict(data: dict) -> MonomialIdeal:
    """Parse the ideal JSON object; generators need not be minimal."""
    try:
        n = int(data["n"])
        gens = data["generators"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed ideal JSON: {exc}") from exc
    return minimalize(gens, n)


def dump_ideal(ideal: MonomialIdeal) -> str:
    return json.dumps(ideal_to_dict(ideal), sort_keys=True)


def load_ideal(text: str) -> MonomialIdeal:
    return ideal_from_dict(json.loads(text))
