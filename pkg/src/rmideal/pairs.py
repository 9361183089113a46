"""Standard-pair decomposition: admissibility, minimality, the full census,
degree in any dimension, arithmetic degree, the L(f, h) region, and the
binomial cover-sum for Hilbert values.

A pair (x^alpha, S) with supp(alpha) disjoint from S is admissible when every
monomial of x^alpha * K[S] avoids the ideal; standard pairs are the minimal
admissible pairs under: (x^g, U) <= (x^a, S) iff x^g | x^a and
supp(x^(a-g)) union S is contained in U.  Admissibility reduces to a
restriction test: (alpha, S) is admissible iff I restricted to the complement
of S does not contain alpha's complement part.  Minimality is decided by
single-variable extensions; that reduction is validated against
:func:`brute_force_standard_pairs`, which applies the partial order directly.

Census strategy per arity: n == 2 uses closed-form staircase walks, n == 3
uses 2-D numpy grids (columns in z), n >= 4 falls back to a guarded box scan.
Counts are always exact; explicit pairs are materialized up to a cap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import numpy as np

from .errors import GuardExceededError, InternalInvariantError, UnitIdealError
from .ideals import (
    Exponents,
    MonomialIdeal,
    UnitIdeal,
    contains,
    grlex_key,
    krull_dimension,
    restrict,
    support,
)
from .staircase import count_standard_monomials

_GUARD_DEFAULT = 100_000_000
_PAIR_CAP_DEFAULT = 1_000_000
_INF = np.int64(2) ** 62


@dataclass(frozen=True)
class StandardPair:
    """(x^alpha, S): alpha in the original n coordinates, zero on the free set S."""

    alpha: Exponents
    free: frozenset[int]

    def sort_key(self):
        return (len(self.free), tuple(sorted(self.free)), grlex_key(self.alpha))


@dataclass
class PairCensus:
    """Exact standard-pair counts; explicit pairs kept up to a cap."""

    n: int
    dim: int
    counts_by_free_set: dict[frozenset[int], int]
    pairs: tuple[StandardPair, ...] = ()
    truncated: bool = False
    counts_by_free_size: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        sizes = [0] * (self.n + 1)
        for s, c in self.counts_by_free_set.items():
            sizes[len(s)] += c
        self.counts_by_free_size = tuple(sizes)

    @property
    def adeg(self) -> int:
        return sum(self.counts_by_free_size)

    @property
    def deg(self) -> int:
        return self.counts_by_free_size[self.dim]

    def count_for(self, free: Iterable[int]) -> int:
        return self.counts_by_free_set.get(frozenset(free), 0)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "deg": self.deg,
            "adeg": self.adeg,
            "sp_by_dim": list(self.counts_by_free_size),
            "pairs": [
                {"alpha": list(p.alpha), "free": sorted(p.free)} for p in self.pairs
            ],
            "truncated": self.truncated,
        }


def _complement(S: frozenset[int], n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if i not in S)


def _project(alpha: Exponents, coords: tuple[int, ...]) -> Exponents:
    return tuple(alpha[i] for i in coords)


def _zero_at(alpha: Exponents, i: int) -> Exponents:
    return alpha[:i] + (0,) + alpha[i + 1:]


def is_admissible(ideal: MonomialIdeal, alpha: Exponents, free: Iterable[int]) -> bool:
    """Every monomial of x^alpha * K[free] lies outside the ideal."""
    S = frozenset(free)
    alpha = tuple(alpha)
    if support(alpha) & S:
        return False
    T = _complement(S, ideal.n)
    if not T:
        return ideal.is_zero
    R = restrict(ideal, T)
    if isinstance(R, UnitIdeal):
        return False
    return not contains(R, _project(alpha, T))


def is_standard(ideal: MonomialIdeal, alpha: Exponents, free: Iterable[int]) -> bool:
    """Admissible and not extendable by any single variable (minimality test)."""
    S = frozenset(free)
    alpha = tuple(alpha)
    if not is_admissible(ideal, alpha, S):
        return False
    for i in _complement(S, ideal.n):
        if is_admissible(ideal, _zero_at(alpha, i), S | {i}):
            return False
    return True


# ---------------------------------------------------------------------------
# census fast paths
# ---------------------------------------------------------------------------

def _steps_prefix_min(gens: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """(x_start, ceiling) steps of a 2-var staircase; ceilings strictly decrease."""
    steps = []
    h = None
    for a, b in sorted(gens):
        if h is None or b < h:
            steps.append((a, b))
            h = b
    return steps


def _std_points_2d(gens: list[tuple[int, int]], floor_x: int, floor_y: int):
    """Count / yield (a, b) outside the 2-var ideal with a >= floor_x, b >= floor_y.

    The set is finite for a nonzero ideal.  Yields (x_lo, x_hi, y_lo, y_hi)
    inclusive rectangles.
    """
    steps = _steps_prefix_min(gens)
    rects = []
    for (x0, h), (x1, _) in zip(steps, steps[1:]):
        lo = max(x0, floor_x)
        if lo <= x1 - 1 and h - 1 >= floor_y:
            rects.append((lo, x1 - 1, floor_y, h - 1))
    return rects


def _census_2d(ideal: MonomialIdeal) -> dict[frozenset[int], int]:
    gens = [(g[0], g[1]) for g in ideal.generators]
    e0 = min(g[0] for g in gens)  # min exponent of x0 over the generators
    e1 = min(g[1] for g in gens)
    sp_empty = sum(
        (xh - xl + 1) * (yh - yl + 1) for xl, xh, yl, yh in _std_points_2d(gens, e0, e1)
    )
    # free {0}: alpha = (0, b), admissible iff b < min exponent of x1; the single
    # extension (free everything) is always blocked for a nonzero ideal.
    return {frozenset(): sp_empty, frozenset({0}): e1, frozenset({1}): e0}


def _pairs_2d(ideal: MonomialIdeal, wanted: set[frozenset[int]]) -> list[StandardPair]:
    gens = [(g[0], g[1]) for g in ideal.generators]
    e0 = min(g[0] for g in gens)
    e1 = min(g[1] for g in gens)
    out = []
    if frozenset() in wanted:
        for xl, xh, yl, yh in _std_points_2d(gens, e0, e1):
            for a in range(xl, xh + 1):
                for b in range(yl, yh + 1):
                    out.append(StandardPair((a, b), frozenset()))
    if frozenset({0}) in wanted:
        out.extend(StandardPair((0, b), frozenset({0})) for b in range(e1))
    if frozenset({1}) in wanted:
        out.extend(StandardPair((a, 0), frozenset({1})) for a in range(e0))
    return out


def _membership_mask(gens2: list[tuple[int, int]], shape: tuple[int, int]) -> np.ndarray:
    mask = np.zeros(shape, dtype=bool)
    for a, b in gens2:
        if a < shape[0] and b < shape[1]:
            mask[a:, b:] = True
    return mask


def _floor_curve(gens2: list[tuple[int, int]], length: int) -> np.ndarray:
    """w[v] = min{b : (a, b) generator with a <= v}, INF where no generator applies."""
    if not gens2:
        return np.full(length, _INF, dtype=np.int64)
    pts = sorted(gens2)
    starts = np.array([a for a, _ in pts], dtype=np.int64)
    mins = np.minimum.accumulate(np.array([b for _, b in pts], dtype=np.int64))
    idx = np.searchsorted(starts, np.arange(length, dtype=np.int64), side="right") - 1
    out = np.full(length, _INF, dtype=np.int64)
    hit = idx >= 0
    out[hit] = mins[idx[hit]]
    return out


def _grid_3d(ideal: MonomialIdeal, guard: int) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """Column structure of the S == {} pairs over the (x0, x1) grid.

    Returns (lower, upper): the standard pairs over cell (x0, x1) are exactly
    (x0, x1, z) for lower <= z < upper.  A column is live when the cell lies in
    the (x0, x1)-restriction (blocking the x2 extension) and z is below the
    staircase ceiling but above both single-variable extension floors.
    None when some coordinate has maximum exponent 0 (no such pairs).
    """
    mx = ideal.max_exponents()
    if min(mx) == 0:
        return None
    if mx[0] * mx[1] > guard:
        raise GuardExceededError(f"census grid {mx[0]}x{mx[1]} exceeds guard {guard}")
    shape = (mx[0], mx[1])
    zmin = np.full(shape, _INF, dtype=np.int64)
    for g in ideal.generators:
        if g[0] < shape[0] and g[1] < shape[1]:
            sub = zmin[g[0]:, g[1]:]
            np.minimum(sub, np.int64(g[2]), out=sub)
    R01 = restrict(ideal, (0, 1))
    if isinstance(R01, UnitIdeal):
        blocked = np.ones(shape, dtype=bool)
    else:
        blocked = _membership_mask([(g[0], g[1]) for g in R01.generators], shape)

    def floor_from(pair_T: tuple[int, int], length: int) -> np.ndarray:
        R = restrict(ideal, pair_T)
        if isinstance(R, UnitIdeal):
            return np.zeros(length, dtype=np.int64)
        return _floor_curve([(g[0], g[1]) for g in R.generators], length)

    w_for_x1 = floor_from((1, 2), shape[1])  # blocks extension in direction 0
    w_for_x0 = floor_from((0, 2), shape[0])  # blocks extension in direction 1
    lower = np.maximum(w_for_x0[:, None], w_for_x1[None, :])
    if bool(np.any(blocked & (zmin == _INF))):
        raise InternalInvariantError("blocked column with unbounded staircase")
    upper = np.where(blocked, np.maximum(zmin, lower), lower)
    return lower, upper


def _census_3d(ideal: MonomialIdeal, guard: int) -> dict[frozenset[int], int]:
    mn = ideal.min_exponents()
    counts: dict[frozenset[int], int] = {}

    # |S| == 2: the lone kept variable l must have positive exponent in every
    # generator; the pairs are (x_l^a, S) for a below that minimum.
    for l in range(3):
        counts[frozenset({0, 1, 2} - {l})] = mn[l]

    # |S| == 1: 2-D walk on the restricted ideal with floors from the other two
    # single-variable restrictions (extension in direction j blocked iff a_j >= mn[j]).
    for s0 in range(3):
        S = frozenset({s0})
        i, j = _complement(S, 3)
        R = restrict(ideal, (i, j))
        if isinstance(R, UnitIdeal):
            counts[S] = 0
            continue
        rg = [(g[0], g[1]) for g in R.generators]
        counts[S] = sum(
            (xh - xl + 1) * (yh - yl + 1)
            for xl, xh, yl, yh in _std_points_2d(rg, mn[i], mn[j])
        )

    grid = _grid_3d(ideal, guard)
    counts[frozenset()] = int((grid[1] - grid[0]).sum()) if grid is not None else 0
    return counts


def _pairs_3d(ideal: MonomialIdeal, guard: int,
              wanted: set[frozenset[int]]) -> list[StandardPair]:
    mn = ideal.min_exponents()
    out = []
    for l in range(3):
        S = frozenset({0, 1, 2} - {l})
        if S not in wanted:
            continue
        alpha0 = [0, 0, 0]
        for a in range(mn[l]):
            alpha0[l] = a
            out.append(StandardPair(tuple(alpha0), S))
    for s0 in range(3):
        S = frozenset({s0})
        if S not in wanted:
            continue
        i, j = _complement(S, 3)
        R = restrict(ideal, (i, j))
        if isinstance(R, UnitIdeal):
            continue
        rg = [(g[0], g[1]) for g in R.generators]
        for xl, xh, yl, yh in _std_points_2d(rg, mn[i], mn[j]):
            for a in range(xl, xh + 1):
                for b in range(yl, yh + 1):
                    alpha = [0, 0, 0]
                    alpha[i], alpha[j] = a, b
                    out.append(StandardPair(tuple(alpha), S))
    if frozenset() in wanted:
        grid = _grid_3d(ideal, guard)
        if grid is not None:
            lower, upper = grid
            for x0, x1 in np.argwhere(upper > lower):
                for z in range(int(lower[x0, x1]), int(upper[x0, x1])):
                    out.append(StandardPair((int(x0), int(x1), z), frozenset()))
    return out


def _census_box_scan(
    ideal: MonomialIdeal, guard: int
) -> tuple[dict[frozenset[int], int], list[StandardPair]]:
    """Reference path: enumerate each free-set box and test is_standard pointwise."""
    n = ideal.n
    counts: dict[frozenset[int], int] = {}
    pairs: list[StandardPair] = []
    for size in range(n):
        for S_tuple in itertools.combinations(range(n), size):
            S = frozenset(S_tuple)
            T = _complement(S, n)
            R = restrict(ideal, T)
            if isinstance(R, UnitIdeal):
                counts[S] = 0
                continue
            box = R.max_exponents()
            if any(m == 0 for m in box):
                counts[S] = 0
                continue
            volume = math.prod(box)
            if volume > guard:
                raise GuardExceededError(f"box {box} for free set {sorted(S)} exceeds guard")
            found = 0
            for local in itertools.product(*(range(m) for m in box)):
                alpha = [0] * n
                for pos, i in enumerate(T):
                    alpha[i] = local[pos]
                alpha_t = tuple(alpha)
                if is_standard(ideal, alpha_t, S):
                    found += 1
                    pairs.append(StandardPair(alpha_t, S))
            counts[S] = found
    return counts, pairs


def enumerate_standard_pairs(
    ideal: Union[MonomialIdeal, UnitIdeal],
    guard: int = _GUARD_DEFAULT,
    pair_cap: int = _PAIR_CAP_DEFAULT,
) -> PairCensus:
    """Full standard-pair census: exact counts per free set, pairs up to pair_cap.

    Dispatches on arity: closed-form walks (n == 2), grid counting (n == 3),
    guarded box scan otherwise.  ``pair_cap = 0`` skips materialization.
    """
    if isinstance(ideal, UnitIdeal):
        raise UnitIdealError("the unit ideal has no standard pairs")
    n = ideal.n
    if ideal.is_zero:
        everything = frozenset(range(n))
        zero = tuple([0] * n)
        return PairCensus(
            n, n, {everything: 1},
            pairs=(StandardPair(zero, everything),) if pair_cap else (),
        )
    dim = krull_dimension(ideal)
    pairs: list[StandardPair] = []
    truncated = False
    if n == 1:
        e = ideal.generators[0][0]
        counts = {frozenset(): e}
        if pair_cap:
            pairs = [StandardPair((a,), frozenset()) for a in range(min(e, pair_cap))]
            truncated = e > pair_cap
    elif n <= 3:
        counts = _census_2d(ideal) if n == 2 else _census_3d(ideal, guard)
        if pair_cap:
            # keep a canonical prefix: whole free-set groups while they fit
            wanted: set[frozenset[int]] = set()
            budget = pair_cap
            for S in sorted(counts, key=lambda s: (len(s), sorted(s))):
                if counts[S] > budget:
                    truncated = True
                    break
                wanted.add(S)
                budget -= counts[S]
            pairs = (_pairs_2d(ideal, wanted) if n == 2
                     else _pairs_3d(ideal, guard, wanted))
    else:
        counts, pairs = _census_box_scan(ideal, guard)
        if not pair_cap:
            pairs = []
        elif len(pairs) > pair_cap:
            pairs.sort(key=StandardPair.sort_key)
            pairs = pairs[:pair_cap]
            truncated = True
    pairs.sort(key=StandardPair.sort_key)
    census = PairCensus(n, dim, counts, tuple(pairs), truncated)
    if any(census.counts_by_free_size[i] for i in range(dim + 1, n + 1)):
        raise InternalInvariantError(
            f"standard pairs above the Krull dimension {dim}: "
            f"{census.counts_by_free_size}"
        )
    return census


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def _admissible_bruteforce(ideal: MonomialIdeal, alpha: Exponents, S: frozenset[int]) -> bool:
    """Definition check: scan x^alpha * x^beta over the saturated beta box."""
    caps = ideal.max_exponents()
    ranges = [range(caps[i] + 1) if i in S else range(1) for i in range(ideal.n)]
    for beta in itertools.product(*ranges):
        probe = tuple(a + b for a, b in zip(alpha, beta))
        if contains(ideal, probe):
            return False
    return True


def brute_force_standard_pairs(
    ideal: MonomialIdeal,
    box_bound: Optional[int] = None,
    guard: int = 2_000_000,
) -> PairCensus:
    """Oracle census by the partial-order definition; small instances only.

    Enumerates every admissible pair with alpha inside a slack box (default:
    per-coordinate generator maximum + 2) and keeps the pairs minimal under
    (x^g, U) <= (x^a, S) iff x^g | x^a and supp(x^(a-g)) | S subset U, decided
    by explicit comparisons against the admissible set.
    """
    n = ideal.n
    if ideal.is_zero:
        everything = frozenset(range(n))
        return PairCensus(n, n, {everything: 1},
                          pairs=(StandardPair(tuple([0] * n), everything),))
    if box_bound is not None:
        box = tuple(box_bound for _ in range(n))
    else:
        box = tuple(m + 2 for m in ideal.max_exponents())
    if math.prod(box) * (2 ** n) > guard:
        raise GuardExceededError(f"oracle box {box} over {2 ** n} free sets exceeds guard")

    admissible: dict[Exponents, set[frozenset[int]]] = {}
    for size in range(n + 1):
        for S_tuple in itertools.combinations(range(n), size):
            S = frozenset(S_tuple)
            T = _complement(S, n)
            for local in itertools.product(*(range(box[i]) for i in T)):
                alpha = [0] * n
                for pos, i in enumerate(T):
                    alpha[i] = local[pos]
                alpha_t = tuple(alpha)
                if _admissible_bruteforce(ideal, alpha_t, S):
                    admissible.setdefault(alpha_t, set()).add(S)

    def dominated(alpha: Exponents, S: frozenset[int]) -> bool:
        # gamma == alpha with a strictly larger free set
        for i in range(n):
            if i not in S and alpha[i] == 0 and (S | {i}) in admissible.get(alpha, ()):
                return True
        # proper divisors gamma < alpha; the dominating free set must absorb
        # S and the dropped support, so testing exactly that set suffices
        for gamma in itertools.product(*(range(a + 1) for a in alpha)):
            if gamma == alpha:
                continue
            base = S | frozenset(i for i in range(n) if gamma[i] < alpha[i])
            if any(gamma[i] > 0 for i in base):
                continue
            if base in admissible.get(tuple(gamma), ()):
                return True
        return False

    minimal = [
        StandardPair(alpha, S)
        for alpha, sets in admissible.items()
        for S in sets
        if not dominated(alpha, S)
    ]
    minimal.sort(key=StandardPair.sort_key)
    counts: dict[frozenset[int], int] = {}
    for p in minimal:
        counts[p.free] = counts.get(p.free, 0) + 1
    return PairCensus(n, krull_dimension(ideal), counts, tuple(minimal))


# ---------------------------------------------------------------------------
# degree, arithmetic degree, Hilbert cover-sum, L region
# ---------------------------------------------------------------------------

def degree_by_restriction(ideal: MonomialIdeal, dim: Optional[int] = None) -> int:
    """deg as the sum of standard-monomial counts over the (n - dim)-subsets."""
    if ideal.is_zero:
        return 1
    n = ideal.n
    if dim is None:
        dim = krull_dimension(ideal)
    total = 0
    for T in itertools.combinations(range(n), n - dim):
        R = restrict(ideal, T)
        if isinstance(R, UnitIdeal):
            continue
        total += count_standard_monomials(R)
    return total


def degree(ideal: MonomialIdeal, guard: int = _GUARD_DEFAULT) -> int:
    """Number of standard pairs at the Krull dimension, cross-checked against
    the restriction identity; disagreement raises InternalInvariantError."""
    census = enumerate_standard_pairs(ideal, guard=guard, pair_cap=0)
    via_pairs = census.deg
    via_restrictions = degree_by_restriction(ideal, dim=census.dim)
    if via_pairs != via_restrictions:
        raise InternalInvariantError(
            f"degree mismatch: census {via_pairs} vs restriction sum {via_restrictions}"
        )
    return via_pairs


def arithmetic_degree(ideal: MonomialIdeal, guard: int = _GUARD_DEFAULT) -> int:
    return enumerate_standard_pairs(ideal, guard=guard, pair_cap=0).adeg


def hilbert_sum(census: PairCensus, t: int) -> int:
    """The binomial sum over standard pairs; a cover-sum that can overcount the
    Hilbert function in positive dimension (exact for dim 0)."""
    if t < 0:
        raise ValueError("degree must be >= 0")
    if census.truncated:
        raise ValueError("census pairs were truncated; cannot evaluate the sum")
    total = 0
    for p in census.pairs:
        s = len(p.free)
        a = sum(p.alpha)
        if s == 0:
            total += 1 if t == a else 0
        elif t >= a:
            total += math.comb(t - a + s - 1, s - 1)
    return total


def region_L(f: float, h: float, T, guard: int = 10_000_000) -> list[tuple[int, ...]]:
    """Lattice region: prod(a_i + 1) < f and (a_i + 1)^(t-1) > h for every i.

    ``T`` is the kept-variable count or an iterable of indices (only its size
    matters; coordinates follow the kept variables in ascending order).
    For t == 1 the second condition degenerates to 1 > h.
    """
    t = T if isinstance(T, int) else len(tuple(T))
    if t < 1:
        raise ValueError("need at least one kept variable")
    if f <= 1:
        return []
    if t == 1:
        if h >= 1:
            return []
        return [(a,) for a in range(math.ceil(f) - 1)]
    lo = 1
    while lo ** (t - 1) <= h:
        lo += 1
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], prod: int):
        if len(out) > guard:
            raise GuardExceededError("L(f, h) region exceeds the guard")
        if len(prefix) == t:
            out.append(tuple(v - 1 for v in prefix))
            return
        rest = t - len(prefix) - 1
        v = lo
        while prod * v * (lo ** rest) < f:
            prefix.append(v)
            rec(prefix, prod * v)
            prefix.pop()
            v += 1

    rec([], 1)
    out.sort()
    return out
