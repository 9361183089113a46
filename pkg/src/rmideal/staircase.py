"""Staircase-level invariants: standard-monomial counts, Hilbert function
values, hyperbolic band/tail predicates, and 2-D staircase corners.

Counting never enumerates the full lattice box: it slices on the first
coordinate and recurses, so zero-dimensional counts at D ~ 10^4 in two
variables stay cheap.  All counts are exact Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ArityError, GuardExceededError, NotZeroDimensionalError
from .ideals import Exponents, MonomialIdeal, contains

_WORK_GUARD_DEFAULT = 100_000_000


@dataclass(frozen=True)
class BandSpec:
    """Hyperbola band (lower, upper) for generator products plus tail level."""

    lower: float
    upper: float  # math.inf allowed
    tail: float
    max_degree: int

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError("lower bound must be >= 0")
        if math.isfinite(self.upper) and self.lower > self.upper:
            raise ValueError(f"band has lower {self.lower} > upper {self.upper}")


def corner_product(m: Sequence[int]) -> int:
    """prod(a_i + 1): the divisor-count statistic every band predicate uses."""
    out = 1
    for e in m:
        out *= e + 1
    return out


def band_check(ideal: MonomialIdeal, band: BandSpec) -> tuple[bool, Optional[Exponents]]:
    """True iff every minimal generator has lower < prod(a_i+1) < upper.

    On failure the second slot carries a violating generator as witness.
    The zero ideal passes vacuously.
    """
    for g in ideal.generators:
        prod = corner_product(g)
        if not (band.lower < prod < band.upper):
            return False, g
    return True, None


def pure_power_exponent(ideal: MonomialIdeal, var: int) -> Optional[int]:
    """Exponent e of a generator x_var^e, or None if no pure power exists."""
    for g in ideal.generators:
        if g[var] > 0 and sum(g) == g[var]:
            return g[var]
    return None


def is_zero_dimensional(ideal: MonomialIdeal) -> bool:
    """dim 0 iff every variable has a pure power among the generators."""
    return all(pure_power_exponent(ideal, i) is not None for i in range(ideal.n))


def _ceiling_steps(gens: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """For 2-var generators, steps (x_start, height) with height = min{g2 : g1 <= x}.

    Redundant generators are harmless (a min over more points).  The list is
    ordered by x_start; heights strictly decrease; a leading unbounded region
    (no generator with g1 == 0) is NOT included -- callers handle x < first start.
    """
    steps = []
    h = None
    for g1, g2 in sorted(gens):
        if h is None or g2 < h:
            steps.append((g1, g2))
            h = g2
    return steps


def _count_std_2d(gens: list[tuple[int, int]]) -> int:
    """Standard monomials of a zero-dimensional ideal in 2 variables."""
    steps = _ceiling_steps(gens)
    # zero-dimensional: first step starts at x=0, last height is 0
    total = 0
    for (x0, h), (x1, _) in zip(steps, steps[1:]):
        total += (x1 - x0) * h
    return total


def _count_std_rec(gens: list[Exponents], n: int, budget: list[int]) -> int:
    budget[0] -= len(gens) + 1
    if budget[0] < 0:
        raise GuardExceededError("standard-monomial recursion exceeded the work guard")
    if n == 1:
        return min(g[0] for g in gens)
    if n == 2:
        return _count_std_2d([(g[0], g[1]) for g in gens])
    # slice on the first coordinate; the active set only changes at generator exponents
    e1 = min(g[0] for g in gens if sum(g) == g[0])  # pure power, exists by zero-dim
    cuts = sorted({g[0] for g in gens if g[0] < e1} | {0})
    total = 0
    for idx, v in enumerate(cuts):
        nxt = cuts[idx + 1] if idx + 1 < len(cuts) else e1
        active = [g[1:] for g in gens if g[0] <= v]
        slice_gens = [g for g in active if sum(g) > 0]
        if len(slice_gens) < len(active):
            continue  # slice contains 1: nothing standard at x1 >= v
        total += (nxt - v) * _count_std_rec(slice_gens, n - 1, budget)
    return total


def count_standard_monomials(ideal: MonomialIdeal, guard: int = _WORK_GUARD_DEFAULT) -> int:
    """Exact number of monomials outside a zero-dimensional ideal (= its degree)."""
    if not is_zero_dimensional(ideal):
        raise NotZeroDimensionalError(
            "standard monomials are infinite: some variable has no pure power"
        )
    return _count_std_rec(list(ideal.generators), ideal.n, [guard])


def hilbert_function(ideal: MonomialIdeal, t: int, guard: int = _WORK_GUARD_DEFAULT) -> int:
    """Number of degree-t monomials not in the ideal (finite in any dimension)."""
    if t < 0:
        raise ValueError("degree must be >= 0")
    n = ideal.n
    if math.comb(n + t - 1, n - 1) > guard:
        raise GuardExceededError(f"degree-{t} slice in {n} variables exceeds the guard")
    gens = ideal.generators

    def walk(prefix: list[int], pos: int, rem: int) -> int:
        if pos == n - 1:
            prefix.append(rem)
            hit = not any(all(x <= y for x, y in zip(g, prefix)) for g in gens)
            prefix.pop()
            return 1 if hit else 0
        total = 0
        for e in range(rem + 1):
            prefix.append(e)
            if any(all(x <= y for x, y in zip(g, prefix)) for g in gens if sum(g) == sum(g[:pos + 1])):
                # a generator supported on the fixed prefix already divides everything below
                prefix.pop()
                continue
            total += walk(prefix, pos + 1, rem - e)
            prefix.pop()
        return total

    return walk([], 0, t)


def _max_prod_segment(lo: int, hi: int, height: Optional[int], budget: int) -> int:
    """Max (x+1)(y+1) for lo <= x <= hi, 0 <= y < height (None = unbounded), x+y <= budget."""
    hi = min(hi, budget)
    if hi < lo:
        return 0
    best = 0
    if height is not None and height > 0:
        # budget slack region: y = height-1 is reachable while x <= budget-height+1
        xa = min(hi, budget - height + 1)
        if xa >= lo:
            best = max(best, (xa + 1) * height)
    # budget-limited region: y = budget - x; concave parabola, check clamped vertex
    blo = lo if height is None else max(lo, budget - height + 2)
    if blo <= hi:
        for x in {blo, hi, min(max(budget // 2, blo), hi), min(max(budget // 2 + 1, blo), hi)}:
            best = max(best, (x + 1) * (budget - x + 1))
    return best


def _max_prod_2d(gens: list[tuple[int, int]], budget: int) -> int:
    if not gens:
        x = budget // 2
        return (x + 1) * (budget - x + 1)
    steps = _ceiling_steps(gens)
    best = 0
    first_x = steps[0][0]
    if first_x > 0:
        best = max(best, _max_prod_segment(0, first_x - 1, None, budget))
    for idx, (x0, h) in enumerate(steps):
        if h == 0:
            break
        x1 = steps[idx + 1][0] - 1 if idx + 1 < len(steps) else budget
        best = max(best, _max_prod_segment(x0, x1, h, budget))
    return best


def _max_prod_rec(gens: list[Exponents], n: int, budget: int, work: list[int]) -> int:
    work[0] -= len(gens) + 1
    if work[0] < 0:
        raise GuardExceededError("staircase-product recursion exceeded the work guard")
    if budget < 0:
        return 0
    if n == 1:
        cap = min((g[0] - 1 for g in gens), default=budget)
        return min(cap, budget) + 1
    if n == 2:
        return _max_prod_2d([(g[0], g[1]) for g in gens], budget)
    pure = [g[0] for g in gens if sum(g) == g[0]]
    x_hi = min(budget, min(pure) - 1) if pure else budget
    best = 0
    by_start = sorted(gens, key=lambda g: g[0])
    active: list[Exponents] = []
    pos = 0
    for a in range(x_hi + 1):
        while pos < len(by_start) and by_start[pos][0] <= a:
            tail = by_start[pos][1:]
            if sum(tail) > 0:
                active.append(tail)
            pos += 1
        best = max(best, (a + 1) * _max_prod_rec(active, n - 1, budget - a, work))
    return best


def max_staircase_product(
    ideal: MonomialIdeal, max_degree: int, guard: int = _WORK_GUARD_DEFAULT
) -> int:
    """Max of prod(a_i+1) over standard monomials alpha with |alpha| <= max_degree.

    tail_check(I, h, D) is the comparison ``max_staircase_product(I, D) <= h``.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    return _max_prod_rec(list(ideal.generators), ideal.n, max_degree, [guard])


def staircase_corners(ideal: MonomialIdeal) -> tuple[list[Exponents], list[Exponents]]:
    """Outer corners (generators by ascending x) and inner corners (adjacent lcms)."""
    if ideal.n != 2:
        raise ArityError(f"staircase corners need n == 2, got n == {ideal.n}")
    if ideal.is_zero:
        raise ValueError("the zero ideal has no staircase")
    outer = sorted(ideal.generators)  # ascending first exponent; antichain => descending second
    inner = [
        (outer[j + 1][0], outer[j][1])
        for j in range(len(outer) - 1)
    ]
    return outer, inner


def tail_check(ideal: MonomialIdeal, level: float, max_degree: int,
               guard: int = _WORK_GUARD_DEFAULT) -> tuple[bool, int]:
    """True iff every standard monomial with |alpha| <= D has prod(a_i+1) <= level."""
    peak = max_staircase_product(ideal, max_degree, guard=guard)
    return peak <= level, peak
