"""The summatory higher-order divisor count Z(n, d).

Z(n, d) counts lattice points alpha in Z_{>=0}^n with prod(alpha_i + 1) <= d,
equivalently n-tuples of positive integers with product <= d.  The exact
kernel uses the block recursion

    Z(1, d) = floor(d),   Z(n, d) = sum_{a=1}^{floor(d)} Z(n-1, floor(d/a)),

grouping a-values with equal floor(d/a) (O(sqrt d) distinct blocks) and
memoizing on (n, floor threshold).  Z depends on d only through floor(d), so
real thresholds are floored on entry; thresholds like D^(k-eps) are
irrational, which keeps the floor unambiguous in practice.
"""

from __future__ import annotations

import math

from .errors import GuardExceededError


def _floor_threshold(d) -> int:
    if d < 0:
        raise ValueError(f"threshold must be >= 0, got {d}")
    return int(math.floor(d))


def z_count(n: int, d) -> int:
    """Exact Z(n, d) as a Python int (never overflows)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dd = _floor_threshold(d)
    if dd == 0:
        return 0
    memo: dict[tuple[int, int], int] = {}
    return _z_rec(n, dd, memo)


def _z_rec(n: int, d: int, memo: dict) -> int:
    if d <= 0:
        return 0
    if n == 1:
        return d
    key = (n, d)
    cached = memo.get(key)
    if cached is not None:
        return cached
    total = 0
    a = 1
    while a <= d:
        v = d // a
        a_hi = d // v  # last a sharing this quotient
        total += (a_hi - a + 1) * _z_rec(n - 1, v, memo)
        a = a_hi + 1
    memo[key] = total
    return total


def z_count_naive(n: int, d) -> int:
    """Ungrouped recursion sum_{a=1}^{floor(d)} Z(n-1, floor(d/a)); test comparator."""
    dd = _floor_threshold(d)
    if dd == 0:
        return 0
    if n == 1:
        return dd
    return sum(z_count_naive(n - 1, dd // a) for a in range(1, dd + 1))


def z_count_bruteforce(n: int, d, guard: int = 50_000_000) -> int:
    """Independent oracle: walk every lattice point with product <= d, one by one."""
    dd = _floor_threshold(d)
    if dd == 0:
        return 0
    budget = [guard]

    def walk(vars_left: int, cap: int) -> int:
        # cap = largest allowed value of the current factor
        if vars_left == 1:
            budget[0] -= cap
            if budget[0] < 0:
                raise GuardExceededError(f"brute-force Z enumeration beyond {guard} points")
            return cap
        total = 0
        for b in range(1, cap + 1):
            total += walk(vars_left - 1, cap // b)
        return total

    return walk(n, dd)


def z_asymptotic(n: int, d: float) -> float:
    """Leading term d (log d)^(n-1) / (n-1)! of the divisor summatory asymptotic."""
    if d <= 1:
        raise ValueError("asymptotic main term needs d > 1")
    return d * math.log(d) ** (n - 1) / math.factorial(n - 1)
