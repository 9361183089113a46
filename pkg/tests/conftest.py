"""Shared test helpers: an independent Bernoulli-scan reference sampler and
small-ideal generators used by the property and oracle tests."""

from __future__ import annotations

import random

import pytest

from rmideal.ideals import MonomialIdeal, minimalize


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of total degree d in n variables (lex ascending)."""
    if n == 1:
        yield (d,)
        return
    for a in range(d + 1):
        for rest in monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


def all_monomials_up_to(n: int, max_degree: int):
    for d in range(1, max_degree + 1):
        yield from monomials_of_degree(n, d)


def bernoulli_raw(rng: random.Random, n: int, max_degree: int, p: float):
    """Reference model draw: scan every monomial, keep with probability p."""
    return [m for m in all_monomials_up_to(n, max_degree) if rng.random() < p]


def bernoulli_ideal(rng: random.Random, n: int, max_degree: int, p: float) -> MonomialIdeal:
    return minimalize(bernoulli_raw(rng, n, max_degree, p), n)


def random_exponent_gens(rng: random.Random, n: int, count: int, cap: int):
    """Raw generator lists with positive degree, possibly redundant."""
    gens = []
    while len(gens) < count:
        g = tuple(rng.randint(0, cap) for _ in range(n))
        if sum(g) > 0:
            gens.append(g)
    return gens


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
