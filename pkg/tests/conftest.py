from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from gausspres.ring import DyadicGauss, GaussInt, di_canonical
from gausspres.words import all_generators, eval_word, random_word

# Exact complex rationals as (re, im) pairs of Fractions. These oracles never
# touch the gamma-adic representation they are used to check.
CQ = tuple[Fraction, Fraction]


def cq_mul(x: CQ, y: CQ) -> CQ:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def cq_add(x: CQ, y: CQ) -> CQ:
    return (x[0] + y[0], x[1] + y[1])


def cq_value(t: DyadicGauss) -> CQ:
    """``num / (1+i)**k`` using ``1/(1+i) = (1-i)/2``."""
    out: CQ = (Fraction(t.num.a), Fraction(t.num.b))
    inv_gamma: CQ = (Fraction(1, 2), Fraction(-1, 2))
    for _ in range(t.k):
        out = cq_mul(out, inv_gamma)
    return out


def brute_lde(x: CQ) -> int:
    """Smallest k with (1+i)**k * x a Gaussian integer, by trial multiplication."""
    k = 0
    while x[0].denominator != 1 or x[1].denominator != 1:
        x = (x[0] - x[1], x[0] + x[1])
        k += 1
    return k


gauss_ints = st.builds(GaussInt, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
small_gauss = st.builds(GaussInt, st.integers(-50, 50), st.integers(-50, 50))
dyadics = st.builds(di_canonical, small_gauss, st.integers(0, 12))


def random_unitary(n: int, rng: random.Random, max_length: int = 30):
    return eval_word(random_word(n, rng.randint(0, max_length), rng, all_generators(n)), n)


@pytest.fixture
def rng():
    return random.Random(20240611)


# Lines recorded by the acceptance suite, repeated in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
