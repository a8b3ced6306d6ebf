"""The generator alphabet, words over it, and their matrix semantics.

A word is a plain tuple of :class:`Generator`. The leftmost generator is the
leftmost matrix factor, so it acts last on column vectors:
``eval_word((g1, g2), n) == g1 @ g2``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, IndicesNotOrdered, WordSyntaxError
from .matrix import K_BLOCK, X_BLOCK, UMat, mat_identity, one_level, two_level
from .ring import DyadicGauss, di_add, di_canonical, di_i_pow, di_neg

K_ORDER = 8
ORDERS = {"X": 2, "K": K_ORDER, "i": 4}


@dataclass(frozen=True, slots=True, order=True)
class Generator:
    """One of ``X_[j,l]``, ``K_[j,l]`` (with ``j < l``) or ``i_[j]`` (``l is None``)."""

    kind: str
    j: int
    l: int | None = None

    def __post_init__(self):
        if self.kind not in ORDERS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.j < 0 or (self.l is not None and self.l < 0):
            raise IndexOutOfRange(f"negative index in {self.kind}")
        if self.kind == "i":
            if self.l is not None:
                raise ValueError("phase generator takes a single index")
        else:
            if self.l is None:
                raise ValueError(f"{self.kind} needs two indices")
            if not self.j < self.l:
                raise IndicesNotOrdered(f"{self.kind}[{self.j},{self.l}] requires j < l")

    def __str__(self) -> str:
        if self.l is None:
            return f"i[{self.j}]"
        return f"{self.kind}[{self.j},{self.l}]"

    @property
    def indices(self) -> tuple[int, ...]:
        return (self.j,) if self.l is None else (self.j, self.l)

    @property
    def order(self) -> int:
        return ORDERS[self.kind]

    def is_basic(self) -> bool:
        if self.kind == "X":
            return self.l == self.j + 1
        if self.kind == "K":
            return (self.j, self.l) == (0, 1)
        return self.j == 0

    def matrix(self, n: int) -> UMat:
        if self.kind == "i":
            return one_level(n, self.j, di_i_pow(1))
        return two_level(n, X_BLOCK if self.kind == "X" else K_BLOCK, self.j, self.l)


def X(j: int, l: int) -> Generator:
    return Generator("X", j, l)


def K(j: int, l: int) -> Generator:
    return Generator("K", j, l)


def Phase(j: int) -> Generator:
    return Generator("i", j)


Word = tuple[Generator, ...]
EMPTY: Word = ()


def power(g: Generator, e: int) -> Word:
    """``g**e`` as a word, with the exponent reduced modulo the order of ``g``."""
    return (g,) * (e % g.order)


def kdag(j: int, l: int) -> Word:
    """``K_[j,l]`` adjoint, spelled ``K^7``."""
    return power(K(j, l), 7)


def all_generators(n: int) -> list[Generator]:
    gens = [Phase(j) for j in range(n)]
    for j in range(n):
        for l in range(j + 1, n):
            gens += [X(j, l), K(j, l)]
    return gens


def basic_generators(n: int) -> list[Generator]:
    gens = [Phase(0)] if n >= 1 else []
    if n >= 2:
        gens.append(K(0, 1))
    gens += [X(j, j + 1) for j in range(n - 1)]
    return gens


def check_word(w: Iterable[Generator], n: int) -> None:
    for g in w:
        for idx in g.indices:
            if idx >= n:
                raise IndexOutOfRange(f"{g} out of range for dimension {n}")


_TOKEN = re.compile(r"^(X|K|Kd)\[(\d+),(\d+)\]|^i\[(\d+)\]")


def parse_word(text: str, n: int | None = None) -> Word:
    """Parse whitespace-separated tokens such as ``X[0,1] K[0,1]^2 Kd[1,2] i[2]^3``.

    When ``n`` is given, every index must be below ``n``.
    """
    out: list[Generator] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise WordSyntaxError(f"cannot parse token {tok!r}")
        rest = tok[m.end():]
        exp = 1
        if rest:
            if not re.fullmatch(r"\^\d+", rest):
                raise WordSyntaxError(f"bad exponent in token {tok!r}")
            exp = int(rest[1:])
        if m.group(4) is not None:
            gens: Word = (Phase(int(m.group(4))),)
        else:
            kind, j, l = m.group(1), int(m.group(2)), int(m.group(3))
            if not j < l:
                raise IndicesNotOrdered(f"token {tok!r} requires j < l")
            gens = kdag(j, l) if kind == "Kd" else (Generator(kind, j, l),)
        out.extend(gens * exp)
    w = tuple(out)
    if n is not None:
        check_word(w, n)
    return w


def print_word(w: Sequence[Generator]) -> str:
    parts = []
    for g, run in groupby(w):
        count = sum(1 for _ in run)
        parts.append(str(g) if count == 1 else f"{g}^{count}")
    return " ".join(parts)


def _div_gamma(x: DyadicGauss) -> DyadicGauss:
    return di_canonical(x.num, x.k + 1) if x.num else x


def apply_gen(g: Generator, m: UMat) -> UMat:
    """Left-multiply ``m`` by the generator, touching only its rows."""
    n = m.n
    for idx in g.indices:
        if idx >= n:
            raise IndexOutOfRange(f"{g} out of range for dimension {n}")
    rows = list(m.rows)
    j, l = g.j, g.l
    if g.kind == "i":
        rows[j] = tuple(DyadicGauss(x.num.times_i_pow(1), x.k) for x in rows[j])
    elif g.kind == "X":
        rows[j], rows[l] = rows[l], rows[j]
    else:
        rj, rl = rows[j], rows[l]
        rows[j] = tuple(_div_gamma(di_add(a, b)) for a, b in zip(rj, rl))
        rows[l] = tuple(_div_gamma(di_add(a, di_neg(b))) for a, b in zip(rj, rl))
    return UMat(rows)


def apply_word(w: Sequence[Generator], m: UMat) -> UMat:
    """``eval_word(w) @ m``, computed right to left by row operations."""
    for g in reversed(w):
        m = apply_gen(g, m)
    return m


def eval_word(w: Sequence[Generator], n: int) -> UMat:
    check_word(w, n)
    return apply_word(w, mat_identity(n))


def inverse_gen(g: Generator) -> Word:
    return power(g, g.order - 1)


def invert_word(w: Sequence[Generator]) -> Word:
    return tuple(h for g in reversed(w) for h in inverse_gen(g))


def expand_generator(g: Generator) -> Word:
    """Rewrite one generator into basic generators, recursively."""
    if g.is_basic():
        return (g,)
    if g.kind == "i":
        conj = X(0, g.j)
        inner: Word = (conj, Phase(0), conj)
    elif g.kind == "K" and g.j > 0:
        conj = X(0, g.j)
        inner = (conj, K(0, g.l), conj)
    elif g.kind == "K":
        conj = X(1, g.l)
        inner = (conj, K(0, 1), conj)
    else:
        step = X(g.j, g.j + 1)
        inner = (step, X(g.j + 1, g.l), step)
    return tuple(h for x in inner for h in expand_generator(x))


def expand_basic(w: Sequence[Generator]) -> Word:
    return tuple(h for g in w for h in expand_generator(g))


def random_word(
    n: int,
    length: int,
    rng: random.Random,
    alphabet: Sequence[Generator] | None = None,
) -> Word:
    gens = list(alphabet) if alphabet is not None else all_generators(n)
    return tuple(rng.choice(gens) for _ in range(length))
