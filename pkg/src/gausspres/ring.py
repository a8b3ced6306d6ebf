"""Exact arithmetic in the Gaussian integers Z[i] and in D[i] = Z[1/2, i].

Elements of D[i] are stored as ``num / gamma**k`` with ``gamma = 1 + i``.
Every constructor canonicalizes, so ``k`` is always the least denominator
exponent and the numerator is odd whenever ``k > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EvenArgument, NotAUnit, OddArgument


@dataclass(frozen=True, slots=True)
class GaussInt:
    """A Gaussian integer ``a + b*i`` with arbitrary-precision parts."""

    a: int = 0
    b: int = 0

    def __add__(self, other: GaussInt) -> GaussInt:
        return GaussInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: GaussInt) -> GaussInt:
        return GaussInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> GaussInt:
        return GaussInt(-self.a, -self.b)

    def __mul__(self, other: GaussInt) -> GaussInt:
        a, b, c, d = self.a, self.b, other.a, other.b
        return GaussInt(a * c - b * d, a * d + b * c)

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __complex__(self) -> complex:
        return complex(self.a, self.b)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}i"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}i"

    def conj(self) -> GaussInt:
        return GaussInt(self.a, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b

    def is_odd(self) -> bool:
        return bool((self.a + self.b) & 1)

    def times_i_pow(self, e: int) -> GaussInt:
        """Multiply by ``i**e`` (any integer ``e``)."""
        e %= 4
        a, b = self.a, self.b
        if e == 0:
            return self
        if e == 1:
            return GaussInt(-b, a)
        if e == 2:
            return GaussInt(-a, -b)
        return GaussInt(b, -a)

    def times_gamma_pow(self, d: int) -> GaussInt:
        # gamma**2 = 2i, so even powers are a shift plus a rotation.
        z = GaussInt(self.a << (d >> 1), self.b << (d >> 1)).times_i_pow(d >> 1)
        if d & 1:
            z = GaussInt(z.a - z.b, z.a + z.b)
        return z


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
GAMMA = GaussInt(1, 1)
I_POWERS = (ONE, I, GaussInt(-1, 0), GaussInt(0, -1))


def gi_is_odd(z: GaussInt) -> bool:
    return z.is_odd()


def gi_div_gamma(z: GaussInt) -> GaussInt:
    """Exact division by ``gamma``; ``z`` must be even."""
    if z.is_odd():
        raise OddArgument(f"{z} is not divisible by 1+i")
    return GaussInt((z.a + z.b) >> 1, (z.b - z.a) >> 1)


def gamma_divides(z: GaussInt, m: int) -> bool:
    """True iff ``gamma**m`` divides ``z``."""
    for _ in range(m):
        if not z:
            return True
        if z.is_odd():
            return False
        z = gi_div_gamma(z)
    return True


@dataclass(frozen=True, slots=True)
class DyadicGauss:
    """An element ``num / gamma**k`` of D[i], always in canonical form.

    Build instances with :func:`di_canonical` (or the helpers below); the raw
    constructor trusts its arguments.
    """

    num: GaussInt
    k: int = 0

    def __add__(self, other: DyadicGauss) -> DyadicGauss:
        return di_add(self, other)

    def __sub__(self, other: DyadicGauss) -> DyadicGauss:
        return di_add(self, di_neg(other))

    def __mul__(self, other: DyadicGauss) -> DyadicGauss:
        return di_mul(self, other)

    def __neg__(self) -> DyadicGauss:
        return di_neg(self)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __complex__(self) -> complex:
        return complex(self.num) / (1 + 1j) ** self.k

    def __str__(self) -> str:
        if self.k == 0:
            return str(self.num)
        return f"({self.num})/g^{self.k}"

    def conj(self) -> DyadicGauss:
        return di_conj(self)

    def scaled_numerator(self, k: int) -> GaussInt:
        """Return ``gamma**k * self``; ``k`` must be at least ``self.k``."""
        if k < self.k:
            raise ValueError(f"exponent {k} below least denominator exponent {self.k}")
        return self.num.times_gamma_pow(k - self.k)


def di_canonical(num: GaussInt, k: int = 0) -> DyadicGauss:
    if k < 0:
        raise ValueError("denominator exponent must be a natural number")
    if not num:
        return DI_ZERO
    while k > 0 and not num.is_odd():
        # Strip gamma**2 = 2i in one go when both parts are even.
        if k >= 2 and not (num.a & 1) and not (num.b & 1):
            num = GaussInt(num.b >> 1, -(num.a >> 1))
            k -= 2
        else:
            num = gi_div_gamma(num)
            k -= 1
    return DyadicGauss(num, k)


def di_from_gauss(z: GaussInt) -> DyadicGauss:
    return DyadicGauss(z, 0)


def di_from_dyadic(a: int, b: int, m: int) -> DyadicGauss:
    """Build ``(a + b*i) / 2**m`` using ``1/2**m = i**m / gamma**(2m)``."""
    return di_canonical(GaussInt(a, b).times_i_pow(m), 2 * m)


def di_add(x: DyadicGauss, y: DyadicGauss) -> DyadicGauss:
    if not x.num:
        return y
    if not y.num:
        return x
    k = max(x.k, y.k)
    return di_canonical(x.scaled_numerator(k) + y.scaled_numerator(k), k)


def di_mul(x: DyadicGauss, y: DyadicGauss) -> DyadicGauss:
    if not x.num or not y.num:
        return DI_ZERO
    # Product of two odd numerators is odd, so this is already canonical.
    return DyadicGauss(x.num * y.num, x.k + y.k)


def di_neg(x: DyadicGauss) -> DyadicGauss:
    return DyadicGauss(-x.num, x.k)


def di_conj(x: DyadicGauss) -> DyadicGauss:
    # conj(gamma) = -i*gamma, hence 1/conj(gamma)**k = i**k / gamma**k.
    return DyadicGauss(x.num.conj().times_i_pow(x.k), x.k)


def di_i_pow(e: int) -> DyadicGauss:
    return DyadicGauss(I_POWERS[e % 4], 0)


DI_ZERO = DyadicGauss(ZERO, 0)
DI_ONE = DyadicGauss(ONE, 0)


def lde(t: DyadicGauss) -> int:
    return t.k


def lde_vec(v: Iterable[DyadicGauss]) -> int:
    return max((t.k for t in v), default=0)


def residue_exponent_gamma3(z: GaussInt) -> int:
    """The unique ``e`` in 0..3 with ``z == i**e (mod gamma**3)``."""
    if not z.is_odd():
        raise EvenArgument(f"{z} is even")
    for e, u in enumerate(I_POWERS):
        if gamma_divides(z - u, 3):
            return e
    raise AssertionError(f"no unit residue for odd {z}")  # pragma: no cover


def row_exponent(wj: GaussInt, wl: GaussInt) -> int:
    """The ``q`` in {0, 1} with ``wj == i**q * wl (mod gamma**2)``."""
    if not wj.is_odd() or not wl.is_odd():
        raise EvenArgument(f"row exponent needs two odd entries, got {wj}, {wl}")
    return 0 if gamma_divides(wj - wl, 2) else 1


def phase_exponent(z: GaussInt) -> int:
    """The ``e`` with ``i**e * z == 1``; ``z`` must be a unit of Z[i]."""
    for e in range(4):
        if z.times_i_pow(e) == ONE:
            return e
    raise NotAUnit(f"{z} is not one of 1, i, -1, -i")
