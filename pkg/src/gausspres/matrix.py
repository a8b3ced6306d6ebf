"""Dense exact matrices over D[i], one- and two-level embeddings, and levels."""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, IndicesNotOrdered, NotUnitary
from .ring import DI_ONE, DI_ZERO, DyadicGauss, GaussInt, di_add, di_mul, lde_vec

Grid = tuple[tuple[DyadicGauss, ...], ...]


class UMat:
    """An immutable ``n x n`` matrix with entries in D[i], indexed from 0.

    Unitarity is not maintained per operation; ask :func:`is_unitary`.
    """

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[DyadicGauss]]):
        grid = tuple(tuple(r) for r in rows)
        n = len(grid)
        if any(len(r) != n for r in grid):
            raise DimensionMismatch("matrix must be square")
        self.n = n
        self.rows: Grid = grid
        self._hash = None

    def __getitem__(self, ij: tuple[int, int]) -> DyadicGauss:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UMat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __matmul__(self, other: UMat) -> UMat:
        return mat_mul(self, other)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"UMat([{body}])"

    def column(self, j: int) -> tuple[DyadicGauss, ...]:
        return tuple(r[j] for r in self.rows)

    def dagger(self) -> UMat:
        return mat_dagger(self)

    def is_identity(self) -> bool:
        return all(
            x == (DI_ONE if i == j else DI_ZERO)
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
        )


class Level(NamedTuple):
    """``(p, k, m)``; tuple comparison gives the lexicographic order."""

    p: int
    k: int
    m: int


LEVEL_ZERO = Level(0, 0, 0)

_ONE_HALF_GAMMA = DyadicGauss(GaussInt(1, 0), 1)
_NEG_HALF_GAMMA = DyadicGauss(GaussInt(-1, 0), 1)
X_BLOCK = ((DI_ZERO, DI_ONE), (DI_ONE, DI_ZERO))
K_BLOCK = ((_ONE_HALF_GAMMA, _ONE_HALF_GAMMA), (_ONE_HALF_GAMMA, _NEG_HALF_GAMMA))


def mat_identity(n: int) -> UMat:
    return UMat(tuple(DI_ONE if i == j else DI_ZERO for j in range(n)) for i in range(n))


def _dot(xs: Sequence[DyadicGauss], ys: Sequence[DyadicGauss]) -> DyadicGauss:
    acc = DI_ZERO
    for x, y in zip(xs, ys):
        if x.num and y.num:
            acc = di_add(acc, di_mul(x, y))
    return acc


def mat_mul(a: UMat, b: UMat) -> UMat:
    if a.n != b.n:
        raise DimensionMismatch(f"cannot multiply {a.n}x{a.n} by {b.n}x{b.n}")
    cols = [b.column(j) for j in range(b.n)]
    return UMat(tuple(_dot(row, col) for col in cols) for row in a.rows)


def mat_dagger(a: UMat) -> UMat:
    return UMat(tuple(a.rows[j][i].conj() for j in range(a.n)) for i in range(a.n))


def is_unitary(a: UMat) -> bool:
    return (mat_dagger(a) @ a).is_identity()


def require_unitary(a: UMat) -> None:
    if not is_unitary(a):
        raise NotUnitary("matrix is not unitary over D[i]")


def _check_index(n: int, *idx: int) -> None:
    for j in idx:
        if not 0 <= j < n:
            raise IndexOutOfRange(f"index {j} out of range for dimension {n}")


def one_level(n: int, j: int, z: DyadicGauss) -> UMat:
    """The matrix ``z_[j]``: identity except entry ``(j, j)`` is ``z``."""
    _check_index(n, j)
    return UMat(
        tuple(
            (z if i == j else DI_ONE) if i == c else DI_ZERO for c in range(n)
        )
        for i in range(n)
    )


def two_level(n: int, block: Sequence[Sequence[DyadicGauss]], j: int, k: int) -> UMat:
    """The matrix ``U_[j,k]`` with the 2x2 ``block`` placed at rows/columns ``j < k``."""
    _check_index(n, j, k)
    if not j < k:
        raise IndicesNotOrdered(f"two-level indices must satisfy j < k, got ({j}, {k})")
    rows = [[DI_ONE if r == c else DI_ZERO for c in range(n)] for r in range(n)]
    (a, b), (c, d) = block
    rows[j][j], rows[j][k], rows[k][j], rows[k][k] = a, b, c, d
    return UMat(rows)


def pivot_column(m: UMat) -> int | None:
    """Index of the rightmost column differing from the identity, or None for I."""
    for p in range(m.n - 1, -1, -1):
        for i, r in enumerate(m.rows):
            if r[p] != (DI_ONE if i == p else DI_ZERO):
                return p
    return None


def odd_indices(v: Sequence[DyadicGauss], k: int) -> list[int]:
    """Ascending indices ``j`` where ``gamma**k * v[j]`` is odd (``k = lde_vec(v)``)."""
    return [j for j, x in enumerate(v) if x.k == k and x.num.is_odd()]


def level_of(m: UMat, check: bool = True) -> Level:
    if check:
        require_unitary(m)
    p = pivot_column(m)
    if p is None:
        return LEVEL_ZERO
    v = m.column(p)
    k = lde_vec(v)
    return Level(p, k, len(odd_indices(v, k)))
