"""Exact synthesis: syllables, normal paths, normal words and normal forms.

The choices are fixed: the pivot is the rightmost non-identity column, and
the row operation always pairs the first two odd entries. Normal forms are
only unique because these choices never vary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

from .errors import IdentityMatrix
from .matrix import Level, UMat, level_of, odd_indices, pivot_column, require_unitary
from .ring import lde_vec, phase_exponent, row_exponent
from .words import X, Generator, Phase, Word, apply_word, check_word, eval_word, kdag, power


@dataclass(frozen=True)
class PhaseFix:
    """``i_[j]^e``."""

    j: int
    e: int

    def word(self) -> Word:
        return power(Phase(self.j), self.e)

    @property
    def indices(self) -> frozenset[int]:
        return frozenset({self.j})


@dataclass(frozen=True)
class MovePhaseFix:
    """``X_[j,p] i_[j]^e``; with ``e == 0`` the phase part is empty."""

    j: int
    p: int
    e: int

    def word(self) -> Word:
        return (X(self.j, self.p),) + power(Phase(self.j), self.e)

    @property
    def indices(self) -> frozenset[int]:
        return frozenset({self.j, self.p})


@dataclass(frozen=True)
class RowOp:
    """``K_[j,l]^dagger i_[l]^q``; the adjoint is written out as ``K^7``."""

    j: int
    l: int
    q: int

    def word(self) -> Word:
        return kdag(self.j, self.l) + power(Phase(self.l), self.q)

    @property
    def indices(self) -> frozenset[int]:
        return frozenset({self.j, self.l})


Syllable = Union[PhaseFix, MovePhaseFix, RowOp]


class PathStep(NamedTuple):
    state: UMat
    level: Level
    syllable: Syllable


def syllable_at(m: UMat, check: bool = True) -> Syllable:
    """The syllable one step of the synthesis loop emits at state ``m``."""
    if check:
        require_unitary(m)
    p = pivot_column(m)
    if p is None:
        raise IdentityMatrix("the identity has no normal edge")
    v = m.column(p)
    k = lde_vec(v)
    odd = odd_indices(v, k)
    if k == 0:
        j = odd[0]
        e = phase_exponent(v[j].num)
        if j == p:
            assert e != 0, "pivot column equal to e_p"
            return PhaseFix(p, e)
        return MovePhaseFix(j, p, e)
    j, l = odd[0], odd[1]
    return RowOp(j, l, row_exponent(v[j].num, v[l].num))


def apply_syllable(s: Syllable, m: UMat) -> UMat:
    return apply_word(s.word(), m)


def normal_path(u: UMat, check: bool = True) -> list[PathStep]:
    """The chain of normal edges from ``u`` down to the identity."""
    if check:
        require_unitary(u)
    steps = []
    m = u
    while not m.is_identity():
        syl = syllable_at(m, check=False)
        steps.append(PathStep(m, level_of(m, check=False), syl))
        m = apply_syllable(syl, m)
    return steps


def syllables_word(syllables: Sequence[Syllable]) -> Word:
    """Concatenate syllables applied in order, so the latest one is leftmost."""
    return tuple(g for s in reversed(syllables) for g in s.word())


def normal_word(u: UMat, check: bool = True) -> Word:
    """The word ``w`` with ``eval(w) @ u == I``."""
    return syllables_word([step.syllable for step in normal_path(u, check)])


def normal_form(w: Sequence[Generator], n: int) -> Word:
    """The normal word of ``eval(w)**-1``; it depends only on ``eval(w)``."""
    return normal_word(eval_word(w, n).dagger(), check=False)


def equivalent(w: Sequence[Generator], v: Sequence[Generator], n: int) -> bool:
    check_word(v, n)
    return eval_word(w, n) == eval_word(v, n)
