"""Completion of the square ``s -G-> r``, ``s =N=> t`` for every basic edge.

For a basic generator ``G`` and a non-identity state ``s`` the case analysis
below picks one of 30 cases and prescribes

* ``N``: the syllable at ``s``,
* ``N_prime``: the chain of syllables leaving ``r = G s``,
* ``G_prime``: a word of simple generators with ``G_prime @ t == q``,

where ``q`` is where ``N_prime`` ends. All prescriptions are built from the
pivot data of ``s`` alone (plus ``r`` for the K.2.4 split), never by running
the synthesis loop, so :func:`verify_completion` is an independent check.

``G_prime`` is stored in matrix order: its rightmost letter acts on ``t``
first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExhausted, IdentityMatrix, NotBasicGenerator
from .matrix import UMat, level_of, odd_indices, pivot_column, require_unitary
from .ring import (
    DI_ONE,
    DI_ZERO,
    DyadicGauss,
    GaussInt,
    di_canonical,
    lde_vec,
    phase_exponent,
    residue_exponent_gamma3,
    row_exponent,
)
from .synth import (
    MovePhaseFix,
    PhaseFix,
    RowOp,
    Syllable,
    apply_syllable,
    syllable_at,
    syllables_word,
)
from .words import (
    K,
    X,
    Generator,
    Phase,
    Word,
    all_generators,
    apply_gen,
    apply_word,
    basic_generators,
    eval_word,
    expand_basic,
    invert_word,
    kdag,
    power,
    random_word,
)

PHASE_CASES = ("I.1", "I.2", "I.3", "I.4")
K_CASES = (
    "K.1.1", "K.1.2", "K.2.1a", "K.2.1b", "K.2.2", "K.2.3", "K.2.4-disjoint", "K.2.4-retro",
)
X_CASES = (
    "X.1.1", "X.1.2.1", "X.1.2.2", "X.1.2.3", "X.1.3.1", "X.1.3.2", "X.1.3.3",
    "X.2.1", "X.2.2.1", "X.2.2.2a", "X.2.2.2b", "X.2.2.2c", "X.2.2.3", "X.2.2.4",
    "X.2.2.5", "X.2.2.6", "X.2.2.7", "X.2.2.8",
)
CASE_IDS = PHASE_CASES + K_CASES + X_CASES

DISJOINT = frozenset(
    {"I.1", "K.1.2", "K.2.4-disjoint", "X.1.3.3", "X.2.2.1", "X.2.2.5", "X.2.2.8"}
)
RETROGRADE = frozenset({"K.1.1", "K.2.2", "K.2.3", "K.2.4-retro", "X.1.1", "X.2.1"})


@dataclass(frozen=True)
class DiagramCompletion:
    case_id: str
    N: Syllable
    N_prime: tuple[Syllable, ...]
    G_prime: Word
    q_state: UMat


@dataclass
class CompletionReport:
    case_id: str
    checks: dict[str, bool] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def _record(self, name: str, ok: bool, detail: str) -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            self.violations.append(f"{name}: {detail}")


@dataclass(frozen=True)
class _Pivot:
    """Pivot data of a state: column index, lde, scaled column and odd entries."""

    p: int
    k: int
    w: tuple[GaussInt, ...]
    odd: tuple[int, ...]


def _pivot(s: UMat) -> _Pivot:
    p = pivot_column(s)
    if p is None:
        raise IdentityMatrix("the identity has no normal edge")
    v = s.column(p)
    k = lde_vec(v)
    return _Pivot(p, k, tuple(x.scaled_numerator(k) for x in v), tuple(odd_indices(v, k)))


def _fix(j: int, p: int, e: int) -> Syllable:
    return PhaseFix(p, e) if j == p else MovePhaseFix(j, p, e)


def _alpha(g: Generator) -> int:
    return g.j


def _check_basic(g: Generator, n: int) -> None:
    if not g.is_basic():
        raise NotBasicGenerator(f"{g} is not a basic generator")
    if max(g.indices) >= n:
        raise NotBasicGenerator(f"{g} out of range for dimension {n}")


def _four_odd(piv: _Pivot, alpha: int) -> tuple[int, int, int, int]:
    # The third odd entry sits right after l = alpha.
    return piv.odd[0], piv.odd[1], alpha + 1, piv.odd[3]


def classify_case(s: UMat, g: Generator, check: bool = True) -> str:
    """The unique case of the completion analysis that applies to ``(s, g)``."""
    _check_basic(g, s.n)
    if check:
        require_unitary(s)
    piv = _pivot(s)
    p, k, odd = piv.p, piv.k, piv.odd
    j = odd[0]
    if g.kind == "i":
        if j > 0:
            return "I.1"
        if k == 0:
            return "I.2" if p == 0 else "I.3"
        return "I.4"
    if g.kind == "K":
        if k == 0:
            return "K.1.1" if j < 2 else "K.1.2"
        l = odd[1]
        if j == 0 and l == 1:
            return "K.2.1a" if row_exponent(piv.w[0], piv.w[1]) == 0 else "K.2.1b"
        if j == 0:
            return "K.2.2"
        if j == 1:
            return "K.2.3"
        r = apply_gen(g, s)
        v0, v1 = r[0, p], r[1, p]
        return "K.2.4-retro" if max(v0.k, v1.k) == k else "K.2.4-disjoint"
    a = _alpha(g)
    if k == 0:
        if a >= p:
            return "X.1.1"
        if a == p - 1:
            if j == a + 1:
                return "X.1.2.1"
            if j == a:
                return "X.1.2.2"
            return "X.1.2.3"
        if j == a:
            return "X.1.3.1"
        if j == a + 1:
            return "X.1.3.2"
        return "X.1.3.3"
    if a >= p:
        return "X.2.1"
    l = odd[1]
    if l < a:
        return "X.2.2.1"
    if l == a:
        if not piv.w[a + 1].is_odd():
            return "X.2.2.2a"
        residues = [residue_exponent_gamma3(piv.w[i]) for i in _four_odd(piv, a)]
        return "X.2.2.2b" if not any(residues) else "X.2.2.2c"
    if l == a + 1:
        return "X.2.2.3" if j == a else "X.2.2.4"
    if j < a:
        return "X.2.2.5"
    if j == a:
        return "X.2.2.6"
    if j == a + 1:
        return "X.2.2.7"
    return "X.2.2.8"


def _syllable_from_pivot(piv: _Pivot) -> Syllable:
    """Syllable at a state, read off its pivot data by the case formulas."""
    if piv.k == 0:
        j = piv.odd[0]
        return _fix(j, piv.p, phase_exponent(piv.w[j]))
    j, l = piv.odd[0], piv.odd[1]
    return RowOp(j, l, row_exponent(piv.w[j], piv.w[l]))


def _four_odd_bottom(j: int, l: int, jp: int, lp: int) -> Word:
    """Bottom edge of the all-residues-one square, from ``t`` to ``q``."""
    return (K(jp, lp), K(j, jp), K(l, lp), X(l, jp)) + kdag(l, lp) + kdag(j, jp) + kdag(jp, lp)


def _phase_descent(j: int, l: int, jp: int, lp: int, e: int, swap: int, x: int, y: int) -> Word:
    """``i_[j]^-e i_[l]^-e X_[j,l]^swap i_[jp]^-x i_[lp]^-y``."""
    return (
        power(Phase(j), -e)
        + power(Phase(l), -e)
        + power(X(j, l), swap)
        + power(Phase(jp), -x)
        + power(Phase(lp), -y)
    )


def complete_diagram(s: UMat, g: Generator, check: bool = True) -> DiagramCompletion:
    """Build the prescribed completion of the square at the basic edge ``(s, g)``."""
    case = classify_case(s, g, check=check)
    piv = _pivot(s)
    p, k, w, odd = piv.p, piv.k, piv.w, piv.odd
    n_syl = _syllable_from_pivot(piv)
    r = apply_gen(g, s)
    n_prime: list[Syllable]
    g_prime: Word = ()

    if case in DISJOINT:
        n_prime, g_prime = [n_syl], (g,)
    elif case in RETROGRADE:
        undo = RowOp(0, 1, 0) if g.kind == "K" else MovePhaseFix(g.j, g.l, 0)
        n_prime = [undo, n_syl]
    elif case == "I.2":
        e = (phase_exponent(w[0]) - 1) % 4
        n_prime = [PhaseFix(0, e)] if e else []
    elif case == "I.3":
        n_prime = [MovePhaseFix(0, p, (phase_exponent(w[0]) - 1) % 4)]
    elif case == "I.4":
        l, q = odd[1], n_syl.q
        n_prime = [RowOp(0, l, 1 - q)]
        g_prime = (Phase(0), Phase(l)) + power(X(0, l), q)
    elif case == "K.2.1a":
        n_prime = []
        g_prime = power(Phase(0), 3) + power(Phase(1), 3)
    elif case == "K.2.1b":
        n_prime = [RowOp(0, 1, 1)]
        g_prime = power(Phase(1), 3) + (X(0, 1),)
    else:
        a = _alpha(g)
        xa = X(a, a + 1)
        if k == 0:
            j = odd[0]
            e = phase_exponent(w[j])
            if case == "X.1.2.1":
                n_prime = [MovePhaseFix(a, a + 1, e)]
            elif case == "X.1.2.2":
                # e == 0: the move alone already gives r = t, so no edge leaves r.
                n_prime = [PhaseFix(a + 1, e)] if e else []
            elif case == "X.1.2.3":
                n_prime, g_prime = [n_syl], (X(j, a),)
            elif case == "X.1.3.1":
                n_prime, g_prime = [MovePhaseFix(a + 1, p, e)], (xa,)
            elif case == "X.1.3.2":
                n_prime, g_prime = [MovePhaseFix(a, p, e)], (xa,)
            else:  # pragma: no cover
                raise AssertionError(case)
        else:
            j, l, q = n_syl.j, n_syl.l, n_syl.q
            if case == "X.2.2.2a":
                n_prime, g_prime = [RowOp(j, a + 1, q)], (xa,)
            elif case == "X.2.2.2b":
                jp, lp = a + 1, odd[3]
                n_prime, g_prime = [RowOp(j, l, 0)], _four_odd_bottom(j, l, jp, lp)
            elif case == "X.2.2.2c":
                jp, lp = a + 1, odd[3]
                e, f, gg, h = (residue_exponent_gamma3(w[i]) for i in (j, l, jp, lp))
                q1 = (e - gg) % 2
                q2 = 0 if (e - f - q) % 4 == 0 else 1
                q3 = 0 if (e - gg - q1) % 4 == 0 else 1
                left = _phase_descent(j, l, jp, lp, e, q2, gg, h)
                right = _phase_descent(j, l, jp, lp, e, q3, f, h)
                n_prime = [RowOp(j, l, q1)]
                g_prime = invert_word(right) + _four_odd_bottom(j, l, jp, lp) + left
            elif case == "X.2.2.3":
                n_prime = [RowOp(a, a + 1, q)]
                g_prime = power(xa, q) + power(Phase(a), -q) + power(Phase(a + 1), 2 - q)
            elif case == "X.2.2.4":
                n_prime, g_prime = [RowOp(j, a, q)], (xa,)
            elif case == "X.2.2.6":
                n_prime, g_prime = [RowOp(a + 1, l, q)], (xa,)
            elif case == "X.2.2.7":
                n_prime, g_prime = [RowOp(a, l, q)], (xa,)
            else:  # pragma: no cover
                raise AssertionError(case)

    q_state = apply_word(syllables_word(n_prime), r)
    return DiagramCompletion(case, n_syl, tuple(n_prime), g_prime, q_state)


def g_prime_path(t: UMat, g_prime: Sequence[Generator]) -> list[UMat]:
    """States visited by ``g_prime`` starting at ``t``, both endpoints included."""
    states = [t]
    for gen in reversed(g_prime):
        states.append(apply_gen(gen, states[-1]))
    return states


def verify_completion(s: UMat, g: Generator, dc: DiagramCompletion) -> CompletionReport:
    """Check a completion: syllables, endpoint equality and the level condition.

    Checks: ``a`` N is the syllable at ``s``; ``b`` each N' entry is the
    syllable of its source starting from ``r``; ``c`` both composites land on
    ``q_state``; ``d`` every state on the G' path from ``t`` has level below
    ``level(s)``; ``d_basic`` the same for the path after basic expansion.
    """
    rep = CompletionReport(dc.case_id)
    level_s = level_of(s, check=False)

    actual = syllable_at(s, check=False)
    rep._record("a", actual == dc.N, f"N={dc.N} but syllable at s is {actual}")

    r = apply_gen(g, s)
    state = r
    rep._record("b", True, "")
    for i, syl in enumerate(dc.N_prime):
        if state.is_identity():
            rep._record("b", False, f"N'[{i}]={syl} leaves the identity")
            break
        actual = syllable_at(state, check=False)
        rep._record("b", actual == syl, f"N'[{i}]={syl} but syllable is {actual}")
        state = apply_syllable(syl, state)

    t = apply_syllable(dc.N, s)
    via_g = apply_word(dc.G_prime, t)
    rep._record("c", state == dc.q_state, "N' chain from r does not end at q")
    rep._record("c", via_g == dc.q_state, "G' from t does not end at q")

    for name, word in (("d", dc.G_prime), ("d_basic", expand_basic(dc.G_prime))):
        rep._record(name, True, "")
        for i, st in enumerate(g_prime_path(t, word)):
            lev = level_of(st, check=False)
            rep._record(name, lev < level_s, f"state {i} has level {tuple(lev)} >= {tuple(level_s)}")
    return rep


# --- witnesses and sampling -------------------------------------------------


def column_reduction_word(v: Sequence[DyadicGauss], p: int) -> Word:
    """A word ``G`` with ``G v = e_p`` for a unit vector ``v``, by the synthesis column steps."""
    n = len(v)
    col = UMat([[x] + [DI_ZERO] * (n - 1) for x in v])
    target = tuple(DI_ONE if i == p else DI_ZERO for i in range(n))
    out: Word = ()
    while col.column(0) != target:
        vec = col.column(0)
        k = lde_vec(vec)
        odd = odd_indices(vec, k)
        if k == 0:
            j = odd[0]
            e = phase_exponent(vec[j].num)
            if j > p:
                raise ValueError("nonzero entry below the target row")
            syl = _fix(j, p, e)
        else:
            syl = RowOp(odd[0], odd[1], row_exponent(vec[odd[0]].num, vec[odd[1]].num))
        col = apply_syllable(syl, col)
        out = syl.word() + out
    return out


def state_with_pivot_column(n: int, v: Sequence[DyadicGauss], p: int) -> UMat:
    """A unitary whose column ``p`` is ``v`` and whose later columns are the identity."""
    full = list(v) + [DI_ZERO] * (n - len(v))
    return eval_word(invert_word(column_reduction_word(full, p)), n)


# Four odd numerators, each == 1 mod gamma**3, with squared norms summing to 16.
FOUR_ODD_COLUMN = tuple(
    di_canonical(GaussInt(a, b), 4) for a, b in ((1, 0), (-1, 2), (-1, 2), (-1, -2))
)


def handcrafted_fixtures(n: int) -> dict[str, tuple[UMat, Generator]]:
    """Witnesses for cases that random sampling seldom reaches."""
    fx: dict[str, tuple[UMat, Generator]] = {}
    fx["I.2"] = (eval_word((Phase(0),), n), Phase(0))
    if n >= 2:
        fx["K.2.1a"] = (eval_word((K(0, 1),), n), K(0, 1))
        fx["K.1.1"] = (eval_word((X(0, 1),), n), K(0, 1))
        fx["X.1.1"] = (eval_word((Phase(0),), n), X(0, 1))
    if n >= 4:
        sb = state_with_pivot_column(n, FOUR_ODD_COLUMN, 3)
        fx["X.2.2.2b"] = (sb, X(1, 2))
        fx["X.2.2.2c"] = (apply_gen(Phase(1), sb), X(1, 2))
    return fx


_ALPHABETS = ("all", "monomial", "basic")


def random_state(n: int, rng: random.Random, max_length: int = 30) -> UMat:
    """Evaluate a random word; the alphabet varies to reach lde-0 states too."""
    kind = rng.choice(_ALPHABETS)
    if kind == "monomial":
        alphabet = [g for g in all_generators(n) if g.kind != "K"]
    elif kind == "basic":
        alphabet = basic_generators(n)
    else:
        alphabet = all_generators(n)
    return eval_word(random_word(n, rng.randint(1, max_length), rng, alphabet), n)


def sample_edges(n: int, count: int, rng: random.Random) -> list[tuple[UMat, Generator]]:
    """``count`` random basic edges ``(s, G)`` with ``s`` not the identity."""
    gens = basic_generators(n)
    out = []
    while len(out) < count:
        s = random_state(n, rng)
        if not s.is_identity():
            out.append((s, rng.choice(gens)))
    return out


def fixture_states(
    n: int,
    seed: int,
    targets: Iterable[str] = CASE_IDS,
    budget: int = 5000,
) -> dict[str, tuple[UMat, Generator]]:
    """One witness ``(s, G)`` per target case: handcrafted first, then sampled.

    ``budget`` caps the number of random states drawn. Raises
    :class:`BudgetExhausted` naming the targets left without a witness.
    """
    wanted = set(targets)
    unknown = wanted - set(CASE_IDS)
    if unknown:
        raise ValueError(f"unknown case ids: {sorted(unknown)}")
    found: dict[str, tuple[UMat, Generator]] = {}
    for case, edge in handcrafted_fixtures(n).items():
        if case in wanted and classify_case(*edge) == case:
            found[case] = edge
    rng = random.Random(seed)
    gens = basic_generators(n)
    drawn = 0
    while wanted - found.keys() and drawn < budget:
        drawn += 1
        s = random_state(n, rng)
        if s.is_identity():
            continue
        for g in gens:
            case = classify_case(s, g, check=False)
            if case in wanted and case not in found:
                found[case] = (s, g)
    missing = wanted - found.keys()
    if missing:
        raise BudgetExhausted(
            f"no witness within {budget} states for {sorted(missing, key=CASE_IDS.index)}",
            unmet=sorted(missing, key=CASE_IDS.index),
        )
    return {c: found[c] for c in CASE_IDS if c in found}


@dataclass
class MainLemmaRun:
    n: int
    seed: int
    checked: int = 0
    failed: int = 0
    case_counts: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def witnessed(self) -> set[str]:
        return {c for c, v in self.case_counts.items() if v}

    def record(self, s: UMat, g: Generator) -> CompletionReport:
        dc = complete_diagram(s, g, check=False)
        rep = verify_completion(s, g, dc)
        self.checked += 1
        self.case_counts[dc.case_id] = self.case_counts.get(dc.case_id, 0) + 1
        if not rep.ok:
            self.failed += 1
            self.failures.append(f"{dc.case_id} {g}: {'; '.join(rep.violations)}")
        return rep


def run_mainlemma(n: int, samples: int, seed: int, with_fixtures: bool = True) -> MainLemmaRun:
    """Verify ``samples`` random basic edges, plus one fixture per reachable case."""
    run = MainLemmaRun(n, seed)
    rng = random.Random(seed)
    for s, g in sample_edges(n, samples, rng):
        run.record(s, g)
    if with_fixtures:
        reachable = [c for c in CASE_IDS if n >= 4 or c not in ("X.2.2.2b", "X.2.2.2c")]
        try:
            fixtures = fixture_states(n, seed, reachable)
        except BudgetExhausted as exc:
            fixtures = fixture_states(n, seed, set(reachable) - set(exc.unmet))
        for s, g in fixtures.values():
            run.record(s, g)
    return run
