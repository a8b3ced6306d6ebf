"""Relation schemas, their soundness check, and a word-rewriting engine.

Schemas are written as word templates over index variables. An instance is
any injective assignment of indices that keeps every two-index generator in
``j < l`` order; assignments violating that are skipped, which is how the
ordering side conditions are enforced.
"""

from __future__ import annotations

import re
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .errors import BudgetExhausted, IndicesNotOrdered, NoMatchAtPosition
from .words import Generator, Word, eval_word, parse_word, print_word

DEFAULT_MAX_STEPS = 200_000


@dataclass(frozen=True)
class RelationSchema:
    id: str
    lhs: str
    rhs: str
    exponent_range: tuple[int, ...] = ()  # values for the free exponent ``q``

    @property
    def index_vars(self) -> tuple[str, ...]:
        names: list[str] = []
        for group in re.findall(r"\[([^\]]*)\]", f"{self.lhs} {self.rhs}"):
            for name in group.split(","):
                if name not in names:
                    names.append(name)
        return tuple(names)

    def render(self, assignment: dict[str, int], q: int | None = None) -> tuple[str, str]:
        def sub(text: str) -> str:
            text = re.sub(
                r"\[([^\]]*)\]",
                lambda m: "[" + ",".join(str(assignment[v]) for v in m.group(1).split(",")) + "]",
                text,
            )
            if q is not None:
                text = text.replace("^q", f"^{q}")
            return text

        return sub(self.lhs), sub(self.rhs)


CORE_SCHEMAS = (
    RelationSchema("R1", "i[j]^4", ""),
    RelationSchema("R2", "X[j,k]^2", ""),
    RelationSchema("R3", "K[j,k]^8", ""),
    RelationSchema("R4", "i[j] i[k]", "i[k] i[j]"),
    RelationSchema("R5", "i[j] X[k,l]", "X[k,l] i[j]"),
    RelationSchema("R6", "i[j] K[k,l]", "K[k,l] i[j]"),
    RelationSchema("R7", "X[j,k] X[l,m]", "X[l,m] X[j,k]"),
    RelationSchema("R8", "X[j,k] K[l,m]", "K[l,m] X[j,k]"),
    RelationSchema("R9", "K[j,k] K[l,m]", "K[l,m] K[j,k]"),
    RelationSchema("R10", "i[k] X[j,k]", "X[j,k] i[j]"),
    RelationSchema("R11", "X[k,l] X[j,k]", "X[j,k] X[j,l]"),
    RelationSchema("R11'", "X[j,l] X[k,l]", "X[k,l] X[j,k]"),
    RelationSchema("R12", "K[k,l] X[j,k]", "X[j,k] K[j,l]"),
    RelationSchema("R12'", "K[j,l] X[k,l]", "X[k,l] K[j,k]"),
    RelationSchema("R13", "K[j,k] i[k]^2", "X[j,k] K[j,k]"),
    RelationSchema("R14", "K[j,k] i[k]^3", "i[k] K[j,k] i[k] K[j,k]"),
    RelationSchema("R15", "K[j,k] i[j] i[k]", "i[j] i[k] K[j,k]"),
    RelationSchema("R16", "K[j,k]^2 i[j] i[k]", ""),
    RelationSchema("R17", "K[j,k] K[l,m] K[j,l] K[k,m]", "K[j,l] K[k,m] K[j,k] K[l,m]"),
)

_Q = (0, 1, 2, 3)
DERIVED_SCHEMAS = (
    RelationSchema("D18", "Kd[j,l] i[j]", "i[j] i[l] X[j,l] Kd[j,l] i[l]"),
    RelationSchema("D19", "K[j,l]", "i[j]^3 i[l]^3 Kd[j,l]"),
    RelationSchema("D20", "Kd[j,l] i[l] K[j,l]", "i[l]^3 X[j,l] Kd[j,l] i[l]"),
    RelationSchema("D21", "X[j,l] i[j]^q X[k,l]", "X[j,k] X[j,l] i[j]^q", _Q),
    RelationSchema("D22", "X[k,l] i[k]^q X[j,k]", "X[j,k] X[j,l] i[j]^q", _Q),
    RelationSchema("D23", "K[j,l] i[l]^q X[k,l]", "X[k,l] K[j,k] i[k]^q", _Q),
    RelationSchema(
        "D24",
        "Kd[l,l2] Kd[j,j2] Kd[j2,l2] Kd[j,l] X[l,j2]",
        "X[l,j2] Kd[l,l2] Kd[j,j2] Kd[j2,l2] Kd[j,l]",
    ),
    RelationSchema("D25", "Kd[j,l] i[l] X[j,l]", "X[j,l] i[j]^3 i[l] Kd[j,l] i[l]"),
)

SCHEMAS = {s.id: s for s in CORE_SCHEMAS + DERIVED_SCHEMAS}
_SCHEMA_RANK = {s.id: i for i, s in enumerate(CORE_SCHEMAS + DERIVED_SCHEMAS)}
RELATION_SETS = {"core": CORE_SCHEMAS, "derived": DERIVED_SCHEMAS}


@dataclass(frozen=True)
class RelationInstance:
    schema_id: str
    assignment: tuple[tuple[str, int], ...]
    lhs: Word
    rhs: Word
    n: int

    @property
    def key(self) -> tuple:
        return (_SCHEMA_RANK[self.schema_id], self.assignment)

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.assignment)
        return f"{self.schema_id}({args}): {print_word(self.lhs) or 'e'} = {print_word(self.rhs) or 'e'}"


def instantiate_schema(schema: RelationSchema, n: int) -> list[RelationInstance]:
    names = schema.index_vars
    qs: Iterable[int | None] = schema.exponent_range or (None,)
    out = []
    for values in permutations(range(n), len(names)):
        assignment = dict(zip(names, values))
        for q in qs:
            lhs_text, rhs_text = schema.render(assignment, q)
            try:
                lhs, rhs = parse_word(lhs_text, n), parse_word(rhs_text, n)
            except IndicesNotOrdered:
                break
            items = tuple(assignment.items()) + ((("q", q),) if q is not None else ())
            out.append(RelationInstance(schema.id, items, lhs, rhs, n))
    return out


@lru_cache(maxsize=None)
def _instances(n: int, which: str) -> tuple[RelationInstance, ...]:
    return tuple(i for s in RELATION_SETS[which] for i in instantiate_schema(s, n))


def instantiate(n: int, which: str = "core", schema_id: str | None = None) -> list[RelationInstance]:
    """All instances of the ``core`` or ``derived`` relation set in dimension ``n``."""
    if n < 1:
        raise ValueError("dimension must be positive")
    if which not in RELATION_SETS:
        raise ValueError(f"unknown relation set {which!r}")
    insts = _instances(n, which)
    if schema_id is not None:
        return [i for i in insts if i.schema_id == schema_id]
    return list(insts)


@dataclass
class SoundnessReport:
    n: int
    which: str
    checked: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _instance_holds(inst: RelationInstance) -> bool:
    return eval_word(inst.lhs, inst.n) == eval_word(inst.rhs, inst.n)


def verify_soundness(n: int, which: str = "core", jobs: int = 1) -> SoundnessReport:
    """Check ``eval(lhs) == eval(rhs)`` exactly for every instance."""
    insts = sorted(instantiate(n, which), key=lambda i: i.key)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_instance_holds, insts, chunksize=16))
    else:
        results = [_instance_holds(i) for i in insts]
    report = SoundnessReport(n, which, checked=len(insts))
    for inst, ok in zip(insts, results):
        if not ok:
            report.failed += 1
            report.failures.append(str(inst))
    return report


class Direction(Enum):
    FORWARD = "lhs->rhs"
    BACKWARD = "rhs->lhs"

    def flipped(self) -> Direction:
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD


@dataclass(frozen=True)
class RewriteStep:
    instance: RelationInstance
    position: int
    direction: Direction

    @property
    def source(self) -> Word:
        return self.instance.lhs if self.direction is Direction.FORWARD else self.instance.rhs

    @property
    def target(self) -> Word:
        return self.instance.rhs if self.direction is Direction.FORWARD else self.instance.lhs

    def inverse(self) -> RewriteStep:
        """The step undoing this one, applied to the rewritten word."""
        return RewriteStep(self.instance, self.position, self.direction.flipped())

    def __str__(self) -> str:
        return f"{self.instance.schema_id}{dict(self.instance.assignment)} @{self.position} {self.direction.value}"


def rewrite_once(w: Sequence[Generator], step: RewriteStep) -> Word:
    src = step.source
    pos = step.position
    w = tuple(w)
    if not 0 <= pos <= len(w) or w[pos:pos + len(src)] != src:
        raise NoMatchAtPosition(f"{print_word(src) or 'e'} does not occur at position {pos}")
    return w[:pos] + step.target + w[pos + len(src):]


@lru_cache(maxsize=None)
def _rewrite_index(n: int, which: tuple[str, ...]):
    """Source sides grouped by first letter; empty sources kept apart."""
    by_first: dict[Generator, list[tuple[Word, RelationInstance, Direction]]] = {}
    empty: list[tuple[Word, RelationInstance, Direction]] = []
    for name in which:
        for inst in _instances(n, name):
            for d in Direction:
                src = inst.lhs if d is Direction.FORWARD else inst.rhs
                entry = (src, inst, d)
                if src:
                    by_first.setdefault(src[0], []).append(entry)
                else:
                    empty.append(entry)
    return by_first, empty


def find_rewrites(w: Sequence[Generator], n: int, which: Sequence[str] = ("core",)) -> list[RewriteStep]:
    """Every applicable step, ordered by (position, schema, direction)."""
    by_first, empty = _rewrite_index(n, tuple(which))
    w = tuple(w)
    steps = []
    for pos in range(len(w) + 1):
        cands = list(empty)
        if pos < len(w):
            cands += by_first.get(w[pos], ())
        here = [
            RewriteStep(inst, pos, d)
            for src, inst, d in cands
            if w[pos:pos + len(src)] == src
        ]
        here.sort(key=lambda s: (_SCHEMA_RANK[s.instance.schema_id], s.direction is Direction.BACKWARD, s.instance.key))
        steps.extend(here)
    return steps


def replay(w: Sequence[Generator], steps: Sequence[RewriteStep]) -> Word:
    w = tuple(w)
    for s in steps:
        w = rewrite_once(w, s)
    return w


def derive(
    w: Sequence[Generator],
    v: Sequence[Generator],
    n: int,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_queue: int | None = None,
    max_length: int | None = None,
    which: Sequence[str] = ("core",),
) -> list[RewriteStep] | None:
    """Search for a chain of rewrite steps turning ``w`` into ``v``.

    Bidirectional breadth-first search; each side expands one frontier layer
    at a time, smaller side first. ``max_steps`` bounds word expansions and
    ``max_length`` bounds intermediate word length (default: the longer input
    plus 8). Raises :class:`BudgetExhausted` if the budget runs out; returns
    ``None`` if the length-bounded space is exhausted without a connection.
    Neither outcome says the words are inequivalent.
    """
    w, v = tuple(w), tuple(v)
    if w == v:
        return []
    if max_length is None:
        max_length = max(len(w), len(v)) + 8
    # parent maps: word -> (previous word, step from previous to this word)
    parents = ({w: None}, {v: None})
    frontiers = [deque([w]), deque([v])]
    expansions = 0

    def chain(side: int, word: Word) -> list[RewriteStep]:
        out = []
        while parents[side][word] is not None:
            prev, step = parents[side][word]
            out.append(step)
            word = prev
        return out[::-1]

    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        layer, frontiers[side] = frontiers[side], deque()
        for word in layer:
            if expansions >= max_steps:
                raise BudgetExhausted(f"no derivation found within {max_steps} expansions")
            expansions += 1
            for step in find_rewrites(word, n, which):
                nxt = rewrite_once(word, step)
                if len(nxt) > max_length or nxt in parents[side]:
                    continue
                parents[side][nxt] = (word, step)
                if nxt in parents[1 - side]:
                    return chain(0, nxt) + [s.inverse() for s in reversed(chain(1, nxt))]
                frontiers[side].append(nxt)
                if max_queue is not None and len(frontiers[side]) > max_queue:
                    raise BudgetExhausted(f"frontier exceeded {max_queue} words")
    return None
