"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced; they are also repeated in the terminal summary.
"""

import random
import time

import pytest

from conftest import ACCEPTANCE_LINES, brute_lde, cq_value
from gausspres.mainlemma import (
    CASE_IDS,
    FOUR_ODD_COLUMN,
    classify_case,
    handcrafted_fixtures,
    random_state,
    run_mainlemma,
    state_with_pivot_column,
)
from gausspres.matrix import level_of, mat_identity, odd_indices, pivot_column
from gausspres.relations import find_rewrites, rewrite_once, verify_soundness
from gausspres.ring import GaussInt, di_canonical, gi_is_odd, lde, lde_vec
from gausspres.synth import normal_form, normal_path, normal_word
from gausspres.words import X, all_generators, apply_gen, eval_word, expand_generator, print_word, random_word

pytestmark = pytest.mark.acceptance


def report(number: int, title: str, failures: int, elapsed: float, limit: float | None, extra: str = "") -> None:
    ok = failures == 0 and (limit is None or elapsed < limit)
    budget = f" (target < {limit:.0f} s)" if limit is not None else ""
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: failures={failures}, {elapsed:.1f} s{budget}"
    if extra:
        line += f"; {extra}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert failures == 0, line
    assert limit is None or elapsed < limit, line


def test_1_relation_soundness():
    start = time.perf_counter()
    failures, checked = 0, 0
    for n in (2, 3, 4, 5):
        rep = verify_soundness(n, "core")
        failures += rep.failed
        checked += rep.checked
    report(1, "core relation soundness, n=2..5", failures, time.perf_counter() - start, 60, f"{checked} instances")


def test_2_derived_soundness():
    start = time.perf_counter()
    failures, checked = 0, 0
    for n in (4, 5, 6):
        rep = verify_soundness(n, "derived")
        failures += rep.failed
        checked += rep.checked
    report(2, "derived relation soundness, n=4..6", failures, time.perf_counter() - start, 120, f"{checked} instances")


def test_3_synthesis_round_trip():
    rng = random.Random(3)
    start = time.perf_counter()
    failures = 0
    for _ in range(1000):
        n = rng.randint(2, 5)
        u = eval_word(random_word(n, rng.randint(0, 40), rng), n)
        ok = (eval_word(normal_word(u), n) @ u).is_identity()
        levels = [s.level for s in normal_path(u)] + [level_of(mat_identity(n))]
        ok = ok and all(a > b for a, b in zip(levels, levels[1:]))
        failures += not ok
    report(3, "synthesis round trip on 1000 words", failures, time.perf_counter() - start, 120)


def test_4_normal_form_rewrite_invariance():
    rng = random.Random(4)
    start = time.perf_counter()
    failures = 0
    for _ in range(200):
        n = rng.randint(2, 5)
        w = random_word(n, rng.randint(0, 20), rng)
        step = rng.choice(find_rewrites(w, n))
        failures += print_word(normal_form(rewrite_once(w, step), n)) != print_word(normal_form(w, n))
    report(4, "normal form invariant under 200 rewrite steps", failures, time.perf_counter() - start, None)


def test_5_completion_checks_and_coverage():
    start = time.perf_counter()
    failures, checked = 0, 0
    witnessed: set[str] = set()
    details = []
    for n in (3, 4):
        run = run_mainlemma(n, samples=500, seed=5)
        failures += run.failed
        checked += run.checked
        witnessed |= run.witnessed
        details += run.failures
    sb = state_with_pivot_column(4, FOUR_ODD_COLUMN, 3)
    handcrafted = handcrafted_fixtures(4)["X.2.2.2b"]
    failures += handcrafted != (sb, X(1, 2)) or classify_case(sb, X(1, 2)) != "X.2.2.2b"
    missing = [c for c in CASE_IDS if c not in witnessed]
    failures += len(missing)
    extra = f"{checked} edges, {len(CASE_IDS) - len(missing)}/{len(CASE_IDS)} cases witnessed"
    if missing:
        extra += f", missing {missing}"
    report(5, "diagram completions for n=3,4", failures, time.perf_counter() - start, 300, extra)
    assert not details, details[:5]


def test_6_ring_oracle():
    rng = random.Random(6)
    start = time.perf_counter()
    failures = 0
    for _ in range(10_000):
        num = GaussInt(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        k = rng.randint(0, 40)
        t = di_canonical(num, k)
        failures += lde(t) != brute_lde(cq_value(t))
        failures += gi_is_odd(num) != bool((num.a * num.a + num.b * num.b) % 2)
    report(6, "lde and parity against brute force on 10000 pairs", failures, time.perf_counter() - start, None)


def test_7_structural_lemmas():
    rng = random.Random(7)
    start = time.perf_counter()
    failures, zero, positive = 0, 0, 0
    units = {GaussInt(1, 0), GaussInt(-1, 0), GaussInt(0, 1), GaussInt(0, -1)}
    columns = 0
    while columns < 1000:
        n = rng.randint(2, 5)
        u = random_state(n, rng)
        p = pivot_column(u)
        if p is None:
            continue
        columns += 1
        v = u.column(p)
        k = lde_vec(v)
        if k == 0:
            zero += 1
            nonzero = [x for x in v if x.num]
            failures += not (len(nonzero) == 1 and nonzero[0].num in units)
        else:
            positive += 1
            failures += len(odd_indices(v, k)) % 2 != 0
    extra = f"{zero} columns with lde 0, {positive} with lde > 0"
    report(7, "structure of 1000 pivot columns", failures, time.perf_counter() - start, None, extra)
    assert zero and positive


def test_8_basic_expansion_level_bound():
    rng = random.Random(8)
    start = time.perf_counter()
    failures = 0
    for _ in range(500):
        n = rng.randint(2, 5)
        s = random_state(n, rng)
        g = rng.choice(all_generators(n))
        r = apply_gen(g, s)
        bound = max(level_of(s, check=False), level_of(r, check=False))
        state = s
        ok = True
        for h in reversed(expand_generator(g)):
            state = apply_gen(h, state)
            ok = ok and level_of(state, check=False) <= bound
        failures += not (ok and state == r)
    report(8, "basic expansion of 500 simple edges", failures, time.perf_counter() - start, None)
