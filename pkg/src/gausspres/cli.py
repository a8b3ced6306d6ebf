"""Command-line interface and the JSON matrix format.

Exit codes: 0 success (or equivalent), 1 not equivalent, 2 invalid input,
3 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import mainlemma, relations
from .errors import BudgetExhausted, GaussPresError
from .matrix import UMat, is_unitary
from .ring import DyadicGauss, GaussInt, di_canonical, di_from_dyadic
from .synth import equivalent, normal_form, normal_word
from .words import eval_word, parse_word, print_word, random_word

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_INVALID = 2
EXIT_VERIFY_FAILED = 3


class InvalidInput(GaussPresError, ValueError):
    pass


# --- matrix documents -------------------------------------------------------


def _entry(triple: Any, dyadic: bool) -> DyadicGauss:
    if not (isinstance(triple, list) and len(triple) == 3 and all(isinstance(x, int) for x in triple)):
        raise InvalidInput(f"matrix entry must be [a, b, k] integers, got {triple!r}")
    a, b, k = triple
    if k < 0:
        raise InvalidInput("exponent must be non-negative")
    return di_from_dyadic(a, b, k) if dyadic else di_canonical(GaussInt(a, b), k)


def matrix_from_document(doc: Any, dyadic: bool = False) -> UMat:
    """Load ``{"n": n, "entries": [[[a, b, k], ...], ...]}``, checking unitarity.

    Each triple means ``(a + b*i) / gamma**k``. With ``dyadic=True`` it means
    ``(a + b*i) / 2**k`` instead, which is what people usually write by hand.
    """
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise InvalidInput('matrix document needs "n" and "entries"')
    n, rows = doc["n"], doc["entries"]
    if not isinstance(n, int) or n < 1 or not isinstance(rows, list) or len(rows) != n:
        raise InvalidInput("entries must be an n x n array")
    if any(not isinstance(r, list) or len(r) != n for r in rows):
        raise InvalidInput("entries must be an n x n array")
    m = UMat([[_entry(x, dyadic) for x in r] for r in rows])
    if not is_unitary(m):
        raise InvalidInput("matrix is not unitary")
    return m


def matrix_to_document(m: UMat) -> dict:
    return {"n": m.n, "entries": [[[x.num.a, x.num.b, x.k] for x in r] for r in m.rows]}


def load_matrix(path: str | Path, dyadic: bool = False) -> UMat:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read matrix file: {exc}") from exc
    return matrix_from_document(doc, dyadic)


def save_matrix(m: UMat, path: str | Path) -> None:
    Path(path).write_text(json.dumps(matrix_to_document(m)) + "\n")


# --- reports ----------------------------------------------------------------


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    seed: int | None
    checked: int = 0
    passed: int = 0
    failed: int = 0
    elapsed: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _digest(*parts: Any) -> str:
    return hashlib.sha256(json.dumps(parts, sort_keys=True).encode()).hexdigest()[:16]


# --- commands ---------------------------------------------------------------


def cmd_synth(args) -> int:
    m = load_matrix(args.matrix, dyadic=args.dyadic)
    w = normal_word(m, check=False)
    if args.check and not (eval_word(w, m.n) @ m).is_identity():
        print("synthesized word does not invert the input", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    print(print_word(w))
    return EXIT_OK


def cmd_eval(args) -> int:
    print(json.dumps(matrix_to_document(eval_word(parse_word(args.word, args.n), args.n))))
    return EXIT_OK


def cmd_nf(args) -> int:
    print(print_word(normal_form(parse_word(args.word, args.n), args.n)))
    return EXIT_OK


def cmd_eq(args) -> int:
    w, v = parse_word(args.w, args.n), parse_word(args.v, args.n)
    same = equivalent(w, v, args.n)
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_NOT_EQUIVALENT


def cmd_random_word(args) -> int:
    print(print_word(random_word(args.n, args.length, random.Random(args.seed))))
    return EXIT_OK


def cmd_verify_relations(args) -> int:
    start = time.perf_counter()
    rep = relations.verify_soundness(args.n, args.set, jobs=args.jobs)
    report = RunReport(
        "verify-relations",
        _digest(args.n, args.set),
        seed=None,
        checked=rep.checked,
        passed=rep.checked - rep.failed,
        failed=rep.failed,
        elapsed=round(time.perf_counter() - start, 3),
        details={"n": args.n, "set": args.set, "failures": rep.failures},
    )
    print(report.to_json())
    return EXIT_OK if rep.ok else EXIT_VERIFY_FAILED


def cmd_mainlemma(args) -> int:
    start = time.perf_counter()
    run = mainlemma.run_mainlemma(args.n, args.samples, args.seed)
    missing = [c for c in mainlemma.CASE_IDS if c not in run.witnessed]
    report = RunReport(
        "mainlemma",
        _digest(args.n, args.samples),
        seed=args.seed,
        checked=run.checked,
        passed=run.checked - run.failed,
        failed=run.failed,
        elapsed=round(time.perf_counter() - start, 3),
        details={
            "n": args.n,
            "case_counts": {c: run.case_counts.get(c, 0) for c in mainlemma.CASE_IDS},
            "unwitnessed": missing,
            "failures": run.failures,
        },
    )
    print(report.to_json())
    if run.failed or (args.require_coverage and missing):
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_derive(args) -> int:
    w, v = parse_word(args.w, args.n), parse_word(args.v, args.n)
    try:
        steps = relations.derive(w, v, args.n, max_steps=args.max_steps)
    except BudgetExhausted as exc:
        print(f"inconclusive: {exc}")
        return EXIT_VERIFY_FAILED
    if steps is None:
        print("inconclusive: no derivation within the length bound")
        return EXIT_VERIFY_FAILED
    word = w
    for s in steps:
        word = relations.rewrite_once(word, s)
        print(f"{s}\t{print_word(word)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausspres",
        description="Exact synthesis and relation checking for unitaries over Z[1/2, i].",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="normal word of a unitary given as JSON")
    p.add_argument("matrix", help="path to a matrix JSON document")
    p.add_argument("--check", action="store_true", help="re-multiply and confirm the result")
    p.add_argument("--dyadic", action="store_true", help="entries are (a+bi)/2^k instead of /(1+i)^k")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("eval", help="matrix of a word, as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("word")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("nf", help="normal form of a word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("word")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("eq", help="exit 0 if two words evaluate equally, 1 otherwise")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("w")
    p.add_argument("v")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("verify-relations", help="exact soundness check of a relation set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", choices=sorted(relations.RELATION_SETS), default="core")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify_relations)

    p = sub.add_parser("mainlemma", help="verify square completions on sampled basic edges")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--require-coverage", action="store_true")
    p.set_defaults(func=cmd_mainlemma)

    p = sub.add_parser("random-word", help="seeded random word over all generators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_random_word)

    p = sub.add_parser("derive", help="bounded search for a rewrite chain between two words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=relations.DEFAULT_MAX_STEPS)
    p.add_argument("w")
    p.add_argument("v")
    p.set_defaults(func=cmd_derive)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", 2) < 1 or (args.command in ("verify-relations", "mainlemma", "random-word") and args.n < 2):
        print("error: --n too small", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except (GaussPresError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
