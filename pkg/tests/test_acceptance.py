"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line
in the terminal summary.  Also runnable as ``python tests/test_acceptance.py``.

GTT_SEED picks the seed.  GTT_CLOSURE_SIZE sets the largest element size
for the exhaustive rewriting-closure comparison (the criterion asks for 8,
which is far beyond what fits in a test run; see the README).
"""
import os
import random
import sys
import time
from pathlib import Path

import pytest

from gtt.correspond import check_triangles
from gtt.dedsys import DeductiveSystem, inhabit, is_valid, replays
from gtt.expr import Gen, Top, Turnstile, Wedge
from gtt.lam import LambdaCalculus
from gtt.laws import (LAMBDA_LAWS, check_decider_agreement, check_deduction,
                      check_functional_completeness, check_iccc_laws,
                      check_lambda_laws, closure_agreement)
from gtt.signature import simple_signature
from gtt.syntax import parse, random_file, show_file

sys.path.insert(0, str(Path(__file__).parent))
from test_golden import golden_failures  # noqa: E402

SEED = int(os.environ.get("GTT_SEED", "0"))
CLOSURE_SIZE = int(os.environ.get("GTT_CLOSURE_SIZE", "5"))
CLOSURE_SLACK = 4

RESULTS: dict[int, tuple[str, bool, str]] = {}

a, b, c = Gen("a"), Gen("b"), Gen("c")


def two_gen():
    return simple_signature("ab", [("f", "a", "b"), ("g", "b", "a")])


def three_gen():
    return simple_signature("abc", [("f", "a", "b"), ("g", "b", "c"), ("h", "c", "a")])


def heyting():
    ds = DeductiveSystem(simple_signature("abc"))
    goals = [
        (a, Wedge(a, a)),
        (a, Wedge(a, Top)),
        (Turnstile(Wedge(a, b), c), Turnstile(a, Turnstile(b, c))),
        (Turnstile(a, Wedge(b, c)), Wedge(Turnstile(a, b), Turnstile(a, c))),
        (Wedge(Turnstile(a, b), Turnstile(a, c)), Turnstile(a, Wedge(b, c))),
    ]
    slowest, bad = 0.0, []
    for p, q in goals:
        t = time.perf_counter()
        w = inhabit(p, q, ds, depth=12)
        slowest = max(slowest, time.perf_counter() - t)
        if w is None or not replays(w, ds) or not is_valid(Turnstile(p, q), ds):
            bad.append((p, q))
    ok = not bad and slowest < 5
    return ok, "%d/%d goals, slowest search %.3fs" % (len(goals) - len(bad), len(goals), slowest)


def basic_iccc():
    t = time.perf_counter()
    bad = check_iccc_laws(three_gen(), 1000, SEED)
    dt = time.perf_counter() - t
    return not bad and dt < 30, "1000 instances, %d failures, %.1fs" % (len(bad), dt)


def deduction():
    bad, done = check_deduction(simple_signature("abc"), 200, SEED)
    return not bad and done == 200, "%d goals, %d failures" % (done, len(bad))


def completeness():
    bad = check_functional_completeness(
        simple_signature("ab", [("f", "a", "b"), ("g", "b", "a")], [("k", "b")]), 300, SEED)
    return not bad, "300 polynomials, %d failures" % len(bad)


def triangles():
    t = time.perf_counter()
    rep = check_triangles(LambdaCalculus(two_gen()), samples=500, seed=SEED)
    dt = time.perf_counter() - t
    counts = (rep.types, rep.terms, rep.symbols)
    ok = rep.ok and min(counts) >= 500 and dt < 60
    return ok, "types %d, terms %d, symbols %d, naturality %d, %d failures, %.1fs" % (
        *counts, rep.naturality, len(rep.failures), dt)


def deciders():
    lam = LambdaCalculus(simple_signature("ab", [("f", "a", "b"), ("g", "b", "a")], [("k", "b")]))
    bad = check_decider_agreement(lam, 1000, SEED)
    rep = closure_agreement(two_gen(), CLOSURE_SIZE, CLOSURE_SLACK)
    ok = not bad and rep["unsound"] == 0 and rep["unconnected"] == 0 and CLOSURE_SIZE >= 8
    return ok, ("L-translation: 1000 pairs, %d disagreements; closure oracle at size <= %d "
                "(slack %d): %d elements, %d equal pairs, %d unsound, %d unconnected") % (
        len(bad), CLOSURE_SIZE, CLOSURE_SLACK, rep["elements"], rep["equal_pairs"],
        rep["unsound"], rep["unconnected"])


def lambda_laws():
    lam = LambdaCalculus(simple_signature("ab", [("f", "a", "b"), ("g", "b", "a")], [("k", "b")]))
    bad = check_lambda_laws(lam, 1000 * len(LAMBDA_LAWS), SEED)
    return not bad, "1000 per law, %d failures (subject reduction included)" % len(bad)


def parser_round_trip():
    rng = random.Random(SEED)
    bad = 0
    for _ in range(1000):
        sf = random_file(rng)
        text = show_file(sf)
        again = parse(text)
        if again != sf or show_file(again) != text:
            bad += 1
    gold = golden_failures()
    return not bad and not gold, "1000 files, %d failures; golden: %d failures" % (bad, len(gold))


CRITERIA = {
    1: ("Heyting inhabitation", heyting),
    2: ("basic ICCC equations", basic_iccc),
    3: ("deduction theorem round trip", deduction),
    4: ("functional completeness", completeness),
    5: ("triangle laws", triangles),
    6: ("equality-decider agreement", deciders),
    7: ("lambda-theory laws", lambda_laws),
    8: ("parser round trip", parser_round_trip),
}

# Criterion 6 asks for exhaustive agreement up to size 8; see the README for
# why that is out of reach here.  It is run faithfully and reported as FAIL.
KNOWN_FAILING = {6}


def run(n):
    label, fn = CRITERIA[n]
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported as such
        ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
    RESULTS[n] = (label, ok, detail)
    return ok, detail


def line(n):
    label, ok, detail = RESULTS[n]
    return "%s criterion %d (%s): %s" % ("PASS" if ok else "FAIL", n, label, detail)


@pytest.mark.parametrize("n", [
    pytest.param(n, marks=pytest.mark.xfail(strict=True, reason="exhaustive size-8 oracle"))
    if n in KNOWN_FAILING else n
    for n in sorted(CRITERIA)])
def test_criterion(n):
    ok, detail = run(n)
    assert ok, detail


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        run(n)
        print(line(n), flush=True)
    sys.exit(0 if all(RESULTS[n][1] for n in CRITERIA) else 1)
