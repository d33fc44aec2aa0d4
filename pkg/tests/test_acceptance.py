"""The nine acceptance criteria, each at its stated scale and time limit.

Every criterion prints one line ``CRITERION <n> <name> PASS|FAIL ...``.  Run
``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time

import pytest

from dsl_corpus import FORMS, corpus, generated_scripts
from symext import suites
from symext.corpus import restriction_cases
from symext.dsl import parse_script, print_script
from symext.names import Bounds
from symext.runner import print_report, run_script


def _restriction():
    res = suites.restriction_suite(0)
    cases = restriction_cases(0)
    good = sum(c.homogeneous for c in cases)
    bad = len(cases) - good
    largest = max(len(c.system.poset.elements) for c in cases)
    if good < 20 or bad < 5 or largest > 24:
        res.fail(f"corpus shape: homogeneous={good} violating={bad} largest={largest}")
    return res


def _dsl():
    res = suites.SuiteResult("dsl-round-trip")
    used = set()
    for _k, _t, u in generated_scripts():
        used |= u
    if used != set(FORMS):
        res.fail(f"corpus misses {sorted(set(FORMS) - used)}")
    scripts = corpus()
    if len(scripts) < 50:
        res.fail(f"only {len(scripts)} scripts")
    for label, text in scripts:
        res.checked += 1
        ws = parse_script(text)
        printed = print_script(ws)
        if parse_script(printed) != ws or print_script(parse_script(printed)) != printed:
            res.fail(f"{label}: parse(print(ws)) != ws")
    # determinism: every generated script plus the tour, run twice
    runnable = [t for k, t in scripts if k.startswith("gen-") or k == "tour.wb"]
    for text in runnable:
        ws = parse_script(text)
        if print_report(run_script(ws)) != print_report(run_script(ws)):
            res.fail(f"report differs between runs: {text.splitlines()[0]}")
    res.notes["runs"] = 2 * len(runnable)
    return res


CRITERIA = [
    (1, "symmetry-lemma", 60, lambda: suites.symmetry_lemma_suite(4)),
    (2, "forcing-theorem", 60, lambda: suites.forcing_theorem_suite(4)),
    (3, "action-identities", 30, lambda: suites.action_identities_suite(1000, 0, Bounds(8, 8, 8, 8))),
    (4, "block-swap", 30, lambda: suites.block_swap_suite(200, 0)),
    (5, "homogeneity-lemma", 300, lambda: suites.homogeneity_suite(
        3, 4, 3, 4, exhaustive_cap=1_000_000, samples=100_000, seed=0)),
    (6, "q-laws", 60, lambda: suites.q_laws_suite(1000, 0)),
    (7, "restriction-decides", 120, _restriction),
    (8, "normality", 30, lambda: suites.normality_suite(500, 0)),
    (9, "dsl-round-trip", 30, _dsl),
]


def run_criterion(num, name, limit, fn):
    t0 = time.perf_counter()
    res = fn()
    elapsed = time.perf_counter() - t0
    ok = res.ok and elapsed < limit
    line = f"CRITERION {num} {name} {'PASS' if ok else 'FAIL'} {res.summary()} elapsed={elapsed:.1f}s limit={limit}s"
    if res.failures:
        line += f" first-failure: {res.failures[0]}"
    return ok, line, res


@pytest.mark.parametrize("num, name, limit, fn", CRITERIA, ids=[f"{n}-{name}" for n, name, _l, _f in CRITERIA])
def test_criterion(num, name, limit, fn, capsys):
    ok, line, res = run_criterion(num, name, limit, fn)
    with capsys.disabled():
        print("\n" + line)
    assert res.ok, res.failures[:5]
    assert ok, line


if __name__ == "__main__":
    bad = 0
    for crit in CRITERIA:
        ok, line, _ = run_criterion(*crit)
        print(line, flush=True)
        bad += not ok
    sys.exit(1 if bad else 0)
