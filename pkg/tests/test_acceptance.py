"""Acceptance criteria, one test each, with wall-clock limits.

Each test records a ``PASS/FAIL criterion N: ...`` line; conftest prints
them all in the terminal summary.
"""
import time

import pytest

from slownim import closed_forms as cf
from slownim import engine, verify
from slownim.cli import main
from slownim.rules import Family, GameSpec, Position, Version

RESULTS: list[str] = []


def _fresh():
    # measure cold: no tables or memo left over from other tests
    verify.solver_tables.cache_clear()
    engine.clear_cache()


def _record(number, title, ok, elapsed, limit, detail=""):
    fast = elapsed < limit
    status = "PASS" if ok and fast else "FAIL"
    line = f"{status} criterion {number}: {title} ({elapsed:.2f}s, limit {limit}s)"
    line += detail
    RESULTS.append(line)
    print(line)
    return ok and fast


def _suite(number, title, suite, limit):
    _fresh()
    start = time.perf_counter()
    res = verify.run_suite(suite)
    elapsed = time.perf_counter() - start
    failing = [ln for ln in res.lines() if not ln.startswith("PASS")]
    detail = "" if res.passed else "\n    " + "\n    ".join(failing)
    assert _record(number, title, res.passed, elapsed, limit, detail), "\n".join(res.lines())


def test_criterion_01_nim_sum():
    _suite(1, "solver matches nim-sum on classic Nim", "nimsum", 1)


def test_criterion_02_moore_zero_one_sets():
    _suite(2, "Moore function 0/1 sets match solver", "prop1", 10)


def test_criterion_03_jenkyns_mayberry():
    _suite(3, "Jenkyns-Mayberry formula matches solver", "thm1", 60)


def test_criterion_04_tetris():
    _fresh()
    start = time.perf_counter()
    res = verify.run_suite("tetris")
    example = cf.tetris(Position((1, 1, 2, 3)), 3) == 2 == verify.tetris_bruteforce(Position((1, 1, 2, 3)), 3)
    ok = res.passed and example and res.reports[0].positions_checked == 1980
    assert _record(4, "tetris closed form matches brute force", ok,
                   time.perf_counter() - start, 60), "\n".join(res.lines())


def test_criterion_05_exact_nim():
    _suite(5, "Exact k-Nim formula matches solver", "thm2", 60)


def test_criterion_06_pet_equivalences():
    _suite(6, "pet equivalences hold for Exact k-Nim", "pet", 30)


def test_criterion_07_swap_classes():
    _suite(7, "swap classes of Moore and Exact 2k-pile Nim", "swap45", 30)


def test_criterion_08_slow_moore_small():
    _suite(8, "slow Moore parity tables match solver", "prop7", 5)


def test_criterion_09_slow_moore_p_positions():
    _suite(9, "slow Moore P-positions by parity vector", "prop8", 120)


def test_criterion_10_slow_moore_misere_swap():
    _suite(10, "slow Moore misere swap sets", "prop9", 10)


def test_criterion_11_slow_exact_three_piles():
    _suite(11, "slow exact 2-Nim three-pile sets and classes", "exact32", 30)


def test_criterion_12_regression():
    _fresh()
    start = time.perf_counter()
    results = verify.regression_suite()
    ids = {r.claim_id for r in results}
    sm62 = [i for i in ids if i.startswith("slowmoore62-")]
    covered = (
        "exact52-12333-is-02" in ids
        and "slowmoore42-1123-is-40" in ids
        and len(sm62) == 9
        and all(f"slowexact54-1233{c}-g5" in ids for c in range(3, 8))
    )
    ok = covered and all(r.passed for r in results)
    bad = [f"FAIL {r.claim_id}: {r.witness}" for r in results if not r.passed]
    detail = "\n    " + "\n    ".join(bad) if bad else ""
    assert _record(12, "literal computations reproduce", ok,
                   time.perf_counter() - start, 120, detail), detail


def test_criterion_13_determinism(tmp_path):
    start = time.perf_counter()
    argv = ["table", "--family", "slow-exact", "--n", "3", "--k", "2", "--cap", "12",
            "--labels", "--format", "{fmt}", "--out", "{out}"]
    same = True
    for fmt in ("csv", "json"):
        blobs = []
        for run in range(2):
            _fresh()
            out = tmp_path / f"{fmt}{run}"
            assert main([a.format(fmt=fmt, out=out) for a in argv]) == 0
            blobs.append(out.read_bytes())
        same = same and blobs[0] == blobs[1] and len(blobs[0]) > 0
    assert _record(13, "table output is byte-identical across runs", same,
                   time.perf_counter() - start, 60)
