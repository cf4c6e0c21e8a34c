"""The ten acceptance criteria at full size, with their time limits.

Each criterion records a one-line result that conftest prints in the terminal
summary, so a plain ``pytest`` run shows the pass/fail table.
"""

import subprocess
import sys
import time

import pytest

from pfisterkit import acceptance

RESULTS = {}
SEED = 42


def _record(n, passed, elapsed, limit, detail=""):
    mark = "PASS" if passed else "FAIL"
    line = f"[{mark}] {n}. {acceptance.NAMES[n]} ({elapsed:.2f}s, limit {limit}s)"
    if detail:
        line += f" {detail}"
    RESULTS[n] = line
    print(line)


@pytest.mark.parametrize("n", sorted(acceptance.CRITERIA))
def test_criterion(n):
    limit = acceptance.TIME_LIMITS[n]
    t0 = time.perf_counter()
    res = acceptance.CRITERIA[n](seed=SEED)
    elapsed = time.perf_counter() - t0
    ok = res["passed"] and elapsed < limit
    _record(n, ok, elapsed, limit)
    assert res["passed"], res
    assert elapsed < limit, f"criterion {n} took {elapsed:.2f}s, limit {limit}s"


def test_criterion_10_selftest_is_byte_identical():
    cmd = [sys.executable, "-m", "pfisterkit", "selftest", "--seed", str(SEED)]
    t0 = time.perf_counter()
    runs = [subprocess.run(cmd, capture_output=True, timeout=900) for _ in range(2)]
    elapsed = time.perf_counter() - t0
    same = runs[0].stdout == runs[1].stdout and bool(runs[0].stdout)
    ok = same and all(r.returncode == 0 for r in runs)
    RESULTS[10] = (f"[{'PASS' if ok else 'FAIL'}] 10. {acceptance.NAMES[10]} "
                   f"({elapsed:.2f}s for two runs, {len(runs[0].stdout)} bytes)")
    print(RESULTS[10])
    assert same, "selftest output differs between runs"
    assert all(r.returncode == 0 for r in runs), runs[0].stderr.decode()[-2000:]
