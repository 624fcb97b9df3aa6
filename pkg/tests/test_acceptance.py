"""The ten acceptance criteria, one test each, with their time limits.

Run ``python3 tests/test_acceptance.py`` for the bare report, or pytest to
get the same lines in the terminal summary.
"""
import subprocess
import sys
import time
from dataclasses import dataclass
from typing import Callable, Optional

import pytest

from descset.selftest import DEFAULT_SEED, SuiteResult, run_suite

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def determinism() -> SuiteResult:
    cmd = [sys.executable, "-m", "descset.cli", "selftest", "--seed", str(DEFAULT_SEED)]
    procs = [subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE) for _ in range(2)]
    outs = [p.communicate()[0] for p in procs]
    same = outs[0] == outs[1] and len(outs[0]) > 0
    codes = [p.returncode for p in procs]
    summary = f"two runs, {len(outs[0])} bytes each, {'identical' if same else 'DIFFERENT'}, exit codes {codes}"
    return SuiteResult("determinism", same and codes == [0, 0], [], summary)


@dataclass
class Criterion:
    number: int
    title: str
    run: Callable[[], SuiteResult]
    limit: Optional[float] = None  # seconds


CRITERIA = [
    Criterion(1, "monotone maps respect rank, complete on small trees", lambda: run_suite("monotone"), 10),
    Criterion(2, "separation rank equals the brute-force oracle", lambda: run_suite("alpha"), 30),
    Criterion(3, "separation rank is zero or a successor and is attained", lambda: run_suite("attain")),
    Criterion(4, "derivative points survive restriction to small balls", lambda: run_suite("restrict")),
    Criterion(5, "node sets converge to zero iff the tree is well-founded", lambda: run_suite("wf-bridge"), 10),
    Criterion(6, "sibling-code images reduce membership to convergence", lambda: run_suite("p1")),
    Criterion(7, "divergence gives branches, convergence gives stable truncations", lambda: run_suite("branches")),
    Criterion(8, "monotone maps between truncated S and T trees", lambda: run_suite("monotone-lf"), 60),
    Criterion(9, "symbolic verdicts agree with the sampling oracle", lambda: run_suite("oracle")),
    Criterion(10, "selftest reports are byte-identical across runs", determinism),
]


def check(c: Criterion) -> tuple:
    start = time.perf_counter()
    result = c.run()
    elapsed = time.perf_counter() - start
    in_time = c.limit is None or elapsed < c.limit
    ok = result.passed and in_time
    limit = f" (limit {c.limit:g}s)" if c.limit else ""
    line = f"[{'PASS' if ok else 'FAIL'}] {c.number}. {c.title}: {result.summary}; {elapsed:.1f}s{limit}"
    return ok, line, result


@pytest.mark.parametrize("c", CRITERIA, ids=lambda c: f"criterion{c.number:02d}")
def test_criterion(c):
    ok, line, result = check(c)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, "\n".join([line] + result.cases[:20])


if __name__ == "__main__":
    results = [check(c) for c in CRITERIA]
    for _, line, _ in results:
        print(line)
    sys.exit(0 if all(ok for ok, _, _ in results) else 1)
