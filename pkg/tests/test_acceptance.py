"""Acceptance criteria 1-9, each run cold in its own process and timed.

Run directly (``python3 tests/test_acceptance.py``) or under pytest; either
way one PASS/FAIL line is printed per criterion.
"""

import json
import subprocess
import sys
import time

import pytest

from drinfeld.checks import CRITERIA

TITLES = {
    1: "Goss triple agreement",
    2: "lattice-sum oracle",
    3: "Goss polynomial differential identities",
    4: "theta formulas",
    5: "integrality",
    6: "Eisenstein pipeline",
    7: "zeta-ratio cross-check",
    8: "v-adic layer",
    9: "Hecke operators",
}


def run_criterion(n):
    suite, budget = CRITERIA[n]
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "drinfeld", "check", "--suite", suite],
                          capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    ok = proc.returncode == 0
    report = None
    if proc.stdout.strip():
        report = json.loads(proc.stdout)
        ok = ok and report["ok"]
    passed = ok and elapsed < budget
    line = (f"criterion {n} ({TITLES[n]}): {'PASS' if passed else 'FAIL'} "
            f"({elapsed:.2f} s, budget {budget} s)")
    return passed, line, report, proc.stderr


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    passed, line, report, stderr = run_criterion(n)
    with capsys.disabled():
        print("\n" + line)
    assert passed, (line, report, stderr)


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for passed, line, _, _ in results:
        print(line)
    sys.exit(0 if all(r[0] for r in results) else 1)
