"""One test per acceptance criterion, each at its stated tolerance.

Every criterion prints a single PASS/FAIL line (also repeated in the pytest
terminal summary) followed by the individual measurements behind it.
"""

import pytest

from qginibre import experiments

CRITERIA = [
    (1, "closed-form potentials vs quadrature", "potentials"),
    (2, "equilibrium identity for the disk", "equilibrium"),
    (3, "circular law, pooled n=300 x 20", "circular"),
    (4, "energy concentration at 3/4", "energy"),
    (5, "quaternionic limit of class samples", "quaternion"),
    (6, "conjugation-orbit law", "orbit"),
    (7, "quadratic potential refutation for nu", "refutation"),
    (8, "density rewrite identity", "rewrite"),
    (9, "eigen-solver correctness", "solver"),
    (10, "independence product statistic", "independence"),
    (11, "MCMC sanity", "mcmc"),
]

LINES = []


@pytest.mark.parametrize("number,title,group", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_criterion(number, title, group, ctx):
    checks = experiments.run_checks([group], ctx=ctx)
    ok = all(c.passed for c in checks)
    worst = ", ".join(f"{c.test_name}={c.value:.4g}/{c.tolerance:.3g}" for c in checks)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {worst}"
    LINES.append(line)
    print(line)
    for c in checks:
        print("    " + c.line())
    assert ok, "\n".join(c.line() for c in checks if not c.passed)
