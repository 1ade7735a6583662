import itertools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from mopuc import systems  # noqa: E402
from mopuc.core import MultiIndexPair  # noqa: E402


def nonneg_indices(r, total):
    """All (n;m) in N^r x N^r with |n| + |m| <= total."""
    for v in itertools.product(range(total + 1), repeat=2 * r):
        if sum(v) <= total:
            yield MultiIndexPair.of(v[:r], v[r:])


def r1_indices(total, low=-6):
    """r = 1 indices (n;m) with 0 <= n + m <= total, components allowed negative."""
    for n in range(low, total - low + 1):
        for m in range(low, total - low + 1):
            if 0 <= n + m <= total:
                yield MultiIndexPair.of([n], [m])


def orthogonality_residuals(system, idx, family, P):
    """Every defining condition of ``family`` at ``idx`` evaluated against ``P``:
    a list of (label, value, target)."""
    out = []
    n, m = idx.n, idx.m
    N, M = idx.abs_n, idx.abs_m
    if family == "phi":
        for j, L in enumerate(system):
            for k in range(-m[j], n[j]):
                out.append((("orth", j, k), L.apply(P.shift(-k)), 0))
        out.append((("monic",), P.coeff(N), 1))
    elif family == "phi_star":
        for j, L in enumerate(system):
            for k in range(-m[j] + 1, n[j] + 1):
                out.append((("orth", j, k), L.apply(P.shift(-k)), 0))
        out.append((("unit",), P.coeff(-M), 1))
    else:
        if family == "xi":
            ks, unit = range(-N, M), -N
        else:
            ks, unit = range(-N + 1, M + 1), M
        for k in ks:
            total = sum((L.apply(p.shift(-k)) for L, p in zip(system, P)), 0)
            out.append((("sum", k), total, 1 if k == unit else 0))
    return out


def support_ok(idx, family, P):
    n, m = idx.n, idx.m
    spans = []
    if family in ("phi", "phi_star"):
        spans = [(P, -idx.abs_m, idx.abs_n)]
    elif family == "xi":
        spans = [(p, -n[j], m[j] - 1) for j, p in enumerate(P)]
    else:
        spans = [(p, -n[j] + 1, m[j]) for j, p in enumerate(P)]
    for p, lo, hi in spans:
        s = p.support()
        if s is not None and (s[0] < lo or s[1] > hi):
            return False
    return True


@pytest.fixture
def leb():
    return systems.lebesgue_system()


@pytest.fixture
def geo():
    return systems.geometric_system()


@pytest.fixture
def s2():
    return systems.s2_system()


@pytest.fixture
def r3():
    return systems.r3_atomic_system()


@pytest.fixture
def sym2():
    return systems.symmetric_r2_system()


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
