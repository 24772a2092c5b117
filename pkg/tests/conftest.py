import itertools
import math

import pytest

from sumsetlab.intsets import IntSet


def brute_sumset(a, b):
    """Independent oracle: nested-loop enumeration of pairwise sums."""
    return sorted({x + y for x in a for y in b})


def brute_difference(a, b):
    return sorted({x - y for x in a for y in b})


def normalized_sets(nmax, kmin=1, kmax=None):
    """All subsets of [0, nmax] with min 0 and gcd 1 (plus the singleton)."""
    kmax = kmax if kmax is not None else nmax + 1
    out = []
    for k in range(kmin, kmax + 1):
        if k == 1:
            out.append((0,))
            continue
        for rest in itertools.combinations(range(1, nmax + 1), k - 1):
            if math.gcd(*rest) == 1:
                out.append((0,) + rest)
    return out


@pytest.fixture(scope="session")
def small_normalized_sets():
    return [IntSet(e) for e in normalized_sets(8)]


# One verdict line per acceptance criterion, printed in the terminal summary
# so they survive output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
