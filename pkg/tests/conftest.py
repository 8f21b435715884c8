import itertools

import pytest

from dimers.linalg import GaussianInt


def cofactor_det(rows):
    """Laplace expansion along the first row; independent of the elimination code."""
    n = len(rows)
    if n == 0:
        return GaussianInt(1)
    if n == 1:
        return GaussianInt.coerce(rows[0][0])
    total = GaussianInt(0)
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = GaussianInt.coerce(a) * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def brute_force_permanent(matrix):
    n = len(matrix)
    return sum(
        _prod(matrix[i][p[i]] for i in range(n)) for p in itertools.permutations(range(n))
    )


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


@pytest.fixture
def small_sizes():
    return [(m, n) for m in range(1, 7) for n in range(1, 7) if (m * n) % 2 == 0]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
