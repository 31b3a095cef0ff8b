"""Shared fixtures: the rank-one algebra and the two-factor swap instance."""
from fractions import Fraction
from pathlib import Path

import pytest

from branchkit.algebra import ChevalleyAlgebra
from branchkit.parabolics import parabolic_from_grading
from branchkit.sympair import derive_pair, involution_from_signs

FIXTURES = Path(__file__).parent / "fixtures"

# sl2 basis order: h, e, f
H, E, F = (1, 0, 0), (0, 1, 0), (0, 0, 1)
# sl2+sl2 basis order: h1, h2, e1, e2, f1, f2
H1, H2 = (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0)
E1, E2 = (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0)
F1, F2 = (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)


def vec(*coords):
    return tuple(Fraction(c) for c in coords)


def comb(*terms):
    """Linear combination of (coefficient, vector) pairs."""
    n = len(terms[0][1])
    return tuple(sum((Fraction(c) * v[i] for c, v in terms), Fraction(0)) for i in range(n))


@pytest.fixture(scope="session")
def sl2():
    return ChevalleyAlgebra([("A", 1)])


@pytest.fixture(scope="session")
def sl2x2():
    return ChevalleyAlgebra([("A", 1), ("A", 1)])


@pytest.fixture(scope="session")
def su11(sl2):
    return involution_from_signs(sl2, None, [-1])


@pytest.fixture(scope="session")
def sl2_pair(sl2, su11):
    return derive_pair(sl2, su11, su11)


@pytest.fixture(scope="session")
def swap_pair(sl2x2):
    theta = involution_from_signs(sl2x2, None, [-1, -1])
    sigma = involution_from_signs(sl2x2, [[0, 1], [1, 0]], [1, 1])
    return derive_pair(sl2x2, theta, sigma)


@pytest.fixture(scope="session")
def swap_open(sl2x2, swap_pair):
    return parabolic_from_grading(sl2x2, swap_pair.theta, [1, 1])


@pytest.fixture(scope="session")
def swap_closed(sl2x2, swap_pair):
    return parabolic_from_grading(sl2x2, swap_pair.theta, [1, -1])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
