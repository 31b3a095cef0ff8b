"""Symbolic test that a subspace lies in the nilpotent cone.

The generic element x(t) = sum t_i b_i is formed over Q[t_1..t_m] and the
characteristic polynomial of ad(x(t)) is computed exactly.  The subspace is
in the nilcone iff every non-leading coefficient vanishes identically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Tuple

from sympy import QQ, symbols
from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .algebra import ChevalleyAlgebra
from .errors import BudgetExceeded, ConsistencyFailure
from .subspace import Subspace

DEFAULT_TERM_BUDGET = 2_000_000


@dataclass(frozen=True)
class NilconeResult:
    verdict: bool
    witness: Optional[Tuple[Fraction, ...]] = None
    witness_params: Optional[Tuple[int, ...]] = None
    nonvanishing_degree: Optional[int] = None
    method: str = "generic-charpoly"
    details: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.verdict


def _qq(x: Fraction):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def generic_charpoly(a: ChevalleyAlgebra, s: Subspace, term_budget: int = DEFAULT_TERM_BUDGET):
    """Coefficients (highest power first) of det(z - ad x(t)) as polys in t."""
    m, n = s.dim, a.dim
    estimate = comb(m + n - 1, n) if m else 1
    if estimate * n > term_budget:
        raise BudgetExceeded(
            f"generic characteristic polynomial of size ~{estimate * n} terms exceeds budget {term_budget}")
    ts = symbols(f"t0:{m}")
    R = QQ[ts]
    gens = [R(t) for t in ts]
    rows = [[R.zero] * n for _ in range(n)]
    for t, b in zip(gens, s.basis):
        ad = a.ad_matrix(b)
        for i in range(n):
            for j in range(n):
                if ad[i][j]:
                    rows[i][j] += t * _qq(ad[i][j])
    dm = DomainMatrix(rows, (n, n), R)
    return R, gens, dm.charpoly()


def _evaluate(poly, point):
    return poly(*[QQ(p) for p in point]) if point else poly


def subspace_in_nilcone(a: ChevalleyAlgebra, s: Subspace,
                        term_budget: int = DEFAULT_TERM_BUDGET) -> NilconeResult:
    if s.dim == 0:
        return NilconeResult(True, details={"coefficients_checked": 0})
    R, gens, coeffs = generic_charpoly(a, s, term_budget)
    bad = [(k, c) for k, c in enumerate(coeffs) if k > 0 and c != R.zero]
    if not bad:
        return NilconeResult(True, details={"coefficients_checked": len(coeffs) - 1})
    degree, poly = bad[0]
    m = s.dim
    # a nonzero poly of degree d has a non-root in {0..d}^m; scan by total size
    for total in range(1, m * degree + 1):
        for point in _points_with_sum(m, total, degree):
            if _evaluate(poly, point) != 0:
                x = la.vecmat([Fraction(p) for p in point], s.basis)
                if a.is_nilpotent_element(x):
                    raise ConsistencyFailure("witness from nonvanishing coefficient is nilpotent")
                return NilconeResult(False, witness=x, witness_params=tuple(point),
                                     nonvanishing_degree=degree,
                                     details={"coefficients_checked": len(coeffs) - 1})
    raise ConsistencyFailure("nonzero polynomial vanished on its whole test grid")


def _points_with_sum(m: int, total: int, cap: int):
    for point in itertools.product(range(cap + 1), repeat=m):
        if sum(point) == total:
            yield point


def sample_grid_agrees(a: ChevalleyAlgebra, s: Subspace, bound: int = 2) -> bool:
    """Spot check: every grid element's nilpotency matches the symbolic verdict."""
    verdict = subspace_in_nilcone(a, s).verdict
    grid = range(-bound, bound + 1)
    all_nil = True
    for point in itertools.product(grid, repeat=s.dim):
        x = la.vecmat([Fraction(p) for p in point], s.basis) if s.dim else ()
        if s.dim and not a.is_nilpotent_element(x):
            all_nil = False
            break
    return all_nil == verdict
