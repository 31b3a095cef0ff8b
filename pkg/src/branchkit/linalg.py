"""Exact rational matrix helpers.

Matrices are lists of rows, entries are ``Fraction``.  Everything here is
deliberately small and dependency free; the heavier symbolic work lives in
:mod:`branchkit.nilcone`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

Q = Fraction
Vector = Tuple[Fraction, ...]
Matrix = List[List[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions and strings like ``"3/4"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use 'num/den' strings")
    raise TypeError(f"cannot read {value!r} as a rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(parse_rational(v) for v in values)


def zeros(n: int, m: int) -> Matrix:
    return [[ZERO] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def transpose(m: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    if not a:
        return []
    n_inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * ncols
        for k in range(n_inner):
            r = row[k]
            if r:
                bk = b[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += r * bk[j]
        out.append(acc)
    return out


def matvec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in m)


def vecmat(v: Sequence[Fraction], m: Sequence[Sequence[Fraction]]) -> Vector:
    ncols = len(m[0]) if m else 0
    acc = [ZERO] * ncols
    for coeff, row in zip(v, m):
        if coeff:
            for j, x in enumerate(row):
                if x:
                    acc[j] += coeff * x
    return tuple(acc)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v: Iterable[Fraction]) -> bool:
    return not any(v)


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(c: Fraction, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def rref(rows: Iterable[Sequence[Fraction]], ncols: int) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        if inv != ONE:
            m[r] = [x * inv for x in m[r]]
        prow = m[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    for j in nz:
                        mi[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Iterable[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis (as rows) of ``{v : M v = 0}``."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], ncols: int):
    """One solution of ``M v = rhs`` or ``None`` when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    v = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return tuple(v)


def coordinates(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]):
    """Coordinates of ``v`` in the given row basis, or ``None`` if outside the span."""
    if not basis:
        return () if is_zero(v) else None
    cols = transpose(basis)
    return solve(cols, v, len(basis))


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red[:n]]


def charpoly_coeffs(m: Matrix) -> List[Fraction]:
    """Characteristic polynomial det(tI - M), highest power first (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [ONE]
    mk = zeros(n, n)
    ident = identity(n)
    for k in range(1, n + 1):
        mk = matmul(m, matadd(mk, matscale(coeffs[-1], ident)))
        ck = -sum((mk[i][i] for i in range(n)), ZERO) / k
        coeffs.append(ck)
    return coeffs


def fast_rank(rows: Iterable[Sequence], ncols: int) -> int:
    """Rank computed in gmpy2 rationals; rows may be sparse dicts or sequences."""
    from gmpy2 import mpq
    pivots = {}   # pivot column -> reduced sparse row
    for row in rows:
        if isinstance(row, dict):
            res = {k: mpq(v.numerator, v.denominator) for k, v in row.items() if v}
        else:
            res = {k: mpq(v.numerator, v.denominator) for k, v in enumerate(row) if v}
        while res:
            pc = min(res)
            prow = pivots.get(pc)
            if prow is None:
                pivots[pc] = res
                break
            c = res[pc] / prow[pc]
            for k, x in prow.items():
                nv = res.get(k, 0) - c * x
                if nv:
                    res[k] = nv
                else:
                    res.pop(k, None)
    return len(pivots)
