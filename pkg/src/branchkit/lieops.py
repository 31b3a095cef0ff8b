"""Lie-theoretic operations on subspaces of a ChevalleyAlgebra."""
from __future__ import annotations

from typing import List

from . import linalg as la
from .algebra import ChevalleyAlgebra
from .subspace import Subspace, annihilator, span, _check


def bracket_space(a: ChevalleyAlgebra, s1: Subspace, s2: Subspace) -> Subspace:
    """[s1, s2] as a subspace."""
    return span([a.bracket(x, y) for x in s1.basis for y in s2.basis], a.dim)


def brackets_into(a: ChevalleyAlgebra, s1: Subspace, s2: Subspace, target: Subspace) -> bool:
    return all(target.contains(a.bracket(x, y)) for x in s1.basis for y in s2.basis)


def is_subalgebra(a: ChevalleyAlgebra, s: Subspace) -> bool:
    basis = s.basis
    for i, x in enumerate(basis):
        for y in basis[i + 1:]:
            if not s.contains(a.bracket(x, y)):
                return False
    return True


def normalizer(a: ChevalleyAlgebra, s: Subspace, within: Subspace) -> Subspace:
    """{x in within : [x, s] in s}, by solving the containment system."""
    _check(s, within)
    n = a.dim
    if s.dim == 0 or within.dim == 0:
        return within
    ann = annihilator(s)
    if not ann:
        return within
    # unknown c; x = sum c_i w_i; conditions y . [x, s_j] = 0
    images = [[a.bracket(w, v) for v in s.basis] for w in within.basis]
    rows: List[List] = []
    for j in range(s.dim):
        for y in ann:
            rows.append([la.dot(y, images[i][j]) for i in range(within.dim)])
    cs = la.nullspace(rows, within.dim)
    return span([la.vecmat(c, within.basis) for c in cs], n)


def centralizer(a: ChevalleyAlgebra, s: Subspace, within: Subspace) -> Subspace:
    """{x in within : [x, s] = 0}."""
    if s.dim == 0:
        return within
    rows = []
    images = [[a.bracket(w, v) for v in s.basis] for w in within.basis]
    for j in range(s.dim):
        for k in range(a.dim):
            rows.append([images[i][j][k] for i in range(within.dim)])
    cs = la.nullspace(rows, within.dim)
    return span([la.vecmat(c, within.basis) for c in cs], a.dim)


def restricted_ad(a: ChevalleyAlgebra, x, s: Subspace) -> la.Matrix:
    """Matrix of ad(x) on an ad(x)-stable subspace, in the echelon basis of s."""
    cols = [s.coords(a.bracket(x, v)) for v in s.basis]
    return la.transpose(cols) if cols else []


def derived(a: ChevalleyAlgebra, s: Subspace) -> Subspace:
    return bracket_space(a, s, s)


def trace_functional(a: ChevalleyAlgebra, s: Subspace, cartan: Subspace):
    """Values of t -> trace(ad t | s) on the echelon basis of ``cartan``."""
    from .errors import NotStable
    out = []
    for t in cartan.basis:
        if s.dim == 0:
            out.append(la.ZERO)
            continue
        total = la.ZERO
        for v in s.basis:
            w = a.bracket(t, v)
            if not s.contains(w):
                raise NotStable("subspace is not stable under the Cartan action")
            total += s.coords(w)[s.basis.index(v)]
        out.append(total)
    return tuple(out)


def rational_roots(coeffs):
    """Distinct rational roots of a polynomial (coefficients highest first)."""
    from sympy import Poly, QQ, Symbol
    z = Symbol("z")
    poly = Poly([QQ(c.numerator, c.denominator) for c in coeffs], z, domain=QQ)
    return sorted(la.Q(int(r.p), int(r.q)) for r in poly.ground_roots())


def eigen_decomposition(m: la.Matrix):
    """Eigenspaces (as row bases) of a matrix with rational spectrum, or None."""
    n = len(m)
    if n == 0:
        return {}
    roots = rational_roots(la.charpoly_coeffs(m))
    spaces = {}
    total = 0
    for r in roots:
        shifted = [[m[i][j] - (r if i == j else 0) for j in range(n)] for i in range(n)]
        ker = la.nullspace(shifted, n)
        spaces[r] = ker
        total += len(ker)
    return spaces if total == n else None


def weight_decomposition(a: ChevalleyAlgebra, space: Subspace, cartan: Subspace, seed: int = 0):
    """Basis of an ad(cartan)-stable space by common eigenvectors.

    Returns a list of (weight, vector) with weights as values on the echelon
    basis of ``cartan``; None when the action is not diagonalizable over Q.
    """
    import random
    from fractions import Fraction
    if space.dim == 0:
        return []
    if cartan.dim == 0:
        return [((), v) for v in space.basis]
    rng = random.Random(seed)
    for _attempt in range(20):
        t = la.vecmat([Fraction(rng.randint(1, 97)) for _ in cartan.basis], cartan.basis)
        spaces = eigen_decomposition(restricted_ad(a, t, space))
        if spaces is None:
            return None
        out = []
        ok = True
        for _, vecs in sorted(spaces.items()):
            block = [la.vecmat(c, space.basis) for c in vecs]
            weight = []
            for hb in cartan.basis:
                v = block[0]
                w = a.bracket(hb, v)
                c = next((wi / vi for wi, vi in zip(w, v) if vi), la.ZERO)
                if any(a.bracket(hb, u) != la.scale(c, u) for u in block):
                    ok = False
                    break
                weight.append(c)
            if not ok:
                break
            out.extend((tuple(weight), v) for v in block)
        if ok:
            return out
    return None
