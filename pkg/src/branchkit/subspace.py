"""Rational subspaces in canonical reduced echelon form.

Two subspaces are equal exactly when their echelon matrices are equal, so
``==`` and ``hash`` are meaningful.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from . import linalg as la
from .errors import AmbientMismatch, NotContained, ShapeMismatch


@dataclass(frozen=True)
class Subspace:
    basis: Tuple[Tuple[Fraction, ...], ...]
    ambient_dim: int
    pivots: Tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def basis_matrix(self) -> List[List[Fraction]]:
        return [list(r) for r in self.basis]

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def contains(self, v: Sequence[Fraction]) -> bool:
        return la.is_zero(self.reduce(v))

    def reduce(self, v: Sequence[Fraction]) -> la.Vector:
        """Remainder of ``v`` modulo the subspace; zero on pivot columns."""
        out = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = out[pc]
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] -= c * x
        return tuple(out)

    def coords(self, v: Sequence[Fraction]) -> la.Vector:
        """Coordinates in the echelon basis (read off pivot columns)."""
        if not self.contains(v):
            raise NotContained("vector is not in the subspace")
        return tuple(v[pc] for pc in self.pivots)

    def complement_indices(self) -> List[int]:
        """Standard basis positions spanning the canonical complement."""
        ps = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in ps]

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check(self, other)
        return all(other.contains(v) for v in self.basis)

    def __le__(self, other):
        return self.is_subspace_of(other)

    def __add__(self, other):
        return sum_(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def to_list(self):
        return [[la.format_rational(x) for x in row] for row in self.basis]


def _check(s1: Subspace, s2: Subspace):
    if s1.ambient_dim != s2.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {s1.ambient_dim} and {s2.ambient_dim} differ")


def span(vectors: Iterable[Sequence[Fraction]], ambient_dim: int) -> Subspace:
    rows = [list(v) for v in vectors]
    for r in rows:
        if len(r) != ambient_dim:
            raise AmbientMismatch(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
    red, pivots = la.rref(rows, ambient_dim)
    return Subspace(tuple(tuple(r) for r in red), ambient_dim, tuple(pivots))


def zero(ambient_dim: int) -> Subspace:
    return Subspace((), ambient_dim, ())


def full(ambient_dim: int) -> Subspace:
    return span(la.identity(ambient_dim), ambient_dim)


def coordinate_span(indices: Iterable[int], ambient_dim: int) -> Subspace:
    rows = []
    for i in sorted(set(indices)):
        v = [la.ZERO] * ambient_dim
        v[i] = la.ONE
        rows.append(v)
    return span(rows, ambient_dim)


def sum_(s1: Subspace, s2: Subspace) -> Subspace:
    _check(s1, s2)
    return span(list(s1.basis) + list(s2.basis), s1.ambient_dim)


def annihilator(s: Subspace) -> List[List[Fraction]]:
    """Rows y with y . v = 0 for all v in s (standard dot product)."""
    return la.nullspace(s.basis_matrix, s.ambient_dim) if s.dim else la.identity(s.ambient_dim)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    _check(s1, s2)
    n = s1.ambient_dim
    if s1.dim == 0 or s2.dim == 0:
        return zero(n)
    if s1.dim == n:
        return s2
    if s2.dim == n:
        return s1
    rows = annihilator(s1) + annihilator(s2)
    return span(la.nullspace(rows, n), n)


def sum_all(spaces: Sequence[Subspace], ambient_dim: int) -> Subspace:
    rows = [list(v) for s in spaces for v in s.basis]
    return span(rows, ambient_dim)


def apply_linear_map(m: Sequence[Sequence[Fraction]], s: Subspace) -> Subspace:
    """Image of ``s`` under the matrix ``m`` acting on column vectors."""
    if len(m) == 0 or len(m[0]) != s.ambient_dim:
        raise ShapeMismatch("matrix shape does not match the ambient dimension")
    return span([la.matvec(m, v) for v in s.basis], len(m))


def kernel(m: Sequence[Sequence[Fraction]], ambient_dim: int) -> Subspace:
    return span(la.nullspace([list(r) for r in m], ambient_dim), ambient_dim)


def orthocomplement(form: Sequence[Sequence[Fraction]], s: Subspace, within: Subspace) -> Subspace:
    """{v in within : form(v, s) = 0}.

    ``form`` is the Gram matrix of a symmetric bilinear form on the ambient
    space (typically ``ChevalleyAlgebra.killing_matrix``).
    """
    _check(s, within)
    if not s.is_subspace_of(within):
        raise NotContained("orthocomplement requires s to lie inside `within`")
    n = s.ambient_dim
    if s.dim == 0:
        return within
    # v = c . W ; conditions: (c W) G s_j = 0
    gs = [la.matvec(form, v) for v in s.basis]  # columns G s_j
    conds = [[la.dot(w, g) for w in within.basis] for g in gs]
    cs = la.nullspace(conds, within.dim)
    return span([la.vecmat(c, within.basis) for c in cs], n)


def form_is_nondegenerate_on(form, s: Subspace) -> bool:
    g = [[la.dot(u, la.matvec(form, v)) for v in s.basis] for u in s.basis]
    return la.rank(g, s.dim) == s.dim


def project_along(target: Subspace, along: Subspace, v: Sequence[Fraction]) -> la.Vector:
    """Component in ``target`` of ``v`` for a direct sum target + along."""
    basis = list(target.basis) + list(along.basis)
    c = la.coordinates(basis, v)
    if c is None:
        raise NotContained("vector not in target + along")
    return la.vecmat(c[:target.dim], target.basis) if target.dim else tuple([la.ZERO] * len(v))
