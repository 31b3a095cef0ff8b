"""Semisimple Lie algebras in a Chevalley basis with exact structure constants."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from . import linalg as la
from .errors import DimensionBound, DimensionMismatch, UnsupportedType
from .rootsystem import RootDatum, StructureConstants, build_root_datum, neg

DEFAULT_DIM_BOUND = 100

SIGN_CONVENTION = (
    "Chevalley basis; [e_a, e_-a] = h_a (coroot); extraspecial pairs "
    "(earliest positive root in (height, reverse-lex) order) have N = +(p+1)"
)


def _label_root(r) -> str:
    return "e[" + ",".join(str(c) for c in r) + "]"


class ChevalleyAlgebra:
    """Basis order: coroots h_1..h_r, then e_a for positive a, then e_-a.

    Elements are tuples of Fractions of length ``dim``.
    """

    def __init__(self, cartan_type, dim_bound: int = DEFAULT_DIM_BOUND):
        try:
            ctype = tuple((str(f).upper(), int(r)) for f, r in cartan_type)
        except (TypeError, ValueError) as exc:
            raise UnsupportedType(f"cannot read Cartan type {cartan_type!r}") from exc
        for fam, rk in ctype:
            if fam not in "ABCDEFG" or len(fam) != 1:
                raise UnsupportedType(f"unknown family {fam!r}")
            if rk < 1:
                raise UnsupportedType(f"invalid rank {rk} for family {fam}")
        rd = build_root_datum(ctype)
        dim = rd.rank + len(rd.roots)
        if dim > dim_bound:
            raise DimensionBound(f"dimension {dim} exceeds bound {dim_bound}")
        self.cartan_type = ctype
        self.root_datum: RootDatum = rd
        self.rank = rd.rank
        self.dim = dim
        self.labels = [f"h{i + 1}" for i in range(self.rank)] + [_label_root(r) for r in rd.roots]
        self.N = StructureConstants(rd)
        self._build_table()
        self._killing = None
        self.metadata = {"sign_convention": SIGN_CONVENTION,
                         "extraspecial_pairs": {
                             ",".join(map(str, xi)): [list(a), list(b)]
                             for xi, (a, b) in self.N.extraspecial.items()}}

    # -- basis bookkeeping -------------------------------------------------
    def root_index(self, r) -> int:
        return self.rank + self.root_datum.index(tuple(r))

    def root_of(self, i: int):
        """Root attached to basis vector ``i`` or ``None`` for Cartan elements."""
        return None if i < self.rank else self.root_datum.roots[i - self.rank]

    def basis_vector(self, i: int) -> la.Vector:
        v = [la.ZERO] * self.dim
        v[i] = la.ONE
        return tuple(v)

    def element(self, coords) -> la.Vector:
        v = la.vec(coords)
        if len(v) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(v)}")
        return v

    def cartan_indices(self) -> range:
        return range(self.rank)

    def coroot_vector(self, r) -> la.Vector:
        v = [la.ZERO] * self.dim
        for i, c in enumerate(self.root_datum.coroot_coords(tuple(r))):
            v[i] = c
        return tuple(v)

    def root_value(self, r, h: Sequence[Fraction]) -> Fraction:
        """alpha(h) for h given in Cartan coordinates (first ``rank`` entries)."""
        w = self.root_datum.to_weight(r)
        return sum((Fraction(a) * b for a, b in zip(w, h)), la.ZERO)

    # -- structure constants -----------------------------------------------
    def _build_table(self):
        rd, r = self.root_datum, self.rank
        roots = rd.roots
        table: List[List[Dict[int, Fraction]]] = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for i in range(r):
            for k, beta in enumerate(roots):
                c = Fraction(rd.to_weight(beta)[i])
                if c:
                    table[i][r + k] = {r + k: c}
                    table[r + k][i] = {r + k: -c}
        for a, alpha in enumerate(roots):
            for b, beta in enumerate(roots):
                s = tuple(x + y for x, y in zip(alpha, beta))
                if not any(s):
                    if all(x >= 0 for x in alpha):
                        cor = rd.coroot_coords(alpha)
                        entry = {i: c for i, c in enumerate(cor) if c}
                    else:
                        cor = rd.coroot_coords(neg(alpha))
                        entry = {i: -c for i, c in enumerate(cor) if c}
                    table[r + a][r + b] = entry
                elif rd.is_root(s):
                    n = self.N(alpha, beta)
                    if n:
                        table[r + a][r + b] = {r + rd.index(s): n}
        self.table = table

    def structure_triples(self):
        """Nonzero (i, j, k, c) with [b_i, b_j] = ... + c b_k and i < j."""
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k, c in sorted(self.table[i][j].items()):
                    out.append((i, j, k, c))
        return out

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> la.Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("element length does not match algebra dimension")
        out = [la.ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            row = self.table[i]
            for j, b in ys:
                for k, c in row[j].items():
                    out[k] += a * b * c
        return tuple(out)

    def ad_matrix(self, x: Sequence[Fraction]) -> la.Matrix:
        """Matrix of ad(x): column j holds [x, b_j]."""
        if len(x) != self.dim:
            raise DimensionMismatch("element length does not match algebra dimension")
        m = la.zeros(self.dim, self.dim)
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j in range(self.dim):
                for k, c in row[j].items():
                    m[k][j] += a * c
        return m

    # -- invariant form ----------------------------------------------------
    @property
    def killing_matrix(self) -> la.Matrix:
        if self._killing is None:
            n = self.dim
            K = la.zeros(n, n)
            for i in range(n):
                for j in range(i, n):
                    s = la.ZERO
                    tj = self.table[j]
                    ti = self.table[i]
                    for m in range(n):
                        for k, c1 in tj[m].items():
                            c2 = ti[k].get(m)
                            if c2:
                                s += c1 * c2
                    K[i][j] = K[j][i] = s
            self._killing = K
        return self._killing

    def form(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("element length does not match algebra dimension")
        K = self.killing_matrix
        return sum((a * K[i][j] * b for i, a in enumerate(x) if a
                    for j, b in enumerate(y) if b), la.ZERO)

    # -- nilpotency --------------------------------------------------------
    def is_nilpotent_element(self, x: Sequence[Fraction]) -> bool:
        m = self.ad_matrix(x)
        current = la.identity(self.dim)
        prev_rank = self.dim
        for _ in range(self.dim):
            current = la.matmul(m, current)
            rk = la.rank(current, self.dim)
            if rk == 0:
                return True
            if rk == prev_rank:
                return False
            prev_rank = rk
        return False

    # -- serialisation -----------------------------------------------------
    def to_dict(self) -> dict:
        K = self.killing_matrix
        return {
            "cartan_type": [[f, r] for f, r in self.cartan_type],
            "dim": self.dim,
            "basis_labels": list(self.labels),
            "structure_constants": [[i, j, k, la.format_rational(c)]
                                    for i, j, k, c in self.structure_triples()],
            "invariant_form": [[la.format_rational(x) for x in row] for row in K],
            "conventions": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self):
        t = "+".join(f"{f}{r}" for f, r in self.cartan_type)
        return f"ChevalleyAlgebra({t}, dim={self.dim})"


def build_algebra(spec, dim_bound: int = DEFAULT_DIM_BOUND) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(spec, dim_bound=dim_bound)


def bracket(a: ChevalleyAlgebra, x, y) -> la.Vector:
    return a.bracket(x, y)


def invariant_form(a: ChevalleyAlgebra, x, y) -> Fraction:
    return a.form(x, y)


def is_nilpotent_element(a: ChevalleyAlgebra, x) -> bool:
    return a.is_nilpotent_element(x)


# -- exhaustive structural checks ------------------------------------------
def _sparse_bracket(a: ChevalleyAlgebra, x: Dict[int, Fraction], y: Dict[int, Fraction]):
    out: Dict[int, Fraction] = {}
    for i, c1 in x.items():
        for j, c2 in y.items():
            for k, c in a.table[i][j].items():
                out[k] = out.get(k, la.ZERO) + c1 * c2 * c
    return {k: v for k, v in out.items() if v}


def check_antisymmetry(a: ChevalleyAlgebra) -> bool:
    n = a.dim
    return all(a.table[i][j] == {k: -c for k, c in a.table[j][i].items()}
               for i in range(n) for j in range(n))


def jacobi_failures(a: ChevalleyAlgebra) -> List[Tuple[int, int, int]]:
    """Basis triples i < j < k violating the Jacobi identity."""
    n = a.dim
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total: Dict[int, Fraction] = {}
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, c in _sparse_bracket(a, {x: la.ONE}, a.table[y][z]).items():
                        total[m] = total.get(m, la.ZERO) + c
                if any(total.values()):
                    bad.append((i, j, k))
    return bad


def form_invariance_failures(a: ChevalleyAlgebra) -> List[Tuple[int, int, int]]:
    """Triples (z, x, y) with <[z,x],y> + <x,[z,y]> != 0."""
    n = a.dim
    K = a.killing_matrix
    bad = []
    for z in range(n):
        for x in range(n):
            zx = a.table[z][x]
            for y in range(x, n):
                zy = a.table[z][y]
                s = sum((c * K[m][y] for m, c in zx.items()), la.ZERO)
                s += sum((c * K[x][m] for m, c in zy.items()), la.ZERO)
                if s:
                    bad.append((z, x, y))
    return bad


def check_cartan_action(a: ChevalleyAlgebra) -> bool:
    """[h, e_alpha] = alpha(h) e_alpha for every coroot basis element."""
    for i in range(a.rank):
        for idx in range(a.rank, a.dim):
            root = a.root_of(idx)
            expected = {idx: Fraction(a.root_datum.to_weight(root)[i])}
            expected = {k: v for k, v in expected.items() if v}
            if a.table[i][idx] != expected:
                return False
    return True
