"""Involutions of a Chevalley algebra and the symmetric-pair decomposition."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import linalg as la
from .algebra import ChevalleyAlgebra
from .errors import InvalidInput, NonCommuting, NotAutomorphism, NotInvolutive, ShapeMismatch
from .lieops import brackets_into, is_subalgebra
from .subspace import Subspace, apply_linear_map, intersect, kernel, sum_


@dataclass(frozen=True)
class LieInvolution:
    matrix: tuple  # tuple of row tuples, acts on column coordinate vectors
    construction: dict = field(default_factory=dict, compare=False)

    @property
    def dim(self):
        return len(self.matrix)

    def __call__(self, x):
        return la.matvec(self.matrix, x)

    def image(self, s: Subspace) -> Subspace:
        return apply_linear_map(self.matrix, s)

    def fixed(self) -> Subspace:
        return eigenspace(self.matrix, 1)

    def anti_fixed(self) -> Subspace:
        return eigenspace(self.matrix, -1)


def eigenspace(m, value) -> Subspace:
    n = len(m)
    shifted = [[m[i][j] - (value if i == j else 0) for j in range(n)] for i in range(n)]
    return kernel(shifted, n)


def _root_image(a: ChevalleyAlgebra, root_map, r):
    n = a.rank
    return tuple(sum(r[i] * root_map[i][k] for i in range(n)) for k in range(n))


def validate_involution(a: ChevalleyAlgebra, m, construction=None) -> LieInvolution:
    n = a.dim
    if len(m) != n or any(len(row) != n for row in m):
        raise ShapeMismatch(f"involution matrix must be {n}x{n}")
    m = [list(map(Fraction, row)) for row in m]
    sq = la.matmul(m, m)
    if sq != la.identity(n):
        raise NotInvolutive("matrix does not square to the identity")
    cols = [tuple(m[i][j] for i in range(n)) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = la.matvec(m, a.bracket(a.basis_vector(i), a.basis_vector(j)))
            rhs = a.bracket(cols[i], cols[j])
            if lhs != rhs:
                raise NotAutomorphism(
                    f"bracket of basis pair ({a.labels[i]}, {a.labels[j]}) is not preserved",
                    triple=(i, j))
    return LieInvolution(tuple(tuple(r) for r in m), dict(construction or {"mode": "matrix"}))


def involution_from_matrix(a: ChevalleyAlgebra, rows) -> LieInvolution:
    m = [[la.parse_rational(x) for x in row] for row in rows]
    return validate_involution(a, m, {"mode": "matrix"})


def involution_from_signs(a: ChevalleyAlgebra, root_map: Optional[Sequence[Sequence[int]]] = None,
                          signs=None, cartan_action=None) -> LieInvolution:
    """e_a -> sign(a) e_{phi(a)} with phi given on simple roots.

    ``root_map[i]`` is the image of the i-th simple root in simple-root
    coordinates.  ``signs`` is either a list with one entry per simple root
    (the remaining root vectors follow by bracketing) or a mapping from
    every root (tuple) to its sign.
    """
    rd = a.root_datum
    r = a.rank
    if root_map is None:
        root_map = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    root_map = [[int(x) for x in row] for row in root_map]
    if len(root_map) != r or any(len(row) != r for row in root_map):
        raise ShapeMismatch(f"root_map must be {r}x{r}")
    images = {}
    for root in rd.roots:
        img = _root_image(a, root_map, root)
        if not rd.is_root(img):
            raise InvalidInput(f"root_map sends root {root} to non-root {img}")
        images[root] = img
    if len(set(images.values())) != len(images):
        raise InvalidInput("root_map is not a bijection of the root set")
    n = a.dim
    cols = [None] * n
    # Cartan part: h_i = alpha_i^vee -> phi(alpha_i)^vee
    for i in range(r):
        simple = tuple(1 if j == i else 0 for j in range(r))
        cols[i] = a.coroot_vector(images[simple])
    if cartan_action is not None:
        ca = [[la.parse_rational(x) for x in row] for row in cartan_action]
        derived = [[cols[j][i] for j in range(r)] for i in range(r)]
        if ca != derived:
            raise NotAutomorphism("cartan action does not match the one induced by root_map")
    if signs is None:
        signs = [1] * r
    if isinstance(signs, Mapping):
        full = {tuple(k): la.parse_rational(v) for k, v in signs.items()}
        for root in rd.roots:
            c = full.get(root)
            if c is None or c == 0:
                raise InvalidInput(f"missing or zero sign for root {root}")
            cols[a.root_index(root)] = la.scale(c, a.basis_vector(a.root_index(images[root])))
    else:
        simple_signs = [la.parse_rational(s) for s in signs]
        if len(simple_signs) != r or any(s == 0 for s in simple_signs):
            raise InvalidInput("need one nonzero sign per simple root")
        for i in range(r):
            simple = tuple(1 if j == i else 0 for j in range(r))
            minus = tuple(-x for x in simple)
            cols[a.root_index(simple)] = la.scale(
                simple_signs[i], a.basis_vector(a.root_index(images[simple])))
            cols[a.root_index(minus)] = la.scale(
                1 / simple_signs[i], a.basis_vector(a.root_index(images[minus])))
        for xi in rd.positive_roots:
            if sum(xi) < 2:
                continue
            for sgn in (1, -1):
                target = tuple(sgn * x for x in xi)
                for i in range(r):
                    alpha = tuple(sgn if j == i else 0 for j in range(r))
                    eta = tuple(x - y for x, y in zip(target, alpha))
                    if rd.is_root(eta) and cols[a.root_index(eta)] is not None:
                        nconst = a.N(alpha, eta)
                        img = a.bracket(cols[a.root_index(alpha)], cols[a.root_index(eta)])
                        cols[a.root_index(target)] = la.scale(1 / nconst, img)
                        break
    m = la.transpose(cols)
    construction = {"mode": "signs", "root_map": root_map,
                    "signs": signs if not isinstance(signs, Mapping) else "full"}
    return validate_involution(a, m, construction)


def identity_involution(a: ChevalleyAlgebra) -> LieInvolution:
    return LieInvolution(tuple(tuple(r) for r in la.identity(a.dim)), {"mode": "identity"})


def chevalley_involution(a: ChevalleyAlgebra) -> LieInvolution:
    """omega: e_a -> -e_{-a}, h -> -h."""
    r = a.rank
    minus = [[-1 if i == j else 0 for j in range(r)] for i in range(r)]
    return involution_from_signs(a, minus, [-1] * r)


@dataclass(frozen=True)
class SymmetricPair:
    algebra: ChevalleyAlgebra = field(compare=False)
    theta: LieInvolution
    sigma: LieInvolution
    k: Subspace
    p: Subspace
    gprime: Subspace
    g_minus_sigma: Subspace
    kprime: Subspace
    pprime: Subspace
    pr_matrix: tuple
    bar_matrix: tuple

    def project(self, s: Subspace) -> Subspace:
        return apply_linear_map(self.pr_matrix, s)

    def project_vector(self, v):
        return la.matvec(self.pr_matrix, v)

    def bar(self, s: Subspace) -> Subspace:
        return apply_linear_map(self.bar_matrix, s)


def derive_pair(a: ChevalleyAlgebra, theta: LieInvolution, sigma: LieInvolution) -> SymmetricPair:
    T, S = [list(r) for r in theta.matrix], [list(r) for r in sigma.matrix]
    if la.matmul(T, S) != la.matmul(S, T):
        raise NonCommuting("theta and sigma do not commute")
    omega = chevalley_involution(a)
    W = [list(r) for r in omega.matrix]
    if la.matmul(T, W) != la.matmul(W, T) or la.matmul(S, W) != la.matmul(W, S):
        raise NonCommuting("involutions must commute with the Chevalley involution "
                           "(use +-1 signs) so that conjugation is defined")
    k, p = theta.fixed(), theta.anti_fixed()
    gp, gm = sigma.fixed(), sigma.anti_fixed()
    kp, pp = intersect(k, gp), intersect(p, gp)
    n = a.dim
    half = Fraction(1, 2)
    pr = tuple(tuple(half * (S[i][j] + (1 if i == j else 0)) for j in range(n)) for i in range(n))
    bar = tuple(tuple(r) for r in la.matmul(T, W))
    pair = SymmetricPair(a, theta, sigma, k, p, gp, gm, kp, pp, pr, bar)
    _check_pair(pair)
    return pair


def _check_pair(pair: SymmetricPair):
    a = pair.algebra
    n = a.dim
    assert pair.k.dim + pair.p.dim == n
    assert pair.gprime.dim + pair.g_minus_sigma.dim == n
    assert pair.kprime.dim + pair.pprime.dim == pair.gprime.dim
    assert is_subalgebra(a, pair.k) and is_subalgebra(a, pair.gprime)
    assert brackets_into(a, pair.k, pair.p, pair.p)
    assert brackets_into(a, pair.gprime, pair.g_minus_sigma, pair.g_minus_sigma)


def project(pair: SymmetricPair, s: Subspace) -> Subspace:
    return pair.project(s)
