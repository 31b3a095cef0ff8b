"""Root data for (possibly reducible) semisimple types.

Roots are stored as integer tuples of coefficients over the simple roots.
Weights (functionals on the Cartan) are stored in Dynkin-label coordinates,
i.e. by their values on the simple coroots ``h_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .errors import UnsupportedType

Root = Tuple[int, ...]

_H = Fraction(1, 2)

# Euclidean realisations (Bourbaki numbering) of the simple roots.
_E8 = [
    [_H, -_H, -_H, -_H, -_H, -_H, -_H, _H],
    [1, 1, 0, 0, 0, 0, 0, 0],
    [-1, 1, 0, 0, 0, 0, 0, 0],
    [0, -1, 1, 0, 0, 0, 0, 0],
    [0, 0, -1, 1, 0, 0, 0, 0],
    [0, 0, 0, -1, 1, 0, 0, 0],
    [0, 0, 0, 0, -1, 1, 0, 0],
    [0, 0, 0, 0, 0, -1, 1, 0],
]


def _unit(n, i, c=1):
    v = [0] * n
    v[i] = c
    return v


def _euclidean_simple_roots(family: str, rank: int) -> List[List[Fraction]]:
    if family == "A" and rank >= 1:
        n = rank + 1
        return [[Fraction(x) for x in _diff(n, i)] for i in range(rank)]
    if family == "B" and rank >= 2:
        return [_fr(_diff(rank, i)) for i in range(rank - 1)] + [_fr(_unit(rank, rank - 1))]
    if family == "C" and rank >= 2:
        return [_fr(_diff(rank, i)) for i in range(rank - 1)] + [_fr(_unit(rank, rank - 1, 2))]
    if family == "D" and rank >= 3:
        last = [0] * rank
        last[-2] = last[-1] = 1
        return [_fr(_diff(rank, i)) for i in range(rank - 1)] + [_fr(last)]
    if family == "G" and rank == 2:
        return [_fr([1, -1, 0]), _fr([-2, 1, 1])]
    if family == "F" and rank == 4:
        return [_fr([0, 1, -1, 0]), _fr([0, 0, 1, -1]), _fr([0, 0, 0, 1]),
                [_H, -_H, -_H, -_H]]
    if family == "E" and rank in (6, 7, 8):
        return [_fr(r) for r in _E8[:rank]]
    raise UnsupportedType(f"unsupported Cartan type {family}{rank}")


def _diff(n, i):
    v = [0] * n
    v[i], v[i + 1] = 1, -1
    return v


def _fr(v):
    return [Fraction(x) for x in v]


def gram_matrix(cartan_type: Sequence[Tuple[str, int]]) -> List[List[Fraction]]:
    """Block-diagonal matrix of inner products of simple roots."""
    blocks = []
    for family, rank in cartan_type:
        family = str(family).upper()
        if not isinstance(rank, int) or isinstance(rank, bool):
            raise UnsupportedType(f"rank must be an integer, got {rank!r}")
        rs = _euclidean_simple_roots(family, rank)
        blocks.append([[sum(a * b for a, b in zip(x, y)) for y in rs] for x in rs])
    n = sum(len(b) for b in blocks)
    g = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                g[off + i][off + j] = x
        off += len(b)
    return g


KNOWN_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True)
class RootDatum:
    cartan_type: Tuple[Tuple[str, int], ...]
    gram: Tuple[Tuple[Fraction, ...], ...]
    cartan: Tuple[Tuple[int, ...], ...]  # cartan[i][j] = <alpha_j, alpha_i^vee>
    positive_roots: Tuple[Root, ...]
    _index: Dict[Root, int] = field(default=None, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def roots(self) -> Tuple[Root, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @property
    def simple_roots(self) -> Tuple[Tuple[int, ...], ...]:
        """Simple roots in Dynkin-label (weight) coordinates."""
        return tuple(self.to_weight(r) for r in self.simple_root_coords)

    @property
    def simple_root_coords(self) -> Tuple[Root, ...]:
        n = self.rank
        return tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))

    @property
    def fundamental_weights(self) -> Tuple[Tuple[int, ...], ...]:
        return self.simple_root_coords

    @property
    def weyl_vector(self) -> Tuple[int, ...]:
        return (1,) * self.rank

    def is_root(self, r: Root) -> bool:
        return r in self._index

    def index(self, r: Root) -> int:
        return self._index[r]

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        return sum((x * self.gram[i][j] * y for i, x in enumerate(a) if x
                    for j, y in enumerate(b) if y), Fraction(0))

    def norm2(self, a: Sequence) -> Fraction:
        return self.inner(a, a)

    def to_weight(self, r: Sequence) -> Tuple:
        """Dynkin labels <r, alpha_i^vee> of an element of the root lattice."""
        return tuple(sum(self.cartan[i][j] * c for j, c in enumerate(r)) for i in range(self.rank))

    def coroot_coords(self, r: Root) -> Tuple[Fraction, ...]:
        """alpha^vee in the basis of simple coroots."""
        n2 = self.norm2(r)
        return tuple(Fraction(c) * self.gram[i][i] / n2 for i, c in enumerate(r))

    def height(self, r: Root) -> int:
        return sum(r)

    def string_down(self, alpha: Root, beta: Root) -> int:
        """Largest p with beta - p*alpha a root."""
        p = 0
        while self.is_root(tuple(b - (p + 1) * a for a, b in zip(alpha, beta))):
            p += 1
        return p

    def component_of(self, r: Root) -> int:
        i = next(k for k, c in enumerate(r) if c)
        off = 0
        for comp, (_, rk) in enumerate(self.cartan_type):
            if i < off + rk:
                return comp
            off += rk
        raise AssertionError


def neg(r: Sequence[int]) -> Root:
    return tuple(-x for x in r)


def _root_key(r: Root):
    return (sum(r), tuple(-x for x in r))


def build_root_datum(cartan_type: Sequence[Tuple[str, int]]) -> RootDatum:
    ctype = tuple((str(f).upper(), int(r)) for f, r in cartan_type)
    if not ctype:
        raise UnsupportedType("empty Cartan type")
    gram = gram_matrix(ctype)
    n = len(gram)
    cartan = tuple(tuple(int(2 * gram[i][j] / gram[i][i]) for j in range(n)) for i in range(n))
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = {r: None for r in simple}
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                alpha = simple[i]
                p = 0
                while tuple(b - (p + 1) * a for a, b in zip(alpha, beta)) in found:
                    p += 1
                pairing = sum(cartan[i][j] * c for j, c in enumerate(beta))
                if p - pairing > 0:
                    new = tuple(b + a for a, b in zip(alpha, beta))
                    if new not in found:
                        found[new] = None
                        nxt.append(new)
        layer = nxt
    positive = tuple(sorted(found, key=_root_key))
    rd = RootDatum(ctype, tuple(map(tuple, gram)), cartan, positive)
    index = {r: k for k, r in enumerate(rd.roots)}
    object.__setattr__(rd, "_index", index)
    return rd


class StructureConstants:
    """N_{alpha,beta} with [e_alpha, e_beta] = N e_{alpha+beta}.

    Signs follow the extraspecial-pair convention: for every positive
    non-simple root xi, its extraspecial pair (the decomposition xi =
    alpha + beta into positive roots with alpha earliest in root order)
    gets N = +(p+1).  All other constants follow from the standard
    Chevalley-basis identities.
    """

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.order = {r: k for k, r in enumerate(rd.positive_roots)}
        self.extraspecial: Dict[Root, Tuple[Root, Root]] = {}
        for xi in rd.positive_roots:
            if sum(xi) < 2:
                continue
            for alpha in rd.positive_roots:
                beta = tuple(x - a for x, a in zip(xi, alpha))
                if rd.is_root(beta) and self._positive(beta):
                    self.extraspecial[xi] = (alpha, beta)
                    break
        self._cache: Dict[Tuple[Root, Root], Fraction] = {}

    @staticmethod
    def _positive(r: Root) -> bool:
        return any(r) and all(x >= 0 for x in r)

    def __call__(self, alpha: Root, beta: Root) -> Fraction:
        key = (alpha, beta)
        if key not in self._cache:
            self._cache[key] = self._compute(alpha, beta)
        return self._cache[key]

    def _compute(self, alpha: Root, beta: Root) -> Fraction:
        rd = self.rd
        xi = tuple(a + b for a, b in zip(alpha, beta))
        if not rd.is_root(xi):
            return Fraction(0)
        pa, pb = self._positive(alpha), self._positive(beta)
        if pa and pb:
            gamma, delta = self.extraspecial[xi]
            if (alpha, beta) == (gamma, delta):
                return Fraction(rd.string_down(alpha, beta) + 1)
            if (beta, alpha) == (gamma, delta):
                return -self(beta, alpha)
            p1 = rd.string_down(gamma, delta) + 1
            total = Fraction(0)
            ng, nd = neg(gamma), neg(delta)
            s2 = tuple(b - g for b, g in zip(beta, gamma))
            if rd.is_root(s2):
                total += self(beta, ng) * self(alpha, nd) / rd.norm2(s2)
            s3 = tuple(a - g for a, g in zip(alpha, gamma))
            if rd.is_root(s3):
                total += self(ng, alpha) * self(beta, nd) / rd.norm2(s3)
            return rd.norm2(xi) / p1 * total
        if not pa and not pb:
            return -self(neg(alpha), neg(beta))
        if not pa:
            return -self(beta, alpha)
        # alpha positive, beta negative: rotate alpha + beta + gamma = 0
        gamma = neg(xi)
        if self._positive(xi):
            return rd.norm2(gamma) / rd.norm2(alpha) * self(beta, gamma)
        return rd.norm2(gamma) / rd.norm2(beta) * self(gamma, alpha)


@lru_cache(maxsize=None)
def cached_root_datum(cartan_type: Tuple[Tuple[str, int], ...]) -> RootDatum:
    return build_root_datum(cartan_type)
