"""Finite-dimensional highest-weight modules and weight characters.

Weights are Dynkin labels: values on the simple coroots h_i.  Everything is
driven by a Cartan matrix ``A[i][j] = alpha_j(h_i)``, so the same code serves
the ambient algebra and the compact Levi factor l'_c.
"""
from __future__ import annotations

import itertools
from math import gcd
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from flint import fmpq_mat

from . import linalg as la
from .errors import CoordinateMismatch, DimensionBound, NotDominant
from .lieops import trace_functional
from .subspace import Subspace

Weight = Tuple[Fraction, ...]
DEFAULT_MODULE_BOUND = 5000


# -- characters ------------------------------------------------------------
@dataclass(frozen=True)
class WeightCharacter:
    entries: Tuple[Tuple[Weight, int], ...]

    @staticmethod
    def from_map(m: Mapping) -> "WeightCharacter":
        clean = {tuple(Fraction(x) for x in w): int(c) for w, c in m.items() if c}
        if any(c < 0 for c in clean.values()):
            raise ValueError("negative multiplicity in a character")
        return WeightCharacter(tuple(sorted(clean.items())))

    @staticmethod
    def from_weights(weights: Iterable[Sequence]) -> "WeightCharacter":
        m: Dict[Weight, int] = defaultdict(int)
        for w in weights:
            m[tuple(Fraction(x) for x in w)] += 1
        return WeightCharacter.from_map(m)

    def as_dict(self) -> Dict[Weight, int]:
        return dict(self.entries)

    def __getitem__(self, w) -> int:
        return self.as_dict().get(tuple(Fraction(x) for x in w), 0)

    @property
    def mass(self) -> int:
        return sum(c for _, c in self.entries)

    @property
    def width(self) -> Optional[int]:
        return len(self.entries[0][0]) if self.entries else None

    def to_list(self):
        return [[[la.format_rational(x) for x in w], c] for w, c in self.entries]


def trivial_character(width: int) -> WeightCharacter:
    return WeightCharacter.from_map({tuple([la.ZERO] * width): 1})


def tensor_character(c1: WeightCharacter, c2: WeightCharacter) -> WeightCharacter:
    if c1.width is not None and c2.width is not None and c1.width != c2.width:
        raise CoordinateMismatch(f"weights of length {c1.width} and {c2.width}")
    out: Dict[Weight, int] = defaultdict(int)
    for w1, m1 in c1.entries:
        for w2, m2 in c2.entries:
            out[tuple(x + y for x, y in zip(w1, w2))] += m1 * m2
    return WeightCharacter.from_map(out)


def shift_character(c: WeightCharacter, shift: Sequence) -> WeightCharacter:
    return WeightCharacter.from_map({tuple(x + Fraction(s) for x, s in zip(w, shift)): m
                                     for w, m in c.entries})


def symmetric_power_character(weights: WeightCharacter, p: int,
                              width: Optional[int] = None) -> WeightCharacter:
    """Newton recursion p*S^p = sum_k psi^k(V) S^{p-k} over weight maps."""
    if p < 0:
        raise ValueError("negative symmetric power")
    width = weights.width if weights.width is not None else (width or 0)
    zero = tuple([la.ZERO] * width)
    powers: List[Dict[Weight, Fraction]] = [{zero: Fraction(1)}]
    base = weights.as_dict()
    for n in range(1, p + 1):
        acc: Dict[Weight, Fraction] = defaultdict(Fraction)
        for k in range(1, n + 1):
            for w, m in base.items():
                kw = tuple(k * x for x in w)
                for v, c in powers[n - k].items():
                    acc[tuple(a + b for a, b in zip(kw, v))] += m * c
        powers.append({w: c / n for w, c in acc.items() if c})
    result = powers[p]
    if any(c.denominator != 1 for c in result.values()):
        raise ArithmeticError("Newton recursion produced a non-integral multiplicity")
    return WeightCharacter.from_map({w: int(c) for w, c in result.items()})


def symmetric_power_by_monomials(weights: WeightCharacter, p: int,
                                 width: Optional[int] = None) -> WeightCharacter:
    """Direct count over degree-p monomials in a weight basis (oracle)."""
    basis = [w for w, m in weights.entries for _ in range(m)]
    width = weights.width if weights.width is not None else (width or 0)
    out: Dict[Weight, int] = defaultdict(int)
    for combo in itertools.combinations_with_replacement(range(len(basis)), p):
        w = [la.ZERO] * width
        for i in combo:
            w = [a + b for a, b in zip(w, basis[i])]
        out[tuple(w)] += 1
    if p == 0:
        return trivial_character(width)
    return WeightCharacter.from_map(out)


def top_exterior_weight(a, s: Subspace, cartan: Subspace) -> Weight:
    """Weight of the top exterior power of an ad(cartan)-stable subspace."""
    return trace_functional(a, s, cartan)


# -- Cartan-matrix combinatorics -------------------------------------------
class CartanData:
    """Roots, symmetrized form and Weyl vector from a Cartan matrix."""

    def __init__(self, cartan_matrix: Sequence[Sequence[int]]):
        self.A = tuple(tuple(int(x) for x in row) for row in cartan_matrix)
        r = self.rank = len(self.A)
        self.norms = self._symmetrizer()
        self.positive_roots = self._positive_roots()
        self._Ainv = la.inverse([[Fraction(x) for x in row] for row in self.A]) if r else []

    def _symmetrizer(self) -> List[Fraction]:
        r = self.rank
        norms: List[Optional[Fraction]] = [None] * r
        for start in range(r):
            if norms[start] is not None:
                continue
            norms[start] = Fraction(2)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(r):
                    if j != i and self.A[i][j] and norms[j] is None:
                        norms[j] = norms[i] * self.A[i][j] / self.A[j][i]
                        stack.append(j)
        return norms

    def root_labels(self, coords: Sequence) -> Weight:
        """Dynkin labels of sum c_k alpha_k."""
        return tuple(sum((Fraction(c) * self.A[i][k] for k, c in enumerate(coords)), la.ZERO)
                     for i in range(self.rank))

    def _positive_roots(self) -> List[Tuple[int, ...]]:
        r = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
        roots = list(simple)
        known = set(roots)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                labels = self.root_labels(beta)
                for i in range(r):
                    # alpha_i-string through beta: q - p = -<beta, alpha_i^vee>
                    down = 0
                    gamma = tuple(b - (1 if j == i else 0) for j, b in enumerate(beta))
                    while gamma in known:
                        down += 1
                        gamma = tuple(b - (1 if j == i else 0) for j, b in enumerate(gamma))
                    up = down - labels[i]
                    if up > 0:
                        new = tuple(b + (1 if j == i else 0) for j, b in enumerate(beta))
                        if new not in known:
                            known.add(new)
                            nxt.append(new)
                            roots.append(new)
            layer = nxt
        return sorted(roots, key=lambda x: (sum(x), x))

    def to_root_coords(self, weight: Sequence) -> Weight:
        return tuple(la.matvec(self._Ainv, [Fraction(x) for x in weight])) if self.rank else ()

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        """(u, v) for weights in Dynkin labels."""
        c = self.to_root_coords(u)
        return sum((ck * Fraction(v[k]) * self.norms[k] / 2 for k, ck in enumerate(c)), la.ZERO)

    @property
    def rho(self) -> Weight:
        return tuple([la.ONE] * self.rank)

    def coroot_pairing(self, weight: Sequence, root: Sequence[int]) -> Fraction:
        """<weight, root^vee> for a positive root in simple-root coordinates."""
        rl = self.root_labels(root)
        return 2 * self.inner(weight, rl) / self.inner(rl, rl)

    def reflect(self, weight: Sequence, i: int) -> Weight:
        w = tuple(Fraction(x) for x in weight)
        return tuple(w[j] - w[i] * self.A[j][i] for j in range(self.rank))

    def dominant_conjugate(self, weight: Sequence) -> Tuple[Weight, int]:
        """Dominant W-conjugate and the parity of the reflections used."""
        w = tuple(Fraction(x) for x in weight)
        length = 0
        while True:
            i = next((j for j, x in enumerate(w) if x < 0), None)
            if i is None:
                return w, length
            w = self.reflect(w, i)
            length += 1

    def is_dominant_integral(self, weight: Sequence) -> bool:
        return all(Fraction(x).denominator == 1 and x >= 0 for x in weight)

    def below(self, lam: Sequence, mu: Sequence) -> bool:
        """lam - mu is a nonnegative integer combination of simple roots."""
        c = self.to_root_coords([Fraction(a) - Fraction(b) for a, b in zip(lam, mu)])
        return all(x.denominator == 1 and x >= 0 for x in c)


def _check_dominant(cd: CartanData, lam) -> Weight:
    lam = tuple(la.parse_rational(x) if not isinstance(x, Fraction) else x for x in lam)
    if len(lam) != cd.rank:
        raise CoordinateMismatch(f"highest weight needs {cd.rank} labels")
    if not cd.is_dominant_integral(lam):
        raise NotDominant(f"weight {[la.format_rational(x) for x in lam]} is not dominant integral")
    return lam


def weyl_dimension(cartan, lam) -> int:
    cd = _as_cartan_data(cartan)
    lam = _check_dominant(cd, lam)
    num, den = Fraction(1), Fraction(1)
    shifted = tuple(x + 1 for x in lam)
    for root in cd.positive_roots:
        num *= cd.coroot_pairing(shifted, root)
        den *= cd.coroot_pairing(cd.rho, root)
    value = num / den
    assert value.denominator == 1
    return int(value)


def _as_cartan_data(cartan) -> CartanData:
    if isinstance(cartan, CartanData):
        return cartan
    if hasattr(cartan, "cartan"):   # RootDatum
        return CartanData(cartan.cartan)
    return CartanData(cartan)


def _integer_form(cd: CartanData):
    """Integer Gram matrix of the fundamental weights, up to a common positive scale."""
    r = cd.rank
    units = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    gram = [[cd.inner(u, v) for v in units] for u in units]
    scale = 1
    for row in gram:
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    return [[int(x * scale) for x in row] for row in gram]


def freudenthal_character(cartan, lam) -> WeightCharacter:
    """Weight multiplicities by Freudenthal's recursion on dominant weights.

    Non-dominant weights take the multiplicity of their dominant conjugate.
    """
    cd = _as_cartan_data(cartan)
    lam = tuple(int(x) for x in _check_dominant(cd, lam))
    r = cd.rank
    A = cd.A
    gram = _integer_form(cd)

    def inner(u, v):
        return sum(u[i] * gram[i][j] * v[j] for i in range(r) for j in range(r) if u[i] and v[j])

    det = 1
    for row in cd._Ainv:
        for x in row:
            det = det * x.denominator // gcd(det, x.denominator)
    adj = [[int(x * det) for x in row] for row in cd._Ainv]

    def depth(mu):
        """Root coordinates of lam - mu scaled by det, or None if mu is not below lam."""
        d = [lam[k] - mu[k] for k in range(r)]
        c = [sum(adj[i][k] * d[k] for k in range(r)) for i in range(r)]
        if any(x < 0 or x % det for x in c):
            return None
        return sum(c) // det

    def reflect(w, i):
        return tuple(w[j] - w[i] * A[j][i] for j in range(r))

    dom_cache: Dict[Weight, Weight] = {}

    def dominant(w):
        hit = dom_cache.get(w)
        if hit is None:
            v = w
            while True:
                i = next((k for k, x in enumerate(v) if x < 0), None)
                if i is None:
                    break
                v = reflect(v, i)
            dom_cache[w] = hit = v
        return hit

    pos = [tuple(int(x) for x in cd.root_labels(b)) for b in cd.positive_roots]
    # dominant weights below lam, reached by subtracting positive roots
    dominants = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for al in pos:
            nu = tuple(x - y for x, y in zip(mu, al))
            if nu not in dominants and all(x >= 0 for x in nu) and depth(nu) is not None:
                dominants.add(nu)
                stack.append(nu)
    rho = tuple([1] * r)
    lr = tuple(x + 1 for x in lam)
    top = inner(lr, lr)
    mult: Dict[Weight, int] = {lam: 1}
    for mu in sorted(dominants, key=lambda w: (depth(w), w)):
        if mu == lam:
            continue
        total = 0
        for al in pos:
            nu = tuple(x + y for x, y in zip(mu, al))
            while depth(nu) is not None:
                m = mult.get(dominant(nu), 0)
                if m:
                    total += m * inner(nu, al)
                nu = tuple(x + y for x, y in zip(nu, al))
        mr = tuple(x + y for x, y in zip(mu, rho))
        value = Fraction(2 * total, top - inner(mr, mr))
        assert value.denominator == 1
        if value:
            mult[mu] = int(value)
    # spread over Weyl orbits
    full: Dict[Weight, int] = {}
    for mu, m in mult.items():
        orbit = {mu}
        stack = [mu]
        while stack:
            w = stack.pop()
            for i in range(r):
                v = reflect(w, i)
                if v not in orbit:
                    orbit.add(v)
                    stack.append(v)
        for w in orbit:
            full[w] = m
    return WeightCharacter.from_map(full)


# -- explicit modules ------------------------------------------------------
SparseOp = Dict[int, Dict[int, Fraction]]   # column -> {row: coefficient}


def _dense(op: SparseOp, n: int) -> la.Matrix:
    m = la.zeros(n, n)
    for col, entries in op.items():
        for row, c in entries.items():
            m[row][col] = c
    return m


def _compose(x: SparseOp, y: SparseOp) -> SparseOp:
    """x after y."""
    out: SparseOp = {}
    for col, entries in y.items():
        acc: Dict[int, Fraction] = defaultdict(Fraction)
        for mid, c in entries.items():
            for row, c2 in x.get(mid, {}).items():
                acc[row] += c * c2
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            out[col] = acc
    return out


def _combine(terms: Sequence[Tuple[Fraction, SparseOp]]) -> SparseOp:
    out: Dict[int, Dict[int, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    for coef, op in terms:
        for col, entries in op.items():
            for row, c in entries.items():
                out[col][row] += coef * c
    return {col: {r: c for r, c in e.items() if c} for col, e in out.items()
            if any(e.values())}


@dataclass
class IrreducibleModule:
    """Highest-weight module with explicit Chevalley-generator actions.

    ``raising[i]`` and ``lowering[i]`` are sparse operators for e_i and f_i
    in the weight basis ``weights``; ``e``, ``f``, ``h`` give dense matrices
    acting on column coordinate vectors.
    """
    highest_weight: Weight
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    weights: List[Weight]
    raising: List[SparseOp]
    lowering: List[SparseOp]
    levels: List[int] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    def character(self) -> WeightCharacter:
        return WeightCharacter.from_weights(self.weights)

    def cartan_op(self, i: int) -> SparseOp:
        return {g: {g: w[i]} for g, w in enumerate(self.weights) if w[i]}

    @property
    def e(self) -> List[la.Matrix]:
        return [_dense(op, self.dim) for op in self.raising]

    @property
    def f(self) -> List[la.Matrix]:
        return [_dense(op, self.dim) for op in self.lowering]

    @property
    def h(self) -> List[la.Matrix]:
        return [_dense(self.cartan_op(i), self.dim) for i in range(self.rank)]


def construct_irreducible(cartan, lam, dim_bound: int = DEFAULT_MODULE_BOUND) -> IrreducibleModule:
    """Irreducible quotient of the Verma module, built weight space by weight space.

    A vector below the top is zero in the irreducible quotient exactly when
    every raising operator kills it, so each candidate f_i w is recorded by
    the tuple (e_j f_i w)_j, computed from e_j f_i = f_i e_j + delta_ij h_i.
    Linear independence of these tuples is independence modulo the radical.
    The maps e_j and f_i are kept as dense FLINT blocks between weight spaces.
    """
    cd = _as_cartan_data(cartan)
    lam = _check_dominant(cd, lam)
    r = cd.rank
    expected = weyl_dimension(cd, lam)
    if expected > dim_bound:
        raise DimensionBound(f"module dimension {expected} exceeds bound {dim_bound}")
    simple_labels = [tuple(int(x) for x in cd.root_labels(tuple(1 if j == i else 0 for j in range(r))))
                     for i in range(r)]
    top_weight = lam
    lam = tuple(int(x) for x in lam)

    def shift(w, i, sign):
        return tuple(x + sign * y for x, y in zip(w, simple_labels[i]))

    weights: List[Weight] = [lam]
    levels = [0]
    space: Dict[Weight, List[int]] = {lam: [0]}
    # up[j][mu]: e_j from V_mu to V_{mu+alpha_j}; down[i][mu]: f_i from V_mu to V_{mu-alpha_i}
    up: List[Dict[Weight, fmpq_mat]] = [dict() for _ in range(r)]
    down: List[Dict[Weight, fmpq_mat]] = [dict() for _ in range(r)]
    current = [lam]
    level = 0
    while current:
        targets = sorted({shift(mu, i, -1) for mu in current for i in range(r)})
        nxt = []
        for nu in targets:
            sources = [i for i in range(r) if shift(nu, i, 1) in space]
            above = [j for j in range(r) if shift(nu, j, 1) in space]
            nrows = sum(len(space[shift(nu, j, 1)]) for j in above)
            ncols = sum(len(space[shift(nu, i, 1)]) for i in sources)
            table: List[list] = []
            for j in above:
                target = shift(nu, j, 1)
                blocks = []
                for i in sources:
                    mu = shift(nu, i, 1)
                    top = shift(mu, j, 1)
                    if top in space:
                        blk = down[i][top] * up[j][mu]
                    else:
                        blk = fmpq_mat(len(space[target]), len(space[mu]))
                    if i == j and mu[i]:
                        blk = blk + fmpq_mat(len(space[mu]), len(space[mu]),
                                             [mu[i] if a == b else 0
                                              for a in range(len(space[mu]))
                                              for b in range(len(space[mu]))])
                    blocks.append(blk.tolist())
                for row in range(len(space[target])):
                    table.append([x for blk in blocks for x in blk[row]])
            m = fmpq_mat(nrows, ncols, [x for row in table for x in row])
            red, rank = m.rref()
            if not rank:
                continue
            flat = red.entries()
            chosen = [next(k for k in range(ncols) if flat[t * ncols + k] != 0) for t in range(rank)]
            ids = list(range(len(weights), len(weights) + rank))
            weights.extend([nu] * rank)
            levels.extend([level + 1] * rank)
            space[nu] = ids
            offset = 0
            for j in above:
                height = len(space[shift(nu, j, 1)])
                up[j][nu] = fmpq_mat(height, rank, [table[offset + a][k] for a in range(height)
                                                    for k in chosen])
                offset += height
            offset = 0
            for i in sources:
                width = len(space[shift(nu, i, 1)])
                down[i][shift(nu, i, 1)] = fmpq_mat(rank, width, [flat[t * ncols + offset + b]
                                                                  for t in range(rank)
                                                                  for b in range(width)])
                offset += width
            nxt.append(nu)
            if len(weights) > dim_bound:
                raise DimensionBound(f"module dimension exceeds bound {dim_bound}")
        current = nxt
        level += 1
    n = len(weights)
    if n != expected:
        raise ArithmeticError(f"constructed dimension {n} differs from Weyl dimension {expected}")
    cache: Dict[Tuple[int, int], Fraction] = {}

    def sparse(blocks: Dict[Weight, fmpq_mat], i: int, sign: int) -> SparseOp:
        op: SparseOp = {}
        for mu, blk in blocks.items():
            cols, rows = space[mu], space[shift(mu, i, sign)]
            flat = blk.entries()
            width = len(cols)
            for b, g in enumerate(cols):
                col = {}
                for a, h in enumerate(rows):
                    x = flat[a * width + b]
                    if x != 0:
                        key = (int(x.p), int(x.q))
                        val = cache.get(key)
                        if val is None:
                            val = cache[key] = Fraction(*key)
                        col[h] = val
                if col:
                    op[g] = col
        return op

    raising_ops = [sparse(up[j], j, 1) for j in range(r)]
    lowering_ops = [sparse(down[i], i, -1) for i in range(r)]
    as_frac = {w: tuple(Fraction(x) for x in w) for w in space}
    return IrreducibleModule(top_weight, cd.A, [as_frac[w] for w in weights], raising_ops,
                             lowering_ops, levels)


def check_serre_relations(mod: IrreducibleModule) -> bool:
    """[e_i, f_j] = delta_ij h_i, [h_i, e_j] = A_ij e_j, [h_i, f_j] = -A_ij f_j."""
    r = mod.rank
    one, minus = Fraction(1), Fraction(-1)
    for i in range(r):
        for j in range(r):
            comm = _combine([(one, _compose(mod.raising[i], mod.lowering[j])),
                             (minus, _compose(mod.lowering[j], mod.raising[i]))])
            if comm != (mod.cartan_op(i) if i == j else {}):
                return False
            a = mod.cartan_matrix[i][j]
            for op, sign in ((mod.raising[j], 1), (mod.lowering[j], -1)):
                hop = mod.cartan_op(i)
                comm = _combine([(one, _compose(hop, op)), (minus, _compose(op, hop))])
                if comm != _combine([(Fraction(sign * a), op)]):
                    return False
    return True
