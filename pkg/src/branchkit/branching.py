"""Branching upper bounds m(lambda', p) and the Blattner-type K-type bound.

Functionals on a subspace are stored as their values on the subspace's
echelon basis.  The character lambda lives on z(l) and is extended to h by
zero on the coroots of l.
"""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .algebra import ChevalleyAlgebra
from .errors import (BasisMismatch, ConsistencyFailure, DimensionBound, HypothesisViolated,
                     NotDominant)
from .lieops import centralizer, weight_decomposition
from .nilcone import DEFAULT_TERM_BUDGET
from .parabolics import (ConstructedParabolic, LeviSplit, ThetaStableParabolic,
                         is_discretely_decomposable, is_sigma_open, levi_split)
from .repkit import (DEFAULT_MODULE_BOUND, CartanData, IrreducibleModule, SparseOp, WeightCharacter, _combine,
                     _compose, construct_irreducible, shift_character,
                     symmetric_power_character, weyl_dimension)
from .subspace import Subspace, intersect, project_along, span, sum_
from .sympair import SymmetricPair

Weight = Tuple[Fraction, ...]
SCHEMA_TABLE = "branchkit.multiplicity_table/1"


def _vadd(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _vsub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _restrict(full_on_h: Sequence[Fraction], space: Subspace) -> Weight:
    """Values of a functional on h (given on h_1..h_r) on the basis of a subspace of h."""
    r = len(full_on_h)
    out = []
    for v in space.basis:
        if any(v[r:]):
            raise ConsistencyFailure("subspace is not contained in the Cartan subalgebra")
        out.append(sum((c * x for c, x in zip(full_on_h, v[:r])), la.ZERO))
    return tuple(out)


def functional_pairing(a: ChevalleyAlgebra, space: Subspace, f: Sequence, g: Sequence) -> Fraction:
    """Killing-form pairing of two functionals given on the basis of ``space``."""
    gram = [[a.form(u, v) for v in space.basis] for u in space.basis]
    c = la.solve(gram, list(g), len(gram))
    if c is None:
        raise ConsistencyFailure("form is degenerate on the Cartan subspace")
    return sum((x * y for x, y in zip(f, c)), la.ZERO)


# -- lambda ----------------------------------------------------------------
@dataclass(frozen=True)
class LambdaParam:
    value: Weight                    # on the basis of z(l)
    center: Subspace = field(repr=False)
    on_cartan: Weight = ()           # extension to h, values on h_1..h_r
    linear: bool = False
    unitary_shadow: bool = False
    fair: bool = False
    weakly_fair: bool = False
    good: bool = False
    weakly_good: bool = False
    evidence: dict = field(default_factory=dict, compare=False)

    def flags(self) -> Dict[str, bool]:
        return {"linear": self.linear, "unitary_shadow": self.unitary_shadow,
                "fair": self.fair, "weakly_fair": self.weakly_fair,
                "good": self.good, "weakly_good": self.weakly_good}


def levi_center(pb: ThetaStableParabolic) -> Subspace:
    return centralizer(pb.algebra, pb.l, pb.l)


def _levi_roots(pb: ThetaStableParabolic):
    a = pb.algebra
    return [a.root_of(i) for i in range(a.rank, a.dim)
            if a.root_value(a.root_of(i), pb.grading) == 0]


def _u_roots(pb: ThetaStableParabolic):
    a = pb.algebra
    return [a.root_of(i) for i in range(a.rank, a.dim)
            if a.root_value(a.root_of(i), pb.grading) > 0]


def _coroot_pairing(a: ChevalleyAlgebra, weight: Sequence, root) -> Fraction:
    return sum((w * c for w, c in zip(weight, a.root_datum.coroot_coords(root))), la.ZERO)


def rho_n(pb: ThetaStableParabolic) -> Weight:
    """Half sum of a positive system inside the roots of q (standard order on l)."""
    a = pb.algebra
    total = [la.ZERO] * a.rank
    for i in range(a.rank, a.dim):
        root = a.root_of(i)
        val = a.root_value(root, pb.grading)
        if val > 0 or (val == 0 and sum(root) > 0):
            total = [t + Fraction(w) for t, w in zip(total, a.root_datum.to_weight(root))]
    return tuple(t / 2 for t in total)


def extend_lambda(pb: ThetaStableParabolic, value: Sequence) -> Weight:
    a = pb.algebra
    z = levi_center(pb)
    value = tuple(la.parse_rational(v) if not isinstance(v, Fraction) else v for v in value)
    if len(value) != z.dim:
        raise BasisMismatch(f"lambda needs {z.dim} values on the basis of z(l), got {len(value)}")
    r = a.rank
    rows, rhs = [], []
    for zv, val in zip(z.basis, value):
        rows.append(list(zv[:r]))
        rhs.append(val)
    for root in _levi_roots(pb):
        rows.append(list(a.root_datum.coroot_coords(root)))
        rhs.append(la.ZERO)
    sol = la.solve(rows, rhs, r)
    if sol is None:
        raise ConsistencyFailure("cannot extend lambda from z(l) to h")
    return tuple(sol)


def check_lambda(pb: ThetaStableParabolic, pair: SymmetricPair, value: Sequence) -> LambdaParam:
    a = pb.algebra
    z = levi_center(pb)
    full = extend_lambda(pb, value)
    linear = all(x.denominator == 1 for x in full)
    zp = intersect(z, pair.p)
    zp_values = _restrict(full, zp)
    unitary = all(v == 0 for v in zp_values)
    rho_u = tuple(x / 2 for x in pb.two_rho_u)
    rn = rho_n(pb)
    u_roots = _u_roots(pb)
    fair_vals = [(_coroot_pairing(a, _vadd(full, rho_u), al), al) for al in u_roots]
    good_vals = [(_coroot_pairing(a, _vadd(full, rn), al), al) for al in u_roots]
    fmin = min(fair_vals) if fair_vals else None
    gmin = min(good_vals) if good_vals else None
    evidence = {
        "lambda_on_cartan": [la.format_rational(x) for x in full],
        "values_on_z_l_cap_p": [la.format_rational(x) for x in zp_values],
        "min_fair_pairing": None if fmin is None else
        {"value": la.format_rational(fmin[0]), "root": list(fmin[1])},
        "min_good_pairing": None if gmin is None else
        {"value": la.format_rational(gmin[0]), "root": list(gmin[1])},
        "pairing": "coroot",
    }
    value = tuple(la.parse_rational(v) if not isinstance(v, Fraction) else v for v in value)
    return LambdaParam(
        value, z, full, linear, unitary,
        fmin is None or fmin[0] > 0, fmin is None or fmin[0] >= 0,
        gmin is None or gmin[0] > 0, gmin is None or gmin[0] >= 0, evidence)


# -- the branch space ------------------------------------------------------
@dataclass(frozen=True)
class BranchSpace:
    algebra: ChevalleyAlgebra = field(repr=False)
    denominator: Subspace                 # qbar + g'
    quotient_indices: Tuple[int, ...]     # standard vectors spanning the complement
    quotient_weights: Tuple[Weight, ...]  # h_c-weights of those vectors
    top_weight: Weight
    acting: Tuple[Tuple[Weight, Tuple[Fraction, ...]], ...]  # weight basis of qbar cap l'
    cartan: Subspace                      # h_c

    @property
    def dim(self) -> int:
        return len(self.quotient_indices)

    @property
    def quotient_basis(self):
        return tuple(self.algebra.basis_vector(i) for i in self.quotient_indices)

    def action_matrix(self, x) -> la.Matrix:
        """Matrix of ad(x) on g/(qbar+g'), columns indexed like quotient_indices."""
        a = self.algebra
        d = self.dim
        m = la.zeros(d, d)
        for col, i in enumerate(self.quotient_indices):
            w = self.denominator.reduce(a.bracket(x, a.basis_vector(i)))
            for row, j in enumerate(self.quotient_indices):
                m[row][col] = w[j]
        return m

    def weight_character(self) -> WeightCharacter:
        return WeightCharacter.from_weights(self.quotient_weights) if self.dim else \
            WeightCharacter.from_map({})


def build_branch_space(pb: ThetaStableParabolic, pair: SymmetricPair, cp: ConstructedParabolic,
                       split: LeviSplit, seed: int = 0) -> BranchSpace:
    a = pb.algebra
    hc = split.h_c
    if not hc.is_subspace_of(pb.qbar):
        raise ConsistencyFailure("Cartan of l'_c does not lie in the opposite parabolic")
    denom = sum_(pb.qbar, pair.gprime)
    idx = tuple(denom.complement_indices())
    weights = []
    for i in idx:
        v = a.basis_vector(i)
        w = []
        for hb in hc.basis:
            img = denom.reduce(a.bracket(hb, v))
            c = img[i]
            if la.sub(img, la.scale(c, v)) != tuple([la.ZERO] * a.dim):
                raise ConsistencyFailure("quotient representative is not an h_c-weight vector")
            w.append(c)
        weights.append(tuple(w))
    top = tuple(sum((w[k] for w in weights), la.ZERO) for k in range(hc.dim))
    acting_space = intersect(pb.qbar, split.levi)
    acting = weight_decomposition(a, acting_space, hc, seed)
    if acting is None:
        raise ConsistencyFailure("q-bar cap l' has no rational h_c-weight basis")
    return BranchSpace(a, denom, idx, tuple(weights), top, tuple(acting), hc)


# -- the (qbar cap l')-modules F(lambda') and M --------------------------------
class LeviModule:
    """F(lambda') as an l'-module: l'_c acts through F(lambda'_c), l'_n by zero."""

    def __init__(self, split: LeviSplit, lam_prime: Weight, a: ChevalleyAlgebra,
                 dim_bound: int = 5000):
        self.split = split
        self.a = a
        self.lam_prime = tuple(lam_prime)
        dyn, _ = split.weight_to_labels(lam_prime)
        self.cd = CartanData(split.cartan_matrix)
        self.module: IrreducibleModule = construct_irreducible(self.cd, dyn, dim_bound)
        self.dyn = dyn
        # h_c-weights of the basis
        self.weights: List[Weight] = []
        for mu in self.module.weights:
            k = self.cd.to_root_coords(_vsub(dyn, mu))
            w = tuple(self.lam_prime)
            for ki, al in zip(k, split.simple_roots_c):
                w = _vsub(w, tuple(ki * x for x in al))
            self.weights.append(w)
        self._build_spanning_set()

    @property
    def dim(self) -> int:
        return self.module.dim

    def _build_spanning_set(self):
        a, sp, mod = self.a, self.split, self.module
        n = mod.dim
        ident = {g: {g: la.ONE} for g in range(n)}
        gens = []
        for i in range(len(sp.chevalley_e)):
            gens.append((sp.chevalley_e[i], mod.raising[i]))
            gens.append((sp.chevalley_f[i], mod.lowering[i]))
            gens.append((sp.chevalley_h[i], mod.cartan_op(i)))
        for z in sp.center_c.basis:
            val = sum((x * y for x, y in zip(self.lam_prime, sp.h_c.coords(z))), la.ZERO)
            gens.append((z, _combine([(val, ident)])))
        elems = []
        for v, op in gens:
            if not span([e for e, _ in elems] + [v], a.dim).dim == len(elems):
                elems.append((v, op))
        changed = True
        while changed and len(elems) < sp.l_c.dim:
            changed = False
            for gv, gop in gens:
                for bv, bop in list(elems):
                    w = a.bracket(gv, bv)
                    if span([e for e, _ in elems] + [w], a.dim).dim > len(elems):
                        op = _combine([(la.ONE, _compose(gop, bop)),
                                       (Fraction(-1), _compose(bop, gop))])
                        elems.append((w, op))
                        changed = True
        if span([e for e, _ in elems], a.dim) != sp.l_c:
            raise ConsistencyFailure("Chevalley generators do not generate l'_c")
        self._elems = elems

    def action(self, x) -> SparseOp:
        sp = self.split
        xc = project_along(sp.l_c, sp.l_n, x)
        coeffs = la.coordinates([e for e, _ in self._elems], xc)
        if coeffs is None:
            raise ConsistencyFailure("element of l' not in l'_c + l'_n")
        return _combine([(c, op) for c, (_, op) in zip(coeffs, self._elems) if c])


class BranchModule:
    """M = C_lambda (x) top exterior power (x) S^p of g/(qbar+g'), over qbar cap l'."""

    def __init__(self, bs: BranchSpace, lam: LambdaParam, p: int, dim_bound: int = 20000):
        self.bs, self.lam, self.p = bs, lam, p
        d = bs.dim
        self.monomials = []
        if d or p == 0:
            for combo in itertools.combinations_with_replacement(range(d), p):
                e = [0] * d
                for i in combo:
                    e[i] += 1
                self.monomials.append(tuple(e))
        if len(self.monomials) > dim_bound:
            raise DimensionBound(f"branch module dimension {len(self.monomials)} exceeds {dim_bound}")
        self.index = {m: k for k, m in enumerate(self.monomials)}
        base = _vadd(_restrict(lam.on_cartan, bs.cartan), bs.top_weight)
        self.weights: List[Weight] = []
        for mono in self.monomials:
            w = base
            for i, e in enumerate(mono):
                if e:
                    w = _vadd(w, tuple(e * x for x in bs.quotient_weights[i]))
            self.weights.append(w)

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def character(self) -> WeightCharacter:
        return WeightCharacter.from_weights(self.weights) if self.weights else \
            WeightCharacter.from_map({})

    def action(self, x) -> SparseOp:
        a = self.bs.algebra
        r = a.rank
        A = self.bs.action_matrix(x)
        scalar = sum((c * v for c, v in zip(self.lam.on_cartan, x[:r])), la.ZERO)
        scalar += sum((A[i][i] for i in range(len(A))), la.ZERO)
        op: Dict[int, Dict[int, Fraction]] = {}
        for col, mono in enumerate(self.monomials):
            acc: Dict[int, Fraction] = defaultdict(Fraction)
            if scalar:
                acc[col] += scalar
            for i, e in enumerate(mono):
                if not e:
                    continue
                for j in range(len(A)):
                    c = A[j][i]
                    if c:
                        m2 = list(mono)
                        m2[i] -= 1
                        m2[j] += 1
                        acc[self.index[tuple(m2)]] += e * c
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                op[col] = acc
        return op


# -- multiplicities ----------------------------------------------------------
def multiplicity_hom(bs: BranchSpace, lam: LambdaParam, split: LeviSplit, lam_prime: Sequence,
                     p: int, module: Optional[BranchModule] = None,
                     dim_bound: int = 5000) -> int:
    """dim Hom over qbar cap l' from F(lambda') into M, by exact linear algebra."""
    lam_prime = tuple(Fraction(x) for x in lam_prime)
    if not _in_lambda_set(split, lam_prime):
        return 0
    M = module if module is not None else BranchModule(bs, lam, p)
    if M.dim == 0:
        return 0
    F = LeviModule(split, lam_prime, bs.algebra, dim_bound)
    f_by_w: Dict[Weight, List[int]] = defaultdict(list)
    m_by_w: Dict[Weight, List[int]] = defaultdict(list)
    for k, w in enumerate(F.weights):
        f_by_w[w].append(k)
    for k, w in enumerate(M.weights):
        m_by_w[w].append(k)
    unknown: Dict[Tuple[int, int], int] = {}
    for w, fs in f_by_w.items():
        for fi in fs:
            for mi in m_by_w.get(w, []):
                unknown[(mi, fi)] = len(unknown)
    if not unknown:
        return 0
    rows = []
    for gamma, x in bs.acting:
        if all(g == 0 for g in gamma) and split.h_c.contains(x):
            continue
        rf = F.action(x)
        rm = M.action(x)
        for fi in range(F.dim):
            mu = F.weights[fi]
            target = _vadd(mu, gamma)
            eqs: Dict[int, Dict[int, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
            for f2, c in rf.get(fi, {}).items():
                for m2 in m_by_w.get(target, []):
                    key = unknown.get((m2, f2))
                    if key is not None:
                        eqs[m2][key] += c
            for m1 in m_by_w.get(mu, []):
                key = unknown.get((m1, fi))
                if key is None:
                    continue
                for m2, c in rm.get(m1, {}).items():
                    eqs[m2][key] -= c
            for row in eqs.values():
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return len(unknown) - la.fast_rank(rows, len(unknown))


def _in_lambda_set(split: LeviSplit, lam_prime: Weight) -> bool:
    dyn, _ = split.weight_to_labels(lam_prime)
    return all(x.denominator == 1 and x >= 0 for x in dyn)


@dataclass(frozen=True)
class EulerResult:
    multiplicities: Dict[Weight, int]
    sign_mixing: bool
    contributions: int


def euler_multiplicities(bs: BranchSpace, lam: LambdaParam, split: LeviSplit, p: int,
                         module: Optional[BranchModule] = None) -> EulerResult:
    """Signed Bott-Borel-Weil counts of the h_c-weights of M for all lambda' at once."""
    M = module if module is not None else BranchModule(bs, lam, p)
    cd = CartanData(split.cartan_matrix)
    out: Dict[Weight, int] = defaultdict(int)
    mixing = False
    n = 0
    for w in M.weights:
        dyn, cen = split.weight_to_labels(w)
        shifted = tuple(x + 1 for x in dyn)
        if any(x.denominator != 1 for x in shifted):
            continue
        dom, length = cd.dominant_conjugate(shifted)
        if any(x == 0 for x in dom):
            continue
        target_dyn = tuple(x - 1 for x in dom)
        lp = _labels_to_hc(split, target_dyn, cen)
        out[lp] += -1 if length % 2 else 1
        n += 1
        if length:
            mixing = True
    return EulerResult({k: v for k, v in out.items() if v}, mixing, n)


def _labels_to_hc(split: LeviSplit, dyn, cen) -> Weight:
    """Functional on h_c with given values on the coroots h_i and on z(l'_c)."""
    vecs = [split.h_c.coords(v) for v in list(split.chevalley_h) + list(split.center_c.basis)]
    vals = list(dyn) + list(cen)
    sol = la.solve(vecs, vals, split.h_c.dim)
    if sol is None:
        raise ConsistencyFailure("coroots and center do not determine a functional on h_c")
    return tuple(sol)


def multiplicity_euler(bs: BranchSpace, lam: LambdaParam, split: LeviSplit, lam_prime: Sequence,
                       p: int) -> Tuple[int, bool]:
    res = euler_multiplicities(bs, lam, split, p)
    return res.multiplicities.get(tuple(Fraction(x) for x in lam_prime), 0), res.sign_mixing


def enumerate_lambda_candidates(bs: BranchSpace, lam: LambdaParam, split: LeviSplit, p: int,
                                module: Optional[BranchModule] = None) -> List[Weight]:
    M = module if module is not None else BranchModule(bs, lam, p)
    return sorted({w for w in M.weights if _in_lambda_set(split, w)})


# -- tables ----------------------------------------------------------------
@dataclass(frozen=True)
class TableEntry:
    lambda_prime: Weight
    p: int
    multiplicity: int
    method: str
    euler: Optional[int]
    sign_mixing: bool
    weakly_fair_for_qdoubleprime: bool


@dataclass(frozen=True)
class MultiplicityTable:
    entries: Tuple[TableEntry, ...]
    cutoff: int
    cartan_basis: Tuple[Tuple[Fraction, ...], ...]
    discrepancies: Tuple[dict, ...] = ()
    notes: Tuple[str, ...] = ()

    def as_dict(self) -> Dict[Tuple[Weight, int], int]:
        return {(e.lambda_prime, e.p): e.multiplicity for e in self.entries}

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA_TABLE,
            "kind": "upper bound",
            "cutoff": self.cutoff,
            "lambda_prime_basis": [[la.format_rational(x) for x in v] for v in self.cartan_basis],
            "rows": [{"lambda_prime": [la.format_rational(x) for x in e.lambda_prime],
                      "p": e.p, "multiplicity": e.multiplicity, "method": e.method,
                      "euler": e.euler, "sign_mixing": e.sign_mixing,
                      "weakly_fair_for_qdoubleprime": e.weakly_fair_for_qdoubleprime}
                     for e in self.entries],
            "discrepancies": list(self.discrepancies),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lams = sorted({e.lambda_prime for e in self.entries})
        table = self.as_dict()
        head = ["p \\ lambda'"] + ["(" + ",".join(la.format_rational(x) for x in w) + ")"
                                  for w in lams]
        lines = ["  ".join(head)]
        for p in range(self.cutoff + 1):
            cells = [str(p)] + [str(table.get((w, p), 0)) for w in lams]
            lines.append("  ".join(cells))
        lines.append("(upper bound; absent entries are 0)")
        return "\n".join(lines)


def _qdoubleprime_fair(a: ChevalleyAlgebra, split: LeviSplit, cp: ConstructedParabolic,
                       lam_prime: Weight) -> bool:
    """Weakly fair test for q'' on h_c-restricted roots, Killing-form pairing."""
    hc = split.h_c
    u2 = sum_(span([split.root_vectors[r] for r in split.positive_roots_c], a.dim),
              cp.nilradical)
    wd = weight_decomposition(a, u2, hc)
    if wd is None or not wd:
        return True
    rho = tuple(sum((w[k] for w, _ in wd), la.ZERO) / 2 for k in range(hc.dim))
    shifted = _vadd(lam_prime, rho)
    return all(functional_pairing(a, hc, shifted, w) >= 0 for w, _ in wd if any(w))


@dataclass
class BranchContext:
    pb: ThetaStableParabolic
    pair: SymmetricPair
    cp: ConstructedParabolic
    split: LeviSplit
    space: BranchSpace
    lam: LambdaParam


def prepare_branch(pb: ThetaStableParabolic, pair: SymmetricPair, lam_value: Sequence,
                   seed: int = 0, allow_unfair: bool = False,
                   term_budget: int = DEFAULT_TERM_BUDGET) -> BranchContext:
    if not is_sigma_open(pb, pair):
        raise HypothesisViolated("parabolic is not sigma-open", {"sigma_open": False})
    verdict = is_discretely_decomposable(pb, pair, term_budget)
    if not verdict.verdict:
        raise HypothesisViolated("restriction is not discretely decomposable",
                                 {"decomposable": False,
                                  "witness": [la.format_rational(x) for x in verdict.witness]})
    lam = check_lambda(pb, pair, lam_value)
    flags = lam.flags()
    if not lam.linear or not lam.unitary_shadow:
        raise HypothesisViolated("lambda must be linear and vanish on z(l) cap p", flags)
    if not lam.weakly_fair and not allow_unfair:
        raise HypothesisViolated("lambda is not in the weakly fair range", flags)
    cp = verdict.criterion_iii
    split = levi_split(pb, pair, cp, seed)
    space = build_branch_space(pb, pair, cp, split, seed)
    return BranchContext(pb, pair, cp, split, space, lam)


def branch_table(pb: ThetaStableParabolic, pair: SymmetricPair, lam_value: Sequence, max_p: int,
                 seed: int = 0, allow_unfair: bool = False, euler_check: bool = True,
                 context: Optional[BranchContext] = None,
                 module_bound: int = DEFAULT_MODULE_BOUND) -> MultiplicityTable:
    ctx = context or prepare_branch(pb, pair, lam_value, seed, allow_unfair)
    a = pb.algebra
    entries: List[TableEntry] = []
    discrepancies = []
    for p in range(max_p + 1):
        M = BranchModule(ctx.space, ctx.lam, p)
        euler = euler_multiplicities(ctx.space, ctx.lam, ctx.split, p, M) if euler_check else None
        for lp in enumerate_lambda_candidates(ctx.space, ctx.lam, ctx.split, p, M):
            m = multiplicity_hom(ctx.space, ctx.lam, ctx.split, lp, p, M, module_bound)
            e = euler.multiplicities.get(lp, 0) if euler is not None else None
            mixing = euler.sign_mixing if euler is not None else False
            if euler is not None and e != m:
                discrepancies.append({"lambda_prime": [la.format_rational(x) for x in lp],
                                      "p": p, "hom": m, "euler": e, "sign_mixing": mixing})
            if m:
                entries.append(TableEntry(lp, p, m, "hom_solver", e, mixing,
                                          _qdoubleprime_fair(a, ctx.split, ctx.cp, lp)))
    entries.sort(key=lambda t: (t.p, t.lambda_prime))
    notes = ("entries bound multiplicities from above; sharpness is not asserted",)
    return MultiplicityTable(tuple(entries), max_p, ctx.split.h_c.basis, tuple(discrepancies), notes)


# -- the Blattner-type bound -------------------------------------------------
def _compact_positive_roots(pb: ThetaStableParabolic, pair: SymmetricPair, t: Subspace):
    """t-roots of k, positive by (grading value, then lexicographic on t values)."""
    a = pb.algebra
    wd = weight_decomposition(a, pair.k, t)
    if wd is None:
        raise ConsistencyFailure("k has no rational t-weight basis")
    pos = []
    for w, v in wd:
        if not any(w):
            continue
        xv = a.bracket(pb.grading_element, v)
        c = next((xi / vi for xi, vi in zip(xv, v) if vi), la.ZERO)
        if (c,) + w > tuple([la.ZERO] * (len(w) + 1)):
            pos.append(w)
    return sorted(set(pos))


def blattner_character(pb: ThetaStableParabolic, pair: SymmetricPair, lam_value: Sequence,
                       p: int) -> WeightCharacter:
    """C_{lambda + 2 rho(u cap p)} (x) S^p(u cap p) as a t-character."""
    a = pb.algebra
    t = pb.compact_cartan
    full = extend_lambda(pb, lam_value)
    wd = weight_decomposition(a, pb.u_cap_p, t)
    if wd is None:
        raise ConsistencyFailure("u cap p has no rational t-weight basis")
    base = WeightCharacter.from_weights([w for w, _ in wd]) if wd else WeightCharacter.from_map({})
    sp = symmetric_power_character(base, p, width=t.dim)
    return shift_character(sp, _vadd(_restrict(full, t), pb.two_rho_u_cap_p))


def is_compact_dominant(pb: ThetaStableParabolic, pair: SymmetricPair, mu: Sequence) -> bool:
    a = pb.algebra
    t = pb.compact_cartan
    return all(functional_pairing(a, t, mu, g) >= 0 for g in _compact_positive_roots(pb, pair, t))


def blattner_bound(pb: ThetaStableParabolic, pair: SymmetricPair, lam_value: Sequence,
                   mu: Sequence, p: int) -> int:
    mu = tuple(Fraction(x) for x in mu)
    if not is_compact_dominant(pb, pair, mu):
        raise NotDominant("mu is not dominant for the chosen compact positive system")
    return blattner_character(pb, pair, lam_value, p)[mu]


def blattner_table(pb: ThetaStableParabolic, pair: SymmetricPair, lam_value: Sequence,
                   max_p: int) -> Dict[Tuple[Weight, int], int]:
    a = pb.algebra
    t = pb.compact_cartan
    positive = _compact_positive_roots(pb, pair, t)
    out = {}
    for p in range(max_p + 1):
        for w, m in blattner_character(pb, pair, lam_value, p).entries:
            if all(functional_pairing(a, t, w, g) >= 0 for g in positive):
                out[(w, p)] = m
    return out


def weight_expanded_branch(ctx: BranchContext, max_p: int) -> Dict[Tuple[Weight, int], int]:
    """Dominant h_c-weight multiplicities of M for each p."""
    out = {}
    for p in range(max_p + 1):
        M = BranchModule(ctx.space, ctx.lam, p)
        for w, m in M.character().entries:
            if _in_lambda_set(ctx.split, w):
                out[(w, p)] = m
    return out
