"""Theta-stable parabolics, sigma-openness, and the subalgebras q', l'_c, l'_n, q''."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg as la
from .algebra import ChevalleyAlgebra
from .errors import (CertificationFailed, ConsistencyFailure, CriteriaDisagree, DegenerateSplit,
                     HypothesisViolated, NotInCartan, NotThetaFixed)
from .lieops import (bracket_space, brackets_into, centralizer, eigen_decomposition,
                     is_subalgebra, normalizer, restricted_ad, trace_functional)
from .nilcone import DEFAULT_TERM_BUDGET, NilconeResult, subspace_in_nilcone
from .subspace import (Subspace, coordinate_span, intersect, orthocomplement, span, sum_,
                       sum_all, zero)
from .sympair import LieInvolution, SymmetricPair


@dataclass(frozen=True)
class ThetaStableParabolic:
    algebra: ChevalleyAlgebra = field(compare=False, repr=False)
    grading: Tuple[Fraction, ...]
    q: Subspace
    l: Subspace
    u: Subspace
    qbar: Subspace
    ubar: Subspace
    s_dim: int
    cartan: Subspace           # h
    compact_cartan: Subspace   # t = h^theta
    two_rho_u: Tuple[Fraction, ...]         # values on h_1..h_r
    two_rho_u_cap_p: Tuple[Fraction, ...]   # values on the basis of t
    u_cap_k: Subspace
    u_cap_p: Subspace
    ubar_cap_p: Subspace

    @property
    def grading_element(self):
        return tuple(self.grading) + (la.ZERO,) * (self.algebra.dim - len(self.grading))


def cartan_subspace(a: ChevalleyAlgebra) -> Subspace:
    return coordinate_span(range(a.rank), a.dim)


def _grading_vector(a: ChevalleyAlgebra, x) -> Tuple[Fraction, ...]:
    x = la.vec(x)
    if len(x) == a.rank:
        return x
    if len(x) != a.dim:
        raise NotInCartan(f"grading element must have {a.rank} Cartan or {a.dim} full coordinates")
    if any(x[a.rank:]):
        raise NotInCartan("grading element has root-vector components")
    return x[:a.rank]


def parabolic_from_grading(a: ChevalleyAlgebra, theta: LieInvolution, x) -> ThetaStableParabolic:
    xs = _grading_vector(a, x)
    full = xs + (la.ZERO,) * (a.dim - a.rank)
    if theta(full) != full:
        raise NotThetaFixed("grading element is not fixed by theta")
    r = a.rank
    h = cartan_subspace(a)
    pos, zer, negs = [], [], []
    for i in range(r, a.dim):
        val = a.root_value(a.root_of(i), xs)
        (pos if val > 0 else zer if val == 0 else negs).append(i)
    q = coordinate_span(list(range(r)) + zer + pos, a.dim)
    l = coordinate_span(list(range(r)) + zer, a.dim)
    u = coordinate_span(pos, a.dim)
    qbar = coordinate_span(list(range(r)) + zer + negs, a.dim)
    ubar = coordinate_span(negs, a.dim)
    k, p = theta.fixed(), theta.anti_fixed()
    u_k, u_p = intersect(u, k), intersect(u, p)
    t = intersect(h, k)
    two_rho = tuple(sum((Fraction(a.root_datum.to_weight(a.root_of(i))[j]) for i in pos), la.ZERO)
                    for j in range(r))
    two_rho_p = trace_functional(a, u_p, t)
    return ThetaStableParabolic(a, xs, q, l, u, qbar, ubar, u_k.dim, h, t, two_rho, two_rho_p,
                                u_k, u_p, intersect(ubar, p))


def is_sigma_open(pb: ThetaStableParabolic, pair: SymmetricPair) -> bool:
    qk = intersect(pb.q, pair.k)
    return sum_(qk, pair.kprime).dim == pair.k.dim


@dataclass(frozen=True)
class Certification:
    certified: bool
    nilradical: Optional[Subspace]
    reason: str
    nilcone: Optional[NilconeResult] = None

    def __bool__(self):
        return self.certified


def certify_parabolic(a: ChevalleyAlgebra, gprime: Subspace, s: Subspace,
                      term_budget: int = DEFAULT_TERM_BUDGET) -> Certification:
    """Parabolicity in g' via subalgebra + self-orthogonality + nilpotent perp."""
    if not s.is_subspace_of(gprime):
        return Certification(False, None, "not contained in g'")
    if not is_subalgebra(a, s):
        return Certification(False, None, "not a subalgebra")
    n = orthocomplement(a.killing_matrix, s, gprime)
    if not n.is_subspace_of(s):
        return Certification(False, None, "orthogonal complement not contained in s")
    nil = subspace_in_nilcone(a, n, term_budget)
    if not nil.verdict:
        return Certification(False, None, "orthogonal complement not in the nilcone", nil)
    if not brackets_into(a, s, n, n):
        return Certification(False, None, "orthogonal complement is not an ideal", nil)
    return Certification(True, n, "parabolic", nil)


@dataclass(frozen=True)
class ConstructedParabolic:
    qprime: Subspace
    nilradical: Optional[Subspace]
    levi: Optional[Subspace]
    certified: bool
    q_cap_pprime: Subspace
    normalizer: Subspace
    certification: Certification = field(compare=False, repr=False)


def construct_qprime(pb: ThetaStableParabolic, pair: SymmetricPair,
                     term_budget: int = DEFAULT_TERM_BUDGET) -> ConstructedParabolic:
    if not is_sigma_open(pb, pair):
        raise HypothesisViolated("parabolic is not sigma-open", {"sigma_open": False})
    a = pb.algebra
    qp = intersect(pb.q, pair.pprime)
    nk = normalizer(a, qp, pair.kprime)
    qprime = sum_(nk, qp)
    cert = certify_parabolic(a, pair.gprime, qprime, term_budget)
    levi = None
    if cert.certified:
        levi = intersect(qprime, pair.bar(qprime))
        if levi.dim + cert.nilradical.dim != qprime.dim or not is_subalgebra(a, levi):
            raise ConsistencyFailure("q' and its conjugate do not meet in a Levi complement")
    return ConstructedParabolic(qprime, cert.nilradical, levi, cert.certified, qp, nk, cert)


@dataclass(frozen=True)
class DecomposabilityVerdict:
    verdict: bool
    projected: Subspace                 # pr(u cap p)
    criterion_iv: NilconeResult          # pr(u cap p) inside the nilcone of g'
    criterion_iii: ConstructedParabolic  # q' certified parabolic

    @property
    def witness(self):
        return self.criterion_iv.witness


def is_discretely_decomposable(pb: ThetaStableParabolic, pair: SymmetricPair,
                               term_budget: int = DEFAULT_TERM_BUDGET) -> DecomposabilityVerdict:
    a = pb.algebra
    projected = pair.project(pb.u_cap_p)
    crit_iv = subspace_in_nilcone(a, projected, term_budget)
    cp = construct_qprime(pb, pair, term_budget)
    if crit_iv.verdict != cp.certified:
        raise CriteriaDisagree(
            f"nilcone criterion says {crit_iv.verdict}, q' certification says {cp.certified}")
    return DecomposabilityVerdict(crit_iv.verdict, projected, crit_iv, cp)


@dataclass(frozen=True)
class LeviSplit:
    levi: Subspace
    l_c: Subspace
    l_n: Subspace
    center: Subspace
    ideals: Tuple[Tuple[Subspace, bool], ...]   # (simple ideal, compact?)
    h_c: Subspace
    center_c: Subspace                            # z(l'_c)
    roots_c: Tuple[Tuple[Fraction, ...], ...]     # all roots of l'_c, values on h_c basis
    root_vectors: Dict[Tuple[Fraction, ...], Tuple[Fraction, ...]] = field(compare=False)
    positive_roots_c: Tuple[Tuple[Fraction, ...], ...] = ()
    simple_roots_c: Tuple[Tuple[Fraction, ...], ...] = ()
    borel_c: Subspace = None
    chevalley_e: Tuple = ()
    chevalley_f: Tuple = ()
    chevalley_h: Tuple = ()
    cartan_matrix: Tuple[Tuple[int, ...], ...] = ()
    choice: dict = field(default_factory=dict, compare=False)

    @property
    def rank_ss(self) -> int:
        return len(self.simple_roots_c)

    def weight_to_labels(self, weight):
        """Split a functional on h_c into Dynkin labels and central values."""
        dyn = tuple(_pair(weight, self.h_c.coords(hv)) for hv in self.chevalley_h)
        cen = tuple(_pair(weight, self.h_c.coords(z)) for z in self.center_c.basis)
        return dyn, cen


def _pair(weight, coords):
    return sum((w * c for w, c in zip(weight, coords)), la.ZERO)


def _simple_ideals(a: ChevalleyAlgebra, d: Subspace, seed: int) -> List[Subspace]:
    m = d.dim
    if m == 0:
        return []
    ads = [restricted_ad(a, b, d) for b in d.basis]
    # commutant of ad(d) on d: X with X A_k = A_k X
    rows = []
    for A in ads:
        for i in range(m):
            for j in range(m):
                row = [la.ZERO] * (m * m)
                for k in range(m):
                    # (X A)_{ij} = sum_k X_{ik} A_{kj}; (A X)_{ij} = sum_k A_{ik} X_{kj}
                    if A[k][j]:
                        row[i * m + k] += A[k][j]
                    if A[i][k]:
                        row[k * m + j] -= A[i][k]
                rows.append(row)
    comm = la.nullspace(rows, m * m)
    if len(comm) == 1:
        return [d]
    rng = random.Random(seed)
    for _attempt in range(20):
        weights = [Fraction(rng.randint(1, 97)) for _ in comm]
        X = [[sum((w * c[i * m + j] for w, c in zip(weights, comm)), la.ZERO) for j in range(m)]
             for i in range(m)]
        spaces = eigen_decomposition(X)
        if spaces is None or len(spaces) != len(comm):
            continue
        ideals = []
        for vecs in spaces.values():
            # eigenvectors of X are columns; map d-coordinates into g
            ideals.append(span([la.vecmat(v, d.basis) for v in vecs], a.dim))
        return sorted(ideals, key=lambda s: s.basis)
    raise DegenerateSplit("could not separate the simple ideals of [l', l']")


def _cartan_of(a: ChevalleyAlgebra, lc: Subspace, seed: int) -> Tuple[Subspace, str]:
    h = coordinate_span(range(a.rank), a.dim)
    t0 = intersect(lc, h)
    if centralizer(a, t0, lc) == t0:
        return t0, "l_c cap h"
    rng = random.Random(seed)
    for _attempt in range(20):
        y = la.vecmat([Fraction(rng.randint(-9, 9)) for _ in lc.basis], lc.basis)
        ad = restricted_ad(a, y, lc)
        power = la.identity(lc.dim)
        for _ in range(lc.dim):
            power = la.matmul(ad, power)
        null = la.nullspace(power, lc.dim)
        cand = span([la.vecmat(c, lc.basis) for c in null], a.dim)
        if bracket_space(a, cand, cand).dim == 0 and centralizer(a, cand, lc) == cand:
            return cand, "fitting null component of a generic element"
    raise DegenerateSplit("no Cartan subalgebra of l'_c found within the sample budget")


def _root_decomposition(a: ChevalleyAlgebra, lc: Subspace, hc: Subspace, seed: int):
    """Root vectors of lc relative to hc; roots as value tuples on the hc basis."""
    rng = random.Random(seed)
    comp = [v for v in lc.basis]
    for _attempt in range(20):
        t = la.vecmat([Fraction(rng.randint(1, 97)) for _ in hc.basis], hc.basis)
        ad = restricted_ad(a, t, lc)
        spaces = eigen_decomposition(ad)
        if spaces is None:
            raise DegenerateSplit("l'_c has irrational roots relative to the chosen Cartan")
        root_vectors = {}
        ok = True
        for val, vecs in spaces.items():
            if val == 0:
                if len(vecs) != hc.dim:
                    ok = False
                continue
            if len(vecs) != 1:
                ok = False
                break
            v = la.vecmat(vecs[0], comp)
            root = []
            for hb in hc.basis:
                w = a.bracket(hb, v)
                c = next((wi / vi for wi, vi in zip(w, v) if vi), la.ZERO)
                if la.sub(w, la.scale(c, v)) != tuple([la.ZERO] * a.dim):
                    ok = False
                root.append(c)
            root_vectors[tuple(root)] = v
        if ok:
            return root_vectors
    raise DegenerateSplit("generic Cartan element has repeated eigenvalues")


def levi_split(pb: ThetaStableParabolic, pair: SymmetricPair, cp: ConstructedParabolic,
               seed: int = 0) -> LeviSplit:
    if not cp.certified:
        raise HypothesisViolated("q' is not parabolic; no Levi split", {"decomposable": False})
    a = pb.algebra
    lp = cp.levi
    center = centralizer(a, lp, lp)
    d = bracket_space(a, lp, lp)
    ideals = _simple_ideals(a, d, seed)
    flagged = tuple((I, I.is_subspace_of(pair.kprime)) for I in ideals)
    zk, zp = intersect(center, pair.kprime), intersect(center, pair.pprime)
    if zk.dim + zp.dim != center.dim:
        raise ConsistencyFailure("center of l' is not theta-stable")
    lc = sum_all([I for I, c in flagged if c] + [zk], a.dim)
    ln = sum_all([I for I, c in flagged if not c] + [zp], a.dim)
    lpp = intersect(lp, pair.pprime)
    if ln != sum_(bracket_space(a, lpp, lpp), lpp):
        raise ConsistencyFailure("l'_n differs from [l' cap p', l' cap p'] + l' cap p'")
    if lc.dim + ln.dim != lp.dim or not lc.is_subspace_of(pair.kprime):
        raise ConsistencyFailure("l' is not l'_c + l'_n")
    hc, how = _cartan_of(a, lc, seed)
    center_c = centralizer(a, lc, lc)
    rv = _root_decomposition(a, lc, hc, seed)
    xs = pb.grading_element
    xvals = {}
    for root, v in rv.items():
        w = a.bracket(xs, v)
        c = next((wi / vi for wi, vi in zip(w, v) if vi), la.ZERO)
        if la.sub(w, la.scale(c, v)) != tuple([la.ZERO] * a.dim):
            xvals = None
            break
        xvals[root] = c

    def key(root):
        return ((xvals[root],) if xvals is not None else ()) + tuple(root)

    zero_key = key(next(iter(rv))) if rv else ()
    zero_key = tuple(la.ZERO for _ in zero_key)
    positive = sorted((r for r in rv if key(r) > zero_key), key=lambda r: tuple(r))
    pos_set = set(positive)
    for r1 in positive:
        for r2 in positive:
            s = tuple(x + y for x, y in zip(r1, r2))
            if s in rv and s not in pos_set:
                raise ConsistencyFailure("chosen positive system of l'_c is not closed")
    simple = [r for r in positive
              if not any(tuple(x - y for x, y in zip(r, s)) in pos_set for s in positive)]
    es, fs, hs = [], [], []
    for r in simple:
        e = rv[r]
        f = rv[tuple(-x for x in r)]
        hh = a.bracket(e, f)
        val = _pair(r, hc.coords(hh))
        f = la.scale(2 / val, f)
        es.append(e)
        fs.append(f)
        hs.append(a.bracket(e, f))
    cm = tuple(tuple(int(_pair(rj, hc.coords(hi))) for rj in simple) for hi in hs)
    if span(list(hs) + list(center_c.basis), a.dim) != hc:
        raise ConsistencyFailure("coroots and center do not span the Cartan of l'_c")
    borel = sum_(hc, span([rv[r] for r in positive], a.dim))
    choice = {"cartan": how, "positive_system": "grading value then lexicographic"
              if xvals is not None else "lexicographic on h_c values", "seed": seed}
    return LeviSplit(lp, lc, ln, center, flagged, hc, center_c, tuple(sorted(rv)), rv,
                     tuple(positive), tuple(simple), borel, tuple(es), tuple(fs), tuple(hs),
                     cm, choice)


def construct_qdoubleprime(pb: ThetaStableParabolic, pair: SymmetricPair,
                           cp: ConstructedParabolic, split: LeviSplit) -> Subspace:
    a = pb.algebra
    qpp = sum_all([split.borel_c, split.l_n, cp.nilradical], a.dim)
    if qpp.dim != split.borel_c.dim + split.l_n.dim + cp.nilradical.dim:
        raise CertificationFailed("b(l'_c), l'_n and u' are not independent")
    if not certify_parabolic(a, pair.gprime, qpp).certified:
        raise CertificationFailed("q'' failed parabolic certification")
    if intersect(qpp, pair.pprime) != intersect(cp.qprime, pair.pprime):
        raise CertificationFailed("q'' cap p' differs from q' cap p'")
    return qpp


def structural_checks(pb: ThetaStableParabolic, pair: SymmetricPair,
                      cp: ConstructedParabolic, split: Optional[LeviSplit] = None) -> Dict[str, bool]:
    """Subspace identities that hold on every sigma-open (and, where noted, certified) instance."""
    a = pb.algebra
    out = {}
    projected = pair.project(pb.u_cap_p)
    out["projection_is_perp_of_q_cap_pprime"] = (
        projected == orthocomplement(a.killing_matrix, intersect(pb.q, pair.pprime), pair.pprime))
    out["theta_stable"] = pair.theta.image(pb.q) == pb.q
    out["q_cap_qbar_is_levi"] = intersect(pb.q, pb.qbar) == pb.l
    if not cp.certified:
        return out
    q_g = intersect(pb.q, pair.gprime)
    out["nilradical_in_q"] = cp.nilradical.is_subspace_of(q_g)
    out["opposite_side_inclusion"] = intersect(pb.qbar, pair.gprime).is_subspace_of(
        pair.bar(cp.qprime))
    if split is not None:
        out["l_n_in_q"] = split.l_n.is_subspace_of(q_g)
        parts = [intersect(pb.q, split.l_c), split.l_n, cp.nilradical]
        total = sum_all(parts, a.dim)
        out["q_cap_gprime_splits"] = (total == q_g and
                                      sum(s.dim for s in parts) == q_g.dim)
        lnu = sum_(split.l_n, cp.nilradical)
        target = sum_(pb.q, pair.gprime)
        full = coordinate_span(range(a.dim), a.dim)
        out["l_n_plus_u_brackets_into_q_plus_gprime"] = brackets_into(a, lnu, full, target)
    return out
