"""Associated-variety dimension data via generic tangent ranks."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from . import linalg as la
from .algebra import ChevalleyAlgebra
from .errors import EqualityViolated, NotSubalgebra
from .lieops import is_subalgebra
from .parabolics import ConstructedParabolic, ThetaStableParabolic
from .subspace import Subspace, intersect, orthocomplement, span
from .sympair import SymmetricPair

DEFAULT_SAMPLES = 8
SCHEMA_ASSVAR = "branchkit.assvar/1"


@dataclass(frozen=True)
class OrbitClosureData:
    generating_subspace: Subspace
    acting_subalgebra: Subspace
    dimension: int
    witness_point: Optional[Tuple[Fraction, ...]]
    samples_tried: int

    def to_json_obj(self) -> dict:
        return {"dimension": self.dimension, "samples_tried": self.samples_tried,
                "witness": None if self.witness_point is None else
                [la.format_rational(x) for x in self.witness_point]}


def _sample_points(s: Subspace, seed: int, samples: int):
    """All-ones combination first, then seeded integer points."""
    yield la.vecmat([la.ONE] * s.dim, s.basis)
    rng = random.Random(seed)
    for _ in range(samples):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(s.dim)]
        yield la.vecmat(coeffs, s.basis)


def saturation_dimension(a: ChevalleyAlgebra, acting: Subspace, s: Subspace, seed: int = 0,
                         samples: int = DEFAULT_SAMPLES, projection=None) -> OrbitClosureData:
    """Max over sampled x in s of dim([acting, x] + s).

    With ``projection`` the tangent space is pushed through that linear map
    first, giving the dimension of the image of the saturation.
    """
    if not is_subalgebra(a, acting):
        raise NotSubalgebra("acting space is not a subalgebra")
    if s.dim == 0:
        return OrbitClosureData(s, acting, 0, None, 0)
    best, witness, tried = -1, None, 0
    for x in _sample_points(s, seed, samples):
        tried += 1
        vecs = [a.bracket(y, x) for y in acting.basis] + list(s.basis)
        if projection is not None:
            vecs = [la.matvec(projection, v) for v in vecs]
        d = la.rank(vecs, a.dim)
        if d > best:
            best, witness = d, x
        if best == acting.dim + s.dim:
            break
    return OrbitClosureData(s, acting, best, witness, tried)


@dataclass(frozen=True)
class ProjectionEquality:
    equal: bool
    projected: Subspace       # pr(u cap p)
    u1_cap_p: Subspace        # u' cap p'
    u2_cap_p: Subspace        # u'' cap p'
    bar_equal: bool
    projected_bar: Subspace   # pr(ubar cap p)
    u1bar_cap_p: Subspace
    u2bar_cap_p: Subspace

    def dims(self) -> Dict[str, int]:
        return {"pr_u_cap_p": self.projected.dim, "u1_cap_pprime": self.u1_cap_p.dim,
                "u2_cap_pprime": self.u2_cap_p.dim, "pr_ubar_cap_p": self.projected_bar.dim,
                "u1bar_cap_pprime": self.u1bar_cap_p.dim,
                "u2bar_cap_pprime": self.u2bar_cap_p.dim}


def projection_equality_check(pb: ThetaStableParabolic, pair: SymmetricPair,
                              cp: ConstructedParabolic, qpp: Subspace) -> ProjectionEquality:
    a = pb.algebra
    u2 = orthocomplement(a.killing_matrix, qpp, pair.gprime)
    projected = pair.project(pb.u_cap_p)
    u1p = intersect(cp.nilradical, pair.pprime)
    u2p = intersect(u2, pair.pprime)
    projected_bar = pair.project(pb.ubar_cap_p)
    u1bp = intersect(pair.bar(cp.nilradical), pair.pprime)
    u2bp = intersect(pair.bar(u2), pair.pprime)
    eq = projected == u1p == u2p
    beq = projected_bar == u1bp == u2bp
    result = ProjectionEquality(eq, projected, u1p, u2p, beq, projected_bar, u1bp, u2bp)
    if not (eq and beq):
        raise EqualityViolated(f"projection identity fails: {result.dims()}")
    return result


@dataclass(frozen=True)
class AssvarReport:
    g_side: OrbitClosureData        # Ad(K)(ubar cap p)
    projected_g_side: OrbitClosureData   # pr of Ad(K)(ubar cap p)
    gprime_side: OrbitClosureData   # Ad(K')(ubar'' cap p')
    k_prime_on_g_side: OrbitClosureData   # Ad(K')(ubar cap p), density shadow
    projection: ProjectionEquality
    notes: Tuple[str, ...] = field(default=())

    @property
    def density_equal(self) -> bool:
        return self.k_prime_on_g_side.dimension == self.g_side.dimension

    @property
    def dimensions_equal(self) -> bool:
        return self.projected_g_side.dimension == self.gprime_side.dimension

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA_ASSVAR,
            "dim_assvar_g": self.g_side.dimension,
            "dim_projected_assvar_g": self.projected_g_side.dimension,
            "dim_assvar_gprime": self.gprime_side.dimension,
            "dimensions_equal": self.dimensions_equal,
            "dim_kprime_saturation_of_ubar_cap_p": self.k_prime_on_g_side.dimension,
            "density_equal": self.density_equal,
            "projection_equal": self.projection.equal and self.projection.bar_equal,
            "projection_dims": self.projection.dims(),
            "witnesses": [self.g_side.to_json_obj(), self.projected_g_side.to_json_obj(),
                          self.gprime_side.to_json_obj(), self.k_prime_on_g_side.to_json_obj()],
            "notes": list(self.notes),
        }


def assvar_report(pb: ThetaStableParabolic, pair: SymmetricPair, cp: ConstructedParabolic,
                  qpp: Subspace, seed: int = 0) -> AssvarReport:
    a = pb.algebra
    proj = projection_equality_check(pb, pair, cp, qpp)
    g_side = saturation_dimension(a, pair.k, pb.ubar_cap_p, seed)
    projected = saturation_dimension(a, pair.k, pb.ubar_cap_p, seed,
                                     projection=[list(r) for r in pair.pr_matrix])
    gp_side = saturation_dimension(a, pair.kprime, proj.u2bar_cap_p, seed)
    dens = saturation_dimension(a, pair.kprime, pb.ubar_cap_p, seed)
    notes = ("varieties are compared through generating subspaces and orbit-closure "
             "dimensions, not as schemes",)
    return AssvarReport(g_side, projected, gp_side, dens, proj, notes)
