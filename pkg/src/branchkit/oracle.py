"""Cross-check suite: independent computations that must agree."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

from . import linalg as la
from .algebra import (ChevalleyAlgebra, check_antisymmetry, check_cartan_action,
                      form_invariance_failures, jacobi_failures)
from .assvar import assvar_report, saturation_dimension
from .branching import branch_table, levi_center
from .errors import BranchkitError, HypothesisViolated
from .nilcone import sample_grid_agrees
from .parabolics import (construct_qdoubleprime, is_discretely_decomposable, is_sigma_open,
                         levi_split, parabolic_from_grading, structural_checks)
from .repkit import (WeightCharacter, construct_irreducible, freudenthal_character, symmetric_power_by_monomials,
                     symmetric_power_character, weyl_dimension)
from .subspace import (Subspace, apply_linear_map, form_is_nondegenerate_on, full, intersect,
                       kernel, orthocomplement, project_along, span)
from .sympair import SymmetricPair

SCHEMA_ORACLE = "branchkit.oracle/1"
JACOBI_DIM_LIMIT = 80


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json_obj(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


# -- the projection lemma on random data -------------------------------------
def _random_subspace(rng: random.Random, n: int, k: int) -> Subspace:
    return span([[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(k)], n)


def lemma_proj_instance(seed: int, max_dim: int = 8):
    """Seeded (G, X, W) with G nondegenerate symmetric on Q^n and on X."""
    rng = random.Random(seed)
    while True:
        n = rng.randint(2, max_dim)
        g = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g[i][j] = g[j][i] = Fraction(rng.randint(-3, 3))
        if la.rank(g, n) < n:
            continue
        x = _random_subspace(rng, n, rng.randint(1, n))
        if not form_is_nondegenerate_on(g, x):
            continue
        w = _random_subspace(rng, n, rng.randint(0, n))
        return g, x, w


def check_lemma_proj(g, x: Subspace, w: Subspace) -> bool:
    """(W cap X)^{perp X} equals the projection of W^{perp V} onto X along X^{perp V}."""
    n = x.ambient_dim
    v = full(n)
    x_perp = orthocomplement(g, x, v)
    if x.dim + x_perp.dim != n or intersect(x, x_perp).dim:
        raise ValueError("X is not a nondegenerate summand")
    lhs = orthocomplement(g, intersect(w, x), x)
    w_perp = orthocomplement(g, w, v)
    rhs = span([project_along(x, x_perp, u) for u in w_perp.basis], n)
    return lhs == rhs


def lemma_proj_suite(count: int = 200, seed: int = 0) -> Tuple[int, int]:
    ok = 0
    for k in range(count):
        g, x, w = lemma_proj_instance(seed * 100003 + k)
        ok += check_lemma_proj(g, x, w)
    return ok, count


# -- per-instance checks ------------------------------------------------------
def _check(results: List[CheckResult], name: str, fn: Callable[[], Tuple[bool, str]]):
    try:
        passed, detail = fn()
    except HypothesisViolated as exc:
        passed, detail = True, f"skipped: {exc}"
    except BranchkitError as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    results.append(CheckResult(name, bool(passed), detail))


def algebra_checks(a: ChevalleyAlgebra) -> List[CheckResult]:
    out: List[CheckResult] = []
    _check(out, "antisymmetry", lambda: (check_antisymmetry(a), ""))
    _check(out, "cartan_action", lambda: (check_cartan_action(a), ""))
    if a.dim <= JACOBI_DIM_LIMIT:
        _check(out, "jacobi", lambda: (not jacobi_failures(a), f"dim {a.dim}"))
        _check(out, "form_invariance", lambda: (not form_invariance_failures(a), ""))
    return out


def pair_checks(pair: SymmetricPair) -> List[CheckResult]:
    a = pair.algebra
    out: List[CheckResult] = []
    pr = [list(r) for r in pair.pr_matrix]

    def idempotent():
        return la.matmul(pr, pr) == pr, ""

    def image_kernel():
        img = apply_linear_map(pr, full(a.dim))
        ker = kernel(pr, a.dim)
        return img == pair.gprime and ker == pair.g_minus_sigma, ""

    def theta_on_gprime():
        return (pair.theta.image(pair.gprime) == pair.gprime and
                intersect(pair.theta.fixed(), pair.gprime) == pair.kprime), ""

    _check(out, "projection_idempotent", idempotent)
    _check(out, "projection_image_kernel", image_kernel)
    _check(out, "theta_restricts_to_gprime", theta_on_gprime)
    return out


def repkit_checks(a: ChevalleyAlgebra, module_bound: int = 2000) -> List[CheckResult]:
    out: List[CheckResult] = []
    rd = a.root_datum
    r = a.rank
    lams = [tuple([0] * r)] + [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    lams.append(tuple([1] * r))
    for lam in lams:
        if weyl_dimension(rd.cartan, lam) > module_bound:
            continue

        def one(lam=lam):
            mod = construct_irreducible(rd.cartan, lam, module_bound)
            same = mod.character() == freudenthal_character(rd.cartan, lam)
            return same and mod.dim == weyl_dimension(rd.cartan, lam), f"dim {mod.dim}"
        _check(out, f"irreducible_vs_freudenthal{list(lam)}", one)
    return out


def instance_checks(a: ChevalleyAlgebra, pair: SymmetricPair, grading, lam=None,
                    max_p: int = 3, seed: int = 0) -> List[CheckResult]:
    out: List[CheckResult] = []
    pb = parabolic_from_grading(a, pair.theta, grading)
    if not is_sigma_open(pb, pair):
        out.append(CheckResult("sigma_open", True, "not sigma-open; remaining checks skipped"))
        return out
    verdict = None

    def criteria():
        nonlocal verdict
        verdict = is_discretely_decomposable(pb, pair)
        return True, f"decomposable={verdict.verdict}"
    _check(out, "criteria_agree", criteria)
    if verdict is None:
        return out
    projected = verdict.projected
    if projected.dim <= 2:
        _check(out, "nilcone_grid_agrees", lambda: (sample_grid_agrees(a, projected), ""))
    cp = verdict.criterion_iii
    split = None
    if cp.certified:
        def splitting():
            nonlocal split
            split = levi_split(pb, pair, cp, seed)
            return True, f"l_c dim {split.l_c.dim}, l_n dim {split.l_n.dim}"
        _check(out, "levi_split", splitting)
    for name, ok in structural_checks(pb, pair, cp, split).items():
        out.append(CheckResult(name, ok))
    dens = (saturation_dimension(a, pair.kprime, pb.ubar_cap_p, seed).dimension ==
            saturation_dimension(a, pair.k, pb.ubar_cap_p, seed).dimension)
    out.append(CheckResult("density_shadow", dens))
    if split is None:
        return out

    report = None

    def qpp_and_projection():
        nonlocal report
        qpp = construct_qdoubleprime(pb, pair, cp, split)
        report = assvar_report(pb, pair, cp, qpp, seed)
        return report.projection.equal and report.projection.bar_equal, ""
    _check(out, "projection_equality", qpp_and_projection)
    if report is not None:
        out.append(CheckResult("projected_assvar_dimension", report.dimensions_equal,
                               f"{report.projected_g_side.dimension} vs "
                               f"{report.gprime_side.dimension}"))
    value = lam if lam is not None else [0] * levi_center(pb).dim

    def hom_euler():
        tab = branch_table(pb, pair, value, max_p, seed, allow_unfair=True)
        unexplained = [d for d in tab.discrepancies if not d["sign_mixing"]]
        return not unexplained, f"{len(tab.entries)} cells, {len(tab.discrepancies)} discrepancies"
    _check(out, "hom_vs_euler", hom_euler)
    return out


def run_instance_oracle(inst, lemma_count: int = 200) -> List[CheckResult]:
    """Every cross-check for one parsed instance file."""
    a = inst.algebra
    out = algebra_checks(a) + pair_checks(inst.pair) + repkit_checks(a, inst.budgets.module_dim)
    out += instance_checks(a, inst.pair, inst.parabolic.grading, inst.lam,
                           min(inst.max_p, 4), inst.seed)
    ok, total = lemma_proj_suite(lemma_count, inst.seed)
    out.append(CheckResult("lemma_proj_random", ok == total, f"{ok}/{total}"))
    sample = WeightCharacter.from_map({(2,): 1, (-2,): 1, (0,): 1})
    out.append(CheckResult("symmetric_power_newton_vs_monomials",
                           all(symmetric_power_character(sample, p) ==
                               symmetric_power_by_monomials(sample, p) for p in range(6))))
    return out


def corpus_sweep(seed: int = 0, max_p: int = 2, types=None) -> dict:
    """Aggregated pass counts of instance checks over the generated corpus."""
    from .corpus import CORPUS_TYPES, generate_corpus
    counts: Counter = Counter()
    failures = []
    n = 0
    for inst in generate_corpus(types or CORPUS_TYPES):
        n += 1
        for res in instance_checks(inst.algebra, inst.pair, inst.grading, None, max_p, seed):
            counts[(res.name, res.passed)] += 1
            if not res.passed:
                failures.append({"instance": inst.name, "check": res.name, "detail": res.detail})
    names = sorted({k for k, _ in counts})
    return {"instances": n,
            "checks": {k: {"passed": counts[(k, True)], "failed": counts[(k, False)]}
                       for k in names},
            "failures": failures}
