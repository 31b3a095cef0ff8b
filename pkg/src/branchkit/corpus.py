"""Deterministic generation of small (g, theta, sigma, x) instances."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from .algebra import ChevalleyAlgebra
from .errors import InvalidInput, NonCommuting
from .sympair import LieInvolution, SymmetricPair, derive_pair, involution_from_signs

CORPUS_TYPES = (
    (("A", 1),),
    (("A", 1), ("A", 1)),
    (("A", 2),),
    (("B", 2),),
    (("C", 2),),
)


@dataclass(frozen=True)
class CorpusInstance:
    name: str
    cartan_type: tuple
    theta_spec: dict
    sigma_spec: dict
    grading: Tuple[int, ...]
    algebra: ChevalleyAlgebra
    pair: SymmetricPair

    @property
    def sigma_is_theta(self) -> bool:
        return self.pair.theta.matrix == self.pair.sigma.matrix

    def to_instance_dict(self, lam=None, max_p: int = 4, seed: int = 0) -> dict:
        out = {"algebra": [list(t) for t in self.cartan_type], "theta": self.theta_spec,
               "sigma": self.sigma_spec, "grading": list(self.grading), "max_p": max_p,
               "seed": seed}
        if lam is not None:
            out["lambda"] = list(lam)
        return out


def _identity_map(r):
    return [[1 if i == j else 0 for j in range(r)] for i in range(r)]


def _diagram_flips(cartan_type) -> List[List[List[int]]]:
    if cartan_type == (("A", 1), ("A", 1)):
        return [[[0, 1], [1, 0]]]
    if cartan_type == (("A", 2),):
        return [[[0, 1], [1, 0]]]
    return []


def _sign_specs(a: ChevalleyAlgebra, root_map) -> List[Tuple[dict, LieInvolution]]:
    out = []
    for signs in itertools.product((1, -1), repeat=a.rank):
        try:
            inv = involution_from_signs(a, root_map, list(signs))
        except InvalidInput:
            continue
        spec = {"mode": "signs", "root_map": root_map, "signs": list(signs)}
        out.append((spec, inv))
    # distinct matrices only
    seen, uniq = set(), []
    for spec, inv in out:
        if inv.matrix not in seen:
            seen.add(inv.matrix)
            uniq.append((spec, inv))
    return uniq


@lru_cache(maxsize=None)
def _pairs_for(cartan_type):
    a = ChevalleyAlgebra(cartan_type)
    r = a.rank
    thetas = _sign_specs(a, _identity_map(r))
    sigmas = list(thetas)
    for flip in _diagram_flips(cartan_type):
        sigmas += _sign_specs(a, flip)
    pairs = []
    for (tspec, th), (sspec, sg) in itertools.product(thetas, sigmas):
        try:
            pairs.append((tspec, sspec, derive_pair(a, th, sg)))
        except NonCommuting:
            continue
    return a, pairs


def generate_corpus(types=CORPUS_TYPES, grading_values=(-1, 0, 1),
                    sigma_equals_theta: Optional[bool] = None) -> Iterator[CorpusInstance]:
    for ct in types:
        a, pairs = _pairs_for(tuple(ct))
        for ti, (tspec, sspec, pair) in enumerate(pairs):
            same = pair.theta.matrix == pair.sigma.matrix
            if sigma_equals_theta is not None and same != sigma_equals_theta:
                continue
            for x in itertools.product(grading_values, repeat=a.rank):
                name = ("x".join(f"{f}{n}" for f, n in ct) + f"/pair{ti}/x=" +
                        ",".join(str(v) for v in x))
                yield CorpusInstance(name, tuple(ct), tspec, sspec, x, a, pair)
