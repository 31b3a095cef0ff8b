"""Instance files: JSON documents describing (g, theta, sigma, x, lambda)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Tuple

from . import linalg as la
from .algebra import DEFAULT_DIM_BOUND, ChevalleyAlgebra
from .errors import BranchkitError, InvalidInput, ParseError
from .nilcone import DEFAULT_TERM_BUDGET
from .parabolics import ThetaStableParabolic, parabolic_from_grading
from .repkit import DEFAULT_MODULE_BOUND
from .sympair import (LieInvolution, SymmetricPair, derive_pair, identity_involution,
                      involution_from_matrix, involution_from_signs)

KNOWN_FIELDS = {"algebra", "theta", "sigma", "grading", "lambda", "max_p", "seed", "budgets",
                "name", "description"}


@dataclass(frozen=True)
class Budgets:
    dim: int = DEFAULT_DIM_BOUND
    module_dim: int = DEFAULT_MODULE_BOUND
    nilcone_terms: int = DEFAULT_TERM_BUDGET


@dataclass
class Instance:
    raw: dict
    algebra: ChevalleyAlgebra
    theta: LieInvolution
    sigma: LieInvolution
    pair: SymmetricPair
    parabolic: ThetaStableParabolic
    lam: Optional[Tuple[Fraction, ...]]
    max_p: int
    seed: int
    budgets: Budgets
    name: str = ""

    def echo(self) -> dict:
        return {"name": self.name, "algebra": [list(t) for t in self.algebra.cartan_type],
                "dim": self.algebra.dim, "grading": [la.format_rational(x) for x in
                                                     self.parabolic.grading],
                "lambda": None if self.lam is None else [la.format_rational(x) for x in self.lam],
                "max_p": self.max_p, "seed": self.seed,
                "theta": self.theta.construction, "sigma": self.sigma.construction,
                "budgets": {"dim": self.budgets.dim, "module_dim": self.budgets.module_dim,
                            "nilcone_terms": self.budgets.nilcone_terms},
                "conventions": self.algebra.metadata}


def _at(path: str, fn, *args, **kwargs):
    """Run a constructor and tag any input error with the field path."""
    try:
        return fn(*args, **kwargs)
    except ParseError:
        raise
    except BranchkitError as exc:
        if exc.field_path is None:
            exc.field_path = path
        raise
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        raise ParseError(path, str(exc)) from exc


def _rational(value: Any, path: str) -> Fraction:
    try:
        return la.parse_rational(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(path, f"not an exact rational: {value!r}") from exc


def _rational_list(value: Any, path: str) -> Tuple[Fraction, ...]:
    if not isinstance(value, list):
        raise ParseError(path, "expected a list")
    return tuple(_rational(v, f"{path}[{i}]") for i, v in enumerate(value))


def _int(value: Any, path: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ParseError(path, f"expected an integer >= {minimum}")
    return value


def _parse_involution(a: ChevalleyAlgebra, spec: Any, path: str) -> LieInvolution:
    if not isinstance(spec, dict):
        raise ParseError(path, "expected an object with a 'mode'")
    mode = spec.get("mode")
    if mode == "identity":
        return identity_involution(a)
    if mode == "matrix":
        rows = spec.get("rows")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError(f"{path}.rows", "expected a list of rows")
        m = [list(_rational_list(r, f"{path}.rows[{i}]")) for i, r in enumerate(rows)]
        return _at(f"{path}.rows", involution_from_matrix, a, m)
    if mode == "signs":
        root_map = spec.get("root_map")
        if root_map is not None:
            if not isinstance(root_map, list) or not all(
                    isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool)
                                                for x in r) for r in root_map):
                raise ParseError(f"{path}.root_map", "expected an integer matrix")
        signs = spec.get("signs")
        if isinstance(signs, dict):
            parsed = {}
            for key, val in signs.items():
                try:
                    root = tuple(int(c) for c in str(key).split(","))
                except ValueError as exc:
                    raise ParseError(f"{path}.signs", f"bad root key {key!r}") from exc
                parsed[root] = _rational(val, f"{path}.signs.{key}")
            signs = parsed
        elif signs is not None:
            signs = list(_rational_list(signs, f"{path}.signs"))
        cartan = spec.get("cartan")
        if cartan is not None:
            cartan = [list(_rational_list(r, f"{path}.cartan[{i}]")) for i, r in enumerate(cartan)]
        return _at(path, involution_from_signs, a, root_map, signs, cartan)
    raise ParseError(f"{path}.mode", f"unknown mode {mode!r} (use signs, matrix or identity)")


def parse_instance(data: Any, dim_bound: Optional[int] = None) -> Instance:
    if not isinstance(data, dict):
        raise ParseError("$", "instance must be a JSON object")
    unknown = sorted(set(data) - KNOWN_FIELDS)
    if unknown:
        raise ParseError(unknown[0], "unknown field")
    budgets_raw = data.get("budgets", {}) or {}
    if not isinstance(budgets_raw, dict):
        raise ParseError("budgets", "expected an object")
    budgets = Budgets(
        _int(budgets_raw.get("dim", DEFAULT_DIM_BOUND), "budgets.dim", 1),
        _int(budgets_raw.get("module_dim", DEFAULT_MODULE_BOUND), "budgets.module_dim", 1),
        _int(budgets_raw.get("nilcone_terms", DEFAULT_TERM_BUDGET), "budgets.nilcone_terms", 1))
    if dim_bound is not None:
        budgets = Budgets(dim_bound, budgets.module_dim, budgets.nilcone_terms)
    if "algebra" not in data:
        raise ParseError("algebra", "missing field")
    alg = data["algebra"]
    if not isinstance(alg, list) or not alg or not all(
            isinstance(t, list) and len(t) == 2 for t in alg):
        raise ParseError("algebra", "expected a list of [family, rank] pairs")
    a = _at("algebra", ChevalleyAlgebra, [tuple(t) for t in alg], budgets.dim)
    for key in ("theta", "sigma", "grading"):
        if key not in data:
            raise ParseError(key, "missing field")
    theta = _parse_involution(a, data["theta"], "theta")
    if data["sigma"] == "theta":
        sigma = theta
    else:
        sigma = _parse_involution(a, data["sigma"], "sigma")
    pair = _at("sigma", derive_pair, a, theta, sigma)
    grading = _rational_list(data["grading"], "grading")
    pb = _at("grading", parabolic_from_grading, a, theta, grading)
    lam = None
    if "lambda" in data and data["lambda"] is not None:
        lam = _rational_list(data["lambda"], "lambda")
    max_p = _int(data.get("max_p", 4), "max_p")
    seed = _int(data.get("seed", 0), "seed")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name", "expected a string")
    return Instance(data, a, theta, sigma, pair, pb, lam, max_p, seed, budgets, name)


def load_instance(path: str, dim_bound: Optional[int] = None) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError("$", f"cannot read file: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError("$", f"invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return parse_instance(data, dim_bound)
