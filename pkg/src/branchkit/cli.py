"""Command-line front end: `branchkit <command> <instance.json> [options]`."""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import __version__
from . import linalg as la
from .assvar import assvar_report
from .branching import (blattner_table, branch_table, check_lambda, prepare_branch,
                        _compact_positive_roots)
from .errors import BranchkitError, HypothesisViolated, ParseError
from .instance import Instance, load_instance
from .oracle import SCHEMA_ORACLE, corpus_sweep, run_instance_oracle
from .parabolics import (construct_qdoubleprime, construct_qprime, is_discretely_decomposable,
                         is_sigma_open, levi_split)
from .subspace import Subspace

SCHEMA_REPORT = "branchkit.report/1"
COMMANDS = ("validate", "check", "construct", "branch", "blattner", "assvar", "oracle")


def _plain(obj: Any) -> Any:
    """Recursively convert Fractions, tuples and subspaces into JSON values."""
    if isinstance(obj, Fraction):
        return la.format_rational(obj)
    if isinstance(obj, Subspace):
        return {"dim": obj.dim, "basis": [_plain(v) for v in obj.basis]}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _report(command: str, inst: Optional[Instance], body: dict) -> dict:
    out = {"schema": SCHEMA_REPORT, "command": command, "version": __version__}
    if inst is not None:
        out["instance"] = inst.echo()
    out.update(body)
    return _plain(out)


# -- subcommands ---------------------------------------------------------------
def cmd_validate(inst: Instance) -> dict:
    a = inst.algebra
    return {"valid": True, "dim": a.dim,
            "dims": {"k": inst.pair.k.dim, "p": inst.pair.p.dim, "gprime": inst.pair.gprime.dim,
                     "kprime": inst.pair.kprime.dim, "pprime": inst.pair.pprime.dim,
                     "q": inst.parabolic.q.dim, "l": inst.parabolic.l.dim,
                     "u": inst.parabolic.u.dim}}


def cmd_check(inst: Instance) -> dict:
    pb, pair = inst.parabolic, inst.pair
    if not is_sigma_open(pb, pair):
        return {"sigma_open": False, "decomposable": None}
    v = is_discretely_decomposable(pb, pair, inst.budgets.nilcone_terms)
    cp = v.criterion_iii
    return {
        "sigma_open": True,
        "decomposable": v.verdict,
        "witness": v.witness,
        "projected_u_cap_p": v.projected,
        "criterion_nilcone": {"verdict": v.criterion_iv.verdict,
                              "method": v.criterion_iv.method,
                              "witness": v.criterion_iv.witness},
        "criterion_parabolic": {"verdict": cp.certified, "reason": cp.certification.reason,
                                "qprime_dim": cp.qprime.dim},
    }


def _construct_data(inst: Instance):
    pb, pair = inst.parabolic, inst.pair
    cp = construct_qprime(pb, pair, inst.budgets.nilcone_terms)
    body: Dict[str, Any] = {"qprime": cp.qprime, "certified": cp.certified,
                            "reason": cp.certification.reason,
                            "q_cap_pprime": cp.q_cap_pprime, "normalizer_in_kprime": cp.normalizer}
    if not cp.certified:
        return cp, None, None, body
    split = levi_split(pb, pair, cp, inst.seed)
    qpp = construct_qdoubleprime(pb, pair, cp, split)
    body.update({
        "nilradical": cp.nilradical, "levi": cp.levi,
        "levi_split": {"compact_part_dim": split.l_c.dim, "noncompact_part_dim": split.l_n.dim,
                       "center_dim": split.center.dim,
                       "ideals": [{"dim": s.dim, "compact": c} for s, c in split.ideals],
                       "cartan_h_c": split.h_c, "positive_roots": split.positive_roots_c,
                       "simple_roots": split.simple_roots_c, "cartan_matrix": split.cartan_matrix,
                       "borel_choice": split.choice},
        "qdoubleprime": qpp,
    })
    return cp, split, qpp, body


def cmd_construct(inst: Instance) -> dict:
    return _construct_data(inst)[3]


def _require_lambda(inst: Instance):
    if inst.lam is None:
        raise ParseError("lambda", "missing field (required by this command)")
    return inst.lam


def cmd_branch(inst: Instance) -> dict:
    lam = _require_lambda(inst)
    ctx = prepare_branch(inst.parabolic, inst.pair, lam, inst.seed,
                         term_budget=inst.budgets.nilcone_terms)
    table = branch_table(inst.parabolic, inst.pair, lam, inst.max_p, inst.seed, context=ctx,
                         module_bound=inst.budgets.module_dim)
    qpp = construct_qdoubleprime(inst.parabolic, inst.pair, ctx.cp, ctx.split)
    return {"lambda_flags": ctx.lam.flags(), "lambda_on_cartan": ctx.lam.on_cartan,
            "qprime": ctx.cp.qprime, "qdoubleprime": qpp,
            "compact_levi_positive_roots": ctx.split.positive_roots_c,
            "table": table.to_json_obj(), "_text": table.to_text()}


def cmd_blattner(inst: Instance) -> dict:
    lam = _require_lambda(inst)
    pb, pair = inst.parabolic, inst.pair
    param = check_lambda(pb, pair, lam)
    t = pb.compact_cartan
    tab = blattner_table(pb, pair, lam, inst.max_p)
    rows = [{"mu": list(w), "p": p, "bound": m} for (w, p), m in sorted(tab.items(),
                                                                      key=lambda kv: (kv[0][1], kv[0][0]))]
    text = "\n".join(f"p={r['p']}  mu=({','.join(la.format_rational(x) for x in r['mu'])})  "
                     f"bound={r['bound']}" for r in rows)
    return {"lambda_flags": param.flags(), "compact_cartan": t,
            "compact_positive_roots": _compact_positive_roots(pb, pair, t),
            "rows": rows, "_text": text or "(empty)"}


def cmd_assvar(inst: Instance) -> dict:
    cp, split, qpp, _ = _construct_data(inst)
    if not cp.certified:
        raise HypothesisViolated("q' is not parabolic in g'; restriction is not decomposable",
                                 {"decomposable": False})
    rep = assvar_report(inst.parabolic, inst.pair, cp, qpp, inst.seed)
    return {"assvar": rep.to_json_obj()}


def cmd_oracle(inst: Instance) -> dict:
    results = run_instance_oracle(inst)
    failed = [r.name for r in results if not r.passed]
    return {"schema_oracle": SCHEMA_ORACLE, "checks": [r.to_json_obj() for r in results],
            "passed": len(results) - len(failed), "failed": failed}


HANDLERS = {"validate": cmd_validate, "check": cmd_check, "construct": cmd_construct,
            "branch": cmd_branch, "blattner": cmd_blattner, "assvar": cmd_assvar,
            "oracle": cmd_oracle}


# -- rendering -----------------------------------------------------------------
def _text(report: dict, text_extra: Optional[str], elapsed: float) -> str:
    lines = []
    for key, value in report.items():
        if key in ("instance", "table"):
            continue
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    if text_extra:
        lines.append(text_extra)
    lines.append(f"elapsed: {elapsed:.3f}s")
    return "\n".join(lines)


def _emit(report: dict, as_json: bool, text_extra: Optional[str], elapsed: float):
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_text(report, text_extra, elapsed))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="branchkit",
                                 description="Exact branching computations for Zuckerman modules.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", nargs="?", help="instance JSON file (optional with oracle --corpus)")
    ap.add_argument("--max-p", type=int, default=None, help="override max_p from the file")
    ap.add_argument("--seed", type=int, default=None, help="override the file seed")
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="as_json", action="store_true", default=True)
    fmt.add_argument("--text", dest="as_json", action="store_false")
    ap.add_argument("--budget-dim", type=int, default=None, help="bound on dim g")
    ap.add_argument("--corpus", action="store_true",
                    help="oracle only: sweep the generated corpus instead of one file")
    return ap


def _error_report(command: str, exc: BranchkitError) -> dict:
    body = {"error": {"type": type(exc).__name__, "message": str(exc),
                      "exit_code": exc.exit_code}}
    path = getattr(exc, "path", None) or exc.field_path
    if path is not None:
        body["error"]["field_path"] = path
    if isinstance(exc, HypothesisViolated):
        body["error"]["flags"] = exc.flags
    return _report(command, None, body)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    if args.command == "oracle" and args.corpus:
        sweep = corpus_sweep(args.seed or 0, args.max_p if args.max_p is not None else 2)
        report = _report("oracle", None, {"corpus": sweep})
        _emit(report, args.as_json, None, time.perf_counter() - start)
        return 3 if sweep["failures"] else 0
    if args.file is None:
        print("branchkit: an instance file is required", file=sys.stderr)
        return 1
    try:
        inst = load_instance(args.file, args.budget_dim)
        if args.max_p is not None:
            if args.max_p < 0:
                raise ParseError("--max-p", "must be non-negative")
            inst.max_p = args.max_p
        if args.seed is not None:
            inst.seed = args.seed
        body = HANDLERS[args.command](inst)
    except BranchkitError as exc:
        report = _error_report(args.command, exc)
        _emit(report, args.as_json, None, time.perf_counter() - start)
        return exc.exit_code
    text_extra = body.pop("_text", None)
    report = _report(args.command, inst, body)
    _emit(report, args.as_json, text_extra, time.perf_counter() - start)
    if args.command == "oracle" and report["failed"]:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
