"""Command-line front end.

Subcommands:
  eval    evaluate the closure on JSON state/material files
  verify  run the verification suites and emit a machine-readable report
  sample  generate seeded random states

Exit codes: 0 success, 1 verification failure, 2 usage or schema error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from ._version import __version__
from .cseries import COMBO_COEFFS
from .derivatives import compatibility_residual, fluxes_from_jets, _moments_from_grad, \
    _potential_jets
from .materials import material_from_json
from .potentials import compute_V, compute_X
from .state import (MultiplierState, SchemaError, sample_rational_state,
                    sample_state, state_from_json, state_to_json)
from .tensors import SYM6_ORDER
from .verify import SUITE_NAMES, SuiteConfig, report_document, run_suites


def _load_json(path: str, what: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"{what}: file not found: {path}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what}: invalid JSON in {path}: {exc}")


def _dump(doc, out: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _mat3_json(m):
    return [[float(m[i][j]) for j in range(3)] for i in range(3)]


def _eval_document(state: MultiplierState, material) -> dict:
    x = compute_X(state)
    v = compute_V(state)
    h, phi = _potential_jets(state, material)
    moments = _moments_from_grad(h.g)
    fluxes = fluxes_from_jets(phi)
    compat = tuple(phi[k].g[0] - h.g[1 + k] for k in range(3))
    return {
        "x": {f"x{i + 1}": float(val) for i, val in enumerate(x.as_tuple())},
        "v": {f"v{j}": [float(c) for c in vec] for j, vec in enumerate(v.as_tuple())},
        "hprime": float(h.val),
        "phiprime": [float(p.val) for p in phi],
        "moments": {
            "F": float(moments.f),
            "F_i": [float(c) for c in moments.f_i],
            "F_ij": [float(moments.f_ij[i][j]) for i, j in SYM6_ORDER],
            "F_ill": [float(c) for c in moments.f_ill],
            "F_iill": float(moments.f_iill),
        },
        "fluxes": {
            "G_k": [float(c) for c in fluxes.g_k],
            "G_ki": _mat3_json(fluxes.g_ki),
            "G_kij": [[float(fluxes.g_kij[k][i][j]) for i, j in SYM6_ORDER]
                      for k in range(3)],
            "G_kill": _mat3_json(fluxes.g_kill),
            "G_kiill": [float(c) for c in fluxes.g_kiill],
        },
        "compatibility_residual": [float(c) for c in compat],
    }


def cmd_eval(args) -> int:
    state_doc = _load_json(args.state, "state")
    material = material_from_json(_load_json(args.material, "material"))
    if isinstance(state_doc, list):
        states = [state_from_json(s, f"state[{i}]") for i, s in enumerate(state_doc)]
        doc = [_eval_document(s.map_scalars(float), material) for s in states]
    else:
        state = state_from_json(state_doc)
        doc = _eval_document(state.map_scalars(float), material)
    _dump(doc, args.out)
    return 0


def cmd_verify(args) -> int:
    suites = tuple(s.strip() for s in args.suites.split(",")) if args.suites \
        else SUITE_NAMES
    corrupt = {}
    for spec in args.corrupt or ():
        name, _, delta = spec.partition("=")
        if name not in COMBO_COEFFS:
            raise SchemaError(f"--corrupt: unknown coefficient {name!r}")
        try:
            corrupt[name] = Fraction(delta) if "/" in delta else Fraction(float(delta)) \
                .limit_denominator(10**6)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"--corrupt: bad delta {delta!r}")
    try:
        config = SuiteConfig(seed=args.seed, trials=args.trials, tol=args.tol,
                             scheme=args.scheme, suites=suites, corrupt=corrupt)
    except ValueError as exc:
        raise SchemaError(str(exc))
    reports = run_suites(config)
    doc = report_document(config, reports)
    _dump(doc, args.out)
    for rep in reports:
        status = "pass" if rep.passed else "FAIL"
        print(f"[{status}] {rep.suite}: trials={rep.trials} "
              f"max_residual={rep.max_residual:.3e}", file=sys.stderr)
    return 0 if doc["pass"] else 1


def cmd_sample(args) -> int:
    if args.magnitude <= 0:
        raise SchemaError("--magnitude must be > 0")
    states = []
    for i in range(args.count):
        rng = np.random.default_rng([args.seed, i])
        if args.rational:
            states.append(sample_rational_state(rng, args.magnitude))
        else:
            states.append(sample_state(rng, args.magnitude))
    _dump([state_to_json(s) for s in states], args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="closure14",
                                description="14-moment closure evaluator and verifier")
    p.add_argument("--version", action="version", version=f"closure14 {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate the closure on a state/material pair")
    pe.add_argument("--state", required=True, help="state JSON file (object or array)")
    pe.add_argument("--material", required=True, help="material JSON file")
    pe.add_argument("--out", help="write the JSON document here instead of stdout")
    pe.set_defaults(fn=cmd_eval)

    pv = sub.add_parser("verify", help="run verification suites")
    pv.add_argument("--suites", help=f"comma-separated subset of {','.join(SUITE_NAMES)}")
    pv.add_argument("--seed", type=int, default=20240817)
    pv.add_argument("--trials", type=int, default=None)
    pv.add_argument("--tol", type=float, default=None)
    pv.add_argument("--scheme", default="paper",
                    choices=("paper", "ideal-gas", "literature", "all"))
    pv.add_argument("--out", help="write the report here instead of stdout")
    pv.add_argument("--corrupt", action="append", help=argparse.SUPPRESS)
    pv.set_defaults(fn=cmd_verify)

    ps = sub.add_parser("sample", help="generate seeded random states")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--count", type=int, default=1)
    ps.add_argument("--magnitude", type=float, default=1.0)
    ps.add_argument("--rational", action="store_true",
                    help="snap components to rationals with denominator <= 1000")
    ps.add_argument("--out", help="write the state array here instead of stdout")
    ps.set_defaults(fn=cmd_sample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
