"""Command-line interface.

Subcommands
-----------
analyze   read an analysis request (JSON) and print the curvature report
catalog   list the built-in examples or emit one as an analysis request
verify    recompute the built-in examples and compare with their closed forms
search    look for a special structure starting from a request's structure

Exit codes: 0 success, 1 verification rows failed, 2 invalid input,
3 degenerate geometry. Diagnostics go to standard error; standard output
only ever carries complete JSON documents or the verification table.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import catalog, liealg
from .compatible import (
    CompatibleStructure,
    adV_blocks,
    compatible_structure,
    polar_H,
    special_H_from_blocks,
)
from .curvature import SPECIAL_TOL, curvature_report, nijenhuis_norm_direct
from .errors import AlmostKahlerError, GenerationError, GeometryError, InputError
from .homogeneous import ReductiveModel, coadjoint_model, symplectic_group_model
from .liealg import LieAlgebra
from .search import SearchConfig, multi_start, perturb, random_compatible

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GEOMETRY = 0, 1, 2, 3
STRATEGIES = ("polar", "coadjoint-blocks", "explicit")
COCYCLE_TOL = 1e-9


# ---------------------------------------------------------------- JSON output

def _format(obj):
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_format(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_format(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _format(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        text = format(x, ".17g")
        return text if any(c in text for c in ".en") else text + ".0"
    if obj is None:
        return "null"
    return json.dumps(obj)


def dumps(obj):
    return _format(obj)


# ---------------------------------------------------------------- requests

def _matrix(value, name, shape=None):
    try:
        a = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"'{name}' must be a numeric array") from exc
    if shape is not None and a.shape != shape:
        raise InputError(f"'{name}' must have shape {shape}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"'{name}' has non-finite entries")
    return a


@dataclass
class AnalysisRequest:
    """
    Parsed analysis request.

    Exactly one of ``theta`` (coadjoint orbit) and ``sigma`` (symplectic
    form on the whole algebra) is given. ``m_basis`` lists ambient vectors
    spanning ``m``. ``h_matrix`` (m-coordinates) is required for the
    ``explicit`` strategy; ``h_seed`` is the seed inner product of ``polar``.
    """

    algebra: LieAlgebra
    theta: Optional[np.ndarray] = None
    sigma: Optional[np.ndarray] = None
    form: Optional[np.ndarray] = None
    m_basis: Optional[np.ndarray] = None
    h_strategy: str = "polar"
    h_matrix: Optional[np.ndarray] = None
    h_seed: Optional[np.ndarray] = None
    tolerances: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise InputError("request must be a JSON object")
        if "algebra" not in data:
            raise InputError("request needs an 'algebra' field")
        alg = LieAlgebra.from_dict(data["algebra"])
        n = alg.dim
        has_theta = data.get("theta") is not None
        has_sigma = data.get("sigma") is not None
        if has_theta == has_sigma:
            raise InputError("exactly one of 'theta' and 'sigma' must be given (they are exclusive)")
        strategy = data.get("h_strategy", "polar")
        if strategy not in STRATEGIES:
            raise InputError(f"h_strategy must be one of {', '.join(STRATEGIES)}")
        if (strategy == "explicit") != (data.get("h_matrix") is not None):
            raise InputError("'h_matrix' is required exactly when h_strategy is 'explicit'")
        req = cls(alg, h_strategy=strategy)
        if has_theta:
            req.theta = _matrix(data["theta"], "theta", (n,))
        else:
            req.sigma = _matrix(data["sigma"], "sigma", (n, n))
        if data.get("form") is not None:
            req.form = _matrix(data["form"], "form", (n, n))
        if data.get("m_basis") is not None:
            mb = _matrix(data["m_basis"], "m_basis")
            if mb.ndim != 2 or mb.shape[1] != n:
                raise InputError(f"'m_basis' must be a list of vectors of length {n}")
            req.m_basis = mb.T
        if data.get("h_matrix") is not None:
            req.h_matrix = _matrix(data["h_matrix"], "h_matrix")
        if data.get("h_seed") is not None:
            req.h_seed = _matrix(data["h_seed"], "h_seed")
        tol = data.get("tolerances") or {}
        if not isinstance(tol, dict):
            raise InputError("'tolerances' must be an object")
        req.tolerances = {k: float(v) for k, v in tol.items()}
        req.flags = dict(data.get("flags") or {})
        return req


def build_model(req: AnalysisRequest) -> ReductiveModel:
    report = liealg.validate(req.algebra, req.tolerances.get("jacobi", liealg.JACOBI_TOL))
    if not report.ok:
        raise InputError(f"Jacobi identity fails (residual {report.jacobi_residual:.3e})")
    if req.sigma is not None:
        if req.m_basis is not None:
            raise InputError("'m_basis' is only meaningful together with 'theta'")
        model = symplectic_group_model(req.algebra, req.sigma, flags=req.flags)
        res = model.cocycle_residual
        if res > req.tolerances.get("cocycle", COCYCLE_TOL) * max(1.0, np.abs(req.sigma).max()):
            raise InputError(f"sigma is not closed (cocycle residual {res:.3e})")
        return model
    return coadjoint_model(req.algebra, req.theta, form=req.form, m_basis=req.m_basis,
                           flags=req.flags)


def build_H(req: AnalysisRequest, model: ReductiveModel) -> CompatibleStructure:
    d = model.dim_m
    if req.h_strategy == "explicit":
        if req.h_matrix.shape != (d, d):
            raise InputError(f"'h_matrix' must be {d}x{d} in the coordinates of m")
        return compatible_structure(req.h_matrix, model.sigma_m)
    if req.h_strategy == "coadjoint-blocks":
        if model.V is None:
            raise InputError("coadjoint-blocks needs theta on a semisimple algebra (or a 'form')")
        return special_H_from_blocks(adV_blocks(model), model.sigma_m)
    h = np.eye(d) if req.h_seed is None else req.h_seed
    if h.shape != (d, d):
        raise InputError(f"'h_seed' must be {d}x{d} in the coordinates of m")
    return polar_H(model.sigma_m, h)


def analyze(req: AnalysisRequest, special_tol=SPECIAL_TOL):
    """Run the pipeline; returns ``(model, H, report_dict)``."""
    model = build_model(req)
    H = build_H(req, model)
    rep = curvature_report(model, H, special_tol=req.tolerances.get("special", special_tol))
    out = rep.to_dict()
    out["model"] = {
        "dim_m": model.dim_m,
        "dim_k": model.dim_k,
        "m_basis": model.m.basis.T,
        "k_basis": model.k.basis.T,
        "sigma_m": model.sigma_m,
        "cocycle_residual": model.cocycle_residual,
        "invariance_residual": model.invariance_residual,
        "margin": model.margin,
        "V": model.V,
    }
    out["H"] = H.H
    out["h_strategy"] = req.h_strategy
    return model, H, out


def reanalysis_request(request_data, report):
    """Request re-running ``report``'s structure explicitly in its own m basis."""
    data = {k: v for k, v in request_data.items() if k not in ("h_seed", "h_matrix")}
    data["h_strategy"] = "explicit"
    data["h_matrix"] = report["H"]
    if data.get("theta") is not None:
        data["m_basis"] = report["model"]["m_basis"]
    return data


# ---------------------------------------------------------------- verify

@dataclass
class Row:
    name: str
    quantity: str
    expected: float
    computed: float
    tol: float

    @property
    def passed(self):
        return bool(abs(self.computed - self.expected) <= self.tol * max(1.0, abs(self.expected)))


def closed_form_rows(inject_fault=False, tol=1e-7):
    """Rows of the built-in verification suite (closed forms vs computed values)."""
    rows = []
    e = catalog.kodaira_thurston()
    m = e.model()
    r = curvature_report(m, e.H_hint)
    zeta_err = float(np.abs(r.zeta - np.array([1.0, 0, 0, 0])).max())
    rows += [Row(e.name, "|zeta - e^1|", 0.0, zeta_err, 1e-9),
             Row(e.name, "max|rho|", 0.0, float(np.abs(r.rho_m).max()), 1e-9),
             Row(e.name, "s", 0.0, r.s, 1e-9),
             Row(e.name, "|N|^2", 0.25, r.nijenhuis_sq, 1e-9),
             Row(e.name, "scal", -0.5, r.scal, 1e-9)]
    entries = [catalog.so_twistor(n) for n in range(1, 5)]
    entries += [catalog.so_period_domain(p, q) for p in (1, 2) for q in (1, 2, 3)]
    for e in entries:
        m = e.model()
        r = curvature_report(m, e.H_hint)
        x = e.expected
        rows += [Row(e.name, "lambda", x.lam, r.lam, tol),
                 Row(e.name, "special residual", 0.0, r.special_residual, tol),
                 Row(e.name, "s", x.s, r.s, tol),
                 Row(e.name, "|N|^2", x.nijenhuis_sq, r.nijenhuis_sq, tol),
                 Row(e.name, "dim m", x.dim_m, m.dim_m, 0.0),
                 Row(e.name, "dim k", x.dim_k, m.dim_k, 0.0),
                 Row(e.name, "|V' - lambda V|", 0.0,
                     float(np.linalg.norm(r.v_prime - x.lam * m.V) / np.linalg.norm(m.V)), tol)]
        Ht = e.H_tilde
        if Ht is not None:
            rows += [Row(e.name, "|N(H~)|^2", 0.0,
                         nijenhuis_norm_direct(m, Ht, metric=np.eye(m.dim_m)), 1e-9),
                     Row(e.name, "|H~^T s H~ - s|", 0.0,
                         float(np.abs(Ht.T @ m.sigma_m @ Ht - m.sigma_m).max()), 1e-9)]
    if inject_fault:
        # test mode: shift one closed-form value so that the row must fail
        bad = rows[len(rows) // 2]
        bad.expected += 1e-3 * max(1.0, abs(bad.expected))
    return rows


SUITES = {"paper": closed_form_rows, "closed-forms": closed_form_rows}


def format_rows(rows):
    lines = [f"{'example':26s} {'quantity':20s} {'expected':>14s} {'computed':>22s}  result"]
    for r in rows:
        lines.append(f"{r.name:26s} {r.quantity:20s} {r.expected:14.6g} {r.computed:22.15g}  "
                     f"{'pass' if r.passed else 'FAIL'}")
    n_fail = sum(not r.passed for r in rows)
    lines.append(f"{len(rows) - n_fail}/{len(rows)} rows passed")
    return "\n".join(lines)


# ---------------------------------------------------------------- commands

def _read_request(path):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read request: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"request is not valid JSON: {exc}") from exc


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_analyze(args):
    data = _read_request(args.request)
    req = AnalysisRequest.from_dict(data)
    _, _, out = analyze(req, special_tol=args.tol)
    _emit(args, dumps(out))
    return EXIT_OK


def catalog_request(entry: catalog.CatalogEntry):
    """An analysis request reproducing ``entry`` with its distinguished structure."""
    data = entry.to_dict()
    req = {"name": data["name"], "algebra": data["algebra"], "expected": data["expected"],
           "params": data["params"]}
    if entry.sigma_direct is not None:
        req["sigma"] = data["sigma"]
        H = entry.H_hint
        if H is not None:
            req["h_strategy"] = "explicit"
            req["h_matrix"] = H.tolist()
        else:
            req["h_strategy"] = "polar"
    else:
        req["theta"] = data["theta"]
        req["form"] = data["form"]
        req["h_strategy"] = "coadjoint-blocks"
    return req


def cmd_catalog(args):
    if args.action == "list":
        lines = ["kodaira-thurston", "so-twistor --n N", "so-period-domain --p P --q Q",
                 "two-step [--dim D] [--seed S]", "solvable [--dim D] [--seed S]"]
        _emit(args, "\n".join(lines))
        return EXIT_OK
    if not args.name:
        raise InputError("catalog emit needs an entry name")
    entry = catalog.build(args.name, n=args.n, p=args.p, q=args.q, seed=args.seed, dim=args.dim)
    _emit(args, dumps(catalog_request(entry)))
    return EXIT_OK


def cmd_verify(args):
    if not args.suite:
        raise InputError(f"verify needs a suite name: {', '.join(SUITES)}")
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    rows = SUITES[args.suite](inject_fault=args.inject_fault, tol=args.tol)
    _emit(args, format_rows(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAILED


def cmd_search(args):
    data = _read_request(args.request)
    req = AnalysisRequest.from_dict(data)
    model = build_model(req)
    H0 = build_H(req, model)
    if args.perturb:
        H0 = perturb(H0, args.perturb, seed=args.seed)
    config = SearchConfig(max_iters=args.max_iters, step0=args.step0, shrink=args.shrink,
                          residual_target=args.target, seed=args.seed)
    starts = [H0] + [random_compatible(model.sigma_m, seed=args.seed + i)
                     for i in range(1, args.starts)]
    best, results = multi_start(model, starts, config)
    for i, res in enumerate(results):
        _log(args, f"start {i}: residual {res.residual:.3e} after {res.iterations} sweeps")
    out = {"H": best.H.H, "residual": best.residual, "lambda": best.lam,
           "special_residual": best.special_residual,
           "invariance_residual": best.invariance_residual, "iterations": best.iterations,
           "converged": best.converged, "starts": [r.residual for r in results],
           "trace": best.trace}
    _emit(args, dumps(out))
    return EXIT_OK


def _log(args, msg):
    if not args.quiet:
        print(msg, file=sys.stderr)


def make_parser():
    parser = argparse.ArgumentParser(
        prog="almost-kahler",
        description="Curvature of homogeneous compatible almost complex structures.")
    parser.add_argument("--tol", type=float, default=SPECIAL_TOL,
                        help="tolerance for specialness / verification rows (default 1e-7)")
    parser.add_argument("--out", help="write the output to this file instead of stdout")
    parser.add_argument("--quiet", action="store_true", help="suppress diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="curvature report for a request")
    p.add_argument("request", help="request JSON file, or - for stdin")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("catalog", help="list or emit built-in examples")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?", help="example name (emit only)")
    p.add_argument("--n", type=int, help="so-twistor: rank n of so(2n,1)")
    p.add_argument("--p", type=int, help="so-period-domain: p of so(2p,q)")
    p.add_argument("--q", type=int, help="so-period-domain: q of so(2p,q)")
    p.add_argument("--dim", type=int, help="two-step / solvable: dimension")
    p.add_argument("--seed", type=int, default=0, help="two-step / solvable: generator seed")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="compare built-in examples with their closed forms")
    p.add_argument("suite", nargs="?", default=None, help="suite name: paper (alias closed-forms)")
    p.add_argument("--inject-fault", action="store_true",
                   help="test mode: perturb one expected value so a row fails")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="search for a special structure")
    p.add_argument("request", help="request JSON file, or - for stdin")
    p.add_argument("--max-iters", type=int, default=500, help="sweeps per start")
    p.add_argument("--step0", type=float, default=0.5, help="largest step along a direction")
    p.add_argument("--shrink", type=float, default=0.5, help="backtracking factor in (0, 1)")
    p.add_argument("--target", type=float, default=1e-8, help="stop at this residual")
    p.add_argument("--seed", type=int, default=0, help="seed for perturbations and extra starts")
    p.add_argument("--starts", type=int, default=1, help="number of independent starts")
    p.add_argument("--perturb", type=float, default=0.0,
                   help="conjugate the starting structure by a random element of this size")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GeometryError, GenerationError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except AlmostKahlerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
