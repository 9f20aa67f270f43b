"""Command-line front end: classify, verify-dims, regress.

Exit codes separate "mathematically false" from "numerically
indeterminate": 0 success, 2 domain/usage error, 3 indeterminate flags
(residual within a factor 10 of the tolerance threshold), 4 rank
instability in the dimension sweep, 1 regression/table mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .catalog import ENTRIES, run_expectations
from .chart import DomainError
from .frames import FrameError, build_robinson, complete_null_frame, sample_robinson_over_null_line
from .modules import rob_table, sim_table
from .repdims import all_dim_checks, nilpotent_action_check, paper_arrow_delta
from .report import ClassificationReport, decomposition_dict, frame_dict, indeterminate_flags, report_schema
from .robclass import (
    aligned_residual,
    refined_flags,
    special_residual,
)
from .simclass import decompose, weyl_type_at_frame, weyl_type_search
from .tensor import Tolerance


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ROBCLS_THREADS", "1")))
    except ValueError:
        return 1


def _write(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    if args.metric not in ENTRIES:
        print(f"unknown metric '{args.metric}'; available: {', '.join(sorted(ENTRIES))}", file=sys.stderr)
        return 2
    entry = ENTRIES[args.metric]
    params = dict(entry.default_params)
    if args.params:
        params.update(json.loads(args.params))
    if args.dim:
        params["dim"] = args.dim
    chart = entry.build(params)
    try:
        point = np.array([float(v) for v in args.point.split(",")])
    except ValueError:
        print("malformed point", file=sys.stderr)
        return 2
    tol = Tolerance(args.tol, args.tol)
    try:
        cp = chart.evaluate(point)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    scale = cp.curvature_scale()
    report = ClassificationReport(
        tool_version=__version__,
        chart=chart.name,
        params={k: v for k, v in params.items() if v is not None},
        point=point.tolist(),
        tolerances={"abs_eps": tol.abs_eps, "rel_eps": tol.rel_eps},
        curvature={
            "ricci_scalar": cp.ricci_scalar,
            "kretschmann": cp.kretschmann,
            "riemann_norm": scale,
            "weyl_norm": float(np.linalg.norm(cp.weyl.ravel())),
            "phi_norm": float(np.linalg.norm(cp.phi.ravel())),
        },
        seeds={"robinson": args.robinson or ""},
    )
    indeterminate = []
    if args.search:
        label = weyl_type_search(cp.weyl, cp.g, tol)
        report.weyl_type = label.as_dict()
        frame = complete_null_frame(cp.g, label.direction)
    else:
        if args.k:
            named = _named_direction(entry, cp, params, args.k)
            if named is not None:
                kvec = named
            else:
                try:
                    kvec = np.array([float(v) for v in args.k.split(",")])
                except ValueError:
                    print("malformed k", file=sys.stderr)
                    return 2
            if abs(kvec @ cp.g @ kvec) > 1e-6 * np.abs(cp.g).max() * (kvec @ kvec):
                print("k is not null", file=sys.stderr)
                return 2
        else:
            kvec = _default_direction(entry, cp, params)
        try:
            frame = complete_null_frame(cp.g, kvec)
        except FrameError as exc:
            print(f"frame error: {exc}", file=sys.stderr)
            return 2
        label = weyl_type_at_frame(cp.weyl, frame, tol, scale)
        report.weyl_type = label.as_dict()
    report.frame = frame_dict(frame)
    dec = decompose("C", cp.weyl, frame, "sim", tol, scale)
    report.sim_decomposition = decomposition_dict(dec)
    indeterminate += indeterminate_flags(dec)
    if args.robinson:
        if args.robinson.startswith("random:"):
            seed = int(args.robinson.split(":", 1)[1])
            N = sample_robinson_over_null_line(frame, 1, seed)[0]
        elif args.robinson == "standard":
            N = build_robinson(frame, "standard")
        else:
            N = _named_structure(entry, cp, params, args.robinson)
            if N is None:
                print(
                    f"unknown robinson spec '{args.robinson}' (use 'standard', 'random:SEED', or a named structure)",
                    file=sys.stderr,
                )
                return 2
        rdec = refined_flags("C", cp.weyl, N, tol, scale)
        report.robinson = N.serialise()
        report.refined_flags = rdec.summary()
        report.predicates["aligned"] = bool(aligned_residual(cp.weyl, N) * scale <= tol.threshold(scale))
        report.predicates["algebraically_special"] = bool(special_residual(cp.weyl, N) * scale <= tol.threshold(scale))
        indeterminate += indeterminate_flags(rdec)
    report.indeterminate = sorted(set(indeterminate))
    _write(report.to_json(), args.out)
    return 3 if report.indeterminate else 0


def _named_direction(entry, cp, params, name):
    aliases = {"ingoing": "K", "outgoing": "L", "k": "K", "l": "L"}
    name = aliases.get(name.lower(), name)
    lines = {}
    if entry.name == "schwarzschild":
        from .catalog import schwarzschild_null_lines

        lines = schwarzschild_null_lines(cp)
    elif entry.name == "myers-perry":
        from .catalog import mp_null_lines

        lines = mp_null_lines(cp, params)
    elif entry.name == "robinson-trautman":
        from .catalog import rt_null_lines

        lines = rt_null_lines(cp)
    return lines.get(name)


def _named_structure(entry, cp, params, name):
    from .chart import distribution_span
    from .frames import robinson_from_span

    dists = {}
    if entry.name == "kk-bubble":
        from .catalog import kk_structures

        dists = kk_structures(params)
    elif entry.name == "taub-nut":
        from .catalog import taub_nut_structures

        dists = taub_nut_structures(params)
    elif entry.name == "iwasawa":
        from .catalog import iwasawa_distributions

        dists = iwasawa_distributions()
    if name not in dists:
        return None
    chart = entry.build(params)
    span = distribution_span(chart, dists[name], cp.point)
    return robinson_from_span(cp.g, span)


def _default_direction(entry, cp, params):
    if entry.name == "schwarzschild":
        from .catalog import schwarzschild_null_lines

        return schwarzschild_null_lines(cp)["K"]
    if entry.name == "myers-perry":
        from .catalog import mp_null_lines

        return mp_null_lines(cp, params)["K"]
    if entry.name in ("pp-wave", "walker", "robinson-trautman"):
        k = np.zeros(cp.n)
        k[1] = 1.0
        return k
    # generic: first coordinate null direction from the orthonormal frame
    from .simclass import _orthonormal_basis

    basis = _orthonormal_basis(cp.g)
    return basis[0] + basis[1]


def cmd_verify_dims(args) -> int:
    lo, hi = (int(v) for v in args.n.split("..")) if ".." in args.n else (int(args.n), int(args.n))
    spaces = ["G", "F", "A", "C"] if args.space == "all" else [args.space]
    levels = ["sim", "rob"] if args.level == "all" else [args.level]
    rows = []
    ok = True
    unstable = False
    for n in range(lo, hi + 1):
        for space in spaces:
            for level in levels:
                for chk in all_dim_checks(space, n, level):
                    rows.append(
                        {
                            "n": n,
                            "level": level,
                            "module": str(chk.key),
                            "formula": chk.formula_dim,
                            "computed": chk.computed_dim,
                            "match": bool(chk.match),
                            "stable": bool(chk.stable),
                        }
                    )
                    ok = ok and chk.match
                    unstable = unstable or not chk.stable
    lines = ["| n | level | module | formula | computed | match |", "|---|-------|--------|---------|----------|-------|"]
    for r in rows:
        lines.append(
            f"| {r['n']} | {r['level']} | {r['module']} | {r['formula']} | {r['computed']} | {'yes' if r['match'] else 'NO'} |"
        )
    text = "\n".join(lines) + "\n"
    if args.json:
        text = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    if args.arrows:
        deltas = {}
        for n in range(lo, hi + 1):
            for space in spaces:
                for level in levels:
                    d = paper_arrow_delta(space, n, level)
                    if d["missing_from_paper"] or d["spurious_in_paper"]:
                        deltas[f"{space}/{level}/n={n}"] = d
        text += "\narrow-diagram deltas (computed vs published figures):\n"
        text += json.dumps(deltas, indent=2, sort_keys=True) + "\n"
    _write(text, args.out)
    if unstable:
        return 4
    return 0 if ok else 1


def cmd_regress(args) -> int:
    names = sorted(ENTRIES)
    if args.only:
        if args.only not in ENTRIES:
            print(f"unknown entry '{args.only}'", file=sys.stderr)
            return 2
        names = [args.only]
    jobs = []
    for name in names:
        jobs.append((name, None))
        if name == "robinson-trautman":
            jobs.append((name, {"screen": "spheres"}))

    def run(job):
        name, extra = job
        return (name, extra, run_expectations(ENTRIES[name], params=extra))

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    lines = ["# catalog regression", ""]
    failures = 0
    for name, extra, res in results:
        tag = name + ("" if not extra else f" {extra}")
        bad = [r for r in res if r.passed is False]
        skipped = [r for r in res if r.passed is None]
        failures += len(bad)
        lines.append(f"## {tag}: {len(res)} checks, {len(bad)} failed, {len(skipped)} skipped")
        for r in res:
            if r.passed is False or args.verbose:
                resid = "" if r.residual is None else f" residual={r.residual:.3e}"
                lines.append(f"- {r.status} {r.name}: {r.citation}{resid} {r.detail}")
        lines.append("")
    text = "\n".join(lines) + "\n"
    _write(text, args.out)
    return 0 if failures == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="robcls", description="curvature classification under null-line and Robinson stabilisers")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a catalog metric at a point")
    c.add_argument("--metric", required=True)
    c.add_argument("--params", default="")
    c.add_argument("--dim", type=int, default=None)
    c.add_argument("--point", required=True, help="comma-separated coordinates")
    c.add_argument("--k", default=None, help="comma-separated null direction (contravariant)")
    c.add_argument("--search", action="store_true", help="search the null sphere for the best-aligned direction")
    c.add_argument("--robinson", default=None, help="'standard' or 'random:SEED'")
    c.add_argument("--tol", type=float, default=1e-9)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify-dims", help="verify the module dimension tables by numerical rank")
    v.add_argument("--n", default="4..9")
    v.add_argument("--space", default="all", choices=["G", "F", "A", "C", "all"])
    v.add_argument("--level", default="all", choices=["sim", "rob", "all"])
    v.add_argument("--json", action="store_true")
    v.add_argument("--arrows", action="store_true", help="also report diagram-arrow deltas")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify_dims)

    r = sub.add_parser("regress", help="run the built-in catalog expectations")
    r.add_argument("--only", default=None)
    r.add_argument("--verbose", action="store_true")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_regress)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
