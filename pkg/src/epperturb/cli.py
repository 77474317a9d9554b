"""Command-line surface: one subcommand per pipeline, JSON or CSV reports.

Reports are deterministic for a fixed configuration.  JSON reports carry
{"schema_version": 1, "command", "inputs", "results"} with complex numbers
serialized as {"re", "im"}; grid commands (scan, pseudo) default to CSV
with one row per grid point.  Exit codes: 0 success, 1 numerical failure,
2 usage/config error.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import domain, hamiltonians, jordan, puiseux
from .errors import EpperturbError

SCHEMA_VERSION = 1
_GRID_COMMANDS = {"scan", "pseudo"}


class UsageError(Exception):
    """Configuration problem; reported on stderr with exit code 2."""


@dataclass
class RunConfig:
    command: str
    parameters: dict
    output_format: str = "json"
    output_path: str | None = None


def _floats(text):
    try:
        return tuple(float(v) for v in str(text).split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc


def _fold_negative_values(argv):
    """Join '--flag -1:1:-1:1' into '--flag=-1:1:-1:1' so argparse accepts it."""
    out, skip = [], False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok.startswith("--")
            and "=" not in tok
            and nxt is not None
            and nxt.startswith("-")
            and not nxt.startswith("--")
        ):
            out.append(f"{tok}={nxt}")
            skip = True
        else:
            out.append(tok)
    return out


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="epperturb",
        description="Exceptional-point perturbation toolkit for the benchmark "
        "family of PT-symmetric tridiagonal matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="json"):
        p.add_argument("--tol", type=float, default=1e-10, help="working tolerance")
        p.add_argument("--format", choices=("json", "csv"), default=fmt)
        p.add_argument("--out", default=None, help="output file (default stdout)")

    def coupling_opts(p):
        p.add_argument("--g", default=None, help="explicit couplings g1,..,gJ (outermost first)")
        p.add_argument("--a", type=float, default=None, help="innermost coupling override")
        p.add_argument("--b", type=float, default=None, help="next-to-innermost coupling override")
        p.add_argument("--t", type=float, default=None, help="path position in [0,1]")
        p.add_argument("--G", default=None, help="path weights G1,..,GJ")

    p = sub.add_parser("build", help="assemble a benchmark matrix")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", type=float, default=0.0)
    coupling_opts(p)
    common(p)

    p = sub.add_parser("spectrum", help="eigenvalues and reality flags")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", type=float, default=0.0)
    coupling_opts(p)
    common(p)

    p = sub.add_parser("path", help="couplings along the interpolation path")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--G", default=None)
    common(p)

    p = sub.add_parser("jordan", help="Jordan chain of the exceptional-point matrix")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", type=float, default=0.0)
    common(p)

    p = sub.add_parser("perturb", help="Jordan-frame perturbation and secular roots")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--order", choices=("leading", "exact"), default="exact")
    p.add_argument("--G", default=None)
    common(p)

    p = sub.add_parser("scan", help="classify a 1- or 2-axis parameter grid")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--axis", required=True, help="name:lo:hi:count (name: t, a, b, z, g1..gJ)")
    p.add_argument("--axis2", default=None, help="second axis name:lo:hi:count")
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--G", default=None)
    common(p, fmt="csv")

    p = sub.add_parser("boundary", help="bisect a ray for the stability boundary")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--ray", required=True, help="name:start:stop")
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--G", default=None)
    common(p)

    p = sub.add_parser("metric", help="metric candidate from left eigenvectors")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--kappa", default=None, help="positive weights kappa1,..,kappaN")
    coupling_opts(p)
    common(p)

    p = sub.add_parser("pseudo", help="pseudospectrum grid over a complex window")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--window", required=True, help="remin:remax:immin:immax")
    p.add_argument("--res", default="101", help="points per axis (n or nre:nim)")
    p.add_argument("--eps", default=None, help="level-set thresholds eps1,eps2,..")
    coupling_opts(p)
    common(p, fmt="csv")

    return parser


def parse_args(argv=None):
    """Parse argv into a RunConfig; argparse exits with code 2 on bad flags."""
    args = _build_parser().parse_args(_fold_negative_values(list(argv or sys.argv[1:])))
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in {"command", "format", "out"} and v is not None
    }
    for key in ("g", "G", "kappa", "eps"):
        if key in params and isinstance(params[key], str):
            params[key] = list(_floats(params[key]))
    return RunConfig(args.command, params, args.format, args.out)


def _validate(params):
    if params.get("N", 2) < 2:
        raise UsageError("N must be >= 2")
    if params.get("tol", 1.0) <= 0:
        raise UsageError("tol must be positive")


def _resolve_couplings(params, N):
    """Resolve --g / --a,--b / --t into a coupling vector; echo normalized inputs."""
    J = N // 2
    explicit = params.get("g") is not None
    overrides = params.get("a") is not None or params.get("b") is not None
    has_t = params.get("t") is not None
    if explicit and (overrides or has_t) or (overrides and has_t):
        raise UsageError("give couplings as --g, as --a/--b overrides, or as --t; not mixed")
    if explicit:
        g = tuple(float(v) for v in params["g"])
        if len(g) != J:
            raise UsageError(f"--g needs {J} values for N={N}")
        return g, {"g": list(g)}
    if overrides:
        g = list(hamiltonians.ep_couplings(N))
        if params.get("a") is not None:
            g[J - 1] = float(params["a"])
        if params.get("b") is not None:
            if J < 2:
                raise UsageError("--b requires N >= 4")
            g[J - 2] = float(params["b"])
        return tuple(g), {"g": list(g)}
    t = float(params.get("t", 0.0))
    G = params.get("G")
    pp = hamiltonians.PathParams(t, tuple(G) if G is not None else None)
    g = tuple(hamiltonians.path_couplings(N, pp))
    echo = {"t": t}
    if G is not None:
        echo["G"] = [float(v) for v in G]
    return g, echo


def _axis_triplet(text, parts, what):
    fields = str(text).split(":")
    if len(fields) != parts:
        raise UsageError(f"{what} must have {parts} colon-separated fields, got {text!r}")
    return fields


def _run_build(params):
    N, s, tol = params["N"], float(params.get("s", 0.0)), params["tol"]
    g, echo = _resolve_couplings(params, N)
    H = hamiltonians.build(hamiltonians.HamiltonianSpec(N, g, s))
    inputs = {"N": N, "s": s, "tol": tol, **echo}
    return inputs, {"couplings": list(g), "matrix": H}


def _run_spectrum(params):
    N, s, tol = params["N"], float(params.get("s", 0.0)), params["tol"]
    g, echo = _resolve_couplings(params, N)
    H = hamiltonians.build(hamiltonians.HamiltonianSpec(N, g, s))
    res = domain.spectrum(H, tol)
    inputs = {"N": N, "s": s, "tol": tol, **echo}
    return inputs, {
        "eigenvalues": res.eigenvalues,
        "all_real": res.all_real,
        "min_gap": res.min_gap,
        "reality_tol": res.reality_tol,
        "physical": domain.is_physical(H, tol),
    }


def _run_path(params):
    N, t, tol = params["N"], float(params.get("t", 0.0)), params["tol"]
    G = params.get("G")
    pp = hamiltonians.PathParams(t, tuple(G) if G is not None else None)
    inputs = {"N": N, "t": t, "tol": tol}
    if G is not None:
        inputs["G"] = [float(v) for v in G]
    return inputs, {
        "xi": hamiltonians.xi_values(N, pp),
        "couplings": hamiltonians.path_couplings(N, pp),
        "ep_couplings": hamiltonians.ep_couplings(N),
    }


def _run_jordan(params):
    N, s, tol = params["N"], float(params.get("s", 0.0)), params["tol"]
    H = hamiltonians.build(hamiltonians.HamiltonianSpec(N, tuple(hamiltonians.ep_couplings(N)), s))
    s_detected = float(np.trace(H).real / N)
    jf = jordan.jordan_chain(H, s_detected, N, tol)
    residual = float(np.abs(H @ jf.Q - jf.Q @ jf.S).max())
    inputs = {"N": N, "s": s, "tol": tol}
    return inputs, {"s_detected": s_detected, "K": N, "Q": jf.Q, "S": jf.S, "residual": residual}


def _run_perturb(params):
    N, t, tol = params["N"], float(params["t"]), params["tol"]
    order = params.get("order", "exact")
    if not 0.0 < t < 1.0:
        raise UsageError("perturb requires 0 < t < 1")
    G = params.get("G")
    pp = hamiltonians.PathParams(t, tuple(G) if G is not None else None)
    H = hamiltonians.build_on_path(N, pp)
    if N <= 5:
        Q = jordan.fixture_Q(N)
        jf = jordan.JordanForm(0.0, N, Q, jordan.jordan_block(0.0, N))
    else:
        ep = hamiltonians.build(hamiltonians.HamiltonianSpec(N, tuple(hamiltonians.ep_couplings(N))))
        jf = jordan.jordan_chain(ep, 0.0, N, tol)
    W = jordan.extract_perturbation(H, jf, tol)
    problem = puiseux.PerturbedJordanProblem(N, W, lam=t)
    inputs = {"N": N, "t": t, "order": order, "tol": tol}
    if G is not None:
        inputs["G"] = [float(v) for v in G]
    results = {
        "W": W,
        "W_over_t": W / t,
        "secular_polynomial": puiseux.secular_polynomial(problem),
    }
    if order == "leading":
        results["roots"] = [
            {"value": r.value, "ramification": r.ramification}
            for r in puiseux.leading_order_roots(problem, tol)
        ]
    else:
        data = puiseux.analyze(problem, tol)
        results["roots"] = data.roots
        results["admissible"] = data.admissible
        results["symmetry_breaking"] = data.symmetry_breaking
    return inputs, results


def _run_scan(params):
    N, s, tol = params["N"], float(params.get("s", 0.0)), params["tol"]
    axes = []
    for key in ("axis", "axis2"):
        if params.get(key) is not None:
            name, lo, hi, count = _axis_triplet(params[key], 4, f"--{key}")
            if int(count) < 2:
                raise UsageError("axis count must be >= 2")
            axes.append((name, float(lo), float(hi), int(count)))
    G = params.get("G")
    result = domain.scan(N, axes, tol, G=tuple(G) if G is not None else None, s=s)
    inputs = {"N": N, "s": s, "tol": tol, "axis": params["axis"]}
    if params.get("axis2") is not None:
        inputs["axis2"] = params["axis2"]
    if G is not None:
        inputs["G"] = [float(v) for v in G]
    return inputs, {
        "axes": [{"name": n, "values": vals} for n, vals in result.axes],
        "labels": result.labels,
        "min_gap": result.min_gap,
        "max_imag": result.max_imag,
    }


def _run_boundary(params):
    N, s, tol = params["N"], float(params.get("s", 0.0)), params["tol"]
    name, lo, hi = _axis_triplet(params["ray"], 3, "--ray")
    G = params.get("G")
    value = domain.boundary_locate(
        N, (name, float(lo), float(hi)), tol, G=tuple(G) if G is not None else None, s=s
    )
    inputs = {"N": N, "s": s, "tol": tol, "ray": params["ray"]}
    if G is not None:
        inputs["G"] = [float(v) for v in G]
    return inputs, {"axis": name, "boundary": value, "bracket": tol}


def _run_metric(params):
    N, s, tol = params["N"], float(params.get("s", 0.0)), params["tol"]
    g, echo = _resolve_couplings(params, N)
    kappa = params.get("kappa")
    H = hamiltonians.build(hamiltonians.HamiltonianSpec(N, g, s))
    res = domain.metric(H, tol, weights=np.asarray(kappa) if kappa is not None else None)
    inputs = {"N": N, "s": s, "tol": tol, **echo}
    if kappa is not None:
        inputs["kappa"] = [float(v) for v in kappa]
    return inputs, {
        "theta": res.theta,
        "intertwine_residual": res.intertwine_residual,
        "min_eigenvalue": res.min_eigenvalue,
        "condition": res.condition,
    }


def _run_pseudo(params):
    N, s, tol = params["N"], float(params.get("s", 0.0)), params["tol"]
    g, echo = _resolve_couplings(params, N)
    window = tuple(float(v) for v in _axis_triplet(params["window"], 4, "--window"))
    res_fields = str(params.get("res", "101")).split(":")
    resolution = tuple(int(v) for v in res_fields) if len(res_fields) == 2 else int(res_fields[0])
    if min(np.atleast_1d(resolution)) < 2:
        raise UsageError("--res must be >= 2 per axis")
    eps = [float(v) for v in params.get("eps", [])]
    H = hamiltonians.build(hamiltonians.HamiltonianSpec(N, g, s))
    grid = domain.pseudospectrum(H, window, resolution, levels=eps)
    inputs = {
        "N": N,
        "s": s,
        "tol": tol,
        "window": params["window"],
        "res": str(params.get("res", "101")),
        **echo,
    }
    if eps:
        inputs["eps"] = eps
    return inputs, {
        "re": grid.re,
        "im": grid.im,
        "smin": grid.smin,
        "levels": {f"{k:g}": v for k, v in grid.levels.items()},
    }


_RUNNERS = {
    "build": _run_build,
    "spectrum": _run_spectrum,
    "path": _run_path,
    "jordan": _run_jordan,
    "perturb": _run_perturb,
    "scan": _run_scan,
    "boundary": _run_boundary,
    "metric": _run_metric,
    "pseudo": _run_pseudo,
}


def run(config):
    """Execute a RunConfig and return the report dictionary."""
    if config.command not in _RUNNERS:
        raise UsageError(f"unknown command {config.command!r}")
    params = dict(config.parameters)
    params.setdefault("tol", 1e-10)
    params["tol"] = float(params["tol"])
    _validate(params)
    inputs, results = _RUNNERS[config.command](params)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": config.command,
        "inputs": inputs,
        "results": results,
    }


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonify(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(report):
    return json.dumps(_jsonify(report), indent=2, sort_keys=True)


def _csv_scan(results, out):
    writer = csv.writer(out)
    names = [ax["name"] for ax in results["axes"]]
    writer.writerow(names + ["label", "min_gap", "max_imag"])
    grids = [np.asarray(ax["values"]) for ax in results["axes"]]
    labels = np.asarray(results["labels"])
    gaps = np.asarray(results["min_gap"])
    imags = np.asarray(results["max_imag"])
    if len(grids) == 1:
        for i, v in enumerate(grids[0]):
            writer.writerow([repr(float(v)), labels[i], repr(float(gaps[i])), repr(float(imags[i]))])
    else:
        for i, v0 in enumerate(grids[0]):
            for j, v1 in enumerate(grids[1]):
                writer.writerow(
                    [
                        repr(float(v0)),
                        repr(float(v1)),
                        labels[i, j],
                        repr(float(gaps[i, j])),
                        repr(float(imags[i, j])),
                    ]
                )


def _csv_pseudo(results, out):
    writer = csv.writer(out)
    levels = results["levels"]
    keys = list(levels)
    writer.writerow(["re", "im", "smin"] + [f"in_eps_{k}" for k in keys])
    re = np.asarray(results["re"])
    im = np.asarray(results["im"])
    smin = np.asarray(results["smin"])
    for i, y in enumerate(im):
        for j, x in enumerate(re):
            row = [repr(float(x)), repr(float(y)), repr(float(smin[i, j]))]
            row += [str(bool(np.asarray(levels[k])[i, j])).lower() for k in keys]
            writer.writerow(row)


def render_csv(report):
    if report["command"] not in _GRID_COMMANDS:
        raise UsageError("csv output is only available for scan and pseudo")
    out = io.StringIO()
    if report["command"] == "scan":
        _csv_scan(report["results"], out)
    else:
        _csv_pseudo(report["results"], out)
    return out.getvalue()


def render(report, fmt):
    return render_csv(report) if fmt == "csv" else render_json(report)


def main(argv=None):
    try:
        config = parse_args(argv)
        report = run(config)
        text = render(report, config.output_format)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except EpperturbError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if config.output_path:
        with open(config.output_path, "w") as fh:
            fh.write(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
