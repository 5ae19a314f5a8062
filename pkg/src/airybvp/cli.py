"""Command-line front end: structured CSV/JSON output with reproducible
run manifests.

Every run writes its data files plus ``<command>_manifest.json`` in the
output directory, recording the fully resolved configuration, library
version and tolerances.  ``airybvp rerun <manifest>`` replays a manifest
and produces byte-identical files.

Times are plain decimals or exact rational tokens ``p/q/pi2`` meaning
p/(pi^2 q); the token is kept verbatim so rational times never suffer
decimal round-off.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings

import numpy as np

from . import __version__, beta0, evolution, piecewise, revival, spectral
from .exceptions import AiryBVPError, ConfigError
from .revival import RationalTime
from .rootfinding import Region, find_zeros

MANIFEST_SCHEMA = 1
CSV_SCHEMA = 1
COMMANDS = ("eigs", "roots", "solve", "revival", "verify", "beta0", "figures")

TOLERANCES = {
    "ray_residual_tol": spectral.RAY_RESIDUAL_TOL,
    "newton_basin": spectral.NEWTON_BASIN,
    "degeneracy_floor": spectral.DEGENERACY_FLOOR,
    "quadrature_panels": evolution.DEFAULT_PANELS,
    "quadrature_nodes": evolution.DEFAULT_NODES,
    "term_skip": evolution.TERM_SKIP,
    "cusp_radius": revival.CUSP_RADIUS,
    "render_clip": revival.CLIP_LIMIT,
}


def _fmt(v):
    if isinstance(v, complex):
        raise TypeError("complex values must be split into columns")
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_json(path, payload):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def parse_time_token(token):
    """A decimal time, or 'p/q/pi2' for p/(pi^2 q)."""
    token = str(token).strip()
    if token.endswith("/pi2"):
        parts = token.split("/")
        if len(parts) != 3:
            raise ConfigError(f"bad rational time token {token!r}; expected p/q/pi2")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ConfigError(f"bad rational time token {token!r}: {exc}") from None
        return RationalTime(p, q)
    try:
        t = float(token)
    except ValueError:
        raise ConfigError(f"cannot parse time {token!r}") from None
    if t < 0:
        raise ConfigError(f"time must be nonnegative, got {t}")
    return t


def parse_times(text):
    return [parse_time_token(tok) for tok in str(text).split(",") if tok.strip()]


def time_value(t):
    return t.value if isinstance(t, RationalTime) else float(t)


def parse_region(text, min_diameter=1e-3):
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 4:
        raise ConfigError("region must be re_min,re_max,im_min,im_max")
    try:
        a, b, c, d = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad region value: {exc}") from None
    if not (a < b and c < d):
        raise ConfigError("region must satisfy re_min < re_max and im_min < im_max")
    return Region.rectangle(a, b, c, d, min_diameter=min_diameter)


def load_datum(name_or_path):
    try:
        return piecewise.named_datum(name_or_path)
    except KeyError:
        pass
    if not os.path.exists(name_or_path):
        raise ConfigError(
            f"datum {name_or_path!r} is neither a built-in name nor an existing file"
        )
    try:
        return piecewise.load_datum(name_or_path)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise ConfigError(f"bad datum file {name_or_path!r}: {exc}") from None


def load_config(path):
    """key = value text file mirroring the flags; '#' starts a comment."""
    if not os.path.exists(path):
        raise ConfigError(f"FileNotFound: config file {path!r} does not exist")
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def validate(config):
    """Per-field diagnostics for a resolved configuration dict."""
    diags = []
    beta = config.get("beta")
    if beta is not None:
        try:
            b = float(beta)
        except (TypeError, ValueError):
            diags.append(f"beta: cannot parse {beta!r} as a real number")
        else:
            if not 0.0 <= b <= 1.0:
                diags.append(
                    f"beta: {b} outside [0, 1]; the problem is only well-posed "
                    "for coupling in this range (beta > 1 admits unbounded growth)"
                )
    for key in ("n_max", "grid", "modes", "series_n_max"):
        if key in config and config[key] is not None:
            try:
                v = int(config[key])
            except (TypeError, ValueError):
                diags.append(f"{key}: cannot parse {config[key]!r} as an integer")
                continue
            floor = 2 if key == "grid" else 1
            if v < floor:
                diags.append(f"{key}: must be at least {floor}, got {v}")
    for key in ("p", "q"):
        if key in config and config[key] is not None:
            try:
                v = int(config[key])
            except (TypeError, ValueError):
                diags.append(f"{key}: cannot parse {config[key]!r} as an integer")
                continue
            if v < 1:
                diags.append(f"{key}: must be a positive integer, got {v}")
    if config.get("times"):
        try:
            parse_times(config["times"])
        except ConfigError as exc:
            diags.append(f"times: {exc}")
    if config.get("region"):
        try:
            parse_region(config["region"])
        except ConfigError as exc:
            diags.append(f"region: {exc}")
    return diags


def _manifest(command, config, outputs):
    return {
        "schema_version": MANIFEST_SCHEMA,
        "csv_schema_version": CSV_SCHEMA,
        "command": command,
        "library_version": __version__,
        "config": config,
        "tolerances": TOLERANCES,
        "outputs": outputs,
    }


def _emit(out_dir, command, config, outputs):
    path = os.path.join(out_dir, f"{command}_manifest.json")
    write_json(path, _manifest(command, config, outputs))
    return path


# ---------------------------------------------------------------------------
# commands


def run_eigs(config, out_dir):
    beta = float(config["beta"])
    n_max = int(config["n_max"])
    region = parse_region(config["region"]) if config.get("region") else None
    pairs = spectral.enumerate_spectrum(beta, n_max, region)
    rows = []
    for p in pairs:
        norm = p.normalization
        rows.append(
            (
                p.index,
                p.k.real,
                p.k.imag,
                p.eigenvalue.real,
                p.eigenvalue.imag,
                p.residual,
                norm.real,
                norm.imag,
            )
        )
    name = "eigs.csv"
    write_csv(
        os.path.join(out_dir, name),
        ["n", "re_k", "im_k", "re_k3", "im_k3", "residual", "re_norm", "im_norm"],
        rows,
    )
    return [name]


def run_roots(config, out_dir):
    beta = float(config["beta"])
    region = parse_region(config["region"], float(config.get("min_diameter", 1e-3)))
    tol = float(config.get("residual_tol", 1e-10))
    f = lambda k: spectral.characteristic_scaled(beta, k)[0]
    fp = lambda k: spectral.characteristic_scaled(beta, k)[1]
    report = find_zeros(f, fp, region, residual_tol=tol)
    rows = [
        (r.real, r.imag, res, flag, wind)
        for r, res, flag, wind in zip(
            report.roots, report.residuals, report.multiplicity_flags, report.windings
        )
    ]
    name = "roots.csv"
    write_csv(
        os.path.join(out_dir, name),
        ["re_root", "im_root", "residual", "multiplicity_flag", "winding"],
        rows,
    )
    return [name]


def run_solve(config, out_dir):
    beta = float(config["beta"])
    u0 = load_datum(config["datum"])
    n_max = int(config["n_max"]) if config.get("n_max") else evolution.default_n_max(beta)
    times = parse_times(config["times"])
    grid = int(config.get("grid", 257))
    series = evolution.build_series(beta, u0, n_max=n_max)
    xs = np.linspace(0.0, 1.0, grid)
    tvals = [time_value(t) for t in times]
    u = series.evaluate_grid(xs, tvals)
    rows = []
    for i, t in enumerate(tvals):
        for j, x in enumerate(xs):
            rows.append((x, t, u[i, j].real, u[i, j].imag))
    name = "solve.csv"
    write_csv(os.path.join(out_dir, name), ["x", "t", "re_u", "im_u"], rows)
    return [name]


def run_verify(config, out_dir):
    beta = float(config["beta"])
    u0 = load_datum(config["datum"])
    n_max = int(config["n_max"]) if config.get("n_max") else evolution.default_n_max(beta)
    times = [time_value(t) for t in parse_times(config["times"])]
    series = evolution.build_series(beta, u0, n_max=n_max)
    report = evolution.energy_report(series, times)
    if beta < 1.0:
        checks = {
            "norm_nonincreasing": report["monotone_nonincreasing"],
            "energy_identity_2pct": report["identity_max_residual"] < 0.02,
            "flux_bound": report["flux_bound_ok"],
            "weighted_bound": report["weighted_bound_ok"],
        }
    else:
        checks = {
            "norm_nonincreasing": report["monotone_nonincreasing"],
            "conservation_1pct": report["relative_variation"] < 0.01,
        }
    report["checks"] = checks
    report["all_passed"] = all(checks.values())
    name = "verify.json"
    write_json(os.path.join(out_dir, name), report)
    return [name]


def run_revival(config, out_dir):
    rt = RationalTime(int(config["p"]), int(config["q"]))
    u0 = load_datum(config["datum"])
    modes = int(config.get("modes", 4096))
    grid = int(config.get("grid", 512))
    series_n_max = int(config.get("series_n_max", 614))
    profile = revival.g_coefficients(u0, modes)
    jumps = [y for y, _ in u0.jumps()]
    xs = np.linspace(0.0, 1.0, grid, endpoint=False)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", revival.CuspProximityWarning)
        ur_series = revival.revival_series(profile, rt, xs)
        ur_super = revival.revival_superposition(profile, rt, xs, jumps=jumps)
    series = evolution.build_series(1.0, u0, n_max=series_n_max)
    full = np.real(series.evaluate_grid(xs, [rt.value])[0])
    uc = full - ur_series
    ur_series_c, clip1 = revival.clip_for_rendering(ur_series)
    ur_super_c, clip2 = revival.clip_for_rendering(ur_super)
    rows = [
        (x, a, b, c, bool(f1 or f2))
        for x, a, b, c, f1, f2 in zip(xs, ur_series_c, ur_super_c, uc, clip1, clip2)
    ]
    name = "revival.csv"
    write_csv(
        os.path.join(out_dir, name),
        ["x", "u_r_series", "u_r_superposition", "u_c_estimate", "clipped"],
        rows,
    )
    table = revival.gauss_sums(rt.p, rt.q)
    sidecar = {
        "rational_time": {"p": rt.p, "q": rt.q, "value": rt.value},
        "gauss_sums": [{"k": k, "re": v.real, "im": v.imag} for k, v in enumerate(table.values)],
        "predicted_singularities": [
            {"x": s.x, "kind": s.kind, "source_jump": s.source_jump, "copy_index": s.copy_index}
            for s in revival.predict_singularities(jumps, rt)
        ],
    }
    side = "revival_singularities.json"
    write_json(os.path.join(out_dir, side), sidecar)
    return [name, side]


def run_beta0(config, out_dir):
    u0 = load_datum(config["datum"])
    n_max = int(config.get("n_max", 50))
    times = [time_value(t) for t in parse_times(config.get("times", "0.01,0.1"))]
    grid = int(config.get("grid", 129))
    rep = beta0.build_residue_expansion(u0, n_max)
    rows = [
        (n + 1, z.real, z.imag, beta0.ray_seed(n + 1).imag, w.real, w.imag)
        for n, (z, w) in enumerate(zip(rep.zeros, rep.weights))
    ]
    zname = "beta0_ray_zeros.csv"
    write_csv(
        os.path.join(out_dir, zname),
        ["n", "re_k", "im_k", "im_seed", "re_weight", "im_weight"],
        rows,
    )
    xs = np.linspace(0.0, 1.0, grid)
    rows = []
    for t in times:
        if t <= 0:
            continue
        for x in xs:
            v, last = beta0.residue_series_eval(rep, float(x), t)
            rows.append((x, t, v.real, v.imag, last))
    sname = "beta0_residue_series.csv"
    write_csv(
        os.path.join(out_dir, sname),
        ["x", "t", "re_value", "im_value", "last_term"],
        rows,
    )
    return [zname, sname]


def run_figures(config, out_dir):
    which = str(config.get("which", "fig1"))
    if which == "fig1":
        beta = float(config.get("beta", 1e-6))
        n_max = int(config.get("n_max", 30))
        region = (
            parse_region(config["region"])
            if config.get("region")
            else Region.rectangle(-12.0, 12.0, -30.0, 30.0, min_diameter=1e-3)
        )
        pairs = spectral.enumerate_spectrum(beta, n_max, region)
        logb = math.log(beta)
        rows = []
        for p in pairs:
            ray = abs(p.index) <= n_max
            if ray:
                kappa = math.pi * (2 * p.index - math.copysign(1.0, p.index) / 3.0)
                asy = complex(kappa, logb)
            else:
                asy = complex(0.0, abs(p.k))
            for j, rot in enumerate((1.0, spectral.ALPHA, spectral.ALPHA ** 2)):
                z = rot * p.k
                a = rot * asy
                rows.append(
                    (p.index, j, z.real, z.imag, a.real, a.imag, "ray" if ray else "segment")
                )
        name = "figure1_zeros.csv"
        with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="\n") as fh:
            fh.write("n,rotation,re_k,im_k,re_asymptote,im_asymptote,family\n")
            for r in rows:
                fh.write(
                    ",".join([str(r[0]), str(r[1])] + [_fmt(v) for v in r[2:6]] + [r[6]]) + "\n"
                )
        return [name]
    if which in ("fig2", "fig3"):
        beta = 0.01 if which == "fig2" else 0.9
        cfg = dict(config)
        cfg.setdefault("beta", beta)
        cfg.setdefault("datum", "indicator-third")
        cfg.setdefault("times", "0,0.001,0.01,0.05,0.1")
        cfg.setdefault("n_max", 120)
        (out,) = run_solve(cfg, out_dir)
        new = f"figure_{which}_smoothing.csv"
        os.replace(os.path.join(out_dir, out), os.path.join(out_dir, new))
        return [new]
    if which == "fig4":
        u0 = load_datum(config.get("datum", "indicator-third"))
        grid = int(config.get("grid", 1024))
        series = evolution.build_series(1.0, u0, n_max=int(config.get("n_max", 614)))
        xs = np.linspace(0.0, 1.0, grid)
        t_rat = RationalTime(1, 1).value
        u_rat = np.real(series.evaluate_grid(xs, [t_rat])[0])
        u_frac = np.real(series.evaluate_grid(xs, [t_rat + 0.001])[0])
        name = "figure4_revival_vs_fractal.csv"
        write_csv(
            os.path.join(out_dir, name),
            ["x", "u_rational_time", "u_perturbed_time"],
            list(zip(xs, u_rat, u_frac)),
        )
        return [name]
    raise ConfigError(f"unknown figure {which!r}; choose fig1..fig4")


RUNNERS = {
    "eigs": run_eigs,
    "roots": run_roots,
    "solve": run_solve,
    "revival": run_revival,
    "verify": run_verify,
    "beta0": run_beta0,
    "figures": run_figures,
}

REQUIRED = {
    "eigs": ("beta", "n_max"),
    "roots": ("beta", "region"),
    "solve": ("beta", "datum", "times"),
    "revival": ("p", "q", "datum"),
    "verify": ("beta", "datum", "times"),
    "beta0": ("datum",),
    "figures": ("which",),
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="airybvp",
        description="Dirichlet-type Airy equation: spectra, series solutions, "
        "energy checks, rational-time revivals.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")

    def common(sp):
        sp.add_argument("--output-dir", default=None, help="default $AIRYBVP_OUTDIR or '.'")
        sp.add_argument("--config", default=None, help="key = value file; flags override")

    sp = sub.add_parser("eigs", help="eigenvalue table as CSV")
    common(sp)
    sp.add_argument("--beta", default=None)
    sp.add_argument("--n-max", default=None)
    sp.add_argument("--region", default=None, help="near-origin override re0,re1,im0,im1")

    sp = sub.add_parser("roots", help="zeros of the characteristic function in a region")
    common(sp)
    sp.add_argument("--beta", default=None)
    sp.add_argument(
        "--region",
        default=None,
        help="re0,re1,im0,im1; use --region=-a,b,-c,d for negative bounds",
    )
    sp.add_argument("--residual-tol", default=None, help="on the rescaled function")
    sp.add_argument("--min-diameter", default=None)

    sp = sub.add_parser("solve", help="series solution on a space-time grid")
    common(sp)
    sp.add_argument("--beta", default=None)
    sp.add_argument("--datum", default=None)
    sp.add_argument("--n-max", default=None)
    sp.add_argument("--times", default=None, help="comma list; decimals or p/q/pi2")
    sp.add_argument("--grid", default=None)

    sp = sub.add_parser("revival", help="rational-time revival profiles")
    common(sp)
    sp.add_argument("--p", default=None)
    sp.add_argument("--q", default=None)
    sp.add_argument("--datum", default=None)
    sp.add_argument("--modes", default=None)
    sp.add_argument("--grid", default=None)
    sp.add_argument("--series-n-max", default=None)

    sp = sub.add_parser("verify", help="energy estimate checks as JSON")
    common(sp)
    sp.add_argument("--beta", default=None)
    sp.add_argument("--datum", default=None)
    sp.add_argument("--n-max", default=None)
    sp.add_argument("--times", default=None)

    sp = sub.add_parser("beta0", help="uncoupled-case ray zeros and residue series")
    common(sp)
    sp.add_argument("--datum", default=None)
    sp.add_argument("--n-max", default=None)
    sp.add_argument("--times", default=None)
    sp.add_argument("--grid", default=None)

    sp = sub.add_parser("figures", help="data files reproducing the survey figures")
    common(sp)
    sp.add_argument("--which", default=None, help="fig1|fig2|fig3|fig4")
    sp.add_argument("--beta", default=None)
    sp.add_argument("--n-max", default=None)
    sp.add_argument("--region", default=None)
    sp.add_argument("--datum", default=None)
    sp.add_argument("--grid", default=None)

    sp = sub.add_parser("rerun", help="replay a manifest byte-for-byte")
    sp.add_argument("manifest")
    sp.add_argument("--output-dir", default=None)
    return parser


def _resolve_config(command, args):
    config = {}
    if getattr(args, "config", None):
        config.update(load_config(args.config))
    for key, value in vars(args).items():
        if key in ("command", "config", "output_dir", "manifest") or value is None:
            continue
        config[key] = value
    missing = [k for k in REQUIRED[command] if config.get(k) in (None, "")]
    if missing:
        raise ConfigError(f"{command}: missing required option(s): {', '.join(missing)}")
    diags = validate(config)
    if diags:
        raise ConfigError("; ".join(diags))
    # normalize scalars so manifests replay identically
    for key in ("beta", "residual_tol", "min_diameter"):
        if config.get(key) is not None:
            config[key] = float(config[key])
    for key in ("n_max", "grid", "modes", "series_n_max", "p", "q"):
        if config.get(key) is not None:
            config[key] = int(config[key])
    return config


def _run(command, config, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    outputs = RUNNERS[command](config, out_dir)
    _emit(out_dir, command, config, outputs)
    return outputs


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    out_dir = args.output_dir or os.environ.get("AIRYBVP_OUTDIR", ".")
    try:
        if args.command == "rerun":
            if not os.path.exists(args.manifest):
                raise ConfigError(f"FileNotFound: manifest {args.manifest!r}")
            with open(args.manifest, "r", encoding="utf-8") as fh:
                manifest = json.load(fh)
            command = manifest.get("command")
            if command not in RUNNERS:
                raise ConfigError(f"manifest names unknown command {command!r}")
            if manifest.get("schema_version") != MANIFEST_SCHEMA:
                raise ConfigError("manifest schema version mismatch")
            outputs = _run(command, manifest["config"], out_dir)
        else:
            config = _resolve_config(args.command, args)
            outputs = _run(args.command, config, out_dir)
    except ConfigError as exc:
        print(f"ERROR CONFIG: {exc}", file=sys.stderr)
        return 2
    except (AiryBVPError, RuntimeError, ValueError, OverflowError) as exc:
        print(f"ERROR NUMERIC: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    for name in outputs:
        print(os.path.join(out_dir, name))
    return 0


if __name__ == "__main__":
    sys.exit(main())
