"""Command-line front end.

Every subcommand prints one RunRecord as JSON (default) or CSV. Exit codes:
0 on success, 2 on usage errors, 1 when the computation itself fails.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .appendix import (
    construct_decomposition,
    contradiction_table,
    diagonal_condition_residual,
    verify_expectation_equality,
)
from .ensemble import (
    EXACT_MAX_N,
    decode_message,
    decode_outcomes,
    ensemble_stats,
    error_prob_exact,
    error_prob_gaussian,
    sample_magnetizations,
    sampler_kind,
    summarize_samples,
    tie_prob_exact,
)
from .errors import NmrSdcError
from .hardware import load_params, min_molecules, noise_amplitude, signal_amplitude
from .protocol import Message, ThermalConfig, magnetization_expectations, run_protocol
from .witness import negativity_check, success_probability, witness_F, witness_report

SCHEMA_VERSION = 1


@dataclass
class RunRecord:
    command: str
    params: dict
    seed: object
    outputs: dict
    version: str = __version__
    schema_version: int = SCHEMA_VERSION
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_dict(self, timestamp=True):
        d = asdict(self)
        if not timestamp:
            d.pop("timestamp")
        return d

    def to_json(self, timestamp=True):
        return json.dumps(self.to_dict(timestamp), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))


def _plain(obj):
    """Convert numpy values and matrices into JSON-ready Python objects."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": _plain(obj.real.tolist()), "im": _plain(obj.imag.tolist())}
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        # clean negative zero so output does not depend on rounding direction
        return x + 0.0
    return obj


def _message_out(m):
    return None if m is None else {"z": m.z, "x": m.x}


def cmd_protocol(args):
    cfg = ThermalConfig(args.eps_i, args.eps_s)
    trace = run_protocol(cfg, Message.of(args.z, args.x))
    zI, zS = magnetization_expectations(trace.rho3)
    decoded = decode_message((round(zI, 12), round(zS, 12)))
    outputs = {
        "rho0": trace.rho0,
        "rho1": trace.rho1,
        "rho2": trace.rho2,
        "rho3": trace.rho3,
        "p_I": trace.p_I,
        "q_I": trace.q_I,
        "p_S": trace.p_S,
        "q_S": trace.q_S,
        "expectation_ZI": zI,
        "expectation_ZS": zS,
        "decoded": _message_out(decoded),
    }
    params = {"eps_I": args.eps_i, "eps_S": args.eps_s, "z": args.z, "x": args.x}
    return RunRecord("protocol", params, None, _plain(outputs))


def cmd_ensemble(args):
    m = Message.of(args.z, args.x)
    n = args.n
    stats = ensemble_stats(n, args.eps_i, args.eps_s, m)
    outputs = {"stats": asdict(stats)}

    eps = abs(args.eps_i)
    if 0 < eps < 1:
        g = error_prob_gaussian(n, eps)
        outputs["log10_Pe_gaussian"] = g.log10_p
        outputs["gaussian_degenerate"] = g.degenerate
        outputs["Pe_below_1e-100"] = g.log10_p < -100
    if n <= EXACT_MAX_N and eps < 1:
        outputs["log10_Pe_exact"] = error_prob_exact(n, eps).log10_p
        outputs["log10_P_tie_exact"] = tie_prob_exact(n, eps).log10_p

    if args.shots > 0:
        samples = sample_magnetizations(n, args.eps_i, args.eps_s, m, args.seed, args.shots, args.workers)
        summary = summarize_samples(samples)
        counts = decode_outcomes(samples, m)
        rate = counts["wrong"] / args.shots
        mc = {
            "sampler": sampler_kind(n),
            "shots": args.shots,
            "mean": summary["mean"],
            "var": summary["var"],
            "mean_se": summary["mean_se"],
            "var_se": summary["var_se"],
            "decode": counts,
            "decode_success_rate": counts["correct"] / args.shots,
            "decode_error_rate": rate,
            "decode_error_rate_se": math.sqrt(max(rate * (1 - rate), 0.0) / args.shots),
        }
        if args.shots <= 10:
            mc["samples"] = samples
            mc["decoded"] = [_message_out(decode_message(s)) for s in samples]
        outputs["monte_carlo"] = mc

    params = {"n": n, "eps_I": args.eps_i, "eps_S": args.eps_s, "z": args.z, "x": args.x,
              "shots": args.shots}
    return RunRecord("ensemble", params, args.seed, _plain(outputs))


def cmd_witness(args):
    cfg = ThermalConfig(args.eps_i, args.eps_s)
    report = witness_report(cfg, Message.of(args.z, args.x))
    params = {"eps_I": args.eps_i, "eps_S": args.eps_s, "z": args.z, "x": args.x}
    return RunRecord("witness", params, None, _plain(asdict(report)))


def sweep_grid(resolution, m=Message(0, 0)):
    """F, success probability and minimum PT eigenvalue on a square polarization grid."""
    eps = np.linspace(0.0, 1.0, resolution)
    f = np.empty((resolution, resolution))
    ps = np.empty_like(f)
    rho2 = np.empty((resolution, resolution, 4, 4), dtype=complex)
    for i, e_i in enumerate(eps):
        for j, e_s in enumerate(eps):
            cfg = ThermalConfig(float(e_i), float(e_s))
            trace = run_protocol(cfg, m)
            f[i, j] = witness_F(*magnetization_expectations(trace.rho3))
            ps[i, j] = success_probability(cfg)
            rho2[i, j] = trace.rho2
    min_pt = negativity_check(rho2)
    return eps, f, ps, min_pt


def f_contour(eps, f):
    """Points where F crosses zero along each row of constant eps_I (linear interpolation)."""
    points = []
    for i, e_i in enumerate(eps):
        row = f[i]
        for j in range(len(eps) - 1):
            a, b = row[j], row[j + 1]
            if a == 0.0:
                points.append((float(e_i), float(eps[j])))
            elif a * b < 0:
                t = a / (a - b)
                points.append((float(e_i), float(eps[j] + t * (eps[j + 1] - eps[j]))))
    return points


def cmd_witness_sweep(args):
    m = Message.of(args.z, args.x)
    eps, f, ps, min_pt = sweep_grid(args.resolution, m)
    grid = []
    r = args.resolution
    for i in range(r):
        for j in range(r):
            boundary = any(
                0 <= i2 < r and 0 <= j2 < r and (f[i, j] < 0) != (f[i2, j2] < 0)
                for i2, j2 in ((i + 1, j), (i, j + 1))
            )
            grid.append({
                "eps_I": eps[i],
                "eps_S": eps[j],
                "F": f[i, j],
                "success_prob": ps[i, j],
                "min_pt_eigenvalue": min_pt[i, j],
                "entangled": bool(f[i, j] < 0),
                "boundary": boundary,
            })
    outputs = {
        "grid": grid,
        "contour": [{"eps_I": a, "eps_S": b} for a, b in f_contour(eps, f)],
        "max_abs_F_minus_min_pt": float(np.max(np.abs(f - min_pt))),
    }
    params = {"resolution": r, "z": m.z, "x": m.x}
    return RunRecord("witness-sweep", params, None, _plain(outputs))


def cmd_appendix(args):
    m = Message.of(args.z, args.x)
    d = construct_decomposition(m)
    table = contradiction_table()
    rows = []
    for (sa, sb), res in table.items():
        rows.append({
            "sign_a": sa,
            "sign_b": sb,
            "residuals": {f"{k.z}{k.x}": v for k, v in res.items()},
            "satisfied": [f"{k.z}{k.x}" for k, v in res.items() if v <= 1e-10],
        })
    outputs = {
        "a": d.a,
        "b": d.b,
        "c": d.c,
        "alpha": d.alpha,
        "beta": d.beta,
        "U": d.U,
        "V": d.V,
        "diagonal_residual": diagonal_condition_residual(d, m),
        "max_expectation_deviation": verify_expectation_equality(d, m, args.trials, args.seed),
        "contradiction_table": rows,
    }
    params = {"z": m.z, "x": m.x, "trials": args.trials}
    return RunRecord("appendix", params, args.seed, _plain(outputs))


def cmd_hardware(args):
    hp = load_params(args.param_file)
    overrides = {}
    if args.coil_volume_cm3 is not None:
        overrides["V_coil"] = args.coil_volume_cm3 * 1e-6
    if args.q is not None:
        overrides["Q"] = args.q
    if overrides:
        hp = replace(hp, **overrides)
    outputs = {
        "hardware": asdict(hp),
        "signal_per_molecule_V": signal_amplitude(hp, 1, args.eps),
        "noise_V": noise_amplitude(hp),
        "n_min": min_molecules(hp, args.eps, args.snr),
    }
    params = {"param_file": args.param_file, "eps": args.eps, "snr_target": args.snr,
              "coil_volume_cm3": args.coil_volume_cm3, "Q": args.q}
    return RunRecord("hardware", params, None, _plain(outputs))


def _flatten(prefix, obj, out):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}.{i}", v, out)
    else:
        out.append((prefix, obj))
    return out


def _csv_cell(v):
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def to_csv(record):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if record.command == "witness-sweep":
        rows = record.outputs["grid"]
        keys = list(rows[0])
        w.writerow(keys)
        for row in rows:
            w.writerow([_csv_cell(row[k]) for k in keys])
    else:
        w.writerow(["key", "value"])
        meta = {"command": record.command, "params": record.params, "seed": record.seed,
                "version": record.version, "schema_version": record.schema_version}
        for k, v in _flatten("", meta, []) + _flatten("outputs", record.outputs, []):
            w.writerow([k, _csv_cell(v)])
    return buf.getvalue()


def _message_flags(p):
    p.add_argument("--z", type=int, choices=(0, 1), default=0)
    p.add_argument("--x", type=int, choices=(0, 1), default=0)


def _probability(text):
    v = float(text)
    if not -1.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"polarization must lie in [-1, 1], got {text}")
    return v


def _positive_int(text):
    v = int(float(text)) if "e" in text.lower() else int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")

    parser = argparse.ArgumentParser(prog="nmrsdc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("protocol", parents=[common], help="evolve a thermal state through the circuit")
    p.add_argument("--eps-i", type=_probability, required=True)
    p.add_argument("--eps-s", type=_probability, required=True)
    _message_flags(p)
    p.set_defaults(func=cmd_protocol)

    p = sub.add_parser("ensemble", parents=[common], help="ensemble statistics and error probability")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--eps-i", type=_probability, required=True)
    p.add_argument("--eps-s", type=_probability, required=True)
    _message_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shots", type=_nonneg_int, default=1000)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("witness", parents=[common], help="F-witness and negativity for one configuration")
    p.add_argument("--eps-i", type=_probability, required=True)
    p.add_argument("--eps-s", type=_probability, required=True)
    _message_flags(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("witness-sweep", parents=[common], help="F over a polarization grid")
    p.add_argument("--resolution", type=_positive_int, default=101)
    _message_flags(p)
    p.set_defaults(func=cmd_witness_sweep)

    p = sub.add_parser("appendix", parents=[common], help="magnetization decomposition of the conventional witness")
    _message_flags(p)
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("hardware", parents=[common], help="signal, noise and minimum molecule count")
    p.add_argument("--param-file", metavar="FILE")
    p.add_argument("--eps", type=float, default=1e-5)
    p.add_argument("--snr", type=float, default=1.0)
    p.add_argument("--coil-volume-cm3", type=float)
    p.add_argument("--q", type=float)
    p.set_defaults(func=cmd_hardware)
    return parser


def run(argv=None):
    """Parse arguments and return the RunRecord (raises on errors)."""
    args = build_parser().parse_args(argv)
    return args, args.func(args)


def rerun(record):
    """Recompute a record from its stored parameters."""
    argv = [record.command]
    for k, v in record.params.items():
        if v is None:
            continue
        flag = {"eps_I": "--eps-i", "eps_S": "--eps-s", "snr_target": "--snr",
                "coil_volume_cm3": "--coil-volume-cm3", "param_file": "--param-file"}.get(k, "--" + k.lower())
        argv += [flag, repr(v) if isinstance(v, float) else str(v)]
    if record.seed is not None:
        argv += ["--seed", str(record.seed)]
    return run(argv)[1]


def main(argv=None):
    try:
        args, record = run(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (NmrSdcError, OSError) as exc:
        print(f"nmrsdc: error: {exc}", file=sys.stderr)
        return 1
    text = to_csv(record) if args.format == "csv" else record.to_json(timestamp=not args.no_timestamp)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
