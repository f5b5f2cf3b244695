"""Command-line front end.

Examples::

    nsqueeze state --n 8 --eta 0.85 --format json
    nsqueeze eta-scan --n 8 --eta-step 0.005 --eta-max 1.5 --output scan.csv
    nsqueeze phase-scan --n 8 --eta 0.85 --intervals 20 --format json
    nsqueeze table1
    nsqueeze report --n 8 --alpha 0.3 --gamma 0.01

Relative ``--output`` paths are resolved against ``$NSQUEEZE_OUTPUT_DIR`` when
that variable is set. Exit status: 0 success, 1 numerical-domain error,
2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import DomainError, __version__
from .etastate import eta_from_inputs, eta_state, generation_stats, noon_fidelity
from .metrics import sensitivity_report, squeezing_predictions
from .scan import (
    DEFAULT_ETA_MAX,
    DEFAULT_ETA_STEP,
    DEFAULT_PHASE_INTERVALS,
    EtaScanRow,
    eta_grid,
    eta_scan,
    phase_grid,
    phase_scan,
    table1,
)
from .schwinger import build_operators

OUTPUT_DIR_ENV = "NSQUEEZE_OUTPUT_DIR"
COMMANDS = ("state", "eta-scan", "phase-scan", "table1", "report")
ETA_CAVEAT = "eta > 1: the J2 estimator is no longer the optimal phase estimator"


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_total: int | None = None
    eta: float | None = None
    alpha: float | None = None
    gamma: float | None = None
    grid: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        has_eta = self.eta is not None
        has_ag = self.alpha is not None or self.gamma is not None
        if self.command in ("state", "phase-scan", "report"):
            if has_eta == has_ag:
                raise ConfigError("give exactly one of --eta or (--alpha and --gamma)")
            if has_ag and (self.alpha is None or self.gamma is None):
                raise ConfigError("--alpha and --gamma must be given together")
        elif has_eta or has_ag:
            raise ConfigError(f"{self.command} takes no --eta/--alpha/--gamma")
        if self.command != "table1" and self.n_total is None:
            raise ConfigError("--n is required")

    def resolved_eta(self) -> float:
        if self.eta is not None:
            return self.eta
        return eta_from_inputs(self.alpha, self.gamma, self.n_total)

    def inputs(self) -> dict:
        d = {"n_total": self.n_total}
        if self.eta is not None:
            d["eta"] = self.eta
        else:
            d["alpha"] = self.alpha
            d["gamma"] = self.gamma
        return d


# -- serialization -----------------------------------------------------------


def fmt(x) -> str:
    """Locale-independent float text with 12 significant digits."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        x = 0.0
    return format(x, ".12g")


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dump_json(obj: dict) -> str:
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n"


def dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _meta(cfg: RunConfig, eta: float | None = None, grid: dict | None = None) -> dict:
    meta = {
        "command": cfg.command,
        "version": __version__,
        "inputs": cfg.inputs() if cfg.command != "table1" else {},
        "grid": grid or {},
        "warnings": [],
    }
    if eta is not None:
        meta["eta"] = eta
        if eta > 1:
            meta["warnings"].append(ETA_CAVEAT)
    return meta


def _m_label(m: float) -> str:
    return f"p_{int(m)}" if float(m).is_integer() else f"p_{m:g}"


# -- commands ------------------------------------------------------------------


def _state(cfg: RunConfig) -> str:
    n = cfg.n_total
    eta = cfg.resolved_eta()
    state = eta_state(n, eta)
    report = sensitivity_report(state, eta)
    amps = [
        {"k": k, "n_a": n - k, "n_b": k, "amplitude": [float(c.real), float(c.imag)]}
        for k, c in enumerate(state.amps)
        if c != 0
    ]
    extra = {}
    if cfg.alpha is not None:
        extra["generation"] = generation_stats(cfg.alpha, cfg.gamma, n).__dict__
    if cfg.format == "json":
        meta = _meta(cfg, eta)
        meta.update(extra)
        return dump_json({"meta": meta, "rows": amps, "report": report.as_dict()})
    text = dump_csv(
        ["k", "n_a", "n_b", "re", "im"],
        [[a["k"], a["n_a"], a["n_b"], *a["amplitude"]] for a in amps],
    )
    items = report.as_dict()
    for k, v in extra.get("generation", {}).items():
        items.setdefault(k, v)
    text += "\n" + dump_csv(["quantity", "value"], [[k, v] for k, v in items.items()])
    return text


def _eta_scan(cfg: RunConfig) -> str:
    g = cfg.grid
    etas = eta_grid(g["eta_step"], g["eta_max"], g["eta_min"])
    rows = eta_scan(cfg.n_total, etas, workers=cfg.workers)
    if cfg.format == "json":
        meta = _meta(cfg, grid=g)
        if etas and max(etas) > 1:
            meta["warnings"].append(ETA_CAVEAT)
        return dump_json({"meta": meta, "rows": [r.as_dict() for r in rows]})
    cols = EtaScanRow.columns()
    return dump_csv(cols, [[getattr(r, c) for c in cols] for r in rows])


def _phase_scan(cfg: RunConfig) -> str:
    n = cfg.n_total
    eta = cfg.resolved_eta()
    phis = cfg.grid.get("phi") or phase_grid(cfg.grid["intervals"])
    rows = phase_scan(n, eta, phis, workers=cfg.workers)
    ms = build_operators(n).m_values
    if cfg.format == "json":
        grid = {"phi": list(phis), "m": [float(m) for m in ms]}
        return dump_json(
            {
                "meta": _meta(cfg, eta, grid),
                "rows": [
                    {"phi": r.phi, "mean_j2": r.mean_j2, "probabilities": list(r.probabilities)}
                    for r in rows
                ],
            }
        )
    header = ["phi", "mean_j2"] + [_m_label(m) for m in ms]
    return dump_csv(header, [[r.phi, r.mean_j2, *r.probabilities] for r in rows])


def _table1(cfg: RunConfig) -> str:
    etas = cfg.grid["etas"]
    ns = list(range(cfg.grid["n_min"], cfg.grid["n_max"] + 1))
    entries = table1(etas, ns)
    cols = ["n_total", "eta", "ratio", "ratio_stirling", "n_delta_phi_sq"]
    if cfg.format == "json":
        return dump_json(
            {
                "meta": _meta(cfg, grid={"etas": list(etas), "n": ns}),
                "rows": [{c: getattr(e, c) for c in cols} for e in entries],
            }
        )
    return dump_csv(cols, [[getattr(e, c) for c in cols] for e in entries])


def _report(cfg: RunConfig) -> str:
    n = cfg.n_total
    eta = cfg.resolved_eta()
    state = eta_state(n, eta)
    rep = sensitivity_report(state, eta)
    pred = squeezing_predictions(n, eta)
    lines = [f"N-photon eta-state report (N={n}, eta={fmt(eta)})", ""]
    lines.append("Sensitivity")
    for k, v in rep.as_dict().items():
        if k not in ("n_total", "eta"):
            lines.append(f"  {k:<22} {fmt(v)}")
    lines.append(f"  {'sql':<22} {fmt(1 / n)}")
    lines.append(f"  {'heisenberg_limit':<22} {fmt(1 / n**2)}")
    lines.append(f"  {'noon_fidelity':<22} {fmt(noon_fidelity(state))}")
    lines += ["", "Low-eta predictions"]
    lines.append(f"  {'validity_threshold':<22} {fmt(pred.validity_threshold)}")
    lines.append(f"  {'approximation_valid':<22} {'yes' if pred.valid else 'no'}")
    for k in ("squeeze_ratio", "mean_pair_photons", "delta_phi_sq", "q"):
        v = getattr(pred, k)
        lines.append(f"  {k:<22} {fmt(v) if v is not None else 'n/a'}")
    lines += ["", "Saturation bounds"]
    bound_b = pred.max_pair_photons_bound
    bound_phi = pred.min_delta_phi_sq_bound
    lines.append(
        f"  mean_pair_photons < {fmt(bound_b)}: {'yes' if rep.mean_pair_photons < bound_b else 'no'}"
    )
    lines.append(f"  delta_phi_sq > {fmt(bound_phi)}: {'yes' if rep.delta_phi_sq > bound_phi else 'no'}")
    if cfg.alpha is not None:
        gen = generation_stats(cfg.alpha, cfg.gamma, n)
        lines += ["", "Generation"]
        for k in ("c_n_sq", "p_sq", "p_pair", "ratio", "ratio_stirling"):
            lines.append(f"  {k:<22} {fmt(getattr(gen, k))}")
    if eta > 1:
        lines += ["", f"warning: {ETA_CAVEAT}"]
    return "\n".join(lines) + "\n"


HANDLERS = {
    "state": _state,
    "eta-scan": _eta_scan,
    "phase-scan": _phase_scan,
    "table1": _table1,
    "report": _report,
}


def run(cfg: RunConfig) -> str:
    """Execute one configured command and return its output text."""
    return HANDLERS[cfg.command](cfg)


# -- argument parsing ------------------------------------------------------------


def _add_state_inputs(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--eta", type=float, help="squeezing parameter N*gamma/alpha^2")
    g.add_argument("--alpha", type=float, help="coherent amplitude (real, > 0)")
    p.add_argument("--gamma", type=float, help="down-conversion amplitude in [0, 1)")


def _add_output(p: argparse.ArgumentParser, formats: bool = True) -> None:
    if formats:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nsqueeze", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="eta-state amplitudes and sensitivity report")
    p.add_argument("--n", type=int, required=True)
    _add_state_inputs(p)
    _add_output(p)

    p = sub.add_parser("eta-scan", help="figures of merit over an eta grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eta-min", type=float, default=0.0)
    p.add_argument("--eta-max", type=float, default=DEFAULT_ETA_MAX)
    p.add_argument("--eta-step", type=float, default=DEFAULT_ETA_STEP)
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("phase-scan", help="output distributions over the interferometer phase")
    p.add_argument("--n", type=int, required=True)
    _add_state_inputs(p)
    p.add_argument("--intervals", type=int, default=DEFAULT_PHASE_INTERVALS)
    p.add_argument("--phi", type=float, nargs="+", help="explicit phase grid (radians)")
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("table1", help="generation-rate advantage and N*dphi^2 table")
    p.add_argument("--etas", type=float, nargs="+", default=[1 / 3, 1 / 2, 1.0])
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    _add_output(p)

    p = sub.add_parser("report", help="human-readable summary with bounds and validity flags")
    p.add_argument("--n", type=int, required=True)
    _add_state_inputs(p)
    _add_output(p, formats=False)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    grid = {}
    if args.command == "eta-scan":
        if args.eta_step <= 0 or args.eta_min < 0 or args.eta_max < args.eta_min:
            raise ConfigError("need eta-step > 0 and 0 <= eta-min <= eta-max")
        grid = {"eta_min": args.eta_min, "eta_max": args.eta_max, "eta_step": args.eta_step}
    elif args.command == "phase-scan":
        if args.intervals < 1:
            raise ConfigError("--intervals must be >= 1")
        grid = {"intervals": args.intervals, "phi": args.phi}
    elif args.command == "table1":
        if args.n_min < 2 or args.n_max < args.n_min:
            raise ConfigError("need 2 <= n-min <= n-max")
        grid = {"etas": args.etas, "n_min": args.n_min, "n_max": args.n_max}
    if getattr(args, "n", None) is not None and args.n < 1:
        raise ConfigError("--n must be >= 1")
    return RunConfig(
        command=args.command,
        n_total=getattr(args, "n", None),
        eta=getattr(args, "eta", None),
        alpha=getattr(args, "alpha", None),
        gamma=getattr(args, "gamma", None),
        grid=grid,
        output=args.output,
        format=getattr(args, "format", "csv"),
        workers=getattr(args, "workers", 1),
    )


def resolve_output(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        parser.error(str(exc))
    try:
        text = run(cfg)
    except DomainError as exc:
        print(f"nsqueeze: numerical domain error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"nsqueeze: invalid configuration: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        out = resolve_output(cfg.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
