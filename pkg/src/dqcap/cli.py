"""Command-line front end.

Examples::

    dqcap capacity classical --channel attenuation --lambda 0.5 --power 8 --integer-levels
    dqcap compare --channel classical-noise --mu2 1 --power 10
    dqcap region broadcast --lambda 0.8 --power 50.5 --points 64
    dqcap sweep classical --channel attenuation --sweep lambda 0.05 1 --steps 20 \\
        --sweep power 1 100 --steps 40 --scale linear --scale log

Single results are printed as one JSON object and tables as CSV. Exit codes:
0 on success, 2 for invalid input, 3 when a comparison has no reference.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import dq_engine, multiuser, reference
from .exceptions import DQError, MalformedInputError, NoReferenceError
from .phase_model import (
    AdditiveGaussian,
    Attenuation,
    ClassicalNoise,
    Dephasing,
    PowerBudget,
    ThermalNoise,
)

CHANNELS = ("attenuation", "thermal", "classical-noise", "dephasing", "additive")
KINDS = ("classical", "quantum", "private")
SWEEP_PARAMS = ("lambda", "power", "mu2", "n_e")
SWEEP_COLUMNS = ("channel", "kind", "lambda", "n_e", "mu2", "sigma_r", "sigma_s",
                 "power", "dq_bits", "reference_bits", "gap_bits", "reference_kind",
                 "flags")


def fmt(x) -> str:
    """12 significant digits, ``inf`` for unbounded rates, empty for missing."""
    if x is None:
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".12g")


def _json_num(x):
    if x is None:
        return None
    if math.isinf(x):
        return fmt(x)
    return float(fmt(x))


@dataclass
class OutputRecord:
    channel: str
    params: dict
    power: float
    kind: str
    dq_bits: float
    reference_bits: Optional[float] = None
    gap_bits: Optional[float] = None
    reference_kind: Optional[str] = None
    flags: tuple = field(default_factory=tuple)
    method: str = ""

    def as_json(self) -> dict:
        return {
            "channel": self.channel,
            "params": {k: _json_num(v) for k, v in self.params.items()},
            "power": _json_num(self.power),
            "kind": self.kind,
            "method": self.method,
            "dq_bits": _json_num(self.dq_bits),
            "reference_bits": _json_num(self.reference_bits),
            "gap_bits": _json_num(self.gap_bits),
            "reference_kind": self.reference_kind,
            "flags": list(self.flags),
        }

    def as_row(self) -> list:
        p = self.params
        return [self.channel, self.kind, fmt(p.get("lambda")), fmt(p.get("n_e")),
                fmt(p.get("mu2")), fmt(p.get("sigma_r")), fmt(p.get("sigma_s")),
                fmt(self.power), fmt(self.dq_bits), fmt(self.reference_bits),
                fmt(self.gap_bits), self.reference_kind or "", ";".join(self.flags)]


# ---------------------------------------------------------------------------
# evaluation shared by capacity / compare / sweep
# ---------------------------------------------------------------------------

def build_channel(name: str, lam=None, n_e=None, mu2=None, sigma_r=None, sigma_s=None):
    def need(value, flag):
        if value is None:
            raise MalformedInputError(f"--channel {name} requires {flag}")
        return value

    if name == "attenuation":
        return Attenuation(need(lam, "--lambda"))
    if name == "thermal":
        return ThermalNoise(need(lam, "--lambda"), need(n_e, "--ne"))
    if name == "classical-noise":
        return ClassicalNoise(need(mu2, "--mu2"))
    if name == "dephasing":
        return Dephasing(need(mu2, "--mu2"))
    if name == "additive":
        return AdditiveGaussian(need(lam, "--lambda"), need(sigma_r, "--sigma-r"),
                                need(sigma_s, "--sigma-s"))
    raise MalformedInputError(f"unknown channel {name!r}")


def reference_for(kind: str, channel, budget: PowerBudget):
    """(bits, reference kind) from the gaussian model, or None."""
    if kind == "classical":
        if isinstance(channel, Attenuation):
            return reference.attenuation_capacity_exact(channel.lam, budget), reference.EXACT_CAPACITY
        if isinstance(channel, ClassicalNoise):
            return reference.classical_noise_lower_bound(channel.mu2, budget), reference.LOWER_BOUND
        if isinstance(channel, Dephasing):
            return reference.dephasing_holevo(channel.mu2, budget), reference.ACHIEVABLE_HOLEVO
    elif isinstance(channel, Attenuation):
        return reference.attenuation_quantum_exact(channel.lam), reference.EXACT_CAPACITY
    return None


def evaluate(kind: str, channel, power: float, integer_levels: bool = False,
             with_reference: bool = False) -> OutputRecord:
    budget = PowerBudget(power)
    if kind == "classical":
        res = dq_engine.classical_capacity(channel, budget, integer_levels)
    elif kind == "quantum":
        res = dq_engine.quantum_capacity(channel, budget)
    elif kind == "private":
        res = dq_engine.private_capacity(channel, budget)
    else:
        raise MalformedInputError(f"unknown capacity kind {kind!r}")

    rec = OutputRecord(channel.tag, channel.params(), power, kind, res.bits,
                       flags=res.flags, method=res.method)
    if with_reference:
        ref = reference_for(kind, channel, budget)
        if ref is not None:
            rec.reference_bits, rec.reference_kind = ref
            if math.isfinite(res.bits) and math.isfinite(rec.reference_bits):
                rec.gap_bits = reference.gap_report(res, rec.reference_bits, rec.reference_kind).gap_bits
    return rec


def _channel_from_args(args):
    return build_channel(args.channel, args.lam, args.ne, args.mu2, args.sigma_r, args.sigma_s)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_capacity(args) -> int:
    rec = evaluate(args.kind, _channel_from_args(args), args.power, args.integer_levels)
    _emit(args, _dump_json(rec.as_json()))
    return 0


def cmd_compare(args) -> int:
    channel = _channel_from_args(args)
    if reference_for(args.kind, channel, PowerBudget(args.power)) is None:
        raise NoReferenceError(
            f"no reference available for {args.kind} capacity of {channel.tag}")
    rec = evaluate(args.kind, channel, args.power, args.integer_levels, with_reference=True)
    _emit(args, _dump_json(rec.as_json()))
    return 0


def cmd_region(args) -> int:
    if args.region == "broadcast":
        region = multiuser.broadcast_region(args.lam, PowerBudget(args.power))
    elif args.region == "mac":
        region = multiuser.mac_region(args.lam, PowerBudget(args.power_a),
                                      PowerBudget(args.power_b))
    else:
        region = dq_engine.cq_tradeoff_region(Attenuation(args.lam), PowerBudget(args.power))
    points = multiuser.region_boundary(region, args.points)
    _emit(args, _dump_csv(("x_rate", "y_rate"), [(fmt(x), fmt(y)) for x, y in points]))
    return 0


def sweep_values(start: float, stop: float, steps: int, scale: str) -> list:
    if not (math.isfinite(start) and math.isfinite(stop)) or not start < stop:
        raise MalformedInputError(f"sweep needs start < stop, got {start}..{stop}")
    if steps < 2:
        raise MalformedInputError("sweep needs at least 2 steps")
    if scale == "log":
        if start <= 0:
            raise MalformedInputError("log-scale sweep needs start > 0")
        return [float(v) for v in np.geomspace(start, stop, steps)]
    return [float(v) for v in np.linspace(start, stop, steps)]


def _per_axis(values, n, default):
    values = values or [default]
    if len(values) == 1:
        return values * n
    if len(values) != n:
        raise MalformedInputError("give one --steps/--scale per --sweep, or a single value")
    return values


def cmd_sweep(args) -> int:
    axes = args.sweep or []
    if not 1 <= len(axes) <= 2:
        raise MalformedInputError("sweep takes one or two --sweep axes")
    steps = _per_axis(args.steps, len(axes), 11)
    scales = _per_axis(args.scale, len(axes), "linear")

    grids = []
    for (name, start, stop), n, scale in zip(axes, steps, scales):
        if name not in SWEEP_PARAMS:
            raise MalformedInputError(f"cannot sweep {name!r}; choose from {SWEEP_PARAMS}")
        grids.append((name, sweep_values(float(start), float(stop), n, scale)))
    if len({name for name, _ in grids}) != len(grids):
        raise MalformedInputError("sweep axes must be distinct parameters")

    base = {"lambda": args.lam, "n_e": args.ne, "mu2": args.mu2, "power": args.power}
    rows = []
    for point in _row_major(grids):
        p = dict(base, **point)
        if p["power"] is None:
            raise MalformedInputError("--power is required unless power is swept")
        channel = build_channel(args.channel, p["lambda"], p["n_e"], p["mu2"],
                                args.sigma_r, args.sigma_s)
        rec = evaluate(args.kind, channel, p["power"], args.integer_levels,
                       with_reference=True)
        rows.append(rec.as_row())
    _emit(args, _dump_csv(SWEEP_COLUMNS, rows))
    return 0


def _row_major(grids):
    if not grids:
        yield {}
        return
    (name, values), rest = grids[0], grids[1:]
    for v in values:
        for tail in _row_major(rest):
            yield {name: v, **tail}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _channel_flags(p, need_power=True):
    p.add_argument("--channel", choices=CHANNELS, required=True)
    p.add_argument("--lambda", dest="lam", type=float, help="transmissivity in (0, 1]")
    p.add_argument("--ne", type=float, help="thermal photon number N_E")
    p.add_argument("--mu2", type=float, help="classical noise variance")
    p.add_argument("--sigma-r", type=float, help="environment P std (additive)")
    p.add_argument("--sigma-s", type=float, help="environment Q std (additive)")
    p.add_argument("--power", type=float, required=need_power, help="mean power W >= 1/2")
    p.add_argument("--integer-levels", action="store_true",
                   help="round state counts up to integers before the log")
    p.add_argument("--out", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dqcap", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="single DQ capacity as JSON")
    p.add_argument("kind", choices=KINDS)
    _channel_flags(p)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("compare", help="DQ capacity against the gaussian reference")
    p.add_argument("--kind", choices=KINDS, default="classical")
    _channel_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("region", help="Pareto boundary of a rate region as CSV")
    p.add_argument("region", choices=("broadcast", "mac", "cq-tradeoff"))
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--power", type=float, help="sender power (broadcast, cq-tradeoff)")
    p.add_argument("--power-a", type=float, help="power of sender A (mac)")
    p.add_argument("--power-b", type=float, help="power of sender B (mac)")
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--out")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("sweep", help="parameter sweep as CSV")
    p.add_argument("kind", choices=KINDS)
    _channel_flags(p, need_power=False)
    p.add_argument("--sweep", nargs=3, action="append", metavar=("PARAM", "START", "STOP"))
    p.add_argument("--steps", type=int, action="append")
    p.add_argument("--scale", choices=("linear", "log"), action="append")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "region":
        missing = {"mac": ("power_a", "power_b")}.get(args.region, ("power",))
        absent = [m for m in missing if getattr(args, m) is None]
        if absent:
            print(f"error: region {args.region} requires "
                  + ", ".join("--" + m.replace("_", "-") for m in absent), file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except NoReferenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DQError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
