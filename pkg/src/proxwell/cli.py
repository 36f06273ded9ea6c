"""Command-line front end: ``proxwell solve|sweep|wf|validate``.

Output is CSV (default) or JSON on stdout or ``--output``. Floats are written
with ``repr`` (shortest round-trip form), so identical runs are byte-identical.
Exit codes: 0 success, 1 computational failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import validation
from .dispersion import BranchLabel
from .eigensolve import ConvergenceError, EnergyWindow, find_eigenvalues
from .stack import BoundaryCondition, PotentialStack, make_periodic_bilayer, parse_layers
from .wavefunction import build_wavefunction, sample

DEFAULTS = {
    "periods": 1,
    "bc": "dirichlet",
    "v": None,
    "layers": None,
    "index": 0,
    "samples": 2001,
    "window_lo": None,
    "window_hi": None,
    "v_min": 0.25,
    "v_max": 20.0,
    "steps": 80,
    "format": "csv",
    "output": None,
    "norm": None,
}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    periods: int
    bc: BoundaryCondition
    v: float | None
    layers: str | None
    index: int
    samples: int
    window_lo: float | None
    window_hi: float | None
    v_min: float
    v_max: float
    steps: int
    format: str
    output: str | None
    norm: str | None

    def validate(self):
        if self.periods < 1:
            raise UsageError("--periods must be >= 1")
        if self.v is not None and not (math.isfinite(self.v) and self.v >= 0):
            raise UsageError("--v must be finite and >= 0")
        if self.command in ("solve", "wf") and self.v is None and self.layers is None:
            raise UsageError("give --v or --layers")
        if self.index < 0:
            raise UsageError("--index must be >= 0")
        if self.samples < 2:
            raise UsageError("--samples must be >= 2")
        if self.command == "sweep":
            if not self.v_min < self.v_max or self.v_min < 0:
                raise UsageError("need 0 <= --v-min < --v-max")
            if self.steps < 2:
                raise UsageError("--steps must be >= 2")
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")
        if self.norm is not None and self.norm not in ("l2", "max", "raw"):
            raise UsageError("--norm must be l2, max or raw")
        if self.command in ("solve", "wf"):
            stack = self.stack()
            lo, hi = self.window_bounds(stack)
            if not lo < hi:
                raise UsageError(f"empty energy window ({lo}, {hi}); set --window-hi")

    def stack(self) -> PotentialStack:
        if self.layers is not None:
            return parse_layers(self.layers, self.bc)
        return make_periodic_bilayer(self.periods, self.v, self.bc)

    def window_bounds(self, stack):
        lo = 0.0 if self.window_lo is None else self.window_lo
        hi = stack.max_potential if self.window_hi is None else self.window_hi
        return lo, hi


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv(header, rows, comments=()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _stack_payload(stack: PotentialStack):
    return {
        "layers": [[l.potential, l.width] for l in stack.layers],
        "left_bc": stack.left_bc.value,
        "right_bc": stack.right_bc.value,
    }


def cmd_solve(cfg: RunConfig) -> str:
    stack = cfg.stack()
    lo, hi = cfg.window_bounds(stack)
    found = find_eigenvalues(stack, EnergyWindow(lo, hi))
    header = ["index", "E", "nodes", "proximity_valid", "below_barrier"]
    rows = [[i, e.energy, e.node_count, e.proximity_valid, e.below_barrier] for i, e in enumerate(found)]
    note = [] if found else [f"no eigenvalues in window ({lo!r}, {hi!r})"]
    if cfg.format == "json":
        payload = {
            "command": "solve",
            "stack": _stack_payload(stack),
            "window": [lo, hi],
            "eigenvalues": [dict(zip(header, row)) for row in rows],
        }
        if note:
            payload["note"] = note[0]
        return _json(payload)
    return _csv(header, rows, note)


def _lowest_new(stack, V, exclude):
    for e in find_eigenvalues(stack, EnergyWindow(0.0, V)):
        if all(abs(e.energy - x) > validation.ROOT_ATOL for x in exclude):
            return e.energy
    return None


def sweep_rows(v_min: float, v_max: float, steps: int) -> list[tuple[float, float, str]]:
    """Lowest eigenvalue per branch on a grid of barrier heights."""
    rows = []
    ground_cap = math.pi**2 + 1.0
    for V in np.linspace(v_min, v_max, steps):
        V = float(V)
        one_d = make_periodic_bilayer(1, V, "dirichlet")
        low = find_eigenvalues(one_d, EnergyWindow(0.0, max(V, ground_cap)))
        if low:
            E = low[0].energy
            label = BranchLabel.ONE_PERIOD_DIRICHLET if E < V else BranchLabel.DIRICHLET_ABOVE_V
            rows.append((V, E, label.value))
        if V == 0:
            continue
        neumann = find_eigenvalues(make_periodic_bilayer(1, V, "neumann"))
        if neumann:
            rows.append((V, neumann[0].energy, BranchLabel.ONE_PERIOD_NEUMANN.value))
        one_roots = [e.energy for e in find_eigenvalues(one_d)]
        for n, label in ((2, BranchLabel.REDUCED_MULTI_PERIOD_2), (3, BranchLabel.REDUCED_MULTI_PERIOD_3)):
            E = _lowest_new(make_periodic_bilayer(n, V, "dirichlet"), V, one_roots)
            if E is not None:
                rows.append((V, E, label.value))
    return rows


def cmd_sweep(cfg: RunConfig) -> str:
    rows = sweep_rows(cfg.v_min, cfg.v_max, cfg.steps)
    if cfg.format == "json":
        return _json({
            "command": "sweep",
            "rows": [{"V": V, "E": E, "branch": b} for V, E, b in rows],
        })
    return _csv(["V", "E", "branch"], rows)


class MissingState(LookupError):
    pass


def cmd_wavefunction(cfg: RunConfig) -> str:
    stack = cfg.stack()
    lo, hi = cfg.window_bounds(stack)
    found = find_eigenvalues(stack, EnergyWindow(lo, hi))
    if cfg.index >= len(found):
        raise MissingState(
            f"eigenstate index {cfg.index} not found; window ({lo!r}, {hi!r}) holds {len(found)}"
        )
    E = found[cfg.index].energy
    wf = build_wavefunction(stack, E, cfg.norm)
    data = sample(wf, cfg.samples)
    if cfg.format == "json":
        return _json({
            "command": "wf",
            "E": E,
            "normalization": wf.normalization.value,
            "stack": _stack_payload(stack),
            "x": data[:, 0].tolist(),
            "psi": data[:, 1].tolist(),
            "dpsi": data[:, 2].tolist(),
        })
    rows = [tuple(float(v) for v in row) for row in data]
    return _csv(["x", "psi", "dpsi"], rows, [f"E={E!r}"])


def cmd_validate(cfg: RunConfig, explicit) -> tuple[str, bool]:
    results = validation.run_all(
        periods=[cfg.periods] if "periods" in explicit else None,
        bcs=[cfg.bc] if "bc" in explicit else None,
        potentials=[cfg.v] if cfg.v is not None else None,
    )
    ok = all(r.passed for r in results)
    if cfg.format == "json":
        return _json({
            "command": "validate",
            "passed": ok,
            "checks": [{"name": r.name, "passed": r.passed, "failures": r.failures} for r in results],
        }), ok
    return "".join(r.line() + "\n" for r in results), ok


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of option values (flags override it)")
    common.add_argument("--periods", type=int)
    common.add_argument("--bc", choices=["dirichlet", "neumann"])
    common.add_argument("--v", type=float, help="barrier potential V")
    common.add_argument("--layers", help="hand-built stack as potential:width,potential:width,...")
    common.add_argument("--window-lo", type=float)
    common.add_argument("--window-hi", type=float)
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--output", help="output path (default stdout)")

    parser = argparse.ArgumentParser(prog="proxwell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="list eigenvalues in a window")
    sweep = sub.add_parser("sweep", parents=[common], help="lowest eigenvalue per branch versus V")
    sweep.add_argument("--v-min", type=float)
    sweep.add_argument("--v-max", type=float)
    sweep.add_argument("--steps", type=int)
    wf = sub.add_parser("wf", aliases=["wavefunction"], parents=[common], help="sample an eigenfunction")
    wf.add_argument("--index", type=int)
    wf.add_argument("--samples", type=int)
    wf.add_argument("--norm", choices=["l2", "max", "raw"])
    sub.add_parser("validate", parents=[common], help="solver vs closed-form cross-checks")
    return parser


def _load_config(parser, args):
    given = {k: v for k, v in vars(args).items() if v is not None and k in DEFAULTS}
    merged = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                from_file = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
        unknown = set(from_file) - set(DEFAULTS)
        if unknown:
            parser.error(f"unknown config keys: {sorted(unknown)}")
        merged.update({k.replace("-", "_"): v for k, v in from_file.items()})
        given = {**{k: v for k, v in from_file.items() if v is not None}, **given}
    merged.update(given)
    command = "wf" if args.command == "wavefunction" else args.command
    try:
        merged["bc"] = BoundaryCondition.parse(merged["bc"])
        cfg = RunConfig(command=command, **merged)
        cfg.validate()
    except (ValueError, TypeError) as exc:
        parser.error(str(exc))
    return cfg, set(given)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg, explicit = _load_config(parser, args)
    ok = True
    try:
        if cfg.command == "solve":
            text = cmd_solve(cfg)
        elif cfg.command == "sweep":
            text = cmd_sweep(cfg)
        elif cfg.command == "wf":
            text = cmd_wavefunction(cfg)
        else:
            text, ok = cmd_validate(cfg, explicit)
    except (ConvergenceError, MissingState, ValueError) as exc:
        print(f"proxwell: error: {exc}", file=sys.stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
