"""Command-line interface: ``ljlattice <command> [flags]``.

Exit codes: 0 ok, 1 verification failure, 2 usage or domain error,
3 solver failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from . import golden, minimizer, modular, verify
from .epstein import SeriesControl, UpperHalfPoint, w_b, zeta_cs, zeta_direct, direct_cutoff_for
from .errors import DomainError, LatticeError, SeriesTruncationError, SolverError, UnsupportedError

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_SOLVER, EXIT_IO = 0, 1, 2, 3, 4
DEFAULTS = {"tol": 1e-9, "series_tol": 1e-10, "format": "json", "seed": 0, "jobs": 1, "samples": verify.MIN_SAMPLES}
SIG_DIGITS = 12


@dataclass
class OutputRecord:
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    outputs: Dict[str, Any] = field(default_factory=dict)
    tolerances: Dict[str, Any] = field(default_factory=dict)
    runtime_ms: int = 0
    rows: Optional[List[Dict[str, Any]]] = None  # sweep output, one dict per row

    def to_dict(self) -> dict:
        d = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "tolerances": self.tolerances,
            "runtime_ms": self.runtime_ms,
        }
        if self.rows is not None:
            d["rows"] = self.rows
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.rows is not None:
            cols = list(self.rows[0]) if self.rows else []
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(cols)
            for r in self.rows:
                w.writerow([_fmt(r[c]) for c in cols])
        else:
            flat = {}
            for section in ("inputs", "outputs", "tolerances"):
                for k, v in getattr(self, section).items():
                    flat[f"{section}.{k}"] = v
            flat["runtime_ms"] = self.runtime_ms
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["command", *flat])
            w.writerow([self.command, *(_fmt(v) for v in flat.values())])
        return buf.getvalue()


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, f".{SIG_DIGITS}g")
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _point(z: UpperHalfPoint) -> Dict[str, float]:
    return {"x": z.x, "y": z.y}


def load_config(path: Optional[str]) -> Dict[str, Any]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    cfg = dict(DEFAULTS)
    if not path:
        return cfg
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            key, val = (p.strip() for p in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
            cfg[key] = type(DEFAULTS[key])(val)
    return cfg


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_eval(s: float, x: float, y: float, method: str = "cs", series_tol: float = 1e-10) -> OutputRecord:
    ctl = SeriesControl(tol=series_tol)
    z = UpperHalfPoint(x, y)
    rec = OutputRecord("eval", {"s": s, "x": x, "y": y, "method": method}, tolerances={"series_tol": series_tol})
    if method in ("cs", "both"):
        rec.outputs["zeta_cs"] = zeta_cs(s, z, ctl)
    if method in ("direct", "both"):
        # the direct box sum needs a well-conditioned lattice basis
        pos, _ = modular.reduce(z)
        cutoff = direct_cutoff_for(s, pos.point, series_tol)
        rec.outputs["zeta_direct"] = zeta_direct(s, pos.point, SeriesControl(tol=series_tol, direct_cutoff=cutoff))
        rec.tolerances["direct_cutoff"] = cutoff
    if method == "both":
        rec.outputs["abs_diff"] = abs(rec.outputs["zeta_cs"] - rec.outputs["zeta_direct"])
    return rec


def cmd_reduce(x: float, y: float) -> OutputRecord:
    pos, word = modular.reduce(UpperHalfPoint(x, y))
    return OutputRecord(
        "reduce",
        {"x": x, "y": y},
        {"point": _point(pos.point), "region": pos.region_tag, "word": list(word.tags)},
        {"boundary_tol": modular.BOUNDARY_TOL, "corner_tol": modular.CORNER_TOL},
    )


def cmd_thresholds(tol: float = 1e-9) -> OutputRecord:
    t = minimizer.compute_thresholds(tol)
    return OutputRecord("thresholds", {}, t.as_dict(), {"root_tol": tol})


def _phase_outputs(b: float, t: minimizer.Thresholds, tol: float) -> Dict[str, Any]:
    ph = minimizer.classify(b, t, tol)
    energy = w_b(6, 3, b, ph.minimizers[0])
    return {
        "b": b,
        "phase": ph.tag,
        "theta": ph.theta,
        "y": ph.y,
        "minimizers": [_point(z) for z in ph.minimizers],
        "energy": energy,
    }


def cmd_classify(b: Optional[float] = None, epsilon: Optional[float] = None, sigma: Optional[float] = None,
                 A: Optional[float] = None, tol: float = 1e-9) -> OutputRecord:
    forms = [b is not None, epsilon is not None or sigma is not None, A is not None]
    if sum(forms) != 1:
        raise DomainError("give exactly one of --b, --epsilon with --sigma, or --A")
    inputs: Dict[str, Any] = {}
    params = None
    if forms[1]:
        if epsilon is None or sigma is None:
            raise DomainError("--epsilon and --sigma must be given together")
        params = minimizer.LJParams(epsilon, sigma)
        b = params.b
        inputs.update(epsilon=epsilon, sigma=sigma)
    elif forms[2]:
        b = minimizer.betermin_A_to_b(A)
        inputs["A"] = A
    else:
        inputs["b"] = b
    t = minimizer.compute_thresholds(tol)
    out = _phase_outputs(b, t, tol)
    if params is not None:
        out["lj_energy"] = minimizer.lj_energy(params, UpperHalfPoint(**out["minimizers"][0]))
    return OutputRecord("classify", inputs, out, {"root_tol": tol, "tie_eps": minimizer.TIE_EPS})


def cmd_lj(epsilon: float, sigma: float, x: Optional[float] = None, y: Optional[float] = None,
           tol: float = 1e-9) -> OutputRecord:
    """Lennard-Jones energy at a given shape, or at the optimal one when none is given."""
    p = minimizer.LJParams(epsilon, sigma)
    rec = OutputRecord("lj", {"epsilon": epsilon, "sigma": sigma, "x": x, "y": y}, {"b": p.b},
                       {"root_tol": tol})
    if x is not None or y is not None:
        if x is None or y is None:
            raise DomainError("--x and --y must be given together")
        rec.outputs["energy"] = minimizer.lj_energy(p, UpperHalfPoint(x, y))
        return rec
    out = _phase_outputs(p.b, minimizer.compute_thresholds(tol), tol)
    rec.outputs.update(phase=out["phase"], minimizers=out["minimizers"],
                       energy=minimizer.lj_energy(p, UpperHalfPoint(**out["minimizers"][0])))
    return rec


def _sweep_row(args):
    b, t, tol = args
    o = _phase_outputs(b, t, tol)
    return {"b": b, "phase_tag": o["phase"], "theta": o["theta"], "y": o["y"], "energy": o["energy"]}


def cmd_phase_diagram(b_min: float, b_max: float, steps: int, tol: float = 1e-9, jobs: int = 1) -> OutputRecord:
    if not b_min < b_max:
        raise DomainError("need b_min < b_max")
    if steps < 2:
        raise DomainError("need steps >= 2")
    t = minimizer.compute_thresholds(tol)
    bs = [b_min + (b_max - b_min) * i / (steps - 1) for i in range(steps)]
    tasks = [(b, t, tol) for b in bs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks))  # map keeps input order
    else:
        rows = [_sweep_row(a) for a in tasks]
    return OutputRecord("phase-diagram", {"b_min": b_min, "b_max": b_max, "steps": steps},
                        {"transitions": _transitions(rows)}, {"root_tol": tol}, rows=rows)


def _transitions(rows) -> List[Dict[str, Any]]:
    out = []
    for prev, cur in zip(rows, rows[1:]):
        if prev["phase_tag"] != cur["phase_tag"]:
            out.append({"from": prev["phase_tag"], "to": cur["phase_tag"], "between": [prev["b"], cur["b"]]})
    return out


def cmd_table1(tol: float = 1e-12) -> OutputRecord:
    rows = []
    b3 = minimizer.b3_value()
    for b, printed in golden.TABLE1:
        if b is None:
            y, b_val = 1.0, b3
        else:
            y, b_val = minimizer.solve_y_b(b, tol).solution, b
        ref = float(printed)
        rel = abs(y - ref) / ref
        rows.append({
            "b": b_val,
            "y_b": y,
            "printed": printed,
            "rel_dev": rel,
            "within_tol": rel <= golden.table1_tolerance(b),
        })
    worst = max(r["rel_dev"] for r in rows)
    return OutputRecord("table1", {}, {"rows": len(rows), "max_rel_dev": worst,
                                       "all_within_tol": all(r["within_tol"] for r in rows)},
                        {"root_tol": tol, "rel_tol_small_b": 1e-6, "rel_tol_large_b": 1e-4}, rows=rows)


def cmd_verify(samples: int = verify.MIN_SAMPLES, only: Optional[List[str]] = None, jobs: int = 1) -> OutputRecord:
    checks = verify.run_all(samples, only=only, jobs=jobs)
    doc = verify.report(checks)
    return OutputRecord("verify", {"samples": samples, "only": only}, doc, {"min_samples": verify.MIN_SAMPLES})


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="root-solve tolerance (default 1e-9)")
    common.add_argument("--series-tol", type=float, default=None, help="series truncation tolerance (default 1e-10)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--seed", type=int, default=None,
                        help="recorded for reproducibility; every command is deterministic")
    common.add_argument("--config", default=None, help="key=value file with default settings")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for sweeps")

    p = argparse.ArgumentParser(prog="ljlattice", description="Epstein zeta and Lennard-Jones lattice minimizers")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate zeta(s, x+iy)")
    e.add_argument("--s", type=float, required=True)
    e.add_argument("--x", type=float, required=True)
    e.add_argument("--y", type=float, required=True)
    e.add_argument("--method", choices=("cs", "direct", "both"), default="cs")

    r = sub.add_parser("reduce", parents=[common], help="reduce x+iy to the fundamental domain")
    r.add_argument("--x", type=float, required=True)
    r.add_argument("--y", type=float, required=True)

    sub.add_parser("thresholds", parents=[common], help="compute all phase thresholds")

    c = sub.add_parser("classify", parents=[common], help="minimizer shape for one coupling")
    c.add_argument("--b", type=float)
    c.add_argument("--epsilon", type=float)
    c.add_argument("--sigma", type=float)
    c.add_argument("--A", type=float)

    d = sub.add_parser("phase-diagram", parents=[common], help="sweep b and tabulate the phase")
    d.add_argument("--b-min", type=float, required=True)
    d.add_argument("--b-max", type=float, required=True)
    d.add_argument("--steps", type=int, default=200)

    sub.add_parser("table1", parents=[common], help="rectangular minimizer heights at reference couplings")

    lj = sub.add_parser("lj", parents=[common], help="Lennard-Jones energy in physical units")
    lj.add_argument("--epsilon", type=float, required=True)
    lj.add_argument("--sigma", type=float, required=True)
    lj.add_argument("--x", type=float)
    lj.add_argument("--y", type=float)

    v = sub.add_parser("verify", parents=[common], help="run the sampled inequality checks")
    v.add_argument("--only", action="append", default=None, metavar="CHECK",
                   help="run only this check (repeatable); see --list")
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--list", action="store_true", help="print check names and exit")
    return p


def _settings(args) -> Dict[str, Any]:
    cfg = load_config(args.config)
    for key in ("tol", "series_tol", "format", "seed", "jobs"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "samples", None) is not None:
        cfg["samples"] = args.samples
    return cfg


def _dispatch(args, cfg) -> OutputRecord:
    tol = cfg["tol"]
    if args.command == "eval":
        return cmd_eval(args.s, args.x, args.y, args.method, cfg["series_tol"])
    if args.command == "reduce":
        return cmd_reduce(args.x, args.y)
    if args.command == "thresholds":
        return cmd_thresholds(tol)
    if args.command == "classify":
        return cmd_classify(args.b, args.epsilon, args.sigma, args.A, tol)
    if args.command == "phase-diagram":
        return cmd_phase_diagram(args.b_min, args.b_max, args.steps, tol, cfg["jobs"])
    if args.command == "table1":
        return cmd_table1(min(tol, 1e-12))
    if args.command == "lj":
        return cmd_lj(args.epsilon, args.sigma, args.x, args.y, tol)
    if args.command == "verify":
        return cmd_verify(cfg["samples"], args.only, cfg["jobs"])
    raise DomainError(f"unknown command {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "verify" and args.list:
        print("\n".join(verify.check_names()))
        return EXIT_OK
    try:
        cfg = _settings(args)
        start = time.perf_counter()
        rec = _dispatch(args, cfg)
        rec.runtime_ms = int(round(1000 * (time.perf_counter() - start)))
        rec.inputs["seed"] = cfg["seed"]
    except (DomainError, UnsupportedError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, SeriesTruncationError, LatticeError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    text = rec.to_csv() if cfg["format"] == "csv" else rec.to_json()
    try:
        if args.out:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if rec.command == "verify" and not rec.outputs["passed"]:
        print("failed checks: " + ", ".join(rec.outputs["failed"]), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK
