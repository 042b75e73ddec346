"""Command-line front end.

Subcommands::

    padisno solve   --config cfg.json [--output-dir DIR] [--seed N]
    padisno fig1    --output-dir DIR [--jobs N]
    padisno restore --config cfg.json [--output-dir DIR] [--seed N]
    padisno rates   trajectory.csv --target VALUE [--skip K]

Exit status: 0 success, 1 iteration limit reached without convergence,
2 invalid arguments or configuration, 3 step size rejected, 4 bad data,
5 file system error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import enum
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import experiments as ex
from .diagnostics import delta_sequence, fit_rate
from .errors import FormatError, ParameterError, StepSizeError
from .imaging import pgm_read, pgm_write, synthetic_image
from .problems import make_strongly_convex_test, make_toy2d
from .solver import InertialSchedule, SolverConfig, Termination, Variant, max_step_size, run

log = logging.getLogger("padisno")

EXIT_OK, EXIT_MAXITERS, EXIT_USAGE, EXIT_STEP, EXIT_DATA, EXIT_IO = 0, 1, 2, 3, 4, 5

STRONGLY_CONVEX_DIM = 20
STRONGLY_CONVEX_MU = 0.05


class Problem(str, enum.Enum):
    TOY2D = "Toy2d"
    RESTORE = "Restore"
    STRONGLY_CONVEX = "StronglyConvex"


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    problem: Problem = Problem.TOY2D
    variant: Variant = Variant.C_PADISNO
    alpha: float = 0.0
    beta: float = 0.0
    step_override: Optional[float] = None
    allow_unsafe_step: bool = False
    max_iters: Optional[int] = None
    tol: Optional[float] = None
    seed: int = 0
    input_image: Optional[str] = None
    output_dir: str = "."

    def __post_init__(self):
        try:
            self.problem = Problem(self.problem)
            self.variant = Variant(self.variant)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ConfigError(f"{name} must be a finite number")
        if self.step_override is not None and not (
                isinstance(self.step_override, (int, float)) and self.step_override > 0):
            raise ConfigError("step_override must be a positive number")
        if self.max_iters is not None and (
                isinstance(self.max_iters, bool) or not isinstance(self.max_iters, int)
                or self.max_iters < 0):
            raise ConfigError("max_iters must be a nonnegative integer")
        if self.tol is not None and not (isinstance(self.tol, (int, float)) and self.tol >= 0):
            raise ConfigError("tol must be a nonnegative number")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError("seed must be an integer")
        if not isinstance(self.allow_unsafe_step, bool):
            raise ConfigError("allow_unsafe_step must be a boolean")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["problem"] = self.problem.value
        d["variant"] = self.variant.value
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# -- csv ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def write_trajectory_csv(path, traj, objective) -> None:
    deltas = delta_sequence(traj, objective.smooth.lipschitz)
    dim = traj.records[0].x.size
    header = ["n"] + [f"x{i}" for i in range(dim)] + [
        "fg_value", "displacement", "delta_n", "lyapunov"]
    rows = ([r.n, *r.x, r.fg_value, r.displacement, d,
             r.fg_value + d * r.displacement ** 2]
            for r, d in zip(traj.records, deltas))
    write_csv(path, header, rows)


def read_csv_column(path, column: str) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or column not in reader.fieldnames:
            raise ParameterError(f"{path}: no column {column!r}")
        try:
            return np.array([float(row[column]) for row in reader])
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"{path}: bad value in column {column!r}") from exc


# -- solve -------------------------------------------------------------------------

def _build(cfg: ExperimentConfig):
    """Objective, solver config and starting point for a non-imaging problem."""
    if cfg.problem is Problem.TOY2D:
        obj = make_toy2d()
        schedule = InertialSchedule.ratio(cfg.alpha, cfg.beta)
        x0 = np.array(ex.FIG1_START)
        max_iters = 50_000 if cfg.max_iters is None else cfg.max_iters
        tol = ex.FIG1_TOL if cfg.tol is None else cfg.tol
        stop = dict(tol_displacement=tol)
    elif cfg.problem is Problem.STRONGLY_CONVEX:
        obj = make_strongly_convex_test(STRONGLY_CONVEX_DIM, STRONGLY_CONVEX_MU)
        schedule = InertialSchedule.constant(cfg.alpha, cfg.beta)
        x0 = np.zeros(STRONGLY_CONVEX_DIM)
        max_iters = 50_000 if cfg.max_iters is None else cfg.max_iters
        tol = 1e-12 if cfg.tol is None else cfg.tol
        stop = dict(tol_displacement=0.0, tol_objective=tol,
                    target_value=obj.known_minimum[1])
    else:
        raise ConfigError("the Restore problem is run by the 'restore' subcommand")
    if cfg.step_override is not None:
        s = cfg.step_override
    elif cfg.allow_unsafe_step and cfg.variant is Variant.C_PADISNO and abs(cfg.alpha) >= 1:
        s = 1.0 / obj.smooth.lipschitz
    else:
        # strongly convex default lands on s = 1/L for alpha = beta = 0
        frac = 0.5 if cfg.problem is Problem.STRONGLY_CONVEX else 0.98
        s = frac * max_step_size(cfg.variant, False, cfg.alpha, cfg.beta,
                                 obj.smooth.lipschitz)
    solver_cfg = SolverConfig(step_size=s, schedule=schedule, variant=cfg.variant,
                              max_iters=max_iters,
                              allow_unsafe_step=cfg.allow_unsafe_step, **stop)
    return obj, solver_cfg, x0


def cmd_solve(cfg: ExperimentConfig) -> int:
    obj, solver_cfg, x0 = _build(cfg)
    traj = run(x0, solver_cfg, obj)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(out / "trajectory.csv", traj, obj)
    last = traj.final
    print(f"{traj.termination.value}: n={last.n} fg_value={last.fg_value:.17g} "
          f"displacement={last.displacement:.3e}")
    return EXIT_MAXITERS if traj.termination is Termination.MAX_ITERS else EXIT_OK


# -- fig1 --------------------------------------------------------------------------

def _fig1_worker(cell):
    alpha, beta = cell
    traj = ex.toy2d_cell(alpha, beta)
    return cell, traj, ex.summarize_cell(alpha, beta, traj)


def _cell_name(alpha: float, beta: float) -> str:
    return f"cell_a{alpha:+.2f}_b{beta:+.2f}.csv"


def cmd_fig1(output_dir, jobs: int = 1) -> int:
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    cells = ex.fig1_cells()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_fig1_worker, cells))
    else:
        results = [_fig1_worker(c) for c in cells]
    obj = make_toy2d()
    rows = []
    for (alpha, beta), traj, summ in results:
        write_trajectory_csv(out / _cell_name(alpha, beta), traj, obj)
        rows.append([alpha, beta, summ.iters_to_tol, summ.final_error,
                     summ.stayed_in_D, summ.descent_violations])
    write_csv(out / "summary.csv",
              ["alpha", "beta", "iters_to_tol", "final_error", "stayed_in_D",
               "descent_violations"], rows)
    failed = sum(1 for r in rows if r[2] < 0 or not r[4])
    print(f"{len(rows)} cells written to {out}; {failed} did not reach "
          f"{ex.FIG1_TOL:g} inside D")
    return EXIT_OK if failed == 0 else EXIT_MAXITERS


# -- restore -----------------------------------------------------------------------

def cmd_restore(cfg: ExperimentConfig) -> int:
    if cfg.input_image:
        original = pgm_read(cfg.input_image)
    else:
        original = synthetic_image(64)
    obs = ex.make_observation(original, seed=cfg.seed, salt_pepper=0.3)
    iters = ex.RESTORE_ITERS if cfg.max_iters is None else cfg.max_iters
    traj, curve = ex.restore(obs, cfg.alpha, cfg.beta, variant=cfg.variant,
                             iters=iters, step_size=cfg.step_override,
                             allow_unsafe_step=cfg.allow_unsafe_step)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "isnr.csv", ["n", "isnr"], enumerate(curve))
    pgm_write(traj.final.x.reshape(original.shape), out / "restored.pgm")
    pgm_write(obs.observed, out / "observed.pgm")
    print(f"ISNR({traj.final.n}) = {curve[-1]:.4f} dB")
    return EXIT_OK


# -- rates -------------------------------------------------------------------------

def cmd_rates(csv_path, target_value: float, skip: int = 0, floor: float = 0.0) -> int:
    if not math.isfinite(target_value):
        raise ConfigError("target value must be finite")
    fg = read_csv_column(csv_path, "fg_value")[skip:]
    err = fg - target_value
    if np.any(err < 0):
        raise ParameterError(
            f"objective falls below the target at row {int(np.argmax(err < 0)) + skip}")
    report = fit_rate(err, start=skip + 1, floor=floor)
    print(json.dumps(report.to_dict(), sort_keys=True))
    return EXIT_OK


# -- entry point -------------------------------------------------------------------

def _load_config(args) -> ExperimentConfig:
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        cfg = ExperimentConfig.from_json(text)
    else:
        cfg = ExperimentConfig()
    if args.output_dir is not None:
        cfg.output_dir = args.output_dir
    if args.seed is not None:
        cfg.seed = args.seed
    return cfg


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="padisno", description=__doc__.split("\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    for name, problem in (("solve", None), ("restore", Problem.RESTORE)):
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON experiment configuration")
        sp.add_argument("--output-dir")
        sp.add_argument("--seed", type=int)
        sp.set_defaults(problem=problem)
    sp = sub.add_parser("fig1")
    sp.add_argument("--output-dir", default="fig1")
    sp.add_argument("--jobs", type=int, default=1)
    sp = sub.add_parser("rates")
    sp.add_argument("csv")
    sp.add_argument("--target", type=float, required=True)
    sp.add_argument("--skip", type=int, default=0, help="leading rows to drop")
    sp.add_argument("--floor", type=float, default=0.0,
                    help="errors below this count as exact zeros")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.command == "solve":
            return cmd_solve(_load_config(args))
        if args.command == "restore":
            cfg = _load_config(args)
            cfg.problem = Problem.RESTORE
            if not args.config:
                cfg.variant = Variant.PADISNO
            return cmd_restore(cfg)
        if args.command == "fig1":
            return cmd_fig1(args.output_dir, jobs=args.jobs)
        return cmd_rates(args.csv, args.target, skip=args.skip, floor=args.floor)
    except ConfigError as exc:
        print(f"padisno: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StepSizeError as exc:
        print(f"padisno: {exc}; set allow_unsafe_step to run anyway", file=sys.stderr)
        return EXIT_STEP
    except ParameterError as exc:
        code = EXIT_DATA if args.command == "rates" else EXIT_USAGE
        print(f"padisno: {exc}", file=sys.stderr)
        return code
    except FormatError as exc:
        print(f"padisno: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"padisno: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
