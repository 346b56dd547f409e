"""Static-power sweep front end: optimize both protocols over a grid, emit CSV."""

import argparse
import csv
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .optimizer import (
    FEASIBLE,
    draw_trials,
    optimize_time_splitting,
    optimize_uc_splitting,
)
from .power import PROTOCOLS, TIME_SPLITTING, UC_SPLITTING, dynamic_power
from .scenario import ConfigError, ScenarioConfig, load_config

CSV_HEADER = [
    "p_static_w",
    "protocol",
    "status",
    "optimal_allocation",
    "avg_rate_bps",
    "rate_ci_bps",
    "p_dyn_w",
    "dyn_over_static",
]

LINEAR = "linear"
LOG = "log"
SCALES = (LINEAR, LOG)

DEFAULT_SWEEP_START = 1e-7   # W, brackets the feasibility edge of low-power ASICs
DEFAULT_SWEEP_STOP = 1e-3    # W
DEFAULT_SWEEP_POINTS = 25


class SweepCsvError(ValueError):
    """Malformed or empty sweep CSV."""


@dataclass(frozen=True)
class SweepSpec:
    """Static-power grid: [start, stop] W with `points` samples."""

    start: float = DEFAULT_SWEEP_START
    stop: float = DEFAULT_SWEEP_STOP
    points: int = DEFAULT_SWEEP_POINTS
    scale: str = LOG

    def __post_init__(self):
        if self.scale not in SCALES:
            raise ValueError(f"scale must be one of {SCALES}, got {self.scale!r}")
        if not self.start < self.stop:
            raise ValueError(f"sweep start ({self.start}) must be below stop ({self.stop})")
        if self.points < 2:
            raise ValueError(f"sweep needs at least 2 points, got {self.points}")
        if self.scale == LOG and self.start <= 0.0:
            raise ValueError("log-scale sweeps need a positive start value")

    def grid(self) -> np.ndarray:
        if self.scale == LINEAR:
            return np.linspace(self.start, self.stop, self.points)
        return np.logspace(math.log10(self.start), math.log10(self.stop), self.points)


@dataclass(frozen=True)
class SweepRow:
    p_static: float
    protocol: str
    status: str
    optimal_allocation: int
    average_rate: float
    rate_ci: float
    p_dynamic: float
    dyn_over_static: Optional[float]  # None (empty cell) at p_static = 0

    def to_record(self) -> list[str]:
        ratio = "" if self.dyn_over_static is None else repr(self.dyn_over_static)
        return [
            repr(self.p_static),
            self.protocol,
            self.status,
            str(self.optimal_allocation),
            repr(self.average_rate),
            repr(self.rate_ci),
            repr(self.p_dynamic),
            ratio,
        ]

    @classmethod
    def from_record(cls, record: list[str]) -> "SweepRow":
        if len(record) != len(CSV_HEADER):
            raise SweepCsvError(f"expected {len(CSV_HEADER)} columns, got {len(record)}")
        try:
            return cls(
                p_static=float(record[0]),
                protocol=record[1],
                status=record[2],
                optimal_allocation=int(record[3]),
                average_rate=float(record[4]),
                rate_ci=float(record[5]),
                p_dynamic=float(record[6]),
                dyn_over_static=None if record[7] == "" else float(record[7]),
            )
        except ValueError as exc:
            raise SweepCsvError(f"malformed sweep row {record!r}: {exc}") from None


def run_sweep(
    config_path,
    spec: SweepSpec,
    output_path,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
) -> int:
    """Optimize both protocols at every grid point and write the CSV.

    ``seed`` and ``trials`` override the scenario file. One channel draw set
    is shared across all grid points and both protocols, which keeps rate
    curves free of re-sampling noise and the output reproducible.
    """
    cfg = load_config(config_path) if config_path is not None else ScenarioConfig()
    if seed is not None:
        cfg = replace(cfg, rng_seed=seed)
    if trials is not None:
        cfg = replace(cfg, mc_trials=trials)
    rng = np.random.default_rng(cfg.rng_seed)
    trial_set = draw_trials(cfg, rng)
    rows = []
    for grid_value in spec.grid():
        p_static = float(grid_value)
        for protocol, optimize in (
            (TIME_SPLITTING, optimize_time_splitting),
            (UC_SPLITTING, optimize_uc_splitting),
        ):
            result = optimize(p_static, cfg, trials=trial_set)
            p_dyn = dynamic_power(protocol, cfg)
            rows.append(
                SweepRow(
                    p_static=p_static,
                    protocol=protocol,
                    status=result.status,
                    optimal_allocation=result.optimal_allocation,
                    average_rate=result.average_rate,
                    rate_ci=result.rate_ci_halfwidth,
                    p_dynamic=p_dyn,
                    dyn_over_static=p_dyn / p_static if p_static > 0.0 else None,
                )
            )
    rows.sort(key=lambda r: (r.p_static, r.protocol))
    with open(output_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row.to_record())
    return 0


def read_rows(csv_path) -> list[SweepRow]:
    """Parse a sweep CSV back into rows; raises SweepCsvError when malformed."""
    path = Path(csv_path)
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SweepCsvError(f"{path}: empty file") from None
        if header != CSV_HEADER:
            raise SweepCsvError(f"{path}: unexpected header {header!r}")
        rows = [SweepRow.from_record(record) for record in reader]
    if not rows:
        raise SweepCsvError(f"{path}: no data rows")
    return rows


def summarize(csv_path) -> str:
    """Per-protocol feasibility thresholds, best rates, and the rate gap."""
    rows = read_rows(csv_path)
    lines = []
    by_protocol = {p: [r for r in rows if r.protocol == p] for p in PROTOCOLS}
    any_feasible = False
    for protocol in PROTOCOLS:
        feasible = [r for r in by_protocol[protocol] if r.status == FEASIBLE]
        if not feasible:
            lines.append(f"{protocol}: no feasible operating point")
            continue
        any_feasible = True
        threshold = max(r.p_static for r in feasible)
        best = max(r.average_rate for r in feasible)
        lines.append(
            f"{protocol}: feasible up to p_static = {threshold:.3e} W, "
            f"max avg rate = {best:.4e} bit/s"
        )
    if not any_feasible:
        lines.append("no feasible operating point for any protocol")
        return "\n".join(lines) + "\n"
    feasible_ts = {
        r.p_static: r for r in by_protocol[TIME_SPLITTING] if r.status == FEASIBLE
    }
    feasible_uc = {
        r.p_static: r for r in by_protocol[UC_SPLITTING] if r.status == FEASIBLE
    }
    common = sorted(set(feasible_ts) & set(feasible_uc))
    lines.append(f"points feasible under both protocols: {len(common)}")
    for p_static in common:
        gap = feasible_uc[p_static].average_rate - feasible_ts[p_static].average_rate
        lines.append(f"  p_static = {p_static:.3e} W: uc - time rate gap = {gap:+.4e} bit/s")
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="risharvest",
        description=(
            "Sweep the ASIC static power budget of a self-powered RIS, solving the "
            "rate-maximizing harvest allocation for the time-splitting and "
            "UC-splitting protocols at every grid point."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run the static-power sweep and write a CSV")
    sweep.add_argument("--config", type=Path, default=None, help="scenario file (defaults used if omitted)")
    sweep.add_argument("--sweep-start", type=float, default=DEFAULT_SWEEP_START, help="grid start in W")
    sweep.add_argument("--sweep-stop", type=float, default=DEFAULT_SWEEP_STOP, help="grid stop in W")
    sweep.add_argument("--points", type=int, default=DEFAULT_SWEEP_POINTS, help="number of grid points")
    sweep.add_argument("--scale", choices=SCALES, default=LOG, help="grid spacing")
    sweep.add_argument("--out", type=Path, required=True, help="output CSV path")
    sweep.add_argument("--seed", type=int, default=None, help="override the scenario rng_seed")
    sweep.add_argument("--trials", type=int, default=None, help="override the scenario mc_trials")

    summ = sub.add_parser("summarize", help="report thresholds and rate gaps from a sweep CSV")
    summ.add_argument("csv", type=Path, help="CSV produced by the sweep command")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            spec = SweepSpec(
                start=args.sweep_start,
                stop=args.sweep_stop,
                points=args.points,
                scale=args.scale,
            )
            return run_sweep(
                args.config, spec, args.out, seed=args.seed, trials=args.trials
            )
        report = summarize(args.csv)
        sys.stdout.write(report)
        return 0
    except (ConfigError, SweepCsvError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
