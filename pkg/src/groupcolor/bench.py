"""Seeded parameter sweeps over random group graphs.

Each trial generates one graph and runs every requested method on it, so
methods are compared on identical instances.  Records are sorted by
(point, method, trial) no matter how trials were scheduled, and timing is
off by default, which makes the CSV byte-for-byte reproducible.
"""

from __future__ import annotations

import csv
import io
import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .core import Coloring, GraphError, GroupGraph, check_valid
from .fewcolors import color_fewcolors
from .generator import GenParams, ceil_chi, generate
from .layering import color_basic, color_mincolor, color_recolor, color_thin
from .menus import color_greedy_menu, color_random_menu

log = logging.getLogger(__name__)

CSV_HEADER = ["family", "point", "method", "n_i", "n_o", "D_i", "Delta_o", "chi",
              "trial", "seed", "colors", "ratio", "ms"]

FAMILIES = ("asymmetry", "skew", "density", "colorbound")

DEFAULT_GRIDS: dict[str, tuple] = {
    "asymmetry": (1, 2, 5, 10, 20, 50),
    "skew": (0.25, 0.5, 1, 2, 4),
    "density": (5, 10, 20, 40, 80),
    "colorbound": (1.0, 1.1, 1.25, 1.5, 2.0),
}

ASYM_INPUTS = 20
ASYM_MAX_OUTPUTS = 2000
SKEW_SHAPE = (16, 256, 8)  # n_i, n_o, Delta_o
DENSITY_SHAPE = (100, 400)  # n_i, n_o
COLORBOUND_SHAPE = (20, 200, 10)  # n_i, n_o, Delta_o = D_i
CHI_FACTOR = 1.1


def _randmenu(g: GroupGraph, seed: int) -> Coloring:
    return color_random_menu(g, k=2, seed=seed)


METHODS: dict[str, Callable[..., Coloring]] = {
    "basic": color_basic,
    "thin": color_thin,
    "mincolor": color_mincolor,
    "recolor": color_recolor,
    "fewcolors": color_fewcolors,
    "randmenu": _randmenu,
    "greedymenu": color_greedy_menu,
}
SEEDED_METHODS = {"randmenu"}


def run_method(name: str, g: GroupGraph, seed: int = 0) -> Coloring:
    fn = METHODS[name]
    return fn(g, seed) if name in SEEDED_METHODS else fn(g)


def point_params(family: str, value) -> tuple[int, int, int, int, int]:
    """(n_i, n_o, D_i, Delta_o, chi) for one grid point."""
    if family == "asymmetry":
        n_i = ASYM_INPUTS
        n_o = min(int(round(value * n_i)), ASYM_MAX_OUTPUTS)
        d_o = n_i // 2  # dense: m = n_i * n_o / 2
        return n_i, n_o, d_o, d_o, ceil_chi(CHI_FACTOR, d_o)
    if family == "skew":
        n_i, n_o, d_o = SKEW_SHAPE
        d_i = max(1, int(round(value * d_o)))
        return n_i, n_o, d_i, d_o, ceil_chi(CHI_FACTOR, max(d_i, d_o))
    if family == "density":
        n_i, n_o = DENSITY_SHAPE
        d_o = int(value)
        return n_i, n_o, d_o, d_o, ceil_chi(CHI_FACTOR, d_o)
    if family == "colorbound":
        n_i, n_o, d_o = COLORBOUND_SHAPE
        return n_i, n_o, d_o, d_o, ceil_chi(float(value), d_o)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def derive_seed(base: int, point: int, trial: int) -> int:
    """32-bit seed from numpy's SeedSequence over (base, point, trial)."""
    return int(np.random.SeedSequence([base, point, trial]).generate_state(1)[0])


@dataclass
class SweepSpec:
    family: str
    methods: Sequence[str] = tuple(METHODS)
    points: Optional[Sequence] = None
    trials: int = 10
    seed: int = 0
    timing: bool = False

    def grid(self) -> list:
        return list(self.points if self.points is not None else DEFAULT_GRIDS[self.family])

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods: {', '.join(unknown)}")
        if self.trials < 1:
            raise ValueError("trials must be positive")


@dataclass
class TrialRecord:
    family: str
    point: object
    method: str
    n_i: int
    n_o: int
    D_i: int
    Delta_o: int
    chi: int
    trial: int
    seed: int
    colors: int
    ratio: float
    ms: Optional[float] = None
    point_index: int = field(default=0, repr=False)

    @property
    def lower_bound_ratio(self) -> float:
        """Colors relative to max(D_i, Delta_o) rather than Delta_o."""
        return self.colors / max(self.D_i, self.Delta_o)

    def row(self) -> list[str]:
        ms = "" if self.ms is None else f"{self.ms:.3f}"
        return [self.family, _fmt_point(self.point), self.method, str(self.n_i),
                str(self.n_o), str(self.D_i), str(self.Delta_o), str(self.chi),
                str(self.trial), str(self.seed), str(self.colors),
                f"{self.ratio:.6f}", ms]


def _fmt_point(p) -> str:
    return f"{p:g}" if isinstance(p, float) else str(p)


def _run_trial(job) -> list[TrialRecord]:
    family, pidx, value, params, trial, seed, methods, timing = job
    n_i, n_o, d_i, d_o, chi = params
    g = generate(GenParams(n_i, n_o, d_i, d_o, chi, seed))
    out = []
    for name in methods:
        t0 = time.perf_counter()
        col = run_method(name, g, seed)
        ms = (time.perf_counter() - t0) * 1000 if timing else None
        report = check_valid(g, col)
        if not report.valid:
            raise AssertionError(
                f"{name} produced an invalid coloring at {family}={value}, seed {seed}")
        colors = report.num_colors
        out.append(TrialRecord(family, value, name, n_i, n_o, d_i, d_o, chi, trial,
                               seed, colors, colors / d_o, ms, pidx))
    return out


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[TrialRecord]:
    """Run every (point, trial) of the sweep and return sorted records."""
    spec.validate()
    work = []
    for pidx, value in enumerate(spec.grid()):
        params = point_params(spec.family, value)
        try:
            GenParams(*params).validate()
        except GraphError as exc:
            log.warning("skipping %s=%s: %s", spec.family, value, exc)
            continue
        for trial in range(spec.trials):
            work.append((spec.family, pidx, value, params, trial,
                         derive_seed(spec.seed, pidx, trial), tuple(spec.methods),
                         spec.timing))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_trial, work))
    else:
        batches = [_run_trial(job) for job in work]
    order = {m: i for i, m in enumerate(spec.methods)}
    records = [r for batch in batches for r in batch]
    records.sort(key=lambda r: (r.point_index, order[r.method], r.trial))
    return records


def write_csv(records: Iterable[TrialRecord], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())


def records_csv(records: Iterable[TrialRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


@dataclass
class Summary:
    family: str
    point: object
    method: str
    trials: int
    mean: float
    min: float
    max: float
    lb_mean: float


def summarize(records: Sequence[TrialRecord]) -> list[Summary]:
    """Mean, min and max ratio per (point, method), in record order."""
    if not records:
        raise ValueError("no records to summarize")
    buckets: dict[tuple, list[TrialRecord]] = {}
    for r in records:
        buckets.setdefault((r.family, r.point_index, r.point, r.method), []).append(r)
    out = []
    for (family, _, point, method), rs in buckets.items():
        ratios = [r.ratio for r in rs]
        out.append(Summary(family, point, method, len(rs), statistics.fmean(ratios),
                           min(ratios), max(ratios),
                           statistics.fmean(r.lower_bound_ratio for r in rs)))
    return out


def summary_table(rows: Sequence[Summary]) -> str:
    lines = ["family,point,method,trials,mean,min,max,lb_mean"]
    for s in rows:
        lines.append(f"{s.family},{_fmt_point(s.point)},{s.method},{s.trials},"
                     f"{s.mean:.4f},{s.min:.4f},{s.max:.4f},{s.lb_mean:.4f}")
    return "\n".join(lines) + "\n"


def mean_ratio(rows: Sequence[Summary], point, method: str, lb: bool = False) -> float:
    for s in rows:
        if s.point == point and s.method == method:
            return s.lb_mean if lb else s.mean
    raise KeyError((point, method))
