"""Parameter sweeps over the discontinuity p and curve diagnostics.

A sweep evaluates one entropy method on an equally spaced p grid.  The
grid is generated in exact rational arithmetic and shared verbatim by
every method, so sweeps of different methods can be compared record by
record, and repeated runs are bit-identical regardless of worker count.
Endpoints equal to a or b are pulled inside by one grid spacing, since
the kneading data degenerates exactly at the ends.

Spectral points run in float mode by default (fast, error-bounded); lap
points run in exact mode (the big-integer counts are exact and the p
values are promoted to exact dyadic rationals).
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.signal import find_peaks

from .errors import (
    DomainError,
    GridMismatch,
    InsufficientData,
    NoRootFound,
    RangeError,
    ResourceLimit,
)
from .laps import DEFAULT_MAX_CLASSES, DEFAULT_WINDOW, entropy_laps
from .maps import UPPER, BranchPair, LorenzMap
from .spectral import LAPS, SPECTRAL, DEFAULT_TOL, EntropyEstimate, entropy_spectral

STATUS_OK = "ok"
STATUS_NO_ROOT = "no-root"
STATUS_RESOURCE_LIMIT = "resource-limit"

DIP = "dip"
BUMP = "bump"

CSV_FIELDS = ("p", "entropy", "gamma", "method", "order", "error_bound", "status")


@dataclass(frozen=True)
class SweepRecord:
    p: float
    estimate: EntropyEstimate | None
    status: str


@dataclass(frozen=True)
class NonMonotoneFeature:
    """A dip or bump of the entropy curve: its p range and its depth."""

    p_low: float
    p_high: float
    prominence: float
    direction: str


def _grid(bp: BranchPair, p_min, p_max, points: int) -> list:
    if points < 2:
        raise DomainError("a sweep needs at least 2 points")
    a, b = Fraction(bp.a), Fraction(bp.b)
    lo, hi = Fraction(p_min), Fraction(p_max)
    if lo >= hi:
        raise RangeError(f"need p_min < p_max, got [{lo}, {hi}]")
    if lo < a or hi > b:
        raise RangeError(f"[{lo}, {hi}] not contained in [{a}, {b}]")
    margin = (hi - lo) / (points - 1)
    if lo == a:
        lo = a + margin
    if hi == b:
        hi = b - margin
    if lo >= hi:
        raise RangeError("range collapses once boundary margins are applied")
    step = (hi - lo) / (points - 1)
    return [lo + i * step for i in range(points)]


def _default_order(method: str) -> int:
    return 500 if method == SPECTRAL else 50


def _sweep_point(task) -> SweepRecord:
    bp, p, method, n, tol, window, max_classes = task
    try:
        if method == SPECTRAL:
            est = entropy_spectral(bp, p, n, tol)
        else:
            est = entropy_laps(LorenzMap(bp, p, UPPER), n, window, max_classes)
        return SweepRecord(float(p), est, STATUS_OK)
    except NoRootFound:
        return SweepRecord(float(p), None, STATUS_NO_ROOT)
    except ResourceLimit:
        return SweepRecord(float(p), None, STATUS_RESOURCE_LIMIT)


def sweep(
    bp: BranchPair,
    p_min,
    p_max,
    points: int,
    method: str = SPECTRAL,
    *,
    n: int | None = None,
    tol: float = DEFAULT_TOL,
    window: int = DEFAULT_WINDOW,
    mode: str | None = None,
    workers: int | None = None,
    max_classes: int = DEFAULT_MAX_CLASSES,
) -> list:
    """Entropy records on an equally spaced grid of p values.

    Per-point failures are recorded in the record status and never abort
    the sweep.  ``workers`` > 1 runs points in a process pool; the output
    order is by p either way.
    """
    if method not in (SPECTRAL, LAPS):
        raise DomainError(f"unknown method {method!r}")
    if mode not in (None, "float", "exact"):
        raise DomainError(f"unknown mode {mode!r}")
    grid = _grid(bp, p_min, p_max, points)
    if n is None:
        n = _default_order(method)
    if mode is None:
        mode = "float" if method == SPECTRAL else "exact"
    if mode == "float":
        bp_run = bp.to_float()
        ps = [float(p) for p in grid]
    else:
        bp_run = bp.to_exact()
        ps = grid
    tasks = [(bp_run, p, method, n, tol, window, max_classes) for p in ps]
    if workers is not None and workers > 1:
        chunk = max(1, len(tasks) // (8 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_sweep_point, tasks, chunksize=chunk))
    else:
        records = [_sweep_point(t) for t in tasks]
    return records


def _ok_arrays(records):
    ok = [r for r in records if r.status == STATUS_OK]
    ps = np.array([r.p for r in ok])
    hs = np.array([r.estimate.entropy for r in ok])
    return ok, ps, hs


def detect_nonmonotonic(records, prominence_tol: float) -> list:
    """Dips and bumps of the entropy curve with depth >= prominence_tol.

    Returns features sorted by prominence, largest first; empty when the
    curve is monotone at the requested resolution.
    """
    if prominence_tol <= 0:
        raise DomainError("prominence tolerance must be positive")
    _, ps, hs = _ok_arrays(records)
    if len(ps) < 3:
        return []
    idx_axis = np.arange(len(ps))
    features = []
    for sign, direction in ((1.0, BUMP), (-1.0, DIP)):
        # rel_height=1.0 puts the feature edges at the full-prominence contour
        peaks, props = find_peaks(sign * hs, prominence=prominence_tol, width=0, rel_height=1.0)
        for idx in range(len(peaks)):
            lo = float(np.interp(props["left_ips"][idx], idx_axis, ps))
            hi = float(np.interp(props["right_ips"][idx], idx_axis, ps))
            features.append(
                NonMonotoneFeature(
                    p_low=lo,
                    p_high=hi,
                    prominence=float(props["prominences"][idx]),
                    direction=direction,
                )
            )
    features.sort(key=lambda f: (-f.prominence, f.p_low))
    return features


def continuity_modulus(records):
    """(largest |entropy step| between adjacent records, p midpoint where it occurs)."""
    _, ps, hs = _ok_arrays(records)
    if len(ps) < 2:
        raise InsufficientData("need at least two successful records")
    jumps = np.abs(np.diff(hs))
    i = int(np.argmax(jumps))
    return float(jumps[i]), float(0.5 * (ps[i] + ps[i + 1]))


def compare_methods(records_a, records_b, tol: float = 0.0):
    """(max, mean, arg-max-p) of |h_a - h_b| over records where both succeeded.

    The two sweeps must share the p grid (to within ``tol``).
    """
    if len(records_a) != len(records_b):
        raise GridMismatch(f"grid sizes differ: {len(records_a)} vs {len(records_b)}")
    diffs, ps = [], []
    for ra, rb in zip(records_a, records_b):
        if abs(ra.p - rb.p) > tol:
            raise GridMismatch(f"grids differ at p = {ra.p} vs {rb.p}")
        if ra.status == STATUS_OK and rb.status == STATUS_OK:
            diffs.append(abs(ra.estimate.entropy - rb.estimate.entropy))
            ps.append(ra.p)
    if not diffs:
        raise InsufficientData("no p value succeeded under both methods")
    diffs = np.array(diffs)
    i = int(np.argmax(diffs))
    return float(diffs[i]), float(diffs.mean()), float(ps[i])


def _max_error(records, fallback):
    errs = [r.estimate.error_bound for r in records if r.status == STATUS_OK]
    return max(errs) if errs else fallback


def cross_confirm_features(
    bp: BranchPair,
    records,
    features,
    *,
    prominence_tol: float,
    n: int = 50,
    window: int = DEFAULT_WINDOW,
    pad: int = 3,
    workers: int | None = None,
    max_classes: int = DEFAULT_MAX_CLASSES,
) -> list:
    """Keep only features the lap method reproduces on the feature's own sub-grid.

    For each candidate, the lap estimator is run on the sweep's p values
    covering the feature (padded by ``pad`` grid points) and must show a
    same-direction feature overlapping in p whose prominence matches within
    the two methods' combined error bounds.
    """
    ok, ps, _ = _ok_arrays(records)
    if len(ps) < 3 or not features:
        return []
    confirmed = []
    for feat in features:
        i_lo = max(0, int(np.searchsorted(ps, feat.p_low)) - pad)
        i_hi = min(len(ps) - 1, int(np.searchsorted(ps, feat.p_high)) + pad)
        if i_hi - i_lo < 2:
            continue
        sub = [Fraction(p) for p in ps[i_lo : i_hi + 1]]
        tasks = [
            (bp.to_exact(), p, LAPS, n, DEFAULT_TOL, window, max_classes) for p in sub
        ]
        if workers is not None and workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                lap_records = list(pool.map(_sweep_point, tasks))
        else:
            lap_records = [_sweep_point(t) for t in tasks]
        err = _max_error(ok[i_lo : i_hi + 1], DEFAULT_TOL) + _max_error(lap_records, 0.0)
        floor = max(prominence_tol - err, 16 * DEFAULT_TOL)
        lap_features = detect_nonmonotonic(lap_records, floor)
        for lap_feat in lap_features:
            if (
                lap_feat.direction == feat.direction
                and lap_feat.p_low <= feat.p_high
                and feat.p_low <= lap_feat.p_high
                and abs(lap_feat.prominence - feat.prominence) <= err
            ):
                confirmed.append(feat)
                break
    return confirmed


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(records, path_or_file) -> None:
    """Write sweep records with the fixed header, 17 significant digits, LF endings."""
    if hasattr(path_or_file, "write"):
        _write_csv_stream(records, path_or_file)
        return
    with open(path_or_file, "w", encoding="utf-8", newline="") as handle:
        _write_csv_stream(records, handle)


def _write_csv_stream(records, handle) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for rec in records:
        est = rec.estimate
        writer.writerow(
            [
                _csv_cell(rec.p),
                _csv_cell(est.entropy if est else None),
                _csv_cell(est.gamma if est else None),
                _csv_cell(est.method if est else None),
                _csv_cell(est.order if est else None),
                _csv_cell(est.error_bound if est else None),
                rec.status,
            ]
        )


def csv_text(records) -> str:
    buffer = io.StringIO()
    _write_csv_stream(records, buffer)
    return buffer.getvalue()
