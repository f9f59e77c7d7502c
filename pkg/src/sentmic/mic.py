"""Grid-search dependence estimation for paired series.

The estimate works on axis-aligned grids: bin both coordinates, compute the
mutual information of the binned pair in bits, normalize by
log2(min(x_bins, y_bins)), and take the maximum over every grid shape (x, y)
with x, y >= 2 and x * y below a sample-size budget B(n) = floor(n**0.6).

Searching all cut placements is exponential, so the per-shape search is
heuristic: equipartition one axis into rank bins (ties share a bin), then
place the other axis's cuts by dynamic programming over clump boundaries;
run both orientations and keep the better score.  brute_force_max_mi is the
exact reference for small samples and is what the heuristic is tested
against.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateRangeError,
    OracleLimitError,
    TooFewPointsError,
)
from .timeseries import PairedSeries

# tiny negative MI from float cancellation is reported as exactly 0
NEG_EPS = 1e-12

# the exhaustive search enumerates C(n-1, x-1) * C(n-1, y-1) grids
ORACLE_MAX_POINTS = 20

# cap on DP cut candidates: at most this many clumps per requested column;
# never binds for n <= 30, so small-sample results stay exhaustive over clumps
CLUMP_FACTOR = 15


def b_of_n(n: int) -> int:
    """Grid budget floor(n**0.6), clamped so the 2x2 grid is always in reach.

    The floor is taken in integer arithmetic (largest k with k**5 <= n**3),
    so exact powers such as 32**0.6 == 8 don't depend on libm rounding.
    """
    if n < 4:
        raise TooFewPointsError(f"need at least 4 points, got {n}")
    k = int(n**0.6)
    while k**5 > n**3:
        k -= 1
    while (k + 1) ** 5 <= n**3:
        k += 1
    return max(k, 5)


# ---------------------------------------------------------------------------
# histograms and mutual information


@dataclass(frozen=True)
class GridPartition:
    """Axis-aligned grid given by cut positions (either tuple may be empty).

    Bins are left-open, right-closed: a value equal to a cut lands in the
    lower bin; the first bin is (-inf, c0] and the last (c_last, +inf).
    """

    x_cuts: tuple[float, ...]
    y_cuts: tuple[float, ...]

    def __post_init__(self):
        for name in ("x_cuts", "y_cuts"):
            cuts = tuple(float(c) for c in getattr(self, name))
            if any(not math.isfinite(c) for c in cuts):
                raise ValueError(f"{name} must be finite")
            if any(a >= b for a, b in zip(cuts, cuts[1:])):
                raise ValueError(f"{name} must strictly increase")
            object.__setattr__(self, name, cuts)


@dataclass(frozen=True, eq=False)
class JointHistogram:
    """Cell counts of a paired sample on a grid; counts[i, j] is x-bin i, y-bin j."""

    counts: np.ndarray
    n: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 2:
            raise ValueError("counts must be 2-d")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        if int(counts.sum()) != self.n:
            raise ValueError(f"counts sum to {int(counts.sum())}, expected n={self.n}")
        if self.n < 1:
            raise ValueError("histogram needs at least one point")
        object.__setattr__(self, "counts", counts)


def histogram(pairs: PairedSeries, grid: GridPartition) -> JointHistogram:
    """Bin a paired sample on a grid (left-open, right-closed bins)."""
    xi = np.searchsorted(np.asarray(grid.x_cuts), pairs.x, side="left")
    yi = np.searchsorted(np.asarray(grid.y_cuts), pairs.y, side="left")
    nx = len(grid.x_cuts) + 1
    ny = len(grid.y_cuts) + 1
    flat = np.bincount(xi * ny + yi, minlength=nx * ny)
    return JointHistogram(counts=flat.reshape(nx, ny), n=len(pairs))


def _mi_from_counts(counts: np.ndarray, n: int) -> float:
    p = counts / float(n)
    px = p.sum(axis=1, keepdims=True)
    py = p.sum(axis=0, keepdims=True)
    mask = p > 0.0
    total = float(np.sum(p[mask] * np.log2(p[mask] / (px * py)[mask])))
    if -NEG_EPS < total < 0.0:
        total = 0.0
    return total


def mutual_information(hist: JointHistogram) -> float:
    """Mutual information of the binned pair, in bits; 0*log(0) terms are 0."""
    return _mi_from_counts(np.asarray(hist.counts, dtype=float), hist.n)


def normalized_mi(value: float, x: int, y: int) -> float:
    """value / log2(min(x, y)), clamped into [0, 1]."""
    if x < 2 or y < 2:
        raise ValueError(f"grid dims must be >= 2, got ({x}, {y})")
    scaled = value / math.log2(min(x, y))
    return min(max(scaled, 0.0), 1.0)


# ---------------------------------------------------------------------------
# heuristic per-shape search


def _clump_sizes(sorted_vals: np.ndarray) -> np.ndarray:
    """Sizes of runs of equal values in an ascending array."""
    n = len(sorted_vals)
    change = np.empty(n, dtype=bool)
    change[0] = True
    np.not_equal(sorted_vals[1:], sorted_vals[:-1], out=change[1:])
    starts = np.flatnonzero(change)
    return np.diff(np.append(starts, n))


def _equipartition_sizes(group_sizes: np.ndarray, q: int) -> list[int]:
    """Greedily merge ordered tie groups into at most q consecutive bins.

    Targets n/q points per bin, re-estimating the target from what remains
    whenever a bin closes; a tie group is never split across bins.
    """
    n = int(group_sizes.sum())
    sizes: list[int] = []
    curr = 0
    consumed = 0
    desired = n / q
    for g in group_sizes:
        g = int(g)
        if curr > 0 and abs(curr + g - desired) >= abs(curr - desired):
            sizes.append(curr)
            curr = 0
            desired = (n - consumed) / (q - len(sizes))
        curr += g
        consumed += g
    sizes.append(curr)
    return sizes


def _row_labels(values: np.ndarray, q: int) -> np.ndarray:
    """Equipartition values into at most q rank bins; returns per-point labels."""
    order = np.argsort(values, kind="stable")
    groups = _clump_sizes(values[order])
    sizes = _equipartition_sizes(groups, q)
    labels_sorted = np.repeat(np.arange(len(sizes)), sizes)
    labels = np.empty(len(values), dtype=np.int64)
    labels[order] = labels_sorted
    return labels


def _row_clump_sizes(cols_sorted: np.ndarray, rows_sorted: np.ndarray) -> np.ndarray:
    """Sizes of maximal column-order runs whose points share one row bin.

    Tied column values never split across clumps; a tie group touching more
    than one row becomes a clump of its own.  An optimal column partition
    only ever cuts at these boundaries (the score is convex in a cut moving
    through a clump), so restricting the DP to them loses nothing.
    """
    n = len(cols_sorted)
    new_tie = np.empty(n, dtype=bool)
    new_tie[0] = True
    np.not_equal(cols_sorted[1:], cols_sorted[:-1], out=new_tie[1:])
    tie_id = np.cumsum(new_tie) - 1
    n_ties = int(tie_id[-1]) + 1
    tie_sizes = np.diff(np.append(np.flatnonzero(new_tie), n))

    low = np.full(n_ties, np.iinfo(np.int64).max, dtype=np.int64)
    high = np.full(n_ties, -1, dtype=np.int64)
    np.minimum.at(low, tie_id, rows_sorted)
    np.maximum.at(high, tie_id, rows_sorted)
    # mixed tie groups get fresh negative labels so they never merge
    label = np.where(low == high, low, -1 - np.arange(n_ties))

    boundary = np.empty(n_ties, dtype=bool)
    boundary[0] = True
    np.not_equal(label[1:], label[:-1], out=boundary[1:])
    group_starts = np.concatenate(([0], np.cumsum(tie_sizes)[:-1]))
    return np.diff(np.append(group_starts[boundary], n))


def _xlogx(arr: np.ndarray) -> np.ndarray:
    out = np.zeros_like(arr, dtype=float)
    nz = arr > 0
    out[nz] = arr[nz] * np.log2(arr[nz])
    return out


def _best_mi_by_columns(
    col_values: np.ndarray,
    row_labels: np.ndarray,
    n_rows: int,
    k_max: int,
    clump_cap: int,
) -> np.ndarray:
    """Best MI (bits) using 2..k_max columns on col_values with rows fixed.

    Returns res[l] for l in 0..k_max where res[l] is the best score over at
    most l columns (so res is non-decreasing); res[0] = res[1] = 0.  Cut
    candidates are the row-change boundaries of col_values (see
    _row_clump_sizes), merged down to at most clump_cap superclumps when
    there are more.
    """
    n = len(col_values)
    order = np.argsort(col_values, kind="stable")
    rows_in_col_order = row_labels[order]
    clumps = _row_clump_sizes(col_values[order], rows_in_col_order)
    if len(clumps) > clump_cap:
        clumps = np.asarray(_equipartition_sizes(clumps, clump_cap))
    m = len(clumps)

    # cum[j, r]: points with row label r among the first j clumps
    clump_of_point = np.repeat(np.arange(m), clumps)
    per_clump = np.zeros((m, n_rows), dtype=np.int64)
    np.add.at(per_clump, (clump_of_point, rows_in_col_order), 1)
    cum = np.zeros((m + 1, n_rows), dtype=np.int64)
    np.cumsum(per_clump, axis=0, out=cum[1:])
    totals = cum.sum(axis=1)

    # g[s, t]: column score of the span (s, t] in the additive decomposition
    # I = H(rows) + sum_cols (1/n) sum_r n_cr log2(n_cr / n_c)
    acc = np.zeros((m + 1, m + 1), dtype=float)
    for r in range(n_rows):
        c = cum[:, r].astype(float)
        acc += _xlogx(c[None, :] - c[:, None])
    span = totals[None, :].astype(float) - totals[:, None].astype(float)
    g = (acc - _xlogx(span)) / n
    invalid = np.tril(np.ones((m + 1, m + 1), dtype=bool))
    g[invalid] = -np.inf

    h_rows = -g[0, m]  # one column over everything scores exactly -H(rows)

    res = np.zeros(k_max + 1)
    best = g[0].copy()  # best[t]: score of the single column (0, t]
    for l in range(2, k_max + 1):
        if l > m:
            res[l] = res[l - 1]
            continue
        best = np.max(best[:, None] + g, axis=0)
        value = h_rows + best[m]
        if -NEG_EPS < value < 0.0:
            value = 0.0
        res[l] = max(res[l - 1], value)
    return res


def _oriented_scores(
    col_values: np.ndarray, row_values: np.ndarray, q: int, k_max: int
) -> np.ndarray:
    labels = _row_labels(row_values, q)
    n_rows = int(labels.max()) + 1
    return _best_mi_by_columns(
        col_values, labels, n_rows, k_max, CLUMP_FACTOR * k_max
    )


def max_mi_for_dims(pairs: PairedSeries, x: int, y: int) -> float:
    """Heuristic max mutual information (bits) over x-by-y grids.

    Never exceeds log2(min(x, y)) beyond float dust, and never beats
    brute_force_max_mi, which searches the same cut family exhaustively.
    """
    if x < 2 or y < 2:
        raise ValueError(f"grid dims must be >= 2, got ({x}, {y})")
    n = len(pairs)
    if n < max(x, y):
        raise TooFewPointsError(f"{n} points cannot fill a {x}x{y} grid")
    a = _oriented_scores(pairs.x, pairs.y, q=y, k_max=x)[x]
    b = _oriented_scores(pairs.y, pairs.x, q=x, k_max=y)[y]
    return max(float(a), float(b))


# ---------------------------------------------------------------------------
# exhaustive reference search


def brute_force_max_mi(pairs: PairedSeries, x: int, y: int) -> float:
    """Exact max MI over all placements of x-1 and y-1 cuts at value gaps.

    Cut candidates are the midpoints between consecutive distinct sorted
    values on each axis (equivalently, the gaps).  Exponential in the worst
    case, so samples are capped at ORACLE_MAX_POINTS points.
    """
    if x < 2 or y < 2:
        raise ValueError(f"grid dims must be >= 2, got ({x}, {y})")
    n = len(pairs)
    if n > ORACLE_MAX_POINTS:
        raise OracleLimitError(
            f"exhaustive search is capped at {ORACLE_MAX_POINTS} points, got {n}"
        )
    if n < max(x, y):
        raise TooFewPointsError(f"{n} points cannot fill a {x}x{y} grid")

    _, ix = np.unique(pairs.x, return_inverse=True)
    _, iy = np.unique(pairs.y, return_inverse=True)
    dx = int(ix.max()) + 1
    dy = int(iy.max()) + 1
    fine = np.zeros((dx, dy), dtype=np.int64)
    np.add.at(fine, (ix, iy), 1)

    # fewer distinct values than requested bins: use every available gap
    kx = min(x - 1, dx - 1)
    ky = min(y - 1, dy - 1)

    col_cum = np.concatenate(
        [np.zeros((1, dy), dtype=np.int64), np.cumsum(fine, axis=0)]
    )
    best = 0.0
    for x_bounds in itertools.combinations(range(1, dx), kx):
        xb = (0, *x_bounds, dx)
        cols = col_cum[list(xb[1:]), :] - col_cum[list(xb[:-1]), :]
        row_cum = np.concatenate(
            [np.zeros((len(cols), 1), dtype=np.int64), np.cumsum(cols, axis=1)],
            axis=1,
        )
        for y_bounds in itertools.combinations(range(1, dy), ky):
            yb = (0, *y_bounds, dy)
            counts = row_cum[:, list(yb[1:])] - row_cum[:, list(yb[:-1])]
            value = _mi_from_counts(counts.astype(float), n)
            if value > best:
                best = value
    return best


# ---------------------------------------------------------------------------
# the full estimator


@dataclass(frozen=True, eq=False)
class CharacteristicMatrix:
    """Normalized scores for every admissible grid shape."""

    entries: dict[tuple[int, int], float]
    n: int
    b: int
    inclusive: bool

    def __post_init__(self):
        if not self.entries:
            raise ValueError("characteristic matrix cannot be empty")
        for (gx, gy), value in self.entries.items():
            if gx < 2 or gy < 2:
                raise ValueError(f"bad grid shape ({gx}, {gy})")
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"entry ({gx}, {gy}) = {value} outside [0, 1]")

    def max_entry(self) -> tuple[float, tuple[int, int]]:
        """Largest score; ties go to the lexicographically smallest shape."""
        best_shape = None
        best = -1.0
        for shape in sorted(self.entries):
            if self.entries[shape] > best:
                best = self.entries[shape]
                best_shape = shape
        return best, best_shape


@dataclass(frozen=True, eq=False)
class MicResult:
    mic: float
    best_x: int
    best_y: int
    b: int
    n: int
    matrix: CharacteristicMatrix

    def __post_init__(self):
        value, shape = self.matrix.max_entry()
        if value != self.mic or shape != (self.best_x, self.best_y):
            raise ValueError("result is inconsistent with its matrix")


def mic(pairs: PairedSeries, *, inclusive_b: bool = False) -> MicResult:
    """Maximal normalized grid score over all admissible grid shapes.

    Admissible shapes have x, y >= 2 and x * y < b_of_n(n); inclusive_b
    relaxes the budget comparison to <=.  Ties on the maximum report the
    lexicographically smallest (x, y).
    """
    n = len(pairs)
    budget = b_of_n(n)  # raises on n < 4
    if np.all(pairs.x == pairs.x[0]):
        raise DegenerateRangeError("x values are constant")
    if np.all(pairs.y == pairs.y[0]):
        raise DegenerateRangeError("y values are constant")

    limit = budget if inclusive_b else budget - 1
    raw: dict[tuple[int, int], float] = {}
    for q in range(2, limit // 2 + 1):
        k_max = limit // q
        if k_max < 2:
            break
        scores_a = _oriented_scores(pairs.x, pairs.y, q=q, k_max=k_max)
        scores_b = _oriented_scores(pairs.y, pairs.x, q=q, k_max=k_max)
        for l in range(2, k_max + 1):
            key_a = (l, q)
            raw[key_a] = max(raw.get(key_a, -np.inf), float(scores_a[l]))
            key_b = (q, l)
            raw[key_b] = max(raw.get(key_b, -np.inf), float(scores_b[l]))

    entries = {
        (gx, gy): normalized_mi(value, gx, gy) for (gx, gy), value in raw.items()
    }
    matrix = CharacteristicMatrix(
        entries=entries, n=n, b=budget, inclusive=inclusive_b
    )
    value, (gx, gy) = matrix.max_entry()
    return MicResult(mic=value, best_x=gx, best_y=gy, b=budget, n=n, matrix=matrix)
