"""Laplacian spectra of 1/2/3-dimensional boxes.

Enumeration of eigenvalues with multiplicities, gap statistics, the
spectral-jump ratio scan, the sums-of-three-squares gap audit, and a
log-log growth-exponent fit.  Eigenvalues of the (negative) Laplacian on
a box with side lengths pi*a_j are sum_j (l_j/a_j)^2; the admissible
integer frequencies l_j depend on the boundary condition.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConfigError,
    NumericalFailure,
    PreconditionError,
    ResourceBudgetError,
)

BOUNDARY_CONDITIONS = ("dirichlet", "neumann", "periodic")
PERIODIC_SCALINGS = ("paper", "standard")

# memory budget: lattice cells materialized per enumeration (count table for
# the exact path, full candidate grid for the floating path)
DEFAULT_BUDGET = 100_000_000

# two floating eigenvalues merge when they differ by < MERGE_TOL*(1+lambda)
MERGE_TOL = 1e-9


@dataclass(frozen=True)
class BoxDomain:
    """A box (0, s_1) x ... x (0, s_dim) with one boundary condition on all faces."""

    dim: int
    sides: tuple[float, ...] | None = None
    bc: str = "neumann"

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ConfigError(f"dim must be 1, 2 or 3, got {self.dim}")
        if self.bc not in BOUNDARY_CONDITIONS:
            raise ConfigError(f"bc must be one of {BOUNDARY_CONDITIONS}, got {self.bc!r}")
        sides = self.sides
        if sides is None:
            sides = (math.pi,) * self.dim
        sides = tuple(float(s) for s in sides)
        if len(sides) != self.dim:
            raise ConfigError(f"expected {self.dim} side lengths, got {len(sides)}")
        if any(not (s > 0) for s in sides):
            raise ConfigError("side lengths must be positive")
        object.__setattr__(self, "sides", sides)

    @property
    def axis_scales(self) -> tuple[float, ...]:
        """a_j such that side_j = pi*a_j."""
        return tuple(s / math.pi for s in self.sides)

    @property
    def is_pi_box(self) -> bool:
        """True when every side equals pi exactly (integer eigenvalues)."""
        return all(s == math.pi for s in self.sides)


@dataclass(frozen=True)
class Spectrum:
    """Ascending distinct eigenvalues with exact multiplicities, complete up to cutoff."""

    eigenvalues: np.ndarray
    multiplicities: np.ndarray
    cutoff: float
    exact: bool = False
    _cum: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        eigs = np.asarray(self.eigenvalues, dtype=float)
        mults = np.asarray(self.multiplicities, dtype=np.int64)
        if eigs.ndim != 1 or mults.shape != eigs.shape:
            raise ConfigError("eigenvalues and multiplicities must be 1-D of equal length")
        if eigs.size and np.any(np.diff(eigs) <= 0):
            raise ConfigError("eigenvalues must be strictly ascending")
        if np.any(mults < 1):
            raise ConfigError("multiplicities must be positive")
        eigs.setflags(write=False)
        mults.setflags(write=False)
        cum = np.cumsum(mults)
        cum.setflags(write=False)
        object.__setattr__(self, "eigenvalues", eigs)
        object.__setattr__(self, "multiplicities", mults)
        object.__setattr__(self, "_cum", cum)

    def __len__(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def total_count(self) -> int:
        """Number of eigenvalues counted with multiplicity."""
        return int(self._cum[-1]) if len(self) else 0

    def entries(self) -> list[tuple[float, int]]:
        return list(zip(self.eigenvalues.tolist(), self.multiplicities.tolist()))

    def count_leq(self, x: float) -> int:
        """Counting function N(x): eigenvalues <= x with multiplicity."""
        i = int(np.searchsorted(self.eigenvalues, x, side="right"))
        return int(self._cum[i - 1]) if i else 0

    def to_csv(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write("lambda,multiplicity\n")
            for lam, m in zip(self.eigenvalues, self.multiplicities):
                fh.write(f"{lam:.17g},{int(m)}\n")


def spectrum_from_csv(path: str) -> Spectrum:
    eigs, mults = [], []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "lambda,multiplicity":
            raise ConfigError(f"unexpected spectrum CSV header: {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            lam, m = line.split(",")
            eigs.append(float(lam))
            mults.append(int(m))
    cutoff = eigs[-1] if eigs else 0.0
    return Spectrum(np.array(eigs), np.array(mults, dtype=np.int64), cutoff=cutoff)


def _axis_terms(domain: BoxDomain, axis: int, cutoff: float, periodic_scaling: str):
    """Values and weights of the single-axis frequency contributions <= cutoff.

    Returns (values, weights): values_i = (step*l_i/a)^2 ascending, weights_i
    the number of signed frequencies collapsing onto that value.
    """
    a = domain.axis_scales[axis]
    bc = domain.bc
    step = 1.0
    if bc == "periodic" and periodic_scaling == "standard":
        step = 2.0
    if cutoff < 0:
        return np.array([]), np.array([], dtype=np.int64)
    lmax = int(math.floor(a * math.sqrt(cutoff) / step + 1e-12))
    if bc == "dirichlet":
        ls = np.arange(1, lmax + 1, dtype=np.int64)
        weights = np.ones_like(ls)
    elif bc == "neumann":
        ls = np.arange(0, lmax + 1, dtype=np.int64)
        weights = np.ones_like(ls)
    else:  # periodic: +-l collapse onto one value
        ls = np.arange(0, lmax + 1, dtype=np.int64)
        weights = np.where(ls > 0, 2, 1).astype(np.int64)
    vals = (step * ls / a) ** 2
    keep = vals <= cutoff
    return vals[keep], weights[keep]


def _axis_int_terms(domain: BoxDomain, axis: int, limit: int, periodic_scaling: str):
    """Integer variant of _axis_terms for pi-sided boxes: values are exact ints."""
    vals, weights = _axis_terms(domain, axis, float(limit), periodic_scaling)
    ivals = np.rint(vals).astype(np.int64)
    return ivals, weights


def _merge_close(values: np.ndarray, weights: np.ndarray):
    """Sort and merge values differing by < MERGE_TOL*(1+value); sums weights."""
    order = np.argsort(values, kind="stable")
    v = values[order]
    w = weights[order]
    if v.size == 0:
        return v, w
    boundaries = np.flatnonzero(np.diff(v) >= MERGE_TOL * (1.0 + v[:-1])) + 1
    starts = np.concatenate(([0], boundaries))
    merged_v = v[starts]
    merged_w = np.add.reduceat(w, starts)
    return merged_v, merged_w.astype(np.int64)


def enumerate_spectrum(
    domain: BoxDomain,
    cutoff: float,
    *,
    periodic_scaling: str = "paper",
    budget: int = DEFAULT_BUDGET,
    threads: int | None = None,
) -> Spectrum:
    """All Laplacian eigenvalues of the box <= cutoff, with multiplicities.

    pi-sided boxes take an exact integer-arithmetic path (a counting table
    folded axis by axis); general sides are enumerated in floating point and
    merged at relative width 1e-9.  Requests that would materialize more than
    `budget` lattice cells raise ResourceBudgetError instead of truncating.
    """
    if periodic_scaling not in PERIODIC_SCALINGS:
        raise ConfigError(f"periodic_scaling must be one of {PERIODIC_SCALINGS}")
    if not (cutoff >= 0) or not math.isfinite(cutoff):
        raise ConfigError(f"cutoff must be finite and >= 0, got {cutoff}")
    if budget <= 0:
        raise ConfigError("budget must be positive")

    if domain.is_pi_box:
        limit = int(math.floor(cutoff + 1e-12))
        cells = limit + 1
        if cells > budget:
            raise ResourceBudgetError(
                f"enumeration needs a table of {cells} cells, over the budget of "
                f"{budget} lattice cells; raise `budget` to allow it"
            )
        counts = None
        for axis in range(domain.dim):
            vals, weights = _axis_int_terms(domain, axis, limit, periodic_scaling)
            if counts is None:
                counts = np.zeros(cells, dtype=np.int64)
                counts[vals] = weights
                continue
            folded = np.zeros(cells, dtype=np.int64)
            for v, w in zip(vals.tolist(), weights.tolist()):
                # folded[n] += w * counts[n - v] for all n >= v
                folded[v:] += w * counts[: cells - v]
            counts = folded
        eigs = np.flatnonzero(counts)
        spec = Spectrum(
            eigs.astype(float), counts[eigs], cutoff=float(cutoff), exact=True
        )
        return spec

    axes = [_axis_terms(domain, ax, cutoff, periodic_scaling) for ax in range(domain.dim)]
    lens = [len(v) for v, _ in axes]
    total = 1
    for n in lens:
        total *= n
    if total > budget:
        raise ResourceBudgetError(
            f"enumeration visits {total} lattice points, over the budget of "
            f"{budget} lattice cells; raise `budget` to allow it"
        )
    if total == 0:
        return Spectrum(np.array([]), np.array([], dtype=np.int64), cutoff=float(cutoff))

    if domain.dim == 1:
        v, w = axes[0]
        mv, mw = _merge_close(v.astype(float), w)
        return Spectrum(mv, mw, cutoff=float(cutoff))

    # fold trailing axes into one value/weight grid, then stream axis-0 slabs
    tv, tw = axes[-1]
    for v, w in reversed(axes[1:-1]):
        tv = (v[:, None] + tv[None, :]).ravel()
        tw = (w[:, None] * tw[None, :]).ravel()
        keep = tv <= cutoff
        tv, tw = tv[keep], tw[keep]
    v0, w0 = axes[0]

    def slab(i: int):
        vals = v0[i] + tv
        keep = vals <= cutoff
        return vals[keep], w0[i] * tw[keep]

    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(slab, range(len(v0))))
    else:
        parts = [slab(i) for i in range(len(v0))]
    values = np.concatenate([p[0] for p in parts])
    weights = np.concatenate([p[1] for p in parts]).astype(np.int64)
    mv, mw = _merge_close(values, weights)
    return Spectrum(mv, mw, cutoff=float(cutoff))


@dataclass(frozen=True)
class GapReport:
    """Largest spacing of a spectrum plus gap histogram and running-max trend."""

    max_gap: float
    witness: tuple[float, float]
    gap_histogram: list[tuple[float, int]]
    sup_trend: list[tuple[float, float]]

    def to_json_dict(self) -> dict:
        return {
            "max_gap": self.max_gap,
            "witness": [self.witness[0], self.witness[1]],
            "histogram": [[g, c] for g, c in self.gap_histogram],
            "sup_trend": [[c, g] for c, g in self.sup_trend],
        }

    def to_json(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=1, sort_keys=True)
            fh.write("\n")


def _geometric_checkpoints(cutoff: float) -> list[float]:
    # 1, 2, 4, ... then the cutoff itself
    cps = []
    c = 1.0
    while c < cutoff:
        cps.append(c)
        c *= 2.0
    cps.append(float(cutoff))
    return cps


def gap_stats(spectrum: Spectrum) -> GapReport:
    """Max gap between consecutive distinct eigenvalues, with witness and trend."""
    if len(spectrum) < 2:
        raise PreconditionError("gap statistics need a spectrum with >= 2 entries")
    eigs = spectrum.eigenvalues
    diffs = np.diff(eigs)
    i = int(np.argmax(diffs))  # first maximal gap
    witness = (float(eigs[i]), float(eigs[i + 1]))
    hist_keys = np.round(diffs, 9)
    uniq, counts = np.unique(hist_keys, return_counts=True)
    histogram = [(float(g), int(c)) for g, c in zip(uniq, counts)]
    runmax = np.maximum.accumulate(diffs)
    right = eigs[1:]
    trend = []
    for cp in _geometric_checkpoints(spectrum.cutoff):
        j = int(np.searchsorted(right, cp, side="right")) - 1
        trend.append((cp, float(runmax[j]) if j >= 0 else 0.0))
    return GapReport(float(diffs[i]), witness, histogram, trend)


@dataclass(frozen=True)
class JumpQuery:
    """Parameters of the spectral-jump ratio scan over mu_n = 1 + nu*lambda_n."""

    theta: float = 0.0
    lip: float = 1.0
    cconst: float = 1.0
    nu: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.theta < 1.0):
            raise ConfigError(f"theta must lie in [0, 1), got {self.theta}")
        for name in ("lip", "cconst", "nu"):
            if not (getattr(self, name) > 0):
                raise ConfigError(f"{name} must be positive")


@dataclass(frozen=True)
class JumpScanResult:
    best_n: int
    best_ratio: float
    satisfied: bool
    best_pair: tuple[float, float]
    ratio_trend: list[tuple[float, float]]


def jump_condition_scan(spectrum: Spectrum, query: JumpQuery) -> JumpScanResult:
    """Maximize (mu_{n+1}-mu_n)/(mu_{n+1}^theta + mu_n^theta) over the spectrum.

    `best_n` is the 1-based position, counted with multiplicity, of the left
    endpoint of the winning gap (smallest such position on ties).  The
    condition is satisfied when the best ratio exceeds cconst*lip.
    """
    if len(spectrum) < 2:
        raise PreconditionError("jump scan needs a spectrum with >= 2 entries")
    mu = 1.0 + query.nu * spectrum.eigenvalues
    ratios = np.diff(mu) / (mu[1:] ** query.theta + mu[:-1] ** query.theta)
    j = int(np.argmax(ratios))
    cum = np.cumsum(spectrum.multiplicities)
    best_n = int(cum[j])
    runmax = np.maximum.accumulate(ratios)
    right = mu[1:]
    trend = []
    for cp in _geometric_checkpoints(float(mu[-1])):
        idx = int(np.searchsorted(right, cp, side="right")) - 1
        trend.append((cp, float(runmax[idx]) if idx >= 0 else 0.0))
    return JumpScanResult(
        best_n=best_n,
        best_ratio=float(ratios[j]),
        satisfied=bool(ratios[j] > query.cconst * query.lip),
        best_pair=(float(mu[j]), float(mu[j + 1])),
        ratio_trend=trend,
    )


def _sum_of_three_squares_sieve(limit: int) -> np.ndarray:
    """Boolean table: n <= limit representable as l1^2+l2^2+l3^2, l_j >= 0."""
    roots = np.arange(math.isqrt(limit) + 1, dtype=np.int64)
    squares = roots * roots
    two = np.zeros(limit + 1, dtype=bool)
    pair = (squares[:, None] + squares[None, :]).ravel()
    two[pair[pair <= limit]] = True
    three = np.zeros(limit + 1, dtype=bool)
    for s in squares.tolist():
        three[s:] |= two[: limit + 1 - s]
    return three


def _excluded_closed_form(limit: int) -> np.ndarray:
    """Boolean table of the 4^a*(8b+7) integers <= limit."""
    m = np.arange(limit + 1, dtype=np.int64)
    while True:
        div = (m > 0) & (m % 4 == 0)
        if not div.any():
            break
        m = np.where(div, m // 4, m)
    return m % 8 == 7


@dataclass(frozen=True)
class ThreeSquareAudit:
    excluded: np.ndarray
    max_gap: int
    gap_witness: tuple[int, int]
    max_excluded_run: int


def three_square_gap_audit(limit: int) -> ThreeSquareAudit:
    """Enumerate non-sums-of-three-squares <= limit and audit the induced gaps.

    The sieve enumeration is cross-checked against the 4^a(8b+7) closed form;
    any mismatch raises NumericalFailure.  max_gap is the largest spacing
    between consecutive representable integers, max_excluded_run the longest
    run of consecutive excluded integers.
    """
    if limit < 8:
        raise PreconditionError(f"audit needs limit >= 8, got {limit}")
    representable = _sum_of_three_squares_sieve(limit)
    closed = _excluded_closed_form(limit)
    if not np.array_equal(~representable, closed):
        bad = np.flatnonzero((~representable) != closed)
        raise NumericalFailure(
            "sieve and 4^a(8b+7) closed form disagree", witness=int(bad[0])
        )
    rep_values = np.flatnonzero(representable)
    gaps = np.diff(rep_values)
    i = int(np.argmax(gaps))
    excluded = np.flatnonzero(~representable)
    if excluded.size:
        # longest run of consecutive excluded integers
        breaks = np.flatnonzero(np.diff(excluded) != 1)
        starts = np.concatenate(([0], breaks + 1))
        ends = np.concatenate((breaks, [excluded.size - 1]))
        max_run = int(np.max(ends - starts + 1))
    else:
        max_run = 0
    return ThreeSquareAudit(
        excluded=excluded,
        max_gap=int(gaps[i]),
        gap_witness=(int(rep_values[i]), int(rep_values[i + 1])),
        max_excluded_run=max_run,
    )


@dataclass(frozen=True)
class WeylFit:
    exponent: float
    residual: float
    expected: float
    n_used: int


def weyl_fit(spectrum: Spectrum, dim: int) -> WeylFit:
    """Least-squares slope of log(lambda_n) against log(n) over the upper half.

    The ordered eigenvalue sequence (with multiplicity) of a dim-dimensional
    box grows like n^(2/dim); the fitted exponent should approach that.
    """
    lam = np.repeat(spectrum.eigenvalues, spectrum.multiplicities)
    total = lam.size
    if total < 100:
        raise PreconditionError(
            f"growth fit needs >= 100 eigenvalues with multiplicity, got {total}"
        )
    n = np.arange(1, total + 1, dtype=float)
    lo = total // 2
    lam_u, n_u = lam[lo:], n[lo:]
    if np.any(lam_u <= 0):
        raise PreconditionError("upper half of the spectrum must be positive for the log fit")
    slope, intercept = np.polyfit(np.log(n_u), np.log(lam_u), 1)
    fitted = slope * np.log(n_u) + intercept
    residual = float(np.sqrt(np.mean((np.log(lam_u) - fitted) ** 2)))
    return WeylFit(
        exponent=float(slope), residual=residual, expected=2.0 / dim, n_used=int(n_u.size)
    )
