"""Windowed compressions of multiplication operators in the box eigenbasis.

A band-limited real multiplier h acts on L2 of a box; compressing the
mean-free part of that action to the eigenmodes inside a spectral window
(lambda-k, lambda+k] gives a finite symmetric matrix.  Its spectral norm,
measured against the H2 norm of h, is the effective epsilon of the spatial
averaging inequality for that window.  The scan walks every wide-enough
spectral gap and reports the best window found.

Matrix entries are computed in closed form from the coefficient table via
the per-axis product rule for cosines, so the only floating-point error is
the final summation; a quadrature route exists in the test suite as an
independent oracle.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .dense_eig import spectral_norm
from .errors import ConfigError, PreconditionError, ResourceBudgetError
from .lattice_spectrum import BoxDomain, enumerate_spectrum

MULTIPLIER_BCS = ("neumann", "periodic")


def _normalize_coeffs(dim: int, coeffs) -> dict:
    if isinstance(coeffs, dict):
        items = list(coeffs.items())
    else:
        items = []
        for entry in coeffs:
            entry = tuple(entry)
            if len(entry) == 2 and isinstance(entry[0], (tuple, list)):
                items.append((tuple(entry[0]), entry[1]))
            elif len(entry) == dim + 1:
                items.append((tuple(entry[:dim]), entry[dim]))
            else:
                raise ConfigError(
                    f"coefficient row {entry!r} is neither (freq-tuple, value) "
                    f"nor {dim} frequencies plus a value"
                )
    table: dict = {}
    for freq, value in items:
        if len(freq) != dim:
            raise ConfigError(f"frequency {freq!r} does not have {dim} axes")
        f = []
        for x in freq:
            if int(x) != x or x < 0:
                raise ConfigError(f"frequencies must be nonnegative integers, got {x}")
            f.append(int(x))
        v = float(value)
        if not math.isfinite(v):
            raise ConfigError(f"coefficient at {tuple(f)} is not finite")
        key = tuple(f)
        table[key] = table.get(key, 0.0) + v
    return {f: v for f, v in table.items() if v != 0.0}


@dataclass(frozen=True)
class Multiplier:
    """Band-limited real multiplier given by a cosine coefficient table.

    h(x) = sum over table entries c_f * prod_j cos(f_j x_j / a_j).  The
    zero-frequency coefficient is the mean of h.  Only Neumann and periodic
    boxes carry the eigenbases this table interacts with cleanly.
    """

    domain: BoxDomain
    coeffs: dict

    def __post_init__(self):
        if self.domain.bc not in MULTIPLIER_BCS:
            raise ConfigError(
                f"multipliers need a neumann or periodic box, got {self.domain.bc}"
            )
        object.__setattr__(
            self, "coeffs", _normalize_coeffs(self.domain.dim, self.coeffs)
        )

    @property
    def max_frequency(self) -> int:
        return max((max(f) for f in self.coeffs), default=0)


def mean(h: Multiplier) -> float:
    """Domain average of h: its zero-frequency coefficient."""
    return h.coeffs.get((0,) * h.domain.dim, 0.0)


def _mode_eigenvalue(domain: BoxDomain, mode) -> float:
    return sum((m / a) ** 2 for m, a in zip(mode, domain.axis_scales))


def _volume(domain: BoxDomain) -> float:
    side = 2.0 * math.pi if domain.bc == "periodic" else math.pi
    return math.prod(side * a for a in domain.axis_scales)


def h2_norm(h: Multiplier) -> float:
    """Spectral Sobolev norm (sum over modes of (1+lambda)^2 |c|^2)^(1/2).

    Computed exactly from the coefficient table: a frequency vector with
    nz nonzero axes carries L2 mass |c|^2 * vol / 2^nz.
    """
    vol = _volume(h.domain)
    total = 0.0
    for f, c in h.coeffs.items():
        lam = _mode_eigenvalue(h.domain, f)
        nz = sum(1 for x in f if x != 0)
        total += (1.0 + lam) ** 2 * c * c * vol * 0.5**nz
    return math.sqrt(total)


def _mode_norm_factor(m: int, a: float) -> float:
    # per-axis L2 normalization of cos(m x / a) on (0, pi a)
    if m == 0:
        return math.sqrt(1.0 / (math.pi * a))
    return math.sqrt(2.0 / (math.pi * a))


def window_modes(domain: BoxDomain, lam: float, k: float) -> list[tuple[int, ...]]:
    """Eigenmode index vectors with eigenvalue in (lam-k, lam+k].

    Neumann modes are nonnegative vectors; periodic modes carry signs.
    Sorted by (eigenvalue, index vector) so downstream matrices are
    reproducible.
    """
    if k <= 0:
        raise ConfigError("window half-width k must be positive")
    if domain.bc not in MULTIPLIER_BCS:
        raise ConfigError(f"windows need a neumann or periodic box, got {domain.bc}")
    hi = lam + k
    lo = lam - k
    if hi < 0:
        return []
    axis_vals = []
    cells = 1
    for a in domain.axis_scales:
        top = int(math.floor(a * math.sqrt(hi) + 1e-12))
        if domain.bc == "neumann":
            vals = np.arange(0, top + 1)
        else:
            vals = np.arange(-top, top + 1)
        axis_vals.append(vals)
        cells *= vals.size
    if cells > 50_000_000:
        raise ResourceBudgetError(
            f"window enumeration needs {cells} lattice cells; lower lam or k"
        )
    total = np.zeros((1,) * domain.dim)
    for j, (vals, a) in enumerate(zip(axis_vals, domain.axis_scales)):
        shape = [1] * domain.dim
        shape[j] = vals.size
        total = total + ((vals / a) ** 2).reshape(shape)
    mask = (total > lo) & (total <= hi)
    pos = np.argwhere(mask)
    if pos.size == 0:
        return []
    eig = total[mask]
    cols = [axis_vals[j][pos[:, j]] for j in range(domain.dim)]
    order = np.lexsort(tuple(reversed(cols)) + (eig,))
    return [tuple(int(c[i]) for c in cols) for i in order]


def _mode_lookup(M: np.ndarray, shift: int, base: int):
    """Sorted integer encoding of mode rows for O(log n) membership tests."""
    enc = np.zeros(M.shape[0], dtype=np.int64)
    for t in range(M.shape[1]):
        enc = enc * base + (M[:, t] + shift)
    order = np.argsort(enc, kind="stable")
    return enc[order], order


def _find_rows(T: np.ndarray, enc_sorted, order, shift: int, base: int):
    """Row indices of T inside the encoded mode set (or -1)."""
    tenc = np.zeros(T.shape[0], dtype=np.int64)
    oob = np.zeros(T.shape[0], dtype=bool)
    for t in range(T.shape[1]):
        shifted = T[:, t] + shift
        oob |= (shifted < 0) | (shifted >= base)
        tenc = tenc * base + np.clip(shifted, 0, base - 1)
    pos = np.searchsorted(enc_sorted, tenc)
    pos = np.clip(pos, 0, enc_sorted.size - 1)
    hit = (enc_sorted[pos] == tenc) & ~oob
    out = np.full(T.shape[0], -1, dtype=np.int64)
    out[hit] = order[pos[hit]]
    return out


def _neumann_entries(h: Multiplier, modes) -> np.ndarray:
    dim = h.domain.dim
    scales = h.domain.axis_scales
    zero = (0,) * dim
    M = np.array(modes, dtype=np.int64).reshape(len(modes), dim)
    n_modes = M.shape[0]

    norm_axis = np.where(M > 0, 2.0, 1.0) / (math.pi * np.array(scales))
    norms = np.sqrt(np.prod(norm_axis, axis=1))

    shift = int(M.max()) + h.max_frequency + 1
    base = 2 * shift + 1
    enc_sorted, order = _mode_lookup(M, shift, base)

    E = np.zeros((n_modes, n_modes))
    col = np.arange(n_modes)
    for s in itertools.product((1, -1), repeat=dim):
        SN = M * np.array(s, dtype=np.int64)
        for f, c in h.coeffs.items():
            if f == zero:
                continue  # the subtracted mean
            weight = c / (1 << dim)
            for g, a in zip(f, scales):
                weight *= math.pi * a if g == 0 else math.pi * a / 2.0
            nz = [t for t in range(dim) if f[t] != 0]
            for sig in itertools.product((1, -1), repeat=len(nz)):
                v = np.zeros(dim, dtype=np.int64)
                for sgn, t in zip(sig, nz):
                    v[t] = sgn * f[t]
                rows = _find_rows(SN + v, enc_sorted, order, shift, base)
                hit = rows >= 0
                np.add.at(E, (rows[hit], col[hit]), weight)
    E *= np.outer(norms, norms)
    # each ordered pair accumulates its full sum; mirror one triangle so the
    # matrix is symmetric exactly, not just up to addition order
    upper = np.triu(E, 1)
    return upper + upper.T + np.diag(np.diag(E))


def _periodic_entries(h: Multiplier, modes) -> np.ndarray:
    dim = h.domain.dim
    fourier: dict = {}
    for f, c in h.coeffs.items():
        nz = [t for t in range(dim) if f[t] != 0]
        share = c * 0.5 ** len(nz)
        for signs in itertools.product((1, -1), repeat=len(nz)):
            g = list(f)
            for s, t in zip(signs, nz):
                g[t] = s * f[t]
            key = tuple(g)
            fourier[key] = fourier.get(key, 0.0) + share
    fourier.pop((0,) * dim, None)  # the subtracted mean

    M = np.array(modes, dtype=np.int64).reshape(len(modes), dim)
    n_modes = M.shape[0]
    shift = int(np.abs(M).max()) + h.max_frequency + 1
    base = 2 * shift + 1
    enc_sorted, order = _mode_lookup(M, shift, base)

    E = np.zeros((n_modes, n_modes))
    col = np.arange(n_modes)
    for g, c in fourier.items():
        rows = _find_rows(M + np.array(g, dtype=np.int64), enc_sorted, order, shift, base)
        hit = rows >= 0
        E[rows[hit], col[hit]] += c
    upper = np.triu(E, 1)
    return upper + upper.T + np.diag(np.diag(E))


def windowed_matrix(h: Multiplier, lam: float, k: float) -> np.ndarray:
    """Mean-free multiplier compressed to the modes in (lam-k, lam+k].

    Entries <e_m, (h - mean) e_n> for orthonormal eigenmodes, in closed form
    from the coefficient table; symmetric by construction, zero diagonal for
    windows that cannot reach frequency 2*min index (always for m = n when
    2m is outside the band).
    """
    modes = window_modes(h.domain, lam, k)
    if not modes:
        raise PreconditionError(
            f"window ({lam - k:.6g}, {lam + k:.6g}] contains no modes"
        )
    if h.domain.bc == "neumann":
        return _neumann_entries(h, modes)
    return _periodic_entries(h, modes)


def windowed_norm(h: Multiplier, lam: float, k: float) -> float:
    """Operator norm of the windowed compression."""
    return spectral_norm(windowed_matrix(h, lam, k))


@dataclass(frozen=True)
class SAPWindowReport:
    lam: float
    k: float
    window_modes: int
    op_norm: float
    h2_norm: float
    eps_eff: float
    gap: float
    rho_ok: bool


def sap_scan(
    h: Multiplier, k: float, rho: float, lambda_max: float
) -> list[SAPWindowReport]:
    """Evaluate the windowed norm at the midpoint of every qualifying gap.

    Gaps [lambda_n, lambda_{n+1}) of width >= rho with lambda_n <= lambda_max
    qualify; reports come back sorted by (eps_eff, lambda), so the first
    entry is the scan's best window.  A window containing no modes yields an
    op_norm of 0 (the compression is the zero operator there).
    """
    if k <= 0 or rho <= 0:
        raise ConfigError("k and rho must be positive")
    if lambda_max <= 0:
        raise ConfigError("lambda_max must be positive")

    cutoff = lambda_max + max(2.0 * k, rho, 1.0) + 5.0
    while True:
        spec = enumerate_spectrum(h.domain, cutoff)
        if spec.total_count and spec.eigenvalues[-1] > lambda_max:
            break
        cutoff *= 2.0

    eig = spec.eigenvalues
    hnorm = h2_norm(h)
    reports = []
    for i in range(eig.size - 1):
        lo, hi = float(eig[i]), float(eig[i + 1])
        if lo > lambda_max or hi - lo < rho:
            continue
        mid = 0.5 * (lo + hi)
        modes = window_modes(h.domain, mid, k)
        if modes:
            if h.domain.bc == "neumann":
                op = spectral_norm(_neumann_entries(h, modes))
            else:
                op = spectral_norm(_periodic_entries(h, modes))
        else:
            op = 0.0
        eps = op / hnorm if hnorm > 0.0 else 0.0
        reports.append(
            SAPWindowReport(
                lam=mid,
                k=k,
                window_modes=len(modes),
                op_norm=op,
                h2_norm=hnorm,
                eps_eff=eps,
                gap=hi - lo,
                rho_ok=hi - lo >= rho,
            )
        )
    reports.sort(key=lambda r: (r.eps_eff, r.lam))
    return reports


# ---------------------------------------------------------------------------
# serialization

SAP_CSV_HEADER = "lambda,k,window_modes,op_norm,h2_norm,eps_eff,gap,rho_ok"


def sap_reports_to_csv(reports, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(SAP_CSV_HEADER + "\n")
        for r in reports:
            fh.write(
                f"{r.lam:.17g},{r.k:.17g},{r.window_modes},{r.op_norm:.17g},"
                f"{r.h2_norm:.17g},{r.eps_eff:.17g},{r.gap:.17g},"
                f"{'true' if r.rho_ok else 'false'}\n"
            )


def multiplier_to_json_dict(h: Multiplier) -> dict:
    rows = [[*f, c] for f, c in sorted(h.coeffs.items())]
    return {
        "domain": {
            "dim": h.domain.dim,
            "sides": list(h.domain.sides),
            "bc": h.domain.bc,
        },
        "coeffs": rows,
    }


def multiplier_from_json_dict(data: dict) -> Multiplier:
    try:
        dom = data["domain"]
        rows = data["coeffs"]
    except (KeyError, TypeError):
        raise ConfigError("multiplier JSON needs 'domain' and 'coeffs'") from None
    domain = BoxDomain(
        dim=int(dom["dim"]),
        sides=tuple(float(s) for s in dom.get("sides", ())) or None,
        bc=dom.get("bc", "neumann"),
    )
    return Multiplier(domain=domain, coeffs=rows)


def load_multiplier(path: str) -> Multiplier:
    with open(path) as fh:
        return multiplier_from_json_dict(json.load(fh))


def save_multiplier(h: Multiplier, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(multiplier_to_json_dict(h), fh, indent=1, sort_keys=True)
        fh.write("\n")
