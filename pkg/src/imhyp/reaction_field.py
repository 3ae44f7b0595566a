"""Planar cubic reaction fields and their fixed-point eigenvalue ladders.

Two named cubic families (a coupled one and a componentwise one) plus general
polynomial fields up to total degree 5.  The central quantity is the
real-part gap delta(p) = |Re(xi_1 - xi_2)| of the Jacobian eigenvalues at a
fixed point p; a field carrying four fixed points with delta ladder 0,1,2,3
obstructs normal hyperbolicity of any inertial manifold of the associated
reaction-diffusion system.

Parameters of the named families may be floats or sympy expressions; with
symbolic parameters every fixed point, Jacobian and delta stays exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
import sympy as sym

from .errors import ConfigError, HypothesisNotMet, NumericalFailure

Region = tuple[tuple[float, float], tuple[float, float]]
DEFAULT_REGION: Region = ((-4.0, 4.0), (-4.0, 4.0))

# accepted residual for a point returned by fixed_points: 1e-10*(1+|p|^3)
RESIDUAL_SCALE = 1e-10
# delta_of refuses points with |f(p)| above this
DELTA_RESIDUAL_CAP = 1e-8
NEWTON_GRID = 33
NEWTON_MAX_ITER = 50
NEWTON_STEP_TOL = 1e-13
DEDUPE_TOL = 1e-8


def _symbolic(*vals) -> bool:
    return any(isinstance(v, sym.Basic) for v in vals)

def _sqrt(x):
    return sym.sqrt(x) if isinstance(x, sym.Basic) else math.sqrt(x)

def _check_positive(name, value):
    if float(value) <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class CubicCoupled:
    """f1 = k*v1*(1 - a*v1^2 + v2^2), f2 = k*v2*(1 - b*v2^2 - v1^2)."""

    k: object
    a: object
    b: object

    def __post_init__(self):
        for name in ("k", "a", "b"):
            _check_positive(name, getattr(self, name))

    def f(self, v):
        v1, v2 = v
        return (
            self.k * v1 * (1 - self.a * v1**2 + v2**2),
            self.k * v2 * (1 - self.b * v2**2 - v1**2),
        )

    def jacobian(self, v):
        v1, v2 = v
        k = self.k
        return (
            (k * (1 - 3 * self.a * v1**2 + v2**2), k * 2 * v1 * v2),
            (k * (-2) * v1 * v2, k * (1 - v1**2 - 3 * self.b * v2**2)),
        )


@dataclass(frozen=True)
class CubicUncoupled:
    """f1 = v1*(a - v1)*(v1 - b), f2 = v2*(c - v2)*(v2 - d); componentwise."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            _check_positive(name, getattr(self, name))

    def f(self, v):
        v1, v2 = v
        return (
            v1 * (self.a - v1) * (v1 - self.b),
            v2 * (self.c - v2) * (v2 - self.d),
        )

    def jacobian(self, v):
        v1, v2 = v
        # d/dv of v*(r - v)*(v - s) = -3v^2 + 2(r+s)v - r*s
        zero = sym.Integer(0) if _symbolic(v1, v2, self.a) else 0.0
        return (
            (-3 * v1**2 + 2 * (self.a + self.b) * v1 - self.a * self.b, zero),
            (zero, -3 * v2**2 + 2 * (self.c + self.d) * v2 - self.c * self.d),
        )


@dataclass(frozen=True)
class GeneralPoly:
    """Polynomial field from coefficient tables {(i, j): coef} meaning
    coef * v1^i * v2^j, total degree <= 5."""

    f1_coeffs: tuple
    f2_coeffs: tuple

    def __post_init__(self):
        for label, table in (("f1", self.f1_coeffs), ("f2", self.f2_coeffs)):
            norm = []
            for entry in table:
                i, j, c = entry
                i, j = int(i), int(j)
                if i < 0 or j < 0 or i + j > 5:
                    raise ConfigError(
                        f"{label} term v1^{i}*v2^{j} outside total degree 5"
                    )
                norm.append((i, j, float(c)))
            object.__setattr__(self, f"{label}_coeffs", tuple(norm))

    def f(self, v):
        v1, v2 = v
        return (
            sum(c * v1**i * v2**j for i, j, c in self.f1_coeffs),
            sum(c * v1**i * v2**j for i, j, c in self.f2_coeffs),
        )

    def jacobian(self, v):
        v1, v2 = v

        def dx(table):
            return sum(c * i * v1 ** (i - 1) * v2**j for i, j, c in table if i > 0)

        def dy(table):
            return sum(c * j * v1**i * v2 ** (j - 1) for i, j, c in table if j > 0)

        return (
            (dx(self.f1_coeffs) + 0.0, dy(self.f1_coeffs) + 0.0),
            (dx(self.f2_coeffs) + 0.0, dy(self.f2_coeffs) + 0.0),
        )


PlanarField = CubicCoupled | CubicUncoupled | GeneralPoly


def _eig2x2(J):
    """Eigenvalues of a 2x2 matrix via the quadratic formula.

    Returns (xi1, xi2, delta) ordered by descending (Re, Im); delta is the
    real-part gap, identically 0 for a complex-conjugate pair.
    """
    (a, b), (c, d) = J
    tr = a + d
    det = a * d - b * c
    if _symbolic(a, b, c, d):
        disc = sym.simplify(sym.expand(tr * tr - 4 * det))
        negative = disc.is_negative
        if negative is None:
            negative = float(disc) < 0
        if negative:
            im = sym.sqrt(-disc) / 2
            return (tr / 2 + sym.I * im, tr / 2 - sym.I * im, sym.Integer(0))
        root = sym.simplify(sym.sqrt(disc))
        xi1 = sym.simplify((tr + root) / 2)
        xi2 = sym.simplify((tr - root) / 2)
        return (xi1, xi2, root)
    tr = float(tr)
    det = float(det)
    disc = tr * tr - 4.0 * det
    if disc >= 0.0:
        s = math.sqrt(disc)
        return ((tr + s) / 2.0, (tr - s) / 2.0, s)
    im = math.sqrt(-disc) / 2.0
    return (complex(tr / 2.0, im), complex(tr / 2.0, -im), 0.0)


def _re(x) -> float:
    if isinstance(x, sym.Basic):
        return float(sym.re(x))
    return x.real if isinstance(x, complex) else float(x)

def _im(x) -> float:
    if isinstance(x, sym.Basic):
        return float(sym.im(x))
    return x.imag if isinstance(x, complex) else 0.0


@dataclass(frozen=True)
class FixedPointAnalysis:
    """A fixed point with its Jacobian, eigenvalues, real-part gap, residual."""

    point: tuple
    jacobian: tuple
    eigenvalues: tuple
    delta: object
    residual: object

    @property
    def point_float(self) -> tuple[float, float]:
        return (float(self.point[0]), float(self.point[1]))

    @property
    def delta_float(self) -> float:
        return float(self.delta)

    @property
    def residual_float(self) -> float:
        return float(self.residual)


def analyze_point(field: PlanarField, p) -> FixedPointAnalysis:
    """Bundle Jacobian eigenvalue data at p without any residual gate."""
    f1, f2 = field.f(p)
    if _symbolic(f1, f2):
        residual = sym.simplify(sym.sqrt(f1**2 + f2**2))
    else:
        residual = math.hypot(float(f1), float(f2))
    J = field.jacobian(p)
    xi1, xi2, delta = _eig2x2(J)
    return FixedPointAnalysis(
        point=tuple(p), jacobian=J, eigenvalues=(xi1, xi2), delta=delta, residual=residual
    )


def delta_of(field: PlanarField, p) -> FixedPointAnalysis:
    """Eigenvalue real-part gap at a fixed point; refuses non-fixed points."""
    analysis = analyze_point(field, p)
    if analysis.residual_float > DELTA_RESIDUAL_CAP:
        raise HypothesisNotMet(
            f"point {analysis.point_float} is not a fixed point: "
            f"|f(p)| = {analysis.residual_float:.3e} exceeds {DELTA_RESIDUAL_CAP:.0e}"
        )
    return analysis


def _closed_form_candidates(field: PlanarField):
    if isinstance(field, CubicCoupled):
        k, a, b = field.k, field.a, field.b
        zero = sym.Integer(0) if _symbolic(k, a, b) else 0.0
        c1 = 1 / _sqrt(a)
        c3 = 1 / _sqrt(b)
        cands = [
            (zero, zero),
            (c1, zero),
            (-c1, zero),
            (zero, c3),
            (zero, -c3),
        ]
        if float(a) >= 1.0:
            x2 = _sqrt((b + 1) / (a * b + 1))
            y2 = _sqrt((a - 1) / (a * b + 1))
            cands += [(sx * x2, sy * y2) for sx in (1, -1) for sy in (1, -1)]
        return cands
    if isinstance(field, CubicUncoupled):
        xs = (0, field.a, field.b) if _symbolic(field.a) else (0.0, field.a, field.b)
        ys = (0, field.c, field.d) if _symbolic(field.c) else (0.0, field.c, field.d)
        if _symbolic(field.a, field.b, field.c, field.d):
            xs = tuple(sym.sympify(x) for x in xs)
            ys = tuple(sym.sympify(y) for y in ys)
        return [(x, y) for x in xs for y in ys]
    raise ConfigError(f"no closed forms for {type(field).__name__}")


def _newton_candidates(field: GeneralPoly, region: Region):
    (x0, x1), (y0, y1) = region
    xs = np.linspace(x0, x1, NEWTON_GRID)
    ys = np.linspace(y0, y1, NEWTON_GRID)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    px = X.ravel().copy()
    py = Y.ravel().copy()
    step = np.full(px.shape, np.inf)

    def eval_tables(px, py):
        f1 = np.zeros_like(px)
        f2 = np.zeros_like(px)
        for i, j, c in field.f1_coeffs:
            f1 += c * px**i * py**j
        for i, j, c in field.f2_coeffs:
            f2 += c * px**i * py**j
        return f1, f2

    for _ in range(NEWTON_MAX_ITER):
        f1, f2 = eval_tables(px, py)
        (j00, j01), (j10, j11) = field.jacobian((px, py))
        det = j00 * j11 - j01 * j10
        with np.errstate(all="ignore"):
            dx = (j11 * f1 - j01 * f2) / det
            dy = (j00 * f2 - j10 * f1) / det
        bad = ~np.isfinite(dx) | ~np.isfinite(dy)
        dx[bad] = 0.0
        dy[bad] = 0.0
        px -= dx
        py -= dy
        step = np.hypot(dx, dy)
        step[bad] = np.inf

    norm = np.hypot(px, py)
    f1, f2 = eval_tables(px, py)
    resid = np.hypot(f1, f2)
    ok = (
        (step < NEWTON_STEP_TOL * (1.0 + norm))
        & (resid <= RESIDUAL_SCALE * (1.0 + norm**3))
        & (px >= x0 - 1e-9) & (px <= x1 + 1e-9)
        & (py >= y0 - 1e-9) & (py <= y1 + 1e-9)
    )
    return [(float(x), float(y)) for x, y in zip(px[ok], py[ok])]


def fixed_points(
    field: PlanarField, region: Region = DEFAULT_REGION, tol: float = DEDUPE_TOL
) -> list[FixedPointAnalysis]:
    """All fixed points of the field inside the region, analyzed and sorted.

    The named cubic families are solved in closed form (complete root sets);
    general polynomial fields run damped-free Newton from a uniform
    33x33 seed grid, silently dropping non-converged seeds.  Points closer
    than tol are merged.
    """
    (x0, x1), (y0, y1) = region
    if not (x1 > x0 and y1 > y0):
        raise ConfigError("region must be a nondegenerate box ((x0,x1),(y0,y1))")
    if isinstance(field, GeneralPoly):
        cands = _newton_candidates(field, region)
    else:
        cands = [
            p
            for p in _closed_form_candidates(field)
            if x0 - 1e-9 <= float(p[0]) <= x1 + 1e-9
            and y0 - 1e-9 <= float(p[1]) <= y1 + 1e-9
        ]
    cands.sort(key=lambda p: (float(p[0]), float(p[1])))
    kept = []
    kept_f = []
    for p in cands:
        pf = (float(p[0]), float(p[1]))
        if any(math.hypot(pf[0] - q[0], pf[1] - q[1]) <= tol for q in kept_f):
            continue
        kept.append(p)
        kept_f.append(pf)
    analyses = [analyze_point(field, p) for p in kept]
    for an in analyses:
        norm = math.hypot(*an.point_float)
        if an.residual_float > RESIDUAL_SCALE * (1.0 + norm**3):
            raise NumericalFailure(
                f"fixed point candidate {an.point_float} has residual "
                f"{an.residual_float:.3e}", witness=an.point_float
            )
    return analyses


@dataclass(frozen=True)
class Lemma33Result:
    verdict: bool
    matches: dict | None


def lemma33_check(
    field: PlanarField, region: Region = DEFAULT_REGION, tol: float = 1e-6
) -> Lemma33Result:
    """Look for four distinct fixed points whose real-part gaps hit 0,1,2,3.

    Existence of such a ladder rules out a normally hyperbolic inertial
    manifold for the associated reaction-diffusion system.  Matching is by
    |delta(p) - i| <= tol with points distinct at distance >= 1e-6.
    """
    analyses = fixed_points(field, region)
    slots = []
    for i in range(4):
        slots.append([an for an in analyses if abs(an.delta_float - i) <= tol])

    def assign(i, used):
        if i == 4:
            return {}
        for an in slots[i]:
            pf = an.point_float
            if any(math.hypot(pf[0] - q[0], pf[1] - q[1]) < 1e-6 for q in used):
                continue
            rest = assign(i + 1, used + [pf])
            if rest is not None:
                rest[i] = an
                return rest
        return None

    matches = assign(0, [])
    if matches is None:
        return Lemma33Result(False, None)
    return Lemma33Result(True, {i: matches[i] for i in range(4)})


def coupled_ladder_params(a: float) -> tuple[float, float]:
    """The (k, b) normalization making the first and third gap 1 and 3."""
    return a / (3.0 * a - 1.0), a / (6.0 * a - 3.0)


def middle_gap(a: float) -> float:
    """delta at the interior fixed point of the normalized coupled family."""
    k, b = coupled_ladder_params(a)
    return 2.0 * k * abs(a - b - 2.0) / (a * b + 1.0)


@dataclass(frozen=True)
class Prop34Checklist:
    delta1_is_1: bool
    delta3_is_3: bool
    ordering: bool
    r0sq_lt_12: bool
    points_in_Dc: bool
    points_norm_le_sqrt7: bool

    def all_pass(self) -> bool:
        return all(
            (
                self.delta1_is_1,
                self.delta3_is_3,
                self.ordering,
                self.r0sq_lt_12,
                self.points_in_Dc,
                self.points_norm_le_sqrt7,
            )
        )


@dataclass(frozen=True)
class Prop34Constants:
    a_star: float
    k: float
    b: float
    phi_residual: float
    checklist: Prop34Checklist
    points: tuple
    deltas: tuple


def solve_prop34(
    tol: float = 1e-10, bracket: tuple[float, float] = (7.0, 20.0)
) -> Prop34Constants:
    """Tune the coupled cubic family so its four gaps are exactly 0,1,2,3.

    With k = a/(3a-1) and b = a/(6a-3) the outer gaps are pinned at 1 and 3;
    bisection drives the middle gap to 2.  Returns the solved constants plus
    the verification checklist (ordering, dissipativity radius, containment
    of the four points in [0,1]x[0,sqrt(6)] and in the sqrt(7) disk).
    """
    if tol <= 0:
        raise ConfigError("tol must be positive")
    lo, hi = float(bracket[0]), float(bracket[1])
    flo, fhi = middle_gap(lo) - 2.0, middle_gap(hi) - 2.0
    if flo == 0.0:
        lo_mid = lo
    elif fhi == 0.0:
        lo_mid = hi
    elif flo * fhi > 0:
        raise ConfigError(
            f"no sign change on bracket [{lo}, {hi}]: phi-2 is "
            f"{flo:.6g} and {fhi:.6g} at the ends"
        )
    else:
        lo_mid = None
    if lo_mid is None:
        mid = 0.5 * (lo + hi)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fmid = middle_gap(mid) - 2.0
            if abs(fmid) <= tol:
                break
            if flo * fmid <= 0:
                hi = mid
            else:
                lo, flo = mid, fmid
        else:
            raise NumericalFailure("bisection failed to reach the requested tolerance")
        a_star = mid
    else:
        a_star = lo_mid

    k, b = coupled_ladder_params(a_star)
    field = CubicCoupled(k=k, a=a_star, b=b)
    p0 = (0.0, 0.0)
    p1 = (1.0 / math.sqrt(a_star), 0.0)
    p2 = (
        math.sqrt((b + 1.0) / (a_star * b + 1.0)),
        math.sqrt((a_star - 1.0) / (a_star * b + 1.0)),
    )
    p3 = (0.0, 1.0 / math.sqrt(b))
    points = (p0, p1, p2, p3)
    deltas = tuple(delta_of(field, p).delta_float for p in points)
    c = math.sqrt(6.0)
    r0sq = 2.0 / min(a_star, b)
    checklist = Prop34Checklist(
        delta1_is_1=abs(deltas[1] - 1.0) <= 1e-9,
        delta3_is_3=abs(deltas[3] - 3.0) <= 1e-9,
        ordering=a_star >= 1.0 + 1.0 / b >= b,
        r0sq_lt_12=r0sq < 12.0,
        points_in_Dc=all(0.0 <= x <= 1.0 and 0.0 <= y <= c for x, y in points),
        points_norm_le_sqrt7=all(math.hypot(x, y) <= math.sqrt(7.0) for x, y in points),
    )
    return Prop34Constants(
        a_star=a_star,
        k=k,
        b=b,
        phi_residual=abs(middle_gap(a_star) - 2.0),
        checklist=checklist,
        points=points,
        deltas=deltas,
    )


def prop35_field(exact: bool = True) -> CubicUncoupled:
    """The componentwise cubic with the exact 0,1,2,3 gap ladder."""
    if exact:
        return CubicUncoupled(sym.Integer(2), sym.sqrt(3), sym.sqrt(6), sym.sqrt(2))
    return CubicUncoupled(2.0, math.sqrt(3.0), math.sqrt(6.0), math.sqrt(2.0))


@dataclass(frozen=True)
class Prop35Report:
    exact: bool
    analyses: tuple
    deltas: tuple
    delta_errors: tuple

    def ladder_ok(self, tol: float = 1e-12) -> bool:
        return all(err <= tol for err in self.delta_errors)


def verify_prop35(exact: bool = True) -> Prop35Report:
    """Analyze the four ladder points of the exact componentwise field."""
    field = prop35_field(exact)
    a, b, c, d = field.a, field.b, field.c, field.d
    zero = sym.Integer(0) if exact else 0.0
    pts = ((zero, zero), (b, d), (a, c), (b, c))
    analyses = tuple(delta_of(field, p) for p in pts)
    deltas = tuple(an.delta for an in analyses)
    errors = tuple(abs(an.delta_float - i) for i, an in enumerate(analyses))
    return Prop35Report(exact=exact, analyses=analyses, deltas=deltas, delta_errors=errors)


@dataclass(frozen=True)
class DissipativityReport:
    r0: float
    verified: bool
    component_radii: tuple | None = None


def dissipativity_radius(
    field: PlanarField, samples: int = 10_000, seed: int = 0
) -> DissipativityReport:
    """Radius beyond which the field points inward, verified by sampling.

    Coupled family: v.f(v) <= 0 outside the disk of squared radius
    2/min(a,b); componentwise family: sign condition per component outside
    max(a,b) and max(c,d).  Sampling runs on the annulus [r0, 2*r0]; any
    violation raises NumericalFailure carrying the witness point.
    """
    rng = np.random.default_rng(seed)
    if isinstance(field, CubicCoupled):
        a, b, k = float(field.a), float(field.b), float(field.k)
        r0 = math.sqrt(2.0 / min(a, b))
        radii = r0 * (1.0 + rng.random(samples))
        angles = 2.0 * math.pi * rng.random(samples)
        v1 = radii * np.cos(angles)
        v2 = radii * np.sin(angles)
        dot = k * (v1**2 + v2**2 - a * v1**4 - b * v2**4)
        tol = 1e-10 * max(k, 1.0) * float(np.max(1.0 + radii**4))
        bad = np.flatnonzero(dot > tol)
        if bad.size:
            i = int(bad[0])
            raise NumericalFailure(
                f"inward-pointing check failed at {(float(v1[i]), float(v2[i]))}",
                witness=(float(v1[i]), float(v2[i])),
            )
        return DissipativityReport(r0=r0, verified=True)
    if isinstance(field, CubicUncoupled):
        a, b, c, d = (float(field.a), float(field.b), float(field.c), float(field.d))
        r1 = max(a, b)
        r2 = max(c, d)
        # component signs: t*f_component(t) <= 0 for |t| >= radius
        t1 = r1 * (1.0 + rng.random(samples)) * rng.choice((-1.0, 1.0), size=samples)
        g1 = t1 * (t1 * (a - t1) * (t1 - b))
        t2 = r2 * (1.0 + rng.random(samples)) * rng.choice((-1.0, 1.0), size=samples)
        g2 = t2 * (t2 * (c - t2) * (t2 - d))
        tol1 = 1e-10 * float(np.max(1.0 + np.abs(t1) ** 4))
        tol2 = 1e-10 * float(np.max(1.0 + np.abs(t2) ** 4))
        if np.any(g1 > tol1):
            i = int(np.flatnonzero(g1 > tol1)[0])
            raise NumericalFailure(
                f"componentwise sign check failed at v1={float(t1[i])}",
                witness=(float(t1[i]), 0.0),
            )
        if np.any(g2 > tol2):
            i = int(np.flatnonzero(g2 > tol2)[0])
            raise NumericalFailure(
                f"componentwise sign check failed at v2={float(t2[i])}",
                witness=(0.0, float(t2[i])),
            )
        return DissipativityReport(
            r0=max(r1, r2), verified=True, component_radii=(r1, r2)
        )
    raise ConfigError("dissipativity radius is defined for the named cubic families")


def invariant_region_check(field: CubicCoupled, c) -> bool:
    """Whether [0,1]x[0,c] is positively invariant: 1/b <= c^2 <= a - 1."""
    if not isinstance(field, CubicCoupled):
        raise ConfigError("the box invariance criterion applies to the coupled family")
    a, b = field.a, field.b
    csq = c * c
    if _symbolic(a, b, c):
        lo = sym.simplify(csq - 1 / b)
        hi = sym.simplify((a - 1) - csq)

        def nonneg(expr):
            flag = expr.is_nonnegative
            return float(expr) >= 0 if flag is None else bool(flag)

        return nonneg(lo) and nonneg(hi)
    return 1.0 / float(b) <= float(csq) <= float(a) - 1.0


# ---------------------------------------------------------------------------
# serialization

def field_to_json_dict(field: PlanarField) -> dict:
    def val(x):
        return str(x) if isinstance(x, sym.Basic) else float(x)

    if isinstance(field, CubicCoupled):
        return {"kind": "cubic_coupled", "k": val(field.k), "a": val(field.a), "b": val(field.b)}
    if isinstance(field, CubicUncoupled):
        return {
            "kind": "cubic_uncoupled",
            "a": val(field.a), "b": val(field.b), "c": val(field.c), "d": val(field.d),
        }
    return {
        "kind": "poly",
        "f1": [[i, j, c] for i, j, c in field.f1_coeffs],
        "f2": [[i, j, c] for i, j, c in field.f2_coeffs],
    }


def field_from_json_dict(data: dict) -> PlanarField:
    def val(x):
        if isinstance(x, str):
            return sym.sympify(x)
        return float(x)

    try:
        kind = data["kind"]
    except (KeyError, TypeError):
        raise ConfigError("field JSON needs a 'kind' key") from None
    if kind == "cubic_coupled":
        return CubicCoupled(k=val(data["k"]), a=val(data["a"]), b=val(data["b"]))
    if kind == "cubic_uncoupled":
        return CubicUncoupled(
            a=val(data["a"]), b=val(data["b"]), c=val(data["c"]), d=val(data["d"])
        )
    if kind == "poly":
        return GeneralPoly(
            f1_coeffs=tuple(tuple(t) for t in data["f1"]),
            f2_coeffs=tuple(tuple(t) for t in data["f2"]),
        )
    raise ConfigError(f"unknown field kind {kind!r}")


def load_field(path: str) -> PlanarField:
    with open(path) as fh:
        return field_from_json_dict(json.load(fh))


def save_field(field: PlanarField, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(field_to_json_dict(field), fh, indent=1, sort_keys=True)
        fh.write("\n")


def delta_table_to_csv(analyses, path: str) -> None:
    """Rows: i,px,py,xi1_re,xi1_im,xi2_re,xi2_im,delta."""
    with open(path, "w") as fh:
        fh.write("i,px,py,xi1_re,xi1_im,xi2_re,xi2_im,delta\n")
        for i, an in enumerate(analyses):
            x, y = an.point_float
            xi1, xi2 = an.eigenvalues
            fh.write(
                f"{i},{x:.17g},{y:.17g},{_re(xi1):.17g},{_im(xi1):.17g},"
                f"{_re(xi2):.17g},{_im(xi2):.17g},{an.delta_float:.17g}\n"
            )
