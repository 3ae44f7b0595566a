"""Command-line front end: config validation, dispatch, reproducible reports.

One subcommand per analysis operation.  Reports are JSON with floats printed
at 17 significant digits and sorted keys, so identical config and version
produce identical bytes.  All file output goes through a temp-file-plus-rename
so readers never observe a half-written report.
"""

from __future__ import annotations

import difflib
import json
import math
import os
import sys
import tempfile
import time

import numpy as np

from . import __version__
from .errors import ConfigError, HypothesisNotMet, NumericalFailure
from .lattice_spectrum import (
    BoxDomain,
    JumpQuery,
    enumerate_spectrum,
    gap_stats,
    jump_condition_scan,
    three_square_gap_audit,
    weyl_fit,
)
from .reaction_field import (
    CubicCoupled,
    delta_of,
    delta_table_to_csv,
    dissipativity_radius,
    fixed_points,
    invariant_region_check,
    lemma33_check,
    load_field,
    prop35_field,
    solve_prop34,
    verify_prop35,
)
from .spatial_averaging import (
    Multiplier,
    load_multiplier,
    sap_reports_to_csv,
    sap_scan,
)
from .stationary_spectrum import (
    Linearization,
    anhim_common_gamma,
    count_profile,
    lemma41_threshold,
    nhim_certificate,
    nhim_feasible_dims,
    parity_report,
    unstable_index,
)

_BUILTIN_FIELDS = ("cubic-scalar", "prop34", "prop35", "prop35-float")
_BUILTIN_MULTIPLIERS = ("cos-x1",)


# ---------------------------------------------------------------------------
# parameter schema

class Param:
    """One config key: how to parse it and what values are legal."""

    __slots__ = ("key", "kind", "default", "required", "positive", "choices")

    def __init__(self, key, kind, default=None, *, required=False,
                 positive=False, choices=None):
        self.key = key
        self.kind = kind
        self.default = default
        self.required = required
        self.positive = positive
        self.choices = choices


def _parse_bool(raw):
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in ("true", "1", "yes"):
        return True
    if text in ("false", "0", "no"):
        return False
    raise ValueError(f"expected true or false, got {raw!r}")


def _parse_floats(raw):
    if isinstance(raw, (list, tuple)):
        return tuple(float(x) for x in raw)
    parts = [p for p in str(raw).split(",") if p.strip()]
    return tuple(float(p) for p in parts)


def _parse_value(param: Param, raw):
    kind = param.kind
    if kind == "int":
        val = int(raw) if not isinstance(raw, bool) else None
        if val is None or (isinstance(raw, float) and raw != int(raw)):
            raise ValueError(f"expected an integer, got {raw!r}")
        return val
    if kind == "float":
        val = float(raw)
        if not math.isfinite(val):
            raise ValueError("expected a finite number")
        return val
    if kind == "bool":
        return _parse_bool(raw)
    if kind in ("str", "path"):
        return str(raw)
    if kind == "floats":
        return _parse_floats(raw)
    if kind == "strs":
        if isinstance(raw, (list, tuple)):
            return tuple(str(x) for x in raw)
        return tuple(p.strip() for p in str(raw).split(",") if p.strip())
    if kind == "jacs":
        if isinstance(raw, (list, tuple)):
            return tuple(_parse_floats(r) for r in raw)
        return tuple(
            _parse_floats(block) for block in str(raw).split(";") if block.strip()
        )
    raise ValueError(f"unhandled parameter kind {kind!r}")


def _schema(*params: Param) -> dict:
    common = (
        Param("out", "path"),
        Param("csv", "path"),
        Param("cert", "path"),
        Param("timing", "bool", default=False),
        Param("threads", "int", positive=True),
        Param("seed", "int", default=0),
        Param("periodic-scaling", "str", default="paper",
              choices=("paper", "standard")),
    )
    table = {p.key: p for p in common}
    for p in params:
        table[p.key] = p
    return table


_DOMAIN = (
    Param("dim", "int", default=3, positive=True),
    Param("bc", "str", default="neumann",
          choices=("neumann", "dirichlet", "periodic")),
    Param("sides", "floats"),
)

SCHEMAS = {
    "spectrum": _schema(*_DOMAIN, Param("cutoff", "float", required=True, positive=True)),
    "gaps": _schema(*_DOMAIN, Param("cutoff", "float", required=True, positive=True)),
    "jump": _schema(
        *_DOMAIN,
        Param("cutoff", "float", required=True, positive=True),
        Param("theta", "float", default=0.5, positive=True),
        Param("lip", "float", default=1.0, positive=True),
        Param("cconst", "float", default=1.0, positive=True),
        Param("nu", "float", default=1.0, positive=True),
    ),
    "gauss-audit": _schema(Param("limit", "int", default=1_000_000, positive=True)),
    "weyl": _schema(*_DOMAIN, Param("cutoff", "float", required=True, positive=True)),
    "fixed-points": _schema(
        Param("field", "str", required=True),
        Param("region", "floats"),
        Param("tol", "float", default=1e-8, positive=True),
    ),
    "delta": _schema(
        Param("field", "str", required=True),
        Param("at", "floats", required=True),
    ),
    "lemma33": _schema(
        Param("field", "str", required=True),
        Param("region", "floats"),
        Param("tol", "float", default=1e-6, positive=True),
    ),
    "prop34": _schema(
        Param("tol", "float", default=1e-10, positive=True),
        Param("bracket-lo", "float", default=7.0, positive=True),
        Param("bracket-hi", "float", default=20.0, positive=True),
    ),
    "prop35-verify": _schema(Param("exact", "bool", default=True)),
    "dissipativity": _schema(
        Param("field", "str", required=True),
        Param("samples", "int", default=10_000, positive=True),
    ),
    "region": _schema(
        Param("field", "str", required=True),
        Param("c", "float", required=True, positive=True),
    ),
    "index": _schema(
        *_DOMAIN,
        Param("nu", "float", required=True, positive=True),
        Param("jac", "floats", required=True),
        Param("cutoff", "float", required=True, positive=True),
        Param("zero-tol", "float", default=1e-9, positive=True),
    ),
    "parity": _schema(
        *_DOMAIN,
        Param("nu", "float", required=True, positive=True),
        Param("jacs", "jacs"),
        Param("field", "str"),
        Param("labels", "strs"),
        Param("cutoff", "float", required=True, positive=True),
        Param("zero-tol", "float", default=1e-9, positive=True),
    ),
    "profile": _schema(
        *_DOMAIN,
        Param("nu", "float", required=True, positive=True),
        Param("jac", "floats", required=True),
        Param("cutoff", "float", required=True, positive=True),
        Param("gap-min", "float", default=1e-6, positive=True),
    ),
    "nhim-dims": _schema(
        *_DOMAIN,
        Param("nu", "float", required=True, positive=True),
        Param("jacs", "jacs"),
        Param("field", "str"),
        Param("labels", "strs"),
        Param("cutoff", "float", required=True, positive=True),
        Param("gap-min", "float", default=1e-6, positive=True),
        Param("max-dims", "int", default=25, positive=True),
    ),
    "anhim": _schema(
        *_DOMAIN,
        Param("nu", "float", required=True, positive=True),
        Param("jacs", "jacs"),
        Param("field", "str"),
        Param("labels", "strs"),
        Param("cutoff", "float", required=True, positive=True),
    ),
    "lemma41": _schema(
        Param("jac0", "float", required=True),
        Param("jac1", "float", required=True),
        Param("gap-bound", "float", required=True, positive=True),
    ),
    "sap-scan": _schema(
        Param("h", "str", required=True),
        Param("k", "float", required=True, positive=True),
        Param("rho", "float", required=True, positive=True),
        Param("lambda-max", "float", required=True, positive=True),
    ),
}


def validate(config) -> list:
    """Diagnostics for a config mapping; empty list means the config runs."""
    diags = []
    if not isinstance(config, dict):
        return ["config must be a JSON object"]
    cmd = config.get("command")
    if not isinstance(cmd, str) or cmd not in SCHEMAS:
        hint = ""
        if isinstance(cmd, str):
            close = difflib.get_close_matches(cmd, SCHEMAS, n=1)
            if close:
                hint = f" (did you mean '{close[0]}'?)"
        diags.append(f"unknown command {cmd!r}{hint}")
        return diags
    schema = SCHEMAS[cmd]
    for key in sorted(config):
        if key == "command" or key in schema:
            continue
        close = difflib.get_close_matches(key, schema, n=1)
        hint = f" (did you mean '{close[0]}'?)" if close else ""
        diags.append(f"unknown key '{key}'{hint}")
    for key in schema:
        param = schema[key]
        if key not in config or config[key] is None:
            if param.required:
                diags.append(f"missing required key '{key}'")
            continue
        try:
            val = _parse_value(param, config[key])
        except (ValueError, TypeError) as exc:
            diags.append(f"{key}: {exc}")
            continue
        if param.positive and not (
            isinstance(val, (int, float)) and val > 0
        ):
            diags.append(f"{key} must be positive")
        if param.choices is not None and val not in param.choices:
            allowed = ", ".join(str(c) for c in param.choices)
            diags.append(f"{key} must be one of: {allowed}")
    return diags


def _resolve(config, schema) -> dict:
    params = {}
    for key, param in schema.items():
        if key in config and config[key] is not None:
            params[key] = _parse_value(param, config[key])
        else:
            params[key] = param.default
    if params.get("threads") is None:
        env = os.environ.get("IMHYP_THREADS")
        if env:
            try:
                params["threads"] = max(1, int(env))
            except ValueError:
                raise ConfigError(
                    f"IMHYP_THREADS must be an integer, got {env!r}"
                ) from None
    return params


# ---------------------------------------------------------------------------
# deterministic JSON rendering (17 significant digits, sorted keys)

def _fmt_float(x: float) -> str:
    return "%.17g" % float(x)


def _render(obj, level, parts):
    pad = " " * level
    if isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        keys = sorted(obj, key=str)
        parts.append("{\n")
        for i, k in enumerate(keys):
            parts.append(" " * (level + 1) + json.dumps(str(k)) + ": ")
            _render(obj[k], level + 1, parts)
            parts.append(",\n" if i + 1 < len(keys) else "\n")
        parts.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            parts.append("[]")
            return
        parts.append("[\n")
        for i, item in enumerate(seq):
            parts.append(" " * (level + 1))
            _render(item, level + 1, parts)
            parts.append(",\n" if i + 1 < len(seq) else "\n")
        parts.append(pad + "]")
    elif isinstance(obj, (bool, np.bool_)):
        parts.append("true" if obj else "false")
    elif obj is None:
        parts.append("null")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(_fmt_float(obj))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    else:
        raise TypeError(f"cannot render {type(obj).__name__} in a report")


def render_report(report) -> str:
    parts = []
    _render(report, 0, parts)
    parts.append("\n")
    return "".join(parts)


def _atomic_write(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".imhyp.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _atomic_file(path, writer) -> None:
    """Run writer(tmp_path) then rename tmp_path onto path."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".imhyp.")
    os.close(fd)
    try:
        writer(tmp)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------------------
# shared builders

def _build_domain(p) -> BoxDomain:
    sides = p.get("sides")
    if sides is not None:
        if len(sides) != p["dim"]:
            raise ConfigError(
                f"sides has {len(sides)} entries for dim {p['dim']}"
            )
        return BoxDomain(dim=p["dim"], sides=tuple(sides), bc=p["bc"])
    return BoxDomain(dim=p["dim"], bc=p["bc"])


def _planar_field(name: str):
    if name == "prop34":
        consts = solve_prop34()
        return CubicCoupled(k=consts.k, a=consts.a_star, b=consts.b)
    if name == "prop35":
        return prop35_field(exact=True)
    if name == "prop35-float":
        return prop35_field(exact=False)
    if name == "cubic-scalar":
        raise ConfigError(
            "field 'cubic-scalar' is one-dimensional; this command needs a "
            "planar field"
        )
    if os.path.exists(name):
        return load_field(name)
    builtins = ", ".join(_BUILTIN_FIELDS)
    raise ConfigError(
        f"field {name!r} is neither a readable JSON file nor a builtin "
        f"({builtins})"
    )


def _region(p):
    region = p.get("region")
    if region is None:
        return None
    if len(region) != 4:
        raise ConfigError("region needs 4 numbers: x_lo,x_hi,y_lo,y_hi")
    return ((region[0], region[1]), (region[2], region[3]))


def _jac_matrix(entries):
    if len(entries) == 1:
        return np.array([[entries[0]]])
    if len(entries) == 4:
        return np.array(entries, dtype=float).reshape(2, 2)
    raise ConfigError(
        f"a Jacobian needs 1 or 4 comma-separated entries, got {len(entries)}"
    )


def _linearizations(p, domain) -> list:
    """Equilibrium linearizations from either --jacs or --field."""
    field_name = p.get("field")
    jacs = p.get("jacs")
    if (field_name is None) == (jacs is None):
        raise ConfigError("pass exactly one of 'field' or 'jacs'")
    nu = p["nu"]
    if jacs is not None:
        labels = p.get("labels") or tuple(f"eq{i}" for i in range(len(jacs)))
        if len(labels) != len(jacs):
            raise ConfigError(
                f"{len(labels)} labels for {len(jacs)} Jacobians"
            )
        return [
            Linearization(domain, nu, _jac_matrix(j), label=lab)
            for j, lab in zip(jacs, labels)
        ]
    if field_name == "cubic-scalar":
        # f(u) = u - u^3: equilibria 0 and +-1 with f'(u) = 1 - 3u^2
        pairs = (("0", 1.0), ("+1", -2.0), ("-1", -2.0))
        return [
            Linearization(domain, nu, np.array([[d]]), label=lab)
            for lab, d in pairs
        ]
    field = _planar_field(field_name)
    lins = []
    for a in fixed_points(field):
        x, y = a.point_float
        jac = np.array([[float(v) for v in row] for row in a.jacobian])
        lins.append(
            Linearization(domain, nu, jac, label=f"({x:.6g},{y:.6g})")
        )
    return lins


def _analysis_row(a) -> dict:
    eigs = []
    for z in a.eigenvalues:
        zc = complex(z)
        eigs.append([zc.real, zc.imag])
    return {
        "point": [float(x) for x in a.point_float],
        "jacobian": [[float(v) for v in row] for row in a.jacobian],
        "eigenvalues": eigs,
        "delta": a.delta_float,
        "residual": a.residual_float,
    }


def _gap_report_dict(report) -> dict:
    return {
        "max_gap": float(report.max_gap),
        "witness": [float(report.witness[0]), float(report.witness[1])],
        "gap_histogram": [[float(g), int(c)] for g, c in report.gap_histogram],
        "sup_trend": [[float(x), float(g)] for x, g in report.sup_trend],
    }


def _witness_dict(w) -> dict:
    return {"gamma_lo": w.gamma_lo, "gamma_hi": w.gamma_hi, "n": w.n}


# ---------------------------------------------------------------------------
# subcommand runners: each returns (result dict, verdict line)

def _run_spectrum(p):
    domain = _build_domain(p)
    spec = enumerate_spectrum(
        domain, p["cutoff"], periodic_scaling=p["periodic-scaling"],
        threads=p.get("threads"),
    )
    if p.get("csv"):
        _atomic_file(p["csv"], spec.to_csv)
    result = {
        "count": int(spec.total_count),
        "distinct": len(spec),
        "lowest": float(spec.eigenvalues[0]) if len(spec) else None,
        "highest": float(spec.eigenvalues[-1]) if len(spec) else None,
        "csv": p.get("csv"),
    }
    if len(spec) >= 2:
        result["gap_report"] = _gap_report_dict(gap_stats(spec))
        verdict = (
            f"{result['count']} modes up to cutoff {p['cutoff']:g}; "
            f"max gap {result['gap_report']['max_gap']:g}"
        )
    else:
        result["gap_report"] = None
        verdict = f"{result['count']} modes up to cutoff {p['cutoff']:g}"
    return result, verdict


def _run_gaps(p):
    domain = _build_domain(p)
    spec = enumerate_spectrum(
        domain, p["cutoff"], periodic_scaling=p["periodic-scaling"],
        threads=p.get("threads"),
    )
    if len(spec) < 2:
        raise HypothesisNotMet(
            f"only {len(spec)} distinct eigenvalues below {p['cutoff']:g}; "
            "no gaps to report"
        )
    report = gap_stats(spec)
    result = _gap_report_dict(report)
    verdict = (
        f"max gap {result['max_gap']:g} at "
        f"({result['witness'][0]:g}, {result['witness'][1]:g})"
    )
    return result, verdict


def _run_jump(p):
    domain = _build_domain(p)
    spec = enumerate_spectrum(
        domain, p["cutoff"], periodic_scaling=p["periodic-scaling"],
        threads=p.get("threads"),
    )
    query = JumpQuery(theta=p["theta"], lip=p["lip"], cconst=p["cconst"],
                      nu=p["nu"])
    scan = jump_condition_scan(spec, query)
    result = {
        "best_n": int(scan.best_n),
        "best_ratio": float(scan.best_ratio),
        "satisfied": bool(scan.satisfied),
        "best_pair": [float(scan.best_pair[0]), float(scan.best_pair[1])],
        "ratio_trend": [[float(x), float(r)] for x, r in scan.ratio_trend],
    }
    verdict = (
        f"jump condition {'satisfied' if scan.satisfied else 'not satisfied'} "
        f"(best ratio {scan.best_ratio:g} at n={scan.best_n})"
    )
    return result, verdict


def _run_gauss_audit(p):
    audit = three_square_gap_audit(p["limit"])
    result = {
        "limit": p["limit"],
        "excluded_count": int(audit.excluded.size),
        "max_gap": int(audit.max_gap),
        "gap_witness": [int(audit.gap_witness[0]), int(audit.gap_witness[1])],
        "max_excluded_run": int(audit.max_excluded_run),
    }
    verdict = (
        f"max gap {result['max_gap']} at "
        f"({result['gap_witness'][0]}, {result['gap_witness'][1]}) "
        f"with {result['excluded_count']} excluded values"
    )
    return result, verdict


def _run_weyl(p):
    domain = _build_domain(p)
    spec = enumerate_spectrum(
        domain, p["cutoff"], periodic_scaling=p["periodic-scaling"],
        threads=p.get("threads"),
    )
    fit = weyl_fit(spec, domain.dim)
    result = {
        "exponent": float(fit.exponent),
        "expected": float(fit.expected),
        "residual": float(fit.residual),
        "n_used": int(fit.n_used),
    }
    verdict = (
        f"growth exponent {fit.exponent:.4f} "
        f"(expected {fit.expected:.4f} in dim {domain.dim})"
    )
    return result, verdict


def _run_fixed_points(p):
    field = _planar_field(p["field"])
    region = _region(p)
    if region is not None:
        analyses = fixed_points(field, region=region, tol=p["tol"])
    else:
        analyses = fixed_points(field, tol=p["tol"])
    if p.get("csv"):
        _atomic_file(p["csv"], lambda tmp: delta_table_to_csv(analyses, tmp))
    result = {
        "count": len(analyses),
        "points": [_analysis_row(a) for a in analyses],
        "csv": p.get("csv"),
    }
    verdict = f"{len(analyses)} hyperbolic-candidate fixed points found"
    return result, verdict


def _run_delta(p):
    field = _planar_field(p["field"])
    at = p["at"]
    if len(at) != 2:
        raise ConfigError("at needs exactly 2 coordinates")
    analysis = delta_of(field, tuple(at))
    result = _analysis_row(analysis)
    verdict = f"delta = {analysis.delta_float:.17g} at ({at[0]:g}, {at[1]:g})"
    return result, verdict


def _run_lemma33(p):
    field = _planar_field(p["field"])
    region = _region(p)
    kwargs = {"tol": p["tol"]}
    if region is not None:
        kwargs["region"] = region
    check = lemma33_check(field, **kwargs)
    result = {
        "ladder_found": bool(check.verdict),
        "matches": {
            str(target): _analysis_row(a) for target, a in check.matches.items()
        },
    }
    if check.verdict:
        verdict = "delta ladder 0,1,2,3 realized by distinct fixed points"
    else:
        missing = sorted(set(range(4)) - set(check.matches))
        verdict = f"no delta ladder: missing targets {missing}"
    return result, verdict


def _run_prop34(p):
    if p["bracket-lo"] >= p["bracket-hi"]:
        raise ConfigError("bracket-lo must be below bracket-hi")
    consts = solve_prop34(tol=p["tol"], bracket=(p["bracket-lo"], p["bracket-hi"]))
    checklist = {
        "delta1_is_1": consts.checklist.delta1_is_1,
        "delta3_is_3": consts.checklist.delta3_is_3,
        "ordering": consts.checklist.ordering,
        "r0sq_lt_12": consts.checklist.r0sq_lt_12,
        "points_in_Dc": consts.checklist.points_in_Dc,
        "points_norm_le_sqrt7": consts.checklist.points_norm_le_sqrt7,
    }
    result = {
        "a_star": float(consts.a_star),
        "k": float(consts.k),
        "b": float(consts.b),
        "phi_residual": float(consts.phi_residual),
        "checklist": checklist,
        "points": [[float(x), float(y)] for x, y in consts.points],
        "deltas": [float(d) for d in consts.deltas],
    }
    ok = consts.checklist.all_pass
    verdict = (
        f"{'PASS' if ok else 'FAIL'}: a* = {consts.a_star:.17g}, "
        f"middle-gap residual {consts.phi_residual:.3g}"
    )
    return result, verdict


def _run_prop35_verify(p):
    report = verify_prop35(exact=p["exact"])
    deltas = [float(d) for d in report.deltas]
    errors = [float(e) for e in report.delta_errors]
    result = {
        "exact": report.exact,
        "deltas": deltas,
        "delta_errors": errors,
        "ladder_ok": bool(report.ladder_ok()),
        "points": [_analysis_row(a) for a in report.analyses],
    }
    worst = max(errors) if errors else 0.0
    verdict = (
        f"{'PASS' if result['ladder_ok'] else 'FAIL'}: "
        f"delta ladder error {worst:.3g} "
        f"({'exact' if report.exact else 'float'} mode)"
    )
    return result, verdict


def _run_dissipativity(p):
    field = _planar_field(p["field"])
    report = dissipativity_radius(field, samples=p["samples"], seed=p["seed"])
    result = {
        "r0": float(report.r0),
        "verified": bool(report.verified),
        "component_radii": (
            None if report.component_radii is None
            else [float(r) for r in report.component_radii]
        ),
    }
    verdict = (
        f"sign condition verified outside radius {report.r0:.17g}"
        if report.verified
        else "sign condition not verified"
    )
    return result, verdict


def _run_region(p):
    field = _planar_field(p["field"])
    invariant = invariant_region_check(field, p["c"])
    result = {"c": p["c"], "invariant": bool(invariant)}
    verdict = (
        f"[0,1]x[0,{p['c']:g}] {'is' if invariant else 'is not'} invariant"
    )
    return result, verdict


def _run_index(p):
    domain = _build_domain(p)
    lin = Linearization(domain, p["nu"], _jac_matrix(p["jac"]))
    index, hyperbolic = unstable_index(lin, p["cutoff"], zero_tol=p["zero-tol"])
    result = {
        "index": int(index),
        "hyperbolic": bool(hyperbolic),
        "cutoff": p["cutoff"],
    }
    verdict = (
        f"unstable index {index} "
        f"({'hyperbolic' if hyperbolic else 'marginal spectrum present'})"
    )
    return result, verdict


def _run_parity(p):
    domain = _build_domain(p)
    lins = _linearizations(p, domain)
    report = parity_report(lins, p["cutoff"], zero_tol=p["zero-tol"])
    result = {
        "entries": [
            {"label": e.label, "index": int(e.index),
             "hyperbolic": bool(e.hyperbolic)}
            for e in report.entries
        ],
        "pairs": [
            {"a": q.label_a, "b": q.label_b,
             "difference": int(q.difference), "even": bool(q.even)}
            for q in report.pairs
        ],
        "excluded": list(report.excluded),
    }
    odd = [q for q in report.pairs if not q.even]
    if not report.pairs:
        verdict = "no hyperbolic pairs to compare"
    elif odd:
        verdict = f"{len(odd)} index pair(s) with odd difference"
    else:
        verdict = "all unstable-index differences even"
    return result, verdict


def _run_profile(p):
    domain = _build_domain(p)
    lin = Linearization(domain, p["nu"], _jac_matrix(p["jac"]))
    profile = count_profile(lin, p["cutoff"])
    gaps = profile.gaps_below_zero(p["gap-min"])
    result = {
        "breakpoints": [float(b) for b in profile.breakpoints],
        "counts": [int(c) for c in profile.counts],
        "valid_above": float(profile.valid_above),
        "cutoff": float(profile.cutoff),
        "gaps_below_zero": [
            {"gamma_lo": float(lo), "gamma_hi": float(hi), "n": int(n)}
            for lo, hi, n in gaps
        ],
    }
    verdict = (
        f"{len(profile.breakpoints)} breakpoints; "
        f"{len(gaps)} count plateaus below zero (certified above "
        f"{profile.valid_above:.17g})"
    )
    return result, verdict


def _run_nhim_dims(p):
    domain = _build_domain(p)
    lins = _linearizations(p, domain)
    per = []
    for lin in lins:
        feas = nhim_feasible_dims(lin, p["cutoff"], gap_min=p["gap-min"])
        dims = sorted(feas.dims)
        per.append({
            "label": lin.label,
            "dims": dims[: p["max-dims"]],
            "dim_count": len(dims),
            "truncation_bound": float(feas.truncation_bound),
        })
    result = {"equilibria": per, "gap_min": p["gap-min"]}
    if len(lins) >= 2:
        cert = nhim_certificate(lins, p["cutoff"], gap_min=p["gap-min"])
        result["certificate"] = cert.to_json_dict()
        if p.get("cert"):
            _atomic_write(p["cert"], render_report(cert.to_json_dict()))
        if cert.empty:
            verdict = (
                f"no common feasible dimension up to cutoff {p['cutoff']:g}"
            )
        else:
            verdict = (
                f"common feasible dimension n={cert.result.n} "
                f"on ({cert.result.gamma_lo:g}, {cert.result.gamma_hi:g})"
            )
    else:
        shown = per[0]["dims"]
        verdict = (
            f"{per[0]['dim_count']} feasible dimensions; "
            f"first {len(shown)}: {shown}"
        )
    return result, verdict


def _run_anhim(p):
    domain = _build_domain(p)
    lins = _linearizations(p, domain)
    cert = anhim_common_gamma(lins, p["cutoff"])
    result = cert.to_json_dict()
    if p.get("cert"):
        _atomic_write(p["cert"], render_report(result))
    if cert.empty:
        verdict = f"ANHIM obstruction: empty up to cutoff {p['cutoff']:g}"
    else:
        verdict = (
            f"ANHIM witness: n={cert.result.n} on "
            f"({cert.result.gamma_lo:g}, {cert.result.gamma_hi:g})"
        )
    return result, verdict


def _run_lemma41(p):
    threshold = lemma41_threshold(p["jac0"], p["jac1"], p["gap-bound"])
    result = {
        "threshold": float(threshold),
        "jac0": p["jac0"],
        "jac1": p["jac1"],
        "gap_bound": p["gap-bound"],
    }
    verdict = f"obstruction active for nu below {threshold:.17g}"
    return result, verdict


def _resolve_multiplier(name: str) -> Multiplier:
    if name == "cos-x1":
        return Multiplier(BoxDomain(dim=3), {(1, 0, 0): 1.0})
    if os.path.exists(name):
        return load_multiplier(name)
    builtins = ", ".join(_BUILTIN_MULTIPLIERS)
    raise ConfigError(
        f"multiplier {name!r} is neither a readable JSON file nor a builtin "
        f"({builtins})"
    )


def _run_sap_scan(p):
    h = _resolve_multiplier(p["h"])
    reports = sap_scan(h, p["k"], p["rho"], p["lambda-max"])
    if p.get("csv"):
        _atomic_file(p["csv"], lambda tmp: sap_reports_to_csv(reports, tmp))
    rows = [
        {
            "lambda": r.lam,
            "k": r.k,
            "window_modes": int(r.window_modes),
            "op_norm": r.op_norm,
            "h2_norm": r.h2_norm,
            "eps_eff": r.eps_eff,
            "gap": r.gap,
            "rho_ok": bool(r.rho_ok),
        }
        for r in reports
    ]
    result = {
        "windows": len(rows),
        "headline": rows[0] if rows else None,
        "reports": rows,
        "csv": p.get("csv"),
    }
    if rows:
        verdict = (
            f"best eps_eff {rows[0]['eps_eff']:.17g} at "
            f"lambda {rows[0]['lambda']:g} ({len(rows)} windows)"
        )
    else:
        verdict = "no spectral gap wide enough for the requested rho"
    return result, verdict


RUNNERS = {
    "spectrum": _run_spectrum,
    "gaps": _run_gaps,
    "jump": _run_jump,
    "gauss-audit": _run_gauss_audit,
    "weyl": _run_weyl,
    "fixed-points": _run_fixed_points,
    "delta": _run_delta,
    "lemma33": _run_lemma33,
    "prop34": _run_prop34,
    "prop35-verify": _run_prop35_verify,
    "dissipativity": _run_dissipativity,
    "region": _run_region,
    "index": _run_index,
    "parity": _run_parity,
    "profile": _run_profile,
    "nhim-dims": _run_nhim_dims,
    "anhim": _run_anhim,
    "lemma41": _run_lemma41,
    "sap-scan": _run_sap_scan,
}


def _echo_config(params) -> dict:
    echo = {}
    for key, val in params.items():
        if val is None:
            continue
        if isinstance(val, tuple):
            echo[key] = [
                list(v) if isinstance(v, tuple) else v for v in val
            ]
        else:
            echo[key] = val
    return echo


def run(config) -> dict:
    """Validate, dispatch, and wrap one subcommand into a report dict."""
    diags = validate(config)
    if diags:
        raise ConfigError("; ".join(diags))
    cmd = config["command"]
    params = _resolve(config, SCHEMAS[cmd])
    started = time.perf_counter()
    result, verdict = RUNNERS[cmd](params)
    report = {
        "tool": "imhyp",
        "version": __version__,
        "command": cmd,
        "config": _echo_config(params),
        "result": result,
        "verdict": verdict,
    }
    if params.get("timing"):
        report["timing_seconds"] = time.perf_counter() - started
    return report


# ---------------------------------------------------------------------------
# command line

_USAGE = """usage: imhyp <subcommand> [--config FILE.json] [--key value]...

subcommands:
  spectrum gaps jump gauss-audit weyl
  fixed-points delta lemma33 prop34 prop35-verify dissipativity region
  index parity profile nhim-dims anhim lemma41
  sap-scan

Every config key doubles as a --key flag; command-line flags override the
config file.  Common keys: --out REPORT.json --csv FILE.csv --timing true
--threads N (or IMHYP_THREADS).  Exit codes: 0 ok, 1 config error,
2 hypothesis not met, 3 numerical failure.
"""


def _parse_cli(cmd: str, argv: list) -> dict:
    config = {}
    overrides = {}
    i = 0
    while i < len(argv):
        tok = argv[i]
        if not tok.startswith("--"):
            raise ConfigError(f"expected --key, got {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, value = key.split("=", 1)
        else:
            if i + 1 >= len(argv):
                raise ConfigError(f"flag --{key} needs a value")
            i += 1
            value = argv[i]
        if key == "config":
            try:
                with open(value) as fh:
                    loaded = json.load(fh)
            except OSError as exc:
                raise ConfigError(f"cannot read config file: {exc}") from None
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config file is not valid JSON: {exc}") from None
            if not isinstance(loaded, dict):
                raise ConfigError("config file must hold a JSON object")
            file_cmd = loaded.pop("command", None)
            if file_cmd is not None and file_cmd != cmd:
                raise ConfigError(
                    f"config file is for command {file_cmd!r}, not {cmd!r}"
                )
            config.update(loaded)
        else:
            overrides[key] = value
        i += 1
    config.update(overrides)
    config["command"] = cmd
    return config


def main(argv=None) -> int:
    args = list(sys.argv[1:]) if argv is None else list(argv)
    if not args or args[0] in ("-h", "--help", "help"):
        print(_USAGE, end="")
        return 0
    if args[0] == "--version":
        print(f"imhyp {__version__}")
        return 0
    cmd = args[0]
    try:
        if cmd not in RUNNERS:
            close = difflib.get_close_matches(cmd, RUNNERS, n=1)
            hint = f" (did you mean '{close[0]}'?)" if close else ""
            raise ConfigError(f"unknown command {cmd!r}{hint}")
        config = _parse_cli(cmd, args[1:])
        report = run(config)
        text = render_report(report)
        out = report["config"].get("out")
        if out:
            _atomic_write(out, text)
            print(report["verdict"])
        else:
            print(text, end="")
    except ConfigError as exc:
        print(f"imhyp: config error: {exc}", file=sys.stderr)
        return 1
    except HypothesisNotMet as exc:
        print(f"imhyp: hypothesis not met: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"imhyp: numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
