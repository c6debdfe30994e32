"""Experiment driver: frequency sweeps, convergence studies, pole studies.

All commands consume a JSON study configuration and emit deterministic CSV
(17 significant digits, '.' decimal, '\\n' line endings).  Every data row
carries the denominator magnitude so near-pole rows can be masked after
the fact instead of being dropped.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import pade, poly
from .errors import ConfigError, PoleEvaluation
from .modal import (
    build_rectangle_helmholtz,
    build_synthetic,
    evaluate_exact,
    pole_list,
)
from .hilbert import complex_to_text, norm, pair_to_complex

SLOPE_FIT_WINDOW = (1e-11, 1e-1)
NEAR_POLE_DISTANCE = 1e-6


def fmt(x):
    """Deterministic float formatting: 17 significant digits."""
    if x != x:
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


@dataclass
class StudyConfig:
    model_spec: dict
    z0: complex
    k_lo: float
    k_hi: float
    M_list: list
    N: int
    E_rule: str = "MaxMN"
    rho_factor: float = 1.0
    grid_points: int = 101
    z_probes: list = field(default_factory=list)
    E_list: list = field(default_factory=list)

    def rho(self):
        return self.rho_factor * self.radius()

    def radius(self):
        """R_K: largest distance from z0 to the interval of interest."""
        return max(abs(self.k_lo - self.z0), abs(self.k_hi - self.z0))

    def fast_E(self, M):
        if self.E_rule == "MaxMN":
            return max(M, self.N)
        return M + self.N

    def grid(self):
        return np.linspace(self.k_lo, self.k_hi, self.grid_points)


def _require(cond, path, message):
    if not cond:
        raise ConfigError(f"at {path}: {message}")


def parse_config(obj):
    """Validate a raw JSON object into a StudyConfig (ConfigError on failure)."""
    _require(isinstance(obj, dict), "$", "config must be a JSON object")
    model_spec = obj.get("model")
    _require(isinstance(model_spec, dict), "$.model", "missing model object")
    kind = model_spec.get("kind")
    _require(kind in ("helmholtz", "synthetic"), "$.model.kind",
             "must be 'helmholtz' or 'synthetic'")
    if kind == "synthetic":
        _require(isinstance(model_spec.get("poles"), list) and model_spec["poles"],
                 "$.model.poles", "must be a non-empty list of [re, im] pairs")
        _require(isinstance(model_spec.get("residue_norms"), list),
                 "$.model.residue_norms", "must be a list of positive reals")

    z0_pair = obj.get("z0")
    _require(isinstance(z0_pair, list) and len(z0_pair) == 2, "$.z0",
             "must be a [re, im] pair")
    z0 = pair_to_complex(z0_pair)

    K = obj.get("K")
    _require(isinstance(K, list) and len(K) == 2, "$.K", "must be [k_lo, k_hi]")
    k_lo, k_hi = float(K[0]), float(K[1])
    _require(math.isfinite(k_lo) and math.isfinite(k_hi) and k_lo < k_hi,
             "$.K", "interval must be finite and increasing")

    M_list = obj.get("M_list")
    _require(isinstance(M_list, list) and M_list, "$.M_list",
             "must be a non-empty list of integers")
    for i, M in enumerate(M_list):
        _require(isinstance(M, int) and M >= 0, f"$.M_list[{i}]",
                 "must be a nonnegative integer")

    N = obj.get("N")
    _require(isinstance(N, int) and N >= 0, "$.N", "must be a nonnegative integer")

    E_rule = obj.get("E_rule", "MaxMN")
    _require(E_rule in ("MaxMN", "MPlusN"), "$.E_rule",
             "must be 'MaxMN' or 'MPlusN'")

    rho_rule = obj.get("rho_rule", {"factor": 1.0})
    _require(isinstance(rho_rule, dict) and "factor" in rho_rule, "$.rho_rule",
             "must be an object with a 'factor' entry")
    rho_factor = float(rho_rule["factor"])
    _require(rho_factor > 0.0, "$.rho_rule.factor", "must be positive")

    grid_points = obj.get("grid_points", 101)
    _require(isinstance(grid_points, int) and grid_points >= 2, "$.grid_points",
             "must be an integer >= 2")

    z_probes = []
    for i, pair in enumerate(obj.get("z_probes", [])):
        _require(isinstance(pair, list) and len(pair) == 2, f"$.z_probes[{i}]",
                 "must be a [re, im] pair")
        z_probes.append(pair_to_complex(pair))

    E_list = obj.get("E_list", [])
    for i, E in enumerate(E_list):
        _require(isinstance(E, int), f"$.E_list[{i}]", "must be an integer")
    _require(list(E_list) == sorted(E_list), "$.E_list", "must be ascending")

    return StudyConfig(
        model_spec=model_spec,
        z0=z0,
        k_lo=k_lo,
        k_hi=k_hi,
        M_list=list(M_list),
        N=N,
        E_rule=E_rule,
        rho_factor=rho_factor,
        grid_points=grid_points,
        z_probes=z_probes,
        E_list=list(E_list),
    )


def load_config(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(obj)


def build_model(config):
    spec = config.model_spec
    if spec["kind"] == "helmholtz":
        return build_rectangle_helmholtz(
            max_index=spec.get("max_index", 40),
            nu_sq=spec.get("nu_sq", 12.0),
            theta=spec.get("theta", math.pi / 3),
            quad_order=spec.get("quad_order", 64),
        )
    return build_synthetic(
        [pair_to_complex(p) for p in spec["poles"]],
        [float(r) for r in spec["residue_norms"]],
    )


def _check_center(model, config):
    for lam, _ in pole_list(model, config.z0):
        if abs(lam - config.z0) <= 1e-10:
            raise ConfigError(f"at $.z0: center {config.z0} lies on pole {lam}")


def _build_fast(model, config, M):
    params = pade.BuildParams(config.z0, M, config.N, config.fast_E(M), "fast")
    return pade.build(model, params)


def _build_standard(model, config, M, E=None, rho=None):
    if E is None:
        E = M + config.N
    if rho is None:
        rho = config.rho()
    params = pade.BuildParams(config.z0, M, config.N, E, "standard", rho)
    return pade.build(model, params)


def _point_error(model, approx, z, poles=None):
    """(error, qmag, near_pole_flag); the error is inf on a pole of S."""
    if poles is None:
        poles = pole_list(model, approx.params.z0)
    value, qmag = pade.evaluate(approx, z)
    near = min(abs(lam - z) for lam, _ in poles) < NEAR_POLE_DISTANCE
    try:
        exact = evaluate_exact(model, z)
    except PoleEvaluation:
        return math.inf, qmag, True
    return norm(exact - value, model.weights), qmag, near


def fit_decay_factor(indices, errors, window=SLOPE_FIT_WINDOW):
    """Per-step decay factor from a least-squares fit of log10(error).

    Only points inside the window are used (floor/preasymptotic points are
    discarded); returns nan with fewer than two usable points.
    """
    lo, hi = window
    xs, ys = [], []
    for i, e in zip(indices, errors):
        if lo <= e <= hi:
            xs.append(i)
            ys.append(math.log10(e))
    if len(xs) < 2:
        return math.nan
    slope = np.polyfit(xs, ys, 1)[0]
    return float(10.0**slope)


def predicted_point_factor(model, config, z):
    """|z - z0| / |lambda_{N+1} - z0| from the ordered pole list."""
    poles = pole_list(model, config.z0)
    if len(poles) <= config.N:
        return 0.0
    return abs(z - config.z0) / abs(poles[config.N][0] - config.z0)


def predicted_pole_factor(model, config, alpha):
    """Per-E decay factor |(lambda_alpha - z0) / (lambda_{N+1} - z0)|^2."""
    poles = pole_list(model, config.z0)
    if len(poles) <= config.N:
        return 0.0
    lam_a = poles[alpha - 1][0]
    lam_next = poles[config.N][0]
    return (abs(lam_a - config.z0) / abs(lam_next - config.z0)) ** 2


def _write(path, lines):
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_build(config, out):
    model = build_model(config)
    _check_center(model, config)
    entries = []
    for M in config.M_list:
        fast = _build_fast(model, config, M)
        entries.append(pade.approximant_to_json(fast))
        std = _build_standard(model, config, M)
        entries.append(pade.approximant_to_json(std))
    with open(out, "w") as fh:
        json.dump({"approximants": entries}, fh, indent=1, sort_keys=True)


def cmd_sweep(config, out):
    model = build_model(config)
    _check_center(model, config)
    fast = {M: _build_fast(model, config, M) for M in config.M_list}
    std = {M: _build_standard(model, config, M) for M in config.M_list}
    poles = pole_list(model, config.z0)

    header = ["z"]
    header += [f"abs_error_fast_M{M}" for M in config.M_list]
    header += [f"abs_error_std_M{M}" for M in config.M_list]
    header += [f"q_magnitude_fast_M{M}" for M in config.M_list]
    header += [f"q_magnitude_std_M{M}" for M in config.M_list]
    header.append("near_pole")
    lines = [",".join(header)]
    for z in config.grid():
        errs_f, errs_s, qm_f, qm_s = [], [], [], []
        near_any = False
        for M in config.M_list:
            e, q, near = _point_error(model, fast[M], z, poles)
            errs_f.append(e)
            qm_f.append(q)
            near_any |= near
        for M in config.M_list:
            e, q, near = _point_error(model, std[M], z, poles)
            errs_s.append(e)
            qm_s.append(q)
            near_any |= near
        row = [fmt(z)]
        row += [fmt(v) for v in errs_f + errs_s + qm_f + qm_s]
        row.append("1" if near_any else "0")
        lines.append(",".join(row))
    _write(out, lines)


def cmd_convergence(config, out, z_probes=None):
    model = build_model(config)
    _check_center(model, config)
    probes = list(z_probes) if z_probes is not None else config.z_probes
    if not probes:
        raise ConfigError("at $.z_probes: convergence study needs probe points")
    poles = pole_list(model, config.z0)
    for z in probes:
        dist = min(abs(lam - z) for lam, _ in poles)
        if dist < 0.05:
            raise ConfigError(f"at $.z_probes: probe {z} is within 0.05 of a pole")
    for M in config.M_list:
        if M < config.N - 1:
            raise ConfigError(
                f"at $.M_list: M={M} violates the rate guarantee M >= N-1"
            )

    fast = {M: _build_fast(model, config, M) for M in config.M_list}
    std = {M: _build_standard(model, config, M) for M in config.M_list}

    results = {}
    for z in probes:
        errs_f = [_point_error(model, fast[M], z, poles) for M in config.M_list]
        errs_s = [_point_error(model, std[M], z, poles) for M in config.M_list]
        fitted = fit_decay_factor(config.M_list, [e for e, _, _ in errs_f])
        predicted = predicted_point_factor(model, config, z)
        results[z] = (errs_f, errs_s, fitted, predicted)

    header = [
        "probe", "M", "error_fast", "error_std",
        "q_magnitude_fast", "q_magnitude_std",
        "fitted_factor_fast", "predicted_factor",
    ]
    lines = [",".join(header)]
    for z in probes:
        errs_f, errs_s, fitted, predicted = results[z]
        for i, M in enumerate(config.M_list):
            ef, qf, _ = errs_f[i]
            es, qs, _ = errs_s[i]
            lines.append(",".join([
                complex_to_text(z), str(M), fmt(ef), fmt(es),
                fmt(qf), fmt(qs), fmt(fitted), fmt(predicted),
            ]))
    _write(out, lines)


def _nearest_root_errors(roots, true_poles):
    """Per-pole nearest-root error plus the leftover unmatched roots."""
    errors = []
    matched = set()
    for lam in true_poles:
        dists = [abs(r - lam) for r in roots]
        best = int(np.argmin(dists))
        matched.add(best)
        errors.append(dists[best])
    extras = [r for i, r in enumerate(roots) if i not in matched]
    return errors, extras


def cmd_poles(config, out, E_list=None):
    model = build_model(config)
    _check_center(model, config)
    E_values = list(E_list) if E_list is not None else config.E_list
    if not E_values:
        raise ConfigError("at $.E_list: pole study needs a list of E values")
    if E_values != sorted(E_values):
        raise ConfigError("at $.E_list: must be ascending")
    if min(E_values) < config.N:
        raise ConfigError(f"at $.E_list: minimum E must be >= N = {config.N}")
    N = config.N
    true_poles = [lam for lam, _ in pole_list(model, config.z0)[:N]]

    header = ["E"]
    header += [f"abs_error_fast_lambda{a}" for a in range(1, N + 1)]
    header += [f"abs_error_std_lambda{a}" for a in range(1, N + 1)]
    header += [f"predicted_factor_lambda{a}" for a in range(1, N + 1)]
    header += ["q_magnitude_fast", "q_magnitude_std",
               "extra_roots_fast", "extra_roots_std"]
    lines = [",".join(header)]
    predicted = [predicted_pole_factor(model, config, a) for a in range(1, N + 1)]
    for E in E_values:
        fast = _build_fast(model, config, E)
        std = _build_standard(model, config, E - N, E=E)
        err_f, extra_f = _nearest_root_errors(pade.approximant_poles(fast), true_poles)
        err_s, extra_s = _nearest_root_errors(pade.approximant_poles(std), true_poles)
        row = [str(E)]
        row += [fmt(e) for e in err_f + err_s + predicted]
        row.append(fmt(abs(poly.evaluate(fast.denominator, config.z0))))
        row.append(fmt(abs(poly.evaluate(std.denominator, config.z0))))
        row.append(";".join(complex_to_text(r) for r in extra_f))
        row.append(";".join(complex_to_text(r) for r in extra_s))
        lines.append(",".join(row))
    _write(out, lines)


def cmd_compare(config, out, E_list=None):
    """Fast(E) against standard(E) at equal derivative budget: fast uses
    M = E, standard uses M = E - N."""
    model = build_model(config)
    _check_center(model, config)
    E_values = list(E_list) if E_list is not None else config.E_list
    if not E_values:
        raise ConfigError("at $.E_list: comparison needs a list of E values")
    if min(E_values) < config.N:
        raise ConfigError(f"at $.E_list: minimum E must be >= N = {config.N}")
    poles = pole_list(model, config.z0)

    header = ["E", "z", "error_fast", "error_std", "ratio",
              "q_magnitude_fast", "q_magnitude_std", "near_pole"]
    lines = [",".join(header)]
    for E in E_values:
        fast = _build_fast(model, config, E)
        std = _build_standard(model, config, E - config.N, E=E)
        for z in config.grid():
            ef, qf, near_f = _point_error(model, fast, z, poles)
            es, qs, near_s = _point_error(model, std, z, poles)
            ratio = ef / es if es > 0 else math.inf
            lines.append(",".join([
                str(E), fmt(z), fmt(ef), fmt(es), fmt(ratio),
                fmt(qf), fmt(qs), "1" if (near_f or near_s) else "0",
            ]))
    _write(out, lines)
