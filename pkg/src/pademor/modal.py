"""Meromorphic solution-map backends.

A modal model is a diagonal representation of the operator and the source
term over an orthogonal eigenbasis: one (eigenvalue, source coefficient)
pair per mode.  The exact spectral Helmholtz backend on (0, pi)^2 and
synthetic pole/residue fixtures both reduce to this form, so evaluation,
Taylor expansion and pole listing are shared.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    CenterOnPole,
    DuplicatePoles,
    LengthMismatch,
    PoleEvaluation,
    QuadratureNotConverged,
)
from .hilbert import InnerProductWeights

POLE_GROUP_TOL = 1e-12
DEFAULT_DROP_THRESHOLD = 1e-14
DEFAULT_MAX_INDEX = 40
DEFAULT_QUAD_ORDER = 64


@dataclass(frozen=True)
class ModeEntry:
    eigenvalue: complex
    source_coefficient: complex
    basis_tag: tuple | None = None


@dataclass(frozen=True)
class ModalModel:
    modes: tuple
    weights: InnerProductWeights
    drop_threshold: float = DEFAULT_DROP_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if len(self.modes) != self.weights.dimension:
            raise LengthMismatch(
                f"{len(self.modes)} modes vs {self.weights.dimension} weights"
            )
        object.__setattr__(
            self,
            "eigenvalues",
            np.array([m.eigenvalue for m in self.modes], dtype=complex),
        )
        object.__setattr__(
            self,
            "coefficients",
            np.array([m.source_coefficient for m in self.modes], dtype=complex),
        )

    @property
    def dimension(self):
        return len(self.modes)

    def source_norm(self):
        """V-norm of the source term."""
        return float(
            np.sqrt(np.sum(self.weights.weights * np.abs(self.coefficients) ** 2))
        )


@dataclass(frozen=True)
class TaylorSeries:
    center: complex
    coefficients: np.ndarray  # shape (E+1, dimension)

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 2 or c.shape[0] < 1:
            raise ValueError("coefficients must be a 2-d array with >= 1 row")
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "center", complex(self.center))

    @property
    def length(self):
        return self.coefficients.shape[0]

    @property
    def dimension(self):
        return self.coefficients.shape[1]


def build_synthetic(poles, residue_norms):
    """One-mode-per-pole fixture with real residue magnitudes and L2 weights."""
    poles = [complex(p) for p in poles]
    norms = [float(r) for r in residue_norms]
    if len(poles) != len(norms):
        raise LengthMismatch(f"{len(poles)} poles vs {len(norms)} residue norms")
    for i in range(len(poles)):
        for j in range(i + 1, len(poles)):
            if abs(poles[i] - poles[j]) <= 1e-10:
                raise DuplicatePoles(f"poles {poles[i]} and {poles[j]} coincide")
    if any(r <= 0.0 for r in norms):
        raise ValueError("residue norms must be positive")
    modes = [ModeEntry(p, r) for p, r in zip(poles, norms)]
    return ModalModel(modes, InnerProductWeights.l2(len(modes)))


def _bubble_line_integrals(indices, freq, quad_order):
    """1-d integrals of x (pi - x) e^{-i freq x} sin(k x) over (0, pi)."""
    nodes, wts = np.polynomial.legendre.leggauss(quad_order)
    x = 0.5 * np.pi * (nodes + 1.0)
    w = 0.5 * np.pi * wts
    g = x * (np.pi - x) * np.exp(-1j * freq * x)
    sines = np.sin(np.outer(indices, x))
    return sines @ (w * g)


def _helmholtz_coefficients(max_index, nu_sq, theta, quad_order):
    """L2-projection coefficients of f = -lap(u_ex) - nu^2 u_ex onto the
    normalized eigenfunctions (2/pi) sin(mx) sin(ny).

    The exact solution u_ex is the bubble 16/pi^4 x1 x2 (pi-x1) (pi-x2)
    times the plane-wave factor; since u_ex and the eigenfunctions vanish
    on the boundary, Green's identity turns the projection of f into
    (m^2 + n^2 - nu^2) times the projection of u_ex, which factorizes into
    tensor 1-d Gauss-Legendre quadratures.
    """
    nu = np.sqrt(nu_sq)
    k = np.arange(1, max_index + 1)
    ix = _bubble_line_integrals(k, nu * np.cos(theta), quad_order)
    iy = _bubble_line_integrals(k, nu * np.sin(theta), quad_order)
    proj = (2.0 / np.pi) * (16.0 / np.pi**4) * np.outer(ix, iy)
    lam = (k**2)[:, None] + (k**2)[None, :]
    return (lam - nu_sq) * proj  # indexed [m-1, n-1]


def build_rectangle_helmholtz(
    max_index=DEFAULT_MAX_INDEX,
    nu_sq=12.0,
    theta=np.pi / 3,
    quad_order=DEFAULT_QUAD_ORDER,
    drop_threshold=DEFAULT_DROP_THRESHOLD,
):
    """Exact spectral Helmholtz model on (0, pi)^2 with Dirichlet boundary.

    Modes are (m, n) with 1 <= m, n <= max_index and eigenvalue m^2 + n^2;
    the inner product is the energy one with shift nu_sq.  The quadrature
    is validated once at build time by doubling its order.
    """
    if max_index < 4:
        raise ValueError("max_index must be >= 4")
    if quad_order < 20:
        raise ValueError("quad_order must be >= 20")
    if nu_sq <= 0.0:
        raise ValueError("nu_sq must be positive")

    coef = _helmholtz_coefficients(max_index, nu_sq, theta, quad_order)
    check = _helmholtz_coefficients(max_index, nu_sq, theta, 2 * quad_order)
    scale = np.max(np.abs(check))
    dev = np.max(np.abs(coef - check))
    if dev > 1e-10 * scale:
        raise QuadratureNotConverged(
            f"coefficients move by {dev / scale:.3e} (relative) when the "
            f"quadrature order doubles from {quad_order}"
        )

    modes = []
    for m in range(1, max_index + 1):
        for n in range(1, max_index + 1):
            modes.append(ModeEntry(m * m + n * n, coef[m - 1, n - 1], (m, n)))
    eigenvalues = [m.eigenvalue for m in modes]
    weights = InnerProductWeights.energy(eigenvalues, nu_sq)
    return ModalModel(modes, weights, drop_threshold)


def pole_list(model, z0):
    """Distinct retained poles sorted by distance from z0.

    Equal eigenvalues (within 1e-12 absolute) are grouped; a pole is kept
    if the V-norm of the grouped residue exceeds drop_threshold * ||source||.
    Ties in distance break lexicographically by (Re, Im).
    """
    z0 = complex(z0)
    order = sorted(
        range(model.dimension),
        key=lambda k: (model.eigenvalues[k].real, model.eigenvalues[k].imag),
    )
    groups = []
    for k in order:
        lam = model.eigenvalues[k]
        if groups and abs(lam - groups[-1][0]) <= POLE_GROUP_TOL:
            groups[-1][1].append(k)
        else:
            groups.append([lam, [k]])
    floor = model.drop_threshold * model.source_norm()
    out = []
    for lam, idx in groups:
        idx = np.array(idx)
        rnorm = float(
            np.sqrt(
                np.sum(
                    model.weights.weights[idx] * np.abs(model.coefficients[idx]) ** 2
                )
            )
        )
        if rnorm > floor:
            out.append((complex(lam), rnorm))
    return sorted(out, key=lambda pr: (abs(pr[0] - z0), pr[0].real, pr[0].imag))


def _check_distance(model, z, min_dist, exc):
    z = complex(z)
    for lam, _ in pole_list(model, z):
        if abs(lam - z) <= min_dist:
            message = f"point {z} lies within {min_dist} of pole {lam}"
            if exc is PoleEvaluation:
                raise PoleEvaluation(message, pole=lam)
            raise exc(message)
    return z


def evaluate_exact(model, z):
    """S(z): componentwise source_coefficient / (eigenvalue - z)."""
    z = _check_distance(model, z, 1e-12, PoleEvaluation)
    return model.coefficients / (model.eigenvalues - z)


def taylor_coefficients(model, z0, E):
    """Closed-form Taylor coefficients: component k of order g is
    source_coefficient_k / (eigenvalue_k - z0)^{g+1}."""
    z0 = _check_distance(model, z0, 1e-10, CenterOnPole)
    base = model.eigenvalues - z0
    powers = np.arange(1, E + 2)
    coeffs = model.coefficients[None, :] / base[None, :] ** powers[:, None]
    return TaylorSeries(z0, coeffs)


def recursive_taylor(model, z0, E):
    """Taylor coefficients by the shifted-solve recursion: S_0 exactly, then
    each next order divides the previous one by (eigenvalue - z0)."""
    z0 = _check_distance(model, z0, 1e-10, CenterOnPole)
    base = model.eigenvalues - z0
    rows = [model.coefficients / base]
    for _ in range(E):
        rows.append(rows[-1] / base)
    return TaylorSeries(z0, np.array(rows))


def model_to_json(model):
    obj = {
        "modes": [
            {
                "lambda": [float(np.real(m.eigenvalue)), float(np.imag(m.eigenvalue))],
                "coef": [
                    float(np.real(m.source_coefficient)),
                    float(np.imag(m.source_coefficient)),
                ],
                "tag": list(m.basis_tag) if m.basis_tag is not None else None,
            }
            for m in model.modes
        ],
        "weights": (
            {"kind": "energy", "shift": model.weights.shift}
            if model.weights.kind == "energy"
            else {"kind": "l2"}
        ),
        "drop_threshold": model.drop_threshold,
    }
    return obj


def model_from_json(obj):
    modes = [
        ModeEntry(
            complex(m["lambda"][0], m["lambda"][1]),
            complex(m["coef"][0], m["coef"][1]),
            tuple(m["tag"]) if m.get("tag") is not None else None,
        )
        for m in obj["modes"]
    ]
    wspec = obj["weights"]
    if wspec["kind"] == "energy":
        weights = InnerProductWeights.energy(
            [m.eigenvalue for m in modes], wspec["shift"]
        )
    else:
        weights = InnerProductWeights.l2(len(modes))
    return ModalModel(modes, weights, obj.get("drop_threshold", DEFAULT_DROP_THRESHOLD))


def save_model(model, path):
    with open(path, "w") as fh:
        json.dump(model_to_json(model), fh)


def load_model(path):
    with open(path) as fh:
        return model_from_json(json.load(fh))
