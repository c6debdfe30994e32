"""Dense complex linear-algebra kernels for small matrices (order <= 64).

Provides a cyclic complex Jacobi eigensolver for Hermitian matrices, the
minimal right-singular vector of a small upper-triangular factor, and a
Durand-Kerner simultaneous polynomial root finder with deterministic
initialization.  All routines are pure functions on value inputs.
"""

import cmath
from typing import NamedTuple

import numpy as np

from .errors import DegenerateLeadingCoefficient, NoConvergence, NonHermitianInput

HERMITIAN_TOL = 1e-13
DEGENERACY_GAP = 1e-12
MAX_JACOBI_SWEEPS = 100
MAX_ROOT_ITERATIONS = 500


class MinEigen(NamedTuple):
    value: float
    vector: np.ndarray
    degenerate: bool


class MinSingular(NamedTuple):
    value: float
    vector: np.ndarray
    degenerate: bool


def phase_fix(v):
    """Rotate v so its largest-magnitude entry is real nonnegative.

    Ties pick the lowest index.  A zero vector is returned unchanged.
    """
    v = np.asarray(v, dtype=complex)
    k = int(np.argmax(np.abs(v)))
    a = abs(v[k])
    if a == 0.0:
        return v.copy()
    out = v * (v[k].conjugate() / a)
    out[k] = a  # force exactly real
    return out


def _check_hermitian(H):
    H = np.ascontiguousarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] < 1:
        raise NonHermitianInput("expected a square matrix of order >= 1")
    scale = np.linalg.norm(H)
    dev = np.max(np.abs(H - H.conj().T))
    if dev > HERMITIAN_TOL * max(scale, 1e-300):
        raise NonHermitianInput(
            f"matrix deviates from Hermitian symmetry by {dev:.3e} "
            f"(scale {scale:.3e})"
        )
    return 0.5 * (H + H.conj().T), scale


def hermitian_eigensystem(H, tol=1e-12):
    """Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Returns (values, vectors) with values ascending and vectors as columns,
    each phase-fixed.  Residuals satisfy ||H v - mu v|| <= tol * ||H||_F.
    """
    A, scale = _check_hermitian(H)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    if n == 1 or scale == 0.0:
        vals = A.real.diagonal().copy()
        return vals, phase_fix_columns(V)

    # Quadratic convergence: off-diagonal mass well below tol*scale gives
    # eigen-residuals within the contract.
    target = 0.1 * tol * scale
    skip = np.finfo(float).eps * scale / n
    mask = ~np.eye(n, dtype=bool)
    for sweep in range(MAX_JACOBI_SWEEPS + 1):
        off = np.linalg.norm(A[mask])
        if off <= target:
            break
        if sweep == MAX_JACOBI_SWEEPS:
            raise NoConvergence(
                f"Jacobi sweeps exceeded {MAX_JACOBI_SWEEPS} without reaching "
                f"off-diagonal target {target:.3e}"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = A[p, q]
                ah = abs(h)
                if ah <= skip:
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    continue
                u = h / ah
                tau = (A[q, q].real - A[p, p].real) / (2.0 * ah)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # column update: A <- A J, with J the (p,q) unitary rotation
                Ap = A[:, p].copy()
                Aq = A[:, q].copy()
                A[:, p] = c * Ap - s * np.conj(u) * Aq
                A[:, q] = s * u * Ap + c * Aq
                # row update: A <- J^H A
                Rp = A[p, :].copy()
                Rq = A[q, :].copy()
                A[p, :] = c * Rp - s * u * Rq
                A[q, :] = s * np.conj(u) * Rp + c * Rq
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                Vp = V[:, p].copy()
                Vq = V[:, q].copy()
                V[:, p] = c * Vp - s * np.conj(u) * Vq
                V[:, q] = s * u * Vp + c * Vq

    vals = A.real.diagonal().copy()
    order = np.argsort(vals, kind="stable")
    return vals[order], phase_fix_columns(V[:, order])


def phase_fix_columns(V):
    out = np.empty_like(V)
    for j in range(V.shape[1]):
        out[:, j] = phase_fix(V[:, j])
    return out


def _lexicographic_key(v):
    return tuple(np.real(v)) + tuple(np.imag(v))


def hermitian_min_eigenpair(H, tol=1e-12):
    """Smallest eigenpair of a Hermitian matrix.

    The eigenvector is unit-norm with its largest-magnitude entry real
    nonnegative.  When the two smallest eigenvalues differ by less than
    1e-12 * ||H||_F the result is flagged degenerate and, among the
    near-minimal eigenvectors, the phase-fixed lexicographically smallest
    one (real parts, then imaginary parts) is returned.
    """
    vals, vecs = hermitian_eigensystem(H, tol)
    scale = np.linalg.norm(np.asarray(H))
    gap_tol = DEGENERACY_GAP * max(scale, 1e-300)
    near = np.nonzero(vals - vals[0] < gap_tol)[0]
    degenerate = len(near) > 1
    if degenerate:
        best = min(near, key=lambda j: _lexicographic_key(vecs[:, j]))
    else:
        best = near[0]
    v = vecs[:, best]
    v = v / np.linalg.norm(v)
    return MinEigen(float(vals[0]), phase_fix(v), degenerate)


def min_right_singular_vector(R, tol=1e-12):
    """Right-singular vector of an upper-triangular R for its smallest
    singular value.

    Works on the small normal matrix R*R; same residual and phase contract
    as hermitian_min_eigenpair.
    """
    R = np.asarray(R, dtype=complex)
    H = R.conj().T @ R
    res = hermitian_min_eigenpair(H, tol)
    sigma = np.sqrt(max(res.value, 0.0))
    return MinSingular(float(sigma), res.vector, res.degenerate)


def polynomial_roots(coeffs, tol=1e-10):
    """All roots (with multiplicity) of a polynomial in ascending coefficients.

    Durand-Kerner simultaneous iteration with the deterministic start
    r * (0.4 + 0.9i)^k, r being the Cauchy root-radius bound of the monic
    polynomial.  Roots are returned sorted by (magnitude, phase), and each
    root satisfies |p(root)| <= tol * max|coeff| * (1 + |root|)^degree.
    """
    a = np.asarray(coeffs, dtype=complex)
    if a.ndim != 1 or a.size == 0:
        raise DegenerateLeadingCoefficient("empty coefficient list")
    degree = a.size - 1
    if degree == 0:
        return []
    if degree > 32:
        raise DegenerateLeadingCoefficient(f"degree {degree} exceeds 32")
    amax = np.max(np.abs(a))
    if amax == 0.0 or abs(a[-1]) / amax <= 1e-13:
        raise DegenerateLeadingCoefficient(
            "leading coefficient vanishes relative to the coefficient scale"
        )
    b = a / a[-1]  # monic, ascending
    radius = 1.0 + float(np.max(np.abs(b[:-1])))
    seed = 0.4 + 0.9j
    x = radius * seed ** np.arange(degree)

    powers = np.arange(degree + 1)
    for _ in range(MAX_ROOT_ITERATIONS):
        px = (x[:, None] ** powers) @ b
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = np.prod(diff, axis=1)
        step = px / denom
        x = x - step
        if np.max(np.abs(step)) <= 1e-15 * (1.0 + np.max(np.abs(x))):
            break

    # The step size can stall at rounding level without ever meeting the
    # break criterion; the residual bound below is the actual guarantee.
    residuals = np.abs((x[:, None] ** powers) @ a)
    bounds = tol * amax * (1.0 + np.abs(x)) ** degree
    if np.any(residuals > bounds):
        worst = float(np.max(residuals / np.maximum(bounds, 1e-300)))
        raise NoConvergence(
            f"root residual check failed (worst ratio {worst:.3e})"
        )
    return sorted(x.tolist(), key=lambda r: (abs(r), cmath.phase(r)))


def cluster_roots(roots, rel_tol=1e-7):
    """Group nearly equal roots for reporting; raw roots stay untouched.

    Returns a list of (representative, multiplicity), representatives being
    the mean of each cluster.  Clustering is relative to the root scale.
    """
    if not roots:
        return []
    scale = max(max(abs(r) for r in roots), 1.0)
    clusters = []
    for r in roots:
        for c in clusters:
            if abs(r - c[0] / c[1]) <= rel_tol * scale:
                c[0] += r
                c[1] += 1
                break
        else:
            clusters.append([r, 1])
    return [(c[0] / c[1], c[1]) for c in clusters]
