"""Spherical harmonic primitives: Legendre kernels, complex SH, rotations, radial functions.

Conventions used throughout the package:

* Complex orthonormal spherical harmonics with the Condon-Shortley phase,
  ``Y_n^m(theta, phi) = norm_legendre(n, m, cos(theta)) * exp(1j*m*phi)``,
  where ``theta`` is the colatitude measured from +z and ``phi`` the azimuth
  from +x toward +y.
* Rotations are active, right-handed, z-y-z Euler angles:
  ``R(alpha, beta, gamma) = Rz(alpha) @ Ry(beta) @ Rz(gamma)``.
  Rotating a function ``f`` by ``R`` (i.e. ``f'(x) = f(R^{-1} x)``) maps its
  coefficient vector ``c`` of degree ``n`` to ``wigner_d_matrix(n, ang) @ c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
INV_SQRT_4PI = 1.0 / math.sqrt(4.0 * math.pi)


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-12):
        raise ValueError(f"argument outside [-1, 1]: max |x| = {np.max(np.abs(x))}")
    return np.clip(x, -1.0, 1.0)


def assoc_legendre(n: int, m: int, x):
    """Associated Legendre polynomial P_n^m(x) with Condon-Shortley phase.

    Evaluated by the standard (m,m) -> (m+1,m) -> upward-in-n recurrence;
    no explicit factorials. ``x`` may be a scalar or an array in [-1, 1].
    """
    if n < 0 or m < 0 or m > n:
        raise ValueError(f"invalid degree/order: n={n}, m={m} (need 0 <= m <= n)")
    x = _check_x(x)
    s = np.sqrt((1.0 - x) * (1.0 + x))
    # P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, built factor by factor
    pmm = np.ones_like(x)
    for k in range(1, m + 1):
        pmm = pmm * (-(2 * k - 1)) * s
    if n == m:
        return pmm if pmm.ndim else float(pmm)
    pm1 = x * (2 * m + 1) * pmm
    if n == m + 1:
        return pm1 if pm1.ndim else float(pm1)
    for k in range(m + 2, n + 1):
        pmm, pm1 = pm1, (x * (2 * k - 1) * pm1 - (k + m - 1) * pmm) / (k - m)
    return pm1 if pm1.ndim else float(pm1)


def norm_legendre(n: int, m: int, x):
    """Orthonormalized Legendre kernel sqrt((2n+1)/4pi) sqrt((n-m)!/(n+m)!) P_n^m(x).

    This is the colatitude part of the orthonormal ``Y_n^m``; negative orders
    follow the symmetry ``value(n, -m) = (-1)^m value(n, m)``. Evaluated with
    a fully normalized recurrence that is stable far beyond n = 16.
    """
    if n < 0 or abs(m) > n:
        raise ValueError(f"invalid degree/order: n={n}, m={m} (need |m| <= n)")
    if m < 0:
        val = norm_legendre(n, -m, x)
        return val if (-m) % 2 == 0 else -val
    x = _check_x(x)
    s = np.sqrt((1.0 - x) * (1.0 + x))
    # diagonal: normalized P_m^m
    p_diag = np.full_like(x, INV_SQRT_4PI)
    for k in range(1, m + 1):
        p_diag = -math.sqrt((2 * k + 1) / (2.0 * k)) * s * p_diag
    if n == m:
        return p_diag if p_diag.ndim else float(p_diag)
    p_prev = p_diag
    p_curr = math.sqrt(2 * m + 3) * x * p_diag
    for k in range(m + 2, n + 1):
        a = math.sqrt((4 * k * k - 1) / (k * k - m * m))
        b = math.sqrt(((k - 1) ** 2 - m * m) / (4.0 * (k - 1) ** 2 - 1))
        p_prev, p_curr = p_curr, a * (x * p_curr - b * p_prev)
    return p_curr if p_curr.ndim else float(p_curr)


def norm_legendre_all(order: int, x) -> np.ndarray:
    """All orthonormalized Legendre kernels for n <= order at once.

    Returns an array of shape ``((order+1)**2,) + x.shape`` indexed by
    ``n*n + n + m`` (see :mod:`sphrir.shseries`). Shares the recurrence with
    :func:`norm_legendre` but fills the whole triangle in one sweep.
    """
    x = _check_x(np.atleast_1d(x))
    s = np.sqrt((1.0 - x) * (1.0 + x))
    ncoef = (order + 1) ** 2
    out = np.zeros((ncoef,) + x.shape)

    p_mm = np.full_like(x, INV_SQRT_4PI)
    for m in range(0, order + 1):
        if m > 0:
            p_mm = -math.sqrt((2 * m + 1) / (2.0 * m)) * s * p_mm
        sign = -1.0 if m % 2 else 1.0
        out[m * m + 2 * m] = p_mm
        if m > 0:
            out[m * m] = sign * p_mm
        if order == m:
            continue
        p_prev, p_curr = p_mm, math.sqrt(2 * m + 3) * x * p_mm
        out[(m + 1) * (m + 1) + (m + 1) + m] = p_curr
        if m > 0:
            out[(m + 1) * (m + 1) + 1] = sign * p_curr
        for n in range(m + 2, order + 1):
            a = math.sqrt((4 * n * n - 1) / (n * n - m * m))
            b = math.sqrt(((n - 1) ** 2 - m * m) / (4.0 * (n - 1) ** 2 - 1))
            p_prev, p_curr = p_curr, a * (x * p_curr - b * p_prev)
            out[n * n + n + m] = p_curr
            if m > 0:
                out[n * n + n - m] = sign * p_curr
    return out


def sph_harmonic(n: int, m: int, theta, phi):
    """Complex orthonormal spherical harmonic Y_n^m(theta, phi)."""
    theta = np.asarray(theta, dtype=float)
    if np.any((theta < -1e-12) | (theta > math.pi + 1e-12)):
        raise ValueError("colatitude theta must lie in [0, pi]")
    return norm_legendre(n, m, np.cos(theta)) * np.exp(1j * m * np.asarray(phi))


def sh_basis_matrix(order: int, theta, phi) -> np.ndarray:
    """Matrix of Y_n^m values, shape (len(theta), (order+1)**2).

    Row q holds all harmonics at direction (theta[q], phi[q]) in the
    ``n*n + n + m`` index order, so synthesis is ``coeffs @ basis.T`` and
    quadrature analysis is ``basis.conj().T @ (w * values)``.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    leg = norm_legendre_all(order, np.cos(theta))  # (ncoef, Q)
    ms = np.concatenate([np.arange(-n, n + 1) for n in range(order + 1)])
    return (leg * np.exp(1j * np.outer(ms, phi))).T


# ---------------------------------------------------------------------------
# rotations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EulerAngles:
    """Active z-y-z Euler angles, beta in [0, pi], alpha/gamma in [0, 2pi)."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not (-1e-12 <= self.beta <= math.pi + 1e-12):
            raise ValueError(f"beta must lie in [0, pi], got {self.beta}")
        object.__setattr__(self, "alpha", self.alpha % TWO_PI)
        object.__setattr__(self, "beta", min(max(self.beta, 0.0), math.pi))
        object.__setattr__(self, "gamma", self.gamma % TWO_PI)

    @classmethod
    def identity(cls) -> "EulerAngles":
        return cls(0.0, 0.0, 0.0)

    def inverse(self) -> "EulerAngles":
        """Angles of the inverse rotation (same beta, swapped/negated z angles)."""
        if self.beta == 0.0:
            return EulerAngles(-(self.alpha + self.gamma), 0.0, 0.0)
        return EulerAngles(math.pi - self.gamma, self.beta, math.pi - self.alpha)

    def as_matrix(self) -> np.ndarray:
        """3x3 rotation matrix Rz(alpha) @ Ry(beta) @ Rz(gamma)."""
        ca, sa = math.cos(self.alpha), math.sin(self.alpha)
        cb, sb = math.cos(self.beta), math.sin(self.beta)
        cg, sg = math.cos(self.gamma), math.sin(self.gamma)
        rz_a = np.array([[ca, -sa, 0.0], [sa, ca, 0.0], [0.0, 0.0, 1.0]])
        ry_b = np.array([[cb, 0.0, sb], [0.0, 1.0, 0.0], [-sb, 0.0, cb]])
        rz_g = np.array([[cg, -sg, 0.0], [sg, cg, 0.0], [0.0, 0.0, 1.0]])
        return rz_a @ ry_b @ rz_g


def wigner_d_small(n: int, beta: float) -> np.ndarray:
    """Real Wigner small-d matrix d^n(beta), indexed m', m = -n..n.

    Computed as expm(-i beta Jy) through the eigendecomposition of the
    tridiagonal angular-momentum operator Jy; unitary to machine precision
    for any n this package uses, with no factorials formed.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n == 0:
        return np.ones((1, 1))
    m = np.arange(-n, n + 1)
    # <m+1| J+ |m> = sqrt(n(n+1) - m(m+1)); Jy = (J+ - J-) / (2i)
    ladder = np.sqrt(n * (n + 1) - m[:-1] * (m[:-1] + 1))
    jy = np.zeros((2 * n + 1, 2 * n + 1), dtype=complex)
    jy[np.arange(1, 2 * n + 1), np.arange(0, 2 * n)] = ladder / 2j
    jy[np.arange(0, 2 * n), np.arange(1, 2 * n + 1)] = -ladder / 2j
    evals, evecs = np.linalg.eigh(jy)
    d = (evecs * np.exp(-1j * beta * evals)) @ evecs.conj().T
    return d.real  # small-d is exactly real; imaginary residue is roundoff


def wigner_d_matrix(n: int, angles: EulerAngles) -> np.ndarray:
    """Complex Wigner D-matrix D^n_{m',m} = e^{-i m' alpha} d^n_{m',m}(beta) e^{-i m gamma}.

    Rotating a degree-n coefficient vector ``c`` (indexed m = -n..n) by the
    active rotation R(angles) gives ``D @ c``.
    """
    m = np.arange(-n, n + 1)
    d = wigner_d_small(n, angles.beta)
    return np.exp(-1j * angles.alpha * m)[:, None] * d * np.exp(-1j * angles.gamma * m)[None, :]


def rotate_block_diag(coeffs: np.ndarray, angles: EulerAngles, order: int) -> np.ndarray:
    """Apply per-degree Wigner D-matrices to stacked coefficient rows.

    ``coeffs`` has shape (..., (order+1)**2); returns the rotated array.
    """
    out = np.array(coeffs, dtype=complex, copy=True)
    for n in range(order + 1):
        if n == 0:
            continue
        lo, hi = n * n, (n + 1) * (n + 1)
        d = wigner_d_matrix(n, angles)
        out[..., lo:hi] = out[..., lo:hi] @ d.T
    return out


# ---------------------------------------------------------------------------
# radial functions (frequency-domain oracle support)
# ---------------------------------------------------------------------------


def sph_bessel_j(n: int, x) -> np.ndarray:
    """Spherical Bessel function j_n(x) for x >= 0, stable for small arguments.

    Uses Miller's downward recurrence normalized against j_0; upward
    recurrence is used only where it is stable (x > n).
    """
    if n < 0:
        raise ValueError("order must be non-negative")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("argument must be non-negative")
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        out[i] = _sph_jn_scalar(n, float(xi))
    return float(out[0]) if scalar else out


def _sph_jn_scalar(n: int, x: float) -> float:
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    j0 = math.sin(x) / x
    if n == 0:
        return j0
    j1 = math.sin(x) / (x * x) - math.cos(x) / x
    if n == 1:
        return j1
    if x > n:
        jm, jc = j0, j1
        for k in range(1, n):
            jm, jc = jc, (2 * k + 1) / x * jc - jm
        return jc
    # downward recurrence from a start order well above max(n, x)
    start = n + int(math.isqrt(max(n, 4) * 40)) + 20
    jp, jc = 0.0, 1e-30
    target = 0.0
    for k in range(start, 0, -1):
        jp, jc = jc, (2 * k + 1) / x * jc - jp
        if k - 1 == n:
            target = jc
        if abs(jc) > 1e250:  # rescale to avoid overflow
            jp /= 1e250
            jc /= 1e250
            target /= 1e250
    return target * (j0 / jc)


def sph_bessel_y(n: int, x) -> np.ndarray:
    """Spherical Bessel function of the second kind y_n(x), x > 0 (upward recurrence)."""
    if n < 0:
        raise ValueError("order must be non-negative")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("argument must be positive")
    y0 = -np.cos(x) / x
    if n == 0:
        return y0
    y1 = -np.cos(x) / x ** 2 - np.sin(x) / x
    for k in range(1, n):
        y0, y1 = y1, (2 * k + 1) / x * y1 - y0
    return y1


def sph_hankel(n: int, x, kind: int = 2) -> np.ndarray:
    """Spherical Hankel function h_n(x) for x > 0.

    ``kind=2`` (default) pairs with the e^{+i omega t} time convention used by
    the frequency-domain oracle, so that an outgoing unit point source comes
    out as exp(-i k d) / (4 pi d); ``kind=1`` is the complex conjugate choice.
    """
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("spherical Hankel function requires x > 0")
    sign = 1j if kind == 1 else -1j
    return sph_bessel_j(n, x) + sign * sph_bessel_y(n, x)
