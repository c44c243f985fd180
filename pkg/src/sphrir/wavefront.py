"""Anechoic propagation of spherical wave fronts to SH coefficients on a sphere.

A source on the positive z-axis at distance ``r_s`` emits a sequence of
spherical wave fronts with direction-dependent amplitudes given as SH
coefficients. Each front intersects the observation sphere of radius ``r``
in a circle during the interval ``(r_s - r)/c <= dt <= (r_s + r)/c``; the SH
coefficients of the observed signal follow from a bank of discrete-time
convolutions between the source coefficient sequences and a geometric kernel.

The kernel is sampled by direct evaluation on the global grid ``dt = k / fs``
(impulse-train sampling), with samples landing exactly on the support
boundary included. Band-limiting, if desired, is applied afterwards (see
:func:`sphrir.micarray.lowpass`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SimulationError
from .shseries import SHTimeSeries, num_coeffs, order_from_ncoeffs, sh_index
from .sphmath import norm_legendre, norm_legendre_all

# slack, in samples, for deciding that a sample sits on the support boundary
_EDGE_TOL = 1e-9


@dataclass(frozen=True)
class WavefrontGeometry:
    """Observation sphere of radius ``r`` with a source at distance ``r_s`` on +z."""

    r: float
    r_s: float
    c: float = 343.0

    def __post_init__(self):
        if self.r <= 0 or self.c <= 0:
            raise ValueError("radius and speed of sound must be positive")
        if self.r_s <= self.r:
            raise SimulationError(
                f"near-field overlap unsupported: source distance {self.r_s} m "
                f"must exceed the array radius {self.r} m"
            )

    @property
    def dt_min(self) -> float:
        return (self.r_s - self.r) / self.c

    @property
    def dt_max(self) -> float:
        return (self.r_s + self.r) / self.c


def window_xi(geometry: WavefrontGeometry, dt) -> np.ndarray:
    """Indicator of the support ``r_s - r <= c*dt <= r_s + r`` (closed interval)."""
    cdt = geometry.c * np.asarray(dt, dtype=float)
    inside = (cdt >= geometry.r_s - geometry.r) & (cdt <= geometry.r_s + geometry.r)
    return inside.astype(int) if inside.ndim else int(inside)


def _assert_in_window(geometry: WavefrontGeometry, dt: np.ndarray):
    lo, hi = geometry.dt_min, geometry.dt_max
    tol = _EDGE_TOL * max(hi, 1.0)
    if np.any(dt < lo - tol) or np.any(dt > hi + tol):
        raise AssertionError(
            f"dt outside the wavefront support [{lo:.9g}, {hi:.9g}] s"
        )


def cos_theta0(geometry: WavefrontGeometry, dt) -> np.ndarray:
    """Cosine of the intersection circle's colatitude on the observation sphere.

    Only defined on the support; out-of-window arguments are a contract
    violation and raise rather than clamp.
    """
    dt = np.asarray(dt, dtype=float)
    _assert_in_window(geometry, dt)
    val = (geometry.r ** 2 + geometry.r_s ** 2 - (geometry.c * dt) ** 2) / (
        2.0 * geometry.r * geometry.r_s
    )
    val = np.clip(val, -1.0, 1.0)  # guards roundoff at the exact edges only
    return val if val.ndim else float(val)


def cos_theta0_src(geometry: WavefrontGeometry, dt) -> np.ndarray:
    """Cosine of the circle's colatitude as seen from the source position."""
    dt = np.asarray(dt, dtype=float)
    _assert_in_window(geometry, dt)
    if np.any(dt <= 0):
        raise AssertionError("dt must be positive (guaranteed by r_s > r inside the window)")
    val = -((geometry.c * dt) ** 2 + geometry.r_s ** 2 - geometry.r ** 2) / (
        2.0 * geometry.c * dt * geometry.r_s
    )
    val = np.clip(val, -1.0, 1.0)
    return val if val.ndim else float(val)


def kernel_support(geometry: WavefrontGeometry, fs: float) -> tuple[int, int]:
    """First and last sample index k (dt = k/fs) inside the closed support."""
    if fs <= 0:
        raise ValueError("sample rate must be positive")
    k0 = math.ceil(geometry.dt_min * fs - _EDGE_TOL)
    k1 = math.floor(geometry.dt_max * fs + _EDGE_TOL)
    return k0, k1


def kernel_sequence(
    geometry: WavefrontGeometry, n: int, m: int, v: int, u: int, fs: float
) -> np.ndarray:
    """Sampled propagation kernel coupling source index (v, u) to output (n, m).

    Zero unless ``m == u`` (orders do not mix for a source on the z-axis).
    The first sample corresponds to ``dt = kernel_support(...)[0] / fs``.
    """
    if abs(m) > n or abs(u) > v:
        raise ValueError("invalid SH index pair")
    k0, k1 = kernel_support(geometry, fs)
    length = k1 - k0 + 1
    if m != u or length <= 0:
        return np.zeros(max(length, 0))
    dt = np.arange(k0, k1 + 1) / fs
    scale = geometry.c / (2.0 * geometry.r * geometry.r_s)
    return (
        scale
        * norm_legendre(v, u, cos_theta0_src(geometry, dt))
        * norm_legendre(n, m, cos_theta0(geometry, dt))
    )


def propagate_anechoic(
    source: SHTimeSeries | np.ndarray,
    geometry: WavefrontGeometry,
    order_out: int,
    fs: float | None = None,
) -> SHTimeSeries:
    """Propagate a source coefficient sequence to observed SH coefficients.

    Parameters
    ----------
    source : SHTimeSeries or np.ndarray
        Either a sampled coefficient sequence (interpreted as amplitude
        densities; the convolution carries the 1/fs integration weight) or a
        single coefficient frame representing an impulsive emission at t = 0
        (an analytic pattern), for which ``fs`` must be given.
    geometry : WavefrontGeometry
        Source distance, sphere radius and speed of sound; requires r_s > r.
    order_out : int
        Truncation order N of the observed coefficients.

    Returns
    -------
    SHTimeSeries
        Observed coefficients; ``t_start`` is the source start time plus the
        first in-support sample offset, so it stays on the 1/fs grid.
    """
    if isinstance(source, SHTimeSeries):
        fs = source.fs
        src = source.coeffs
        t0 = source.t_start
        weight = 1.0 / fs
    else:
        if fs is None:
            raise ValueError("fs is required when the source is a single impulse frame")
        src = np.asarray(source, dtype=complex)[None, :]
        t0 = 0.0
        weight = 1.0  # continuous convolution with delta(t) is exact
    order_src = order_from_ncoeffs(src.shape[1])

    k0, k1 = kernel_support(geometry, fs)
    dt = np.arange(k0, k1 + 1) / fs
    p_obs = norm_legendre_all(order_out, cos_theta0(geometry, dt))
    p_src = norm_legendre_all(order_src, cos_theta0_src(geometry, dt))
    scale = weight * geometry.c / (2.0 * geometry.r * geometry.r_s)

    n_out = src.shape[0] + (k1 - k0 + 1) - 1
    out = np.zeros((n_out, num_coeffs(order_out)), dtype=complex)
    m_max = min(order_src, order_out)
    for m in range(-m_max, m_max + 1):
        for v in range(abs(m), order_src + 1):
            g = src[:, sh_index(v, m)]
            if not np.any(g):
                continue
            src_leg = p_src[sh_index(v, m)]
            for n in range(abs(m), order_out + 1):
                kern = scale * src_leg * p_obs[sh_index(n, m)]
                out[:, sh_index(n, m)] += np.convolve(g, kern)
    return SHTimeSeries(fs, t0 + k0 / fs, out)
