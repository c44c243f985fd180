"""Containers for spherical harmonic coefficient sets and their time series.

A single coefficient set ("frame") is a plain 1-D complex ndarray of length
``(order+1)**2`` indexed by ``sh_index(n, m) = n*n + n + m`` for degrees
``0 <= n <= order`` and orders ``|m| <= n``. A time series stacks frames along
axis 0 at a fixed sample rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def num_coeffs(order: int) -> int:
    """Number of coefficients carried up to and including degree ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return (order + 1) ** 2


def sh_index(n: int, m: int) -> int:
    """Flat index of the (degree n, order m) coefficient."""
    if abs(m) > n:
        raise ValueError(f"|m| <= n violated: n={n}, m={m}")
    return n * n + n + m


def order_from_ncoeffs(ncoef: int) -> int:
    """Inverse of :func:`num_coeffs`; raises if ``ncoef`` is not a perfect square."""
    order = int(round(math.sqrt(ncoef))) - 1
    if num_coeffs(order) != ncoef:
        raise ValueError(f"{ncoef} is not (order+1)**2 for any integer order")
    return order


def degree_indices(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays of degree n and order m per flat index, each of length (order+1)**2."""
    ns = np.concatenate([np.full(2 * n + 1, n) for n in range(order + 1)])
    ms = np.concatenate([np.arange(-n, n + 1) for n in range(order + 1)])
    return ns, ms


def validate_frame(coeffs: np.ndarray) -> int:
    """Check a 1-D coefficient array and return its truncation order."""
    coeffs = np.asarray(coeffs)
    if coeffs.ndim != 1:
        raise ValueError("a coefficient frame must be one-dimensional")
    return order_from_ncoeffs(coeffs.shape[0])


@dataclass
class SHTimeSeries:
    """Uniformly sampled sequence of SH coefficient frames.

    Attributes
    ----------
    fs : float
        Sample rate in Hz.
    t_start : float
        Time of the first frame in seconds. The propagation and summation
        stages keep this on the 1/fs grid.
    coeffs : np.ndarray
        Complex array of shape (frames, (order+1)**2).
    """

    fs: float
    t_start: float
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.fs <= 0:
            raise ValueError("sample rate must be positive")
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.ndim != 2:
            raise ValueError("coeffs must have shape (frames, ncoeffs)")
        order_from_ncoeffs(self.coeffs.shape[1])

    @property
    def order(self) -> int:
        return order_from_ncoeffs(self.coeffs.shape[1])

    @property
    def n_frames(self) -> int:
        return self.coeffs.shape[0]

    def start_sample(self) -> int:
        """First frame's index on the global 1/fs grid (t_start must sit on it)."""
        s = self.t_start * self.fs
        k = int(round(s))
        if abs(s - k) > 1e-6:
            raise ValueError(f"t_start {self.t_start} is not on the 1/fs sample grid")
        return k

    def copy(self) -> "SHTimeSeries":
        return SHTimeSeries(self.fs, self.t_start, self.coeffs.copy())

    def shifted(self, samples: int) -> "SHTimeSeries":
        """Same frames with t_start moved by an integer number of samples."""
        return SHTimeSeries(self.fs, self.t_start + samples / self.fs, self.coeffs)


def zeros_like_series(fs: float, t_start: float, n_frames: int, order: int) -> SHTimeSeries:
    return SHTimeSeries(fs, t_start, np.zeros((n_frames, num_coeffs(order)), dtype=complex))
