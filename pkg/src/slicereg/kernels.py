"""Dirichlet and Fejér kernels, Fourier coefficients and Cesàro sums.

Functions here take values in one of the hypercomplex algebras.  The
exponential ``e^{I j t}`` is ``cos(jt) + sin(jt) I`` and always multiplies
function values from the LEFT.  The kernels themselves are real, so in the
convolution it does not matter which side they sit on; do not "fix" that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .hypercomplex import Algebra, DomainError, ImaginaryUnit
from .slicepoly import SlicePolynomial

__all__ = [
    "dirichlet",
    "fejer",
    "fejer_average",
    "fejer_series",
    "default_nodes",
    "PeriodicFunction",
    "FourierCoefficients",
    "fourier_coeffs",
    "partial_sum",
    "cesaro_sum_coeff",
    "cesaro_sum_conv",
    "bernstein_transform",
    "derivative_cesaro_identity_residual",
]

SINGULAR_SIN = 1e-7
TWO_PI = 2.0 * math.pi


def _reduce(x):
    # kernels are even and 2pi-periodic; reducing to [-pi, pi] keeps the
    # closed forms accurate next to multiples of 2pi
    return np.remainder(np.asarray(x, dtype=float) + math.pi, TWO_PI) - math.pi


def _cos_multiples(x: np.ndarray, top: int) -> np.ndarray:
    """cos(j x) for j = 1..top without the rounding error of the product j*x.

    x is split as hi + lo with hi on a coarse binary grid, so j*hi is exact
    and the small remainder j*lo enters through the addition formula.
    """
    j = np.arange(1, top + 1, dtype=float)
    scale = 2.0 ** (49 - max(1, math.ceil(math.log2(top + 1))))
    hi = np.round(x * scale) / scale
    a = np.multiply.outer(hi, j)
    b = np.multiply.outer(x - hi, j)
    return np.cos(a) * np.cos(b) - np.sin(a) * np.sin(b)


def _dirichlet_series(k: int, x: np.ndarray) -> np.ndarray:
    if k == 0:
        return np.ones_like(x)
    return 1.0 + 2.0 * _cos_multiples(x, k).sum(axis=-1)


def dirichlet(k: int, x):
    """D_k(x) = sum_{|s| <= k} e^{isx} = sin((k + 1/2) x) / sin(x / 2)."""
    if k < 0:
        raise DomainError("kernel order must be nonnegative")
    xr = _reduce(x)
    half = np.sin(xr / 2.0)
    near = np.abs(half) < SINGULAR_SIN
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin((k + 0.5) * xr) / half
    if np.any(near):
        out = np.where(near, _dirichlet_series(k, xr), out)
    return out[()] if np.ndim(out) == 0 else out


def fejer(n: int, x):
    """Closed form F_n(x) = (sin((n+1)x/2) / sin(x/2))^2 / (n+1)."""
    if n < 0:
        raise DomainError("kernel order must be nonnegative")
    xr = _reduce(x)
    half = np.sin(xr / 2.0)
    near = np.abs(half) < SINGULAR_SIN
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (np.sin((n + 1) * xr / 2.0) / half) ** 2 / (n + 1)
    if np.any(near):
        out = np.where(near, fejer_series(n, xr), out)
    return out[()] if np.ndim(out) == 0 else out


def fejer_average(n: int, x):
    """F_n as the mean of D_0 .. D_n."""
    xr = _reduce(x)
    total = sum(np.asarray(dirichlet(k, xr), dtype=float) for k in range(n + 1))
    out = total / (n + 1)
    return out[()] if np.ndim(out) == 0 else out


def fejer_series(n: int, x):
    """F_n as sum_{|j| <= n} (1 - |j|/(n+1)) e^{ijx}."""
    xr = _reduce(x)
    if n == 0:
        out = np.ones_like(xr)
        return out[()] if np.ndim(out) == 0 else out
    w = 1.0 - np.arange(1, n + 1) / (n + 1)
    out = 1.0 + 2.0 * (_cos_multiples(xr, n) * w).sum(axis=-1)
    return out[()] if np.ndim(out) == 0 else out


def default_nodes(n: int) -> int:
    """8 (n + 1) rounded up to a power of two."""
    return 1 << max(3, math.ceil(math.log2(8 * (n + 1))))


def _nodes(count: int) -> np.ndarray:
    return TWO_PI * np.arange(count) / count


def _exp_left(unit: ImaginaryUnit, angle, values: np.ndarray) -> np.ndarray:
    """``e^{I angle} v`` for rows ``v`` of ``values``; ``angle`` broadcasts per row."""
    angle = np.asarray(angle, dtype=float)
    L = unit.left_matrix()
    return np.cos(angle)[..., None] * values + np.sin(angle)[..., None] * (values @ L.T)


@dataclass(frozen=True)
class PeriodicFunction:
    """A 2pi-periodic map from angles to algebra elements.

    ``func`` takes a 1-D array of angles and returns an ``(N, dim)`` array.
    ``support`` is the known Fourier band ``N`` (coefficients vanish for
    ``|j| > N``) when the caller knows it.
    """

    algebra: Algebra
    func: Callable[[np.ndarray], np.ndarray]
    support: int | None = None

    def __call__(self, theta):
        t = np.atleast_1d(np.asarray(theta, dtype=float))
        out = np.asarray(self.func(t), dtype=float)
        return out[0] if np.ndim(theta) == 0 else out

    def element(self, theta: float):
        return self.algebra.element(self(float(theta)))

    def periodicity_defect(self, samples: np.ndarray) -> float:
        return float(np.max(np.linalg.norm(self(samples + TWO_PI) - self(samples), axis=1)))


@dataclass(frozen=True)
class FourierCoefficients:
    """Coefficients ``c_j`` for ``j = -N .. N`` stored as an array ``(2N + 1, dim)``."""

    unit: ImaginaryUnit
    band: int
    values: np.ndarray = field(repr=False)

    def __getitem__(self, j: int) -> np.ndarray:
        if abs(j) > self.band:
            return np.zeros(self.values.shape[1])
        return self.values[j + self.band]

    def reconstruct(self, theta) -> np.ndarray:
        t = np.atleast_1d(np.asarray(theta, dtype=float))
        out = np.zeros((t.size, self.values.shape[1]))
        for j in range(-self.band, self.band + 1):
            out += _exp_left(self.unit, j * t, np.broadcast_to(self[j], out.shape))
        return out


def fourier_coeffs(g: PeriodicFunction, unit: ImaginaryUnit, N: int, nodes: int | None = None) -> FourierCoefficients:
    """``c_j = (1/2pi) int e^{-Ijt} g(t) dt`` by the trapezoid rule on uniform nodes."""
    if nodes is None:
        nodes = default_nodes(max(N, g.support or 0))
    if nodes < 4 * (N + 1):
        raise DomainError(f"insufficient quadrature nodes: {nodes} < 4(N+1) = {4 * (N + 1)}")
    t = _nodes(nodes)
    vals = np.asarray(g(t), dtype=float)
    L = unit.left_matrix()
    out = np.empty((2 * N + 1, g.algebra.dim))
    for j in range(-N, N + 1):
        cj = np.cos(j * t) @ vals / nodes
        sj = np.sin(j * t) @ vals / nodes
        out[j + N] = cj - L @ sj
    return FourierCoefficients(unit, N, out)


def partial_sum(c: FourierCoefficients, n: int, theta: float) -> np.ndarray:
    """s_n(theta) = sum_{|j| <= n} e^{Ij theta} c_j."""
    if n > c.band:
        raise DomainError("coefficients do not cover the requested band")
    total = np.zeros(c.values.shape[1])
    for j in range(-n, n + 1):
        total += _exp_left(c.unit, j * theta, c[j][None, :])[0]
    return total


def cesaro_sum_coeff(c: FourierCoefficients, n: int, theta: float) -> np.ndarray:
    """sigma_n(theta) = sum_{|j| <= n} (1 - |j|/(n+1)) e^{Ij theta} c_j."""
    if n > c.band:
        raise DomainError("coefficients do not cover the requested band")
    total = np.zeros(c.values.shape[1])
    for j in range(-n, n + 1):
        w = 1.0 - abs(j) / (n + 1)
        if w:
            total += w * _exp_left(c.unit, j * theta, c[j][None, :])[0]
    return total


def cesaro_sum_conv(g: PeriodicFunction, n: int, theta: float, nodes: int | None = None) -> np.ndarray:
    """sigma_n(theta) = (1/2pi) int F_n(theta - phi) g(phi) dphi, trapezoid rule."""
    band = max(n, g.support or 0)
    if nodes is None:
        nodes = default_nodes(band)
    if nodes < 4 * (band + 1):
        raise DomainError(f"insufficient quadrature nodes: {nodes} < {4 * (band + 1)}")
    phi = _nodes(nodes)
    weights = np.asarray(fejer(n, theta - phi), dtype=float)
    return weights @ np.asarray(g(phi), dtype=float) / nodes


def bernstein_transform(P: SlicePolynomial, unit: ImaginaryUnit) -> PeriodicFunction:
    """g(t) = e^{Int} P(e^{-It}) with n the degree of P."""
    if P.algebra is not unit.algebra:
        raise TypeError("unit from a different algebra")
    if P.is_zero():
        raise DomainError("zero polynomial")
    n = P.degree

    def g(t):
        vals = P.eval_on_slice(unit, np.exp(-1j * t))
        return _exp_left(unit, n * t, vals)

    return PeriodicFunction(P.algebra, g, support=n)


def derivative_cesaro_identity_residual(P: SlicePolynomial, unit: ImaginaryUnit, theta: float, nodes: int | None = None) -> float:
    """Defect between ``(1/n) q^{-(n-1)} P'(q)`` at ``q = e^{I theta}`` and ``sigma_{n-1}(-theta; g)``.

    The left side comes from evaluating the derivative polynomial; the right
    side from quadrature Fourier coefficients of ``g = bernstein_transform(P)``.
    """
    n = P.degree
    if n < 1:
        raise DomainError("the identity needs degree >= 1")
    dP = P.derivative()
    val = dP.eval_on_slice(unit, np.array([np.exp(1j * theta)]))
    lhs = _exp_left(unit, -(n - 1) * theta, val)[0] / n
    g = bernstein_transform(P, unit)
    c = fourier_coeffs(g, unit, n, nodes)
    rhs = cesaro_sum_coeff(c, n - 1, -theta)
    return float(np.linalg.norm(lhs - rhs))
