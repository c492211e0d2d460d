"""Extremal norms on spheres, H^2 norms, root finding and zero sets.

Every slice regular polynomial satisfies ``P(x + yJ) = b + J c`` on the
sphere ``x + yS``, with ``b, c`` independent of the unit ``J``.  Because
``|Jc| = |c|`` in all three algebras (for Clifford algebras because J is a
paravector), ``|P(x + yJ)|^2 = |b|^2 + |c|^2 + 2 <J, w>`` where
``w_k = <b, e_k c>``.  The maximum and minimum over J are therefore exact:
``|b|^2 + |c|^2 +- 2|w|``.  That reduces a norm over the sphere ``|q| = R``
to a one-dimensional search over the angle ``t`` with ``x = R cos t`` and
``y = R sin t``, ``t`` in ``[0, pi]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .hypercomplex import (
    QUATERNION,
    DomainError,
    Element,
    ImaginaryUnit,
    Quaternion,
    default_unit,
    inner_product_S,
)
from .slicepoly import SlicePolynomial, symmetrization

__all__ = [
    "RootFindingError",
    "ClassificationAmbiguous",
    "ExtremumResult",
    "RootCluster",
    "ZeroSet",
    "sphere_modulus_range",
    "sup_norm_sphere",
    "min_modulus_sphere",
    "sampled_sup_norm",
    "growth_max",
    "h2_norm",
    "h2_norm_quadrature",
    "aberth",
    "complex_roots",
    "roots_real_poly",
    "symmetrization_roots",
    "zero_set",
    "representation_value",
    "convex_combination_residual",
]

DEFAULT_TOL = 1e-9
GRID_PER_DEGREE = 256
CLUSTER_RADIUS = 1e-6
MERGE_RADIUS = 1e-3
EIG_MERGE_RADIUS = 1e-5  # companion eigenvalues keep semisimple multiple roots sharp
ZERO_ACCEPT = 1e-8
ZERO_REJECT = 1e-4
MAX_SWEEPS = 200


class RootFindingError(ArithmeticError):
    """Aberth iteration did not converge within the sweep cap."""


class ClassificationAmbiguous(DomainError):
    """A zero residual fell between the accept and reject thresholds."""


@dataclass(frozen=True)
class ExtremumResult:
    value: float
    witness: Element
    tolerance: float
    evaluations: int
    radius: float = 1.0

    def to_json(self) -> dict:
        from .hypercomplex import element_to_json

        return {"value": self.value, "witness": element_to_json(self.witness), "tol": self.tolerance}


# -- sphere extrema -----------------------------------------------------------


def _sphere_parts(P: SlicePolynomial, x, y, unit: ImaginaryUnit | None):
    if unit is None:
        return P.slice_parts(x, y)
    # through the two slice values P(x +- y I), as in the representation formula
    z = np.asarray(x, dtype=float) + 1j * np.asarray(y, dtype=float)
    vp = P.eval_on_slice(unit, z)
    vm = P.eval_on_slice(unit, np.conj(z))
    return (vp + vm) / 2.0, ((vm - vp) / 2.0) @ unit.left_matrix().T


def _profile(P: SlicePolynomial, x, y, unit=None):
    """Squared-modulus base ``|b|^2 + |c|^2`` and the vector ``w`` per point."""
    b, c = _sphere_parts(P, x, y, unit)
    base = np.einsum("nd,nd->n", b, b) + np.einsum("nd,nd->n", c, c)
    lm = P.algebra.unit_left_matrices()
    w = np.einsum("nd,kde,ne->nk", b, lm, c)
    return base, w


def sphere_modulus_range(P: SlicePolynomial, x: float, y: float) -> tuple[float, float]:
    """Exact ``(min, max)`` of ``|P(x + yJ)|`` over all units J."""
    base, w = _profile(P, np.array([x]), np.array([abs(y)]))
    wn = float(np.linalg.norm(w[0]))
    return math.sqrt(max(base[0] - 2 * wn, 0.0)), math.sqrt(max(base[0] + 2 * wn, 0.0))


def _sphere_extremum(P: SlicePolynomial, R: float, tol: float, unit, nodes, sign: int) -> ExtremumResult:
    if P.is_zero():
        raise DomainError("zero polynomial")
    if not R > 0:
        raise DomainError("radius must be positive")
    n = max(P.degree, 0)
    count = nodes or GRID_PER_DEGREE * (n + 1)
    t = np.linspace(0.0, math.pi, count + 1)

    def objective(tt):
        base, w = _profile(P, R * np.cos(tt), R * np.sin(tt), unit)
        return base + sign * 2.0 * np.linalg.norm(w, axis=1)

    h = objective(t)
    evaluations = t.size
    score = sign * h
    # local extrema of the grid profile, best few refined
    left = np.concatenate([[-np.inf], score[:-1]])
    right = np.concatenate([score[1:], [-np.inf]])
    cand = np.flatnonzero((score >= left) & (score >= right))
    cand = cand[np.argsort(-score[cand], kind="stable")][:3]
    best_t, best_h = t[cand[0]], h[cand[0]]
    step = math.pi / count
    for k in cand:
        lo, hi = max(t[k] - step, 0.0), min(t[k] + step, math.pi)
        res = minimize_scalar(
            lambda s: -sign * objective(np.array([s]))[0],
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-13},
        )
        evaluations += res.nfev
        hv = -sign * res.fun
        if sign * hv > sign * best_h:
            best_t, best_h = res.x, hv
    x, y = R * math.cos(best_t), R * math.sin(best_t)
    _, w = _profile(P, np.array([x]), np.array([y]), unit)
    wn = float(np.linalg.norm(w[0]))
    alg = P.algebra
    if wn > 0.0:
        J = ImaginaryUnit.from_vector(alg, sign * w[0])
    else:
        J = unit or default_unit(alg)
    witness = alg.element(x * alg.one().coeffs + y * J.coeffs())
    # the search keeps the extreme of many noisy values, which biases it by a
    # few ulps; one extended-precision evaluation on the exact sphere does not
    value = _modulus_extended(P, R, float(best_t), J.coeffs())
    return ExtremumResult(value, witness, tol, evaluations + 1, R)


def _modulus_extended(P: SlicePolynomial, R: float, t: float, jvec: np.ndarray) -> float:
    """``|P(R cos t + R sin t J)|`` by Horner in ``np.longdouble``."""
    ld = np.longdouble
    j = jvec.astype(ld)
    j /= np.sqrt(np.sum(j * j))
    tt = ld(t)
    q = ld(R) * np.sin(tt) * j
    q[0] += ld(R) * np.cos(tt)
    table = P.algebra.table.astype(ld)
    coeffs = P.coeffs.astype(ld)
    r = coeffs[-1].copy()
    for a in coeffs[-2::-1]:
        r = np.einsum("i,j,ijk->k", q, r, table) + a
    return float(np.sqrt(np.sum(r * r)))


def sup_norm_sphere(P: SlicePolynomial, R: float = 1.0, tol: float = DEFAULT_TOL, unit: ImaginaryUnit | None = None, nodes: int | None = None) -> ExtremumResult:
    """``max_{|q| = R} |P(q)|`` with an attaining point.

    ``unit`` selects the reference slice used to form the sphere data; the
    result does not depend on it beyond rounding.
    """
    return _sphere_extremum(P, R, tol, unit, nodes, +1)


def min_modulus_sphere(P: SlicePolynomial, R: float = 1.0, tol: float = DEFAULT_TOL, unit: ImaginaryUnit | None = None, nodes: int | None = None) -> ExtremumResult:
    return _sphere_extremum(P, R, tol, unit, nodes, -1)


def growth_max(P: SlicePolynomial, R: float) -> float:
    if R < 1.0:
        raise DomainError("growth is measured for R >= 1")
    return sup_norm_sphere(P, R).value


def sampled_sup_norm(P: SlicePolynomial, R: float, rng: np.random.Generator, units: int = 256, nodes: int | None = None) -> float:
    """Max of ``|P|`` over circles in ``units`` random slices; a lower bound for the sphere sup."""
    count = nodes or GRID_PER_DEGREE * (max(P.degree, 0) + 1)
    z = R * np.exp(1j * np.linspace(0.0, 2 * math.pi, count, endpoint=False))
    # P(x + yJ) = b + J c, and b, c do not depend on J
    b, c = P.slice_parts(z.real, z.imag)
    best = 0.0
    for _ in range(units):
        vals = b + c @ ImaginaryUnit.random(P.algebra, rng).left_matrix().T
        best = max(best, float(np.max(np.einsum("nd,nd->n", vals, vals))))
    return math.sqrt(best)


def h2_norm(P: SlicePolynomial) -> float:
    """Normalized H^2 norm ``sqrt(sum |a_m|^2)``."""
    return float(np.sqrt(np.sum(P.coeffs * P.coeffs)))


def h2_norm_quadrature(P: SlicePolynomial, unit: ImaginaryUnit, nodes: int | None = None) -> float:
    """``sqrt((1/2pi) int |P(e^{I t})|^2 dt`` by Horner evaluation and the trapezoid rule."""
    count = nodes or 4 * (max(P.degree, 0) + 1) + 4
    t = 2 * math.pi * np.arange(count) / count
    alg = P.algebra
    pts = np.outer(np.cos(t), alg.one().coeffs) + np.outer(np.sin(t), unit.coeffs())
    vals = P.eval_many(pts)
    return float(np.sqrt(np.mean(np.einsum("nd,nd->n", vals, vals))))


# -- roots ----------------------------------------------------------------------


@dataclass(frozen=True)
class RootCluster:
    """A root ``x + iy`` (``y >= 0``; conjugate pairs listed once) and its multiplicity."""

    x: float
    y: float
    multiplicity: int

    @property
    def is_real(self) -> bool:
        return self.y == 0.0

    @property
    def value(self) -> complex:
        return complex(self.x, self.y)


def _polyval(coeffs: np.ndarray, z):
    return np.polynomial.polynomial.polyval(z, coeffs)


def aberth(coeffs, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """All roots of ``sum coeffs[j] z^j`` by Aberth–Ehrlich simultaneous iteration."""
    a = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    n = a.size - 1
    if n < 0:
        raise DomainError("zero polynomial has no finite root set")
    if n == 0:
        return np.zeros(0, dtype=complex)
    da = np.polynomial.polynomial.polyder(a)
    radius = 1.0 + float(np.max(np.abs(a[:-1] / a[-1])))
    z = radius * np.exp(1j * (2 * math.pi * np.arange(n) / n + 0.4))
    absa = np.abs(a)
    eps = np.finfo(float).eps
    for _ in range(max_sweeps):
        p = _polyval(a, z)
        scale = _polyval(absa, np.abs(z))
        # roots whose residual sits at rounding level stay put
        done = np.abs(p) <= 8 * n * eps * scale
        if done.all():
            break
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / _polyval(da, z)
            corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr) & ~done, corr, 0.0)
        z = z - corr
        if np.all(np.abs(corr) <= 4 * eps * np.abs(z)):
            break
    else:
        p = _polyval(a, z)
        scale = _polyval(absa, np.abs(z))
        if np.any(np.abs(p) > 1e3 * n * eps * scale):
            raise RootFindingError("did not converge")
    return z


def _cluster_roots(a: np.ndarray, z: np.ndarray, radius: float, merge_radius: float = MERGE_RADIUS):
    """Group numerically coincident roots; returns ``[(center, multiplicity), ...]``."""
    n = z.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radius * (1.0 + abs(z[i])):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = [(complex(np.mean(z[idx])), len(idx)) for idx in groups.values()]

    # merge nearby clusters when the merged center is a root of matching order
    merged = True
    while merged:
        merged = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                (ci, mi), (cj, mj) = clusters[i], clusters[j]
                if abs(ci - cj) > merge_radius * (1.0 + abs(ci)):
                    continue
                m = mi + mj
                c = (ci * mi + cj * mj) / m
                if _is_root_of_order(a, c, m):
                    clusters[i] = (c, m)
                    del clusters[j]
                    merged = True
                    break
            if merged:
                break
    return [(_polish(a, c, m), m) for c, m in clusters]


def _derivatives(a: np.ndarray, upto: int):
    out = [a]
    for _ in range(upto):
        out.append(np.polynomial.polynomial.polyder(out[-1]) if out[-1].size > 1 else np.zeros(1, dtype=a.dtype))
    return out


def _is_root_of_order(a: np.ndarray, c: complex, m: int, rtol: float = 1e-7) -> bool:
    for d in _derivatives(a, m - 1)[:m]:
        scale = _polyval(np.abs(d), abs(c)) + 1e-300
        if abs(_polyval(d, c)) > rtol * scale:
            return False
    return True


def _polish(a: np.ndarray, c: complex, m: int) -> complex:
    # Newton on the (m-1)-th derivative, where an m-fold root is simple
    ders = _derivatives(a, m)
    f, df = ders[m - 1], ders[m]
    z = c
    for _ in range(4):
        dv = _polyval(df, z)
        if dv == 0:
            break
        step = _polyval(f, z) / dv
        if not np.isfinite(step) or abs(step) > CLUSTER_RADIUS * (1.0 + abs(z)):
            break
        z = z - step
    return complex(z)


def complex_roots(coeffs, cluster_radius: float = CLUSTER_RADIUS) -> list[tuple[complex, int]]:
    """Clustered roots ``(root, multiplicity)`` of a complex polynomial (ascending coefficients)."""
    a = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    return _cluster_roots(a, aberth(a), cluster_radius)


def roots_real_poly(coeffs, tol: float = CLUSTER_RADIUS) -> list[RootCluster]:
    """Roots of a real polynomial; conjugate pairs reported once with ``y > 0``."""
    a = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if a.size == 0:
        raise DomainError("leading coefficient must be nonzero")
    out = []
    for c, m in _cluster_roots(a.astype(complex), aberth(a), tol):
        if abs(c.imag) <= tol * (1.0 + abs(c)):
            out.append(RootCluster(c.real, 0.0, m))
        elif c.imag > 0:
            out.append(RootCluster(c.real, c.imag, m))
    out.sort(key=lambda r: (r.y, r.x))
    return out


# -- zero sets ------------------------------------------------------------------


@dataclass
class ZeroSet:
    real_zeros: list = field(default_factory=list)  # (location, multiplicity)
    isolated_zeros: list = field(default_factory=list)  # (Quaternion, multiplicity)
    spherical_zeros: list = field(default_factory=list)  # (x, y, multiplicity)

    def total_multiplicity(self) -> int:
        return (
            sum(m for _, m in self.real_zeros)
            + sum(m for _, m in self.isolated_zeros)
            + 2 * sum(m for _, _, m in self.spherical_zeros)
        )

    def moduli(self) -> list[float]:
        out = [abs(r) for r, _ in self.real_zeros]
        out += [q.modulus() for q, _ in self.isolated_zeros]
        out += [math.hypot(x, y) for x, y, _ in self.spherical_zeros]
        return out

    def to_json(self) -> dict:
        return {
            "real_zeros": [{"location": r, "multiplicity": m} for r, m in self.real_zeros],
            "isolated_zeros": [{"location": [float(c) for c in q.coeffs], "multiplicity": m} for q, m in self.isolated_zeros],
            "spherical_zeros": [{"x": x, "y": y, "multiplicity": m} for x, y, m in self.spherical_zeros],
        }


def _zero_scale(P: SlicePolynomial, r: float) -> float:
    # backward-error scale for |P(q)| at |q| = r
    mods = np.linalg.norm(P.coeffs, axis=1)
    return 1.0 + float(mods @ np.power(r, np.arange(mods.size)))


def _classify(residual: float, scale: float) -> bool:
    if residual <= ZERO_ACCEPT * scale:
        return True
    if residual <= ZERO_REJECT * scale:
        raise ClassificationAmbiguous(f"classification ambiguous: residual {residual:.3e} at scale {scale:.3e}")
    return False


def _complex_matrix(a: np.ndarray) -> np.ndarray:
    """2x2 complex matrices of quaternions ``alpha + beta j`` (rows of ``a``)."""
    alpha = a[..., 0] + 1j * a[..., 1]
    beta = a[..., 2] + 1j * a[..., 3]
    return np.stack([np.stack([alpha, beta], -1), np.stack([-beta.conj(), alpha.conj()], -1)], -2)


def symmetrization_roots(P: SlicePolynomial, radius: float = CLUSTER_RADIUS) -> list[RootCluster]:
    """Roots of ``P^s`` as eigenvalues of a block companion matrix.

    ``P^s(z) = det(sum_j z^j M(a_j))`` with ``M`` the complex 2x2 form of a
    quaternion.  Spherical and real zeros of ``P`` make the whole matrix
    vanish, so they appear as semisimple eigenvalues and keep full accuracy,
    unlike the double roots of the scalar polynomial ``P^s``.
    """
    if P.algebra is not QUATERNION:
        raise DomainError("quaternionic polynomial expected")
    n = P.degree
    if n < 1:
        return []
    M = _complex_matrix(P.coeffs)
    lead_inv = np.linalg.inv(M[n])
    comp = np.zeros((2 * n, 2 * n), dtype=complex)
    comp[:-2, 2:] = np.eye(2 * n - 2)
    for j in range(n):
        comp[-2:, 2 * j : 2 * j + 2] = -lead_inv @ M[j]
    eig = np.linalg.eigvals(comp)
    Ps = symmetrization(P).coeffs[:, 0].astype(complex)
    out = []
    for c, m in _cluster_roots(Ps, eig, radius, EIG_MERGE_RADIUS):
        if abs(c.imag) <= radius * (1.0 + abs(c)):
            out.append(RootCluster(c.real, 0.0, m))
        elif c.imag > 0:
            out.append(RootCluster(c.real, c.imag, m))
    out.sort(key=lambda r: (r.y, r.x))
    return out


def _part_scales(P: SlicePolynomial, r: float):
    # c = sum Im((x+iy)^j) a_j is O(y); c / y is compared with sum j |a_j| r^(j-1)
    mods = np.linalg.norm(P.coeffs, axis=1)
    j = np.arange(mods.size)
    return _zero_scale(P, r), 1.0 + float(np.sum(j * mods * r ** np.maximum(j - 1, 0)))


def zero_set(P: SlicePolynomial) -> ZeroSet:
    """Real, isolated and spherical zeros of a quaternionic polynomial.

    Roots of the symmetrization locate the spheres.  On a sphere carrying
    multiplicity >= 2, spherical factors are divided out while ``P = b + J c``
    vanishes identically (``b = c = 0``); a remaining isolated zero is the
    solution ``J = -b c^{-1}`` of ``b + J c = 0``.
    """
    if P.algebra is not QUATERNION:
        raise DomainError("zero sets are computed for quaternionic polynomials")
    if P.is_zero():
        raise DomainError("leading coefficient must be nonzero")
    out = ZeroSet()
    for root in symmetrization_roots(P):
        r = math.hypot(root.x, root.y)
        if root.is_real:
            if root.multiplicity % 2:
                raise ClassificationAmbiguous(f"odd multiplicity {root.multiplicity} for real root {root.x}")
            resid = P.eval_real(root.x).modulus()
            if not _classify(resid, _zero_scale(P, r)):
                raise ClassificationAmbiguous(f"real root {root.x} of the symmetrization is not a zero")
            out.real_zeros.append((root.x, root.multiplicity // 2))
            continue
        Q, spheres = P, 0
        quad = [root.x**2 + root.y**2, -2.0 * root.x, 1.0]
        while root.multiplicity - 2 * spheres >= 2:
            b, c = Q.slice_parts(np.array([root.x]), np.array([root.y]))
            sb, sc = _part_scales(Q, r)
            if _classify(float(np.linalg.norm(b[0])), sb) and _classify(float(np.linalg.norm(c[0])) / root.y, sc):
                Q = Q.divide_real(quad)[0]
                spheres += 1
            else:
                break
        if spheres:
            out.spherical_zeros.append((root.x, root.y, spheres))
        k = root.multiplicity - 2 * spheres
        if k <= 0:
            continue
        b, c = Q.slice_parts(np.array([root.x]), np.array([root.y]))
        bq, cq = Quaternion(*b[0]), Quaternion(*c[0])
        if cq.modulus() == 0.0:
            raise ClassificationAmbiguous("degenerate sphere data")
        try:
            Ju = ImaginaryUnit.from_element(-(bq * cq.inverse()))
        except DomainError as exc:
            raise ClassificationAmbiguous(f"degenerate sphere data at ({root.x}, {root.y})") from exc
        zq = Quaternion(root.x, *(root.y * Ju.vector()))
        if not _classify(Q.eval(zq).modulus(), _zero_scale(Q, r)):
            raise ClassificationAmbiguous(f"no zero found on the sphere ({root.x}, {root.y})")
        out.isolated_zeros.append((zq, k))
    return out


# -- representation formula ----------------------------------------------------


def representation_value(P: SlicePolynomial, x: float, y: float, J: ImaginaryUnit, I: ImaginaryUnit | None = None) -> Element:
    """``(P(x+yI) + P(x-yI))/2 + J (I (P(x-yI) - P(x+yI))/2)``.

    Nested as ``J(I d)`` rather than ``(JI) d``: the two agree when the
    algebra is associative, and only the nested form is right for octonions.
    """
    if y <= 0:
        raise DomainError("representation formula needs y > 0")
    I = I or default_unit(P.algebra)
    alg = P.algebra
    one = alg.one().coeffs
    vp = P.eval(alg.element(x * one + y * I.coeffs()))
    vm = P.eval(alg.element(x * one - y * I.coeffs()))
    return (vp + vm) / 2.0 + J.element() * (I.element() * ((vm - vp) / 2.0))


def convex_combination_residual(P: SlicePolynomial, x: float, y: float, J: ImaginaryUnit, I: ImaginaryUnit) -> float:
    """Defect of ``|P(x+yJ)|^2 = (1+<J,I>)/2 |P(x+yI)|^2 + (1-<J,I>)/2 |P(x-yI)|^2``.

    The identity holds when the coefficients of ``P`` lie in C_I.
    """
    if y <= 0:
        raise DomainError("convex combination identity needs y > 0")
    alg = P.algebra
    one = alg.one().coeffs
    vj = P.eval(alg.element(x * one + y * J.coeffs())).modulus()
    vp = P.eval(alg.element(x * one + y * I.coeffs())).modulus()
    vm = P.eval(alg.element(x * one - y * I.coeffs())).modulus()
    s = inner_product_S(J, I)
    return abs(vj**2 - ((1 + s) / 2 * vp**2 + (1 - s) / 2 * vm**2))
