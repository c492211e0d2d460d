"""Slice regular polynomials ``P(q) = sum_j q^j a_j`` with right coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .hypercomplex import (
    QUATERNION,
    Algebra,
    DomainError,
    Element,
    ImaginaryUnit,
    algebra_from_tag,
    default_unit,
    element_from_json,
    element_to_json,
)

__all__ = [
    "ZERO_DEGREE",
    "SlicePolynomial",
    "ComplexSlicePolynomial",
    "star_product",
    "pointwise_star_value",
    "regular_conjugate",
    "symmetrization",
    "restrict_to_slice",
    "common_coefficient_slice",
    "polynomial_to_json",
    "polynomial_from_json",
]

#: degree of the zero polynomial; ``ZERO_DEGREE + n`` stays ``-inf``
ZERO_DEGREE = -math.inf

PARALLEL_RTOL = 1e-10


class SlicePolynomial:
    """Immutable polynomial over one algebra with coefficients on the right.

    ``coeffs`` is an ``(n + 1, dim)`` array holding ``a_0 .. a_n``; exact
    trailing zeros are trimmed on construction.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Algebra, coeffs):
        arr = np.array(coeffs, dtype=float)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, algebra.dim)
        if arr.ndim != 2 or arr.shape[1] != algebra.dim:
            raise DomainError(f"coefficients must have shape (n+1, {algebra.dim}), got {arr.shape}")
        nz = np.flatnonzero(np.any(arr != 0.0, axis=1))
        arr = arr[: nz[-1] + 1] if nz.size else arr[:0]
        arr.setflags(write=False)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("SlicePolynomial is immutable")

    @classmethod
    def from_elements(cls, elements: Sequence[Element]) -> SlicePolynomial:
        if not elements:
            raise DomainError("need at least one coefficient to infer the algebra")
        alg = elements[0].algebra
        for e in elements:
            if e.algebra is not alg:
                raise TypeError("coefficients from different algebras")
        return cls(alg, np.stack([e.coeffs for e in elements]))

    @classmethod
    def real(cls, coeffs: Iterable[float], algebra: Algebra = QUATERNION) -> SlicePolynomial:
        c = np.asarray(list(coeffs), dtype=float)
        arr = np.zeros((c.size, algebra.dim))
        arr[:, 0] = c
        return cls(algebra, arr)

    @classmethod
    def monomial(cls, n: int, a: Element) -> SlicePolynomial:
        arr = np.zeros((n + 1, a.algebra.dim))
        arr[n] = a.coeffs
        return cls(a.algebra, arr)

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1 if self.coeffs.shape[0] else ZERO_DEGREE

    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def coefficient(self, j: int) -> Element:
        if 0 <= j < self.coeffs.shape[0]:
            return self.algebra.element(self.coeffs[j])
        return self.algebra.zero()

    def leading(self) -> Element:
        if self.is_zero():
            raise DomainError("zero polynomial has no leading coefficient")
        return self.algebra.element(self.coeffs[-1])

    def coeff_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __repr__(self):
        terms = ", ".join(repr(self.algebra.element(c)) for c in self.coeffs)
        return f"SlicePolynomial({self.algebra.name}, [{terms}])"

    def __eq__(self, other):
        if not isinstance(other, SlicePolynomial):
            return NotImplemented
        return other.algebra is self.algebra and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.algebra.name, self.coeffs.tobytes()))

    def allclose(self, other: SlicePolynomial, atol: float = 1e-12) -> bool:
        a, b = _pad(self.coeffs, other.coeffs)
        return bool(a.size == 0 or np.max(np.abs(a - b)) <= atol)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, SlicePolynomial):
            return NotImplemented
        if other.algebra is not self.algebra:
            raise TypeError(f"cannot mix {self.algebra.name} and {other.algebra.name} polynomials")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        a, b = _pad(self.coeffs, other.coeffs)
        return SlicePolynomial(self.algebra, a + b)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        a, b = _pad(self.coeffs, other.coeffs)
        return SlicePolynomial(self.algebra, a - b)

    def __neg__(self):
        return SlicePolynomial(self.algebra, -self.coeffs)

    def scale(self, s: float) -> SlicePolynomial:
        return SlicePolynomial(self.algebra, self.coeffs * float(s))

    def right_mul(self, a: Element) -> SlicePolynomial:
        """Coefficients multiplied on the right: ``sum q^j (a_j a)``."""
        return SlicePolynomial(self.algebra, self.algebra.mul_arrays(self.coeffs, a.coeffs[None, :]))

    def star(self, other: SlicePolynomial) -> SlicePolynomial:
        return star_product(self, other)

    # -- evaluation -----------------------------------------------------------

    def __call__(self, q: Element) -> Element:
        return self.eval(q)

    def eval(self, q: Element) -> Element:
        """Right-coefficient Horner: ``r <- q r + a_j`` from ``j = n`` down to 0."""
        if q.algebra is not self.algebra:
            raise TypeError("evaluation point from a different algebra")
        if not q.is_paravector():
            raise DomainError("slice monogenic polynomials are evaluated at paravectors only")
        return self.algebra.element(self.eval_many(q.coeffs[None, :])[0])

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized Horner over an ``(N, dim)`` array of points."""
        pts = np.asarray(points, dtype=float)
        r = np.zeros(pts.shape)
        table = self.algebra.table
        for a in self.coeffs[::-1]:
            r = np.einsum("ni,nj,ijk->nk", pts, r, table) + a
        return r

    def eval_real(self, r: float) -> Element:
        return self.algebra.element(_real_powers(r, self.coeffs.shape[0]) @ self.coeffs)

    def slice_parts(self, x, y):
        """Arrays ``b, c`` with ``P(x + yJ) = b + J c`` for every unit J.

        With ``(x + iy)^j = A_j + i B_j`` one gets ``b = sum A_j a_j`` and
        ``c = sum B_j a_j`` since J^2 = -1 and real scalars commute.
        """
        z = np.asarray(x, dtype=float) + 1j * np.asarray(y, dtype=float)
        zp = np.power.outer(z, np.arange(self.coeffs.shape[0]))
        return zp.real @ self.coeffs, zp.imag @ self.coeffs

    def eval_on_slice(self, unit: ImaginaryUnit, z: np.ndarray) -> np.ndarray:
        """Values ``P(Re z + Im z * unit)`` for complex numbers ``z``."""
        z = np.asarray(z, dtype=complex)
        b, c = self.slice_parts(z.real, z.imag)
        return b + c @ unit.left_matrix().T

    # -- calculus and products ------------------------------------------------

    def derivative(self) -> SlicePolynomial:
        n = self.coeffs.shape[0]
        if n <= 1:
            return SlicePolynomial(self.algebra, np.zeros((0, self.algebra.dim)))
        return SlicePolynomial(self.algebra, self.coeffs[1:] * np.arange(1, n)[:, None])

    def regular_conjugate(self) -> SlicePolynomial:
        return regular_conjugate(self)

    def symmetrization(self) -> SlicePolynomial:
        return symmetrization(self)

    def divide_real(self, divisor: Sequence[float]) -> tuple[SlicePolynomial, SlicePolynomial]:
        """Long division by a real-coefficient polynomial (ascending coefficients).

        Real coefficients are central, so ``P = D * Q + R`` holds both as
        *-product and pointwise.
        """
        d = np.trim_zeros(np.asarray(divisor, dtype=float), "b")
        if d.size == 0:
            raise DomainError("division by the zero polynomial")
        rem = np.array(self.coeffs, dtype=float)
        k = d.size - 1
        nq = max(rem.shape[0] - k, 0)
        quot = np.zeros((nq, self.algebra.dim))
        for i in range(nq - 1, -1, -1):
            quot[i] = rem[i + k] / d[-1]
            rem[i : i + k + 1] -= np.outer(d, quot[i])
        return SlicePolynomial(self.algebra, quot), SlicePolynomial(self.algebra, rem[:k])

    def to_json(self) -> dict:
        return polynomial_to_json(self)


def _pad(a: np.ndarray, b: np.ndarray):
    n = max(a.shape[0], b.shape[0])
    pa = np.zeros((n, a.shape[1]))
    pb = np.zeros((n, b.shape[1]))
    pa[: a.shape[0]] = a
    pb[: b.shape[0]] = b
    return pa, pb


def _real_powers(r: float, n: int) -> np.ndarray:
    return np.power(float(r), np.arange(n))


def star_product(f: SlicePolynomial, g: SlicePolynomial) -> SlicePolynomial:
    """Cauchy product: coefficient n is ``sum_k a_k b_{n-k}``."""
    if f.algebra is not g.algebra:
        raise TypeError("star product of polynomials over different algebras")
    alg = f.algebra
    if f.is_zero() or g.is_zero():
        return SlicePolynomial(alg, np.zeros((0, alg.dim)))
    nf, ng = f.coeffs.shape[0], g.coeffs.shape[0]
    # pairwise products a_k b_l, then summed along anti-diagonals
    pair = np.einsum("ki,lj,ijm->klm", f.coeffs, g.coeffs, alg.table)
    out = np.zeros((nf + ng - 1, alg.dim))
    for k in range(nf):
        out[k : k + ng] += pair[k]
    return SlicePolynomial(alg, out)


def pointwise_star_value(f: SlicePolynomial, g: SlicePolynomial, q: Element) -> Element:
    """``f*g(q) = f(q) g(f(q)^-1 q f(q))``, or 0 where ``f(q) = 0`` (quaternions only)."""
    if f.algebra is not QUATERNION or g.algebra is not QUATERNION:
        raise DomainError("the pointwise star formula is only available for quaternions")
    fq = f.eval(q)
    if fq.modulus() == 0.0:
        return QUATERNION.zero()
    return fq * g.eval(fq.inverse() * q * fq)


def regular_conjugate(f: SlicePolynomial) -> SlicePolynomial:
    return SlicePolynomial(f.algebra, f.algebra.conj_arrays(f.coeffs))


def symmetrization(f: SlicePolynomial) -> SlicePolynomial:
    """``f * f^c``.

    Coefficient ``n`` is ``sum_k a_k conj(a_{n-k}) = sum_k <a_k, a_{n-k}>``
    (the imaginary parts cancel in pairs), so it is assembled from inner
    products and is real by construction.
    """
    if f.algebra is not QUATERNION:
        raise DomainError("symmetrization is defined here for quaternionic polynomials")
    if f.is_zero():
        return f
    gram = f.coeffs @ f.coeffs.T
    n = f.coeffs.shape[0]
    out = np.zeros((2 * n - 1, f.algebra.dim))
    out[:, 0] = [np.trace(gram[::-1], offset=s - n + 1) for s in range(2 * n - 1)]
    return SlicePolynomial(f.algebra, out)


@dataclass(frozen=True)
class ComplexSlicePolynomial:
    """A polynomial whose coefficients ``u + v I`` all lie in the plane C_I.

    ``coeffs`` is a complex array ``u + 1j v``; evaluation at complex ``z``
    corresponds to evaluating at ``Re z + Im z * I``.
    """

    unit: ImaginaryUnit
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    @property
    def degree(self):
        arr = np.trim_zeros(self.array, "b")
        return arr.size - 1 if arr.size else ZERO_DEGREE

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.array)

    def derivative(self) -> ComplexSlicePolynomial:
        return ComplexSlicePolynomial(self.unit, tuple(np.polynomial.polynomial.polyder(self.array)))

    def to_slice_polynomial(self) -> SlicePolynomial:
        alg = self.unit.algebra
        arr = self.array
        ucoeffs = self.unit.coeffs()
        out = np.outer(arr.imag, ucoeffs)
        out[:, 0] += arr.real
        return SlicePolynomial(alg, out)


def _imag_parts(P: SlicePolynomial) -> np.ndarray:
    return P.coeffs[:, list(P.algebra.units)]


def restrict_to_slice(P: SlicePolynomial, unit: ImaginaryUnit) -> ComplexSlicePolynomial:
    """View ``P`` as a complex polynomial on C_unit; fails if a coefficient leaves the slice."""
    alg = P.algebra
    if unit.algebra is not alg:
        raise TypeError("unit from a different algebra")
    if alg.m is not None and not alg.is_paravector(P.coeffs):
        raise DomainError("coefficients leave the slice")
    d = unit.vector()
    im = _imag_parts(P)
    v = im @ d
    rejection = im - np.outer(v, d)
    scale = max(1.0, float(np.max(np.abs(P.coeffs)))) if P.coeffs.size else 1.0
    if rejection.size and np.max(np.linalg.norm(rejection, axis=1)) > PARALLEL_RTOL * scale:
        raise DomainError("coefficients leave the slice")
    return ComplexSlicePolynomial(unit, tuple(P.coeffs[:, 0] + 1j * v))


def common_coefficient_slice(P: SlicePolynomial) -> ImaginaryUnit | None:
    """A unit I with every coefficient in C_I, the default unit if all are real, else None."""
    alg = P.algebra
    if alg.m is not None and not alg.is_paravector(P.coeffs):
        return None
    im = _imag_parts(P)
    norms = np.linalg.norm(im, axis=1) if im.size else np.zeros(0)
    if norms.size == 0 or np.max(norms) == 0.0:
        return default_unit(alg)
    unit = ImaginaryUnit.from_vector(alg, im[int(np.argmax(norms))])
    try:
        restrict_to_slice(P, unit)
    except DomainError:
        return None
    return unit


def polynomial_to_json(P: SlicePolynomial) -> dict:
    return {
        "algebra": P.algebra.tag,
        "coeffs": [element_to_json(P.algebra.element(c)) for c in P.coeffs],
    }


def polynomial_from_json(obj) -> SlicePolynomial:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise DomainError("polynomial JSON must be an object with a 'coeffs' list")
    alg = algebra_from_tag(obj.get("algebra", "quaternion"))
    coeffs = obj["coeffs"]
    if not isinstance(coeffs, list):
        raise DomainError("'coeffs' must be a list")
    if not coeffs:
        return SlicePolynomial(alg, np.zeros((0, alg.dim)))
    return SlicePolynomial(alg, np.stack([element_from_json(c, alg).coeffs for c in coeffs]))
