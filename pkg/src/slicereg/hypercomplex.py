"""Quaternion, octonion and Clifford-algebra arithmetic.

Every algebra here is a real algebra with a fixed basis, so elements are
stored as a flat float64 coefficient vector and multiplication goes through a
precomputed structure tensor ``table[i, j, k]`` (coefficient of basis ``k`` in
``e_i * e_j``).  The same tensor drives the vectorized evaluation code in
:mod:`slicereg.slicepoly` and :mod:`slicereg.analysis`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "DomainError",
    "Algebra",
    "QUATERNION",
    "OCTONION",
    "clifford",
    "algebra_from_tag",
    "Element",
    "Quaternion",
    "Octonion",
    "CliffordElement",
    "ImaginaryUnit",
    "SlicePoint",
    "mul",
    "conj",
    "modulus",
    "inverse",
    "slice_decompose",
    "inner_product_S",
    "default_unit",
    "element_to_json",
    "element_from_json",
]

MAX_CLIFFORD_M = 6


class DomainError(ValueError):
    """Raised when an operation is applied outside its mathematical domain."""


def _quaternion_table() -> np.ndarray:
    # basis order 1, i, j, k
    t = np.zeros((4, 4, 4))
    rules = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    for (i, j), (s, k) in rules.items():
        t[i, j, k] = s
    return t


def _cayley_dickson_table(base: np.ndarray) -> np.ndarray:
    """Double an algebra with (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))."""
    n = base.shape[0]
    cs = np.full(n, -1.0)
    cs[0] = 1.0

    def bmul(x, y):
        return np.einsum("i,j,ijk->k", x, y, base)

    t = np.zeros((2 * n, 2 * n, 2 * n))
    eye = np.eye(2 * n)
    for p in range(2 * n):
        a, b = eye[p, :n], eye[p, n:]
        for r in range(2 * n):
            c, d = eye[r, :n], eye[r, n:]
            first = bmul(a, c) - bmul(cs * d, b)
            second = bmul(d, a) + bmul(b, cs * c)
            t[p, r] = np.concatenate([first, second])
    return t


def _blade_sign(a: int, b: int) -> int:
    # reordering sign for e_A e_B, then e_i^2 = -1 for every shared generator
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    sign = -1 if swaps & 1 else 1
    if bin(a & b).count("1") & 1:
        sign = -sign
    return sign


def _clifford_table(m: int) -> np.ndarray:
    n = 1 << m
    t = np.zeros((n, n, n))
    for a in range(n):
        for b in range(n):
            t[a, b, a ^ b] = _blade_sign(a, b)
    return t


class Algebra:
    """A finite-dimensional real algebra given by its structure tensor.

    ``units`` lists the basis indices whose span contains the imaginary units
    used for slices: ``i, j, k`` for quaternions, ``e1..e7`` for octonions and
    the grade-1 blades for a Clifford algebra.
    """

    __slots__ = ("name", "dim", "table", "conj_signs", "units", "m", "associative", "_lmats")

    def __init__(self, name, table, conj_signs, units, m=None, associative=True):
        self.name = name
        self.dim = table.shape[0]
        self.table = table
        self.table.setflags(write=False)
        self.conj_signs = np.asarray(conj_signs, dtype=float)
        self.conj_signs.setflags(write=False)
        self.units = tuple(units)
        self.m = m
        self.associative = associative
        # _lmats[k] is the matrix of left multiplication by units[k]
        self._lmats = np.stack([table[u].T for u in self.units]) if self.units else np.zeros((0, self.dim, self.dim))
        self._lmats.setflags(write=False)

    def __repr__(self):
        return f"Algebra({self.tag!r})"

    def __reduce__(self):
        return (algebra_from_tag, (self.tag,))

    @property
    def tag(self):
        """JSON tag: ``"quaternion"``, ``"octonion"`` or ``{"clifford": m}``."""
        if self.m is not None:
            return {"clifford": self.m}
        return self.name

    # -- vectorized kernels -------------------------------------------------

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of coefficient arrays, broadcasting over leading axes."""
        return np.einsum("...i,...j,ijk->...k", a, b, self.table)

    def conj_arrays(self, a: np.ndarray) -> np.ndarray:
        return a * self.conj_signs

    def left_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix ``L`` with ``L @ v`` equal to the product ``a * v``."""
        return np.einsum("i,ijk->kj", np.asarray(a, dtype=float), self.table)

    def unit_left_matrices(self) -> np.ndarray:
        return self._lmats

    def unit_vector(self, direction: Sequence[float]) -> np.ndarray:
        v = np.zeros(self.dim)
        v[list(self.units)] = direction
        return v

    def is_paravector(self, coeffs: np.ndarray, tol: float = 0.0) -> bool:
        if self.m is None:
            return True
        mask = np.ones(self.dim, dtype=bool)
        mask[0] = False
        mask[list(self.units)] = False
        return bool(np.all(np.abs(coeffs[..., mask]) <= tol))

    def element(self, coeffs) -> Element:
        cls = {"quaternion": Quaternion, "octonion": Octonion}.get(self.name, CliffordElement)
        return cls._from_array(self, np.asarray(coeffs, dtype=float))

    def one(self) -> Element:
        e = np.zeros(self.dim)
        e[0] = 1.0
        return self.element(e)

    def zero(self) -> Element:
        return self.element(np.zeros(self.dim))

    def basis(self, index: int) -> Element:
        e = np.zeros(self.dim)
        e[index] = 1.0
        return self.element(e)


_CONJ_QUAT = np.array([1.0, -1.0, -1.0, -1.0])

QUATERNION = Algebra("quaternion", _quaternion_table(), _CONJ_QUAT, units=(1, 2, 3))
OCTONION = Algebra(
    "octonion",
    _cayley_dickson_table(_quaternion_table()),
    np.array([1.0] + [-1.0] * 7),
    units=range(1, 8),
    associative=False,
)


@functools.lru_cache(maxsize=None)
def clifford(m: int) -> Algebra:
    """The Clifford algebra R_{0,m}; blades are indexed by subset bitmasks."""
    if not isinstance(m, int) or m < 1 or m > MAX_CLIFFORD_M:
        raise DomainError(f"Clifford signature m must be an integer in 1..{MAX_CLIFFORD_M}, got {m!r}")
    n = 1 << m
    # bar conjugation = reversion composed with grade involution
    signs = []
    for blade in range(n):
        k = bin(blade).count("1")
        signs.append((-1) ** k * (-1) ** (k * (k - 1) // 2))
    return Algebra(f"clifford{m}", _clifford_table(m), signs, units=[1 << i for i in range(m)], m=m)


def algebra_from_tag(tag) -> Algebra:
    if tag == "quaternion":
        return QUATERNION
    if tag == "octonion":
        return OCTONION
    if isinstance(tag, dict) and set(tag) == {"clifford"}:
        return clifford(tag["clifford"])
    if isinstance(tag, str) and tag.startswith("clifford"):
        # CLI shorthand: "clifford:3" or "clifford3"
        return clifford(int(tag[len("clifford"):].lstrip(":")))
    raise DomainError(f"unknown algebra tag {tag!r}")


class Element:
    """Immutable element of one of the supported algebras."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, *args, algebra: Algebra | None = None):
        raise TypeError("use a concrete subclass")

    @classmethod
    def _from_array(cls, algebra: Algebra, arr: np.ndarray):
        if arr.shape != (algebra.dim,):
            raise DomainError(f"{algebra.name} needs {algebra.dim} coefficients, got shape {arr.shape}")
        obj = object.__new__(cls)
        arr = np.array(arr, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(obj, "algebra", algebra)
        object.__setattr__(obj, "coeffs", arr)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def _wrap(self, arr):
        return self.algebra.element(arr)

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                raise TypeError(f"cannot mix {self.algebra.name} and {other.algebra.name}")
            return other.coeffs
        if isinstance(other, (int, float, np.floating, np.integer)):
            e = np.zeros(self.algebra.dim)
            e[0] = float(other)
            return e
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.coeffs + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.coeffs - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(o - self.coeffs)

    def __neg__(self):
        return self._wrap(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._wrap(self.coeffs * float(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.algebra.mul_arrays(self.coeffs, o))

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._wrap(self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._wrap(self.coeffs / float(other))
        return NotImplemented

    def __abs__(self):
        return self.modulus()

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return other.algebra is self.algebra and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.algebra.name, self.coeffs.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(repr(float(c)) for c in self.coeffs)})"

    @property
    def real(self) -> float:
        return float(self.coeffs[0])

    @property
    def imag(self) -> Element:
        arr = self.coeffs.copy()
        arr[0] = 0.0
        return self._wrap(arr)

    def conj(self) -> Element:
        return self._wrap(self.algebra.conj_arrays(self.coeffs))

    def modulus(self) -> float:
        # real part of a * conj(a) is the Euclidean norm of the coefficients
        # in all three algebras
        return float(np.sqrt(np.dot(self.coeffs, self.coeffs)))

    def inverse(self) -> Element:
        n2 = float(np.dot(self.coeffs, self.coeffs))
        if n2 == 0.0:
            raise DomainError("non-invertible element")
        if self.algebra.m is not None:
            prod = self.algebra.mul_arrays(self.coeffs, self.algebra.conj_arrays(self.coeffs))
            if np.max(np.abs(prod[1:])) > 1e-12 * n2:
                raise DomainError("non-invertible element: a*conj(a) is not a real scalar")
        return self._wrap(self.algebra.conj_arrays(self.coeffs) / n2)

    def is_paravector(self, tol: float = 0.0) -> bool:
        return self.algebra.is_paravector(self.coeffs, tol)

    def allclose(self, other, atol: float = 1e-12) -> bool:
        o = self._coerce(other)
        return bool(np.max(np.abs(self.coeffs - o)) <= atol)


class Quaternion(Element):
    __slots__ = ()

    def __init__(self, x0=0.0, x1=0.0, x2=0.0, x3=0.0):
        arr = np.array([x0, x1, x2, x3], dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "algebra", QUATERNION)
        object.__setattr__(self, "coeffs", arr)

    x0 = property(lambda self: float(self.coeffs[0]))
    x1 = property(lambda self: float(self.coeffs[1]))
    x2 = property(lambda self: float(self.coeffs[2]))
    x3 = property(lambda self: float(self.coeffs[3]))


class Octonion(Element):
    __slots__ = ()

    def __init__(self, *components):
        if len(components) == 1 and np.ndim(components[0]) == 1:
            components = tuple(components[0])
        arr = np.zeros(8)
        arr[: len(components)] = components
        arr.setflags(write=False)
        object.__setattr__(self, "algebra", OCTONION)
        object.__setattr__(self, "coeffs", arr)


class CliffordElement(Element):
    """Element of R_{0,m}; ``coeffs[mask]`` multiplies the blade with bit i set for e_{i+1}."""

    __slots__ = ()

    def __init__(self, m: int, coeffs: Sequence[float]):
        alg = clifford(m)
        arr = np.array(coeffs, dtype=float)
        if arr.shape != (alg.dim,):
            raise DomainError(f"R_0,{m} needs {alg.dim} coefficients")
        arr.setflags(write=False)
        object.__setattr__(self, "algebra", alg)
        object.__setattr__(self, "coeffs", arr)

    @property
    def m(self) -> int:
        return self.algebra.m

    @classmethod
    def paravector(cls, m: int, components: Sequence[float]) -> CliffordElement:
        alg = clifford(m)
        arr = np.zeros(alg.dim)
        arr[0] = components[0]
        arr[list(alg.units)] = components[1:]
        return cls(m, arr)


def mul(a: Element, b: Element) -> Element:
    return a * b


def conj(a: Element) -> Element:
    return a.conj()


def modulus(a: Element) -> float:
    return a.modulus()


def inverse(a: Element) -> Element:
    return a.inverse()


@dataclass(frozen=True)
class ImaginaryUnit:
    """A unit I with I^2 = -1, stored as a direction over ``algebra.units``."""

    algebra: Algebra
    direction: tuple

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        if d.shape != (len(self.algebra.units),):
            raise DomainError("direction has the wrong length for this algebra")
        n = float(np.linalg.norm(d))
        if abs(n - 1.0) > 1e-10:
            raise DomainError(f"imaginary unit must have modulus 1, got {n}")
        object.__setattr__(self, "direction", tuple(float(c) for c in d))

    @classmethod
    def from_vector(cls, algebra: Algebra, vector) -> ImaginaryUnit:
        """Normalize ``vector`` onto the unit sphere of imaginary units."""
        v = np.asarray(vector, dtype=float)
        n = float(np.linalg.norm(v))
        if n == 0.0:
            raise DomainError("zero vector has no direction")
        return cls(algebra, tuple(v / n))

    @classmethod
    def from_element(cls, q: Element) -> ImaginaryUnit:
        return cls.from_vector(q.algebra, q.coeffs[list(q.algebra.units)])

    @classmethod
    def random(cls, algebra: Algebra, rng: np.random.Generator) -> ImaginaryUnit:
        return cls.from_vector(algebra, rng.normal(size=len(algebra.units)))

    def vector(self) -> np.ndarray:
        return np.array(self.direction)

    def coeffs(self) -> np.ndarray:
        return self.algebra.unit_vector(self.direction)

    def element(self) -> Element:
        return self.algebra.element(self.coeffs())

    def left_matrix(self) -> np.ndarray:
        return np.einsum("k,kij->ij", self.vector(), self.algebra.unit_left_matrices())

    def __neg__(self):
        return ImaginaryUnit(self.algebra, tuple(-c for c in self.direction))


def default_unit(algebra: Algebra) -> ImaginaryUnit:
    """The unit used for real points: i for quaternions, e1 otherwise."""
    d = [0.0] * len(algebra.units)
    d[0] = 1.0
    return ImaginaryUnit(algebra, tuple(d))


@dataclass(frozen=True)
class SlicePoint:
    x: float
    y: float
    unit: ImaginaryUnit

    def recompose(self) -> Element:
        return self.unit.algebra.element(self.x * self.unit.algebra.one().coeffs + self.y * self.unit.coeffs())

    @property
    def modulus(self) -> float:
        return math.hypot(self.x, self.y)


def slice_decompose(q: Element) -> SlicePoint:
    """Write ``q = x + y I`` with ``y >= 0``; real points get the default unit."""
    alg = q.algebra
    if not q.is_paravector():
        raise DomainError("only paravectors lie on a slice")
    v = q.coeffs[list(alg.units)]
    y = float(np.linalg.norm(v))
    if y == 0.0:
        return SlicePoint(q.real, 0.0, default_unit(alg))
    return SlicePoint(q.real, y, ImaginaryUnit(alg, tuple(v / y)))


def inner_product_S(I: ImaginaryUnit, J: ImaginaryUnit) -> float:
    if I.algebra is not J.algebra:
        raise TypeError("units belong to different algebras")
    return float(np.clip(np.dot(I.vector(), J.vector()), -1.0, 1.0))


def element_to_json(a: Element):
    if a.algebra.m is not None:
        return {"m": a.algebra.m, "coeffs": [float(c) for c in a.coeffs]}
    return [float(c) for c in a.coeffs]


def element_from_json(obj, algebra: Algebra | None = None) -> Element:
    """Decode an element; a bare list is read in ``algebra`` (or by its length)."""
    if isinstance(obj, dict):
        if set(obj) != {"m", "coeffs"}:
            raise DomainError("Clifford element needs exactly the keys 'm' and 'coeffs'")
        alg = clifford(int(obj["m"]))
        if algebra is not None and algebra is not alg:
            raise DomainError(f"expected a {algebra.name} element")
        return CliffordElement(alg.m, obj["coeffs"])
    if isinstance(obj, (int, float)):
        return (algebra or QUATERNION).one() * float(obj)
    if not isinstance(obj, list) or not all(isinstance(c, (int, float)) for c in obj):
        raise DomainError(f"cannot decode element from {obj!r}")
    if algebra is None:
        algebra = {4: QUATERNION, 8: OCTONION}.get(len(obj))
        if algebra is None:
            raise DomainError(f"no algebra has {len(obj)} components")
    if algebra.m is not None and len(obj) == algebra.m + 1:
        # bare paravector components
        return CliffordElement.paravector(algebra.m, obj)
    return algebra.element(np.array(obj, dtype=float))
