from __future__ import annotations

import math
import pickle

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cayley_dickson, clifford_product, hamilton
from slicereg.hypercomplex import (
    OCTONION,
    QUATERNION,
    CliffordElement,
    DomainError,
    ImaginaryUnit,
    Octonion,
    Quaternion,
    algebra_from_tag,
    clifford,
    element_from_json,
    element_to_json,
    inner_product_S,
    slice_decompose,
)

finite = st.floats(min_value=-10, max_value=10, allow_nan=False)
quats = st.lists(finite, min_size=4, max_size=4).map(lambda c: Quaternion(*c))
octs = st.lists(finite, min_size=8, max_size=8).map(lambda c: Octonion(*c))

i, j, k = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)
one = Quaternion(1, 0, 0, 0)


def test_hamilton_rules():
    assert i * i == -one and j * j == -one and k * k == -one
    assert i * j * k == -one
    assert i * j == k and j * i == -k
    assert j * k == i and k * i == j


@pytest.mark.parametrize(
    "alg, oracle",
    [(QUATERNION, hamilton), (OCTONION, cayley_dickson), (clifford(2), clifford_product), (clifford(3), clifford_product), (clifford(5), clifford_product)],
)
def test_products_match_reference(alg, oracle, rng):
    for _ in range(40):
        a, b = rng.normal(size=alg.dim), rng.normal(size=alg.dim)
        assert np.allclose(alg.mul_arrays(a, b), oracle(a, b), atol=1e-13)


@settings(max_examples=200, deadline=None)
@given(quats, quats, quats)
def test_quaternion_associative(a, b, c):
    lhs, rhs = (a * b) * c, a * (b * c)
    assert (lhs - rhs).modulus() <= 1e-12 * max(1.0, a.modulus() * b.modulus() * c.modulus())


@settings(max_examples=200, deadline=None)
@given(quats, quats)
def test_modulus_multiplicative(a, b):
    assert math.isclose((a * b).modulus(), a.modulus() * b.modulus(), rel_tol=1e-12, abs_tol=1e-12)


@settings(max_examples=200, deadline=None)
@given(octs, octs)
def test_octonion_alternative_and_composition(a, b):
    tol = 1e-12 * max(1.0, a.modulus() ** 2 * b.modulus())
    assert ((a * a) * b - a * (a * b)).modulus() <= tol
    assert ((b * a) * a - b * (a * a)).modulus() <= tol
    assert math.isclose((a * b).modulus(), a.modulus() * b.modulus(), rel_tol=1e-12, abs_tol=1e-12)


def test_octonions_not_associative():
    e = [OCTONION.basis(n) for n in range(8)]
    found = [(p, q, r) for p in range(1, 8) for q in range(1, 8) for r in range(1, 8) if not ((e[p] * e[q]) * e[r]).allclose(e[p] * (e[q] * e[r]))]
    assert found
    p, q, r = found[0]
    assert ((e[p] * e[q]) * e[r] + e[p] * (e[q] * e[r])).modulus() < 1e-15


def test_clifford_generators():
    alg = clifford(3)
    e1, e2 = alg.basis(1), alg.basis(2)
    assert e1 * e1 == -alg.one()
    assert e1 * e2 == -(e2 * e1)
    # bar conjugation of a paravector negates the vector part
    x = CliffordElement.paravector(3, [1.0, 2.0, 3.0, 4.0])
    assert np.allclose(x.conj().coeffs[[0, 1, 2, 4]], [1, -2, -3, -4])
    assert math.isclose((x * x.conj()).real, x.modulus() ** 2)


def test_clifford_associative(rng):
    alg = clifford(4)
    for _ in range(20):
        a, b, c = (alg.element(rng.normal(size=alg.dim)) for _ in range(3))
        assert ((a * b) * c - a * (b * c)).modulus() <= 1e-12 * a.modulus() * b.modulus() * c.modulus()


def test_inverse():
    q = Quaternion(1, -2, 0.5, 3)
    assert (q * q.inverse()).allclose(one)
    assert (q.inverse() * q).allclose(one)
    with pytest.raises(DomainError, match="non-invertible"):
        Quaternion(0, 0, 0, 0).inverse()
    o = Octonion(1, 2, 3, 4, 5, 6, 7, 8)
    assert (o * o.inverse()).allclose(OCTONION.one())


def test_clifford_inverse_restricted():
    x = CliffordElement.paravector(3, [0.5, 1.0, -2.0, 0.25])
    assert (x * x.inverse()).allclose(clifford(3).one(), atol=1e-14)
    alg = clifford(3)
    with pytest.raises(DomainError):
        (alg.one() + alg.basis(7)).inverse()  # e123^2 = +1 makes 1 + e123 a zero divisor


def test_conjugation_reverses_products(rng):
    for _ in range(20):
        a, b = (Quaternion(*rng.normal(size=4)) for _ in range(2))
        assert (a * b).conj().allclose(b.conj() * a.conj(), atol=1e-13)


def test_immutable():
    q = Quaternion(1, 2, 3, 4)
    with pytest.raises(AttributeError):
        q.coeffs = np.zeros(4)
    with pytest.raises(ValueError):
        q.coeffs[0] = 5.0
    assert hash(q) == hash(Quaternion(1, 2, 3, 4))


def test_imaginary_unit_squares_to_minus_one(rng):
    for alg in (QUATERNION, OCTONION, clifford(3)):
        for _ in range(10):
            J = ImaginaryUnit.random(alg, rng)
            assert (J.element() * J.element()).allclose(-alg.one(), atol=1e-14)


def test_imaginary_unit_validation():
    with pytest.raises(DomainError):
        ImaginaryUnit(QUATERNION, (1.0, 1.0, 0.0))
    with pytest.raises(DomainError):
        ImaginaryUnit.from_vector(QUATERNION, [0.0, 0.0, 0.0])
    J = ImaginaryUnit.from_vector(QUATERNION, [0.0, 3.0, 4.0])
    assert np.allclose(J.vector(), [0.0, 0.6, 0.8])


@settings(max_examples=200, deadline=None)
@given(quats)
def test_slice_decompose_roundtrip(q):
    p = slice_decompose(q)
    assert p.y >= 0
    assert p.recompose().allclose(q, atol=1e-12)


def test_slice_decompose_real_and_clifford():
    p = slice_decompose(Quaternion(-2, 0, 0, 0))
    assert (p.x, p.y) == (-2.0, 0.0)
    with pytest.raises(DomainError):
        slice_decompose(clifford(2).basis(3))


def test_inner_product_clipped():
    I = ImaginaryUnit.from_vector(QUATERNION, [1.0, 1e-17, 0.0])
    assert inner_product_S(I, I) <= 1.0
    assert inner_product_S(I, -I) == -1.0


@pytest.mark.parametrize("a", [Quaternion(1, 2, 3, 4), Octonion(*range(8)), CliffordElement(2, [1, 0, 2, 3])])
def test_json_roundtrip(a):
    assert element_from_json(element_to_json(a), a.algebra) == a


def test_algebra_tags_and_pickle():
    for alg in (QUATERNION, OCTONION, clifford(3)):
        assert algebra_from_tag(alg.tag) is alg
        assert pickle.loads(pickle.dumps(alg)) is alg
    assert algebra_from_tag("clifford:2") is clifford(2)
    with pytest.raises(DomainError):
        clifford(0)
    with pytest.raises(DomainError):
        algebra_from_tag("sedenion")


def test_mixed_algebras_rejected():
    with pytest.raises(TypeError):
        Quaternion(1, 0, 0, 0) * Octonion(1, 0, 0, 0, 0, 0, 0, 0)
