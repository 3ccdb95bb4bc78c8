import pytest
from hypothesis import given, settings, strategies as st

from algebra.group_algebra import (
    Endomorphism,
    GroupElement,
    ONE,
    RingElement,
    U,
    V,
    apply_phi,
    exact_divide,
    power_sum,
    ring_mul,
)

elements = st.builds(GroupElement, st.integers(-8, 8), st.integers(-8, 8))
ring_elements = st.dictionaries(elements, st.integers(-5, 5), max_size=5).map(RingElement)
endomorphisms = st.builds(Endomorphism, *[st.integers(-3, 3)] * 4)


def ring(*terms):
    return RingElement((GroupElement(m, n), c) for c, m, n in terms)


def test_apply_phi_shear_sends_v_to_uv():
    shear = Endomorphism.from_rows([[1, 1], [0, 1]])
    assert apply_phi(shear, ring((1, 0, 1))) == ring((1, 1, 1))


def test_apply_phi_identity_is_identity():
    x = ring((3, 2, -1), (-1, 0, 4))
    assert apply_phi(Endomorphism.identity(), x) == x


def test_apply_phi_diagonal():
    phi = Endomorphism.from_rows([[3, 0], [0, 2]])
    assert apply_phi(phi, ring((2, 1, 0), (-1, 0, 1))) == ring((2, 3, 0), (-1, 0, 2))


def test_ring_mul_examples():
    u = RingElement.monomial(U)
    v = RingElement.monomial(V)
    one = RingElement.constant()
    assert ring_mul(u, v) == ring((1, 1, 1))
    assert ring_mul(u - one, u + one) == ring((1, 2, 0), (-1, 0, 0))
    assert ring_mul(ring((1, 1, 1)), ring((1, -1, -1))) == one


def test_canonical_sparse_form_drops_zeros():
    x = RingElement([(U, 2), (U, -2), (V, 1)])
    assert len(x) == 1
    assert x.coefficient(U) == 0
    assert x == RingElement.monomial(V)
    assert RingElement([(ONE, 0)]) == 0


def test_terms_are_sorted_lexicographically():
    x = ring((1, 2, 0), (1, -1, 5), (1, -1, -3))
    assert [g.theta() for g in x.keys()] == [(-1, -3), (-1, 5), (2, 0)]


def test_group_element_formatting():
    assert str(ONE) == "1"
    assert str(GroupElement(2, -1)) == "u^2v^-1"
    assert str(ring((1, 1, 0), (-2, 0, 0))) == "-2*1 + u"


@settings(max_examples=200)
@given(ring_elements, ring_elements)
def test_ring_mul_is_commutative(x, y):
    assert ring_mul(x, y) == ring_mul(y, x)


@settings(max_examples=100)
@given(ring_elements, ring_elements, ring_elements)
def test_ring_mul_is_associative(x, y, z):
    assert ring_mul(ring_mul(x, y), z) == ring_mul(x, ring_mul(y, z))


@settings(max_examples=100)
@given(ring_elements, ring_elements, ring_elements)
def test_ring_mul_distributes(x, y, z):
    assert ring_mul(x, y + z) == ring_mul(x, y) + ring_mul(x, z)


@settings(max_examples=200)
@given(endomorphisms, ring_elements, ring_elements)
def test_apply_phi_is_ring_homomorphism(phi, x, y):
    assert apply_phi(phi, ring_mul(x, y)) == ring_mul(apply_phi(phi, x), apply_phi(phi, y))


@settings(max_examples=200)
@given(endomorphisms, endomorphisms, elements)
def test_apply_phi_respects_composition(phi, psi, g):
    assert apply_phi(phi.compose(psi), g) == apply_phi(phi, apply_phi(psi, g))


def test_exact_divide_polynomial_and_laurent():
    u = RingElement.monomial(U)
    one = RingElement.constant()
    assert exact_divide(ring((1, 2, 0), (-1, 0, 0)), u - one) == u + one
    # (u^-1 v - v) / (1 - u) = u^-1 v
    assert exact_divide(ring((1, -1, 1), (-1, 0, 1)), one - u) == ring((1, -1, 1))
    assert exact_divide(ring((1, 5, -3)), ring((1, 2, 1))) == ring((1, 3, -4))


def test_exact_divide_reports_non_divisibility():
    u = RingElement.monomial(U)
    one = RingElement.constant()
    assert exact_divide(u + one.scale(2), u - one) is None
    assert exact_divide(u, one.scale(2)) is None
    assert exact_divide(RingElement(), u - one) == 0
    with pytest.raises(ZeroDivisionError):
        exact_divide(u, RingElement())


def test_power_sum_matches_fox_derivative():
    u = RingElement.monomial(U)
    one = RingElement.constant()
    for k in range(-6, 7):
        # (1 + u + ... + u^(k-1)) (u - 1) = u^k - 1
        assert ring_mul(power_sum(U, k), u - one) == RingElement.monomial(U ** k) - one
