import random
from itertools import product

from algebra.group_algebra import Endomorphism, GroupElement
from algebra.integer_lattice import INFINITE
from processors.semiconjugacy import (
    ClassId,
    class_count,
    class_id,
    class_representatives,
    conjugator,
    same_class,
    semicentralizer,
    twisted_conjugate,
)
from conftest import IDENTITY, SHEAR

BOX = [GroupElement(m, n) for m, n in product(range(-6, 7), repeat=2)]


def test_shear_same_class_examples():
    assert same_class(SHEAR, GroupElement(1, 0), GroupElement(0, 0)) is not None
    assert same_class(SHEAR, GroupElement(0, 1), GroupElement(0, 0)) is None
    assert same_class(SHEAR, GroupElement(5, 2), GroupElement(-3, 2)) is not None


def test_identity_classes_are_singletons():
    assert same_class(IDENTITY, GroupElement(1, 0), GroupElement(1, 0)) == (0, 0)
    assert same_class(IDENTITY, GroupElement(1, 0), GroupElement(0, 0)) is None
    assert class_id(IDENTITY, GroupElement(3, -4)) == ClassId(GroupElement(3, -4))


def test_witness_conjugates_g2_to_g1(phi):
    for g1, g2 in product(BOX[::7], BOX[::5]):
        z = same_class(phi, g1, g2)
        if z is not None:
            assert twisted_conjugate(phi, conjugator(z), g2) == g1


def test_class_id_matches_same_class(phi):
    for g1 in BOX[::11]:
        for g2 in BOX:
            assert (class_id(phi, g1) == class_id(phi, g2)) == (same_class(phi, g1, g2) is not None)


def test_class_id_is_idempotent(phi):
    for g in BOX:
        rep = class_id(phi, g).rep
        assert class_id(phi, rep).rep == rep


def test_same_class_is_an_equivalence_relation(phi):
    elements = BOX[::9]
    for g in elements:
        assert same_class(phi, g, g) is not None
    for g1, g2 in product(elements, repeat=2):
        z = same_class(phi, g1, g2)
        if z is None:
            continue
        assert same_class(phi, g2, g1) is not None
        for g3 in elements:
            w = same_class(phi, g2, g3)
            if w is not None:
                # composed witness: g1 = (z w) g3 phi(z w)^-1
                composed = conjugator(z) * conjugator(w)
                assert twisted_conjugate(phi, composed, g3) == g1
                assert same_class(phi, g1, g3) is not None


def test_random_nonsingular_class_counts():
    rng = random.Random(2024)
    checked = 0
    while checked < 20:
        phi = Endomorphism(*(rng.randint(-4, 4) for _ in range(4)))
        d = (phi.b1 - 1) * (phi.b4 - 1) - phi.b3 * phi.b2
        if d == 0 or abs(d) > 10:
            continue
        checked += 1
        assert class_count(phi) == abs(d)
        window = [GroupElement(m, n) for m, n in product(range(2 * abs(d)), repeat=2)]
        assert len({class_id(phi, g) for g in window}) == abs(d)
        reps = class_representatives(phi)
        assert len(reps) == abs(d)
        assert len(set(reps)) == abs(d)


def test_class_count_examples():
    assert class_count(SHEAR) == INFINITE
    assert class_count(IDENTITY) == INFINITE
    assert class_count(Endomorphism.from_rows([[3, 0], [0, 2]])) == 2
    assert class_count(Endomorphism.from_rows([[2, 1], [1, 1]])) == 1
    assert class_count(Endomorphism.from_rows([[-1, 0], [0, -1]])) == 4
    assert class_representatives(SHEAR) is None


def test_semicentralizer_examples():
    assert semicentralizer(SHEAR).basis == ((1, 0),)
    assert semicentralizer(IDENTITY).rank == 2
    assert semicentralizer(Endomorphism.from_rows([[1, 0], [0, -1]])).basis == ((1, 0),)
    assert semicentralizer(Endomorphism.from_rows([[3, 0], [0, 1]])).basis == ((0, 1),)
    assert semicentralizer(Endomorphism.from_rows([[2, 1], [1, 1]])).rank == 0


def test_semicentralizer_fixes_every_element(phi):
    kernel = semicentralizer(phi)
    for vec in kernel.basis:
        g = conjugator(vec)
        assert phi.apply(g) == g
