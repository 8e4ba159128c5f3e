import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cswalls.errors import GenusOutOfRange, NotExceptional, ZeroRank
from cswalls.lattice import (
    PAIR_CLASS,
    POINT_CLASS,
    SECTION_CLASS,
    SHEAF_CLASS,
    Genus,
    NumClass,
    det3,
    dual_class,
    euler,
    mutate_left,
    project,
    serre_class,
    serre_matrix,
)

classes = st.builds(
    NumClass,
    st.integers(-50, 50),
    st.integers(-50, 50),
    st.integers(-50, 50),
)
genera = st.integers(1, 12)


def test_euler_examples():
    assert euler(NumClass(0, 0, 1), NumClass(0, 0, 1), 5) == 1
    assert euler(NumClass(1, 0, 0), NumClass(0, 0, 1), 3) == 0
    # chi((0,0,1),(1,0,0)) = g - 1
    assert euler(NumClass(0, 0, 1), NumClass(1, 0, 0), 2) == 1
    assert euler(NumClass(0, 1, 0), NumClass(0, 1, 0), 7) == 0


@given(classes, classes, classes, genera)
def test_euler_bilinear(a, b, c, g):
    assert euler(a + b, c, g) == euler(a, c, g) + euler(b, c, g)
    assert euler(c, a + b, g) == euler(c, a, g) + euler(c, b, g)


def test_exceptional_and_semiorthogonal():
    for g in range(1, 21):
        assert euler(SECTION_CLASS, SECTION_CLASS, g) == 1
        assert euler(PAIR_CLASS, PAIR_CLASS, g) == 1
        assert euler(SHEAF_CLASS, SECTION_CLASS, g) == 0
        assert euler(POINT_CLASS, SECTION_CLASS, g) == 0


def test_serre_examples():
    assert serre_class(NumClass(0, 0, 1), 2) == NumClass(1, 2, 2)
    assert serre_class(NumClass(0, 1, 0), 5) == NumClass(0, -1, -1)
    assert serre_class(NumClass(1, 0, 0), 1) == NumClass(-1, 0, 0)


@given(classes, classes, genera)
def test_numerical_serre_duality(a, b, g):
    assert euler(a, b, g) == euler(b, serre_class(a, g), g)


def test_serre_matrix_unimodular():
    for g in range(1, 21):
        assert det3(serre_matrix(g)) == 1


def test_serre_matrix_matches_map():
    rng = random.Random(3)
    for _ in range(50):
        g = rng.randint(1, 9)
        v = NumClass(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        m = serre_matrix(g)
        image = tuple(
            sum(m[i][j] * v.as_tuple()[j] for j in range(3)) for i in range(3)
        )
        assert image == serre_class(v, g).as_tuple()


def test_dual_examples():
    assert dual_class(NumClass(0, 0, 1)) == PAIR_CLASS
    assert dual_class(PAIR_CLASS) == NumClass(0, 0, 1)
    assert dual_class(NumClass(2, 3, 1)) == NumClass(-1, 3, 1)


@given(classes, classes, genera)
def test_dual_involution_and_adjoint(a, b, g):
    assert dual_class(dual_class(a)) == a
    assert euler(dual_class(a), dual_class(b), g) == euler(b, a, g)


def test_mutation_displays():
    rng = random.Random(11)
    for _ in range(100):
        g = rng.randint(1, 10)
        v = NumClass(rng.randint(-20, 20), rng.randint(-20, 20),
                     rng.randint(-20, 20))
        r, d, n = v.as_tuple()
        assert mutate_left(PAIR_CLASS, v, g) == NumClass(r - n, d, 0)
        assert mutate_left(SECTION_CLASS, v, g) == NumClass(
            r, d, d + r * (1 - g)
        )
    assert mutate_left(SECTION_CLASS, SECTION_CLASS, 4) == NumClass(0, 0, 0)


def test_mutation_rejects_non_exceptional():
    with pytest.raises(NotExceptional):
        mutate_left(POINT_CLASS, NumClass(1, 1, 1), 3)


def test_project():
    assert project(NumClass(2, 3, 1)) == (Fraction(3, 2), Fraction(1, 2))
    assert project(SHEAF_CLASS) == (0, 0)
    with pytest.raises(ZeroRank):
        project(POINT_CLASS)


def test_primitive():
    assert NumClass(2, 3, 1).is_primitive
    assert not NumClass(2, 4, 6).is_primitive
    assert not NumClass(0, 0, 0).is_primitive
    assert NumClass(0, 0, -1).is_primitive


def test_genus_validation():
    with pytest.raises(GenusOutOfRange):
        Genus(0)
    with pytest.raises(GenusOutOfRange):
        euler(SHEAF_CLASS, SHEAF_CLASS, 0)
    assert Genus(1).g == 1


def test_big_integer_classes():
    big = 10**40
    v = NumClass(big, -(big**2), 3 * big)
    w = serre_class(v, 10**6)
    assert dual_class(dual_class(v)) == v
    assert euler(v, v, 7) == euler(v, v, 7)  # no overflow, exact ints
    assert isinstance(w.d, int)
