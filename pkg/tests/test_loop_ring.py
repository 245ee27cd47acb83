import numpy as np
import pytest

from algebra.loop_ring import (
    RingElement,
    check_alternative,
    check_associative,
    is_RA_finite,
    r_add,
    r_associator,
    r_mul,
    r_scale,
    r_sub,
    ring_checks,
    validate_modulus,
)
from classification.catalog import FINITE_TYPES, build_canonical
from errors import ConstraintError, GroupMismatchError
from oracle.cayley import materialize


def _random_element(table, modulus, rng):
    return RingElement.from_dense(table, modulus, rng.integers(0, modulus, size=table.n))


@pytest.mark.parametrize("modulus", [2, 4, 1, 0])
def test_even_or_small_modulus_rejected(modulus):
    with pytest.raises(ConstraintError):
        validate_modulus(modulus)


def test_basis_products_follow_the_table(type1_table):
    for i in (1, 5, 9):
        for j in (2, 7, 12):
            product = r_mul(RingElement.basis(type1_table, i, 3), RingElement.basis(type1_table, j, 3))
            assert product == RingElement.basis(type1_table, int(type1_table.table[i, j]), 3)


def test_linear_operations(type1_table):
    a = RingElement(type1_table, 5, {1: 2, 3: 4})
    b = RingElement(type1_table, 5, {1: 3, 2: 1})
    assert r_add(a, b).coeffs == {2: 1, 3: 4}
    assert r_sub(a, a).is_zero
    assert r_scale(a, 3).coeffs == {1: 1, 3: 2}


def test_mixed_rings_rejected(type1_table, octonion_table):
    with pytest.raises(GroupMismatchError):
        r_mul(RingElement.basis(type1_table, 1, 3), RingElement.basis(octonion_table, 1, 3))
    with pytest.raises(GroupMismatchError):
        r_add(RingElement.basis(type1_table, 1, 3), RingElement.basis(type1_table, 1, 5))


@pytest.mark.parametrize("type_id", [1, 2])
def test_alternative_laws_on_random_elements(type_id):
    table = materialize(build_canonical(type_id))
    assert check_alternative(table, 3).passed
    rng = np.random.default_rng(2024 + type_id)
    for _ in range(1000):
        a = _random_element(table, 3, rng)
        b = _random_element(table, 3, rng)
        assert r_associator(a, a, b).is_zero
        assert r_associator(b, a, a).is_zero


def test_ring_of_octonion_loop_is_not_associative(octonion_table):
    rng = np.random.default_rng(5)
    nonzero = 0
    for _ in range(50):
        a, b, c = (_random_element(octonion_table, 3, rng) for _ in range(3))
        nonzero += not r_associator(a, b, c).is_zero
    assert nonzero > 0


def test_ra_loops_pass(type1_table, octonion_table):
    for table in (type1_table, octonion_table):
        alternative, associative, ra = ring_checks(table)
        assert alternative.passed
        assert not associative.passed
        assert associative.witness
        assert ra.passed
        assert is_RA_finite(table, 7)


def test_groups_are_not_ra(q8_table, d4_table):
    for table in (q8_table, d4_table):
        assert check_alternative(table).passed
        assert check_associative(table).passed
        assert not is_RA_finite(table)


def test_non_moufang_loop_ring_is_not_alternative(non_moufang_table):
    check = check_alternative(non_moufang_table)
    assert not check.passed
    assert len(check.witness) == 3
    assert not is_RA_finite(non_moufang_table)


@pytest.mark.parametrize("modulus", [3, 5, 9])
@pytest.mark.parametrize(
    "type_id", [pytest.param(t, marks=pytest.mark.slow) if t in (7, 8, 9) else t for t in sorted(FINITE_TYPES)]
)
def test_ra_verdict_does_not_depend_on_odd_modulus(type_id, modulus):
    alternative, associative, ra = ring_checks(materialize(build_canonical(type_id)), modulus)
    assert alternative.passed
    assert not associative.passed
    assert ra.passed
