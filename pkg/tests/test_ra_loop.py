import numpy as np
import pytest

from algebra.abelian import INF
from algebra.ra_loop import (
    coset_representatives,
    enumerate_loop,
    l_associator,
    l_commutator,
    l_inv,
    l_is_central,
    l_mul,
    l_order,
    l_pow,
    l_square,
    moufang_check,
    random_loop_element,
    solve_involutions,
    split_central_factors,
    star,
    structure_check,
)
from classification.catalog import build_canonical, build_row
from errors import NotEnumerableError


def test_star_fixes_center_and_moves_the_rest(type1):
    G = type1.group
    z = G.central(G.center.vector(1))
    assert star(z) == z
    assert star(G.x).z == G.s
    assert star(star(G.x)) == G.x


def test_multiplication_rules(octonions):
    L = octonions
    x, y, u = L.x, L.y, L.u
    # (g,0)(h,1) = (hg,1)
    assert l_mul(x, u) == L.element(a=1, e=1)
    # (g,1)(h,0) = (g h*,1): u x = x s u
    assert l_mul(u, x) == L.element(a=1, z=L.s, e=1)
    # (g,1)(h,1) = (g0 h* g,0)
    assert l_mul(u, u) == L.central(L.g0)
    assert l_commutator(x, u) == L.s
    assert l_associator(x, y, u) == L.s


def test_inverse_and_powers(octonions):
    for p in enumerate_loop(octonions):
        assert l_mul(p, l_inv(p)) == octonions.identity
        assert l_mul(l_inv(p), p) == octonions.identity
        order = l_order(p)
        assert l_pow(p, order) == octonions.identity
        assert l_pow(p, -1) == l_inv(p)


def test_octonion_orders(octonions):
    orders = sorted(l_order(p) for p in enumerate_loop(octonions))
    assert orders == [1, 2] + [4] * 14


def test_squares_are_central(type1):
    for p in coset_representatives(type1):
        assert l_is_central(l_mul(p, p))
        assert l_mul(p, p).g.z == l_square(p)


def test_coset_representatives_start_with_identity(type1):
    reps = coset_representatives(type1)
    assert len(reps) == 8
    assert reps[0] == type1.identity


def test_enumerate_infinite_raises():
    with pytest.raises(NotEnumerableError):
        enumerate_loop(build_canonical(5))


@pytest.mark.parametrize("type_id", [1, 2, 3, 4])
def test_finite_types_are_moufang_and_ra(type_id):
    L = build_canonical(type_id)
    assert moufang_check(L).ok
    assert structure_check(L).ok


@pytest.mark.parametrize("type_id", [5, 10, 13, 16])
def test_infinite_types_sampled(type_id):
    L = build_canonical(type_id)
    report = moufang_check(L, 2, seed=11, trials=300)
    assert report.ok
    assert not any(check.exhaustive for check in report.checks)
    assert structure_check(L, 1, seed=11, trials=300).ok


@pytest.mark.parametrize("type_id", [7, 8, 9])
def test_larger_finite_types_use_the_table(type_id):
    L = build_canonical(type_id)
    assert moufang_check(L).ok
    report = structure_check(L, exhaustive_limit=1000)
    assert report.ok
    n = 8 * L.center.order
    assert report.checks[2].name == "associator_range"
    assert report.checks[2].checked == n ** 3 + n ** 2


@pytest.mark.parametrize(
    "type_id,expected",
    [(1, 8), (2, 0), (5, 4), (6, 0), (10, 4), (11, 0), (14, 2), (15, 0), (16, 0)],
)
def test_involution_counts(type_id, expected):
    result = solve_involutions(build_canonical(type_id, strict=False))
    assert result.count == expected
    for w in result.witnesses:
        assert not l_is_central(w)
        assert l_mul(w, w) == w.loop.identity


def test_involutions_against_enumeration(type1, octonions):
    for L in (type1, octonions, build_canonical(3), build_canonical(4)):
        counted = sum(1 for p in enumerate_loop(L) if not l_is_central(p) and l_order(p) == 2)
        assert solve_involutions(L).count == counted


def test_split_central_factors():
    L = build_row(28, {"m1": 1, "k": 1})
    assert split_central_factors(L) == ()
    assert split_central_factors(build_canonical(12)) == ()


def test_random_loop_elements_stay_in_window():
    L = build_canonical(16)
    orders = L.center.factor_orders
    assert INF in orders
    rng = np.random.default_rng(3)
    samples = [random_loop_element(L, rng, 2) for _ in range(200)]
    for p in samples:
        for o, e in zip(orders, p.g.z.exponents):
            assert -2 <= e <= 2 if o is INF else 0 <= e < o
    assert {p.e for p in samples} == {0, 1}
    assert {(p.g.a, p.g.b) for p in samples} == {(0, 0), (0, 1), (1, 0), (1, 1)}
