import pytest

from algebra.ra_loop import l_mul, l_square
from classification.catalog import ROWS, build_canonical, build_row, get_row
from classification.normalize import (
    GeneratorMap,
    check_iso_map,
    halve,
    multiply_factor,
    normalize,
    reduce_g0,
    regenerate,
    reorder_factors,
    target_of,
    verify_iso_map,
)
from errors import ConstraintError, NormalizationError

INFINITE_TARGETS = {
    5: 5, 6: 5, 11: 6, 12: 6, 17: 10, 18: 10, 23: 11, 24: 11,
    25: 5, 26: 5, 27: 10, 28: 10, 29: 14, 30: 14, 31: 5, 32: 6,
    33: 11, 34: 11, 35: 15, 36: 15, 41: 12, 42: 12, 43: 10, 44: 11,
    45: 12, 46: 12, 47: 13, 48: 13, 49: 14, 50: 15, 51: 13, 52: 13,
    53: 16, 54: 16,
}

FINITE_TARGETS = {
    1: 1, 2: 1, 3: 3, 4: 3, 7: 1, 8: 2, 9: 4, 10: 4, 13: 3, 14: 3,
    15: 7, 16: 7, 19: 3, 20: 4, 21: 8, 22: 8, 37: 7, 38: 8, 39: 9, 40: 9,
}


def test_targets_cover_every_row():
    assert set(INFINITE_TARGETS) | set(FINITE_TARGETS) == set(ROWS)
    assert all(not get_row(r).is_finite for r in INFINITE_TARGETS)


def test_generator_map_identity_verifies(type1):
    assert verify_iso_map(type1, type1, GeneratorMap.identity(type1))


def test_missing_map_fails(type1, octonions):
    report = check_iso_map(type1, octonions, None)
    assert not report.ok
    assert report.checks[0].name == "map_given"


def test_map_with_wrong_endpoints_fails(type1, octonions):
    report = check_iso_map(type1, octonions, GeneratorMap.identity(type1))
    assert [c.name for c in report.failures()] == ["endpoints"]


def test_regenerate_requires_commutator_s(type1):
    with pytest.raises(NormalizationError):
        regenerate(type1, type1.x, type1.x, type1.u)
    with pytest.raises(NormalizationError):
        regenerate(type1, type1.x, type1.y, l_mul(type1.x, type1.y))


def test_regenerate_swaps_roles(octonions):
    mapping = regenerate(octonions, octonions.u, octonions.y, octonions.x)
    assert mapping.dst.g0 == l_square(octonions.x)
    assert verify_iso_map(octonions, mapping.dst, mapping)


def test_multiply_factor_changes_basis():
    L = build_row(6)
    mapping = multiply_factor(L, "w", "t1")
    assert mapping.dst.g0 == mapping.dst.center.vector(0, 1)
    assert verify_iso_map(L, mapping.dst, mapping)


def test_multiply_factor_needs_dividing_order():
    # t1 of order 2 cannot absorb the free factor w
    with pytest.raises(NormalizationError):
        multiply_factor(build_row(6), "t1", "w")


def test_reorder_factors():
    L = build_row(27)
    mapping = reorder_factors(L, ["t1", "t", "u1"])
    assert mapping.dst.center.labels == ("t1", "t", "u1")
    assert verify_iso_map(L, mapping.dst, mapping)
    with pytest.raises(NormalizationError):
        reorder_factors(L, ["t1", "t1", "u1"])


def test_halve_clears_even_exponents():
    L = build_row(31, {"m1": 2})
    mapping = regenerate(L, L.x, L.y, l_mul(L.x, L.u))
    assert mapping.dst.g0.exponents == (3, 0)
    halved = halve(mapping.dst)
    assert halved.dst.g0.exponents == (1, 0)
    assert halve(halved.dst) is None


def test_reduce_g0_strips_square_factors():
    L = build_row(2)
    reduced, trace = reduce_g0(L)
    assert reduced.g0.is_identity
    assert reduced == build_canonical(1)
    assert [s.kind for s in trace.steps] == ["absorb"]
    assert verify_iso_map(L, reduced, trace)


def test_row6_absorbs_t1():
    trace = normalize(6)
    assert str(trace.steps[0]) == "w' = t1*w"
    assert trace.type_id == 5
    assert trace.method == "rewrite"
    assert verify_iso_map(build_row(6), build_canonical(5), trace)
    assert "type=5 m1=1" in trace.lines()


def test_row31_depends_on_m1():
    assert normalize(31, {"m1": 1}).type_id == 5
    trace = normalize(31, {"m1": 2})
    assert trace.type_id == 6
    assert trace.outside_constraint
    assert "constraint=outside m1=1" in trace.lines()
    assert verify_iso_map(build_row(31, {"m1": 2}), build_canonical(6, {"m1": 2}, strict=False), trace)


def test_row28_splits_when_k_below_m1():
    trace = normalize(28, {"m1": 2, "k": 1})
    assert trace.decomposable
    assert trace.factor == "t"
    assert trace.factor_order == 2
    assert str(trace.steps[0]) == "t1' = t1*t"
    assert "decomposable factor=t order=2" in trace.lines()
    assert verify_iso_map(build_row(28, {"m1": 2, "k": 1}), target_of(trace), trace)


def test_row28_without_split():
    trace = normalize(28, {"m1": 1, "k": 2})
    assert trace.type_id == 10
    assert trace.type_params == {"m1": 1, "m2": 2}
    assert str(trace.steps[0]) == "t' = t1*t"


def test_starred_row_rejects_m1():
    with pytest.raises(ConstraintError):
        normalize(34, {"m1": 2, "k": 1})


def test_finite_row_uses_the_oracle():
    trace = normalize(8)
    assert trace.method == "oracle"
    assert trace.type_id == 2
    assert verify_iso_map(build_row(8), build_canonical(2), trace)


@pytest.mark.parametrize("row", sorted(INFINITE_TARGETS))
def test_infinite_rows(row):
    trace = normalize(row)
    assert not trace.decomposable
    assert trace.type_id == INFINITE_TARGETS[row]
    params = {name: 1 for name in get_row(row).param_names}
    assert verify_iso_map(build_row(row, params), target_of(trace), trace)


@pytest.mark.parametrize("row,params", [(46, {"m1": 2, "m2": 1, "k": 1}), (52, {"m1": 2, "k": 1})])
def test_torsion_rows_split(row, params):
    trace = normalize(row, params)
    assert trace.decomposable
    assert verify_iso_map(build_row(row, params), target_of(trace), trace)


@pytest.mark.parametrize(
    "row,params,expected",
    [(43, {"m1": 2, "m2": 3}, {"m1": 2, "m2": 3}), (51, {"m1": 1, "k": 3}, {"m1": 1, "m2": 3})],
)
def test_parameters_carry_over(row, params, expected):
    trace = normalize(row, params)
    assert trace.type_params == expected
    assert verify_iso_map(build_row(row, params), target_of(trace), trace)


@pytest.mark.slow
@pytest.mark.parametrize("row", sorted(FINITE_TARGETS))
def test_finite_rows(row):
    trace = normalize(row)
    assert trace.type_id == FINITE_TARGETS[row]
    assert verify_iso_map(build_row(row), target_of(trace), trace)


@pytest.mark.slow
@pytest.mark.parametrize("row", [4, 16, 40])
def test_finite_torsion_rows_split(row):
    params = {name: 1 for name in get_row(row).param_names}
    params.update(m1=2, k=1)
    trace = normalize(row, params)
    assert trace.decomposable
    assert trace.factor == "t"
