import pytest

from algebra.abelian import INF
from classification.catalog import (
    FINITE_TYPES,
    ROWS,
    STARRED_ROWS,
    TYPES,
    Extension,
    build_canonical,
    build_row,
    check_params,
    get_row,
)
from errors import ConstraintError


def test_row_and_type_counts():
    assert len(ROWS) == 54
    assert len(TYPES) == 16
    assert FINITE_TYPES == (1, 2, 3, 4, 7, 8, 9)
    assert {r for r, spec in ROWS.items() if spec.starred} == STARRED_ROWS


def test_block_layout():
    assert get_row(28).d_type == 5
    assert get_row(28).extension is Extension.TORSION
    assert get_row(28).g0_pattern == "t1*t"
    assert get_row(28).param_names == ("m1", "k")
    assert get_row(42).param_names == ("m1", "m2", "m3")
    assert get_row(54).label == "L54"
    assert get_row(39).is_finite
    assert not get_row(25).is_finite


def test_type_rows():
    assert TYPES[2].row_id == 8
    assert TYPES[16].row_id == 53
    assert {t for t, c in TYPES.items() if c.constraint_m1 == 1} == {2, 4, 6}


def test_build_row_center_and_g0():
    L = build_row(28, {"m1": 2, "k": 1})
    assert L.center.factor_orders == (4, INF, 2)
    assert L.center.labels == ("t1", "u1", "t")
    assert L.g0.exponents == (1, 0, 1)
    assert L.s.exponents == (2, 0, 0)
    assert L.order is INF


def test_canonical_types_are_their_rows():
    for type_id, ctype in TYPES.items():
        assert build_canonical(type_id) == build_row(ctype.row_id)


def test_octonion_type():
    L = build_canonical(2)
    assert L.order == 16
    assert L.group.x_sq == L.group.y_sq == L.g0 == L.s


def test_largest_finite_type():
    L = build_canonical(9)
    assert L.order == 128
    assert L.center.labels == ("t1", "t2", "t3", "t")
    assert L.g0 == L.center.vector(0, 0, 0, 1)


def test_free_type_has_infinite_u_square():
    L = build_canonical(16)
    assert L.center.free_rank == 3
    assert L.g0 == L.center.vector(0, 0, 0, 1)


def test_starred_rows_require_m1_1():
    for row in sorted(STARRED_ROWS):
        names = get_row(row).param_names
        params = {name: 1 for name in names}
        build_row(row, params)
        params["m1"] = 2
        with pytest.raises(ConstraintError):
            build_row(row, params)


def test_constrained_types():
    with pytest.raises(ConstraintError):
        build_canonical(4, {"m1": 2, "m2": 1})
    relaxed = build_canonical(4, {"m1": 2, "m2": 1}, strict=False)
    assert relaxed.center.factor_orders == (4, 2)


@pytest.mark.parametrize(
    "params",
    [{"m1": 1, "m2": 1}, {"m1": 0}, {"k": 1}, {}],
)
def test_bad_params(params):
    with pytest.raises(ConstraintError):
        check_params(("m1",), params, "L1")


def test_unknown_ids():
    with pytest.raises(ConstraintError):
        build_row(55)
    with pytest.raises(ConstraintError):
        build_canonical(17)
