"""
The 54 enumerated loop rows and the 16 canonical types as data.

Rows come in blocks of six per group type D (1..9). Within a block the
center extension and u^2 run through

    (none, 1) (none, t1) (<t>, t) (<t>, t1*t) (<w>, w) (<w>, t1*w)

where o(t) = 2^k and w has infinite order. Starred rows exist only for m1 = 1.
"""

import enum
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple, Union

from algebra.abelian import INF, AbelianGroup, ab_mul
from algebra.group_presentation import D_TYPE_LAYOUTS, d_type_center, d_type_params, make_group
from algebra.ra_loop import RaLoopPresentation
from errors import ConstraintError


class Extension(str, enum.Enum):
    NONE = "none"
    TORSION = "torsion"
    FREE = "free"


_BLOCK = (
    (Extension.NONE, "1"),
    (Extension.NONE, "t1"),
    (Extension.TORSION, "t"),
    (Extension.TORSION, "t1*t"),
    (Extension.FREE, "w"),
    (Extension.FREE, "t1*w"),
)

STARRED_ROWS = frozenset({8, 10, 12, 20, 22, 24, 32, 34, 36})


def _param_names(d_type: int, extension: Extension) -> Tuple[str, ...]:
    names = d_type_params(d_type)
    return names + ("k",) if extension is Extension.TORSION else names


@dataclass(frozen=True)
class RowSpec:
    row_id: int
    d_type: int
    extension: Extension
    g0_pattern: str
    starred: bool

    @property
    def label(self) -> str:
        return f"L{self.row_id}"

    @property
    def param_names(self) -> Tuple[str, ...]:
        return _param_names(self.d_type, self.extension)

    @property
    def is_finite(self) -> bool:
        return self.extension is not Extension.FREE and all(
            param is not None for _, param in D_TYPE_LAYOUTS[self.d_type][0]
        )


ROWS: Dict[int, RowSpec] = {
    6 * (d - 1) + i + 1: RowSpec(6 * (d - 1) + i + 1, d, extension, pattern, 6 * (d - 1) + i + 1 in STARRED_ROWS)
    for d in range(1, 10)
    for i, (extension, pattern) in enumerate(_BLOCK)
}


@dataclass(frozen=True)
class CanonicalType:
    type_id: int
    row_id: int
    constraint_m1: Optional[int] = None

    @property
    def row(self) -> RowSpec:
        return ROWS[self.row_id]

    @property
    def d_type(self) -> int:
        return self.row.d_type

    @property
    def extension(self) -> Extension:
        return self.row.extension

    @property
    def g0_pattern(self) -> str:
        return self.row.g0_pattern

    @property
    def param_names(self) -> Tuple[str, ...]:
        return self.row.param_names

    @property
    def is_finite(self) -> bool:
        return self.row.is_finite


TYPES: Dict[int, CanonicalType] = {
    type_id: CanonicalType(type_id, row_id, 1 if type_id in (2, 4, 6) else None)
    for type_id, row_id in {
        1: 1, 2: 8, 3: 13, 4: 20, 5: 25, 6: 32, 7: 37, 8: 38,
        9: 39, 10: 43, 11: 44, 12: 45, 13: 47, 14: 49, 15: 50, 16: 53,
    }.items()
}

FINITE_TYPES = tuple(type_id for type_id, c in TYPES.items() if c.is_finite)


def get_row(row: Union[int, RowSpec]) -> RowSpec:
    if isinstance(row, RowSpec):
        return row
    if row not in ROWS:
        raise ConstraintError(f"Unknown row L{row}; expected 1..54")
    return ROWS[row]


def get_type(type_id: Union[int, CanonicalType]) -> CanonicalType:
    if isinstance(type_id, CanonicalType):
        return type_id
    if type_id not in TYPES:
        raise ConstraintError(f"Unknown type {type_id}; expected 1..16")
    return TYPES[type_id]


def minimal_params(names: Tuple[str, ...]) -> Dict[str, int]:
    return {name: 1 for name in names}


def check_params(names: Tuple[str, ...], params: Mapping[str, int], subject: str) -> Dict[str, int]:
    unknown = sorted(set(params) - set(names))
    if unknown:
        raise ConstraintError(f"{subject} does not take parameter(s) {', '.join(unknown)}")
    missing = [name for name in names if name not in params]
    if missing:
        raise ConstraintError(f"{subject} needs parameter(s) {', '.join(missing)}")
    for name in names:
        if int(params[name]) < 1:
            raise ConstraintError(f"{name} must be at least 1, got {params[name]}")
    return {name: int(params[name]) for name in names}


def _assemble(row: RowSpec, params: Dict[str, int]) -> RaLoopPresentation:
    orders, labels = d_type_center(row.d_type, params)
    if row.extension is Extension.TORSION:
        orders.append(2 ** params["k"])
        labels.append("t")
    elif row.extension is Extension.FREE:
        orders.append(INF)
        labels.append("w")
    center = AbelianGroup(tuple(orders), tuple(labels))
    _, x_label, y_label = D_TYPE_LAYOUTS[row.d_type]
    x_sq = center.generator(center.index_of(x_label)) if x_label else center.identity()
    y_sq = center.generator(center.index_of(y_label)) if y_label else center.identity()
    group = make_group(center, params["m1"], x_sq, y_sq)
    g0 = center.identity()
    if row.g0_pattern != "1":
        for label in row.g0_pattern.split("*"):
            g0 = ab_mul(g0, center.generator(center.index_of(label)))
    return RaLoopPresentation(group, g0)


def build_row(row: Union[int, RowSpec], params: Optional[Mapping[str, int]] = None) -> RaLoopPresentation:
    spec = get_row(row)
    values = check_params(spec.param_names, params or minimal_params(spec.param_names), spec.label)
    if spec.starred and values["m1"] != 1:
        raise ConstraintError(f"Row {spec.label} is starred and requires m1 = 1, got m1 = {values['m1']}")
    return _assemble(spec, values)


def build_canonical(
    c: Union[int, CanonicalType],
    params: Optional[Mapping[str, int]] = None,
    strict: bool = True,
) -> RaLoopPresentation:
    """Presentation of a canonical type; strict=False lifts the m1 = 1 constraint of types 2, 4, 6."""
    ctype = get_type(c)
    values = check_params(ctype.param_names, params or minimal_params(ctype.param_names), f"Type {ctype.type_id}")
    if strict and ctype.constraint_m1 is not None and values["m1"] != ctype.constraint_m1:
        raise ConstraintError(
            f"Type {ctype.type_id} requires m1 = {ctype.constraint_m1}, got m1 = {values['m1']}"
        )
    return _assemble(ctype.row, values)
