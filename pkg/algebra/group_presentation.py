"""
Normal-form arithmetic in groups G = <x, y, Z(G)> with G/Z(G) = C2 x C2.

Every element is written x^a y^b z with a, b in {0, 1} and z central.
The commutator s = [x, y] = t1^(2^(m1-1)) is central of order 2, so the
product follows from yx = xys and the centrality of x^2 and y^2.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from algebra.abelian import (
    INF,
    AbelianGroup,
    ExponentVector,
    Order,
    ab_enumerate,
    ab_order,
    ab_reduce,
    order_mul,
)
from errors import ConstraintError, DimensionError, GroupMismatchError
from schemas import PropertyCheck, VerificationReport
from settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupPresentation:
    center: AbelianGroup
    t1_index: int
    m1: int
    x_sq: ExponentVector
    y_sq: ExponentVector

    def __post_init__(self):
        if not 0 <= self.t1_index < self.center.rank:
            raise DimensionError(f"t1_index {self.t1_index} outside a center with {self.center.rank} factors")
        for name, vec in (("x_sq", self.x_sq), ("y_sq", self.y_sq)):
            if vec.group != self.center:
                raise GroupMismatchError(f"{name} is not a vector over the center")
        if self.m1 < 0:
            raise ConstraintError(f"m1 must be non-negative, got {self.m1}")

    @cached_property
    def s(self) -> ExponentVector:
        """The commutator [x, y]; the identity only for a degenerate m1 = 0."""
        if self.m1 == 0:
            return self.center.identity()
        exps = [0] * self.center.rank
        exps[self.t1_index] = 2 ** (self.m1 - 1)
        return ab_reduce(exps, self.center)

    @property
    def t1(self) -> ExponentVector:
        return self.center.generator(self.t1_index)

    @property
    def order(self) -> Order:
        return order_mul(self.center.order, 4)

    def element(self, a: int = 0, b: int = 0, z: Optional[ExponentVector] = None) -> "GroupElement":
        if z is None:
            z = self.center.identity()
        elif z.group != self.center:
            raise GroupMismatchError("Central part is not a vector over the center")
        return GroupElement(self, a & 1, b & 1, z)

    def central(self, z: ExponentVector) -> "GroupElement":
        return self.element(0, 0, z)

    @property
    def identity(self) -> "GroupElement":
        return self.element()

    @property
    def x(self) -> "GroupElement":
        return self.element(1, 0)

    @property
    def y(self) -> "GroupElement":
        return self.element(0, 1)


@dataclass(frozen=True)
class GroupElement:
    group: GroupPresentation = field(compare=False, repr=False)
    a: int
    b: int
    z: ExponentVector

    def __str__(self) -> str:
        parts = []
        if self.a:
            parts.append("x")
        if self.b:
            parts.append("y")
        if not self.z.is_identity:
            parts.append(str(self.z))
        return "*".join(parts) if parts else "1"


def _same_presentation(p: GroupElement, q: GroupElement) -> GroupPresentation:
    if p.group is not q.group and p.group != q.group:
        raise GroupMismatchError("Elements belong to different presentations")
    return p.group


def _central_sum(G: GroupPresentation, terms: Sequence[Tuple[int, Tuple[int, ...]]]) -> ExponentVector:
    exps = [0] * G.center.rank
    for k, vec in terms:
        if k:
            for i, e in enumerate(vec):
                exps[i] += k * e
    return ab_reduce(exps, G.center)


def g_mul(p: GroupElement, q: GroupElement) -> GroupElement:
    G = _same_presentation(p, q)
    a = p.a + q.a
    b = p.b + q.b
    z = _central_sum(
        G,
        (
            (1, p.z.exponents),
            (1, q.z.exponents),
            (p.b * q.a, G.s.exponents),
            (a // 2, G.x_sq.exponents),
            (b // 2, G.y_sq.exponents),
        ),
    )
    return GroupElement(G, a % 2, b % 2, z)


def g_inv(p: GroupElement) -> GroupElement:
    G = p.group
    z = _central_sum(
        G,
        (
            (-1, p.z.exponents),
            (-p.a, G.x_sq.exponents),
            (-p.b, G.y_sq.exponents),
            (-p.a * p.b, G.s.exponents),
        ),
    )
    return GroupElement(G, p.a, p.b, z)


def g_square(p: GroupElement) -> ExponentVector:
    G = p.group
    return _central_sum(
        G,
        (
            (2, p.z.exponents),
            (p.a, G.x_sq.exponents),
            (p.b, G.y_sq.exponents),
            (p.a * p.b, G.s.exponents),
        ),
    )


def g_commutator(p: GroupElement, q: GroupElement) -> ExponentVector:
    G = _same_presentation(p, q)
    if (p.a * q.b + q.a * p.b) % 2:
        return G.s
    return G.center.identity()


def g_is_central(p: GroupElement) -> bool:
    return p.a == 0 and p.b == 0


def g_order(p: GroupElement) -> Order:
    if g_is_central(p):
        return ab_order(p.z)
    return order_mul(ab_order(g_square(p)), 2)


def group_elements(G: GroupPresentation, sample_bound: Optional[int] = None) -> List[GroupElement]:
    """All elements when the center is finite, else the window with free exponents in [-B, B]."""
    if G.center.is_finite:
        vectors = list(ab_enumerate(G.center))
    else:
        bound = get_settings().sample_bound if sample_bound is None else sample_bound
        ranges = [
            range(-bound, bound + 1) if o is INF else range(o)
            for o in G.center.factor_orders
        ]
        vectors = [ExponentVector(G.center, exps) for exps in itertools.product(*ranges)]
    return [GroupElement(G, a, b, z) for a in (0, 1) for b in (0, 1) for z in vectors]


def random_central(center: AbelianGroup, rng: np.random.Generator, bound: int) -> ExponentVector:
    exps = [
        int(rng.integers(-bound, bound + 1)) if o is INF else int(rng.integers(0, o))
        for o in center.factor_orders
    ]
    return ExponentVector(center, tuple(exps))


# Group types D1..D9: center factors as (label, parameter or None for INF),
# then the labels carried by x^2 and y^2 (None is the identity).
D_TYPE_LAYOUTS: Dict[int, Tuple[Tuple[Tuple[str, Optional[str]], ...], Optional[str], Optional[str]]] = {
    1: ((("t1", "m1"),), None, None),
    2: ((("t1", "m1"),), "t1", "t1"),
    3: ((("t1", "m1"), ("t2", "m2")), None, "t2"),
    4: ((("t1", "m1"), ("t2", "m2")), "t1", "t2"),
    5: ((("t1", "m1"), ("u1", None)), None, "u1"),
    6: ((("t1", "m1"), ("u1", None)), "t1", "u1"),
    7: ((("t1", "m1"), ("t2", "m2"), ("t3", "m3")), "t2", "t3"),
    8: ((("t1", "m1"), ("t2", "m2"), ("u1", None)), "t2", "u1"),
    9: ((("t1", "m1"), ("u1", None), ("u2", None)), "u1", "u2"),
}


def d_type_params(type_id: int) -> Tuple[str, ...]:
    if type_id not in D_TYPE_LAYOUTS:
        raise ConstraintError(f"Unknown group type {type_id}; expected 1..9")
    return tuple(param for _, param in D_TYPE_LAYOUTS[type_id][0] if param)


def d_type_center(type_id: int, params: Dict[str, int]) -> Tuple[List[Order], List[str]]:
    """Factor orders and labels of Z(D) for the given parameters."""
    orders: List[Order] = []
    labels: List[str] = []
    for label, param in D_TYPE_LAYOUTS[type_id][0]:
        if param is None:
            orders.append(INF)
        else:
            if param not in params:
                raise ConstraintError(f"Group type {type_id} needs parameter {param}")
            if params[param] < 1:
                raise ConstraintError(f"{param} must be at least 1, got {params[param]}")
            orders.append(2 ** params[param])
        labels.append(label)
    return orders, labels


def make_group(
    center: AbelianGroup,
    m1: int,
    x_sq: ExponentVector,
    y_sq: ExponentVector,
    t1_index: int = 0,
) -> GroupPresentation:
    """Validated constructor: rejects m1 < 1 and a t1 factor of the wrong order."""
    if m1 < 1:
        raise ConstraintError(f"m1 must be at least 1, got {m1}")
    if center.factor_orders[t1_index] != 2 ** m1:
        raise ConstraintError(
            f"Factor {center.labels[t1_index]} has order {center.factor_orders[t1_index]}, expected 2^{m1}"
        )
    return GroupPresentation(center, t1_index, m1, x_sq, y_sq)


def build_D_type(type_id: int, m1: int, m2: Optional[int] = None, m3: Optional[int] = None) -> GroupPresentation:
    d_type_params(type_id)
    params = {name: value for name, value in (("m1", m1), ("m2", m2), ("m3", m3)) if value is not None}
    orders, labels = d_type_center(type_id, params)
    center = AbelianGroup(tuple(orders), tuple(labels))
    _, x_label, y_label = D_TYPE_LAYOUTS[type_id]
    x_sq = center.generator(center.index_of(x_label)) if x_label else center.identity()
    y_sq = center.generator(center.index_of(y_label)) if y_label else center.identity()
    return make_group(center, params["m1"], x_sq, y_sq)


def _shape_warnings(G: GroupPresentation) -> List[str]:
    warnings = []
    allowed_x = {G.t1_index, 1} if G.center.rank > 1 else {G.t1_index}
    allowed_y = allowed_x | ({2} if G.center.rank > 2 else set())
    for name, vec, allowed in (("x^2", G.x_sq, allowed_x), ("y^2", G.y_sq, allowed_y)):
        stray = [G.center.labels[i] for i, e in enumerate(vec.exponents) if e and i not in allowed]
        if stray:
            warnings.append(f"{name} involves {', '.join(stray)} outside the leading center factors")
    return warnings


def verify_presentation(
    G: GroupPresentation,
    sample_bound: Optional[int] = None,
    *,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
    exhaustive_limit: Optional[int] = None,
) -> VerificationReport:
    settings = get_settings()
    bound = settings.sample_bound if sample_bound is None else sample_bound
    seed = settings.seed if seed is None else seed
    trials = settings.sample_trials if trials is None else trials
    limit = settings.exhaustive_limit if exhaustive_limit is None else exhaustive_limit

    elements = group_elements(G, bound)
    report = VerificationReport(subject=f"group of order {G.order}", warnings=_shape_warnings(G))
    report.checks.append(_check_associativity(G, elements, bound, seed, trials, limit))
    report.checks.append(_check_center(G, elements))
    report.checks.append(_check_squares(elements))
    report.checks.append(_check_quotient(G))
    logger.info("Verified presentation over %s: %s", G.center.factor_orders, "pass" if report.ok else "fail")
    return report


def _triples(elements, seed, trials, limit) -> Tuple[Iterator, bool]:
    n = len(elements)
    if n ** 3 <= limit:
        return itertools.product(elements, repeat=3), True
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, n, size=(trials, 3))
    return ((elements[i], elements[j], elements[k]) for i, j, k in picks), False


def _check_associativity(G, elements, bound, seed, trials, limit) -> PropertyCheck:
    exhaustive_ok = G.center.is_finite or bound == 0
    triples, exhaustive = _triples(elements, seed, trials, limit if exhaustive_ok else 0)
    checked = 0
    for p, q, r in triples:
        checked += 1
        if g_mul(g_mul(p, q), r) != g_mul(p, g_mul(q, r)):
            return PropertyCheck(
                name="associativity", passed=False, checked=checked, exhaustive=exhaustive,
                witness=[str(p), str(q), str(r)],
            )
    return PropertyCheck(name="associativity", passed=True, checked=checked, exhaustive=exhaustive)


def _check_center(G: GroupPresentation, elements: List[GroupElement]) -> PropertyCheck:
    x, y = G.x, G.y
    for p in elements:
        commutes = g_mul(p, x) == g_mul(x, p) and g_mul(p, y) == g_mul(y, p)
        if commutes != g_is_central(p):
            detail = "commutes with x and y but is not declared central" if commutes else "declared central but does not commute"
            return PropertyCheck(name="center", passed=False, checked=len(elements), witness=[str(p)], detail=detail)
    return PropertyCheck(name="center", passed=True, checked=len(elements))


def _check_squares(elements: List[GroupElement]) -> PropertyCheck:
    for p in elements:
        if not g_is_central(g_mul(p, p)):
            return PropertyCheck(name="squares_central", passed=False, checked=len(elements), witness=[str(p)])
    return PropertyCheck(name="squares_central", passed=True, checked=len(elements))


def _check_quotient(G: GroupPresentation) -> PropertyCheck:
    x, y = G.x, G.y
    reps = [x, y, g_mul(x, y)]
    central = [r for r in reps if g_mul(r, x) == g_mul(x, r) and g_mul(r, y) == g_mul(y, r)]
    quotient = 4 // (1 + len(central))
    return PropertyCheck(
        name="quotient_order",
        passed=quotient == 4,
        checked=len(reps),
        witness=[str(r) for r in central] or None,
        detail=f"|G/Z(G)| = {quotient}",
    )
