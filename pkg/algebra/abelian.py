"""
Exact arithmetic in finitely generated abelian groups.

A group is an ordered list of cyclic factors, each of finite order or INF.
Elements are exponent vectors; finite entries are kept in [0, order).
"""

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Tuple, Union

from sympy import factorint

from errors import DimensionError, GroupMismatchError, NotEnumerableError


class Inf(enum.Enum):
    """Marker for an infinite cyclic factor or an element of infinite order."""

    INF = "inf"

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = Inf.INF
Order = Union[int, Inf]


@dataclass(frozen=True)
class AbelianGroup:
    factor_orders: Tuple[Order, ...]
    labels: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        orders = tuple(self.factor_orders)
        for order in orders:
            if order is INF:
                continue
            if isinstance(order, bool) or not isinstance(order, int) or order < 1:
                raise ValueError(f"Invalid factor order: {order!r}")
        labels = tuple(self.labels) or tuple(f"z{i + 1}" for i in range(len(orders)))
        if len(labels) != len(orders):
            raise DimensionError(f"{len(labels)} labels for {len(orders)} factors")
        object.__setattr__(self, "factor_orders", orders)
        object.__setattr__(self, "labels", labels)
        # 0 stands for "no reduction" in the hot arithmetic path only
        object.__setattr__(self, "_moduli", tuple(0 if o is INF else o for o in orders))

    @property
    def rank(self) -> int:
        return len(self.factor_orders)

    @property
    def is_finite(self) -> bool:
        return INF not in self.factor_orders

    @property
    def free_rank(self) -> int:
        return sum(1 for o in self.factor_orders if o is INF)

    @property
    def order(self) -> Order:
        if not self.is_finite:
            return INF
        return math.prod(self.factor_orders)

    @property
    def torsion_orders(self) -> Tuple[int, ...]:
        """Primary decomposition of the torsion part, sorted; trivial factors vanish."""
        primary = []
        for order in self.factor_orders:
            if order is INF or order == 1:
                continue
            primary.extend(p ** e for p, e in factorint(order).items())
        return tuple(sorted(primary))

    def identity(self) -> "ExponentVector":
        return ExponentVector(self, (0,) * self.rank)

    def generator(self, index: int) -> "ExponentVector":
        exps = [0] * self.rank
        exps[index] = 1
        return ab_reduce(exps, self)

    def vector(self, *exponents: int) -> "ExponentVector":
        return ab_reduce(exponents, self)

    def index_of(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class ExponentVector:
    group: AbelianGroup
    exponents: Tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __str__(self) -> str:
        parts = []
        for label, e in zip(self.group.labels, self.exponents):
            if e == 0:
                continue
            parts.append(label if e == 1 else f"{label}^{e}")
        return "*".join(parts) if parts else "1"


def _reduce(exponents: Sequence[int], moduli: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(e % m if m else e for e, m in zip(exponents, moduli))


def _same_group(a: ExponentVector, b: ExponentVector) -> AbelianGroup:
    if a.group is not b.group and a.group != b.group:
        raise GroupMismatchError(f"Vectors over {a.group.factor_orders} and {b.group.factor_orders}")
    return a.group


def ab_reduce(v: Sequence[int], G: AbelianGroup) -> ExponentVector:
    if len(v) != G.rank:
        raise DimensionError(f"Vector of length {len(v)} over a group with {G.rank} factors")
    return ExponentVector(G, _reduce([int(e) for e in v], G._moduli))


def ab_mul(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    G = _same_group(a, b)
    return ExponentVector(G, _reduce([x + y for x, y in zip(a.exponents, b.exponents)], G._moduli))


def ab_pow(a: ExponentVector, k: int) -> ExponentVector:
    return ExponentVector(a.group, _reduce([e * k for e in a.exponents], a.group._moduli))


def ab_inv(a: ExponentVector) -> ExponentVector:
    return ab_pow(a, -1)


def ab_order(a: ExponentVector) -> Order:
    k = 1
    for e, order in zip(a.exponents, a.group.factor_orders):
        if e == 0:
            continue
        if order is INF:
            return INF
        k = math.lcm(k, order // math.gcd(order, e))
    return k


def ab_enumerate(G: AbelianGroup) -> Iterator[ExponentVector]:
    if not G.is_finite:
        raise NotEnumerableError(f"Cannot enumerate a group with infinite factors {G.factor_orders}")
    for exps in itertools.product(*(range(o) for o in G.factor_orders)):
        yield ExponentVector(G, exps)


def order_mul(a: Order, k: int) -> Order:
    return INF if a is INF else a * k
