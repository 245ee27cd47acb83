"""
Finite loops as Cayley tables, with exhaustive invariant computations.

Tables are numpy integer arrays with index 0 the identity. Every scan over
pairs or triples is a vectorized index computation on the table.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy import factorint, multiplicity

from algebra.group_presentation import GroupPresentation, g_mul, group_elements
from algebra.ra_loop import RaLoopPresentation, enumerate_loop, l_mul
from errors import NotEnumerableError
from schemas import Fingerprint, PropertyCheck

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CayleyTable:
    table: np.ndarray
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        array = np.array(self.table, dtype=np.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"Cayley table must be square, got shape {array.shape}")
        array.setflags(write=False)
        object.__setattr__(self, "table", array)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def label(self, index: int) -> str:
        if self.labels and self.labels[index]:
            return self.labels[index]
        return str(index)

    def words(self, indices: Iterable[int]) -> List[str]:
        return [self.label(int(i)) for i in indices]


def validate_loop(t: CayleyTable) -> PropertyCheck:
    """Identity row and column, then the Latin-square property; reports the first defect cell."""
    T = t.table
    n = t.n
    identity = np.arange(n)
    if n == 0:
        return PropertyCheck(name="loop_axioms", passed=False, detail="empty table")
    outside = np.argwhere((T < 0) | (T >= n))
    if len(outside):
        i, j = outside[0]
        return _defect(t, i, j, f"entry {T[i, j]} outside 0..{n - 1}")
    if not np.array_equal(T[0], identity):
        j = int(np.flatnonzero(T[0] != identity)[0])
        return _defect(t, 0, j, "row 0 is not the identity row")
    if not np.array_equal(T[:, 0], identity):
        i = int(np.flatnonzero(T[:, 0] != identity)[0])
        return _defect(t, i, 0, "column 0 is not the identity column")
    for i in range(n):
        j = _first_repeat(T[i])
        if j is not None:
            return _defect(t, i, j, f"duplicate entry {T[i, j]} in row {i}")
    for j in range(n):
        i = _first_repeat(T[:, j])
        if i is not None:
            return _defect(t, i, j, f"duplicate entry {T[i, j]} in column {j}")
    return PropertyCheck(name="loop_axioms", passed=True, checked=n * n)


def _first_repeat(line: np.ndarray) -> Optional[int]:
    seen = set()
    for k, value in enumerate(line.tolist()):
        if value in seen:
            return k
        seen.add(value)
    return None


def _defect(t: CayleyTable, i, j, detail: str) -> PropertyCheck:
    return PropertyCheck(
        name="loop_axioms", passed=False, checked=t.n * t.n,
        witness=[f"row={int(i)}", f"col={int(j)}"], detail=detail,
    )


def materialize(L: RaLoopPresentation) -> CayleyTable:
    if not L.center.is_finite:
        raise NotEnumerableError(f"Cannot materialize a loop with center {L.center.factor_orders}")
    return _materialize(L, L.center.labels)


# presentations compare without their labels, so the labels join the cache key
@lru_cache(maxsize=64)
def _materialize(L: RaLoopPresentation, labels: Tuple[str, ...]) -> CayleyTable:
    elements = enumerate_loop(L)
    index = {p: i for i, p in enumerate(elements)}
    logger.info("Materializing loop of order %d", len(elements))
    rows = [[index[l_mul(p, q)] for q in elements] for p in elements]
    return CayleyTable(np.array(rows), tuple(str(p) for p in elements))


def group_table(G: GroupPresentation) -> CayleyTable:
    if not G.center.is_finite:
        raise NotEnumerableError(f"Cannot materialize a group with center {G.center.factor_orders}")
    elements = group_elements(G)
    index = {p: i for i, p in enumerate(elements)}
    rows = [[index[g_mul(p, q)] for q in elements] for p in elements]
    return CayleyTable(np.array(rows), tuple(str(p) for p in elements))


def cyclic_table(n: int) -> CayleyTable:
    return CayleyTable(np.add.outer(np.arange(n), np.arange(n)) % n, tuple(f"c^{i}" if i else "1" for i in range(n)))


def direct_product_table(A: CayleyTable, B: CayleyTable) -> CayleyTable:
    """Index i * |B| + j stands for the pair (i, j)."""
    nb = B.n
    product = A.table[:, None, :, None] * nb + B.table[None, :, None, :]
    labels = tuple(f"({a},{b})" for a in A.words(range(A.n)) for b in B.words(range(nb)))
    return CayleyTable(product.reshape(A.n * nb, A.n * nb), labels)


def relabel(t: CayleyTable, perm: Sequence[int]) -> CayleyTable:
    """Rename element i to perm[i]; perm must fix 0."""
    perm = np.asarray(perm)
    new = np.empty_like(t.table)
    new[np.ix_(perm, perm)] = perm[t.table]
    labels = [""] * t.n
    for i, label in enumerate(t.words(range(t.n))):
        labels[perm[i]] = label
    return CayleyTable(new, tuple(labels))


def left_division(t: CayleyTable) -> np.ndarray:
    """ldiv[x, y] is the z with x * z = y."""
    T = t.table
    ldiv = np.empty_like(T)
    ldiv[np.arange(t.n)[:, None], T] = np.arange(t.n)[None, :]
    return ldiv


def _associativity_cube(T: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(pq)r and p(qr) over all index triples, axes (p, q, r)."""
    n = T.shape[0]
    idx = np.arange(n)
    left = T[T[:, :, None], idx[None, None, :]]
    right = T[idx[:, None, None], T[None, :, :]]
    return left, right


def element_orders(t: CayleyTable) -> np.ndarray:
    """Least k with p^k = 1 using right powers; 0 if never reached."""
    T = t.table
    n = t.n
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    power = idx.copy()
    for k in range(1, n + 1):
        orders[(power == 0) & (orders == 0)] = k
        if orders.all():
            break
        power = T[power, idx]
    return orders


def center_mask(t: CayleyTable) -> np.ndarray:
    """Elements that commute and associate in every position."""
    T = t.table
    left, right = _associativity_cube(T)
    assoc = left == right
    nuclear = assoc.all(axis=(1, 2)) & assoc.all(axis=(0, 2)) & assoc.all(axis=(0, 1))
    commuting = (T == T.T).all(axis=1)
    return nuclear & commuting


def center_indices(t: CayleyTable) -> Tuple[int, ...]:
    return tuple(int(i) for i in np.flatnonzero(center_mask(t)))


def commutator_values(t: CayleyTable) -> Set[int]:
    """All c with qp = (pq)c."""
    T = t.table
    return {int(v) for v in np.unique(left_division(t)[T, T.T])}


def associator_values(t: CayleyTable) -> Set[int]:
    """All a with (pq)r = (p(qr))a."""
    left, right = _associativity_cube(t.table)
    return {int(v) for v in np.unique(left_division(t)[right, left])}


def _closure(T: np.ndarray, mask: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    mask[0] = True
    size = int(mask.sum())
    while True:
        idx = np.flatnonzero(mask)
        mask[T[np.ix_(idx, idx)].ravel()] = True
        new_size = int(mask.sum())
        if new_size == size:
            return mask
        size = new_size


def subloop_generated(t: CayleyTable, gens: Iterable[int]) -> Tuple[int, ...]:
    """Closure of gens and the identity under multiplication.

    In a finite loop a multiplicatively closed subset containing 1 is
    closed under both divisions, so this is the generated subloop.
    """
    mask = np.zeros(t.n, dtype=bool)
    for g in gens:
        mask[int(g)] = True
    return tuple(int(i) for i in np.flatnonzero(_closure(t.table, mask)))


def derived_subloop(t: CayleyTable) -> Tuple[int, ...]:
    return subloop_generated(t, commutator_values(t) | associator_values(t))


def noncentral_involutions(t: CayleyTable, orders: Optional[np.ndarray] = None, center: Optional[np.ndarray] = None) -> int:
    orders = element_orders(t) if orders is None else orders
    center = center_mask(t) if center is None else center
    return int(((orders == 2) & ~center).sum())


def center_cosets(t: CayleyTable, center: Sequence[int]) -> List[int]:
    """First element of each coset pZ in index order."""
    covered = np.zeros(t.n, dtype=bool)
    reps = []
    center = np.asarray(center)
    for i in range(t.n):
        if not covered[i]:
            reps.append(i)
            covered[t.table[i, center]] = True
    return reps


def square_classes(t: CayleyTable, center: Sequence[int]) -> Tuple[Optional[int], Optional[int]]:
    """(cosets of L/Z squaring into Z^2, F2-rank of the coset squares in Z/Z^2)."""
    T = t.table
    if not len(center) or t.n != 8 * len(center):
        return None, None
    in_center = np.zeros(t.n, dtype=bool)
    in_center[list(center)] = True
    center_squares = {int(T[z, z]) for z in center}
    squares = [int(T[r, r]) for r in center_cosets(t, center)]
    if len(squares) != 8 or not all(in_center[v] for v in squares):
        return None, None
    trivial = sum(1 for v in squares if v in center_squares)
    span = subloop_generated(t, center_squares | set(squares))
    return trivial, (len(span) // len(center_squares)).bit_length() - 1


def abelian_invariants(orders: Sequence[int]) -> Tuple[int, ...]:
    """Prime-power cyclic factors of a finite abelian group from its element orders."""
    total = len(orders)
    factors: List[int] = []
    for p in factorint(total):
        at_least = []
        previous = 0
        k = 1
        while True:
            count = sum(1 for o in orders if (p ** k) % o == 0)
            log_count = multiplicity(p, count)
            gained = log_count - previous
            if gained == 0:
                break
            at_least.append(gained)
            previous = log_count
            k += 1
        for k, count in enumerate(at_least, start=1):
            following = at_least[k] if k < len(at_least) else 0
            factors.extend([p ** k] * (count - following))
    return tuple(sorted(factors))


def table_invariants(t: CayleyTable) -> Fingerprint:
    orders = element_orders(t)
    center = center_mask(t)
    center_idx = [int(i) for i in np.flatnonzero(center)]
    trivial, rank = square_classes(t, center_idx)
    histogram = Counter(int(o) for o in orders)
    return Fingerprint(
        order=t.n,
        center_torsion=abelian_invariants([int(orders[i]) for i in center_idx]),
        free_rank=0,
        derived_size=len(derived_subloop(t)),
        involutions=noncentral_involutions(t, orders, center),
        order_histogram=tuple(sorted(histogram.items())),
        trivial_square_cosets=trivial,
        square_rank=rank,
    )


def _first_violation(t: CayleyTable, name: str, bad: np.ndarray, checked: int) -> PropertyCheck:
    hits = np.argwhere(bad)
    if len(hits):
        return PropertyCheck(name=name, passed=False, checked=checked, witness=t.words(hits[0]))
    return PropertyCheck(name=name, passed=True, checked=checked)


def check_moufang_table(t: CayleyTable) -> List[PropertyCheck]:
    """(pq)(rp) = (p(qr))p over all triples, p(pq) = (pp)q and (qp)p = q(pp) over all pairs."""
    T = t.table
    n = t.n
    idx = np.arange(n)
    p = idx[:, None, None]
    lhs = T[T[:, :, None], T.T[:, None, :]]
    rhs = T[T[p, T[None, :, :]], p]
    squares = T[idx, idx]
    left_alt = T[idx[:, None], T] != T[squares[:, None], idx[None, :]]
    right_alt = T[T.T, idx[:, None]] != T[idx[None, :], squares[:, None]]
    # right_alt axes are (p, q): (qp)p against q(pp)
    return [
        _first_violation(t, "moufang", lhs != rhs, n ** 3),
        _first_violation(t, "left_alternative", left_alt, n * n),
        _first_violation(t, "right_alternative", right_alt, n * n),
    ]


def ra_structure_checks(t: CayleyTable) -> List[PropertyCheck]:
    """|L'| = 2 with L' central, and |L/Z| = 8 with every square central."""
    center = center_mask(t)
    derived = derived_subloop(t)
    derived_ok = len(derived) == 2 and all(center[i] for i in derived)
    checks = [
        PropertyCheck(
            name="derived_subloop", passed=derived_ok, checked=t.n ** 3,
            witness=None if derived_ok else t.words(derived), detail=f"|L'| = {len(derived)}",
        )
    ]
    size = int(center.sum())
    squares = t.table[np.arange(t.n), np.arange(t.n)]
    stray = np.flatnonzero(~center[squares])
    quotient_ok = t.n == 8 * size and not len(stray)
    checks.append(
        PropertyCheck(
            name="central_quotient", passed=quotient_ok, checked=t.n,
            witness=t.words(stray[:1]) if len(stray) else None,
            detail=f"|L/Z(L)| = {t.n / size:g}",
        )
    )
    return checks

