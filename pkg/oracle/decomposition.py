"""
Direct-product decomposition of finite loops.

Phase one looks for a central cyclic factor <a> split off by a retraction
L -> Z_q with a -> 1. When |L'| is 1 or prime this is complete: any
decomposition has a factor with trivial derived subloop, hence an abelian
group factor, which carries such a retraction.

Phase two enumerates subloops (as bitmasks) breadth first and tests pairs
of complementary orders as internal direct products. It runs only up to
the configured order and gives up with UNDECIDED when the budget is spent.
"""

import enum
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime

from oracle.cayley import CayleyTable, _closure, center_mask, derived_subloop, element_orders
from oracle.isomorphism import generating_set
from settings import get_settings

logger = logging.getLogger(__name__)


class Decomposability(str, enum.Enum):
    DECOMPOSABLE = "decomposable"
    INDECOMPOSABLE = "indecomposable"
    UNDECIDED = "undecided"


@dataclass
class DecompositionResult:
    verdict: Decomposability
    factors: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
    detail: str = ""

    @property
    def decomposable(self) -> bool:
        return self.verdict is Decomposability.DECOMPOSABLE


def is_internal_direct_product(t: CayleyTable, A: Sequence[int], B: Sequence[int]) -> bool:
    """(a, b) -> ab is a bijection onto L and (a1 b1)(a2 b2) = (a1 a2)(b1 b2) for all pairs."""
    T = t.table
    A = np.asarray(sorted(A))
    B = np.asarray(sorted(B))
    if len(A) * len(B) != t.n:
        return False
    P = T[np.ix_(A, B)]
    if len(np.unique(P)) != t.n:
        return False
    pos_a = np.full(t.n, -1)
    pos_a[A] = np.arange(len(A))
    pos_b = np.full(t.n, -1)
    pos_b[B] = np.arange(len(B))
    AA = pos_a[T[np.ix_(A, A)]]
    BB = pos_b[T[np.ix_(B, B)]]
    if (AA < 0).any() or (BB < 0).any():
        return False
    lhs = T[P[:, :, None, None], P[None, None, :, :]]
    rhs = P[AA[:, None, :, None], BB[None, :, None, :]]
    return bool(np.array_equal(lhs, rhs))


def _word_matrix(t: CayleyTable, gens: List[int]) -> np.ndarray:
    """Row e is an exponent vector over gens with e reached as a product along the closure tree."""
    T = t.table.tolist()
    words = np.zeros((t.n, len(gens)), dtype=np.int64)
    reached = [0]
    seen = {0}
    for i, g in enumerate(gens):
        if g not in seen:
            words[g, i] = 1
            seen.add(g)
            reached.append(g)
    position = 1
    while position < len(reached):
        a = reached[position]
        position += 1
        for b in reached[:position]:
            for p, q in ((a, b), (b, a)):
                c = T[p][q]
                if c not in seen:
                    seen.add(c)
                    words[c] = words[p] + words[q]
                    reached.append(c)
    return words


def _retraction(t: CayleyTable, words: np.ndarray, a: int, q: int, budget: int) -> Tuple[Optional[np.ndarray], int]:
    """A homomorphism pi: L -> Z_q with pi(a) = 1, and the number of candidates tried."""
    T = t.table
    tried = 0
    for coeffs in itertools.product(range(q), repeat=words.shape[1]):
        if int(words[a] @ np.asarray(coeffs)) % q != 1:
            continue
        tried += 1
        if tried > budget:
            return None, tried
        pi = (words @ np.asarray(coeffs)) % q
        if np.array_equal(pi[T], (pi[:, None] + pi[None, :]) % q):
            return pi, tried
    return None, tried


def _prime_power(n: int) -> bool:
    return n > 1 and len(factorint(n)) == 1


def _central_split(t: CayleyTable, budget: int) -> Tuple[Optional[DecompositionResult], bool]:
    """Phase one; the flag reports whether the retraction budget ran out."""
    center = np.flatnonzero(center_mask(t))
    orders = element_orders(t)
    gens = generating_set(t)
    words = _word_matrix(t, gens)
    exhausted = False
    done = set()
    for a in center:
        a = int(a)
        q = int(orders[a])
        if not _prime_power(q):
            continue
        cyclic = tuple(sorted(set(_powers(t, a))))
        if cyclic in done or len(cyclic) == t.n:
            continue
        done.add(cyclic)
        pi, tried = _retraction(t, words, a, q, budget)
        if pi is None:
            exhausted = exhausted or tried > budget
            continue
        kernel = tuple(int(i) for i in np.flatnonzero(pi == 0))
        if is_internal_direct_product(t, cyclic, kernel):
            return DecompositionResult(Decomposability.DECOMPOSABLE, (cyclic, kernel), "central cyclic factor"), exhausted
    return None, exhausted


def _powers(t: CayleyTable, a: int) -> List[int]:
    out = [0]
    p = a
    while p != 0:
        out.append(p)
        p = int(t.table[p, a])
    return out


def _subloops(t: CayleyTable, budget: int) -> Tuple[List[np.ndarray], bool]:
    """Proper nontrivial subloops reachable from cyclic ones by adding one element at a time."""
    T = t.table
    start = []
    seen = set()
    for g in range(1, t.n):
        mask = np.zeros(t.n, dtype=bool)
        mask[g] = True
        mask = _closure(T, mask)
        key = mask.tobytes()
        if key not in seen:
            seen.add(key)
            start.append(mask)
    queue = list(start)
    found = []
    position = 0
    while position < len(queue):
        mask = queue[position]
        position += 1
        if mask.all():
            continue
        found.append(mask)
        if len(seen) > budget:
            return found, False
        for g in np.flatnonzero(~mask):
            grown = mask.copy()
            grown[g] = True
            grown = _closure(T, grown)
            key = grown.tobytes()
            if key not in seen:
                seen.add(key)
                queue.append(grown)
    return found, True


def _pair_search(t: CayleyTable, budget: int) -> DecompositionResult:
    subloops, complete = _subloops(t, budget)
    by_size = {}
    for mask in subloops:
        by_size.setdefault(int(mask.sum()), []).append(mask)
    for size, group in by_size.items():
        if t.n % size or size * size > t.n:
            continue
        for A in group:
            for B in by_size.get(t.n // size, []):
                if (A & B).sum() != 1:
                    continue
                a_idx = tuple(int(i) for i in np.flatnonzero(A))
                b_idx = tuple(int(i) for i in np.flatnonzero(B))
                if is_internal_direct_product(t, a_idx, b_idx):
                    return DecompositionResult(Decomposability.DECOMPOSABLE, (a_idx, b_idx), "subloop pair")
    if complete:
        return DecompositionResult(Decomposability.INDECOMPOSABLE, detail="exhaustive subloop search")
    return DecompositionResult(Decomposability.UNDECIDED, detail=f"subloop budget {budget} exhausted")


def decomposability_check(
    t: CayleyTable,
    budget: Optional[int] = None,
    *,
    max_order: Optional[int] = None,
    retraction_budget: Optional[int] = None,
) -> DecompositionResult:
    settings = get_settings()
    budget = settings.subloop_budget if budget is None else budget
    max_order = settings.decompose_max_order if max_order is None else max_order
    retraction_budget = settings.retraction_budget if retraction_budget is None else retraction_budget

    if t.n == 1 or isprime(t.n):
        return DecompositionResult(Decomposability.INDECOMPOSABLE, detail="order 1 or prime")

    split, exhausted = _central_split(t, retraction_budget)
    if split is not None:
        logger.info("Order %d loop splits off a central factor of order %d", t.n, len(split.factors[0]))
        return split

    derived = len(derived_subloop(t))
    if (derived == 1 or isprime(derived)) and not exhausted:
        return DecompositionResult(Decomposability.INDECOMPOSABLE, detail=f"no central retraction, |L'| = {derived}")

    if t.n > max_order:
        return DecompositionResult(Decomposability.UNDECIDED, detail=f"order {t.n} above search bound {max_order}")
    logger.info("Falling back to subloop pair search on order %d", t.n)
    return _pair_search(t, budget)
