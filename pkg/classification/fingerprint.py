"""
Isomorphism invariants computed from a presentation.

The same Fingerprint comes out of oracle.cayley.table_invariants for a
materialized table, so the two can be compared field by field.
"""

from collections import Counter
from typing import List, Optional, Sequence, Tuple

from algebra.abelian import INF
from algebra.ra_loop import (
    RaLoopPresentation,
    coset_representatives,
    enumerate_loop,
    l_order,
    l_square,
    solve_involutions,
)
from schemas import Fingerprint


def f2_rank(rows: Sequence[Sequence[int]]) -> int:
    basis: List[int] = []
    for row in rows:
        v = 0
        for bit in row:
            v = (v << 1) | (bit & 1)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def square_classes(L: RaLoopPresentation) -> Tuple[int, int]:
    """Cosets of L/Z squaring into Z^2, and the F2-rank of the coset squares in Z/Z^2."""
    parity = [i for i, o in enumerate(L.center.factor_orders) if o is INF or o % 2 == 0]
    rows = []
    for r in coset_representatives(L):
        exps = l_square(r).exponents
        rows.append([exps[i] % 2 for i in parity])
    trivial = sum(1 for row in rows if not any(row))
    return trivial, f2_rank(rows)


def _histogram(L: RaLoopPresentation) -> Optional[Tuple[Tuple[int, int], ...]]:
    if not L.center.is_finite:
        return None
    return tuple(sorted(Counter(l_order(p) for p in enumerate_loop(L)).items()))


def fingerprint(L: RaLoopPresentation, with_histogram: bool = True) -> Fingerprint:
    trivial, rank = square_classes(L)
    return Fingerprint(
        order=L.order,
        center_torsion=L.center.torsion_orders,
        free_rank=L.center.free_rank,
        derived_size=1 if L.s.is_identity else 2,
        involutions=solve_involutions(L, max_witnesses=0).count,
        order_histogram=_histogram(L) if with_histogram else None,
        trivial_square_cosets=trivial,
        square_rank=rank,
    )
