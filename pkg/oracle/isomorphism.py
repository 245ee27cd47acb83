"""
Isomorphism search between finite loops by backtracking over generator images.

A generating set of the first loop is chosen greedily. Each generator is
sent to a candidate of the same order and centrality whose products with
the earlier images have matching orders; the partial map is then pushed
through the subloop closure and rejected at the first inconsistency.
"""

import logging
from collections import Counter
from typing import List, Optional, Sequence, Tuple

import numpy as np

from oracle.cayley import CayleyTable, _closure, center_mask, element_orders

logger = logging.getLogger(__name__)


def generating_set(t: CayleyTable) -> List[int]:
    """Greedy generators: each step adds the element whose closure with the current set is largest."""
    T = t.table
    mask = np.zeros(t.n, dtype=bool)
    mask[0] = True
    mask = _closure(T, mask)
    gens: List[int] = []
    while not mask.all():
        best, best_mask, best_size = -1, None, -1
        for candidate in np.flatnonzero(~mask):
            trial = mask.copy()
            trial[candidate] = True
            trial = _closure(T, trial)
            size = int(trial.sum())
            if size > best_size:
                best, best_mask, best_size = int(candidate), trial, size
        gens.append(best)
        mask = best_mask
    return gens


class _Search:
    def __init__(self, t1: CayleyTable, t2: CayleyTable):
        self.T1 = t1.table.tolist()
        self.T2 = t2.table.tolist()
        self.n = t1.n
        self.orders1 = element_orders(t1).tolist()
        self.orders2 = element_orders(t2).tolist()
        self.center1 = center_mask(t1).tolist()
        self.center2 = center_mask(t2).tolist()
        self.gens = generating_set(t1)
        self.nodes = 0

    def compatible(self, gen: int, image: int, phi: Sequence[int]) -> bool:
        if self.orders1[gen] != self.orders2[image] or self.center1[gen] != self.center2[image]:
            return False
        T1, T2 = self.T1, self.T2
        for earlier in self.gens:
            if earlier == gen:
                break
            e_img = phi[earlier]
            if self.orders1[T1[gen][earlier]] != self.orders2[T2[image][e_img]]:
                return False
            if (T1[gen][earlier] == T1[earlier][gen]) != (T2[image][e_img] == T2[e_img][image]):
                return False
        return True

    def extend(self, phi: List[int], inv: List[int], domain: List[int], start: int) -> bool:
        """Close the partial map over products of domain elements from position start on."""
        T1, T2 = self.T1, self.T2
        position = start
        while position < len(domain):
            a = domain[position]
            position += 1
            limit = position
            for b in domain[:limit]:
                for p, q in ((a, b), (b, a)):
                    c = T1[p][q]
                    v = T2[phi[p]][phi[q]]
                    if phi[c] == -1:
                        if inv[v] != -1:
                            return False
                        phi[c] = v
                        inv[v] = c
                        domain.append(c)
                    elif phi[c] != v:
                        return False
        return True

    def run(self) -> Optional[List[int]]:
        phi = [-1] * self.n
        inv = [-1] * self.n
        phi[0] = inv[0] = 0
        return self._branch(0, phi, inv, [0])

    def _branch(self, depth: int, phi: List[int], inv: List[int], domain: List[int]) -> Optional[List[int]]:
        if depth == len(self.gens):
            return phi if len(domain) == self.n else None
        gen = self.gens[depth]
        for image in range(1, self.n):
            if inv[image] != -1 or not self.compatible(gen, image, phi):
                continue
            self.nodes += 1
            phi2, inv2, domain2 = phi[:], inv[:], domain[:]
            phi2[gen] = image
            inv2[image] = gen
            domain2.append(gen)
            if self.extend(phi2, inv2, domain2, len(domain)):
                found = self._branch(depth + 1, phi2, inv2, domain2)
                if found is not None:
                    return found
        return None


def order_histogram(t: CayleyTable) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted(Counter(element_orders(t).tolist()).items()))


def iso_search(t1: CayleyTable, t2: CayleyTable) -> Optional[List[int]]:
    """An isomorphism as the list of images of t1's indices, or None after exhaustive search."""
    if t1.n != t2.n:
        return None
    if order_histogram(t1) != order_histogram(t2):
        return None
    if int(center_mask(t1).sum()) != int(center_mask(t2).sum()):
        return None
    search = _Search(t1, t2)
    result = search.run()
    logger.info(
        "Isomorphism search on order %d with %d generators: %s after %d nodes",
        t1.n, len(search.gens), "found" if result else "none", search.nodes,
    )
    return result


def is_isomorphism(t1: CayleyTable, t2: CayleyTable, phi: Sequence[int]) -> bool:
    phi = np.asarray(phi)
    if t1.n != t2.n or sorted(phi.tolist()) != list(range(t2.n)):
        return False
    return bool(np.array_equal(phi[t1.table], t2.table[np.ix_(phi, phi)]))
