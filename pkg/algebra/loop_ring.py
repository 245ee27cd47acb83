"""
The loop ring (Z/nZ)L of a finite loop, n odd.

Ring elements are sparse coefficient maps over the table's basis. The
alternativity decision linearizes [a, a, b] = 0 and [b, a, a] = 0, which is
valid because 2 is invertible modulo an odd n.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from errors import ConstraintError, GroupMismatchError
from oracle.cayley import CayleyTable, _associativity_cube
from schemas import PropertyCheck

logger = logging.getLogger(__name__)


def validate_modulus(modulus: int) -> int:
    if modulus < 3 or modulus % 2 == 0:
        raise ConstraintError(f"Modulus must be odd and at least 3, got {modulus}")
    return modulus


@dataclass(eq=False)
class RingElement:
    table: CayleyTable
    modulus: int
    coeffs: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        validate_modulus(self.modulus)
        reduced = {int(k): int(v) % self.modulus for k, v in self.coeffs.items()}
        self.coeffs = {k: v for k, v in reduced.items() if v}

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.table is other.table and self.modulus == other.modulus and self.coeffs == other.coeffs

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def dense(self) -> np.ndarray:
        out = np.zeros(self.table.n, dtype=np.int64)
        for k, v in self.coeffs.items():
            out[k] = v
        return out

    @classmethod
    def from_dense(cls, table: CayleyTable, modulus: int, values: np.ndarray) -> "RingElement":
        values = np.asarray(values) % modulus
        return cls(table, modulus, {int(k): int(values[k]) for k in np.flatnonzero(values)})

    @classmethod
    def basis(cls, table: CayleyTable, index: int, modulus: int) -> "RingElement":
        return cls(table, modulus, {index: 1})

    @classmethod
    def zero(cls, table: CayleyTable, modulus: int) -> "RingElement":
        return cls(table, modulus, {})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            self.table.label(k) if v == 1 else f"{v}*{self.table.label(k)}"
            for k, v in sorted(self.coeffs.items())
        )


def _compatible(a: RingElement, b: RingElement) -> None:
    if a.table is not b.table or a.modulus != b.modulus:
        raise GroupMismatchError("Ring elements over different loops or moduli")


def r_add(a: RingElement, b: RingElement) -> RingElement:
    _compatible(a, b)
    return RingElement.from_dense(a.table, a.modulus, a.dense() + b.dense())


def r_sub(a: RingElement, b: RingElement) -> RingElement:
    _compatible(a, b)
    return RingElement.from_dense(a.table, a.modulus, a.dense() - b.dense())


def r_scale(a: RingElement, k: int) -> RingElement:
    return RingElement.from_dense(a.table, a.modulus, a.dense() * k)


def r_mul(a: RingElement, b: RingElement) -> RingElement:
    _compatible(a, b)
    out = np.zeros(a.table.n, dtype=np.int64)
    np.add.at(out, a.table.table, np.outer(a.dense(), b.dense()) % a.modulus)
    return RingElement.from_dense(a.table, a.modulus, out)


def r_associator(a: RingElement, b: RingElement, c: RingElement) -> RingElement:
    return r_sub(r_mul(r_mul(a, b), c), r_mul(a, r_mul(b, c)))


def check_alternative(t: CayleyTable, modulus: int = 3) -> PropertyCheck:
    """Both alternative laws for every ring element, via basis triples.

    [g,h,k] + [h,g,k] = 0 and [k,g,h] + [k,h,g] = 0 hold in (Z/nZ)L iff the
    multisets {(gh)k, (hg)k} = {g(hk), h(gk)} and {(kg)h, (kh)g} = {k(gh), k(hg)}
    agree, since every coefficient involved lies in {-2, ..., 2}.
    """
    validate_modulus(modulus)
    T = t.table.astype(np.int32)
    n = t.n
    idx = np.arange(n)
    g = idx[:, None, None]
    h = idx[None, :, None]
    k = idx[None, None, :]

    gh_k = T[T[:, :, None], k]
    hg_k = T[T.T[:, :, None], k]
    g_hk = T[g, T[None, :, :]]
    h_gk = T[h, T[:, None, :]]
    left_ok = ((gh_k == g_hk) & (hg_k == h_gk)) | ((gh_k == h_gk) & (hg_k == g_hk))
    del gh_k, hg_k, g_hk, h_gk

    kg_h = T[T.T[:, None, :], h]
    kh_g = T[T.T[None, :, :], g]
    k_gh = T[k, T[:, :, None]]
    k_hg = T[k, T.T[:, :, None]]
    right_ok = ((kg_h == k_gh) & (kh_g == k_hg)) | ((kg_h == k_hg) & (kh_g == k_gh))

    for name, ok in (("left", left_ok), ("right", right_ok)):
        bad = np.argwhere(~ok)
        if len(bad):
            return PropertyCheck(
                name="alternative", passed=False, checked=2 * n ** 3,
                witness=t.words(bad[0]), detail=f"{name} alternative law fails on basis triple",
            )
    return PropertyCheck(name="alternative", passed=True, checked=2 * n ** 3)


def check_associative(t: CayleyTable) -> PropertyCheck:
    left, right = _associativity_cube(t.table)
    bad = np.argwhere(left != right)
    if len(bad):
        return PropertyCheck(name="associative", passed=False, checked=t.n ** 3, witness=t.words(bad[0]))
    return PropertyCheck(name="associative", passed=True, checked=t.n ** 3)


def ring_checks(t: CayleyTable, modulus: int = 3) -> List[PropertyCheck]:
    """alternative, associative and the RA verdict derived from them."""
    alternative = check_alternative(t, modulus)
    associative = check_associative(t)
    ra = alternative.passed and not associative.passed
    logger.info("Loop ring over Z/%d of a loop of order %d: RA=%s", modulus, t.n, ra)
    return [
        alternative,
        associative,
        PropertyCheck(name="ra", passed=ra, checked=alternative.checked + associative.checked),
    ]


def is_RA_finite(t: CayleyTable, modulus: int = 3) -> bool:
    return ring_checks(t, modulus)[2].passed
