"""
RA loops M(G, *, g0) = G u Gu.

Elements are pairs (g, e) with e = 1 for the coset Gu. Multiplication:

    (g, 0)(h, 0) = (gh, 0)
    (g, 0)(h, 1) = (hg, 1)
    (g, 1)(h, 0) = (g h*, 1)
    (g, 1)(h, 1) = (g0 h* g, 0)

where h* = h on the center and s h off it.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, List, Optional, Tuple

import numpy as np

from algebra.abelian import (
    ExponentVector,
    Order,
    ab_enumerate,
    ab_mul,
    ab_order,
    order_mul,
)
from algebra.group_presentation import (
    GroupElement,
    GroupPresentation,
    g_inv,
    g_is_central,
    g_mul,
    group_elements,
    random_central,
)
from errors import GroupMismatchError, NotEnumerableError
from schemas import PropertyCheck, VerificationReport
from settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RaLoopPresentation:
    group: GroupPresentation
    g0: ExponentVector

    def __post_init__(self):
        if self.g0.group != self.group.center:
            raise GroupMismatchError("g0 is not a vector over the center of G")

    @property
    def center(self):
        return self.group.center

    @property
    def s(self) -> ExponentVector:
        return self.group.s

    @property
    def order(self) -> Order:
        return order_mul(self.center.order, 8)

    @cached_property
    def g0_element(self) -> GroupElement:
        return self.group.central(self.g0)

    def element(self, a: int = 0, b: int = 0, z: Optional[ExponentVector] = None, e: int = 0) -> "LoopElement":
        return LoopElement(self, self.group.element(a, b, z), e & 1)

    def central(self, z: ExponentVector) -> "LoopElement":
        return self.element(0, 0, z, 0)

    def lift(self, g: GroupElement, e: int = 0) -> "LoopElement":
        return LoopElement(self, g, e & 1)

    @property
    def identity(self) -> "LoopElement":
        return self.element()

    @property
    def x(self) -> "LoopElement":
        return self.element(a=1)

    @property
    def y(self) -> "LoopElement":
        return self.element(b=1)

    @property
    def u(self) -> "LoopElement":
        return self.element(e=1)


@dataclass(frozen=True)
class LoopElement:
    loop: RaLoopPresentation = field(compare=False, repr=False)
    g: GroupElement
    e: int

    def __str__(self) -> str:
        if not self.e:
            return str(self.g)
        head = str(self.g)
        return "u" if head == "1" else f"{head}*u"


def _same_loop(p: LoopElement, q: LoopElement) -> RaLoopPresentation:
    if p.loop is not q.loop and p.loop != q.loop:
        raise GroupMismatchError("Elements belong to different loops")
    return p.loop


def star(p: GroupElement) -> GroupElement:
    if g_is_central(p):
        return p
    return GroupElement(p.group, p.a, p.b, ab_mul(p.z, p.group.s))


def l_mul(p: LoopElement, q: LoopElement) -> LoopElement:
    L = _same_loop(p, q)
    g, h = p.g, q.g
    if not p.e and not q.e:
        return LoopElement(L, g_mul(g, h), 0)
    if not p.e:
        return LoopElement(L, g_mul(h, g), 1)
    if not q.e:
        return LoopElement(L, g_mul(g, star(h)), 1)
    return LoopElement(L, g_mul(g_mul(L.g0_element, star(h)), g), 0)


def l_inv(p: LoopElement) -> LoopElement:
    if not p.e:
        return LoopElement(p.loop, g_inv(p.g), 0)
    L = p.loop
    g0_inv = g_inv(L.g0_element)
    return LoopElement(L, g_mul(g0_inv, g_inv(star(p.g))), 1)


def l_square(p: LoopElement) -> ExponentVector:
    return l_mul(p, p).g.z


def _central_quotient(num: LoopElement, den: LoopElement) -> ExponentVector:
    """The central c with num = den * c; both share the coset of c's quotient."""
    c = g_mul(g_inv(den.g), num.g)
    if num.e != den.e or not g_is_central(c):
        raise ArithmeticError(f"{num} and {den} do not differ by a central element")
    return c.z


def l_associator(p: LoopElement, q: LoopElement, r: LoopElement) -> ExponentVector:
    _same_loop(p, q)
    _same_loop(q, r)
    return _central_quotient(l_mul(l_mul(p, q), r), l_mul(p, l_mul(q, r)))


def l_commutator(p: LoopElement, q: LoopElement) -> ExponentVector:
    return _central_quotient(l_mul(q, p), l_mul(p, q))


def l_is_central(p: LoopElement) -> bool:
    return not p.e and g_is_central(p.g)


def l_order(p: LoopElement) -> Order:
    if l_is_central(p):
        return ab_order(p.g.z)
    return order_mul(ab_order(l_square(p)), 2)


def l_pow(p: LoopElement, k: int) -> LoopElement:
    """Power by repeated multiplication; negative k uses the inverse."""
    base = p if k >= 0 else l_inv(p)
    result = p.loop.identity
    for _ in range(abs(k)):
        result = l_mul(result, base)
    return result


def enumerate_loop(L: RaLoopPresentation) -> List[LoopElement]:
    if not L.center.is_finite:
        raise NotEnumerableError(f"Loop with center {L.center.factor_orders} is infinite")
    vectors = list(ab_enumerate(L.center))
    return [
        LoopElement(L, GroupElement(L.group, a, b, z), e)
        for e in (0, 1)
        for a in (0, 1)
        for b in (0, 1)
        for z in vectors
    ]


def loop_window(L: RaLoopPresentation, sample_bound: Optional[int] = None) -> List[LoopElement]:
    """All elements for a finite loop, else those with free exponents in [-B, B]."""
    return [LoopElement(L, g, e) for e in (0, 1) for g in group_elements(L.group, sample_bound)]


def random_loop_element(L: RaLoopPresentation, rng: np.random.Generator, bound: int) -> LoopElement:
    z = random_central(L.center, rng, bound)
    a, b, e = (int(v) for v in rng.integers(0, 2, size=3))
    return L.element(a, b, z, e)


def coset_representatives(L: RaLoopPresentation) -> List[LoopElement]:
    """x^a y^b u^e for (a, b, e) in {0,1}^3, identity first."""
    return [L.element(a, b, None, e) for e in (0, 1) for a in (0, 1) for b in (0, 1)]


def _sampled_triples(L, seed, trials, bound) -> Iterator[Tuple[LoopElement, LoopElement, LoopElement]]:
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        yield (
            random_loop_element(L, rng, bound),
            random_loop_element(L, rng, bound),
            random_loop_element(L, rng, bound),
        )


def moufang_check(
    L: RaLoopPresentation,
    sample_bound: Optional[int] = None,
    *,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
) -> VerificationReport:
    """Moufang identity (pq)(rp) = (p(qr))p and both alternative laws.

    Finite loops are checked on their full Cayley table; infinite ones on
    random triples with free exponents in [-sample_bound, sample_bound].
    """
    if L.center.is_finite:
        from oracle.cayley import check_moufang_table, materialize

        table = materialize(L)
        return VerificationReport(subject=f"loop of order {table.n}", checks=check_moufang_table(table))

    settings = get_settings()
    bound = settings.sample_bound if sample_bound is None else sample_bound
    seed = settings.seed if seed is None else seed
    trials = settings.sample_trials if trials is None else trials

    failures = {}
    checked = 0
    for p, q, r in _sampled_triples(L, seed, trials, bound):
        checked += 1
        p2 = l_mul(p, p)
        laws = {
            "moufang": (l_mul(l_mul(p, q), l_mul(r, p)), l_mul(l_mul(p, l_mul(q, r)), p)),
            "left_alternative": (l_mul(p, l_mul(p, q)), l_mul(p2, q)),
            "right_alternative": (l_mul(l_mul(q, p), p), l_mul(q, p2)),
        }
        for name, (lhs, rhs) in laws.items():
            if name not in failures and lhs != rhs:
                failures[name] = [str(p), str(q), str(r)]
    checks = [
        PropertyCheck(name=name, passed=name not in failures, checked=checked, exhaustive=False, witness=failures.get(name))
        for name in ("moufang", "left_alternative", "right_alternative")
    ]
    return VerificationReport(subject="infinite loop (sampled)", checks=checks)


def structure_check(
    L: RaLoopPresentation,
    sample_bound: Optional[int] = None,
    *,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
    exhaustive_limit: Optional[int] = None,
) -> VerificationReport:
    """Involution, central squares, associator range {1, s} and |L/Z| = 8."""
    settings = get_settings()
    bound = settings.sample_bound if sample_bound is None else sample_bound
    seed = settings.seed if seed is None else seed
    trials = settings.sample_trials if trials is None else trials
    limit = settings.exhaustive_limit if exhaustive_limit is None else exhaustive_limit

    window = loop_window(L, bound)
    report = VerificationReport(subject=f"loop of order {L.order}")
    report.checks.append(_check_star(L, window))
    report.checks.append(_check_loop_squares(window))
    report.checks.append(_check_associator_range(L, window, bound, seed, trials, limit))
    report.checks.append(_check_central_quotient(L))
    return report


def _check_star(L: RaLoopPresentation, window: List[LoopElement]) -> PropertyCheck:
    groups = [p.g for p in window if not p.e]
    for g in groups:
        if star(star(g)) != g or not g_is_central(g_mul(g, star(g))):
            return PropertyCheck(name="involution", passed=False, checked=len(groups), witness=[str(g)])
    if star(L.g0_element) != L.g0_element:
        return PropertyCheck(name="involution", passed=False, checked=len(groups), witness=[str(L.g0_element)])
    return PropertyCheck(name="involution", passed=True, checked=len(groups), exhaustive=L.center.is_finite)


def _check_loop_squares(window: List[LoopElement]) -> PropertyCheck:
    for p in window:
        if not l_is_central(l_mul(p, p)):
            return PropertyCheck(name="squares_central", passed=False, checked=len(window), witness=[str(p)])
    return PropertyCheck(name="squares_central", passed=True, checked=len(window))


def _check_associator_range(L, window, bound, seed, trials, limit) -> PropertyCheck:
    allowed = {L.center.identity(), L.s}
    if L.center.is_finite and len(window) ** 3 > limit:
        return _table_associator_range(L, allowed)
    exhaustive = L.center.is_finite
    if exhaustive:
        triples = itertools.product(window, repeat=3)
        pairs = itertools.product(window, repeat=2)
    else:
        fixed = [(L.x, L.y, L.u)]
        triples = itertools.chain(fixed, _sampled_triples(L, seed, trials, bound))
        pairs = ((p, q) for p, q, _ in itertools.chain(fixed, _sampled_triples(L, seed + 1, trials, bound)))
    seen = set()
    checked = 0
    for p, q, r in triples:
        checked += 1
        alpha = l_associator(p, q, r)
        if alpha not in allowed:
            return PropertyCheck(name="associator_range", passed=False, checked=checked, witness=[str(p), str(q), str(r)])
        seen.add(alpha)
    for p, q in pairs:
        checked += 1
        beta = l_commutator(p, q)
        if beta not in allowed:
            return PropertyCheck(name="associator_range", passed=False, checked=checked, witness=[str(p), str(q)])
        seen.add(beta)
    return PropertyCheck(
        name="associator_range",
        passed=seen == allowed,
        checked=checked,
        exhaustive=exhaustive,
        detail=f"values {{{', '.join(sorted(str(v) for v in seen))}}}",
    )


def _table_associator_range(L: RaLoopPresentation, allowed) -> PropertyCheck:
    from oracle.cayley import associator_values, commutator_values, materialize

    table = materialize(L)
    elements = enumerate_loop(L)
    indices = associator_values(table) | commutator_values(table)
    values = [elements[i] for i in sorted(indices)]
    stray = [str(v) for v in values if not l_is_central(v) or v.g.z not in allowed]
    seen = {v.g.z for v in values if l_is_central(v)}
    return PropertyCheck(
        name="associator_range",
        passed=not stray and seen == allowed,
        checked=table.n ** 3 + table.n ** 2,
        witness=stray or None,
        detail=f"values {{{', '.join(sorted(str(v) for v in values))}}}",
    )


def _check_central_quotient(L: RaLoopPresentation) -> PropertyCheck:
    reps = coset_representatives(L)
    generators = (L.x, L.y, L.u)
    for r in reps[1:]:
        moves = any(not l_commutator(r, q).is_identity for q in generators) or any(
            not l_associator(r, q, w).is_identity for q in generators for w in generators
        )
        if not moves or not l_is_central(l_mul(r, r)):
            return PropertyCheck(name="central_quotient", passed=False, checked=len(reps), witness=[str(r)])
    return PropertyCheck(name="central_quotient", passed=True, checked=len(reps), detail="|L/Z(L)| = 8")


@dataclass
class InvolutionCount:
    count: int
    witnesses: List[LoopElement] = field(default_factory=list)


def _halvings(c: int, order) -> List[int]:
    """Solutions z of 2z + c = 0 in a cyclic factor (integers when order is INF)."""
    if isinstance(order, int):
        if order % 2:
            return [(-c * pow(2, -1, order)) % order] if order > 1 else [0]
        if c % 2:
            return []
        half = (-c // 2) % order
        return sorted({half, (half + order // 2) % order})
    return [] if c % 2 else [-c // 2]


def solve_involutions(L: RaLoopPresentation, max_witnesses: int = 64) -> InvolutionCount:
    """Count non-central w with w^2 = 1 by solving 2z = -C factor by factor.

    For w = (x^a y^b z) u^f the square is C + 2z with
    C = a x^2 + b y^2 + ab s, plus g0 + s (or g0 alone on the center) when f = 1.
    """
    G = L.group
    result = InvolutionCount(count=0)
    for a, b, f in itertools.product((0, 1), repeat=3):
        if (a, b, f) == (0, 0, 0):
            continue
        noncentral = 1 if (a or b) else 0
        constant = [0] * L.center.rank
        terms = [(a, G.x_sq), (b, G.y_sq), (a * b, G.s)]
        if f:
            terms += [(1, L.g0), (noncentral, G.s)]
        for k, vec in terms:
            for i, e in enumerate(vec.exponents):
                constant[i] += k * e
        per_factor = [_halvings(c, o) for c, o in zip(constant, L.center.factor_orders)]
        combos = 1
        for options in per_factor:
            combos *= len(options)
        result.count += combos
        if combos and len(result.witnesses) < max_witnesses:
            for exps in itertools.islice(itertools.product(*per_factor), max_witnesses - len(result.witnesses)):
                z = ExponentVector(L.center, tuple(exps))
                result.witnesses.append(L.element(a, b, z, f))
    return result


def split_central_factors(L: RaLoopPresentation) -> Tuple[int, ...]:
    """Nontrivial center factors untouched by x^2, y^2, g0 and s.

    Such a factor <z> is a direct factor: L = M(G', *, g0) x <z>.
    """
    touched = set()
    for vec in (L.group.x_sq, L.group.y_sq, L.g0, L.s):
        touched.update(i for i, e in enumerate(vec.exponents) if e)
    return tuple(
        i
        for i, order in enumerate(L.center.factor_orders)
        if i not in touched and order != 1
    )
