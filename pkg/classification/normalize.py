"""
Normalization of the 54 rows onto the canonical types.

Every rewrite is an explicit generator change: a new choice of x, y, u
(regenerate) or an invertible change of basis of the center (rebase_center).
Each returns a GeneratorMap from the new presentation onto the old one, and
maps compose, so a finished trace carries an isomorphism from the canonical
presentation onto the source row that verify_iso_map can check exactly.

Finite rows are matched by the Cayley-table oracle instead and the
bijection it finds is read back as a GeneratorMap.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from algebra.abelian import AbelianGroup, ExponentVector, Order, ab_pow, ab_reduce
from algebra.group_presentation import GroupPresentation
from algebra.ra_loop import (
    LoopElement,
    RaLoopPresentation,
    coset_representatives,
    enumerate_loop,
    l_commutator,
    l_mul,
    l_square,
    split_central_factors,
)
from classification.catalog import TYPES, RowSpec, build_canonical, build_row, check_params, get_row, minimal_params
from classification.classify import Verdict, classify_finite
from classification.fingerprint import f2_rank
from errors import GroupMismatchError, NormalizationError
from oracle.cayley import element_orders, materialize
from oracle.isomorphism import is_isomorphism, iso_search
from schemas import PropertyCheck, VerificationReport
from settings import WorkbenchSettings, get_settings

logger = logging.getLogger(__name__)


def _combine(coeffs: Sequence[int], basis: Sequence[ExponentVector], group: AbelianGroup) -> ExponentVector:
    exps = [0] * group.rank
    for k, vec in zip(coeffs, basis):
        if k:
            for i, e in enumerate(vec.exponents):
                exps[i] += k * e
    return ab_reduce(exps, group)


@dataclass(frozen=True)
class GeneratorMap:
    """An isomorphism dst -> src given by the images of dst's generators.

    x, y, u are the images of dst.x, dst.y, dst.u in src. center_images[j]
    is the image of dst's j-th center generator and center_preimages[i]
    the preimage of src's i-th one.
    """

    src: RaLoopPresentation
    dst: RaLoopPresentation
    x: LoopElement
    y: LoopElement
    u: LoopElement
    center_images: Tuple[ExponentVector, ...]
    center_preimages: Tuple[ExponentVector, ...]

    @classmethod
    def identity(cls, L: RaLoopPresentation) -> "GeneratorMap":
        basis = tuple(L.center.generator(i) for i in range(L.center.rank))
        return cls(L, L, L.x, L.y, L.u, basis, basis)

    def map_central(self, z: ExponentVector) -> ExponentVector:
        return _combine(z.exponents, self.center_images, self.src.center)

    def pull_central(self, z: ExponentVector) -> ExponentVector:
        return _combine(z.exponents, self.center_preimages, self.dst.center)

    def apply(self, p: LoopElement) -> LoopElement:
        """(x^a y^b z) u^e goes to ((X^a Y^b) Phi(z)) U^e."""
        result = self.src.identity
        if p.g.a:
            result = self.x
        if p.g.b:
            result = l_mul(result, self.y)
        result = l_mul(result, self.src.central(self.map_central(p.g.z)))
        if p.e:
            result = l_mul(result, self.u)
        return result

    def then(self, inner: "GeneratorMap") -> "GeneratorMap":
        """self after inner: inner.dst -> self.src."""
        if inner.src != self.dst:
            raise GroupMismatchError("Composed maps do not meet in the same presentation")
        return GeneratorMap(
            src=self.src,
            dst=inner.dst,
            x=self.apply(inner.x),
            y=self.apply(inner.y),
            u=self.apply(inner.u),
            center_images=tuple(self.map_central(v) for v in inner.center_images),
            center_preimages=tuple(inner.pull_central(v) for v in self.center_preimages),
        )


@dataclass(frozen=True)
class Substitution:
    target: str
    expression: str
    kind: str

    def __str__(self) -> str:
        return f"{self.target}' = {self.expression}"


@dataclass
class NormalizationTrace:
    source: str
    params: Dict[str, int] = field(default_factory=dict)
    steps: List[Substitution] = field(default_factory=list)
    mapping: Optional[GeneratorMap] = None
    type_id: Optional[int] = None
    type_params: Dict[str, int] = field(default_factory=dict)
    outside_constraint: bool = False
    factor: Optional[str] = None
    factor_order: Optional[Order] = None
    method: str = "rewrite"

    @property
    def decomposable(self) -> bool:
        return self.factor is not None

    def lines(self) -> List[str]:
        out = [" ".join([f"row={self.source}"] + [f"{k}={v}" for k, v in self.params.items()])]
        out.append(f"method={self.method}")
        out.extend(f"step={step}" for step in self.steps)
        if self.decomposable:
            out.append(f"decomposable factor={self.factor} order={self.factor_order}")
        elif self.type_id is not None:
            out.append(" ".join([f"type={self.type_id}"] + [f"{k}={v}" for k, v in self.type_params.items()]))
            if self.outside_constraint:
                out.append("constraint=outside m1=1")
        if self.mapping is not None:
            m = self.mapping
            out.extend(f"map.{name}={p}" for name, p in (("x", m.x), ("y", m.y), ("u", m.u)))
            out.extend(f"map.{label}={v}" for label, v in zip(m.dst.center.labels, m.center_images))
        return out


def _coset_bits(p: LoopElement) -> Tuple[int, int, int]:
    return p.g.a, p.g.b, p.e


def regenerate(L: RaLoopPresentation, X: LoopElement, Y: LoopElement, U: LoopElement) -> GeneratorMap:
    """Same loop on new generators: x' -> X, y' -> Y, u' -> U, center fixed."""
    if l_commutator(X, Y) != L.s:
        raise NormalizationError(f"{X} and {Y} do not have commutator s")
    if f2_rank([_coset_bits(p) for p in (X, Y, U)]) != 3:
        raise NormalizationError(f"{X}, {Y}, {U} do not generate L modulo its center")
    group = GroupPresentation(L.center, L.group.t1_index, L.group.m1, l_square(X), l_square(Y))
    dst = RaLoopPresentation(group, l_square(U))
    basis = tuple(L.center.generator(i) for i in range(L.center.rank))
    return GeneratorMap(L, dst, X, Y, U, basis, tuple(dst.center.generator(i) for i in range(dst.center.rank)))


def rebase_center(
    L: RaLoopPresentation,
    images: Sequence[Sequence[int]],
    preimages: Sequence[Sequence[int]],
    orders: Optional[Sequence[Order]] = None,
    labels: Optional[Sequence[str]] = None,
    t1_index: Optional[int] = None,
) -> GeneratorMap:
    """Change of basis of Z(L).

    images[j] is the new j-th generator written in the old basis and
    preimages[i] the old i-th generator written in the new one.
    """
    center = AbelianGroup(
        tuple(orders) if orders is not None else L.center.factor_orders,
        tuple(labels) if labels is not None else L.center.labels,
    )
    image_vectors = tuple(ab_reduce(v, L.center) for v in images)
    preimage_vectors = tuple(ab_reduce(v, center) for v in preimages)

    def pull(z: ExponentVector) -> ExponentVector:
        return _combine(z.exponents, preimage_vectors, center)

    t1 = L.group.t1_index if t1_index is None else t1_index
    group = GroupPresentation(center, t1, L.group.m1, pull(L.group.x_sq), pull(L.group.y_sq))
    dst = RaLoopPresentation(group, pull(L.g0))
    mapping = GeneratorMap(L, dst, L.x, L.y, L.u, image_vectors, preimage_vectors)
    check = _check_center(mapping)
    if not check.passed:
        raise NormalizationError(f"Center change is not invertible: {check.detail}")
    if pull(L.s) != group.s:
        raise NormalizationError("Center change moves s off the new t1")
    return mapping


def _unit(rank: int, index: int, coeff: int = 1, other: Optional[int] = None, other_coeff: int = 0) -> List[int]:
    v = [0] * rank
    v[index] = coeff
    if other is not None:
        v[other] += other_coeff
    return v


def multiply_factor(L: RaLoopPresentation, target: str, by: str) -> GeneratorMap:
    """target' = by * target; needs o(by) to divide o(target)."""
    center = L.center
    i, j = center.index_of(target), center.index_of(by)
    n = center.rank
    images = [_unit(n, k) for k in range(n)]
    preimages = [_unit(n, k) for k in range(n)]
    images[i] = _unit(n, i, 1, j, 1)
    preimages[i] = _unit(n, i, 1, j, -1)
    return rebase_center(L, images, preimages)


def reorder_factors(L: RaLoopPresentation, labels: Sequence[str]) -> GeneratorMap:
    """New factor j is the old factor named labels[j]."""
    center = L.center
    perm = [center.index_of(label) for label in labels]
    if sorted(perm) != list(range(center.rank)):
        raise NormalizationError(f"{list(labels)} is not a reordering of {list(center.labels)}")
    inverse = [0] * center.rank
    for j, i in enumerate(perm):
        inverse[i] = j
    n = center.rank
    return rebase_center(
        L,
        images=[_unit(n, i) for i in perm],
        preimages=[_unit(n, inverse[i]) for i in range(n)],
        orders=[center.factor_orders[i] for i in perm],
        labels=list(labels),
        t1_index=inverse[L.group.t1_index],
    )


def halve(L: RaLoopPresentation) -> Optional[GeneratorMap]:
    """u -> z u with z = -floor(g0 / 2), leaving every exponent of u^2 in {0, 1}."""
    alpha = [-(e // 2) for e in L.g0.exponents]
    if not any(alpha):
        return None
    return regenerate(L, L.x, L.y, L.element(0, 0, ab_reduce(alpha, L.center), 1))


def _odd_entries(v: ExponentVector) -> int:
    return sum(1 for e in v.exponents if e % 2)


class _Rewriter:
    def __init__(self, L: RaLoopPresentation):
        self.mapping = GeneratorMap.identity(L)
        self.steps: List[Substitution] = []

    @property
    def current(self) -> RaLoopPresentation:
        return self.mapping.dst

    def _push(self, inner: GeneratorMap, steps: Sequence[Substitution]) -> None:
        self.mapping = self.mapping.then(inner)
        self.steps.extend(steps)

    def roles(self, x: str, y: str, u: str) -> None:
        L = self.current
        named = {"x": L.x, "y": L.y, "u": L.u}
        steps = [Substitution(new, old, "generators") for new, old in zip("xyu", (x, y, u)) if new != old]
        self._push(regenerate(L, named[x], named[y], named[u]), steps)

    def generators(self, X: LoopElement, Y: LoopElement, U: LoopElement) -> None:
        L = self.current
        steps = [
            Substitution(name, str(p), "generators")
            for name, p, old in (("x", X, L.x), ("y", Y, L.y), ("u", U, L.u))
            if p != old
        ]
        self._push(regenerate(L, X, Y, U), steps)

    def multiply(self, target: str, by: str) -> None:
        center = self.current.center
        word = "*".join(sorted((target, by), key=center.index_of))
        self._push(multiply_factor(self.current, target, by), [Substitution(target, word, "center")])

    def reorder(self, *labels: str) -> None:
        self._push(reorder_factors(self.current, labels), [Substitution("Z", ",".join(labels), "reorder")])

    def halve(self) -> None:
        inner = halve(self.current)
        if inner is not None:
            self._push(inner, [Substitution("u", str(inner.u), "halve")])


def reduce_g0(L: RaLoopPresentation) -> Tuple[RaLoopPresentation, NormalizationTrace]:
    """Re-choose u so every exponent of u^2 is 0 or 1 and as few as possible are 1.

    u -> z u clears even parts; u -> xu, yu, xyu is kept while it lowers
    the number of odd exponents, which strips x^2 and y^2 factors from u^2
    except when they cancel against s (the m1 = 1 case).
    """
    rw = _Rewriter(L)
    rw.halve()
    while True:
        current = rw.current
        best = None
        for P in (current.x, current.y, l_mul(current.x, current.y)):
            U = l_mul(P, current.u)
            candidate = regenerate(current, current.x, current.y, U)
            halved = halve(candidate.dst)
            g0 = halved.dst.g0 if halved else candidate.dst.g0
            if _odd_entries(g0) < _odd_entries(current.g0):
                best = (candidate, halved)
                break
        if best is None:
            break
        candidate, halved = best
        rw._push(candidate, [Substitution("u", str(candidate.u), "absorb")])
        if halved is not None:
            rw._push(halved, [Substitution("u", str(halved.u), "halve")])
    trace = NormalizationTrace(source="presentation", steps=rw.steps, mapping=rw.mapping)
    return rw.current, trace


@dataclass
class _Outcome:
    type_id: int
    params: Dict[str, int]


Recipe = Callable[[_Rewriter, Dict[str, int]], _Outcome]


def _type_params(type_id: int, p: Dict[str, int], renames: Dict[str, str]) -> Dict[str, int]:
    return {name: p[renames.get(name, name)] for name in TYPES[type_id].param_names}


def _rewrite(*ops: Tuple[str, ...], to: int, **renames: str) -> Recipe:
    def recipe(rw: _Rewriter, p: Dict[str, int]) -> _Outcome:
        for op, *args in ops:
            getattr(rw, op)(*args)
        return _Outcome(to, _type_params(to, p, renames))

    return recipe


def _diagonal_square(rw: _Rewriter, p: Dict[str, int]) -> _Outcome:
    """x^2 = t1, y^2 = u1, u^2 = 1: type 5 through x' = xu when m1 = 1, else type 6."""
    L = rw.current
    xu = l_mul(L.x, L.u)
    if L.group.m1 == 1:
        rw.generators(xu, L.y, L.u)
        return _Outcome(5, {"m1": 1})
    rw.generators(L.x, L.y, xu)
    rw.halve()
    return _Outcome(6, {"m1": L.group.m1})


def _after(*ops: Tuple[str, ...], then: Recipe) -> Recipe:
    def recipe(rw: _Rewriter, p: Dict[str, int]) -> _Outcome:
        for op, *args in ops:
            getattr(rw, op)(*args)
        return then(rw, p)

    return recipe


_W = ("multiply", "w", "t1")
_T = ("multiply", "t", "t1")
_XUY = ("roles", "x", "u", "y")
_YUX = ("roles", "y", "u", "x")
_UYX = ("roles", "u", "y", "x")

RECIPES: Dict[int, Recipe] = {
    5: _rewrite(_XUY, to=5),
    6: _rewrite(_W, _XUY, to=5),
    11: _rewrite(_XUY, to=6),
    12: _rewrite(_W, _XUY, to=6),
    17: _rewrite(_YUX, to=10),
    18: _rewrite(_W, _YUX, to=10),
    23: _rewrite(_YUX, to=11),
    24: _rewrite(_W, _YUX, to=11),
    25: _rewrite(to=5),
    26: _after(_UYX, then=_diagonal_square),
    27: _rewrite(_UYX, ("reorder", "t1", "t", "u1"), to=10, m2="k"),
    28: _rewrite(_T, _UYX, ("reorder", "t1", "t", "u1"), to=10, m2="k"),
    29: _rewrite(_UYX, ("reorder", "t1", "w", "u1"), to=14),
    30: _rewrite(_W, _UYX, ("reorder", "t1", "w", "u1"), to=14),
    31: _diagonal_square,
    32: _rewrite(to=6),
    33: _rewrite(_UYX, ("reorder", "t1", "t", "u1"), to=11, m2="k"),
    34: _rewrite(_T, _UYX, ("reorder", "t1", "t", "u1"), to=11, m2="k"),
    35: _rewrite(_YUX, to=15),
    36: _rewrite(_W, _YUX, to=15),
    41: _rewrite(_XUY, ("reorder", "t1", "t2", "w", "t3"), to=12, k="m3"),
    42: _rewrite(_W, _XUY, ("reorder", "t1", "t2", "w", "t3"), to=12, k="m3"),
    43: _rewrite(to=10),
    44: _rewrite(to=11),
    45: _rewrite(to=12),
    46: _rewrite(_T, to=12),
    47: _rewrite(to=13),
    48: _rewrite(_W, to=13),
    49: _rewrite(to=14),
    50: _rewrite(to=15),
    51: _rewrite(("roles", "u", "x", "y"), ("reorder", "t1", "t", "u1", "u2"), to=13, m2="k"),
    52: _rewrite(_T, ("roles", "u", "x", "y"), ("reorder", "t1", "t", "u1", "u2"), to=13, m2="k"),
    53: _rewrite(to=16),
    54: _rewrite(_W, to=16),
}


def _with_dst(mapping: GeneratorMap, dst: RaLoopPresentation) -> GeneratorMap:
    """The same map read against an equal presentation carrying other labels."""
    return replace(
        mapping,
        dst=dst,
        center_preimages=tuple(ExponentVector(dst.center, v.exponents) for v in mapping.center_preimages),
    )


def map_from_bijection(src: RaLoopPresentation, dst: RaLoopPresentation, phi: Sequence[int]) -> GeneratorMap:
    """Read an isomorphism of materialized tables (dst index -> src index) as a GeneratorMap."""
    src_elements = enumerate_loop(src)
    dst_elements = enumerate_loop(dst)
    src_index = {p: i for i, p in enumerate(src_elements)}
    dst_index = {p: i for i, p in enumerate(dst_elements)}
    inverse = [0] * len(phi)
    for i, j in enumerate(phi):
        inverse[j] = i

    def image(p: LoopElement) -> LoopElement:
        return src_elements[phi[dst_index[p]]]

    return GeneratorMap(
        src=src,
        dst=dst,
        x=image(dst.x),
        y=image(dst.y),
        u=image(dst.u),
        center_images=tuple(image(dst.central(dst.center.generator(j))).g.z for j in range(dst.center.rank)),
        center_preimages=tuple(
            dst_elements[inverse[src_index[src.central(src.center.generator(i))]]].g.z
            for i in range(src.center.rank)
        ),
    )


def _split_off(src: RaLoopPresentation, trace: NormalizationTrace) -> NormalizationTrace:
    """o(t1) > o(t) with u^2 = t1 t: after t1' = t1 t the factor <t> appears in no relation."""
    rw = _Rewriter(src)
    rw.multiply("t1", "t")
    L = rw.current
    index = L.center.index_of("t")
    if index not in split_central_factors(L):
        raise NormalizationError(f"{trace.source}: <t> is still tied to the relations after t1' = t1*t")
    trace.steps = rw.steps
    trace.mapping = rw.mapping
    trace.factor = "t"
    trace.factor_order = L.center.factor_orders[index]
    return trace


def _normalize_finite(src: RaLoopPresentation, trace: NormalizationTrace, settings: WorkbenchSettings) -> NormalizationTrace:
    table = materialize(src)
    result = classify_finite(table, settings=settings)
    trace.method = "oracle"
    if result.verdict is Verdict.NOT_INDECOMPOSABLE:
        factor, _ = result.decomposition.factors
        orders = element_orders(table)
        trace.factor = table.label(max(factor, key=lambda i: orders[i]))
        trace.factor_order = len(factor)
        return trace
    if result.verdict is not Verdict.CLASSIFIED:
        raise NormalizationError(f"{trace.source} {trace.params}: oracle verdict {result.verdict.value}, {result.detail}")
    dst = build_canonical(result.type_id, result.params, strict=False)
    mapping = map_from_bijection(src, dst, result.isomorphism)
    trace.steps = [Substitution(name, str(p), "oracle") for name, p in (("x", mapping.x), ("y", mapping.y), ("u", mapping.u))]
    trace.mapping = mapping
    trace.type_id = result.type_id
    trace.type_params = result.params
    trace.outside_constraint = result.outside_constraint
    return trace


def normalize(
    row: Union[int, RowSpec],
    params: Optional[Dict[str, int]] = None,
    *,
    settings: Optional[WorkbenchSettings] = None,
) -> NormalizationTrace:
    settings = settings or get_settings()
    spec = get_row(row)
    values = check_params(spec.param_names, params or minimal_params(spec.param_names), spec.label)
    src = build_row(spec, values)
    trace = NormalizationTrace(source=spec.label, params=values)

    if spec.g0_pattern == "t1*t" and values["k"] < values["m1"]:
        trace = _split_off(src, trace)
    elif spec.is_finite:
        trace = _normalize_finite(src, trace, settings)
    else:
        rw = _Rewriter(src)
        outcome = RECIPES[spec.row_id](rw, values)
        expected = build_canonical(outcome.type_id, outcome.params, strict=False)
        if rw.current != expected:
            raise NormalizationError(f"{spec.label} {values} rewrote to a presentation other than type {outcome.type_id}")
        constraint = TYPES[outcome.type_id].constraint_m1
        trace.steps = rw.steps
        trace.mapping = _with_dst(rw.mapping, expected)
        trace.type_id = outcome.type_id
        trace.type_params = outcome.params
        trace.outside_constraint = constraint is not None and outcome.params["m1"] != constraint

    if trace.decomposable:
        logger.info("%s %s is decomposable with factor %s", spec.label, values, trace.factor)
    else:
        logger.info("%s %s normalized to type %d %s", spec.label, values, trace.type_id, trace.type_params)
    return trace


def target_of(trace: NormalizationTrace) -> Optional[RaLoopPresentation]:
    """The presentation a trace maps from: the canonical type, or the split form."""
    if trace.mapping is not None:
        return trace.mapping.dst
    if trace.type_id is not None:
        return build_canonical(trace.type_id, trace.type_params, strict=False)
    return None


def _check_center(mapping: GeneratorMap) -> PropertyCheck:
    src, dst = mapping.src.center, mapping.dst.center
    for j, (order, image) in enumerate(zip(dst.factor_orders, mapping.center_images)):
        if isinstance(order, int) and not ab_pow(image, order).is_identity:
            return PropertyCheck(name="center_bijection", passed=False, witness=[dst.labels[j]], detail=f"image {image} has order above {order}")
    for i, (order, pre) in enumerate(zip(src.factor_orders, mapping.center_preimages)):
        if isinstance(order, int) and not ab_pow(pre, order).is_identity:
            return PropertyCheck(name="center_bijection", passed=False, witness=[src.labels[i]], detail=f"preimage {pre} has order above {order}")
    for i in range(src.rank):
        e = src.generator(i)
        if mapping.map_central(mapping.pull_central(e)) != e:
            return PropertyCheck(name="center_bijection", passed=False, witness=[src.labels[i]], detail="Phi(Psi(z)) != z")
    for j in range(dst.rank):
        e = dst.generator(j)
        if mapping.pull_central(mapping.map_central(e)) != e:
            return PropertyCheck(name="center_bijection", passed=False, witness=[dst.labels[j]], detail="Psi(Phi(z)) != z")
    return PropertyCheck(name="center_bijection", passed=True, checked=src.rank + dst.rank)


def _check_relations(mapping: GeneratorMap) -> PropertyCheck:
    reps = coset_representatives(mapping.dst)
    checked = 0
    for p in reps:
        for q in reps:
            checked += 1
            lhs = mapping.apply(l_mul(p, q))
            rhs = l_mul(mapping.apply(p), mapping.apply(q))
            if lhs != rhs:
                return PropertyCheck(
                    name="homomorphism", passed=False, checked=checked,
                    witness=[str(p), str(q)], detail=f"{lhs} != {rhs}",
                )
    return PropertyCheck(name="homomorphism", passed=True, checked=checked)


def _oracle_checks(mapping: GeneratorMap) -> List[PropertyCheck]:
    src_table = materialize(mapping.src)
    dst_table = materialize(mapping.dst)
    src_index = {p: i for i, p in enumerate(enumerate_loop(mapping.src))}
    perm = [src_index[mapping.apply(p)] for p in enumerate_loop(mapping.dst)]
    return [
        PropertyCheck(name="oracle_map", passed=is_isomorphism(dst_table, src_table, perm), checked=dst_table.n ** 2),
        PropertyCheck(name="oracle_search", passed=iso_search(dst_table, src_table) is not None, checked=dst_table.n),
    ]


def check_iso_map(
    src: RaLoopPresentation,
    dst: RaLoopPresentation,
    trace: Union[NormalizationTrace, GeneratorMap, None],
    *,
    settings: Optional[WorkbenchSettings] = None,
) -> VerificationReport:
    settings = settings or get_settings()
    mapping = trace.mapping if isinstance(trace, NormalizationTrace) else trace
    report = VerificationReport(subject="generator map")
    if mapping is None:
        report.checks.append(PropertyCheck(name="map_given", passed=False, detail="no generator map"))
        return report
    endpoints = mapping.src == src and mapping.dst == dst
    report.checks.append(PropertyCheck(name="endpoints", passed=endpoints))
    if not endpoints:
        return report
    report.checks.append(_check_center(mapping))
    cosets = f2_rank([_coset_bits(p) for p in (mapping.x, mapping.y, mapping.u)]) == 3
    report.checks.append(
        PropertyCheck(
            name="coset_basis", passed=cosets,
            witness=None if cosets else [str(mapping.x), str(mapping.y), str(mapping.u)],
        )
    )
    report.checks.append(_check_relations(mapping))
    finite = src.center.is_finite and dst.center.is_finite
    if finite and report.ok and src.order <= settings.certify_max_order:
        report.checks.extend(_oracle_checks(mapping))
    return report


def verify_iso_map(
    src: RaLoopPresentation,
    dst: RaLoopPresentation,
    trace: Union[NormalizationTrace, GeneratorMap, None],
    *,
    settings: Optional[WorkbenchSettings] = None,
) -> bool:
    return check_iso_map(src, dst, trace, settings=settings).ok
