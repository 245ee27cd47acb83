"""
Classification of finite RA loops given as Cayley tables.

Only the finite canonical types 1, 2, 3, 4, 7, 8 and 9 can occur. The center
rank picks the candidate types, its 2-power factor orders give the parameter
assignments, fingerprints filter the candidates and iso_search certifies the
one that matches.
"""

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.loop_ring import ring_checks, validate_modulus
from algebra.ra_loop import enumerate_loop
from classification.catalog import TYPES, build_canonical
from classification.fingerprint import fingerprint
from errors import ConstraintError
from oracle.cayley import CayleyTable, _associativity_cube, materialize, table_invariants, validate_loop
from oracle.decomposition import DecompositionResult, decomposability_check
from oracle.isomorphism import iso_search
from schemas import PropertyCheck
from settings import WorkbenchSettings, get_settings

logger = logging.getLogger(__name__)

FINITE_TYPES_BY_RANK: Dict[int, Tuple[int, ...]] = {1: (1, 2), 2: (3, 4), 3: (7, 8), 4: (9,)}


class Verdict(str, enum.Enum):
    CLASSIFIED = "classified"
    NOT_RA = "NOT_RA"
    NOT_INDECOMPOSABLE = "NOT_INDECOMPOSABLE"
    NO_MATCH = "NO_MATCH"


@dataclass
class ClassificationResult:
    verdict: Verdict
    type_id: Optional[int] = None
    params: Dict[str, int] = field(default_factory=dict)
    outside_constraint: bool = False
    # canonical index -> input index
    isomorphism: Optional[List[int]] = None
    generators: Dict[str, str] = field(default_factory=dict)
    witness: Optional[List[str]] = None
    checks: List[PropertyCheck] = field(default_factory=list)
    decomposition: Optional[DecompositionResult] = None
    detail: str = ""

    def lines(self) -> List[str]:
        if self.verdict is Verdict.CLASSIFIED:
            head = " ".join([f"type={self.type_id}"] + [f"{k}={v}" for k, v in self.params.items()])
            out = [head]
            if self.outside_constraint:
                out.append("constraint=outside m1=1")
            out.extend(f"{name}={word}" for name, word in self.generators.items())
            return out
        out = [self.verdict.value]
        if self.detail:
            out.append(f"detail={self.detail}")
        if self.witness:
            out.append(f"witness={','.join(self.witness)}")
        return out


def candidate_params(torsion: Sequence[int]) -> List[Tuple[int, Dict[str, int]]]:
    """(type, params) pairs compatible with the center's factor orders, in lexicographic order."""
    exponents = []
    for q in torsion:
        e = q.bit_length() - 1
        if q != 1 << e:
            return []
        exponents.append(e)
    assignments = sorted(set(itertools.permutations(exponents)))
    return [
        (type_id, dict(zip(TYPES[type_id].param_names, values)))
        for type_id in FINITE_TYPES_BY_RANK.get(len(exponents), ())
        for values in assignments
    ]


def _non_associating_triple(t: CayleyTable) -> Optional[Tuple[int, int, int]]:
    left, right = _associativity_cube(t.table)
    hits = np.argwhere(left != right)
    if not len(hits):
        return None
    return tuple(int(i) for i in hits[0])


def classify_finite(
    t: CayleyTable,
    modulus: Optional[int] = None,
    *,
    settings: Optional[WorkbenchSettings] = None,
) -> ClassificationResult:
    settings = settings or get_settings()
    modulus = validate_modulus(settings.modulus if modulus is None else modulus)
    if t.n > settings.classify_max_order:
        raise ConstraintError(f"Table of order {t.n} above classification bound {settings.classify_max_order}")

    loop = validate_loop(t)
    if not loop.passed:
        return ClassificationResult(Verdict.NOT_RA, checks=[loop], witness=loop.witness, detail=loop.detail or "")

    checks = ring_checks(t, modulus)
    alternative, associative, ra = checks
    if not ra.passed:
        failed = associative if associative.passed else alternative
        detail = "loop ring is associative" if associative.passed else "loop ring is not alternative"
        return ClassificationResult(Verdict.NOT_RA, checks=checks, witness=failed.witness, detail=detail)

    decomposition = decomposability_check(
        t,
        settings.subloop_budget,
        max_order=settings.decompose_max_order,
        retraction_budget=settings.retraction_budget,
    )
    if decomposition.decomposable:
        a, b = decomposition.factors
        return ClassificationResult(
            Verdict.NOT_INDECOMPOSABLE,
            checks=checks,
            decomposition=decomposition,
            detail=f"factors of order {len(a)} and {len(b)}",
        )

    triple = _non_associating_triple(t)
    witness = t.words(triple)
    invariants = table_invariants(t)
    for type_id, params in candidate_params(invariants.center_torsion):
        candidate = build_canonical(type_id, params, strict=False)
        if fingerprint(candidate) != invariants:
            continue
        phi = iso_search(materialize(candidate), t)
        if phi is None:
            continue
        elements = enumerate_loop(candidate)
        index = {p: i for i, p in enumerate(elements)}
        generators = {
            name: t.label(phi[index[p]])
            for name, p in (("x", candidate.x), ("y", candidate.y), ("u", candidate.u))
        }
        constraint = TYPES[type_id].constraint_m1
        logger.info("Order %d table classified as type %d with %s", t.n, type_id, params)
        return ClassificationResult(
            Verdict.CLASSIFIED,
            type_id=type_id,
            params=params,
            outside_constraint=constraint is not None and params["m1"] != constraint,
            isomorphism=phi,
            generators=generators,
            witness=witness,
            checks=checks,
            decomposition=decomposition,
        )

    logger.error("No canonical type matches the order %d table with center %s", t.n, invariants.center_torsion)
    return ClassificationResult(
        Verdict.NO_MATCH,
        witness=witness,
        checks=checks,
        decomposition=decomposition,
        detail=f"center {invariants.center_torsion}, decomposition {decomposition.verdict.value}",
    )
