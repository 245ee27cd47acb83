from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from algebra.abelian import Inf


class PropertyCheck(BaseModel):
    """Outcome of one checked property, with a witness when it fails."""

    name: str
    passed: bool
    checked: int = 0
    exhaustive: bool = True
    witness: Optional[List[str]] = None
    detail: Optional[str] = None


class VerificationReport(BaseModel):
    subject: str
    checks: List[PropertyCheck] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[PropertyCheck]:
        return [check for check in self.checks if not check.passed]


class Fingerprint(BaseModel):
    """Isomorphism-invariant summary of a loop.

    Square-class fields are None when the loop does not have eight cosets
    over its center (non-RA input to the oracle).
    """

    model_config = ConfigDict(frozen=True)

    order: Union[int, Inf]
    center_torsion: Tuple[int, ...]
    free_rank: int
    derived_size: int
    involutions: int
    order_histogram: Optional[Tuple[Tuple[int, int], ...]] = None
    trivial_square_cosets: Optional[int] = None
    square_rank: Optional[int] = None


class PresentationDocument(BaseModel):
    """File form of a group or loop presentation; 0 in factor_orders is an infinite factor."""

    factor_orders: List[int]
    labels: Optional[List[str]] = None
    t1_index: int
    m1: int
    x_sq: List[int]
    y_sq: List[int]
    g0: Optional[List[int]] = None


class SpecDocument(BaseModel):
    kind: Literal["row", "type"]
    id: int
    params: Dict[str, int] = Field(default_factory=dict)


class RunReport(BaseModel):
    command: str
    verdicts: Dict[str, bool] = Field(default_factory=dict)
    witnesses: Dict[str, List[str]] = Field(default_factory=dict)
    lines: List[str] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)
    exit_status: int = 0
