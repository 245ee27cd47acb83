"""
JSON documents for presentations and row/type specs, and input sniffing for the CLI.

Presentation documents store infinite factors as order 0; everywhere else in
the code INF is the marker.
"""

import json
from pathlib import Path
from typing import Dict, Iterable, Union

from pydantic import ValidationError

from algebra.abelian import INF, AbelianGroup, ab_reduce
from algebra.group_presentation import GroupPresentation
from algebra.ra_loop import RaLoopPresentation
from classification.catalog import build_canonical, build_row
from errors import DocumentParseError, WorkbenchError
from oracle.cayley import CayleyTable
from oracle.table_io import FORMAT_TAG, read_table
from schemas import PresentationDocument, SpecDocument

Presentation = Union[GroupPresentation, RaLoopPresentation]


def presentation_to_document(P: Presentation) -> PresentationDocument:
    G = P.group if isinstance(P, RaLoopPresentation) else P
    center = G.center
    return PresentationDocument(
        factor_orders=[0 if o is INF else o for o in center.factor_orders],
        labels=list(center.labels),
        t1_index=G.t1_index,
        m1=G.m1,
        x_sq=list(G.x_sq.exponents),
        y_sq=list(G.y_sq.exponents),
        g0=list(P.g0.exponents) if isinstance(P, RaLoopPresentation) else None,
    )


def document_to_presentation(doc: PresentationDocument) -> Presentation:
    if any(o < 0 for o in doc.factor_orders):
        raise DocumentParseError(f"Negative factor order in {doc.factor_orders}")
    try:
        center = AbelianGroup(
            tuple(INF if o == 0 else o for o in doc.factor_orders),
            tuple(doc.labels or ()),
        )
        group = GroupPresentation(center, doc.t1_index, doc.m1, ab_reduce(doc.x_sq, center), ab_reduce(doc.y_sq, center))
        if doc.g0 is None:
            return group
        return RaLoopPresentation(group, ab_reduce(doc.g0, center))
    except (WorkbenchError, ValueError) as e:
        raise DocumentParseError(f"Inconsistent presentation document: {e}")


def write_presentation(P: Presentation) -> str:
    return presentation_to_document(P).model_dump_json(indent=2) + "\n"


def read_presentation(text: str) -> Presentation:
    try:
        doc = PresentationDocument.model_validate_json(text)
    except ValidationError as e:
        raise DocumentParseError(f"Malformed presentation document: {e.errors()[0]['msg']}")
    return document_to_presentation(doc)


def write_spec(doc: SpecDocument) -> str:
    return doc.model_dump_json(indent=2) + "\n"


def read_spec(text: str) -> SpecDocument:
    try:
        return SpecDocument.model_validate_json(text)
    except ValidationError as e:
        raise DocumentParseError(f"Malformed spec document: {e.errors()[0]['msg']}")


def parse_params(pairs: Iterable[str]) -> Dict[str, int]:
    """Command-line parameters of the form name=value."""
    params: Dict[str, int] = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name:
            raise DocumentParseError(f"Expected name=value, got {pair!r}")
        try:
            params[name] = int(value)
        except ValueError:
            raise DocumentParseError(f"Parameter {name} is not an integer: {value!r}")
    return params


def build_from_spec(doc: SpecDocument) -> RaLoopPresentation:
    if doc.kind == "row":
        return build_row(doc.id, doc.params or None)
    return build_canonical(doc.id, doc.params or None)


def _read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise DocumentParseError(f"Cannot read {path}: {e}")


def save_presentation(P: Presentation, path: Union[str, Path]) -> None:
    Path(path).write_text(write_presentation(P))


def load_spec(path: Union[str, Path]) -> SpecDocument:
    return read_spec(_read_text(path))


def load_input(path: Union[str, Path], validate: bool = True) -> Union[CayleyTable, Presentation]:
    """A Cayley file or a presentation document, told apart by the first line."""
    text = _read_text(path)
    first = text.lstrip().splitlines()[0].strip() if text.strip() else ""
    if first == FORMAT_TAG:
        return read_table(text, validate=validate)
    try:
        json.loads(text)
    except json.JSONDecodeError:
        raise DocumentParseError(f"{path} is neither a Cayley file nor a presentation document")
    return read_presentation(text)
