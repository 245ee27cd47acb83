import pytest

from algebra.group_presentation import GroupPresentation, build_D_type
from algebra.ra_loop import RaLoopPresentation
from classification.catalog import build_canonical, build_row
from documents import (
    build_from_spec,
    load_input,
    parse_params,
    presentation_to_document,
    read_presentation,
    read_spec,
    save_presentation,
    write_presentation,
    write_spec,
)
from errors import DocumentParseError
from oracle.cayley import CayleyTable, materialize
from oracle.table_io import FORMAT_TAG, read_table, save_table, write_table
from schemas import SpecDocument


def test_presentation_document_marks_infinite_factors():
    doc = presentation_to_document(build_canonical(16))
    assert doc.factor_orders == [2, 0, 0, 0]
    assert doc.labels == ["t1", "u1", "u2", "w"]
    assert doc.g0 == [0, 0, 0, 1]


def test_presentation_text_roundtrip():
    L = build_row(28, {"m1": 2, "k": 3})
    again = read_presentation(write_presentation(L))
    assert isinstance(again, RaLoopPresentation)
    assert again == L
    assert again.center.labels == L.center.labels


def test_group_document_has_no_g0():
    G = build_D_type(4, 1, 2)
    again = read_presentation(write_presentation(G))
    assert isinstance(again, GroupPresentation)
    assert again == G


@pytest.mark.parametrize(
    "text",
    [
        "{}",
        '{"factor_orders": [2], "t1_index": 3, "m1": 1, "x_sq": [0], "y_sq": [0]}',
        '{"factor_orders": [2], "t1_index": 0, "m1": 1, "x_sq": [0, 1], "y_sq": [0]}',
        '{"factor_orders": [-2], "t1_index": 0, "m1": 1, "x_sq": [0], "y_sq": [0]}',
    ],
)
def test_bad_presentation_documents(text):
    with pytest.raises(DocumentParseError):
        read_presentation(text)


def test_spec_documents():
    doc = SpecDocument(kind="row", id=28, params={"m1": 2, "k": 1})
    assert read_spec(write_spec(doc)) == doc
    assert build_from_spec(doc) == build_row(28, {"m1": 2, "k": 1})
    assert build_from_spec(SpecDocument(kind="type", id=2)) == build_canonical(2)
    with pytest.raises(DocumentParseError):
        read_spec('{"kind": "column", "id": 1}')


def test_parse_params():
    assert parse_params(["m1=2", "k=3"]) == {"m1": 2, "k": 3}
    with pytest.raises(DocumentParseError):
        parse_params(["m1"])
    with pytest.raises(DocumentParseError):
        parse_params(["m1=two"])


def test_table_text_keeps_labels(type1_table):
    text = write_table(type1_table)
    assert text.splitlines()[0] == FORMAT_TAG
    again = read_table(text)
    assert (again.table == type1_table.table).all()
    assert again.labels == type1_table.labels


@pytest.mark.parametrize(
    "text,message",
    [
        ("cayley 2\n1\n0\n", "Line 1"),
        ("cayley 1\nthree\n", "Line 2"),
        ("cayley 1\n3\n0 1 2\n1 2 0\n", "Truncated"),
        ("cayley 1\n2\n0 1\n1 x\n", "Line 4"),
        ("cayley 1\n2\n0 1\n1\n", "Line 4"),
        ("cayley 1\n2\n0 1\n1 0\n# label 5 a\n", "Line 5"),
        ("cayley 1\n2\n0 1\n1 0\ntrailing\n", "Line 5"),
    ],
)
def test_malformed_tables(text, message):
    with pytest.raises(DocumentParseError, match=message):
        read_table(text)


def test_non_loop_table_rejected_unless_asked():
    text = "cayley 1\n2\n0 1\n1 1\n"
    with pytest.raises(DocumentParseError, match="row=1"):
        read_table(text)
    assert read_table(text, validate=False).n == 2


def test_load_input_sniffs_format(tmp_path, type1, type1_table):
    table_path = tmp_path / "t.cayley"
    save_table(type1_table, table_path)
    doc_path = tmp_path / "t.json"
    save_presentation(type1, doc_path)
    assert isinstance(load_input(table_path), CayleyTable)
    assert load_input(doc_path) == type1
    junk = tmp_path / "junk.txt"
    junk.write_text("not a table\n")
    with pytest.raises(DocumentParseError):
        load_input(junk)
    with pytest.raises(DocumentParseError):
        load_input(tmp_path / "missing.json")


def test_materialized_table_survives_a_file(tmp_path, octonions):
    path = tmp_path / "o.cayley"
    save_table(materialize(octonions), path)
    assert load_input(path).labels[0] == "1"
