import pytest

from cli import ExitStatus, main, run
from oracle.table_io import save_table


@pytest.fixture
def built_type1(tmp_path):
    output = tmp_path / "t1.json"
    report = run(["build", "type", "1", "-o", str(output), "--table"])
    assert report.exit_status == ExitStatus.PASS
    return report, output


def test_build_writes_presentation_and_table(built_type1):
    report, output = built_type1
    assert report.lines[0] == "type=1 m1=1"
    assert "order=16" in report.lines
    assert output.exists()
    assert output.with_suffix(".cayley").exists()


def test_build_rejects_constrained_parameters(tmp_path):
    report = run(["build", "type", "4", "m1=2", "-o", str(tmp_path / "t4.json")])
    assert report.exit_status == ExitStatus.CONSTRAINT
    assert report.lines[-1].startswith("error=")


def test_build_table_needs_finite_center(tmp_path):
    report = run(["build", "row", "6", "-o", str(tmp_path / "r6.json"), "--table"])
    assert report.exit_status == ExitStatus.CONSTRAINT


def test_bad_target_is_a_parse_error():
    assert run(["build", "column", "3"]).exit_status == ExitStatus.PARSE
    assert run(["build", "type"]).exit_status == ExitStatus.PARSE


def test_verify_type1_table_passes(built_type1):
    _, output = built_type1
    report = run(["verify", str(output.with_suffix(".cayley"))])
    assert report.exit_status == ExitStatus.PASS
    assert "loop_axioms=pass" in report.lines
    assert "ra=pass" in report.lines
    assert "associative=no" in report.lines
    assert report.verdicts["alternative"]


def test_verify_presentation(built_type1):
    _, output = built_type1
    report = run(["--seed", "3", "verify", str(output)])
    assert report.exit_status == ExitStatus.PASS
    assert report.verdicts["ra"]


def test_verify_corrupted_table(tmp_path):
    path = tmp_path / "bad.cayley"
    path.write_text("cayley 1\n2\n0 1\n1 1\n")
    report = run(["verify", str(path)])
    assert report.exit_status == ExitStatus.PROPERTY_FAIL
    assert report.lines[0].startswith("loop_axioms=fail witness=")


def test_verify_truncated_table(tmp_path):
    path = tmp_path / "short.cayley"
    path.write_text("cayley 1\n3\n0 1 2\n")
    assert run(["verify", str(path)]).exit_status == ExitStatus.PARSE


def test_classify_table(built_type1):
    _, output = built_type1
    report = run(["classify", str(output.with_suffix(".cayley"))])
    assert report.exit_status == ExitStatus.PASS
    assert report.lines[0] == "type=1 m1=1"
    assert report.verdicts["classified"]


def test_classify_group_fails(tmp_path, q8_table):
    path = tmp_path / "q8.cayley"
    save_table(q8_table, path)
    report = run(["classify", str(path)])
    assert report.exit_status == ExitStatus.PROPERTY_FAIL
    assert report.lines[0] == "NOT_RA"


def test_iso(tmp_path, type1_table, octonion_table):
    first = tmp_path / "a.cayley"
    second = tmp_path / "b.cayley"
    save_table(type1_table, first)
    save_table(octonion_table, second)
    same = run(["iso", str(first), str(first)])
    assert same.exit_status == ExitStatus.PASS
    assert same.lines[0].startswith("map=0:0,")
    different = run(["iso", str(first), str(second)])
    assert different.exit_status == ExitStatus.PROPERTY_FAIL
    assert different.lines == ["map=none"]


def test_normalize_row():
    report = run(["normalize", "row", "6"])
    assert report.exit_status == ExitStatus.PASS
    assert "step=w' = t1*w" in report.lines
    assert "type=5 m1=1" in report.lines
    assert report.lines[-1] == "verified=pass"


def test_normalize_starred_row():
    assert run(["normalize", "row", "34", "m1=2"]).exit_status == ExitStatus.CONSTRAINT


def test_ring_check(tmp_path, type1_table, q8_table):
    path = tmp_path / "t1.cayley"
    save_table(type1_table, path)
    report = run(["ring-check", str(path)])
    assert report.lines[:2] == ["modulus=3", "alternative=true"]
    assert report.lines[2].startswith("associative=false witness=")
    assert report.lines[3] == "ra=true"
    assert run(["--modulus", "4", "ring-check", str(path)]).exit_status == ExitStatus.CONSTRAINT
    assert run(["ring-check", str(path), "--modulus", "2"]).exit_status == ExitStatus.CONSTRAINT

    group = tmp_path / "q8.cayley"
    save_table(q8_table, group)
    failed = run(["ring-check", str(group)])
    assert failed.exit_status == ExitStatus.PROPERTY_FAIL
    assert "ra=false" in failed.lines
    assert "associative=true" in failed.lines


def test_fingerprint_table(tmp_path, type1_table):
    path = tmp_path / "t1.cayley"
    save_table(type1_table, path)
    report = run(["fingerprint", str(path)])
    assert "order=16" in report.lines
    assert "involutions=8" in report.lines
    assert "order_histogram=1:1,2:9,4:6" in report.lines


def test_main_prints_lines(capsys):
    assert main(["normalize", "row", "31", "m1=2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "constraint=outside m1=1" in out
