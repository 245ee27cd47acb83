import json

import pytest

from cli import run
from db.crud import create_run_record, get_run_record, list_run_records
from db.database import create_all_tables, get_engine, get_sessionmaker
from schemas import RunReport
from settings import get_settings


@pytest.fixture
def database_url(tmp_path):
    return f"sqlite+aiosqlite:///{tmp_path / 'reports.db'}"


async def test_run_records_roundtrip(database_url):
    await create_all_tables(database_url)
    report = RunReport(
        command="raloop classify q8.cayley",
        verdicts={"classified": False},
        lines=["NOT_RA", "detail=loop ring is associative"],
        exit_status=1,
    )
    async with get_sessionmaker(database_url)() as session:
        first = await create_run_record(session, report)
        second = await create_run_record(session, report.model_copy(update={"exit_status": 0}))
        fetched = await get_run_record(session, first.id)
        assert fetched.command == report.command
        assert json.loads(fetched.verdicts) == {"classified": False}
        assert RunReport.model_validate_json(fetched.report) == report
        assert await get_run_record(session, second.id + 1) is None
        records = await list_run_records(session, limit=1)
        assert [r.id for r in records] == [second.id]
    await get_engine(database_url).dispose()


def test_cli_archives_runs(database_url, monkeypatch):
    monkeypatch.setenv("RALOOP_DATABASE_URL", database_url)
    get_settings.cache_clear()
    try:
        assert run(["--archive", "normalize", "row", "6"]).exit_status == 0
        assert run(["--archive", "normalize", "row", "34", "m1=2"]).exit_status == 2
        history = run(["history", "--limit", "5"])
    finally:
        get_settings.cache_clear()
    assert len(history.lines) == 2
    assert history.lines[0].startswith("id=2 command=raloop --archive normalize row 34 m1=2 exit=2")
    assert history.lines[1].startswith("id=1 command=raloop --archive normalize row 6 exit=0")


def test_empty_history(database_url, monkeypatch):
    monkeypatch.setenv("RALOOP_DATABASE_URL", database_url)
    get_settings.cache_clear()
    try:
        assert run(["history"]).lines == ["runs=0"]
    finally:
        get_settings.cache_clear()


def test_unwritable_archive_keeps_exit_status(tmp_path, monkeypatch, caplog):
    monkeypatch.setenv("RALOOP_DATABASE_URL", f"sqlite+aiosqlite:///{tmp_path / 'missing' / 'reports.db'}")
    get_settings.cache_clear()
    try:
        report = run(["--archive", "normalize", "row", "6"])
    finally:
        get_settings.cache_clear()
    assert report.exit_status == 0
    assert report.lines[-1] == "verified=pass"
    assert "Could not archive the run report" in caplog.text
