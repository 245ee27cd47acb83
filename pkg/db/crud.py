import json
from typing import List, Optional

from sqlalchemy.future import select
from sqlalchemy.ext.asyncio import AsyncSession

from schemas import RunReport
from .models import RunRecord

async def create_run_record(session: AsyncSession, report: RunReport) -> RunRecord:
    record = RunRecord(
        command=report.command,
        exit_status=report.exit_status,
        verdicts=json.dumps(report.verdicts, sort_keys=True),
        report=report.model_dump_json(),
    )
    session.add(record)
    await session.commit()
    await session.refresh(record)
    return record

async def get_run_record(session: AsyncSession, record_id: int) -> Optional[RunRecord]:
    result = await session.execute(select(RunRecord).where(RunRecord.id == record_id))
    return result.scalar_one_or_none()

async def list_run_records(session: AsyncSession, limit: int = 20) -> List[RunRecord]:
    result = await session.execute(select(RunRecord).order_by(RunRecord.id.desc()).limit(limit))
    return list(result.scalars().all())
