from functools import lru_cache
from typing import Optional

from sqlalchemy.ext.asyncio import AsyncEngine, AsyncSession, create_async_engine
from sqlalchemy.orm import sessionmaker

from settings import get_settings


@lru_cache
def get_engine(database_url: Optional[str] = None) -> AsyncEngine:
    url = database_url or get_settings().database_url
    return create_async_engine(url, echo=False, future=True)


def get_sessionmaker(database_url: Optional[str] = None) -> sessionmaker:
    return sessionmaker(
        bind=get_engine(database_url),
        class_=AsyncSession,
        expire_on_commit=False,
    )


async def create_all_tables(database_url: Optional[str] = None):
    from db.models import Base
    async with get_engine(database_url).begin() as conn:
        await conn.run_sync(Base.metadata.create_all)
