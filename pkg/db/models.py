from sqlalchemy import Column, Integer, String, DateTime, Text, func
from sqlalchemy.orm import declarative_base

Base = declarative_base()

class RunRecord(Base):
    __tablename__ = "run_reports"
    id = Column(Integer, primary_key=True, index=True)
    command = Column(String, nullable=False)
    exit_status = Column(Integer, nullable=False, default=0)
    verdicts = Column(Text, nullable=False)
    report = Column(Text, nullable=False)
    created_at = Column(DateTime(timezone=True), server_default=func.now())
