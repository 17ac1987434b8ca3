"""Report models shared by the pipeline, the catalog and the CLI."""

from pydantic import BaseModel, Field, field_validator

from .constants import VERDICT_FAIL, VERDICT_INFO, VERDICT_PASS, VERDICT_SKIPPED, VERDICTS


class OracleSummary(BaseModel):
    """Numeric cross-check outcome attached to a record."""

    points: int
    failures: int


class CheckRecord(BaseModel):
    """Outcome of one check; serialized as one entry of a JSON report."""

    name: str
    kind: str
    claim: str | None = None
    paper_ref: str | None = None
    verdict: str
    residual: str | None = None
    certificate: dict[str, str] | None = None
    flux: list[str] | None = None
    discarded: list[str] | None = None
    oracle: OracleSummary | None = None
    message: str | None = None

    @field_validator("verdict")
    @classmethod
    def validate_verdict(cls, value: str) -> str:
        if value not in VERDICTS:
            raise ValueError(f"verdict must be one of {', '.join(VERDICTS)}, got {value!r}")
        return value

    @property
    def failed(self) -> bool:
        return self.verdict == VERDICT_FAIL


class Report(BaseModel):
    """All records of one document or catalog case, in declaration order."""

    name: str
    seed: int
    oracle_points: int
    records: list[CheckRecord] = Field(default_factory=list)

    def count(self, verdict: str) -> int:
        return sum(1 for r in self.records if r.verdict == verdict)

    @property
    def passed(self) -> int:
        return self.count(VERDICT_PASS)

    @property
    def failed(self) -> int:
        return self.count(VERDICT_FAIL)

    @property
    def skipped(self) -> int:
        return self.count(VERDICT_SKIPPED)

    @property
    def info(self) -> int:
        return self.count(VERDICT_INFO)

    @property
    def ok(self) -> bool:
        return self.failed == 0


__all__ = ["OracleSummary", "CheckRecord", "Report"]
