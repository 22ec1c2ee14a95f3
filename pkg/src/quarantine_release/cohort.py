"""Line-list ingestion: health-department CSVs to validated schedules.

Input rows carry a case id, the date of last contact with the index
case, and optionally a test date and result. The group event date
defaults to the modal last-contact date; anyone whose last contact
differs is not silently dropped but excluded with a reason, because
follow-up contact breaks the single-event model and those people need
an individual assessment.

Dates are ISO-8601 in the machine format; the parser also accepts the
long form used on paper line lists ("August 10, 2020").
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import warnings
from collections import Counter
from dataclasses import dataclass

from .errors import CohortValidationError
from .posterior import TestSchedule

EXCLUSION_HETEROGENEOUS = "heterogeneous last contact - assess individually"

_RESULTS = ("negative", "positive")


def _parse_date(text: str, *, context: str) -> dt.date:
    text = text.strip()
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        pass
    try:
        return dt.datetime.strptime(text, "%B %d, %Y").date()
    except ValueError:
        raise CohortValidationError(
            f"{context}: cannot parse date {text!r} (expected YYYY-MM-DD or 'Month D, YYYY')"
        ) from None


@dataclass(frozen=True)
class CohortRecord:
    """One line-list row. test_date and result travel together."""

    case_id: str
    last_contact: dt.date
    test_date: dt.date | None = None
    result: str | None = None

    def __post_init__(self):
        if not self.case_id:
            raise CohortValidationError("record is missing a case id")
        if (self.test_date is None) != (self.result is None):
            raise CohortValidationError(
                "test date and result must be given together", case_id=self.case_id
            )
        if self.result is not None and self.result not in _RESULTS:
            raise CohortValidationError(
                f"result must be one of {_RESULTS}, got {self.result!r}", case_id=self.case_id
            )
        if self.test_date is not None and self.test_date < self.last_contact:
            raise CohortValidationError(
                f"test date {self.test_date} precedes last contact {self.last_contact}",
                case_id=self.case_id,
            )

    @property
    def tested(self) -> bool:
        return self.test_date is not None


@dataclass(frozen=True)
class CohortReport:
    """Validated ingestion outcome: the schedule plus the audit trail."""

    schedule: TestSchedule
    event_date: dt.date
    excluded: tuple[tuple[str, str], ...]
    untested_count: int
    any_positive: bool
    included_ids: tuple[str, ...]


def read_cohort_csv(text: str) -> list[CohortRecord]:
    """Parse `case_id,last_contact,test_date,test_result` CSV text.

    Empty test fields mean the person was never tested.
    """
    reader = csv.DictReader(io.StringIO(text))
    expected = ["case_id", "last_contact", "test_date", "test_result"]
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected:
        raise CohortValidationError(
            f"cohort CSV must have columns {','.join(expected)}, got {reader.fieldnames}"
        )
    records = []
    for lineno, row in enumerate(reader, start=2):
        case_id = (row["case_id"] or "").strip()
        context = f"line {lineno}"
        last_contact_raw = (row["last_contact"] or "").strip()
        if not last_contact_raw:
            raise CohortValidationError(f"{context}: missing last_contact date")
        last_contact = _parse_date(last_contact_raw, context=context)
        test_raw = (row["test_date"] or "").strip()
        result_raw = (row["test_result"] or "").strip().lower()
        test_date = _parse_date(test_raw, context=context) if test_raw else None
        result = result_raw if result_raw else None
        records.append(
            CohortRecord(case_id=case_id, last_contact=last_contact, test_date=test_date, result=result)
        )
    if not records:
        raise CohortValidationError("cohort CSV contains no records")
    return records


def ingest(records: list[CohortRecord], event_date: dt.date | None = None) -> CohortReport:
    """Validate a cohort and derive its day-stratified test schedule.

    event_date defaults to the modal last-contact date (ties broken by
    the earliest date, with a warning). Day offsets are whole days
    between the event and the test; a test on or before the event day
    is rejected because the sensitivity model starts at day 1.
    """
    if not records:
        raise CohortValidationError("cannot ingest an empty cohort")

    seen: set[str] = set()
    for record in records:
        if record.case_id in seen:
            raise CohortValidationError(
                "duplicate record (the model allows one test per person)",
                case_id=record.case_id,
            )
        seen.add(record.case_id)

    if event_date is None:
        counts = Counter(r.last_contact for r in records)
        top = max(counts.values())
        candidates = sorted(d for d, c in counts.items() if c == top)
        event_date = candidates[0]
        if len(candidates) > 1:
            warnings.warn(
                f"last-contact date is multimodal {candidates}; using earliest {event_date}",
                stacklevel=2,
            )

    included: list[CohortRecord] = []
    excluded: list[tuple[str, str]] = []
    for record in records:
        if record.last_contact != event_date:
            excluded.append((record.case_id, EXCLUSION_HETEROGENEOUS))
        else:
            included.append(record)
    if not included:
        raise CohortValidationError(f"no record has last contact on the event date {event_date}")

    by_day: Counter[int] = Counter()
    untested = 0
    any_positive = False
    for record in included:
        if not record.tested:
            untested += 1
            continue
        offset = (record.test_date - event_date).days
        if offset < 1:
            raise CohortValidationError(
                f"test date {record.test_date} is not at least one day after "
                f"the event date {event_date}",
                case_id=record.case_id,
            )
        if record.result == "positive":
            any_positive = True
        else:
            by_day[offset] += 1

    schedule = TestSchedule(
        group_size=len(included),
        groups=tuple(sorted(by_day.items())),
    )
    return CohortReport(
        schedule=schedule,
        event_date=event_date,
        excluded=tuple(excluded),
        untested_count=untested,
        any_positive=any_positive,
        included_ids=tuple(r.case_id for r in included),
    )


def bundled_cohort(name: str) -> str:
    """Raw CSV text of a cohort fixture shipped with the package."""
    from importlib.resources import files

    resource = files("quarantine_release").joinpath(f"data/cohorts/{name}.csv")
    if not resource.is_file():
        raise CohortValidationError(f"unknown bundled cohort {name!r}")
    return resource.read_text("utf-8")
