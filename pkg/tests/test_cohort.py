import datetime as dt

import pytest

from quarantine_release.cohort import (
    EXCLUSION_HETEROGENEOUS,
    CohortRecord,
    ingest,
    read_cohort_csv,
)
from quarantine_release.errors import CohortValidationError

AUG10 = dt.date(2020, 8, 10)


def rec(case_id, last="2020-08-10", test=None, result=None):
    return CohortRecord(
        case_id=case_id,
        last_contact=dt.date.fromisoformat(last),
        test_date=dt.date.fromisoformat(test) if test else None,
        result=result,
    )


class TestRecordValidation:
    def test_result_without_date_rejected(self):
        with pytest.raises(CohortValidationError):
            CohortRecord("a", AUG10, None, "negative")

    def test_date_without_result_rejected(self):
        with pytest.raises(CohortValidationError):
            CohortRecord("a", AUG10, AUG10, None)

    def test_test_before_last_contact_names_case(self):
        with pytest.raises(CohortValidationError) as exc:
            rec("case7", last="2020-08-10", test="2020-08-09", result="negative")
        assert exc.value.case_id == "case7"

    def test_unknown_result_value(self):
        with pytest.raises(CohortValidationError):
            rec("a", test="2020-08-15", result="inconclusive")


class TestCsvParsing:
    def test_iso_and_long_dates(self):
        text = (
            "case_id,last_contact,test_date,test_result\n"
            "a,2020-08-10,2020-08-18,negative\n"
            'b,"August 10, 2020","August 19, 2020",negative\n'
            "c,2020-08-10,,\n"
        )
        records = read_cohort_csv(text)
        assert [r.case_id for r in records] == ["a", "b", "c"]
        assert records[1].test_date == dt.date(2020, 8, 19)
        assert records[2].test_date is None

    def test_wrong_columns(self):
        with pytest.raises(CohortValidationError):
            read_cohort_csv("id,contact\n1,2020-08-10\n")

    def test_unparseable_date_has_line_number(self):
        text = "case_id,last_contact,test_date,test_result\na,not-a-date,,\n"
        with pytest.raises(CohortValidationError) as exc:
            read_cohort_csv(text)
        assert "line 2" in str(exc.value)

    def test_empty_body(self):
        with pytest.raises(CohortValidationError):
            read_cohort_csv("case_id,last_contact,test_date,test_result\n")


class TestIngest:
    def test_fixture_cohort(self, school_cohort_csv):
        report = ingest(read_cohort_csv(school_cohort_csv))
        assert report.event_date == AUG10
        assert report.schedule.group_size == 15
        assert report.schedule.groups == ((8, 1), (9, 10), (10, 1))
        assert report.untested_count == 3
        assert report.any_positive is False
        assert {cid for cid, _ in report.excluded} == {"16", "17"}
        assert all(reason == EXCLUSION_HETEROGENEOUS for _, reason in report.excluded)

    def test_every_record_accounted_for(self, school_cohort_csv):
        records = read_cohort_csv(school_cohort_csv)
        report = ingest(records)
        assert len(report.included_ids) + len(report.excluded) == len(records)
        assert report.schedule.tested_total + report.untested_count == report.schedule.group_size

    def test_idempotent_on_included(self, school_cohort_csv):
        records = read_cohort_csv(school_cohort_csv)
        report = ingest(records)
        included = [r for r in records if r.case_id in report.included_ids]
        again = ingest(included)
        assert again.schedule == report.schedule
        assert again.event_date == report.event_date
        assert again.excluded == ()

    def test_single_untested_record(self):
        report = ingest([rec("only")])
        assert report.schedule.group_size == 1
        assert report.schedule.groups == ()
        assert report.untested_count == 1

    def test_modal_event_date_tie_warns_earliest(self):
        records = [
            rec("a", last="2020-08-10"),
            rec("b", last="2020-08-12"),
        ]
        with pytest.warns(UserWarning, match="multimodal"):
            report = ingest(records)
        assert report.event_date == dt.date(2020, 8, 10)
        assert [cid for cid, _ in report.excluded] == ["b"]

    def test_explicit_event_date_overrides(self):
        records = [rec("a", last="2020-08-10"), rec("b", last="2020-08-12")]
        report = ingest(records, event_date=dt.date(2020, 8, 12))
        assert report.included_ids == ("b",)

    def test_duplicate_case_id_rejected(self):
        with pytest.raises(CohortValidationError) as exc:
            ingest([rec("a"), rec("a", test="2020-08-18", result="negative")])
        assert exc.value.case_id == "a"

    def test_test_on_event_day_rejected(self):
        with pytest.raises(CohortValidationError) as exc:
            ingest([rec("a", test="2020-08-10", result="negative")])
        assert "at least one day" in str(exc.value)

    def test_positive_sets_flag_and_stays_out_of_schedule(self):
        records = [
            rec("a", test="2020-08-18", result="positive"),
            rec("b", test="2020-08-18", result="negative"),
            rec("c"),
        ]
        report = ingest(records)
        assert report.any_positive is True
        assert report.schedule.group_size == 3
        assert report.schedule.groups == ((8, 1),)
        assert report.untested_count == 1

    def test_all_excluded_is_error(self):
        records = [rec("a", last="2020-08-10"), rec("b", last="2020-08-11")]
        with pytest.raises(CohortValidationError):
            ingest(records, event_date=dt.date(2020, 8, 9))

    def test_empty_cohort(self):
        with pytest.raises(CohortValidationError):
            ingest([])
