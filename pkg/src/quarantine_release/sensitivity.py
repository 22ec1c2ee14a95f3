"""Day-dependent test sensitivity curves.

A curve tabulates the probability that an infected person tests
positive d whole days after the group contact event (the event day is
treated as the infection day). PCR sensitivity is strongly
time-varying: near zero for the first two days, peaking around day
eight, then decaying. The default curve shipped with the package was
digitized once from the published day-by-day false-negative profile of
RT-PCR testing and is pinned in ``data/pcr_sensitivity_by_day.csv``;
its qualitative shape is locked down by tests, and downstream
tolerances allow roughly +/-0.05 of digitization slack.

Specificity is carried as a field but the likelihood model in this
release requires it to be exactly 1 (healthy people never test
positive); a different value is rejected loudly downstream.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .errors import CurveFormatError, DomainError

CURVE_HEADER = "day,sensitivity"


@dataclass(frozen=True)
class SensitivityCurve:
    """Piecewise-linear sensitivity-by-day table.

    points are (day, sensitivity) pairs with strictly increasing
    integer days >= 1 and sensitivities in [0, 1]. Immutable after
    construction, so instances are freely shareable across threads.
    """

    name: str
    points: tuple[tuple[int, float], ...]
    specificity: float = 1.0

    def __post_init__(self):
        if not self.points:
            raise DomainError("a sensitivity curve needs at least one point")
        object.__setattr__(self, "points", tuple((int(d), float(s)) for d, s in self.points))
        prev_day = 0
        for day, sens in self.points:
            if day < 1:
                raise DomainError(f"curve days must be >= 1, got {day}")
            if day <= prev_day:
                raise DomainError(f"curve days must be strictly increasing, got {day} after {prev_day}")
            if not 0.0 <= sens <= 1.0:
                raise DomainError(f"sensitivity must be in [0, 1], got {sens} on day {day}")
            prev_day = day
        if not 0.0 <= self.specificity <= 1.0:
            raise DomainError(f"specificity must be in [0, 1], got {self.specificity}")


def sensitivity_at(curve: SensitivityCurve, day: int) -> float:
    """Sensitivity on a given whole day after the contact event.

    Days between tabulated points are linearly interpolated; days
    before the first / past the last tabulated day clamp to the first
    / last value rather than extrapolating.
    """
    if day < 1:
        raise DomainError(f"test day must be >= 1, got {day} (tests cannot precede the event)")
    pts = curve.points
    if day <= pts[0][0]:
        return pts[0][1]
    if day >= pts[-1][0]:
        return pts[-1][1]
    for (d0, s0), (d1, s1) in zip(pts, pts[1:]):
        if d0 <= day <= d1:
            if day == d0:
                return s0
            if day == d1:
                return s1
            t = (day - d0) / (d1 - d0)
            return s0 + t * (s1 - s0)
    raise AssertionError("unreachable: day bracketed by tabulated range")


def load_curve(source: str, name: str = "curve") -> SensitivityCurve:
    """Parse a curve from CSV text (header ``day,sensitivity``).

    Lines starting with ``#`` are comments. Violations are reported
    with the 1-based line number of the offending row.
    """
    lines = io.StringIO(source).read().splitlines()
    header_seen = False
    points: list[tuple[int, float]] = []
    prev_day = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != CURVE_HEADER:
                raise CurveFormatError(f"expected header {CURVE_HEADER!r}, got {line!r}", lineno)
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise CurveFormatError(f"expected 'day,sensitivity', got {line!r}", lineno)
        try:
            day = int(parts[0])
        except ValueError:
            raise CurveFormatError(f"day must be an integer, got {parts[0]!r}", lineno) from None
        try:
            sens = float(parts[1])
        except ValueError:
            raise CurveFormatError(f"sensitivity must be a number, got {parts[1]!r}", lineno) from None
        if day < 1:
            raise CurveFormatError(f"day must be >= 1, got {day}", lineno)
        if day <= prev_day:
            raise CurveFormatError(f"days must be strictly increasing, got {day} after {prev_day}", lineno)
        if not 0.0 <= sens <= 1.0:
            raise CurveFormatError(f"sensitivity must be in [0, 1], got {sens}", lineno)
        points.append((day, sens))
        prev_day = day
    if not header_seen:
        raise CurveFormatError("empty curve file (missing header)")
    if not points:
        raise CurveFormatError("curve file has a header but no data rows")
    return SensitivityCurve(name=name, points=tuple(points))


def serialize_curve(curve: SensitivityCurve) -> str:
    """Render a curve back to its CSV form. Round-trips through load_curve."""
    rows = [CURVE_HEADER]
    rows.extend(f"{day},{sens:g}" for day, sens in curve.points)
    return "\n".join(rows) + "\n"


def default_curve() -> SensitivityCurve:
    """The packaged day-by-day PCR sensitivity curve (days 1..21)."""
    from importlib.resources import files

    resource = files("quarantine_release").joinpath("data/pcr_sensitivity_by_day.csv")
    return load_curve(resource.read_text("utf-8"), name="pcr_default")
