"""Parsing, cleaning, and per-day partitioning of smart-card trip records."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import date, datetime, timezone, tzinfo
from typing import Iterable, Iterator, Mapping, TextIO

from .errors import DataFormatError

RECORD_HEADER = ("card_id", "depart_time", "origin", "destination")
STATION_HEADER = ("station_id", "name", "ground_truth_score")

ISO_FORMAT = "%Y-%m-%dT%H:%M:%S"

# RejectedRow reason codes
REASON_MISSING_FIELD = "missing-field"
REASON_BAD_TIMESTAMP = "bad-timestamp"
REASON_UNKNOWN_STATION = "unknown-station"
REASON_SELF_LOOP = "self-loop"
REASON_FILTERED_DAY = "filtered-day"


@dataclass(frozen=True)
class ODRecord:
    """One timestamped trip of one card between two stations."""

    card_id: str
    depart_time: datetime
    origin: str
    destination: str


@dataclass(frozen=True)
class RejectedRow:
    """A rejected input row with its 1-based line number and a reason code."""

    line_number: int
    reason: str


@dataclass(frozen=True)
class PassengerDay:
    """All trips of one card on one calendar day, in departure order."""

    card_id: str
    date: date
    trips: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Station:
    station_id: str
    name: str
    ground_truth_score: float | None


@dataclass(frozen=True)
class IngestConfig:
    """Validation and filtering options for record parsing.

    stations: declared station universe; None accepts any station id.
    day_filter: "all", "weekdays", or "weekends"; rows outside the filter
        are reported as rejects with reason "filtered-day", never silently
        dropped.
    epoch_timezone: zone applied when depart_time is given as epoch seconds.
    """

    stations: frozenset[str] | None = None
    day_filter: str = "all"
    epoch_timezone: tzinfo = timezone.utc

    def __post_init__(self):
        if self.day_filter not in ("all", "weekdays", "weekends"):
            raise DataFormatError(f"unknown day filter: {self.day_filter!r}")


def _parse_timestamp(text: str, epoch_mode: bool, tz: tzinfo) -> datetime:
    if epoch_mode:
        stamp = datetime.fromtimestamp(int(text), tz=tz)
        return stamp.replace(tzinfo=None)
    return datetime.strptime(text, ISO_FORMAT)


def _day_allowed(stamp: datetime, day_filter: str) -> bool:
    if day_filter == "all":
        return True
    is_weekend = stamp.weekday() >= 5
    return is_weekend if day_filter == "weekends" else not is_weekend


def parse_records(
    stream: TextIO | Iterable[str], config: IngestConfig
) -> tuple[list[ODRecord], list[RejectedRow]]:
    """Parse delimited trip rows into validated ODRecords.

    The first row must be the header ``card_id,depart_time,origin,destination``
    (fatal format error otherwise). The timestamp encoding is auto-detected
    per file from the first data row: all-digit fields are read as epoch
    seconds, anything else as ISO-8601. Malformed rows are returned as
    RejectedRows with a reason code.
    """
    try:
        reader = csv.reader(stream)
        rows = iter(enumerate(reader, start=1))
        try:
            _, header = next(rows)
        except StopIteration:
            raise DataFormatError("empty input: missing header row") from None
        if tuple(h.strip() for h in header) != RECORD_HEADER:
            raise DataFormatError(
                f"header mismatch: expected {','.join(RECORD_HEADER)}, "
                f"got {','.join(header)}"
            )

        records: list[ODRecord] = []
        rejects: list[RejectedRow] = []
        epoch_mode: bool | None = None
        for line_number, row in rows:
            if not row:
                continue
            if len(row) != len(RECORD_HEADER) or any(not f.strip() for f in row):
                rejects.append(RejectedRow(line_number, REASON_MISSING_FIELD))
                continue
            card_id, raw_time, origin, destination = (f.strip() for f in row)
            if epoch_mode is None:
                epoch_mode = raw_time.isdigit()
            try:
                stamp = _parse_timestamp(raw_time, epoch_mode, config.epoch_timezone)
            except (ValueError, OverflowError, OSError):
                rejects.append(RejectedRow(line_number, REASON_BAD_TIMESTAMP))
                continue
            if config.stations is not None and (
                origin not in config.stations or destination not in config.stations
            ):
                rejects.append(RejectedRow(line_number, REASON_UNKNOWN_STATION))
                continue
            if origin == destination:
                rejects.append(RejectedRow(line_number, REASON_SELF_LOOP))
                continue
            if not _day_allowed(stamp, config.day_filter):
                rejects.append(RejectedRow(line_number, REASON_FILTERED_DAY))
                continue
            records.append(ODRecord(card_id, stamp, origin, destination))
        return records, rejects
    except OSError as exc:
        raise DataFormatError(f"unreadable input stream: {exc}") from exc


def partition_by_day(records: Iterable[ODRecord]) -> list[PassengerDay]:
    """Group validated records into per-card, per-calendar-day trip sequences.

    Trips are sorted by depart_time within each day; equal timestamps keep
    input order. Output is sorted by (card_id, date). Total trip count is
    preserved.
    """
    indexed = sorted(
        enumerate(records), key=lambda pair: (pair[1].card_id, pair[1].depart_time, pair[0])
    )
    days: list[PassengerDay] = []
    current_key: tuple[str, date] | None = None
    trips: list[tuple[str, str]] = []
    for _, rec in indexed:
        key = (rec.card_id, rec.depart_time.date())
        if key != current_key:
            if current_key is not None:
                days.append(PassengerDay(current_key[0], current_key[1], tuple(trips)))
            current_key = key
            trips = []
        trips.append((rec.origin, rec.destination))
    if current_key is not None:
        days.append(PassengerDay(current_key[0], current_key[1], tuple(trips)))
    return days


def load_stations(stream: TextIO | Iterable[str]) -> list[Station]:
    """Read the station-universe CSV ``station_id,name,ground_truth_score``.

    An empty score field yields ground_truth_score=None: such stations
    participate in networks but are excluded from ranking evaluation.
    """
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise DataFormatError("empty station file: missing header row") from None
    if tuple(h.strip() for h in header) != STATION_HEADER:
        raise DataFormatError(
            f"station header mismatch: expected {','.join(STATION_HEADER)}, "
            f"got {','.join(header)}"
        )
    stations: list[Station] = []
    seen: set[str] = set()
    for line_number, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(STATION_HEADER):
            raise DataFormatError(f"station row {line_number}: expected 3 fields")
        station_id, name, raw_score = (f.strip() for f in row)
        if not station_id:
            raise DataFormatError(f"station row {line_number}: empty station_id")
        if station_id in seen:
            raise DataFormatError(f"station row {line_number}: duplicate id {station_id}")
        seen.add(station_id)
        if raw_score == "":
            score = None
        else:
            try:
                score = float(raw_score)
            except ValueError:
                raise DataFormatError(
                    f"station row {line_number}: bad score {raw_score!r}"
                ) from None
            if score < 0:
                raise DataFormatError(f"station row {line_number}: negative score")
        stations.append(Station(station_id, name, score))
    return stations


def truth_scores(stations: Iterable[Station]) -> dict[str, float]:
    """Ground-truth score map over the stations that carry one."""
    return {
        s.station_id: s.ground_truth_score
        for s in stations
        if s.ground_truth_score is not None
    }


def write_reject_report(rejects: Iterable[RejectedRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("line_number", "reason"))
    for reject in rejects:
        writer.writerow((reject.line_number, reject.reason))
