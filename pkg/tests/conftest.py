"""Shared fixtures: the worked 3-passenger corpus and file helpers."""

from __future__ import annotations

from datetime import date
from pathlib import Path

import pytest

from motifnet.ingest import PassengerDay
from motifnet.motifs import build_motif

# Three passengers on one day, nine trips total, reconstructed from the
# worked example: passenger 1 returns A-B-A, passenger 2 chains A-B-C,
# passenger 3 starts at B and reaches C twice, D and E once each.
FIG_DAY = date(2016, 9, 5)
FIG_TRIPS = {
    "c1": (("A", "B"), ("B", "A")),
    "c2": (("A", "B"), ("B", "C")),
    "c3": (("B", "C"), ("C", "D"), ("D", "B"), ("B", "C"), ("C", "E")),
}


@pytest.fixture
def fig_days() -> list[PassengerDay]:
    return [PassengerDay(card, FIG_DAY, trips) for card, trips in FIG_TRIPS.items()]


@pytest.fixture
def fig_motifs(fig_days):
    return [build_motif(day) for day in fig_days]


@pytest.fixture
def fig_corpus_files(tmp_path: Path) -> tuple[Path, Path]:
    """The worked corpus as on-disk CSV files (records, stations)."""
    records = tmp_path / "records.csv"
    lines = ["card_id,depart_time,origin,destination"]
    for card, trips in FIG_TRIPS.items():
        for i, (origin, destination) in enumerate(trips):
            lines.append(f"{card},2016-09-05T{8 + i:02d}:00:00,{origin},{destination}")
    records.write_text("\n".join(lines) + "\n", encoding="utf-8")

    stations = tmp_path / "stations.csv"
    truth = {"A": 50.0, "B": 40.0, "C": 30.0, "D": 20.0, "E": 10.0}
    rows = ["station_id,name,ground_truth_score"]
    rows += [f"{s},{s} station,{v}" for s, v in sorted(truth.items())]
    stations.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return records, stations
