"""Ranking tables and ranking-quality metrics against ground truth."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import EvaluationError

MODE_GRADED = "graded"
MODE_BINARY = "binary"


@dataclass(frozen=True)
class RankingTable:
    """Stations ordered by descending score with dense ranks 1..N.

    Ties are broken by ascending station id, so ranks are always a
    permutation of 1..N.
    """

    provenance: str
    entries: tuple[tuple[str, float, int], ...]

    @classmethod
    def from_scores(cls, scores: Mapping[str, float], provenance: str) -> "RankingTable":
        ordered = sorted(scores.items(), key=lambda item: (-float(item[1]), item[0]))
        entries = tuple(
            (station, float(score), position)
            for position, (station, score) in enumerate(ordered, start=1)
        )
        return cls(provenance=provenance, entries=entries)

    def stations(self) -> list[str]:
        return [station for station, _, _ in self.entries]

    def station_set(self) -> frozenset[str]:
        return frozenset(station for station, _, _ in self.entries)

    def ranks(self) -> dict[str, int]:
        return {station: rank for station, _, rank in self.entries}

    def scores(self) -> dict[str, float]:
        return {station: score for station, score, _ in self.entries}

    def restrict(self, keep: Iterable[str]) -> "RankingTable":
        """Drop stations outside ``keep`` and recompute dense ranks 1..M,
        preserving the relative order of the remaining stations."""
        keep_set = set(keep)
        entries = tuple(
            (station, score, position)
            for position, (station, score, _) in enumerate(
                (e for e in self.entries if e[0] in keep_set), start=1
            )
        )
        return RankingTable(provenance=self.provenance, entries=entries)


def truth_ranking(truth: Mapping[str, float], provenance: str = "truth") -> RankingTable:
    return RankingTable.from_scores(truth, provenance)


def _resolve_k(k: int | float | None, count: int) -> int:
    if k is None or (isinstance(k, float) and math.isinf(k)):
        return count
    k = int(k)
    if k < 1:
        raise EvaluationError(f"k must be at least 1, got {k}")
    if k > count:
        raise EvaluationError(f"k={k} exceeds the {count} stations with truth scores")
    return k


def _dcg(relevances: list[float], k: int) -> float:
    return sum(relevances[i] / math.log2(i + 2) for i in range(k))


def ndcg(
    ranking: RankingTable,
    truth: Mapping[str, float],
    k: int | float | None,
    mode: str = MODE_GRADED,
) -> float:
    """Normalized discounted cumulative gain of the top-k computed stations.

    Stations without a truth score are removed from both the computed and
    the ideal ordering before computation. Graded mode uses the raw truth
    score of the station at each computed position as its relevance; binary
    mode scores 1 when the station at a computed position belongs to the
    truth top-k, with an all-ones ideal. ``k=None`` (or infinity) means the
    whole list.
    """
    if mode not in (MODE_GRADED, MODE_BINARY):
        raise EvaluationError(f"unknown NDCG mode: {mode!r}")
    table = ranking.restrict(truth)
    computed = table.stations()
    if not computed:
        raise EvaluationError("no overlap between ranking and truth stations")
    kk = _resolve_k(k, len(computed))
    ideal = sorted(computed, key=lambda station: (-truth[station], station))
    if mode == MODE_GRADED:
        relevances = [float(truth[station]) for station in computed]
        ideal_relevances = [float(truth[station]) for station in ideal]
    else:
        top = set(ideal[:kk])
        relevances = [1.0 if station in top else 0.0 for station in computed]
        ideal_relevances = [1.0] * kk
    ideal_gain = _dcg(ideal_relevances, kk)
    if ideal_gain == 0.0:
        raise EvaluationError("ideal DCG is zero; truth scores carry no signal")
    return _dcg(relevances, kk) / ideal_gain


def pearson_rank_vs_score(ranking: RankingTable, truth: Mapping[str, float]) -> float:
    """Pearson correlation between rank position and truth score.

    Rank positions are recomputed densely over the stations that carry a
    truth score. A negative value means higher-ranked (smaller position)
    stations have larger truth scores.
    """
    table = ranking.restrict(truth)
    stations = table.stations()
    if len(stations) < 3:
        raise EvaluationError("pearson correlation needs at least 3 stations with truth")
    n = len(stations)
    xs = list(range(1, n + 1))
    ys = [float(truth[station]) for station in stations]
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    var_x = sum((x - mean_x) ** 2 for x in xs)
    var_y = sum((y - mean_y) ** 2 for y in ys)
    if var_x == 0.0 or var_y == 0.0:
        raise EvaluationError("pearson correlation undefined: zero variance")
    return cov / math.sqrt(var_x * var_y)


def ranking_improvement(
    rank_a: RankingTable, rank_b: RankingTable, rank_truth: RankingTable
) -> tuple[int, int]:
    """Upper bound and relative value of the ranking improvement of B over A.

    upper = sum over stations of |rank_A - rank_B|; relative = sum of
    |rank_A - rank_truth| - |rank_B - rank_truth|. A positive relative
    value means B sits closer to the truth ranking than A does.
    """
    stations = rank_a.station_set()
    if stations != rank_b.station_set() or stations != rank_truth.station_set():
        raise EvaluationError("ranking_improvement requires identical station sets")
    a = rank_a.ranks()
    b = rank_b.ranks()
    t = rank_truth.ranks()
    upper = sum(abs(a[s] - b[s]) for s in stations)
    relative = sum(abs(a[s] - t[s]) - abs(b[s] - t[s]) for s in stations)
    return upper, relative


def k_label(k: int | float | None) -> str:
    if k is None or (isinstance(k, float) and math.isinf(k)):
        return "inf"
    return str(int(k))


@dataclass(frozen=True)
class EvalReport:
    """Metric bundle for one ranking against ground truth."""

    provenance: str
    pearson_r: float
    ndcg: Mapping[str, float]
    excluded_stations: tuple[str, ...]
    improvement_upper: int | None = None
    improvement_relative: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "provenance": self.provenance,
            "pearson_r": self.pearson_r,
            "ndcg": dict(self.ndcg),
            "excluded_stations": list(self.excluded_stations),
            "improvement_upper": self.improvement_upper,
            "improvement_relative": self.improvement_relative,
        }


def evaluate(
    ranking: RankingTable,
    truth: Mapping[str, float],
    ks: Iterable[int | float | None],
    mode: str = MODE_GRADED,
    baseline: RankingTable | None = None,
) -> EvalReport:
    """Full evaluation of one ranking: Pearson r, NDCG at each k, and,
    when a baseline table is given, the improvement bounds of this ranking
    over the baseline with respect to the truth ranking."""
    excluded = tuple(s for s in ranking.stations() if s not in truth)
    ndcg_values = {k_label(k): ndcg(ranking, truth, k, mode) for k in ks}
    pearson = pearson_rank_vs_score(ranking, truth)
    upper: int | None = None
    relative: int | None = None
    if baseline is not None:
        scored = frozenset(truth)
        restricted_a = baseline.restrict(scored)
        restricted_b = ranking.restrict(scored)
        common = restricted_a.station_set() & restricted_b.station_set()
        truth_table = truth_ranking({s: truth[s] for s in common})
        upper, relative = ranking_improvement(
            restricted_a.restrict(common), restricted_b.restrict(common), truth_table
        )
    return EvalReport(
        provenance=ranking.provenance,
        pearson_r=pearson,
        ndcg=ndcg_values,
        excluded_stations=excluded,
        improvement_upper=upper,
        improvement_relative=relative,
    )
