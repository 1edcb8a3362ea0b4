"""Command-line pipeline: ingest, motifs, build, rank, eval, synth, compare."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .centrality import (
    MEASURE_CLUSTERING,
    MEASURE_CURRENTFLOW,
    MEASURE_EIGENVECTOR,
    MEASURE_PAGERANK,
    MEASURES,
    ScoreVector,
    SolverConfig,
    current_flow_closeness,
    eigenvector_centrality,
    pagerank,
    project_memory_scores,
    weighted_clustering,
)
from .errors import (
    ConfigurationError,
    DataFormatError,
    EvaluationError,
    MotifnetError,
    SolverError,
)
from .evaluation import EvalReport, RankingTable, evaluate, k_label, truth_ranking
from .ingest import (
    IngestConfig,
    ODRecord,
    PassengerDay,
    RejectedRow,
    Station,
    load_stations,
    parse_records,
    partition_by_day,
    truth_scores,
    write_reject_report,
)
from .motifs import (
    DEFAULT_NODE_CAP,
    DailyMotif,
    build_motif,
    motif_class_counts,
)
from .netbuild import (
    STRATEGIES,
    STRATEGY_CLASSIC,
    STRATEGY_CLASSIC_UNDIRECTED,
    STRATEGY_DEBRUIJN,
    STRATEGY_MOTIF_BASED,
    STRATEGY_MOTIF_WISE,
    MemoryNetwork,
    WeightedNetwork,
    build_classic,
    build_debruijn,
    build_motif_based,
    build_motif_wise,
    symmetrize,
)
from .synth import (
    DEFAULT_TEMPLATE_MIX,
    SynthConfig,
    generate,
    home_weights,
    make_station_ids,
    planted_importance,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_SOLVER = 3

DIRECTED_MEASURES = (MEASURE_PAGERANK, MEASURE_EIGENVECTOR)
UNDIRECTED_STRATEGIES = (STRATEGY_CLASSIC_UNDIRECTED, STRATEGY_MOTIF_BASED)

DEFAULT_KS = "5,10,30,inf"


def applicable_measures(strategy: str) -> tuple[str, ...]:
    if strategy in UNDIRECTED_STRATEGIES:
        return MEASURES
    return DIRECTED_MEASURES


def validate_pairing(strategy: str, measure: str) -> None:
    if strategy not in STRATEGIES:
        raise ConfigurationError(f"unknown strategy: {strategy!r}")
    if measure not in MEASURES:
        raise ConfigurationError(f"unknown measure: {measure!r}")
    if measure not in applicable_measures(strategy):
        raise ConfigurationError(
            f"measure {measure!r} requires an undirected network; "
            f"strategy {strategy!r} builds a directed one"
        )


# ---------------------------------------------------------------------------
# corpus loading and network construction


@dataclass(frozen=True)
class Corpus:
    stations: tuple[Station, ...]
    truth: dict[str, float]
    records: tuple[ODRecord, ...]
    rejects: tuple[RejectedRow, ...]
    days: tuple[PassengerDay, ...]
    motifs: tuple[DailyMotif, ...]
    observed: frozenset[str]


def _open_read(path: Path) -> TextIO:
    try:
        return open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc


def load_corpus(records_path: Path, stations_path: Path, day_filter: str = "all") -> Corpus:
    with _open_read(stations_path) as fh:
        stations = load_stations(fh)
    universe = frozenset(s.station_id for s in stations)
    config = IngestConfig(stations=universe, day_filter=day_filter)
    with _open_read(records_path) as fh:
        records, rejects = parse_records(fh, config)
    days = partition_by_day(records)
    motifs = tuple(build_motif(day) for day in days)
    observed = frozenset(
        station for rec in records for station in (rec.origin, rec.destination)
    )
    return Corpus(
        stations=tuple(stations),
        truth=truth_scores(stations),
        records=tuple(records),
        rejects=tuple(rejects),
        days=tuple(days),
        motifs=tuple(motifs),
        observed=observed,
    )


def build_network(
    strategy: str, corpus: Corpus, weighting: str = "unit"
) -> WeightedNetwork | MemoryNetwork:
    motifs = list(corpus.motifs)
    if strategy == STRATEGY_CLASSIC:
        return build_classic(motifs, corpus.observed)
    if strategy == STRATEGY_CLASSIC_UNDIRECTED:
        return symmetrize(build_classic(motifs, corpus.observed))
    if strategy == STRATEGY_MOTIF_BASED:
        return build_motif_based(motifs, corpus.observed)
    if strategy == STRATEGY_MOTIF_WISE:
        return build_motif_wise(motifs, weighting, corpus.observed)
    if strategy == STRATEGY_DEBRUIJN:
        return build_debruijn(corpus.days)
    raise ConfigurationError(f"unknown strategy: {strategy!r}")


def compute_scores(
    network: WeightedNetwork | MemoryNetwork,
    measure: str,
    solver: SolverConfig,
    stations: frozenset[str] | None = None,
) -> ScoreVector:
    """Run one measure on one network; memory networks are solved on their
    memory nodes and projected back to stations by arrival mass."""
    if isinstance(network, MemoryNetwork):
        if measure == MEASURE_PAGERANK:
            return project_memory_scores(pagerank(network, solver), stations)
        if measure == MEASURE_EIGENVECTOR:
            return project_memory_scores(eigenvector_centrality(network, solver), stations)
        raise ConfigurationError(f"measure {measure!r} is not defined on memory networks")
    if measure == MEASURE_PAGERANK:
        return pagerank(network, solver)
    if measure == MEASURE_EIGENVECTOR:
        return eigenvector_centrality(network, solver)
    if measure == MEASURE_CURRENTFLOW:
        return current_flow_closeness(network)
    if measure == MEASURE_CLUSTERING:
        return weighted_clustering(network)
    raise ConfigurationError(f"unknown measure: {measure!r}")


def strategy_label(strategy: str, weighting: str) -> str:
    if strategy == STRATEGY_MOTIF_WISE:
        return f"{strategy}-{weighting}"
    return strategy


# ---------------------------------------------------------------------------
# file formats


def _format_weight(w) -> str:
    if isinstance(w, bool):
        raise TypeError("bool weight")
    if isinstance(w, int):
        return str(w)
    if isinstance(w, Fraction):
        return repr(float(w))
    return repr(float(w))


def write_edge_list(net: WeightedNetwork, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("src", "dst", "weight"))
        for (src, dst), w in sorted(net.weights.items()):
            writer.writerow((src, dst, _format_weight(w)))


def write_memory_edge_list(net: MemoryNetwork, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("src_i", "src_j", "dst_j", "dst_k", "weight"))
        for (src, dst), w in sorted(net.weights.items()):
            writer.writerow((src[0], src[1], dst[0], dst[1], _format_weight(w)))


def write_network(net: WeightedNetwork | MemoryNetwork, path: Path) -> None:
    if isinstance(net, MemoryNetwork):
        write_memory_edge_list(net, path)
    else:
        write_edge_list(net, path)


def write_ranking_csv(table: RankingTable, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("station_id", "score", "rank"))
        for station, score, rank in table.entries:
            writer.writerow((station, repr(score), rank))


def read_ranking_csv(path: Path) -> RankingTable:
    with _open_read(path) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != ("station_id", "score", "rank"):
            raise DataFormatError(f"{path}: expected header station_id,score,rank")
        entries = []
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise DataFormatError(f"{path}: malformed ranking row {row!r}")
            entries.append((row[0], float(row[1]), int(row[2])))
    return RankingTable(provenance=path.stem, entries=tuple(entries))


def write_motif_distribution_csv(
    motifs: Sequence[DailyMotif], path: Path, top_k: int, node_cap: int
) -> None:
    counts = motif_class_counts(list(motifs), node_cap)
    total = sum(counts.values())
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0].id))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("canonical_id", "node_count", "edge_encoding", "count", "share"))
        for cls, count in ranked[:top_k]:
            node_count = "" if cls.overflow else cls.node_count
            encoding = "" if cls.overflow else cls.edge_encoding
            writer.writerow((cls.id, node_count, encoding, count, repr(count / total)))


def write_records_csv(records: Iterable[ODRecord], path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("card_id", "depart_time", "origin", "destination"))
        for rec in records:
            writer.writerow(
                (rec.card_id, rec.depart_time.isoformat(timespec="seconds"),
                 rec.origin, rec.destination)
            )


def write_stations_csv(truth: dict[str, float], path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("station_id", "name", "ground_truth_score"))
        for station in sorted(truth):
            writer.writerow((station, station, repr(float(truth[station]))))


def write_report_json(report: EvalReport, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_json_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")


def parse_k_list(text: str) -> tuple[int | None, ...]:
    ks: list[int | None] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token in ("inf", "all"):
            ks.append(None)
            continue
        try:
            value = int(token)
        except ValueError:
            raise ConfigurationError(f"bad k value: {token!r}") from None
        if value < 1:
            raise ConfigurationError(f"k must be positive: {value}")
        ks.append(value)
    if not ks:
        raise ConfigurationError("empty k list")
    return tuple(ks)


# ---------------------------------------------------------------------------
# compare pipeline


@dataclass(frozen=True)
class PipelineConfig:
    """Configuration of the one-shot cross-strategy comparison."""

    records_path: Path
    stations_path: Path
    out_dir: Path
    strategies: tuple[str, ...]
    measures: tuple[str, ...] | None = None  # None selects per-strategy measures
    ks: tuple[int | None, ...] = (5, 10, 30, None)
    mode: str = "graded"
    weighting: str = "unit"
    day_filter: str = "all"
    solver: SolverConfig = field(default_factory=SolverConfig)
    threads: int = 1
    motif_top_k: int = 15
    motif_node_cap: int = DEFAULT_NODE_CAP

    def validate(self) -> None:
        if len(self.strategies) < 2:
            raise ConfigurationError("compare needs at least two strategies")
        if len(set(self.strategies)) != len(self.strategies):
            raise ConfigurationError("duplicate strategies in compare list")
        for strategy in self.strategies:
            if strategy not in STRATEGIES:
                raise ConfigurationError(f"unknown strategy: {strategy!r}")
        if self.measures is not None:
            for strategy in self.strategies:
                for measure in self.measures:
                    validate_pairing(strategy, measure)
        if self.mode not in ("graded", "binary"):
            raise ConfigurationError(f"unknown NDCG mode: {self.mode!r}")
        if self.weighting not in ("unit", "normalized"):
            raise ConfigurationError(f"unknown weighting: {self.weighting!r}")
        if self.threads < 1:
            raise ConfigurationError("threads must be at least 1")


def _grid(cfg: PipelineConfig) -> list[tuple[str, str]]:
    cells = []
    for strategy in cfg.strategies:
        measures = cfg.measures if cfg.measures is not None else applicable_measures(strategy)
        for measure in measures:
            cells.append((strategy, measure))
    return cells


def _clamped_ks(ks: tuple[int | None, ...], count: int) -> list[int | None]:
    # Requested depths beyond the evaluable station count fall back to the
    # full list; the library itself treats oversized k as an error.
    return [None if k is None else min(k, count) for k in ks]


def run_compare(cfg: PipelineConfig) -> dict:
    """Run every strategy x measure cell, rank, evaluate against ground
    truth, and emit rankings, reports, a metric matrix, and improvement
    bounds against the first (baseline) strategy.

    Solver or evaluation failures in one cell are recorded as error markers
    in the matrix without aborting the remaining cells. Identical inputs
    and configuration produce byte-identical outputs.
    """
    cfg.validate()
    corpus = load_corpus(cfg.records_path, cfg.stations_path, cfg.day_filter)
    if not corpus.motifs:
        raise DataFormatError("no accepted trips in the input corpus")
    if not corpus.truth:
        raise DataFormatError("no stations carry ground-truth scores")

    out = cfg.out_dir
    out.mkdir(parents=True, exist_ok=True)
    (out / "rankings").mkdir(exist_ok=True)
    (out / "reports").mkdir(exist_ok=True)
    (out / "networks").mkdir(exist_ok=True)

    with open(out / "rejects.csv", "w", newline="", encoding="utf-8") as fh:
        write_reject_report(corpus.rejects, fh)
    write_motif_distribution_csv(
        corpus.motifs, out / "motifs.csv", cfg.motif_top_k, cfg.motif_node_cap
    )

    networks: dict[str, WeightedNetwork | MemoryNetwork] = {}
    for strategy in cfg.strategies:
        network = build_network(strategy, corpus, cfg.weighting)
        networks[strategy] = network
        write_network(network, out / "networks" / f"{strategy_label(strategy, cfg.weighting)}.csv")

    cells = _grid(cfg)

    def solve(cell: tuple[str, str]):
        strategy, measure = cell
        scores = compute_scores(networks[strategy], measure, cfg.solver, corpus.observed)
        label = strategy_label(strategy, cfg.weighting)
        return RankingTable.from_scores(dict(scores.scores), provenance=f"{label}+{measure}")

    results: dict[tuple[str, str], tuple[str, RankingTable | MotifnetError]] = {}
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            futures = {cell: pool.submit(solve, cell) for cell in cells}
        for cell, future in futures.items():
            try:
                results[cell] = ("ok", future.result())
            except MotifnetError as exc:
                results[cell] = ("error", exc)
    else:
        for cell in cells:
            try:
                results[cell] = ("ok", solve(cell))
            except MotifnetError as exc:
                results[cell] = ("error", exc)

    evaluable = len(set(corpus.observed) & set(corpus.truth))
    ks_effective = _clamped_ks(cfg.ks, evaluable)
    requested_labels = [k_label(k) for k in cfg.ks]

    baseline_strategy = cfg.strategies[0]
    matrix_rows: list[dict[str, str]] = []
    improvement_rows: list[dict[str, str]] = []
    reports: dict[tuple[str, str], EvalReport] = {}

    for cell in cells:
        strategy, measure = cell
        label = strategy_label(strategy, cfg.weighting)
        status, payload = results[cell]
        row = {"strategy": label, "measure": measure, "status": status}
        if status == "error":
            row["status"] = f"error:{type(payload).__name__}"
            for col in ["pearson_r"] + [f"ndcg_{lbl}" for lbl in requested_labels]:
                row[col] = ""
            matrix_rows.append(row)
            continue
        table = payload
        write_ranking_csv(table, out / "rankings" / f"{label}__{measure}.csv")
        baseline_table: RankingTable | None = None
        if strategy != baseline_strategy:
            base_status, base_payload = results.get((baseline_strategy, measure), ("missing", None))
            if base_status == "ok":
                baseline_table = base_payload
        try:
            report = evaluate(
                table, corpus.truth, ks_effective, cfg.mode, baseline=baseline_table
            )
        except EvaluationError as exc:
            row["status"] = f"error:{type(exc).__name__}"
            for col in ["pearson_r"] + [f"ndcg_{lbl}" for lbl in requested_labels]:
                row[col] = ""
            matrix_rows.append(row)
            continue
        # Re-key NDCG values by the requested depths (clamping may merge them).
        actual_labels = [k_label(k) for k in ks_effective]
        ndcg_by_requested = {
            requested: report.ndcg[actual]
            for requested, actual in zip(requested_labels, actual_labels)
        }
        report = EvalReport(
            provenance=report.provenance,
            pearson_r=report.pearson_r,
            ndcg=ndcg_by_requested,
            excluded_stations=report.excluded_stations,
            improvement_upper=report.improvement_upper,
            improvement_relative=report.improvement_relative,
        )
        reports[cell] = report
        write_report_json(report, out / "reports" / f"{label}__{measure}.json")
        row["pearson_r"] = repr(report.pearson_r)
        for lbl in requested_labels:
            row[f"ndcg_{lbl}"] = repr(report.ndcg[lbl])
        matrix_rows.append(row)
        if report.improvement_upper is not None:
            improvement_rows.append(
                {
                    "measure": measure,
                    "baseline": strategy_label(baseline_strategy, cfg.weighting),
                    "strategy": label,
                    "upper": str(report.improvement_upper),
                    "relative": str(report.improvement_relative),
                }
            )

    matrix_columns = ["strategy", "measure", "status", "pearson_r"] + [
        f"ndcg_{lbl}" for lbl in requested_labels
    ]
    with open(out / "matrix.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=matrix_columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(matrix_rows)
    with open(out / "improvements.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh,
            fieldnames=["measure", "baseline", "strategy", "upper", "relative"],
            lineterminator="\n",
        )
        writer.writeheader()
        writer.writerows(improvement_rows)

    return {
        "cells": {f"{s}|{m}": results[(s, m)][0] for (s, m) in cells},
        "matrix": str(out / "matrix.csv"),
        "improvements": str(out / "improvements.csv"),
        "evaluable_stations": evaluable,
    }


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_ingest(args) -> int:
    corpus = load_corpus(args.records, args.stations, args.day_filter)
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    write_records_csv(corpus.records, out / "accepted.csv")
    with open(out / "rejects.csv", "w", newline="", encoding="utf-8") as fh:
        write_reject_report(corpus.rejects, fh)
    summary = {
        "accepted": len(corpus.records),
        "rejected": len(corpus.rejects),
        "passenger_days": len(corpus.days),
    }
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


def _cmd_motifs(args) -> int:
    corpus = load_corpus(args.records, args.stations, args.day_filter)
    if not corpus.motifs:
        raise DataFormatError("no accepted trips in the input corpus")
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    path = args.out if args.out else out / "motifs.csv"
    write_motif_distribution_csv(corpus.motifs, path, args.top_k, args.node_cap)
    print(path)
    return EXIT_OK


def _cmd_build(args) -> int:
    corpus = load_corpus(args.records, args.stations, args.day_filter)
    if not corpus.motifs:
        raise DataFormatError("no accepted trips in the input corpus")
    network = build_network(args.strategy, corpus, args.weighting)
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    label = strategy_label(args.strategy, args.weighting)
    path = args.out if args.out else out / f"network_{label}.csv"
    write_network(network, path)
    print(path)
    return EXIT_OK


def _cmd_rank(args) -> int:
    validate_pairing(args.strategy, args.measure)
    corpus = load_corpus(args.records, args.stations, args.day_filter)
    if not corpus.motifs:
        raise DataFormatError("no accepted trips in the input corpus")
    solver = SolverConfig(
        damping=args.damping, tolerance=args.tol, max_iterations=args.max_iter
    )
    network = build_network(args.strategy, corpus, args.weighting)
    scores = compute_scores(network, args.measure, solver, corpus.observed)
    label = strategy_label(args.strategy, args.weighting)
    table = RankingTable.from_scores(dict(scores.scores), provenance=f"{label}+{args.measure}")
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    path = args.out if args.out else out / f"ranking_{label}__{args.measure}.csv"
    write_ranking_csv(table, path)
    print(path)
    return EXIT_OK


def _cmd_eval(args) -> int:
    with _open_read(args.truth) as fh:
        stations = load_stations(fh)
    truth = truth_scores(stations)
    if not truth:
        raise DataFormatError("no stations carry ground-truth scores")
    ks = parse_k_list(args.k)
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    labels = [k_label(k) for k in ks]
    for ranking_path in args.ranking:
        table = read_ranking_csv(ranking_path)
        evaluable = len(set(table.stations()) & set(truth))
        ks_effective = _clamped_ks(ks, evaluable)
        report = evaluate(table, truth, ks_effective, args.mode)
        actual = [k_label(k) for k in ks_effective]
        renamed = {req: report.ndcg[act] for req, act in zip(labels, actual)}
        report = EvalReport(
            provenance=report.provenance,
            pearson_r=report.pearson_r,
            ndcg=renamed,
            excluded_stations=report.excluded_stations,
        )
        write_report_json(report, out / f"report_{ranking_path.stem}.json")
        row = {"ranking": ranking_path.stem, "pearson_r": repr(report.pearson_r)}
        row.update({f"ndcg_{lbl}": repr(report.ndcg[lbl]) for lbl in labels})
        rows.append(row)
    columns = ["ranking", "pearson_r"] + [f"ndcg_{lbl}" for lbl in labels]
    with open(out / "eval_matrix.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    print(out / "eval_matrix.csv")
    return EXIT_OK


def _parse_mix(text: str) -> dict[str, float]:
    mix: dict[str, float] = {}
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        name, sep, raw = token.partition("=")
        if not sep:
            raise ConfigurationError(f"bad template mix entry: {token!r}")
        try:
            mix[name.strip()] = float(raw)
        except ValueError:
            raise ConfigurationError(f"bad template probability: {token!r}") from None
    if not mix:
        raise ConfigurationError("empty template mix")
    return mix


def _cmd_synth(args) -> int:
    station_ids = make_station_ids(args.stations)
    importance = planted_importance(station_ids, args.importance, args.seed)
    homes = home_weights(importance, args.home_weight, args.seed)
    mix = _parse_mix(args.mix) if args.mix else dict(DEFAULT_TEMPLATE_MIX)
    cfg = SynthConfig(
        passenger_count=args.passengers,
        days=args.days,
        seed=args.seed,
        importance=importance,
        home_weight=homes,
        template_mix=mix,
    )
    records, truth = generate(cfg)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.truth.parent.mkdir(parents=True, exist_ok=True)
    write_records_csv(records, args.out)
    write_stations_csv(truth, args.truth)
    print(json.dumps({"records": len(records), "stations": len(truth)}, sort_keys=True))
    return EXIT_OK


def _cmd_compare(args) -> int:
    measures: tuple[str, ...] | None
    if args.measures.strip() == "auto":
        measures = None
    else:
        measures = tuple(m.strip() for m in args.measures.split(",") if m.strip())
    cfg = PipelineConfig(
        records_path=args.records,
        stations_path=args.stations,
        out_dir=args.out_dir,
        strategies=tuple(s.strip() for s in args.strategies.split(",") if s.strip()),
        measures=measures,
        ks=parse_k_list(args.k),
        mode=args.mode,
        weighting=args.weighting,
        day_filter=args.day_filter,
        solver=SolverConfig(
            damping=args.damping, tolerance=args.tol, max_iterations=args.max_iter
        ),
        threads=args.threads,
    )
    summary = run_compare(cfg)
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="global random seed")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for grids")
    parser.add_argument(
        "--out-dir", type=Path, default=Path("out"), help="output directory"
    )


def _add_corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--records", type=Path, required=True, help="trip records CSV")
    parser.add_argument("--stations", type=Path, required=True, help="station universe CSV")
    parser.add_argument(
        "--day-filter", choices=("all", "weekdays", "weekends"), default="all"
    )


def _add_solver_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--damping", type=float, default=0.85)
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--max-iter", type=int, default=1000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motifnet",
        description="Daily mobility motifs, motif-level networks, and station rankings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse and clean trip records")
    _add_common(p)
    _add_corpus_args(p)
    p.set_defaults(handler=_cmd_ingest)

    p = sub.add_parser("motifs", help="motif class distribution")
    _add_common(p)
    _add_corpus_args(p)
    p.add_argument("--top-k", type=int, default=15)
    p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(handler=_cmd_motifs)

    p = sub.add_parser("build", help="build one mobility network")
    _add_common(p)
    _add_corpus_args(p)
    p.add_argument("--strategy", choices=STRATEGIES, required=True)
    p.add_argument("--weighting", choices=("unit", "normalized"), default="unit")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("rank", help="rank stations with one measure")
    _add_common(p)
    _add_corpus_args(p)
    _add_solver_args(p)
    p.add_argument("--strategy", choices=STRATEGIES, required=True)
    p.add_argument("--weighting", choices=("unit", "normalized"), default="unit")
    p.add_argument("--measure", choices=MEASURES, required=True)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(handler=_cmd_rank)

    p = sub.add_parser("eval", help="score rankings against ground truth")
    _add_common(p)
    p.add_argument("--ranking", type=Path, action="append", required=True)
    p.add_argument("--truth", type=Path, required=True)
    p.add_argument("--k", default=DEFAULT_KS)
    p.add_argument("--mode", choices=("graded", "binary"), default="graded")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("synth", help="generate a planted-truth corpus")
    _add_common(p)
    p.add_argument("--stations", type=int, required=True)
    p.add_argument("--passengers", type=int, required=True)
    p.add_argument("--days", type=int, default=5)
    p.add_argument("--importance", default="lognormal:1.0")
    p.add_argument("--home-weight", default="uniform")
    p.add_argument("--mix", default=None, help="template=prob,... (default mix)")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--truth", type=Path, required=True)
    p.set_defaults(handler=_cmd_synth)

    p = sub.add_parser("compare", help="full strategy x measure comparison")
    _add_common(p)
    _add_corpus_args(p)
    _add_solver_args(p)
    p.add_argument("--strategies", required=True, help="comma-separated strategy list")
    p.add_argument("--measures", default="auto", help="comma-separated or 'auto'")
    p.add_argument("--k", default=DEFAULT_KS)
    p.add_argument("--mode", choices=("graded", "binary"), default="graded")
    p.add_argument("--weighting", choices=("unit", "normalized"), default="unit")
    p.set_defaults(handler=_cmd_compare)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 0
        return EXIT_OK if code == 0 else EXIT_CONFIG
    try:
        return args.handler(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataFormatError, EvaluationError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
