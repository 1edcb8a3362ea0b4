"""Daily mobility motifs and their isomorphism classification."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping

from .ingest import PassengerDay

DEFAULT_NODE_CAP = 8


@dataclass(frozen=True)
class DailyMotif:
    """Directed weighted multigraph of one passenger's trips in one day.

    ``edges`` maps (origin, destination) to the number of trips taken on
    that pair; ``initial`` is the origin of the day's first trip.
    """

    card_id: str
    date: date
    initial: str
    nodes: frozenset[str]
    edges: Mapping[tuple[str, str], int]

    @property
    def trip_count(self) -> int:
        return sum(self.edges.values())

    def in_strengths(self) -> dict[str, int]:
        """Per-node count of trips arriving at the node within this motif."""
        strengths = dict.fromkeys(self.nodes, 0)
        for (_, dst), count in self.edges.items():
            strengths[dst] += count
        return strengths


@dataclass(frozen=True, order=True)
class CanonicalMotif:
    """Isomorphism-class key of a daily motif's unweighted directed graph.

    ``canonical_edges`` is the lexicographically minimal integer edge set
    over all relabelings of the nodes to 0..n-1. Motifs above the node cap
    collapse into one overflow sentinel class.
    """

    node_count: int
    canonical_edges: tuple[tuple[int, int], ...]
    overflow: bool = False

    @property
    def id(self) -> str:
        if self.overflow:
            return "overflow"
        encoded = ".".join(f"{a}>{b}" for a, b in self.canonical_edges)
        return f"n{self.node_count}.{encoded}"

    @property
    def edge_encoding(self) -> str:
        return ";".join(f"{a}>{b}" for a, b in self.canonical_edges)


OVERFLOW_CLASS = CanonicalMotif(node_count=0, canonical_edges=(), overflow=True)


def build_motif(day: PassengerDay) -> DailyMotif:
    """Build the daily motif of one passenger-day.

    The edge count of (i, j) equals the number of trips i -> j that day;
    the initial station is the origin of the first trip.
    """
    if not day.trips:
        raise ValueError("PassengerDay with no trips")
    edges: dict[tuple[str, str], int] = {}
    nodes: set[str] = set()
    for origin, destination in day.trips:
        if origin == destination:
            raise ValueError(f"self-loop trip at {origin} in {day.card_id}/{day.date}")
        nodes.add(origin)
        nodes.add(destination)
        edges[(origin, destination)] = edges.get((origin, destination), 0) + 1
    return DailyMotif(
        card_id=day.card_id,
        date=day.date,
        initial=day.trips[0][0],
        nodes=frozenset(nodes),
        edges=edges,
    )


@lru_cache(maxsize=65536)
def _minimal_relabeling(
    node_count: int, edges: frozenset[tuple[int, int]]
) -> tuple[tuple[int, int], ...]:
    # Exhaustive search over all node permutations; exact for small motifs.
    best: tuple[tuple[int, int], ...] | None = None
    for perm in permutations(range(node_count)):
        candidate = tuple(sorted((perm[a], perm[b]) for a, b in edges))
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return best


def canonical_form(motif: DailyMotif, node_cap: int = DEFAULT_NODE_CAP) -> CanonicalMotif:
    """Canonical isomorphism-class key of the motif's unweighted digraph.

    Edge multiplicities and the initial-station marker are ignored for
    classification. Two motifs map to the same key iff their unweighted
    directed graphs are isomorphic. Motifs with more than ``node_cap``
    nodes return the shared overflow sentinel.
    """
    ordered = sorted(motif.nodes)
    if len(ordered) > node_cap:
        return OVERFLOW_CLASS
    index = {node: i for i, node in enumerate(ordered)}
    edges = frozenset((index[a], index[b]) for a, b in motif.edges)
    return CanonicalMotif(
        node_count=len(ordered),
        canonical_edges=_minimal_relabeling(len(ordered), edges),
    )


def motif_class_counts(
    motifs: Iterable[DailyMotif], node_cap: int = DEFAULT_NODE_CAP
) -> dict[CanonicalMotif, int]:
    """Count motifs per canonical class; order-independent accumulation."""
    counts: dict[CanonicalMotif, int] = {}
    for motif in motifs:
        key = canonical_form(motif, node_cap)
        counts[key] = counts.get(key, 0) + 1
    return counts


def motif_distribution(
    motifs: list[DailyMotif], top_k: int, node_cap: int = DEFAULT_NODE_CAP
) -> list[tuple[CanonicalMotif, float]]:
    """Shares of the ``top_k`` most common canonical classes.

    Shares are class count over total motif count, so they sum to at most 1
    across the returned prefix. Ordering is by descending share with ties
    broken by the canonical encoding.
    """
    if not motifs:
        raise ValueError("motif_distribution of an empty corpus")
    counts = motif_class_counts(motifs, node_cap)
    total = len(motifs)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0].id))
    return [(cls, count / total) for cls, count in ranked[:top_k]]
