"""Aggregation of daily motifs into station-level mobility networks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .ingest import PassengerDay
from .motifs import DailyMotif

Weight = int | float | Fraction

STRATEGY_CLASSIC = "classic"
STRATEGY_CLASSIC_UNDIRECTED = "classic-undirected"
STRATEGY_MOTIF_BASED = "motif-based"
STRATEGY_MOTIF_WISE = "motif-wise"
STRATEGY_DEBRUIJN = "debruijn"
STRATEGIES = (
    STRATEGY_CLASSIC,
    STRATEGY_CLASSIC_UNDIRECTED,
    STRATEGY_MOTIF_BASED,
    STRATEGY_MOTIF_WISE,
    STRATEGY_DEBRUIJN,
)


@dataclass(frozen=True)
class WeightedNetwork:
    """Station-level graph with non-negative edge weights.

    Absent pairs mean weight zero; (i, i) entries are forbidden. Undirected
    networks store each pair once under the ordered key (min(i,j), max(i,j)).
    Aggregation keeps weights exact (integers, or rationals for normalized
    motif-wise networks); conversion to float happens at solver entry.
    """

    directed: bool
    nodes: frozenset[str]
    weights: Mapping[tuple[str, str], Weight]

    def __post_init__(self):
        for (i, j), w in self.weights.items():
            if i == j:
                raise ValueError(f"self-loop weight on {i}")
            if w <= 0:
                raise ValueError(f"non-positive weight on ({i}, {j})")
            if not self.directed and i > j:
                raise ValueError(f"undirected weight keyed out of order: ({i}, {j})")
            if i not in self.nodes or j not in self.nodes:
                raise ValueError(f"edge endpoint outside node set: ({i}, {j})")

    def key(self, i: str, j: str) -> tuple[str, str]:
        if self.directed or i <= j:
            return (i, j)
        return (j, i)

    def weight(self, i: str, j: str) -> Weight:
        return self.weights.get(self.key(i, j), 0)

    def node_list(self) -> list[str]:
        return sorted(self.nodes)

    def total_weight(self) -> Weight:
        return sum(self.weights.values())

    def directed_edges(self) -> Iterable[tuple[str, str, Weight]]:
        """Edges as a directed view; undirected pairs appear in both directions."""
        for (i, j), w in self.weights.items():
            yield i, j, w
            if not self.directed:
                yield j, i, w


@dataclass(frozen=True)
class MemoryNetwork:
    """Second-order graph whose nodes are trips and edges connect trips
    ij -> jk that share the middle station."""

    memory_nodes: frozenset[tuple[str, str]]
    weights: Mapping[tuple[tuple[str, str], tuple[str, str]], int]

    def __post_init__(self):
        for (src, dst), w in self.weights.items():
            if src[1] != dst[0]:
                raise ValueError(f"disconnected memory edge {src} -> {dst}")
            if w <= 0:
                raise ValueError(f"non-positive weight on {src} -> {dst}")
            if src not in self.memory_nodes or dst not in self.memory_nodes:
                raise ValueError(f"memory edge endpoint outside node set: {src} -> {dst}")

    def node_list(self) -> list[tuple[str, str]]:
        return sorted(self.memory_nodes)

    def total_weight(self) -> int:
        return sum(self.weights.values())

    def stations(self) -> frozenset[str]:
        return frozenset(s for pair in self.memory_nodes for s in pair)


def _node_union(motifs: Iterable[DailyMotif], nodes: Iterable[str] | None) -> frozenset[str]:
    if nodes is not None:
        return frozenset(nodes)
    return frozenset(n for m in motifs for n in m.nodes)


def build_classic(
    motifs: list[DailyMotif], nodes: Iterable[str] | None = None
) -> WeightedNetwork:
    """Directed network whose weight (i, j) is the total trip count i -> j.

    Additive aggregation over motifs; equals direct aggregation of the raw
    OD pairs. Integer-valued.
    """
    weights: dict[tuple[str, str], int] = {}
    for motif in motifs:
        for pair, count in motif.edges.items():
            weights[pair] = weights.get(pair, 0) + count
    return WeightedNetwork(directed=True, nodes=_node_union(motifs, nodes), weights=weights)


def symmetrize(g: WeightedNetwork) -> WeightedNetwork:
    """Undirected counterpart with weight {i, j} = w(i,j) + w(j,i)."""
    if not g.directed:
        raise ValueError("symmetrize expects a directed network")
    weights: dict[tuple[str, str], Weight] = {}
    for (i, j), w in g.weights.items():
        key = (i, j) if i <= j else (j, i)
        weights[key] = weights.get(key, 0) + w
    return WeightedNetwork(directed=False, nodes=g.nodes, weights=weights)


def build_motif_based(
    motifs: list[DailyMotif], nodes: Iterable[str] | None = None
) -> WeightedNetwork:
    """Undirected network counting, per station pair, the motifs that
    contain both stations.

    Each motif is reorganized as a unit-weight complete graph over its
    visited stations and contributes exactly 1 per unordered pair, no
    matter how many trips it holds.
    """
    weights: dict[tuple[str, str], int] = {}
    for motif in motifs:
        members = sorted(motif.nodes)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                key = (members[a], members[b])
                weights[key] = weights.get(key, 0) + 1
    return WeightedNetwork(directed=False, nodes=_node_union(motifs, nodes), weights=weights)


def build_motif_wise(
    motifs: list[DailyMotif],
    weighting: str = "unit",
    nodes: Iterable[str] | None = None,
) -> WeightedNetwork:
    """Directed network allocating each motif's weight from its initial
    station straight to every other visited station.

    For a motif with initial station A, each non-initial node i with
    in-trip count s(i) > 0 receives an edge A -> i. Unit weighting adds
    s(i); normalized weighting adds s(i) / sum of s over non-initial nodes,
    so each motif contributes a total of exactly 1. Unit weights stay
    integers; normalized weights accumulate as exact rationals.
    """
    if weighting not in ("unit", "normalized"):
        raise ValueError(f"unknown weighting: {weighting!r}")
    weights: dict[tuple[str, str], Weight] = {}
    for motif in motifs:
        strengths = motif.in_strengths()
        initial = motif.initial
        arrivals = {
            node: s for node, s in strengths.items() if node != initial and s > 0
        }
        if not arrivals:
            continue
        denominator = sum(arrivals.values())
        for node in sorted(arrivals):
            if weighting == "unit":
                contribution: Weight = arrivals[node]
            else:
                contribution = Fraction(arrivals[node], denominator)
            key = (initial, node)
            weights[key] = weights.get(key, 0) + contribution
    return WeightedNetwork(directed=True, nodes=_node_union(motifs, nodes), weights=weights)


def build_debruijn(days: Iterable[PassengerDay]) -> MemoryNetwork:
    """Second-order de Bruijn graph over consecutive same-day trips.

    Every pair of time-consecutive trips (i -> j, j -> k) of one card adds
    1 to the edge ij -> jk. Days with a single trip are ignored entirely.
    Consecutive trips that do not share the middle station contribute
    their memory nodes but no edge.
    """
    memory_nodes: set[tuple[str, str]] = set()
    weights: dict[tuple[tuple[str, str], tuple[str, str]], int] = {}
    for day in days:
        if len(day.trips) < 2:
            continue
        memory_nodes.update(day.trips)
        for first, second in zip(day.trips, day.trips[1:]):
            if first[1] != second[0]:
                continue
            key = (first, second)
            weights[key] = weights.get(key, 0) + 1
    return MemoryNetwork(memory_nodes=frozenset(memory_nodes), weights=weights)
