"""Node-importance measures on weighted mobility networks.

All solvers index nodes in sorted order and are deterministic for a fixed
configuration. Exact integer or rational edge weights are reduced to floats
only here, at solver entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Union

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ConfigurationError, ConvergenceError, SolverError
from .netbuild import MemoryNetwork, WeightedNetwork

Node = Union[str, tuple[str, str]]

MEASURE_PAGERANK = "pagerank"
MEASURE_EIGENVECTOR = "eigenvector"
MEASURE_CURRENTFLOW = "currentflow"
MEASURE_CLUSTERING = "clustering"
MEASURES = (MEASURE_PAGERANK, MEASURE_EIGENVECTOR, MEASURE_CURRENTFLOW, MEASURE_CLUSTERING)

# Above this component size, effective-resistance systems switch from a
# dense direct factorization to conjugate-gradient solves.
DENSE_COMPONENT_LIMIT = 2000
CG_RESIDUAL = 1e-10


@dataclass(frozen=True)
class SolverConfig:
    """Iteration parameters shared by PageRank and eigenvector solvers.

    ``tolerance`` bounds the L1 change of the score vector per iteration.
    """

    damping: float = 0.85
    tolerance: float = 1e-10
    max_iterations: int = 1000

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ConfigurationError(f"damping must lie in (0, 1), got {self.damping}")
        if self.tolerance <= 0.0:
            raise ConfigurationError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be at least 1")


@dataclass(frozen=True)
class ScoreVector:
    """Per-node scores of one measure plus solver metadata."""

    measure: str
    scores: Mapping[Node, float]
    iterations: int = 0
    residual: float = 0.0
    max_mass_error: float = 0.0


def _weight_matrix(g: WeightedNetwork | MemoryNetwork) -> tuple[list[Node], sp.csr_array]:
    """Sorted node list and the float weight matrix A[i, j] = w(i -> j).

    Undirected networks appear as symmetric matrices (bidirectional edges
    with equal weights).
    """
    if isinstance(g, MemoryNetwork):
        nodes: list[Node] = g.node_list()
        edge_iter = ((src, dst, w) for (src, dst), w in g.weights.items())
    else:
        nodes = g.node_list()
        edge_iter = g.directed_edges()
    if not nodes:
        raise ConfigurationError("empty network")
    index = {node: i for i, node in enumerate(nodes)}
    rows, cols, vals = [], [], []
    for i, j, w in edge_iter:
        rows.append(index[i])
        cols.append(index[j])
        vals.append(float(w))
    n = len(nodes)
    matrix = sp.csr_array(
        (np.asarray(vals), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
        shape=(n, n),
    )
    return nodes, matrix


def pagerank(
    g: WeightedNetwork | MemoryNetwork, cfg: SolverConfig = SolverConfig()
) -> ScoreVector:
    """Weighted PageRank by power iteration.

    Each node passes a damped share of its score to its out-neighbours in
    proportion to the edge weights; the remaining (1 - damping) mass is
    spread uniformly. Dangling nodes (zero out-strength) redistribute their
    mass uniformly over all nodes, so total mass stays 1 at every
    iteration. Convergence is declared when the L1 change of the score
    vector drops below the configured tolerance.
    """
    nodes, A = _weight_matrix(g)
    n = len(nodes)
    s = cfg.damping

    out_strength = np.asarray(A.sum(axis=1)).reshape(n)
    dangling = out_strength == 0.0
    inv_out = np.where(dangling, 0.0, 1.0 / np.where(dangling, 1.0, out_strength))
    # M[i, j] = w(j -> i) / out_strength(j): incoming-transition matrix.
    M = (A.T.multiply(inv_out)).tocsr()

    v = np.full(n, 1.0 / n)
    max_mass_error = 0.0
    for iteration in range(1, cfg.max_iterations + 1):
        dangling_mass = float(v[dangling].sum())
        new_v = s * (M @ v) + (s * dangling_mass + (1.0 - s)) / n
        max_mass_error = max(max_mass_error, abs(float(new_v.sum()) - 1.0))
        delta = float(np.abs(new_v - v).sum())
        v = new_v
        if delta < cfg.tolerance:
            scores = {node: float(v[i]) for i, node in enumerate(nodes)}
            return ScoreVector(
                measure=MEASURE_PAGERANK,
                scores=scores,
                iterations=iteration,
                residual=delta,
                max_mass_error=max_mass_error,
            )
    raise ConvergenceError(
        f"pagerank did not converge in {cfg.max_iterations} iterations "
        f"(last L1 change {delta:.3e})",
        iterations=cfg.max_iterations,
        residual=delta,
    )


def eigenvector_centrality(
    g: WeightedNetwork | MemoryNetwork, cfg: SolverConfig = SolverConfig()
) -> ScoreVector:
    """Principal-eigenvector centrality by power iteration.

    A node's score is fed by its in-edges, x_i proportional to
    sum_j w(j -> i) x_j, which reduces to the standard definition on
    undirected networks. Iteration runs on I + A to keep bipartite and
    periodic spectra from oscillating; the reported eigenpair is for A
    itself. The result has unit Euclidean norm and non-negative entries.
    """
    nodes, A = _weight_matrix(g)
    n = len(nodes)
    op = A.T.tocsr()

    x = np.full(n, 1.0 / math.sqrt(n))
    for iteration in range(1, cfg.max_iterations + 1):
        y = x + op @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            raise SolverError("eigenvector iteration collapsed to the zero vector")
        new_x = y / norm
        delta = float(np.abs(new_x - x).sum())
        x = new_x
        if delta < cfg.tolerance:
            lam = float(x @ (op @ x))
            residual = float(np.linalg.norm(op @ x - lam * x))
            # Sign convention: entry of the lexicographically smallest node
            # is non-negative (always holds for the non-negative iterates).
            if x[0] < 0.0:
                x = -x
            scores = {node: float(x[i]) for i, node in enumerate(nodes)}
            return ScoreVector(
                measure=MEASURE_EIGENVECTOR,
                scores=scores,
                iterations=iteration,
                residual=residual,
            )
    raise ConvergenceError(
        f"eigenvector centrality did not converge in {cfg.max_iterations} "
        f"iterations (last L1 change {delta:.3e})",
        iterations=cfg.max_iterations,
        residual=delta,
    )


def _components(g: WeightedNetwork) -> list[list[str]]:
    adjacency: dict[str, list[str]] = {node: [] for node in g.nodes}
    for (i, j) in g.weights:
        adjacency[i].append(j)
        adjacency[j].append(i)
    seen: set[str] = set()
    components = []
    for start in g.node_list():
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        component = []
        while stack:
            node = stack.pop()
            component.append(node)
            for neighbour in adjacency[node]:
                if neighbour not in seen:
                    seen.add(neighbour)
                    stack.append(neighbour)
        components.append(sorted(component))
    return components


def _grounded_inverse(L: np.ndarray | sp.csr_array, dense: bool) -> np.ndarray:
    """Inverse of the Laplacian with the last node grounded, zero-padded
    back to full size."""
    m = L.shape[0]
    if dense:
        Lg = np.asarray(L)[: m - 1, : m - 1]
        C = np.linalg.solve(Lg, np.eye(m - 1))
    else:
        Lg = L[: m - 1, : m - 1].tocsc()
        C = np.empty((m - 1, m - 1))
        basis = np.zeros(m - 1)
        for col in range(m - 1):
            basis[col] = 1.0
            solution, info = spla.cg(Lg, basis, rtol=0.0, atol=CG_RESIDUAL)
            if info != 0:
                raise SolverError(f"conjugate gradient failed on Laplacian column {col}")
            C[:, col] = solution
            basis[col] = 0.0
    padded = np.zeros((m, m))
    padded[: m - 1, : m - 1] = C
    return padded


def current_flow_closeness(
    g: WeightedNetwork, dense_limit: int = DENSE_COMPONENT_LIMIT
) -> ScoreVector:
    """Current-flow closeness with edge weights read as conductances.

    For node i in a connected component of size m, the score is
    (m - 1) / sum over j of the effective resistance between i and j,
    obtained from Laplacian solves (direct factorization up to
    ``dense_limit`` nodes, conjugate gradient above). Singleton components
    score 0 by convention.
    """
    if g.directed:
        raise ConfigurationError("current-flow closeness requires an undirected network")
    scores: dict[Node, float] = {}
    for component in _components(g):
        m = len(component)
        if m == 1:
            scores[component[0]] = 0.0
            continue
        index = {node: i for i, node in enumerate(component)}
        dense = m <= dense_limit
        L: np.ndarray | sp.lil_array
        if dense:
            L = np.zeros((m, m))
        else:
            L = sp.lil_array((m, m))
        for (i, j), w in g.weights.items():
            if i not in index:
                continue
            a, b, c = index[i], index[j], float(w)
            L[a, a] += c
            L[b, b] += c
            L[a, b] -= c
            L[b, a] -= c
        C = _grounded_inverse(L, dense)
        diagonal = np.diag(C)
        # sum over j of R_eff(i, j) with R(i, j) = C_ii + C_jj - 2 C_ij
        resistance_sums = m * diagonal + diagonal.sum() - 2.0 * C.sum(axis=1)
        for node, i in index.items():
            scores[node] = (m - 1) / float(resistance_sums[i])
    return ScoreVector(measure=MEASURE_CURRENTFLOW, scores=scores)


def weighted_clustering(g: WeightedNetwork) -> ScoreVector:
    """Weighted clustering coefficient normalized by the global maximum
    edge weight.

    c_i = sum over ordered neighbour pairs (j, k) with all three edges
    present of (w_ij w_ik w_jk)^(1/3), divided by k_i (k_i - 1) max(w),
    where k_i is the unweighted degree. Nodes of degree < 2 score 0.
    """
    if g.directed:
        raise ConfigurationError("clustering requires an undirected network")
    scores: dict[Node, float] = dict.fromkeys(g.nodes, 0.0)
    if not g.weights:
        return ScoreVector(measure=MEASURE_CLUSTERING, scores=scores)
    max_w = float(max(g.weights.values()))
    adjacency: dict[str, dict[str, float]] = {node: {} for node in g.nodes}
    for (i, j), w in g.weights.items():
        adjacency[i][j] = float(w)
        adjacency[j][i] = float(w)
    for node in g.nodes:
        neighbours = adjacency[node]
        degree = len(neighbours)
        if degree < 2:
            continue
        total = 0.0
        for j, k in combinations(sorted(neighbours), 2):
            w_jk = adjacency[j].get(k)
            if w_jk is None:
                continue
            total += 2.0 * (neighbours[j] * neighbours[k] * w_jk) ** (1.0 / 3.0)
        scores[node] = total / (degree * (degree - 1) * max_w)
    return ScoreVector(measure=MEASURE_CLUSTERING, scores=scores)


def project_memory_scores(
    ms: ScoreVector, stations: frozenset[str] | None = None
) -> ScoreVector:
    """Project memory-node scores onto stations by arrival mass.

    A station collects the scores of every memory node that ends at it.
    When a station universe is given, stations receiving no mass appear
    with score 0. PageRank projections are renormalized to sum 1 and
    eigenvector projections to unit Euclidean norm.
    """
    aggregated: dict[Node, float] = {}
    for node, value in ms.scores.items():
        if not isinstance(node, tuple):
            raise ConfigurationError("projection expects scores over memory nodes")
        arrival = node[1]
        aggregated[arrival] = aggregated.get(arrival, 0.0) + value
    if stations is not None:
        for station in stations:
            aggregated.setdefault(station, 0.0)
    if ms.measure == MEASURE_PAGERANK:
        total = sum(aggregated.values())
        if total > 0.0:
            aggregated = {k: v / total for k, v in aggregated.items()}
    elif ms.measure == MEASURE_EIGENVECTOR:
        norm = math.sqrt(sum(v * v for v in aggregated.values()))
        if norm > 0.0:
            aggregated = {k: v / norm for k, v in aggregated.items()}
    return ScoreVector(
        measure=ms.measure,
        scores=aggregated,
        iterations=ms.iterations,
        residual=ms.residual,
        max_mass_error=ms.max_mass_error,
    )
