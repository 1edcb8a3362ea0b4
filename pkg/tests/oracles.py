"""Independent reference computations used to check the library.

Everything here deliberately takes a different route than the package:
dense linear solves instead of power iteration, pseudo-inverse Laplacians
instead of grounded factorizations, brute-force permutation search instead
of canonical labeling.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from motifnet.netbuild import MemoryNetwork, WeightedNetwork


def node_order(g):
    return g.node_list()


def weight_array(g) -> tuple[list, np.ndarray]:
    """Dense A[i, j] = w(i -> j) over sorted nodes."""
    if isinstance(g, MemoryNetwork):
        nodes = g.node_list()
        items = list(g.weights.items())
        edges = [(src, dst, w) for (src, dst), w in items]
    else:
        nodes = g.node_list()
        edges = list(g.directed_edges())
    index = {node: i for i, node in enumerate(nodes)}
    A = np.zeros((len(nodes), len(nodes)))
    for i, j, w in edges:
        A[index[i], index[j]] += float(w)
    return nodes, A


def dense_pagerank(g, damping: float = 0.85) -> dict:
    """Exact PageRank: solve (I - s P^T) x = (1 - s)/n, with dangling rows
    replaced by the uniform distribution."""
    nodes, A = weight_array(g)
    n = len(nodes)
    out = A.sum(axis=1)
    P = np.where(out[:, None] > 0, A / np.where(out[:, None] > 0, out[:, None], 1.0), 1.0 / n)
    x = np.linalg.solve(np.eye(n) - damping * P.T, np.full(n, (1.0 - damping) / n))
    return dict(zip(nodes, x))


def dense_eigenvector(g) -> dict:
    """Dominant eigenvector of the in-edge matrix via a full eigendecomposition,
    normalized to unit Euclidean norm with non-negative entries."""
    nodes, A = weight_array(g)
    M = A.T
    if np.allclose(M, M.T):
        values, vectors = np.linalg.eigh(M)
        lead = int(np.argmax(values))
    else:
        values, vectors = np.linalg.eig(M)
        lead = int(np.argmax(values.real - 1e3 * np.abs(values.imag)))
    vector = np.real(vectors[:, lead])
    vector = vector / np.linalg.norm(vector)
    if vector.sum() < 0:
        vector = -vector
    return dict(zip(nodes, np.abs(vector)))


def pinv_current_flow_closeness(g: WeightedNetwork) -> dict:
    """Closeness from the Moore-Penrose pseudo-inverse of each component's
    Laplacian."""
    nodes, A = weight_array(g)
    index = {node: i for i, node in enumerate(nodes)}
    # connected components by label propagation on the dense matrix
    labels = list(range(len(nodes)))
    changed = True
    while changed:
        changed = False
        for i in range(len(nodes)):
            for j in range(len(nodes)):
                if A[i, j] > 0 and labels[j] != labels[i]:
                    low = min(labels[i], labels[j])
                    labels[i] = labels[j] = low
                    changed = True
    scores = {}
    for label in sorted(set(labels)):
        members = [i for i in range(len(nodes)) if labels[i] == label]
        m = len(members)
        if m == 1:
            scores[nodes[members[0]]] = 0.0
            continue
        sub = A[np.ix_(members, members)]
        L = np.diag(sub.sum(axis=1)) - sub
        Li = np.linalg.pinv(L)
        for a, i in enumerate(members):
            total = sum(
                Li[a, a] + Li[b, b] - 2.0 * Li[a, b] for b in range(m) if b != a
            )
            scores[nodes[i]] = (m - 1) / total
    return scores


def clustering_by_enumeration(g: WeightedNetwork) -> dict:
    """Weighted clustering coefficient by a direct triple loop over the
    formula, independent of the adjacency-dict implementation."""
    nodes, A = weight_array(g)
    n = len(nodes)
    max_w = A.max()
    scores = {}
    for i in range(n):
        neighbours = [j for j in range(n) if A[i, j] > 0]
        k = len(neighbours)
        if k < 2 or max_w == 0:
            scores[nodes[i]] = 0.0
            continue
        total = 0.0
        for j in neighbours:
            for l in neighbours:
                if j == l or A[j, l] == 0:
                    continue
                total += (A[i, j] * A[i, l] * A[j, l]) ** (1.0 / 3.0)
        scores[nodes[i]] = total / (k * (k - 1) * max_w)
    return scores


def brute_force_isomorphic(
    n_a: int, edges_a: frozenset, n_b: int, edges_b: frozenset
) -> bool:
    if n_a != n_b or len(edges_a) != len(edges_b):
        return False
    for perm in permutations(range(n_a)):
        if {(perm[u], perm[v]) for u, v in edges_a} == set(edges_b):
            return True
    return False


def random_weighted_network(
    seed: int,
    n: int,
    directed: bool,
    extra_edges: int,
    dangling: int = 0,
    integer_weights: bool = False,
) -> WeightedNetwork:
    """Seeded random connected test network.

    Directed networks start from a Hamiltonian cycle (strong connectivity),
    undirected ones from a random spanning tree; ``extra_edges`` random
    pairs are added on top. ``dangling`` removes all out-edges of that many
    nodes (directed only), producing zero out-strength nodes.
    """
    rng = np.random.default_rng(seed)
    names = [f"n{i:03d}" for i in range(n)]
    weights: dict[tuple[str, str], float | int] = {}

    def put(i: int, j: int) -> None:
        if i == j:
            return
        w = int(rng.integers(1, 10)) if integer_weights else float(rng.uniform(0.2, 5.0))
        if directed:
            key = (names[i], names[j])
        else:
            a, b = sorted((names[i], names[j]))
            key = (a, b)
        weights[key] = weights.get(key, 0) + w

    if directed:
        for i in range(n):
            put(i, (i + 1) % n)
    else:
        order = rng.permutation(n)
        for pos in range(1, n):
            attach = int(rng.integers(0, pos))
            put(int(order[attach]), int(order[pos]))
    for _ in range(extra_edges):
        i, j = rng.integers(0, n, size=2)
        put(int(i), int(j))
    if directed and dangling:
        drop = set(names[:dangling])
        weights = {k: w for k, w in weights.items() if k[0] not in drop}
    return WeightedNetwork(directed=directed, nodes=frozenset(names), weights=weights)
