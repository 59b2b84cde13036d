"""
Builders for the extremal graph families of paths and linear forests. Every builder
checks the edge count of its result against the closed form it realizes; builders
that promise freeness also run the detector and raise
:class:`~pathex.errors.CertificationError` when the promise does not hold.
"""
import logging
from typing import Dict, List, Optional

from .canonical import canonical_graph6
from .detector import SearchBudget, free_check
from .errors import CapacityError, CertificationError, DomainError
from .formulas import (
    PathForest,
    binom2,
    bracket_nml,
    bracket_s,
    ex_2p7,
)
from .graphcore import (
    MAX_VERTICES,
    Graph,
    complete,
    disjoint_union,
    empty_graph,
    join,
)

logger = logging.getLogger("pathex.constructions")

#: The forbidden forest of the 2P7 problem
TWO_P7 = PathForest.of(7, 7)


def _check_capacity(n: int) -> None:
    if n > MAX_VERTICES:
        raise CapacityError(f"graph on {n} vertices exceeds capacity {MAX_VERTICES}")
    if n < 0:
        raise DomainError(f"vertex count must be non-negative: {n}", "n >= 0")


def _expect_edges(graph: Graph, expected: int, family: str) -> Graph:
    actual = graph.edge_count()
    if actual != expected:
        raise CertificationError(
            f"{family} on {graph.n} vertices has {actual} edges, expected {expected}"
        )
    return graph


def certify(
    graph: Graph,
    forest: PathForest,
    expected_edges: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> Graph:
    """
    Check that ``graph`` has the promised edge count and contains no copy of
    ``forest``.

    :returns: ``graph`` unchanged
    :raises CertificationError: if either check fails
    """
    if expected_edges is not None:
        _expect_edges(graph, expected_edges, "construction")

    certificate = free_check(graph, forest, budget)
    if not certificate.free:
        assert certificate.witness is not None
        raise CertificationError(
            f"construction {graph} contains {forest}: "
            f"{' / '.join(certificate.witness.to_lines())}"
        )

    logger.debug("%s certified %s-free in %d nodes", graph, forest, certificate.nodes)
    return graph


def dedup(graphs: List[Graph]) -> List[Graph]:
    """
    Drop isomorphic duplicates, keeping the first graph of each class.
    """
    seen: Dict[str, Graph] = {}
    for graph in graphs:
        seen.setdefault(canonical_graph6(graph), graph)
    return list(seen.values())


def extremal_path_cliques(n: int, k: int) -> Graph:
    """
    :returns: ``t K_{k-1} ∪ K_r`` with ``n = t(k-1) + r`` and ``0 <= r < k-1``, a
        ``P_k``-free graph with ``[n, k, k]`` edges
    """
    if k < 3:
        raise DomainError(f"path order must be at least 3, got {k}", "k >= 3")
    _check_capacity(n)

    t, r = divmod(n, k - 1)
    parts = [complete(k - 1)] * t + [complete(r)]
    graph = disjoint_union(*parts)
    return _expect_edges(graph, bracket_nml(n, k, k), "tK_{k-1} ∪ K_r")


def extremal_path_special(n: int, k: int, s: int) -> Graph:
    """
    :returns: ``(t-s-1) K_{k-1} ∪ (K_{(k-2)/2} + complement(K_{k/2 + s(k-1) + r}))``,
        the second extremal family for ``P_k``, where ``n = t(k-1) + r``
    :raises DomainError: unless ``k`` is even, ``t > 0``, ``r`` is ``k/2`` or
        ``(k-2)/2`` and ``0 <= s < t``
    """
    if k % 2:
        raise DomainError(f"the special family needs an even k, got {k}", "k even")
    if k < 4:
        raise DomainError(f"the special family needs k >= 4, got {k}", "k >= 4")
    _check_capacity(n)

    t, r = divmod(n, k - 1)
    if t <= 0:
        raise DomainError(f"n={n} leaves no full block of {k - 1} vertices", "t > 0")
    if r not in (k // 2, (k - 2) // 2):
        raise DomainError(
            f"remainder {r} of n={n} is neither {k // 2} nor {(k - 2) // 2}",
            "r = k/2 or r = (k-2)/2",
        )
    if not 0 <= s < t:
        raise DomainError(f"s={s} outside 0..{t - 1}", "0 <= s < t")

    core = join(complete((k - 2) // 2), empty_graph(k // 2 + s * (k - 1) + r))
    parts = [complete(k - 1)] * (t - s - 1) + [core]
    return _expect_edges(disjoint_union(*parts), bracket_nml(n, k, k), "special family")


def extremal_path_family(n: int, k: int) -> List[Graph]:
    """
    :returns: every member of both extremal families for ``P_k`` on ``n`` vertices,
        isomorphic duplicates removed; the clique union comes first
    """
    graphs = [extremal_path_cliques(n, k)]
    t, r = divmod(n, k - 1)
    if k % 2 == 0 and k >= 4 and t > 0 and r in (k // 2, (k - 2) // 2):
        graphs.extend(extremal_path_special(n, k, s) for s in range(t))
    return dedup(graphs)


def _check_kopylov(n: int, k: int) -> None:
    if k < 4:
        raise DomainError(f"connected path families need k >= 4, got {k}", "k >= 4")
    if n < k:
        raise DomainError(f"connected path families need n >= k, got n={n}", "n >= k")
    _check_capacity(n)


def kopylov_A(n: int, k: int) -> Graph:
    """
    :returns: ``(K_{k-3} ∪ complement(K_{n-k+2})) + K_1``, connected and ``P_k``-free
        with ``C(k-2, 2) + (n-k+2)`` edges
    """
    _check_kopylov(n, k)
    graph = join(disjoint_union(complete(k - 3), empty_graph(n - k + 2)), complete(1))
    return certify(graph, PathForest.of(k), binom2(k - 2) + n - k + 2)


def kopylov_B(n: int, k: int) -> Graph:
    """
    :returns: ``(K_{1+c} ∪ complement(K_{n-floor((k+1)/2)})) + K_{floor(k/2)-1}`` with
        ``c = k mod 2``, connected and ``P_k``-free with ``[n, floor(k/2)] + c`` edges
    """
    _check_kopylov(n, k)
    c = k % 2
    outer = disjoint_union(complete(1 + c), empty_graph(n - (k + 1) // 2))
    graph = join(outer, complete(k // 2 - 1))
    return certify(graph, PathForest.of(k), bracket_s(n, k // 2) + c)


def extremal_2p7(n: int) -> List[Graph]:
    """
    :returns: the extremal ``2P_7``-free graphs on ``n`` vertices: ``K_13 ∪ H`` for
        every extremal ``P_7``-free ``H`` on ``n-13`` vertices when ``n <= 22``, and
        ``K_5 + (K_2 ∪ complement(K_{n-7}))`` when ``n >= 22`` (both at the tie)
    """
    if n < 14:
        raise DomainError(f"2P7 families need n >= 14, got {n}", "n >= 14")
    _check_capacity(n)

    value = ex_2p7(n).value
    graphs = []
    if n <= 22:
        graphs.extend(
            disjoint_union(complete(13), member)
            for member in extremal_path_family(n - 13, 7)
        )
    if n >= 22:
        outer = disjoint_union(complete(2), empty_graph(n - 7))
        graphs.append(join(complete(5), outer))

    for graph in graphs:
        certify(graph, TWO_P7, value)
    logger.debug("extremal 2P7 graphs on %d vertices: %d", n, len(graphs))
    return graphs


def _check_conjecture_forest(forest: PathForest) -> None:
    if forest.orders[-1] < 3:
        raise DomainError(f"forest {forest} has a path shorter than 3", "k_i >= 3")
    if forest.orders[0] <= 3:
        raise DomainError(f"forest {forest} has no path longer than 3", "k_1 > 3")


def conjecture_family(n: int, forest: PathForest) -> List[Graph]:
    """
    Build the conjectured extremal graphs for a linear forest: for every prefix
    ``k_1..k_j`` the clique ``K_{S_j - 1}`` (``S_j = k_1 + ... + k_j``) next to each
    extremal ``P_{k_j}``-free graph on the remaining vertices, and the join
    ``K_{s-1} + (K_{1+c} ∪ complement(K_{n-s-c}))``. Every graph is certified free of
    ``forest`` and matches the corresponding formula term.
    """
    _check_conjecture_forest(forest)
    _check_capacity(n)

    candidates = []
    for total, k in zip(forest.partial_sums(), forest.orders):
        expected = bracket_nml(n, total, k)
        if n <= total - 1:
            candidates.append((complete(n), expected))
            continue
        for member in extremal_path_family(n - total + 1, k):
            candidates.append((disjoint_union(complete(total - 1), member), expected))

    s = forest.half_sum
    c = 1 if forest.all_odd else 0
    if n >= s + c:
        outer = disjoint_union(complete(1 + c), empty_graph(n - s - c))
        candidates.append((join(complete(s - 1), outer), bracket_s(n, s) + c))
    else:
        logger.debug("join family skipped for %s at n=%d", forest, n)

    graphs = []
    for graph, expected in candidates:
        graphs.append(certify(graph, forest, expected))
    return dedup(graphs)
