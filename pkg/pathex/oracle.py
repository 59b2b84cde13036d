"""
Exact Turán numbers for tiny vertex counts by exhaustive enumeration of isomorphism
classes.

Representatives on ``n`` vertices are grown from the representatives on ``n - 1``
vertices by adding a vertex with every possible neighborhood. A child is kept only
when the vertex its canonical labeling puts last can be deleted to give back the
parent class, so every class is reached from exactly one parent; within a parent the
children are deduplicated by their canonical rows.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from multiprocessing import Pool
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from . import env
from .canonical import canonical_labeling
from .constructions import (
    extremal_path_cliques,
    kopylov_A,
    kopylov_B,
)
from .detector import SearchBudget, contains_forest
from .errors import (
    CertificationError,
    DomainError,
    PathExError,
    ScaleRefusalError,
)
from .formulas import PathForest
from .graphcore import (
    Graph,
    complete,
    disjoint_union,
    empty_graph,
    iter_bits,
    join,
    popcount,
    write_graph6,
)

logger = logging.getLogger("pathex.oracle")

#: Largest vertex count the enumerator accepts at all
ENUMERATION_LIMIT = 10

#: Largest vertex count for the subset dynamic program of the reference check
REFERENCE_LIMIT = 16

Rows = Tuple[int, ...]
Visitor = Callable[[Graph], None]


def _check_enumeration_size(n: int) -> None:
    if n < 1:
        raise DomainError(f"enumeration needs at least one vertex, got {n}", "n >= 1")
    if n > ENUMERATION_LIMIT:
        raise ScaleRefusalError(
            f"refusing to enumerate graphs on {n} vertices (limit {ENUMERATION_LIMIT})"
        )


def _children(parent: Rows, min_edges: int = 0) -> List[Rows]:
    """
    :returns: the canonical rows of every child class of ``parent`` accepted by the
        canonical deletion test, in neighborhood order, restricted to children with
        at least ``min_edges`` edges
    """
    m = len(parent)
    parent_edges = sum(popcount(row) for row in parent) // 2
    if parent_edges + m < min_edges:
        return []

    degrees = [popcount(row) for row in parent]
    seen: Set[Rows] = set()
    accepted = []
    for nbrs in range(1 << m):
        degree = popcount(nbrs)
        if parent_edges + degree < min_edges:
            continue
        # the canonical last vertex always has maximum degree
        if any(degrees[v] + (nbrs >> v & 1) > degree for v in range(m)):
            continue

        rows = tuple(row | ((nbrs >> v & 1) << m) for v, row in enumerate(parent))
        child = Graph._trusted(m + 1, rows + (nbrs,))
        canon, order = canonical_labeling(child)
        if canon in seen:
            continue
        seen.add(canon)

        last = order[-1]
        if last != m:
            restored, _ = canonical_labeling(child.delete_vertex(last))
            if restored != parent:
                continue
        accepted.append(canon)
    return accepted


def _children_batch(args: Tuple[Sequence[Rows], int]) -> List[List[Rows]]:
    parents, min_edges = args
    return [_children(parent, min_edges) for parent in parents]


def _partitions(parents: Sequence[Rows], workers: int) -> List[Sequence[Rows]]:
    size = max(1, len(parents) // (workers * 8))
    return [parents[i : i + size] for i in range(0, len(parents), size)]


def _expand(parents: Sequence[Rows], min_edges: int, workers: int) -> Iterator[Rows]:
    """
    Yield the child classes of every parent, in parent order. Parent partitions run
    in a process pool when ``workers > 1``; results are merged back in order.
    """
    if workers <= 1 or len(parents) < 2:
        for parent in parents:
            yield from _children(parent, min_edges)
        return

    chunks = _partitions(parents, workers)
    with Pool(processes=workers) as pool:
        for batch in pool.imap(_children_batch, [(c, min_edges) for c in chunks]):
            for children in batch:
                yield from children


@lru_cache(maxsize=None)
def representatives(n: int) -> Tuple[Rows, ...]:
    """
    :returns: the canonical rows of one representative per isomorphism class of
        graphs on ``n`` vertices
    """
    _check_enumeration_size(n)
    if n == 1:
        return ((0,),)

    result = tuple(_expand(representatives(n - 1), 0, 1))
    logger.debug("%d classes on %d vertices", len(result), n)
    return result


def enumerate_nonisomorphic(
    n: int, visitor: Optional[Visitor] = None, workers: Optional[int] = None
) -> int:
    """
    Visit one representative of every isomorphism class of simple graphs on ``n``
    vertices, each in canonical form.

    :param workers: process count for the last level; defaults to
        ``PATHEX_WORKERS``
    :returns: the number of classes
    :raises ScaleRefusalError: if ``n > 10``
    """
    _check_enumeration_size(n)
    workers = workers or env.PATHEX_WORKERS

    # only levels below n are cached; the last level is streamed
    if n == 1:
        classes: Iterator[Rows] = iter(representatives(1))
    else:
        classes = _expand(representatives(n - 1), 0, workers)

    count = 0
    for rows in classes:
        count += 1
        if visitor is not None:
            visitor(Graph._trusted(n, rows))
    return count


def _partitions_of(n: int, largest: Optional[int] = None) -> Iterator[List[int]]:
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions_of(n - part, part):
            yield [part] + rest


def count_graphs_cycle_index(n: int) -> int:
    """
    Count the isomorphism classes of graphs on ``n`` vertices by Burnside's lemma over
    the cycle types of the symmetric group acting on vertex pairs. Independent of the
    enumerator.
    """
    if n < 0:
        raise DomainError(f"vertex count must be non-negative, got {n}", "n >= 0")

    total = Fraction(0)
    for cycles in _partitions_of(n):
        # orbits of the induced permutation on unordered pairs
        pair_cycles = sum(a // 2 for a in cycles)
        for i, a in enumerate(cycles):
            for b in cycles[i + 1 :]:
                pair_cycles += gcd(a, b)

        centralizer = 1
        for length in set(cycles):
            multiplicity = cycles.count(length)
            centralizer *= length**multiplicity * factorial(multiplicity)
        total += Fraction(2**pair_cycles, centralizer)

    if total.denominator != 1:
        raise CertificationError(
            f"cycle index sum for n={n} is not an integer: {total}"
        )
    return total.numerator


def _path_ends(graph: Graph) -> List[int]:
    """
    ``ends[S]`` is the set of vertices at which some Hamiltonian path of the subgraph
    induced by ``S`` ends.
    """
    n = graph.n
    ends = [0] * (1 << n)
    for subset in range(1, 1 << n):
        if subset & (subset - 1) == 0:
            ends[subset] = subset
            continue
        found = 0
        for v in iter_bits(subset):
            rest = subset & ~(1 << v)
            for u in iter_bits(ends[rest]):
                if graph.adj[v] >> u & 1:
                    found |= 1 << v
                    break
        ends[subset] = found
    return ends


def reference_contains_forest(graph: Graph, forest: PathForest) -> bool:
    """
    Decide containment of ``forest`` by a subset dynamic program: mark every
    traceable vertex subset, then look for disjoint traceable subsets of the required
    sizes. Exponential in ``n`` and independent of the detector.
    """
    if graph.n > REFERENCE_LIMIT:
        raise ScaleRefusalError(
            f"reference check limited to {REFERENCE_LIMIT} vertices, got {graph.n}"
        )
    if forest.total > graph.n:
        return False

    ends = _path_ends(graph)
    by_size: Dict[int, List[int]] = {}
    for subset in range(1, 1 << graph.n):
        if ends[subset]:
            by_size.setdefault(popcount(subset), []).append(subset)

    orders = forest.orders

    def place(index: int, used: int) -> bool:
        if index == len(orders):
            return True
        return any(
            not subset & used and place(index + 1, used | subset)
            for subset in by_size.get(orders[index], [])
        )

    return place(0, 0)


@dataclass(frozen=True)
class OracleResult:
    """
    Exact ``ex(n, F)`` with an extremal witness.
    """

    n: int
    forest: PathForest
    #: the maximum number of edges of a forest-free graph on n vertices
    value: int
    witness: Graph
    #: classes visited by the final enumeration level
    graphs_enumerated: int
    #: every extremal class when collected, else just the witness
    witnesses: Tuple[Graph, ...] = field(default=())
    connected: bool = False

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "forest": list(self.forest.orders),
            "value": self.value,
            "connected": self.connected,
            "graphs_enumerated": self.graphs_enumerated,
            "witness": write_graph6(self.witness),
            "extremal_classes": len(self.witnesses),
        }


def _check_oracle_size(n: int, allow_long: bool) -> None:
    if n < 1:
        raise DomainError(f"oracle needs at least one vertex, got {n}", "n >= 1")
    limit = env.PATHEX_ORACLE_MAX_N
    if n <= limit:
        return
    if allow_long and n <= ENUMERATION_LIMIT:
        logger.warning("long run: enumerating every class on %d vertices", n)
        return
    raise ScaleRefusalError(
        f"oracle refuses n={n} (limit {limit}; n={ENUMERATION_LIMIT} needs the "
        "long-run flag)"
    )


def _seed_graphs(n: int, forest: PathForest, connected: bool) -> List[Graph]:
    seeds = [empty_graph(n)]
    if n < forest.total:
        seeds.append(complete(n))

    orders = forest.orders
    if orders[-1] >= 3:
        for total, k in zip(forest.partial_sums(), orders):
            if n >= total - 1:
                rest = extremal_path_cliques(n - total + 1, k)
                seeds.append(disjoint_union(complete(total - 1), rest))

    s = forest.half_sum
    c = 1 if forest.all_odd else 0
    if s >= 1 and n >= s + c:
        outer = disjoint_union(complete(1 + c), empty_graph(n - s - c))
        seeds.append(join(complete(s - 1), outer))

    if connected and forest.m == 1 and n >= orders[0] >= 4:
        seeds.append(kopylov_A(n, orders[0]))
        seeds.append(kopylov_B(n, orders[0]))
    return seeds


def _incumbent(
    n: int, forest: PathForest, connected: bool, budget: SearchBudget
) -> Optional[Graph]:
    best = None
    for graph in _seed_graphs(n, forest, connected):
        if connected and not graph.is_connected():
            continue
        if best is not None and graph.edge_count() <= best.edge_count():
            continue
        found, _ = contains_forest(graph, forest, budget)
        if not found:
            best = graph
    return best


def oracle_ex(
    n: int,
    forest: PathForest,
    allow_long: bool = False,
    workers: Optional[int] = None,
    connected: bool = False,
    collect_all: bool = False,
    budget: Optional[SearchBudget] = None,
) -> OracleResult:
    """
    Compute ``ex(n, F)`` exactly. The incumbent starts at the best forest-free
    construction, and only classes with more edges (at least as many when
    ``collect_all`` is set) are checked with the detector.

    :param connected: maximize over connected graphs only
    :param collect_all: keep one representative of every extremal class
    :raises ScaleRefusalError: if ``n`` exceeds the oracle gate
    :raises DomainError: if no connected graph avoids ``forest``
    """
    _check_oracle_size(n, allow_long)
    budget = budget or SearchBudget()
    workers = workers or env.PATHEX_WORKERS

    best = _incumbent(n, forest, connected, budget)
    best_edges = -1 if best is None else best.edge_count()
    threshold = best_edges if collect_all else best_edges + 1
    if connected:
        threshold = max(threshold, n - 1)
    logger.info(
        "oracle %s on %d vertices: incumbent %d edges", forest, n, max(best_edges, 0)
    )

    extremal: List[Graph] = []
    if best is not None and not collect_all:
        extremal.append(best)

    visited = 0
    if n == 1:
        candidates: Iterator[Rows] = iter(representatives(1))
    else:
        candidates = _expand(representatives(n - 1), max(threshold, 0), workers)

    for rows in candidates:
        visited += 1
        graph = Graph._trusted(n, rows)
        edges = graph.edge_count()
        if edges < threshold:
            continue
        if connected and not graph.is_connected():
            continue
        found, _ = contains_forest(graph, forest, budget)
        if found:
            continue

        if edges > best_edges:
            best_edges = edges
            threshold = edges if collect_all else edges + 1
            extremal = [graph]
            logger.debug("new incumbent with %d edges", edges)
        else:
            extremal.append(graph)

    if not extremal:
        kind = "connected " if connected else ""
        raise DomainError(
            f"no {kind}{forest}-free graph on {n} vertices",
            "some graph avoids the forest",
        )

    witness = extremal[0]
    found, _ = contains_forest(witness, forest, budget)
    if found or witness.edge_count() != best_edges:
        raise CertificationError(
            f"oracle witness for {forest} on {n} vertices is invalid"
        )

    logger.info(
        "ex(%d, %s) = %d after %d candidate classes", n, forest, best_edges, visited
    )
    return OracleResult(
        n=n,
        forest=forest,
        value=best_edges,
        witness=witness,
        graphs_enumerated=visited,
        witnesses=tuple(extremal),
        connected=connected,
    )


def dump_witnesses(result: OracleResult) -> List[str]:
    """
    :returns: one graph6 line per collected extremal class
    """
    if not result.witnesses:
        raise PathExError("oracle result carries no witnesses")
    return [write_graph6(graph) for graph in result.witnesses]
