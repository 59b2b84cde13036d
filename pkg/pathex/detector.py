"""
Exact containment test for linear forests.

The search places the paths of the forest longest first. Each path grows one vertex at
a time from its start along the bit-row neighborhood of its current end. Three rules
keep the tree small:

* only one vertex per twin class is tried at every branching point, since swapping
  two free twins is an automorphism fixing everything placed so far;
* an extension is abandoned when fewer free vertices are reachable from the path end
  than the path still needs;
* before each new path, the remaining orders must fit into the connected components
  of the free vertices.

A budget bounds the number of search nodes. Running out raises
:class:`~pathex.errors.SearchIndeterminateError`; it never produces a verdict.
"""
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Sequence, Set, Tuple

import jsonschema
import jsonschema.exceptions

from . import env
from .canonical import twin_classes
from .core import dump_record
from .errors import (
    CertificationError,
    DomainError,
    PathExError,
    SearchIndeterminateError,
)
from .formulas import PathForest
from .graphcore import Graph, components_of, iter_bits, popcount

logger = logging.getLogger("pathex.detector")

CERTIFICATE_SCHEMA_FILENAME = (
    Path(__file__).parent / "data" / "certificate_schema.json"
)

#: Number of nodes between two wall-clock checks
_CLOCK_INTERVAL = 0x1000


@dataclass(frozen=True)
class SearchBudget:
    """
    Limits for a single detector call.
    """

    #: maximum number of backtracking nodes
    node_limit: int = field(default_factory=lambda: env.PATHEX_NODE_LIMIT)
    #: optional wall-clock cap in seconds
    time_limit: Optional[float] = field(default_factory=lambda: env.PATHEX_TIME_LIMIT)

    def __post_init__(self) -> None:
        if self.node_limit < 1:
            raise DomainError(
                f"node limit must be positive: {self.node_limit}", "node_limit >= 1"
            )
        if self.time_limit is not None and self.time_limit <= 0:
            raise DomainError(
                f"time limit must be positive: {self.time_limit}", "time_limit > 0"
            )


@dataclass(frozen=True)
class Witness:
    """
    Vertex-disjoint paths embedding a linear forest; ``paths[i]`` has ``k_i`` vertices.
    """

    paths: Tuple[Tuple[int, ...], ...]

    def validate(self, graph: Graph, forest: PathForest) -> None:
        """
        Check that the paths embed ``forest`` into ``graph``.

        :raises CertificationError: if a path has the wrong order, leaves the graph,
            reuses a vertex, or steps along a non-edge
        """
        lengths = [len(path) for path in self.paths]
        if sorted(lengths, reverse=True) != list(forest.orders):
            raise CertificationError(
                f"witness path orders {lengths} do not match {forest}"
            )

        used: Set[int] = set()
        for path in self.paths:
            for v in path:
                if not 0 <= v < graph.n:
                    raise CertificationError(f"witness vertex {v} is not in the graph")
                if v in used:
                    raise CertificationError(f"witness reuses vertex {v}")
                used.add(v)
            for u, v in zip(path, path[1:]):
                if not graph.has_edge(u, v):
                    raise CertificationError(f"witness steps along non-edge {u}-{v}")

    def to_lines(self) -> List[str]:
        """
        :returns: one line per path, vertices separated by spaces
        """
        return [" ".join(str(v) for v in path) for path in self.paths]

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> "Witness":
        try:
            paths = tuple(
                tuple(int(v) for v in line.split()) for line in lines if line.strip()
            )
        except ValueError as err:
            raise PathExError(f"invalid witness line: {err}") from err
        return cls(paths)


class _Search:
    """
    One search over a fixed host graph. Instances are single-use per query and keep
    the node counter for the statistics.
    """

    def __init__(self, graph: Graph, budget: SearchBudget):
        self.graph = graph
        self.adj = graph.adj
        self.twins = twin_classes(graph.adj)
        self.node_limit = budget.node_limit
        self.deadline = (
            None
            if budget.time_limit is None
            else time.monotonic() + budget.time_limit
        )
        self.nodes = 0
        self.orders: Tuple[int, ...] = ()
        self.paths: List[Tuple[int, ...]] = []
        self.best = 0
        self.ceiling = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise SearchIndeterminateError("node budget exhausted", self.nodes)
        if (
            self.deadline is not None
            and not self.nodes % _CLOCK_INTERVAL
            and time.monotonic() > self.deadline
        ):
            raise SearchIndeterminateError("time budget exhausted", self.nodes)

    def _reach(self, vertex: int, free: int) -> int:
        """
        :returns: the free vertices reachable from ``vertex`` through free vertices
        """
        adj = self.adj
        seen = 0
        frontier = adj[vertex] & free
        while frontier:
            seen |= frontier
            step = 0
            for v in iter_bits(frontier):
                step |= adj[v]
            frontier = step & free & ~seen
        return seen

    #
    # forest packing
    #

    def pack(self, orders: Tuple[int, ...]) -> Optional[List[Tuple[int, ...]]]:
        self.orders = orders
        self.paths = []
        if self._place(0, (1 << self.graph.n) - 1):
            return list(self.paths)
        return None

    def _fits(self, index: int, free: int) -> bool:
        demands = self.orders[index:]
        if sum(demands) > popcount(free):
            return False

        sizes = sorted(
            (popcount(c) for c in components_of(self.adj, free)), reverse=True
        )
        return _assign(list(demands), sizes)

    def _place(self, index: int, free: int) -> bool:
        if index == len(self.orders):
            return True

        self._tick()
        if not self._fits(index, free):
            return False

        need = self.orders[index] - 1
        tried: Set[int] = set()
        for v in iter_bits(free):
            if self.twins[v] in tried:
                continue
            tried.add(self.twins[v])
            if self._extend(index, [v], free & ~(1 << v), need):
                return True
        return False

    def _extend(self, index: int, path: List[int], free: int, remaining: int) -> bool:
        if not remaining:
            self.paths.append(tuple(path))
            if self._place(index + 1, free):
                return True
            self.paths.pop()
            return False

        self._tick()
        end = path[-1]
        candidates = self.adj[end] & free
        if not candidates:
            return False
        if remaining > 1 and popcount(self._reach(end, free)) < remaining:
            return False

        tried: Set[int] = set()
        for u in iter_bits(candidates):
            if self.twins[u] in tried:
                continue
            tried.add(self.twins[u])
            path.append(u)
            if self._extend(index, path, free & ~(1 << u), remaining - 1):
                return True
            path.pop()
        return False

    #
    # longest path
    #

    def longest(self) -> int:
        n = self.graph.n
        if n == 0:
            return 0

        full = (1 << n) - 1
        component = {}
        for mask in components_of(self.adj, full):
            for v in iter_bits(mask):
                component[v] = popcount(mask)

        self.best = 1
        tried: Set[int] = set()
        for v in range(n):
            if self.twins[v] in tried or component[v] <= self.best:
                continue
            tried.add(self.twins[v])
            self.ceiling = component[v]
            self._grow(v, full & ~(1 << v), 1)
        return self.best

    def _grow(self, end: int, free: int, length: int) -> bool:
        """
        :returns: True once a path covering the whole component of the start is found
        """
        self._tick()
        if length > self.best:
            self.best = length
            if length == self.ceiling:
                return True

        candidates = self.adj[end] & free
        if not candidates:
            return False
        if length + popcount(self._reach(end, free)) <= self.best:
            return False

        tried: Set[int] = set()
        for u in iter_bits(candidates):
            if self.twins[u] in tried:
                continue
            tried.add(self.twins[u])
            if self._grow(u, free & ~(1 << u), length + 1):
                return True
        return False


def _assign(demands: List[int], capacities: List[int]) -> bool:
    """
    Decide whether every demand can be charged to a capacity without overdrawing any
    capacity. ``demands`` is sorted non-increasing.
    """
    if not demands:
        return True

    demand = demands[0]
    seen: Set[int] = set()
    for i, capacity in enumerate(capacities):
        if capacity < demand or capacity in seen:
            continue
        seen.add(capacity)
        capacities[i] = capacity - demand
        if _assign(demands[1:], capacities):
            capacities[i] = capacity
            return True
        capacities[i] = capacity
    return False


def _check_forest(forest: PathForest) -> None:
    if forest.total > 62:
        raise DomainError(f"forest {forest} has more than 62 vertices", "Σ k_i <= 62")


def contains_forest(
    graph: Graph, forest: PathForest, budget: Optional[SearchBudget] = None
) -> Tuple[bool, Optional[Witness]]:
    """
    Decide whether ``graph`` contains vertex-disjoint paths with the orders of
    ``forest``.

    :returns: ``(True, witness)`` or ``(False, None)``
    :raises SearchIndeterminateError: if the budget runs out first
    """
    found, witness, _ = _run(graph, forest, budget or SearchBudget())
    return found, witness


def _run(
    graph: Graph, forest: PathForest, budget: SearchBudget
) -> Tuple[bool, Optional[Witness], int]:
    _check_forest(forest)
    search = _Search(graph, budget)
    paths = search.pack(forest.orders)
    if paths is None:
        logger.debug("%s-free: %d nodes on %s", forest, search.nodes, graph)
        return False, None, search.nodes

    witness = Witness(tuple(paths))
    witness.validate(graph, forest)
    logger.debug("%s found: %d nodes on %s", forest, search.nodes, graph)
    return True, witness, search.nodes


def longest_path(graph: Graph, budget: Optional[SearchBudget] = None) -> int:
    """
    :returns: the number of vertices of a longest path in ``graph``; 0 for the graph
        without vertices
    :raises SearchIndeterminateError: if the budget runs out first
    """
    search = _Search(graph, budget or SearchBudget())
    result = search.longest()
    logger.debug("longest path %d: %d nodes on %s", result, search.nodes, graph)
    return result


@dataclass(frozen=True)
class Certificate:
    """
    The outcome of a freeness check, with the effort it took.
    """

    forest: PathForest
    free: bool
    nodes: int
    witness: Optional[Witness] = None

    def to_record(self) -> dict:
        record: dict = {
            "forest": list(self.forest.orders),
            "free": self.free,
            "nodes": self.nodes,
        }
        if self.witness is not None:
            record["witness"] = [list(path) for path in self.witness.paths]
        return record

    def to_json(self) -> str:
        return dump_record(self.to_record())

    @classmethod
    def load_dict(cls, obj: Any) -> "Certificate":
        """
        Load a certificate from its record after validating it against the
        certificate schema.

        :raises PathExError: if the record is invalid
        """
        _validate_certificate(obj)
        witness = None
        if "witness" in obj:
            witness = Witness(tuple(tuple(path) for path in obj["witness"]))
        return cls(
            forest=PathForest(tuple(obj["forest"])),
            free=obj["free"],
            nodes=obj["nodes"],
            witness=witness,
        )

    @classmethod
    def load_json(cls, text: str) -> "Certificate":
        try:
            body = json.loads(text)
        except json.JSONDecodeError as err:
            raise PathExError(f"invalid certificate JSON: {err}") from err
        return cls.load_dict(body)

    def verify(self, graph: Graph) -> None:
        """
        Re-check a positive certificate against ``graph``.

        :raises CertificationError: if the witness does not embed the forest
        """
        if self.free != (self.witness is None):
            raise CertificationError(
                "a certificate carries a witness exactly when the forest is found"
            )
        if self.witness is not None:
            self.witness.validate(graph, self.forest)


def _validate_certificate(body: Any) -> None:
    schema = json.loads(CERTIFICATE_SCHEMA_FILENAME.read_text())
    try:
        jsonschema.validate(body, schema)
    except jsonschema.exceptions.ValidationError as err:
        raise PathExError(f"invalid certificate: {err.message}") from err


def free_check(
    graph: Graph, forest: PathForest, budget: Optional[SearchBudget] = None
) -> Certificate:
    """
    :returns: a certificate stating whether ``graph`` is ``forest``-free
    """
    found, witness, nodes = _run(graph, forest, budget or SearchBudget())
    return Certificate(forest=forest, free=not found, nodes=nodes, witness=witness)
