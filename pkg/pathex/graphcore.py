"""
Undirected simple graphs on at most 62 vertices, stored as one adjacency bit row per
vertex, together with the graph algebra used by the extremal constructions and the
graph6 / edge-list / DOT text formats.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Iterator, List, Optional, Sequence, Tuple

from .core import AnyPath
from .errors import CapacityError, DomainError, GraphFormatError, PathExError

if TYPE_CHECKING:  # pragma: no cover
    import networkx as nx

logger = logging.getLogger("pathex.graphcore")

#: Largest supported vertex count (single-byte graph6 header)
MAX_VERTICES = 62

#: Offset added to every graph6 byte
GRAPH6_BIAS = 63

Edge = Tuple[int, int]


def popcount(mask: int) -> int:
    """
    :returns: the number of set bits in ``mask``
    """
    return bin(mask).count("1")


def iter_bits(mask: int) -> Iterator[int]:
    """
    Iterate the positions of the set bits of ``mask`` in increasing order.
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_capacity(n: int) -> None:
    if n < 0:
        raise DomainError(f"vertex count must be non-negative: {n}", "n >= 0")
    if n > MAX_VERTICES:
        raise CapacityError(f"graph on {n} vertices exceeds capacity {MAX_VERTICES}")


@dataclass(frozen=True)
class VertexSet:
    """
    A set of vertices of a host graph, as a single bit row.
    """

    #: bit ``v`` is set iff vertex ``v`` is a member
    bits: int = 0

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in vertices:
            if v < 0:
                raise DomainError(f"negative vertex {v}", "vertex >= 0")
            bits |= 1 << v
        return cls(bits)

    @classmethod
    def range(cls, start: int, stop: int) -> "VertexSet":
        """
        :returns: the set ``{start, ..., stop - 1}``
        """
        if stop <= start:
            return cls(0)
        return cls(((1 << (stop - start)) - 1) << start)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __contains__(self, vertex: object) -> bool:
        return isinstance(vertex, int) and vertex >= 0 and bool(self.bits >> vertex & 1)

    def is_disjoint(self, other: "VertexSet") -> bool:
        return not self.bits & other.bits


@dataclass(frozen=True)
class Graph:
    """
    An immutable undirected simple graph. ``adj[v]`` has bit ``u`` set iff ``{u, v}``
    is an edge. The constructor checks symmetry, irreflexivity, and that no bit at a
    position ``>= n`` is set.
    """

    n: int
    adj: Tuple[int, ...]

    def __post_init__(self) -> None:
        _check_capacity(self.n)
        if len(self.adj) != self.n:
            raise PathExError(
                f"graph on {self.n} vertices has {len(self.adj)} adjacency rows"
            )

        limit = 1 << self.n
        for v, row in enumerate(self.adj):
            if row < 0 or row >= limit:
                raise PathExError(f"row {v} has bits outside the vertex range")
            if row >> v & 1:
                raise PathExError(f"vertex {v} is adjacent to itself")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise PathExError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def _trusted(cls, n: int, adj: Tuple[int, ...]) -> "Graph":
        # skips validation; callers build rows symmetrically by construction
        graph = object.__new__(cls)
        object.__setattr__(graph, "n", n)
        object.__setattr__(graph, "adj", adj)
        return graph

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.adj[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> List[int]:
        return [popcount(row) for row in self.adj]

    def edges(self) -> Iterator[Edge]:
        """
        Iterate the edges as ``(u, v)`` pairs with ``u < v``, ordered by ``u``, then
        ``v``.
        """
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def vertices(self) -> VertexSet:
        return VertexSet.range(0, self.n)

    def with_edges(self, edges: Iterable[Edge]) -> "Graph":
        """
        :returns: a copy of this graph with the given edges added
        """
        rows = list(self.adj)
        _add_edges(rows, self.n, edges)
        return Graph(self.n, tuple(rows))

    def delete_vertex(self, vertex: int) -> "Graph":
        """
        :returns: the graph with ``vertex`` removed; higher labels shift down by one
        """
        if not 0 <= vertex < self.n:
            raise DomainError(f"vertex {vertex} not in graph", "0 <= vertex < n")

        low = (1 << vertex) - 1
        rows = []
        for v, row in enumerate(self.adj):
            if v == vertex:
                continue
            rows.append((row & low) | ((row >> (vertex + 1)) << vertex))
        return Graph._trusted(self.n - 1, tuple(rows))

    def relabel(self, order: Sequence[int]) -> "Graph":
        """
        Relabel the vertices so that the vertex ``order[i]`` becomes vertex ``i``.

        :param order: a permutation of ``range(n)``
        """
        if sorted(order) != list(range(self.n)):
            raise DomainError(
                "relabeling is not a permutation", "order is a permutation"
            )

        position = [0] * self.n
        for i, v in enumerate(order):
            position[v] = i

        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            new_row = 0
            for u in iter_bits(row):
                new_row |= 1 << position[u]
            rows[position[v]] = new_row
        return Graph._trusted(self.n, tuple(rows))

    def components(self) -> List[VertexSet]:
        """
        :returns: the connected components, ordered by smallest vertex
        """
        return [VertexSet(mask) for mask in components_of(self.adj, (1 << self.n) - 1)]

    def is_connected(self) -> bool:
        return self.n <= 1 or len(components_of(self.adj, (1 << self.n) - 1)) == 1

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def components_of(adj: Sequence[int], mask: int) -> List[int]:
    """
    Split the vertices of ``mask`` into the connected components of the subgraph they
    induce.

    :returns: one bit mask per component, ordered by smallest vertex
    """
    result = []
    while mask:
        seen = mask & -mask
        frontier = seen
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= adj[v]
            frontier = reach & mask & ~seen
            seen |= frontier
        result.append(seen)
        mask &= ~seen
    return result


def _add_edges(rows: List[int], n: int, edges: Iterable[Edge]) -> None:
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise DomainError(
                f"edge {u}-{v} outside vertex range 0..{n - 1}", "u, v < n"
            )
        if u == v:
            raise DomainError(f"loop at vertex {u}", "u != v")
        rows[u] |= 1 << v
        rows[v] |= 1 << u


def from_edges(n: int, edges: Iterable[Edge]) -> Graph:
    """
    :returns: the graph on ``n`` vertices with the given edge list
    """
    _check_capacity(n)
    rows = [0] * n
    _add_edges(rows, n, edges)
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    """
    :returns: the edgeless graph on ``n`` vertices
    """
    _check_capacity(n)
    return Graph._trusted(n, (0,) * n)


def complete(n: int) -> Graph:
    """
    :returns: the complete graph on ``n`` vertices
    :raises CapacityError: if ``n > 62``
    """
    _check_capacity(n)
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    """
    :returns: the path ``0 - 1 - ... - (n-1)``
    """
    _check_capacity(n)
    return from_edges(n, ((i, i + 1) for i in range(n - 1)))


def disjoint_union(*graphs: Graph) -> Graph:
    """
    Place the graphs side by side. The vertices of each graph are shifted by the total
    vertex count of the graphs before it.

    :raises CapacityError: if the union exceeds 62 vertices
    """
    total = sum(graph.n for graph in graphs)
    _check_capacity(total)

    rows: List[int] = []
    offset = 0
    for graph in graphs:
        rows.extend(row << offset for row in graph.adj)
        offset += graph.n
    return Graph._trusted(total, tuple(rows))


def join(first: Graph, second: Graph) -> Graph:
    """
    :returns: the disjoint union of ``first`` and ``second`` with every vertex of
        ``first`` made adjacent to every vertex of ``second``
    """
    total = first.n + second.n
    _check_capacity(total)

    first_mask = (1 << first.n) - 1
    second_mask = ((1 << second.n) - 1) << first.n
    rows = [row | second_mask for row in first.adj]
    rows.extend((row << first.n) | first_mask for row in second.adj)
    return Graph._trusted(total, tuple(rows))


def complement(graph: Graph) -> Graph:
    full = (1 << graph.n) - 1
    return Graph._trusted(
        graph.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(graph.adj))
    )


def edge_count(graph: Graph) -> int:
    return graph.edge_count()


def _check_subset(graph: Graph, vertices: VertexSet) -> None:
    if vertices.bits >> graph.n:
        raise DomainError("vertex set is not contained in the graph", "S ⊆ V(G)")


def induced(graph: Graph, vertices: VertexSet) -> Graph:
    """
    :returns: the subgraph induced by ``vertices``, relabeled ``0..|S|-1`` in
        increasing vertex order
    """
    _check_subset(graph, vertices)
    members = list(vertices)
    position = {v: i for i, v in enumerate(members)}
    rows = []
    for v in members:
        row = 0
        for u in iter_bits(graph.adj[v] & vertices.bits):
            row |= 1 << position[u]
        rows.append(row)
    return Graph._trusted(len(members), tuple(rows))


def edges_between(graph: Graph, first: VertexSet, second: VertexSet) -> int:
    """
    :returns: the number of edges with one end in ``first`` and the other in
        ``second``
    :raises DomainError: if the two sets overlap
    """
    _check_subset(graph, first)
    _check_subset(graph, second)
    if not first.is_disjoint(second):
        raise DomainError("vertex sets overlap", "S1 ∩ S2 = ∅")
    return sum(popcount(graph.adj[v] & second.bits) for v in first)


#
# graph6
#


def write_graph6(graph: Graph) -> str:
    """
    Encode a graph as a graph6 line (without the trailing newline): a header byte
    ``n + 63`` followed by the upper triangle of the adjacency matrix read column by
    column, packed big-endian six bits per byte, each byte biased by 63.
    """
    out = [chr(graph.n + GRAPH6_BIAS)]
    value = 0
    count = 0
    for j in range(1, graph.n):
        row = graph.adj[j]
        for i in range(j):
            value = (value << 1) | (row >> i & 1)
            count += 1
            if count == 6:
                out.append(chr(value + GRAPH6_BIAS))
                value = 0
                count = 0
    if count:
        out.append(chr((value << (6 - count)) + GRAPH6_BIAS))
    return "".join(out)


def read_graph6(line: str) -> Graph:
    """
    Decode a single graph6 line. A leading ``>>graph6<<`` marker and trailing line
    terminators are accepted.

    :raises GraphFormatError: on a byte outside 63..126, a vertex count above 62, a
        truncated or overlong bit section, or non-zero padding bits; the error carries
        the byte offset
    """
    text = line.rstrip("\r\n")
    start = 0
    if text.startswith(">>graph6<<"):
        start = len(">>graph6<<")

    if len(text) == start:
        raise GraphFormatError("empty graph6 line", start)

    for offset in range(start, len(text)):
        code = ord(text[offset])
        if code < GRAPH6_BIAS or code > 126:
            raise GraphFormatError(f"invalid graph6 byte {text[offset]!r}", offset)

    if text[start] == "~":
        raise GraphFormatError(
            f"graph6 vertex counts above {MAX_VERTICES} are not supported", start
        )

    n = ord(text[start]) - GRAPH6_BIAS
    body = text[start + 1 :]
    expected = (n * (n - 1) // 2 + 5) // 6
    if len(body) < expected:
        raise GraphFormatError("truncated graph6 bit section", len(text))
    if len(body) > expected:
        raise GraphFormatError(
            "trailing bytes after graph6 bit section", start + 1 + expected
        )

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - GRAPH6_BIAS
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1

    if k % 6:
        padding = (ord(body[-1]) - GRAPH6_BIAS) & ((1 << (6 - k % 6)) - 1)
        if padding:
            raise GraphFormatError("non-zero graph6 padding bits", len(text) - 1)

    return Graph(n, tuple(rows))


#
# edge lists and DOT
#


def write_edge_list(graph: Graph) -> str:
    """
    Emit the graph as an edge list: a ``# n N`` header comment, then one ``u v`` pair
    per line.
    """
    lines = [f"# n {graph.n}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    """
    Parse an edge list: one whitespace-separated ``u v`` pair of 0-based vertices per
    line, ``#`` starts a comment. A ``# n N`` comment fixes the vertex count;
    otherwise it is one more than the largest vertex mentioned.

    :raises GraphFormatError: with the 1-based line number of a malformed line
    """
    declared: Optional[int] = None
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        header = comment.split()
        if len(header) == 2 and header[0] == "n" and not body.strip():
            try:
                declared = int(header[1])
            except ValueError:
                raise GraphFormatError(f"invalid vertex count {header[1]!r}", lineno)
            continue

        fields = body.split()
        if not fields:
            continue
        if len(fields) != 2:
            raise GraphFormatError(f"expected 'u v', got {body.strip()!r}", lineno)

        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {body.strip()!r}", lineno)

        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex label", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        edges.append((u, v))

    n = max((max(u, v) + 1 for u, v in edges), default=0)
    if declared is not None:
        if declared < n:
            raise GraphFormatError(
                f"declared vertex count {declared} is below used label {n - 1}", 0
            )
        n = declared

    return from_edges(n, edges)


def write_dot(graph: Graph, name: str = "G") -> str:
    """
    Emit a plain undirected DOT description, for inspection only.
    """
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(graph.n))
    lines.extend(f"  {u} -- {v};" for u, v in graph.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


class GraphFormat(Enum):
    GRAPH6 = "graph6"
    EDGE_LIST = "edge-list"
    DOT = "dot"

    @classmethod
    def from_path(cls, path: AnyPath) -> "GraphFormat":
        """
        :returns: the format implied by the file extension
        :raises DomainError: if the extension is not recognized
        """
        suffix = Path(path).suffix.lower()
        if suffix in (".g6", ".graph6"):
            return cls.GRAPH6
        if suffix in (".txt", ".edges", ".el", ".edgelist"):
            return cls.EDGE_LIST
        if suffix in (".dot", ".gv"):
            return cls.DOT
        raise DomainError(
            f"cannot infer graph format from extension {suffix!r}", "known extension"
        )


def parse_graphs(text: str, fmt: GraphFormat) -> List[Graph]:
    """
    Parse graph text. graph6 input holds one graph per non-blank line; an edge list
    holds a single graph.
    """
    if fmt is GraphFormat.GRAPH6:
        return [read_graph6(line) for line in text.splitlines() if line.strip()]
    if fmt is GraphFormat.EDGE_LIST:
        return [read_edge_list(text)]
    raise DomainError("DOT output is write-only", "readable format")


def format_graphs(graphs: Sequence[Graph], fmt: GraphFormat) -> str:
    if fmt is GraphFormat.GRAPH6:
        return "".join(write_graph6(graph) + "\n" for graph in graphs)
    if fmt is GraphFormat.EDGE_LIST:
        return "\n".join(write_edge_list(graph) for graph in graphs)
    return "".join(write_dot(graph, f"G{i}") for i, graph in enumerate(graphs))


def load_graphs(path: AnyPath, fmt: Optional[GraphFormat] = None) -> List[Graph]:
    """
    Read every graph stored in ``path``.

    :param fmt: the file format, inferred from the extension when omitted
    :raises PathExError: if the file cannot be read
    """
    fmt = fmt or GraphFormat.from_path(path)
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise PathExError(f"unable to read graph file {path}: {err}") from err

    graphs = parse_graphs(text, fmt)
    logger.debug("loaded %d graph(s) from %s", len(graphs), path)
    return graphs


#
# networkx interop
#


def to_networkx(graph: Graph) -> "nx.Graph":
    import networkx as nx

    result = nx.Graph()
    result.add_nodes_from(range(graph.n))
    result.add_edges_from(graph.edges())
    return result


def from_networkx(source: "nx.Graph") -> Graph:
    """
    Convert a networkx graph. Nodes are relabeled ``0..n-1`` in sorted order.
    """
    nodes = sorted(source.nodes())
    position = {node: i for i, node in enumerate(nodes)}
    return from_edges(
        len(nodes), ((position[u], position[v]) for u, v in source.edges() if u != v)
    )
