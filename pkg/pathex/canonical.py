"""
Canonical labeling for small graphs.

Vertices are first split into cells by degree (ascending), the ordered partition is
refined until every vertex of a cell sees the same number of neighbors in every cell,
and the remaining non-singleton cells are individualized one vertex at a time. The
canonical form is the relabeling with the lexicographically smallest tuple of
adjacency rows over all leaves of that search tree. Twin vertices (same open or same
closed neighborhood) are interchangeable, so only one vertex per twin class is tried
when individualizing.
"""
from typing import Dict, List, Sequence, Tuple

from .graphcore import (
    Graph,
    VertexSet,
    components_of,
    disjoint_union,
    induced,
    iter_bits,
    popcount,
    write_graph6,
)

Partition = List[List[int]]


def twin_classes(adj: Sequence[int]) -> List[int]:
    """
    Label each vertex with a twin class id. Two vertices share an id iff they have the
    same open neighborhood (false twins) or the same closed neighborhood (true twins).
    A vertex cannot have both kinds of twin, so the classes are well defined.
    """
    open_groups: Dict[int, List[int]] = {}
    closed_groups: Dict[int, List[int]] = {}
    for v, row in enumerate(adj):
        open_groups.setdefault(row, []).append(v)
        closed_groups.setdefault(row | (1 << v), []).append(v)

    labels = [-1] * len(adj)
    for v, row in enumerate(adj):
        if labels[v] >= 0:
            continue

        group = open_groups[row]
        if len(group) == 1:
            group = closed_groups[row | (1 << v)]
        for u in group:
            labels[u] = v
    return labels


def refine(adj: Sequence[int], cells: Partition) -> Partition:
    """
    Refine an ordered partition to an equitable one. Each cell is split by the vector
    of neighbor counts into every cell, and the parts keep the position of the cell
    they came from, ordered by that vector.
    """
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        refined: Partition = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue

            signatures = {
                v: tuple(popcount(adj[v] & mask) for mask in masks) for v in cell
            }
            keys = sorted(set(signatures.values()))
            if len(keys) == 1:
                refined.append(cell)
                continue

            changed = True
            for key in keys:
                refined.append([v for v in cell if signatures[v] == key])

        cells = refined
        if not changed:
            return cells


def _relabeled_rows(adj: Sequence[int], order: Sequence[int]) -> Tuple[int, ...]:
    position = [0] * len(adj)
    for i, v in enumerate(order):
        position[v] = i

    rows = [0] * len(adj)
    for v, row in enumerate(adj):
        new_row = 0
        for u in iter_bits(row):
            new_row |= 1 << position[u]
        rows[position[v]] = new_row
    return tuple(rows)


def canonical_labeling(graph: Graph) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    :returns: ``(rows, order)`` where ``rows`` are the adjacency rows of the canonical
        form and ``order[i]`` is the vertex of ``graph`` placed at position ``i``. The
        last position always holds a vertex of maximum degree.
    """
    adj = graph.adj
    n = graph.n
    if n == 0:
        return (), ()

    twins = twin_classes(adj)
    degrees = [popcount(row) for row in adj]
    initial = [
        [v for v in range(n) if degrees[v] == d] for d in sorted(set(degrees))
    ]

    best_rows: Tuple[int, ...] = ()
    best_order: Tuple[int, ...] = ()

    def search(cells: Partition) -> None:
        nonlocal best_rows, best_order

        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            order = tuple(cell[0] for cell in cells)
            rows = _relabeled_rows(adj, order)
            if not best_order or rows < best_rows:
                best_rows = rows
                best_order = order
            return

        cell = cells[target]
        tried = set()
        for v in cell:
            if twins[v] in tried:
                continue
            tried.add(twins[v])
            rest = [u for u in cell if u != v]
            search(refine(adj, cells[:target] + [[v], rest] + cells[target + 1 :]))

    search(refine(adj, initial))
    return best_rows, best_order


def canonical_form(graph: Graph) -> Graph:
    """
    Canonical relabeling of ``graph``: each connected component is labeled on its own
    and the components are laid out in sorted order, so identical components never
    multiply the search. Two graphs are isomorphic iff their canonical forms are
    equal.
    """
    components = components_of(graph.adj, (1 << graph.n) - 1)
    if len(components) <= 1:
        rows, _ = canonical_labeling(graph)
        return Graph._trusted(graph.n, rows)

    parts = []
    for mask in components:
        rows, _ = canonical_labeling(induced(graph, VertexSet(mask)))
        parts.append((len(rows), rows))
    parts.sort()
    return disjoint_union(*(Graph._trusted(size, rows) for size, rows in parts))


def canonical_graph6(graph: Graph) -> str:
    """
    :returns: the graph6 line of the canonical form, usable as an isomorphism key
    """
    return write_graph6(canonical_form(graph))
