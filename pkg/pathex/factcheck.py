"""
Replay of the case analysis behind ``ex(n, 2P_7)``.

A fixed 13-vertex path (the spine ``x1 ... x13``, vertices ``0..12``) is extended by
one attachment outside it: an isolated vertex ``y``, a pendant edge ``y z`` or a path
``y1 y2 y3``, with ``y`` (``y1``) adjacent to a chosen set of spine positions. Every
claim that some extra edge cannot be present is checked by adding that edge and
asking the detector for a ``2P_7``; the witness is kept. The verified non-edges of
the spine then bound the edges inside the spine: 12 spine edges plus the largest set
of the other 66 spine pairs that avoids every verified singleton and takes at most
one pair of every verified exclusion pair.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import dump_record
from .detector import SearchBudget, Witness, contains_forest
from .errors import DomainError
from .formulas import PathForest
from .graphcore import Edge, Graph, from_edges, iter_bits, popcount

logger = logging.getLogger("pathex.factcheck")

TWO_P7 = PathForest.of(7, 7)

#: Number of spine vertices
SPINE_ORDER = 13
#: Edges of the spine path
SPINE_EDGES = SPINE_ORDER - 1
#: First attachment vertex (``y`` or ``y1``)
Y = SPINE_ORDER

#: Spine positions an outside vertex may hit once the star and pair rules apply
ADMISSIBLE_HITS = (2, 3, 4, 5, 7, 9, 10, 11, 12)
#: Spine positions no outside vertex may hit
STAR_POSITIONS = (1, 6, 8, 13)
#: Spine positions a non-isolated outside vertex may hit
NONISOLATED_HITS = (3, 4, 7, 10, 11)
#: ``y`` cannot hit both ``x_p`` and ``x_{p+8}`` for these ``p``
HIT_PAIR_STARTS = (2, 3, 4)
#: Hit pairs of a non-isolated vertex
FACT4_HITS = tuple(
    pair
    for pair in combinations(NONISOLATED_HITS, 2)
    if pair[1] - pair[0] > 1 and pair != (3, 11)
)


class AttachmentKind(Enum):
    ISOLATED = "isolated"
    PENDANT = "pendant"
    PATH3 = "path3"

    @property
    def size(self) -> int:
        return {"isolated": 1, "pendant": 2, "path3": 3}[self.value]


class FactId(Enum):
    ADJACENT_RULE = "adjacent-rule"
    STAR_RULE = "star-rule"
    HIT_PAIR_RULE = "hit-pair-rule"
    NONISOLATED_RULE = "nonisolated-rule"
    P3_RULE = "p3-rule"
    FACT1 = "fact1"
    FACT2 = "fact2"
    FACT3 = "fact3"
    FACT4 = "fact4"
    FACT5 = "fact5"
    FACT6 = "fact6"
    FACT7 = "fact7"

    @property
    def is_rule(self) -> bool:
        return self.value.endswith("-rule")


#: Stated bounds on the number of edges inside the spine
STATED_CONSTANTS: Dict[FactId, int] = {
    FactId.FACT1: 74,
    FactId.FACT2: 57,
    FactId.FACT3: 68,
    FactId.FACT4: 59,
    FactId.FACT5: 50,
    FactId.FACT6: 59,
    FactId.FACT7: 67,
}


class ReportStatus(Enum):
    PASS = "pass"
    #: every claim holds but pairwise counting stays above the case constant
    PAIRWISE_INSUFFICIENT = "pairwise-insufficient"
    CLAIM_FAILED = "claim-failed"


def x(i: int) -> int:
    """
    :returns: the vertex of spine position ``x_i`` (1-based)
    """
    if not 1 <= i <= SPINE_ORDER:
        raise DomainError(f"spine position x{i} does not exist", "1 <= i <= 13")
    return i - 1


def spine_pair(a: int, b: int) -> Edge:
    u, v = x(a), x(b)
    return (u, v) if u < v else (v, u)


def mirror_vertex(v: int) -> int:
    """
    Reversal relabeling ``x_i -> x_{14-i}``; attachment vertices are fixed.
    """
    return SPINE_ORDER - 1 - v if v < SPINE_ORDER else v


def mirror_edge(edge: Edge) -> Edge:
    u, v = mirror_vertex(edge[0]), mirror_vertex(edge[1])
    return (u, v) if u < v else (v, u)


def vertex_name(v: int, kind: AttachmentKind = AttachmentKind.ISOLATED) -> str:
    if v < SPINE_ORDER:
        return f"x{v + 1}"
    offset = v - SPINE_ORDER
    if kind is AttachmentKind.PATH3:
        return f"y{offset + 1}"
    return ("y", "z")[offset]


@dataclass(frozen=True)
class SpineConfig:
    """
    The spine plus one attachment whose first vertex hits ``hits`` (1-based spine
    positions), optionally with extra edges under test.
    """

    kind: AttachmentKind
    hits: Tuple[int, ...] = ()
    extra_edges: Tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        hits = tuple(sorted(self.hits))
        if len(set(hits)) != len(hits):
            raise DomainError(f"repeated hit position in {hits}", "distinct hits")
        for i in hits:
            x(i)
        object.__setattr__(self, "hits", hits)

    @property
    def n(self) -> int:
        return SPINE_ORDER + self.kind.size

    def graph(self) -> Graph:
        edges = [(v, v + 1) for v in range(SPINE_ORDER - 1)]
        edges.extend((v, v + 1) for v in range(Y, self.n - 1))
        edges.extend((Y, x(i)) for i in self.hits)
        edges.extend(self.extra_edges)
        return from_edges(self.n, edges)

    def mirrored(self) -> "SpineConfig":
        return SpineConfig(
            self.kind,
            tuple(SPINE_ORDER + 1 - i for i in self.hits),
            tuple(mirror_edge(edge) for edge in self.extra_edges),
        )

    def describe_edge(self, edge: Edge) -> str:
        return "".join(vertex_name(v, self.kind) for v in edge)

    def __str__(self) -> str:
        hits = ",".join(f"x{i}" for i in self.hits)
        return f"{self.kind.value}[{hits}]"


def mirror_config(config: SpineConfig) -> SpineConfig:
    return config.mirrored()


@dataclass(frozen=True)
class ClaimCheck:
    """
    One forbidden-edge claim: a single edge, or two edges that cannot both be
    present. ``verified`` is set when adding the edges yields a ``2P_7``.
    """

    edges: Tuple[Edge, ...]
    verified: bool
    witness: Optional[Witness] = None

    def to_record(self, config: SpineConfig) -> dict:
        record: dict = {
            "claim": "+".join(config.describe_edge(edge) for edge in self.edges),
            "verified": self.verified,
        }
        if self.witness is not None:
            record["witness"] = [list(path) for path in self.witness.paths]
        return record


def check_claim(
    config: SpineConfig, edges: Sequence[Edge], budget: Optional[SearchBudget] = None
) -> ClaimCheck:
    """
    Add ``edges`` to the configuration and search for a ``2P_7``.

    :raises DomainError: if an edge is already present
    :raises SearchIndeterminateError: if the detector runs out of budget
    """
    base = config.graph()
    for u, v in edges:
        if base.has_edge(u, v):
            raise DomainError(
                f"{config.describe_edge((u, v))} is already in {config}",
                "edge not in config",
            )

    found, witness = contains_forest(base.with_edges(edges), TWO_P7, budget)
    return ClaimCheck(tuple(edges), found, witness)


def verify_miss_claim(
    config: SpineConfig, edge: Edge, budget: Optional[SearchBudget] = None
) -> bool:
    """
    :returns: True iff adding ``edge`` to the configuration creates a ``2P_7``, that
        is, the edge is confirmed forbidden
    """
    return check_claim(config, (edge,), budget).verified


#
# forbidden-edge claims per fact
#


@dataclass
class ClaimSet:
    singles: List[Edge]
    pairs: List[Tuple[Edge, Edge]]
    case_constant: Optional[int] = None

    def mirrored(self) -> "ClaimSet":
        return ClaimSet(
            [mirror_edge(edge) for edge in self.singles],
            [(mirror_edge(a), mirror_edge(b)) for a, b in self.pairs],
            self.case_constant,
        )


def _misses(left: Iterable[int], right: Iterable[int]) -> List[Edge]:
    right = list(right)
    return [spine_pair(a, b) for a in left for b in right if a != b]


def _independent(positions: Iterable[int]) -> List[Edge]:
    return [spine_pair(a, b) for a, b in combinations(sorted(set(positions)), 2)]


def _unique(edges: Iterable[Edge]) -> List[Edge]:
    return list(dict.fromkeys(edges))


def _cross_sets(hits: Sequence[int]) -> Tuple[List[int], List[int]]:
    before = sorted({i - 1 for i in hits} | {SPINE_ORDER})
    after = sorted({1} | {i + 1 for i in hits})
    return before, after


def _require(
    config: SpineConfig, kind: AttachmentKind, count: int, fact: FactId
) -> None:
    if config.kind is not kind or len(config.hits) != count:
        raise DomainError(
            f"{config} does not match the hypothesis of {fact.value}",
            f"{kind.value} attachment with {count} hit(s)",
        )


def _rule_claims(fact: FactId, config: SpineConfig) -> ClaimSet:
    if fact is FactId.ADJACENT_RULE:
        _require(config, AttachmentKind.ISOLATED, 1, fact)
        return ClaimSet([(x(config.hits[0] + 1), Y)], [])
    if fact is FactId.STAR_RULE:
        _require(config, AttachmentKind.ISOLATED, 0, fact)
        return ClaimSet([(x(i), Y) for i in STAR_POSITIONS], [])
    if fact is FactId.HIT_PAIR_RULE:
        _require(config, AttachmentKind.ISOLATED, 1, fact)
        return ClaimSet([(x(config.hits[0] + 8), Y)], [])
    if fact is FactId.NONISOLATED_RULE:
        _require(config, AttachmentKind.PENDANT, 0, fact)
        others = [i for i in ADMISSIBLE_HITS if i not in NONISOLATED_HITS]
        return ClaimSet([(x(i), Y) for i in others], [])

    _require(config, AttachmentKind.PATH3, 0, fact)
    return ClaimSet([(x(i), Y) for i in NONISOLATED_HITS if i != 7], [])


def _fact1_claims(config: SpineConfig) -> ClaimSet:
    _require(config, AttachmentKind.ISOLATED, 1, FactId.FACT1)
    (i,) = config.hits
    if i < 6 or i == SPINE_ORDER:
        raise DomainError(f"fact1 takes a hit x{i} with 6 <= i <= 12", "6 <= i <= 12")
    pairs = [
        (spine_pair(SPINE_ORDER, j), spine_pair(i + 1, j + 1)) for j in range(1, i - 1)
    ]
    return ClaimSet([], pairs, 74)


def _fact2_claims(config: SpineConfig) -> ClaimSet:
    _require(config, AttachmentKind.PATH3, 1, FactId.FACT2)
    if config.hits != (7,):
        raise DomainError(f"fact2 needs y1 to hit x7, got {config}", "y1 hits x7")
    singles = _misses((1, 2, 3, 5, 6), (11, 12, 13)) + _misses(
        (8, 9, 11, 12, 13), (1, 2, 3)
    )
    return ClaimSet(_unique(singles), [], 57)


def _fact3_claims(config: SpineConfig) -> ClaimSet:
    _require(config, AttachmentKind.PENDANT, 1, FactId.FACT3)
    (i,) = config.hits
    if i not in NONISOLATED_HITS:
        raise DomainError(f"fact3 hit x{i} is not allowed", "i in {3,4,7,10,11}")
    if i in (10, 11):
        return _fact3_claims(config.mirrored()).mirrored()
    if i == 7:
        singles = _misses((1, 2, 5, 6), (12, 13)) + _misses((8, 9, 12, 13), (1, 2))
        return ClaimSet(_unique(singles), [], 66)
    return ClaimSet(_misses(range(1, i), (i + 1, i + 2, 9, 12, 13)), [], 68)


def _fact4_claims(config: SpineConfig) -> ClaimSet:
    _require(config, AttachmentKind.PENDANT, 2, FactId.FACT4)
    i, j = config.hits
    if config.hits not in FACT4_HITS:
        raise DomainError(f"fact4 hits x{i}, x{j} are not allowed", "admissible pair")
    # x3 first, then its mirror x11, then x4 and its mirror x10
    if i != 3 and (j == 11 or i != 4):
        return _fact4_claims(config.mirrored()).mirrored()

    far = (4, 5, 6, 8, 9, 11, 12, 13) if i == 3 else (5, 6, 9, 12, 13)
    singles = _misses(range(1, i), far) + _misses((j - 2, j - 1), (12, 13))
    return ClaimSet(_unique(singles), [], 58 if i == 3 else 59)


def _fact5_claims(config: SpineConfig) -> ClaimSet:
    _require(config, AttachmentKind.ISOLATED, 5, FactId.FACT5)
    hits = config.hits
    i, j, _, ell, m = hits
    before, after = _cross_sets(hits)
    singles = _independent(before) + _independent(after)

    if i == 2 and m == 12:
        singles += _misses((j,), (10, 11)) + _misses((ell,), (3, 4))
    elif i == 2:
        q = _consecutive_gap(range(1, 8), hits)
        singles += _misses((m,), (3, 6)) + _misses((ell,), (q, q + 1))
    elif m == 12:
        q = _consecutive_gap(range(7, 14), hits)
        singles += _misses((i,), (8, 11)) + _misses((j,), (q, q + 1))
    return ClaimSet(_unique(singles), [], 50)


def _consecutive_gap(window: Iterable[int], hits: Sequence[int]) -> int:
    free = [p for p in window if p not in hits]
    for p in free:
        if p + 1 in free:
            return p
    raise DomainError(f"no two consecutive free positions beside {hits}", "free pair")


def _fact6_extras(hits: Tuple[int, ...], mirrored: bool = False) -> List[Edge]:
    if 2 in hits and 12 in hits:
        return [spine_pair(3, 11), spine_pair(1, 10), spine_pair(4, 13)]
    if 2 in hits and 7 in hits:
        return _misses((11,), (3, 6))
    if 2 in hits:
        return _misses((11,), (5, 8))
    if hits == (3, 5, 7, 9):
        return _misses((11,), (1, 4))
    if mirrored:
        return []
    reflected = tuple(sorted(SPINE_ORDER + 1 - i for i in hits))
    return [mirror_edge(edge) for edge in _fact6_extras(reflected, True)]


def _fact6_claims(config: SpineConfig) -> ClaimSet:
    _require(config, AttachmentKind.ISOLATED, 4, FactId.FACT6)
    before, after = _cross_sets(config.hits)
    singles = _independent(before) + _independent(after)
    if len(set(before) & set(after)) == 3:
        singles += _fact6_extras(config.hits)
    return ClaimSet(_unique(singles), [], 59)


def _fact7_claims(config: SpineConfig) -> ClaimSet:
    _require(config, AttachmentKind.ISOLATED, 3, FactId.FACT7)
    before, after = _cross_sets(config.hits)
    return ClaimSet(_unique(_independent(before) + _independent(after)), [], 67)


def claims_for(fact: FactId, config: SpineConfig) -> ClaimSet:
    """
    :returns: the forbidden edges and exclusion pairs the fact asserts for
        ``config``, with the constant of the matching case
    :raises DomainError: if ``config`` does not match the fact's hypothesis
    """
    if fact.is_rule:
        return _rule_claims(fact, config)
    builder = {
        FactId.FACT1: _fact1_claims,
        FactId.FACT2: _fact2_claims,
        FactId.FACT3: _fact3_claims,
        FactId.FACT4: _fact4_claims,
        FactId.FACT5: _fact5_claims,
        FactId.FACT6: _fact6_claims,
        FactId.FACT7: _fact7_claims,
    }[fact]
    return builder(config)


#
# configurations
#


def admissible_hit_sets(size: int) -> List[Tuple[int, ...]]:
    """
    :returns: every ``size``-subset of :data:`ADMISSIBLE_HITS` with no two adjacent
        positions and no pair ``x_p, x_{p+8}``
    """
    result = []
    for hits in combinations(ADMISSIBLE_HITS, size):
        if any(b - a == 1 for a, b in zip(hits, hits[1:])):
            continue
        if any(p in hits and p + 8 in hits for p in HIT_PAIR_STARTS):
            continue
        result.append(hits)
    return result


def configs_for(fact: FactId) -> List[SpineConfig]:
    isolated = AttachmentKind.ISOLATED
    pendant = AttachmentKind.PENDANT
    if fact is FactId.ADJACENT_RULE:
        return [SpineConfig(isolated, (i,)) for i in range(1, SPINE_ORDER)]
    if fact is FactId.STAR_RULE:
        return [SpineConfig(isolated)]
    if fact is FactId.HIT_PAIR_RULE:
        return [SpineConfig(isolated, (p,)) for p in HIT_PAIR_STARTS]
    if fact is FactId.NONISOLATED_RULE:
        return [SpineConfig(pendant)]
    if fact is FactId.P3_RULE:
        return [SpineConfig(AttachmentKind.PATH3)]
    if fact is FactId.FACT1:
        return [SpineConfig(isolated, (i,)) for i in range(6, SPINE_ORDER)]
    if fact is FactId.FACT2:
        return [SpineConfig(AttachmentKind.PATH3, (7,))]
    if fact is FactId.FACT3:
        return [SpineConfig(pendant, (i,)) for i in NONISOLATED_HITS]
    if fact is FactId.FACT4:
        return [SpineConfig(pendant, pair) for pair in FACT4_HITS]

    size = {FactId.FACT5: 5, FactId.FACT6: 4, FactId.FACT7: 3}[fact]
    return [SpineConfig(isolated, hits) for hits in admissible_hit_sets(size)]


#
# bound
#


def spine_slots() -> List[Edge]:
    """
    :returns: the 66 pairs of spine vertices that are not spine edges
    """
    return [
        (u, v) for u in range(SPINE_ORDER) for v in range(u + 2, SPINE_ORDER)
    ]


def max_independent_set(count: int, conflicts: Iterable[Tuple[int, int]]) -> int:
    """
    Exact size of a largest independent set of the conflict graph on ``count``
    nodes, by branch and bound over bit masks. Nodes without conflicts are counted
    directly.
    """
    adj = [0] * count
    for a, b in conflicts:
        if a != b:
            adj[a] |= 1 << b
            adj[b] |= 1 << a

    free = sum(1 for row in adj if not row)
    active = 0
    for v, row in enumerate(adj):
        if row:
            active |= 1 << v

    best = 0

    def branch(candidates: int, size: int) -> None:
        nonlocal best
        if size + popcount(candidates) <= best:
            return
        if not candidates:
            best = size
            return

        pivot = max(iter_bits(candidates), key=lambda v: popcount(adj[v] & candidates))
        if not adj[pivot] & candidates:
            best = size + popcount(candidates)
            return

        branch(candidates & ~(1 << pivot) & ~adj[pivot], size + 1)
        branch(candidates & ~(1 << pivot), size)

    branch(active, 0)
    return free + best


def derived_bound(singles: Iterable[Edge], pairs: Iterable[Tuple[Edge, Edge]]) -> int:
    """
    :returns: 12 plus the largest number of non-spine spine pairs that avoids every
        edge of ``singles`` and takes at most one edge of every pair in ``pairs``
    """
    removed = set(singles)
    kept = [slot for slot in spine_slots() if slot not in removed]
    index = {slot: i for i, slot in enumerate(kept)}
    conflicts = [(index[a], index[b]) for a, b in pairs if a in index and b in index]
    return SPINE_EDGES + max_independent_set(len(index), conflicts)


@dataclass(frozen=True)
class FactReport:
    fact_id: FactId
    config: SpineConfig
    claims_checked: Tuple[ClaimCheck, ...]
    derived_bound: int
    #: stated bound of the fact, None for the attachment rules
    stated_constant: Optional[int]
    #: bound of the case the configuration falls under
    case_constant: Optional[int]
    status: ReportStatus

    @property
    def passed(self) -> bool:
        return self.status is ReportStatus.PASS

    @property
    def verified_count(self) -> int:
        return sum(1 for claim in self.claims_checked if claim.verified)

    def to_record(self) -> dict:
        return {
            "fact": self.fact_id.value,
            "config": str(self.config),
            "claims": [claim.to_record(self.config) for claim in self.claims_checked],
            "verified": self.verified_count,
            "derived_bound": self.derived_bound,
            "stated_constant": self.stated_constant,
            "case_constant": self.case_constant,
            "status": self.status.value,
        }

    def to_json(self) -> str:
        return dump_record(self.to_record())


def _on_spine(edge: Edge) -> bool:
    return edge[0] < SPINE_ORDER and edge[1] < SPINE_ORDER


def fact_bound(
    fact: FactId, config: SpineConfig, budget: Optional[SearchBudget] = None
) -> FactReport:
    """
    Verify every claim of ``fact`` for ``config`` and derive the spine bound from the
    verified ones.
    """
    claims = claims_for(fact, config)

    checks = [check_claim(config, (edge,), budget) for edge in claims.singles]
    checks.extend(check_claim(config, pair, budget) for pair in claims.pairs)
    for check in checks:
        if not check.verified:
            logger.warning(
                "%s %s: claim %s not confirmed",
                fact.value,
                config,
                "+".join(config.describe_edge(edge) for edge in check.edges),
            )

    verified_singles = [
        check.edges[0]
        for check in checks
        if check.verified and len(check.edges) == 1 and _on_spine(check.edges[0])
    ]
    verified_pairs = [
        (check.edges[0], check.edges[1])
        for check in checks
        if check.verified and len(check.edges) == 2
    ]
    bound = derived_bound(verified_singles, verified_pairs)

    if not all(check.verified for check in checks):
        status = ReportStatus.CLAIM_FAILED
    elif claims.case_constant is not None and bound > claims.case_constant:
        status = ReportStatus.PAIRWISE_INSUFFICIENT
    else:
        status = ReportStatus.PASS

    logger.debug("%s %s: bound %d, %s", fact.value, config, bound, status.value)
    return FactReport(
        fact_id=fact,
        config=config,
        claims_checked=tuple(checks),
        derived_bound=bound,
        stated_constant=STATED_CONSTANTS.get(fact),
        case_constant=claims.case_constant,
        status=status,
    )


def verify_all_facts(
    facts: Optional[Iterable[FactId]] = None, budget: Optional[SearchBudget] = None
) -> List[FactReport]:
    """
    Produce one report per admissible configuration of every fact and rule.
    """
    reports = []
    for fact in facts or FactId:
        for config in configs_for(fact):
            reports.append(fact_bound(fact, config, budget))
    passed = sum(1 for report in reports if report.passed)
    logger.info("fact check: %d of %d reports pass", passed, len(reports))
    return reports


def all_passed(reports: Iterable[FactReport]) -> bool:
    """
    :returns: True iff every report passes and no derived bound exceeds its fact's
        stated constant
    """
    return all(
        report.passed and report.derived_bound <= (report.stated_constant or 78)
        for report in reports
    )
