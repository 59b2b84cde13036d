import json
import random
from itertools import combinations

import pytest

from pathex import factcheck
from pathex.errors import DomainError
from pathex.factcheck import (
    Y,
    AttachmentKind,
    FactId,
    ReportStatus,
    SpineConfig,
    spine_pair,
    x,
)

ISOLATED = AttachmentKind.ISOLATED
PENDANT = AttachmentKind.PENDANT
PATH3 = AttachmentKind.PATH3


def naive_independent_set(count, conflicts):
    conflicts = {frozenset(pair) for pair in conflicts}
    for size in range(count, 0, -1):
        for nodes in combinations(range(count), size):
            if not any(frozenset(pair) in conflicts for pair in combinations(nodes, 2)):
                return size
    return 0


class TestSpine:
    def test_positions(self):
        assert x(1) == 0
        assert x(13) == 12
        assert spine_pair(13, 1) == (0, 12)

    def test_position_out_of_range(self):
        with pytest.raises(DomainError):
            x(0)
        with pytest.raises(DomainError):
            x(14)

    def test_mirror(self):
        assert factcheck.mirror_vertex(0) == 12
        assert factcheck.mirror_vertex(6) == 6
        assert factcheck.mirror_vertex(Y) == Y
        assert factcheck.mirror_edge((0, 3)) == (9, 12)

    def test_names(self):
        assert factcheck.vertex_name(0) == "x1"
        assert factcheck.vertex_name(Y) == "y"
        assert factcheck.vertex_name(Y + 1, PENDANT) == "z"
        assert factcheck.vertex_name(Y + 2, PATH3) == "y3"

    def test_config_graph(self):
        config = SpineConfig(PATH3, (7,))
        g = config.graph()
        assert g.n == 16
        assert g.edge_count() == 12 + 2 + 1
        assert g.has_edge(Y, x(7))
        assert g.has_edge(Y + 1, Y + 2)

    def test_config_str(self):
        assert str(SpineConfig(ISOLATED, (4, 2))) == "isolated[x2,x4]"
        assert str(SpineConfig(PENDANT)) == "pendant[]"

    def test_config_repeated_hit(self):
        with pytest.raises(DomainError):
            SpineConfig(ISOLATED, (2, 2))

    def test_mirror_config(self):
        config = SpineConfig(PENDANT, (3,), ((x(1), x(5)),))
        mirrored = factcheck.mirror_config(config)
        assert mirrored.hits == (11,)
        assert mirrored.extra_edges == ((x(9), x(13)),)
        assert mirrored.mirrored() == config


class TestMissClaims:
    def test_star_position(self):
        assert factcheck.verify_miss_claim(SpineConfig(ISOLATED), (x(1), Y))

    def test_hit_pair(self):
        assert factcheck.verify_miss_claim(SpineConfig(ISOLATED, (2,)), (x(10), Y))

    def test_path3_cross_edge(self):
        assert factcheck.verify_miss_claim(SpineConfig(PATH3, (7,)), spine_pair(1, 11))

    def test_allowed_co_hit(self):
        assert not factcheck.verify_miss_claim(SpineConfig(ISOLATED, (2,)), (x(4), Y))

    def test_witness_kept(self):
        check = factcheck.check_claim(SpineConfig(ISOLATED), [(x(6), Y)])
        assert check.verified
        check.witness.validate(
            SpineConfig(ISOLATED).graph().with_edges([(x(6), Y)]), factcheck.TWO_P7
        )
        record = check.to_record(SpineConfig(ISOLATED))
        assert record["claim"] == "x6y"
        assert len(record["witness"]) == 2

    def test_existing_edge(self):
        with pytest.raises(DomainError) as exc:
            factcheck.check_claim(SpineConfig(ISOLATED, (2,)), [(x(2), Y)])
        assert exc.value.clause == "edge not in config"


class TestClaims:
    def test_fact2(self):
        claims = factcheck.claims_for(FactId.FACT2, SpineConfig(PATH3, (7,)))
        assert len(claims.singles) == 21
        assert claims.pairs == []
        assert claims.case_constant == 57

    def test_fact1_pairs(self):
        claims = factcheck.claims_for(FactId.FACT1, SpineConfig(ISOLATED, (6,)))
        assert claims.singles == []
        assert len(claims.pairs) == 4
        edges = [edge for pair in claims.pairs for edge in pair]
        assert len(set(edges)) == 8

    def test_fact3_mirror(self):
        left = factcheck.claims_for(FactId.FACT3, SpineConfig(PENDANT, (3,)))
        right = factcheck.claims_for(FactId.FACT3, SpineConfig(PENDANT, (11,)))
        assert sorted(right.singles) == sorted(left.mirrored().singles)

    def test_fact3_middle(self):
        claims = factcheck.claims_for(FactId.FACT3, SpineConfig(PENDANT, (7,)))
        assert len(claims.singles) == 12
        assert claims.case_constant == 66

    def test_fact4_hits(self):
        assert factcheck.FACT4_HITS == (
            (3, 7),
            (3, 10),
            (4, 7),
            (4, 10),
            (4, 11),
            (7, 10),
            (7, 11),
        )

    def test_hypothesis_mismatch(self):
        with pytest.raises(DomainError):
            factcheck.claims_for(FactId.FACT2, SpineConfig(ISOLATED, (7,)))
        with pytest.raises(DomainError):
            factcheck.claims_for(FactId.FACT1, SpineConfig(ISOLATED, (5,)))
        with pytest.raises(DomainError):
            factcheck.claims_for(FactId.FACT3, SpineConfig(PENDANT, (5,)))

    def test_admissible_hit_sets(self):
        for size in (3, 4, 5):
            for hits in factcheck.admissible_hit_sets(size):
                assert all(b - a > 1 for a, b in zip(hits, hits[1:]))
                assert not any(p in hits and p + 8 in hits for p in (2, 3, 4))
        assert (3, 5, 7, 9) in factcheck.admissible_hit_sets(4)
        assert (2, 10) not in factcheck.admissible_hit_sets(2)

    def test_configs(self):
        assert len(factcheck.configs_for(FactId.FACT1)) == 7
        assert len(factcheck.configs_for(FactId.FACT4)) == 7
        assert factcheck.configs_for(FactId.STAR_RULE) == [SpineConfig(ISOLATED)]


class TestBound:
    def test_slots(self):
        slots = factcheck.spine_slots()
        assert len(slots) == 66
        assert (0, 1) not in slots
        assert (0, 2) in slots

    def test_unconstrained(self):
        assert factcheck.derived_bound([], []) == 78

    def test_singles_and_pairs(self):
        singles = [spine_pair(1, 3), spine_pair(1, 4)]
        pairs = [(spine_pair(2, 5), spine_pair(2, 6))]
        assert factcheck.derived_bound(singles, pairs) == 75

    def test_pair_with_removed_edge(self):
        singles = [spine_pair(2, 5)]
        pairs = [(spine_pair(2, 5), spine_pair(2, 6))]
        assert factcheck.derived_bound(singles, pairs) == 77

    def test_mis_against_naive(self):
        rng = random.Random(7)
        for _ in range(40):
            count = rng.randint(1, 12)
            conflicts = [
                pair for pair in combinations(range(count), 2) if rng.random() < 0.3
            ]
            assert factcheck.max_independent_set(
                count, conflicts
            ) == naive_independent_set(count, conflicts)

    def test_mis_triangle(self):
        assert factcheck.max_independent_set(4, [(0, 1), (1, 2), (0, 2)]) == 2


class TestFactReports:
    def test_fact2(self):
        report = factcheck.fact_bound(FactId.FACT2, SpineConfig(PATH3, (7,)))
        assert report.verified_count == 21
        assert report.derived_bound == 57
        assert report.stated_constant == 57
        assert report.passed

    def test_fact1_at_x6(self):
        report = factcheck.fact_bound(FactId.FACT1, SpineConfig(ISOLATED, (6,)))
        assert report.verified_count == 4
        assert report.derived_bound == 74
        assert report.passed

    def test_star_rule(self):
        (report,) = factcheck.verify_all_facts([FactId.STAR_RULE])
        assert report.verified_count == 4
        assert report.derived_bound == 78
        assert report.stated_constant is None
        assert report.passed

    def test_nonisolated_rule(self):
        (report,) = factcheck.verify_all_facts([FactId.NONISOLATED_RULE])
        assert report.verified_count == 4
        assert report.passed

    def test_fact3_symmetry(self):
        reports = {
            report.config.hits: report
            for report in factcheck.verify_all_facts([FactId.FACT3])
        }
        assert reports[(3,)].derived_bound == reports[(11,)].derived_bound
        assert reports[(4,)].derived_bound == reports[(10,)].derived_bound
        assert reports[(7,)].derived_bound == 66
        assert all(report.passed for report in reports.values())

    def test_adjacent_rule(self):
        reports = factcheck.verify_all_facts([FactId.ADJACENT_RULE])
        assert len(reports) == 12
        assert all(report.verified_count == 1 for report in reports)
        assert factcheck.all_passed(reports)

    def test_record(self):
        report = factcheck.fact_bound(FactId.FACT2, SpineConfig(PATH3, (7,)))
        record = json.loads(report.to_json())
        assert record["fact"] == "fact2"
        assert record["config"] == "path3[x7]"
        assert record["status"] == ReportStatus.PASS.value
        assert len(record["claims"]) == 21

    def test_all_passed(self):
        reports = factcheck.verify_all_facts([FactId.FACT2, FactId.HIT_PAIR_RULE])
        assert len(reports) == 4
        assert factcheck.all_passed(reports)
