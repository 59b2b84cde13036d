from unittest.mock import patch

import pytest

from pathex import constructions, graphcore
from pathex.constructions import TWO_P7
from pathex.detector import contains_forest
from pathex.errors import CertificationError, DomainError
from pathex.formulas import (
    PathForest,
    bracket_nml,
    ex_2p7,
    ex_connected_path,
    ex_path,
)


def edge_counts(graphs):
    return sorted(graph.edge_count() for graph in graphs)


class TestCertify:
    def test_free(self, two_p7):
        g = graphcore.disjoint_union(graphcore.complete(13), graphcore.empty_graph(1))
        assert constructions.certify(g, two_p7, 78) is g

    def test_contains(self, two_p7):
        with pytest.raises(CertificationError):
            constructions.certify(graphcore.complete(14), two_p7)

    def test_edge_count(self, two_p7):
        g = graphcore.complete(13)
        with pytest.raises(CertificationError):
            constructions.certify(g, two_p7, 77)

    def test_dedup(self):
        first = graphcore.path_graph(3)
        same = graphcore.from_edges(3, [(0, 2), (1, 2)])
        graphs = constructions.dedup([first, same, graphcore.complete(3)])
        assert graphs == [first, graphcore.complete(3)]


class TestPathFamilies:
    def test_cliques(self):
        assert constructions.extremal_path_cliques(6, 4) == graphcore.disjoint_union(
            graphcore.complete(3), graphcore.complete(3)
        )
        assert constructions.extremal_path_cliques(7, 7).edge_count() == 15
        assert constructions.extremal_path_cliques(8, 14) == graphcore.complete(8)

    def test_cliques_invalid(self):
        with pytest.raises(DomainError) as exc:
            constructions.extremal_path_cliques(6, 2)
        assert exc.value.clause == "k >= 3"

    def test_cliques_match_formula(self):
        for k in range(3, 9):
            for n in range(0, 30):
                graph = constructions.extremal_path_cliques(n, k)
                assert graph.edge_count() == ex_path(n, k).value
                assert not contains_forest(graph, PathForest.of(k))[0]

    def test_special(self):
        g = constructions.extremal_path_special(8, 6, 0)
        assert g.n == 8
        assert g.edge_count() == 13
        assert not contains_forest(g, PathForest.of(6))[0]

        g = constructions.extremal_path_special(7, 6, 0)
        assert g.edge_count() == 11
        assert not contains_forest(g, PathForest.of(6))[0]

    def test_special_remainder(self):
        with pytest.raises(DomainError) as exc:
            constructions.extremal_path_special(9, 6, 0)
        assert exc.value.clause == "r = k/2 or r = (k-2)/2"

    def test_special_odd(self):
        with pytest.raises(DomainError) as exc:
            constructions.extremal_path_special(8, 7, 0)
        assert exc.value.clause == "k even"

    def test_special_s_range(self):
        with pytest.raises(DomainError) as exc:
            constructions.extremal_path_special(8, 6, 1)
        assert exc.value.clause == "0 <= s < t"

    def test_special_no_block(self):
        with pytest.raises(DomainError) as exc:
            constructions.extremal_path_special(2, 4, 0)
        assert exc.value.clause == "t > 0"

    def test_special_every_s(self):
        # n = 3 * 5 + 3 admits s = 0, 1, 2 for k = 6
        for s in range(3):
            g = constructions.extremal_path_special(18, 6, s)
            assert g.edge_count() == bracket_nml(18, 6, 6)
            assert not contains_forest(g, PathForest.of(6))[0]

    def test_family(self):
        graphs = constructions.extremal_path_family(7, 4)
        assert len(graphs) == 3
        assert edge_counts(graphs) == [6, 6, 6]
        assert graphs[0] == constructions.extremal_path_cliques(7, 4)

    def test_family_odd_k(self):
        assert len(constructions.extremal_path_family(9, 7)) == 1


class TestKopylov:
    def test_a(self):
        g = constructions.kopylov_A(14, 13)
        assert g.edge_count() == 58
        assert g.is_connected()

    def test_b(self):
        assert constructions.kopylov_B(22, 14).edge_count() == 111
        assert constructions.kopylov_B(22, 13).edge_count() == 96

    def test_b_matches_connected_bound(self):
        for n in range(14, 41):
            g = constructions.kopylov_B(n, 14)
            assert g.is_connected()
            assert g.edge_count() == ex_connected_path(n, 14).terms[1].value

    def test_attain_connected_bound(self):
        for k in range(4, 9):
            for n in range(k, 17):
                counts = [
                    constructions.kopylov_A(n, k).edge_count(),
                    constructions.kopylov_B(n, k).edge_count(),
                ]
                assert max(counts) == ex_connected_path(n, k).value

    def test_invalid(self):
        with pytest.raises(DomainError) as exc:
            constructions.kopylov_A(5, 3)
        assert exc.value.clause == "k >= 4"
        with pytest.raises(DomainError) as exc:
            constructions.kopylov_B(3, 4)
        assert exc.value.clause == "n >= k"

    @patch.object(constructions, "free_check")
    def test_certification_failure(self, mock_check):
        mock_check.return_value.free = False
        mock_check.return_value.witness.to_lines.return_value = ["0 1 2 3"]
        with pytest.raises(CertificationError):
            constructions.kopylov_A(6, 4)
        mock_check.assert_called_once()


class TestTwoP7:
    def test_fourteen(self):
        graphs = constructions.extremal_2p7(14)
        assert graphs == [
            graphcore.disjoint_union(graphcore.complete(13), graphcore.complete(1))
        ]
        assert graphs[0].edge_count() == 78

    def test_twenty_five(self):
        graphs = constructions.extremal_2p7(25)
        assert len(graphs) == 1
        assert graphs[0].edge_count() == 111
        assert graphs[0].is_connected()

    def test_tie(self):
        graphs = constructions.extremal_2p7(22)
        assert len(graphs) == 2
        assert edge_counts(graphs) == [96, 96]
        assert not graphs[0].is_connected()
        assert graphs[-1].is_connected()

    def test_edge_counts(self):
        for n in (15, 19, 21, 23):
            for graph in constructions.extremal_2p7(n):
                assert graph.edge_count() == ex_2p7(n).value

    def test_small_n(self):
        with pytest.raises(DomainError):
            constructions.extremal_2p7(13)


class TestConjectureFamily:
    def test_two_p7(self):
        graphs = constructions.conjecture_family(30, TWO_P7)
        assert 136 in edge_counts(graphs)
        for graph in graphs:
            assert not contains_forest(graph, TWO_P7)[0]

    def test_4_4(self):
        graphs = constructions.conjecture_family(8, PathForest.of(4, 4))
        counts = edge_counts(graphs)
        assert max(counts) == 21
        assert 18 in counts

    def test_small_n_uses_clique(self):
        graphs = constructions.conjecture_family(5, PathForest.of(4, 3))
        assert graphcore.complete(5) in graphs

    def test_invalid(self):
        with pytest.raises(DomainError) as exc:
            constructions.conjecture_family(10, PathForest.of(3, 3))
        assert exc.value.clause == "k_1 > 3"
        with pytest.raises(DomainError) as exc:
            constructions.conjecture_family(10, PathForest.of(4, 2))
        assert exc.value.clause == "k_i >= 3"
