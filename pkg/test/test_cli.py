import json
from unittest.mock import patch

import pytest

from pathex import cli, factcheck, graphcore
from pathex.cli import EXIT_ERROR, EXIT_FINDING, EXIT_OK, EXIT_USAGE


class TestParser:
    def test_no_command(self, capsys):
        assert cli.run([]) == EXIT_USAGE
        assert "usage" in capsys.readouterr().out

    def test_unknown_flag(self, capsys):
        assert cli.run(["ex", "--n", "14", "--forest", "7,7", "--bogus"]) == EXIT_USAGE

    def test_bad_forest(self, capsys):
        assert cli.run(["ex", "--n", "14", "--forest", "7,x"]) == EXIT_USAGE

    def test_negative_count(self, capsys):
        assert cli.run(["ex", "--n", "-1", "--forest", "7"]) == EXIT_USAGE

    def test_fact_arg(self):
        assert cli._fact_arg("2") is factcheck.FactId.FACT2
        assert cli._fact_arg("star-rule") is factcheck.FactId.STAR_RULE

    @patch.object(cli, "enable_pathex_debug_mode")
    def test_verbose(self, mock_debug, capsys):
        assert cli.run(["-v", "table", "--from", "14", "--to", "14"]) == EXIT_OK
        mock_debug.assert_called_once()

    @patch.object(cli, "init_pathex")
    @patch.object(cli, "run", return_value=EXIT_FINDING)
    def test_main(self, mock_run, mock_init):
        with pytest.raises(SystemExit) as exc:
            cli.main()
        assert exc.value.code == EXIT_FINDING
        mock_init.assert_called_once()


class TestEx:
    def test_2p7(self, capsys):
        assert cli.run(["ex", "--n", "30", "--forest", "7,7"]) == EXIT_OK
        assert capsys.readouterr().out == "ex(30, 2P7) = 136 [5n-14]\n"

    def test_tie(self, capsys):
        assert cli.run(["ex", "--n", "22", "--forest", "7,7"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("ex(22, 2P7) = 96 [[n,14,7]]")
        assert "tie: [n,14,7], 5n-14" in out

    def test_json_lines(self, capsys):
        assert cli.run(
            ["ex", "--n", "14", "--forest", "7,7", "--format", "json-lines"]
        ) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record["value"] == 78
        assert record["terms"] == {"[n,14,7]": 78, "5n-14": 56}
        assert record["tie"] is False

    def test_path(self, capsys):
        assert cli.run(["ex", "--n", "7", "--forest", "7"]) == EXIT_OK
        assert capsys.readouterr().out == "ex(7, P7) = 15 [[n,7,7]]\n"

    def test_theorem7(self, capsys):
        assert cli.run(["ex", "--n", "7", "--forest", "3,4"]) == EXIT_OK
        assert capsys.readouterr().out == "ex(7, P4+P3) = 15 [[n,7,3]]\n"

    def test_conjecture(self, capsys):
        assert cli.run(["ex", "--n", "20", "--forest", "5,5"]) == EXIT_OK
        assert "conjectural" in capsys.readouterr().out

    def test_connected(self, capsys):
        assert cli.run(["ex", "--n", "14", "--forest", "13", "--connected"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("ex(14, P13) = 58")

    def test_connected_forest(self, capsys):
        args = ["ex", "--n", "14", "--forest", "7,7", "--connected"]
        assert cli.run(args) == EXIT_ERROR

    def test_large_n(self, capsys):
        args = ["ex", "--n", "100", "--forest", "7,7", "--large-n"]
        assert cli.run(args) == EXIT_OK
        assert "below the proven range" in capsys.readouterr().out

    def test_domain_error(self, capsys):
        args = ["ex", "--n", "20", "--forest", "5,3", "--mode", "theorem7"]
        assert cli.run(args) == EXIT_ERROR


class TestConstruct:
    def test_2p7_graph6(self, capsys):
        args = ["construct", "--family", "2p7", "--n", "25", "--format", "graph6"]
        assert cli.run(args) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 1
        assert graphcore.read_graph6(lines[0]).edge_count() == 111

    def test_json_lines(self, capsys):
        args = ["construct", "--family", "2p7", "--n", "22", "--format", "json-lines"]
        assert cli.run(args) == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert [record["edges"] for record in records] == [96, 96]

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "path.edges"
        args = ["construct", "--family", "path", "--n", "6", "--k", "4"]
        args += ["--format", "edge-list", "-o", str(path)]
        assert cli.run(args) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert graphcore.load_graphs(path)[0].edge_count() == 6

    def test_path_all(self, capsys):
        args = ["construct", "--family", "path", "--n", "7", "--k", "4", "--all"]
        assert cli.run(args) == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) == 3

    def test_missing_k(self, capsys):
        assert cli.run(["construct", "--family", "path", "--n", "6"]) == EXIT_ERROR

    def test_missing_forest(self, capsys):
        args = ["construct", "--family", "conjecture", "--n", "6"]
        assert cli.run(args) == EXIT_ERROR

    def test_dot(self, capsys):
        args = ["construct", "--family", "kopylov-b", "--n", "8", "--k", "6"]
        assert cli.run(args + ["--format", "dot"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("graph G0 {")


class TestCheck:
    def test_contains_with_witness(self, graph_file, capsys):
        path = graph_file("p14.g6", graphcore.write_graph6(graphcore.path_graph(14)))
        args = ["check", "--input", str(path), "--forest", "7,7", "--witness"]
        assert cli.run(args) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "graph 0: contains 2P7"
        assert len(lines) == 3
        assert all(len(line.split()) == 7 for line in lines[1:])

    def test_free(self, graph_file, capsys):
        text = "# n 14\n" + "".join(
            f"{u} {v}\n" for u in range(13) for v in range(u + 1, 13)
        )
        path = graph_file("k13.edges", text)
        assert cli.run(["check", "--input", str(path), "--forest", "7,7"]) == EXIT_OK
        assert capsys.readouterr().out == "graph 0: free 2P7\n"

    def test_longest_path_json(self, graph_file, capsys):
        path = graph_file("p5.g6", graphcore.write_graph6(graphcore.path_graph(5)))
        args = ["check", "--input", str(path), "--longest-path"]
        assert cli.run(args + ["--format", "json-lines"]) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record == {"index": 0, "n": 5, "longest_path": 5}

    def test_no_query(self, graph_file, capsys):
        path = graph_file("p5.g6", "Bg\n")
        assert cli.run(["check", "--input", str(path)]) == EXIT_ERROR

    def test_bad_input(self, graph_file, capsys):
        path = graph_file("bad.g6", "C\x7f\n")
        assert cli.run(["check", "--input", str(path), "--forest", "3"]) == EXIT_ERROR

    def test_budget(self, graph_file, capsys):
        path = graph_file("p12.g6", graphcore.write_graph6(graphcore.path_graph(12)))
        args = ["check", "--input", str(path), "--forest", "6,6"]
        assert cli.run(args + ["--node-limit", "2"]) == EXIT_ERROR


class TestOracle:
    def test_human(self, capsys):
        assert cli.run(["oracle", "--n", "6", "--forest", "4"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "ex(6, P4) = 6"
        assert lines[1].startswith("witness ")

    def test_connected_json(self, capsys):
        args = ["oracle", "--n", "6", "--forest", "4", "--connected"]
        assert cli.run(args + ["--format", "json-lines"]) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record["value"] == 5
        assert record["connected"] is True

    def test_dump_witnesses(self, tmp_path, capsys):
        path = tmp_path / "extremal.g6"
        args = ["oracle", "--n", "7", "--forest", "4", "--dump-witnesses", str(path)]
        assert cli.run(args) == EXIT_OK
        assert len(graphcore.load_graphs(path)) == 3

    def test_refuses_large(self, capsys):
        assert cli.run(["oracle", "--n", "11", "--forest", "4"]) == EXIT_ERROR


class TestVerifyFacts:
    def test_fact2(self, capsys):
        assert cli.run(["verify-facts", "--fact", "2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines == [
            "fact2 path3[x7]: 21/21 claims verified, "
            "bound 57 (stated 57, case 57) PASS",
            "PASS",
        ]

    @patch.object(factcheck, "verify_all_facts", return_value=[])
    @patch.object(factcheck, "all_passed", return_value=False)
    def test_failure(self, mock_passed, mock_verify, capsys):
        assert cli.run(["verify-facts"]) == EXIT_FINDING
        assert capsys.readouterr().out == "FAIL\n"
        mock_verify.assert_called_once_with(None)

    def test_unknown_fact(self, capsys):
        assert cli.run(["verify-facts", "--fact", "9"]) == EXIT_USAGE


class TestTable:
    def test_crossover(self, capsys):
        assert cli.run(["table", "--from", "21", "--to", "23"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == [
            "21\t94\t91\t94\t[n,14,7]",
            "22\t96\t96\t96\ttie",
            "23\t99\t101\t101\t5n-14",
        ]

    def test_empty_range(self, capsys):
        assert cli.run(["table", "--from", "30", "--to", "20"]) == EXIT_ERROR


class TestCount:
    def test_count(self, capsys):
        assert cli.run(["count", "--n", "4"]) == EXIT_OK
        assert capsys.readouterr().out == "4 vertices: 11 classes (cycle index 11)\n"

    @patch.object(cli, "enumerate_nonisomorphic", return_value=10)
    def test_mismatch(self, mock_enumerate, capsys):
        assert cli.run(["count", "--n", "4"]) == EXIT_FINDING


class TestRepeatable:
    @pytest.mark.parametrize(
        "argv",
        [
            ["ex", "--n", "22", "--forest", "7,7", "--format", "json-lines"],
            ["construct", "--family", "2p7", "--n", "22", "--format", "json-lines"],
            ["oracle", "--n", "6", "--forest", "4", "--format", "json-lines"],
            ["verify-facts", "--fact", "6", "--format", "json-lines"],
            ["table", "--from", "14", "--to", "30"],
        ],
    )
    def test_same_output(self, argv, capsysbinary):
        first_status = cli.run(argv)
        first = capsysbinary.readouterr().out
        assert cli.run(argv) == first_status == EXIT_OK
        assert capsysbinary.readouterr().out == first
        assert first
