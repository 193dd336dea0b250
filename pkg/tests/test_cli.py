import json

import pytest

from trinomial_index.cli import build_parser, main, parse_coefficients
from trinomial_index.contracts import ScanSummary, parse_report
from trinomial_index.utils.error_handling import DomainError, ExitCode


class TestParser:
    """Argument parsing"""

    def test_negative_coefficients(self):
        """Test that negative positionals are not read as options"""
        args = build_parser().parse_args(["analyze", "3", "-2", "1"])
        assert (args.n, args.a, args.b) == (3, -2, 1)

    def test_coefficient_list(self):
        """Test the --phi coefficient syntax"""
        assert parse_coefficients("-1,1") == [-1, 1]
        with pytest.raises(DomainError):
            parse_coefficients("1,x")


class TestAnalyzeCommand:
    """trinomial-index analyze"""

    def test_not_monogenic(self, capsys):
        """Test the summary line and exit code"""
        assert main(["analyze", "5", "5", "2"]) == ExitCode.VERDICT
        out = capsys.readouterr().out
        assert "not monogenic; 2 | i(K) since P_1 = 3 > N_2(1) = 2" in out

    def test_json(self, capsys):
        """Test the versioned JSON report"""
        assert main(["analyze", "2", "0", "1", "--json"]) == ExitCode.VERDICT
        data = json.loads(capsys.readouterr().out)
        assert data["status"] == "zk-equals-ztheta"
        assert data["schema_version"] == "1"

    def test_inconclusive_exit_code(self, capsys):
        """Test exit code 2 when no verdict is reached"""
        assert main(["analyze", "5", "5", "2", "--prime", "3"]) == ExitCode.INCONCLUSIVE
        assert capsys.readouterr().out.startswith("inconclusive")

    def test_reducible_input(self, capsys):
        """Test exit code 3 and the detected factor on stderr"""
        assert main(["analyze", "3", "-2", "1"]) == ExitCode.INPUT_ERROR
        assert "factor: x - 1" in capsys.readouterr().err

    def test_degree_too_small(self, capsys):
        """Test exit code 3 for n < 2"""
        assert main(["analyze", "1", "2", "3"]) == ExitCode.INPUT_ERROR
        assert capsys.readouterr().err.startswith("error:")

    def test_verbose_transcript(self, capsys):
        """Test that --verbose prints the transcript"""
        main(["analyze", "4", "8", "8", "--verbose"])
        out = capsys.readouterr().out
        assert "monogenic; generator theta^3/4" in out
        assert "| mono:" in out


class TestPolygonCommand:
    """trinomial-index polygon"""

    def test_default_lifts(self, capsys):
        """Test the shape line for x^4 + 8x + 8 at 2"""
        assert main(["polygon", "4", "8", "8", "--prime", "2"]) == ExitCode.VERDICT
        out = capsys.readouterr().out
        assert "shape: [(4, 1)] (complete)" in out
        assert "slope -3/4" in out

    def test_explicit_phi(self, capsys):
        """Test a user-supplied lift"""
        assert main(["polygon", "5", "5", "2", "--prime", "2", "--phi=-1,1"]) == ExitCode.VERDICT
        out = capsys.readouterr().out
        assert "vertices: [(0, 3), (1, 1), (4, 0)]" in out

    def test_phi_not_a_factor(self, capsys):
        """Test a lift that is not an irreducible factor mod p"""
        assert main(["polygon", "5", "5", "2", "--prime", "2", "--phi=1,0,1"]) == ExitCode.INCONCLUSIVE
        assert "is not an irreducible factor" in capsys.readouterr().out

    def test_second_order(self, capsys):
        """Test order-two output for x^5 + 4x + 8"""
        assert main(["polygon", "5", "4", "8", "--prime", "2", "--second-order"]) == ExitCode.VERDICT
        out = capsys.readouterr().out
        assert "order two for" in out
        assert "shape: [(1, 1), (4, 1)]" in out


class TestCertifyCommand:
    """trinomial-index certify"""

    def test_agreement(self, capsys):
        """Test a confirmed clause"""
        assert main(["certify", "mono", "4", "8", "8"]) == ExitCode.VERDICT
        out = capsys.readouterr().out
        assert "engine agrees" in out
        assert "generator theta^3/4" in out

    def test_disagreement(self, capsys):
        """Test exit code 2 when the engine does not confirm the clause"""
        assert main(["certify", "d51", "5", "4", "8"]) == ExitCode.INCONCLUSIVE
        assert "engine disagrees" in capsys.readouterr().out

    def test_json(self, capsys):
        """Test the certificate parses through the tagged union"""
        main(["certify", "d51", "5", "5", "2", "--json"])
        certificate = parse_report(capsys.readouterr().out)
        assert certificate.type == "family_certificate"
        assert certificate.clause == "d51(1)"

    def test_unknown_theorem(self, capsys):
        """Test exit code 3 for an unknown theorem"""
        assert main(["certify", "nope", "4", "8", "8"]) == ExitCode.INPUT_ERROR
        assert "unknown theorem" in capsys.readouterr().err


class TestScanCommand:
    """trinomial-index scan"""

    def test_scan_with_output(self, tmp_path, capsys):
        """Test table output and the JSON lines file"""
        output = tmp_path / "rows.jsonl"
        spec = tmp_path / "small.scan"
        spec.write_text(
            "n = 2\na_min = 0\na_max = 1\nb_min = 1\nb_max = 2\n"
            f"output = {output}\n"
        )
        assert main(["scan", "--spec", str(spec)]) == ExitCode.VERDICT
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].split("\t") == ["n", "a", "b", "status", "clause", "engine", "witnesses"]
        assert len(lines) == 6
        assert lines[-1].startswith("rows: 4")
        records = output.read_text().splitlines()
        assert len(records) == 5
        summary = parse_report(records[-1])
        assert isinstance(summary, ScanSummary)
        assert summary.rows == 4

    def test_bad_spec(self, tmp_path, capsys):
        """Test exit code 3 for an invalid specification"""
        spec = tmp_path / "bad.scan"
        spec.write_text("colour = blue\n")
        assert main(["scan", "--spec", str(spec)]) == ExitCode.INPUT_ERROR
        assert "unknown key" in capsys.readouterr().err
