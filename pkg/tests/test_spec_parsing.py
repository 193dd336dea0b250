from pathlib import Path

import pytest

from trinomial_index.utils.config import EngineSettings, WORKERS_ENV, CUTOFF_ENV
from trinomial_index.utils.error_handling import SpecFileError
from trinomial_index.utils.spec_parsing import (
    expand_degrees, load_scan_spec, parse_residues, parse_scan_spec, parse_scan_spec_safely,
)

DATA = Path(__file__).resolve().parent.parent / "trinomial_index" / "data"

BASE = """
n = 6
a_min = -2
a_max = 2
b_min = 1
b_max = 3
"""


class TestDegreeExpansion:
    """Degree lists and patterns"""

    def test_single_and_list(self):
        """Test plain degrees"""
        assert expand_degrees("6") == [6]
        assert expand_degrees("18, 6") == [6, 18]

    def test_pattern(self):
        """Test 2^1..3 * 3^1..2"""
        assert expand_degrees("2^1..3*3^1..2") == [6, 12, 18, 24, 36, 72]

    def test_plus_one(self):
        """Test the n - 1 pattern suffix"""
        assert expand_degrees("2^0..1*3^1+1") == [4, 7]

    def test_empty(self):
        """Test that an empty degree field is an error"""
        with pytest.raises(SpecFileError):
            expand_degrees(" ")


class TestScanSpec:
    """key = value scan specifications"""

    def test_residues(self):
        """Test the residue list syntax"""
        assert parse_residues("9,26; 18,26") == [(9, 26), (18, 26)]
        assert parse_residues("") == []

    def test_minimal_spec(self):
        """Test defaults of optional keys"""
        spec = parse_scan_spec(BASE)
        assert spec.degrees == [6]
        assert (spec.a_min, spec.a_max, spec.b_min, spec.b_max) == (-2, 2, 1, 3)
        assert spec.modulus is None
        assert spec.theorem is None
        assert spec.workers is None

    def test_comments_and_blank_lines(self):
        """Test that comments are ignored"""
        spec = parse_scan_spec("# header\n" + BASE + "theorem = d61  # trailing\n\n")
        assert spec.theorem == "d61"

    def test_shipped_spec(self):
        """Test the corn11 degree-18 example"""
        spec, error = load_scan_spec(str(DATA / "corn11_n18.scan"))
        assert error is None
        assert spec.degrees == [18]
        assert spec.modulus == 27
        assert spec.residues == [(9, 26), (18, 26)]
        assert spec.theorem == "corn11"

    def test_shipped_pattern_spec(self):
        """Test the corn11 degree-24 example"""
        spec, _ = load_scan_spec(str(DATA / "corn11_n24.scan"))
        assert spec.degrees == [24]
        assert spec.residues == [(0, 26)]

    @pytest.mark.parametrize("text", [
        "a_min = 0\na_max = 1\nb_min = 1\nb_max = 2\n",
        BASE + "colour = blue\n",
        BASE + "residues = 0,1\n",
        BASE.replace("n = 6", "n = 1"),
        BASE.replace("a_min = -2", "a_min = x"),
        BASE + "just some words\n",
        BASE.replace("b_max = 3\n", ""),
        BASE + "modulus = 0\n",
    ])
    def test_invalid(self, text):
        """Test malformed specifications are rejected"""
        with pytest.raises(SpecFileError):
            parse_scan_spec(text)

    def test_safe_parsing(self):
        """Test the (spec, error) tuple"""
        spec, error = parse_scan_spec_safely(BASE + "colour = blue\n")
        assert spec is None
        assert "unknown key 'colour'" in error

    def test_missing_file(self, tmp_path):
        """Test an unreadable path"""
        spec, error = load_scan_spec(str(tmp_path / "missing.scan"))
        assert spec is None
        assert "Cannot read" in error


class TestEngineSettings:
    """Environment overrides"""

    def test_defaults(self):
        """Test the settings without overrides"""
        settings = EngineSettings.from_env({})
        assert settings.workers == 1
        assert settings.discriminant_cutoff == 10**6

    def test_overrides(self):
        """Test integer overrides are applied"""
        settings = EngineSettings.from_env({WORKERS_ENV: "4", CUTOFF_ENV: "1000"})
        assert settings.workers == 4
        assert settings.discriminant_cutoff == 1000

    def test_malformed_overrides_ignored(self):
        """Test non-integer and out-of-range values fall back to defaults"""
        assert EngineSettings.from_env({WORKERS_ENV: "many"}).workers == 1
        assert EngineSettings.from_env({WORKERS_ENV: "0"}).workers == 1
