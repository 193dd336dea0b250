import itertools
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from trinomial_index.contracts import ScanSpec
from trinomial_index.utils.error_handling import SpecFileError

logger = logging.getLogger(__name__)

KNOWN_KEYS = {"n", "a_min", "a_max", "b_min", "b_max", "modulus", "residues", "theorem", "output", "workers"}


def _exponent_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def expand_degrees(text: str) -> List[int]:
    """Expands '6', '6, 18' or a pattern such as '2^1..3*3^1..2' with an optional '+1' suffix."""
    text = text.replace(" ", "")
    if not text:
        raise SpecFileError("empty degree specification")
    if "," in text:
        return sorted({d for part in text.split(",") if part for d in expand_degrees(part)})
    shift = 0
    if text.endswith("+1"):
        shift, text = 1, text[:-2]
    choices = []
    for factor in text.split("*"):
        if "^" in factor:
            base, exponents = factor.split("^", 1)
            choices.append([int(base) ** e for e in _exponent_range(exponents)])
        else:
            choices.append([int(factor)])
    degrees = set()
    for combo in itertools.product(*choices):
        value = 1
        for c in combo:
            value *= c
        degrees.add(value + shift)
    return sorted(degrees)


def parse_residues(text: str) -> List[Tuple[int, int]]:
    """'9,26; 18,26' -> [(9, 26), (18, 26)]."""
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        a, b = chunk.split(",")
        pairs.append((int(a), int(b)))
    return pairs


def _key_values(text: str) -> Dict[str, str]:
    values: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecFileError(f"line {number}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise SpecFileError(f"line {number}: unknown key {key!r}")
        values[key] = value
    return values


def parse_scan_spec(text: str) -> ScanSpec:
    """Parses a plain-text scan specification; raises SpecFileError."""
    values = _key_values(text)
    if "n" not in values:
        raise SpecFileError("missing key 'n'")
    try:
        fields = {
            "degrees": expand_degrees(values["n"]),
            "residues": parse_residues(values.get("residues", "")),
        }
        for key in ("a_min", "a_max", "b_min", "b_max", "modulus", "workers"):
            if key in values:
                fields[key] = int(values[key])
    except ValueError as e:
        raise SpecFileError(f"malformed value: {e}") from e
    for key in ("theorem", "output"):
        if values.get(key):
            fields[key] = values[key]
    try:
        spec = ScanSpec(**fields)
    except ValidationError as e:
        raise SpecFileError(f"Validation error: {e.errors()}") from e
    if spec.residues and spec.modulus is None:
        raise SpecFileError("residues given without a modulus")
    if any(d < 2 for d in spec.degrees):
        raise SpecFileError(f"degrees must be at least 2, got {spec.degrees}")
    return spec


def parse_scan_spec_safely(text: str) -> tuple[Optional[ScanSpec], Optional[str]]:
    """
    Safely parses a scan specification.
    Returns (spec, error_message) tuple.
    """
    try:
        return parse_scan_spec(text), None
    except SpecFileError as e:
        error_msg = str(e)
        logger.error(error_msg)
        return None, error_msg
    except Exception as e:
        error_msg = f"Unexpected parsing error: {str(e)}"
        logger.error(error_msg)
        return None, error_msg


def load_scan_spec(path: str) -> tuple[Optional[ScanSpec], Optional[str]]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        error_msg = f"Cannot read scan specification {path}: {e}"
        logger.error(error_msg)
        return None, error_msg
    return parse_scan_spec_safely(text)
