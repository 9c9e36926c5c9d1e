"""
Tests for cayley-spectra shared utilities

This module covers configuration getters, the exception hierarchy and the
arithmetic helpers.
"""
import os
import sys
import pytest
from pathlib import Path
from unittest.mock import patch

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from shared.utils import (
    REPO_ROOT,
    BundleError,
    CayleySpectraError,
    NonIntegralSpectrumError,
    OracleError,
    RingSpecError,
    SpectrumError,
    TheoremMismatch,
    VerificationMismatch,
    canonical_json,
    get_character_tolerance,
    get_charpoly_max_vertices,
    get_golden_dir,
    get_oracle_max_vertices,
    get_oracle_sweep_max,
    get_rounding_tolerance,
    integer_log,
    prime_power,
)

# Tests for configuration
def test_defaults():
    """Test configuration defaults"""
    with patch.dict(os.environ, {}, clear=True):
        assert get_oracle_max_vertices() == 5000
        assert get_character_tolerance() == 1e-9
        assert get_rounding_tolerance() == 1e-6
        assert get_oracle_sweep_max() == 40
        assert get_charpoly_max_vertices() == 64
        assert get_golden_dir() == REPO_ROOT / "golden"

def test_environment_overrides():
    """Test that getters read the environment at call time"""
    with patch.dict(os.environ, {
        "ORACLE_MAX_VERTICES": "100",
        "ORACLE_SWEEP_MAX": "12",
        "CHARPOLY_MAX_VERTICES": "8",
        "GOLDEN_DIR": "/tmp/golden-test"
    }):
        assert get_oracle_max_vertices() == 100
        assert get_oracle_sweep_max() == 12
        assert get_charpoly_max_vertices() == 8
        assert get_golden_dir() == Path("/tmp/golden-test")

def test_golden_dir_exists():
    """Test that the default golden directory ships with the repository"""
    with patch.dict(os.environ, {}, clear=True):
        assert (get_golden_dir() / "ramanujan_triples.csv").is_file()

# Tests for exceptions
def test_exception_hierarchy():
    """Test exception base classes"""
    for error in (RingSpecError, SpectrumError, OracleError, BundleError, VerificationMismatch):
        assert issubclass(error, CayleySpectraError)
    assert issubclass(RingSpecError, ValueError)
    assert issubclass(NonIntegralSpectrumError, OracleError)
    assert issubclass(TheoremMismatch, VerificationMismatch)

def test_mismatch_sides():
    """Test that mismatches carry both sides"""
    error = TheoremMismatch("F11xF11: complement Ramanujan", expected=True, observed=False)
    assert error.sides() == {
        "message": "F11xF11: complement Ramanujan",
        "expected": True,
        "observed": False,
    }

# Tests for helpers
def test_canonical_json():
    """Test canonical serialization"""
    assert canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    assert canonical_json({"a": 1, "b": 2}) == canonical_json({"b": 2, "a": 1})

def test_prime_power():
    """Test prime power decomposition"""
    assert prime_power(2) == (2, 1)
    assert prime_power(9) == (3, 2)
    assert prime_power(1024) == (2, 10)
    assert prime_power(169) == (13, 2)
    assert prime_power(6) is None
    assert prime_power(1) is None
    assert prime_power(0) is None

def test_integer_log():
    """Test exact integer logarithms"""
    assert integer_log(27, 3) == 3
    assert integer_log(1, 5) == 0
    assert integer_log(12, 2) is None
    assert integer_log(0, 2) is None
