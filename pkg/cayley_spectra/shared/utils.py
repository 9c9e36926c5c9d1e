"""
Shared utilities for cayley-spectra.

This module contains configuration, logging, the exception hierarchy and the
small arithmetic helpers used across all packages.
"""
import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import dotenv
from loguru import logger
from sympy import factorint

# Load environment variables
dotenv.load_dotenv()

# Configure logger
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("LOG_FILE")

logger.remove()  # Remove default handler
logger.add(sys.stderr, level=LOG_LEVEL)  # stdout carries command results
if LOG_FILE:
    logger.add(LOG_FILE, rotation="50 MB", level=LOG_LEVEL)

REPO_ROOT = Path(__file__).resolve().parent.parent.parent


# Exceptions
class CayleySpectraError(Exception):
    """Base class for every error raised by cayley-spectra."""


class RingSpecError(CayleySpectraError, ValueError):
    """Malformed ring text or a ring that cannot exist (e.g. a field of order 6)."""


class SpectrumError(CayleySpectraError, ValueError):
    """Invalid spectrum data or an unsupported spectrum operation."""


class OracleError(CayleySpectraError):
    """The brute-force oracle refused or failed to build an instance."""


class NonIntegralSpectrumError(OracleError):
    """A characteristic polynomial did not split over the integers."""


class BundleError(CayleySpectraError, ValueError):
    """A bundle recipe is malformed or mixes vertex counts."""


class VerificationMismatch(CayleySpectraError):
    """
    Two independent computations disagree.

    Attributes:
        expected: The value predicted by a closed form or a transcribed list
        observed: The value computed from spectra or by the oracle
    """

    def __init__(self, message: str, expected: Any = None, observed: Any = None):
        super().__init__(message)
        self.expected = expected
        self.observed = observed

    def sides(self) -> Dict[str, Any]:
        """Return both sides of the mismatch for printing."""
        return {"message": str(self), "expected": self.expected, "observed": self.observed}


class TheoremMismatch(VerificationMismatch):
    """A classification statement is contradicted by exact spectra."""


# Configuration helpers
def get_oracle_max_vertices() -> int:
    """
    Largest ring or group the oracle will materialize.

    Returns:
        int: Vertex bound (env ORACLE_MAX_VERTICES, default 5000)
    """
    return int(os.getenv("ORACLE_MAX_VERTICES", "5000"))


def get_character_tolerance() -> float:
    """Tolerance for grouping character sums and for discarding imaginary parts."""
    return float(os.getenv("CHARACTER_TOLERANCE", "1e-9"))


def get_rounding_tolerance() -> float:
    """Maximum distance to the nearest integer for values declared integral."""
    return float(os.getenv("ROUNDING_TOLERANCE", "1e-6"))


def get_eigenvector_tolerance() -> float:
    """Per-coordinate tolerance of the sum-graph eigenvector check."""
    return float(os.getenv("EIGENVECTOR_TOLERANCE", "1e-8"))


def get_oracle_sweep_max() -> int:
    """Default |R| bound for exact adjacency sweeps run from the test suite."""
    return int(os.getenv("ORACLE_SWEEP_MAX", "40"))


def get_charpoly_max_vertices() -> int:
    """Largest graph component whose exact spectrum comes from the characteristic polynomial."""
    return int(os.getenv("CHARPOLY_MAX_VERTICES", "64"))


def get_golden_dir() -> Path:
    """
    Directory holding golden files.

    Returns:
        Path: GOLDEN_DIR if set, otherwise <repo>/golden
    """
    configured = os.getenv("GOLDEN_DIR")
    return Path(configured) if configured else REPO_ROOT / "golden"


# Serialization helpers
def canonical_json(payload: Any) -> str:
    """
    Serialize a JSON-compatible payload canonically.

    Args:
        payload: Dicts, lists, strings and numbers

    Returns:
        str: Sorted keys, no insignificant whitespace
    """
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# Arithmetic helpers
def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """
    Decompose n as p^k.

    Args:
        n: Positive integer

    Returns:
        Tuple or None: (p, k) if n is a prime power with k >= 1, None otherwise
    """
    if n < 2:
        return None
    factors = factorint(n)
    if len(factors) != 1:
        return None
    (p, k), = factors.items()
    return int(p), int(k)


def integer_log(n: int, base: int) -> Optional[int]:
    """Return k with base**k == n, or None when n is not an exact power of base."""
    if n < 1 or base < 2:
        return None
    k = 0
    while n % base == 0:
        n //= base
        k += 1
    return k if n == 1 else None
