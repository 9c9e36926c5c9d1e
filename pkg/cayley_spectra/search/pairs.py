"""
Pair search for cayley-spectra.

This module walks an enumeration and keeps the rings (or, for cross-ring
searches, the pairs of rings of equal order) whose two graphs are
equienergetic and not isospectral.
"""
import sys
from collections import defaultdict
from enum import Enum
from itertools import combinations
from pathlib import Path
from typing import Dict, List

from loguru import logger

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from classify.reports import ClassificationReport, PairKind, pair_report, ring_pair_report
from ring_model.model import RingSpec
from search.enumeration import SearchConfig, enumerate_specs
from search.lists import representatives
from shared.utils import RingSpecError
from spectra.spectrum import Role


class PairRelation(str, Enum):
    SUM = PairKind.SUM.value
    COMPLEMENT = PairKind.COMPLEMENT.value
    CROSS_RING = "cross-ring"

    @classmethod
    def parse(cls, text: str) -> "PairRelation":
        """Accepts the relation names, "grplus"/"grbar", or "cross", any case."""
        lowered = text.strip().lower()
        if lowered in ("cross", "cross-ring"):
            return cls.CROSS_RING
        try:
            return cls(PairKind.parse(text).value)
        except RingSpecError:
            logger.error(f"Unknown pair relation: {text!r}")
            raise


def _ramanujan(report: ClassificationReport) -> bool:
    return all(item.value for item in report.predicates if item.name.startswith("ramanujan:"))


def _cross_ring_reports(specs: List[RingSpec], role: Role) -> List[ClassificationReport]:
    by_order: Dict[int, List[RingSpec]] = defaultdict(list)
    for spec in representatives(specs):
        by_order[spec.order].append(spec)
    reports = []
    for order in sorted(by_order):
        for a, b in combinations(by_order[order], 2):
            reports.append(ring_pair_report(a, b, role))
    return reports


def find_pairs(cfg: SearchConfig, relation: PairRelation, ramanujan: bool = False,
               role: Role = Role.GR) -> List[ClassificationReport]:
    """
    Equienergetic non-isospectral pairs within the bounds of cfg.

    Args:
        cfg: Search configuration
        relation: G_R vs G_R+, G_R vs its complement, or one graph over two rings of equal order
        ramanujan: Keep only pairs whose two graphs are both Ramanujan
        role: Graph compared across rings; only used for cross-ring searches

    Returns:
        List: Reports with a true verdict, in enumeration order

    Raises:
        TheoremMismatch: If a report's spectra disagree with a classification statement
    """
    specs = list(enumerate_specs(cfg))
    if relation is PairRelation.CROSS_RING:
        reports = _cross_ring_reports(specs, role)
    else:
        kind = PairKind(relation.value)
        reports = [pair_report(spec, kind) for spec in specs]

    hits = [report for report in reports if report.verdict.value and (not ramanujan or _ramanujan(report))]
    logger.info(f"find_pairs {relation.value}: {len(hits)} of {len(reports)} candidates")
    return hits
