"""
Oracle verification runs for cayley-spectra.

This module drives the brute-force oracle against the closed forms: for
every constructible ring within a bound it compares the character-sum
spectra of G_R, G_R+ and the complement with the closed forms, and for the
same rings (unless a smaller adjacency bound is set) it builds the
adjacency matrices and checks exact spectra, loops, edges, connectivity
and strong regularity. A seeded sweep of random symmetric subsets of Z_n
checks the sum/difference energy balance.
"""
import sys
from pathlib import Path
from typing import FrozenSet, List

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from classify.predicates import spectral_predicates, srg_parameters_from_spectrum
from oracle.characters import (
    char_sum_eigenvalues,
    check_energy_balance,
    check_inverse_symmetry,
    check_pair_multiplicities,
    integer_difference_spectrum,
    integer_sum_spectrum,
    sum_multiplicities,
)
from oracle.graphs import GraphMode, cayley_graph, integer_spectrum_from_adjacency, structural_probe
from oracle.groups import cyclic_group
from oracle.rings import ConcreteRing, build_concrete_ring
from ring_model.model import CONSTRUCTIBLE_FAMILIES, Family, RingSpec
from search.enumeration import SearchConfig, enumerate_specs, parse_families
from shared.utils import VerificationMismatch, canonical_json
from spectra.spectrum import Role, Spectrum, edge_counts, role_spectrum

DEFAULT_MAX_VERTICES = 100


class VerificationConfig(BaseModel):
    """
    Bounds of a verification run.

    Attributes:
        max_vertices: Largest |R| compared through character sums
        adjacency_max: Largest |R| also compared through adjacency matrices
            (defaults to max_vertices)
        families: Allowed constructible families
        max_factors: Largest number of local factors
        random_subsets: Number of random symmetric subsets of Z_n
        min_group_order: Smallest n of the random sweep
        max_group_order: Largest n of the random sweep
        seed: Seed of the random sweep
    """

    model_config = ConfigDict(frozen=True)

    max_vertices: int = Field(default=DEFAULT_MAX_VERTICES, ge=2)
    adjacency_max: int = Field(default=DEFAULT_MAX_VERTICES, ge=0)
    families: FrozenSet[Family] = CONSTRUCTIBLE_FAMILIES
    max_factors: int = Field(default=4, ge=1)
    random_subsets: int = Field(default=200, ge=0)
    min_group_order: int = Field(default=3, ge=2)
    max_group_order: int = Field(default=40, ge=2)
    seed: int = 0

    @model_validator(mode="before")
    @classmethod
    def _adjacency_follows_max(cls, data):
        if isinstance(data, dict) and data.get("adjacency_max") is None:
            data = {**data, "adjacency_max": data.get("max_vertices", DEFAULT_MAX_VERTICES)}
        return data

    @field_validator("families", mode="before")
    @classmethod
    def _parse_families(cls, value):
        return parse_families(value)


class VerificationSummary(BaseModel):
    """Counts of a completed verification run; a failed run raises instead."""

    model_config = ConfigDict(frozen=True)

    max_vertices: int
    adjacency_max: int
    seed: int
    rings_checked: int
    adjacency_checked: int
    subsets_checked: int
    labels: List[str]

    def to_json(self) -> str:
        return canonical_json(self.model_dump(mode="json"))


def _expect(label: str, what: str, expected, observed) -> None:
    if expected != observed:
        if isinstance(expected, Spectrum):
            expected, observed = expected.to_text(), observed.to_text()
        logger.error(f"{label}: {what} disagrees: expected {expected}, observed {observed}")
        raise VerificationMismatch(f"{label}: {what}", expected=expected, observed=observed)


def _set_spectrum(ring: ConcreteRing, members: np.ndarray, mode: GraphMode) -> Spectrum:
    if members.size == 0:
        return Spectrum.from_counts({0: ring.order}, 0)
    if mode is GraphMode.DIFFERENCE:
        return integer_difference_spectrum(ring.group, members)
    return integer_sum_spectrum(ring.group, members)


def verify_characters(spec: RingSpec, ring: ConcreteRing) -> None:
    """Character-sum spectra of G_R, G_R+ and the complement against the closed forms."""
    label = spec.label
    units = ring.units
    non_units = np.flatnonzero(~ring.unit_mask)
    non_units = non_units[non_units != ring.zero]
    _expect(label, "G_R spectrum", role_spectrum(spec, Role.GR), _set_spectrum(ring, units, GraphMode.DIFFERENCE))
    _expect(label, "G_R+ spectrum", role_spectrum(spec, Role.GRPLUS), _set_spectrum(ring, units, GraphMode.SUM))
    _expect(label, "complement spectrum", role_spectrum(spec, Role.GRBAR), _set_spectrum(ring, non_units, GraphMode.DIFFERENCE))


def verify_adjacency(spec: RingSpec, ring: ConcreteRing) -> None:
    """
    Explicit graphs against the closed forms.

    Checks exact spectra, the loop law (|R*| loops iff |R| is odd), edge
    counts, connectivity and bipartiteness against the spectrum, equal
    connectivity of G_R and G_R+, and srg parameters from common neighbours.
    """
    label = spec.label
    gr, grplus = cayley_graph(ring, GraphMode.DIFFERENCE), cayley_graph(ring, GraphMode.SUM)
    expected = {GraphMode.DIFFERENCE: role_spectrum(spec, Role.GR), GraphMode.SUM: role_spectrum(spec, Role.GRPLUS)}
    edges = dict(zip((GraphMode.DIFFERENCE, GraphMode.SUM), edge_counts(spec)))

    probes = {}
    for graph in (gr, grplus):
        spectrum = integer_spectrum_from_adjacency(graph)
        _expect(label, f"{graph.label} adjacency spectrum", expected[graph.mode], spectrum)
        probe = structural_probe(graph)
        structure = spectral_predicates(spectrum)
        _expect(label, f"{graph.label} edge count", edges[graph.mode], probe.edge_count)
        _expect(label, f"{graph.label} connectivity", structure.connected, probe.connected)
        _expect(label, f"{graph.label} srg parameters", srg_parameters_from_spectrum(spectrum), probe.srg_parameters)
        if graph.mode is GraphMode.DIFFERENCE:
            _expect(label, f"{graph.label} bipartiteness", structure.bipartite, probe.bipartite)
        probes[graph.mode] = probe

    loops = ring.units.size if spec.order % 2 else 0
    _expect(label, "G_R+ loop count", loops, probes[GraphMode.SUM].loop_count)
    _expect(label, "connectivity of G_R and G_R+", probes[GraphMode.DIFFERENCE].connected, probes[GraphMode.SUM].connected)


def random_symmetric_subset(rng: np.random.Generator, n: int) -> List[int]:
    """A non-empty symmetric subset of Z_n without 0."""
    while True:
        halves = [x for x in range(1, n // 2 + 1) if rng.random() < 0.5]
        if halves:
            return sorted({x for h in halves for x in (h, (-h) % n)})


def verify_random_subsets(cfg: VerificationConfig) -> int:
    """
    Energy balance and pair multiplicities of X(Z_n,S) and X+(Z_n,S) on seeded random S.

    Returns:
        int: Number of subsets checked
    """
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.random_subsets):
        n = int(rng.integers(cfg.min_group_order, cfg.max_group_order + 1))
        subset = random_symmetric_subset(rng, n)
        group = cyclic_group(n)
        values = char_sum_eigenvalues(group, subset)
        multiplicities = sum_multiplicities(group, subset)
        check_inverse_symmetry(group, values)
        check_energy_balance(values, multiplicities)
        check_pair_multiplicities(values, multiplicities)
    return cfg.random_subsets


def run_verification(cfg: VerificationConfig) -> VerificationSummary:
    """
    Run the oracle against the closed forms over every constructible ring within bounds.

    Args:
        cfg: Verification bounds

    Returns:
        VerificationSummary: Counts of what was checked

    Raises:
        VerificationMismatch: On the first disagreement, with both sides
        OracleError: If a ring exceeds ORACLE_MAX_VERTICES
    """
    search = SearchConfig(max_vertices=cfg.max_vertices, families=cfg.families, max_factors=cfg.max_factors)
    specs = [spec for spec in enumerate_specs(search) if spec.is_constructible]
    logger.info(f"Verifying {len(specs)} rings (|R| <= {cfg.max_vertices}, adjacency up to {cfg.adjacency_max})")

    adjacency_checked = 0
    for spec in specs:
        ring = build_concrete_ring(spec)
        verify_characters(spec, ring)
        if spec.order <= cfg.adjacency_max:
            verify_adjacency(spec, ring)
            adjacency_checked += 1
        logger.debug(f"Verified {spec.label}")

    subsets = verify_random_subsets(cfg)
    summary = VerificationSummary(
        max_vertices=cfg.max_vertices,
        adjacency_max=cfg.adjacency_max,
        seed=cfg.seed,
        rings_checked=len(specs),
        adjacency_checked=adjacency_checked,
        subsets_checked=subsets,
        labels=[spec.label for spec in specs],
    )
    logger.success(f"Verification passed: {len(specs)} rings, {adjacency_checked} adjacency checks, {subsets} random subsets")
    return summary
