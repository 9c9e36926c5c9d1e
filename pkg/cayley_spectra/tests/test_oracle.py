"""
Tests for the cayley-spectra brute-force oracle

This module builds concrete rings and explicit Cayley graphs and compares
character sums and exact adjacency spectra with the closed forms.
"""
import os
import sys
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from unittest.mock import patch

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from oracle.characters import (
    char_sum_eigenvalues,
    check_energy_balance,
    check_pair_multiplicities,
    check_sum_eigenvectors,
    cycle_path_pair,
    integer_difference_spectrum,
    integer_sum_spectrum,
    non_isospectrality_certificate,
    sum_multiplicities,
)
from oracle.graphs import (
    GraphMode,
    cayley_graph,
    general_cayley_graph,
    characteristic_polynomial,
    integer_roots,
    integer_spectrum_from_adjacency,
    modular_rank,
    rank_multiplicities,
    structural_probe,
)
from oracle.groups import AbelianGroup, cyclic_group
from oracle.rings import build_concrete_ring
from ring_model.model import parse_ring_spec, units_count
from search.enumeration import SearchConfig, enumerate_specs
from shared.utils import NonIntegralSpectrumError, OracleError, get_oracle_sweep_max
from spectra.spectrum import complement_unitary_spectrum, unitary_spectrum, unitary_sum_spectrum

# Test data
@pytest.fixture
def z9_ring():
    """Concrete Z9"""
    return build_concrete_ring(parse_ring_spec("Z9"))

def _sweep_specs():
    cfg = SearchConfig(max_vertices=get_oracle_sweep_max(), max_factors=4)
    return [spec for spec in enumerate_specs(cfg) if spec.is_constructible]

# Tests for concrete rings
@pytest.mark.parametrize("text,units", [
    ("Z9", 6), ("F4", 3), ("F9", 8), ("GR(4,2)", 12), ("F2[x]/(x^3)", 4), ("F3[x]/(x^2)", 6), ("F3xF4", 6), ("Z12", 4),
])
def test_unit_counts(text, units):
    """Test that the computed units match |R*| = prod (r_i - m_i)"""
    spec = parse_ring_spec(text)
    ring = build_concrete_ring(spec)
    assert ring.order == spec.order
    assert ring.units.size == units == units_count(spec)

def test_ring_identities():
    """Test that one is a multiplicative identity and negation inverts addition"""
    ring = build_concrete_ring(parse_ring_spec("F4xZ9"))
    for x in range(ring.order):
        assert ring.mul(ring.one, x) == x
        assert ring.add(x, ring.neg(x)) == ring.zero
        assert ring.mul(x, ring.zero) == ring.zero

def test_field_has_no_zero_divisors():
    """Test that every non-zero element of F8 is a unit"""
    ring = build_concrete_ring(parse_ring_spec("F8"))
    assert ring.units.tolist() == list(range(1, 8))

def test_refuses_formula_only_shapes():
    """Test that Shape factors have no concrete witness"""
    with pytest.raises(OracleError):
        build_concrete_ring(parse_ring_spec("L(8,2)"))

def test_refuses_large_rings():
    """Test the ORACLE_MAX_VERTICES bound"""
    with patch.dict(os.environ, {"ORACLE_MAX_VERTICES": "10"}):
        with pytest.raises(OracleError):
            build_concrete_ring(parse_ring_spec("Z12"))

# Tests for explicit graphs
def test_z9_graphs(z9_ring):
    """Test exact spectra, loops and structure over Z9"""
    gr = cayley_graph(z9_ring, GraphMode.DIFFERENCE)
    plus = cayley_graph(z9_ring, GraphMode.SUM)
    assert gr.label == "G[Z9]"
    assert plus.label == "G+[Z9]"
    assert integer_spectrum_from_adjacency(gr) == unitary_spectrum(z9_ring.spec)
    assert integer_spectrum_from_adjacency(plus) == unitary_sum_spectrum(z9_ring.spec)
    assert plus.loop_count == 6

    probe = structural_probe(gr)
    assert probe.connected
    assert not probe.bipartite
    assert probe.srg_parameters == (9, 6, 3, 6)
    assert probe.edge_count == 27
    assert structural_probe(plus).edge_count == 30

def test_general_cayley_graph_validation():
    """Test that S must be symmetric and avoid 0"""
    group = cyclic_group(7)
    with pytest.raises(OracleError):
        general_cayley_graph(group, [0, 1, 6], GraphMode.DIFFERENCE)
    with pytest.raises(OracleError):
        general_cayley_graph(group, [1, 2], GraphMode.SUM)

def test_graph_export():
    """Test edge-list and DIMACS text"""
    triangle = cayley_graph(build_concrete_ring(parse_ring_spec("F3")), GraphMode.DIFFERENCE)
    assert triangle.to_edge_list() == "0 1\n0 2\n1 2\n"
    assert triangle.to_dimacs() == "c G[F3]\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n"

def test_integer_roots():
    """Test root extraction from characteristic polynomials"""
    assert integer_roots([1, 0, -1], 1) == {1: 1, -1: 1}
    assert integer_roots([1, -3, 0, 4], 2) == {2: 2, -1: 1}
    with pytest.raises(NonIntegralSpectrumError):
        integer_roots([1, 0, -2], 2)

def test_modular_rank():
    """Test ranks over GF(p) on small integer matrices"""
    assert modular_rank(np.eye(3, dtype=np.int64)) == 3
    assert modular_rank(np.zeros((3, 3), dtype=np.int64)) == 0
    assert modular_rank(np.array([[1, 2], [2, 4]])) == 1
    assert modular_rank(np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])) == 3
    assert modular_rank(np.array([[-1, 1], [1, -1]])) == 1

def test_rank_multiplicities_match_characteristic_polynomial():
    """Test that eigenvalue ranks and the characteristic polynomial give the same multiplicities"""
    ring = build_concrete_ring(parse_ring_spec("F3xZ4"))
    for mode in (GraphMode.DIFFERENCE, GraphMode.SUM):
        matrix = cayley_graph(ring, mode).adjacency
        degree = int(matrix[0].sum())
        assert rank_multiplicities(matrix) == integer_roots(characteristic_polynomial(matrix), degree)
    assert rank_multiplicities(cayley_graph(ring, GraphMode.DIFFERENCE).adjacency) == {4: 1, 2: 2, 0: 6, -2: 2, -4: 1}

def test_rank_multiplicities_non_integral():
    """Test that a pentagon is refused by the rank backend"""
    pentagon = general_cayley_graph(cyclic_group(5), [1, 4], GraphMode.DIFFERENCE)
    with pytest.raises(NonIntegralSpectrumError):
        rank_multiplicities(pentagon.adjacency)

@pytest.mark.parametrize("text", ["Z9", "F3xZ4", "F5xF7", "Z49", "GR(4,2)xF5"])
def test_adjacency_spectrum_through_ranks(text):
    """Test exact adjacency spectra when every component goes through eigenvalue ranks"""
    spec = parse_ring_spec(text)
    ring = build_concrete_ring(spec)
    with patch.dict(os.environ, {"CHARPOLY_MAX_VERTICES": "0"}):
        assert integer_spectrum_from_adjacency(cayley_graph(ring, GraphMode.DIFFERENCE)) == unitary_spectrum(spec)
        assert integer_spectrum_from_adjacency(cayley_graph(ring, GraphMode.SUM)) == unitary_sum_spectrum(spec)

def test_adjacency_sweep():
    """Test exact adjacency spectra against the closed forms for every small constructible ring"""
    specs = _sweep_specs()
    assert specs
    for spec in specs:
        ring = build_concrete_ring(spec)
        gr = cayley_graph(ring, GraphMode.DIFFERENCE)
        plus = cayley_graph(ring, GraphMode.SUM)
        assert integer_spectrum_from_adjacency(gr) == unitary_spectrum(spec), spec.label
        assert integer_spectrum_from_adjacency(plus) == unitary_sum_spectrum(spec), spec.label
        assert plus.loop_count == (ring.units.size if spec.order % 2 else 0), spec.label
        assert structural_probe(gr).connected == structural_probe(plus).connected, spec.label

# Tests for character sums
def test_character_sums_match_closed_forms():
    """Test character-sum spectra of G_R, G_R+ and the complement"""
    for text in ("Z25", "F3xF4", "GR(4,2)", "F3xF3xF5", "F3[x]/(x^3)"):
        spec = parse_ring_spec(text)
        ring = build_concrete_ring(spec)
        non_units = np.flatnonzero(~ring.unit_mask)
        non_units = non_units[non_units != 0]
        assert integer_difference_spectrum(ring.group, ring.units) == unitary_spectrum(spec)
        assert integer_sum_spectrum(ring.group, ring.units) == unitary_sum_spectrum(spec)
        assert integer_difference_spectrum(ring.group, non_units) == complement_unitary_spectrum(spec)

def test_cycle_eigenvalues():
    """Test that C5 has eigenvalues 2cos(2 pi k/5)"""
    values = np.sort(char_sum_eigenvalues(cyclic_group(5), [1, 4]))
    expected = np.sort(2 * np.cos(2 * np.pi * np.arange(5) / 5))
    assert np.allclose(values, expected)

def test_cycle_path_pair():
    """Test odd cycles against looped paths"""
    triangle = cycle_path_pair(1)
    assert triangle.equienergetic
    assert not triangle.isospectral
    assert triangle.integral
    assert triangle.cycle_energy == pytest.approx(4.0)

    pentagon = cycle_path_pair(2)
    assert pentagon.equienergetic
    assert not pentagon.isospectral
    assert not pentagon.integral

    rotated = cycle_path_pair(2, rotation=2)
    assert rotated.cycle_energy == pytest.approx(pentagon.cycle_energy)
    assert rotated.path_energy == pytest.approx(pentagon.path_energy)

def test_non_isospectrality_certificate():
    """Test the certificate on odd cyclic groups and its refusal with extra real characters"""
    certificate = non_isospectrality_certificate(cyclic_group(5), [1, 4])
    assert certificate is not None
    assert certificate.character != [0]
    assert non_isospectrality_certificate(cyclic_group(4), [1, 3]) is None

def test_sum_eigenvectors():
    """Test the explicit eigenvectors of the sum graph"""
    ring = build_concrete_ring(parse_ring_spec("F7"))
    plus = cayley_graph(ring, GraphMode.SUM)
    values = char_sum_eigenvalues(ring.group, ring.units)
    assert check_sum_eigenvectors(ring.group, plus.adjacency, values, range(ring.order)) <= 1e-8

def test_product_group():
    """Test sums over a non-cyclic group"""
    group = AbelianGroup(cyclic_orders=(3, 3))
    members = [1, 2, 3, 6]
    values = char_sum_eigenvalues(group, members)
    check_energy_balance(values, sum_multiplicities(group, members))
    assert integer_difference_spectrum(group, members).as_dict() == {4: 1, 1: 4, -2: 4}

@settings(max_examples=50, deadline=None)
@given(st.data())
def test_random_symmetric_subsets(data):
    """Test energy balance and pair multiplicities on random connection sets"""
    n = data.draw(st.integers(min_value=3, max_value=max(3, get_oracle_sweep_max())))
    halves = data.draw(st.sets(st.integers(min_value=1, max_value=n // 2), min_size=1))
    subset = sorted({x for h in halves for x in (h, (-h) % n)})
    group = cyclic_group(n)
    values = char_sum_eigenvalues(group, subset)
    multiplicities = sum_multiplicities(group, subset)
    difference, total = check_energy_balance(values, multiplicities)
    assert difference == pytest.approx(total, abs=1e-6 * n)
    assert check_pair_multiplicities(values, multiplicities) >= 1
