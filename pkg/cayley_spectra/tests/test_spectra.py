"""
Tests for the cayley-spectra closed-form spectra

This module covers the Spectrum value type, the closed forms for G_R, G_R+
and the complement, and the Kronecker algebra.
"""
import os
import sys
import pytest
from hypothesis import given, settings, strategies as st

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from ring_model.model import parse_ring_spec, units_count
from shared.utils import SpectrumError
from spectra.spectrum import (
    Role,
    Spectrum,
    closed_form_energies,
    complement_spectrum,
    complement_unitary_spectrum,
    complete_graph_spectrum,
    complete_multipartite_spectrum,
    disjoint_copies,
    edge_counts,
    energy,
    kron_all,
    kron_spectrum,
    role_spectrum,
    unitary_spectrum,
    unitary_sum_spectrum,
)

ATOMS = ["F2", "F3", "F4", "F5", "F7", "F8", "F9", "Z4", "Z8", "Z9", "Z25", "GR(4,2)", "F2[x]/(x^3)", "F3[x]/(x^2)", "L(8,2)", "L(27,3)"]

# Test data
@pytest.fixture
def z9():
    """The local ring Z9"""
    return parse_ring_spec("Z9")

@pytest.fixture
def f3xf4():
    """The product F3 x F4"""
    return parse_ring_spec("F3xF4")

# Tests for the Spectrum type
def test_from_counts_sorts_and_drops_zeros():
    """Test that entries are sorted descending and zero multiplicities dropped"""
    spectrum = Spectrum.from_counts({-3: 2, 6: 1, 0: 6, 5: 0}, 6)
    assert spectrum.entries == ((6, 1), (0, 6), (-3, 2))
    assert spectrum.n == 9
    assert spectrum.multiplicity(5) == 0

def test_invalid_spectra():
    """Test that impossible spectra raise SpectrumError"""
    with pytest.raises(SpectrumError):
        Spectrum.from_counts({1: 1, 3: 1}, 1)
    with pytest.raises(SpectrumError):
        Spectrum.from_counts({0: 3}, 2)

def test_text_rendering(z9):
    """Test the {[value]^mult} rendering"""
    assert unitary_spectrum(z9).to_text() == "{[6]^1,[0]^6,[-3]^2}"

# Tests for the closed forms
def test_z9_spectra(z9):
    """Test the three graphs over Z9"""
    assert unitary_spectrum(z9).as_dict() == {6: 1, 0: 6, -3: 2}
    assert unitary_sum_spectrum(z9).as_dict() == {6: 1, 3: 1, 0: 6, -3: 1}
    assert complement_unitary_spectrum(z9).as_dict() == {2: 3, -1: 6}

def test_f3xf4_spectra(f3xf4):
    """Test the graphs over F3 x F4"""
    assert unitary_spectrum(f3xf4).as_dict() == {6: 1, 1: 6, -2: 3, -3: 2}
    assert unitary_sum_spectrum(f3xf4).as_dict() == {6: 1, 3: 1, 1: 3, -1: 3, -2: 3, -3: 1}

def test_small_fields():
    """Test the cycle C3 and the looped path over F3"""
    f3 = parse_ring_spec("F3")
    assert unitary_spectrum(f3).as_dict() == {2: 1, -1: 2}
    assert unitary_sum_spectrum(f3).as_dict() == {2: 1, 1: 1, -1: 1}
    assert energy(unitary_spectrum(f3)) == energy(unitary_sum_spectrum(f3)) == 4

def test_square_of_field():
    """Test F_q x F_q for q = 3"""
    assert unitary_spectrum(parse_ring_spec("F3xF3")).as_dict() == {4: 1, 1: 4, -2: 4}

def test_f4xf5():
    """Test G over F4 x F5"""
    assert unitary_spectrum(parse_ring_spec("F4xF5")).as_dict() == {12: 1, 1: 12, -3: 4, -4: 3}

def test_even_local_sum_graph_is_unitary():
    """Test that G_R+ = G_R for even-order local rings"""
    for text in ("F4", "Z8", "GR(4,2)", "F2[x]/(x^2)"):
        spec = parse_ring_spec(text)
        assert unitary_sum_spectrum(spec) == unitary_spectrum(spec)

def test_standard_families(z9):
    """Test that Z9 gives K_{3x3} and its complement 3K_3"""
    assert unitary_spectrum(z9) == complete_multipartite_spectrum(3, 3)
    assert complement_unitary_spectrum(z9) == disjoint_copies(complete_graph_spectrum(3), 3)

def test_complement_of_disconnected_graph():
    """Test that extra copies of the degree map to -1-k"""
    matching = disjoint_copies(complete_graph_spectrum(2), 3)
    complement = complement_spectrum(matching)
    assert complement.as_dict() == {4: 1, 0: 3, -2: 2}

def test_complement_rejects_loops(z9):
    """Test that the complement of a looped graph is refused"""
    with pytest.raises(SpectrumError):
        complement_spectrum(unitary_sum_spectrum(z9))

def test_kron_spectrum():
    """Test that eigenvalues multiply and degrees multiply"""
    k2 = complete_graph_spectrum(2)
    product = kron_spectrum(k2, k2)
    assert product.as_dict() == {1: 2, -1: 2}
    assert product.degree == 1
    triple = kron_all([k2, k2, complete_graph_spectrum(3)])
    assert triple.n == 12
    assert triple.degree == 2

def test_role_spectrum(z9):
    """Test role dispatch and the missing closed form for GRminus"""
    assert role_spectrum(z9, Role.parse("GRPLUS")) == unitary_sum_spectrum(z9)
    assert role_spectrum(z9, Role.parse(" grbar ")) == complement_unitary_spectrum(z9)
    with pytest.raises(SpectrumError):
        role_spectrum(z9, Role.GRMINUS)
    with pytest.raises(SpectrumError):
        Role.parse("gr-")

# Tests for energies and edges
def test_energies(z9, f3xf4):
    """Test the closed-form energies against the spectra"""
    assert closed_form_energies(z9) == (12, 12)
    assert energy(unitary_spectrum(f3xf4)) == 24
    assert closed_form_energies(f3xf4)[0] == 24

def test_edge_counts(z9):
    """Test edges of G_R and G_R+ with loops counted once"""
    assert edge_counts(z9) == (27, 30)
    assert edge_counts(parse_ring_spec("F4")) == (6, 6)

@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(ATOMS), min_size=1, max_size=4))
def test_closed_form_properties(atoms):
    """Test energies, traces and sizes on random products"""
    spec = parse_ring_spec("x".join(atoms))
    gr, plus, bar = unitary_spectrum(spec), unitary_sum_spectrum(spec), complement_unitary_spectrum(spec)
    e_gr, e_bar = closed_form_energies(spec)
    assert energy(gr) == e_gr == 2 ** spec.s * units_count(spec)
    assert energy(bar) == e_bar
    assert energy(plus) == energy(gr)
    assert gr.n == plus.n == bar.n == spec.order
    assert gr.trace == 0
    assert plus.trace == (units_count(spec) if spec.order % 2 else 0)
