"""
Tests for the cayley-spectra ring model

This module covers ring-spec parsing and printing, shape validation and the
arithmetic predicates on rings.
"""
import os
import sys
import pytest
from hypothesis import given, strategies as st

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from ring_model.model import (
    CONSTRUCTIBLE_FAMILIES,
    Family,
    LocalShape,
    RingSpec,
    constructible_families_for,
    cyclic_order,
    even_odd_split,
    field_shape,
    format_ring_spec,
    is_odd_type,
    parse_ring_spec,
    product_spec,
    units_count,
)
from shared.utils import RingSpecError

# Test data
@pytest.fixture
def sample_specs():
    """Rings used across the tests"""
    return {
        "z9": parse_ring_spec("Z9"),
        "f3xf4": parse_ring_spec("F3xF4"),
        "z12": parse_ring_spec("Z12"),
        "gr": parse_ring_spec("GR(4,2)"),
    }

# Tests for parsing
def test_parse_cyclic_splits_by_crt(sample_specs):
    """Test that Z_n is split into its local factors"""
    z12 = sample_specs["z12"]
    assert z12.shape_key == ((3, 1), (4, 2))
    assert z12.label == "F3xZ4"
    assert z12.order == 12
    assert not z12.is_local

def test_parse_families():
    """Test that every atom selects the right family"""
    assert parse_ring_spec("Z9").factors[0].family is Family.ZMODPK
    assert parse_ring_spec("F9").factors[0].family is Family.FIELD
    assert parse_ring_spec("F3[x]/(x^2)").factors[0].family is Family.FIELD_MOD_X2
    assert parse_ring_spec("F3[x]/(x^3)").factors[0].family is Family.FIELD_MOD_X3
    assert parse_ring_spec("GR(4,2)").factors[0].family is Family.GALOIS_RING
    assert parse_ring_spec("L(8,2)").factors[0].family is Family.SHAPE

def test_parse_galois_degenerate_cases():
    """Test that GR(p,t) is a field and GR(p^s,1) is Z_{p^s}"""
    assert parse_ring_spec("GR(3,2)") == parse_ring_spec("F9")
    assert parse_ring_spec("GR(9,1)") == parse_ring_spec("Z9")

def test_parse_shapes():
    """Test local shapes of the truncated polynomial rings"""
    assert parse_ring_spec("F4[x]/(x^2)").shape_key == ((16, 4),)
    assert parse_ring_spec("F3[x]/(x^3)").shape_key == ((27, 9),)
    assert parse_ring_spec("F3xF3[x]/(x^3)").shape_key == ((3, 1), (27, 9))

def test_parse_ignores_whitespace_and_order():
    """Test that factor order and whitespace do not matter"""
    assert parse_ring_spec("F4 x F3") == parse_ring_spec("F3xF4")
    assert parse_ring_spec("Z5xZ3") == parse_ring_spec("Z15")

@pytest.mark.parametrize("text", ["", "F6", "Z1", "Q7", "F3xx F4", "F3F4", "GR(6,2)", "L(8,3)", "L(6,2)"])
def test_parse_errors(text):
    """Test that malformed or impossible rings raise RingSpecError"""
    with pytest.raises(RingSpecError):
        parse_ring_spec(text)

def test_parse_order_bound():
    """Test that orders above 2^64 are refused"""
    with pytest.raises(RingSpecError):
        parse_ring_spec(f"Z{2 ** 64 + 1}")

def test_label_round_trip(sample_specs):
    """Test that canonical labels parse back to the same ring"""
    for spec in sample_specs.values():
        assert parse_ring_spec(format_ring_spec(spec)) == spec

@given(st.lists(st.sampled_from(["F2", "F3", "F4", "F5", "Z9", "Z8", "GR(4,2)", "F3[x]/(x^2)", "L(8,2)"]), min_size=1, max_size=4))
def test_label_round_trip_property(atoms):
    """Test that any product of atoms round-trips through its label"""
    spec = parse_ring_spec("x".join(atoms))
    assert parse_ring_spec(spec.label) == spec
    assert spec.s == len(atoms)

# Tests for shapes
def test_local_shape_validation():
    """Test shape invariants"""
    with pytest.raises(ValueError):
        LocalShape(r=12, m=2, family=Family.SHAPE)
    with pytest.raises(ValueError):
        LocalShape(r=9, m=1, family=Family.ZMODPK)
    with pytest.raises(ValueError):
        LocalShape(r=9, m=3, family=Family.FIELD)
    assert LocalShape(r=8, m=2, family=Family.SHAPE).residue_size == 4

def test_constructible_families_for():
    """Test which families realize a shape"""
    assert constructible_families_for(9, 3) == [Family.ZMODPK, Family.FIELD_MOD_X2]
    assert Family.GALOIS_RING in constructible_families_for(16, 4)
    assert Family.FIELD_MOD_X2 in constructible_families_for(16, 4)
    assert constructible_families_for(8, 2) == []
    assert constructible_families_for(7, 1) == [Family.FIELD]
    assert Family.SHAPE not in CONSTRUCTIBLE_FAMILIES

def test_field_shape():
    """Test field shapes"""
    assert field_shape(8) == LocalShape(r=8, m=1, family=Family.FIELD)
    with pytest.raises(RingSpecError):
        field_shape(10)

# Tests for predicates
def test_units_count(sample_specs):
    """Test |R*| as the product of r_i - m_i"""
    assert units_count(sample_specs["z9"]) == 6
    assert units_count(sample_specs["f3xf4"]) == 6
    assert units_count(sample_specs["z12"]) == 4
    assert units_count(parse_ring_spec("Z169")) == 156

def test_odd_type():
    """Test the odd-type condition"""
    assert is_odd_type(parse_ring_spec("F3xF4"))
    assert is_odd_type(parse_ring_spec("Z9"))
    assert not is_odd_type(parse_ring_spec("F4xF4"))
    assert not is_odd_type(parse_ring_spec("F2xF3"))
    assert not is_odd_type(parse_ring_spec("Z4xF3"))

def test_even_odd_split():
    """Test the split into even-order and odd-order factors"""
    even, odd = even_odd_split(parse_ring_spec("F4xF5xZ8"))
    assert even.label == "F4xZ8"
    assert odd.label == "F5"
    even, odd = even_odd_split(parse_ring_spec("F3xF5"))
    assert even is None
    assert odd.order == 15

def test_cyclic_order():
    """Test recognition of Z_n"""
    assert cyclic_order(parse_ring_spec("F3xF5")) == 15
    assert cyclic_order(parse_ring_spec("Z9xF7")) == 63
    assert cyclic_order(parse_ring_spec("F5xF5")) is None
    assert cyclic_order(parse_ring_spec("F9")) is None
    assert cyclic_order(parse_ring_spec("F3[x]/(x^2)")) is None

def test_product_spec():
    """Test direct products"""
    product = product_spec(parse_ring_spec("F9"), parse_ring_spec("F5"))
    assert product == parse_ring_spec("F5xF9")
    assert isinstance(product, RingSpec)
