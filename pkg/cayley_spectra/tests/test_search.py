"""
Tests for cayley-spectra search

This module covers ring enumeration, the pair search, the classification
lists and the triple table, the Kronecker bundles and the verification run.
"""
import os
import sys
import numpy as np
import pytest
from pydantic import ValidationError
from unittest.mock import patch

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from ring_model.model import Family, parse_ring_spec
from search.bundles import build_bundle, minus_spectrum
from search.enumeration import SearchConfig, enumerate_specs
from search.lists import (
    COMPLEMENT_RAMANUJAN_FIELDS,
    TABLE_FILE,
    cyclic_triples_list,
    complement_ramanujan_list,
    field_pair_examples_list,
    load_table,
    local_complement_list,
    local_ramanujan_list,
    local_triples_list,
    nonlocal_triples_list,
    odd_type_pairs_list,
    reproduce_table,
    srg_list,
    table_csv,
    table_list,
    three_field_complement_list,
    two_factor_complement_list,
)
from search.pairs import PairRelation, find_pairs
from search.verification import VerificationConfig, random_symmetric_subset, run_verification
from shared.utils import BundleError, RingSpecError, get_golden_dir

# Test data
@pytest.fixture(scope="module")
def table_rows():
    """The reproduced triple table"""
    return reproduce_table()

def _labels(specs):
    return [spec.label for spec in specs]

# Tests for enumeration
def test_enumerate_fields():
    """Test field-only enumeration up to 9 vertices"""
    labels = _labels(enumerate_specs(SearchConfig(max_vertices=9, families="Field")))
    assert "F9" in labels
    assert "F3xF3" in labels
    assert "F2xF4" in labels
    assert "Z9" not in labels

def test_enumerate_all_families():
    """Test that both witnesses of shape (4,2) are listed"""
    labels = _labels(enumerate_specs(SearchConfig(max_vertices=4)))
    assert labels == ["F2", "F3", "F2[x]/(x^2)", "F4", "Z4", "F2xF2"]

def test_enumerate_odd_type():
    """Test the odd-type filter"""
    labels = _labels(enumerate_specs(SearchConfig(max_vertices=16, require_odd_type=True)))
    assert "F3xF4" in labels
    assert "F4xF4" not in labels
    assert "F2xF3" not in labels

def test_enumerate_formula_only_shapes():
    """Test that Shape adds the shapes without a witness"""
    labels = _labels(enumerate_specs(SearchConfig(max_vertices=8, families="Shape")))
    assert labels == ["L(8,2)"]

def test_enumeration_is_deterministic():
    """Test that the same configuration gives the same order"""
    cfg = SearchConfig(max_vertices=64, max_factors=3)
    assert _labels(enumerate_specs(cfg)) == _labels(enumerate_specs(cfg))

def test_search_config_validation():
    """Test configuration bounds"""
    with pytest.raises(ValidationError):
        SearchConfig(max_vertices=1)
    with pytest.raises(ValidationError):
        SearchConfig(max_vertices=10, max_factors=0)
    assert SearchConfig(max_vertices=10, families="Field, ZModPk").families == frozenset({Family.FIELD, Family.ZMODPK})

# Tests for the pair search
def test_pair_relation_parse():
    """Test relation names"""
    assert PairRelation.parse("grbar") is PairRelation.COMPLEMENT
    assert PairRelation.parse("GRvsGRplus") is PairRelation.SUM
    assert PairRelation.parse("cross") is PairRelation.CROSS_RING
    with pytest.raises(RingSpecError):
        PairRelation.parse("bogus")

def test_find_complement_ramanujan_pairs():
    """Test the complement-Ramanujan field products"""
    cfg = SearchConfig(max_vertices=121, families="Field")
    labels = {report.subject for report in find_pairs(cfg, PairRelation.COMPLEMENT, ramanujan=True)}
    assert labels == set(COMPLEMENT_RAMANUJAN_FIELDS) - {"F11xF11"}

def test_find_sum_pairs_on_odd_type():
    """Test that every odd-type ring gives an equienergetic non-isospectral pair"""
    cfg = SearchConfig(max_vertices=60, max_factors=3, require_odd_type=True)
    assert len(find_pairs(cfg, PairRelation.SUM)) == len(list(enumerate_specs(cfg)))

def test_find_cross_ring_pairs():
    """Test equal-order rings with equienergetic G_R"""
    reports = find_pairs(SearchConfig(max_vertices=9), PairRelation.CROSS_RING)
    assert [report.subject for report in reports] == ["Z4|F2xF2", "F9|F3xF3"]

# Tests for the classification lists
def test_local_lists():
    """Test the local criteria against exact spectra"""
    assert local_ramanujan_list().matches
    assert local_complement_list().matches
    assert local_triples_list().matches

def test_two_factor_complement_list():
    """Test that two-factor rings are equienergetic with the complement iff both are fields"""
    assert two_factor_complement_list().matches

def test_three_field_complement_list():
    """Test the three-field solutions, including the missing (3,4,7)"""
    comparison = three_field_complement_list()
    assert comparison.extra == ["F3xF4xF7"]
    assert comparison.missing == []
    assert comparison.errata == ["f3xf4xf7-complement"]

def test_odd_type_pairs_list():
    """Test the odd-type Ramanujan pairs with the (27,9) entry"""
    comparison = odd_type_pairs_list()
    assert comparison.missing == ["F3xF3[x]/(x^3)"]
    assert comparison.extra == []
    assert comparison.errata == ["f3-x-27-9"]
    assert "F3xZ9" in comparison.computed

def test_field_pair_examples_list():
    """Test the worked examples and the missing F5 x F16"""
    comparison = field_pair_examples_list()
    assert comparison.extra == ["F5xF16"]
    assert comparison.missing == []

def test_complement_ramanujan_list():
    """Test the complement-Ramanujan two-field list"""
    comparison = complement_ramanujan_list()
    assert comparison.missing == ["F11xF11"]
    assert comparison.extra == []
    assert len(comparison.computed) == 20

def test_nonlocal_triples_list():
    """Test the non-local Ramanujan triples"""
    comparison = nonlocal_triples_list()
    assert comparison.missing == ["F11xF11"]
    assert comparison.extra == []
    assert len(comparison.computed) == 13

def test_cyclic_triples_list():
    """Test Z_n triples for odd n <= 200"""
    comparison = cyclic_triples_list()
    assert sorted(comparison.computed) == sorted(["Z9", "F3xF5", "F3xF7", "Z25", "F5xF7", "Z49", "Z121", "Z169"])
    assert sorted(comparison.missing) == ["F11xF11", "F5xF5", "F7xF7"]
    assert set(comparison.errata) == {"f11xf11-complement", "cyclic-triples-noncyclic"}

def test_srg_list():
    """Test the strongly regular classification and the Z2^n parameters"""
    comparison = srg_list()
    assert comparison.missing == []
    assert comparison.extra == []
    assert "F2xF2xF2" in comparison.changed
    assert comparison.errata == ["z2n-srg"]

# Tests for the triple table
def test_table_matches_golden_file(table_rows):
    """Test that the reproduced table equals the golden CSV byte for byte"""
    golden = get_golden_dir() / TABLE_FILE
    assert table_csv(table_rows) == golden.read_text()
    assert table_rows == load_table(golden)

def test_table_rows(table_rows):
    """Test selected rows of the triple table"""
    assert len(table_rows) == 23
    first = table_rows[0]
    assert (first.label, first.v, first.kappa, first.kappabar, first.energy, first.iso) == ("Z9", 9, 6, 2, 12, "")
    by_label = {row.label: row for row in table_rows}
    assert by_label["F4xF8"].energy == 84
    assert by_label["F4xF8"].iso == "*"
    assert (by_label["Z169"].kappa, by_label["Z169"].kappabar, by_label["Z169"].energy) == (156, 12, 312)

def test_table_against_transcription(table_rows):
    """Test that the transcription differs only by registered errata"""
    comparison = table_list(table_rows)
    assert comparison.missing == ["F11xF11"]
    assert comparison.changed == ["Z169"]
    assert set(comparison.errata) == {"f11xf11-complement", "z169-row"}

# Tests for bundles
def test_paired_triples_bundle():
    """Test the 23 members on 420 vertices"""
    bundle = build_bundle("paired-triples")
    assert len(bundle.members) == 23
    assert len(bundle.duplicates) == 4
    assert bundle.n == 420
    assert set(bundle.energies) == {2304}
    assert bundle.isospectral_pairs == []

def test_mixed_sixteen_bundle():
    """Test the sixteen members on 180 vertices"""
    bundle = build_bundle("mixed-sixteen")
    assert len(bundle.members) == 16
    assert bundle.n == 180
    assert set(bundle.energies) == {768}
    assert [member.trace > 0 for member in bundle.members] == [False] * 14 + [True, True]

def test_quadruple_bundle():
    """Test the quadruple over F5 and over F4"""
    bundle = build_bundle("quadruple:F5")
    assert len(bundle.members) == 4
    assert bundle.n == 45
    assert bundle.equienergetic
    assert [member.trace > 0 for member in bundle.members] == [False, True, False, True]
    even = build_bundle("quadruple:F4")
    assert not any(member.trace for member in even.members)
    with pytest.raises(BundleError):
        build_bundle("quadruple:Z4")

def test_kron_quadruple_bundle():
    """Test the quadruple against the graph K5"""
    bundle = build_bundle("kron-quadruple:F5:gr")
    assert bundle.n == 45
    assert all(member.connected and member.trace == 0 for member in bundle.members)
    with pytest.raises(BundleError):
        build_bundle("kron-quadruple:F2:gr")

def test_free_form_bundle():
    """Test free-form recipes"""
    bundle = build_bundle("F9:gr; F3xF3:gr")
    assert bundle.equienergetic
    assert bundle.isospectral_pairs == []
    duplicate = build_bundle("F4:gr;F4:grplus")
    assert len(duplicate.members) == 1
    assert duplicate.duplicates == ["GRplus[F4]"]

@pytest.mark.parametrize("recipe", ["F3:gr;F4:gr", "F3:foo", "F3", ";"])
def test_bundle_errors(recipe):
    """Test malformed recipes and mixed vertex counts"""
    with pytest.raises(BundleError):
        build_bundle(recipe)

def test_minus_spectrum():
    """Test G- over F4 x F5 and its energy"""
    spectrum = minus_spectrum(parse_ring_spec("F4xF5"))
    assert spectrum.as_dict() == {7: 1, 3: 3, 2: 8, -2: 8}
    assert minus_spectrum(parse_ring_spec("F5")).as_dict() == {0: 5}

# Tests for verification runs
def test_random_symmetric_subset():
    """Test that random subsets are symmetric and avoid 0"""
    rng = np.random.default_rng(7)
    for n in range(3, 30):
        subset = random_symmetric_subset(rng, n)
        assert subset
        assert 0 not in subset
        assert sorted((-x) % n for x in subset) == subset

def test_verification_config():
    """Test that the adjacency bound follows the vertex bound unless set, and family parsing"""
    assert VerificationConfig().adjacency_max == 100
    assert VerificationConfig(max_vertices=200).adjacency_max == 200
    assert VerificationConfig(max_vertices=200, adjacency_max=None).adjacency_max == 200
    assert VerificationConfig(max_vertices=200, adjacency_max=50).adjacency_max == 50
    assert VerificationConfig(families="Field").families == frozenset({Family.FIELD})

def test_run_verification():
    """Test a small verification run"""
    cfg = VerificationConfig(max_vertices=30, adjacency_max=16, random_subsets=20, seed=3)
    summary = run_verification(cfg)
    expected = [spec for spec in enumerate_specs(SearchConfig(max_vertices=30, max_factors=4)) if spec.is_constructible]
    assert summary.rings_checked == len(expected)
    assert summary.adjacency_checked == len([spec for spec in expected if spec.order <= 16])
    assert summary.subsets_checked == 20
    assert '"seed":3' in summary.to_json()

def test_run_verification_to_200():
    """Test that every constructible ring with |R| <= 200 is checked through its adjacency matrices"""
    with patch.dict(os.environ, {"CHARPOLY_MAX_VERTICES": "0"}):
        summary = run_verification(VerificationConfig(max_vertices=200, random_subsets=0))
    assert summary.adjacency_max == 200
    assert summary.adjacency_checked == summary.rings_checked
    assert {parse_ring_spec(text).label for text in ("Z49", "F7xF11", "F8xZ25", "Z4xZ49")} <= set(summary.labels)
