"""
Tests for the cayley-spectra command line

This module runs main() on argument lists and checks stdout and exit codes.
"""
import json
import os
import sys
import pytest
from unittest.mock import patch

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from cli.main import EXIT_DOMAIN, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from search.lists import TABLE_FILE
from shared.utils import VerificationMismatch, get_golden_dir

# Test data
def run(capsys, *argv):
    """Run the command line and return (exit code, stdout, stderr)"""
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err

# Tests for spectra and energies
def test_spec(capsys):
    """Test spectrum text for G_R and G_R+"""
    assert run(capsys, "spec", "Z9")[:2] == (EXIT_OK, "{[6]^1,[0]^6,[-3]^2}\n")
    code, out, _ = run(capsys, "spec", "Z9", "--role", "grplus")
    assert code == EXIT_OK
    assert out == "{[6]^1,[3]^1,[0]^6,[-3]^1}\n"

def test_spec_several_rings(capsys):
    """Test that several rings are printed with labels"""
    code, out, _ = run(capsys, "spec", "F3", "Z3xZ4")
    assert code == EXIT_OK
    assert out.splitlines() == ["F3: {[2]^1,[-1]^2}", "F3xZ4: {[4]^1,[2]^2,[0]^6,[-2]^2,[-4]^1}"]

def test_spec_json(capsys):
    """Test the JSON view"""
    code, out, _ = run(capsys, "spec", "F3xF4", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["label"] == "F3xF4"
    assert payload["role"] == "GR"

def test_energy(capsys):
    """Test energies of G_R and G_R-"""
    assert run(capsys, "energy", "F3xF4")[:2] == (EXIT_OK, "24\n")
    assert run(capsys, "energy", "F4xF5", "--role", "grminus")[:2] == (EXIT_OK, "48\n")

# Tests for reports
def test_pair_json(capsys):
    """Test the G_R against G_R+ report as JSON"""
    code, out, _ = run(capsys, "pair", "Z9", "--format", "json")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["kind"] == "pair:GRvsGRplus"
    assert report["verdict"]["value"] is True

def test_pair_text_prints_witnesses(capsys):
    """Test that the text view shows the verdict and both graphs"""
    code, out, _ = run(capsys, "pair", "Z9", "--role", "grbar")
    assert code == EXIT_OK
    assert "verdict" in out
    assert "{[2]^3,[-1]^6}" in out

def test_triple(capsys):
    """Test the triple report"""
    code, out, _ = run(capsys, "triple", "Z9", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"]["witness"]["energy"] == 12

def test_table_csv(capsys):
    """Test that the table verb reproduces the golden CSV"""
    code, out, _ = run(capsys, "table", "--format", "csv")
    assert code == EXIT_OK
    assert out == (get_golden_dir() / TABLE_FILE).read_text()

# Tests for searches
def test_enumerate(capsys):
    """Test enumeration text"""
    code, out, _ = run(capsys, "enumerate", "--max", "4")
    assert code == EXIT_OK
    assert out.splitlines() == ["F2", "F3", "F2[x]/(x^2)", "F4", "Z4", "F2xF2"]

def test_pairs_cross_ring(capsys):
    """Test the cross-ring pair search"""
    code, out, _ = run(capsys, "pairs", "cross", "--max", "9")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "2 cross-ring pairs"
    assert lines[1].startswith("  Z4|F2xF2: energy=4")

def test_bundle_csv(capsys):
    """Test a free-form bundle as CSV"""
    code, out, _ = run(capsys, "bundle", "F9:gr;F3xF3:gr", "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "label,n,energy,trace,connected,bipartite,spectrum"
    assert len(lines) == 3

def test_verify_json(capsys):
    """Test a small verification run"""
    code, out, _ = run(capsys, "verify", "--max", "12", "--format", "json")
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary["max_vertices"] == 12
    assert summary["rings_checked"] > 0

def test_spec_csv_quotes_spectra(capsys):
    """Test that CSV fields containing commas are quoted"""
    code, out, _ = run(capsys, "spec", "Z9", "--format", "csv")
    assert code == EXIT_OK
    assert out == 'label,role,n,degree,spectrum\nZ9,GR,9,6,"{[6]^1,[0]^6,[-3]^2}"\n'

def test_verify_adjacency_bound(capsys):
    """Test that adjacency checks cover --max unless --adjacency-max lowers them"""
    code, out, _ = run(capsys, "verify", "--max", "12", "--format", "json")
    summary = json.loads(out)
    assert summary["adjacency_max"] == 12
    assert summary["adjacency_checked"] == summary["rings_checked"]
    code, out, _ = run(capsys, "verify", "--max", "12", "--adjacency-max", "5", "--format", "json")
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary["adjacency_max"] == 5
    assert summary["adjacency_checked"] < summary["rings_checked"]

# Tests for exit codes
@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["enumerate"],
    ["pairs", "grbar"],
    ["lists", "bogus"],
    ["spec"],
    ["spec", "Z9", "--format", "xml"],
    ["spec", "Z9", "--role", "bogus"],
    ["pair", "Z9", "--role", "grminus"],
    ["pairs", "bogus", "--max", "9"],
    ["enumerate", "--max", "1"],
    ["enumerate", "--max", "9", "--families", "Bogus"],
    ["verify", "--max", "12", "--adjacency-max", "-1"],
])
def test_usage_errors(capsys, argv):
    """Test exit code 64 on malformed command lines"""
    assert main(argv) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err

@pytest.mark.parametrize("argv", [
    ["spec", "F6"],
    ["bundle", "F3:gr;F4:gr"],
    ["spec", "L(8,2)", "--role", "grminus"],
])
def test_domain_errors(capsys, argv):
    """Test exit code 1 on domain errors"""
    assert main(argv) == EXIT_DOMAIN
    assert "error:" in capsys.readouterr().err

def test_mismatch_prints_both_sides(capsys):
    """Test exit code 2 with expected and observed on stderr"""
    def failing(args):
        raise VerificationMismatch("F3: G_R spectrum", expected="{[2]^1,[-1]^2}", observed="{[2]^1,[1]^1,[-1]^1}")

    with patch.dict("cli.main.COMMANDS", {"spec": failing}):
        code, out, err = run(capsys, "spec", "F3")
    assert code == EXIT_MISMATCH
    assert out == ""
    assert "mismatch: F3: G_R spectrum" in err
    assert "expected: {[2]^1,[-1]^2}" in err
    assert "observed: {[2]^1,[1]^1,[-1]^1}" in err
