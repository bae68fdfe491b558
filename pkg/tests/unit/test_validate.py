"""Test the invariant grid."""

import pytest

from noisygrover import validate
from noisygrover.core import bloch
from noisygrover.validate import FAIL, PASS, SKIP, CheckResult, format_table, run_checks


@pytest.fixture(scope="module")
def results():
    """Every check, run once."""
    return {r.name: r for r in run_checks()}


def test_all_checks_pass(results):
    """Test a clean build passes every property."""
    assert set(results) == set(validate.CHECKS)
    assert all(r.ok for r in results.values()), format_table(list(results.values()))


def test_amplitude_damping_skipped(results):
    """Test amplitude damping is reported as skipped rather than passed."""
    assert results["amplitude-damping"].status == SKIP
    assert results["cptp"].status == PASS


def test_transposed_rotation_detected(monkeypatch):
    """Test a sign flip in G is caught."""
    original = bloch.grover_matrix
    monkeypatch.setattr(bloch, "grover_matrix", lambda params: original(params).T)
    statuses = {r.name: r.status for r in run_checks(["rotation-identities", "bloch-crosscheck"])}
    assert statuses["rotation-identities"] == FAIL
    assert statuses["bloch-crosscheck"] == FAIL


def test_reflection_sign_detected(monkeypatch):
    """Test a sign flip in R is caught."""
    original = bloch.reflection_matrix

    def flipped(params):
        matrix = original(params).copy()
        matrix[0, 1] = -matrix[0, 1]
        return matrix

    monkeypatch.setattr(bloch, "reflection_matrix", flipped)
    statuses = {r.name: r.status for r in run_checks(["rotation-identities", "bloch-crosscheck"])}
    assert statuses["rotation-identities"] == FAIL
    assert statuses["bloch-crosscheck"] == FAIL


def test_broken_bloch_map_detected(monkeypatch):
    """Test a Bloch map that ignores the channel is caught."""
    monkeypatch.setattr(validate, "noise_bloch_map", lambda noise: lambda r: r)
    assert run_checks(["kraus-bloch-dictionary"])[0].status == FAIL


def test_unknown_check():
    """Test asking for an unknown check raises."""
    with pytest.raises(ValueError, match="Unknown check"):
        run_checks(["nonsense"])


def test_table_layout():
    """Test the report has a header and one line per check."""
    table = format_table([CheckResult("cptp", PASS, "fine"), CheckResult("commutation", FAIL, "broken")])
    lines = table.splitlines()
    assert lines[0].startswith("property")
    assert "cptp" in lines[1] and "pass" in lines[1]
    assert "commutation" in lines[2] and "fail" in lines[2]
