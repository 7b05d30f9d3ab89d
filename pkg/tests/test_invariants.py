import pytest

from gbs_locc.sweep import run_sweep


@pytest.mark.slow
def test_tight_tolerance_roundtrip_sweep():
    # pruning at 1e-12 must not change any verdict, and every document survives JSON
    loose = run_sweep(4, 7, tol=1e-9)
    tight = run_sweep(4, 7, tol=1e-12, roundtrip=True)
    assert tight["total_failures"] == 0
    for d, row in tight["per_dimension"].items():
        assert row["routes"] == loose["per_dimension"][d]["routes"]
        assert row["certificates_replayed"] == row["triples"]
