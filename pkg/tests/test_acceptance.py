"""One test per acceptance criterion; each prints a PASS/FAIL line (run with -s to see them)."""
import pytest

from discdet.corpus import CRITERIA, heavy_cubic_f3, run_criterion


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"c{c.number:02d}")
def test_criterion(criterion):
    result = run_criterion(criterion, seed=0)
    print(result.line())
    assert result.checked > 0
    assert not result.failures, result.failures[:5]
    assert result.within_time, f"{result.seconds:.1f}s > {result.limit}s"


@pytest.mark.heavy
def test_heavy_cubic_surface_over_f3():
    result = heavy_cubic_f3(seed=0)
    print(result.line())
    assert result.passed, result.failures
