"""Acceptance harness internals: registry shape, caching, report rendering."""

import pytest

from boostlab.verify import (
    AcceptanceContext,
    Check,
    CriterionResult,
    CRITERIA,
    FAST_CRITERIA,
    FULL_CRITERIA,
    format_report,
    run,
)


def test_registry_covers_all_criteria():
    assert sorted(CRITERIA) == list(range(1, 11))
    assert FAST_CRITERIA == (9,)
    assert FULL_CRITERIA == tuple(range(1, 11))


def test_run_rejects_unknown_level():
    with pytest.raises(ValueError, match="fast"):
        run("thorough")


def test_context_caches_orbits():
    ctx = AcceptanceContext(nodes_per_axis=5)
    first = ctx.orbit("axis-0")
    assert ctx.orbit("axis-0") is first
    assert ctx.orbit("axis-0", nodes=3) is not first


def test_criterion_result_aggregates_checks():
    good = Check("a", True, "1", "1")
    bad = Check("b", False, "2", "1")
    assert CriterionResult(1, "demo", (good,)).passed
    assert not CriterionResult(1, "demo", (good, bad)).passed


def test_format_report_rendering():
    results = [
        CriterionResult(1, "alpha", (Check("one", True, "0.5", "<= 1"),)),
        CriterionResult(2, "beta", (Check("two", False, "3", "<= 1"),)),
    ]
    quiet = format_report(results, verbose=False)
    assert "[PASS]  1 alpha" in quiet
    assert "[FAIL]  2 beta" in quiet
    assert "one" not in quiet
    assert "- two: 3 (expected <= 1) [FAIL]" in quiet
    assert "1/2 criteria passed" in quiet
    assert "- one: 0.5 (expected <= 1) [ok]" in format_report(results, verbose=True)
