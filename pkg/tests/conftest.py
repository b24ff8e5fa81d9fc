import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "normtrace",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("normtrace")

from normtrace import pnab  # noqa: E402


@pytest.fixture(scope="session")
def tower():
    """Cached tower builder: tower(p, e, n)."""
    return lambda p, e, n, seed=0: pnab._tower(p, e, n, seed)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(RESULTS):
        parts = RESULTS[k]
        ok = all(p[1] for p in parts)
        failed = "; ".join(f"{name}: {detail}" if detail else name for name, good, detail in parts if not good)
        tr.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}" + (f" -- failing part(s): {failed}" if failed else ""))
