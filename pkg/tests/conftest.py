import numpy as np
import pytest

from ioaco import DmModel

_ACCEPTANCE = {}
# criterion number -> one-line measurement, filled in by the acceptance tests
ACCEPTANCE_DETAIL = {}


def random_dm(rng: np.random.Generator, n: int, degenerate_share: float = 0.2) -> DmModel:
    """A random DM model that satisfies every parameter constraint."""
    centre = rng.dirichlet(np.ones(n))
    centre = np.maximum(centre, 0.02)
    centre /= centre.sum()
    lo = centre * (1.0 - rng.uniform(0.0, 0.5, n))
    hi = centre * (1.0 + rng.uniform(0.0, 0.5, n))
    q_lo = rng.uniform(0.0, 0.1, n)
    q_hi = q_lo + np.where(rng.random(n) < degenerate_share, 0.0, rng.uniform(0.0, 0.1, n))
    v_lo = q_hi + rng.uniform(0.05, 0.5, n)
    v_hi = v_lo + np.where(rng.random(n) < degenerate_share, 0.0, rng.uniform(0.0, 0.3, n))
    lam_lo = rng.uniform(0.5, 0.8)
    lam_hi = lam_lo if rng.random() < degenerate_share else rng.uniform(lam_lo, 1.0)
    return DmModel(
        weights=list(zip(lo, hi)),
        indifference=list(zip(q_lo, q_hi)),
        veto=list(zip(v_lo, v_hi)),
        lam=(lam_lo, lam_hi),
        beta=rng.uniform(0.5, 1.0),
    )


def simple_dm(n: int, w=None, q=(0.02, 0.05), v=(0.2, 0.4), lam=(0.6, 0.7), beta=0.67) -> DmModel:
    w = np.full(n, 1.0 / n) if w is None else np.asarray(w, dtype=float)
    return DmModel(weights=[(c * 0.9, c * 1.1) for c in w], indifference=[q] * n, veto=[v] * n,
                   lam=lam, beta=beta)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        if report.when == "call" or name not in _ACCEPTANCE:
            _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: (len(s.split("_")[2]), s)):
        status = "PASS" if _ACCEPTANCE[name] == "passed" else "FAIL"
        number = int(name.split("_")[2])
        detail = ACCEPTANCE_DETAIL.get(number, "")
        terminalreporter.write_line(f"{status}  {name}" + (f"  [{detail}]" if detail else ""))
