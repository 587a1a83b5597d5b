import mpmath
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

mpmath.mp.dps = 30


def mp_kurepa(z):
    """K(z) for Re z > 0 by arbitrary-precision quadrature."""
    z = mpmath.mpc(z)
    f = lambda t: mpmath.exp(-t) * (t**z - 1) / (t - 1)  # noqa: E731
    return complex(mpmath.quad(f, [0, 1, 10, mpmath.inf]))


def mp_k1(z):
    z = mpmath.mpc(z)
    return complex(mpmath.gamma(z) * mpmath.hyp1f1(1, 1 - z, -1))


@pytest.fixture
def close():
    def check(a, b, tol, rel=False):
        scale = max(1.0, abs(b)) if rel else 1.0
        assert abs(complex(a) - complex(b)) <= tol * scale, f"{a} vs {b}"
    return check


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
