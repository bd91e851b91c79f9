import sys
import numpy as np
import pytest
from hypothesis import strategies as st

from quatmono import Quat


def rand_quat(rng, scale=1.0):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return Quat(*(complex(c) for c in scale * v))


def rand_poly(rng, max_deg=5, scale=0.5):
    """Random polynomial in z as a parser string, degree <= max_deg."""
    deg = int(rng.integers(0, max_deg + 1))
    terms = []
    for k in range(deg + 1):
        c = scale * (rng.normal() + 1j * rng.normal())
        terms.append(f"({c.real!r}+{c.imag!r}*i)*z^{k}")
    return "+".join(terms)


finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
quats = st.builds(Quat, complexes, complexes, complexes, complexes)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
