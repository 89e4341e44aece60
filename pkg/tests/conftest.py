import numpy as np
import pytest
from hypothesis import settings, strategies as st

from entireops import series
from entireops.multiindex import MultiIndex, enumerate_upto

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")

FIXTURES = __import__("pathlib").Path(__file__).parent / "fixtures"

small_float = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)
small_complex = st.builds(complex, small_float, small_float)


def multi_indices(n, max_entry=4):
    return st.lists(st.integers(0, max_entry), min_size=n, max_size=n).map(MultiIndex)


@st.composite
def polys(draw, dim=1, max_degree=5, trunc=None):
    idx = enumerate_upto(dim, max_degree)
    chosen = draw(st.lists(st.sampled_from(idx), max_size=6, unique=True))
    coeffs = {mu: draw(small_complex) for mu in chosen}
    return series.TaylorPoly(dim, max_degree if trunc is None else trunc, coeffs)


def random_poly(rng, dim, degree, trunc=None, density=1.0):
    coeffs = {}
    for mu in enumerate_upto(dim, degree):
        if rng.random() <= density:
            coeffs[mu] = complex(rng.normal(), rng.normal())
    return series.TaylorPoly(dim, degree if trunc is None else trunc, coeffs)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def record_acceptance(number, title, ok, detail=""):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
