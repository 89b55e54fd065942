"""Shared corpora: every genus-2 curve over F_3, a seeded sample over F_5, and bielliptic covers."""

import random

import pytest

from classexp.curve import validate
from classexp.ff import GF
from classexp.jacobian import Jacobian, group_profile
from classexp.relative import enumerate_covers
from classexp.sweep import enumerate_curves
from classexp.zeta import l_polynomial

F5_SAMPLE_SIZE = 500
F5_SAMPLE_SEED = 20240521


@pytest.fixture(scope="session")
def f3_curves():
    curves, _ = enumerate_curves(GF(3), 2)
    return curves


@pytest.fixture(scope="session")
def f5_sample():
    curves, _ = enumerate_curves(GF(5), 2)
    rng = random.Random(F5_SAMPLE_SEED)
    return sorted(rng.sample(curves, F5_SAMPLE_SIZE), key=lambda c: c.f)


class CurveData:
    """Zeta data, enumerated classes and exhaustive profile of one odd monic curve."""

    def __init__(self, curve):
        self.curve = curve
        self.zeta = l_polynomial(curve)
        self.jac = Jacobian(curve)
        self.classes = self.jac.enumerate_classes()
        self.profile = group_profile(self.jac, classes=self.classes)


@pytest.fixture(scope="session")
def f3_data(f3_curves):
    return [CurveData(c) for c in f3_curves]


@pytest.fixture(scope="session")
def covers():
    out = []
    for q in (5, 7):
        cs, _ = enumerate_covers(GF(q))
        out.extend(cs)
    return out


@pytest.fixture
def x5_minus_x():
    """y^2 = x^5 - x over F_5."""
    return validate(GF(5), (), (0, 4, 0, 0, 0, 1))


@pytest.fixture
def x3_minus_x():
    """y^2 = x^3 - x over F_3."""
    return validate(GF(3), (), (0, 2, 0, 1))


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion(n, title, ok, detail)."""

    def record(n, title, ok, detail=""):
        line = f"CRITERION {n} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
        request.config.stash.setdefault(ACCEPTANCE, {})[n] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
