import re
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from staralg.algebra import (
    direct_sum,
    function_points,
    grassmann,
    matrix_algebra,
    matrix_over,
    zero_mult,
)
from staralg.scalars import LAMBDA, Complex, RatFun

settings.register_profile(
    "staralg",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("staralg")

small_ints = st.integers(-4, 4)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
gauss_ints = st.builds(Complex, small_ints, small_ints)
gauss_rats = st.builds(Complex, rationals, rationals)


@st.composite
def ratfuns(draw, max_deg=2):
    num = draw(st.lists(rationals, min_size=1, max_size=max_deg + 1))
    den = draw(st.lists(rationals, min_size=1, max_size=max_deg + 1).filter(lambda d: any(d)))
    return RatFun(num, den)


def vectors(n, elements=gauss_ints):
    return st.lists(elements, min_size=n, max_size=n).map(tuple)


def builtin_algebras():
    """Every standard constructor output up to dim 8, named for test ids."""
    out = {
        "matrix1": matrix_algebra(1),
        "matrix2": matrix_algebra(2),
        "fun1": function_points(1),
        "fun2": function_points(2),
        "fun3": function_points(3),
        "grassmann1": grassmann(1),
        "grassmann2": grassmann(2),
        "grassmann3": grassmann(3),
        "zero1": zero_mult(1),
        "zero2": zero_mult(2),
        "zero3": zero_mult(3),
        "m2+g1": direct_sum(matrix_algebra(2), grassmann(1)),
        "fun1+m1": direct_sum(function_points(1), matrix_algebra(1)),
        "M2(fun2)": matrix_over(function_points(2), 2),
    }
    return out


BUILTINS = builtin_algebras()


@pytest.fixture(params=sorted(BUILTINS), ids=sorted(BUILTINS))
def builtin(request):
    return BUILTINS[request.param]


__all__ = ["LAMBDA", "BUILTINS", "gauss_ints", "gauss_rats", "ratfuns", "vectors", "rationals"]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = list(getattr(mod, "RESULTS", []))
    seen = {int(re.search(r"criterion\s+(\d+)", x).group(1)) for x in lines}
    for rep in terminalreporter.stats.get("failed", []):
        m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", rep.nodeid)
        if m and int(m.group(1)) not in seen:
            lines.append(f"criterion {int(m.group(1)):>2}: FAIL  raised before completing")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
