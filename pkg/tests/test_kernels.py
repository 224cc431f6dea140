"""Compiled and pure-Python elimination kernels must agree bit for bit."""
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from staralg import _core_py, kernels

try:
    from staralg import _core
except ImportError:  # pragma: no cover - exercised only without a compiler
    _core = None

needs_compiled = pytest.mark.skipif(_core is None, reason="compiled kernel not built")

int_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _hermitian(n, rng, lo=-3, hi=3):
    re = [[0] * n for _ in range(n)]
    im = [[0] * n for _ in range(n)]
    for i in range(n):
        re[i][i] = rng.randint(lo, hi)
        for j in range(i + 1, n):
            a, b = rng.randint(lo, hi), rng.randint(lo, hi)
            re[i][j], im[i][j] = a, b
            re[j][i], im[j][i] = a, -b
    return re, im


def test_backend_reported():
    assert kernels.BACKEND in ("python", "cython")
    assert kernels.use_backend("python") is _core_py
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@given(int_matrices)
def test_real_rref_matches_sympy(rows):
    ncols = len(rows[0])
    out, pivots, d = _core_py.ff_rref_real(rows, ncols)
    ref, ref_piv = sympy.Matrix(rows).rref()
    assert tuple(pivots) == tuple(ref_piv)
    for r, row in enumerate(out):
        assert [sympy.Rational(x, d) for x in row] == list(ref.row(r))


@needs_compiled
@given(int_matrices)
def test_real_rref_backends_agree(rows):
    ncols = len(rows[0])
    assert _core.ff_rref_real(rows, ncols) == _core_py.ff_rref_real(rows, ncols)


@needs_compiled
@given(int_matrices, int_matrices)
def test_complex_rref_backends_agree(re, im):
    r = min(len(re), len(im))
    c = min(len(re[0]), len(im[0]))
    re = [row[:c] for row in re[:r]]
    im = [row[:c] for row in im[:r]]
    assert _core.ff_rref_complex(re, im, c) == _core_py.ff_rref_complex(re, im, c)


@needs_compiled
def test_hermitian_backends_agree():
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(1, 5)
        re, im = _hermitian(n, rng)
        assert _core.ff_hermitian(re, im) == _core_py.ff_hermitian(re, im)


@needs_compiled
def test_overflow_falls_back_to_exact_result():
    big = 2**70
    rows = [[big, 1, 3], [big + 1, 2, 5], [7, big, 1]]
    assert _core.ff_rref_real(rows, 3) == _core_py.ff_rref_real(rows, 3)
    rng = random.Random(3)
    re, im = _hermitian(4, rng, -(2**40), 2**40)
    assert _core.ff_hermitian(re, im) == _core_py.ff_hermitian(re, im)


def test_hermitian_witness_is_negative():
    rng = random.Random(11)
    seen = 0
    for _ in range(300):
        n = rng.randint(1, 4)
        re, im = _hermitian(n, rng)
        status, wit, _ = _core_py.ff_hermitian(re, im)
        if status != kernels.INDEFINITE:
            continue
        seen += 1
        v = [complex(a, b) for a, b in zip(*wit)]
        g = [[complex(re[i][j], im[i][j]) for j in range(n)] for i in range(n)]
        val = sum(v[i].conjugate() * g[i][j] * v[j] for i in range(n) for j in range(n))
        assert val.real < 0 and abs(val.imag) < 1e-9
    assert seen > 50
