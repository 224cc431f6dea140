import random

import numpy as np
import pytest
from hypothesis import given

from conftest import BUILTINS, vectors
from staralg.algebra import (
    Algebra,
    ParentMismatch,
    PresentationError,
    construct_standard,
    direct_sum,
    function_points,
    grassmann,
    hermitian_basis,
    matrix_algebra,
    matrix_over,
    multiply,
    quotient_by_star_ideal,
    star,
    validate_presentation,
    zero_mult,
)
from staralg.linalg import Subspace
from staralg.scalars import I, ONE, ZERO, Complex


def _dense(p):
    """Structure constants and involution as complex numpy arrays."""
    c = np.array([[[complex(float(z.re), float(z.im)) for z in row] for row in plane] for plane in p.structure_constants()])
    s = np.array([[complex(float(z.re), float(z.im)) for z in row] for row in p.star_matrix()])
    return c, s


def test_matrix2_flags():
    rep = validate_presentation(matrix_algebra(2))
    assert rep.valid
    assert rep.flags["has_unit"] and rep.flags["is_idempotent"] and rep.flags["is_nondegenerate"]


def test_broken_associativity_witness():
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    # b1 b2 = b3, b3 b3 = b3, everything else zero: (b1 b2) b3 = b3 but b2 b3 = 0
    c[0][1][2] = 1
    c[2][2][2] = 1
    s = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    rep = validate_presentation(Algebra.from_arrays(c, s))
    assert not rep.valid
    assert rep.violations[0][0] == "associativity"
    assert rep.violations[0][1] == (1, 2, 3)


def test_grassmann2_valid_and_unital():
    g = grassmann(2)
    rep = validate_presentation(g)
    assert rep.valid and rep.flags["has_unit"]
    c, s = _dense(g)
    # anti-multiplicativity on all 16 pairs, through the dense oracle
    for i in range(4):
        for j in range(4):
            lhs = s @ np.conj(c[i, j])
            rhs = np.einsum("a,b,abk->k", s @ np.eye(4)[j], s @ np.eye(4)[i], c)
            assert np.allclose(lhs, rhs)


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_validate(name):
    assert validate_presentation(BUILTINS[name]).valid


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_grassmann_up_to_sixteen(n):
    g = grassmann(n)
    assert g.dim == 2**n
    assert validate_presentation(g).valid


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_associativity_dense_oracle(name):
    c, _ = _dense(BUILTINS[name])
    left = np.einsum("ijm,mkl->ijkl", c, c)
    right = np.einsum("jkm,iml->ijkl", c, c)
    assert np.allclose(left, right)


def test_grassmann1_shape():
    g = grassmann(1)
    one, e = g.basis_vector(0), g.basis_vector(1)
    assert g.dim == 2 and g.labels == ("1", "e1")
    assert g.mul(e, e) == g.zero()
    assert g.star(e) == e
    assert g.unit == one


def test_function_points3_shape():
    f = function_points(3)
    for i in range(3):
        for j in range(3):
            expect = f.basis_vector(i) if i == j else f.zero()
            assert f.mul(f.basis_vector(i), f.basis_vector(j)) == expect


def test_zero_mult1_shape():
    z = zero_mult(1)
    b = z.basis_vector(0)
    assert z.mul(b, b) == z.zero() and z.star(b) == b


def test_flags_for_zero_multiplication():
    for n in (1, 2, 3):
        assert matrix_algebra(n).is_idempotent
        assert not zero_mult(n).is_idempotent
        assert not zero_mult(n).is_nondegenerate


@pytest.mark.parametrize("n", [0, -1])
def test_nonpositive_size(n):
    with pytest.raises(PresentationError):
        construct_standard("matrix", n)


def test_products_and_star_examples():
    m = matrix_algebra(2)
    E11, E12, E21 = (m.basis_element(k) for k in (0, 1, 2))
    assert E11 * E12 == E12
    assert star(I * E12) == -I * E21
    g = grassmann(2)
    e1, e2, e12 = (g.basis_element(k) for k in (1, 2, 3))
    assert multiply(e1, e2) == e12
    assert multiply(e2, e1) == -1 * e12


def test_parent_mismatch():
    with pytest.raises(ParentMismatch):
        multiply(matrix_algebra(2).basis_element(0), grassmann(1).basis_element(0))


def test_hermitian_basis_matrix2():
    m = matrix_algebra(2)
    hb = hermitian_basis(m)
    assert len(hb) == 4
    for h in hb:
        assert h.is_hermitian()
    expected = [
        (ONE, ZERO, ZERO, ZERO),
        (ZERO, ONE, ONE, ZERO),
        (ZERO, ZERO, ZERO, ONE),
        (ZERO, -I, I, ZERO),
    ]
    assert [h.coeffs for h in hb] == expected


def test_hermitian_basis_small():
    assert [h.coeffs for h in hermitian_basis(grassmann(1))] == [(ONE, ZERO), (ZERO, ONE)]
    assert len(hermitian_basis(function_points(4))) == 4


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_hermitian_real_dimension(name):
    assert len(hermitian_basis(BUILTINS[name])) == BUILTINS[name].dim


def test_quotients():
    g = grassmann(1)
    q, rho = quotient_by_star_ideal(g, Subspace(2, [g.basis_vector(1)]))
    assert q.dim == 1 and validate_presentation(q).valid
    q0, _ = quotient_by_star_ideal(g, Subspace.zero(2))
    assert q0.structure_constants() == g.structure_constants()
    f = function_points(3)
    q3, _ = quotient_by_star_ideal(f, Subspace(3, [f.basis_vector(1), f.basis_vector(2)]))
    assert q3.dim == 1


def test_quotient_rejects_non_ideal():
    m = matrix_algebra(2)
    with pytest.raises(ValueError):
        quotient_by_star_ideal(m, Subspace(4, [m.basis_vector(0)]))


def test_direct_sum_examples():
    s = direct_sum(matrix_algebra(1), matrix_algebra(1))
    assert s.structure_constants() == function_points(2).structure_constants()
    assert s.star_matrix() == function_points(2).star_matrix()
    assert not direct_sum(matrix_algebra(2), zero_mult(1)).is_nondegenerate
    assert direct_sum(matrix_algebra(2), grassmann(1)).dim == 6
    assert direct_sum(matrix_algebra(2), grassmann(1)).has_unit


def test_matrix_over_involution():
    M = matrix_over(function_points(2), 2)
    # entry (0,1) at point 2 with coefficient i; star moves it to (1,0) at point 2 with -i
    idx = lambda i, j, a: (i * 2 + j) * 2 + a
    u = [ZERO] * 8
    u[idx(0, 1, 1)] = I
    v = [ZERO] * 8
    v[idx(1, 0, 1)] = -I
    assert M.star(tuple(u)) == tuple(v)


@pytest.mark.parametrize("name", ["matrix2", "grassmann2", "M2(fun2)", "m2+g1", "zero2"])
def test_star_laws_random(name):
    p = BUILTINS[name]
    rng = random.Random(1)
    for _ in range(1000 if p.dim <= 4 else 200):
        a = tuple(Complex(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(p.dim))
        b = tuple(Complex(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(p.dim))
        assert p.star(p.star(a)) == a
        assert p.star(p.mul(a, b)) == p.mul(p.star(b), p.star(a))


@given(vectors(4), vectors(4))
def test_quotient_is_star_homomorphism(a, b):
    g = grassmann(2)
    q, rho = quotient_by_star_ideal(g, Subspace(4, [g.basis_vector(3)]))
    assert validate_presentation(q).valid
    assert rho(g.mul(a, b)) == q.mul(rho(a), rho(b))
    assert rho(g.star(a)) == q.star(rho(a))
