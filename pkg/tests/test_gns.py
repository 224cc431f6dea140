import random

import pytest

from conftest import BUILTINS
from staralg.algebra import function_points, grassmann, matrix_algebra, quotient_by_star_ideal
from staralg.gns import (
    DEGENERATE,
    STRONGLY_NONDEGENERATE,
    Representation,
    RepresentationError,
    degeneracy_status,
    direct_sum_reps,
    gns_construct,
    kernel_of,
    pullback,
    vector_state,
    zero_representation,
)
from staralg.linalg import Subspace, nullspace
from staralg.positivity import (
    LinearFunctional,
    NotPositive,
    builtin_functional_family,
    conjugated_functional,
    gelfand_ideal,
)
from staralg.scalars import ONE, ZERO, Complex


def C(*xs):
    return tuple(Complex(x) for x in xs)


def defining_rep(n):
    """The identity representation of matrix(n) on C^n."""
    m = matrix_algebra(n)
    actions = []
    for i in range(n):
        for j in range(n):
            actions.append([tuple(ONE if (r, c) == (i, j) else ZERO for c in range(n)) for r in range(n)])
    gram = [tuple(ONE if r == c else ZERO for c in range(n)) for r in range(n)]
    return Representation(m, gram, actions, provenance="defining")


def test_trace_gns_is_faithful():
    m = matrix_algebra(2)
    pi = gns_construct(LinearFunctional(m, C(1, 0, 0, 1)))
    assert pi.dim == 4
    assert kernel_of(pi).is_zero()


def test_corner_functional_gives_two_dimensions():
    m = matrix_algebra(2)
    pi = gns_construct(LinearFunctional(m, C(1, 0, 0, 0)))
    assert pi.dim == 2
    assert kernel_of(pi).is_zero()


def test_grassmann_gns():
    g = grassmann(1)
    pi = gns_construct(LinearFunctional(g, C(1, 0)))
    assert pi.dim == 1
    assert pi.actions[1] == [(ZERO,)]
    assert kernel_of(pi).subspace == Subspace(2, [g.basis_vector(1)])


def test_gns_rejects_non_positive():
    with pytest.raises(NotPositive):
        gns_construct(LinearFunctional(grassmann(1), C(1, 1)))


def test_kernel_examples():
    assert kernel_of(defining_rep(2)).is_zero()
    g = grassmann(2)
    ideal = Subspace(4, [g.basis_vector(3)])
    q, rho = quotient_by_star_ideal(g, ideal)
    for om in builtin_functional_family(q):
        back = pullback(gns_construct(om), g, rho)
        assert ideal <= kernel_of(back).subspace


def test_vector_state_examples():
    pi = defining_rep(2)
    om = vector_state(pi, C(1, 0))
    assert om.values == C(1, 0, 0, 0)
    assert vector_state(pi, C(0, 0)).is_zero()
    for name in ("matrix2", "grassmann2", "fun3"):
        for om in builtin_functional_family(BUILTINS[name]):
            rep = gns_construct(om)
            assert vector_state(rep, rep.cyclic).values == om.values


def test_direct_sums():
    f = function_points(3)
    reps = [gns_construct(om) for om in builtin_functional_family(f)]
    assert kernel_of(direct_sum_reps(reps)).is_zero()
    pi = reps[0]
    assert kernel_of(direct_sum_reps([pi, pi])) == kernel_of(pi)
    with pytest.raises(RepresentationError):
        direct_sum_reps([])


def test_degeneracy_examples():
    d = defining_rep(2)
    assert degeneracy_status(zero_representation(d.parent))[0] == DEGENERATE
    padded = direct_sum_reps([d, zero_representation(d.parent)])
    status, snd = degeneracy_status(padded)
    assert status == DEGENERATE
    assert snd.dim == 2 and kernel_of(snd).is_zero()


def test_nilpotent_action_is_not_a_star_representation():
    # a nonzero nilpotent cannot represent a Hermitian b with b b = 0
    from staralg.algebra import zero_mult

    z = zero_mult(1)
    gram = [(ONE, ZERO), (ZERO, ONE)]
    with pytest.raises(RepresentationError):
        Representation(z, gram, [[(ZERO, ONE), (ZERO, ZERO)]])
    rep = Representation(z, gram, [[(ZERO, ZERO), (ZERO, ZERO)]])
    assert degeneracy_status(rep)[0] == DEGENERATE


def test_invalid_representation_is_rejected():
    m = matrix_algebra(1)
    with pytest.raises(RepresentationError):
        Representation(m, [(Complex(-1),)], [[(ONE,)]])


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_gns_identities(name):
    p = BUILTINS[name]
    rng = random.Random(0)
    for om in builtin_functional_family(p):
        pi = gns_construct(om)
        assert degeneracy_status(pi)[0] == STRONGLY_NONDEGENERATE
        ker = kernel_of(pi).subspace
        inter = Subspace.full(p.dim)
        probes = [p.basis_vector(i) for i in range(p.dim)]
        probes += [tuple(Complex(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(p.dim)) for _ in range(5)]
        for b in probes:
            inter = inter & gelfand_ideal(conjugated_functional(om, b))
        assert inter == ker
        if p.has_unit:
            j = gelfand_ideal(om)
            kw = Subspace(p.dim, nullspace([om.values], p.dim))
            assert ker <= j <= kw


@pytest.mark.parametrize("rep", [defining_rep(2), direct_sum_reps([gns_construct(om) for om in builtin_functional_family(function_points(3))])], ids=["matrix2", "fun3"])
def test_kernel_from_vector_states(rep):
    basis = [tuple(ONE if k == i else ZERO for k in range(rep.dim)) for i in range(rep.dim)]
    pairs = [tuple(a + b for a, b in zip(u, v)) for u in basis for v in basis]
    inter = Subspace.full(rep.parent.dim)
    for phi in basis + pairs:
        inter = inter & kernel_of(gns_construct(vector_state(rep, phi))).subspace
    assert inter == kernel_of(rep).subspace


def test_snd_restriction_keeps_kernel_for_idempotent_algebras():
    for name in ("matrix2", "fun3", "M2(fun2)"):
        p = BUILTINS[name]
        for om in builtin_functional_family(p)[:3]:
            pi = direct_sum_reps([gns_construct(om), zero_representation(p)])
            _, snd = degeneracy_status(pi)
            assert kernel_of(snd) == kernel_of(pi)
