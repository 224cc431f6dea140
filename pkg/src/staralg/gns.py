"""*-representations on finite free inner-product modules and the GNS construction.

The space of a representation carries an explicit positive definite Gram
matrix ``H``; ``<x, y> = x^H H y``.  Nothing is orthonormalized, since that
would need square roots.
"""
from __future__ import annotations

from staralg.algebra import Algebra
from staralg.linalg import (
    Subspace,
    conj_transpose,
    mat_mul,
    mat_vec,
    nullspace,
)
from staralg.positivity import (
    PD,
    LinearFunctional,
    NotPositive,
    is_positive_functional,
    psd_check,
)
from staralg.scalars import ONE, ZERO

__all__ = [
    "Representation",
    "RepresentationError",
    "gns_construct",
    "kernel_of",
    "vector_state",
    "direct_sum_reps",
    "degeneracy_status",
    "zero_representation",
    "pullback",
    "STRONGLY_NONDEGENERATE",
    "NONDEGENERATE",
    "DEGENERATE",
]

STRONGLY_NONDEGENERATE = "StronglyNonDegenerate"
NONDEGENERATE = "NonDegenerate"
DEGENERATE = "Degenerate"


class RepresentationError(ValueError):
    pass


def _zeros(m):
    return [(ZERO,) * m for _ in range(m)]


def _mat_add(a, b):
    return [tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b)]


def _mat_scale(c, a):
    return [tuple(c * x if x else ZERO for x in r) for r in a]


class Representation:
    """Action matrices ``actions[i] = pi(b_i)`` on a space with Gram ``gram``."""

    def __init__(self, parent: Algebra, gram, actions, provenance="custom", cyclic=None, check=True):
        m = len(gram)
        if len(actions) != parent.dim:
            raise RepresentationError(f"need {parent.dim} action matrices, got {len(actions)}")
        for a in actions:
            if len(a) != m or any(len(r) != m for r in a):
                raise RepresentationError("action matrix does not match the space dimension")
        self.parent = parent
        self.dim = m
        self.gram = [tuple(r) for r in gram]
        self.actions = [[tuple(r) for r in a] for a in actions]
        self.provenance = provenance
        self.cyclic = cyclic
        if check:
            bad = self.violation()
            if bad:
                raise RepresentationError(bad)

    def action(self, u):
        """pi(u) for a coefficient vector u."""
        out = _zeros(self.dim)
        for c, a in zip(u, self.actions):
            if c:
                out = _mat_add(out, _mat_scale(c, a))
        return out

    def inner(self, x, y):
        hy = mat_vec(self.gram, y)
        return sum((a.conj() * b for a, b in zip(x, hy) if a and b), ZERO)

    def violation(self):
        """Description of the first failed invariant, or None."""
        p = self.parent
        if self.dim and psd_check(self.gram).status != PD:
            return "Gram matrix of the space is not positive definite"
        for i in range(p.dim):
            for j in range(p.dim):
                lhs = mat_mul(self.actions[i], self.actions[j]) if self.dim else []
                rhs = self.action(p.mul(p.basis_vector(i), p.basis_vector(j)))
                if lhs != rhs:
                    return f"not multiplicative on ({i + 1}, {j + 1})"
        for i in range(p.dim):
            s = self.action(p.star(p.basis_vector(i)))
            lhs = mat_mul(conj_transpose(s, self.dim), self.gram) if self.dim else []
            rhs = mat_mul(self.gram, self.actions[i]) if self.dim else []
            if lhs != rhs:
                return f"not adjointable at basis element {i + 1}"
        return None

    def __repr__(self):
        return f"Representation({self.provenance}, dim={self.dim})"


def zero_representation(parent: Algebra, dim=1):
    gram = [tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim)]
    return Representation(parent, gram, [_zeros(dim) for _ in range(parent.dim)], provenance="zero")


def gns_construct(omega: LinearFunctional) -> Representation:
    """Left multiplication on A / J_omega with <psi_B, psi_C> = omega(B* C)."""
    verdict = is_positive_functional(omega)
    if not verdict.is_psd:
        raise NotPositive("GNS construction needs a positive functional")
    p = omega.parent
    j = Subspace(p.dim, verdict.radical)
    comp = j.complement
    basis = [p.basis_vector(k) for k in comp]
    gram = [tuple(omega(p.mul(p.star(x), y)) for y in basis) for x in basis]
    actions = []
    for i in range(p.dim):
        b = p.basis_vector(i)
        cols = [j.quotient_coords(p.mul(b, y)) for y in basis]
        actions.append([tuple(col[r] for col in cols) for r in range(len(comp))])
    cyclic = j.quotient_coords(p.unit) if p.unit is not None else None
    return Representation(p, gram, actions, provenance=f"GNS({omega.name or 'omega'})", cyclic=cyclic)


def kernel_of(rep: Representation):
    """{A : pi(A) = 0} as a validated :class:`~staralg.ideals.StarIdeal`."""
    from staralg.ideals import StarIdeal

    p = rep.parent
    m = rep.dim
    rows = [tuple(rep.actions[i][r][c] for i in range(p.dim)) for r in range(m) for c in range(m)]
    return StarIdeal(p, Subspace(p.dim, nullspace(rows, p.dim)))


def vector_state(rep: Representation, phi) -> LinearFunctional:
    """omega_phi(A) = <phi, pi(A) phi>, checked to be positive."""
    phi = tuple(phi)
    if len(phi) != rep.dim:
        raise RepresentationError("vector does not live in the representation space")
    vals = [rep.inner(phi, mat_vec(a, phi)) for a in rep.actions]
    omega = LinearFunctional(rep.parent, vals, name="vector-state")
    if not is_positive_functional(omega).is_psd:
        raise ArithmeticError("vector state failed the positivity check")
    return omega


def direct_sum_reps(reps) -> Representation:
    reps = list(reps)
    if not reps:
        raise RepresentationError("direct sum of an empty list is not allowed")
    p = reps[0].parent
    if any(r.parent is not p for r in reps):
        raise RepresentationError("representations of different algebras")
    m = sum(r.dim for r in reps)

    def block(mats):
        out = [[ZERO] * m for _ in range(m)]
        off = 0
        for a, r in zip(mats, reps):
            for i in range(r.dim):
                for j in range(r.dim):
                    out[off + i][off + j] = a[i][j]
            off += r.dim
        return [tuple(row) for row in out]

    gram = block([r.gram for r in reps])
    actions = [block([r.actions[i] for r in reps]) for i in range(p.dim)]
    return Representation(p, gram, actions, provenance="direct_sum")


def degeneracy_status(rep: Representation):
    """Classify and restrict to H_snd = span{pi(b_i) e_a}.

    Returns ``(status, restricted representation)``.
    """
    m = rep.dim
    images = []
    for a in rep.actions:
        for c in range(m):
            images.append(tuple(a[r][c] for r in range(m)))
    snd = Subspace(m, images)
    if snd.dim == m:
        status = STRONGLY_NONDEGENERATE
    else:
        common = [tuple(a[r][c] for c in range(m)) for a in rep.actions for r in range(m)]
        status = DEGENERATE if nullspace(common, m) else NONDEGENERATE
    basis = snd.rows
    gram = [tuple(rep.inner(x, y) for y in basis) for x in basis]
    actions = []
    for a in rep.actions:
        cols = [snd.coords(mat_vec(a, y)) for y in basis]
        actions.append([tuple(col[r] for col in cols) for r in range(len(basis))])
    restricted = Representation(rep.parent, gram, actions, provenance=f"snd({rep.provenance})")
    return status, restricted


def pullback(rep: Representation, parent: Algebra, rho) -> Representation:
    """pi o rho for a representation of a quotient and its projection rho."""
    actions = [rep.action(rho(parent.basis_vector(i))) for i in range(parent.dim)]
    return Representation(parent, rep.gram, actions, provenance=f"pullback({rep.provenance})")
