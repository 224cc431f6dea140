"""Exact linear algebra over C = R(i) on tuples of :class:`Complex`.

Gaussian-rational matrices are cleared of denominators row by row and sent
to the fraction-free kernels in :mod:`staralg.kernels`; anything involving
Q(l) runs through the generic field elimination below.  Both routes return
the (unique) reduced row echelon form, so results do not depend on the route.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from staralg import kernels
from staralg.scalars import ONE, ZERO, Complex

Vector = tuple  # tuple[Complex, ...]

__all__ = [
    "rref",
    "nullspace",
    "solve",
    "Subspace",
    "zero_vector",
    "unit_vector",
    "vadd",
    "vsub",
    "vscale",
    "vconj",
    "is_zero_vector",
    "mat_vec",
    "mat_mul",
    "conj_transpose",
    "identity",
    "hermitian_form",
    "is_hermitian_matrix",
]


def zero_vector(n):
    return (ZERO,) * n


def unit_vector(n, k):
    v = [ZERO] * n
    v[k] = ONE
    return tuple(v)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    if not c:
        return (ZERO,) * len(v)
    return tuple(c * a if a else ZERO for a in v)


def vconj(v):
    return tuple(a.conj() for a in v)


def is_zero_vector(v):
    return not any(v)


def mat_vec(m, v):
    out = []
    for row in m:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return tuple(out)


def mat_mul(a, b):
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    out = []
    for row in a:
        new = []
        for col in cols:
            acc = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            new.append(acc)
        out.append(tuple(new))
    return out


def conj_transpose(m, ncols=None):
    if not m:
        return [()] * (ncols or 0)
    return [tuple(x.conj() for x in col) for col in zip(*m)]


def identity(n):
    return [unit_vector(n, k) for k in range(n)]


def hermitian_form(g, u, v):
    """u^H G v."""
    return sum((a.conj() * b for a, b in zip(u, mat_vec(g, v)) if a and b), ZERO)


def is_hermitian_matrix(g):
    n = len(g)
    return all(g[i][j] == g[j][i].conj() for i in range(n) for j in range(i, n))


# ---------- row reduction ----------

def _to_gauss(rows):
    """Clear denominators per row; None if any entry lies outside Q(i)."""
    re_rows, im_rows = [], []
    real = True
    for row in rows:
        den = 1
        for z in row:
            x, y = z.re, z.im
            tx, ty = type(x), type(y)
            if tx is Fraction:
                den = lcm(den, x.denominator)
            elif tx is not int:
                return None
            if ty is Fraction:
                den = lcm(den, y.denominator)
                real = False
            elif ty is not int:
                return None
            elif y:
                real = False
        if den == 1:
            re_rows.append([int(z.re) for z in row])
            im_rows.append([int(z.im) for z in row])
        else:
            re_rows.append([int(z.re * den) for z in row])
            im_rows.append([int(z.im * den) for z in row])
    return re_rows, im_rows, real


def _q(x, d):
    if not x:
        return 0
    q, r = divmod(x, d)
    return q if not r else Fraction(x, d)


def _rref_generic(rows, ncols):
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][col]), None)
        if p is None:
            continue
        m[p], m[r] = m[r], m[p]
        piv = m[r][col]
        if piv != ONE:
            inv = ONE / piv
            m[r] = [x * inv if x else ZERO for x in m[r]]
        prow = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i][col]
                if f:
                    m[i] = [a - f * b if b else a for a, b in zip(m[i], prow)]
        pivots.append(col)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def rref(rows: Sequence[Sequence[Complex]], ncols: int):
    """Reduced row echelon form: ``(nonzero rows, pivot columns)``."""
    rows = [r for r in rows if any(r)]
    if not rows or ncols == 0:
        return [], []
    g = _to_gauss(rows)
    if g is None:
        return _rref_generic(rows, ncols)
    re_rows, im_rows, real = g
    if real:
        out, pivots, d = kernels.ff_rref_real(re_rows, ncols)
        return [tuple(Complex(_q(x, d), 0) if x else ZERO for x in row) for row in out], pivots
    out_r, out_i, pivots, dr, di = kernels.ff_rref_complex(re_rows, im_rows, ncols)
    if not di:
        if dr < 0:
            dr = -dr
            out_r = [[-x for x in row] for row in out_r]
            out_i = [[-x for x in row] for row in out_i]
        return [
            tuple(Complex(_q(x, dr), _q(y, dr)) if (x or y) else ZERO for x, y in zip(rr, ri))
            for rr, ri in zip(out_r, out_i)
        ], pivots
    nrm = dr * dr + di * di
    res = []
    for rr, ri in zip(out_r, out_i):
        res.append(
            tuple(
                Complex(_q(x * dr + y * di, nrm), _q(y * dr - x * di, nrm)) if (x or y) else ZERO
                for x, y in zip(rr, ri)
            )
        )
    return res, pivots


def _null_from_rref(rrows, pivots, ncols):
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(rrows, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def nullspace(matrix: Sequence[Sequence[Complex]], ncols: int):
    """Basis of {x : M x = 0}, one vector per free column (deterministic)."""
    rrows, pivots = rref(matrix, ncols)
    return _null_from_rref(rrows, pivots, ncols)


def solve(matrix, rhs, ncols):
    """Solve M x = b.  Returns ``(particular, nullspace basis)`` or None."""
    aug = [tuple(row) + (b,) for row, b in zip(matrix, rhs)]
    rrows, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(rrows, pivots):
        x[p] = row[ncols]
    trimmed = [row[:ncols] for row in rrows]
    return tuple(x), _null_from_rref(trimmed, pivots, ncols)


class Subspace:
    """Subspace of C^n held by its reduced row echelon basis (canonical)."""

    __slots__ = ("n", "rows", "pivots", "_hash")

    def __init__(self, n: int, rows=(), pivots=None):
        self.n = n
        if pivots is None:
            rows, pivots = rref(list(rows), n)
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def span(cls, n, vectors: Iterable[Sequence[Complex]]):
        return cls(n, list(vectors))

    @classmethod
    def zero(cls, n):
        return cls(n, (), ())

    @classmethod
    def full(cls, n):
        return cls(n, identity(n), tuple(range(n)))

    @property
    def dim(self):
        return len(self.rows)

    @property
    def basis(self):
        return list(self.rows)

    def is_zero(self):
        return not self.rows

    def is_full(self):
        return len(self.rows) == self.n

    def reduce(self, v):
        """Representative of v modulo the subspace with zeros at the pivots."""
        out = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = out[p]
            if c:
                for j, a in enumerate(row):
                    if a:
                        out[j] = out[j] - c * a
        return tuple(out)

    def contains(self, v):
        return not any(self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def coords(self, v):
        """Coordinates of a member v in the echelon basis."""
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, c):
        out = [ZERO] * self.n
        for a, row in zip(c, self.rows):
            if a:
                for j, x in enumerate(row):
                    if x:
                        out[j] = out[j] + a * x
        return tuple(out)

    @property
    def complement(self):
        """Indices of the standard basis vectors spanning a complement."""
        piv = set(self.pivots)
        return tuple(j for j in range(self.n) if j not in piv)

    def quotient_coords(self, v):
        r = self.reduce(v)
        return tuple(r[j] for j in self.complement)

    def annihilator(self):
        """Basis of {w : sum_k row_k w_k = 0 for every basis row} (bilinear)."""
        return _null_from_rref(self.rows, self.pivots, self.n)

    def issubset(self, other: "Subspace"):
        if self.dim > other.dim:
            return False
        return all(other.contains(r) for r in self.rows)

    def __le__(self, other):
        return self.issubset(other)

    def __add__(self, other: "Subspace"):
        if other.is_zero() or self.is_full():
            return self
        if self.is_zero() or other.is_full():
            return other
        return Subspace(self.n, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace"):
        if self.is_zero() or other.is_full():
            return self
        if other.is_zero() or self.is_full():
            return other
        ann = other.annihilator()
        if not ann:
            return self
        cons = [
            tuple(sum((w[k] * u[k] for k in range(self.n) if w[k] and u[k]), ZERO) for u in self.rows)
            for w in ann
        ]
        sols = nullspace(cons, self.dim)
        return Subspace(self.n, [self.from_coords(a) for a in sols])

    def __and__(self, other):
        return self.intersect(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.pivots == other.pivots and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.pivots, self.rows))
        return self._hash

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"
