"""Finite-dimensional *-algebras given by structure constants.

A presentation stores, for every pair of basis elements, the sparse list of
``(k, c)`` with ``b_i b_j = sum c b_k`` and the matrix ``S`` of the
involution on the basis: ``(sum z_i b_i)* = sum conj(z_i) S b_i``.
Elements are plain coefficient tuples of :class:`~staralg.scalars.Complex`;
:class:`Element` is a thin operator-overloading wrapper.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from staralg.linalg import Subspace, nullspace, solve, unit_vector, zero_vector
from staralg.scalars import I, ONE, ZERO, Complex, format_scalar, ring_of, to_complex

__all__ = [
    "Algebra",
    "Element",
    "PresentationError",
    "ParentMismatch",
    "NotAStarIdeal",
    "ValidationReport",
    "Projection",
    "validate_presentation",
    "construct_standard",
    "matrix_algebra",
    "function_points",
    "grassmann",
    "zero_mult",
    "matrix_over",
    "direct_sum",
    "quotient_by_star_ideal",
    "subalgebra",
    "multiply",
    "star",
    "hermitian_basis",
    "star_ideal_violation",
    "STANDARD_KINDS",
]


class PresentationError(ValueError):
    """Inconsistent dimensions or malformed presentation data."""


class ParentMismatch(ValueError):
    """Elements from different algebras were combined."""


class NotAStarIdeal(ValueError):
    """A subspace failed the two-sided ideal or star-closure test."""


class Algebra:
    """A *-algebra presentation over C = R(i).

    ``table[i][j]`` is a tuple of ``(k, c)`` pairs with nonzero ``c``;
    ``star_cols[i]`` is the coefficient vector of ``b_i*``.
    """

    def __init__(self, table, star_cols, labels=None, name=None, kind=None, params=None):
        n = len(table)
        if len(star_cols) != n or any(len(row) != n for row in table):
            raise PresentationError("structure constants and involution disagree on the dimension")
        for col in star_cols:
            if len(col) != n:
                raise PresentationError("involution matrix is not square of size dim")
        for row in table:
            for entries in row:
                for k, _ in entries:
                    if not 0 <= k < n:
                        raise PresentationError(f"product index {k} out of range")
        self.dim = n
        self.table = tuple(tuple(tuple(e) for e in row) for row in table)
        self.star_cols = tuple(tuple(to_complex(x) for x in col) for col in star_cols)
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i + 1}" for i in range(n))
        if len(self.labels) != n:
            raise PresentationError("number of labels differs from the dimension")
        self.name = name or f"algebra({n})"
        self.kind = kind
        self.params = dict(params or {})
        self._unit = False
        self._idempotent = None
        self._nondegenerate = None
        self._ring = None

    # ----- arrays -----
    @classmethod
    def from_arrays(cls, c, s, **kw):
        """Build from a dense ``n x n x n`` array ``c`` and ``n x n`` matrix ``s``.

        ``s[k][i]`` is the k-th coefficient of ``b_i*`` (columns are images).
        """
        n = len(c)
        if any(len(c[i]) != n or any(len(c[i][j]) != n for j in range(n)) for i in range(n)):
            raise PresentationError("structure constant array is not n x n x n")
        if len(s) != n or any(len(r) != n for r in s):
            raise PresentationError("involution matrix is not n x n")
        table = [
            [tuple((k, to_complex(c[i][j][k])) for k in range(n) if c[i][j][k]) for j in range(n)]
            for i in range(n)
        ]
        cols = [tuple(to_complex(s[k][i]) for k in range(n)) for i in range(n)]
        return cls(table, cols, **kw)

    def structure_constants(self):
        n = self.dim
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, v in self.table[i][j]:
                    c[i][j][k] = v
        return c

    def star_matrix(self):
        """Matrix S with columns the images of the basis vectors."""
        n = self.dim
        return [tuple(self.star_cols[i][k] for i in range(n)) for k in range(n)]

    # ----- arithmetic on coefficient tuples -----
    def zero(self):
        return zero_vector(self.dim)

    def basis_vector(self, i):
        return unit_vector(self.dim, i)

    def mul(self, u, v):
        n = self.dim
        out = [ZERO] * n
        nv = [(j, b) for j, b in enumerate(v) if b]
        if not nv:
            return tuple(out)
        table = self.table
        for i, a in enumerate(u):
            if not a:
                continue
            row = table[i]
            for j, b in nv:
                entries = row[j]
                if entries:
                    ab = a * b
                    for k, c in entries:
                        out[k] = out[k] + (ab if c == ONE else ab * c)
        return tuple(out)

    def star(self, u):
        n = self.dim
        out = [ZERO] * n
        for i, a in enumerate(u):
            if a:
                ca = a.conj()
                for k, s in enumerate(self.star_cols[i]):
                    if s:
                        out[k] = out[k] + ca * s
        return tuple(out)

    def left_matrix(self, u):
        """Matrix of x -> u x in the basis (columns are images of b_j)."""
        cols = [self.mul(u, self.basis_vector(j)) for j in range(self.dim)]
        return [tuple(col[k] for col in cols) for k in range(self.dim)]

    def right_matrix(self, u):
        cols = [self.mul(self.basis_vector(j), u) for j in range(self.dim)]
        return [tuple(col[k] for col in cols) for k in range(self.dim)]

    def element(self, coeffs):
        return Element(self, coeffs)

    def basis_element(self, i):
        return Element(self, self.basis_vector(i))

    def is_hermitian(self, u):
        return self.star(u) == tuple(u)

    def is_normal(self, u):
        s = self.star(u)
        return self.mul(s, u) == self.mul(u, s)

    # ----- flags -----
    @property
    def ring(self):
        if self._ring is None:
            vals = [c for row in self.table for e in row for _, c in e]
            vals += [x for col in self.star_cols for x in col]
            self._ring = ring_of(vals)
        return self._ring

    @property
    def unit(self):
        """Unit vector, or None when the algebra has no unit."""
        if self._unit is False:
            self._unit = self._find_unit()
        return self._unit

    def _find_unit(self):
        n = self.dim
        if n == 0:
            return ()
        # unknown e: e b_j = b_j and b_j e = b_j for all j
        rows, rhs = [], []
        for j in range(n):
            bj = self.basis_vector(j)
            left = [self.mul(self.basis_vector(i), bj) for i in range(n)]
            right = [self.mul(bj, self.basis_vector(i)) for i in range(n)]
            for k in range(n):
                target = ONE if k == j else ZERO
                rows.append(tuple(left[i][k] for i in range(n)))
                rhs.append(target)
                rows.append(tuple(right[i][k] for i in range(n)))
                rhs.append(target)
        sol = solve(rows, rhs, n)
        if sol is None:
            return None
        return sol[0]

    @property
    def has_unit(self):
        return self.unit is not None

    @property
    def has_approx_identity(self):
        return self.has_unit

    @property
    def is_idempotent(self):
        """Products b_i b_j span the algebra."""
        if self._idempotent is None:
            prods = [self.mul(self.basis_vector(i), self.basis_vector(j)) for i in range(self.dim) for j in range(self.dim)]
            self._idempotent = Subspace(self.dim, prods).is_full()
        return self._idempotent

    @property
    def is_nondegenerate(self):
        """r A = 0 or A r = 0 forces r = 0."""
        if self._nondegenerate is None:
            n = self.dim
            ok = True
            for side in ("left", "right"):
                rows = []
                for j in range(n):
                    bj = self.basis_vector(j)
                    imgs = [
                        self.mul(self.basis_vector(i), bj) if side == "left" else self.mul(bj, self.basis_vector(i))
                        for i in range(n)
                    ]
                    for k in range(n):
                        rows.append(tuple(imgs[i][k] for i in range(n)))
                if nullspace(rows, n):
                    ok = False
                    break
            self._nondegenerate = ok
        return self._nondegenerate

    def format(self, u):
        parts = []
        for a, lab in zip(u, self.labels):
            if not a:
                continue
            s = format_scalar(a)
            if s == "1":
                parts.append(lab)
            elif s == "-1":
                parts.append("-" + lab)
            elif " " in s:
                parts.append(f"({s})*{lab}")
            else:
                parts.append(f"{s}*{lab}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim})"


class Element:
    """An element of an :class:`Algebra` with the usual operators."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: Algebra, coeffs):
        coeffs = tuple(to_complex(c) for c in coeffs)
        if len(coeffs) != parent.dim:
            raise PresentationError(f"expected {parent.dim} coefficients, got {len(coeffs)}")
        self.parent = parent
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, Element):
            return False
        if other.parent is not self.parent:
            raise ParentMismatch("elements belong to different algebras")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return Element(self.parent, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return Element(self.parent, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Element(self.parent, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.parent, self.parent.mul(self.coeffs, other.coeffs))
        c = to_complex(other)
        return Element(self.parent, tuple(c * a for a in self.coeffs))

    def __rmul__(self, other):
        c = to_complex(other)
        return Element(self.parent, tuple(c * a for a in self.coeffs))

    def star(self):
        return Element(self.parent, self.parent.star(self.coeffs))

    def is_hermitian(self):
        return self.parent.is_hermitian(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.parent is other.parent and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return self.parent.format(self.coeffs)


def multiply(a: Element, b: Element) -> Element:
    if a.parent is not b.parent:
        raise ParentMismatch("elements belong to different algebras")
    return a * b


def star(a: Element) -> Element:
    return a.star()


# ---------- validation ----------

@dataclass
class ValidationReport:
    valid: bool
    violations: list = field(default_factory=list)  # (axiom, 1-based basis witness, detail)
    flags: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "valid": self.valid,
            "violations": [{"axiom": a, "witness": list(w), "detail": d} for a, w, d in self.violations],
            "flags": self.flags,
        }


def validate_presentation(p: Algebra, stop_after=None) -> ValidationReport:
    """Check associativity, involutivity, anti-multiplicativity and the unit.

    Witnesses are 1-based basis indices.
    """
    n = p.dim
    out = []
    e = [p.basis_vector(i) for i in range(n)]
    prod = [[p.mul(e[i], e[j]) for j in range(n)] for i in range(n)]

    def full():
        return stop_after is not None and len(out) >= stop_after

    for i in range(n):
        for j in range(n):
            ij = prod[i][j]
            for k in range(n):
                left = p.mul(ij, e[k])
                right = p.mul(e[i], prod[j][k])
                if left != right:
                    out.append(("associativity", (i + 1, j + 1, k + 1), f"({p.labels[i]}{p.labels[j]}){p.labels[k]} != {p.labels[i]}({p.labels[j]}{p.labels[k]})"))
                    if full():
                        break
            if full():
                break
        if full():
            break
    stars = [p.star(e[i]) for i in range(n)]
    for i in range(n):
        if p.star(stars[i]) != e[i]:
            out.append(("involutive", (i + 1,), f"{p.labels[i]}** != {p.labels[i]}"))
    for i in range(n):
        for j in range(n):
            if p.star(prod[i][j]) != p.mul(stars[j], stars[i]):
                out.append(("anti-multiplicative", (i + 1, j + 1), f"({p.labels[i]}{p.labels[j]})* != {p.labels[j]}*{p.labels[i]}*"))
    flags = {}
    if not out:
        u = p.unit
        flags["has_unit"] = u is not None
        if u is not None:
            flags["unit"] = [format_scalar(x) for x in u]
            if p.star(u) != u:
                out.append(("unit-hermitian", (), "1* != 1"))
        flags["is_idempotent"] = p.is_idempotent
        flags["is_nondegenerate"] = p.is_nondegenerate
        flags["has_approx_identity"] = p.has_approx_identity
    return ValidationReport(not out, out, flags)


# ---------- standard constructors ----------

STANDARD_KINDS = ("matrix", "function_points", "grassmann", "zero_mult", "matrix_over")


def _check_size(n, what):
    if not isinstance(n, int) or n <= 0:
        raise PresentationError(f"{what} must be a positive integer, got {n!r}")


def matrix_algebra(n: int) -> Algebra:
    """M_n(C) on the matrix units E_ij (index i*n + j)."""
    _check_size(n, "matrix size")
    dim = n * n
    table = [[() for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for l in range(n):
                table[i * n + j][j * n + l] = ((i * n + l, ONE),)
    cols = [unit_vector(dim, j * n + i) for i in range(n) for j in range(n)]
    labels = [f"E{i + 1}{j + 1}" if n < 10 else f"E{i + 1}_{j + 1}" for i in range(n) for j in range(n)]
    return Algebra(table, cols, labels, name=f"matrix({n})", kind="matrix", params={"n": n})


def function_points(k: int) -> Algebra:
    """C-valued functions on k points: delta basis, pointwise product."""
    _check_size(k, "number of points")
    table = [[((i, ONE),) if i == j else () for j in range(k)] for i in range(k)]
    cols = [unit_vector(k, i) for i in range(k)]
    return Algebra(table, cols, [f"d{i + 1}" for i in range(k)], name=f"function_points({k})", kind="function_points", params={"k": k})


def _grassmann_monomials(n):
    out = []
    for deg in range(n + 1):
        out.extend(combinations(range(n), deg))
    return out


def _merge_sign(s, t):
    """Sign of sorting the concatenation s + t (disjoint, each sorted)."""
    inv = 0
    for a in s:
        for b in t:
            if a > b:
                inv += 1
    return -1 if inv % 2 else 1


def grassmann(n: int) -> Algebra:
    """Exterior algebra over C^n with e_i* = e_i (dimension 2^n)."""
    _check_size(n, "number of generators")
    mons = _grassmann_monomials(n)
    index = {m: i for i, m in enumerate(mons)}
    dim = len(mons)
    table = [[() for _ in range(dim)] for _ in range(dim)]
    for a, s in enumerate(mons):
        for b, t in enumerate(mons):
            if set(s) & set(t):
                continue
            sign = _merge_sign(s, t)
            table[a][b] = ((index[tuple(sorted(s + t))], Complex(sign, 0)),)
    cols = []
    for a, s in enumerate(mons):
        k = len(s)
        sign = -1 if (k * (k - 1) // 2) % 2 else 1
        v = [ZERO] * dim
        v[a] = Complex(sign, 0)
        cols.append(tuple(v))
    labels = ["1" if not s else "^".join(f"e{i + 1}" for i in s) for s in mons]
    return Algebra(table, cols, labels, name=f"grassmann({n})", kind="grassmann", params={"n": n})


def zero_mult(n: int) -> Algebra:
    """C^n with every product zero and the identity as involution."""
    _check_size(n, "dimension")
    table = [[() for _ in range(n)] for _ in range(n)]
    cols = [unit_vector(n, i) for i in range(n)]
    return Algebra(table, cols, [f"z{i + 1}" for i in range(n)], name=f"zero_mult({n})", kind="zero_mult", params={"n": n})


def matrix_over(base: Algebra, N: int) -> Algebra:
    """N x N matrices over ``base``; basis E_ij (x) b_a at (i*N + j)*d + a."""
    _check_size(N, "matrix size")
    d = base.dim
    dim = N * N * d
    table = [[() for _ in range(dim)] for _ in range(dim)]
    for i in range(N):
        for j in range(N):
            for a in range(d):
                x = (i * N + j) * d + a
                for l in range(N):
                    for b in range(d):
                        y = (j * N + l) * d + b
                        entries = base.table[a][b]
                        if entries:
                            table[x][y] = tuple(((i * N + l) * d + k, c) for k, c in entries)
    cols = []
    for i in range(N):
        for j in range(N):
            for a in range(d):
                v = [ZERO] * dim
                for k, s in enumerate(base.star_cols[a]):
                    if s:
                        v[(j * N + i) * d + k] = s
                cols.append(tuple(v))
    labels = [f"E{i + 1}{j + 1}[{lab}]" for i in range(N) for j in range(N) for lab in base.labels]
    return Algebra(table, cols, labels, name=f"matrix_over({base.name}, {N})", kind="matrix_over", params={"base": base, "N": N})


def construct_standard(kind: str, *params, **kw) -> Algebra:
    """Dispatch by kind name; ``matrix_over`` takes ``(base_algebra, N)``."""
    ctor = {
        "matrix": matrix_algebra,
        "function_points": function_points,
        "grassmann": grassmann,
        "zero_mult": zero_mult,
        "matrix_over": matrix_over,
    }.get(kind)
    if ctor is None:
        raise PresentationError(f"unknown standard algebra kind {kind!r}")
    return ctor(*params, **kw)


# ---------- combinators ----------

def direct_sum(p: Algebra, q: Algebra) -> Algebra:
    m, n = p.dim, q.dim
    dim = m + n
    table = [[() for _ in range(dim)] for _ in range(dim)]
    for i in range(m):
        for j in range(m):
            table[i][j] = p.table[i][j]
    for i in range(n):
        for j in range(n):
            table[m + i][m + j] = tuple((m + k, c) for k, c in q.table[i][j])
    cols = [tuple(col) + (ZERO,) * n for col in p.star_cols] + [(ZERO,) * m + tuple(col) for col in q.star_cols]
    labels = [f"{lab}@1" for lab in p.labels] + [f"{lab}@2" for lab in q.labels]
    return Algebra(table, cols, labels, name=f"{p.name} + {q.name}", kind="direct_sum", params={"summands": (p, q)})


def star_ideal_violation(p: Algebra, sub: Subspace):
    """None if ``sub`` is a two-sided *-ideal, else ``(reason, basis row, index)``."""
    for r, row in enumerate(sub.rows):
        if not sub.contains(p.star(row)):
            return ("star", r, None)
        for i in range(p.dim):
            e = p.basis_vector(i)
            if not sub.contains(p.mul(e, row)):
                return ("left", r, i)
            if not sub.contains(p.mul(row, e)):
                return ("right", r, i)
    return None


@dataclass(frozen=True)
class Projection:
    """Quotient map onto the complement coordinates of ``kernel``."""

    kernel: Subspace

    def __call__(self, v):
        return self.kernel.quotient_coords(v)

    def lift(self, w):
        out = [ZERO] * self.kernel.n
        for j, a in zip(self.kernel.complement, w):
            out[j] = a
        return tuple(out)

    def preimage(self, sub: Subspace) -> Subspace:
        """Subspace of the parent mapping into ``sub`` (contains the kernel)."""
        return Subspace(self.kernel.n, list(self.kernel.rows) + [self.lift(r) for r in sub.rows])


def quotient_by_star_ideal(p: Algebra, ideal, check=True):
    """Quotient presentation on the complement basis and its projection."""
    sub = ideal if isinstance(ideal, Subspace) else ideal.subspace
    if sub.n != p.dim:
        raise PresentationError("ideal lives in a different dimension")
    if check:
        bad = star_ideal_violation(p, sub)
        if bad:
            raise NotAStarIdeal(f"subspace fails the {bad[0]} closure test")
    rho = Projection(sub)
    comp = sub.complement
    q = len(comp)
    basis = [p.basis_vector(j) for j in comp]
    table = []
    for a in range(q):
        row = []
        for b in range(q):
            img = rho(p.mul(basis[a], basis[b]))
            row.append(tuple((k, c) for k, c in enumerate(img) if c))
        table.append(row)
    cols = [rho(p.star(basis[a])) for a in range(q)]
    labels = [p.labels[j] for j in comp]
    alg = Algebra(table, cols, labels, name=f"{p.name}/I{sub.dim}", kind="quotient", params={"parent": p, "ideal": sub})
    return alg, rho


def subalgebra(p: Algebra, vectors, name=None, kind="subalgebra", params=None):
    """*-subalgebra spanned by ``vectors`` on its echelon basis.

    Returns ``(algebra, inclusion)`` where ``inclusion`` maps coordinates to
    parent coefficient vectors.
    """
    sub = Subspace(p.dim, list(vectors))
    rows = sub.rows
    m = len(rows)
    table = []
    for a in range(m):
        row = []
        for b in range(m):
            prod = p.mul(rows[a], rows[b])
            if not sub.contains(prod):
                raise PresentationError("span is not closed under multiplication")
            row.append(tuple((k, c) for k, c in enumerate(sub.coords(prod)) if c))
        table.append(row)
    cols = []
    for a in range(m):
        s = p.star(rows[a])
        if not sub.contains(s):
            raise PresentationError("span is not closed under the involution")
        cols.append(sub.coords(s))
    labels = [p.format(r) for r in rows]
    prm = {"parent": p, "span": sub}
    prm.update(params or {})
    alg = Algebra(table, cols, labels, name=name or f"sub({p.name}, {m})", kind=kind, params=prm)
    return alg, sub.from_coords


def hermitian_basis(p: Algebra):
    """An R-basis of the Hermitian elements, as :class:`Element` objects."""
    n = p.dim
    rows = []
    for m in range(n):
        re_eq = [ZERO] * (2 * n)
        im_eq = [ZERO] * (2 * n)
        for k in range(n):
            s = p.star_cols[k][m]
            if s:
                re_eq[k] = re_eq[k] + Complex(s.re)
                re_eq[n + k] = re_eq[n + k] + Complex(s.im)
                im_eq[k] = im_eq[k] + Complex(s.im)
                im_eq[n + k] = im_eq[n + k] - Complex(s.re)
        re_eq[m] = re_eq[m] - ONE
        im_eq[n + m] = im_eq[n + m] - ONE
        rows.append(tuple(re_eq))
        rows.append(tuple(im_eq))
    out = []
    for v in nullspace(rows, 2 * n):
        out.append(Element(p, tuple(v[k] + I * v[n + k] for k in range(n))))
    return out
