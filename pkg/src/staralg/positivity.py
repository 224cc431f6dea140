"""Positive functionals, exact PSD certification and the cones A++ and A+.

``psd_check`` runs a symmetric elimination that keeps the congruence
vectors, so every Indefinite verdict comes with a vector v such that
v^H G v < 0, and every semidefinite verdict with a basis of the radical.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from staralg import kernels
from staralg.algebra import Algebra, Element
from staralg.linalg import (
    Subspace,
    hermitian_form,
    is_hermitian_matrix,
    mat_vec,
    solve,
)
from staralg.scalars import I, ONE, ZERO, Complex, format_scalar, sign_of, to_complex

__all__ = [
    "PD",
    "PSD",
    "INDEFINITE",
    "NotHermitian",
    "NotPositive",
    "PsdVerdict",
    "psd_check",
    "ldl_decompose",
    "LinearFunctional",
    "FunctionalFamily",
    "gram_matrix",
    "is_positive_functional",
    "gelfand_ideal",
    "conjugated_functional",
    "ConeStatus",
    "positive_element_status",
    "builtin_functional_family",
    "pushforward_family",
    "MEMBER",
    "NON_MEMBER",
    "UNKNOWN",
]

PD = "PositiveDefinite"
PSD = "PositiveSemidefinite"
INDEFINITE = "Indefinite"

MEMBER = "CertifiedMember"
NON_MEMBER = "CertifiedNonMember"
UNKNOWN = "Unknown"


class NotHermitian(ValueError):
    pass


class NotPositive(ValueError):
    pass


@dataclass
class PsdVerdict:
    status: str
    witness: tuple | None = None
    value: Complex | None = None
    radical: list = field(default_factory=list)

    @property
    def is_psd(self):
        return self.status != INDEFINITE

    def to_dict(self):
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = [format_scalar(x) for x in self.witness]
            d["value"] = format_scalar(self.value)
        if self.status == PSD:
            d["radical"] = [[format_scalar(x) for x in v] for v in self.radical]
        return d


# ---------- PSD elimination ----------

def _gauss_int_matrix(g):
    """Scale a Hermitian Q(i) matrix to Z[i]; None if Q(l) entries occur."""
    den = 1
    for row in g:
        for z in row:
            for x in (z.re, z.im):
                t = type(x)
                if t is Fraction:
                    den = lcm(den, x.denominator)
                elif t is not int:
                    return None
    re = [[int(z.re * den) for z in row] for row in g]
    im = [[int(z.im * den) for z in row] for row in g]
    return re, im


def _hermitian_generic(g):
    """Field version of the symmetric elimination (used for Q(l))."""
    n = len(g)
    a = [list(r) for r in g]
    w = [[ONE if i == k else ZERO for i in range(n)] for k in range(n)]
    active = list(range(n))
    radical = []
    while active:
        k = active[0]
        gkk = a[k][k]
        s = sign_of(gkk.re)
        if s < 0:
            return INDEFINITE, tuple(w[k]), []
        if s == 0:
            j = next((c for c in active[1:] if a[k][c]), None)
            if j is None:
                radical.append(tuple(w[k]))
                active.pop(0)
                continue
            gkj = a[k][j]
            t = -(abs(a[j][j].re) + 1) * gkj
            u = gkj.norm_sq()
            v = tuple(t * x + u * y for x, y in zip(w[k], w[j]))
            return INDEFINITE, v, []
        rest = active[1:]
        for j in rest:
            f = a[k][j] / gkk
            if f:
                w[j] = [x - f * y for x, y in zip(w[j], w[k])]
        for j in rest:
            ajk = a[j][k]
            if not ajk:
                continue
            f = ajk / gkk
            for l in rest:
                if a[k][l]:
                    a[j][l] = a[j][l] - f * a[k][l]
        active.pop(0)
    return (PSD if radical else PD), None, radical


def psd_check(g) -> PsdVerdict:
    """Exact semidefiniteness verdict for a Hermitian matrix with witnesses."""
    g = [tuple(to_complex(x) for x in row) for row in g]
    n = len(g)
    if any(len(row) != n for row in g):
        raise ValueError("matrix is not square")
    if not is_hermitian_matrix(g):
        raise NotHermitian("matrix is not Hermitian")
    if n == 0:
        return PsdVerdict(PD)
    scaled = _gauss_int_matrix(g)
    if scaled is not None:
        status, wit, rad = kernels.ff_hermitian(*scaled)
        status = {kernels.PD: PD, kernels.PSD: PSD, kernels.INDEFINITE: INDEFINITE}[status]
        witness = tuple(Complex(x, y) for x, y in zip(*wit)) if wit is not None else None
        radical = [tuple(Complex(x, y) for x, y in zip(vr, vi)) for vr, vi in rad]
    else:
        status, witness, radical = _hermitian_generic(g)
    verdict = PsdVerdict(status, witness, None, radical)
    if witness is not None:
        val = hermitian_form(g, witness, witness)
        if val.im or sign_of(val.re) >= 0:
            raise ArithmeticError("indefiniteness witness failed re-verification")
        verdict.value = val
    for r in radical:
        if any(mat_vec(g, r)):
            raise ArithmeticError("radical vector failed re-verification")
    return verdict


def ldl_decompose(g):
    """Write a PSD Hermitian matrix as ``sum d_k l_k l_k^H`` with d_k > 0.

    Returns the list of ``(d_k, l_k)`` or None if g is not PSD.
    """
    n = len(g)
    a = [list(map(to_complex, r)) for r in g]
    terms = []
    for k in range(n):
        d = a[k][k]
        s = sign_of(d.re) if not d.im else None
        if s is None or s < 0:
            return None
        if s == 0:
            if any(a[k][j] for j in range(k, n)):
                return None
            continue
        col = [ZERO] * n
        for i in range(k, n):
            col[i] = a[i][k] / d
        terms.append((d.re, tuple(col)))
        for i in range(k + 1, n):
            if not col[i]:
                continue
            for j in range(k + 1, n):
                if col[j]:
                    a[i][j] = a[i][j] - d * col[i] * col[j].conj()
    return terms


# ---------- functionals ----------

class LinearFunctional:
    """A covector omega with omega(b_i) = values[i]."""

    __slots__ = ("parent", "values", "name")

    def __init__(self, parent: Algebra, values, name=None):
        values = tuple(to_complex(v) for v in values)
        if len(values) != parent.dim:
            raise ValueError(f"functional needs {parent.dim} values, got {len(values)}")
        self.parent = parent
        self.values = values
        self.name = name

    def __call__(self, u):
        if isinstance(u, Element):
            u = u.coeffs
        acc = ZERO
        for a, b in zip(self.values, u):
            if a and b:
                acc = acc + a * b
        return acc

    def is_zero(self):
        return not any(self.values)

    def key(self):
        return tuple(format_scalar(v) for v in self.values)

    def __eq__(self, other):
        return isinstance(other, LinearFunctional) and self.parent is other.parent and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"LinearFunctional({self.name or list(self.key())})"


class FunctionalFamily(list):
    """A named list of functionals with a content fingerprint."""

    def __init__(self, items=(), name="builtin"):
        super().__init__(items)
        self.name = name

    @property
    def fingerprint(self):
        h = hashlib.sha256()
        for f in self:
            h.update(("|".join(f.key()) + ";").encode())
        return h.hexdigest()[:12]


def gram_matrix(omega: LinearFunctional):
    """G_ij = omega(b_i* b_j)."""
    p = omega.parent
    n = p.dim
    stars = [p.star(p.basis_vector(i)) for i in range(n)]
    return [tuple(omega(p.mul(stars[i], p.basis_vector(j))) for j in range(n)) for i in range(n)]


def is_positive_functional(omega: LinearFunctional) -> PsdVerdict:
    """Verdict on omega(A*A) >= 0; a witness converts to A = sum v_i b_i."""
    g = gram_matrix(omega)
    n = len(g)
    for i in range(n):
        for j in range(i, n):
            if g[i][j] != g[j][i].conj():
                if g[i][i].im:
                    v = tuple(ONE if k == i else ZERO for k in range(n))
                else:
                    v = None
                    for c in (ONE, I):
                        cand = tuple(ONE if k == i else (c if k == j else ZERO) for k in range(n))
                        if hermitian_form(g, cand, cand).im:
                            v = cand
                            break
                return PsdVerdict(INDEFINITE, v, hermitian_form(g, v, v))
    return psd_check(g)


def gelfand_ideal(omega: LinearFunctional) -> Subspace:
    """{A : omega(A*A) = 0}, the radical of the Gram form (a left ideal)."""
    verdict = is_positive_functional(omega)
    if not verdict.is_psd:
        raise NotPositive("functional is not positive")
    p = omega.parent
    sub = Subspace(p.dim, verdict.radical)
    for row in sub.rows:
        for i in range(p.dim):
            if not sub.contains(p.mul(p.basis_vector(i), row)):
                raise ArithmeticError("Gram radical is not a left ideal")
    return sub


def conjugated_functional(omega: LinearFunctional, b) -> LinearFunctional:
    """omega_B(A) = omega(B* A B)."""
    p = omega.parent
    if isinstance(b, Element):
        b = b.coeffs
    bs = p.star(b)
    vals = [omega(p.mul(p.mul(bs, p.basis_vector(i)), b)) for i in range(p.dim)]
    return LinearFunctional(p, vals)


# ---------- cones ----------

@dataclass
class ConeStatus:
    cone: str  # "A++" or "A+"
    status: str
    certificate: dict = field(default_factory=dict)

    def verify(self, p: Algebra, a) -> bool:
        """Re-check the certificate by direct evaluation."""
        a = tuple(a.coeffs if isinstance(a, Element) else a)
        c = self.certificate
        kind = c.get("kind")
        if kind == "decomposition":
            total = p.zero()
            for coef, b in c["terms"]:
                if sign_of(coef) <= 0:
                    return False
                sq = p.mul(p.star(b), b)
                total = tuple(x + coef * y for x, y in zip(total, sq))
            return total == a
        if kind == "separating-functional":
            omega = c["functional"]
            if not is_positive_functional(omega).is_psd:
                return False
            val = omega(a)
            return not val.im and sign_of(val.re) < 0
        if kind in ("gram-infeasible", "exhaustive"):
            again = positive_element_status(p, a, cone=self.cone, family=c.get("family"))
            return again.status == self.status
        return self.status == UNKNOWN

    def to_dict(self, p: Algebra):
        d = {"cone": self.cone, "status": self.status}
        c = self.certificate
        if c.get("kind") == "decomposition":
            d["certificate"] = {
                "kind": "decomposition",
                "terms": [{"coefficient": format_scalar(coef), "element": p.format(b)} for coef, b in c["terms"]],
            }
        elif c.get("kind") == "separating-functional":
            d["certificate"] = {
                "kind": "separating-functional",
                "functional": list(c["functional"].key()),
                "value": format_scalar(c["value"]),
            }
        elif c:
            d["certificate"] = {k: v for k, v in c.items() if isinstance(v, (str, int, list))}
        return d


def _hermitian_vars(r):
    """Real parameterization of an r x r Hermitian matrix."""
    var = []
    for a in range(r):
        var.append(("d", a, a))
    for a in range(r):
        for b in range(a + 1, r):
            var.append(("re", a, b))
            var.append(("im", a, b))
    return var


def _unpack(x, var, r):
    m = [[ZERO] * r for _ in range(r)]
    for val, (t, a, b) in zip(x, var):
        if not val:
            continue
        if t == "d":
            m[a][a] = m[a][a] + val
        elif t == "re":
            m[a][b] = m[a][b] + val
            m[b][a] = m[b][a] + val
        else:
            m[a][b] = m[a][b] + I * val
            m[b][a] = m[b][a] - I * val
    return m


def _gram_system(p: Algebra, frame, target):
    """Affine space of Hermitian M with sum M_ab c_a* c_b = target (real coordinates)."""
    r = len(frame)
    var = _hermitian_vars(r)
    stars = [p.star(c) for c in frame]
    prods = {}
    for a in range(r):
        for b in range(r):
            prods[a, b] = p.mul(stars[a], frame[b])
    n = p.dim
    cols = []
    for t, a, b in var:
        if t == "d":
            img = prods[a, a]
        elif t == "re":
            img = tuple(x + y for x, y in zip(prods[a, b], prods[b, a]))
        else:
            img = tuple(I * (x - y) for x, y in zip(prods[a, b], prods[b, a]))
        cols.append(img)
    rows, rhs = [], []
    for k in range(n):
        rows.append(tuple(Complex(col[k].re) for col in cols))
        rhs.append(Complex(target[k].re))
        rows.append(tuple(Complex(col[k].im) for col in cols))
        rhs.append(Complex(target[k].im))
    sol = solve(rows, rhs, len(var))
    return var, sol


def _decomposition_from(p, frame, m):
    terms = ldl_decompose(m)
    if terms is None:
        return None
    out = []
    for d, l in terms:
        b = p.zero()
        for coef, c in zip(l, frame):
            if coef:
                cc = coef.conj()
                b = tuple(x + cc * y for x, y in zip(b, c))
        out.append((d, b))
    return out


def _is_gauss(vals):
    return all(type(x) in (int, Fraction) for z in vals for x in (z.re, z.im))


def _float_search(var, x0, null, r, rng_seed=0, tries=(0.1, 0.01, 0.001)):
    """Alternating projections between the affine space and shifted PSD cones.

    Yields candidate coefficient vectors (as Fractions) for the null basis.
    """
    import numpy as np

    x0f = np.array([float(v.re) for v in x0])
    nf = np.array([[float(v[i].re) for v in null] for i in range(len(var))])
    q, _ = np.linalg.qr(nf)

    def to_mat(x):
        m = np.zeros((r, r), dtype=complex)
        for val, (t, a, b) in zip(x, var):
            if t == "d":
                m[a, a] += val
            elif t == "re":
                m[a, b] += val
                m[b, a] += val
            else:
                m[a, b] += 1j * val
                m[b, a] -= 1j * val
        return m

    def from_mat(m):
        out = []
        for t, a, b in var:
            if t == "d":
                out.append(m[a, a].real)
            elif t == "re":
                out.append(m[a, b].real)
            else:
                out.append(m[a, b].imag)
        return np.array(out)

    scale = max(1.0, float(np.max(np.abs(x0f))) if len(x0f) else 1.0)
    for shift in tries:
        t = shift * scale
        x = x0f.copy()
        for _ in range(400):
            m = to_mat(x)
            w, v = np.linalg.eigh(m)
            w = np.maximum(w, t)
            y = from_mat((v * w) @ v.conj().T)
            x = x0f + q @ (q.T @ (y - x0f))
            if np.linalg.eigvalsh(to_mat(x))[0] >= t * 0.5:
                break
        coeffs, *_ = np.linalg.lstsq(nf, x - x0f, rcond=None)
        for den in (1, 2, 4, 12, 60, 1000, 10**6):
            yield [Fraction(float(c)).limit_denominator(den) for c in coeffs]


def _frame_from_range(p, frame, mf):
    """Exact frame for the numerical range of a float Hermitian matrix."""
    import numpy as np

    w, v = np.linalg.eigh(mf)
    keep = v[:, w > 1e-7 * max(1.0, float(np.max(np.abs(w))))]
    if keep.shape[1] == 0 or keep.shape[1] == len(frame):
        return None
    # exact echelon basis of the column space, rounded to small denominators
    basis = keep.T.copy()
    s, r = basis.shape
    piv = 0
    for c in range(r):
        if piv == s:
            break
        k = piv + int(np.argmax(np.abs(basis[piv:, c])))
        if abs(basis[k, c]) < 1e-9:
            continue
        basis[[piv, k]] = basis[[k, piv]]
        basis[piv] /= basis[piv, c]
        for i in range(s):
            if i != piv:
                basis[i] -= basis[i, c] * basis[piv]
        piv += 1
    new = []
    for row in basis[:piv]:
        coefs = [
            Complex(Fraction(float(z.real)).limit_denominator(100), Fraction(float(z.imag)).limit_denominator(100))
            for z in row
        ]
        c = p.zero()
        for coef, f in zip(coefs, frame):
            if coef:
                cc = coef.conj()
                c = tuple(x + cc * y for x, y in zip(c, f))
        new.append(c)
    return new


def _app_status(p: Algebra, a, depth=0):
    """Gram-method search for a decomposition a = sum d_k B_k* B_k."""
    frame = [p.basis_vector(i) for i in range(p.dim)]
    forced = []
    while True:
        if not frame:
            if any(a):
                return ConeStatus("A++", NON_MEMBER, {"kind": "gram-infeasible", "reason": "no admissible Gram matrix", "forced_zero": forced})
            return ConeStatus("A++", MEMBER, {"kind": "decomposition", "terms": []})
        r = len(frame)
        var, sol = _gram_system(p, frame, a)
        if sol is None:
            return ConeStatus("A++", NON_MEMBER, {"kind": "gram-infeasible", "reason": "no admissible Gram matrix", "forced_zero": forced})
        x0, null = sol
        drop = []
        for idx, (t, i, j) in enumerate(var):
            if t == "d" and all(not v[idx] for v in null):
                s = sign_of(x0[idx].re)
                if s < 0:
                    return ConeStatus("A++", NON_MEMBER, {"kind": "gram-infeasible", "reason": "forced negative diagonal", "forced_zero": forced})
                if s == 0:
                    drop.append(i)
        if not drop:
            break
        forced.extend(p.format(frame[i]) for i in drop)
        frame = [c for i, c in enumerate(frame) if i not in drop]
    if not null:
        m = _unpack(x0, var, r)
        verdict = psd_check(m)
        if not verdict.is_psd:
            return ConeStatus("A++", NON_MEMBER, {"kind": "gram-infeasible", "reason": "unique Gram matrix is indefinite", "forced_zero": forced})
        return ConeStatus("A++", MEMBER, {"kind": "decomposition", "terms": _decomposition_from(p, frame, m)})
    # canonical point first
    m = _unpack(x0, var, r)
    if psd_check(m).is_psd:
        return ConeStatus("A++", MEMBER, {"kind": "decomposition", "terms": _decomposition_from(p, frame, m)})
    if not (_is_gauss(x0) and all(_is_gauss(v) for v in null)):
        return ConeStatus("A++", UNKNOWN, {})
    last = None
    for coeffs in _float_search(var, x0, null, r):
        x = list(x0)
        for c, v in zip(coeffs, null):
            if c:
                x = [xi + c * vi for xi, vi in zip(x, v)]
        m = _unpack(x, var, r)
        last = m
        if psd_check(m).is_psd:
            return ConeStatus("A++", MEMBER, {"kind": "decomposition", "terms": _decomposition_from(p, frame, m)})
    if depth < 2 and last is not None:
        import numpy as np

        mf = np.array([[complex(float(z.re), float(z.im)) for z in row] for row in last])
        new = _frame_from_range(p, frame, mf)
        if new:
            sub = _app_status_frame(p, a, new, depth + 1)
            if sub is not None:
                return sub
    return ConeStatus("A++", UNKNOWN, {})


def _app_status_frame(p, a, frame, depth):
    var, sol = _gram_system(p, frame, a)
    if sol is None:
        return None
    x0, null = sol
    r = len(frame)
    m = _unpack(x0, var, r)
    if psd_check(m).is_psd:
        return ConeStatus("A++", MEMBER, {"kind": "decomposition", "terms": _decomposition_from(p, frame, m)})
    if not null:
        return None
    for coeffs in _float_search(var, x0, null, r):
        x = list(x0)
        for c, v in zip(coeffs, null):
            if c:
                x = [xi + c * vi for xi, vi in zip(x, v)]
        m = _unpack(x, var, r)
        if psd_check(m).is_psd:
            return ConeStatus("A++", MEMBER, {"kind": "decomposition", "terms": _decomposition_from(p, frame, m)})
    return None


def _matrix_entries(p, a):
    n = p.params["n"]
    return [tuple(a[i * n + j] for j in range(n)) for i in range(n)]


def _matrix_cone(p: Algebra, a):
    """A+ = A++ = PSD matrices in M_n(C)."""
    n = p.params["n"]
    m = _matrix_entries(p, a)
    verdict = psd_check(m)
    if not verdict.is_psd:
        v = verdict.witness
        vals = [v[i].conj() * v[j] for i in range(n) for j in range(n)]
        omega = LinearFunctional(p, vals, name="vector-state")
        return ConeStatus("A+", NON_MEMBER, {"kind": "separating-functional", "functional": omega, "value": omega(a)})
    terms = []
    for d, l in ldl_decompose(m):
        b = [ZERO] * (n * n)
        for j in range(n):
            b[j] = l[j].conj()
        terms.append((d, tuple(b)))
    return ConeStatus("A+", MEMBER, {"kind": "decomposition", "terms": terms})


def _exhaustive_plus(p: Algebra, a):
    """A+ status from a complete description of the positive cone, or None."""
    kind = p.kind
    if kind == "function_points":
        bad = next((i for i, x in enumerate(a) if sign_of(x.re) < 0), None)
        if bad is None:
            terms = [(x.re, p.basis_vector(i)) for i, x in enumerate(a) if x]
            return ConeStatus("A+", MEMBER, {"kind": "decomposition", "terms": terms})
        omega = LinearFunctional(p, p.basis_vector(bad), name=f"eval{bad + 1}")
        return ConeStatus("A+", NON_MEMBER, {"kind": "separating-functional", "functional": omega, "value": omega(a)})
    if kind == "grassmann":
        s = sign_of(a[0].re)
        if s >= 0:
            return ConeStatus("A+", MEMBER, {"kind": "exhaustive", "description": "positive functionals are the nonnegative multiples of the constant-term functional"})
        omega = builtin_functional_family(p)[0]
        return ConeStatus("A+", NON_MEMBER, {"kind": "separating-functional", "functional": omega, "value": omega(a)})
    if kind == "zero_mult":
        if not any(a):
            return ConeStatus("A+", MEMBER, {"kind": "decomposition", "terms": []})
        k = next(i for i, x in enumerate(a) if x)
        omega = LinearFunctional(p, [(-ONE if sign_of(a[k].re) > 0 else ONE) if i == k else ZERO for i in range(p.dim)], name="coordinate")
        return ConeStatus("A+", NON_MEMBER, {"kind": "separating-functional", "functional": omega, "value": omega(a)})
    if kind == "matrix":
        return _matrix_cone(p, a)
    if kind == "direct_sum":
        left, right = p.params["summands"]
        parts = [left.dim, right.dim]
        offs = [0, left.dim]
        stats = []
        for q, off, d in zip((left, right), offs, parts):
            st = _exhaustive_plus(q, a[off:off + d])
            if st is None:
                return None
            if st.status == NON_MEMBER:
                om = st.certificate["functional"]
                vals = [ZERO] * p.dim
                vals[off:off + d] = om.values
                omega = LinearFunctional(p, vals, name=om.name)
                return ConeStatus("A+", NON_MEMBER, {"kind": "separating-functional", "functional": omega, "value": omega(a)})
            stats.append((st, off, d))
        if all(st.certificate.get("kind") == "decomposition" for st, _, _ in stats):
            terms = []
            for st, off, d in stats:
                for coef, b in st.certificate["terms"]:
                    v = [ZERO] * p.dim
                    v[off:off + d] = b
                    terms.append((coef, tuple(v)))
            return ConeStatus("A+", MEMBER, {"kind": "decomposition", "terms": terms})
        return ConeStatus("A+", MEMBER, {"kind": "exhaustive", "description": "componentwise"})
    return None


def positive_element_status(p: Algebra, a, cone="A++", family=None) -> ConeStatus:
    """Membership status of a Hermitian element in A++ or A+."""
    a = tuple(a.coeffs if isinstance(a, Element) else map(to_complex, a))
    if not p.is_hermitian(a):
        raise NotHermitian("element is not Hermitian")
    if cone == "A++":
        if p.kind == "matrix":
            st = _matrix_cone(p, a)
            if st.status == MEMBER:
                return ConeStatus("A++", MEMBER, st.certificate)
            return ConeStatus("A++", NON_MEMBER, st.certificate)
        return _app_status(p, a)
    if cone != "A+":
        raise ValueError(f"unknown cone {cone!r}")
    fam = builtin_functional_family(p) if family is None else family
    for omega in fam:
        val = omega(a)
        if not val.im and sign_of(val.re) < 0:
            return ConeStatus("A+", NON_MEMBER, {"kind": "separating-functional", "functional": omega, "value": val})
    st = _exhaustive_plus(p, a)
    if st is not None:
        return st
    app = _app_status(p, a)
    if app.status == MEMBER:
        return ConeStatus("A+", MEMBER, app.certificate)
    return ConeStatus("A+", UNKNOWN, {})


# ---------- built-in functional families ----------

def _vector_net(n):
    vecs = [tuple(ONE if k == i else ZERO for k in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            vecs.append(tuple(ONE if k in (i, j) else ZERO for k in range(n)))
            vecs.append(tuple(ONE if k == i else (I if k == j else ZERO) for k in range(n)))
    return vecs


def _family_for(p: Algebra):
    kind = p.kind
    out = []
    if kind == "matrix":
        n = p.params["n"]
        for v in _vector_net(n):
            out.append(LinearFunctional(p, [v[i].conj() * v[j] for i in range(n) for j in range(n)], name="vector-state"))
        out.append(LinearFunctional(p, [ONE if i == j else ZERO for i in range(n) for j in range(n)], name="trace"))
    elif kind == "function_points":
        for i in range(p.dim):
            out.append(LinearFunctional(p, p.basis_vector(i), name=f"eval{i + 1}"))
    elif kind == "grassmann":
        out.append(LinearFunctional(p, p.basis_vector(0), name="constant-term"))
    elif kind == "zero_mult":
        for i in range(p.dim):
            out.append(LinearFunctional(p, p.basis_vector(i), name=f"coordinate{i + 1}"))
    elif kind == "direct_sum":
        left, right = p.params["summands"]
        for om in builtin_functional_family(left):
            out.append(LinearFunctional(p, om.values + (ZERO,) * right.dim, name=om.name))
        for om in builtin_functional_family(right):
            out.append(LinearFunctional(p, (ZERO,) * left.dim + om.values, name=om.name))
    elif kind == "matrix_over":
        base, N = p.params["base"], p.params["N"]
        d = base.dim
        for phi in builtin_functional_family(base):
            for v in _vector_net(N):
                vals = [v[i].conj() * v[j] * phi.values[a] for i in range(N) for j in range(N) for a in range(d)]
                out.append(LinearFunctional(p, vals, name=f"{phi.name}-compressed"))
    elif kind in ("subalgebra", "corner"):
        parent, span = p.params["parent"], p.params["span"]
        for om in builtin_functional_family(parent):
            out.append(LinearFunctional(p, [om(r) for r in span.rows], name=om.name))
    elif kind == "quotient":
        out = pushforward_family(p, builtin_functional_family(p.params["parent"]))
    return out


def pushforward_family(q: Algebra, family):
    """Positive functionals on a quotient q = A/I induced by a family on A.

    Functionals vanishing on I descend directly; for the others, the vector
    states of the GNS vectors annihilated by pi(I) are used instead.
    """
    from staralg.gns import gns_construct, vector_state
    from staralg.linalg import nullspace

    ideal = q.params["ideal"]
    comp = ideal.complement
    out = FunctionalFamily(name=f"pushforward({getattr(family, 'name', 'family')})")
    seen = set()

    def add(vals, name):
        vals = tuple(vals)
        if any(vals) and vals not in seen:
            seen.add(vals)
            out.append(LinearFunctional(q, vals, name=name))

    for om in family:
        if all(not om(r) for r in ideal.rows):
            add([om.values[j] for j in comp], om.name)
            continue
        rep = gns_construct(om)
        cons = []
        for r in ideal.rows:
            cons.extend(rep.action(r))
        for phi in nullspace(cons, rep.dim):
            st = vector_state(rep, phi)
            add([st.values[j] for j in comp], f"{om.name}-restricted")
    return out


_FAMILY_CACHE: dict = {}


def _square_annihilators(p: Algebra):
    """Hermitian functionals vanishing on A^2; each one is trivially positive."""
    from staralg.linalg import nullspace

    rows = [p.mul(p.basis_vector(i), p.basis_vector(j)) for i in range(p.dim) for j in range(p.dim)]
    out, seen = [], set()
    for w in nullspace([list(r) for r in rows] or [[ZERO] * p.dim], p.dim):
        dag = [w_k.conj() for w_k in (sum((a * b for a, b in zip(w, p.star(p.basis_vector(k)))), ZERO) for k in range(p.dim))]
        for vals in ([(a + b) / 2 for a, b in zip(w, dag)], [(a - b) * I / 2 for a, b in zip(w, dag)]):
            vals = tuple(vals)
            if any(vals) and vals not in seen:
                seen.add(vals)
                out.append(LinearFunctional(p, vals, name=f"square-annihilator{len(out) + 1}"))
    return out


def builtin_functional_family(p: Algebra) -> FunctionalFamily:
    """Deterministic positive family for algebras built by the constructors."""
    key = id(p)
    hit = _FAMILY_CACHE.get(key)
    if hit is not None and hit[0] is p:
        return hit[1]
    seen = set()
    fam = FunctionalFamily(name="builtin")
    for om in _family_for(p):
        if om.is_zero() or om.values in seen:
            continue
        seen.add(om.values)
        fam.append(om)
    if not fam:
        fam.extend(_square_annihilators(p))
    _FAMILY_CACHE[key] = (p, fam)
    return fam
