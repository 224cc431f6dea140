"""Inner-product bimodules, algebraic Rieffel induction and ideal transport.

A (B-A)-bimodule X is free of dimension d with basis x_1..x_d; module
elements are coordinate columns.  ``L[k]`` is the matrix of ``x -> b_k x``
and ``R[k]`` the matrix of ``x -> x a_k``.  The A-valued product is
``<x, y>_A = sum conj(x_i) y_j ipA[i][j]`` and the optional B-valued one is
``<x, y>_B = sum x_i conj(y_j) ipB[i][j]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from staralg.algebra import Algebra, PresentationError, matrix_algebra, matrix_over, subalgebra
from staralg.gns import Representation, gns_construct, kernel_of
from staralg.ideals import (
    EXACT,
    StarIdeal,
    enumerate_closed_lattice,
    jmin,
    lattice_isomorphism,
    COMPLETE,
)
from staralg.linalg import Subspace, mat_mul, mat_vec, nullspace
from staralg.positivity import (
    INDEFINITE,
    builtin_functional_family,
    psd_check,
)
from staralg.scalars import ONE, ZERO, format_scalar, to_complex

__all__ = [
    "InnerProductBimodule",
    "EquivalenceReport",
    "InductionError",
    "BimoduleError",
    "validate_bimodule",
    "std_bimodule",
    "projection_bimodule",
    "rieffel_induce",
    "induced_gram",
    "phi_map",
    "check_kernel_transport",
    "check_double_transport",
    "verify_equivalence",
    "diff_invariants",
    "VERIFIED",
    "REFUTED",
    "INCONCLUSIVE",
]

VERIFIED, REFUTED, INCONCLUSIVE = "Verified", "Refuted", "Inconclusive"


class BimoduleError(ValueError):
    pass


class InductionError(ValueError):
    """The induced form is indefinite; ``witness`` is a vector of X (x) H."""

    def __init__(self, msg, witness=None, value=None):
        super().__init__(msg)
        self.witness = witness
        self.value = value


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _scale(c, v):
    return tuple(c * a if a else ZERO for a in v)


def _lin(mats, coeffs, d):
    out = [[ZERO] * d for _ in range(d)]
    for c, m in zip(coeffs, mats):
        if c:
            for i in range(d):
                for j in range(d):
                    if m[i][j]:
                        out[i][j] = out[i][j] + c * m[i][j]
    return [tuple(r) for r in out]


def _conj_mat(m):
    return [tuple(x.conj() for x in r) for r in m]


class InnerProductBimodule:
    def __init__(self, left: Algebra, right: Algebra, d, L, R, ipA, ipB=None, name="X", certificate=None):
        if len(L) != left.dim or len(R) != right.dim:
            raise BimoduleError("one action matrix per basis element is required")
        for m in list(L) + list(R):
            if len(m) != d or any(len(r) != d for r in m):
                raise BimoduleError("action matrices must be d x d")
        if len(ipA) != d or any(len(r) != d for r in ipA) or any(len(v) != right.dim for r in ipA for v in r):
            raise BimoduleError("A-valued inner product must be a d x d array of A-elements")
        if ipB is not None and (len(ipB) != d or any(len(v) != left.dim for r in ipB for v in r)):
            raise BimoduleError("B-valued inner product must be a d x d array of B-elements")
        self.left = left
        self.right = right
        self.dim = d
        self.L = [[tuple(r) for r in m] for m in L]
        self.R = [[tuple(r) for r in m] for m in R]
        self.ipA = [[tuple(v) for v in r] for r in ipA]
        self.ipB = [[tuple(v) for v in r] for r in ipB] if ipB is not None else None
        self.name = name
        self.certificate = certificate

    def left_action(self, b):
        return _lin(self.L, b, self.dim)

    def right_action(self, a):
        return _lin(self.R, a, self.dim)

    def inner_a(self, x, y):
        out = self.right.zero()
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out = _vadd(out, _scale(xi.conj() * yj, self.ipA[i][j]))
        return out

    def inner_b(self, x, y):
        out = self.left.zero()
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out = _vadd(out, _scale(xi * yj.conj(), self.ipB[i][j]))
        return out

    def conjugate(self) -> "InnerProductBimodule":
        """The conjugate (A-B)-bimodule; requires the B-valued product."""
        if self.ipB is None:
            raise BimoduleError("conjugation needs the B-valued inner product")
        A, B = self.right, self.left
        Lbar = [_conj_mat(self.right_action(A.star(A.basis_vector(k)))) for k in range(A.dim)]
        Rbar = [_conj_mat(self.left_action(B.star(B.basis_vector(k)))) for k in range(B.dim)]
        return InnerProductBimodule(A, B, self.dim, Lbar, Rbar, self.ipB, self.ipA, name=f"conj({self.name})", certificate=self.certificate)

    def __repr__(self):
        return f"InnerProductBimodule({self.name}: {self.left.name} | {self.right.name}, d={self.dim})"


@dataclass
class EquivalenceReport:
    checks: list = field(default_factory=list)  # dicts: axiom, ok, witness, detail
    full_a: bool | None = None
    full_b: bool | None = None
    positivity: list = field(default_factory=list)
    structural: dict | None = None
    invariant: dict | None = None
    overall: str = INCONCLUSIVE
    refuted_axiom: str | None = None
    witness: object = None

    def add(self, axiom, ok, witness=None, detail=""):
        self.checks.append({"axiom": axiom, "ok": ok, "witness": witness, "detail": detail})

    @property
    def failures(self):
        return [c for c in self.checks if not c["ok"]]

    @property
    def axioms_ok(self):
        return not self.failures

    def to_dict(self):
        return {
            "overall": self.overall,
            "refuted_axiom": self.refuted_axiom,
            "witness": self.witness,
            "full_A": self.full_a,
            "full_B": self.full_b,
            "failed_axioms": [{"axiom": c["axiom"], "witness": c["witness"], "detail": c["detail"]} for c in self.failures],
            "checked_axioms": sorted({c["axiom"] for c in self.checks}),
            "positivity": self.positivity,
            "structural_certificate": self.structural,
            "invariant": self.invariant,
        }


def _fail_once(report, axiom, ok, witness, detail=""):
    if ok:
        return True
    if not any(c["axiom"] == axiom and not c["ok"] for c in report.checks):
        report.add(axiom, False, witness, detail)
    return False


def _fullness(alg: Algebra, values):
    """(full?, witness covector vanishing on every value when not full)."""
    sub = Subspace(alg.dim, values)
    if sub.is_full():
        return True, None
    ann = nullspace(list(sub.rows), alg.dim) if sub.rows else [alg.basis_vector(0)]
    return False, [format_scalar(x) for x in ann[0]]


def validate_bimodule(X: InnerProductBimodule) -> EquivalenceReport:
    """Check every bimodule and inner-product axiom on basis data (1-based witnesses)."""
    A, B, d = X.right, X.left, X.dim
    rep = EquivalenceReport()
    eA = [A.basis_vector(k) for k in range(A.dim)]
    eB = [B.basis_vector(k) for k in range(B.dim)]
    for k in range(A.dim):
        for l in range(A.dim):
            good = mat_mul(X.R[l], X.R[k]) == X.right_action(A.mul(eA[k], eA[l]))
            _fail_once(rep, "right-action", good, [k + 1, l + 1], "(x a_k) a_l != x (a_k a_l)")
    for k in range(B.dim):
        for l in range(B.dim):
            good = mat_mul(X.L[k], X.L[l]) == X.left_action(B.mul(eB[k], eB[l]))
            _fail_once(rep, "left-action", good, [k + 1, l + 1], "b_k (b_l x) != (b_k b_l) x")
    for k in range(B.dim):
        for l in range(A.dim):
            good = mat_mul(X.L[k], X.R[l]) == mat_mul(X.R[l], X.L[k])
            _fail_once(rep, "actions-commute", good, [k + 1, l + 1], "")
    ident = [tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d)]
    if A.unit is not None:
        _fail_once(rep, "right-unital", X.right_action(A.unit) == ident, [], "x 1 != x")
    if B.unit is not None:
        _fail_once(rep, "left-unital", X.left_action(B.unit) == ident, [], "1 x != x")
    # A-valued product
    for i in range(d):
        for j in range(d):
            _fail_once(rep, "A-hermitian", X.ipA[j][i] == A.star(X.ipA[i][j]), [i + 1, j + 1])
    for i in range(d):
        for j in range(d):
            for k in range(A.dim):
                col = [X.R[k][m][j] for m in range(d)]
                lhs = A.zero()
                for m, c in enumerate(col):
                    if c:
                        lhs = _vadd(lhs, _scale(c, X.ipA[i][m]))
                _fail_once(rep, "A-linearity", lhs == A.mul(X.ipA[i][j], eA[k]), [i + 1, j + 1, k + 1], "<x_i, x_j a_k> != <x_i, x_j> a_k")
    for k in range(B.dim):
        Ls = X.left_action(B.star(eB[k]))
        for i in range(d):
            for j in range(d):
                lhs, rhs = A.zero(), A.zero()
                for m in range(d):
                    c = X.L[k][m][i]
                    if c:
                        lhs = _vadd(lhs, _scale(c.conj(), X.ipA[m][j]))
                    c = Ls[m][j]
                    if c:
                        rhs = _vadd(rhs, _scale(c, X.ipA[i][m]))
                _fail_once(rep, "B-adjointable", lhs == rhs, [k + 1, i + 1, j + 1], "<b x, y>_A != <x, b* y>_A")
    full, wit = _fullness(A, [v for r in X.ipA for v in r])
    rep.full_a = full
    if X.ipB is not None:
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    lhs = mat_vec(X.right_action(X.ipA[j][k]), ident[i])
                    rhs = mat_vec(X.left_action(X.ipB[i][j]), ident[k])
                    _fail_once(rep, "compatibility", lhs == rhs, [i + 1, j + 1, k + 1], "x <y, z>_A != <x, y>_B z")
        for i in range(d):
            for j in range(d):
                _fail_once(rep, "B-hermitian", X.ipB[j][i] == B.star(X.ipB[i][j]), [i + 1, j + 1])
        for k in range(B.dim):
            for i in range(d):
                for j in range(d):
                    lhs = B.zero()
                    for m in range(d):
                        c = X.L[k][m][i]
                        if c:
                            lhs = _vadd(lhs, _scale(c, X.ipB[m][j]))
                    _fail_once(rep, "B-linearity", lhs == B.mul(eB[k], X.ipB[i][j]), [k + 1, i + 1, j + 1], "<b_k x_i, x_j>_B != b_k <x_i, x_j>_B")
        for k in range(A.dim):
            Ras = X.right_action(A.star(eA[k]))
            for i in range(d):
                for j in range(d):
                    lhs, rhs = B.zero(), B.zero()
                    for m in range(d):
                        c = X.R[k][m][i]
                        if c:
                            lhs = _vadd(lhs, _scale(c, X.ipB[m][j]))
                        c = Ras[m][j]
                        if c:
                            rhs = _vadd(rhs, _scale(c.conj(), X.ipB[i][m]))
                    _fail_once(rep, "A-adjointable", lhs == rhs, [k + 1, i + 1, j + 1], "<x a, y>_B != <x, y a*>_B")
        rep.full_b, _ = _fullness(B, [v for r in X.ipB for v in r])
    if rep.failures:
        first = rep.failures[0]
        rep.overall = REFUTED
        rep.refuted_axiom = first["axiom"]
        rep.witness = first["witness"]
    else:
        rep.overall = VERIFIED
    return rep


# ---------- constructors ----------

def std_bimodule(n: int) -> InnerProductBimodule:
    """C^n between B = matrix(n) (left) and A = matrix(1) = C (right)."""
    B = matrix_algebra(n)
    A = matrix_algebra(1)
    L = []
    for k in range(n):
        for l in range(n):
            L.append([tuple(ONE if (r, c) == (k, l) else ZERO for c in range(n)) for r in range(n)])
    R = [[tuple(ONE if r == c else ZERO for c in range(n)) for r in range(n)]]
    ipA = [[(ONE,) if i == j else (ZERO,) for j in range(n)] for i in range(n)]
    ipB = [[B.basis_vector(i * n + j) for j in range(n)] for i in range(n)]
    cert = {
        "kind": "structural",
        "pattern": "C^n with <x,y>_A = sum_i conj(x_i) y_i and <x,y>_B = x y^dagger",
        "components": [[[ONE if i == j else ZERO] for j in range(n)] for i in range(n)],
    }
    return InnerProductBimodule(B, A, n, L, R, ipA, ipB, name=f"std({n})", certificate=cert)


def projection_bimodule(A: Algebra, N: int, Q) -> InnerProductBimodule:
    """X = Q A^N between the corner Q M_N(A) Q (left) and A (right)."""
    M = matrix_over(A, N)
    d = A.dim
    Q = tuple(to_complex(x) for x in Q)
    if len(Q) != M.dim:
        raise PresentationError("projection has the wrong length")
    if M.mul(Q, Q) != Q or M.star(Q) != Q:
        raise BimoduleError("Q must be a Hermitian idempotent")
    if not any(Q):
        raise BimoduleError("Q = 0 gives the zero module, which is not full")

    def entry(m, i, j):
        return tuple(m[(i * N + j) * d + a] for a in range(d))

    def act(m, v):
        """Matrix over A times a column in A^N (index i*d + a)."""
        out = [ZERO] * (N * d)
        for i in range(N):
            acc = A.zero()
            for j in range(N):
                acc = _vadd(acc, A.mul(entry(m, i, j), v[j * d:(j + 1) * d]))
            out[i * d:(i + 1) * d] = acc
        return tuple(out)

    def ract(v, a):
        out = []
        for i in range(N):
            out.extend(A.mul(v[i * d:(i + 1) * d], a))
        return tuple(out)

    gens = [act(Q, tuple(ONE if t == s else ZERO for t in range(N * d))) for s in range(N * d)]
    xs = Subspace(N * d, gens)
    xb = xs.rows
    dx = len(xb)
    corner_span = [M.mul(M.mul(Q, M.basis_vector(k)), Q) for k in range(M.dim)]
    support = []
    if A.kind == "function_points":
        support = [p for p in range(d) if any(Q[(i * N + j) * d + p] for i in range(N) for j in range(N))]
    B, incl = subalgebra(M, corner_span, name=f"corner({A.name}, {N})", kind="corner", params={"base": A, "N": N, "Q": Q, "support": support})
    span = B.params["span"]

    def cols(f):
        cs = [xs.coords(f(x)) for x in xb]
        return [tuple(c[r] for c in cs) for r in range(dx)]

    L = [cols(lambda x, b=b: act(b, x)) for b in span.rows]
    R = [cols(lambda x, k=k: ract(x, A.basis_vector(k))) for k in range(A.dim)]
    ipA = []
    for x in xb:
        row = []
        for y in xb:
            acc = A.zero()
            for i in range(N):
                acc = _vadd(acc, A.mul(A.star(x[i * d:(i + 1) * d]), y[i * d:(i + 1) * d]))
            row.append(acc)
        ipA.append(row)
    ipB = []
    for x in xb:
        row = []
        for y in xb:
            m = [ZERO] * M.dim
            for i in range(N):
                for j in range(N):
                    val = A.mul(x[i * d:(i + 1) * d], A.star(y[j * d:(j + 1) * d]))
                    m[(i * N + j) * d:(i * N + j + 1) * d] = val
            row.append(span.coords(tuple(m)))
        ipB.append(row)
    cert = {
        "kind": "structural",
        "pattern": "Q A^N with <x,y>_A = sum_i x_i* y_i and <x,y>_B = x y^dagger",
        "components": [[list(x[i * d:(i + 1) * d]) for i in range(N)] for x in xb],
    }
    return InnerProductBimodule(B, A, dx, L, R, ipA, ipB, name=f"proj({A.name}, {N})", certificate=cert)


def _check_structural(X: InnerProductBimodule):
    """Re-verify <x_i, x_j>_A = sum_m c_im* c_jm from the stored components."""
    cert = X.certificate
    if not cert or cert.get("kind") != "structural":
        return False
    A = X.right
    comps = cert["components"]
    for i, ci in enumerate(comps):
        for j, cj in enumerate(comps):
            acc = A.zero()
            for u, v in zip(ci, cj):
                acc = _vadd(acc, A.mul(A.star(tuple(u)), tuple(v)))
            if acc != X.ipA[i][j]:
                return False
    return True


# ---------- induction ----------

def _same_algebra(p, q):
    return p is q or (p.dim == q.dim and p.table == q.table and p.star_cols == q.star_cols)


def induced_gram(X: InnerProductBimodule, rep: Representation):
    """Gram matrix of <x_i (x) e_k, x_j (x) e_l> = (H pi(<x_i, x_j>_A))_kl."""
    d, m = X.dim, rep.dim
    size = d * m
    g = [[ZERO] * size for _ in range(size)]
    for i in range(d):
        for j in range(d):
            blk = mat_mul(rep.gram, rep.action(X.ipA[i][j])) if m else []
            for k in range(m):
                for l in range(m):
                    g[i * m + k][j * m + l] = blk[k][l]
    return [tuple(r) for r in g]


def rieffel_induce(X: InnerProductBimodule, rep: Representation) -> Representation:
    """Representation of B on (X (x)_A H) / radical."""
    if not _same_algebra(rep.parent, X.right):
        raise BimoduleError("representation is not of the right algebra")
    A, B = X.right, X.left
    d, m = X.dim, rep.dim
    size = d * m
    if size == 0:
        return Representation(B, [], [[] for _ in range(B.dim)], provenance=f"induced({X.name})")
    g = induced_gram(X, rep)
    bal = []
    for t in range(A.dim):
        pa = rep.actions[t]
        for j in range(d):
            for k in range(m):
                v = [ZERO] * size
                for mm in range(d):
                    c = X.R[t][mm][j]
                    if c:
                        v[mm * m + k] = v[mm * m + k] + c
                for l in range(m):
                    c = pa[l][k]
                    if c:
                        v[j * m + l] = v[j * m + l] - c
                if any(v):
                    bal.append(tuple(v))
    nsub = Subspace(size, bal)
    comp = nsub.complement
    g1 = [tuple(g[a][b] for b in comp) for a in comp]
    verdict = psd_check(g1)
    if verdict.status == INDEFINITE:
        w = [ZERO] * size
        for idx, c in zip(comp, verdict.witness):
            w[idx] = c
        raise InductionError("induced inner product is indefinite", tuple(w), verdict.value)
    lifts = []
    for r in verdict.radical:
        w = [ZERO] * size
        for idx, c in zip(comp, r):
            w[idx] = c
        lifts.append(tuple(w))
    z = Subspace(size, list(nsub.rows) + lifts)
    comp2 = z.complement
    gram = [tuple(g[a][b] for b in comp2) for a in comp2]
    actions = []
    for k in range(B.dim):
        lk = X.L[k]
        cols = []
        for c in comp2:
            i, e = divmod(c, m)
            v = [ZERO] * size
            for mm in range(d):
                coef = lk[mm][i]
                if coef:
                    v[mm * m + e] = coef
            cols.append(z.quotient_coords(tuple(v)))
        actions.append([tuple(col[r] for col in cols) for r in range(len(comp2))])
    return Representation(B, gram, actions, provenance=f"induced({X.name}, {rep.provenance})")


def phi_map(X: InnerProductBimodule, ideal: StarIdeal) -> StarIdeal:
    """{B : <x, B y>_A in I for all x, y}."""
    A, B, d = X.right, X.left, X.dim
    sub = ideal.subspace
    comp = sub.complement
    rows = []
    if comp:
        for i in range(d):
            for j in range(d):
                per_k = []
                for k in range(B.dim):
                    acc = A.zero()
                    for mm in range(d):
                        c = X.L[k][mm][j]
                        if c:
                            acc = _vadd(acc, _scale(c, X.ipA[i][mm]))
                    per_k.append(sub.quotient_coords(acc))
                for t in range(len(comp)):
                    row = tuple(per_k[k][t] for k in range(B.dim))
                    if any(row):
                        rows.append(row)
    return StarIdeal(B, Subspace(B.dim, nullspace(rows, B.dim)))


def check_kernel_transport(X: InnerProductBimodule, rep: Representation):
    """ker(R_X pi) == Phi_X(ker pi), with both sides in the report."""
    induced = rieffel_induce(X, rep)
    lhs = kernel_of(induced)
    rhs = phi_map(X, kernel_of(rep))
    return lhs == rhs, {"induced_dim": induced.dim, "kernel_induced": lhs, "phi_of_kernel": rhs}


def _four_point_ideal(X: InnerProductBimodule, ideal: StarIdeal) -> Subspace:
    """{A : <x,y>_A A <z,w>_A in I for all basis x, y, z, w}."""
    A = X.right
    vals = Subspace(A.dim, [v for r in X.ipA for v in r]).rows
    sub = ideal.subspace
    rows = []
    for u in vals:
        for w in vals:
            per = [sub.quotient_coords(A.mul(A.mul(u, A.basis_vector(t)), w)) for t in range(A.dim)]
            for c in range(len(sub.complement)):
                row = tuple(per[t][c] for t in range(A.dim))
                if any(row):
                    rows.append(row)
    return Subspace(A.dim, nullspace(rows, A.dim))


def check_double_transport(X: InnerProductBimodule, ideal: StarIdeal):
    """Phi_Xbar(Phi_X(I)) == I, plus the four-point membership criterion."""
    there = phi_map(X, ideal)
    back = phi_map(X.conjugate(), there)
    four = _four_point_ideal(X, ideal)
    ok = back == ideal and four == back.subspace
    return ok, {"phi": there, "round_trip": back, "criterion_matches": four == back.subspace}


# ---------- equivalence ----------

def _positivity_evidence(X, family, side):
    """Induced-form PSD checks for each GNS representation of a family."""
    out = []
    for omega in family:
        rep = gns_construct(omega)
        g = induced_gram(X, rep)
        v = psd_check(g) if g else None
        entry = {"side": side, "functional": omega.name or "omega", "status": v.status if v else "PositiveDefinite"}
        if v is not None and v.status == INDEFINITE:
            entry["witness"] = [format_scalar(x) for x in v.witness]
            entry["value"] = format_scalar(v.value)
        out.append(entry)
    return out


def verify_equivalence(X: InnerProductBimodule, family_a=None, family_b=None) -> EquivalenceReport:
    """Axioms, fullness, positivity evidence and the J_min invariant."""
    A, B = X.right, X.left
    rep = validate_bimodule(X)
    if X.ipB is None:
        rep.overall = REFUTED
        rep.refuted_axiom = "B-valued inner product missing"
        rep.witness = []
        return rep
    if rep.failures:
        return rep
    if not rep.full_a or not rep.full_b:
        side, alg, vals = ("A", A, [v for r in X.ipA for v in r]) if not rep.full_a else ("B", B, [v for r in X.ipB for v in r])
        _, wit = _fullness(alg, vals)
        rep.overall = REFUTED
        rep.refuted_axiom = f"fullness-{side}"
        rep.witness = wit
        return rep
    fam_a = builtin_functional_family(A) if family_a is None else family_a
    fam_b = builtin_functional_family(B) if family_b is None else family_b
    structural = _check_structural(X)
    if structural:
        rep.structural = {"kind": "structural", "pattern": X.certificate["pattern"], "verified": True}
    rep.positivity = _positivity_evidence(X, fam_a, "P") + _positivity_evidence(X.conjugate(), fam_b, "Q")
    bad = next((e for e in rep.positivity if e["status"] == INDEFINITE), None)
    if bad is not None:
        rep.overall = REFUTED
        rep.refuted_axiom = f"property-{bad['side']}"
        rep.witness = {"functional": bad["functional"], "vector": bad["witness"], "value": bad["value"]}
        return rep
    inv = _jmin_invariant(A, B, fam_a, fam_b)
    rep.invariant = inv
    if inv["refutes"]:
        rep.overall = REFUTED
        rep.refuted_axiom = "jmin-invariant"
        rep.witness = inv["witness"]
        return rep
    rep.overall = VERIFIED if structural else INCONCLUSIVE
    return rep


def _jmin_invariant(A, B, fam_a, fam_b):
    sa, sb = jmin(A, fam_a), jmin(B, fam_b)
    applicable = all(x.is_nondegenerate and x.is_idempotent for x in (A, B))
    refutes = (
        applicable
        and sa.status == EXACT
        and sb.status == EXACT
        and sa.upper.is_zero() != sb.upper.is_zero()
    )
    witness = None
    if refutes:
        nz, alg = (sa.upper, A) if not sa.upper.is_zero() else (sb.upper, B)
        witness = {"algebra": alg.name, "jmin_basis": nz.format_basis()}
    return {
        "jmin_trivial": [sa.upper.is_zero() if sa.status == EXACT else None, sb.upper.is_zero() if sb.status == EXACT else None],
        "status": [sa.status, sb.status],
        "applicable": applicable,
        "refutes": refutes,
        "witness": witness,
        "sandwiches": (sa, sb),
    }


def diff_invariants(A: Algebra, B: Algebra, family_a=None, family_b=None):
    """Compare the certified formal-Morita invariants of two algebras."""
    fam_a = builtin_functional_family(A) if family_a is None else family_a
    fam_b = builtin_functional_family(B) if family_b is None else family_b
    inv = _jmin_invariant(A, B, fam_a, fam_b)
    la, lb = enumerate_closed_lattice(A, fam_a), enumerate_closed_lattice(B, fam_b)
    iso = lattice_isomorphism(la, lb)
    size_refutes = la.completeness == COMPLETE and lb.completeness == COMPLETE and len(la) != len(lb)
    reasons = []
    if inv["refutes"]:
        reasons.append("jmin-triviality")
    if size_refutes:
        reasons.append("lattice-size")
    decided = all(s == EXACT for s in inv["status"]) and la.completeness == COMPLETE and lb.completeness == COMPLETE
    if reasons:
        verdict = "not formally Morita equivalent"
    elif decided:
        verdict = "invariants agree"
    else:
        verdict = "inconclusive"
    return {
        "jmin": inv,
        "lattices": (la, lb),
        "lattice_isomorphic": iso is not None,
        "isomorphism": iso,
        "reasons": reasons,
        "verdict": verdict,
    }
