"""*-ideals, closures, the minimal closed ideal and lattices of closed ideals."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from staralg.algebra import (
    Algebra,
    Element,
    NotAStarIdeal,
    quotient_by_star_ideal,
    star_ideal_violation,
)
from staralg.gns import gns_construct, kernel_of
from staralg.linalg import Subspace, nullspace
from staralg.positivity import FunctionalFamily, builtin_functional_family, pushforward_family
from staralg.scalars import I, format_scalar

__all__ = [
    "StarIdeal",
    "JminSandwich",
    "ClosedIdealLattice",
    "FamilyError",
    "EXACT",
    "GAP",
    "YES",
    "NO",
    "UNKNOWN",
    "COMPLETE",
    "POSSIBLY_INCOMPLETE",
    "ideal_generated_by",
    "jmin",
    "closure",
    "is_closed",
    "lattice_op",
    "enumerate_closed_lattice",
    "export_hasse",
    "expected_lattice_size",
    "lattice_isomorphism",
    "is_lattice_isomorphism",
    "certified_jmin_members",
]

EXACT, GAP = "Exact", "Gap"
YES, NO, UNKNOWN = "Yes", "No", "Unknown"
COMPLETE, POSSIBLY_INCOMPLETE = "Complete", "PossiblyIncomplete"


class FamilyError(ValueError):
    """No positive functionals are available for an upper bound."""


class StarIdeal:
    """A two-sided *-ideal held by its canonical echelon basis."""

    __slots__ = ("parent", "subspace", "closed")

    def __init__(self, parent: Algebra, subspace: Subspace, check=True):
        if subspace.n != parent.dim:
            raise ValueError("subspace dimension does not match the algebra")
        if check:
            bad = star_ideal_violation(parent, subspace)
            if bad:
                raise NotAStarIdeal(f"subspace fails the {bad[0]} closure test")
        self.parent = parent
        self.subspace = subspace
        self.closed = None

    @classmethod
    def zero(cls, p):
        return cls(p, Subspace.zero(p.dim), check=False)

    @classmethod
    def whole(cls, p):
        return cls(p, Subspace.full(p.dim), check=False)

    @property
    def dim(self):
        return self.subspace.dim

    @property
    def basis(self):
        return list(self.subspace.rows)

    def elements(self):
        return [Element(self.parent, r) for r in self.subspace.rows]

    def contains(self, v):
        if isinstance(v, Element):
            v = v.coeffs
        return self.subspace.contains(v)

    def is_zero(self):
        return self.subspace.is_zero()

    def is_whole(self):
        return self.subspace.is_full()

    def __le__(self, other):
        return self.subspace.issubset(other.subspace)

    def __eq__(self, other):
        if not isinstance(other, StarIdeal):
            return NotImplemented
        return self.parent is other.parent and self.subspace == other.subspace

    def __hash__(self):
        return hash(self.subspace)

    def meet(self, other):
        return StarIdeal(self.parent, self.subspace & other.subspace, check=False)

    def sum(self, other):
        return StarIdeal(self.parent, self.subspace + other.subspace, check=False)

    def key(self):
        """Short canonical hash of the echelon basis."""
        text = ";".join(",".join(format_scalar(x) for x in r) for r in self.subspace.rows)
        return hashlib.sha256(f"{self.parent.dim}|{text}".encode()).hexdigest()[:8]

    def format_basis(self):
        return [self.parent.format(r) for r in self.subspace.rows]

    def __repr__(self):
        return f"StarIdeal(dim={self.dim}/{self.parent.dim}, {self.key()})"


def ideal_generated_by(p: Algebra, elements) -> StarIdeal:
    """Smallest *-ideal containing the given elements (worklist closure)."""
    vecs = [tuple(e.coeffs) if isinstance(e, Element) else tuple(e) for e in elements]
    sub = Subspace(p.dim, vecs)
    queue = list(sub.rows)
    basis = [p.basis_vector(i) for i in range(p.dim)]
    while queue and not sub.is_full():
        v = queue.pop()
        new = [p.star(v)]
        for b in basis:
            new.append(p.mul(b, v))
            new.append(p.mul(v, b))
        fresh = [w for w in new if any(w) and not sub.contains(w)]
        if fresh:
            sub = Subspace(p.dim, list(sub.rows) + fresh)
            queue.extend(fresh)
    return StarIdeal(p, sub)


# ---------- J_min ----------

@dataclass
class JminSandwich:
    lower: StarIdeal
    upper: StarIdeal
    status: str
    family_name: str = "builtin"
    fingerprint: str = ""

    @property
    def value(self):
        return self.upper if self.status == EXACT else None


def _nilpotent(p, v):
    power = v
    for _ in range(p.dim + 1):
        if not any(power):
            return True
        power = p.mul(power, v)
    return not any(power)


def certified_jmin_members(p: Algebra):
    """Elements shown to lie in J_min by A*A = 0 or normal nilpotency."""
    n = p.dim
    cands = []
    for i in range(n):
        b = p.basis_vector(i)
        s = p.star(b)
        cands.append(b)
        cands.append(tuple(x + y for x, y in zip(b, s)))
        cands.append(tuple(I * (x - y) for x, y in zip(b, s)))
    for i in range(n):
        for j in range(n):
            prod = p.mul(p.basis_vector(i), p.basis_vector(j))
            if any(prod):
                cands.append(prod)
                cands.append(tuple(x + y for x, y in zip(prod, p.star(prod))))
    out = []
    seen = set()
    for c in cands:
        if not any(c) or c in seen:
            continue
        seen.add(c)
        cs = p.star(c)
        if not any(p.mul(cs, c)):
            out.append(c)
        elif p.mul(cs, c) == p.mul(c, cs) and _nilpotent(p, c):
            out.append(c)
    return out


def _lower_bound(p: Algebra) -> StarIdeal:
    lower = ideal_generated_by(p, certified_jmin_members(p))
    # ideals inside J_min may be divided out without changing J_min
    while not lower.is_whole():
        if lower.is_zero():
            break
        q, rho = quotient_by_star_ideal(p, lower.subspace, check=False)
        extra = certified_jmin_members(q)
        if not extra:
            break
        grown = ideal_generated_by(p, list(lower.basis) + [rho.lift(e) for e in extra])
        if grown == lower:
            break
        lower = grown
    return lower


def _family_of(p, family):
    if family is None:
        return builtin_functional_family(p)
    return family


def jmin(p: Algebra, family=None) -> JminSandwich:
    """Certified sandwich lower <= J_min <= upper."""
    fam = _family_of(p, family)
    name = getattr(fam, "name", "custom")
    fp = fam.fingerprint if isinstance(fam, FunctionalFamily) else FunctionalFamily(fam).fingerprint
    if p.dim == 0:
        z = StarIdeal.zero(p)
        return JminSandwich(z, z, EXACT, name, fp)
    if not fam:
        raise FamilyError(f"no positive functionals available for {p.name}")
    lower = _lower_bound(p)
    upper = Subspace.full(p.dim)
    for omega in fam:
        upper = upper & kernel_of(gns_construct(omega)).subspace
        if p.has_unit:
            upper = upper & Subspace(p.dim, nullspace([omega.values], p.dim))
        if upper == lower.subspace:
            break
    upper_ideal = StarIdeal(p, upper)
    if not lower <= upper_ideal:
        raise ArithmeticError("lower bound of J_min escaped the upper bound")
    status = EXACT if lower == upper_ideal else GAP
    return JminSandwich(lower, upper_ideal, status, name, fp)


# ---------- closure ----------

@dataclass
class ClosureResult:
    ideal: StarIdeal
    status: str
    lower: StarIdeal


_CLOSURE_CACHE: dict = {}


def _as_ideal(p, j):
    if isinstance(j, StarIdeal):
        return j
    if isinstance(j, Subspace):
        return ideal_generated_by(p, j.rows)
    return ideal_generated_by(p, j)


def closure(p: Algebra, j, family=None) -> ClosureResult:
    """Pull back of the upper bound of J_min(A / <J>)."""
    fam = _family_of(p, family)
    i0 = _as_ideal(p, j)
    if i0.is_whole():
        return ClosureResult(i0, EXACT, i0)
    fp = fam.fingerprint if isinstance(fam, FunctionalFamily) else FunctionalFamily(fam).fingerprint
    key = (id(p), fp, i0.subspace)
    hit = _CLOSURE_CACHE.get(key)
    if hit is not None and hit[0] is p:
        return hit[1]
    if i0.is_zero():
        sw = jmin(p, fam)
        res = ClosureResult(sw.upper, sw.status, sw.lower)
    else:
        q, rho = quotient_by_star_ideal(p, i0.subspace, check=False)
        qfam = builtin_functional_family(q) if family is None else pushforward_family(q, fam)
        sw = jmin(q, qfam)
        up = StarIdeal(p, rho.preimage(sw.upper.subspace))
        lo = StarIdeal(p, rho.preimage(sw.lower.subspace), check=False)
        res = ClosureResult(up, sw.status, lo)
    res.ideal.closed = YES if res.status == EXACT else res.ideal.closed
    _CLOSURE_CACHE[key] = (p, res)
    return res


def is_closed(p: Algebra, ideal: StarIdeal, family=None) -> str:
    """Yes / No / Unknown from the sandwich of the quotient."""
    if ideal.is_whole():
        return YES
    res = closure(p, ideal, family)
    if res.ideal == ideal:
        return YES
    if not res.lower <= ideal:
        return NO
    if res.status == EXACT:
        return NO
    return UNKNOWN


def lattice_op(p: Algebra, kind: str, a, b, family=None):
    """meet, join (as ClosureResult) or leq (bool) on closures."""
    ca = closure(p, a, family)
    cb = closure(p, b, family)
    status = EXACT if ca.status == cb.status == EXACT else GAP
    if kind == "meet":
        m = ca.ideal.meet(cb.ideal)
        return ClosureResult(m, status, ca.lower.meet(cb.lower))
    if kind == "join":
        r = closure(p, ca.ideal.sum(cb.ideal), family)
        return ClosureResult(r.ideal, EXACT if status == EXACT and r.status == EXACT else GAP, r.lower)
    if kind == "leq":
        return ca.ideal <= cb.ideal
    raise ValueError(f"unknown lattice operation {kind!r}")


# ---------- lattice of closed ideals ----------

@dataclass
class ClosedIdealLattice:
    algebra: Algebra
    nodes: list
    covers: list  # (lower index, upper index)
    completeness: str
    exact: bool = True
    family_name: str = "builtin"
    fingerprint: str = ""
    meet_table: dict = field(default_factory=dict)
    join_table: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.nodes)

    def index(self, ideal):
        for k, n in enumerate(self.nodes):
            if n == ideal:
                return k
        return None

    def leq(self, i, j):
        return self.nodes[i] <= self.nodes[j]


def _sort_nodes(nodes):
    return sorted(nodes, key=lambda x: (x.dim, x.key()))


def _covers(nodes):
    n = len(nodes)
    below = [[i != j and nodes[i] <= nodes[j] for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            if below[i][j] and not any(below[i][k] and below[k][j] for k in range(n)):
                out.append((i, j))
    return out


def expected_lattice_size(p: Algebra):
    """Number of closed ideals for constructors with a known classification."""
    kind = p.kind
    if p.dim == 0:
        return 1
    if kind == "function_points":
        return 2 ** p.params["k"]
    if kind in ("matrix", "grassmann"):
        return 2
    if kind == "zero_mult":
        return 1
    if kind == "direct_sum":
        a, b = p.params["summands"]
        if a.has_unit and b.has_unit:
            ea, eb = expected_lattice_size(a), expected_lattice_size(b)
            if ea is not None and eb is not None:
                return ea * eb
        return None
    if kind == "matrix_over":
        base = p.params["base"]
        return expected_lattice_size(base) if base.has_unit else None
    if kind == "corner":
        base = p.params["base"]
        if base.kind == "function_points":
            return 2 ** len(p.params["support"])
        return None
    if kind == "quotient":
        parent, ideal = p.params["parent"], p.params["ideal"]
        if p.dim == 0:
            return 1
        if parent.kind == "grassmann" and all(not r[0] for r in ideal.rows):
            return 2
        if parent.kind == "function_points":
            pts = [i for i in range(parent.dim) if not ideal.contains(parent.basis_vector(i))]
            if Subspace(parent.dim, [parent.basis_vector(i) for i in range(parent.dim) if i not in pts]) == ideal:
                return 2 ** len(pts)
        return None
    return None


def enumerate_closed_lattice(p: Algebra, family=None) -> ClosedIdealLattice:
    """Close GNS kernels (plus the whole algebra) under meet and join."""
    fam = _family_of(p, family)
    fp = fam.fingerprint if isinstance(fam, FunctionalFamily) else FunctionalFamily(fam).fingerprint
    name = getattr(fam, "name", "custom")
    nodes = {StarIdeal.whole(p)}
    exact = True
    if p.dim and not fam:
        raise FamilyError(f"no positive functionals available for {p.name}")
    for omega in fam:
        nodes.add(kernel_of(gns_construct(omega)))
    # the bottom: kernel of the direct sum of all family representations
    bottom = closure(p, [], family)
    exact = exact and bottom.status == EXACT
    nodes.add(bottom.ideal)
    changed = True
    while changed:
        changed = False
        cur = _sort_nodes(nodes)
        for a in range(len(cur)):
            for b in range(a + 1, len(cur)):
                m = cur[a].meet(cur[b])
                if m not in nodes:
                    nodes.add(m)
                    changed = True
                j = closure(p, cur[a].sum(cur[b]), family)
                exact = exact and j.status == EXACT
                if j.ideal not in nodes:
                    nodes.add(j.ideal)
                    changed = True
    ordered = _sort_nodes(nodes)
    for n in ordered:
        n.closed = YES
    covers = _covers(ordered)
    meet_t, join_t = {}, {}
    for a in range(len(ordered)):
        for b in range(len(ordered)):
            m = ordered[a].meet(ordered[b])
            meet_t[a, b] = ordered.index(m)
            jn = closure(p, ordered[a].sum(ordered[b]), family).ideal
            join_t[a, b] = ordered.index(jn)
    expected = expected_lattice_size(p)
    complete = exact and expected is not None and expected == len(ordered)
    return ClosedIdealLattice(
        p,
        ordered,
        covers,
        COMPLETE if complete else POSSIBLY_INCOMPLETE,
        exact,
        name,
        fp,
        meet_t,
        join_t,
    )


def export_hasse(lattice: ClosedIdealLattice, name="closed_ideals") -> str:
    """DOT digraph of the covering relation (edges point upward)."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for k, node in enumerate(lattice.nodes):
        lines.append(f'  n{k} [label="dim {node.dim}\\n{node.key()}"];')
    for i, j in lattice.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------- lattice isomorphisms ----------

def is_lattice_isomorphism(src: ClosedIdealLattice, dst: ClosedIdealLattice, mapping) -> bool:
    """``mapping[i] = j`` is a bijection preserving and reflecting order."""
    n = len(src.nodes)
    if len(dst.nodes) != n or sorted(mapping) != list(range(n)):
        return False
    return all(src.leq(i, j) == dst.leq(mapping[i], mapping[j]) for i in range(n) for j in range(n))


def lattice_isomorphism(src: ClosedIdealLattice, dst: ClosedIdealLattice):
    """Some order isomorphism as a list ``mapping[i] = j``, or None."""
    n = len(src.nodes)
    if len(dst.nodes) != n:
        return None
    src_leq = [[src.leq(i, j) for j in range(n)] for i in range(n)]
    dst_leq = [[dst.leq(i, j) for j in range(n)] for i in range(n)]

    def sig(leq, i):
        return (sum(leq[k][i] for k in range(n)), sum(leq[i][k] for k in range(n)))

    ssig = [sig(src_leq, i) for i in range(n)]
    dsig = [sig(dst_leq, j) for j in range(n)]
    mapping = [None] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or dsig[j] != ssig[i]:
                continue
            if all(src_leq[i][k] == dst_leq[j][mapping[k]] and src_leq[k][i] == dst_leq[mapping[k]][j] for k in range(i)):
                mapping[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        mapping[i] = None
        return False

    return list(mapping) if extend(0) else None
