"""YAML workspaces: algebras, functionals, ideals, bimodules and a command list.

Every spec type has a ``*_to_spec`` / ``*_from_spec`` pair; specs are plain
dicts of strings, ints and lists so that a dump and reload is the identity.
Scalars are written as strings in the :func:`~staralg.scalars.format_scalar`
syntax.  Indices in ``products`` and ``star`` triples are 1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import yaml

from staralg.algebra import (
    Algebra,
    PresentationError,
    direct_sum,
    function_points,
    grassmann,
    matrix_algebra,
    matrix_over,
    quotient_by_star_ideal,
    zero_mult,
)
from staralg.gns import Representation
from staralg.ideals import StarIdeal, ideal_generated_by
from staralg.linalg import Subspace
from staralg.morita import InnerProductBimodule, projection_bimodule, std_bimodule
from staralg.positivity import FunctionalFamily, LinearFunctional, builtin_functional_family, is_positive_functional
from staralg.scalars import RINGS, ZERO, ScalarSyntaxError, format_scalar, parse_scalar

__all__ = [
    "WorkspaceError",
    "Workspace",
    "load_workspace",
    "parse_workspace",
    "dump_spec",
    "load_spec",
    "algebra_to_spec",
    "algebra_from_spec",
    "functional_to_spec",
    "functional_from_spec",
    "ideal_to_spec",
    "ideal_from_spec",
    "bimodule_to_spec",
    "bimodule_from_spec",
    "representation_to_spec",
    "representation_from_spec",
    "builtin_algebra",
]

SECTIONS = ("algebras", "functionals", "families", "ideals", "bimodules", "commands")


class WorkspaceError(ValueError):
    """Input error with an optional ``file:line`` location."""

    def __init__(self, msg, where=None):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


# ---------- scalars ----------

def _scalar(v, ring, where=None):
    if isinstance(v, bool) or isinstance(v, float):
        raise WorkspaceError(f"scalar {v!r} must be an integer or a quoted expression", where)
    try:
        return parse_scalar(v if isinstance(v, int) else str(v), ring)
    except (ScalarSyntaxError, ValueError, ZeroDivisionError) as exc:
        raise WorkspaceError(f"bad scalar {v!r} for ring {ring}: {exc}", where) from None


def _fmt_vec(v):
    return [format_scalar(x) for x in v]


def _fmt_mat(m):
    return [_fmt_vec(r) for r in m]


def _vec(values, ring, where=None, size=None):
    if not isinstance(values, list):
        raise WorkspaceError("expected a list of scalars", where)
    if size is not None and len(values) != size:
        raise WorkspaceError(f"expected {size} scalars, got {len(values)}", where)
    return tuple(_scalar(v, ring, where) for v in values)


def _mat(rows, ring, n, where=None):
    if not isinstance(rows, list) or len(rows) != n:
        raise WorkspaceError(f"expected a {n} x {n} matrix", where)
    return [_vec(r, ring, where, n) for r in rows]


# ---------- built-in names ----------

_BUILTIN = [
    (re.compile(r"grassmann(\d+)$"), grassmann),
    (re.compile(r"(?:fun|function_points)(\d+)$"), function_points),
    (re.compile(r"(?:matrix|m)(\d+)$"), matrix_algebra),
    (re.compile(r"(?:zero|zero_mult)(\d+)$"), zero_mult),
]
_BUILTIN_CACHE: dict = {}


def builtin_algebra(name: str):
    """Algebra for names like ``grassmann2``, ``fun3``, ``m2``, ``zero1``, ``c1``; else None."""
    if name in _BUILTIN_CACHE:
        return _BUILTIN_CACHE[name]
    alg = None
    if name == "c1":
        alg = matrix_algebra(1)
    else:
        for pat, ctor in _BUILTIN:
            m = pat.match(name)
            if m and int(m.group(1)) >= 1:
                alg = ctor(int(m.group(1)))
                break
    if alg is not None:
        alg.name = name
        _BUILTIN_CACHE[name] = alg
    return alg


# ---------- algebras ----------

def algebra_to_spec(p: Algebra, ring="ratfun") -> dict:
    """Explicit presentation: labels, sparse product and involution triples."""
    products = []
    for i in range(p.dim):
        for j in range(p.dim):
            for k, c in sorted(p.table[i][j]):
                products.append([i + 1, j + 1, k + 1, format_scalar(c)])
    star = []
    for i, col in enumerate(p.star_cols):
        for k, c in enumerate(col):
            if c:
                star.append([i + 1, k + 1, format_scalar(c)])
    return {"scalar_ring": ring, "dim": p.dim, "basis": list(p.labels), "products": products, "star": star}


def algebra_from_spec(spec: dict, ring="ratfun", name=None, where=None) -> Algebra:
    if not isinstance(spec, dict):
        raise WorkspaceError("algebra spec must be a mapping", where)
    ring = spec.get("scalar_ring", ring)
    if ring not in RINGS:
        raise WorkspaceError(f"unknown scalar ring {ring!r}", where)
    try:
        n = int(spec["dim"])
    except (KeyError, TypeError, ValueError):
        raise WorkspaceError("algebra spec needs an integer 'dim'", where) from None
    if n < 0:
        raise WorkspaceError("dimension must be nonnegative", where)
    labels = spec.get("basis")
    table = [[{} for _ in range(n)] for _ in range(n)]
    for t in spec.get("products", []):
        if not isinstance(t, list) or len(t) != 4:
            raise WorkspaceError(f"product entry {t!r} is not [i, j, k, value]", where)
        i, j, k = (_index(x, n, where) for x in t[:3])
        c = _scalar(t[3], ring, where)
        if c:
            table[i][j][k] = table[i][j].get(k, ZERO) + c
    cols = [[ZERO] * n for _ in range(n)]
    for t in spec.get("star", []):
        if not isinstance(t, list) or len(t) != 3:
            raise WorkspaceError(f"star entry {t!r} is not [i, k, value]", where)
        i, k = _index(t[0], n, where), _index(t[1], n, where)
        cols[i][k] = cols[i][k] + _scalar(t[2], ring, where)
    table = [[tuple(sorted((k, c) for k, c in cell.items() if c)) for cell in row] for row in table]
    try:
        return Algebra(table, cols, labels, name=name)
    except PresentationError as exc:
        raise WorkspaceError(str(exc), where) from None


def _index(x, n, where):
    if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= n:
        raise WorkspaceError(f"index {x!r} is not in 1..{n}", where)
    return x - 1


# ---------- functionals / ideals / representations ----------

def functional_to_spec(omega: LinearFunctional, algebra_ref: str) -> dict:
    out = {"algebra": algebra_ref, "values": _fmt_vec(omega.values)}
    if omega.name:
        out["name"] = omega.name
    return out


def functional_from_spec(spec, algebra: Algebra, ring="ratfun", where=None) -> LinearFunctional:
    vals = _vec(spec.get("values"), ring, where, algebra.dim)
    return LinearFunctional(algebra, vals, name=spec.get("name"))


def ideal_to_spec(ideal: StarIdeal, algebra_ref: str) -> dict:
    return {"algebra": algebra_ref, "basis": [_fmt_vec(r) for r in ideal.basis]}


def ideal_from_spec(spec, algebra: Algebra, ring="ratfun", where=None) -> StarIdeal:
    if "generators" in spec:
        gens = [_vec(g, ring, where, algebra.dim) for g in spec["generators"]]
        return ideal_generated_by(algebra, gens)
    rows = [_vec(r, ring, where, algebra.dim) for r in spec.get("basis", [])]
    try:
        return StarIdeal(algebra, Subspace(algebra.dim, rows))
    except ValueError as exc:
        raise WorkspaceError(f"not a *-ideal: {exc}", where) from None


def representation_to_spec(rep: Representation, algebra_ref: str) -> dict:
    return {
        "algebra": algebra_ref,
        "dim": rep.dim,
        "gram": _fmt_mat(rep.gram),
        "actions": [_fmt_mat(a) for a in rep.actions],
        "provenance": rep.provenance,
    }


def representation_from_spec(spec, algebra: Algebra, ring="ratfun", where=None) -> Representation:
    m = int(spec.get("dim", 0))
    gram = _mat(spec.get("gram", []), ring, m, where)
    actions = [_mat(a, ring, m, where) for a in spec.get("actions", [])]
    try:
        return Representation(algebra, gram, actions, provenance=spec.get("provenance", "custom"))
    except ValueError as exc:
        raise WorkspaceError(f"invalid representation: {exc}", where) from None


# ---------- bimodules ----------

def bimodule_to_spec(X: InnerProductBimodule, left_ref: str, right_ref: str) -> dict:
    out = {
        "left": left_ref,
        "right": right_ref,
        "dim": X.dim,
        "left_action": [_fmt_mat(m) for m in X.L],
        "right_action": [_fmt_mat(m) for m in X.R],
        "inner_A": [[_fmt_vec(v) for v in row] for row in X.ipA],
    }
    if X.ipB is not None:
        out["inner_B"] = [[_fmt_vec(v) for v in row] for row in X.ipB]
    return out


def bimodule_from_spec(spec, left: Algebra, right: Algebra, ring="ratfun", name="X", where=None):
    d = spec.get("dim")
    if not isinstance(d, int) or d < 0:
        raise WorkspaceError("bimodule needs a nonnegative integer 'dim'", where)
    L = [_mat(m, ring, d, where) for m in spec.get("left_action", [])]
    R = [_mat(m, ring, d, where) for m in spec.get("right_action", [])]

    def ip(key, alg):
        rows = spec.get(key)
        if rows is None:
            return None
        if not isinstance(rows, list) or len(rows) != d:
            raise WorkspaceError(f"'{key}' must be a {d} x {d} array of elements", where)
        return [[_vec(v, ring, where, alg.dim) for v in row] for row in rows]

    try:
        return InnerProductBimodule(left, right, d, L, R, ip("inner_A", right), ip("inner_B", left), name=name)
    except ValueError as exc:
        raise WorkspaceError(str(exc), where) from None


# ---------- YAML with line numbers ----------

def _line_map(node, path=(), out=None):
    out = {} if out is None else out
    if node is None:
        return out
    out[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            _line_map(v, path + (k.value,), out)
    elif isinstance(node, yaml.SequenceNode):
        for i, v in enumerate(node.value):
            _line_map(v, path + (i,), out)
    return out


def dump_spec(spec) -> str:
    return yaml.safe_dump(spec, sort_keys=True, allow_unicode=True, default_flow_style=None, width=100)


def load_spec(text: str):
    return yaml.safe_load(text)


@dataclass
class Workspace:
    """Resolved workspace; named objects are built lazily and cached."""

    raw: dict
    ring: str = "rat"
    filename: str = "<workspace>"
    lines: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict)

    def where(self, *path):
        while path and path not in self.lines:
            path = path[:-1]
        line = self.lines.get(path)
        return f"{self.filename}:{line}" if line else self.filename

    def section(self, name):
        sec = self.raw.get(name) or {}
        if name != "commands" and not isinstance(sec, dict):
            raise WorkspaceError(f"section '{name}' must be a mapping", self.where(name))
        return sec

    def _check_ring(self, spec, *path):
        r = spec.get("scalar_ring") if isinstance(spec, dict) else None
        if r is not None and r != self.ring:
            raise WorkspaceError(f"ring mismatch: object uses {r!r}, workspace uses {self.ring!r}", self.where(*path, "scalar_ring"))

    # --- algebras ---
    def algebra(self, ref: str) -> Algebra:
        key = ("algebra", ref)
        if key in self._cache:
            return self._cache[key]
        specs = self.section("algebras")
        if ref in specs:
            alg = self._build_algebra(ref, specs[ref])
        else:
            alg = builtin_algebra(ref)
            if alg is None:
                raise WorkspaceError(f"unresolved algebra reference {ref!r}", self.where())
        self._cache[key] = alg
        return alg

    def _build_algebra(self, ref, spec):
        where = self.where("algebras", ref)
        if not isinstance(spec, dict):
            raise WorkspaceError("algebra spec must be a mapping", where)
        self._check_ring(spec, "algebras", ref)
        if "standard" in spec:
            st = spec["standard"] or {}
            if not isinstance(st, dict):
                raise WorkspaceError("'standard' must be a mapping with 'kind' and 'params'", where)
            kind, params = st.get("kind"), list(st.get("params", []))
            try:
                if kind == "matrix_over":
                    alg = matrix_over(self.algebra(str(params[0])), int(params[1]))
                else:
                    ctor = {"matrix": matrix_algebra, "function_points": function_points, "grassmann": grassmann, "zero_mult": zero_mult}.get(kind)
                    if ctor is None:
                        raise WorkspaceError(f"unknown standard kind {kind!r}", where)
                    alg = ctor(*[int(x) for x in params])
            except (IndexError, TypeError, ValueError) as exc:
                if isinstance(exc, WorkspaceError):
                    raise
                raise WorkspaceError(f"bad standard parameters: {exc}", where) from None
        elif "direct_sum" in spec:
            parts = spec["direct_sum"]
            if not isinstance(parts, list) or len(parts) != 2:
                raise WorkspaceError("direct_sum needs exactly two algebra references", where)
            alg = direct_sum(self.algebra(parts[0]), self.algebra(parts[1]))
        elif "quotient" in spec:
            q = spec["quotient"] or {}
            parent = self.algebra(q.get("algebra"))
            ideal = self.ideal(q.get("ideal"))
            if ideal.parent is not parent:
                raise WorkspaceError("quotient ideal lives in a different algebra", where)
            alg, _ = quotient_by_star_ideal(parent, ideal.subspace)
        else:
            alg = algebra_from_spec(spec, self.ring, where=where)
        alg.name = ref
        return alg

    # --- functionals ---
    def functional(self, ref: str) -> LinearFunctional:
        key = ("functional", ref)
        if key in self._cache:
            return self._cache[key]
        specs = self.section("functionals")
        if ref in specs:
            spec = specs[ref]
            where = self.where("functionals", ref)
            if not isinstance(spec, dict) or "algebra" not in spec:
                raise WorkspaceError("functional spec needs 'algebra' and 'values'", where)
            self._check_ring(spec, "functionals", ref)
            om = functional_from_spec(spec, self.algebra(spec["algebra"]), self.ring, self.where("functionals", ref, "values"))
            om.name = om.name or ref
        elif ":" in ref:
            alg_ref, _, idx = ref.rpartition(":")
            fam = builtin_functional_family(self.algebra(alg_ref))
            if not idx.isdigit() or not 1 <= int(idx) <= len(fam):
                raise WorkspaceError(f"{alg_ref} has {len(fam)} built-in functionals; {idx!r} is not among 1..{len(fam)}", self.where())
            om = fam[int(idx) - 1]
        else:
            raise WorkspaceError(f"unresolved functional reference {ref!r}", self.where())
        self._cache[key] = om
        return om

    def family(self, ref: str | None, algebra: Algebra):
        """Named family on ``algebra``.

        ``None`` or ``builtin`` gives the built-in family, or for an explicitly
        presented algebra the positive functionals declared on it.
        """
        if ref in (None, "builtin"):
            fam = builtin_functional_family(algebra)
            if fam or algebra.kind is not None:
                return fam
            return self._declared_family(algebra)
        specs = self.section("families")
        if ref not in specs:
            raise WorkspaceError(f"unresolved family reference {ref!r}", self.where())
        spec = specs[ref] or {}
        members = spec.get("functionals", [])
        fam = FunctionalFamily(name=ref)
        for m in members:
            om = self.functional(m)
            if om.parent is not algebra:
                raise WorkspaceError(f"family {ref!r} member {m!r} is not a functional on {algebra.name}", self.where("families", ref))
            fam.append(om)
        return fam

    def _declared_family(self, algebra):
        """Positive functionals declared on an explicitly presented algebra."""
        fam = FunctionalFamily(name="declared")
        for name in sorted(self.section("functionals")):
            spec = self.section("functionals")[name]
            if isinstance(spec, dict) and spec.get("algebra") in self.section("algebras"):
                om = self.functional(name)
                if om.parent is algebra and is_positive_functional(om).is_psd:
                    fam.append(om)
        return fam

    # --- ideals ---
    def ideal(self, ref: str) -> StarIdeal:
        key = ("ideal", ref)
        if key in self._cache:
            return self._cache[key]
        specs = self.section("ideals")
        if ref not in specs:
            raise WorkspaceError(f"unresolved ideal reference {ref!r}", self.where())
        spec = specs[ref]
        where = self.where("ideals", ref)
        if not isinstance(spec, dict) or "algebra" not in spec:
            raise WorkspaceError("ideal spec needs 'algebra' and 'basis' or 'generators'", where)
        self._check_ring(spec, "ideals", ref)
        field_name = "generators" if "generators" in spec else "basis"
        out = ideal_from_spec(spec, self.algebra(spec["algebra"]), self.ring, self.where("ideals", ref, field_name))
        self._cache[key] = out
        return out

    # --- bimodules ---
    def bimodule(self, ref: str) -> InnerProductBimodule:
        key = ("bimodule", ref)
        if key in self._cache:
            return self._cache[key]
        specs = self.section("bimodules")
        m = re.match(r"std(\d+)$", ref)
        if ref in specs:
            X = self._build_bimodule(ref, specs[ref])
        elif m and int(m.group(1)) >= 1:
            X = std_bimodule(int(m.group(1)))
        else:
            raise WorkspaceError(f"unresolved bimodule reference {ref!r}", self.where())
        X.name = ref
        self._cache[key] = X
        return X

    def _build_bimodule(self, ref, spec):
        where = self.where("bimodules", ref)
        if not isinstance(spec, dict):
            raise WorkspaceError("bimodule spec must be a mapping", where)
        self._check_ring(spec, "bimodules", ref)
        if "standard" in spec:
            n = (spec["standard"] or {}).get("n")
            if not isinstance(n, int) or n < 1:
                raise WorkspaceError("standard bimodule needs a positive 'n'", where)
            return std_bimodule(n)
        if "projection" in spec:
            pr = spec["projection"] or {}
            base = self.algebra(pr.get("algebra"))
            N = pr.get("N")
            if not isinstance(N, int) or N < 1:
                raise WorkspaceError("projection needs a positive integer 'N'", where)
            Q = _vec(pr.get("Q"), self.ring, where, base.dim * N * N)
            try:
                return projection_bimodule(base, N, Q)
            except ValueError as exc:
                raise WorkspaceError(str(exc), where) from None
        return bimodule_from_spec(spec, self.algebra(spec.get("left")), self.algebra(spec.get("right")), self.ring, ref, where)

    def commands(self):
        cmds = self.raw.get("commands") or []
        if not isinstance(cmds, list) or not all(isinstance(c, str) for c in cmds):
            raise WorkspaceError("'commands' must be a list of strings", self.where("commands"))
        return cmds


def parse_workspace(text: str, filename="<workspace>", ring=None) -> Workspace:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{filename}:{mark.line + 1}" if mark else filename
        raise WorkspaceError(f"YAML syntax error: {getattr(exc, 'problem', exc)}", where) from None
    raw = raw or {}
    if not isinstance(raw, dict):
        raise WorkspaceError("workspace must be a mapping", f"{filename}:1")
    lines = _line_map(node)
    unknown = sorted(set(raw) - set(SECTIONS) - {"scalar_ring", "version"})
    if unknown:
        raise WorkspaceError(f"unknown top-level key {unknown[0]!r}", f"{filename}:{lines.get((unknown[0],), 1)}")
    declared = raw.get("scalar_ring")
    if declared is not None and declared not in RINGS:
        raise WorkspaceError(f"unknown scalar ring {declared!r}", f"{filename}:{lines.get(('scalar_ring',), 1)}")
    if declared and ring and declared != ring:
        raise WorkspaceError(f"ring mismatch: workspace declares {declared!r} but --ring {ring!r} was given", f"{filename}:{lines.get(('scalar_ring',), 1)}")
    return Workspace(raw, ring or declared or "rat", filename, lines)


def load_workspace(path, ring=None) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read(), str(path), ring)
