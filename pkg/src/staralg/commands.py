"""Command dispatch and report serialization for the batch front-end."""
from __future__ import annotations

import json
import random
import shlex
from dataclasses import dataclass, field

from staralg import __version__
from staralg.algebra import validate_presentation
from staralg.gns import degeneracy_status, gns_construct, kernel_of
from staralg.ideals import (
    COMPLETE,
    EXACT,
    YES,
    FamilyError,
    closure,
    enumerate_closed_lattice,
    export_hasse,
    is_closed,
    jmin,
)
from staralg.linalg import Subspace
from staralg.morita import (
    REFUTED,
    VERIFIED,
    InductionError,
    diff_invariants,
    phi_map,
    rieffel_induce,
    validate_bimodule,
    verify_equivalence,
)
from staralg.positivity import conjugated_functional, gelfand_ideal, is_positive_functional
from staralg.scalars import Complex, format_scalar
from staralg.workspace import Workspace, WorkspaceError, parse_workspace, representation_to_spec

__all__ = ["Report", "run", "run_all", "serialize_report", "render_text", "COMMANDS"]

OK, REFUTATION, INPUT_ERROR, UNDECIDED = 0, 1, 2, 3


@dataclass
class Report:
    command: str
    exit_code: int = OK
    outcome: str = "computed"
    result: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    dot: str | None = None

    def to_dict(self):
        return {
            "version": __version__,
            "command": self.command,
            "exit_code": self.exit_code,
            "outcome": self.outcome,
            "result": self.result,
        }


def serialize_report(r) -> str:
    """Stable JSON: sorted keys, canonical bases, version stamp."""
    if isinstance(r, list):
        payload = {"version": __version__, "reports": [x.to_dict() for x in r]}
    else:
        payload = r.to_dict()
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(r) -> str:
    reports = r if isinstance(r, list) else [r]
    out = []
    for rep in reports:
        out.append(f"# staralg {__version__} :: {rep.command}")
        out.extend(rep.lines)
        out.append(f"outcome: {rep.outcome} (exit {rep.exit_code})")
    return "\n".join(out) + "\n"


def _vec(v):
    return [format_scalar(x) for x in v]


def _basis(sub):
    rows = sub.rows if isinstance(sub, Subspace) else sub.basis
    return [_vec(r) for r in rows]


def _fmt_basis(alg, sub):
    rows = sub.rows if isinstance(sub, Subspace) else sub.basis
    return "{" + ", ".join(alg.format(r) for r in rows) + "}" if rows else "{0}"


def _family_info(fam):
    return {"name": getattr(fam, "name", "custom"), "fingerprint": getattr(fam, "fingerprint", ""), "size": len(fam)}


def _side_family(ws, opts, alg):
    """The requested family where it lives on ``alg``, the built-in one elsewhere."""
    try:
        return ws.family(opts.get("family"), alg)
    except WorkspaceError:
        return ws.family(None, alg)


def _need(args, n, usage):
    if len(args) != n:
        raise WorkspaceError(f"usage: {usage}")


# ---------- commands ----------

def _cmd_validate(ws: Workspace, args, opts):
    rep = Report("validate")
    names = list(args) or sorted(ws.section("algebras"))
    bad = []
    for name in names:
        v = validate_presentation(ws.algebra(name))
        rep.result.setdefault("algebras", {})[name] = v.to_dict()
        rep.lines.append(f"algebra {name}: {'valid' if v.valid else 'INVALID'}")
        for axiom, wit, detail in v.violations:
            rep.lines.append(f"  violation {axiom} at {list(wit)}: {detail}")
        if not v.valid:
            bad.append(name)
    if not args:
        for name in sorted(ws.section("functionals")):
            verdict = is_positive_functional(ws.functional(name))
            rep.result.setdefault("functionals", {})[name] = verdict.to_dict()
            rep.lines.append(f"functional {name}: {'positive' if verdict.is_psd else 'NOT positive'}")
            if not verdict.is_psd:
                rep.lines.append(f"  witness {_vec(verdict.witness)} with omega(A*A) = {format_scalar(verdict.value)}")
                bad.append(name)
        for name in sorted(ws.section("ideals")):
            ideal = ws.ideal(name)
            rep.result.setdefault("ideals", {})[name] = {"dim": ideal.dim, "basis": _basis(ideal)}
            rep.lines.append(f"ideal {name}: *-ideal of dim {ideal.dim}")
        for name in sorted(ws.section("bimodules")):
            v = validate_bimodule(ws.bimodule(name))
            rep.result.setdefault("bimodules", {})[name] = v.to_dict()
            rep.lines.append(f"bimodule {name}: {'valid' if v.axioms_ok else 'INVALID'}")
            for c in v.failures:
                rep.lines.append(f"  violation {c['axiom']} at {c['witness']}")
            if not v.axioms_ok:
                bad.append(name)
    if bad:
        rep.exit_code, rep.outcome = REFUTATION, "refuted"
    return rep


def _cmd_gns(ws: Workspace, args, opts):
    _need(args, 1, "gns <functional>")
    om = ws.functional(args[0])
    p = om.parent
    rep = Report(f"gns {args[0]}")
    verdict = is_positive_functional(om)
    if not verdict.is_psd:
        rep.exit_code, rep.outcome = REFUTATION, "refuted"
        rep.result = {"positive": False, "witness": _vec(verdict.witness), "value": format_scalar(verdict.value)}
        rep.lines.append(f"{args[0]} is not positive: omega(A*A) = {format_scalar(verdict.value)} for A = {p.format(verdict.witness)}")
        return rep
    pi = gns_construct(om)
    ker = kernel_of(pi)
    status, _ = degeneracy_status(pi)
    jw = gelfand_ideal(om)
    rng = random.Random(opts.get("seed", 0))
    probes = [p.basis_vector(i) for i in range(p.dim)]
    probes += [tuple(Complex(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(p.dim)) for _ in range(10)]
    inter = Subspace.full(p.dim)
    for b in probes:
        inter = inter & gelfand_ideal(conjugated_functional(om, b))
    rep.result = {
        "algebra": p.name,
        "positive": True,
        "dim": pi.dim,
        "degeneracy": status,
        "kernel": _basis(ker),
        "gelfand_ideal": _basis(jw),
        "kernel_equals_conjugated_intersection": inter == ker.subspace,
        "probes": len(probes),
        "representation": representation_to_spec(pi, p.name),
    }
    rep.lines += [
        f"algebra: {p.name}",
        f"GNS dimension: {pi.dim}",
        f"degeneracy: {status}",
        f"kernel: {_fmt_basis(p, ker)}",
        f"Gelfand ideal: {_fmt_basis(p, jw)}",
        f"kernel = intersection of conjugated Gelfand ideals ({len(probes)} probes): {inter == ker.subspace}",
    ]
    return rep


def _sandwich_dict(s, p):
    return {
        "status": s.status,
        "lower": _basis(s.lower),
        "upper": _basis(s.upper),
        "lower_dim": s.lower.dim,
        "upper_dim": s.upper.dim,
        "family": s.family_name,
        "fingerprint": s.fingerprint,
    }


def _cmd_jmin(ws: Workspace, args, opts):
    _need(args, 1, "jmin <algebra>")
    p = ws.algebra(args[0])
    fam = ws.family(opts.get("family"), p)
    s = jmin(p, fam)
    rep = Report(f"jmin {args[0]}", result={"algebra": p.name, **_sandwich_dict(s, p)})
    rep.lines += [
        f"algebra: {p.name} (dim {p.dim})",
        f"status: {s.status}",
        f"family: {s.family_name} [{s.fingerprint}]",
    ]
    if s.status == EXACT:
        rep.lines.append(f"J_min (dim {s.upper.dim}): {_fmt_basis(p, s.upper)}")
    else:
        rep.lines.append(f"lower (dim {s.lower.dim}): {_fmt_basis(p, s.lower)}")
        rep.lines.append(f"upper (dim {s.upper.dim}): {_fmt_basis(p, s.upper)}")
        rep.exit_code, rep.outcome = UNDECIDED, "gap"
    return rep


def _cmd_closure(ws: Workspace, args, opts):
    _need(args, 1, "closure <ideal>")
    ideal = ws.ideal(args[0])
    p = ideal.parent
    fam = ws.family(opts.get("family"), p)
    c = closure(p, ideal, fam)
    closed = is_closed(p, ideal, fam)
    rep = Report(f"closure {args[0]}")
    rep.result = {
        "algebra": p.name,
        "ideal": _basis(ideal),
        "closure": _basis(c.ideal),
        "closure_lower": _basis(c.lower),
        "status": c.status,
        "is_closed": closed,
        "family": _family_info(fam),
    }
    rep.lines += [
        f"ideal: {_fmt_basis(p, ideal)}",
        f"closure (dim {c.ideal.dim}): {_fmt_basis(p, c.ideal)}",
        f"status: {c.status}",
        f"closed: {closed}",
    ]
    if c.status != EXACT:
        rep.lines.append(f"certified lower bound: {_fmt_basis(p, c.lower)}")
        if closed != YES:
            rep.exit_code, rep.outcome = UNDECIDED, "gap"
    return rep


def _cmd_lattice(ws: Workspace, args, opts):
    _need(args, 1, "lattice <algebra>")
    p = ws.algebra(args[0])
    fam = ws.family(opts.get("family"), p)
    lat = enumerate_closed_lattice(p, fam)
    rep = Report(f"lattice {args[0]}")
    rep.result = {
        "algebra": p.name,
        "size": len(lat),
        "completeness": lat.completeness,
        "nodes": [{"dim": n.dim, "key": n.key(), "basis": _basis(n)} for n in lat.nodes],
        "covers": [list(c) for c in lat.covers],
        "family": {"name": lat.family_name, "fingerprint": lat.fingerprint},
    }
    rep.lines.append(f"algebra: {p.name}, {len(lat)} closed ideals, {lat.completeness}")
    for k, n in enumerate(lat.nodes):
        rep.lines.append(f"  [{k}] dim {n.dim} {n.key()}: {_fmt_basis(p, n)}")
    rep.lines.append("covers: " + ", ".join(f"{a}<{b}" for a, b in lat.covers))
    rep.dot = export_hasse(lat, name=p.name)
    if lat.completeness != COMPLETE:
        rep.exit_code, rep.outcome = UNDECIDED, "possibly incomplete"
    return rep


def _cmd_induce(ws: Workspace, args, opts):
    _need(args, 2, "induce <bimodule> <functional>")
    X = ws.bimodule(args[0])
    om = ws.functional(args[1])
    rep = Report(f"induce {args[0]} {args[1]}")
    pi = gns_construct(om)
    try:
        ind = rieffel_induce(X, pi)
    except InductionError as exc:
        rep.exit_code, rep.outcome = REFUTATION, "refuted"
        rep.result = {"induced": False, "witness": _vec(exc.witness), "value": format_scalar(exc.value)}
        rep.lines.append(f"induced inner product is indefinite: value {format_scalar(exc.value)} at {_vec(exc.witness)}")
        return rep
    ker = kernel_of(ind)
    rep.result = {
        "bimodule": X.name,
        "source_dim": pi.dim,
        "induced_dim": ind.dim,
        "kernel": _basis(ker),
        "representation": representation_to_spec(ind, X.left.name),
    }
    rep.lines += [
        f"bimodule: {X.name} ({X.left.name} | {X.right.name})",
        f"source representation: GNS({args[1]}), dim {pi.dim}",
        f"induced dimension: {ind.dim}",
        f"kernel of induced representation: {_fmt_basis(X.left, ker)}",
    ]
    return rep


def _cmd_phi(ws: Workspace, args, opts):
    _need(args, 2, "phi <bimodule> <ideal>")
    X = ws.bimodule(args[0])
    ideal = ws.ideal(args[1])
    if ideal.parent is not X.right:
        raise WorkspaceError(f"ideal {args[1]} does not live in the right algebra of {args[0]}")
    img = phi_map(X, ideal)
    rep = Report(f"phi {args[0]} {args[1]}")
    rep.result = {"bimodule": X.name, "ideal": _basis(ideal), "image": _basis(img), "image_dim": img.dim}
    rep.lines += [
        f"I = {_fmt_basis(X.right, ideal)}",
        f"Phi(I) (dim {img.dim}) = {_fmt_basis(X.left, img)}",
    ]
    return rep


def _cmd_morita_verify(ws: Workspace, args, opts):
    _need(args, 1, "morita-verify <bimodule>")
    X = ws.bimodule(args[0])
    r = verify_equivalence(X, _side_family(ws, opts, X.right), _side_family(ws, opts, X.left))
    d = r.to_dict()
    if d.get("invariant"):
        d["invariant"] = {k: v for k, v in d["invariant"].items() if k != "sandwiches"}
    rep = Report(f"morita-verify {args[0]}", result=d)
    rep.lines.append(f"bimodule: {X.name} ({X.left.name} | {X.right.name}), dim {X.dim}")
    rep.lines.append(f"full: A {r.full_a}, B {r.full_b}")
    if r.structural:
        rep.lines.append(f"positivity: structural certificate ({r.structural['pattern']})")
    elif r.positivity:
        rep.lines.append(f"positivity: {len(r.positivity)} representation checks (family-relative)")
    if r.overall == REFUTED:
        rep.lines.append(f"Refuted: {r.refuted_axiom} witness {r.witness}")
        rep.exit_code, rep.outcome = REFUTATION, "refuted"
    elif r.overall == VERIFIED:
        rep.lines.append("Verified")
    else:
        rep.lines.append("Inconclusive")
        rep.exit_code, rep.outcome = UNDECIDED, "inconclusive"
    return rep


def _yn(x):
    return "unknown" if x is None else ("yes" if x else "no")


def _cmd_diff(ws: Workspace, args, opts):
    _need(args, 2, "diff-invariants <algebraA> <algebraB>")
    A, B = ws.algebra(args[0]), ws.algebra(args[1])
    res = diff_invariants(A, B, _side_family(ws, opts, A), _side_family(ws, opts, B))
    inv = res["jmin"]
    sa, sb = inv["sandwiches"]
    la, lb = res["lattices"]
    ta, tb = inv["jmin_trivial"]
    rep = Report(f"diff-invariants {args[0]} {args[1]}")
    rep.result = {
        "algebras": [A.name, B.name],
        "jmin": [_sandwich_dict(sa, A), _sandwich_dict(sb, B)],
        "jmin_trivial": [ta, tb],
        "invariant_applicable": inv["applicable"],
        "lattice_sizes": [len(la), len(lb)],
        "lattice_completeness": [la.completeness, lb.completeness],
        "lattice_isomorphic": res["lattice_isomorphic"],
        "reasons": res["reasons"],
        "verdict": res["verdict"],
    }
    if inv["witness"]:
        rep.result["witness"] = inv["witness"]
    if "jmin-triviality" not in res["reasons"]:
        rep.lines.append(f"J_min trivial: {_yn(ta)} vs {_yn(tb)}")
    rep.lines.append(f"closed-ideal lattices: {len(la)} ({la.completeness}) vs {len(lb)} ({lb.completeness}), isomorphic: {_yn(res['lattice_isomorphic'])}")
    if res["reasons"]:
        rep.lines.append(f"J_min trivial: {_yn(ta)} vs {_yn(tb)} ⇒ not formally Morita equivalent" if "jmin-triviality" in res["reasons"] else "lattice sizes differ ⇒ not formally Morita equivalent")
        rep.exit_code, rep.outcome = REFUTATION, "refuted"
    elif res["verdict"] == "invariants agree":
        rep.lines.append("no certified invariant distinguishes them")
    else:
        rep.lines.append("inconclusive: some invariant is only bounded")
        rep.exit_code, rep.outcome = UNDECIDED, "inconclusive"
    return rep


COMMANDS = {
    "validate": _cmd_validate,
    "gns": _cmd_gns,
    "jmin": _cmd_jmin,
    "closure": _cmd_closure,
    "lattice": _cmd_lattice,
    "induce": _cmd_induce,
    "phi": _cmd_phi,
    "morita-verify": _cmd_morita_verify,
    "diff-invariants": _cmd_diff,
}


def run(command, workspace: Workspace | None = None, **opts) -> Report:
    """Execute one command line (string or token list) against a workspace."""
    ws = workspace if workspace is not None else parse_workspace("")
    tokens = shlex.split(command) if isinstance(command, str) else list(command)
    if not tokens:
        raise WorkspaceError("empty command")
    name, args = tokens[0], tokens[1:]
    # per-command flags written inside a workspace command list
    rest = []
    it = iter(args)
    for a in it:
        if a in ("--family", "--dot", "--seed"):
            val = next(it, None)
            if val is None:
                raise WorkspaceError(f"{a} needs a value")
            opts[a[2:]] = int(val) if a == "--seed" else val
        else:
            rest.append(a)
    fn = COMMANDS.get(name)
    if fn is None:
        raise WorkspaceError(f"unknown command {name!r}; expected one of {', '.join(sorted(COMMANDS))}")
    try:
        rep = fn(ws, rest, opts)
    except FamilyError as exc:
        raise WorkspaceError(str(exc)) from None
    if opts.get("dot") and rep.dot is not None:
        rep.result["dot_path"] = opts["dot"]
    return rep


_SEVERITY = {OK: 0, UNDECIDED: 1, REFUTATION: 2, INPUT_ERROR: 3}


def combined_exit(codes) -> int:
    return max(codes, key=lambda c: _SEVERITY[c], default=OK)


def run_all(workspace: Workspace, **opts):
    """Run the workspace command list in order; input errors become reports."""
    out = []
    for cmd in workspace.commands():
        try:
            out.append(run(cmd, workspace, **dict(opts)))
        except WorkspaceError as exc:
            out.append(Report(cmd, INPUT_ERROR, "input error", {"error": str(exc)}, [f"error: {exc}"]))
    return out
