"""Command-line entry point: ``staralg [options] <command> [args...]``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from staralg import __version__
from staralg.commands import COMMANDS, INPUT_ERROR, combined_exit, render_text, run, run_all, serialize_report
from staralg.scalars import RINGS
from staralg.workspace import WorkspaceError, load_workspace, parse_workspace

_EPILOG = """\
commands:
  validate [algebra...]              check presentations, functionals, ideals, bimodules
  gns <functional>                   GNS representation, kernel, degeneracy
  jmin <algebra>                     certified sandwich for the minimal closed ideal
  closure <ideal>                    closure of a *-ideal
  lattice <algebra>                  closed-ideal lattice (use --dot for a Hasse diagram)
  induce <bimodule> <functional>     Rieffel induction of a GNS representation
  phi <bimodule> <ideal>             ideal transport through a bimodule
  morita-verify <bimodule>           equivalence-bimodule verification
  diff-invariants <algebra> <algebra>
  run                                execute the workspace command list

built-in names: grassmannN, funN, matrixN (mN), zeroN, c1, stdN;
functional n of the built-in family of an algebra: <algebra>:<n>.
exit status: 0 computed, 1 refutation found, 2 input error, 3 inconclusive.
"""


def build_parser():
    ap = argparse.ArgumentParser(
        prog="staralg",
        description="Exact workbench for finite-dimensional *-algebras.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("command", choices=sorted(COMMANDS) + ["run"])
    ap.add_argument("args", nargs="*")
    ap.add_argument("-w", "--workspace", help="YAML workspace file")
    ap.add_argument("--ring", choices=RINGS, help="scalar ring for parsing workspace values")
    ap.add_argument("--family", help="functional family name (default: builtin)")
    ap.add_argument("--dot", help="write the Hasse diagram of a lattice command to this path")
    ap.add_argument("--json", help="write the structured report to this path")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized probes")
    ap.add_argument("--version", action="version", version=f"staralg {__version__}")
    return ap


def _write_dots(reports):
    for r in reports:
        path = r.result.get("dot_path")
        if path and r.dot is not None:
            Path(path).write_text(r.dot, encoding="utf-8")


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_intermixed_args(argv)
    opts = {"seed": ns.seed}
    if ns.family:
        opts["family"] = ns.family
    if ns.dot:
        opts["dot"] = ns.dot
    args = list(ns.args)
    try:
        ws_path = ns.workspace
        if ns.command == "run" and ws_path is None:
            if len(args) != 1:
                raise WorkspaceError("usage: run <workspace.yaml>")
            ws_path = args.pop()
        ws = load_workspace(ws_path, ns.ring) if ws_path else parse_workspace("", ring=ns.ring)
        if ns.command == "run":
            reports = run_all(ws, **opts)
            code = combined_exit(r.exit_code for r in reports)
        else:
            reports = [run([ns.command, *args], ws, **opts)]
            code = reports[0].exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except WorkspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    _write_dots(reports)
    payload = reports if ns.command == "run" else reports[0]
    sys.stdout.write(render_text(payload))
    if ns.json:
        Path(ns.json).write_text(serialize_report(payload), encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
