import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import BUILTINS, gauss_rats
from staralg.algebra import function_points, grassmann, matrix_algebra
from staralg.gns import gns_construct
from staralg.ideals import ideal_generated_by
from staralg.morita import projection_bimodule, std_bimodule
from staralg.positivity import LinearFunctional, builtin_functional_family
from staralg.scalars import Complex
from staralg.workspace import (
    WorkspaceError,
    algebra_from_spec,
    algebra_to_spec,
    bimodule_from_spec,
    bimodule_to_spec,
    builtin_algebra,
    dump_spec,
    functional_from_spec,
    functional_to_spec,
    ideal_from_spec,
    ideal_to_spec,
    load_spec,
    parse_workspace,
    representation_from_spec,
    representation_to_spec,
)


def through_text(spec):
    return load_spec(dump_spec(spec))


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_algebra_round_trip(name):
    p = BUILTINS[name]
    q = algebra_from_spec(through_text(algebra_to_spec(p)))
    assert q.dim == p.dim and q.table == p.table and q.star_cols == p.star_cols
    assert algebra_to_spec(q) == algebra_to_spec(p)


@given(st.lists(gauss_rats, min_size=4, max_size=4))
def test_functional_round_trip(vals):
    m = matrix_algebra(2)
    om = LinearFunctional(m, vals, name="w")
    back = functional_from_spec(through_text(functional_to_spec(om, "m2")), m)
    assert back.values == om.values and back.name == "w"


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=3))
def test_ideal_round_trip(gens):
    g = grassmann(2)
    ideal = ideal_generated_by(g, [tuple(Complex(x) for x in v) for v in gens])
    back = ideal_from_spec(through_text(ideal_to_spec(ideal, "grassmann2")), g)
    assert back == ideal


def test_ideal_from_generators():
    g = grassmann(2)
    ideal = ideal_from_spec({"generators": [[0, 1, 0, 0]]}, g)
    assert ideal.dim == 2


@pytest.mark.parametrize("name", ["matrix2", "grassmann2", "fun3", "m2+g1"])
def test_representation_round_trip(name):
    p = BUILTINS[name]
    for om in list(builtin_functional_family(p))[:3]:
        rep = gns_construct(om)
        back = representation_from_spec(through_text(representation_to_spec(rep, name)), p)
        assert back.gram == rep.gram and back.actions == rep.actions


@pytest.mark.parametrize(
    "X",
    [std_bimodule(2), projection_bimodule(function_points(2), 2, [Complex(x) for x in (1, 1, 0, 0, 0, 0, 0, 1)])],
    ids=["std2", "proj"],
)
def test_bimodule_round_trip(X):
    back = bimodule_from_spec(through_text(bimodule_to_spec(X, "B", "A")), X.left, X.right)
    assert (back.L, back.R, back.ipA, back.ipB) == (X.L, X.R, X.ipA, X.ipB)


def test_builtin_names():
    assert builtin_algebra("grassmann2").dim == 4
    assert builtin_algebra("function_points3").dim == 3
    assert builtin_algebra("m2").dim == builtin_algebra("matrix2").dim == 4
    assert builtin_algebra("zero_mult2").dim == 2
    assert builtin_algebra("c1").dim == 1
    assert builtin_algebra("m0") is None and builtin_algebra("banana") is None
    assert builtin_algebra("fun3") is builtin_algebra("fun3")


WS = """\
scalar_ring: rat
algebras:
  sq:
    standard: {kind: grassmann, params: [1]}
functionals:
  bad:
    algebra: sq
    values: [1, 2, 3]
ideals:
  top:
    algebra: grassmann2
    generators:
      - [0, 1, 0, 0]
commands:
  - jmin sq
"""


def test_file_line_diagnostics():
    ws = parse_workspace(WS, "ws.yaml")
    assert ws.algebra("sq").dim == 2
    assert ws.ideal("top").dim == 2
    with pytest.raises(WorkspaceError) as exc:
        ws.functional("bad")
    assert str(exc.value).startswith("ws.yaml:8:")
    with pytest.raises(WorkspaceError):
        ws.algebra("nowhere")


def test_yaml_errors_have_locations():
    with pytest.raises(WorkspaceError) as exc:
        parse_workspace("algebras:\n  a: [1, 2\n", "bad.yaml")
    assert str(exc.value).startswith("bad.yaml:")
    with pytest.raises(WorkspaceError) as exc:
        parse_workspace("scalar_ring: rat\nalgebra: {}\n", "typo.yaml")
    assert str(exc.value).startswith("typo.yaml:2:")


def test_ring_mismatch():
    with pytest.raises(WorkspaceError, match="ring mismatch"):
        parse_workspace("scalar_ring: ratfun\n", "r.yaml", ring="rat")
    assert parse_workspace("scalar_ring: ratfun\n", ring="ratfun").ring == "ratfun"
    with pytest.raises(WorkspaceError):
        parse_workspace("scalar_ring: reals\n")


def test_ring_limits_scalars():
    text = "scalar_ring: int\nfunctionals:\n  half:\n    algebra: c1\n    values: ['1/2']\n"
    with pytest.raises(WorkspaceError):
        parse_workspace(text).functional("half")
    ok = parse_workspace(text.replace("int", "rat")).functional("half")
    assert ok.values[0] == Complex(1) / 2


def test_functional_refs():
    ws = parse_workspace("")
    om = ws.functional("fun3:2")
    assert om.values == (Complex(0), Complex(1), Complex(0))
    with pytest.raises(WorkspaceError):
        ws.functional("fun3:9")
