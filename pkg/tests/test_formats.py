from __future__ import annotations

import pytest

from vasreach.formats import (FormatError, format_mrgs, format_semilinear, format_system, parse_config,
                              parse_endpoint, parse_linear, parse_mrgs, parse_semilinear, parse_system)
from vasreach.semilinear import LinearSet
from vasreach.vas import TOP


def test_system_round_trips(fixtures):
    for name in ("fig1.vas", "hp79.vass"):
        sys = parse_system((fixtures / name).read_text())
        assert parse_system(format_system(sys)) == sys


def test_hp79_fixture(hp79):
    assert hp79.states == ("p", "q")
    assert [hp79.vas.delta(t.action) for t in hp79.transitions] == [(-1, 1, 0), (0, 0, 0), (2, -1, 0), (0, 0, 1)]


@pytest.mark.parametrize("name", ["fig1_trivial.mrgs", "fig1_top.mrgs", "dec_top.mrgs", "inc_pinned_out.mrgs",
                                  "parity.mrgs", "b_only.mrgs", "two_block.mrgs"])
def test_mrgs_round_trips(fixtures, name):
    U = parse_mrgs((fixtures / name).read_text())
    assert parse_mrgs(format_mrgs(U)) == U


def test_configs_and_endpoints(hp79):
    assert parse_config("(0, 2)") == (0, 2)
    assert parse_config("T,3", allow_top=True) == (TOP, 3)
    with pytest.raises(FormatError):
        parse_config("T,3")
    with pytest.raises(FormatError):
        parse_config("-1,3")
    assert parse_endpoint("q:1,2,3", hp79) == ("q", (1, 2, 3))
    with pytest.raises(FormatError):
        parse_endpoint("1,2,3", hp79)


def test_linear_syntax():
    L = parse_linear("base (0,0) periods {(1,0),(1,1)}")
    assert L == LinearSet((0, 0), [(1, 0), (1, 1)])
    assert parse_linear("base (8, 2) periods {}") == LinearSet((8, 2))
    with pytest.raises(FormatError):
        parse_linear("base (0,0) periods (1,0)")
    S = parse_semilinear("base (0,0) periods {(1,1)} | base (1,0) periods {}")
    assert parse_semilinear(format_semilinear(S)) == S
    assert parse_semilinear("empty 2").ambient == 2


@pytest.mark.parametrize("text, line", [
    ("vas\ndim 2\naction a 1\n", 3),
    ("vas\ndim 2\naction a 1 1\naction a 0 0\n", 4),
    ("vass\ndim 1\nstates p\ntrans t p r 1\n", 4),
    ("vass\ndim 1\nstates p\ntrans t p p 1\ntrans t p p 2\n", 5),
    ("vas\ndim x\n", 2),
    ("dim 2\n", 1),
])
def test_malformed_systems(text, line):
    with pytest.raises(FormatError) as err:
        parse_system(text)
    assert err.value.line == line


def test_malformed_mrgs():
    good = "mrgs\ndim 1\naction u 1\ngraph 0\nnode t T\nedge t u t\ninput m=0 x=t\noutput x'=t m'=T\n"
    parse_mrgs(good)
    with pytest.raises(FormatError):
        parse_mrgs(good.replace("edge t u t", "edge t u s"))         # unknown node
    with pytest.raises(FormatError):
        parse_mrgs(good.replace("node t T", "node t 0"))           # u is not a step on 0
    with pytest.raises(FormatError):
        parse_mrgs(good + "join u\n")
    with pytest.raises(FormatError):
        two = "mrgs\ndim 1\naction u 1\ngraph 0\nnode a T\nnode b T\nedge a u b\ninput m=T x=a\noutput x'=b m'=T\n"
        parse_mrgs(two)                                            # not strongly connected
    with pytest.raises(FormatError):
        parse_mrgs(good.replace("input m=0 x=t\n", ""))
