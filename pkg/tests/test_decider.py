from __future__ import annotations

import pytest

from vasreach.decider import (BudgetExhausted, DeciderConfig, Reachable, Unreachable, decide_reach,
                              template_invariant_search)
from vasreach.invariant import Valid, check_certificate
from vasreach.presburger import Le, format_formula
from vasreach.vas import UsageError, VasSystem, run, run_path


def test_reachable_example(fig1):
    v = decide_reach(fig1, (0, 2), (1, 0))
    assert isinstance(v, Reachable) and len(v.word) == 7
    assert run((0, 2), v.word, fig1) == (1, 0)


def test_unreachable_with_templates(fig1):
    v = decide_reach(fig1, (0, 2), (0, 3), DeciderConfig(templates=True))
    assert isinstance(v, Unreachable) and v.via == "template"
    assert v.certificate.formula == Le((-1, 1), 2)
    assert isinstance(check_certificate(v.certificate), Valid)


def test_unreachable_by_enumeration(fig1):
    v = decide_reach(fig1, (0, 2), (0, 3), DeciderConfig(templates=False, step_budget=200))
    assert isinstance(v, Unreachable) and v.via == "enumeration"
    assert isinstance(check_certificate(v.certificate), Valid)


def test_reflexive(fig1, hp79):
    assert decide_reach(fig1, (3, 3), (3, 3)) == Reachable((), (), 0, 0)
    v = decide_reach(hp79, ("q", (1, 1, 1)), ("q", (1, 1, 1)))
    assert isinstance(v, Reachable) and v.word == () and v.round == 0


def test_vass_reachable(hp79):
    v = decide_reach(hp79, ("p", (1, 0, 0)), ("p", (0, 2, 1)))
    assert isinstance(v, Reachable)
    assert run_path(hp79, ("p", (1, 0, 0)), v.path) == ("p", (0, 2, 1))


def test_vass_unreachable(hp79):
    v = decide_reach(hp79, ("p", (1, 0, 0)), ("q", (0, 0, 0)))
    assert isinstance(v, Unreachable)
    assert isinstance(check_certificate(v.certificate), Valid)


def test_budget_exhausted(fig1):
    v = decide_reach(fig1, (0, 2), (0, 3), DeciderConfig(max_rounds=2, step_budget=5, templates=False))
    assert isinstance(v, BudgetExhausted) and v.rounds == 2 and v.expanded == 10


def test_deterministic(fig1):
    cfg = DeciderConfig(templates=False, step_budget=50, formula_budget=40)
    a = decide_reach(fig1, (0, 2), (0, 3), cfg)
    b = decide_reach(fig1, (0, 2), (0, 3), cfg)
    assert format_formula(a.certificate.formula) == format_formula(b.certificate.formula)
    assert a.round == b.round


def test_template_examples(fig1, hp79):
    cert = template_invariant_search(fig1, (0, 2), (0, 3), 3)
    assert format_formula(cert.formula) == "-x1 + x2 <= 2"
    assert template_invariant_search(hp79, ("p", (1, 0, 0)), ("p", (1, 1, 0)), 3) is None
    assert template_invariant_search(fig1, (2, 2), (2, 2), 3) is None


def test_exclusivity_on_small_instances(fig1):
    # no pair gets a witness under one budget and a certificate under another
    for src in [(0, 2), (1, 1)]:
        for tgt in [(0, 0), (1, 0), (0, 3), (2, 1)]:
            kinds = set()
            for cfg in (DeciderConfig(max_rounds=6, step_budget=50),
                        DeciderConfig(max_rounds=6, step_budget=50, templates=False, formula_budget=200)):
                v = decide_reach(fig1, src, tgt, cfg)
                if not isinstance(v, BudgetExhausted):
                    kinds.add(type(v))
            assert len(kinds) <= 1, (src, tgt)


def test_config_validation():
    with pytest.raises(UsageError):
        DeciderConfig(step_budget=0)
    with pytest.raises(UsageError):
        DeciderConfig(max_rounds=0)
    with pytest.raises(UsageError):
        DeciderConfig(formula_budget=0)


def test_bad_endpoints(fig1, hp79):
    with pytest.raises(UsageError):
        decide_reach(fig1, (0, 2, 1), (1, 0))
    with pytest.raises(UsageError):
        decide_reach(hp79, (1, 0, 0), ("p", (1, 0, 0)))
