import json
import random

import pytest
from hypothesis import given, settings

from tsw.errors import CapExceededError, ValidationError
from tsw.formulas import Fragment, Variable
from tsw.parsing import parse
from tsw.randgen import random_formula, random_team
from tsw.semantics import (
    EvalSession,
    check_basic_properties,
    entails,
    equivalent,
    evaluate,
    truth_set,
    valid,
)
from tsw.teams import Team, VarSet, enumerate_teams, full_team

from .helpers import (
    NO_VARS,
    P,
    PQ,
    naive_tensor_holds,
    reference_evaluate,
    st_formula,
    st_team,
)

p, q, r = Variable("p"), Variable("q"), Variable("r")


def team(rows, vs=PQ):
    return Team.from_rows(vs, rows)


def test_literal_clauses():
    assert evaluate(parse("p"), team([[1, 0], [1, 1]]))
    assert not evaluate(parse("p"), team([[0, 1], [1, 1]]))
    assert evaluate(parse("!p"), team([[0, 0], [0, 1]]))
    assert not evaluate(parse("!p"), team([[0, 0], [1, 1]]))
    # both literal clauses hold on the empty team
    assert evaluate(parse("p"), Team.empty(PQ))
    assert evaluate(parse("!p"), Team.empty(PQ))


def test_constant_clauses():
    assert evaluate(parse("bot"), Team.empty(P))
    assert not evaluate(parse("bot"), team([[0]], P))
    assert evaluate(parse("top"), Team.empty(P))
    assert evaluate(parse("top"), full_team(PQ))


def test_dependence_clause():
    # value of q must be a function of p
    assert evaluate(parse("=(p;q)"), team([[0, 0], [1, 1]]))
    assert not evaluate(parse("=(p;q)"), team([[1, 0], [1, 1]]))
    assert evaluate(parse("=(p;q)"), Team.empty(PQ))
    # constancy
    assert evaluate(parse("=(p)"), team([[1, 0], [1, 1]]))
    assert not evaluate(parse("=(p)"), team([[0, 0], [1, 0]]))
    # degenerate: target among the arguments is trivially functional
    assert evaluate(parse("=(p;p)"), full_team(PQ))


def test_split_clause():
    # both halves may reuse members: overlap is allowed
    assert evaluate(parse("p + p"), team([[1, 0], [1, 1]]))
    assert evaluate(parse("p + !p"), team([[0, 0], [1, 1]]))
    assert not evaluate(parse("p + p"), team([[0, 0]]))
    # the empty side is always available
    assert evaluate(parse("p + bot"), team([[1, 0]]))
    # constancy splits the full team, but is not preserved by it
    assert evaluate(parse("=(p) + =(p)"), full_team(P))
    assert not evaluate(parse("=(p)"), full_team(P))


def test_inquisitive_disjunction_clause():
    x = team([[0, 0], [1, 1]])
    assert not evaluate(parse("p | !p"), x)
    assert evaluate(parse("p | !p"), team([[1, 0], [1, 1]]))


def test_implication_clause():
    # every subteam satisfying the antecedent must satisfy the consequent
    assert evaluate(parse("p -> q"), team([[1, 1], [0, 0]]))
    assert not evaluate(parse("p -> q"), team([[1, 1], [1, 0]]))
    assert evaluate(parse("bot -> p"), full_team(PQ))
    assert evaluate(parse("p -> top"), full_team(PQ))
    # antecedent top quantifies over every subteam
    assert not evaluate(parse("top -> p"), team([[1, 1], [0, 1]]))


def test_evaluate_team_vars_must_cover_formula():
    with pytest.raises(ValidationError):
        evaluate(parse("p & r"), team([[1, 1]]))


def test_placeholder_rejected_by_evaluate():
    with pytest.raises(ValidationError):
        evaluate(parse("r1 + p"), full_team(P))


@settings(max_examples=150, deadline=None)
@given(st_formula([p, q], Fragment.PT0, max_leaves=5), st_team(PQ))
def test_reference_evaluator_agreement(phi, x):
    assert evaluate(phi, x) == reference_evaluate(phi, x)


@settings(max_examples=150, deadline=None)
@given(st_formula([p, q], Fragment.PT0, max_leaves=4), st_formula([p, q], Fragment.PT0, max_leaves=4), st_team(PQ))
def test_split_against_naive_all_pairs(phi, psi, x):
    from tsw.formulas import Tensor

    assert evaluate(Tensor(phi, psi), x) == naive_tensor_holds(phi, psi, x)


@settings(max_examples=100, deadline=None)
@given(st_formula([p, q], Fragment.PT0, max_leaves=6))
def test_truth_set_matches_pointwise_evaluation(phi):
    ts = truth_set(phi)
    sess = EvalSession()
    for x in enumerate_teams(ts.vars):
        assert (x in ts) == evaluate(phi, x, sess)


@settings(max_examples=100, deadline=None)
@given(st_formula([p, q], Fragment.PT0, max_leaves=6), st_team(PQ))
def test_downward_closure_holds_everywhere(phi, x):
    # every connective in the language preserves closure under subteams
    sess = EvalSession()
    if evaluate(phi, x, sess):
        m = x.mask
        sub = m
        while True:
            assert evaluate(phi, Team(PQ, sub), sess)
            if sub == 0:
                break
            sub = (sub - 1) & m


def test_three_variable_spot_checks():
    rng = random.Random(424242)
    vs = [p, q, r]
    n = VarSet((p, q, r))
    for _ in range(40):
        phi = random_formula(rng, vs)
        x = random_team(rng, n)
        ts = truth_set(phi, n)
        assert (x in ts) == evaluate(phi, x)


def test_eval_session_memoisation_is_transparent():
    phi = parse("(p + q) -> (=(p) + =(q))")
    shared = EvalSession()
    plain = [evaluate(phi, x) for x in enumerate_teams(PQ)]
    memo = [evaluate(phi, x, shared) for x in enumerate_teams(PQ)]
    assert plain == memo
    assert shared.hits > 0
    again = [evaluate(phi, x, shared) for x in enumerate_teams(PQ)]
    assert again == plain


def test_eval_session_rejects_mixed_varsets():
    sess = EvalSession()
    evaluate(parse("p"), full_team(P), sess)
    with pytest.raises(ValidationError):
        evaluate(parse("p"), full_team(PQ), sess)


def test_eval_session_counters():
    sess = EvalSession()
    evaluate(parse("p & p"), full_team(P), sess)
    assert sess.misses > 0
    assert sess.teams_visited >= 1


def test_truth_set_infers_vars_and_accepts_superset():
    ts = truth_set(parse("p"))
    assert ts.vars.names() == ["p"]
    wider = truth_set(parse("p"), PQ)
    assert wider.vars.names() == ["p", "q"]
    assert len(wider.teams()) == sum(
        1 for x in enumerate_teams(PQ) if evaluate(parse("p"), x)
    )
    with pytest.raises(ValidationError):
        truth_set(parse("p & q"), P)


def test_truth_set_of_closed_formula():
    ts = truth_set(parse("bot"), NO_VARS)
    assert [t.rows() for t in ts.teams()] == [[]]
    assert len(truth_set(parse("top"), NO_VARS).teams()) == 2


def test_variable_caps():
    wide4 = parse("p & q & r & s")
    wide5 = parse("p & q & r & s & t")
    with pytest.raises(CapExceededError) as exc:
        truth_set(wide4)
    assert str(exc.value) == (
        "truth set over 4 variables exceeds the cap of 3 "
        "(force raises it to the hard maximum of 4)"
    )
    forced = truth_set(wide4, force=True)
    assert len(forced.teams()) == 2
    with pytest.raises(CapExceededError) as exc:
        truth_set(wide5, force=True)
    assert str(exc.value) == "truth set over 5 variables exceeds the cap of 4"
    with pytest.raises(CapExceededError):
        entails(wide4, parse("p"))
    assert entails(wide4, parse("p"), force=True)
    # validity is a single evaluation and carries no cap
    assert not valid(wide5)


def test_validity_pins():
    assert valid(parse("top"))
    assert not valid(parse("bot"))
    assert valid(parse("p + !p"))
    assert not valid(parse("p | !p"))
    assert valid(parse("=(p;p)"))
    assert not valid(parse("=(p)"))
    assert valid(parse("((p -> bot) -> bot) -> p"))


def test_entailment_pins():
    assert entails(parse("p & q"), parse("p"))
    assert not entails(parse("p"), parse("p & q"))
    assert entails(parse("p"), parse("p + p"))
    assert entails(parse("p + p"), parse("p"))
    assert not entails(parse("=(p) + =(p)"), parse("=(p)"))
    assert entails(parse("bot"), parse("=(p;q)"))
    # vars are joined before comparison
    assert entails(parse("p & q"), parse("q & p"))


def test_equivalence_pins():
    assert equivalent(parse("p + p"), parse("p"))
    assert equivalent(parse("p & q"), parse("q & p"))
    assert not equivalent(parse("p + q"), parse("p | q"))
    assert equivalent(parse("!p"), parse("p -> bot"))


def test_property_report_structure():
    rep = check_basic_properties(parse("=(p;q)"), seed=7)
    obj = rep.to_json()
    assert obj["formula"] == "=(p;q)"
    assert obj["vars"] == ["p", "q"]
    assert obj["ok"] is True
    names = [c["name"] for c in obj["checks"]]
    assert names == ["empty_team", "downward_closure", "locality", "disjunction_property"]
    assert all(c["passed"] for c in obj["checks"])


def test_property_report_is_seed_deterministic():
    a = check_basic_properties(parse("(p + q) -> =(p)"), seed=11)
    b = check_basic_properties(parse("(p + q) -> =(p)"), seed=11)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())


def test_property_report_disjunction_detail():
    # a valid disjunction must have a valid disjunct
    rep = check_basic_properties(parse("(p + !p) | q"), seed=3)
    disj = rep.to_json()["checks"][-1]
    assert disj["name"] == "disjunction_property"
    assert disj["passed"]
    assert disj["detail"] == "the formula is valid, so some disjunct must be valid"
    # an invalid disjunction renders the condition vacuous
    vac = check_basic_properties(parse("p | q"), seed=3).to_json()["checks"][-1]
    assert vac["passed"]
    assert "vacuous" in vac["detail"]


@settings(max_examples=60, deadline=None)
@given(st_formula([p, q], Fragment.PT0, max_leaves=5))
def test_properties_hold_for_random_formulas(phi):
    assert check_basic_properties(phi, seed=0).ok


def test_locality_across_extensions():
    # verdicts only depend on the restriction to the formula's variables
    phi = parse("=(p) + !p")
    sess = EvalSession()
    for x in enumerate_teams(PQ):
        assert evaluate(phi, x) == evaluate(phi, x.restrict(P), sess)
