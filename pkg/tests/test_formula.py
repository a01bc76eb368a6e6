import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htlogic import (
    And,
    Implies,
    Not,
    Or,
    ParseError,
    S1,
    S2,
    Var,
    depth,
    enumerate_formulas,
    parse_formula,
    random_formulas,
    render_formula,
    variables,
)

p, q, r = Var("p"), Var("q"), Var("r")


def test_parse_agent_excluded_middle():
    assert parse_formula("S1 p | ~S1 p") == Or(S1(p), Not(S1(p)))


def test_parse_implication_right_associative():
    assert parse_formula("p -> q -> r") == Implies(p, Implies(q, r))


def test_parse_unary_precedence():
    assert parse_formula("S1 (p & q)") == S1(And(p, q))
    assert parse_formula("S1 p & q") == And(S1(p), q)


def test_parse_precedence_chain():
    assert parse_formula("p & q | r -> p") == Implies(Or(And(p, q), r), p)
    assert parse_formula("~p & q") == And(Not(p), q)
    assert parse_formula("S2 S1 p") == S2(S1(p))


def test_parse_unicode_aliases():
    assert parse_formula("p ∧ q ∨ ¬r") == parse_formula("p & q | ~r")
    assert parse_formula("p ⇒ q") == parse_formula("p -> q")


def test_parse_identifier_rules():
    assert parse_formula("S1x") == Var("S1x")  # not the reserved word
    assert parse_formula("foo_2") == Var("foo_2")
    with pytest.raises(ValueError):
        Var("S1")
    with pytest.raises(ValueError):
        Var("2p")


@pytest.mark.parametrize(
    "text,position",
    [
        ("p &", 3),
        ("(p | q", 6),
        ("p -> -> q", 5),
        ("", 0),
        ("p @ q", 2),
    ],
)
def test_parse_error_positions(text, position):
    with pytest.raises(ParseError) as exc:
        parse_formula(text)
    assert exc.value.position == position


def test_parse_error_carries_expected_set():
    with pytest.raises(ParseError) as exc:
        parse_formula("p | ")
    assert "identifier" in exc.value.expected


def test_render_examples():
    assert render_formula(S1(p)) == "S1 p"
    assert render_formula(Implies(And(p, q), r)) == "p & q -> r"
    assert render_formula(Not(Or(p, q))) == "~(p | q)"


def test_render_minimal_parens():
    assert render_formula(Implies(Implies(p, q), r)) == "(p -> q) -> r"
    assert render_formula(Implies(p, Implies(q, r))) == "p -> q -> r"
    assert render_formula(And(p, And(q, r))) == "p & (q & r)"
    assert render_formula(And(And(p, q), r)) == "p & q & r"
    assert render_formula(Or(And(p, q), r)) == "p & q | r"
    assert render_formula(And(Or(p, q), r)) == "(p | q) & r"
    assert render_formula(S1(And(p, q))) == "S1 (p & q)"
    assert render_formula(Not(Not(p))) == "~~p"
    assert render_formula(S2(Not(S1(p)))) == "S2 ~S1 p"


def test_variables():
    assert variables(And(q, S2(p))) == ["p", "q"]
    assert variables(p) == ["p"]
    assert variables(Implies(p, p)) == ["p"]


def test_operator_sugar():
    assert (p & q) == And(p, q)
    assert (p | q) == Or(p, q)
    assert (p >> q) == Implies(p, q)
    assert ~p == Not(p)


def test_depth():
    assert depth(p) == 0
    assert depth(~p) == 1
    assert depth((p & q) >> r) == 2


def test_enumerate_formulas_depth_one_count():
    # over one variable: the variable itself plus 3 unary and 3 binary forms
    forms = list(enumerate_formulas(1, ["p"]))
    assert len(forms) == 7
    assert len(set(forms)) == 7
    assert all(depth(f) <= 1 for f in forms)


def test_enumerate_formulas_deterministic():
    a = list(enumerate_formulas(2, ["p", "q"]))
    b = list(enumerate_formulas(2, ["p", "q"]))
    assert a == b
    assert len(set(a)) == len(a)


def test_random_formulas_seeded_and_distinct():
    a = random_formulas(50, 4, ["p", "q"], seed=3, distinct=True)
    b = random_formulas(50, 4, ["p", "q"], seed=3, distinct=True)
    assert a == b
    assert len(set(a)) == 50


_names = st.sampled_from(["p", "q", "r", "x1", "long_name"])
_formulas = st.recursive(
    st.builds(Var, _names),
    lambda sub: st.one_of(
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Implies, sub, sub),
        st.builds(Not, sub),
        st.builds(S1, sub),
        st.builds(S2, sub),
    ),
    max_leaves=60,
)


@given(_formulas)
@settings(max_examples=300)
def test_parse_render_round_trip(f):
    assert parse_formula(render_formula(f)) == f


@given(st.text(max_size=30))
@settings(max_examples=300)
def test_parser_total(text):
    # never aborts with anything but ParseError
    try:
        result = parse_formula(text)
    except ParseError:
        return
    assert result is not None
