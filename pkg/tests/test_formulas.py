import pytest
from hypothesis import given, settings

from tsw.errors import ParseError, ValidationError
from tsw.formulas import (
    And,
    Bottom,
    Dep,
    Fragment,
    IDisj,
    Impl,
    NegVar,
    Placeholder,
    PosVar,
    Tensor,
    Top,
    Variable,
    fragment_check,
    is_context,
    max_placeholder,
    placeholder_indices,
    subformulas,
    substitute,
    syntax_tree,
    to_text,
    variables,
)
from tsw.parsing import parse

from .helpers import st_formula

p, q, r = Variable("p"), Variable("q"), Variable("r")


def test_variable_names():
    assert Variable("p").name == "p"
    assert Variable("x_1").name == "x_1"
    with pytest.raises(ValidationError):
        Variable("1p")
    with pytest.raises(ValidationError):
        Variable("")
    with pytest.raises(ValidationError):
        Variable("p q")


def test_reserved_names():
    # r7 is placeholder syntax, bot/top are keywords
    for name in ("r1", "r7", "r12", "bot", "top"):
        with pytest.raises(ValidationError):
            Variable(name)
    # a bare "r" carries no digits and is an ordinary variable
    assert Variable("r").name == "r"


def test_to_text_pins():
    assert to_text(PosVar(p)) == "p"
    assert to_text(NegVar(p)) == "!p"
    assert to_text(Bottom()) == "bot"
    assert to_text(Top()) == "top"
    assert to_text(Dep((p, q), r)) == "=(p,q;r)"
    assert to_text(Dep((), p)) == "=(p)"
    assert to_text(Placeholder(2)) == "r2"
    assert to_text(And(PosVar(p), PosVar(q))) == "p & q"
    assert to_text(Tensor(And(PosVar(p), PosVar(q)), PosVar(r))) == "(p & q) + r"
    assert to_text(And(PosVar(p), Tensor(PosVar(q), PosVar(r)))) == "p & (q + r)"
    # implication is right-associative, so the right child needs no parens
    assert to_text(Impl(PosVar(p), Impl(PosVar(q), Bottom()))) == "p -> q -> bot"
    assert to_text(Impl(Impl(PosVar(p), PosVar(q)), Bottom())) == "(p -> q) -> bot"


def test_parse_precedence():
    assert parse("p & q + r") == Tensor(And(PosVar(p), PosVar(q)), PosVar(r))
    assert parse("p + q & r") == Tensor(PosVar(p), And(PosVar(q), PosVar(r)))
    assert parse("p + q | r") == IDisj(Tensor(PosVar(p), PosVar(q)), PosVar(r))
    assert parse("p | q -> r") == Impl(IDisj(PosVar(p), PosVar(q)), PosVar(r))
    assert parse("p -> q -> r") == Impl(PosVar(p), Impl(PosVar(q), PosVar(r)))
    assert parse("(p + q) & r") == And(Tensor(PosVar(p), PosVar(q)), PosVar(r))


def test_parse_negation_glyphs():
    assert parse("~p") == parse("!p") == NegVar(p)
    assert to_text(parse("~p")) == "!p"


def test_parse_dep_atom():
    assert parse("=(p,q;r)") == Dep((p, q), r)
    assert parse("=(p)") == Dep((), p)
    assert parse("=( p , q ; r )") == Dep((p, q), r)


def test_parse_placeholders():
    assert parse("r1 + r2") == Tensor(Placeholder(1), Placeholder(2))
    assert parse("r10") == Placeholder(10)


def test_parse_inql_mode_negation():
    # intuitionistic reading: !phi abbreviates phi -> bot, for any phi
    assert parse("!p", mode="inql") == Impl(PosVar(p), Bottom())
    assert parse("!(p | q)", mode="inql") == Impl(IDisj(PosVar(p), PosVar(q)), Bottom())
    # the default mode only negates proposition letters
    with pytest.raises(ParseError):
        parse("!(p & q)")


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as exc:
        parse("p & ")
    assert "expected an atom, found 'end of input' (at position 4)" == str(exc.value)
    assert exc.value.position == 4
    with pytest.raises(ParseError):
        parse("(p & q")
    with pytest.raises(ParseError):
        parse("p q")
    with pytest.raises(ParseError):
        parse("")
    with pytest.raises(ParseError):
        parse("=(p;q;r)")


@settings(max_examples=200)
@given(st_formula([p, q, r], Fragment.PT0))
def test_parse_roundtrip(phi):
    assert parse(to_text(phi)) == phi


@given(st_formula([p, q], Fragment.INQL, max_leaves=5))
def test_inql_strategy_respects_fragment(phi):
    assert fragment_check(phi, Fragment.INQL)
    assert fragment_check(phi, Fragment.PT0)


def test_fragment_check_pins():
    assert fragment_check(Tensor(PosVar(p), NegVar(q)), Fragment.PD)
    assert not fragment_check(IDisj(PosVar(p), PosVar(q)), Fragment.PD)
    assert not fragment_check(Impl(PosVar(p), Bottom()), Fragment.PD)
    assert not fragment_check(NegVar(p), Fragment.INQL)
    assert not fragment_check(Dep((), p), Fragment.INQL)
    assert not fragment_check(Tensor(PosVar(p), PosVar(q)), Fragment.INQL)
    assert fragment_check(Impl(IDisj(PosVar(p), Bottom()), PosVar(q)), Fragment.INQL)
    # top and placeholders pass everywhere
    for frag in Fragment:
        assert fragment_check(Top(), frag)
        assert fragment_check(Placeholder(1), frag)


def test_variables_sorted_and_deduped():
    phi = parse("q & (p + q) & =(p;r)")
    assert variables(phi) == (p, q, r)
    assert variables(Bottom()) == ()


def test_subformulas_postorder_dedup():
    phi = parse("(p & q) + r")
    texts = [to_text(f) for f in subformulas(phi)]
    assert texts == ["p", "q", "p & q", "r", "(p & q) + r"]
    # shared structure appears once
    twice = parse("(p & q) + (p & q)")
    assert [to_text(f) for f in subformulas(twice)] == ["p", "q", "p & q", "(p & q) + (p & q)"]


def test_placeholder_bookkeeping():
    c = parse("(r1 & p) + r2")
    assert placeholder_indices(c) == (1, 2)
    assert is_context(c)
    assert max_placeholder(c) == 2
    assert not is_context(parse("p & q"))
    assert max_placeholder(parse("p")) == 0


def test_substitute():
    c = parse("(r1 & p) + r2")
    got = substitute(c, [NegVar(q), Bottom()])
    assert to_text(got) == "(!q & p) + bot"
    # extra entries are tolerated, missing ones are not
    assert substitute(parse("r1"), [PosVar(p), PosVar(q)]) == PosVar(p)
    with pytest.raises(ValidationError):
        substitute(c, [PosVar(p)])
    # repeated placeholders share one substituent
    twice = substitute(parse("r1 + r1"), [PosVar(p)])
    assert to_text(twice) == "p + p"


def test_syntax_tree_shape():
    tree = syntax_tree(parse("(r1 & p) + r2"))
    assert [n.id for n in tree.nodes] == [0, 1, 2, 3, 4]
    assert to_text(tree.nodes[0].formula) == "(r1 & p) + r2"
    assert tree.nodes[0].parent is None
    assert tree.nodes[1].parent == 0
    assert tree.nodes[0].children == (1, 4)
    assert tree.nodes[1].children == (2, 3)
    leaf_texts = sorted(to_text(n.formula) for n in tree.leaves())
    assert leaf_texts == ["p", "r1", "r2"]
    assert [tree.nodes[i].depth for i in (0, 1, 2)] == [0, 1, 2]


def test_syntax_tree_placeholder_leaves_and_ancestors():
    tree = syntax_tree(parse("(r1 & p) + r2"))
    ph = tree.placeholder_leaves()
    assert sorted(to_text(n.formula) for n in ph) == ["r1", "r2"]
    r1_node = next(n for n in ph if n.formula == Placeholder(1))
    anc = tree.ancestors(r1_node.id)
    # nearest first
    assert [to_text(n.formula) for n in anc] == ["r1 & p", "(r1 & p) + r2"]


def test_placeholder_index_validation():
    with pytest.raises(ValidationError):
        Placeholder(0)
    with pytest.raises(ValidationError):
        Placeholder(-3)


def test_dep_atom_accepts_degenerate_shapes():
    # repeated arguments and target-among-arguments are harmless; the
    # satisfaction clause quantifies over whatever tuple is given
    assert to_text(Dep((p, p), q)) == "=(p,p;q)"
    assert to_text(Dep((p,), p)) == "=(p;p)"
    assert parse("=(p,p;q)") == Dep((p, p), q)
