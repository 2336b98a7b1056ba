import random

import pytest

from natdensity.dsl import (
    And,
    Blocks,
    Bot,
    DSLSyntaxError,
    Not,
    Or,
    Reg,
    Shift,
    Top,
    elaborate,
    evaluate,
    is_syntactically_regular,
    parse,
    to_text,
)
from natdensity.errors import EmptyPeriod
from natdensity.regular import reg

from oracles import eval_tree_bits, expression_corpus, random_tree


def test_parse_examples():
    assert parse("reg([],[1,0])") == Reg((), (1, 0))
    assert parse("not (reg([1],[1,0]) and reg([],[0,1]))") == Not(And(Reg((1,), (1, 0)), Reg((), (0, 1))))
    with pytest.raises(EmptyPeriod):
        parse("reg([1],[])")


def test_precedence_and_associativity():
    assert parse("bot or top and bot") == Or(Bot(), And(Top(), Bot()))
    assert parse("not bot and top") == And(Not(Bot()), Top())
    assert parse("shift not top") == Shift(Not(Top()))
    assert parse("bot or top or bot") == Or(Or(Bot(), Top()), Bot())
    assert parse("bot and (top and bot)") == And(Bot(), And(Top(), Bot()))
    assert parse(" blocks ( ) ") == Blocks()


@pytest.mark.parametrize("text,line,col", [
    ("reg([2],[1])", 1, 6),
    ("top and", 1, 8),
    ("bot top", 1, 5),
    ("(top", 1, 5),
    ("reg([1] [0])", 1, 9),
    ("top\n  or ?", 2, 6),
    ("blocks(1)", 1, 8),
    ("flip", 1, 1),
])
def test_syntax_errors_carry_location(text, line, col):
    with pytest.raises(DSLSyntaxError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (line, col)
    assert exc.value.expected


def test_elaboration_examples():
    el = elaborate(parse("not reg([],[1,0])"))
    assert el.is_regular and el.regular == reg([], [0, 1])
    assert elaborate(parse("blocks() or bot")).kind == "general"
    el = elaborate(parse("shift top"))
    assert el.regular == reg([0], [1])
    assert el.witness is not None


def test_printer_minimal_parentheses():
    assert to_text(parse("(bot or top) and bot")) == "(bot or top) and bot"
    assert to_text(parse("bot or (top and bot)")) == "bot or top and bot"
    assert to_text(parse("bot or (top or bot)")) == "bot or (top or bot)"
    assert to_text(parse("not (bot)")) == "not bot"
    assert to_text(parse("shift (top and bot)")) == "shift (top and bot)"


def test_corpus_round_trip():
    corpus = expression_corpus()
    assert len(corpus) == 100
    for tree in corpus:
        text = to_text(tree)
        assert parse(text) == tree, text


def test_elaboration_matches_bit_oracle():
    for tree in expression_corpus():
        el = elaborate(tree)
        assert el.is_regular == is_syntactically_regular(tree)
        assert el.event.prefix(1000) == eval_tree_bits(tree, 1000), to_text(tree)
        assert evaluate(tree).prefix(1000) == eval_tree_bits(tree, 1000)


def test_random_regular_trees_stay_small():
    rng = random.Random(9)
    for _ in range(50):
        tree = random_tree(rng, depth=6, allow_blocks=False)
        el = elaborate(tree)
        assert el.is_regular
        assert el.regular == el.regular.canonical()
        assert el.event.prefix(300) == eval_tree_bits(tree, 300)
