import pytest

from ipckit.formula import (BOT, TOP, VAR, Formula, var, bot, top, neg,
                            and_, or_, imp, conj, disj, parse, to_str,
                            vars_of, tree_size, dag_size, subst,
                            eval_classical, walk, ParseError)


def test_parse_round_trip():
    for text in ["x1", "F", "T", "x1 & x2", "x1 | x2 | x3",
                 "x1 -> x2 -> x3", "~(x1 & ~x2)", "(x1 | x2) -> x1"]:
        f = parse(text)
        assert parse(to_str(f)) is f


def test_implication_is_right_associative():
    assert parse("x1 -> x2 -> x3") is imp(var(1), imp(var(2), var(3)))


def test_negation_is_implication_to_bottom():
    assert neg(var(1)) is imp(var(1), bot())
    assert parse("~x1") is neg(var(1))


def test_hash_consing_shares_nodes():
    a = and_(var(1), var(2))
    b = and_(var(1), var(2))
    assert a is b
    assert dag_size(imp(a, a)) == 4  # x1, x2, the and, the imp
    assert tree_size(imp(a, a)) == 7


def test_parse_errors():
    for bad in ["", "x1 &", "x0", "y1", "(x1", "x1 -", "x1 x2"]:
        with pytest.raises(ParseError):
            parse(bad)


def test_conj_disj_edge_cases():
    assert conj([]) is top()
    assert disj([]) is bot()
    assert conj([var(1)]) is var(1)
    assert to_str(disj([var(1), var(2)])) == "x1 | x2"


def test_vars_of():
    assert vars_of(parse("x1 -> (x3 & x1)")) == {1, 3}
    assert vars_of(bot()) == set()


def test_subst():
    f = parse("x1 -> x2")
    g = subst(f, {1: parse("x2 & x2"), 2: bot()})
    assert g is imp(and_(var(2), var(2)), bot())
    assert subst(f, {}) is f


def test_eval_classical():
    f = parse("(x1 -> x2) & (x2 -> x1)")
    assert eval_classical(f, frozenset({1, 2}))
    assert eval_classical(f, frozenset())
    assert not eval_classical(f, frozenset({1}))
    assert not eval_classical(bot(), frozenset())
    assert eval_classical(top(), frozenset())


def test_walk_is_postorder_unique():
    f = parse("(x1 & x2) -> (x1 & x2)")
    seen = list(walk(f))
    assert len(seen) == len({n.id for n in seen})
    assert seen[-1] is f
    pos = {n.id: i for i, n in enumerate(seen)}
    for n in seen:
        if n.kind not in (BOT, TOP, VAR):
            assert pos[n.a.id] < pos[n.id]
            assert pos[n.b.id] < pos[n.id]
