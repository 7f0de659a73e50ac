import pytest

from ipckit.formula import parse, bot, top
from ipckit.nishimura import (LadderPoint, BOTTOM, TOP_POINT, ladder,
                              classify, point_formula)
from ipckit.prover import equiv_ipc, prove_ipc


def test_classify_landmarks():
    assert str(classify(parse("x1"))) == "psi(1)"
    assert str(classify(parse("~x1"))) == "phi(1)"
    assert str(classify(parse("~~x1"))) == "phi(2)"
    assert str(classify(parse("x1 | ~x1"))) == "psi(2)"
    assert str(classify(parse("~~x1 -> x1"))) == "phi(3)"
    assert classify(bot()) == BOTTOM
    assert classify(top()) == TOP_POINT
    assert classify(parse("x1 -> x1")) == TOP_POINT


def test_classify_agrees_with_equivalence():
    f = parse("(x1 | ~x1) | ~~x1")
    p = classify(f)
    assert equiv_ipc(f, point_formula(p))


def test_ladder_rungs_interleave():
    # hi(i+1) is the join of rung i and lo(i+1) its implication, so both
    # points of rung i entail hi(i+1), hi entails lo(i+1) by weakening,
    # and the two points of one rung never entail each other
    for i in range(1, 5):
        lo_i, hi_i = ladder(i)
        lo_next, hi_next = ladder(i + 1)
        assert prove_ipc((lo_i,), hi_next)
        assert prove_ipc((hi_i,), hi_next)
        assert prove_ipc((hi_i,), lo_next)
        assert not prove_ipc((lo_i,), hi_i)
        assert not prove_ipc((hi_i,), lo_i)
        assert not equiv_ipc(hi_i, hi_next)


def test_point_formula_round_trip():
    for p in (BOTTOM, TOP_POINT, LadderPoint("phi", 3),
              LadderPoint("psi", 4)):
        assert classify(point_formula(p)) == p


def test_every_small_formula_lands_somewhere():
    for text in ["~~~x1", "~x1 -> x1", "(~x1 -> x1) -> (x1 | ~x1)",
                 "x1 & ~x1", "x1 -> ~x1", "~(x1 -> x1)"]:
        p = classify(parse(text))
        assert isinstance(p, LadderPoint)
