import random

from ipckit.formula import (OR, and_, bot, imp, neg, or_, parse, top, var,
                            eval_classical, vars_of)
from ipckit.negtrans import classical_to_ipc2, glivenko, godel_gentzen
from ipckit.prover import prove_classical, prove_ipc


def test_double_negation_clauses():
    assert godel_gentzen(var(1)) is neg(neg(var(1)))
    assert godel_gentzen(bot()) is bot()
    assert godel_gentzen(top()) is top()
    a, b = var(1), var(2)
    assert godel_gentzen(and_(a, b)) is and_(godel_gentzen(a),
                                             godel_gentzen(b))
    assert godel_gentzen(imp(a, b)) is imp(godel_gentzen(a),
                                           godel_gentzen(b))
    # disjunction is rewritten away entirely
    assert godel_gentzen(or_(a, b)).kind != OR


def test_peirce_crosses_over():
    peirce = parse("((x1 -> x2) -> x1) -> x1")
    assert not prove_ipc((), peirce)
    assert prove_ipc((), glivenko(peirce))
    assert prove_ipc((), godel_gentzen(peirce))


def test_double_negation_does_not_collapse():
    assert not prove_ipc((parse("~~x1"),), parse("x1"))


def test_classical_fidelity_on_random_formulas():
    rng = random.Random(11)
    ops = [and_, or_, imp, imp]

    def gen(size):
        if size <= 1:
            return rng.choice([var(rng.randint(1, 3)), bot()])
        k = rng.randint(1, size - 1)
        op = rng.choice(ops)
        return op(gen(k), gen(size - k))

    for _ in range(60):
        f = gen(rng.randint(1, 7))
        want = prove_classical((), f)
        assert prove_ipc((), glivenko(f)) == want
        assert prove_ipc((), godel_gentzen(f)) == want


def test_two_variable_image_respects_tautology():
    # only classical tautologies land on something provable
    assert prove_ipc((), classical_to_ipc2(parse("x1 -> x1")))
    assert prove_ipc((), classical_to_ipc2(parse("x1 | ~x1")))
    assert not prove_ipc((), classical_to_ipc2(parse("x1")))
    assert not prove_ipc((), classical_to_ipc2(parse("x1 & ~x1")))


def test_two_variable_image_is_two_variable():
    img = classical_to_ipc2(parse("x1 | (x2 -> x3)"))
    assert vars_of(img) <= {1, 2}


def test_truth_table_matches_image_provability():
    # for formulas over one variable the whole table is two rows
    for text in ["x1", "~x1", "x1 -> x1", "x1 | ~x1", "~(x1 & ~x1)"]:
        f = parse(text)
        taut = all(eval_classical(f, row) for row in (frozenset(),
                                                      frozenset({1})))
        assert prove_ipc((), classical_to_ipc2(f)) == taut
