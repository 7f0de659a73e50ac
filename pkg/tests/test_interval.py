import random

import pytest

from ipckit.formula import and_, bot, parse, top, var
from ipckit.interval import (audit_disjoint, build_interval_spec, f_interval,
                             g_map, gate_tautology, h_interval,
                             lift_tautology, maxS_oracle)
from ipckit.prover import equiv_ipc, prove_ipc
from ipckit.universal import build_slice


def _random_formula(rng, size, m):
    if size <= 1:
        return rng.choice([var(rng.randint(1, m)), bot()])
    from ipckit.formula import imp, or_
    op = rng.choice([and_, or_, imp, imp])
    k = rng.randint(1, size - 1)
    return op(_random_formula(rng, k, m), _random_formula(rng, size - k, m))


def test_one_variable_case_degenerates():
    s = build_interval_spec(1)
    assert s.phi is bot()
    assert s.psi is var(2)
    assert f_interval(s, var(1)) is and_(var(1), var(2))


def test_one_variable_consequence_both_ways():
    s = build_interval_spec(1)
    rng = random.Random(7)
    for _ in range(40):
        a = _random_formula(rng, rng.randint(1, 5), 1)
        b = _random_formula(rng, rng.randint(1, 5), 1)
        assert prove_ipc((a,), b) == \
            prove_ipc((f_interval(s, a),), f_interval(s, b))


def test_one_variable_round_trip():
    s = build_interval_spec(1)
    for text in ["x1", "~x1", "~~x1 -> x1", "x1 | ~x1", "x1 & (x1 -> F)"]:
        r = parse(text)
        assert equiv_ipc(h_interval(s, f_interval(s, r)), r)


def test_two_variable_spec_shape():
    s = build_interval_spec(2)
    u = s.universe
    # two anchors, four guards (one per anchor subset), a clean fence
    assert len(s.A) == 2
    assert len(s.gamma) == 4
    assert s.maxS == maxS_oracle(s)
    # the anchors are incomparable level-1 nodes
    a, b = s.A
    assert u.nodes[a].level == u.nodes[b].level == 1
    assert a not in u.nodes[b].up and b not in u.nodes[a].up


def test_two_variable_cone_decomposition_is_clean():
    assert audit_disjoint(build_interval_spec(2)) == []


def test_g_map_is_an_order_isomorphism():
    s = build_interval_spec(2)
    src = build_slice(2, 0)
    g = g_map(s, src)
    assert len(set(g.values())) == len(g)
    u = s.universe
    for a in g:
        for b in g:
            assert (g[b] in u.nodes[g[a]].up) == (b in src.nodes[a].up)


def test_two_variable_consequence_transfer():
    s = build_interval_spec(2)
    pairs = [("x1", "x1 | x2", True), ("x1 & x2", "x1", True),
             ("x1", "x2", False), ("x1 -> x2", "~x1 | x2", False)]
    for a_text, b_text, want in pairs:
        a, b = parse(a_text), parse(b_text)
        assert prove_ipc((a,), b) == want
        assert prove_ipc((f_interval(s, a),), f_interval(s, b)) == want


def test_source_alphabet_is_enforced():
    s = build_interval_spec(1)
    with pytest.raises(ValueError):
        f_interval(s, parse("x2"))
    with pytest.raises(ValueError):
        build_interval_spec(4)
    with pytest.raises(ValueError):
        g_map(s, build_slice(2, 0))
    with pytest.raises(ValueError):
        g_map(build_interval_spec(2), build_slice(1, 0))


def test_lift_and_gate_fix_tautologies():
    s = build_interval_spec(1)
    taut = parse("x1 -> x1")
    raw = lambda r: f_interval(s, r)
    assert not prove_ipc((), raw(taut))
    assert prove_ipc((), lift_tautology(raw)(taut))
    assert gate_tautology(raw)(taut) is top()
    # non-tautologies pass through the gate untouched
    assert gate_tautology(raw)(var(1)) is raw(var(1))
