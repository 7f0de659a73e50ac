import pytest

from ipckit.formula import parse
from ipckit.universal import (Universe, build_slice, slice_from_json,
                              level_count, count_level1_closed_form,
                              InvalidNodeError)


def test_level_zero_is_powerset_of_variables():
    u = build_slice(2, 0)
    assert [u.nodes[i].U for i in u.level_ids(0)] == \
        [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]


def test_slice_counts():
    u2 = build_slice(2, 1)
    assert len(u2.level_ids(0)) == 4
    assert len(u2.level_ids(1)) == 18
    u1 = build_slice(1, 1)
    assert len(u1.level_ids(0)) == 2
    assert len(u1.level_ids(1)) == 2


def test_enumerators_agree():
    assert level_count(2, 1) == count_level1_closed_form(2) == 18
    assert level_count(1, 1) == count_level1_closed_form(1) == 2
    assert level_count(3, 1) == count_level1_closed_form(3)


def test_exceeds_mode():
    assert level_count(2, 2, exceeds=18) is True
    assert level_count(1, 1, exceeds=1) is True
    assert level_count(1, 1, exceeds=2) is False


def test_variable_growth_needs_two_variables():
    # the one-variable model plateaus instead of growing
    assert level_count(1, 0) == level_count(1, 1) == 2


def test_order_and_levels():
    u = build_slice(2, 1)
    n4 = u.find((0, 1), ())
    assert u.nodes[n4].up == frozenset({n4, 0, 1})
    assert u.le(n4, 0) and u.le(n4, 1)
    assert not u.le(0, n4)
    assert not u.le(n4, 2)
    for i in u.level_ids(1):
        assert u.nodes[i].level == 1
        for j in u.nodes[i].T:
            assert u.nodes[j].level == 0


def test_node_identity():
    u = build_slice(2, 1)
    assert u.make_node((0, 1), ()) == u.find((0, 1), ())
    assert u.make_node((1, 0), ()) == u.make_node((0, 1), ())


def test_make_node_wants_antichains():
    u = build_slice(2, 1)
    n4 = u.find((0, 1), ())
    n8 = u.find((0, 2), ())
    with pytest.raises(InvalidNodeError):
        u.make_node((n4, 0), ())  # 0 sits above n4
    deep = u.make_node(u.reduce_antichain((n4, n8, 0)), ())
    assert deep == u.make_node((n8, n4), ())
    assert u.nodes[deep].level == 2
    assert u.nodes[deep].up == {deep} | u.nodes[n4].up | u.nodes[n8].up


def test_reduce_antichain():
    u = build_slice(2, 1)
    n4 = u.find((0, 1), ())
    assert set(u.reduce_antichain((n4, 0, 1))) == {n4}
    assert set(u.reduce_antichain((0, 2))) == {0, 2}


def test_forcing_persistence_on_slice():
    u = build_slice(2, 1)
    f = parse("x1 -> x2")
    forced = {i for i in range(22) if u.force_at(i, f)}
    for i in forced:
        assert u.nodes[i].up <= forced


def test_invalid_inputs():
    u = build_slice(2, 1)
    with pytest.raises(InvalidNodeError):
        u.make_node((0, 1), (2,))  # x2 not forced by both successors
    assert u.make_node((), (2,)) == 2  # interned maximal node, not an error
    with pytest.raises(InvalidNodeError):
        # a lone successor with the same variable set changes nothing
        u.make_node((u.find((0, 1), ()),), ())


def test_json_round_trip():
    u = build_slice(2, 1)
    u.make_node((u.find((0, 1), ()), u.find((0, 2), ())), ())
    v = slice_from_json(u.to_json())
    assert len(v.nodes) == len(u.nodes)
    for a, b in zip(u.nodes, v.nodes):
        assert (a.T, a.U, a.level, a.up) == (b.T, b.U, b.level, b.up)
