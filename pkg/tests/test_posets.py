import pytest

from ipckit.formula import parse
from ipckit.posets import (ElementCapError, OrderInputError, PosetSpec,
                           embed_lindenbaum, embed_poset, fast_le,
                           parse_stream_line, poset_from_json,
                           poset_iso_classes, psi_sigma)
from ipckit.prover import prove_classical, prove_ipc


def test_sigma_formulas_follow_the_prefix_order():
    # extending a string descends: psi("00") proves psi("0"); siblings
    # never prove each other
    p0, p1, p00 = psi_sigma("0"), psi_sigma("1"), psi_sigma("00")
    assert prove_ipc((p00,), p0)
    assert not prove_ipc((p0,), p00)
    assert not prove_ipc((p0,), p1)
    assert not prove_ipc((p1,), p0)


def test_fast_le_is_the_string_reading():
    a = frozenset({"00", "01"})
    b = frozenset({"0"})
    assert fast_le(a, b)
    assert not fast_le(b, a)
    assert fast_le(a, a)


def test_stream_line_parsing():
    assert parse_stream_line("top [a b] []") == ("top", ["a", "b"], [])
    assert parse_stream_line("  x []  [y]  ") == ("x", [], ["y"])
    for bad in ["", "name", "name [a]", "name [a] [b] [c]", "[a] [b]"]:
        with pytest.raises(OrderInputError):
            parse_stream_line(bad)


def test_json_poset_round_trip_and_errors():
    doc = ('{"elements": ["a", "b", "c"], '
           '"le": [["a", "b"], ["b", "c"]]}')
    p = poset_from_json(doc)
    assert ("a", "c") in p.le          # transitive closure applied
    assert ("a", "a") in p.le
    with pytest.raises(OrderInputError):
        poset_from_json('{"elements": ["a", "a"]}')
    with pytest.raises(OrderInputError):
        poset_from_json('{"elements": ["a"], "le": [["a", "zz"]]}')
    with pytest.raises(OrderInputError):
        poset_from_json('{"elements": ["a", "b"], '
                        '"le": [["a", "b"], ["b", "a"]]}')
    with pytest.raises(OrderInputError):
        poset_from_json("not json at all")


def test_diamond_embeds_and_verifies_both_ways():
    doc = ('{"elements": ["bot", "l", "r", "top"], "le": '
           '[["bot","l"],["bot","r"],["l","top"],["r","top"]]}')
    res = embed_poset(poset_from_json(doc))
    assert res.verify("fast") == []
    assert res.verify("prover") == []
    assert res.le("bot", "top") and not res.le("l", "r")
    assert set(res) == {"bot", "l", "r", "top"}


def test_stream_embedding_checks_its_input():
    with pytest.raises(OrderInputError):
        embed_poset(["a [] []", "a [] []"])          # duplicate
    with pytest.raises(OrderInputError):
        embed_poset(["a [] [zz]"])                   # unseen reference
    with pytest.raises(OrderInputError):
        embed_poset(["a [] []", "b [a] [a]"])        # would coincide
    with pytest.raises(OrderInputError):
        # c below a and above b, but a is not below b
        embed_poset(["a [] []", "b [] []", "c [a] [b]"])


def test_element_cap_is_enforced():
    lines = [f"e{i} [] []" for i in range(9)]
    with pytest.raises(ElementCapError):
        embed_poset(lines)


def test_all_small_posets_embed():
    assert len(poset_iso_classes(1)) == 1
    assert len(poset_iso_classes(2)) == 2
    assert len(poset_iso_classes(3)) == 5
    for spec in poset_iso_classes(3):
        assert embed_poset(spec).verify("fast") == []


def test_lindenbaum_classes_share_formulas():
    def entails(a, b):
        return prove_classical((parse(a),), parse(b))
    out = embed_lindenbaum(["x1", "~~x1", "F"], entails)
    assert out["x1"] is out["~~x1"]             # classically one class
    assert prove_ipc((out["F"],), out["x1"])
    assert not prove_ipc((out["x1"],), out["F"])
