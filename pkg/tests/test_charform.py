from ipckit.charform import char_pair, verify_char_slice
from ipckit.prover import prove_ipc, equiv_ipc
from ipckit.universal import build_slice


def test_plain_formula_carves_the_cone():
    u = build_slice(2, 1)
    for nid in (0, 3, 4, 9):
        phi = char_pair(u, nid)[0]
        up = u.nodes[nid].up
        for m in range(22):
            assert u.force_at(m, phi) == (m in up), (nid, m)


def test_primed_formula_carves_the_open_complement():
    u = build_slice(2, 1)
    for nid in (0, 3, 4, 9):
        primed = char_pair(u, nid)[1]
        for m in range(22):
            assert u.force_at(m, primed) == (nid not in u.nodes[m].up), \
                (nid, m)


def test_maximal_node_formula_is_classically_decided():
    u = build_slice(2, 1)
    for nid in u.level_ids(0):
        phi = char_pair(u, nid)[0]
        holders = [m for m in u.level_ids(0) if u.force_at(m, phi)]
        assert holders == [nid]


def test_derivability_reflects_order():
    # phi_b proves phi_a exactly when b sits above a, i.e. the smaller
    # cone entails the formula of the larger one
    u = build_slice(2, 1)
    n4 = u.find((0, 1), ())
    phi0, phi4 = char_pair(u, 0)[0], char_pair(u, n4)[0]
    assert prove_ipc((phi0,), phi4)       # 0 lies above node 4
    assert not prove_ipc((phi4,), phi0)
    assert not prove_ipc((char_pair(u, 2)[0],), phi4)  # 2 not above node 4


def test_plain_vs_primed_split():
    # a node forces its own plain formula, never its own primed one
    u = build_slice(2, 1)
    for nid in range(22):
        plain, primed = char_pair(u, nid)
        assert u.force_at(nid, plain)
        assert not u.force_at(nid, primed)
        assert not prove_ipc((plain,), primed)


def test_pairs_are_memoized():
    u = build_slice(2, 1)
    assert char_pair(u, 5)[0] is char_pair(u, 5)[0]


def test_slice_report_is_clean():
    rep = verify_char_slice(build_slice(2, 1))
    assert rep.ok
    assert rep.nodes_checked == 22
    assert rep.pairs_checked == 484
    assert rep.violations == []
