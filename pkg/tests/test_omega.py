import pytest

from ipckit.formula import parse, to_str, var
from ipckit.kripke import FiniteModel, PreconditionError, force
from ipckit.omega import (VarBoundError, build_omega_spec, f_omega,
                          in_derived_model, inject_model, virtual_force)
from ipckit.prover import prove_ipc
from ipckit.universal import InvalidNodeError


def _spec():
    if not hasattr(_spec, "cached"):
        _spec.cached = build_omega_spec(3)
    return _spec.cached


def test_anchor_shape():
    s = _spec()
    u = s.universe
    assert len(s.alphas) == 5
    assert len(set(s.alphas)) == 5
    for a in s.alphas:
        assert u.nodes[a].level == 1
    # the fifth anchor carries a variable, the first four need not
    assert u.nodes[s.alphas[4]].U


def test_sentinels_nest_strictly():
    s = _spec()
    assert prove_ipc((s.phi,), s.psi)
    assert not prove_ipc((s.psi,), s.phi)


def test_chain_heads_are_pairwise_incomparable():
    s = _spec()
    u = s.universe
    for i in range(1, 4):
        for j in range(1, 4):
            if i != j:
                hi, hj = s.beta[(1, i)], s.beta[(1, j)]
                assert hi not in u.nodes[hj].up


def test_variable_reading_at_heads():
    # a chain head refutes its own variable and forces all the others;
    # heads force both sentinels, so they sit on the region's rim and
    # are accepted only as evaluation roots
    s = _spec()
    for i in range(1, 4):
        h = s.beta[(1, i)]
        assert not in_derived_model(s, h)
        for j in range(1, 4):
            assert virtual_force(s, h, var(j)) == (i != j)


def test_region_top_forces_everything():
    # the fifth anchor sits above the whole derived region and refutes
    # no variable, so double negations hold region-wide: this is the
    # intrinsic ceiling on backward transfer
    s = _spec()
    top_node = s.alphas[4]
    assert in_derived_model(s, top_node)
    for j in range(1, 4):
        assert virtual_force(s, top_node, var(j))
    assert virtual_force(s, top_node, parse("~~x1"))
    assert prove_ipc((s.psi,), f_omega(s, parse("~~x1")))


def test_translation_clauses():
    s = _spec()
    assert f_omega(s, parse("F")) is s.phi
    assert f_omega(s, parse("T")) is s.psi


def test_forward_consequence_transfer():
    s = _spec()
    pairs = [("x1", "x1 | x2"), ("x1 & x2", "x2"), ("x1 & (x1 -> x2)", "x2")]
    for a_text, b_text in pairs:
        a, b = parse(a_text), parse(b_text)
        assert prove_ipc((a,), b)
        assert prove_ipc((f_omega(s, a),), f_omega(s, b))


def test_virtual_force_rejects_nodes_outside_region():
    s = _spec()
    with pytest.raises(InvalidNodeError):
        virtual_force(s, s.psi_fence[0], var(1))


def test_var_bound_is_enforced():
    s = _spec()
    with pytest.raises(VarBoundError):
        f_omega(s, var(4))
    with pytest.raises(VarBoundError):
        virtual_force(s, s.alphas[4], var(4))
    with pytest.raises(VarBoundError):
        inject_model(s, FiniteModel([[]], [set()]), {4})
    with pytest.raises(ValueError):
        build_omega_spec(0)


def test_inject_model_needs_a_root():
    s = _spec()
    two_islands = FiniteModel([[], []], [set(), set()])
    with pytest.raises(PreconditionError):
        inject_model(s, two_islands, {1})


def test_inject_model_matches_positive_forcing():
    s = _spec()
    m = FiniteModel([[1, 2], [], []], [set(), {1}, {2}])
    g = inject_model(s, m, {1, 2})
    assert len(set(g.values())) == 3
    for f in [var(1), var(2), parse("x1 | x2"), parse("x1 -> x2")]:
        for node in range(3):
            assert force(m, node, f) == virtual_force(s, g[node], f), \
                (to_str(f), node)


def test_inject_model_negation_gap():
    # the region top hovers above every image, so a negation true in the
    # source can fail at the injected copy: the embedding is faithful
    # for the positive data, not for refutation patterns
    s = _spec()
    m = FiniteModel([[1, 2], [], []], [set(), {1}, {2}])
    g = inject_model(s, m, {1, 2})
    assert force(m, 2, parse("~x1"))
    assert not virtual_force(s, g[2], parse("~x1"))
