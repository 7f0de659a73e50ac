"""Folding unboundedly many variables into the two-variable model.

Five level-1 anchor nodes pin down two sentinel formulas, phi and psi,
with phi strictly stronger.  The slice region forcing psi but not phi
becomes a derived model over an open-ended variable supply: variable
x_i is read off the order position relative to a dedicated chain head
beta^1_i (a node refutes x_i exactly when it sits below that head).
Chain heads for as many variables as requested are generated by a
four-track recurrence that keeps each generation pairwise incomparable.

The translation into two variables mirrors the interval embedding:
absurdity goes to phi, truth to psi, x_i to the primed characteristic
formula of its chain head (fenced by phi and psi), and implications are
re-fenced with psi.  inject_model maps any rooted finite model into the
derived region, matching variable forcing node by node.

Caveat, verified by the test suite rather than assumed away: the fifth
anchor itself belongs to the derived region, sits above every other
member, and refutes no variable.  Double negations therefore come out
forced everywhere in the derived model, so the image of the translation
separates strictly less than the source logic on formulas built from
negations of satisfiable material; consequence transfers forward
unconditionally but not always backward.
"""

from __future__ import annotations

import json

from .formula import (BOT, TOP, VAR, AND, OR, Formula, var, neg, imp,
                      and_, or_, conj, disj, vars_of, walk, to_str)
from .charform import char_pair
from .kripke import FiniteModel, PreconditionError
from .universal import Universe, InvalidNodeError, build_slice


class VarBoundError(ValueError):
    """A formula mentions a variable the spec has no chain head for."""


class OmegaSpec:
    """Frozen description of the many-to-two translation.

    Attributes: alphas (five anchor ids, the fifth carrying a nonempty
    variable set), beta ((track, depth) -> node id), phi, psi,
    var_bound, universe, and the two fence tuples phi_fence / psi_fence
    (slice nodes whose primed formulas guard phi resp. psi).
    """

    def __init__(self, var_bound: int = 3, universe: Universe | None = None):
        if var_bound < 1:
            raise ValueError("var_bound must be at least 1")
        self.var_bound = var_bound
        self.universe = universe if universe is not None else build_slice(2, 1)
        u = self.universe
        lev1 = u.level_ids(1)
        first4 = tuple(lev1[:4])
        # the fifth anchor must admit a singleton node below it, hence
        # the nonempty variable set
        fifth = next(nid for nid in lev1 if u.nodes[nid].U)
        self.alphas = first4 + (fifth,)
        pool = u.level_ids(0) + lev1
        cover4 = frozenset().union(*[u.nodes[a].up for a in first4])
        cover5 = cover4 | u.nodes[fifth].up
        self.phi_fence = tuple(x for x in pool if x not in cover4)
        self.psi_fence = tuple(x for x in pool if x not in cover5)
        self.phi = and_(
            neg(neg(disj([char_pair(u, a)[0] for a in first4]))),
            conj([char_pair(u, d)[1] for d in self.phi_fence]))
        self.psi = and_(
            neg(neg(disj([char_pair(u, a)[0] for a in self.alphas]))),
            conj([char_pair(u, d)[1] for d in self.psi_fence]))
        self.beta: dict[tuple[int, int], int] = {}
        for j in range(1, 5):
            self.beta[(j, 0)] = self.alphas[j - 1]
        for i in range(1, var_bound + 1):
            b2 = self.beta[(2, i - 1)]
            b3 = self.beta[(3, i - 1)]
            b4 = self.beta[(4, i - 1)]
            self.beta[(1, i)] = u.make_node((b2, b3), ())
            self.beta[(2, i)] = u.make_node((b2, b4), ())
            self.beta[(3, i)] = u.make_node((b3, b4), ())
            self.beta[(4, i)] = u.make_node((b2, b3, b4), ())
        self._f: dict[int, Formula] = {}


def build_omega_spec(var_bound: int = 3,
                     universe: Universe | None = None) -> OmegaSpec:
    return OmegaSpec(var_bound, universe)


def in_derived_model(spec: OmegaSpec, node: int) -> bool:
    """Whether the slice node forces psi but not phi."""
    u = spec.universe
    return u.force_at(node, spec.psi) and not u.force_at(node, spec.phi)


def _check_vars(spec: OmegaSpec, f: Formula) -> None:
    bad = [v for v in vars_of(f) if v > spec.var_bound]
    if bad:
        raise VarBoundError(
            f"x{min(bad)} has no chain head at var_bound={spec.var_bound}; "
            "build a spec with a larger bound first")


def virtual_force(spec: OmegaSpec, node: int, f: Formula) -> bool:
    """Forcing at a derived-model node, variables read off chain heads.

    The universe of the evaluation is the node's up-set restricted to
    the derived region.  Chain heads force psi and phi both; they are
    accepted as evaluation roots (their verdicts are over the members
    above them plus themselves), everything else must force psi.
    """
    u = spec.universe
    if not u.force_at(node, spec.psi):
        raise InvalidNodeError(f"node {node} does not force psi; it lies "
                               "outside the derived model")
    _check_vars(spec, f)
    members = sorted(m for m in u.nodes[node].up
                     if m == node or in_derived_model(spec, m))
    heads = {i: spec.beta[(1, i)] for i in range(1, spec.var_bound + 1)}
    rows: dict[int, dict[int, bool]] = {}
    for sub in walk(f):
        if sub.id in rows:
            continue
        k = sub.kind
        if k == BOT:
            row = {m: False for m in members}
        elif k == TOP:
            row = {m: True for m in members}
        elif k == VAR:
            h = heads[sub.var]
            row = {m: h not in u.nodes[m].up for m in members}
        elif k == AND:
            ra, rb = rows[sub.a.id], rows[sub.b.id]
            row = {m: ra[m] and rb[m] for m in members}
        elif k == OR:
            ra, rb = rows[sub.a.id], rows[sub.b.id]
            row = {m: ra[m] or rb[m] for m in members}
        else:
            ra, rb = rows[sub.a.id], rows[sub.b.id]
            row = {}
            for m in members:
                mup = u.nodes[m].up
                row[m] = all(not ra[m2] or rb[m2] for m2 in members
                             if m2 in mup or m2 == m)
        rows[sub.id] = row
    return rows[f.id][node]


def f_omega(spec: OmegaSpec, rho: Formula) -> Formula:
    """Translate a formula over the open alphabet into two variables."""
    _check_vars(spec, rho)
    memo = spec._f
    u = spec.universe
    for sub in walk(rho):
        if sub.id in memo:
            continue
        k = sub.kind
        if k == BOT:
            out = spec.phi
        elif k == TOP:
            out = spec.psi
        elif k == VAR:
            prime = char_pair(u, spec.beta[(1, sub.var)])[1]
            out = and_(or_(prime, spec.phi), spec.psi)
        elif k == AND:
            out = and_(memo[sub.a.id], memo[sub.b.id])
        elif k == OR:
            out = or_(memo[sub.a.id], memo[sub.b.id])
        else:
            out = and_(imp(memo[sub.a.id], memo[sub.b.id]), spec.psi)
        memo[sub.id] = out
    return memo[rho.id]


def inject_model(spec: OmegaSpec, model: FiniteModel,
                 considered_vars) -> dict[int, int]:
    """Map a rooted finite model into the derived region.

    Each node goes to the slice node generated by: the chain heads of
    the considered variables it refutes, the images of its immediate
    successors, and the fifth anchor.  Variables outside considered_vars
    count as forced everywhere, so they contribute nothing.  Returns
    model node -> slice node id.
    """
    considered = sorted(set(considered_vars))
    for i in considered:
        if i < 1:
            raise ValueError("variable indices start at 1")
        if i > spec.var_bound:
            raise VarBoundError(
                f"x{i} has no chain head at var_bound={spec.var_bound}; "
                "build a spec with a larger bound first")
    if not any(len(model.up[i]) == model.n for i in range(model.n)):
        raise PreconditionError("model has no root")
    u = spec.universe
    fifth = spec.alphas[4]
    out: dict[int, int] = {}
    # maximal nodes have the smallest up-sets; images exist before use
    for gamma in sorted(range(model.n), key=lambda i: len(model.up[i])):
        gen = {spec.beta[(1, i)] for i in considered
               if i not in model.val[gamma]}
        gen |= {out[g2] for g2 in model.covers(gamma)}
        gen.add(fifth)
        out[gamma] = u.make_node(u.reduce_antichain(gen), ())
    return out


def spec_to_json(spec: OmegaSpec) -> str:
    return json.dumps({
        "var_bound": spec.var_bound,
        "alphas": list(spec.alphas),
        "beta": {f"{j}:{i}": nid for (j, i), nid in sorted(spec.beta.items())},
        "phi": to_str(spec.phi),
        "psi": to_str(spec.psi)})
