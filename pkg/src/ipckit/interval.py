"""Embedding m-variable logic into an interval of the two-variable
universal model.

The target interval sits between a chosen antichain A of m level-1
nodes (each with a private immediate successor) and a family of guard
nodes gamma_B, one per subset B of A: gamma_B sits directly below B
plus all successors of the rest of A.  The translation of an
m-variable formula is forced exactly on (image of its own model cone)
union (everything forcing phi), which makes consequence transfer in
both directions; an inverse map recovers the source formula up to
equivalence.

phi picks out the nodes above A.  psi adds two fences: nothing may
escape sideways (psi1, built from primed characteristic formulas of the
maximal nodes incomparable to every guard), and every branch must stay
above some guard (psi0, a double negation over all gamma_B).

The one-variable case degenerates: phi is absurdity, psi is the second
variable, and the translation just fences variables and implications
with x2, which amounts to conjoining x2 once.
"""

from __future__ import annotations

from .formula import (BOT, TOP, VAR, AND, OR, IMP, Formula, var, neg, imp,
                      and_, or_, conj, disj, bot, top, vars_of, walk)
from .charform import char_pair
from .prover import prove_ipc
from .universal import Universe, build_slice


class IntervalSpec:
    """Frozen description of one interval embedding; m in 1..3.

    Attributes: m, n (=2), level (of A), A (node ids), gamma (frozenset
    of A-subset -> guard node id), maxS (ids of the side fence), phi,
    psi, psi0, psi1, universe.  Instances own their universe slice and
    memoize translations; treat them as immutable.
    """

    def __init__(self, m: int, universe: Universe | None = None):
        if m not in (1, 2, 3):
            raise ValueError("m must be 1, 2, or 3 at desk scale")
        self.m = m
        self.n = 2
        self.universe = universe if universe is not None else build_slice(2, 1)
        u = self.universe
        self._f: dict[int, Formula] = {}
        self._h: dict[int, Formula] = {}
        if m == 1:
            self.level = None
            self.A = ()
            self.gamma = {}
            self.maxS = ()
            self.phi = bot()
            self.psi = var(2)
            self.psi0 = None
            self.psi1 = None
            return
        self.level = 1
        lev0 = u.level_ids(0)
        # private successors keep A's members cleanly apart
        if m == 2:
            tsets = [(lev0[0], lev0[1]), (lev0[2], lev0[3])]
        else:
            tsets = [(lev0[0], lev0[1]), (lev0[1], lev0[2]),
                     (lev0[1], lev0[3])]
        self.A = tuple(u.find(t, ()) for t in tsets)
        if any(a is None for a in self.A):
            raise RuntimeError("slice is missing the anchor antichain")
        for k, a in enumerate(self.A):
            others = set()
            for j, b in enumerate(self.A):
                if j != k:
                    others |= set(u.nodes[b].T)
            if not (set(u.nodes[a].T) - others):
                raise RuntimeError("anchor node lacks a private successor")
        self.gamma = {}
        for mask in range(1 << m):
            B = frozenset(self.A[k] for k in range(m) if mask >> k & 1)
            tset = set(B)
            for k in range(m):
                if self.A[k] not in B:
                    tset |= set(u.nodes[self.A[k]].T)
            self.gamma[B] = u.make_node(u.reduce_antichain(tset), ())
        self.maxS = _targeted_maxS(u, self.A, tuple(self.gamma.values()))
        self.phi = disj([char_pair(u, a)[0] for a in self.A])
        order = sorted(self.gamma, key=lambda B: sorted(B))
        self.psi0 = neg(neg(disj([char_pair(u, self.gamma[B])[0]
                                  for B in order])))
        self.psi1 = conj([char_pair(u, r)[1] for r in self.maxS])
        self.psi = and_(self.psi0, self.psi1)


def _targeted_maxS(u: Universe, A, gammas) -> tuple[int, ...]:
    """Maximal nodes incomparable to every guard, built directly.

    Within levels 0..1 these are the level-1 nodes outside every guard's
    up-set (level-0 nodes all sit above the bottom guard).  At level 2
    a candidate stays incomparable exactly when its level-1 successors
    all come from A; everything else either meets a guard's up-set or
    slips below the bottom guard.  Maximality then only excludes nodes
    whose strict up-set meets the rest of S, which the same shape
    argument settles.
    """
    comparable = set()
    for g in gammas:
        comparable |= u.nodes[g].up
    for x in u.level_ids(0) + u.level_ids(1):
        for g in gammas:
            if g in u.nodes[x].up:
                comparable.add(x)
    s01 = [x for x in u.level_ids(0) + u.level_ids(1) if x not in comparable]
    maximal = [x for x in s01
               if not (u.nodes[x].up - {x}) & set(s01)]
    gamma_keys = {(u.nodes[g].T, u.nodes[g].U) for g in gammas}
    lev2 = []
    aset = list(A)
    lev0 = u.level_ids(0)
    cands = []
    for mask in range(1, 1 << len(aset)):
        s1 = [aset[k] for k in range(len(aset)) if mask >> k & 1]
        taken = set()
        for b in s1:
            taken |= set(u.nodes[b].T)
        free0 = [x for x in lev0 if x not in taken]
        for m0 in range(1 << len(free0)):
            s0 = [free0[j] for j in range(len(free0)) if m0 >> j & 1]
            T = tuple(sorted(s1 + s0))
            w = frozenset.intersection(*[u.nodes[t].U for t in T])
            for U in _subsets(w):
                if len(T) == 1 and U == u.nodes[T[0]].U:
                    continue
                if (T, U) in gamma_keys:
                    continue
                cands.append((T, U))
    for T, U in sorted(cands):
        lev2.append(u.make_node(T, U))
    return tuple(sorted(maximal) + lev2)


def _subsets(s: frozenset):
    items = sorted(s)
    for mask in range(1 << len(items)):
        yield frozenset(items[j] for j in range(len(items)) if mask >> j & 1)


def build_interval_spec(m: int, universe: Universe | None = None) -> IntervalSpec:
    return IntervalSpec(m, universe)


def f_interval(spec: IntervalSpec, rho: Formula) -> Formula:
    """Push an m-variable formula into the interval."""
    bad = [v for v in vars_of(rho) if v > spec.m]
    if bad:
        raise ValueError(f"x{min(bad)} is outside the source alphabet "
                         f"V_{spec.m}")
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
            if spec.m == 1:
                # degenerate case: conjoin the guard variable directly,
                # keeping the and/or clauses structural
                out = and_(sub, spec.psi)
            else:
                prime = char_pair(u, spec.A[sub.var - 1])[1]
                out = and_(or_(prime, spec.phi), spec.psi)
        elif k == AND:
            out = and_(memo[sub.a.id], memo[sub.b.id])
        elif k == OR:
            out = or_(memo[sub.a.id], memo[sub.b.id])
        else:
            out = and_(imp(memo[sub.a.id], memo[sub.b.id]), spec.psi)
        memo[sub.id] = out
    return memo[rho.id]


def h_interval(spec: IntervalSpec, rho: Formula) -> Formula:
    """Inverse direction: strip an interval image back to m variables.

    Implications consult the slice: if some level-0 node forcing phi
    refutes the implication, the whole thing collapses to absurdity;
    otherwise the translated implication is fenced with the variables
    whose anchor refutes it.
    """
    if spec.m == 1:
        return _h_one(rho)
    u = spec.universe
    guard_nodes = [d for a in spec.A for d in u.nodes[a].T]
    guard_nodes = sorted(set(guard_nodes))
    memo = spec._h
    for sub in walk(rho):
        if sub.id in memo:
            continue
        k = sub.kind
        if k == BOT or k == VAR:
            out = bot()
        elif k == TOP:
            out = top()
        elif k == AND:
            out = and_(memo[sub.a.id], memo[sub.b.id])
        elif k == OR:
            out = or_(memo[sub.a.id], memo[sub.b.id])
        else:
            if any(not u.force_at(d, sub) for d in guard_nodes):
                out = bot()
            else:
                fence = [var(k0 + 1) for k0, a in enumerate(spec.A)
                         if not u.force_at(a, sub)]
                out = conj([imp(memo[sub.a.id], memo[sub.b.id])] + fence)
        memo[sub.id] = out
    return memo[rho.id]


def _h_one(rho: Formula) -> Formula:
    memo: dict[int, Formula] = {}
    for sub in walk(rho):
        k = sub.kind
        if k == BOT:
            out = bot()
        elif k == TOP:
            out = top()
        elif k == VAR:
            out = var(1) if sub.var == 1 else top()
        elif k == AND:
            out = and_(memo[sub.a.id], memo[sub.b.id])
        elif k == OR:
            out = or_(memo[sub.a.id], memo[sub.b.id])
        else:
            out = imp(memo[sub.a.id], memo[sub.b.id])
        memo[sub.id] = out
    return memo[rho.id]


def g_map(spec: IntervalSpec, source: Universe) -> dict[int, int]:
    """Order isomorphism from a source slice onto interval nodes.

    Maximal source nodes land on guards (drop an anchor for each
    variable the node forces); higher nodes go to the reduced antichain
    of their successors' images plus the anchors of their unforced
    variables.  Returns source id -> target id; new target nodes are
    interned on demand.
    """
    if spec.m == 1:
        raise ValueError("the one-variable embedding has no node map")
    if source.n != spec.m:
        raise ValueError(f"source slice is over {source.n} variables, "
                         f"spec wants {spec.m}")
    u = spec.universe
    out: dict[int, int] = {}
    for nd in source.nodes:
        missing = [spec.A[k] for k in range(spec.m) if (k + 1) not in nd.U]
        if nd.level == 0:
            out[nd.id] = spec.gamma[frozenset(missing)]
        else:
            tset = set(missing) | {out[t] for t in nd.T}
            out[nd.id] = u.make_node(u.reduce_antichain(tset), ())
    return out


def audit_disjoint(spec: IntervalSpec,
                   source: Universe | None = None) -> list[int]:
    """Slice audit of the cone decomposition behind the embedding.

    The interval's upper cone should decompose exactly into the lower
    cone plus the image of the source slice: a constructed node of
    level <= 2 forces psi iff it forces phi or is a g_map image.
    Returns the offending node ids, empty when the decomposition holds.
    """
    if spec.m == 1:
        raise ValueError("the one-variable embedding has no node map")
    u = spec.universe
    if source is None:
        source = build_slice(spec.m, 0)
    ran = set(g_map(spec, source).values())
    bad = []
    for nd in list(u.nodes):
        if nd.level > 2:
            continue
        want = nd.id in ran or u.force_at(nd.id, spec.phi)
        if u.force_at(nd.id, spec.psi) != want:
            bad.append(nd.id)
    return bad


def maxS_oracle(spec: IntervalSpec) -> tuple[int, ...]:
    """Independent fence check: enumerate every level-2 candidate of the
    two-variable model, plus all materialized low nodes, and keep the
    maximal ones incomparable to every guard.  Streams raw (T, U) pairs,
    so it does not depend on the targeted construction above."""
    u = spec.universe
    gammas = tuple(spec.gamma.values())
    lev01 = u.level_ids(0) + u.level_ids(1)
    g_low = [g for g in gammas if u.nodes[g].level <= 1]
    g_hi_keys = {(u.nodes[g].T, u.nodes[g].U) for g in gammas
                 if u.nodes[g].level == 2}
    s01 = []
    for x in lev01:
        xup = u.nodes[x].up
        if any(g in xup for g in g_low):
            continue
        if any(x in u.nodes[g].up for g in gammas):
            continue
        s01.append(x)
    s01set = set(s01)
    low_max = [x for x in s01 if not (u.nodes[x].up - {x}) & s01set]

    lev1 = u.level_ids(1)
    lev0 = u.level_ids(0)
    found = []
    for mask in range(1, 1 << len(lev1)):
        s1 = [lev1[j] for j in range(len(lev1)) if mask >> j & 1]
        upset = set()
        for b in s1:
            upset |= u.nodes[b].up
        free0 = [x for x in lev0 if x not in upset]
        wbase = frozenset.intersection(*[u.nodes[b].U for b in s1])
        for m0 in range(1 << len(free0)):
            s0 = [free0[j] for j in range(len(free0)) if m0 >> j & 1]
            T = tuple(sorted(s1 + s0))
            strict_up = upset | set(s0)
            # incomparable to every guard, and maximal: no strict
            # ancestor may lie in S
            if any(g in strict_up for g in g_low):
                continue
            if strict_up & s01set:
                continue
            w = wbase
            for x in s0:
                w = w & u.nodes[x].U
            for U in _subsets(w):
                if len(T) == 1 and U == u.nodes[T[0]].U:
                    continue
                if (T, U) in g_hi_keys:
                    continue
                found.append((T, U))
    hi = [u.make_node(T, U) for T, U in sorted(found)]
    return tuple(sorted(low_max) + hi)


def lift_tautology(f_fn):
    """Wrap a translation so provable inputs map to provable outputs:
    the image becomes translated-truth -> translated-formula."""
    t = f_fn(top())

    def lifted(rho: Formula) -> Formula:
        return imp(t, f_fn(rho))
    return lifted


def gate_tautology(f_fn, timeout: float | None = None):
    """Tautology-respecting variant by case split: provable inputs map
    to truth itself, everything else translates as usual."""
    def gated(rho: Formula) -> Formula:
        if prove_ipc((), rho, timeout):
            return top()
        return f_fn(rho)
    return gated
