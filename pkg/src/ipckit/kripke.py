"""Finite Kripke models over posets, with persistent valuations.

Nodes are 0..n-1.  `succ[i]` lists nodes strictly above i (any set whose
reflexive-transitive closure gives the intended order is accepted).
Valuations must be persistent: anything true at a node stays true above
it.  Forcing is computed bottom-up over subformula tables, so repeated
queries against one model are cheap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .formula import (BOT, TOP, VAR, AND, OR, IMP, Formula, walk, vars_of)


class ModelError(ValueError):
    pass


class PreconditionError(Exception):
    """A lemma's hypotheses do not hold for the supplied instance."""


class FiniteModel:
    def __init__(self, succ, val):
        if len(succ) != len(val):
            raise ModelError("succ and val disagree on node count")
        self.n = len(succ)
        self.succ = tuple(tuple(sorted(set(s))) for s in succ)
        for s in self.succ:
            for j in s:
                if not 0 <= j < self.n:
                    raise ModelError(f"successor {j} out of range")
        self.val = tuple(frozenset(v) for v in val)
        for vs in self.val:
            for p in vs:
                if p < 1:
                    raise ModelError("variable indices start at 1")
        self.up = self._close()
        for i in range(self.n):
            for j in self.up[i]:
                if not self.val[i] <= self.val[j]:
                    raise ModelError(f"valuation not persistent: {i} -> {j}")
        self._tables: dict[int, tuple[bool, ...]] = {}

    def _close(self):
        up = []
        for i in range(self.n):
            seen = set()
            stack = list(self.succ[i])
            while stack:
                j = stack.pop()
                if j in seen:
                    continue
                seen.add(j)
                stack.extend(self.succ[j])
            if i in seen:
                raise ModelError(f"cycle through node {i}")
            seen.add(i)
            up.append(frozenset(seen))
        return tuple(up)

    def covers(self, i: int) -> tuple[int, ...]:
        """Immediate successors of i in the induced order."""
        strict = self.up[i] - {i}
        return tuple(sorted(w for w in strict
                            if all(v == w or w not in self.up[v]
                                   for v in strict)))

    def table(self, f: Formula) -> tuple[bool, ...]:
        hit = self._tables.get(f.id)
        if hit is not None:
            return hit
        for sub in walk(f):
            if sub.id in self._tables:
                continue
            k = sub.kind
            if k == BOT:
                row = (False,) * self.n
            elif k == TOP:
                row = (True,) * self.n
            elif k == VAR:
                row = tuple(sub.var in self.val[i] for i in range(self.n))
            elif k == AND:
                a, b = self._tables[sub.a.id], self._tables[sub.b.id]
                row = tuple(x and y for x, y in zip(a, b))
            elif k == OR:
                a, b = self._tables[sub.a.id], self._tables[sub.b.id]
                row = tuple(x or y for x, y in zip(a, b))
            else:
                a, b = self._tables[sub.a.id], self._tables[sub.b.id]
                row = tuple(all(not a[w] or b[w] for w in self.up[i])
                            for i in range(self.n))
            self._tables[sub.id] = row
        return self._tables[f.id]

    def to_json(self) -> str:
        return json.dumps({"nodes": self.n,
                           "succ": [list(s) for s in self.succ],
                           "val": [sorted(v) for v in self.val]})

    @classmethod
    def from_json(cls, text: str) -> "FiniteModel":
        d = json.loads(text)
        if d.get("nodes") != len(d.get("succ", [])):
            raise ModelError("node count mismatch in model JSON")
        return cls(d["succ"], d["val"])


def force(model: FiniteModel, node: int, f: Formula) -> bool:
    if not 0 <= node < model.n:
        raise ModelError(f"node {node} out of range")
    return model.table(f)[node]


def cone(model: FiniteModel, node: int) -> tuple[FiniteModel, int]:
    """Submodel on the up-set of node, and node's index inside it.

    The result is rooted: every node of the cone lies above the image
    of node.  Forcing is unchanged by the restriction since forcing
    only ever looks upward.
    """
    if not 0 <= node < model.n:
        raise ModelError(f"node {node} out of range")
    keep = sorted(model.up[node])
    ix = {old: new for new, old in enumerate(keep)}
    succ = [[ix[j] for j in model.succ[old] if j in ix] for old in keep]
    val = [model.val[old] for old in keep]
    return FiniteModel(succ, val), ix[node]


@dataclass(frozen=True)
class Countermodel:
    model: FiniteModel
    node: int


@dataclass(frozen=True)
class NoneUpTo:
    bound: int


def _posets(n: int):
    """All partial orders on 0..n-1 with i<j edge normalization.

    Yields up-set tuples (bitmask per node, reflexive).  Every poset on n
    labeled points is isomorphic to one where the order refines integer
    order, so for countermodel search this enumeration is exhaustive.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                up[i] |= 1 << j
        ok = True
        for i in range(n):
            m = up[i]
            j = 0
            rest = m
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                if up[j] & ~m:
                    ok = False
                    break
                rest ^= low
            if not ok:
                break
        if ok:
            yield tuple(up)


def _upclosed_sets(up: tuple[int, ...], n: int):
    out = []
    for s in range(1 << n):
        good = True
        for i in range(n):
            if s >> i & 1 and up[i] & ~s:
                good = False
                break
        if good:
            out.append(s)
    return out


def semantic_consequence_search(premises, goal: Formula, max_nodes: int = 4):
    """Hunt for a finite counterexample to premises |= goal.

    Returns a Countermodel whose node forces every premise but not the
    goal, or NoneUpTo(max_nodes) when no model that small refutes the
    consequence.  Exhaustive over posets up to max_nodes nodes, so only
    sensible for small bounds.
    """
    premises = tuple(premises)
    vs = sorted(set(vars_of(goal)).union(*[vars_of(p) for p in premises])
                if premises else vars_of(goal))
    forms = premises + (goal,)
    for n in range(1, max_nodes + 1):
        for up in _posets(n):
            ups = _upclosed_sets(up, n)
            stack = [[]]
            while stack:
                chosen = stack.pop()
                if len(chosen) < len(vs):
                    for s in ups:
                        stack.append(chosen + [s])
                    continue
                tabs = _eval_masks(forms, up, n, vs, chosen)
                good = (1 << n) - 1
                for t in tabs[:-1]:
                    good &= t
                wit = good & ~tabs[-1] & ((1 << n) - 1)
                if wit:
                    node = (wit & -wit).bit_length() - 1
                    succ = [[j for j in range(n)
                             if up[i] >> j & 1 and j != i] for i in range(n)]
                    val = [set() for _ in range(n)]
                    for k, v in enumerate(vs):
                        for i in range(n):
                            if chosen[k] >> i & 1:
                                val[i].add(v)
                    m = FiniteModel(succ, val)
                    assert all(force(m, node, p) for p in premises)
                    assert not force(m, node, goal)
                    return Countermodel(m, node)
    return NoneUpTo(max_nodes)


def _eval_masks(forms, up, n, vs, chosen):
    """Forcing masks (bit i = node i) for each formula on one candidate."""
    full = (1 << n) - 1
    vmask = {v: chosen[k] for k, v in enumerate(vs)}
    cache: dict[int, int] = {}
    out = []
    for f in forms:
        for sub in walk(f):
            if sub.id in cache:
                continue
            k = sub.kind
            if k == BOT:
                m = 0
            elif k == TOP:
                m = full
            elif k == VAR:
                m = vmask.get(sub.var, 0)
            elif k == AND:
                m = cache[sub.a.id] & cache[sub.b.id]
            elif k == OR:
                m = cache[sub.a.id] | cache[sub.b.id]
            else:
                bad = cache[sub.a.id] & ~cache[sub.b.id] & full
                m = 0
                for i in range(n):
                    if not up[i] & bad:
                        m |= 1 << i
            cache[sub.id] = m
        out.append(cache[f.id])
    return out


def two_successor_lemma_check(model: FiniteModel, node: int, f: Formula) -> bool:
    """Agreement transfer across a two-successor node.

    Hypotheses: node has exactly two immediate successors, those two
    agree on every subformula of f, and every variable of f they force
    is already forced at node.  Under them, node itself agrees with the
    successors on every subformula of f.  Raises PreconditionError when
    the hypotheses fail; otherwise returns whether agreement holds at
    node (the lemma says it always does).
    """
    if not 0 <= node < model.n:
        raise ModelError(f"node {node} out of range")
    cov = model.covers(node)
    if len(cov) != 2:
        raise PreconditionError(f"node {node} has {len(cov)} immediate "
                                f"successors, need exactly 2")
    s1, s2 = cov
    subs = list(walk(f))
    for sub in subs:
        t = model.table(sub)
        if t[s1] != t[s2]:
            raise PreconditionError("successors disagree on a subformula")
    for v in sorted(vars_of(f)):
        if v in model.val[s1] and v not in model.val[node]:
            raise PreconditionError(f"variable x{v} forced above but not at "
                                    f"node {node}")
    return all(model.table(sub)[node] == model.table(sub)[s1]
               for sub in subs)


def random_model(rng, max_nodes: int = 8, max_vars: int = 3) -> FiniteModel:
    """Random persistent model: a layered DAG, valuations grown downward
    from the maximal nodes so persistence holds by construction."""
    n = rng.randint(1, max_nodes)
    succ = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.35:
                succ[i].append(j)
    up = [set([i]) for i in range(n)]
    for i in range(n - 1, -1, -1):
        for j in succ[i]:
            up[i] |= up[j]
    val = [set() for _ in range(n)]
    for i in range(n - 1, -1, -1):
        above = up[i] - {i}
        if above:
            common = set.intersection(*[val[j] for j in above])
        else:
            common = set(range(1, max_vars + 1))
        val[i] = {v for v in common if rng.random() < 0.6}
    return FiniteModel(succ, val)
