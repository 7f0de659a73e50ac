"""Characteristic formula pairs for universal-model nodes.

Each node alpha gets a pair (phi, phi').  phi is forced exactly on the
up-set of alpha; phi' is forced exactly at the nodes NOT below alpha.
At level 0 phi fixes the node's variable set outright.  Higher up, phi
pins the node through its immediate successors: it asserts the node's
variables and forces any strict improvement (an extra variable, or an
escape past some successor) to land in a successor's up-set.  phi' is
uniformly phi -> (disjunction of successor phis); with no successors
that disjunction is empty, i.e. absurdity, making phi' the negation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formula import Formula, var, neg, imp, conj, disj, bot
from .universal import Universe

_tables: dict[int, dict[int, tuple[Formula, Formula]]] = {}


def char_pair(u: Universe, nid: int) -> tuple[Formula, Formula]:
    tab = _tables.setdefault(id(u), {})
    hit = tab.get(nid)
    if hit is not None:
        return hit
    node = u.nodes[nid]
    have = sorted(node.U)
    missing = [i for i in range(1, u.n + 1) if i not in node.U]
    if node.level == 0:
        ph = conj([var(i) for i in have] + [neg(var(i)) for i in missing])
        pair = (ph, imp(ph, bot()))
    else:
        sphi, sprime = [], []
        for t in node.T:
            p, q = char_pair(u, t)
            sphi.append(p)
            sprime.append(q)
        succ_disj = disj(sphi)
        escape = disj([var(i) for i in missing] + sprime)
        ph = conj([var(i) for i in have] + [imp(escape, succ_disj)])
        pair = (ph, imp(ph, succ_disj))
    tab[nid] = pair
    return pair


@dataclass
class CharReport:
    nodes_checked: int
    pairs_checked: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_char_slice(u: Universe, level_bound: int | None = None,
                      sample_cap: int | None = None) -> CharReport:
    """Check both halves of the defining property on a slice.

    For every alpha with level <= level_bound and every materialized
    beta (the first sample_cap of them, if capped): beta forces phi_alpha
    exactly when alpha <= beta, and forces phi'_alpha exactly when beta
    is not below alpha.
    """
    alphas = [nd.id for nd in u.nodes
              if level_bound is None or nd.level <= level_bound]
    betas = [nd.id for nd in u.nodes]
    if sample_cap is not None and len(betas) > sample_cap:
        betas = betas[:sample_cap]
    rep = CharReport(nodes_checked=len(alphas), pairs_checked=0)
    for a in alphas:
        ph, pp = char_pair(u, a)
        up_a = u.nodes[a].up
        for b in betas:
            rep.pairs_checked += 1
            if u.force_at(b, ph) != (b in up_a):
                rep.violations.append((a, b, "plain"))
            if u.force_at(b, pp) != (a not in u.nodes[b].up):
                rep.violations.append((a, b, "primed"))
    return rep
