"""Levelwise slices of the universal Kripke model over n variables.

Level 0 holds one maximal node per subset of the variables.  A node at
level i+1 is an antichain T of strictly lower nodes, at least one of
them from level i, together with a variable set U contained in every
w-set met along T; a one-element T must drop at least one variable, so
no node duplicates the cone below an existing one.  The order puts a
node below everything reachable through T, and w(node) = U.

Slices are built level by level in a canonical order: antichains by
ascending id tuples, variable sets by ascending bitmask.  Nodes above
the last complete level can still be created on demand (deeper guard
and recurrence nodes need this); they are interned so equal (T, U)
pairs share an id.
"""

from __future__ import annotations

import json

from .formula import (BOT, TOP, VAR, AND, OR, IMP, Formula, walk)


class InvalidNodeError(ValueError):
    pass


class PartialSliceError(Exception):
    """Level enumeration hit the node cap before finishing."""

    def __init__(self, msg, built_levels):
        super().__init__(msg)
        self.built_levels = built_levels


class UNode:
    __slots__ = ("id", "level", "T", "U", "up")

    def __init__(self, nid, level, T, U, up):
        self.id = nid
        self.level = level
        self.T = T            # sorted tuple of lower node ids, () at level 0
        self.U = U            # frozenset of variable indices
        self.up = up          # frozenset of ids >= this node, including it

    def __repr__(self):
        u = "{" + ",".join(f"x{i}" for i in sorted(self.U)) + "}"
        return f"UNode(#{self.id} L{self.level} T={list(self.T)} U={u})"


class Universe:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("need at least one variable")
        self.n = n
        self.nodes: list[UNode] = []
        self._key: dict[tuple, int] = {}
        self.levels: list[list[int]] = [[]]
        for bits in range(1 << n):
            U = frozenset(i + 1 for i in range(n) if bits >> i & 1)
            nid = self._add((), U, 0)
            self.levels[0].append(nid)
        self._force: dict[tuple[int, int], bool] = {}
        self._masks: dict[int, tuple[int, int]] = {}
        from .prover import register_semantic_model
        register_semantic_model(self)

    # -- construction -----------------------------------------------------

    def _add(self, T, U, level) -> int:
        nid = len(self.nodes)
        up = frozenset([nid]).union(*[self.nodes[t].up for t in T]) if T \
            else frozenset([nid])
        node = UNode(nid, level, T, U, up)
        self.nodes.append(node)
        self._key[(T, U)] = nid
        return nid

    def find(self, T, U) -> int | None:
        return self._key.get((tuple(sorted(T)), frozenset(U)))

    def make_node(self, T, U) -> int:
        """Intern the node with successor set T and variable set U."""
        T = tuple(sorted(set(T)))
        U = frozenset(U)
        hit = self._key.get((T, U))
        if hit is not None:
            return hit
        if not T:
            raise InvalidNodeError("empty successor set")
        for t in T:
            if not 0 <= t < len(self.nodes):
                raise InvalidNodeError(f"unknown node id {t}")
        for a in T:
            for b in T:
                if a != b and b in self.nodes[a].up:
                    raise InvalidNodeError(f"{a} and {b} are comparable")
        wcap = frozenset.intersection(*[self.nodes[t].U for t in T])
        if not U <= wcap:
            raise InvalidNodeError("variable set exceeds the common w-set")
        if len(T) == 1 and U == self.nodes[T[0]].U:
            raise InvalidNodeError("single successor requires a smaller "
                                   "variable set")
        level = 1 + max(self.nodes[t].level for t in T)
        return self._add(T, U, level)

    # -- order helpers ----------------------------------------------------

    def le(self, a: int, b: int) -> bool:
        return b in self.nodes[a].up

    def reduce_antichain(self, ids) -> tuple[int, ...]:
        """Minimal elements of the given set of nodes."""
        ids = sorted(set(ids))
        out = []
        for a in ids:
            if all(b == a or a not in self.nodes[b].up for b in ids):
                out.append(a)
        return tuple(out)

    # -- level enumeration --------------------------------------------------

    def _iter_level(self, i: int):
        """Yield (T, U) for every level-i node, canonical order, without
        materializing anything.  Levels below i must be complete."""
        if i < 1 or i > len(self.levels):
            raise ValueError(f"levels below {i} are not complete")
        pool = sorted(nid for lv in self.levels[:i] for nid in lv)
        nodes = self.nodes
        top_level = i - 1

        def rec(start, chosen, wmask_set, has_top):
            if chosen and has_top:
                T = tuple(chosen)
                single = nodes[T[0]].U if len(T) == 1 else None
                for U in _subsets_ascending(wmask_set):
                    if single is not None and U == single:
                        continue
                    yield (T, U)
            for idx in range(start, len(pool)):
                nid = pool[idx]
                nd = nodes[nid]
                ok = True
                for c in chosen:
                    if nid in nodes[c].up or c in nd.up:
                        ok = False
                        break
                if not ok:
                    continue
                yield from rec(idx + 1, chosen + [nid],
                               wmask_set & nd.U if chosen else nd.U,
                               has_top or nd.level == top_level)

        yield from rec(0, [], frozenset(), False)

    def build_level(self, i: int, node_cap: int | None = None):
        if i != len(self.levels):
            raise ValueError(f"next level to build is {len(self.levels)}")
        ids = []
        for T, U in self._iter_level(i):
            hit = self._key.get((T, U))
            nid = hit if hit is not None else self._add(T, U, i)
            ids.append(nid)
            if node_cap is not None and len(self.nodes) > node_cap:
                raise PartialSliceError(
                    f"node cap {node_cap} hit while enumerating level {i}",
                    built_levels=i - 1)
        self.levels.append(ids)

    @property
    def max_level(self) -> int:
        return len(self.levels) - 1

    def level_ids(self, i: int) -> list[int]:
        return list(self.levels[i])

    # -- forcing ------------------------------------------------------------

    def force_at(self, nid: int, f: Formula) -> bool:
        """Whether the node forces f; variables beyond the alphabet are
        forced nowhere."""
        hit = self._force.get((f.id, nid))
        if hit is not None:
            return hit
        order = sorted(self.nodes[nid].up,
                       key=lambda x: len(self.nodes[x].up))
        local: dict[int, dict[int, bool]] = {}
        for sub in walk(f):
            k = sub.kind
            row = {}
            for x in order:
                key = (sub.id, x)
                got = self._force.get(key)
                if got is not None:
                    row[x] = got
                    continue
                if k == BOT:
                    v = False
                elif k == TOP:
                    v = True
                elif k == VAR:
                    v = sub.var in self.nodes[x].U
                elif k == AND:
                    v = local[sub.a.id][x] and local[sub.b.id][x]
                elif k == OR:
                    v = local[sub.a.id][x] or local[sub.b.id][x]
                else:
                    va, vb = local[sub.a.id], local[sub.b.id]
                    v = all(vb[y] or not va[y]
                            for y in self.nodes[x].up)
                row[x] = v
                self._force[key] = v
            local[sub.id] = row
        return self._force[(f.id, nid)]

    def force_mask(self, f: Formula) -> int:
        """Forcing of f across all materialized nodes, bit nid set iff
        node nid forces f.  Recomputed when the slice has grown."""
        count = len(self.nodes)
        hit = self._masks.get(f.id)
        if hit is not None and hit[1] == count:
            return hit[0]
        m = 0
        for nid in range(count):
            if self.force_at(nid, f):
                m |= 1 << nid
        self._masks[f.id] = (m, count)
        return m

    def semantic_refutes(self, gamma, goal: Formula) -> bool:
        """Whether some materialized node forces everything in gamma but
        not the goal.  Sound refutation for intuitionistic consequence,
        since the slice is itself a finite Kripke model."""
        m = ((1 << len(self.nodes)) - 1) ^ self.force_mask(goal)
        for g in gamma:
            if not m:
                return False
            m &= self.force_mask(g)
        return m != 0

    # -- export ---------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "nodes": [{"id": nd.id, "level": nd.level, "T": list(nd.T),
                       "U": sorted(nd.U)} for nd in self.nodes]})


def _ubits(U) -> int:
    m = 0
    for i in U:
        m |= 1 << (i - 1)
    return m


def _subsets_ascending(U: frozenset):
    """Subsets of U ordered by ascending bitmask over variable indices."""
    order = sorted(U)
    k = len(order)
    for mask in range(1 << k):
        yield frozenset(order[j] for j in range(k) if mask >> j & 1)


def build_slice(n: int, max_level: int, node_cap: int = 200000) -> Universe:
    u = Universe(n)
    for i in range(1, max_level + 1):
        u.build_level(i, node_cap=node_cap)
    return u


def level_count(n: int, i: int, exceeds: int | None = None,
                node_cap: int = 500000):
    """Size of level i over n variables.

    With exceeds=k, streams candidates and returns True as soon as the
    count passes k (False if the level is exhausted first); nothing is
    materialized beyond the supporting lower levels.  Exact counting is
    only offered where enumeration is tractable (i <= 1, or n <= 2 with
    the node cap as a guard)."""
    if i == 0:
        return 2 ** n if exceeds is None else 2 ** n > exceeds
    u = Universe(n)
    for lv in range(1, i):
        u.build_level(lv, node_cap=node_cap)
    if exceeds is not None:
        c = 0
        for _ in u._iter_level(i):
            c += 1
            if c > exceeds:
                return True
        return False
    if i > 1 and n > 2:
        raise ValueError(f"exact count of level {i} over {n} variables is "
                         f"not enumerable here; use exceeds")
    c = 0
    for _ in u._iter_level(i):
        c += 1
        if c > node_cap:
            raise PartialSliceError(f"count passed cap {node_cap}", i - 1)
    return c


def count_level1_closed_form(n: int) -> int:
    """Independent level-1 count: sum over successor sets of the number
    of admissible variable sets (all subsets of the common w-set, minus
    the improper one when the successor set is a singleton)."""
    subsets = [frozenset(i + 1 for i in range(n) if bits >> i & 1)
               for bits in range(1 << n)]
    total = 0
    for mask in range(1, 1 << len(subsets)):
        chosen = [subsets[j] for j in range(len(subsets)) if mask >> j & 1]
        common = frozenset.intersection(*chosen)
        cnt = 1 << len(common)
        if len(chosen) == 1:
            cnt -= 1
        total += cnt
    return total


def slice_from_json(text: str) -> Universe:
    d = json.loads(text)
    u = Universe(d["n"])
    by_level: dict[int, list] = {}
    for rec in d["nodes"]:
        by_level.setdefault(rec["level"], []).append(rec)
    for lv in sorted(by_level):
        if lv == 0:
            continue
        for rec in by_level[lv]:
            u.make_node(rec["T"], rec["U"])
    return u
