"""Order-embedding of streamed posets into two-variable formulas.

The machinery runs in three layers.  A permissive formula pins down an
infinite cone of universal-model nodes: a double-negated disjunction of
characteristic formulas over three or more same-level generators, fenced
by primed characteristic formulas so that nothing outside the cone at
the generators' level or above survives.  Splitting a permissive formula
yields two children whose cones are nested inside the parent's and meet
only finitely; iterating the split along binary strings gives a family
psi_sigma whose provability order is exactly the suffix/prefix order on
strings.  Finally, a complete set maintains disjunctions of psi_sigma
together with a table of separator strings, one per upward/downward
partition, and the table is exactly what lets a new element be inserted
above, below, or incomparable to any prescribed subset of the old ones.

Everything is constructive: cones are enumerated as antichains over
already-known cone members, never by sweeping a whole level, and the
fence of a permissive formula is the antichain of maximal avoided
nodes, whose down-set provably equals that of the full avoided set.
"""

from __future__ import annotations

import json
import re
from collections.abc import Mapping
from dataclasses import dataclass, field

from .formula import Formula, conj, disj, neg, top
from .charform import char_pair
from .universal import Universe, build_slice, _subsets_ascending
from .prover import prove_ipc


class ConeCapError(RuntimeError):
    """Cone enumeration exhausted its candidate or level budget."""


class SigmaDepthError(ValueError):
    """Binary string longer than the configured descent cap."""


class ElementCapError(RuntimeError):
    """Complete set grew past the supported element count."""


class OrderInputError(ValueError):
    """Input relation is not (extendable to) a partial order."""


# how many elements a complete set may hold; the separator table is
# exponential in this count
ELEMENT_CAP = 8


# ---------------------------------------------------------------------------
# permissive formulas


@dataclass(frozen=True)
class PermissiveFormula:
    generators: tuple[int, ...]
    level: int
    formula: Formula
    # maximal nodes at level <= self.level above no generator
    fence: tuple[int, ...]
    # union of the generators' up-sets; equals the cone through the
    # generators' level
    shadow: frozenset[int]


def _iter_antichains(u: Universe, pool):
    """Nonempty antichains of pool as sorted tuples, prefix order."""
    nodes = u.nodes
    pool = sorted(pool)

    def rec(start, chosen):
        for k in range(start, len(pool)):
            c = pool[k]
            if any(c in nodes[t].up or t in nodes[c].up for t in chosen):
                continue
            chosen.append(c)
            yield tuple(chosen)
            yield from rec(k + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def _node_variants(u: Universe, T):
    """Intern every node with successor antichain T, canonical order."""
    wcap = frozenset.intersection(*[u.nodes[t].U for t in T])
    for V in _subsets_ascending(wcap):
        if len(T) == 1 and V == u.nodes[T[0]].U:
            continue
        yield u.make_node(T, V)


def _fence(u: Universe, shadow, level) -> tuple[int, ...]:
    # maximal avoided nodes: level-0 points outside the shadow, plus
    # points outside it whose whole successor antichain lies inside
    out = [m for m in u.levels[0] if m not in shadow]
    pool = [m for m in shadow if u.nodes[m].level < level]
    for T in _iter_antichains(u, pool):
        for nid in _node_variants(u, T):
            if nid not in shadow:
                out.append(nid)
    return tuple(out)


def permissive(u: Universe, generators) -> PermissiveFormula:
    """Guard formula whose cone meets the generators' level exactly in
    the generators and keeps growing above them."""
    gens = tuple(sorted(set(generators)))
    if len(gens) < 3:
        raise ValueError("need at least three generators")
    levels = {u.nodes[g].level for g in gens}
    if len(levels) != 1:
        raise ValueError("generators must share a level")
    level = levels.pop()
    shadow = frozenset().union(*[u.nodes[g].up for g in gens])
    fence = _fence(u, shadow, level)
    body = disj([char_pair(u, g)[0] for g in gens])
    guard = conj([char_pair(u, d)[1] for d in fence])
    return PermissiveFormula(gens, level, conj([neg(neg(body)), guard]),
                             fence, shadow)


def in_cone(u: Universe, pf: PermissiveFormula, nid: int) -> bool:
    """Semantic cone test without evaluating the formula: every maximal
    point above nid sits in the shadow and no fence point does."""
    up = u.nodes[nid].up
    if not frozenset(pf.fence).isdisjoint(up):
        return False
    return all(m in pf.shadow for m in up if u.nodes[m].level == 0)


def _cone_level(u: Universe, pf: PermissiveFormula, known, lev, need, cap):
    """First cone members at exactly level lev, canonical order.

    known must list the complete cone through level lev - 1.  Stops
    once need members are found; raises past cap candidates.
    """
    nodes = u.nodes
    found = []
    seen = 0
    for T in _iter_antichains(u, known):
        if 1 + max(nodes[t].level for t in T) != lev:
            continue
        for nid in _node_variants(u, T):
            seen += 1
            if seen > cap:
                raise ConeCapError(
                    f"more than {cap} candidates at level {lev}")
            found.append(nid)
            if len(found) >= need:
                return found
    return found


def split_permissive(u: Universe, pf: PermissiveFormula, *,
                     span: int = 4, cap: int = 200000):
    """Two permissive children with nested cones meeting only finitely.

    Climbs to the first level above pf with at least six cone members
    and hands the first three to one child, the next three to the
    other.
    """
    known = sorted(pf.shadow)
    for lev in range(pf.level + 1, pf.level + 1 + span):
        members = _cone_level(u, pf, known, lev, 6, cap)
        if len(members) >= 6:
            return (permissive(u, members[:3]), permissive(u, members[3:6]))
        known.extend(members)
    raise ConeCapError(f"no level within {span} of {pf.level} holds six "
                       "cone members")


# ---------------------------------------------------------------------------
# the binary family


@dataclass(frozen=True)
class SigmaNode:
    sigma: str
    pf: PermissiveFormula | None  # None only at the root (top)


class SigmaTree:
    """Memoized descent psi_sigma: the root is top, children split the
    parent.  The root's split is the one case not covered by the lemma
    and takes the first six nodes one level up instead."""

    def __init__(self, universe: Universe | None = None, depth_cap: int = 16):
        self.u = universe if universe is not None else build_slice(2, 1)
        self.depth_cap = depth_cap
        self._nodes: dict[str, SigmaNode] = {"": SigmaNode("", None)}

    def node(self, sigma: str) -> SigmaNode:
        if set(sigma) - {"0", "1"}:
            raise ValueError(f"not a binary string: {sigma!r}")
        if len(sigma) > self.depth_cap:
            raise SigmaDepthError(
                f"string of length {len(sigma)} exceeds cap {self.depth_cap}")
        hit = self._nodes.get(sigma)
        if hit is not None:
            return hit
        parent = self.node(sigma[:-1])
        if parent.pf is None:
            first = self.u.levels[1][:6]
            kids = (permissive(self.u, first[:3]),
                    permissive(self.u, first[3:6]))
        else:
            kids = split_permissive(self.u, parent.pf)
        for bit, pf in zip("01", kids):
            key = parent.sigma + bit
            self._nodes.setdefault(key, SigmaNode(key, pf))
        return self._nodes[sigma]

    def psi(self, sigma: str) -> Formula:
        nd = self.node(sigma)
        return top() if nd.pf is None else nd.pf.formula


_default_tree: SigmaTree | None = None


def default_tree() -> SigmaTree:
    global _default_tree
    if _default_tree is None:
        _default_tree = SigmaTree()
    return _default_tree


def psi_sigma(sigma: str, tree: SigmaTree | None = None) -> Formula:
    return (tree or default_tree()).psi(sigma)


# ---------------------------------------------------------------------------
# complete sets


class CompleteSet:
    """Frozen snapshot of the embedded family.

    elements holds one frozenset of binary strings per embedded point
    (the disjuncts of its formula); sigma_table maps each upward-closed
    part of a partition, as a frozenset of element indices, to its
    separator string.  All separators share a length strictly above
    every disjunct length.
    """

    __slots__ = ("elements", "sigma_table", "length")

    def __init__(self, elements=(), sigma_table=None, length=0):
        self.elements = tuple(frozenset(e) for e in elements)
        self.sigma_table = dict(sigma_table or {})
        self.length = length

    def __len__(self):
        return len(self.elements)

    def le(self, i: int, j: int) -> bool:
        return fast_le(self.elements[i], self.elements[j])


def fast_le(a, b) -> bool:
    """Disjunction order on string sets: a lies below b when every
    disjunct of a extends some disjunct of b."""
    return all(any(s.startswith(t) for t in b) for s in a)


def _pad(sigma: str, length: int) -> str:
    return sigma.ljust(length, "0")


def extend_complete(cs: CompleteSet, position, tree: SigmaTree | None = None):
    """Insert one point at the described position.

    position is a triple of element-index sets (below the new point,
    above it, incomparable to it) partitioning the current elements.
    Returns the grown set and the new point's formula.
    """
    cs2 = _extend_strings(cs, position)
    tree = tree or default_tree()
    sigmas = sorted(cs2.elements[-1])
    return cs2, disj([tree.psi(s) for s in sigmas])


def _extend_strings(cs: CompleteSet, position) -> CompleteSet:
    t1, t2, t3 = (frozenset(p) for p in position)
    n = len(cs.elements)
    if n >= ELEMENT_CAP:
        raise ElementCapError(f"separator table capped at {ELEMENT_CAP} "
                              "elements")
    whole = frozenset(range(n))
    if (t1 | t2 | t3) != whole or len(t1) + len(t2) + len(t3) != n:
        raise ValueError("position must partition the current elements")
    for i in t1:
        for j in whole:
            if j not in t1 and cs.le(j, i):
                raise ValueError("below-part is not downward closed")
    for i in t2:
        for j in whole:
            if j not in t2 and cs.le(i, j):
                raise ValueError("above-part is not upward closed")
    for i in t1:
        for j in t2:
            if not cs.le(i, j):
                raise ValueError("an element below the new point must sit "
                                 "below every element above it")
    if n == 0:
        return CompleteSet(({"0"},),
                           {frozenset({0}): "00", frozenset(): "10"}, 2)

    length = cs.length + 2
    disjuncts: set[str] = set()
    for i in t1:
        disjuncts |= cs.elements[i]
    for s1, sig in cs.sigma_table.items():
        if t2 <= s1:
            disjuncts.add(sig + "0")

    table: dict[frozenset[int], str] = {}
    new = frozenset({n})
    for s1, sig in cs.sigma_table.items():
        if t2 <= s1:
            # the new point can join the upward part
            table[s1 | new] = _pad(sig + "0", length)
        if not (t1 & s1):
            # the new point can join the downward part
            if t2 - s1:
                # separator already misses something above the new
                # point, so it cannot creep above it: pad freely
                table[s1] = _pad(sig, length)
            else:
                # dodge the disjunct sig + "0" of the new formula
                table[s1] = _pad(sig + "1", length)
    return CompleteSet(cs.elements + (frozenset(disjuncts),), table, length)


@dataclass
class AuditReport:
    entries: int
    prover_checked: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def audit_complete(cs: CompleteSet, tree: SigmaTree | None = None,
                   prover_limit: int = 3) -> AuditReport:
    """Check the separator table against its defining property.

    String level always: one entry per upward/downward partition, the
    shared length exceeds every disjunct, and prefix order places each
    separator below all of its part and below nothing else.  When the
    set has at most prover_limit elements the same facts are replayed
    through the prover on the materialized formulas.
    """
    n = len(cs.elements)
    idx = range(n)
    parts = [frozenset(s1) for s1 in _upward_subsets(cs)]
    rep = AuditReport(entries=len(cs.sigma_table),
                      prover_checked=n <= prover_limit)
    if set(cs.sigma_table) != set(parts):
        rep.violations.append(("partitions", set(parts),
                               set(cs.sigma_table)))
    longest = max((len(s) for e in cs.elements for s in e), default=0)
    run_prover = rep.prover_checked and not rep.violations
    if run_prover:
        tree = tree or default_tree()
    for s1, sig in sorted(cs.sigma_table.items(), key=lambda kv: kv[1]):
        if len(sig) != cs.length or len(sig) <= longest:
            rep.violations.append(("length", sig))
        for i in idx:
            want = i in s1
            got = any(sig.startswith(t) for t in cs.elements[i])
            if got != want:
                rep.violations.append(("prefix", sig, i, want))
            elif run_prover:
                start = tree.psi(sig)
                goal = disj([tree.psi(s) for s in sorted(cs.elements[i])])
                if prove_ipc((start,), goal) != want:
                    rep.violations.append(("prover", sig, i, want))
    return rep


def _upward_subsets(cs: CompleteSet):
    """All upward-closed index sets under the fast order."""
    n = len(cs.elements)
    for bits in range(1 << n):
        s1 = frozenset(i for i in range(n) if bits >> i & 1)
        if all(j in s1
               for i in s1 for j in range(n) if cs.le(i, j)):
            yield s1


# ---------------------------------------------------------------------------
# embedding whole posets


@dataclass(frozen=True)
class PosetSpec:
    elements: tuple[str, ...]
    le: frozenset  # reflexive-transitive pairs (a, b) meaning a <= b


def _close_order(elements, pairs) -> frozenset:
    names = set(elements)
    for a, b in pairs:
        if a not in names or b not in names:
            raise OrderInputError(f"relation mentions unknown element "
                                  f"{a if a not in names else b!r}")
    le = {(a, a) for a in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(le):
            for c, d in list(le):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
    for a, b in le:
        if a != b and (b, a) in le:
            raise OrderInputError(f"{a!r} and {b!r} sit below each other")
    return frozenset(le)


def poset_from_json(text: str) -> PosetSpec:
    try:
        doc = json.loads(text)
        elements = tuple(doc["elements"])
        pairs = [tuple(p) for p in doc.get("le", ())]
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise OrderInputError(f"bad poset document: {e}") from None
    if len(set(elements)) != len(elements):
        raise OrderInputError("duplicate element names")
    return PosetSpec(elements, _close_order(elements, pairs))


_LINE = re.compile(r"^(\S+)\s*\[([^\]]*)\]\s*\[([^\]]*)\]\s*$")


def parse_stream_line(line: str):
    """One streamed element: name, names already below, names above."""
    m = _LINE.match(line.strip())
    if not m:
        raise OrderInputError(f"bad stream line: {line!r}")
    name, below, above = m.groups()
    return name, below.split(), above.split()


class EmbedResult(Mapping):
    """Mapping name -> formula; formulas materialize on first access."""

    def __init__(self, names, sigmas, complete_set, order, tree):
        self.names = tuple(names)
        self.sigmas = dict(sigmas)
        self.complete_set = complete_set
        self.order = frozenset(order)
        self._tree = tree
        self._cache: dict[str, Formula] = {}

    def __getitem__(self, name: str) -> Formula:
        hit = self._cache.get(name)
        if hit is None:
            sig = self.sigmas[name]  # raises KeyError for unknown names
            hit = disj([self._tree.psi(s) for s in sorted(sig)])
            self._cache[name] = hit
        return hit

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def le(self, a: str, b: str) -> bool:
        return fast_le(self.sigmas[a], self.sigmas[b])

    def verify(self, mode: str = "fast") -> list:
        """Every ordered pair of names, checked against the input order.
        mode "fast" reads the strings; mode "prover" asks the prover."""
        bad = []
        for a in self.names:
            for b in self.names:
                want = (a, b) in self.order
                if mode == "prover":
                    got = prove_ipc((self[a],), self[b])
                else:
                    got = self.le(a, b)
                if got != want:
                    bad.append((a, b, want, got))
        return bad


def embed_poset(p, tree: SigmaTree | None = None) -> EmbedResult:
    """Order-embed a poset, element by element, into formulas.

    p is either a PosetSpec (embedded in element order) or an iterable
    of stream lines "name [below..] [above..]" whose relations may only
    mention earlier names.  For all names so far, a <= b in the input
    exactly when formula(a) proves formula(b).
    """
    tree = tree or default_tree()
    if isinstance(p, PosetSpec):
        stream = _spec_stream(p)
    elif isinstance(p, str):
        stream = (parse_stream_line(ln) for ln in p.splitlines()
                  if ln.strip())
    else:
        stream = (parse_stream_line(ln) if isinstance(ln, str) else ln
                  for ln in p)

    names: list[str] = []
    order: set[tuple[str, str]] = set()
    sigmas: dict[str, frozenset] = {}
    cs = CompleteSet()
    for name, below, above in stream:
        if name in sigmas:
            raise OrderInputError(f"duplicate element {name!r}")
        for other in list(below) + list(above):
            if other not in sigmas:
                raise OrderInputError(f"{name!r} refers to unseen element "
                                      f"{other!r}")
        down = {b for b in below}
        down |= {c for c in names for b in below if (c, b) in order}
        upw = {a for a in above}
        upw |= {c for a in above for c in names if (a, c) in order}
        if down & upw:
            raise OrderInputError(f"{name!r} would coincide with an "
                                  "existing element")
        for b in down:
            for a in upw:
                if (b, a) not in order:
                    raise OrderInputError(
                        f"{b!r} below and {a!r} above {name!r}, but "
                        f"{b!r} is not below {a!r}")
        pos = ({names.index(x) for x in down},
               {names.index(x) for x in upw},
               {i for i, x in enumerate(names) if x not in down | upw})
        cs = _extend_strings(cs, pos)
        sigmas[name] = cs.elements[-1]
        order |= {(b, name) for b in down} | {(name, a) for a in upw}
        order.add((name, name))
        names.append(name)
    return EmbedResult(names, sigmas, cs, order, tree)


def _spec_stream(p: PosetSpec):
    seen: list[str] = []
    for name in p.elements:
        below = [b for b in seen if (b, name) in p.le]
        above = [a for a in seen if (name, a) in p.le]
        seen.append(name)
        yield name, below, above


def embed_lindenbaum(sentences, entails, tree: SigmaTree | None = None):
    """Order-embed sentences under a finite-entailment oracle.

    entails(a, b) must decide a |- b.  Mutually entailing sentences
    share a formula (the order is on entailment classes).  Returns a
    dict sentence -> formula.
    """
    tree = tree or default_tree()
    reps: list = []  # one representative per class, arrival order
    lines = []       # stream lines over representative indices
    alias: dict = {}
    for s in sentences:
        twin = next((r for r in reps if entails(s, r) and entails(r, s)),
                    None)
        if twin is not None:
            alias[s] = str(reps.index(twin))
            continue
        below = [str(i) for i, r in enumerate(reps) if entails(r, s)]
        above = [str(i) for i, r in enumerate(reps) if entails(s, r)]
        lines.append((str(len(reps)), below, above))
        alias[s] = str(len(reps))
        reps.append(s)
    res = embed_poset(lines, tree)
    return {s: res[alias[s]] for s in alias}


# ---------------------------------------------------------------------------
# test scaffolding: small poset catalogues


def poset_iso_classes(n: int):
    """One labeled representative per isomorphism class of n-element
    posets, as PosetSpecs over names e0..e{n-1}."""
    names = tuple(f"e{i}" for i in range(n))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    out = []
    for bits in range(1 << len(pairs)):
        rel = {(i, i) for i in range(n)}
        rel |= {pairs[k] for k in range(len(pairs)) if bits >> k & 1}
        if any((a, b) in rel and (b, a) in rel and a != b for a, b in rel):
            continue
        if any((a, d) not in rel
               for a, b in rel for c, d in rel if b == c):
            continue
        key = min(tuple(sorted((p[i], p[j]) for i, j in rel))
                  for p in _permutations(n))
        if key in seen:
            continue
        seen.add(key)
        out.append(PosetSpec(
            names, frozenset((names[i], names[j]) for i, j in rel)))
    return out


def _permutations(n: int):
    from itertools import permutations
    return list(permutations(range(n)))
