"""Decision procedures for intuitionistic and classical consequence.

The main engine decides intuitionistic sequents through a classical
SAT loop.  Formulas are clausified with fresh letters into flat clauses
(conjunction of atoms entails disjunction of atoms) plus implication
triples ((a -> b) -> c with atoms a, b, c).  Flat clauses are geometric,
so classical entailment of an atom from them is already intuitionistic.
The loop asks for a classical model of the flat part; a model that
cannot be extended past any implication triple is the root of a Kripke
countermodel, while a triple whose inner implication is forced by a
recursive subproof yields a new flat clause (derivable intuitionistically
by the deduction theorem) that blocks the model.  Assumptions grow
strictly along recursion, so the procedure terminates.

Negative answers are accelerated by two sound filters: a packed
truth-table check (intuitionistic consequence implies classical), and
any registered finite models (a world forcing the antecedents but not
the goal refutes the sequent outright).

A contraction-free G4-style sequent prover is kept alongside as an
independent oracle for cross-checking on small inputs.
"""

from __future__ import annotations

import sys
import time
import weakref

from .formula import (BOT, TOP, VAR, AND, OR, IMP, Formula, DEFAULT,
                      vars_of, walk)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 30000))


class ProverTimeout(Exception):
    """An explicit time budget ran out mid-search."""


class VariableLimitError(ValueError):
    """Classical check asked for more distinct variables than supported."""


LEFT = "left"
RIGHT = "right"
NOT_APPLICABLE = "not-applicable"


class _Budget:
    __slots__ = ("deadline", "ticks")

    def __init__(self, timeout):
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.ticks = 0

    def tick(self, stride: int = 1):
        if self.deadline is None:
            return
        self.ticks += stride
        if self.ticks >= 2048:
            self.ticks = 0
            if time.monotonic() > self.deadline:
                raise ProverTimeout("proof search exceeded budget")


# -- registered finite countermodel filters -------------------------------

_sem_filters: list = []


def register_semantic_model(obj) -> None:
    """obj.semantic_refutes(gamma, goal) refutes sequents on real worlds."""
    _sem_filters.append(weakref.ref(obj))


def _semantically_refuted(gamma, goal) -> bool:
    dead = []
    hit = False
    for r in _sem_filters:
        m = r()
        if m is None:
            dead.append(r)
            continue
        if m.semantic_refutes(gamma, goal):
            hit = True
            break
    for r in dead:
        _sem_filters.remove(r)
    return hit


# -- classical truth tables, packed as big ints --------------------------

_PF_VARS = 10
_PF_ROWS = 1 << _PF_VARS
_PF_FULL = (1 << _PF_ROWS) - 1
_MISS = object()

_var_patterns: dict[int, int] = {}
_tt_cache: dict[int, int | None] = {}


def _var_pattern(i: int, rows: int) -> int:
    # rows where bit (i-1) of the row index is set
    pat = 0
    for r in range(rows):
        if r >> (i - 1) & 1:
            pat |= 1 << r
    return pat


def _pf_table(f: Formula) -> int | None:
    hit = _tt_cache.get(f.id, _MISS)
    if hit is not _MISS:
        return hit
    out: dict[int, int | None] = {}
    for n in walk(f):
        k = n.kind
        if k == BOT:
            v = 0
        elif k == TOP:
            v = _PF_FULL
        elif k == VAR:
            if n.var > _PF_VARS:
                v = None
            else:
                p = _var_patterns.get(n.var)
                if p is None:
                    p = _var_patterns[n.var] = _var_pattern(n.var, _PF_ROWS)
                v = p
        else:
            a, b = out[n.a.id], out[n.b.id]
            if a is None or b is None:
                v = None
            elif k == AND:
                v = a & b
            elif k == OR:
                v = a | b
            else:
                v = (_PF_FULL ^ a) | b
        out[n.id] = v
        _tt_cache[n.id] = v
    return out[f.id]


def _classically_refutable(gamma, goal: Formula) -> bool:
    rows = _pf_table(goal)
    if rows is None:
        return False
    rows = _PF_FULL ^ rows
    for g in gamma:
        if not rows:
            return False
        t = _pf_table(g)
        if t is None:
            return False
        rows &= t
    return rows != 0


# -- tiny incremental SAT solver ------------------------------------------

class _Sat:
    """Conflict-driven clause learner over lists of signed ints
    (+v true, -v false).  Learned clauses are resolvents of stored
    clauses alone, never of assumptions, so they remain valid across
    calls and the store only ever grows.  Decisions prefer false, so
    models carry few true atoms."""

    def __init__(self):
        self.nvars = 0
        self.clauses: list[list[int]] = []
        self.watch: dict[int, list[int]] = {}
        self.units: list[int] = []
        self.unsat = False
        self.props = 0

    def new_var(self) -> int:
        self.nvars += 1
        return self.nvars

    def add(self, lits) -> None:
        lits = list(dict.fromkeys(lits))
        if not lits:
            self.unsat = True
            return
        if len(lits) == 1:
            self.units.append(lits[0])
            return
        idx = len(self.clauses)
        self.clauses.append(lits)
        self.watch.setdefault(lits[0], []).append(idx)
        self.watch.setdefault(lits[1], []).append(idx)

    def solve(self, assumps, domain, bud: _Budget | None = None):
        """Model as a set of true domain vars, or None.  Decisions stay
        inside domain; clauses written over other letters are a
        definitional extension, so a model of the domain part always
        lifts.  Assumptions occupy the first decision levels and are
        never flipped; a learned clause that forces one false ends the
        call with None."""
        if self.unsat:
            return None
        n = self.nvars
        assign = bytearray(n + 1)  # 0 unknown, 1 true, 2 false
        level = [0] * (n + 1)
        reason = [-1] * (n + 1)
        trail: list[int] = []
        lim: list[int] = []  # trail length at the start of each level
        qhead = 0
        assumps = list(assumps)

        def value(lit: int) -> int:
            a = assign[lit if lit > 0 else -lit]
            if not a:
                return 0
            return 1 if (a == 1) == (lit > 0) else 2

        def enq(lit: int, rsn: int) -> None:
            v = lit if lit > 0 else -lit
            assign[v] = 1 if lit > 0 else 2
            level[v] = len(lim)
            reason[v] = rsn
            trail.append(lit)

        def propagate() -> int:
            # index of a falsified clause, or -1
            nonlocal qhead
            while qhead < len(trail):
                lit = trail[qhead]
                qhead += 1
                self.props += 1
                if bud is not None and self.props & 4095 == 0:
                    bud.tick(2048)
                falsified = -lit
                wl = self.watch.get(falsified)
                if not wl:
                    continue
                i = 0
                while i < len(wl):
                    ci = wl[i]
                    cl = self.clauses[ci]
                    if cl[0] == falsified:
                        cl[0], cl[1] = cl[1], cl[0]
                    other = cl[0]
                    if value(other) == 1:
                        i += 1
                        continue
                    moved = False
                    for j in range(2, len(cl)):
                        if value(cl[j]) != 2:
                            cl[1], cl[j] = cl[j], cl[1]
                            self.watch.setdefault(cl[1], []).append(ci)
                            wl[i] = wl[-1]
                            wl.pop()
                            moved = True
                            break
                    if moved:
                        continue
                    if value(other) == 2:
                        return ci
                    enq(other, ci)
                    i += 1
            return -1

        def analyze(ci: int) -> list[int]:
            # first-UIP resolution; learnt[0] is the asserting literal.
            # Level-0 literals drop out, assumption literals stay in,
            # so the result follows from the clause store alone.
            learnt = [0]
            seen = bytearray(n + 1)
            cur = len(lim)
            counter = 0
            p = 0
            idx = len(trail) - 1
            while True:
                for lit in self.clauses[ci]:
                    if lit == p:
                        continue
                    v = lit if lit > 0 else -lit
                    if not seen[v] and level[v] > 0:
                        seen[v] = 1
                        if level[v] == cur:
                            counter += 1
                        else:
                            learnt.append(lit)
                while not seen[abs(trail[idx])]:
                    idx -= 1
                p = trail[idx]
                idx -= 1
                counter -= 1
                if not counter:
                    learnt[0] = -p
                    return learnt
                ci = reason[p if p > 0 else -p]

        def cancel_until(bl: int) -> None:
            nonlocal qhead
            while len(lim) > bl:
                tl = lim.pop()
                while len(trail) > tl:
                    assign[abs(trail.pop())] = 0
            qhead = len(trail)

        for lit in self.units:
            val = value(lit)
            if val == 2:
                self.unsat = True
                return None
            if not val:
                enq(lit, -1)
        while True:
            ci = propagate()
            if ci >= 0:
                if not lim:
                    self.unsat = True
                    return None
                learnt = analyze(ci)
                if len(learnt) == 1:
                    cancel_until(0)
                    self.units.append(learnt[0])
                    if value(learnt[0]) == 2:
                        self.unsat = True
                        return None
                    if not value(learnt[0]):
                        enq(learnt[0], -1)
                    continue
                # second watch takes the deepest remaining level
                bi = max(range(1, len(learnt)),
                         key=lambda i: level[abs(learnt[i])])
                learnt[1], learnt[bi] = learnt[bi], learnt[1]
                cancel_until(level[abs(learnt[1])])
                idx = len(self.clauses)
                self.clauses.append(learnt)
                self.watch.setdefault(learnt[0], []).append(idx)
                self.watch.setdefault(learnt[1], []).append(idx)
                enq(learnt[0], idx)
                continue
            if len(lim) < len(assumps):
                p = assumps[len(lim)]
                val = value(p)
                if val == 2:
                    return None
                lim.append(len(trail))
                if not val:
                    enq(p, -1)
                continue
            v = 0
            for cand in domain:
                if not assign[cand]:
                    v = cand
                    break
            if not v:
                return {u for u in domain if assign[u] == 1}
            lim.append(len(trail))
            enq(-v, -1)


# -- the SAT-guided intuitionistic engine ----------------------------------

class _Engine:
    def __init__(self):
        self.sat = _Sat()
        self.atom: dict[int, int] = {}
        self.impl_of: dict[int, list[tuple[int, int, int]]] = {}
        self.shape: dict[int, tuple[int, int, int]] = {}
        self.n_impl = 0
        self.af = self.sat.new_var()
        self.at = self.sat.new_var()
        self.sat.add([-self.af])
        self.sat.add([self.at])
        self.truths: set[tuple[frozenset, int]] = set()
        self.false_at: dict[tuple[frozenset, int], int] = {}
        self.flat_count = 2
        self.queries = 0

    def letter(self, f: Formula) -> int:
        hit = self.atom.get(f.id)
        if hit is not None:
            return hit
        for sub in walk(f):
            if sub.id in self.atom:
                continue
            k = sub.kind
            if k == BOT:
                p = self.af
            elif k == TOP:
                p = self.at
            elif k == VAR:
                p = self.sat.new_var()
            else:
                la, lb = self.atom[sub.a.id], self.atom[sub.b.id]
                p = self.sat.new_var()
                self.shape[p] = (k, la, lb)
                if k == AND:
                    self._flat([-p, la])
                    self._flat([-p, lb])
                    self._flat([-la, -lb, p])
                elif k == OR:
                    self._flat([-p, la, lb])
                    self._flat([-la, p])
                    self._flat([-lb, p])
                else:
                    self._flat([-p, -la, lb])
                    self.impl_of.setdefault(p, []).append((la, lb, p))
                    self.n_impl += 1
            self.atom[sub.id] = p
        return self.atom[f.id]

    def _flat(self, lits) -> None:
        self.sat.add(lits)
        self.flat_count += 1

    def closure(self, forms) -> tuple[list[int], tuple]:
        """Atoms and implication triples under the given formulas.  The
        rest of the clause store is a definitional extension over other
        letters, so queries confined to this closure decide the same
        consequences as the full store."""
        atoms: set[int] = {self.af, self.at}
        triples: list[tuple[int, int, int]] = []
        for f in forms:
            self.letter(f)
            for sub in walk(f):
                p = self.atom[sub.id]
                if p in atoms:
                    continue
                atoms.add(p)
                triples.extend(self.impl_of.get(p, ()))
        return sorted(atoms), tuple(triples)

    def _and_close(self, A: frozenset[int]) -> frozenset[int]:
        stack = list(A)
        seen = set(A)
        grew = False
        while stack:
            sh = self.shape.get(stack.pop())
            if sh and sh[0] == AND:
                for child in sh[1:]:
                    if child not in seen:
                        seen.add(child)
                        stack.append(child)
                        grew = True
        return frozenset(seen) if grew else A

    def prove_goal(self, A: frozenset[int], q: int, domain, triples,
                   bud: _Budget) -> bool:
        """Invertible right rules, then the model loop.

        Implication goals move their antecedent left, conjunction goals
        split, and premise sets close under conjunction projection.
        Only entry sequents come through here: goals raised inside the
        model loop are letters whose structure the flat clauses already
        carry, and decomposing those inflates the assumption sets that
        seed learned clauses, which drowns the SAT search.
        """
        sh = self.shape.get(q)
        while sh and sh[0] == IMP:
            A = A | {sh[1]}
            q = sh[2]
            sh = self.shape.get(q)
        A = self._and_close(A)
        if sh and sh[0] == AND:
            return (self.prove_goal(A, sh[1], domain, triples, bud)
                    and self.prove_goal(A, sh[2], domain, triples, bud))
        return self.prove(A, q, domain, triples, bud)

    def prove(self, A: frozenset[int], q: int, domain, triples,
              bud: _Budget) -> bool:
        if q in A or self.af in A or q == self.at:
            return True
        key = (A, q)
        if key in self.truths:
            return True
        if self.false_at.get(key) == self.flat_count:
            return False
        self.queries += 1
        assumps = [a for a in A]
        while True:
            bud.tick()
            model = self.sat.solve(assumps + [-q], domain, bud)
            if model is None:
                self.truths.add(key)
                return True
            fired = False
            for (a, b, c) in triples:
                if c in model:
                    continue
                a_true = a in model
                if a_true and b not in model:
                    continue  # the model itself refutes a -> b
                T = frozenset(model)
                if a_true or self.prove(T | {a}, b, domain, triples, bud):
                    # with a true, b holds in the model outright; either
                    # way the deduction theorem licenses this clause
                    self._flat([-t for t in T] + [c])
                    fired = True
                    break
            if not fired:
                self.false_at[key] = self.flat_count
                return False


_engine = _Engine()


def prove_ipc(premises, goal: Formula, timeout: float | None = None) -> bool:
    """Decide whether goal follows intuitionistically from the premises."""
    premises = tuple(premises)
    if _classically_refutable(premises, goal):
        return False
    if _sem_filters and _semantically_refuted(premises, goal):
        return False
    bud = _Budget(timeout)
    domain, triples = _engine.closure(premises + (goal,))
    q = _engine.atom[goal.id]
    A = frozenset(_engine.atom[p.id] for p in premises)
    return _engine.prove_goal(A, q, domain, triples, bud)


def equiv_ipc(a: Formula, b: Formula, timeout: float | None = None) -> bool:
    return prove_ipc((a,), b, timeout) and prove_ipc((b,), a, timeout)


def disjunction_split(f: Formula, timeout: float | None = None) -> str:
    """For a provable disjunction, name a provable disjunct.

    Returns LEFT or RIGHT, or NOT_APPLICABLE when f is not provable.
    The disjunction property of intuitionistic logic guarantees that a
    provable disjunction has a provable disjunct.
    """
    if f.kind != OR:
        raise ValueError("disjunction_split needs a disjunction")
    if not prove_ipc((), f, timeout):
        return NOT_APPLICABLE
    if prove_ipc((), f.a, timeout):
        return LEFT
    if prove_ipc((), f.b, timeout):
        return RIGHT
    raise AssertionError("disjunction property violated; prover defect")


# -- independent G4-style sequent prover -----------------------------------

_g4_memo: dict[tuple, bool] = {}
_G4_CAP = 2_000_000


def _g4(gamma: frozenset[Formula], goal: Formula, bud: _Budget) -> bool:
    key = (gamma, goal)
    hit = _g4_memo.get(key)
    if hit is not None:
        return hit
    if len(_g4_memo) > _G4_CAP:
        raise ProverTimeout("sequent memo exceeded the safety cap")
    bud.tick()
    res = _g4_step(gamma, goal, bud)
    _g4_memo[key] = res
    return res


def _g4_step(gamma: frozenset[Formula], goal: Formula, bud: _Budget) -> bool:
    if goal.kind == TOP or goal in gamma:
        return True
    for g in gamma:
        if g.kind == BOT:
            return True
    if _classically_refutable(gamma, goal):
        return False
    if goal.kind == AND:
        return _g4(gamma, goal.a, bud) and _g4(gamma, goal.b, bud)
    if goal.kind == IMP:
        return _g4(gamma | {goal.a}, goal.b, bud)
    # invertible left rules: lowest-id applicable formula, for determinism
    pick = None
    for g in gamma:
        k = g.kind
        if k == VAR:
            continue
        if k == IMP:
            ak = g.a.kind
            if ak == VAR and g.a not in gamma:
                continue  # inert until its atom shows up
            if ak == IMP:
                continue  # choice phase
        if pick is None or g.id < pick.id:
            pick = g
    if pick is not None:
        rest = gamma - {pick}
        k = pick.kind
        if k == TOP:
            return _g4(rest, goal, bud)
        if k == AND:
            return _g4(rest | {pick.a, pick.b}, goal, bud)
        if k == OR:
            return (_g4(rest | {pick.a}, goal, bud)
                    and _g4(rest | {pick.b}, goal, bud))
        a, b = pick.a, pick.b
        ak = a.kind
        if ak == TOP:
            return _g4(rest | {b}, goal, bud)
        if ak == BOT:
            return _g4(rest, goal, bud)
        if ak == AND:
            return _g4(rest | {DEFAULT.imp(a.a, DEFAULT.imp(a.b, b))},
                       goal, bud)
        if ak == OR:
            return _g4(rest | {DEFAULT.imp(a.a, b), DEFAULT.imp(a.b, b)},
                       goal, bud)
        return _g4(rest | {b}, goal, bud)  # atom implication, atom present
    if goal.kind == OR:
        if _g4(gamma, goal.a, bud) or _g4(gamma, goal.b, bud):
            return True
    nested = [g for g in gamma if g.kind == IMP and g.a.kind == IMP]
    nested.sort(key=lambda g: g.id)
    for g in nested:
        c, d, b = g.a.a, g.a.b, g.b
        rest = gamma - {g}
        if (_g4(rest | {DEFAULT.imp(d, b), c}, d, bud)
                and _g4(rest | {b}, goal, bud)):
            return True
    return False


def prove_ipc_g4(premises, goal: Formula, timeout: float | None = None) -> bool:
    """Same question as prove_ipc, decided by contraction-free sequent
    search.  Exponential on large inputs; meant for cross-validation."""
    return _g4(frozenset(premises), goal, _Budget(timeout))


# -- classical consequence ------------------------------------------------

_PACK_LIMIT = 16
_VAR_LIMIT = 24


def prove_classical(premises, goal: Formula) -> bool:
    """Classical consequence by exhaustive valuation, up to 24 variables."""
    premises = tuple(premises)
    vs: set[int] = set(vars_of(goal))
    for p in premises:
        vs |= vars_of(p)
    if len(vs) > _VAR_LIMIT:
        raise VariableLimitError(f"{len(vs)} variables exceed the classical "
                                 f"limit of {_VAR_LIMIT}")
    order = sorted(vs)
    pos = {v: i for i, v in enumerate(order)}
    if len(order) <= _PACK_LIMIT:
        rows = 1 << len(order)
        full = (1 << rows) - 1

        def table(f: Formula) -> int:
            out: dict[int, int] = {}
            for n in walk(f):
                k = n.kind
                if k == BOT:
                    v = 0
                elif k == TOP:
                    v = full
                elif k == VAR:
                    v = _var_pattern(pos[n.var] + 1, rows)
                elif k == AND:
                    v = out[n.a.id] & out[n.b.id]
                elif k == OR:
                    v = out[n.a.id] | out[n.b.id]
                else:
                    v = (full ^ out[n.a.id]) | out[n.b.id]
                out[n.id] = v
            return out[f.id]

        bad = full ^ table(goal)
        for p in premises:
            if not bad:
                return True
            bad &= table(p)
        return bad == 0

    from .formula import eval_classical
    for mask in range(1 << len(order)):
        tv = frozenset(v for v in order if mask >> pos[v] & 1)
        if all(eval_classical(p, tv) for p in premises) \
                and not eval_classical(goal, tv):
            return False
    return True


def memo_stats() -> dict:
    return {"queries": _engine.queries,
            "flat_clauses": _engine.flat_count,
            "impl_clauses": _engine.n_impl,
            "sat_vars": _engine.sat.nvars,
            "g4_sequents": len(_g4_memo),
            "tables": len(_tt_cache)}
