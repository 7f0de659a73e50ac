"""Propositional formulas as interned DAG nodes.

Connectives: falsum F, verum T, variables x1, x2, ..., conjunction &,
disjunction |, implication ->.  Negation is sugar for `a -> F`; the
printer folds it back to `~a`.  Nodes are interned per store, so
structural equality is identity and sets keyed on nodes are cheap.
"""

from __future__ import annotations

import threading
from typing import Iterable, Iterator

BOT, TOP, VAR, AND, OR, IMP = range(6)


class Formula:
    __slots__ = ("id", "kind", "var", "a", "b")

    def __init__(self, fid: int, kind: int, var: int, a, b):
        self.id = fid
        self.kind = kind
        self.var = var
        self.a = a
        self.b = b

    # interning makes identity the right equality; default __eq__/__hash__ kept

    def __repr__(self):
        return f"<Formula {self.id}: {to_str(self)}>"


class FormulaStore:
    """Interning pool.  One shared default below; ids are creation order."""

    def __init__(self):
        self._table: dict[tuple, Formula] = {}
        self._lock = threading.Lock()
        self._count = 0
        self.bot = self._intern(BOT, 0, None, None)
        self.top = self._intern(TOP, 0, None, None)

    def _intern(self, kind: int, v: int, a, b) -> Formula:
        key = (kind, v, -1 if a is None else a.id, -1 if b is None else b.id)
        with self._lock:
            hit = self._table.get(key)
            if hit is None:
                hit = Formula(self._count, kind, v, a, b)
                self._count += 1
                self._table[key] = hit
            return hit

    def var(self, i: int) -> Formula:
        if i < 1:
            raise ValueError(f"variable index must be >= 1, got {i}")
        return self._intern(VAR, i, None, None)

    def and_(self, a: Formula, b: Formula) -> Formula:
        return self._intern(AND, 0, a, b)

    def or_(self, a: Formula, b: Formula) -> Formula:
        return self._intern(OR, 0, a, b)

    def imp(self, a: Formula, b: Formula) -> Formula:
        return self._intern(IMP, 0, a, b)

    def neg(self, a: Formula) -> Formula:
        return self.imp(a, self.bot)

    def conj(self, parts: Iterable[Formula]) -> Formula:
        """Left fold of &; empty product is T."""
        out = None
        for p in parts:
            out = p if out is None else self.and_(out, p)
        return self.top if out is None else out

    def disj(self, parts: Iterable[Formula]) -> Formula:
        """Left fold of |; empty sum is F."""
        out = None
        for p in parts:
            out = p if out is None else self.or_(out, p)
        return self.bot if out is None else out


DEFAULT = FormulaStore()


def bot() -> Formula:
    return DEFAULT.bot


def top() -> Formula:
    return DEFAULT.top


def var(i: int) -> Formula:
    return DEFAULT.var(i)


def and_(a, b) -> Formula:
    return DEFAULT.and_(a, b)


def or_(a, b) -> Formula:
    return DEFAULT.or_(a, b)


def imp(a, b) -> Formula:
    return DEFAULT.imp(a, b)


def neg(a) -> Formula:
    return DEFAULT.neg(a)


def conj(parts) -> Formula:
    return DEFAULT.conj(parts)


def disj(parts) -> Formula:
    return DEFAULT.disj(parts)


def walk(root: Formula) -> Iterator[Formula]:
    """Each distinct reachable node once, children before parents."""
    seen: set[int] = set()
    stack: list[tuple[Formula, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        if node.id in seen:
            continue
        seen.add(node.id)
        stack.append((node, True))
        if node.b is not None:
            stack.append((node.b, False))
        if node.a is not None:
            stack.append((node.a, False))


def dag_size(f: Formula) -> int:
    return sum(1 for _ in walk(f))


def tree_size(f: Formula) -> int:
    """Node count of the fully expanded tree (shared subterms recounted)."""
    memo: dict[int, int] = {}
    for node in walk(f):
        if node.a is None:
            memo[node.id] = 1
        else:
            memo[node.id] = 1 + memo[node.a.id] + memo[node.b.id]
    return memo[f.id]


def vars_of(f: Formula) -> frozenset[int]:
    return frozenset(n.var for n in walk(f) if n.kind == VAR)


def eval_classical(f: Formula, true_vars: frozenset[int]) -> bool:
    """Two-valued truth under the given set of true variables."""
    val: dict[int, bool] = {}
    for n in walk(f):
        k = n.kind
        if k == BOT:
            val[n.id] = False
        elif k == TOP:
            val[n.id] = True
        elif k == VAR:
            val[n.id] = n.var in true_vars
        elif k == AND:
            val[n.id] = val[n.a.id] and val[n.b.id]
        elif k == OR:
            val[n.id] = val[n.a.id] or val[n.b.id]
        else:
            val[n.id] = (not val[n.a.id]) or val[n.b.id]
    return val[f.id]


def subst(f: Formula, mapping: dict[int, Formula],
          store: FormulaStore = DEFAULT) -> Formula:
    """Replace variables by formulas, bottom up over the DAG."""
    out: dict[int, Formula] = {}
    for n in walk(f):
        k = n.kind
        if k == VAR:
            out[n.id] = mapping.get(n.var, n)
        elif k == BOT or k == TOP:
            out[n.id] = n
        elif k == AND:
            out[n.id] = store.and_(out[n.a.id], out[n.b.id])
        elif k == OR:
            out[n.id] = store.or_(out[n.a.id], out[n.b.id])
        else:
            out[n.id] = store.imp(out[n.a.id], out[n.b.id])
    return out[f.id]


# -- printing -----------------------------------------------------------

# precedence: atoms 6, ~ 5, & 4, | 3, -> 2 (right assoc)

def _prec(f: Formula) -> int:
    k = f.kind
    if k == IMP:
        return 5 if f.b.kind == BOT else 2
    if k == AND:
        return 4
    if k == OR:
        return 3
    return 6


def to_str(f: Formula) -> str:
    def render(node: Formula, minp: int) -> str:
        k = node.kind
        if k == BOT:
            s = "F"
        elif k == TOP:
            s = "T"
        elif k == VAR:
            s = f"x{node.var}"
        elif k == AND:
            s = render(node.a, 4) + " & " + render(node.b, 5)
        elif k == OR:
            s = render(node.a, 3) + " | " + render(node.b, 4)
        elif node.b.kind == BOT:
            s = "~" + render(node.a, 5)
        else:
            s = render(node.a, 3) + " -> " + render(node.b, 2)
        return "(" + s + ")" if _prec(node) < minp else s

    return render(f, 0)


# -- parsing ------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
        elif c in "()&|~":
            toks.append((c, c, i))
            i += 1
        elif c == "-":
            if text.startswith("->", i):
                toks.append(("->", "->", i))
                i += 2
            else:
                raise ParseError("expected '->'", i)
        elif c == "F" or c == "T":
            toks.append(("const", c, i))
            i += 1
        elif c == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            digits = text[i + 1:j]
            if not digits or digits[0] == "0":
                raise ParseError("variables are x1, x2, ... (no x0, no leading zeros)", i)
            toks.append(("var", digits, i))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    return toks


def parse(text: str, store: FormulaStore = DEFAULT) -> Formula:
    """Grammar: imp := or ['->' imp]; or := and {'|' and};
    and := neg {'&' neg}; neg := '~' neg | atom;
    atom := 'F' | 'T' | var | '(' imp ')'.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def here():
        return toks[pos][2] if pos < len(toks) else len(text)

    def expect(kind: str):
        nonlocal pos
        if peek() != kind:
            raise ParseError(f"expected {kind!r}", here())
        pos += 1

    def p_imp():
        left = p_or()
        if peek() == "->":
            expect("->")
            return store.imp(left, p_imp())
        return left

    def p_or():
        out = p_and()
        while peek() == "|":
            expect("|")
            out = store.or_(out, p_and())
        return out

    def p_and():
        out = p_neg()
        while peek() == "&":
            expect("&")
            out = store.and_(out, p_neg())
        return out

    def p_neg():
        if peek() == "~":
            expect("~")
            return store.neg(p_neg())
        return p_atom()

    def p_atom():
        nonlocal pos
        k = peek()
        if k == "const":
            v = toks[pos][1]
            pos += 1
            return store.bot if v == "F" else store.top
        if k == "var":
            v = int(toks[pos][1])
            pos += 1
            return store.var(v)
        if k == "(":
            expect("(")
            inner = p_imp()
            expect(")")
            return inner
        raise ParseError("expected a formula", here())

    out = p_imp()
    if pos < len(toks):
        raise ParseError("trailing input", here())
    return out
