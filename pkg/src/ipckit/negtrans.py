"""Classical-to-intuitionistic translations by double negation.

Two classics: Glivenko's blanket double negation, which respects
tautologies but not consequence, and the Gödel–Gentzen clause-by-clause
translation, which respects both.  Composing the latter with the
two-variable folding gives a map from classical logic over an open
alphabet into intuitionistic logic over x1, x2.
"""

from __future__ import annotations

from .formula import (BOT, TOP, VAR, AND, OR, Formula, neg, and_, imp,
                      top, walk)
from .omega import OmegaSpec, build_omega_spec, f_omega
from .prover import prove_classical

_gg_memo: dict[int, Formula] = {}


def godel_gentzen(f: Formula) -> Formula:
    """Gödel–Gentzen negative translation.

    Atoms pick up a double negation, disjunction turns into the negated
    conjunction of negations, everything else maps through untouched.
    The output is classically equivalent to the input and provable
    intuitionistically iff the input is provable classically.
    """
    for sub in walk(f):
        if sub.id in _gg_memo:
            continue
        k = sub.kind
        if k == BOT or k == TOP:
            out = sub
        elif k == VAR:
            out = neg(neg(sub))
        elif k == AND:
            out = and_(_gg_memo[sub.a.id], _gg_memo[sub.b.id])
        elif k == OR:
            out = neg(and_(neg(_gg_memo[sub.a.id]),
                           neg(_gg_memo[sub.b.id])))
        else:
            out = imp(_gg_memo[sub.a.id], _gg_memo[sub.b.id])
        _gg_memo[sub.id] = out
    return _gg_memo[f.id]


def glivenko(f: Formula) -> Formula:
    return neg(neg(f))


_shared_spec: OmegaSpec | None = None


def _default_spec() -> OmegaSpec:
    # built once; the slice behind it is the expensive part
    global _shared_spec
    if _shared_spec is None:
        _shared_spec = build_omega_spec(3)
    return _shared_spec


def classical_to_ipc2(f: Formula, spec: OmegaSpec | None = None) -> Formula:
    """Classical formula over x1..x_k to a two-variable intuitionistic one.

    Gödel–Gentzen first, then the many-to-two folding, gated on
    classical validity: tautologies collapse to truth outright, and
    everything else folds to an image strictly inside the fence
    interval, hence never provable.  The gate is what keeps the map
    tautology-respecting; un-gated images all sit below the interval's
    unprovable upper fence.  Raises VarBoundError when f mentions a
    variable past the spec's bound (the default spec covers x1..x3).
    """
    if spec is None:
        spec = _default_spec()
    g = godel_gentzen(f)
    if prove_classical((), f):
        return top()
    return f_omega(spec, g)
