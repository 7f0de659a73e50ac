"""The lattice of one-variable formulas up to equivalence.

Over a single variable, intuitionistic logic has countably many
equivalence classes: absurdity, truth, and a two-strand ladder starting
from x1 and ~x1 (each later rung is an implication or disjunction of
the previous pair).  `classify` names the class of any one-variable
formula.  Candidates are screened by their forcing fingerprint on a
fixed slice of the one-variable universal model; equivalent formulas
share a fingerprint, so distinct fingerprints rule a candidate out and
the prover only confirms actual hits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Formula, var, neg, imp, or_, bot, top, vars_of, tree_size
from .prover import equiv_ipc
from .universal import build_slice


class LadderCapError(Exception):
    """Classification ran past its rung budget without a match."""


@dataclass(frozen=True)
class LadderPoint:
    tag: str                  # "bottom" | "top" | "phi" | "psi"
    index: int | None = None

    def __str__(self):
        if self.tag in ("bottom", "top"):
            return self.tag
        return f"{self.tag}({self.index})"


BOTTOM = LadderPoint("bottom")
TOP_POINT = LadderPoint("top")

_rungs: list[tuple[Formula, Formula]] = []


def ladder(i: int) -> tuple[Formula, Formula]:
    """The i-th rung pair, 1-based: (phi_i, psi_i)."""
    if i < 1:
        raise ValueError("rungs start at 1")
    if not _rungs:
        _rungs.append((neg(var(1)), var(1)))
    while len(_rungs) < i:
        ph, ps = _rungs[-1]
        _rungs.append((imp(ph, ps), or_(ph, ps)))
    return _rungs[i - 1]


def point_formula(p: LadderPoint) -> Formula:
    if p.tag == "bottom":
        return bot()
    if p.tag == "top":
        return top()
    ph, ps = ladder(p.index)
    return ph if p.tag == "phi" else ps


_SLICE_DEPTH = 8
_slice = None
_fps: dict[tuple[str, int | None], frozenset] = {}


def _fingerprint(f: Formula) -> frozenset:
    global _slice
    if _slice is None:
        _slice = build_slice(1, _SLICE_DEPTH)
    return frozenset(nid for nid in range(len(_slice.nodes))
                     if _slice.force_at(nid, f))


def _point_fp(p: LadderPoint) -> frozenset:
    key = (p.tag, p.index)
    hit = _fps.get(key)
    if hit is None:
        hit = _fps[key] = _fingerprint(point_formula(p))
    return hit


def classify(f: Formula, cap: int | None = None) -> LadderPoint:
    """Which ladder point f is equivalent to.

    The rung budget defaults to 2 * tree_size(f) + 4, which dominates
    the depth any formula of that size can reach; exceeding it raises
    LadderCapError rather than guessing.
    """
    extra = vars_of(f) - {1}
    if extra:
        raise ValueError(f"one-variable classification got x{min(extra)}")
    if cap is None:
        cap = 2 * tree_size(f) + 4
    fp = _fingerprint(f)
    candidates = [BOTTOM, TOP_POINT]
    for i in range(1, cap + 1):
        candidates.append(LadderPoint("phi", i))
        candidates.append(LadderPoint("psi", i))
    for p in candidates:
        if fp == _point_fp(p) and equiv_ipc(f, point_formula(p)):
            return p
    raise LadderCapError(f"no ladder point within {cap} rungs")
