"""Self-contained verification suites, one per acceptance row.

Each suite is a nullary-ish callable taking only a seed; it builds what
it needs, runs its battery, and reports a SuiteResult.  The test suite
and the command line both dispatch through run_suites, so a green CI
row and a green `selfcheck` row are the same computation.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .formula import (Formula, var, bot, top, neg, and_, or_, imp, conj,
                      to_str, tree_size)
from .prover import (prove_ipc, prove_classical, equiv_ipc,
                     disjunction_split, ProverTimeout, LEFT, RIGHT)
from .universal import build_slice, level_count, count_level1_closed_form
from .charform import char_pair, verify_char_slice
from .nishimura import LadderPoint, BOTTOM, TOP_POINT, point_formula, classify
from .interval import (build_interval_spec, f_interval, h_interval,
                       maxS_oracle, audit_disjoint, lift_tautology,
                       gate_tautology)
from .omega import (build_omega_spec, f_omega, virtual_force, inject_model)
from .kripke import (FiniteModel, force, cone, random_model,
                     semantic_consequence_search, Countermodel,
                     two_successor_lemma_check)
from .posets import poset_iso_classes, embed_poset


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.name}: {self.detail} [{self.seconds:.2f}s]"


def _result(name, t0, ok, detail) -> SuiteResult:
    return SuiteResult(name, ok, detail, time.time() - t0)


# -- seeded formula generators ----------------------------------------------

def _gen(rng, size, atoms, ops, neg_ok=False):
    if size <= 1:
        return rng.choice(atoms)
    if neg_ok and rng.random() < 0.25:
        return neg(_gen(rng, size - 1, atoms, ops, neg_ok))
    ls = rng.randint(1, size - 1)
    op = rng.choice(ops)
    return op(_gen(rng, ls, atoms, ops, neg_ok),
              _gen(rng, size - ls, atoms, ops, neg_ok))


_FULL = (and_, or_, imp)


def _gen_depth(rng, depth, atoms):
    # all three connectives, nesting bounded instead of node count
    if depth <= 0:
        return rng.choice(atoms)
    op = rng.choice(_FULL)
    return op(_gen_depth(rng, rng.randint(0, depth - 1), atoms),
              _gen_depth(rng, rng.randint(0, depth - 1), atoms))


# -- suites, in acceptance order --------------------------------------------

def suite_levels(seed: int = 0) -> SuiteResult:
    """Level sizes of the universal models, two enumerators plus the
    closed form, all required to agree on the exact counts."""
    t0 = time.time()
    direct = (level_count(2, 0), level_count(1, 0),
              level_count(2, 1), level_count(1, 1))
    u2, u1 = build_slice(2, 1), build_slice(1, 1)
    slices = (len(u2.level_ids(0)), len(u1.level_ids(0)),
              len(u2.level_ids(1)), len(u1.level_ids(1)))
    closed = (count_level1_closed_form(2), count_level1_closed_form(1))
    ok = direct == (4, 2, 18, 2) and slices == direct and closed == (18, 2)
    return _result("levels", t0, ok,
                   f"counts {direct} vs slice {slices}, closed form {closed}")


def suite_growth(seed: int = 0) -> SuiteResult:
    """Levels grow strictly with more variables, and the one-variable
    plateau shows the hypothesis is needed."""
    t0 = time.time()
    grows = level_count(2, 2, exceeds=18) is True
    plateau = level_count(1, 1) == level_count(1, 0) == 2
    ok = grows and plateau
    return _result("growth", t0, ok,
                   f"two-variable level 2 exceeds 18: {grows}; "
                   f"one-variable levels 0 and 1 both size 2: {plateau}")


def suite_charform(seed: int = 0) -> SuiteResult:
    t0 = time.time()
    u = build_slice(2, 1)
    rep = verify_char_slice(u)
    ids = [nd.id for nd in u.nodes]
    grid_bad = 0
    for a in ids:
        pa = char_pair(u, a)[0]
        up_a = u.nodes[a].up
        for b in ids:
            want = b in up_a
            got = prove_ipc((char_pair(u, b)[0],), pa)
            if got != want:
                grid_bad += 1
    ok = rep.ok and grid_bad == 0
    return _result("charform", t0, ok,
                   f"slice report {rep.nodes_checked} nodes / "
                   f"{rep.pairs_checked} pairs, {len(rep.violations)} "
                   f"violations; prover grid {len(ids)**2} pairs, "
                   f"{grid_bad} mismatches")


def _shallow(rng):
    # one connective layer of ->/~ at most, so two model layers decide it
    atoms = [var(1), var(2), bot(), top()]
    base = lambda s: _gen(rng, s, atoms, (and_, or_))
    r = rng.random()
    if r < 0.4:
        return base(rng.randint(1, 3))
    if r < 0.7:
        return imp(base(rng.randint(1, 2)), base(rng.randint(1, 2)))
    return neg(base(rng.randint(1, 2)))


def suite_exactness(seed: int = 0) -> SuiteResult:
    """Prover verdicts against witness search over the 22-node slice.

    The corpus stays shallow on purpose: refutations of these pairs
    need at most two model layers, which the slice contains in full,
    so a missing witness really does mean provable.
    """
    t0 = time.time()
    u = build_slice(2, 1)
    ids = [nd.id for nd in u.nodes]
    rng = random.Random(seed)
    bad = 0
    for _ in range(100):
        a, b = _shallow(rng), _shallow(rng)
        witness = any(u.force_at(i, a) and not u.force_at(i, b) for i in ids)
        if prove_ipc((a,), b) != (not witness):
            bad += 1
    return _result("exactness", t0, bad == 0,
                   f"100 pairs, {bad} prover/witness disagreements")


def suite_ladder(seed: int = 0) -> SuiteResult:
    t0 = time.time()
    points = [BOTTOM, TOP_POINT]
    for i in range(1, 7):
        points.append(LadderPoint("phi", i))
        points.append(LadderPoint("psi", i))
    dup = 0
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            if equiv_ipc(point_formula(p), point_formula(q)):
                dup += 1
    # grammar atoms are x1 and absurdity; truth and negation are derived
    atoms = [bot(), var(1)]
    layers = [list(atoms)]
    seen = {f.id: f for f in atoms}
    for k in range(1, 4):
        layer = []
        for i in range(k):
            for fa in layers[i]:
                for fb in layers[k - 1 - i]:
                    for op in _FULL:
                        f = op(fa, fb)
                        if f.id not in seen:
                            seen[f.id] = f
                            layer.append(f)
        layers.append(layer)
    classified = 0
    failures = 0
    for f in seen.values():
        p = classify(f)
        if isinstance(p, LadderPoint):
            classified += 1
        else:
            failures += 1
    ok = dup == 0 and failures == 0
    return _result("ladder", t0, ok,
                   f"{len(points)} rungs pairwise distinct ({dup} "
                   f"collisions); {classified} formulas classified, "
                   f"{failures} failures")


def suite_interval1(seed: int = 0) -> SuiteResult:
    t0 = time.time()
    spec = build_interval_spec(1)
    rng = random.Random(seed)
    atoms = [var(1), bot()]
    bad_iff = bad_rt = 0
    for _ in range(200):
        a = _gen(rng, rng.randint(1, 5), atoms, _FULL, neg_ok=True)
        b = _gen(rng, rng.randint(1, 5), atoms, _FULL, neg_ok=True)
        src = prove_ipc((a,), b)
        img = prove_ipc((f_interval(spec, a),), f_interval(spec, b))
        if src != img:
            bad_iff += 1
        if not equiv_ipc(h_interval(spec, f_interval(spec, a)), a):
            bad_rt += 1
    ok = bad_iff == 0 and bad_rt == 0
    return _result("interval1", t0, ok,
                   f"200 pairs: {bad_iff} consequence mismatches, "
                   f"{bad_rt} round-trip failures")


def suite_interval2(seed: int = 0) -> SuiteResult:
    t0 = time.time()
    spec = build_interval_spec(2)
    fence_ok = tuple(sorted(spec.maxS)) == tuple(sorted(maxS_oracle(spec)))
    audit = audit_disjoint(spec)
    rng = random.Random(seed)
    atoms = [var(1), var(2), bot()]
    bad = timeouts = 0
    for _ in range(20):
        a = _gen_depth(rng, 2, atoms)
        b = _gen_depth(rng, 2, atoms)
        try:
            src = prove_ipc((a,), b, timeout=60)
            img = prove_ipc((f_interval(spec, a),), f_interval(spec, b),
                            timeout=60)
            rt = equiv_ipc(h_interval(spec, f_interval(spec, a)), a,
                           timeout=60)
        except ProverTimeout:
            timeouts += 1
            continue
        if src != img or not rt:
            bad += 1
    ok = fence_ok and not audit and bad == 0 and timeouts == 0
    return _result("interval2", t0, ok,
                   f"fence matches oracle: {fence_ok}; cone audit "
                   f"violations: {len(audit)}; 20 pairs: {bad} bad, "
                   f"{timeouts} timeouts")


def suite_omega(seed: int = 0) -> SuiteResult:
    t0 = time.time()
    spec = build_omega_spec(2)
    u = spec.universe
    heads = [spec.beta[(j, 1)] for j in range(1, 5)]
    heads_ok = all(u.force_at(h, spec.phi) for h in heads)
    for i, h1 in enumerate(heads):
        for h2 in heads[i + 1:]:
            if u.le(h1, h2) or u.le(h2, h1):
                heads_ok = False
    rng = random.Random(seed)
    atoms = [var(1), var(2)]
    bad = 0
    negatives = witnessed = 0
    for _ in range(10):
        a = _gen(rng, rng.randint(1, 5), atoms, _FULL)
        b = _gen(rng, rng.randint(1, 5), atoms, _FULL)
        src = prove_ipc((a,), b)
        img = prove_ipc((f_omega(spec, a),), f_omega(spec, b), timeout=120)
        if src:
            if not img:
                bad += 1
            continue
        negatives += 1
        found = semantic_consequence_search((a,), b)
        if isinstance(found, Countermodel):
            sub, r = cone(found.model, found.node)
            w = inject_model(spec, sub, {1, 2})[r]
            if virtual_force(spec, w, a) and not virtual_force(spec, w, b):
                witnessed += 1
                continue
        if img:
            bad += 1
    ok = heads_ok and bad == 0
    return _result("omega", t0, ok,
                   f"chain heads incomparable and inside the lower fence: "
                   f"{heads_ok}; 10 pairs: {bad} bad, {negatives} negative "
                   f"({witnessed} discharged by injected witnesses)")


def suite_poset(seed: int = 0) -> SuiteResult:
    t0 = time.time()
    fast_bad = prover_bad = classes = 0
    for p in poset_iso_classes(4):
        classes += 1
        if embed_poset(p).verify("fast"):
            fast_bad += 1
    small = 0
    for n in (1, 2, 3):
        for p in poset_iso_classes(n):
            small += 1
            if embed_poset(p).verify("prover"):
                prover_bad += 1
    ok = fast_bad == 0 and prover_bad == 0
    return _result("poset", t0, ok,
                   f"{classes} four-element classes, {fast_bad} fast "
                   f"failures; {small} small classes, {prover_bad} "
                   f"prover failures")


def suite_taxonomy(seed: int = 0) -> SuiteResult:
    t0 = time.time()
    spec = build_interval_spec(1)
    f_fn = lambda rho: f_interval(spec, rho)
    taut = imp(var(1), var(1))
    raw_silent = not prove_ipc((), f_fn(taut))
    lift_ok = prove_ipc((), lift_tautology(f_fn)(taut))
    gate = gate_tautology(f_fn)
    rng = random.Random(seed)
    atoms = [var(1), bot()]
    bad = splits = 0
    for _ in range(50):
        a = _gen(rng, rng.randint(1, 4), atoms, _FULL, neg_ok=True)
        b = _gen(rng, rng.randint(1, 4), atoms, _FULL, neg_ok=True)
        d = or_(a, b)
        if prove_ipc((), d):
            if disjunction_split(d) not in (LEFT, RIGHT):
                bad += 1
            splits += 1
        if not equiv_ipc(gate(d), or_(gate(a), gate(b))):
            bad += 1
    ok = raw_silent and lift_ok and bad == 0
    return _result("taxonomy", t0, ok,
                   f"translated tautology unprovable: {raw_silent}; lifted "
                   f"version provable: {lift_ok}; 50 disjunctions "
                   f"({splits} split), {bad} failures")


def suite_negtrans(seed: int = 0) -> SuiteResult:
    from .negtrans import godel_gentzen
    t0 = time.time()
    rng = random.Random(seed)
    atoms = [var(1), var(2), var(3), bot()]
    bad = 0
    for _ in range(300):
        f = _gen(rng, rng.randint(1, 7), atoms, _FULL, neg_ok=True)
        c = prove_classical((), f)
        if not (c == prove_ipc((), neg(neg(f)))
                == prove_ipc((), godel_gentzen(f))):
            bad += 1
    return _result("negtrans", t0, bad == 0,
                   f"300 formulas, {bad} three-way disagreements")


def _doubled(rng):
    """Node 0 under two disjoint copies of one rooted model, valuation
    at 0 copied from the shared root.  Satisfies the two-successor
    hypotheses by construction."""
    base = random_model(rng, max_nodes=4, max_vars=3)
    sub, r = cone(base, rng.randrange(base.n))
    k = sub.n
    succ = [[1 + r, 1 + k + r]]
    val = [set(sub.val[r])]
    for off in (1, 1 + k):
        for i in range(k):
            succ.append([off + j for j in sub.succ[i]])
            val.append(set(sub.val[i]))
    return FiniteModel(succ, val)


def suite_kripke(seed: int = 0) -> SuiteResult:
    t0 = time.time()
    rng = random.Random(seed)
    atoms = [var(1), var(2), var(3), bot()]
    lemma_bad = 0
    for _ in range(500):
        m = _doubled(rng)
        f = _gen(rng, rng.randint(1, 6), atoms, _FULL, neg_ok=True)
        if not two_successor_lemma_check(m, 0, f):
            lemma_bad += 1
    persist_bad = 0
    for _ in range(500):
        m = random_model(rng)
        f = _gen(rng, rng.randint(1, 6), atoms, _FULL, neg_ok=True)
        row = m.table(f)
        for i in range(m.n):
            if row[i] and not all(row[j] for j in m.up[i]):
                persist_bad += 1
    ok = lemma_bad == 0 and persist_bad == 0
    return _result("kripke", t0, ok,
                   f"500 two-successor instances, {lemma_bad} lemma "
                   f"failures; 500 models, {persist_bad} persistence "
                   f"violations")


SUITES = {
    "levels": suite_levels,
    "growth": suite_growth,
    "charform": suite_charform,
    "exactness": suite_exactness,
    "ladder": suite_ladder,
    "interval1": suite_interval1,
    "interval2": suite_interval2,
    "omega": suite_omega,
    "poset": suite_poset,
    "taxonomy": suite_taxonomy,
    "negtrans": suite_negtrans,
    "kripke": suite_kripke,
}


def run_suites(names=None, seed: int = 0) -> list[SuiteResult]:
    if names is None:
        names = list(SUITES)
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; have "
                           f"{', '.join(SUITES)}")
        out.append(SUITES[name](seed))
    return out
