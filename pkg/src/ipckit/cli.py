"""Command-line front end.

Exit codes: 0 for success or an affirmative verdict, 1 for a negative
verdict (unprovable goal, failed check, no countermodel found), 2 for
usage or input errors.  --json swaps the human lines for one JSON
document; it is accepted both before and after the subcommand.
"""

from __future__ import annotations

import argparse
import json
import sys

from .formula import Formula, parse, to_str, tree_size, vars_of, ParseError
from .prover import (prove_ipc, prove_classical, ProverTimeout,
                     VariableLimitError)
from .universal import build_slice, PartialSliceError, InvalidNodeError
from .charform import char_pair
from .nishimura import classify, ladder, LadderCapError
from .interval import build_interval_spec, f_interval, h_interval
from .omega import build_omega_spec, f_omega, VarBoundError, spec_to_json
from .kripke import semantic_consequence_search, Countermodel
from .negtrans import godel_gentzen, glivenko, classical_to_ipc2
from .posets import (embed_poset, poset_from_json, parse_stream_line,
                     OrderInputError, ElementCapError, SigmaDepthError)
from .selfcheck import SUITES, run_suites


class _Usage(Exception):
    pass


def _parse(text: str) -> Formula:
    try:
        return parse(text)
    except ParseError as e:
        raise _Usage(f"cannot parse {text!r}: {e}") from None


def _cmd_prove(args):
    goal = _parse(args.goal)
    premises = tuple(_parse(p) for p in args.premise)
    if args.classical:
        verdict = prove_classical(premises, goal)
    else:
        verdict = prove_ipc(premises, goal)
    word = "provable" if verdict else "not provable"
    logic = "classically" if args.classical else "intuitionistically"
    text = f"{to_str(goal)} is {word} {logic}"
    if premises:
        text += f" from {len(premises)} premise(s)"
    return (0 if verdict else 1), text, {
        "provable": verdict, "classical": args.classical,
        "goal": to_str(goal), "premises": [to_str(p) for p in premises]}


def _cmd_countermodel(args):
    a, b = _parse(args.premise), _parse(args.goal)
    vs = vars_of(a) | vars_of(b)
    if vs <= {1, 2}:
        u = build_slice(2, args.levels)
        for nd in u.nodes:
            if u.force_at(nd.id, a) and not u.force_at(nd.id, b):
                text = (f"countermodel: slice node {nd.id} (level "
                        f"{nd.level}) forces the premise, not the goal")
                return 0, text, {"found": True, "node": nd.id,
                                 "level": nd.level}
        text = f"no countermodel within slice levels <= {args.levels}"
        return 1, text, {"found": False, "levels": args.levels}
    # wider alphabets: bounded search over all rooted finite models
    found = semantic_consequence_search((a,), b, max_nodes=args.levels + 1)
    if isinstance(found, Countermodel):
        text = (f"countermodel: node {found.node} of a "
                f"{found.model.n}-node model")
        return 0, text, {"found": True, "node": found.node,
                         "model": json.loads(found.model.to_json())}
    return 1, f"no countermodel with at most {args.levels + 1} nodes", {
        "found": False, "max_nodes": args.levels + 1}


def _cmd_bellissima(args):
    u = build_slice(args.vars, args.levels)
    per_level = {lv: len(u.level_ids(lv)) for lv in range(args.levels + 1)}
    total = sum(per_level.values())
    payload = {"vars": args.vars, "levels": args.levels,
               "per_level": per_level, "nodes": total}
    if args.export:
        with open(args.export, "w") as fh:
            fh.write(u.to_json())
        return 0, f"wrote {total} nodes to {args.export}", payload
    if args.stats:
        lines = [f"level {lv}: {c} nodes" for lv, c in per_level.items()]
        lines.append(f"total: {total} nodes")
        return 0, "\n".join(lines), payload
    return 0, f"{total} nodes through level {args.levels}", payload


def _cmd_charform(args):
    u = build_slice(args.vars, 1)
    if not 0 <= args.node < len(u.nodes):
        raise _Usage(f"node {args.node} is outside the level-1 slice "
                     f"({len(u.nodes)} nodes); deeper nodes only exist "
                     f"once built programmatically")
    plain, primed = char_pair(u, args.node)
    f = primed if args.primed else plain
    return 0, to_str(f), {"node": args.node, "primed": args.primed,
                          "formula": to_str(f)}


def _cmd_nishimura(args):
    if args.classify is not None:
        p = classify(_parse(args.classify))
        return 0, str(p), {"point": str(p)}
    lo, hi = ladder(args.ladder)
    text = f"phi({args.ladder}): {to_str(lo)}\npsi({args.ladder}): {to_str(hi)}"
    return 0, text, {"index": args.ladder, "phi": to_str(lo),
                     "psi": to_str(hi)}


def _cmd_interval(args):
    spec = build_interval_spec(args.m)
    if args.translate is not None:
        out = f_interval(spec, _parse(args.translate))
        return 0, to_str(out), {"translated": to_str(out)}
    if args.inverse is not None:
        out = h_interval(spec, _parse(args.inverse))
        return 0, to_str(out), {"inverse": to_str(out)}
    doc = {"m": spec.m, "anchors": list(spec.A),
           "guards": {"-".join(map(str, sorted(k))) or "none": v
                      for k, v in spec.gamma.items()},
           "fence": list(spec.maxS),
           "phi": to_str(spec.phi), "psi": to_str(spec.psi)}
    with open(args.export, "w") as fh:
        json.dump(doc, fh, indent=1)
    return 0, f"wrote interval data to {args.export}", doc


def _cmd_omega(args):
    spec = build_omega_spec(args.vars)
    t = f_omega(spec, _parse(args.translate))
    if args.check is None:
        return 0, to_str(t), {"translated": to_str(t)}
    g = f_omega(spec, _parse(args.check))
    verdict = prove_ipc((t,), g)
    word = "entails" if verdict else "does not entail"
    text = f"translated {args.translate} {word} translated {args.check}"
    return (0 if verdict else 1), text, {"entails": verdict}


def _cmd_poset(args):
    with open(args.input) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        spec = poset_from_json(text)
    else:
        spec = [parse_stream_line(ln) for ln in text.splitlines()
                if ln.strip()]
    result = embed_poset(spec)
    bad = result.verify(args.verify)
    # formulas run to megabytes; text mode shows addresses and sizes,
    # the full formulas travel in the JSON payload
    lines = []
    for name in result.names:
        sig = ",".join("".join(map(str, s)) or "e"
                       for s in sorted(result.sigmas[name]))
        lines.append(f"{name}: disjunction over strings [{sig}], "
                     f"{tree_size(result[name])} formula nodes")
    if bad:
        lines.append(f"FAIL: {len(bad)} order mismatches: {bad[:5]}")
    else:
        lines.append(f"ok: all {len(result.names)}^2 relations reproduced "
                     f"({args.verify})")
    payload = {"elements": {n: to_str(result[n]) for n in result.names},
               "mismatches": [list(x) for x in bad], "mode": args.verify}
    return (1 if bad else 0), "\n".join(lines), payload


def _cmd_classical(args):
    f = _parse(args.formula)
    out = {"gg": godel_gentzen, "glivenko": glivenko,
           "to-ipc2": classical_to_ipc2}[args.translation](f)
    return 0, to_str(out), {"translation": args.translation,
                            "result": to_str(out)}


def _cmd_selfcheck(args):
    names = [args.suite] if args.suite else None
    results = run_suites(names, seed=args.seed)
    lines = [r.line() for r in results]
    ok = all(r.ok for r in results)
    payload = {"seed": args.seed, "ok": ok,
               "results": [{"name": r.name, "ok": r.ok, "detail": r.detail,
                            "seconds": round(r.seconds, 2)}
                           for r in results]}
    return (0 if ok else 1), "\n".join(lines), payload


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ipckit",
        description="Universal Kripke models, characteristic formulas, "
                    "and translations into two-variable intuitionistic "
                    "logic.")
    top.add_argument("--json", action="store_true",
                     help="emit one JSON document instead of text")
    sub = top.add_subparsers(dest="cmd", required=True)

    def cmd(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        # a late --json must not clobber one given before the subcommand
        p.add_argument("--json", action="store_true",
                       default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        p.set_defaults(fn=fn)
        return p

    p = cmd("prove", _cmd_prove, help="decide a consequence")
    p.add_argument("--classical", action="store_true",
                   help="use classical rather than intuitionistic logic")
    p.add_argument("--premise", action="append", default=[],
                   metavar="F", help="premise; may repeat")
    p.add_argument("goal")

    p = cmd("countermodel", _cmd_countermodel,
            help="search for a model of the premise refuting the goal")
    p.add_argument("--levels", type=int, default=1,
                   help="slice depth (two-variable inputs) or node budget "
                        "minus one (wider alphabets); default 1")
    p.add_argument("premise")
    p.add_argument("goal")

    p = cmd("bellissima", _cmd_bellissima,
            help="build a slice of the universal model")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--levels", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--stats", action="store_true",
                   help="per-level node counts")
    g.add_argument("--export", metavar="PATH",
                   help="write the slice as JSON")

    p = cmd("charform", _cmd_charform,
            help="characteristic formula of a slice node")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--primed", action="store_true",
                   help="the co-cone formula instead of the cone one")

    p = cmd("nishimura", _cmd_nishimura,
            help="one-variable ladder positions")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--classify", metavar="F",
                   help="locate a one-variable formula on the ladder")
    g.add_argument("--ladder", type=int, metavar="I",
                   help="print both rungs at an index")

    p = cmd("interval", _cmd_interval,
            help="embedding of a small free algebra into an interval")
    p.add_argument("--m", type=int, required=True,
                   help="source variable count (1 or 2)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--translate", metavar="F")
    g.add_argument("--inverse", metavar="F")
    g.add_argument("--export", metavar="PATH")

    p = cmd("omega", _cmd_omega,
            help="fold many variables into two")
    p.add_argument("--vars", type=int, default=3, metavar="K",
                   help="chain-head budget (default 3)")
    p.add_argument("--translate", metavar="F", required=True)
    p.add_argument("--check", metavar="G",
                   help="also decide translated-F |- translated-G")

    p = cmd("poset", _cmd_poset, help="order embeddings")
    psub = p.add_subparsers(dest="poset_cmd", required=True)
    pe = psub.add_parser("embed", help="embed a finite poset")
    pe.add_argument("--json", action="store_true",
                    default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    pe.add_argument("--input", required=True, metavar="PATH",
                    help="JSON {elements, le} or stream lines "
                         "'name [below...] [above...]'")
    pe.add_argument("--verify", choices=("prover", "fast"), default="fast")
    pe.set_defaults(fn=_cmd_poset)

    p = cmd("classical", _cmd_classical,
            help="negative translations out of classical logic")
    p.add_argument("translation", choices=("gg", "glivenko", "to-ipc2"))
    p.add_argument("formula")

    p = cmd("selfcheck", _cmd_selfcheck, help="acceptance suites")
    p.add_argument("--suite", choices=sorted(SUITES), metavar="NAME",
                   help="run one suite instead of all "
                        f"({', '.join(SUITES)})")
    p.add_argument("--seed", type=int, default=0)

    return top


_INPUT_ERRORS = (ParseError, _Usage, OrderInputError, ElementCapError,
                 SigmaDepthError, InvalidNodeError, PartialSliceError,
                 VarBoundError, VariableLimitError, LadderCapError,
                 ProverTimeout, OSError, ValueError, KeyError)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        code, text, payload = args.fn(args)
    except _INPUT_ERRORS as e:
        msg = str(e) or type(e).__name__
        if args.json:
            print(json.dumps({"command": args.cmd, "exit_code": 2,
                              "error": msg}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({"command": args.cmd, "exit_code": code,
                          **payload}))
    elif text:
        print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
