"""Command-line entry point: ``palette-lab <command> ...``.

Exit codes: 0 computed/verified, 1 a checking command found a violation,
2 a budget ran out, 3 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import bounds, gadgets
from .choosability import (
    Graph,
    GraphError,
    ListAssignment,
    Status as CStatus,
    decide_choosable,
    decide_kl_choosable,
    find_l_colouring,
    is_proper_l_colouring,
)
from .extremal import Status, compute_M, compute_R, describe, verify_witness
from .graphgen import graphs_up_to
from .setfam import GroundParams, SetFamily, UnsupportedParameters, has_property_b, has_property_k

log = logging.getLogger("palette_lab")

EXIT_OK, EXIT_VIOLATION, EXIT_BUDGET, EXIT_INVALID = 0, 1, 2, 3

TABLE_R3_EXPECTED = {4: "infinite", 5: 10, 6: 8, 7: 5, 8: 4, 9: 3}


class InvalidInput(Exception):
    pass


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=None if args.compact else 2))
    elif args.format == "csv":
        # scalar fields only; nested structures need --format json
        flat = {k: v for k, v in payload.items() if not isinstance(v, (dict, list))}
        sys.stdout.write(_csv(flat.keys(), [flat.values()]))
    else:
        print(text)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _params(k, ell) -> GroundParams:
    try:
        return GroundParams(k, ell)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(str(exc)) from exc


def cmd_extremal(args) -> int:
    params = _params(args.k, args.ell)
    solver = compute_R if args.quantity == "r" else compute_M
    try:
        res = solver(params, budget=args.budget)
    except UnsupportedParameters as exc:
        raise InvalidInput(str(exc)) from exc
    _emit(args, res.to_json(), describe(res))
    return EXIT_BUDGET if res.status is Status.INCONCLUSIVE else EXIT_OK


def table_r3(budget: float, verify: bool = False):
    """Rows (ell, result) for R(3, ell), ell = 4..9."""
    rows = []
    for ell in range(4, 10):
        log.info("computing R(3,%d)", ell)
        res = compute_R(GroundParams(3, ell), budget=budget)
        if verify and res.status is Status.EXACT and not verify_witness(res):
            raise AssertionError(f"witness for R(3,{ell}) failed re-verification")
        rows.append((ell, res))
    return rows


def _value_json(res):
    if res.status is Status.INFINITE:
        return "infinite"
    return res.value


def cmd_table_r3(args) -> int:
    t0 = time.monotonic()
    rows = table_r3(args.budget, args.verify)
    values = {str(ell): _value_json(res) for ell, res in rows}
    mismatches = {
        str(ell): {"expected": TABLE_R3_EXPECTED[ell], "computed": _value_json(res)}
        for ell, res in rows
        if res.status is not Status.INCONCLUSIVE and _value_json(res) != TABLE_R3_EXPECTED[ell]
    }
    inconclusive = [ell for ell, res in rows if res.status is Status.INCONCLUSIVE]
    if args.format == "json":
        payload = dict(values)
        if args.details:
            payload = {"values": values, "mismatches": mismatches,
                       "inconclusive": inconclusive, "seconds": time.monotonic() - t0}
        print(json.dumps(payload))
    elif args.format == "csv":
        sys.stdout.write(_csv(["ell", "r"], [(ell, _value_json(res)) for ell, res in rows]))
    else:
        print("ell     " + " ".join(f"{ell:>8}" for ell, _ in rows))
        print("R(3,l)  " + " ".join(f"{str(_value_json(r)):>8}" for _, r in rows))
        for ell, res in rows:
            if res.canonical_witness_count is not None:
                print(f"  R(3,{ell}): {res.canonical_witness_count} optimal witness(es) up to isomorphism")
        for ell, m in mismatches.items():
            print(f"MISMATCH at ell={ell}: expected {m['expected']}, computed {m['computed']}")
    if inconclusive:
        return EXIT_BUDGET
    return EXIT_VIOLATION if mismatches else EXIT_OK


def scan_23(n_max: int, budget: float):
    """Check that every (2,3)-choosable graph on at most n_max vertices is 3-choosable."""
    report = {"n_max": n_max, "graphs": 0, "choosable_23": 0, "confirmed_3": 0,
              "violations": [], "skipped": []}
    for g in graphs_up_to(n_max):
        report["graphs"] += 1
        v23 = decide_kl_choosable(g, GroundParams(2, 3), budget=budget)
        if v23.status is CStatus.INCONCLUSIVE:
            report["skipped"].append(g.to_json())
            continue
        if v23.status is not CStatus.CHOOSABLE:
            continue
        report["choosable_23"] += 1
        v3 = decide_choosable(g, 3, budget=budget)
        if v3.status is CStatus.CHOOSABLE:
            report["confirmed_3"] += 1
        elif v3.status is CStatus.NOT_CHOOSABLE:
            report["violations"].append({"graph": g.to_json(), "assignment": v3.witness.to_json()})
        else:
            report["skipped"].append(g.to_json())
    return report


def cmd_scan_23(args) -> int:
    if not 1 <= args.n_max <= 6:
        raise InvalidInput("--n-max must be between 1 and 6")
    rep = scan_23(args.n_max, args.budget)
    text = (f"graphs: {rep['graphs']}  (2,3)-choosable: {rep['choosable_23']}  "
            f"3-choosable among them: {rep['confirmed_3']}  violations: {len(rep['violations'])}  "
            f"skipped: {len(rep['skipped'])}")
    _emit(args, rep, text)
    if rep["violations"]:
        return EXIT_VIOLATION
    return EXIT_BUDGET if rep["skipped"] else EXIT_OK


def _family(path) -> SetFamily:
    try:
        return SetFamily.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad family file: {exc}") from exc


def _graph(path) -> Graph:
    try:
        return Graph.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad graph file: {exc}") from exc


def _assignment(path) -> ListAssignment:
    try:
        return ListAssignment.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad assignment file: {exc}") from exc


def cmd_check(args) -> int:
    fam = _family(args.family)
    wit = has_property_b(fam) if args.property == "B" else has_property_k(fam)
    payload = {"property": args.property, "has_property": wit is not None,
               "witness": list(wit.elements) if wit else None}
    if wit:
        text = f"Property {args.property}: yes, witness {list(wit.elements)}"
    else:
        text = f"Property {args.property}: no"
    _emit(args, payload, text)
    return EXIT_OK


def _verdict_exit(args, v) -> int:
    text = f"{v.status.value} ({v.params.k},{v.params.ell}), {v.assignments_checked} assignments checked"
    if v.witness is not None:
        text += f"\nwitness lists: {v.witness.to_json()['lists']}"
    _emit(args, v.to_json(), text)
    return EXIT_BUDGET if v.status is CStatus.INCONCLUSIVE else EXIT_OK


def cmd_choosable(args) -> int:
    g = _graph(args.graph)
    return _verdict_exit(args, decide_kl_choosable(g, _params(args.k, args.ell), budget=args.budget))


def cmd_choice(args) -> int:
    g = _graph(args.graph)
    if args.k < 1:
        raise InvalidInput("k must be positive")
    return _verdict_exit(args, decide_choosable(g, args.k, budget=args.budget))


def _write_gadget(args, out: gadgets.GadgetOutput):
    if args.out_graph:
        Path(args.out_graph).write_text(json.dumps(out.graph.to_json()))
    if args.out_assignment:
        Path(args.out_assignment).write_text(json.dumps(out.assignment.to_json()))
    colourable = find_l_colouring(out.graph, out.assignment) is not None
    payload = out.to_json()
    payload["verified"] = colourable == (out.claim is gadgets.Claim.COLOURABLE)
    text = (f"{out.graph.n} vertices, {len(out.graph.edges)} edges, palette {out.assignment.params.ell}, "
            f"claim {out.claim.value}, verified {payload['verified']}")
    _emit(args, payload, text)
    return EXIT_OK if payload["verified"] else EXIT_VIOLATION


def cmd_gadget(args) -> int:
    try:
        if args.gadget == "kmm":
            return _write_gadget(args, gadgets.kmm_assignment(args.m))
        if args.gadget == "hard-bipartite":
            return _write_gadget(args, gadgets.hard_bipartite_assignment(_family(args.family)))
        g, la = _graph(args.graph), _assignment(args.assignment)
        c = gadgets.property_k_colouring(g, la)
    except gadgets.PreconditionError as exc:
        raise InvalidInput(str(exc)) from exc
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    payload = {"colour": list(c.colour), "hitting_set": list(gadgets.hitting_set_used(g, la)),
               "proper": is_proper_l_colouring(g, la, c)}
    _emit(args, payload, f"colouring {list(c.colour)} using K={payload['hitting_set']}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    params = _params(args.k, args.ell)
    m_value = args.m_value
    if m_value is None:
        if params.ell != 2 * params.k - 1:
            raise InvalidInput("--M is required unless ell = 2k-1")
        from math import comb
        m_value = comb(2 * params.k - 1, params.k)
    try:
        rep = bounds.bound_report(params, m_value)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    d = rep.to_json()
    text = (f"k={params.k} ell={params.ell}: exp((k-1)^2/ell)={rep.exp_lower:.6g}  "
            f"factorial lower={rep.factorial_lower} ({float(rep.factorial_lower):.6g})  "
            f"upper={rep.factorial_upper:.6g}  D(M={m_value})={rep.min_degree_d:.6g}")
    _emit(args, d, text)
    return EXIT_OK


def cmd_curve(args) -> int:
    try:
        out = bounds.emit_curves(args.b_from, args.b_to, args.step)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_crossover(args) -> int:
    b = bounds.crossover()
    _emit(args, {"crossover": b}, repr(b))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="palette-lab",
                                description="Exact computations for list colouring with a bounded palette.")
    p.add_argument("--format", choices=["json", "text", "csv"], default="text")
    p.add_argument("--compact", action="store_true", help="single-line JSON")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: $PALETTE_LAB_THREADS or 1)")
    p.add_argument("--budget", type=float, default=60.0, help="seconds per subcomputation")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    for q in ("r", "m"):
        s = sub.add_parser(q, help=f"compute {q.upper()}(k, ell)")
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--ell", type=int, required=True)
        s.set_defaults(func=cmd_extremal, quantity=q)

    s = sub.add_parser("table-r3", help="reproduce the R(3, ell) table")
    s.add_argument("--verify", action="store_true", help="re-check witnesses")
    s.add_argument("--details", action="store_true", help="JSON with mismatches and timing")
    s.set_defaults(func=cmd_table_r3)

    s = sub.add_parser("scan-23", help="(2,3)-choosable implies 3-choosable on small graphs")
    s.add_argument("--n-max", type=int, default=5)
    s.set_defaults(func=cmd_scan_23)

    for name, prop in (("check-b", "B"), ("check-k", "K")):
        s = sub.add_parser(name, help=f"Property {prop} of a family file")
        s.add_argument("family")
        s.set_defaults(func=cmd_check, property=prop)

    s = sub.add_parser("choosable", help="decide (k, ell)-choosability of a graph file")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.set_defaults(func=cmd_choosable)

    s = sub.add_parser("choice", help="decide k-choosability via (k, |V|)")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_choice)

    s = sub.add_parser("gadget", help="build a constructive assignment")
    gsub = s.add_subparsers(dest="gadget", required=True)
    for name in ("kmm", "hard-bipartite"):
        gs = gsub.add_parser(name)
        if name == "kmm":
            gs.add_argument("--m", type=int, required=True)
        else:
            gs.add_argument("family")
        gs.add_argument("--out-graph")
        gs.add_argument("--out-assignment")
        gs.set_defaults(func=cmd_gadget)
    gs = gsub.add_parser("colour-by-k")
    gs.add_argument("graph")
    gs.add_argument("assignment")
    gs.set_defaults(func=cmd_gadget)

    s = sub.add_parser("bounds", help="bound report for (k, ell)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--M", dest="m_value", type=int, default=None)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("curve", help="CSV of the three rate curves")
    s.add_argument("--from", dest="b_from", type=float, default=2.05)
    s.add_argument("--to", dest="b_to", type=float, default=10.0)
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("crossover", help="b where the two upper rates meet")
    s.set_defaults(func=cmd_crossover)
    return p


def resolve_threads(value) -> int:
    if value is None:
        value = os.environ.get("PALETTE_LAB_THREADS", "1")
    threads = int(value)
    if threads < 1:
        raise InvalidInput("threads must be positive")
    return threads


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(message)s")
    try:
        if args.budget <= 0:
            raise InvalidInput("budget must be positive")
        args.threads = resolve_threads(args.threads)
        return args.func(args)
    except (InvalidInput, GraphError, UnsupportedParameters) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
