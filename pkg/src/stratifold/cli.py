"""Command-line interface over the graph calculus.

Every run emits a single report (JSON with --json, readable text
otherwise).  Exit codes: 0 success, 1 invalid input, 2 a budget ran out
before a certified answer, 3 obstructions found.  The exit code and all
output are a function of the report, so runs are reproducible.

The constructive commands (pi1, synth, delta) print exactly their
artifact in text mode, so they compose in a pipeline:

    stratifold synth --expr "L(5)" | stratifold h1
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .algebra import DEFAULT_COSET_BUDGET, Exhausted, abelianization, todd_coxeter
from .analysis import (black_orders, classify_fgroup, fgroup_signature_of,
                       obstructions, q_graph, white_holes)
from .errors import DomainError, GraphError, NoSpineError, ParseError
from .formats import format_word, parse_expr, parse_graph, parse_presentation
from .formats import serialize_graph
from .graph import euler_characteristic, normalize, validate
from .presentation import natural_presentation, simplify
from .spine import NOT_CANONICAL, delta_sum, recognize, synth
from .verdicts import FiniteOrder, Indeterminate, InfiniteOrder, UnknownOrder

SCHEMA_VERSION = "1"

COMMANDS = ("validate", "pi1", "h1", "euler", "order", "fclass", "holes",
            "q", "obstruct", "synth", "recognize", "delta", "tc")


# -- report plumbing ---------------------------------------------------------


def _new_report(command: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_digest": hashlib.sha256(b"").hexdigest(),
        "payload": {},
        "indeterminate": False,
        "violations": [],
        "obstructions": [],
    }


def _violate(report: dict, rule: str, detail: str, subject: str = ""):
    report["violations"].append({"rule": rule, "subject": subject, "detail": detail})


def exit_code(report: dict) -> int:
    """The exit code is determined by the report alone."""
    if report["violations"]:
        return 1
    if report["obstructions"]:
        return 3
    if report["indeterminate"]:
        return 2
    return 0


def _digest(parts: list[str]) -> str:
    h = hashlib.sha256()
    for i, part in enumerate(parts):
        if i:
            h.update(b"\x00")
        h.update(part.encode("utf-8"))
    return h.hexdigest()


# -- input handling ----------------------------------------------------------


def _read_input(path, stdin) -> str:
    if path is None or path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _gather_inputs(args, stdin) -> list[str]:
    if args.command == "synth" and args.expr is not None:
        return [args.expr]
    if args.command == "delta":
        return [_read_input(args.infile, stdin), _read_input(args.in2, stdin),
                args.w1, args.w2]
    return [_read_input(args.infile, stdin)]


def _checked_graph(text: str, report: dict, note: str = ""):
    """Parse and validate; on violations, record them and return None."""
    graph = parse_graph(text)
    problems = validate(graph)
    for v in problems:
        detail = f"{v.detail}{note}"
        report["violations"].append(
            {"rule": v.rule, "subject": v.subject, "detail": detail})
    return None if problems else graph


# -- JSON shapes -------------------------------------------------------------


def _verdict_json(v) -> dict:
    if isinstance(v, FiniteOrder):
        return {"kind": "finite", "order": v.order, "certificate": v.certificate}
    if isinstance(v, InfiniteOrder):
        return {"kind": "infinite", "certificate": v.certificate}
    return {"kind": "unknown", "budget": v.budget}


def _pres_json(pres) -> dict:
    return {
        "generators": [{"name": g.name, "role": g.role} for g in pres.generators],
        "relators": [format_word(r) for r in pres.relators],
    }


def _ab_json(ab) -> dict:
    return {"free_rank": ab.free_rank, "torsion": list(ab.torsion)}


# -- command handlers --------------------------------------------------------


def _cmd_validate(args, inputs, report):
    graph = parse_graph(inputs[0])
    report["payload"] = {"whites": len(graph.whites), "blacks": len(graph.blacks),
                         "edges": len(graph.edges)}
    for v in validate(graph):
        report["violations"].append(
            {"rule": v.rule, "subject": v.subject, "detail": v.detail})


def _cmd_pi1(args, inputs, report):
    graph = _checked_graph(inputs[0], report)
    if graph is None:
        return
    pres = natural_presentation(normalize(graph))
    payload = {"simplified": bool(args.simplify)}
    if args.simplify:
        result = simplify(pres)
        pres = result.presentation
        payload["eliminations"] = len(result.eliminations)
        payload["exhausted"] = result.exhausted
    payload["presentation"] = _pres_json(pres)
    report["payload"] = payload


def _cmd_h1(args, inputs, report):
    graph = _checked_graph(inputs[0], report)
    if graph is None:
        return
    ab = abelianization(natural_presentation(normalize(graph)))
    report["payload"] = _ab_json(ab)


def _cmd_euler(args, inputs, report):
    graph = _checked_graph(inputs[0], report)
    if graph is None:
        return
    report["payload"] = {"euler_characteristic": euler_characteristic(graph)}


def _cmd_order(args, inputs, report):
    graph = _checked_graph(inputs[0], report)
    if graph is None:
        return
    orders = black_orders(graph, args.budget)
    report["payload"] = {
        "budget": args.budget,
        "orders": {bid: _verdict_json(v) for bid, v in sorted(orders.items())},
    }
    report["indeterminate"] = any(isinstance(v, UnknownOrder)
                                  for v in orders.values())


def _cmd_fclass(args, inputs, report):
    graph = _checked_graph(inputs[0], report)
    if graph is None:
        return
    sig = fgroup_signature_of(graph)
    if sig is None:
        _violate(report, "NotFGroupFamily",
                 "graph is not in the standard one-center F-group family")
        return
    fc = classify_fgroup(sig)
    report["payload"] = {
        "genus": sig.genus,
        "periods": list(sig.periods),
        "kind": fc.kind,
        "order": fc.order,
        "name": fc.name,
        "surface": fc.surface,
        "description": str(fc),
    }


def _cmd_holes(args, inputs, report):
    graph = _checked_graph(inputs[0], report)
    if graph is None:
        return
    orders = black_orders(graph, args.budget)
    payload = {
        "budget": args.budget,
        "orders": {bid: _verdict_json(v) for bid, v in sorted(orders.items())},
    }
    holes = white_holes(graph, orders)
    if isinstance(holes, Indeterminate):
        report["indeterminate"] = True
    else:
        payload["white_holes"] = sorted(holes)
    report["payload"] = payload


def _cmd_q(args, inputs, report):
    graph = _checked_graph(inputs[0], report)
    if graph is None:
        return
    orders = black_orders(graph, args.budget)
    payload = {
        "budget": args.budget,
        "orders": {bid: _verdict_json(v) for bid, v in sorted(orders.items())},
    }
    result = q_graph(graph, args.budget, orders)
    if isinstance(result, Indeterminate):
        report["indeterminate"] = True
        report["payload"] = payload
        return
    payload["deleted_blacks"] = list(result.deleted_blacks)
    payload["white_holes"] = list(result.white_holes)
    payload["components"] = [
        {
            "whites": len(c.graph.whites),
            "blacks": len(c.graph.blacks),
            "edges": len(c.graph.edges),
            "graph": serialize_graph(c.graph),
            "capped": list(c.capped),
            "closed_surface_genus": c.closed_surface_genus,
        }
        for c in result.components
    ]
    payload["presentation"] = _pres_json(result.presentation)
    payload["abelianization"] = _ab_json(abelianization(result.presentation))
    report["payload"] = payload


def _cmd_obstruct(args, inputs, report):
    graph = _checked_graph(inputs[0], report)
    if graph is None:
        return
    report["payload"] = {"budget": args.budget}
    found = obstructions(graph, args.budget)
    if isinstance(found, Indeterminate):
        report["indeterminate"] = True
        return
    report["obstructions"] = [{"kind": o.kind, "witness": o.witness} for o in found]


def _cmd_synth(args, inputs, report):
    expr = parse_expr(inputs[0])
    graph = synth(expr)
    report["payload"] = {"expr": str(expr), "graph": serialize_graph(graph)}


def _cmd_recognize(args, inputs, report):
    graph = _checked_graph(inputs[0], report)
    if graph is None:
        return
    result = recognize(graph)
    if result is NOT_CANONICAL:
        report["payload"] = {"canonical": False, "expr": None}
    else:
        report["payload"] = {"canonical": True, "expr": str(result)}


def _cmd_delta(args, inputs, report):
    g1 = _checked_graph(inputs[0], report, note=" (from --in)")
    g2 = _checked_graph(inputs[1], report, note=" (from --in2)")
    if g1 is None or g2 is None:
        return
    result = delta_sum(g1, args.w1, g2, args.w2)
    report["payload"] = {"graph": serialize_graph(result)}


def _cmd_tc(args, inputs, report):
    pres = parse_presentation(inputs[0])
    result = todd_coxeter(pres, budget=args.budget)
    if isinstance(result, Exhausted):
        report["payload"] = {"closed": False, "cosets": None,
                             "defined": result.defined, "budget": args.budget}
        report["indeterminate"] = True
    else:
        report["payload"] = {"closed": True, "cosets": result.cosets,
                             "defined": None, "budget": args.budget}


_HANDLERS = {
    "validate": _cmd_validate,
    "pi1": _cmd_pi1,
    "h1": _cmd_h1,
    "euler": _cmd_euler,
    "order": _cmd_order,
    "fclass": _cmd_fclass,
    "holes": _cmd_holes,
    "q": _cmd_q,
    "obstruct": _cmd_obstruct,
    "synth": _cmd_synth,
    "recognize": _cmd_recognize,
    "delta": _cmd_delta,
    "tc": _cmd_tc,
}


# -- human-readable rendering -------------------------------------------------


def _format_ab(ab: dict) -> str:
    parts = []
    r = ab["free_rank"]
    if r == 1:
        parts.append("Z")
    elif r > 1:
        parts.append(f"Z^{r}")
    parts.extend(f"Z/{d}" for d in ab["torsion"])
    return " + ".join(parts) if parts else "0"


def _order_lines(orders: dict) -> list[str]:
    lines = []
    for bid in sorted(orders):
        v = orders[bid]
        if v["kind"] == "finite":
            lines.append(f"{bid}: finite order {v['order']} ({v['certificate']})")
        elif v["kind"] == "infinite":
            lines.append(f"{bid}: infinite ({v['certificate']})")
        else:
            lines.append(f"{bid}: unknown (budget {v['budget']})")
    return lines


def _pres_lines(pres: dict) -> list[str]:
    lines = [f"gen {g['name']} {g['role']}" for g in pres["generators"]]
    lines.extend(f"rel {r}".rstrip() for r in pres["relators"])
    return lines


def _render_validate(report):
    p = report["payload"]
    return [f"ok: {p['whites']} white, {p['blacks']} black, {p['edges']} edge(s)"]


def _render_pi1(report):
    return _pres_lines(report["payload"]["presentation"])


def _render_h1(report):
    return ["H1 = " + _format_ab(report["payload"])]


def _render_euler(report):
    return [f"euler characteristic: {report['payload']['euler_characteristic']}"]


def _render_order(report):
    return _order_lines(report["payload"]["orders"])


def _render_fclass(report):
    p = report["payload"]
    periods = ", ".join(str(m) for m in p["periods"])
    return [f"F-group of genus {p['genus']} with periods ({periods}):"
            f" {p['description']}"]


def _render_holes(report):
    p = report["payload"]
    if "white_holes" not in p:
        return []
    return ["white holes: " + (" ".join(p["white_holes"]) or "(none)")]


def _render_q(report):
    p = report["payload"]
    if "components" not in p:
        return []
    lines = [
        "deleted blacks: " + (" ".join(p["deleted_blacks"]) or "(none)"),
        "white holes: " + (" ".join(p["white_holes"]) or "(none)"),
        f"components: {len(p['components'])}",
    ]
    for i, c in enumerate(p["components"], start=1):
        extra = ""
        if c["capped"]:
            extra += "; capped " + " ".join(c["capped"])
        if c["closed_surface_genus"] is not None:
            extra += f"; closed surface of genus {c['closed_surface_genus']}"
        lines.append(f"component {i}: {c['whites']} white, {c['blacks']} black,"
                     f" {c['edges']} edge(s)" + extra)
    lines.append("Q abelianization: " + _format_ab(p["abelianization"]))
    return lines


def _render_obstruct(report):
    if report["obstructions"] or report["indeterminate"]:
        return []
    return ["no obstruction found"]


def _render_synth(report):
    return report["payload"]["graph"].rstrip("\n").split("\n")


def _render_recognize(report):
    p = report["payload"]
    return [p["expr"]] if p["canonical"] else ["not canonical"]


def _render_delta(report):
    return report["payload"]["graph"].rstrip("\n").split("\n")


def _render_tc(report):
    p = report["payload"]
    if p["closed"]:
        return [f"closed: {p['cosets']} coset(s)"]
    return [f"enumeration exhausted after defining {p['defined']} cosets"
            f" (budget {p['budget']})"]


_RENDERERS = {
    "validate": _render_validate,
    "pi1": _render_pi1,
    "h1": _render_h1,
    "euler": _render_euler,
    "order": _render_order,
    "fclass": _render_fclass,
    "holes": _render_holes,
    "q": _render_q,
    "obstruct": _render_obstruct,
    "synth": _render_synth,
    "recognize": _render_recognize,
    "delta": _render_delta,
    "tc": _render_tc,
}


def _human(report: dict) -> str:
    lines: list[str] = []
    if not report["violations"]:
        lines.extend(_RENDERERS[report["command"]](report))
    for v in report["violations"]:
        subject = f" {v['subject']}" if v["subject"] else ""
        lines.append(f"violation {v['rule']}{subject}: {v['detail']}")
    for o in report["obstructions"]:
        lines.append(f"obstruction {o['kind']}: {o['witness']}")
    if report["indeterminate"]:
        lines.append("indeterminate: budget exhausted before a certified answer")
    return "\n".join(lines) + "\n" if lines else ""


# -- argument parsing ---------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # invalid command lines are invalid input: exit 1, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


_HELP = {
    "validate": "check the graph invariants",
    "pi1": "fundamental-group presentation of the graph",
    "h1": "first homology (abelianization invariants)",
    "euler": "Euler characteristic of the 2-complex",
    "order": "certified order of every branch-circle generator",
    "fclass": "classify the F-group of a one-center family graph",
    "holes": "white holes, given the order census",
    "q": "quotient-by-torsion surgery and its presentation",
    "obstruct": "run the closed-3-manifold-group obstruction suite",
    "synth": "build the canonical spine graph of a manifold expression",
    "recognize": "recover the manifold expression of a canonical spine",
    "delta": "delta-sum of two graphs at chosen white vertices",
    "tc": "coset enumeration over the trivial subgroup of a presentation",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stratifold",
                     description="2-stratifold graph calculus")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name, help=_HELP[name], description=_HELP[name])
        p.add_argument("--json", action="store_true",
                       help="emit the JSON report instead of text")
        if name != "delta":
            in_help = "input file (default: stdin; '-' for stdin)"
        else:
            in_help = "first graph file (default: stdin; '-' for stdin)"
        if name == "synth":
            p.add_argument("--expr", metavar="STRING",
                           help="manifold expression, e.g. \"L(5) # S2xS1\"")
            in_help = "file holding the expression when --expr is absent"
        p.add_argument("--in", dest="infile", metavar="FILE", help=in_help)
        if name in ("order", "holes", "q", "obstruct", "tc"):
            p.add_argument("--budget", type=_positive_int,
                           default=DEFAULT_COSET_BUDGET, metavar="N",
                           help="coset limit for enumeration "
                                f"(default {DEFAULT_COSET_BUDGET})")
        if name == "pi1":
            p.add_argument("--simplify", action="store_true",
                           help="eliminate redundant generators first")
        if name == "delta":
            p.add_argument("--in2", required=True, metavar="FILE",
                           help="second graph file")
            p.add_argument("--w1", required=True, metavar="ID",
                           help="white vertex of the first graph")
            p.add_argument("--w2", required=True, metavar="ID",
                           help="white vertex of the second graph")
    return parser


def main(argv=None, stdin=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    stdin = stdin if stdin is not None else sys.stdin
    report = _new_report(args.command)
    try:
        inputs = _gather_inputs(args, stdin)
        report["input_digest"] = _digest(inputs)
        _HANDLERS[args.command](args, inputs, report)
    except ParseError as exc:
        _violate(report, "ParseError", str(exc))
    except DomainError as exc:
        _violate(report, "DomainError", str(exc))
    except NoSpineError as exc:
        _violate(report, "NoSpine", str(exc))
    except GraphError as exc:
        _violate(report, "GraphError", str(exc))
    except OSError as exc:
        _violate(report, "IOError", str(exc))
    if args.json:
        out = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        out = _human(report)
    sys.stdout.write(out)
    return exit_code(report)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
