"""Command-line driver: check, realize, fox, enumerate, h3."""
from __future__ import annotations

import argparse
import json
import sys

from .dsl import GogSyntaxError, graph_to_gog, parse_gog, render_gog, to_graph
from .engine import (
    NotEligible,
    REALIZABLE,
    ChainComplexData,
    _tail_family,
    decide,
    h3_invariant,
)
from .fox import Target, fox_derivative, jacobian
from .graphs import BoundsTooLarge, GraphError, enumerate_admissible, fundamental_presentation, \
    structural_admissibility, validate_and_reduce
from .groups import GroupError
from .report import CertificateReport, input_hash
from .rings import CyclicGroup

EXIT_ERROR = 1


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    doc = parse_gog(text)
    canon = render_gog(doc)
    return canon, to_graph(doc)


def _emit(obj, fmt: str, text: str | None = None):
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(text if text is not None else json.dumps(obj, sort_keys=True, indent=2))


def _report_text(r: CertificateReport) -> str:
    lines = [f"verdict: {r.verdict}", f"citations: {', '.join(r.citations) or '-'}"]
    if r.presentation:
        lines.append(f"presentation: {r.presentation}")
    lines += [f"note: {n}" for n in r.notes]
    if r.witness:
        lines.append("witness: " + json.dumps(r.witness, sort_keys=True))
    return "\n".join(lines)


def cmd_check(args) -> int:
    canon, g = _load(args.file)
    v = decide(g)
    r = CertificateReport.from_verdict(canon, v)
    if args.format == "json":
        print(r.to_json())
    else:
        print(_report_text(r))
    return r.exit_code


def cmd_realize(args) -> int:
    canon, g = _load(args.file)
    v = decide(g)
    r = CertificateReport.from_verdict(canon, v)
    if v.kind == REALIZABLE and isinstance(v.certificate, ChainComplexData):
        print(v.certificate.render())
        print()
    print(r.to_json() if args.format == "json" else _report_text(r))
    return r.exit_code


def _parse_push(spec: str, P):
    """``w`` (orientation character onto Z/2) or ``Z/n: x=1, y=0``."""
    spec = spec.strip()
    if spec == "w":
        return Target(CyclicGroup(2), {x: (0 if s == 1 else 1) for x, s in zip(P.generators, P.w)})
    if not spec.startswith("Z/") or ":" not in spec:
        raise UsageError(f"--push expects 'w' or 'Z/n: gen=k, ...', got {spec!r}")
    head, body = spec.split(":", 1)
    try:
        n = int(head[2:])
        images = {x: 0 for x in P.generators}
        for part in filter(None, (p.strip() for p in body.split(","))):
            k, val = (s.strip() for s in part.split("="))
            if k not in images:
                raise UsageError(f"--push: {k!r} is not a generator of {P.render()}")
            images[k] = int(val) % n
    except ValueError as exc:
        raise UsageError(f"--push: cannot parse {spec!r}") from exc
    t = Target(CyclicGroup(n), images)
    bad = [r for r in P.relators if t.evaluate(r) != 0]
    if bad:
        raise UsageError("--push: the images do not satisfy every relator")
    return t


def cmd_fox(args) -> int:
    _, g = _load(args.file)
    P = fundamental_presentation(validate_and_reduce(g))
    if args.push:
        t = _parse_push(args.push, P)
        A = jacobian(P, t)
        if args.format == "json":
            _emit({"presentation": P.render(), "push": args.push, "generators": list(P.generators),
                   "jacobian": [[str(x) for x in row] for row in A.to_lists()]}, "json")
        else:
            print(P.render())
            print(A.render())
        return 0
    rows = [[str(fox_derivative(r, x)) for x in P.generators] for r in P.relators]
    if args.format == "json":
        _emit({"presentation": P.render(), "generators": list(P.generators), "jacobian": rows}, "json")
    else:
        print(P.render())
        for row in rows:
            print("[" + ", ".join(row) + "]")
    return 0


def cmd_enumerate(args) -> int:
    graphs = enumerate_admissible(args.max_vertices, args.max_order)
    docs = []
    for g in graphs:
        text = graph_to_gog(g)
        rep = structural_admissibility(g)
        docs.append({"input": text, "input_hash": input_hash(text), "vertices": [G.name for G in g.vertices],
                     "edges": [e.group.name for e in g.edges], "status": rep.status})
    docs.sort(key=lambda d: (len(d["vertices"]), d["input"]))
    for d in docs:
        print(json.dumps(d, sort_keys=True, ensure_ascii=False))
    return 0


def cmd_h3(args) -> int:
    _, g = _load(args.file)
    r = validate_and_reduce(g)
    rep = structural_admissibility(r)
    if not rep.orientable or rep.status != "admissible":
        raise NotEligible("h3 needs an admissible orientable tree with Z/2 edges")
    fam = _tail_family(r)
    if fam is None:
        raise NotEligible("graph is outside the realization family")
    inv = h3_invariant(*fam)
    if args.format == "json":
        _emit(inv.to_dict(), "json")
    else:
        s = " + ".join(f"Z/{m}" for m in inv.orders)
        if inv.product is not None:
            s += f"  (cyclic of order {inv.product})"
        print(s)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pd3", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.set_defaults(fn=fn)
        return sp

    add("check", cmd_check, "decide a .gog graph and print a certificate report").add_argument("file")
    add("realize", cmd_realize, "print the chain complex of a realizable graph").add_argument("file")
    sp = add("fox", cmd_fox, "print the Fox Jacobian of the fundamental presentation")
    sp.add_argument("file")
    sp.add_argument("--push", help="'w' or 'Z/n: gen=k, ...'")
    sp = add("enumerate", cmd_enumerate, "list admissible linear trees, one JSON document per line")
    sp.add_argument("--max-vertices", type=int, required=True)
    sp.add_argument("--max-order", type=int, required=True)
    add("h3", cmd_h3, "H_3 invariant of a realizable graph").add_argument("file")
    return p


def run_commands(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else 0
    try:
        return args.fn(args)
    except (UsageError, GogSyntaxError, GraphError, GroupError, NotEligible, BoundsTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main(argv=None) -> int:
    return run_commands(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
