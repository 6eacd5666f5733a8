"""``cordalg`` command-line interface: one JSON report per run on stdout."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .cordring import build_cord_algebra
from .diagram import KnotDiagram, cable, cable_projection, from_braid_word, from_pd_code, parse_diagram
from .errors import InputError, MalformedDocument, ResourceBudgetExceeded
from .gf2poly import DEFAULT_MAX_MONOMIALS, DEFAULT_MAX_PAIRS
from .homsep import TargetRing, certify, parse_hom, search_homs, verify_hom
from .monodromy import make_action, monodromy_report, monodromy_through_projection
from .ncalg.garside import group_algebra_equal
from .ncalg.trefoil import phi, run_checks
from .ncalg.words import NcPoly
from .skein import parse_password, reduce

SCHEMA = "cordalg-report/1"
EXIT_OK, EXIT_NOT_FOUND, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedDocument(f"{self.prog}: {message}")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror}") from None


def _load_diagram(raw: bytes, fmt: str) -> KnotDiagram:
    text = raw.decode("utf-8", errors="replace")
    if fmt == "native":
        return parse_diagram(text)
    if fmt == "pd":
        try:
            tuples = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"PD code is not valid JSON: {exc}") from None
        if not isinstance(tuples, list) or not all(isinstance(t, list) for t in tuples):
            raise MalformedDocument("PD code must be a list of 4-element lists")
        return from_pd_code(tuples)
    return from_braid_word(text.strip())


def _budget(args) -> dict:
    return {
        "max_pairs": args.budget if args.budget is not None else DEFAULT_MAX_PAIRS,
        "max_monomials": DEFAULT_MAX_MONOMIALS,
        "max_seconds": args.time_budget,
    }


def _cmd_parse(args, d: KnotDiagram) -> tuple[dict, int]:
    return {"diagram": d.to_document()}, EXIT_OK


def _cmd_algebra(args, d: KnotDiagram) -> tuple[dict, int]:
    A = build_cord_algebra(d, **_budget(args))
    return A.presentation(), EXIT_OK


def _cmd_reduce(args, d: KnotDiagram) -> tuple[dict, int]:
    w = parse_password(args.word, d.basepoint)
    A = build_cord_algebra(d, **_budget(args))
    raw = reduce(d, w)
    return {"word": str(w), "raw": str(raw), "normal_form": str(A.nf(raw))}, EXIT_OK


def _cmd_monodromy(args, d: KnotDiagram) -> tuple[dict, int]:
    if args.action is None:
        raise MalformedDocument("monodromy needs --action")
    base = d
    if args.cable is not None:
        at = args.at if args.at is not None else base.basepoint
        d = cable(base, args.cable, at)
    action = make_action(args.action, d)
    target = TargetRing.parse(args.target) if args.target else None
    try:
        A = build_cord_algebra(d, **_budget(args))
    except ResourceBudgetExceeded as exc:
        # A cable can still be certified through homs of the base diagram.
        if args.cable is None or not args.certify:
            raise
        report = monodromy_through_projection(
            base, d, cable_projection(base, args.cable, at), action, target, args.limit
        )
        if report is None:
            raise
        payload = {"action": action.descriptor(), "cable": args.cable,
                   "groebner": f"not built: {exc}", **report.to_dict()}
        return payload, EXIT_OK
    cert_fn = None
    if args.certify:
        def cert_fn(images):
            return certify(A, images, target, limit=args.limit)
    report = monodromy_report(d, A, action, certify=cert_fn)
    payload = {"action": action.descriptor(), **report.to_dict()}
    if args.cable is not None:
        payload["cable"] = args.cable
    code = EXIT_OK
    if args.certify and report.moved and report.certificate is None:
        payload["certificate"] = None
        code = EXIT_NOT_FOUND
    return payload, code


def _cmd_hom(args, d: KnotDiagram) -> tuple[dict, int]:
    A = build_cord_algebra(d, **_budget(args))
    if args.mode == "verify":
        if not args.hom:
            raise MalformedDocument("hom verify needs a hom document")
        T = TargetRing.parse(args.target or "z")
        h = verify_hom(A, parse_hom(_read(args.hom).decode("utf-8"), T), T)
        payload = {"target": T.name(), "verified": h.verified, "failure": h.failure,
                   "hom": h.to_dict()}
        return payload, EXIT_OK if h.verified else EXIT_NOT_FOUND
    T = TargetRing.parse(args.target or "z^2")
    if not T.finite:
        raise MalformedDocument("hom search needs a finite target: z^k or bool")
    homs = search_homs(A, T, args.limit)
    payload = {"target": T.name(), "count": len(homs), "homs": [h.to_dict() for h in homs]}
    return payload, EXIT_OK if homs else EXIT_NOT_FOUND


def _cmd_cable(args, d: KnotDiagram) -> tuple[dict, int]:
    c = cable(d, args.n, args.at if args.at is not None else d.basepoint)
    return {"crossings": len(c.crossings), "diagram": c.to_document()}, EXIT_OK


def _cmd_nc(args) -> tuple[dict, int]:
    if args.relation:
        results = []
        for r in args.relation:
            img = phi(r)
            results.append({"relation": r, "image": str(img),
                            "vanishes": group_algebra_equal(img, NcPoly.zero())})
        return {"relations": results}, EXIT_OK if all(x["vanishes"] for x in results) else EXIT_NOT_FOUND
    out = run_checks(args.matrix_convention)
    return out, EXIT_OK if out["ok"] else EXIT_NOT_FOUND


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cordalg", description="Z2 cord algebras of knot diagrams.")
    p.add_argument("--version", action="version", version=f"cordalg {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def diagram_cmd(name: str, help: str):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("path", help="diagram document, or - for stdin")
        sp.add_argument("--format", choices=("native", "pd", "braid"), default="native")
        sp.add_argument("--budget", type=int, default=None, help="maximum S-pairs")
        sp.add_argument("--time-budget", type=float, default=None,
                        help="wall-clock seconds for the Groebner basis")
        return sp

    diagram_cmd("parse", "validate and print the canonical diagram document")
    diagram_cmd("algebra", "generators and reduced Groebner basis")
    sp = diagram_cmd("reduce", "reduce a pass-word to a normal form")
    sp.add_argument("word", help='"i [s1 s2 ...] j" or "loop: s1 s2 ..."')
    sp = diagram_cmd("monodromy", "action of a loop of knots on cord generators")
    sp.add_argument("--action", help="action descriptor (JSON)")
    sp.add_argument("--certify", action="store_true", help="search a separating hom")
    sp.add_argument("--target", default=None, help="z^k or bool (default z^2)")
    sp.add_argument("--limit", type=int, default=64)
    sp.add_argument("--cable", type=int, default=None, metavar="N",
                    help="act on the N-cable of the input diagram")
    sp.add_argument("--at", type=int, default=None, help="arc for the cable shift")
    sp = diagram_cmd("hom", "verify or search ring homomorphisms")
    sp.add_argument("mode", choices=("verify", "search"))
    sp.add_argument("hom", nargs="?", help="hom document (verify)")
    sp.add_argument("--target", default=None, help="z, z^k or bool")
    sp.add_argument("--limit", type=int, default=10)
    sp = diagram_cmd("cable", "(n,1)-cable of a diagram")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--at", type=int, default=None, help="arc for the shift (default basepoint)")
    sp = sub.add_parser("nc", help="noncommutative trefoil checks")
    sp.add_argument("--matrix-convention", choices=("ltr", "rtl"), default="ltr")
    sp.add_argument("--relation", action="append", help="check that phi(REL) vanishes")
    return p


_COMMANDS = {
    "parse": _cmd_parse,
    "algebra": _cmd_algebra,
    "reduce": _cmd_reduce,
    "monodromy": _cmd_monodromy,
    "hom": _cmd_hom,
    "cable": _cmd_cable,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command == "nc":
            digest_src = json.dumps(args.relation or [], sort_keys=True).encode()
            payload, code = _cmd_nc(args)
        else:
            raw = _read(args.path)
            digest_src = raw
            d = _load_diagram(raw, args.format)
            payload, code = _COMMANDS[args.command](args, d)
    except ResourceBudgetExceeded as exc:
        print(f"cordalg: budget exhausted: {exc}", file=err)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"cordalg: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INPUT
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "subcommand": args.command,
        "input_digest": "sha256:" + hashlib.sha256(digest_src).hexdigest(),
        "payload": payload,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    }
    json.dump(report, out, indent=2)
    out.write("\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
