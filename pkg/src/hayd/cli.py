"""Command-line interface: verify documents, run named checks, build derived
structures, and run the builtin suite.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 input or
usage error.  Machine output (--json) is byte-deterministic: items are sorted
and timings are zeroed unless --timing is given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import schema
from .ayd import (
    check_ayd,
    check_entwined_module,
    check_stability,
    check_yd,
    entwining_map,
    tensor_product,
)
from .errors import CheckFailedError, HaydError, InputError, SchemaError
from .galois import check_comodule_algebra, comodule_algebra_from_hopf, make_sayd_prop5
from .hopf import verify_hopf_axioms
from .report import Report
from .reps import verify_action, verify_coaction
from .suite import BUILTINS, builtin, resolve_targets, run_suite
from .tensor import Tensor

CHECK_NAMES = (
    "hopf_axioms",
    "action",
    "coaction",
    "ayd",
    "yd",
    "stability",
    "entwined_ayd",
    "entwined_yd",
    "comodule_algebra",
)


def _tensor_json(t):
    if t is None:
        return None
    if isinstance(t, Tensor):
        return schema._tensor_doc(t)
    return str(t)


def _report_json(report: Report, target: str, millis: int) -> dict:
    return {
        "check": report.axiom,
        "target": target,
        "passed": report.passed,
        "witness": list(report.witness) if report.witness is not None else None,
        "lhs": _tensor_json(report.lhs) if not report.passed else None,
        "rhs": _tensor_json(report.rhs) if not report.passed else None,
        "millis": millis,
    }


def _emit_report(report: Report, target: str, millis: int, as_json: bool) -> int:
    if as_json:
        print(json.dumps(_report_json(report, target, millis), sort_keys=True))
    elif report.passed:
        print(f"{report.axiom:<32} {target}: pass ({millis} ms)")
    else:
        print(f"{report.axiom:<32} {target}: FAIL at {report.witness} ({millis} ms)")
        if report.lhs is not None:
            print(f"  lhs: {report.lhs}")
        if report.rhs is not None:
            print(f"  rhs: {report.rhs}")
    return 0 if report.passed else 1


def _load_hopf(path):
    doc = schema.load_document(path)
    if doc.get("kind") != "hopf":
        raise InputError(f"{path}: expected a hopf document, got {doc.get('kind')!r}")
    return schema.doc_to_hopf(doc)


def _hopf_target(args):
    name_or_path = args.hopf
    if name_or_path in BUILTINS:
        return builtin(name_or_path)
    return _load_hopf(name_or_path)


def _require_verified_input(H, label):
    report = verify_hopf_axioms(H)
    if not report.passed:
        raise InputError(
            f"{label} fails '{report.axiom}' at {report.witness}; "
            "supply a valid Hopf structure"
        )
    return H


def cmd_verify(args) -> int:
    doc = schema.load_document(args.file)
    kind = doc["kind"]
    start = time.monotonic()
    if kind == "hopf":
        report = verify_hopf_axioms(schema.doc_to_hopf(doc))
        target = args.file
    elif kind == "algebra":
        try:
            schema.doc_to_algebra(doc, check=True)
            report = Report.ok("algebra")
        except CheckFailedError as exc:
            report = exc.report
        target = args.file
    else:
        if not args.hopf:
            raise InputError(f"verifying a {kind} document needs --hopf")
        H = _require_verified_input(_hopf_target(args), args.hopf)
        if kind == "action":
            report = verify_action(H, schema.doc_to_action(doc, H.dim))
        elif kind == "coaction":
            report = verify_coaction(H, schema.doc_to_coaction(doc, H.dim))
        elif kind == "two_sided":
            report = schema.doc_to_two_sided(doc, H).verify()
        else:  # comodule_algebra
            P = schema.doc_to_algebra(dict(doc, kind="algebra"), check=False)
            r = P.verify()
            if r.passed:
                try:
                    schema.doc_to_comodule_algebra(doc, H)
                    report = Report.ok("comodule-algebra")
                except CheckFailedError as exc:
                    report = exc.report
            else:
                report = r
        target = args.file
    millis = int((time.monotonic() - start) * 1000)
    return _emit_report(report, target, 0 if args.json and not args.timing else millis, args.json)


def cmd_check(args) -> int:
    start = time.monotonic()
    if args.name == "hopf_axioms":
        # the verification IS the requested check here, so a failing Hopf
        # structure is a check failure, not an input error
        report = verify_hopf_axioms(_hopf_target(args))
    else:
        H = _require_verified_input(_hopf_target(args), args.hopf)
        if not args.module:
            raise InputError(f"check {args.name} needs --module")
        doc = schema.load_document(args.module)
        if args.name == "action":
            report = verify_action(H, schema.doc_to_action(doc, H.dim))
        elif args.name == "coaction":
            report = verify_coaction(H, schema.doc_to_coaction(doc, H.dim))
        elif args.name == "comodule_algebra":
            if doc["kind"] != "comodule_algebra":
                raise InputError("comodule_algebra check expects a comodule_algebra document")
            P = schema.doc_to_algebra(dict(doc, kind="algebra"), check=True)
            from .reps import CoactionStructure

            m = doc["dim"]
            co = CoactionStructure(
                "right", m, schema._tensor_of(doc, "coaction", (m, m, H.dim), P.field)
            )
            report = check_comodule_algebra(P, H, co)
        else:
            if doc["kind"] != "two_sided":
                raise InputError(f"check {args.name} expects a two_sided document")
            M = schema.doc_to_two_sided(doc, H)
            if args.case and M.case != args.case:
                raise InputError(f"document is the {M.case} case, --case says {args.case}")
            r = M.verify()
            if not r.passed:
                report = r
            elif args.name == "ayd":
                report = check_ayd(M)
            elif args.name == "yd":
                report = check_yd(M)
            elif args.name == "stability":
                report = check_stability(M)
            elif args.name in ("entwined_ayd", "entwined_yd"):
                variant = args.name.split("_")[1]
                report = check_entwined_module(entwining_map(H, variant), M)
            else:
                raise InputError(f"unknown check {args.name!r}")
    millis = int((time.monotonic() - start) * 1000)
    return _emit_report(report, args.module or args.hopf, 0 if args.json and not args.timing else millis, args.json)


def _write_doc(doc, out_path):
    text = schema.dumps(doc)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    from .double import build_ah, build_double

    H = _require_verified_input(_hopf_target(args), args.hopf)
    if args.what == "ah":
        _write_doc(schema.algebra_to_doc(build_ah(H)), args.out)
        return 0
    if args.what == "double":
        _write_doc(schema.algebra_to_doc(build_double(H)), args.out)
        return 0
    if args.what == "sayd-prop5":
        if args.module:
            doc = schema.load_document(args.module)
            if doc["kind"] != "comodule_algebra":
                raise InputError("sayd-prop5 expects a comodule_algebra document")
            CA = schema.doc_to_comodule_algebra(doc, H)
        else:
            CA = comodule_algebra_from_hopf(H)
        try:
            M = make_sayd_prop5(CA)
        except CheckFailedError as exc:
            _emit_report(exc.report, args.hopf, 0, args.json)
            return 1
        _write_doc(schema.two_sided_to_doc(M), args.out)
        return 0
    if args.what == "tensor":
        if not (args.left and args.right and args.case):
            raise InputError("build tensor needs --left, --right and --case")
        N = schema.doc_to_two_sided(schema.load_document(args.left), H)
        M = schema.doc_to_two_sided(schema.load_document(args.right), H)
        try:
            T = tensor_product(N, M, args.case)
        except CheckFailedError as exc:
            _emit_report(exc.report, f"{args.left},{args.right}", 0, args.json)
            return 1
        _write_doc(schema.two_sided_to_doc(T), args.out)
        return 0
    raise InputError(f"unknown build target {args.what!r}")


def cmd_suite(args) -> int:
    names = args.builtin.split(",") if args.builtin else ["all"]
    if args.targets:
        names = list(names) + list(args.targets) if args.builtin else list(args.targets)
    targets = resolve_targets(names)
    result = run_suite(targets, checks=args.checks.split(",") if args.checks else None)
    items = sorted(result.items, key=lambda it: (it.target, it.check))
    if args.json:
        payload = {
            "passed": result.passed,
            "results": [
                {
                    "check": it.check,
                    "target": it.target,
                    "passed": it.passed,
                    "witness": list(it.witness) if it.witness is not None else None,
                    "lhs": _tensor_json(it.lhs),
                    "rhs": _tensor_json(it.rhs),
                    "millis": it.millis if args.timing else 0,
                }
                for it in items
            ],
        }
        print(json.dumps(payload, sort_keys=True, indent=1))
    else:
        for it in items:
            state = "pass" if it.passed else "FAIL"
            suffix = "" if it.passed else f" at {it.witness}"
            print(f"{it.target:<12} {it.check:<24} {state}{suffix} ({it.millis} ms)")
        total = len(items)
        bad = sum(1 for it in items if not it.passed)
        print(f"{total - bad}/{total} checks passed")
    return 0 if result.passed else 1


def cmd_list_builtins(_args) -> int:
    for name in sorted(BUILTINS):
        H = builtin(name)
        print(f"{name:<12} dim {H.dim:>2}  field {H.field}")
    return 0


def cmd_export_builtin(args) -> int:
    H = builtin(args.name)
    _write_doc(schema.hopf_to_doc(H), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hayd",
        description="Exact structure-constant checks for Hopf-algebra module compatibility.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify the axioms of a document")
    p.add_argument("file")
    p.add_argument("--hopf", help="hopf context (builtin name or file) for non-hopf documents")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="keep real timings in --json output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="run a named check against a hopf context")
    p.add_argument("name", choices=CHECK_NAMES)
    p.add_argument("--hopf", required=True, help="builtin name or hopf document path")
    p.add_argument("--module", help="document with the structure to check")
    p.add_argument("--case", choices=("ll", "lr", "rl", "rr"))
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", help="construct a derived structure and emit it as JSON")
    p.add_argument("what", choices=("ah", "double", "sayd-prop5", "tensor"))
    p.add_argument("--hopf", required=True)
    p.add_argument("--module", help="comodule_algebra document for sayd-prop5")
    p.add_argument("--left", help="two_sided document for the plain tensor factor")
    p.add_argument("--right", help="two_sided document for the twisted tensor factor")
    p.add_argument("--case", choices=("ll", "lr", "rl", "rr"))
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("suite", help="run the check battery on builtins and/or files")
    p.add_argument("--builtin", help="comma-separated builtin names, or 'all'")
    p.add_argument("--targets", nargs="*", help="additional hopf document paths")
    p.add_argument("--checks", help="comma-separated check names (default: all)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("list-builtins", help="list the builtin examples")
    p.set_defaults(func=cmd_list_builtins)

    p = sub.add_parser("export-builtin", help="write a builtin as a hopf document")
    p.add_argument("name", choices=sorted(BUILTINS))
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_export_builtin)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        for pointer, message in exc.violations:
            print(f"schema error at {pointer or '/'}: {message}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except HaydError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
