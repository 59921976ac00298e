"""Command-line driver.

Exit status: 0 when every check passes, 1 when verification produced
findings, 2 for parse, lowering or structural errors, 3 when a
construction step failed although its preconditions held.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .. import oracle
from ..engine import (
    InternalConsistencyError,
    ReflectionData,
    StructuralError,
    check_hypotheses,
    check_typing,
    run_pipeline,
)
from ..fincat import ValidationReport, inverse, validate_category, validate_functor
from ..instances import INSTANCE_NAMES, UnknownInstance, build_instance, verify_instance
from ..transforms import (
    Adjunction,
    DualityError,
    EncodingError,
    FunctionalDataError,
    completeness_roundtrip,
    contra_dual,
    dualize_adjunction,
    encode_coreflection,
    encode_reflection,
    functional_to_relational,
    swap_dual,
    validate_adjunction,
    validate_functional_data,
)
from .lower import Lowered, LoweringError, lower
from .parser import ParseFailure, parse
from .serialize import document_from_adjunction, document_from_data, serialize, serialize_report

EXIT_OK, EXIT_FINDINGS, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class _Stop(Exception):
    """Carries the report for an early exit."""

    def __init__(self, report: ValidationReport, code: int, tail: Sequence[str] = ()):
        self.report, self.code, self.tail = report, code, list(tail)


def _fail(code: str, location: str, message: str, exit_code: int) -> _Stop:
    r = ValidationReport()
    r.error(code, [location] if location else [], message)
    return _Stop(r, exit_code, ["RESULT fail"])


def load(path: str, max_arrows: Optional[int]) -> Lowered:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _fail("IO", path, exc.strerror or str(exc), EXIT_INPUT)
    try:
        doc = parse(text)
    except ParseFailure as exc:
        r = ValidationReport()
        for e in exc.errors:
            r.error("PARSE", [e.location], f"expected {' or '.join(e.expected)}, found {e.found}")
        raise _Stop(r, EXIT_INPUT, ["RESULT fail"])
    try:
        lowered = lower(doc, max_arrows)
    except LoweringError as exc:
        raise _Stop(exc.report, EXIT_INPUT, ["RESULT fail"])
    return lowered


def _instance(name: str, max_arrows: Optional[int]):
    try:
        bundle = build_instance(name)
    except UnknownInstance as exc:
        raise _fail("UNKNOWN_INSTANCE", name, str(exc.args[0]), EXIT_INPUT)
    if max_arrows is not None:
        for C in (bundle.adjunction.A, bundle.adjunction.B):
            if len(C.arrows) > max_arrows:
                raise _fail("BOUND", C.name, f"category {C.name} has {len(C.arrows)} arrows, "
                            f"above the bound {max_arrows}", EXIT_INPUT)
    return bundle


def _encode_adjunction(adj: Adjunction) -> ReflectionData:
    if all(inverse(adj.A, adj.counit[a]) is not None for a in adj.A.objects):
        return encode_reflection(adj)
    if all(inverse(adj.B, adj.unit[b]) is not None for b in adj.B.objects):
        return contra_dual(encode_coreflection(adj))
    raise EncodingError("neither the unit nor the counit is invertible; the adjunction "
                        "is not a reflection or a coreflection", adj.name)


def reflection_of(lowered: Lowered, max_arrows: Optional[int]) -> ReflectionData:
    try:
        if lowered.kind == "reflection":
            return lowered.value
        if lowered.kind == "functional":
            return functional_to_relational(lowered.value)
        if lowered.kind == "adjunction":
            report = validate_adjunction(lowered.value)
            if not report.ok:
                raise _Stop(report, EXIT_FINDINGS, ["RESULT fail"])
            return _encode_adjunction(lowered.value)
        if lowered.kind == "instance":
            return _instance(lowered.value[0], max_arrows).encoding
    except FunctionalDataError as exc:
        raise _fail("FUNCTIONAL", "-", str(exc), EXIT_FINDINGS)
    except (EncodingError, DualityError) as exc:
        raise _fail("ENCODING", getattr(exc, "witness", "") or "-", str(exc), EXIT_FINDINGS)
    raise _fail("MISSING_ROLE", "I", "document declares no reflection data, functional data, "
                "adjunction or instance", EXIT_INPUT)


def _adjunction_of(lowered: Lowered, max_arrows: Optional[int]) -> Adjunction:
    if lowered.kind == "adjunction":
        return lowered.value
    if lowered.kind == "instance":
        return _instance(lowered.value[0], max_arrows).adjunction
    raise _fail("MISSING_ROLE", "adjunction", "document declares no adjunction", EXIT_INPUT)


def _result(report: ValidationReport, word: str = "pass") -> list[str]:
    return [f"RESULT {word if report.ok else 'fail'}"]


def _exit_for(report: ValidationReport) -> int:
    return EXIT_OK if report.ok else EXIT_FINDINGS


# commands; each returns (report, tail lines, exit code) or (text, exit code) for documents

def cmd_validate(args) -> tuple[ValidationReport, list[str], int]:
    lo = load(args.file, args.max_arrows)
    r = ValidationReport()
    for name, C in lo.categories.items():
        for f in validate_category(C).findings:
            r.add(f.severity, f.code, f.witness, f"category {name}: {f.message}")
    for name, F in lo.functors.items():
        for f in validate_functor(F).findings:
            r.add(f.severity, f.code, f.witness, f"functor {name}: {f.message}")
    if r.ok:
        if lo.kind == "reflection":
            r.extend(check_typing(lo.value))
        elif lo.kind == "functional":
            r.extend(validate_functional_data(lo.value))
        elif lo.kind == "adjunction":
            r.extend(validate_adjunction(lo.value))
    return r, _result(r), _exit_for(r)


def cmd_hypotheses(args):
    data = reflection_of(load(args.file, args.max_arrows), args.max_arrows)
    try:
        r = check_hypotheses(data)
    except StructuralError as exc:
        return exc.report, ["RESULT fail"], EXIT_INPUT
    return r, _result(r), _exit_for(r)


def _oracle_check(data: ReflectionData, bundle) -> ValidationReport:
    r = ValidationReport()
    pairs = (("Rt", oracle.r_tilde_arrows(data), bundle.Rt, bundle.provenanceR, data.R, 2),
             ("St", oracle.s_tilde_arrows(data), bundle.St, bundle.provenanceS, data.S, 3))
    for label, expected, C, prov, entries, width in pairs:
        got = oracle.builder_arrows(C, prov, entries, width)
        if got != expected:
            diff = sorted(map(str, got ^ expected))[:3]
            r.error("ORACLE", [label], f"{label} arrows differ from brute-force enumeration: {diff}")
        else:
            r.info("ORACLE", [label], f"{len(got)} arrows agree with brute-force enumeration")
    return r


def _pipeline(args, verbose: bool):
    data = reflection_of(load(args.file, args.max_arrows), args.max_arrows)
    try:
        bundle, pipe = run_pipeline(data, oracle=args.oracle)
    except StructuralError as exc:
        return exc.report, ["RESULT fail"], EXIT_INPUT
    r = ValidationReport(list(pipe.findings if verbose else pipe.errors()))
    code = _exit_for(pipe)
    if args.oracle and bundle is not None:
        oc = _oracle_check(data, bundle)
        r.extend(oc)
        if not oc.ok:
            code = EXIT_INTERNAL
    return r, pipe.summary_lines(), code


def cmd_build(args):
    return _pipeline(args, verbose=False)


def cmd_verify(args):
    return _pipeline(args, verbose=True)


def cmd_dual(args):
    lo = load(args.file, args.max_arrows)
    if lo.kind in ("adjunction",):
        return serialize(document_from_adjunction(dualize_adjunction(lo.value))), EXIT_OK
    data = reflection_of(lo, args.max_arrows)
    try:
        swapped = swap_dual(data)
    except DualityError as exc:
        r = exc.report or ValidationReport()
        r = ValidationReport(list(r.findings))
        r.error("DUALITY", [data.name or "-"], str(exc))
        return r, ["RESULT fail"], EXIT_FINDINGS
    return serialize(document_from_data(swapped)), EXIT_OK


def cmd_roundtrip(args):
    adj = _adjunction_of(load(args.file, args.max_arrows), args.max_arrows)
    r = ValidationReport()
    for recipe in (1, 2):
        r.info("RECIPE", [str(recipe)], f"encoding through recipe {recipe}")
        r.extend(completeness_roundtrip(adj, recipe))
    return r, _result(r), _exit_for(r)


def cmd_instance(args):
    bundle = _instance(args.name, args.max_arrows)
    r = verify_instance(bundle)
    return r, _result(r, bundle.expectations.classification), _exit_for(r)


def cmd_gallery(args):
    r = ValidationReport()
    for name in INSTANCE_NAMES:
        sub = verify_instance(_instance(name, args.max_arrows))
        for f in sub.findings:
            loc = name if f.location == name else f"{name}/{f.location}"
            r.add(f.severity, f.code, [loc], f.message)
    return r, _result(r), _exit_for(r)


COMMANDS = {
    "validate": (cmd_validate, "check category and functor laws and data typing"),
    "hypotheses": (cmd_hypotheses, "check the four hypotheses"),
    "build": (cmd_build, "build Rt, St and the adjoint pair; print counts"),
    "verify": (cmd_verify, "full pipeline with the machine-checked adjunction"),
    "dual": (cmd_dual, "print the dual document"),
    "roundtrip": (cmd_roundtrip, "encode an adjunction, rebuild it, compare"),
    "instance": (cmd_instance, "build and verify a named gallery instance"),
    "gallery": (cmd_gallery, "verify every gallery instance"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finrefl", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="also write the output to PATH")
    common.add_argument("--max-arrows", type=int, default=200, metavar="N",
                        help="largest category accepted for enumeration (default 200)")
    common.add_argument("--oracle", action="store_true",
                        help="cross-check Rt and St against brute-force enumeration")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if name == "instance":
            sp.add_argument("name", help=", ".join(INSTANCE_NAMES))
        elif name != "gallery":
            sp.add_argument("file")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        out = handler(args)
        if len(out) == 2:
            text, code = out
        else:
            report, tail, code = out
            text = serialize_report(report, tail)
    except _Stop as stop:
        text, code = serialize_report(stop.report, stop.tail), stop.code
    except InternalConsistencyError as exc:
        r = ValidationReport()
        r.error("INTERNAL", list(exc.witness), str(exc))
        text, code = serialize_report(r, ["RESULT fail"]), EXIT_INTERNAL
    sys.stdout.write(text)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
