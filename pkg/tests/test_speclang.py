import re
import shlex
from pathlib import Path

import pytest

from finrefl.engine import check_hypotheses, run_pipeline
from finrefl.fincat import ValidationReport, validate_category
from finrefl.instances import INSTANCE_NAMES, build_instance
from finrefl.speclang import lower as lower_mod
from finrefl.speclang.cli import main
from finrefl.speclang.lower import LoweringError, lower
from finrefl.speclang.parser import (
    AdjunctionDecl,
    ArrowDecl,
    CategoryDecl,
    ComposeDecl,
    FamilyDecl,
    FunctorDecl,
    IdentityDecl,
    InstanceDecl,
    MapDecl,
    ParseFailure,
    RelationDecl,
    parse,
    parse_with_errors,
)
from finrefl.speclang.serialize import (
    document_from_adjunction,
    document_from_data,
    document_from_functional,
    serialize,
    serialize_report,
)
from finrefl.transforms import data_equal

CORPUS = Path(__file__).parent / "corpus"
FILES = sorted(CORPUS.glob("*.spec"))


def header(path):
    text = path.read_text(encoding="utf-8")
    cmd = re.search(r"^# expect: (.+)$", text, re.M).group(1)
    code = int(re.search(r"^# exit: (\d+)$", text, re.M).group(1))
    lines = re.findall(r"^# line: (.+)$", text, re.M)
    return shlex.split(cmd), code, lines


def run_cli(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("path", FILES, ids=[p.stem for p in FILES])
def test_corpus_expectations(path, capsys):
    cmd, exit_code, expected = header(path)
    argv = [cmd[0], *cmd[1:], str(path)] if cmd[0] != "instance" else cmd
    code, out = run_cli(argv, capsys)
    got = out.splitlines()
    assert code == exit_code, out
    for line in expected:
        assert any(g.startswith(line) for g in got), f"{line!r} not in\n{out}"


def parsable():
    out = []
    for p in FILES:
        doc, errors = parse_with_errors(p.read_text(encoding="utf-8"))
        if not errors:
            out.append((p, doc))
    return out


@pytest.mark.parametrize("path", [p for p, _ in parsable()], ids=[p.stem for p, _ in parsable()])
def test_serialize_parse_fixpoint(path):
    doc = parse(path.read_text(encoding="utf-8"))
    once = serialize(doc)
    again = parse(once)
    assert again == doc
    assert serialize(again) == once


def test_every_production_is_exercised():
    seen = set()
    for _, doc in parsable():
        for d in doc.decls:
            seen.add(type(d))
            if isinstance(d, CategoryDecl):
                seen |= {type(x) for x in (*d.arrows, *d.composes, *d.identities)}
                if d.objects:
                    seen.add("objects")
            if isinstance(d, FunctorDecl):
                if d.objects:
                    seen.add("functor object")
                if d.arrows:
                    seen.add("functor arrow")
    assert seen >= {CategoryDecl, ArrowDecl, ComposeDecl, IdentityDecl, "objects", FunctorDecl,
                    "functor object", "functor arrow", RelationDecl, MapDecl, FamilyDecl,
                    AdjunctionDecl, InstanceDecl}


def test_every_lowering_code_has_a_negative_file():
    source = Path(lower_mod.__file__).read_text(encoding="utf-8")
    codes = set(re.findall(r'"([A-Z][A-Z_]{3,})"', source))
    covered = {line.split()[1] for p in FILES for line in header(p)[2] if line.startswith("ERROR")}
    assert codes <= covered, codes - covered
    assert {"PARSE", "H3", "NAT_SQUARE", "CAT_ASSOC", "UNKNOWN_INSTANCE", "DUALITY"} <= covered


def test_terminal_document():
    doc = parse("category T { objects: a ; }")
    lo = lower(doc)
    T = lo.categories["T"]
    assert validate_category(T).ok
    assert T.arrow_names == ["id_a"]


def test_missing_target_reports_position():
    with pytest.raises(ParseFailure) as exc:
        parse("category C {\n  objects: a b\n  arrow f : a ->\n}\n")
    e = exc.value.errors[0]
    assert (e.line, e.col) == (3, 17)
    assert "target object" in e.expected


def test_recovery_reports_errors_in_later_blocks():
    text = "category A { arrow f : a -> }\ncategory B { objects: x ; frob }\n"
    _, errors = parse_with_errors(text)
    assert [e.line for e in errors] == [1, 2]


def test_comments_and_whitespace_are_ignored():
    a = parse("category T { objects: a }")
    b = parse("# leading comment\ncategory   T {\n   objects:   a   # trailing\n}\n")
    assert a == b


def test_missing_composite_names_pair():
    doc = parse("category C {\n objects: a b\n arrow f : a -> b\n arrow g : a -> b\n"
                " arrow h : b -> b\n compose h . f = g\n compose h . h = h\n}\n")
    with pytest.raises(LoweringError) as exc:
        lower(doc)
    errors = exc.value.report.errors()
    assert [(f.code, f.location) for f in errors] == [("MISSING_COMPOSITE", "(h,g)")]
    assert re.match(r"\d+:\d+:", errors[0].message)


def test_thin_composites_are_completed():
    doc = parse("category C3 { objects: a b c ; arrow f : a -> b ; arrow g : b -> c ; arrow h : a -> c }")
    C = lower(doc).categories["C3"]
    assert C.compose("g", "f") == "h"


def test_instance_request_lowers_to_instance():
    lo = lower(parse("instance finite_stone"))
    assert lo.kind == "instance" and lo.value[0] == "finite_stone"


def test_identity_data_document_lowers_to_passing_data():
    lo = lower(parse((CORPUS / "identity_c2.spec").read_text(encoding="utf-8")))
    assert lo.kind == "reflection"
    assert check_hypotheses(lo.value).ok


@pytest.mark.parametrize("name", INSTANCE_NAMES)
def test_gallery_documents_round_trip(name):
    b = build_instance(name)
    for doc, back in ((document_from_data(b.encoding), "reflection"),
                      (document_from_functional(b.functional), "functional"),
                      (document_from_adjunction(b.adjunction), "adjunction")):
        text = serialize(doc)
        assert serialize(parse(text)) == text
        lo = lower(parse(text))
        assert lo.kind == back
    lo = lower(parse(serialize(document_from_data(b.encoding))))
    assert data_equal(lo.value, b.encoding)


def test_report_format():
    r = ValidationReport()
    r.error("H3", ["(a,a)"], "xi is not an isomorphism")
    assert serialize_report(r, ["RESULT fail"]) == "ERROR H3 (a,a) xi is not an isomorphism\nRESULT fail\n"


def test_all_pass_report_ends_with_classification():
    lo = lower(parse((CORPUS / "posetification_data.spec").read_text(encoding="utf-8")))
    _, pipe = run_pipeline(lo.value)
    text = serialize_report(ValidationReport(), pipe.summary_lines())
    assert text.splitlines()[-1] == "RESULT reflection"
    assert text.startswith("COUNT Rt")


def test_instance_and_gallery_commands(capsys, tmp_path):
    code, out = run_cli(["instance", "posetification"], capsys)
    assert code == 0 and out.splitlines()[-1] == "RESULT reflection"
    report = tmp_path / "gallery.txt"
    code, out = run_cli(["gallery", "--report", str(report)], capsys)
    assert code == 0 and out.splitlines()[-1] == "RESULT pass"
    assert report.read_text(encoding="utf-8") == out
    code, out = run_cli(["instance", "alexandrov", "--max-arrows", "3"], capsys)
    assert code == 2 and out.startswith("ERROR BOUND")


def test_dual_command_prints_parsable_document(capsys):
    code, out = run_cli(["dual", str(CORPUS / "identity_c2.spec")], capsys)
    assert code == 0
    assert lower(parse(out)).kind == "reflection"


def test_missing_file(capsys, tmp_path):
    code, out = run_cli(["validate", str(tmp_path / "absent.spec")], capsys)
    assert code == 2 and out.startswith("ERROR IO")
