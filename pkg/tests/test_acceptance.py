"""Acceptance criteria 1 to 8, one test per criterion part.

Each test is marked with its criterion number and runtime limit; the
conftest prints one PASS/FAIL line per criterion after the run.
"""
import os
import subprocess
import sys
import time
from dataclasses import replace
from pathlib import Path

import pytest

import brute
import pool
from finrefl import oracle
from finrefl.engine import (
    build_bundle,
    check_hypotheses,
    classify_reflection,
    identity_data,
    run_pipeline,
    verify_adjunction,
)
from finrefl.fincat import (
    FinFunctor,
    NatTransform,
    find_isomorphism_of_categories,
    inverse,
    make_category,
    validate_category,
    validate_functor,
)
from finrefl.instances import (
    INSTANCE_NAMES,
    alexandrov_space,
    atoms,
    build_instance,
    chain,
    chain_lattice,
    complemented_elements,
    divisor_lattice,
    downset_lattice,
    indiscrete_preorder,
    pi0,
    powerset_algebra,
    preorder_iso,
    sierpinski,
    specialization_preorder,
)
from finrefl.instances.gallery import preorder_roster, space_roster
from finrefl.speclang import cli
from finrefl.transforms import (
    DualityError,
    check_lift_uniqueness,
    data_equal,
    encode_reflection,
    encode_reflection_alt,
    functional_to_relational,
    roundtrip,
    simplification_equivalence,
    swap_dual,
)

CORPUS = Path(__file__).parent / "corpus"
SEEDS = range(50)
ORACLE_BOUND = 200


@pytest.fixture(scope="module")
def gallery():
    return {n: build_instance(n) for n in INSTANCE_NAMES}


def within(limit, start):
    elapsed = time.perf_counter() - start
    assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"


@pytest.mark.criterion("1", "hypotheses imply a verified adjunction with iso counit, pool + gallery")
def test_criterion_1_theorem_suite(gallery):
    start = time.perf_counter()
    inputs = [identity_data(C) for C in pool.category_pool(SEEDS)]
    inputs += [b.encoding for b in gallery.values()]
    checked = 0
    for data in inputs:
        if not check_hypotheses(data).ok:
            continue
        built = build_bundle(data)
        r = verify_adjunction(built)
        assert r.ok, (data.name, r.lines())
        cls = classify_reflection(built)
        assert all(cls.counit_iso.values()), data.name
        checked += 1
    assert checked == len(inputs) == 2 * len(SEEDS) + len(INSTANCE_NAMES)
    within(10, start)


@pytest.mark.criterion("2", "builder arrow sets equal brute-force enumeration (<= 200 U-arrows)")
def test_criterion_2_oracle_equivalence(gallery):
    start = time.perf_counter()
    inputs = [identity_data(C) for C in pool.category_pool(SEEDS)]
    inputs += [b.encoding for b in gallery.values()]
    for s in SEEDS:
        adj = pool.closure_reflection(s)
        inputs += [encode_reflection(adj), encode_reflection_alt(adj)]
    for name in ("finite_stone", "alexandrov", "lindenbaum_tarski_finite"):
        inputs.append(swap_dual(gallery[name].encoding))
    inputs = [d for d in inputs if len(d.U.arrows) <= ORACLE_BOUND]
    assert len(inputs) == 2 * len(SEEDS) + len(INSTANCE_NAMES) + 2 * len(SEEDS) + 3
    for data in inputs:
        built = build_bundle(data, oracle=True)
        assert oracle.builder_arrows(built.Rt, built.provenanceR, data.R, 2) == oracle.r_tilde_arrows(data)
        assert oracle.builder_arrows(built.St, built.provenanceS, data.S, 3) == oracle.s_tilde_arrows(data)
    within(10, start)


@pytest.mark.criterion("3", "completeness round trip, 4 instances x 2 recipes, with checkpoints")
def test_criterion_3_completeness(gallery):
    start = time.perf_counter()
    results = {}
    for name in ("posetification", "pi0_discrete", "finite_stone", "alexandrov"):
        for recipe in (1, 2):
            rt = roundtrip(gallery[name].adjunction, recipe)
            assert rt.report.ok, (name, recipe, rt.report.lines())
            assert {f.location for f in rt.report.findings if f.code == "ISO"} == {"Rt~A", "St~B"}
            results[name, recipe] = rt
    E = indiscrete_preorder(2)
    for recipe in (1, 2):
        St = results["posetification", recipe].bundle.St
        unit = results["posetification", recipe].bundle.unit
        assert len(St.hom("(1,E)", "(1,E)")) == brute.endofunctions_monotone(E.elements, E.le) == 4
        assert inverse(St, unit["(1,E)"]) is None
        for name in ("alexandrov", "finite_stone"):
            assert results[name, recipe].classification == "equivalence"
    within(20, start)


@pytest.mark.criterion("4a", "swap_dual preserves hypothesis status on all gallery data")
def test_criterion_4a_swap_preserves_hypotheses(gallery):
    start = time.perf_counter()
    failures = []
    for name, b in gallery.items():
        before = check_hypotheses(b.encoding).summary
        try:
            after = check_hypotheses(swap_dual(b.encoding)).summary
        except DualityError as exc:
            failures.append(f"{name}: {exc}")
            continue
        if after != before:
            failures.append(f"{name}: {before} became {after}")
    within(10, start)
    assert not failures, "\n".join(failures)


@pytest.mark.criterion("4b", "double swap gives back the original data wherever swap is defined")
def test_criterion_4b_double_swap(gallery):
    start = time.perf_counter()
    defined = 0
    for b in gallery.values():
        try:
            once = swap_dual(b.encoding)
        except DualityError:
            continue
        twice = swap_dual(once)
        assert data_equal(twice, b.encoding)
        Rt1, Rt2 = build_bundle(b.encoding).Rt, build_bundle(twice).Rt
        assert find_isomorphism_of_categories(Rt1, Rt2) is not None
        defined += 1
    for C in pool.category_pool(SEEDS):
        d = identity_data(C)
        assert data_equal(swap_dual(swap_dual(d)), d)
    assert defined == 3
    within(10, start)


@pytest.mark.criterion("4c", "frame_boolean through contra_dual classifies as a reflection")
def test_criterion_4c_frame_boolean(gallery):
    start = time.perf_counter()
    b = gallery["frame_boolean"]
    assert b.route == "contra_dual"
    assert b.expectations.classification == "coreflection"
    _, report = run_pipeline(b.encoding)
    assert report.ok and report.classification == "reflection"
    within(10, start)


@pytest.mark.criterion("5", "lift uniqueness and simplification equivalence on functional encodings")
def test_criterion_5_functional_simplification(gallery):
    start = time.perf_counter()
    for name, b in gallery.items():
        fd = b.functional
        assert check_lift_uniqueness(fd).ok, name
        built = build_bundle(functional_to_relational(fd))
        r = simplification_equivalence(fd, built)
        assert r.ok, (name, r.lines())
        assert {f.location for f in r.findings if f.code == "SIMPLIFIED"} >= {"Rt", "St"}
    within(10, start)


@pytest.mark.criterion("6", "instance mathematics against independent enumerations")
def test_criterion_6_instance_mathematics():
    C3 = chain_lattice(3)
    assert len(complemented_elements(C3).elements) == 2
    D = complemented_elements(divisor_lattice(12))
    assert sorted(map(int, D.elements)) == brute.complemented_divisors(12)
    assert preorder_iso(D.lattice.order, powerset_algebra(("a", "b")).lattice.order) is not None
    C2 = chain(2)
    downs = brute.downsets(C2.elements, C2.le)
    assert len(downs) == 3 and brute.is_chain(downs)
    assert preorder_iso(downset_lattice(C2).order, chain(3)) is not None
    B4 = powerset_algebra(("a", "b"))
    L = B4.lattice
    assert len(atoms(B4)) == len(brute.minimal_nonzero(L.elements, L.le, L.bottom)) == 2
    assert len(pi0(sierpinski())[0]) == brute.components(sierpinski()) == 1
    for P in preorder_roster(["1", "C2", "E"]).values():
        assert specialization_preorder(alexandrov_space(P)) == P
    for X in space_roster(["1", "Sier", "Disc2", "Ind2"]).values():
        assert alexandrov_space(specialization_preorder(X)) == X


def run_main(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr().out.splitlines()


SEEDED_FILES = [
    ("non_iso_xi", ["hypotheses"], 1, "ERROR H3 (a,a) xi is not an isomorphism"),
    ("broken_naturality", ["roundtrip"], 1, "ERROR NAT_SQUARE f"),
    ("bad_composition", ["validate"], 1, "ERROR CAT_ASSOC (e,e,e)"),
    ("bad_syntax", ["validate"], 2, "ERROR PARSE 6:17"),
    ("bad_character", ["validate"], 2, "ERROR PARSE 4:24"),
    ("functor_law", ["validate"], 1, "ERROR FUN_TYPE f"),
    ("posetification_data", ["verify"], 0, "RESULT reflection"),
]


@pytest.mark.criterion("7", "seeded violations name their witness with the documented exit code")
def test_criterion_7_robustness(capsys, monkeypatch):
    for stem, cmd, exit_code, line in SEEDED_FILES:
        code, out = run_main([*cmd, str(CORPUS / f"{stem}.spec")], capsys)
        assert code == exit_code, (stem, out)
        assert any(o.startswith(line) for o in out), (stem, out)
    # in-memory seeded violations from the module examples
    C = make_category(["a", "b"], [("f", "a", "b")], {})
    bad = FinFunctor(C, C, {"a": "a", "b": "b"}, {"id_a": "id_a", "id_b": "id_b", "f": "id_a"})
    assert [f.location for f in validate_functor(bad).errors()] == ["f"]
    comp = {**C.comp, ("f", "id_a"): "g"}
    D = make_category(["a", "b"], [*C.arrows, ("g", "a", "b")],
                      {**comp, ("g", "id_a"): "g", ("id_b", "g"): "g"}, dict(C.identity))
    assert [(f.code, f.location) for f in validate_category(D).errors()] == [("CAT_RIGHT_ID", "(f,id_a)")]
    built = build_bundle(build_instance("posetification").encoding)
    units = {**built.unit.component, "(C2,C2)": "(C2_C2_00,C2_C2_00,C2_C2_00)"}
    tampered = replace(built, unit=NatTransform(built.unit.source, built.unit.target, units, "unit"))
    assert ("TRIANGLE1", "(C2,C2)") in {(f.code, f.location) for f in verify_adjunction(tampered).errors()}
    # an oracle disagreement is an internal fault
    monkeypatch.setattr(oracle, "r_tilde_arrows", lambda data: set())
    code, out = run_main(["verify", "--oracle", str(CORPUS / "identity_c2.spec")], capsys)
    assert code == 3 and any(o.startswith("ERROR ORACLE Rt") for o in out)


@pytest.mark.criterion("8", "two gallery runs are byte-identical")
def test_criterion_8_determinism(tmp_path):
    outputs = []
    for seed in ("1", "2"):
        env = {**os.environ, "PYTHONHASHSEED": seed}
        proc = subprocess.run([sys.executable, "-m", "finrefl", "gallery"], capture_output=True,
                              env=env, check=False)
        assert proc.returncode == 0, proc.stdout.decode() + proc.stderr.decode()
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]
    assert outputs[0].endswith(b"RESULT pass\n")
