from dataclasses import replace

import pytest

from finrefl import oracle
from finrefl.engine import (
    SLOT,
    Ambiguous,
    NoSolution,
    StructuralError,
    build_bundle,
    build_r_tilde,
    build_s_tilde,
    check_hypotheses,
    check_typing,
    classify_reflection,
    identity_data,
    run_pipeline,
    solve_unique_arrow,
    verify_adjunction,
)
from finrefl.fincat import (
    NatTransform,
    find_isomorphism_of_categories,
    inverse,
    make_category,
    validate_nat_transform,
)
import samples
from finrefl.instances import build_instance, chain, indiscrete_preorder, monotone_maps, posetify


@pytest.fixture(scope="module")
def chain2():
    return samples.chain2()


@pytest.fixture(scope="module")
def terminal():
    return samples.terminal()


@pytest.fixture(scope="module")
def poset_bundle():
    b = build_instance("posetification")
    built, report = run_pipeline(b.encoding)
    assert report.ok
    return b, built


def test_identity_data_passes_all_hypotheses(chain2):
    r = check_hypotheses(identity_data(chain2))
    assert r.ok
    assert r.summary == {"H1": True, "H2": True, "H3": True, "H4": True}


def test_non_iso_xi_fails_h3_with_witness():
    r = check_hypotheses(samples.split_mono_data())
    assert ("H3", "(a,a)", "xi is not an isomorphism") in [(f.code, f.location, f.message)
                                                          for f in r.errors()]


def test_ill_typed_data_raises_structural(chain2):
    d = identity_data(chain2)
    bad = replace(d, xi={**d.xi, ("a", "a"): "f"})
    assert not check_typing(bad).ok
    with pytest.raises(StructuralError) as exc:
        check_hypotheses(bad)
    assert exc.value.report.errors()[0].location == "(a,a)"


def test_rt_st_on_identity_data(chain2, terminal):
    d = identity_data(chain2)
    Rt, _ = build_r_tilde(d)
    St, _ = build_s_tilde(d)
    assert (len(Rt.objects), len(Rt.arrows)) == (2, 3)
    assert (len(St.objects), len(St.arrows)) == (2, 3)
    assert sorted(a for a, _, _ in St.arrows) == ["(f,f,f)", "(id_a,id_a,id_a)", "(id_b,id_b,id_b)"]
    assert find_isomorphism_of_categories(Rt, chain2) is not None
    Tt, _ = build_r_tilde(identity_data(terminal))
    assert find_isomorphism_of_categories(Tt, terminal) is not None


def test_posetification_hom_counts(poset_bundle):
    _, built = poset_bundle
    # independent counts by enumerating monotone maps
    C2, E = chain(2), indiscrete_preorder(2)
    assert len(built.Rt.hom("(C2,C2)", "(C2,C2)")) == len(monotone_maps(C2, C2)) == 3
    assert len(built.St.hom("(1,E)", "(1,E)")) == len(monotone_maps(E, E)) == 4


def test_posetification_functors_and_transforms(poset_bundle):
    _, built = poset_bundle
    assert built.Zt.omap == {"(1,1)": "(1,1)", "(C2,C2)": "(C2,C2)"}
    assert built.Wt.omap["(1,E)"] == "(1,1)"
    assert built.counit["(C2,C2)"] == "(id_C2,id_C2)"
    u = built.unit["(1,E)"]
    assert u == "(id_1,E_1_00,id_1)"
    assert inverse(built.St, u) is None
    # E collapses to one point under posetification
    Q, _ = posetify(indiscrete_preorder(2))
    assert len(Q.elements) == 1
    assert inverse(built.St, built.unit["(C2,C2)"]) is not None
    assert validate_nat_transform(built.unit).ok and validate_nat_transform(built.counit).ok


def test_zt_on_chain_arrow(chain2):
    built = build_bundle(identity_data(chain2))
    assert built.Zt.amap["(f,f)"] == "(f,f,f)"
    assert built.Wt.amap["(f,f,f)"] == "(f,f)"
    assert set(built.counit.component.values()) == {"(id_a,id_a)", "(id_b,id_b)"}


def test_solve_unique_arrow(terminal):
    assert solve_unique_arrow(terminal, (SLOT, "id_a"), ("id_a", "id_a")) == "id_a"
    C = make_category(["a", "b"], [("f", "a", "b")], {})
    with pytest.raises(NoSolution):
        solve_unique_arrow(C, ("id_a",), ("f",))
    two = make_category(["a", "b"], [("f", "a", "b"), ("g", "a", "b")], {})
    with pytest.raises(Ambiguous):
        solve_unique_arrow(two, (SLOT,), (SLOT,), hom=("a", "b"))


def test_solve_matches_closed_form_on_walking_iso():
    E = make_category(["x", "y"], [("f", "x", "y"), ("g", "y", "x")],
                      {("g", "f"): "id_x", ("f", "g"): "id_y"})
    # w . f = f . v has the closed form w = f . v . f^-1
    for v in E.hom("x", "x"):
        closed = E.compose("f", v, "g")
        assert solve_unique_arrow(E, (SLOT, "f"), ("f", v), hom=("y", "y")) == closed


def test_verify_adjunction_flags_tampered_unit(poset_bundle):
    _, built = poset_bundle
    comp = dict(built.unit.component)
    comp["(C2,C2)"] = "(C2_C2_00,C2_C2_00,C2_C2_00)"
    tampered = replace(built, unit=NatTransform(built.unit.source, built.unit.target, comp, "unit"))
    r = verify_adjunction(tampered)
    assert not r.ok
    assert ("TRIANGLE1", "(C2,C2)") in [(f.code, f.location) for f in r.errors()]


def test_classification():
    terminal = make_category(["a"], [], {})
    assert run_pipeline(identity_data(terminal))[1].classification == "equivalence"
    built, _ = run_pipeline(build_instance("posetification").encoding)
    cls = classify_reflection(built)
    assert cls.classification == "reflection"
    assert cls.unit_iso == {"(1,1)": True, "(C2,C2)": True, "(1,E)": False}
    assert run_pipeline(build_instance("finite_stone").encoding)[1].classification == "equivalence"


def test_pipeline_stops_at_hypotheses():
    bundle, report = run_pipeline(samples.split_mono_data())
    assert bundle is None
    assert report.stage == "hypotheses"
    assert report.summary_lines()[-1] == "RESULT fail"


def test_pipeline_summary_lines(chain2):
    _, report = run_pipeline(identity_data(chain2))
    assert report.summary_lines() == ["COUNT Rt 2 objects 3 arrows", "COUNT St 2 objects 3 arrows",
                                      "RESULT equivalence"]


def test_builders_agree_with_oracle():
    for name in ("posetification", "pi0_discrete", "finite_stone", "alexandrov", "frame_boolean",
                 "lindenbaum_tarski_finite"):
        data = build_instance(name).encoding
        built = build_bundle(data, oracle=True)
        assert oracle.builder_arrows(built.Rt, built.provenanceR, data.R, 2) == oracle.r_tilde_arrows(data)
        assert oracle.builder_arrows(built.St, built.provenanceS, data.S, 3) == oracle.s_tilde_arrows(data)

