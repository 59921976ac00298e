import itertools
from dataclasses import replace

import pytest

import brute

from finrefl.fincat import validate_category
from finrefl.instances import (
    INSTANCE_NAMES,
    UnknownInstance,
    alexandrov_space,
    antichain,
    atoms,
    build_instance,
    chain,
    chain_lattice,
    complemented_elements,
    continuous_maps,
    discrete_space,
    divisor_lattice,
    downset_lattice,
    indiscrete_preorder,
    indiscrete_space,
    lattice_homs,
    monotone_maps,
    pi0,
    posetify,
    powerset_algebra,
    preorder_as_category,
    preorder_iso,
    sierpinski,
    space_iso,
    specialization_preorder,
    verify_instance,
)
from finrefl.instances.gallery import lattice_roster, preorder_roster, space_roster

GALLERY_PREORDERS = preorder_roster(["1", "C2", "E"])
GALLERY_SPACES = space_roster(["1", "Sier", "Disc2", "Ind2"])


def test_preorder_as_category_counts():
    assert len(preorder_as_category(chain(1)).arrows) == 1
    assert len(preorder_as_category(chain(2)).arrows) == 3
    E = preorder_as_category(indiscrete_preorder(2))
    assert len(E.arrows) == 4
    assert validate_category(E).ok


def test_monotone_map_counts():
    C2, E, one = chain(2), indiscrete_preorder(2), chain(1)
    # of the 4 functions on a 2-chain, only the order-reversing swap is rejected
    assert len(monotone_maps(C2, C2)) == 3
    assert sorted(monotone_maps(E, C2)) == [("0", "0"), ("1", "1")]
    assert len(monotone_maps(E, one)) == 1


def test_posetify():
    Q, q = posetify(indiscrete_preorder(2))
    assert len(Q.elements) == 1 and set(q.values()) == set(Q.elements)
    Q, _ = posetify(chain(2))
    assert preorder_iso(Q, chain(2)) is not None
    assert len(posetify(chain(1))[0].elements) == 1


@pytest.mark.parametrize("P", list(GALLERY_PREORDERS.values()), ids=list(GALLERY_PREORDERS))
def test_posetify_universal_property(P):
    Pq, q = posetify(P)
    for Q in (chain(1), chain(2)):
        via_quotient = {tuple(dict(zip(Pq.elements, m))[q[x]] for x in P.elements)
                        for m in monotone_maps(Pq, Q)}
        assert len(via_quotient) == len(monotone_maps(Pq, Q))
        assert via_quotient == set(monotone_maps(P, Q))


def test_downset_lattices():
    assert preorder_iso(downset_lattice(chain(2)).order, chain(3)) is not None
    assert preorder_iso(downset_lattice(antichain(2)).order, powerset_algebra(("a", "b")).lattice.order)
    assert preorder_iso(downset_lattice(chain(1)).order, chain(2)) is not None


def test_complemented_elements():
    assert complemented_elements(chain_lattice(3)).elements == ("0", "2")
    B4 = powerset_algebra(("a", "b"))
    assert len(complemented_elements(B4.lattice).elements) == 4
    D = complemented_elements(divisor_lattice(12))
    assert sorted(map(int, D.elements)) == brute.complemented_divisors(12) == [1, 3, 4, 12]
    assert preorder_iso(D.lattice.order, B4.lattice.order) is not None
    D.validate()


def test_lattice_maps_restrict_to_complemented():
    lats = lattice_roster()
    for L, M in itertools.product(lats.values(), repeat=2):
        cL = set(complemented_elements(L).elements)
        cM = set(complemented_elements(M).elements)
        for m in lattice_homs(L, M):
            img = dict(zip(L.elements, m))
            assert {img[x] for x in cL} <= cM


def test_specialization():
    assert specialization_preorder(discrete_space(("0", "1"))) == antichain(2)
    assert preorder_iso(specialization_preorder(indiscrete_space(("0", "1"))),
                        indiscrete_preorder(2)) is not None
    S = specialization_preorder(sierpinski())
    # opens {1} and {0,1}: every open holding 0 holds 1, not conversely
    assert S.le("0", "1") and not S.le("1", "0")


def test_alexandrov():
    assert space_iso(alexandrov_space(antichain(2)), discrete_space(("0", "1"))) is not None
    assert alexandrov_space(chain(2)) == sierpinski()
    E = indiscrete_preorder(2)
    assert specialization_preorder(alexandrov_space(E)) == E


@pytest.mark.parametrize("name", list(GALLERY_PREORDERS))
def test_specialization_after_alexandrov_is_identity(name):
    P = GALLERY_PREORDERS[name]
    assert specialization_preorder(alexandrov_space(P)) == P


@pytest.mark.parametrize("name", list(GALLERY_SPACES))
def test_alexandrov_after_specialization_is_identity(name):
    X = GALLERY_SPACES[name]
    assert alexandrov_space(specialization_preorder(X)) == X


@pytest.mark.parametrize("name,expected", [("Disc2", 2), ("Sier", 1), ("Ind2", 1), ("1", 1)])
def test_pi0(name, expected):
    X = GALLERY_SPACES[name]
    comps, q = pi0(X)
    assert len(comps) == brute.components(X) == expected
    assert tuple(q[p] for p in X.points) in continuous_maps(X, discrete_space(comps))


def test_atoms_and_powerset():
    assert len(atoms(powerset_algebra(("a", "b")))) == 2
    assert len(powerset_algebra(("a", "b")).elements) == 4
    assert len(atoms(powerset_algebra(("a",)))) == 1
    for S in (("a",), ("a", "b"), ("a", "b", "c")):
        B = powerset_algebra(S)
        B.validate()
        assert len(atoms(B)) == len(S)
        back = powerset_algebra(atoms(B))
        assert preorder_iso(back.lattice.order, B.lattice.order) is not None


def test_unknown_instance():
    with pytest.raises(UnknownInstance):
        build_instance("no_such")


@pytest.fixture(scope="module")
def bundles():
    return {n: build_instance(n) for n in INSTANCE_NAMES}


@pytest.mark.parametrize("name", INSTANCE_NAMES)
def test_every_instance_verifies(bundles, name):
    r = verify_instance(bundles[name])
    assert r.ok, r.lines()


def test_instance_expectations(bundles):
    ex = {n: b.expectations for n, b in bundles.items()}
    assert ex["posetification"].classification == "reflection"
    assert ex["posetification"].unit_noniso == ("E",)
    assert ex["alexandrov"].classification == "equivalence"
    assert ex["finite_stone"].classification == "equivalence"
    assert ex["lindenbaum_tarski_finite"].classification == "equivalence"
    assert ex["frame_boolean"].classification == "coreflection"
    assert set(ex["pi0_discrete"].unit_noniso) == {"Sier", "Ind2"}
    assert ex["frame_boolean"].hom_counts_A[("B4", "Ch3")] == 2


def test_frame_boolean_hom_count_by_hand():
    B4, Ch3 = powerset_algebra(("0", "1")), chain_lattice(3)
    via_complemented = lattice_homs(B4.lattice, complemented_elements(Ch3).lattice)
    assert len(lattice_homs(B4.lattice, Ch3)) == len(via_complemented) == 2


def test_tampered_expectation_names_unit_witness(bundles):
    b = bundles["posetification"]
    bad = replace(b, expectations=replace(b.expectations, classification="equivalence",
                                          unit_noniso=()))
    r = verify_instance(bad)
    found = {(f.code, f.location) for f in r.errors()}
    assert ("UNIT_WITNESS", "E") in found
    assert ("CLASSIFICATION", "posetification") in found
