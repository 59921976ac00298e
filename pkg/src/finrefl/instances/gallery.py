"""Named adjunctions between small concrete categories.

Each ambient category is a full subcategory of a concrete category on a
fixed roster of objects; hom-sets are enumerated exhaustively from the
underlying structure maps.  A functor that builds a new structure (a
quotient, a lattice of subsets, ...) locates the roster object isomorphic
to it and transports its element maps along that isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Optional, Sequence

from ..engine import ReflectionData, classify_reflection, fmt_entry, run_pipeline
from ..fincat import (
    FinCategory,
    FinFunctor,
    ValidationReport,
    make_category,
    opposite_category,
)
from ..transforms import (
    Adjunction,
    DualFunctionalData,
    FunctionalData,
    check_dual_conditions,
    check_lift_uniqueness,
    contra_dual,
    dualize_adjunction,
    encode_coreflection,
    functional_to_relational,
    make_adjunction,
    recipe1_functional_data,
    simplification_equivalence,
    validate_adjunction,
)
from .structures import (
    FinBoolAlg,
    FinDistLattice,
    FinPreorder,
    FinTopSpace,
    Map,
    all_maps,
    alexandrov_space,
    atoms,
    boolean_homs,
    chain,
    chain_lattice,
    complemented_elements,
    continuous_maps,
    discrete_space,
    divisor_lattice,
    find_structure_iso,
    indiscrete_preorder,
    indiscrete_space,
    lattice_homs,
    monotone_maps,
    pi0,
    posetify,
    powerset_algebra,
    preorder_iso,
    sierpinski,
    space_iso,
    specialization_preorder,
)

INSTANCE_NAMES = ("posetification", "pi0_discrete", "finite_stone", "alexandrov",
                  "frame_boolean", "lindenbaum_tarski_finite")


class UnknownInstance(KeyError):
    pass


class Concrete:
    """Full subcategory of a concrete category on named carriers.

    Non-identity arrows are named ``src_tgt_digits`` where the digits are the
    positions of the images in the target carrier.
    """

    def __init__(self, name: str, structures: Mapping[str, object],
                 carrier: Callable[[object], tuple[str, ...]],
                 homs: Callable[[object, object], list[Map]]):
        self.name = name
        self.structures = dict(structures)
        self.carriers = {x: tuple(carrier(s)) for x, s in self.structures.items()}
        self._homs = homs
        objects = list(self.structures)
        arrows: list[tuple[str, str, str]] = []
        identity: dict[str, str] = {}
        self.map_of: dict[str, Map] = {}
        self._by_map: dict[tuple[str, str, Map], str] = {}
        for x in objects:
            for y in objects:
                for m in homs(self.structures[x], self.structures[y]):
                    if x == y and m == self.carriers[x]:
                        a = f"id_{x}"
                        identity[x] = a
                    else:
                        pos = {e: i for i, e in enumerate(self.carriers[y])}
                        a = f"{x}_{y}_" + "".join(str(pos[e]) for e in m)
                    arrows.append((a, x, y))
                    self.map_of[a] = m
                    self._by_map[(x, y, m)] = a
        typing = {a: (s, t) for a, s, t in arrows}
        comp = {}
        for g, (gs, gt) in typing.items():
            for f, (fs, ft) in typing.items():
                if ft == gs:
                    comp[(g, f)] = self._by_map[(fs, gt, self.compose_maps(g, f))]
        self.category = make_category(objects, arrows, comp, identity, name)

    def compose_maps(self, g: str, f: str) -> Map:
        img = dict(zip(self.carriers[self.category_src(g)], self.map_of[g]))
        return tuple(img[e] for e in self.map_of[f])

    def category_src(self, a: str) -> str:
        return a.split("_")[1] if a.startswith("id_") else a.split("_")[0]

    def homs(self, x: str, y: str) -> list[Map]:
        return self._homs(self.structures[x], self.structures[y])

    def arrow(self, x: str, y: str, m: Mapping[str, str] | Map) -> str:
        if isinstance(m, Mapping):
            m = tuple(m[e] for e in self.carriers[x])
        try:
            return self._by_map[(x, y, tuple(m))]
        except KeyError:
            raise ValueError(f"{m} is not a morphism {x} -> {y} in {self.name}") from None

    def as_dict(self, a: str) -> dict[str, str]:
        return dict(zip(self.carriers[self.category_src(a)], self.map_of[a]))

    def is_iso_map(self, x: str, y: str, m: Map) -> bool:
        """Bijective with a structure-preserving inverse, by enumeration."""
        if len(set(m)) != len(m) or len(m) != len(self.carriers[y]):
            return False
        back = dict(zip(m, self.carriers[x]))
        return tuple(back[e] for e in self.carriers[y]) in self.homs(y, x)

    def hom_counts(self) -> dict[tuple[str, str], int]:
        return {(x, y): len(self.homs(x, y)) for x in self.structures for y in self.structures}


def _locate(struct, roster: Mapping[str, object], iso) -> tuple[str, dict[str, str]]:
    for name, target in roster.items():
        phi = iso(struct, target)
        if phi is not None:
            return name, phi
    raise ValueError(f"no roster object is isomorphic to {struct}")


def _conjugate(phi_src: Mapping[str, str], phi_tgt: Mapping[str, str],
               m: Mapping[str, str]) -> dict[str, str]:
    """``phi_tgt . m . phi_src^-1`` as a dict on the roster carrier."""
    return {phi_src[e]: phi_tgt[m[e]] for e in phi_src}


def _set_iso(S, T) -> Optional[dict[str, str]]:
    return find_structure_iso(tuple(S), tuple(T), lambda m: True)


def _lattice_iso(L, M) -> Optional[dict[str, str]]:
    return preorder_iso(L.order, M.order)


def _bool_iso(A, B) -> Optional[dict[str, str]]:
    return preorder_iso(A.lattice.order, B.lattice.order)


def _join_all(L: FinDistLattice, xs) -> str:
    out = L.bottom
    for x in xs:
        out = L.join[out, x]
    return out


# rosters

def preorder_roster(names: Sequence[str]) -> dict[str, FinPreorder]:
    full = {"1": chain(1), "C2": chain(2), "E": indiscrete_preorder(2)}
    return {n: full[n] for n in names}


def space_roster(names: Sequence[str]) -> dict[str, FinTopSpace]:
    full = {"1": discrete_space(("0",)), "Sier": sierpinski(),
            "Disc2": discrete_space(("0", "1")), "Ind2": indiscrete_space(("0", "1"))}
    return {n: full[n] for n in names}


def set_roster() -> dict[str, tuple[str, ...]]:
    return {"1": ("0",), "2": ("0", "1")}


def bool_roster() -> dict[str, FinBoolAlg]:
    return {"BA2": powerset_algebra(("0",)), "BA4": powerset_algebra(("0", "1"))}


def lattice_roster() -> dict[str, FinDistLattice]:
    return {"Ch2": chain_lattice(2), "Ch3": chain_lattice(3),
            "B4": powerset_algebra(("0", "1")).lattice, "D12": divisor_lattice(12)}


def preorder_category(names: Sequence[str], name: str = "Pre") -> Concrete:
    return Concrete(name, preorder_roster(names), lambda P: P.elements, monotone_maps)


def space_category(names: Sequence[str]) -> Concrete:
    return Concrete("Top", space_roster(names), lambda X: X.points, continuous_maps)


def set_category() -> Concrete:
    return Concrete("Set", set_roster(), lambda S: S, all_maps)


def bool_category() -> Concrete:
    return Concrete("BA", bool_roster(), lambda B: B.elements, boolean_homs)


def lattice_category() -> Concrete:
    return Concrete("DL", lattice_roster(), lambda L: L.elements, lattice_homs)


def preorder_as_category(P: FinPreorder, name: str = "") -> FinCategory:
    """One object per element and one arrow ``x~y`` per pair ``x <= y``."""
    arrows = [(f"{x}~{y}", x, y) for x in P.elements for y in P.elements if P.le(x, y)]
    identity = {x: f"{x}~{x}" for x in P.elements}
    comp = {}
    for g, gs, gt in arrows:
        for f, fs, ft in arrows:
            if ft == gs:
                comp[(g, f)] = f"{fs}~{gt}"
    return make_category(P.elements, arrows, comp, identity, name)


# functors built from element-level actions

@dataclass
class _Side:
    """Where a functor lands: the concrete category and whether it is used opposite."""

    conc: Concrete
    op: bool = False

    @property
    def category(self) -> FinCategory:
        return opposite_category(self.conc.category) if self.op else self.conc.category

    def arrow(self, x: str, y: str, m: Mapping[str, str]) -> str:
        """The arrow ``x -> y`` of the (possibly opposite) category whose map is ``m``."""
        return self.conc.arrow(y, x, m) if self.op else self.conc.arrow(x, y, m)

    def arrow_map(self, a: str) -> dict[str, str]:
        return self.conc.as_dict(a)


def _functor(dom: _Side, cod: _Side, omap: Mapping[str, str],
             action: Callable[[str], dict[str, str]], name: str) -> FinFunctor:
    """``action(a)`` is the roster-level element map of the image of ``a``.

    For an opposite codomain the map runs against the arrow, as in the
    underlying concrete category.
    """
    C = dom.category
    amap = {}
    for a, s, t in C.arrows:
        amap[a] = cod.arrow(omap[s], omap[t], action(a))
    return FinFunctor(C, cod.category, dict(omap), amap, name)


def _transport(dom: _Side, cod: _Side, build: Callable[[str], object], roster: Mapping[str, object],
               iso, lift: Callable[[str, object, object], dict[str, str]], name: str
               ) -> tuple[FinFunctor, dict[str, dict[str, str]], dict[str, object]]:
    """Functor from a construction ``build`` on objects and ``lift`` on arrows.

    ``lift(a, built_src, built_tgt)`` returns the element map of the image
    of ``a`` between the built structures (against the arrow if ``cod.op``).
    Returns the functor, the isomorphisms built -> roster, and the built
    structures.
    """
    built = {x: build(x) for x in dom.conc.structures}
    omap, phis = {}, {}
    for x, s in built.items():
        omap[x], phis[x] = _locate(s, roster, iso)
    C = dom.category

    def action(a: str) -> dict[str, str]:
        s, t = C.src(a), C.tgt(a)
        m = lift(a, built[s], built[t])
        return _conjugate(phis[t], phis[s], m) if cod.op else _conjugate(phis[s], phis[t], m)

    return _functor(dom, cod, omap, action, name), phis, built


def _invert(phi: Mapping[str, str]) -> dict[str, str]:
    return {v: k for k, v in phi.items()}


# the six adjunctions

def _posetification() -> tuple[Adjunction, Concrete, Concrete]:
    A = preorder_category(["1", "C2"], "Pos")
    B = preorder_category(["1", "C2", "E"], "Pre")
    As, Bs = _Side(A), _Side(B)
    Rf = _functor(As, Bs, {x: x for x in A.structures}, A.as_dict, "incl")
    quot = {x: posetify(P) for x, P in B.structures.items()}

    def lift(a, Q1, Q2):
        m, rep2 = B.as_dict(a), quot[B.category.tgt(a)][1]
        return {c: rep2[m[c]] for c in Q1.elements}

    L, phis, _ = _transport(Bs, As, lambda x: quot[x][0], A.structures, preorder_iso, lift, "posetify")
    unit = {b: B.arrow(b, L.omap[b], {e: phis[b][quot[b][1][e]] for e in B.carriers[b]})
            for b in B.structures}
    counit = {}
    for a in A.structures:
        back = _invert(phis[a])
        counit[a] = A.arrow(L.omap[a], a, {r: back[r] for r in A.carriers[L.omap[a]]})
    return make_adjunction(A.category, B.category, L, Rf, unit, counit, "posetification"), A, B


def _pi0_discrete() -> tuple[Adjunction, Concrete, Concrete]:
    A = set_category()
    B = space_category(["1", "Sier", "Disc2", "Ind2"])
    As, Bs = _Side(A), _Side(B)
    Rf, dphi, _ = _transport(As, Bs, lambda x: discrete_space(A.carriers[x]), B.structures, space_iso,
                             lambda a, X, Y: A.as_dict(a), "disc")
    comps = {x: pi0(X) for x, X in B.structures.items()}

    def lift(a, c1, c2):
        m = B.as_dict(a)
        s, t = B.category.src(a), B.category.tgt(a)
        return {k: comps[t][1][m[p]] for p, k in comps[s][1].items()}

    L, phis, _ = _transport(Bs, As, lambda x: comps[x][0], A.structures, _set_iso, lift, "pi0")
    unit = {}
    for b in B.structures:
        target = Rf.omap[L.omap[b]]
        unit[b] = B.arrow(b, target, {p: dphi[L.omap[b]][phis[b][comps[b][1][p]]]
                                      for p in B.carriers[b]})
    counit = {}
    for a in A.structures:
        da = Rf.omap[a]
        back_d = _invert(dphi[a])
        to_point = {comps[da][1][p]: back_d[p] for p in B.carriers[da]}
        back = _invert(phis[da])
        counit[a] = A.arrow(L.omap[da], a, {r: to_point[back[r]] for r in A.carriers[L.omap[da]]})
    return make_adjunction(A.category, B.category, L, Rf, unit, counit, "pi0_discrete"), A, B


def _atom_lift(B1: FinBoolAlg, B2: FinBoolAlg, h: Mapping[str, str]) -> dict[str, str]:
    """For ``h: B2 -> B1``, send each atom of ``B1`` to the atom of ``B2`` whose image lies above it."""
    L1 = B1.lattice
    out = {}
    for x in atoms(B1):
        above = [x2 for x2 in atoms(B2) if L1.le(x, h[x2])]
        assert len(above) == 1, (x, above)
        out[x] = above[0]
    return out


def _stone_pieces(S: Concrete, BA: Concrete, set_side: _Side, ba_side: _Side, pow_op: bool):
    """Pow on sets and At on Boolean algebras, with their roster isomorphisms.

    ``pow_op`` says whether the powerset functor lands opposite (Set -> BA^op)
    or starts opposite (Set^op -> BA).
    """
    pw = {x: powerset_algebra(S.carriers[x]) for x in S.structures}

    def pow_lift(a, P1, P2):
        us, ut = S.category_src(a), S.category.tgt(a)
        return _preimage(S.carriers[us], S.carriers[ut], S.as_dict(a), pw[us], pw[ut])

    Pow, pphi, _ = _transport(set_side, ba_side, lambda x: pw[x], BA.structures, _bool_iso,
                              pow_lift, "Pow")
    at = {x: atoms(B) for x, B in BA.structures.items()}

    def at_lift(a, A1, A2):
        us, ut = BA.category_src(a), BA.category.tgt(a)
        return _atom_lift(BA.structures[ut], BA.structures[us], BA.as_dict(a))

    At, aphi, _ = _transport(ba_side, set_side, lambda x: at[x], S.structures, _set_iso,
                             at_lift, "At")
    return Pow, pphi, pw, At, aphi


def _preimage(S1: Sequence[str], S2: Sequence[str], m: Mapping[str, str],
              P1: FinBoolAlg, P2: FinBoolAlg) -> dict[str, str]:
    """``m: S1 -> S2`` gives ``P2 -> P1``, ``Y |-> m^-1(Y)``, on element names."""
    def name(xs, S):
        return "{" + ",".join(s for s in S if s in xs) + "}"

    return {y: name({s for s in S1 if m[s] in _members(y)}, S1) for y in P2.elements}


def _members(subset_name: str) -> set[str]:
    body = subset_name[1:-1]
    return set(body.split(",")) if body else set()


def _finite_stone() -> tuple[Adjunction, Concrete, Concrete]:
    A = set_category()
    B = bool_category()
    As, Bs = _Side(A), _Side(B, op=True)
    Rf, pphi, pw, L, aphi = _stone_pieces(A, B, As, Bs, pow_op=True)
    unit = {}
    for b in B.structures:
        S = L.omap[b]
        P = Rf.omap[S]
        back = _invert(aphi[b])
        lat = B.structures[b].lattice
        # Pow(At b) -> b sends a set of atoms to their join
        join_map = {}
        for y in B.carriers[P]:
            pts = _invert(pphi[S])[y]
            join_map[y] = _join_all(lat, (back[s] for s in _members(pts)))
        unit[b] = Bs.arrow(b, P, join_map)
    counit = {}
    for a in A.structures:
        P = Rf.omap[a]
        S2 = L.omap[P]
        back_p = _invert(pphi[a])
        counit[a] = A.arrow(S2, a, {r: next(iter(_members(back_p[atom])))
                                    for atom, r in aphi[P].items()})
    return make_adjunction(A.category, opposite_category(B.category), L, Rf, unit, counit,
                           "finite_stone"), A, B


def _lindenbaum_tarski() -> tuple[Adjunction, Concrete, Concrete]:
    A = bool_category()
    B = set_category()
    As, Bs = _Side(A), _Side(B, op=True)
    L, pphi, pw, Rf, aphi = _stone_pieces(B, A, Bs, As, pow_op=False)
    unit = {}
    for b in B.structures:
        P = L.omap[b]
        S2 = Rf.omap[P]
        back_p = _invert(pphi[b])
        # in Set^op the unit b -> At(Pow b) is the set map At(Pow b) -> b
        unit[b] = Bs.arrow(b, S2, {r: next(iter(_members(back_p[atom])))
                                   for atom, r in aphi[P].items()})
    counit = {}
    for a in A.structures:
        S = Rf.omap[a]
        P = L.omap[S]
        back = _invert(aphi[a])
        lat = A.structures[a].lattice
        counit[a] = A.arrow(P, a, {y: _join_all(lat, (back[s] for s in _members(_invert(pphi[S])[y])))
                                   for y in A.carriers[P]})
    return make_adjunction(A.category, opposite_category(B.category), L, Rf, unit, counit,
                           "lindenbaum_tarski_finite"), A, B


def _alexandrov() -> tuple[Adjunction, Concrete, Concrete]:
    A = space_category(["1", "Sier", "Ind2"])
    B = preorder_category(["1", "C2", "E"])
    As, Bs = _Side(A), _Side(B)
    L, lphi, _ = _transport(Bs, As, lambda x: alexandrov_space(B.structures[x]), A.structures,
                            space_iso, lambda a, X, Y: B.as_dict(a), "Alex")
    Rf, rphi, _ = _transport(As, Bs, lambda x: specialization_preorder(A.structures[x]),
                             B.structures, preorder_iso, lambda a, P, Q: A.as_dict(a), "Spec")
    unit = {}
    for b in B.structures:
        la = L.omap[b]
        unit[b] = B.arrow(b, Rf.omap[la], {e: rphi[la][lphi[b][e]] for e in B.carriers[b]})
    counit = {}
    for a in A.structures:
        rb = Rf.omap[a]
        back_l, back_r = _invert(lphi[rb]), _invert(rphi[a])
        counit[a] = A.arrow(L.omap[rb], a, {p: back_r[back_l[p]] for p in A.carriers[L.omap[rb]]})
    return make_adjunction(A.category, B.category, L, Rf, unit, counit, "alexandrov"), A, B


def _frame_boolean() -> tuple[Adjunction, Concrete, Concrete]:
    A = lattice_category()
    B = bool_category()
    As, Bs = _Side(A), _Side(B)
    L, iphi, _ = _transport(Bs, As, lambda x: B.structures[x].lattice, A.structures, _lattice_iso,
                            lambda a, X, Y: B.as_dict(a), "incl")
    comp = {x: complemented_elements(M) for x, M in A.structures.items()}

    def lift(a, C1, C2):
        h = A.as_dict(a)
        return {x: h[x] for x in C1.elements}

    Rf, cphi, _ = _transport(As, Bs, lambda x: comp[x], B.structures, _bool_iso, lift, "compl")
    unit = {}
    for b in B.structures:
        la = L.omap[b]
        unit[b] = B.arrow(b, Rf.omap[la], {e: cphi[la][iphi[b][e]] for e in B.carriers[b]})
    counit = {}
    for a in A.structures:
        rb = Rf.omap[a]
        back_c, back_i = _invert(cphi[a]), _invert(iphi[rb])
        counit[a] = A.arrow(L.omap[rb], a, {x: back_c[back_i[x]] for x in A.carriers[L.omap[rb]]})
    return make_adjunction(A.category, B.category, L, Rf, unit, counit, "frame_boolean"), A, B


_BUILDERS: dict[str, Callable[[], tuple[Adjunction, Concrete, Concrete]]] = {
    "posetification": _posetification,
    "pi0_discrete": _pi0_discrete,
    "finite_stone": _finite_stone,
    "alexandrov": _alexandrov,
    "frame_boolean": _frame_boolean,
    "lindenbaum_tarski_finite": _lindenbaum_tarski,
}
# unit-iso adjunctions are encoded through their reversed-family data
_DUAL_ROUTE = frozenset({"frame_boolean", "lindenbaum_tarski_finite"})
# ambient categories used opposite: (A side, B side)
_OPPOSITE = {"finite_stone": (False, True), "lindenbaum_tarski_finite": (False, True)}


@dataclass
class Expectations:
    """Computed from the structures by enumeration, never by the engine."""

    classification: str
    hom_counts_A: dict[tuple[str, str], int]
    hom_counts_B: dict[tuple[str, str], int]
    unit_noniso: tuple[str, ...]
    counit_noniso: tuple[str, ...]


@dataclass
class InstanceBundle:
    name: str
    adjunction: Adjunction
    encoding: ReflectionData
    route: str
    expectations: Expectations
    functional: Optional[FunctionalData] = None
    dual_functional: Optional[DualFunctionalData] = None
    concrete: dict[str, Concrete] = field(default_factory=dict)


def _expectations(adj: Adjunction, A: Concrete, B: Concrete, a_op: bool, b_op: bool) -> Expectations:
    def counts(conc: Concrete, op: bool) -> dict[tuple[str, str], int]:
        raw = conc.hom_counts()
        return {(x, y): raw[(y, x)] if op else raw[(x, y)] for x, y in raw}

    def noniso(conc: Concrete, op: bool, comps: Mapping[str, str]) -> tuple[str, ...]:
        out = []
        C = opposite_category(conc.category) if op else conc.category
        for x, a in comps.items():
            s, t = C.src(a), C.tgt(a)
            if op:
                s, t = t, s
            if not conc.is_iso_map(s, t, conc.map_of[a]):
                out.append(x)
        return tuple(out)

    unit_bad = noniso(B, b_op, adj.unit.component)
    counit_bad = noniso(A, a_op, adj.counit.component)
    cls = ("equivalence" if not unit_bad and not counit_bad else "reflection" if not counit_bad
           else "coreflection" if not unit_bad else "neither")
    return Expectations(cls, counts(A, a_op), counts(B, b_op), unit_bad, counit_bad)


def build_instance(name: str) -> InstanceBundle:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownInstance(f"unknown instance {name!r}; known: {', '.join(INSTANCE_NAMES)}") from None
    adj, A, B = builder()
    a_op, b_op = _OPPOSITE.get(name, (False, False))
    expect = _expectations(adj, A, B, a_op, b_op)
    if name in _DUAL_ROUTE:
        dd = encode_coreflection(adj)
        data = contra_dual(dd)
        fd = recipe1_functional_data(dualize_adjunction(adj))
        data = replace(data, name=name, orientation="direct")
        return InstanceBundle(name, adj, data, "contra_dual", expect, fd, dd, {"A": A, "B": B})
    fd = recipe1_functional_data(adj)
    data = replace(functional_to_relational(fd), name=name)
    return InstanceBundle(name, adj, data, "direct", expect, fd, None, {"A": A, "B": B})


_SWAP = {"reflection": "coreflection", "coreflection": "reflection"}


def verify_instance(bundle: InstanceBundle) -> ValidationReport:
    """Run the engine on the encoding and compare with the expectations.

    In the contra_dual route the engine sees the dual adjunction: ``Rt``
    objects carry objects of ``B`` (hom-sets reversed), ``St`` objects carry
    objects of ``A``, and unit and counit trade places.
    """
    r = ValidationReport()
    ex = bundle.expectations
    adj_report = validate_adjunction(bundle.adjunction)
    for f in adj_report.errors():
        r.error("ADJUNCTION", f.witness, f"{f.code} {f.message}")
    if bundle.dual_functional is not None:
        r.extend(check_dual_conditions(bundle.dual_functional))
    data = bundle.encoding
    built, pipe = run_pipeline(data)
    r.extend(ValidationReport(list(pipe.errors())))
    if built is None or not pipe.ok:
        return r
    dual = bundle.route == "contra_dual"
    cls = _SWAP.get(pipe.classification, pipe.classification) if dual else pipe.classification
    if cls != ex.classification:
        r.error("CLASSIFICATION", [bundle.name],
                f"engine classifies as {cls}, expected {ex.classification}")
    r_side, s_side = ("B", "A") if dual else ("A", "B")
    counts_r = ex.hom_counts_B if dual else ex.hom_counts_A
    counts_s = ex.hom_counts_A if dual else ex.hom_counts_B
    for label, C, entries, idx, counts in (("Rt", built.Rt, data.R, 0, counts_r),
                                           ("St", built.St, data.S, 1, counts_s)):
        carried = {fmt_entry(x): x[idx] for x in entries}
        for x in C.objects:
            for y in C.objects:
                got = len(C.hom(x, y))
                key = (carried[y], carried[x]) if dual else (carried[x], carried[y])
                if got != counts[key]:
                    r.error("HOM_COUNT", [x, y], f"|hom_{label}| = {got}, expected {counts[key]} "
                            f"from enumeration")
    cl = _classification_maps(built)
    # objects of B where the original unit fails to be invertible
    unit_seen = ({x[0] for x in data.R if not cl[0][fmt_entry(x)]} if dual
                 else {y[1] for y in data.S if not cl[1][fmt_entry(y)]})
    counit_seen = ({y[1] for y in data.S if not cl[1][fmt_entry(y)]} if dual
                   else {x[0] for x in data.R if not cl[0][fmt_entry(x)]})
    for kind, seen, expected in (("UNIT_WITNESS", unit_seen, set(ex.unit_noniso)),
                                 ("COUNIT_WITNESS", counit_seen, set(ex.counit_noniso))):
        word = "unit" if kind == "UNIT_WITNESS" else "counit"
        for o in sorted(seen - expected):
            r.error(kind, [o], f"{word} at {o} is not an isomorphism, expected invertible")
        for o in sorted(expected - seen):
            r.error(kind, [o], f"{word} at {o} is invertible, expected a non-isomorphism")
    if bundle.functional is not None:
        r.extend(check_lift_uniqueness(bundle.functional))
        r.extend(simplification_equivalence(bundle.functional, built))
    if r.ok:
        r.info("INSTANCE", [bundle.name], f"{cls} via {bundle.route}; "
               f"Rt {len(built.Rt.objects)}/{len(built.Rt.arrows)}, "
               f"St {len(built.St.objects)}/{len(built.St.arrows)}")
    return r


def _classification_maps(built) -> tuple[dict[str, bool], dict[str, bool]]:
    cls = classify_reflection(built)
    return cls.counit_iso, cls.unit_iso


def run_gallery(names: Sequence[str] = INSTANCE_NAMES) -> dict[str, ValidationReport]:
    return {n: verify_instance(build_instance(n)) for n in names}
