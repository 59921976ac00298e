"""Meta-constructions on reflection data.

* ``swap_dual`` exchanges the roles of ``H`` and ``K``;
* ``contra_dual`` reads data given over ``H, K, U`` with reversed arrow
  families as ordinary data over the opposite categories;
* the functional context (relations that are graphs of object functions)
  and its simplified categories;
* the two encodings of a given reflection as input data, and the round trip
  back through the engine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from . import engine
from .engine import (
    AdjunctionBundle,
    ClassificationReport,
    Entry,
    ReflectionData,
    StructuralError,
    check_hypotheses,
    classify_transforms,
    fmt_entry,
    run_pipeline,
)
from .fincat import (
    FinCategory,
    FinFunctor,
    NatTransform,
    ValidationReport,
    compose_functors,
    identity_functor,
    inverse,
    is_equivalence,
    is_isomorphism_of_categories,
    opposite_category,
    opposite_functor,
    validate_category,
    validate_functor,
    validate_nat_transform,
)


class DualityError(Exception):
    def __init__(self, message: str, report: Optional[ValidationReport] = None):
        self.report = report
        super().__init__(message)


class FunctionalDataError(Exception):
    def __init__(self, message: str, reports: Optional[dict[str, ValidationReport]] = None):
        self.reports = reports or {}
        super().__init__(message)


class EncodingError(Exception):
    def __init__(self, message: str, witness: str = ""):
        self.witness = witness
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Adjunction:
    """``L -| Rf`` with ``L: B -> A``, ``unit: 1_B => Rf L`` and ``counit: L Rf => 1_A``."""

    A: FinCategory
    B: FinCategory
    L: FinFunctor
    Rf: FinFunctor
    unit: NatTransform
    counit: NatTransform
    name: str = ""


def make_adjunction(A: FinCategory, B: FinCategory, L: FinFunctor, Rf: FinFunctor,
                    unit: Mapping[str, str], counit: Mapping[str, str], name: str = "") -> Adjunction:
    u = NatTransform(identity_functor(B), compose_functors(Rf, L, "RL"), unit, "unit")
    c = NatTransform(compose_functors(L, Rf, "LR"), identity_functor(A), counit, "counit")
    return Adjunction(A, B, L, Rf, u, c, name)


def validate_adjunction(adj: Adjunction) -> ValidationReport:
    r = ValidationReport()
    for C in (adj.A, adj.B):
        r.extend(validate_category(C))
    for F in (adj.L, adj.Rf):
        r.extend(validate_functor(F))
    if not r.ok:
        return r
    for t in (adj.unit, adj.counit):
        r.extend(validate_nat_transform(t))
    if not r.ok:
        return r
    A, B, L, Rf = adj.A, adj.B, adj.L, adj.Rf
    for b in B.objects:
        got = A.comp.get((adj.counit[L.omap[b]], L.amap[adj.unit[b]]))
        if got != A.identity[L.omap[b]]:
            r.error("TRIANGLE_L", [b], f"counit_L . L(unit) at {b} is {got}, not an identity")
    for a in A.objects:
        got = B.comp.get((Rf.amap[adj.counit[a]], adj.unit[Rf.omap[a]]))
        if got != B.identity[Rf.omap[a]]:
            r.error("TRIANGLE_R", [a], f"Rf(counit) . unit_Rf at {a} is {got}, not an identity")
    return r


def classify_adjunction(adj: Adjunction) -> ClassificationReport:
    return classify_transforms(adj.unit, adj.counit)


def dualize_adjunction(adj: Adjunction) -> Adjunction:
    """``L -| Rf`` over ``A, B`` becomes ``Rf^op -| L^op`` over ``B^op, A^op``.

    Unit and counit trade places, so a unit-iso adjunction becomes counit-iso.
    """
    A2, B2 = opposite_category(adj.B), opposite_category(adj.A)
    L2 = opposite_functor(adj.Rf, dom=B2, cod=A2)
    R2 = opposite_functor(adj.L, dom=A2, cod=B2)
    return make_adjunction(A2, B2, L2, R2, adj.counit.component, adj.unit.component,
                           f"{adj.name}^op" if adj.name else "")


def bundle_as_adjunction(bundle: AdjunctionBundle) -> Adjunction:
    return Adjunction(bundle.Rt, bundle.St, bundle.Wt, bundle.Zt, bundle.unit, bundle.counit,
                      bundle.data.name)


def transpose(x: Entry) -> Entry:
    return (x[1], x[0])


def swap_dual(data: ReflectionData) -> ReflectionData:
    """Exchange ``H <-> K`` and ``I <-> J``; ``R, S`` become the transposes of ``S, R``.

    The new ``epsPrime`` is the inverse of the old ``etaPrime`` and vice
    versa, so the output only type-checks when ``etaPrime`` is invertible on
    all of ``S``; otherwise :class:`DualityError` names the offending entry.
    The output is re-checked against the hypotheses.
    """
    H, K = data.H, data.K
    for y in data.S:
        if inverse(K, data.eta[y]) is None:
            raise DualityError(f"etaPrime at {fmt_entry(y)} is not invertible; "
                               "the swapped data has no epsPrime there")
    for x in data.R:
        if inverse(H, data.eps[x]) is None:
            raise DualityError(f"epsPrime at {fmt_entry(x)} is not invertible")
    R2 = tuple(transpose(y) for y in data.S)
    S2 = tuple(transpose(x) for x in data.R)
    out = ReflectionData(
        K, H, data.U, data.J, data.I, R2, S2,
        {transpose(y): transpose(data.W[y]) for y in data.S},
        {transpose(x): transpose(data.Z[x]) for x in data.R},
        {transpose(y): data.chi[y] for y in data.S},
        {transpose(x): data.xi[x] for x in data.R},
        {transpose(y): inverse(K, data.eta[y]) for y in data.S},
        {transpose(x): inverse(H, data.eps[x]) for x in data.R},
        f"swap({data.name})" if not data.name.startswith("swap(") else data.name[5:-1],
    )
    try:
        report = check_hypotheses(out)
    except StructuralError as exc:
        raise DualityError("swapped data is not well typed", exc.report) from None
    if not report.ok:
        first = report.errors()[0]
        raise DualityError(f"swapped data fails {first.code} at {first.location}: {first.message}",
                           report)
    return out


def data_equal(a: ReflectionData, b: ReflectionData) -> bool:
    return (a.H == b.H and a.K == b.K and a.U == b.U
            and a.I.omap == b.I.omap and a.I.amap == b.I.amap
            and a.J.omap == b.J.omap and a.J.amap == b.J.amap
            and set(a.R) == set(b.R) and set(a.S) == set(b.S)
            and a.Z == b.Z and a.W == b.W and a.xi == b.xi and a.chi == b.chi
            and a.eps == b.eps and a.eta == b.eta)


@dataclass(frozen=True, eq=False)
class DualFunctionalData:
    """Data over ``H, K, U`` whose families point the other way.

    ``alpha`` at ``(C, D)`` in R is ``J(D) -> I(C)``; ``beta`` at ``(C, D)``
    in S is ``I(C) -> J(D)``; ``lambdaPrime`` at ``x`` in R is an H-arrow
    ``C -> C*`` where ``Z(x) = (C*, D)``; ``muPrime`` at ``y`` in S is a
    K-arrow ``D* -> D`` where ``W(y) = (C, D*)``.
    """

    H: FinCategory
    K: FinCategory
    U: FinCategory
    I: FinFunctor
    J: FinFunctor
    R: tuple[Entry, ...]
    S: tuple[Entry, ...]
    Z: Mapping[Entry, Entry]
    W: Mapping[Entry, Entry]
    alpha: Mapping[Entry, str]
    beta: Mapping[Entry, str]
    lambdaPrime: Mapping[Entry, str]
    muPrime: Mapping[Entry, str]
    name: str = ""


def check_dual_conditions(dd: DualFunctionalData) -> ValidationReport:
    """The four conditions checked in ``U`` itself, without passing to opposites."""
    r = ValidationReport()
    H, K, U, I, J = dd.H, dd.K, dd.U, dd.I, dd.J
    for x in dd.R:
        lam_inv = inverse(H, dd.lambdaPrime[x])
        if lam_inv is None:
            r.error("D1", [fmt_entry(x)], f"lambdaPrime {dd.lambdaPrime[x]} is not an isomorphism")
        elif U.compose(dd.alpha[x], dd.beta[dd.Z[x]]) != I.amap[lam_inv]:
            r.error("D1", [fmt_entry(x)], "alpha . beta_Z is not I(lambdaPrime^-1)")
    for y in dd.S:
        if U.compose(dd.beta[y], dd.alpha[dd.W[y]]) != J.amap[dd.muPrime[y]]:
            r.error("D2", [fmt_entry(y)], "beta . alpha_W is not J(muPrime)")
    for x in dd.R:
        if inverse(U, dd.alpha[x]) is None:
            r.error("D3", [fmt_entry(x)], "alpha is not an isomorphism")
    for x in dd.R:
        if inverse(K, dd.muPrime[dd.Z[x]]) is None:
            r.error("D4", [fmt_entry(x)], "muPrime at Z(x) is not an isomorphism")
    return r


def contra_dual(dd: DualFunctionalData) -> ReflectionData:
    """Ordinary reflection data over ``H^op, K^op, U^op`` with ``xi := alpha``, ``chi := beta``."""
    Hop, Kop, Uop = opposite_category(dd.H), opposite_category(dd.K), opposite_category(dd.U)
    out = ReflectionData(
        Hop, Kop, Uop,
        opposite_functor(dd.I, dom=Hop, cod=Uop), opposite_functor(dd.J, dom=Kop, cod=Uop),
        dd.R, dd.S, dd.Z, dd.W, dd.alpha, dd.beta, dd.lambdaPrime, dd.muPrime,
        f"op({dd.name})" if dd.name else "",
    )
    try:
        report = check_hypotheses(out)
    except StructuralError as exc:
        raise DualityError("dualized data is not well typed", exc.report) from None
    if not report.ok:
        first = report.errors()[0]
        raise DualityError(f"dualized data fails {first.code} at {first.location}: {first.message}",
                           report)
    return out


def dual_functional_from(data: ReflectionData) -> DualFunctionalData:
    """Inverse of :func:`contra_dual`: read data over opposites back over the originals."""
    H, K, U = (opposite_category(C) for C in (data.H, data.K, data.U))
    return DualFunctionalData(
        H, K, U, opposite_functor(data.I, dom=H, cod=U), opposite_functor(data.J, dom=K, cod=U),
        data.R, data.S, data.Z, data.W, data.xi, data.chi, data.eps, data.eta,
        data.name[3:-1] if data.name.startswith("op(") else data.name,
    )


def coreflection_arrows(dd: DualFunctionalData) -> tuple[set, set]:
    """Direct enumeration of the arrows of ``Rt^op`` and ``St^op`` from the reversed families.

    ``Rt^op``: pairs ``(u: C -> C', v: D -> D')`` with ``I(u) . alpha = alpha' . J(v)``.
    ``St^op``: triples with ``beta' . I(z) = J(v) . beta`` and
    ``alpha_W' . J(w) = I(z) . alpha_W``.
    """
    H, K, U, I, J = dd.H, dd.K, dd.U, dd.I, dd.J
    r_arrows = set()
    for x in dd.R:
        for x2 in dd.R:
            for u in H.hom(x[0], x2[0]):
                for v in K.hom(x[1], x2[1]):
                    if U.compose(I.amap[u], dd.alpha[x]) == U.compose(dd.alpha[x2], J.amap[v]):
                        r_arrows.add((x, x2, (u, v)))
    s_arrows = set()
    for y in dd.S:
        for y2 in dd.S:
            wy, wy2 = dd.W[y], dd.W[y2]
            for z in H.hom(y[0], y2[0]):
                for v in K.hom(y[1], y2[1]):
                    if U.compose(dd.beta[y2], I.amap[z]) != U.compose(J.amap[v], dd.beta[y]):
                        continue
                    for w in K.hom(wy[1], wy2[1]):
                        if U.compose(dd.alpha[wy2], J.amap[w]) == U.compose(I.amap[z], dd.alpha[wy]):
                            s_arrows.add((y, y2, (z, v, w)))
    return r_arrows, s_arrows


# functional context

@dataclass(frozen=True, eq=False)
class FunctionalData:
    """Relations given as graphs of object functions ``f`` and ``g``.

    ``etaC`` at ``C`` is an H-arrow ``C -> g(f(C))`` with
    ``chiD[f(C)] . xiC[C] = I(etaC[C])``; ``etaD`` at ``D`` is a K-arrow
    ``D -> f(g(D))`` with ``xiC[g(D)] . chiD[D] = J(etaD[D])``.  The K-side
    comparison is stored forwards and need not be invertible.
    """

    H: FinCategory
    K: FinCategory
    U: FinCategory
    I: FinFunctor
    J: FinFunctor
    f: Mapping[str, str]
    g: Mapping[str, str]
    xiC: Mapping[str, str]
    chiD: Mapping[str, str]
    etaC: Mapping[str, str]
    etaD: Mapping[str, str]
    name: str = ""


def validate_functional_data(fd: FunctionalData) -> ValidationReport:
    r = ValidationReport()
    H, K, U, I, J, f, g = fd.H, fd.K, fd.U, fd.I, fd.J, fd.f, fd.g

    def typed(C, a, s, t):
        return a is not None and C.has_arrow(a) and (C.src(a), C.tgt(a)) == (s, t)

    for C in H.objects:
        if f.get(C) not in K.objects:
            r.error("FD_TYPING", [C], f"f({C}) is not an object of K")
    for D in K.objects:
        if g.get(D) not in H.objects:
            r.error("FD_TYPING", [D], f"g({D}) is not an object of H")
    if not r.ok:
        return r
    for C in H.objects:
        if not typed(U, fd.xiC.get(C), I.omap[C], J.omap[f[C]]):
            r.error("FD_TYPING", [C], f"xiC at {C} is not an arrow I({C}) -> J(f({C}))")
        if not typed(H, fd.etaC.get(C), C, g[f[C]]):
            r.error("FD_TYPING", [C], f"etaC at {C} is not an arrow {C} -> g(f({C}))")
    for D in K.objects:
        if not typed(U, fd.chiD.get(D), J.omap[D], I.omap[g[D]]):
            r.error("FD_TYPING", [D], f"chiD at {D} is not an arrow J({D}) -> I(g({D}))")
        if not typed(K, fd.etaD.get(D), D, f[g[D]]):
            r.error("FD_TYPING", [D], f"etaD at {D} is not an arrow {D} -> f(g({D}))")
    if not r.ok:
        return r
    for C in H.objects:
        if U.compose(fd.chiD[f[C]], fd.xiC[C]) != I.amap[fd.etaC[C]]:
            r.error("FD_ETA_C", [C], f"chi_f . xi at {C} is not I(etaC)")
        if inverse(U, fd.xiC[C]) is None:
            r.error("FD_XI_ISO", [C], f"xiC at {C} is not an isomorphism")
    for D in K.objects:
        if U.compose(fd.xiC[g[D]], fd.chiD[D]) != J.amap[fd.etaD[D]]:
            r.error("FD_ETA_D", [D], f"xi_g . chi at {D} is not J(etaD)")
    return r


def _direct_orientation(fd: FunctionalData) -> ReflectionData:
    H, K, f, g = fd.H, fd.K, fd.f, fd.g
    R = tuple((C, f[C]) for C in H.objects)
    S = tuple((g[D], D) for D in K.objects)
    eps = {}
    for C in H.objects:
        e = inverse(H, fd.etaC[C])
        # a non-invertible etaC leaves epsPrime untyped; the H1 check reports it
        eps[(C, f[C])] = e if e is not None else fd.etaC[C]
    return ReflectionData(
        H, K, fd.U, fd.I, fd.J, R, S,
        {(C, f[C]): (g[f[C]], f[C]) for C in H.objects},
        {(g[D], D): (g[D], f[g[D]]) for D in K.objects},
        {(C, f[C]): fd.xiC[C] for C in H.objects},
        {(g[D], D): fd.chiD[D] for D in K.objects},
        eps,
        {(g[D], D): fd.etaD[D] for D in K.objects},
        fd.name, orientation="direct",
    )


def _swapped_orientation(fd: FunctionalData) -> ReflectionData:
    H, K, f, g = fd.H, fd.K, fd.f, fd.g
    R = tuple((D, g[D]) for D in K.objects)
    S = tuple((f[C], C) for C in H.objects)
    eps = {}
    for D in K.objects:
        e = inverse(K, fd.etaD[D])
        eps[(D, g[D])] = e if e is not None else fd.etaD[D]
    return ReflectionData(
        K, H, fd.U, fd.J, fd.I, R, S,
        {(D, g[D]): (f[g[D]], g[D]) for D in K.objects},
        {(f[C], C): (f[C], g[f[C]]) for C in H.objects},
        {(D, g[D]): fd.chiD[D] for D in K.objects},
        {(f[C], C): fd.xiC[C] for C in H.objects},
        eps,
        {(f[C], C): fd.etaC[C] for C in H.objects},
        fd.name, orientation="swapped",
    )


def _orientation_report(data: ReflectionData, needs_inverse: Mapping[Entry, str],
                        C: FinCategory, code: str) -> ValidationReport:
    r = ValidationReport()
    for x, a in needs_inverse.items():
        if inverse(C, a) is None:
            r.error(code, [fmt_entry(x)], f"{a} is not an isomorphism")
    if not r.ok:
        return r
    try:
        return check_hypotheses(data)
    except StructuralError as exc:
        return exc.report


def functional_to_relational(fd: FunctionalData) -> ReflectionData:
    """Graph relations ``R = {(C, f C)}``, ``S = {(g D, D)}`` with the induced families.

    The direct reading puts ``epsPrime = etaC^-1`` and needs every ``etaC``
    invertible.  When that fails the H/K-swapped reading is tried, which
    needs ``chiD`` and ``etaD`` invertible instead.  The orientation that
    validated is recorded on the result.
    """
    report = validate_functional_data(fd)
    if not report.ok:
        first = report.errors()[0]
        raise FunctionalDataError(f"invalid functional data at {first.location}: {first.message}",
                                  {"input": report})
    reports = {}
    direct = _direct_orientation(fd)
    reports["direct"] = _orientation_report(
        direct, {(C, fd.f[C]): fd.etaC[C] for C in fd.H.objects}, fd.H, "H1")
    if reports["direct"].ok:
        return direct
    swapped = _swapped_orientation(fd)
    reports["swapped"] = _orientation_report(
        swapped, {(D, fd.g[D]): fd.etaD[D] for D in fd.K.objects}, fd.K, "H1")
    if reports["swapped"].ok:
        return swapped
    summary = "; ".join(f"{k}: {rep.errors()[0].code} at {rep.errors()[0].location}"
                        for k, rep in reports.items())
    raise FunctionalDataError(f"neither orientation satisfies the hypotheses ({summary})", reports)


def _xi_lifts(fd: FunctionalData, s: str) -> list[str]:
    """K-arrows t: f(C) -> f(C') with J(t) . xi_C = xi_C' . I(s)."""
    H, K, U = fd.H, fd.K, fd.U
    c, c2 = H.src(s), H.tgt(s)
    right = U.compose(fd.xiC[c2], fd.I.amap[s])
    return [t for t in K.hom(fd.f[c], fd.f[c2]) if U.compose(fd.J.amap[t], fd.xiC[c]) == right]


def _chi_lifts(fd: FunctionalData, t: str) -> list[str]:
    """H-arrows r: g(D) -> g(D') with I(r) . chi_D = chi_D' . J(t)."""
    H, K, U = fd.H, fd.K, fd.U
    d, d2 = K.src(t), K.tgt(t)
    right = U.compose(fd.chiD[d2], fd.J.amap[t])
    return [r for r in H.hom(fd.g[d], fd.g[d2]) if U.compose(fd.I.amap[r], fd.chiD[d]) == right]


def check_lift_uniqueness(fd: FunctionalData) -> ValidationReport:
    r = ValidationReport()
    for s in sorted(fd.H.arrow_names):
        n = len(_xi_lifts(fd, s))
        if n > 1:
            r.error("LIFT_H", [s], f"{s} has {n} lifts through xi")
    for t in sorted(fd.K.arrow_names):
        n = len(_chi_lifts(fd, t))
        if n > 1:
            r.error("LIFT_K", [t], f"{t} has {n} lifts through chi")
    return r


def subcategory(C: FinCategory, keep: set[str], name: str) -> FinCategory:
    arrows = tuple(a for a in C.arrows if a[0] in keep)
    comp = {(g, f): h for (g, f), h in C.comp.items() if g in keep and f in keep}
    sub = FinCategory(C.objects, arrows, C.identity, comp, name)
    report = validate_category(sub)
    if not report.ok:
        raise engine.InternalConsistencyError(f"{name} is not closed: {report.errors()[0].message}",
                                              report.errors()[0].witness)
    return sub


def _h_lift(fd, s):
    lifts = _xi_lifts(fd, s)
    return lifts[0] if len(lifts) == 1 else None


def _k_lift(fd, t):
    lifts = _chi_lifts(fd, t)
    return lifts[0] if len(lifts) == 1 else None


def build_h_tilde(fd: FunctionalData, mirrored: bool = False) -> FinCategory:
    """H-arrows with a unique lift through ``xi``.

    ``mirrored`` additionally asks the lift to have a unique lift through
    ``chi``; that is the shape St takes in the swapped orientation.
    """
    keep = set()
    for s in fd.H.arrow_names:
        t = _h_lift(fd, s)
        if t is not None and (not mirrored or _k_lift(fd, t) is not None):
            keep.add(s)
    return subcategory(fd.H, keep, "H~" + ("'" if mirrored else ""))


def build_k_tilde(fd: FunctionalData, mirrored: bool = False) -> FinCategory:
    """K-arrows ``t`` with a unique lift ``r_t`` through ``chi`` whose own ``xi``-lift exists.

    ``mirrored`` drops the second condition (the shape of Rt in the swapped orientation).
    """
    keep = set()
    for t in fd.K.arrow_names:
        r = _k_lift(fd, t)
        if r is not None and (mirrored or _h_lift(fd, r) is not None):
            keep.add(t)
    return subcategory(fd.K, keep, "K~" + ("'" if mirrored else ""))


def _projection(cat: FinCategory, target: FinCategory, entries, index: int,
                prov: Mapping[str, tuple[str, ...]], comp_index: int, name: str) -> FinFunctor:
    by_name = {fmt_entry(x): x for x in entries}
    return FinFunctor(cat, target, {o: by_name[o][index] for o in cat.objects},
                      {a: prov[a][comp_index] for a in cat.arrow_names}, name)


def simplification_equivalence(fd: FunctionalData, bundle: AdjunctionBundle) -> ValidationReport:
    """Check ``Rt ~ H~`` and ``St ~ K~`` by projecting onto one component.

    In the swapped orientation the roles are exchanged: Rt projects to the
    mirrored K~ and St to the mirrored H~.
    """
    data = bundle.data
    r = ValidationReport()
    if data.orientation == "swapped":
        r_target, s_target = build_k_tilde(fd, mirrored=True), build_h_tilde(fd, mirrored=True)
    else:
        r_target, s_target = build_h_tilde(fd), build_k_tilde(fd)
    P = _projection(bundle.Rt, r_target, data.R, 0, bundle.provenanceR, 0, "pr_Rt")
    Q = _projection(bundle.St, s_target, data.S, 1, bundle.provenanceS, 1, "pr_St")
    for label, F in (("Rt", P), ("St", Q)):
        sub = is_equivalence(F)
        for f in sub.findings:
            r.add(f.severity, f.code, f.witness, f"{label} -> {F.cod.name}: {f.message}")
        if sub.ok:
            kind = "isomorphism" if is_isomorphism_of_categories(F) else "equivalence"
            r.info("SIMPLIFIED", [label], f"{label} -> {F.cod.name} is an {kind} "
                   f"({len(F.cod.arrows)} arrows)")
    return r


# completeness encodings

def _require_counit_iso(adj: Adjunction) -> None:
    for a in adj.A.objects:
        if inverse(adj.A, adj.counit[a]) is None:
            raise EncodingError(f"counit at {a} is not an isomorphism; dualize the adjunction first", a)


def recipe1_functional_data(adj: Adjunction) -> FunctionalData:
    """U := B, I := Rf, J := 1, xi := identities, chi := unit."""
    _require_counit_iso(adj)
    A, B, L, Rf = adj.A, adj.B, adj.L, adj.Rf
    return FunctionalData(
        A, B, B, Rf, identity_functor(B), dict(Rf.omap), dict(L.omap),
        {a: B.identity[Rf.omap[a]] for a in A.objects},
        {b: adj.unit[b] for b in B.objects},
        {a: inverse(A, adj.counit[a]) for a in A.objects},
        {b: adj.unit[b] for b in B.objects},
        f"recipe1({adj.name})",
    )


def recipe2_functional_data(adj: Adjunction) -> FunctionalData:
    """U := A, I := 1, J := L, xi := inverse counit, chi := identities."""
    _require_counit_iso(adj)
    A, B, L, Rf = adj.A, adj.B, adj.L, adj.Rf
    counit_inv = {a: inverse(A, adj.counit[a]) for a in A.objects}
    return FunctionalData(
        A, B, A, identity_functor(A), L, dict(Rf.omap), dict(L.omap),
        counit_inv,
        {b: A.identity[L.omap[b]] for b in B.objects},
        dict(counit_inv),
        {b: adj.unit[b] for b in B.objects},
        f"recipe2({adj.name})",
    )


def encode_reflection(adj: Adjunction) -> ReflectionData:
    data = functional_to_relational(recipe1_functional_data(adj))
    assert data.orientation == "direct"
    return data


def encode_reflection_alt(adj: Adjunction) -> ReflectionData:
    data = functional_to_relational(recipe2_functional_data(adj))
    assert data.orientation == "direct"
    return data


def encode_coreflection(adj: Adjunction) -> DualFunctionalData:
    """A unit-iso adjunction as reversed-family data: dualize, encode, read back."""
    return dual_functional_from(encode_reflection(dualize_adjunction(adj)))


@dataclass
class RoundTrip:
    report: ValidationReport
    bundle: Optional[AdjunctionBundle] = None
    classification: Optional[str] = None
    dualized: bool = False
    projections: dict[str, FinFunctor] = field(default_factory=dict)


def roundtrip(adj: Adjunction, recipe: int = 1) -> RoundTrip:
    """Encode ``adj``, rebuild it with the engine and compare the result to ``adj``.

    Rt projects to A by the first coordinate and St to B by the second; both
    projections must be isomorphisms under which ``Wt``, ``Zt``, unit and
    counit coincide with ``L``, ``Rf``, unit and counit.  A unit-iso
    adjunction that is not counit-iso is dualized first.
    """
    r = validate_adjunction(adj)
    if not r.ok:
        return RoundTrip(r)
    dualized = False
    if any(inverse(adj.A, adj.counit[a]) is None for a in adj.A.objects):
        if all(inverse(adj.B, adj.unit[b]) is not None for b in adj.B.objects):
            adj = dualize_adjunction(adj)
            dualized = True
            r.info("DUALIZED", [adj.name or "-"], "unit-iso adjunction handled through its dual")
    encode = encode_reflection if recipe == 1 else encode_reflection_alt
    try:
        data = encode(adj)
    except (EncodingError, FunctionalDataError) as exc:
        r.error("ENCODING", [getattr(exc, "witness", "") or "-"], str(exc))
        return RoundTrip(r, dualized=dualized)
    bundle, pipe = run_pipeline(data)
    r.extend(pipe)
    if bundle is None or not pipe.ok:
        return RoundTrip(r, bundle, dualized=dualized)

    PA = _projection(bundle.Rt, adj.A, data.R, 0, bundle.provenanceR, 0, "pr1")
    PB = _projection(bundle.St, adj.B, data.S, 1, bundle.provenanceS, 1, "pr2")
    for label, F in (("Rt~A", PA), ("St~B", PB)):
        if is_isomorphism_of_categories(F):
            r.info("ISO", [label], f"projection {F.name} is an isomorphism ({len(F.dom.arrows)} arrows)")
        else:
            r.error("NOT_ISO", [label], f"projection {F.name} is not an isomorphism of categories")
    if not r.ok:
        return RoundTrip(r, bundle, pipe.classification, dualized, {"Rt": PA, "St": PB})

    for o in bundle.St.objects:
        if PA.omap[bundle.Wt.omap[o]] != adj.L.omap[PB.omap[o]]:
            r.error("WT_MISMATCH", [o], "Wt and L disagree on objects")
    for a in bundle.St.arrow_names:
        if PA.amap[bundle.Wt.amap[a]] != adj.L.amap[PB.amap[a]]:
            r.error("WT_MISMATCH", [a], f"Wt({a}) projects to {PA.amap[bundle.Wt.amap[a]]}, "
                    f"L gives {adj.L.amap[PB.amap[a]]}")
    for o in bundle.Rt.objects:
        if PB.omap[bundle.Zt.omap[o]] != adj.Rf.omap[PA.omap[o]]:
            r.error("ZT_MISMATCH", [o], "Zt and Rf disagree on objects")
    for a in bundle.Rt.arrow_names:
        if PB.amap[bundle.Zt.amap[a]] != adj.Rf.amap[PA.amap[a]]:
            r.error("ZT_MISMATCH", [a], f"Zt({a}) projects to {PB.amap[bundle.Zt.amap[a]]}, "
                    f"Rf gives {adj.Rf.amap[PA.amap[a]]}")
    for o, c in bundle.unit.component.items():
        if PB.amap[c] != adj.unit[PB.omap[o]]:
            r.error("UNIT_MISMATCH", [o], f"unit component projects to {PB.amap[c]}, "
                    f"expected {adj.unit[PB.omap[o]]}")
    for o, c in bundle.counit.component.items():
        if PA.amap[c] != adj.counit[PA.omap[o]]:
            r.error("COUNIT_MISMATCH", [o], f"counit component projects to {PA.amap[c]}, "
                    f"expected {adj.counit[PA.omap[o]]}")
    return RoundTrip(r, bundle, pipe.classification, dualized, {"Rt": PA, "St": PB})


def completeness_roundtrip(adj: Adjunction, recipe: int = 1) -> ValidationReport:
    return roundtrip(adj, recipe).report
