"""Construction of a reflection from a pair of functors into a bridge category.

Given categories ``H``, ``K``, ``U``, functors ``I: H -> U`` and ``J: K -> U``,
relations ``R, S`` on ``Ob(H) x Ob(K)``, maps ``Z: R -> S`` and ``W: S -> R``
and the arrow families ``xi``, ``chi``, ``eps`` and ``eta``, this module
checks the four hypotheses, builds the categories ``Rt`` and ``St`` together
with ``Zt: Rt -> St`` and ``Wt: St -> Rt``, and machine-checks that
``Wt -| Zt`` with an invertible counit.

Every commuting square is read covariantly: an ``Rt`` arrow
``(u, v): (C, D) -> (C', D')`` satisfies ``J(v) . xi(C,D) = xi(C',D') . I(u)``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .fincat import (
    CategoryError,
    FinCategory,
    FinFunctor,
    NatTransform,
    ValidationReport,
    compose_functors,
    identity_functor,
    inverse,
    validate_category,
    validate_functor,
    validate_nat_transform,
)

log = logging.getLogger(__name__)

Entry = tuple[str, str]

ORIENTATION_NOTE = ("squares read covariantly: J(v) . xi = xi' . I(u); "
                    "the H2 diagonal is J(etaPrime)")


def fmt_entry(x: Entry) -> str:
    return f"({x[0]},{x[1]})"


def fmt_tuple(*parts: str) -> str:
    return "(" + ",".join(parts) + ")"


class StructuralError(Exception):
    """The data set is not well typed; hypotheses were not evaluated."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(report.lines()[:5]))


class InternalConsistencyError(Exception):
    """A construction step failed although its preconditions held."""

    def __init__(self, message: str, witness: Sequence[str] = ()):
        self.witness = tuple(witness)
        super().__init__(message)


class NoSolution(CategoryError):
    def __init__(self, message: str, candidates: Sequence[str] = ()):
        self.candidates = tuple(candidates)
        super().__init__(message)


class Ambiguous(CategoryError):
    def __init__(self, message: str, candidates: Sequence[str] = ()):
        self.candidates = tuple(candidates)
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class ReflectionData:
    H: FinCategory
    K: FinCategory
    U: FinCategory
    I: FinFunctor
    J: FinFunctor
    R: tuple[Entry, ...]
    S: tuple[Entry, ...]
    Z: Mapping[Entry, Entry]
    W: Mapping[Entry, Entry]
    xi: Mapping[Entry, str]
    chi: Mapping[Entry, str]
    eps: Mapping[Entry, str]
    eta: Mapping[Entry, str]
    name: str = ""
    orientation: str = ""

    def __post_init__(self):
        object.__setattr__(self, "R", tuple(tuple(x) for x in self.R))
        object.__setattr__(self, "S", tuple(tuple(x) for x in self.S))
        for attr in ("Z", "W", "xi", "chi", "eps", "eta"):
            object.__setattr__(self, attr, dict(getattr(self, attr)))


def identity_data(C: FinCategory, name: str = "") -> ReflectionData:
    """H = K = U = C, I = J = 1, diagonal relations and identity families."""
    one = identity_functor(C)
    diag = tuple((x, x) for x in C.objects)
    ids = {(x, x): C.identity[x] for x in C.objects}
    return ReflectionData(C, C, C, one, one, diag, diag,
                          {e: e for e in diag}, {e: e for e in diag},
                          ids, ids, ids, ids, name or f"identity({C.name})")


def check_typing(data: ReflectionData) -> ValidationReport:
    r = ValidationReport()
    H, K, U, I, J = data.H, data.K, data.U, data.I, data.J
    for label, C in (("H", H), ("K", K), ("U", U)):
        sub = validate_category(C)
        for f in sub.errors():
            r.error("TYPING", f.witness, f"{label}: {f.code} {f.message}")
    if not r.ok:
        return r
    if I.dom != H or I.cod != U:
        r.error("TYPING", ["I"], "I is not a functor H -> U")
    if J.dom != K or J.cod != U:
        r.error("TYPING", ["J"], "J is not a functor K -> U")
    for label, F in (("I", I), ("J", J)):
        for f in validate_functor(F).errors():
            r.error("TYPING", f.witness, f"{label}: {f.code} {f.message}")
    if not r.ok:
        return r

    for label, rel in (("R", data.R), ("S", data.S)):
        if len(set(rel)) != len(rel):
            r.error("TYPING", [label], f"relation {label} has repeated entries")
        for c, d in rel:
            if not H.has_object(c) or not K.has_object(d):
                r.error("TYPING", [fmt_entry((c, d))], f"entry of {label} is not in Ob(H) x Ob(K)")
    if not r.ok:
        return r
    Rset, Sset = set(data.R), set(data.S)

    for x in data.R:
        z = data.Z.get(x)
        if z is None or z not in Sset:
            r.error("TYPING", [fmt_entry(x)], f"Z is not defined at {fmt_entry(x)} or leaves S")
        elif z[1] != x[1]:
            r.error("TYPING", [fmt_entry(x)], f"Z moves the second component: {fmt_entry(x)} -> {fmt_entry(z)}")
    for y in data.S:
        w = data.W.get(y)
        if w is None or w not in Rset:
            r.error("TYPING", [fmt_entry(y)], f"W is not defined at {fmt_entry(y)} or leaves R")
        elif w[0] != y[0]:
            r.error("TYPING", [fmt_entry(y)], f"W moves the first component: {fmt_entry(y)} -> {fmt_entry(w)}")
    if not r.ok:
        return r

    def typed(C: FinCategory, a: Optional[str], s: str, t: str) -> bool:
        return a is not None and C.has_arrow(a) and C.src(a) == s and C.tgt(a) == t

    for x in data.R:
        c, d = x
        if not typed(U, data.xi.get(x), I.omap[c], J.omap[d]):
            r.error("TYPING", [fmt_entry(x)], f"xi at {fmt_entry(x)} is not an arrow I({c}) -> J({d})")
        cz = data.Z[x][0]
        if not typed(H, data.eps.get(x), cz, c):
            r.error("TYPING", [fmt_entry(x)], f"epsPrime at {fmt_entry(x)} is not an arrow {cz} -> {c}")
    for y in data.S:
        c, d = y
        if not typed(U, data.chi.get(y), J.omap[d], I.omap[c]):
            r.error("TYPING", [fmt_entry(y)], f"chi at {fmt_entry(y)} is not an arrow J({d}) -> I({c})")
        dw = data.W[y][1]
        if not typed(K, data.eta.get(y), d, dw):
            r.error("TYPING", [fmt_entry(y)], f"etaPrime at {fmt_entry(y)} is not an arrow {d} -> {dw}")
    return r


class HypothesisReport(ValidationReport):
    note: str = ORIENTATION_NOTE

    def passed(self, hyp: str) -> bool:
        return not self.errors(hyp)

    @property
    def summary(self) -> dict[str, bool]:
        return {h: self.passed(h) for h in ("H1", "H2", "H3", "H4")}


def check_hypotheses(data: ReflectionData) -> HypothesisReport:
    typing = check_typing(data)
    if not typing.ok:
        raise StructuralError(typing)
    H, K, U, I, J = data.H, data.K, data.U, data.I, data.J
    r = HypothesisReport()

    for x in data.R:
        e = data.eps[x]
        e_inv = inverse(H, e)
        if e_inv is None:
            r.error("H1", [fmt_entry(x)], f"epsPrime {e} is not an isomorphism")
            continue
        lhs = U.compose(data.chi[data.Z[x]], data.xi[x])
        rhs = I.amap[e_inv]
        if lhs != rhs:
            r.error("H1", [fmt_entry(x)],
                    f"chi_Z . xi = {data.chi[data.Z[x]]} . {data.xi[x]} = {lhs} "
                    f"but I(epsPrime^-1) = I({e_inv}) = {rhs}")
    for y in data.S:
        lhs = U.compose(data.xi[data.W[y]], data.chi[y])
        rhs = J.amap[data.eta[y]]
        if lhs != rhs:
            r.error("H2", [fmt_entry(y)],
                    f"xi_W . chi = {data.xi[data.W[y]]} . {data.chi[y]} = {lhs} "
                    f"but J(etaPrime) = J({data.eta[y]}) = {rhs}")
    for x in data.R:
        if inverse(U, data.xi[x]) is None:
            r.error("H3", [fmt_entry(x)], "xi is not an isomorphism")
    for x in data.R:
        z = data.Z[x]
        if inverse(K, data.eta[z]) is None:
            r.error("H4", [fmt_entry(x)], f"etaPrime at Z{fmt_entry(x)} = {fmt_entry(z)} is not an isomorphism")
    return r


def _inv(C: FinCategory, f: str) -> str:
    g = inverse(C, f)
    if g is None:
        raise InternalConsistencyError(f"{f} was expected to be invertible", [f])
    return g


def _close(cat_objects: list[str], arrows: list[tuple[str, str, str]],
           identity: dict[str, str], components: dict[str, tuple[str, ...]],
           cats: Sequence[FinCategory], label: str) -> FinCategory:
    """Assemble a category whose arrows compose componentwise."""
    by_components = {c: a for a, c in components.items()}
    outgoing: dict[str, list[str]] = {}
    for a, s, _ in arrows:
        outgoing.setdefault(s, []).append(a)
    comp: dict[tuple[str, str], str] = {}
    for f, _, t in arrows:
        for g in outgoing.get(t, ()):
            parts = tuple(C.compose(pg, pf) for C, pg, pf in zip(cats, components[g], components[f]))
            h = by_components.get(parts)
            if h is None:
                raise InternalConsistencyError(
                    f"{label} is not closed under composition: {g} . {f} = {fmt_tuple(*parts)} "
                    f"fails the defining squares", [g, f])
            comp[(g, f)] = h
    C = FinCategory(tuple(cat_objects), tuple(arrows), identity, comp, label)
    report = validate_category(C)
    if not report.ok:
        first = report.errors()[0]
        raise InternalConsistencyError(f"{label} is not a category: {first.message}", first.witness)
    return C


def build_r_tilde(data: ReflectionData) -> tuple[FinCategory, dict[str, tuple[str, str, str]]]:
    """Objects are the entries of R; arrows are the pairs (u, v) whose square commutes.

    The provenance maps each arrow name to ``(u, v, z)`` where ``z`` is ``u``
    conjugated by the ``eps`` isomorphisms.
    """
    H, K, U, I, J = data.H, data.K, data.U, data.I, data.J
    objects = [fmt_entry(x) for x in data.R]
    arrows: list[tuple[str, str, str]] = []
    components: dict[str, tuple[str, str]] = {}
    prov: dict[str, tuple[str, str, str]] = {}
    identity: dict[str, str] = {}
    for x in data.R:
        for x2 in data.R:
            xi, xi2 = data.xi[x], data.xi[x2]
            for u in H.hom(x[0], x2[0]):
                Iu = I.amap[u]
                right = U.compose(xi2, Iu)
                for v in K.hom(x[1], x2[1]):
                    if U.compose(J.amap[v], xi) != right:
                        continue
                    name = fmt_tuple(u, v)
                    z = H.compose(_inv(H, data.eps[x2]), u, data.eps[x])
                    arrows.append((name, fmt_entry(x), fmt_entry(x2)))
                    components[name] = (u, v)
                    prov[name] = (u, v, z)
        identity[fmt_entry(x)] = fmt_tuple(H.identity[x[0]], K.identity[x[1]])
    for o, i in identity.items():
        if i not in components:
            raise InternalConsistencyError(f"identity pair {i} at {o} fails its square", [o])
    Rt = _close(objects, arrows, identity, components, (H, K), "Rt")
    return Rt, prov


def build_s_tilde(data: ReflectionData) -> tuple[FinCategory, dict[str, tuple[str, str, str]]]:
    """Objects are the entries of S; arrows are triples (z, v, w) making both squares commute."""
    H, K, U, I, J = data.H, data.K, data.U, data.I, data.J
    objects = [fmt_entry(y) for y in data.S]
    arrows: list[tuple[str, str, str]] = []
    prov: dict[str, tuple[str, str, str]] = {}
    identity: dict[str, str] = {}
    for y in data.S:
        wy = data.W[y]
        for y2 in data.S:
            wy2 = data.W[y2]
            chi, chi2 = data.chi[y], data.chi[y2]
            xiw, xiw2 = data.xi[wy], data.xi[wy2]
            for z in H.hom(y[0], y2[0]):
                Iz = I.amap[z]
                top = U.compose(Iz, chi)
                bottom_right = U.compose(xiw2, Iz)
                for v in K.hom(y[1], y2[1]):
                    if U.compose(chi2, J.amap[v]) != top:
                        continue
                    for w in K.hom(wy[1], wy2[1]):
                        if U.compose(J.amap[w], xiw) != bottom_right:
                            continue
                        name = fmt_tuple(z, v, w)
                        arrows.append((name, fmt_entry(y), fmt_entry(y2)))
                        prov[name] = (z, v, w)
        identity[fmt_entry(y)] = fmt_tuple(H.identity[y[0]], K.identity[y[1]], K.identity[wy[1]])
    for o, i in identity.items():
        if i not in prov:
            raise InternalConsistencyError(f"identity triple {i} at {o} fails its squares", [o])
    St = _close(objects, arrows, identity, prov, (H, K, K), "St")
    return St, prov


SLOT = None


def solve_unique_arrow(C: FinCategory, lhs: Sequence[Optional[str]], rhs: Sequence[Optional[str]],
                       hom: Optional[tuple[str, str]] = None) -> str:
    """Find the unique arrow ``x`` making ``lhs == rhs`` when put in the ``SLOT`` positions.

    Frames are composition chains read right to left, as in
    :meth:`FinCategory.compose`.  ``hom`` optionally restricts the slot's type.
    """
    candidates = C.hom(*hom) if hom else tuple(sorted(C.arrow_names))
    solutions: list[str] = []
    for a in candidates:
        try:
            left = C.compose(*[a if p is SLOT else p for p in lhs])
            right = C.compose(*[a if p is SLOT else p for p in rhs])
        except CategoryError:
            continue
        if left == right:
            solutions.append(a)
    if not solutions:
        raise NoSolution("no arrow satisfies the equation", candidates)
    if len(solutions) > 1:
        raise Ambiguous(f"{len(solutions)} arrows satisfy the equation", solutions)
    return solutions[0]


def build_z_tilde(data: ReflectionData, Rt: FinCategory, St: FinCategory,
                  provR: Mapping[str, tuple[str, str, str]], oracle: bool = False) -> FinFunctor:
    K = data.K
    by_entry = {fmt_entry(x): x for x in data.R}
    omap = {fmt_entry(x): fmt_entry(data.Z[x]) for x in data.R}
    amap: dict[str, str] = {}
    for a, s, t in Rt.arrows:
        u, v, z = provR[a]
        zx, zx2 = data.Z[by_entry[s]], data.Z[by_entry[t]]
        w = K.compose(data.eta[zx2], v, _inv(K, data.eta[zx]))
        if oracle:
            scanned = solve_unique_arrow(K, (SLOT, data.eta[zx]), (data.eta[zx2], v),
                                         hom=(K.tgt(data.eta[zx]), K.tgt(data.eta[zx2])))
            if scanned != w:
                raise InternalConsistencyError(f"closed-form w={w} disagrees with scan {scanned}", [a])
        name = fmt_tuple(z, v, w)
        if not St.has_arrow(name) or St.src(name) != omap[s] or St.tgt(name) != omap[t]:
            raise InternalConsistencyError(f"Zt({a}) = {name} is not an arrow of St", [a, name])
        amap[a] = name
    return FinFunctor(Rt, St, omap, amap, "Zt")


def build_w_tilde(data: ReflectionData, Rt: FinCategory, St: FinCategory,
                  provS: Mapping[str, tuple[str, str, str]]) -> FinFunctor:
    omap = {fmt_entry(y): fmt_entry(data.W[y]) for y in data.S}
    amap: dict[str, str] = {}
    for a, s, t in St.arrows:
        z, _, w = provS[a]
        name = fmt_tuple(z, w)
        if not Rt.has_arrow(name) or Rt.src(name) != omap[s] or Rt.tgt(name) != omap[t]:
            raise InternalConsistencyError(f"Wt({a}) = {name} is not an arrow of Rt", [a, name])
        amap[a] = name
    return FinFunctor(St, Rt, omap, amap, "Wt")


@dataclass(eq=False)
class AdjunctionBundle:
    data: ReflectionData
    Rt: FinCategory
    St: FinCategory
    Zt: FinFunctor
    Wt: FinFunctor
    unit: NatTransform
    counit: NatTransform
    provenanceR: dict[str, tuple[str, str, str]] = field(default_factory=dict)
    provenanceS: dict[str, tuple[str, str, str]] = field(default_factory=dict)


def build_counit(data: ReflectionData, Rt: FinCategory, provR: Mapping[str, tuple[str, str, str]],
                 Zt: FinFunctor, Wt: FinFunctor) -> NatTransform:
    K = data.K
    comp: dict[str, str] = {}
    for x in data.R:
        zx = data.Z[x]
        name = fmt_tuple(data.eps[x], _inv(K, data.eta[zx]))
        o = fmt_entry(x)
        if not Rt.has_arrow(name):
            raise InternalConsistencyError(f"counit component {name} at {o} is not an arrow of Rt", [o])
        expected_z = data.eps[data.W[zx]]
        if provR[name][2] != expected_z:
            raise InternalConsistencyError(
                f"counit at {o} has z-component {provR[name][2]}, expected {expected_z}", [o])
        comp[o] = name
    counit = NatTransform(compose_functors(Wt, Zt, "WtZt"), identity_functor(Rt, "1_Rt"), comp, "counit")
    report = validate_nat_transform(counit)
    if not report.ok:
        raise InternalConsistencyError("counit is not natural: " + report.errors()[0].message,
                                       report.errors()[0].witness)
    return counit


def build_unit(data: ReflectionData, St: FinCategory, Zt: FinFunctor, Wt: FinFunctor) -> NatTransform:
    H = data.H
    comp: dict[str, str] = {}
    for y in data.S:
        wy = data.W[y]
        name = fmt_tuple(_inv(H, data.eps[wy]), data.eta[y], data.eta[data.Z[wy]])
        o = fmt_entry(y)
        if not St.has_arrow(name):
            raise InternalConsistencyError(f"unit component {name} at {o} is not an arrow of St", [o])
        comp[o] = name
    unit = NatTransform(identity_functor(St, "1_St"), compose_functors(Zt, Wt, "ZtWt"), comp, "unit")
    report = validate_nat_transform(unit)
    if not report.ok:
        raise InternalConsistencyError("unit is not natural: " + report.errors()[0].message,
                                       report.errors()[0].witness)
    return unit


def build_bundle(data: ReflectionData, oracle: bool = False) -> AdjunctionBundle:
    """Run every construction step; assumes the hypotheses were checked."""
    Rt, provR = build_r_tilde(data)
    St, provS = build_s_tilde(data)
    Zt = build_z_tilde(data, Rt, St, provR, oracle=oracle)
    Wt = build_w_tilde(data, Rt, St, provS)
    for F in (Zt, Wt):
        report = validate_functor(F)
        if not report.ok:
            raise InternalConsistencyError(f"{F.name} is not a functor: {report.errors()[0].message}",
                                           report.errors()[0].witness)
    counit = build_counit(data, Rt, provR, Zt, Wt)
    unit = build_unit(data, St, Zt, Wt)
    return AdjunctionBundle(data, Rt, St, Zt, Wt, unit, counit, provR, provS)


def verify_adjunction(bundle: AdjunctionBundle) -> ValidationReport:
    r = ValidationReport()
    for t in (bundle.unit, bundle.counit):
        for f in validate_nat_transform(t).findings:
            r.add(f.severity, f.code, f.witness, f"{t.name}: {f.message}")
    # triangles still make sense when only naturality failed, and they name objects
    if r.errors("NAT_COMPONENT") or r.errors("NAT_PARALLEL"):
        return r
    Rt, St, Zt, Wt = bundle.Rt, bundle.St, bundle.Zt, bundle.Wt
    unit, counit = bundle.unit, bundle.counit
    for x in Rt.objects:
        got = St.comp.get((Zt.amap[counit[x]], unit[Zt.omap[x]]))
        want = St.identity[Zt.omap[x]]
        if got != want:
            r.error("TRIANGLE1", [x], f"Zt(counit) . unit_Zt = {Zt.amap[counit[x]]} . "
                    f"{unit[Zt.omap[x]]} = {got}, expected {want}")
    for y in St.objects:
        got = Rt.comp.get((counit[Wt.omap[y]], Wt.amap[unit[y]]))
        want = Rt.identity[Wt.omap[y]]
        if got != want:
            r.error("TRIANGLE2", [y], f"counit_Wt . Wt(unit) = {counit[Wt.omap[y]]} . "
                    f"{Wt.amap[unit[y]]} = {got}, expected {want}")
    return r


class ClassificationReport(ValidationReport):
    classification: str = "neither"
    counit_iso: dict[str, bool]
    unit_iso: dict[str, bool]


def classify_transforms(unit: NatTransform, counit: NatTransform) -> ClassificationReport:
    r = ClassificationReport()
    B, A = unit.source.cod, counit.source.cod
    r.counit_iso = {x: inverse(A, a) is not None for x, a in counit.component.items()}
    r.unit_iso = {y: inverse(B, a) is not None for y, a in unit.component.items()}
    for x, ok in r.counit_iso.items():
        r.info("COUNIT_ISO" if ok else "COUNIT_NONISO", [x], f"counit component {counit[x]}")
    for y, ok in r.unit_iso.items():
        r.info("UNIT_ISO" if ok else "UNIT_NONISO", [y], f"unit component {unit[y]}")
    c, u = all(r.counit_iso.values()), all(r.unit_iso.values())
    r.classification = ("equivalence" if c and u else "reflection" if c
                        else "coreflection" if u else "neither")
    return r


def classify_reflection(bundle: AdjunctionBundle) -> ClassificationReport:
    return classify_transforms(bundle.unit, bundle.counit)


class PipelineReport(ValidationReport):
    stage: str = "typing"
    classification: Optional[str] = None
    counts: dict[str, tuple[int, int]]

    def summary_lines(self) -> list[str]:
        out = [f"COUNT {k} {n} objects {m} arrows" for k, (n, m) in sorted(self.counts.items())]
        out.append(f"RESULT {self.classification if self.ok and self.classification else 'fail'}")
        return out


def run_pipeline(data: ReflectionData, oracle: bool = False
                 ) -> tuple[Optional[AdjunctionBundle], PipelineReport]:
    """typing -> hypotheses -> builds -> verification -> classification.

    Stops at the first failing stage.  Structural and internal-consistency
    errors propagate as exceptions.
    """
    report = PipelineReport()
    report.counts = {}
    hyp = check_hypotheses(data)
    report.extend(hyp)
    report.stage = "hypotheses"
    if not hyp.ok:
        return None, report
    report.stage = "build"
    bundle = build_bundle(data, oracle=oracle)
    report.counts = {"Rt": (len(bundle.Rt.objects), len(bundle.Rt.arrows)),
                     "St": (len(bundle.St.objects), len(bundle.St.arrows))}
    report.stage = "verify"
    ver = verify_adjunction(bundle)
    report.extend(ver)
    if not ver.ok:
        return bundle, report
    report.stage = "classify"
    cls = classify_reflection(bundle)
    report.extend(cls)
    report.classification = cls.classification
    log.debug("pipeline %s: %s", data.name, cls.classification)
    return bundle, report
