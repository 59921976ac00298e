"""Name resolution and structural typing from a parsed document to engine values.

Findings carry the offending name as their location and the source
position at the start of the message.  Identities are synthesized as
``id_x`` when not declared, and a missing composite is filled in when the
category has exactly one arrow with the right endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..engine import Entry, ReflectionData, fmt_entry
from ..fincat import FinCategory, FinFunctor, ValidationReport, make_category
from ..transforms import Adjunction, FunctionalData, make_adjunction
from .parser import (
    AdjunctionDecl,
    CategoryDecl,
    FamilyDecl,
    FunctorDecl,
    InstanceDecl,
    Key,
    MapDecl,
    Pos,
    RelationDecl,
    SpecDocument,
)

# role names: the first spelling is canonical
RELATIONAL_FAMILIES = {"xi": ("xi",), "chi": ("chi",), "eps": ("epsPrime", "eps"),
                       "eta": ("etaPrime", "eta")}
FUNCTIONAL_FAMILIES = {"xiC": ("xi", "xiC"), "chiD": ("chi", "chiD"), "etaC": ("etaC",),
                       "etaD": ("etaD",)}


class LoweringError(Exception):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(report.lines()[:5]))


@dataclass
class Lowered:
    kind: str  # reflection, functional, adjunction, instance or categories
    value: Union[ReflectionData, FunctionalData, Adjunction, tuple[str, ...], None]
    categories: dict[str, FinCategory] = field(default_factory=dict)
    functors: dict[str, FinFunctor] = field(default_factory=dict)
    relations: dict[str, tuple[Entry, ...]] = field(default_factory=dict)
    maps: dict[str, dict] = field(default_factory=dict)
    families: dict[str, dict] = field(default_factory=dict)
    report: ValidationReport = field(default_factory=ValidationReport)


def _fmt_key(k: Key) -> str:
    return fmt_entry(k) if isinstance(k, tuple) else k


class _Lowerer:
    def __init__(self, max_arrows: Optional[int]):
        self.r = ValidationReport()
        self.max_arrows = max_arrows
        self.out = Lowered("categories", None)
        self.families_on: dict[str, str] = {}
        self.seen: dict[str, set[str]] = {}

    def err(self, code: str, witness, pos: Pos, message: str) -> None:
        w = [witness] if isinstance(witness, str) else list(witness)
        self.r.error(code, w, f"{pos}: {message}")

    def unique(self, table: dict, name: str, kind: str, pos: Pos) -> bool:
        seen = self.seen.setdefault(kind, set())
        if name in table or name in seen:
            self.err("DUPLICATE", name, pos, f"{kind} {name} is declared twice")
            return False
        seen.add(name)
        return True

    # categories

    def category(self, d: CategoryDecl) -> None:
        if not self.unique(self.out.categories, d.name, "category", d.pos):
            return
        ok = True
        objects: list[str] = []
        for x in d.objects:
            if x in objects:
                self.err("DUPLICATE", x, d.pos, f"object {x} is declared twice in {d.name}")
                ok = False
            objects.append(x)
        obj_set = set(objects)
        typing: dict[str, tuple[str, str]] = {}
        identity: dict[str, str] = {}
        for i in d.identities:
            if i.obj not in obj_set:
                self.err("UNRESOLVED", i.obj, i.pos, f"identity for unknown object {i.obj} in {d.name}")
                ok = False
            elif i.obj in identity or i.arrow in typing:
                self.err("DUPLICATE", i.arrow, i.pos, f"identity {i.arrow} is declared twice in {d.name}")
                ok = False
            else:
                identity[i.obj] = i.arrow
                typing[i.arrow] = (i.obj, i.obj)
        for x in objects:
            if x not in identity:
                identity[x] = f"id_{x}"
                typing.setdefault(f"id_{x}", (x, x))
        ids = set(identity.values())
        declared: list[str] = []
        for a in d.arrows:
            for end in (a.src, a.tgt):
                if end not in obj_set:
                    self.err("UNRESOLVED", end, a.pos, f"arrow {a.name} uses unknown object {end}")
                    ok = False
            if a.name in ids:
                if typing.get(a.name) != (a.src, a.tgt):
                    self.err("TYPE_MISMATCH", a.name, a.pos,
                             f"identity {a.name} must be an endo-arrow of its object")
                    ok = False
                continue
            if a.name in typing:
                self.err("DUPLICATE", a.name, a.pos, f"arrow {a.name} is declared twice in {d.name}")
                ok = False
                continue
            typing[a.name] = (a.src, a.tgt)
            declared.append(a.name)
        if not ok:
            return
        comp: dict[tuple[str, str], str] = {}
        for c in d.composes:
            bad = [n for n in (c.g, c.f, c.result) if n not in typing]
            if bad:
                self.err("UNRESOLVED", bad[0], c.pos, f"compose entry uses unknown arrow {bad[0]}")
                ok = False
                continue
            (fs, ft), (gs, gt), (hs, ht) = typing[c.f], typing[c.g], typing[c.result]
            if ft != gs:
                self.err("TYPE_MISMATCH", [c.g, c.f], c.pos, f"{c.g} . {c.f} is not composable")
                ok = False
            elif (hs, ht) != (fs, gt):
                self.err("TYPE_MISMATCH", [c.g, c.f], c.pos,
                         f"{c.g} . {c.f} must be an arrow {fs} -> {gt}, {c.result} is {hs} -> {ht}")
                ok = False
            elif (c.g, c.f) in comp and comp[(c.g, c.f)] != c.result:
                self.err("DUPLICATE", [c.g, c.f], c.pos, f"two composites given for {c.g} . {c.f}")
                ok = False
            else:
                comp[(c.g, c.f)] = c.result
        if not ok:
            return
        for g in declared:
            for f in declared:
                if typing[f][1] != typing[g][0] or (g, f) in comp:
                    continue
                s, t = typing[f][0], typing[g][1]
                candidates = [a for a, st in typing.items() if st == (s, t)]
                if len(candidates) == 1:
                    comp[(g, f)] = candidates[0]
                else:
                    self.err("MISSING_COMPOSITE", [g, f], d.pos,
                             f"category {d.name} gives no composite for {g} . {f} and "
                             f"{len(candidates)} arrows {s} -> {t} exist")
                    ok = False
        if not ok:
            return
        arrows = [(identity[x], x, x) for x in objects] + [(a, *typing[a]) for a in declared]
        if self.max_arrows is not None and len(arrows) > self.max_arrows:
            self.err("BOUND", d.name, d.pos,
                     f"category {d.name} has {len(arrows)} arrows, above the bound {self.max_arrows}")
            return
        self.out.categories[d.name] = make_category(objects, arrows, comp, identity, d.name)

    def resolve_category(self, name: str, pos: Pos, what: str) -> Optional[FinCategory]:
        C = self.out.categories.get(name)
        if C is None:
            self.err("UNRESOLVED", name, pos, f"{what} refers to unknown category {name}")
        return C

    def functor(self, d: FunctorDecl) -> None:
        if not self.unique(self.out.functors, d.name, "functor", d.pos):
            return
        C = self.resolve_category(d.dom, d.pos, f"functor {d.name}")
        D = self.resolve_category(d.cod, d.pos, f"functor {d.name}")
        if C is None or D is None:
            return
        ok = True
        omap: dict[str, str] = {}
        amap: dict[str, str] = {}
        for a in d.objects:
            if not isinstance(a.key, str) or not C.has_object(a.key):
                self.err("UNRESOLVED", _fmt_key(a.key), a.pos, f"{_fmt_key(a.key)} is not an object of {d.dom}")
                ok = False
            elif not isinstance(a.value, str) or not D.has_object(a.value):
                self.err("UNRESOLVED", _fmt_key(a.value), a.pos,
                         f"{_fmt_key(a.value)} is not an object of {d.cod}")
                ok = False
            elif a.key in omap:
                self.err("DUPLICATE", a.key, a.pos, f"object {a.key} is assigned twice by {d.name}")
                ok = False
            else:
                omap[a.key] = a.value
        for a in d.arrows:
            if not isinstance(a.key, str) or not C.has_arrow(a.key):
                self.err("UNRESOLVED", _fmt_key(a.key), a.pos, f"{_fmt_key(a.key)} is not an arrow of {d.dom}")
                ok = False
            elif not isinstance(a.value, str) or not D.has_arrow(a.value):
                self.err("UNRESOLVED", _fmt_key(a.value), a.pos,
                         f"{_fmt_key(a.value)} is not an arrow of {d.cod}")
                ok = False
            elif a.key in amap:
                self.err("DUPLICATE", a.key, a.pos, f"arrow {a.key} is assigned twice by {d.name}")
                ok = False
            else:
                amap[a.key] = a.value
        missing = [x for x in C.objects if x not in omap]
        if missing:
            self.err("INCOMPLETE", missing[0], d.pos, f"functor {d.name} does not map object {missing[0]}")
            ok = False
        if not ok:
            return
        for x, i in C.identity.items():
            amap.setdefault(i, D.identity[omap[x]])
        missing = [a for a in C.arrow_names if a not in amap]
        if missing:
            self.err("INCOMPLETE", missing[0], d.pos, f"functor {d.name} does not map arrow {missing[0]}")
            return
        self.out.functors[d.name] = FinFunctor(C, D, omap, amap, d.name)

    def relation(self, d: RelationDecl) -> None:
        if self.unique(self.out.relations, d.name, "relation", d.pos):
            self.out.relations[d.name] = tuple(d.entries)

    def domain(self, name: str, pos: Pos, what: str) -> Optional[tuple[str, set]]:
        if name in self.out.relations:
            return "relation", set(self.out.relations[name])
        if name in self.out.categories:
            return "category", set(self.out.categories[name].objects)
        self.err("UNRESOLVED", name, pos, f"{what} refers to unknown relation or category {name}")
        return None

    def map_decl(self, d: MapDecl) -> None:
        if not self.unique(self.out.maps, d.name, "map", d.pos):
            return
        dom = self.domain(d.dom, d.pos, f"map {d.name}")
        cod = self.domain(d.cod, d.pos, f"map {d.name}")
        if dom is None or cod is None:
            return
        ok = True
        out = {}
        for a in d.items:
            for value, (kind, members), label in ((a.key, dom, d.dom), (a.value, cod, d.cod)):
                if isinstance(value, tuple) != (kind == "relation"):
                    self.err("TYPE_MISMATCH", _fmt_key(value), a.pos,
                             f"{_fmt_key(value)} should be {'an entry' if kind == 'relation' else 'an object'} of {label}")
                    ok = False
                elif value not in members:
                    self.err("UNRESOLVED", _fmt_key(value), a.pos, f"{_fmt_key(value)} is not in {label}")
                    ok = False
            if a.key in out:
                self.err("DUPLICATE", _fmt_key(a.key), a.pos, f"map {d.name} assigns {_fmt_key(a.key)} twice")
                ok = False
            out[a.key] = a.value
        if ok:
            self.out.maps[d.name] = out

    def family(self, d: FamilyDecl) -> None:
        if not self.unique(self.out.families, d.name, "family", d.pos):
            return
        dom = self.domain(d.on, d.pos, f"family {d.name}")
        if dom is None:
            return
        kind, members = dom
        ok = True
        out = {}
        for a in d.items:
            if isinstance(a.key, tuple) != (kind == "relation"):
                self.err("TYPE_MISMATCH", _fmt_key(a.key), a.pos,
                         f"family {d.name} on {d.on} is indexed by {'entries' if kind == 'relation' else 'objects'}")
                ok = False
            elif a.key not in members:
                self.err("UNRESOLVED", _fmt_key(a.key), a.pos, f"{_fmt_key(a.key)} is not in {d.on}")
                ok = False
            elif a.key in out:
                self.err("DUPLICATE", _fmt_key(a.key), a.pos, f"family {d.name} assigns {_fmt_key(a.key)} twice")
                ok = False
            else:
                out[a.key] = a.value
        if ok:
            self.out.families[d.name] = out
            self.families_on[d.name] = d.on

    # roles

    def role(self, table: dict, spellings: tuple[str, ...], pos: Pos, kind: str):
        found = [s for s in spellings if s in table]
        if not found:
            self.err("MISSING_ROLE", spellings[0], pos, f"document has no {kind} named {spellings[0]}")
            return None
        return table[found[0]]

    def reflection(self, pos: Pos) -> Optional[ReflectionData]:
        o = self.out
        I, J = o.functors["I"], o.functors["J"]
        if J.cod != I.cod:
            self.err("TYPE_MISMATCH", "J", pos, "I and J must have the same codomain")
            return None
        R = self.role(o.relations, ("R",), pos, "relation")
        S = self.role(o.relations, ("S",), pos, "relation")
        Z = self.role(o.maps, ("Z",), pos, "map")
        W = self.role(o.maps, ("W",), pos, "map")
        fams = {k: self.role(o.families, v, pos, "family") for k, v in RELATIONAL_FAMILIES.items()}
        if None in (R, S, Z, W) or None in fams.values():
            return None
        return ReflectionData(I.dom, J.dom, I.cod, I, J, R, S, Z, W, fams["xi"], fams["chi"],
                              fams["eps"], fams["eta"])

    def functional(self, pos: Pos) -> Optional[FunctionalData]:
        o = self.out
        I, J = o.functors["I"], o.functors["J"]
        if J.cod != I.cod:
            self.err("TYPE_MISMATCH", "J", pos, "I and J must have the same codomain")
            return None
        fams = {k: self.role(o.families, v, pos, "family") for k, v in FUNCTIONAL_FAMILIES.items()}
        if None in fams.values():
            return None
        return FunctionalData(I.dom, J.dom, I.cod, I, J, o.maps["f"], o.maps["g"], fams["xiC"],
                              fams["chiD"], fams["etaC"], fams["etaD"])

    def adjunction(self, d: AdjunctionDecl) -> Optional[Adjunction]:
        o = self.out
        L, Rf = o.functors.get(d.left), o.functors.get(d.right)
        unit, counit = o.families.get(d.unit), o.families.get(d.counit)
        for name, value, kind in ((d.left, L, "functor"), (d.right, Rf, "functor"),
                                  (d.unit, unit, "family"), (d.counit, counit, "family")):
            if value is None:
                self.err("UNRESOLVED", name, d.pos, f"adjunction {d.name} refers to unknown {kind} {name}")
        if None in (L, Rf, unit, counit):
            return None
        if L.dom != Rf.cod or L.cod != Rf.dom:
            self.err("TYPE_MISMATCH", d.left, d.pos, f"{d.left} and {d.right} do not run in opposite directions")
            return None
        for fam, C in ((d.unit, L.dom), (d.counit, L.cod)):
            if self.families_on[fam] not in o.categories or o.categories[self.families_on[fam]] != C:
                self.err("TYPE_MISMATCH", fam, d.pos, f"family {fam} must be indexed by the objects of {C.name}")
                return None
            missing = [x for x in C.objects if x not in o.families[fam]]
            if missing:
                self.err("INCOMPLETE", missing[0], d.pos, f"family {fam} has no component at {missing[0]}")
                return None
        return make_adjunction(L.cod, L.dom, L, Rf, unit, counit, d.name)

    def run(self, doc: SpecDocument) -> Lowered:
        handlers = {CategoryDecl: self.category, FunctorDecl: self.functor, RelationDecl: self.relation,
                    MapDecl: self.map_decl, FamilyDecl: self.family}
        for d in doc.decls:
            h = handlers.get(type(d))
            if h is not None:
                h(d)
        o = self.out
        instances = doc.of_type(InstanceDecl)
        adjunctions = doc.of_type(AdjunctionDecl)
        if instances:
            o.kind, o.value = "instance", tuple(d.name for d in instances)
        elif adjunctions:
            if len(adjunctions) > 1:
                self.err("DUPLICATE", adjunctions[1].name, adjunctions[1].pos, "only one adjunction per document")
            elif self.r.ok:
                o.kind, o.value = "adjunction", self.adjunction(adjunctions[0])
        elif self.r.ok and "I" in o.functors and "J" in o.functors:
            pos = next((d.pos for d in doc.decls if isinstance(d, FunctorDecl) and d.name == "J"), Pos(0, 0))
            if "R" in o.relations or "S" in o.relations:
                o.kind, o.value = "reflection", self.reflection(pos)
            elif "f" in o.maps and "g" in o.maps:
                o.kind, o.value = "functional", self.functional(pos)
            else:
                self.err("MISSING_ROLE", "R", pos, "functors I and J need relations R, S or maps f, g")
        o.report = self.r
        return o


def lower(doc: SpecDocument, max_arrows: Optional[int] = None) -> Lowered:
    """Lower ``doc``; raises :class:`LoweringError` when any finding is an error."""
    out = _Lowerer(max_arrows).run(doc)
    if not out.report.ok:
        raise LoweringError(out.report)
    return out
