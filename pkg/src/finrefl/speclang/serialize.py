"""Canonical text for documents and reports.

A canonical document has one declaration per block, one statement per
line, two-space indentation and a blank line between blocks; ``parse``
of that text gives back an equal document.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from ..engine import ReflectionData
from ..fincat import FinCategory, FinFunctor, ValidationReport
from ..transforms import Adjunction, FunctionalData
from .parser import (
    AdjunctionDecl,
    ArrowDecl,
    Assign,
    CategoryDecl,
    ComposeDecl,
    FamilyDecl,
    FunctorDecl,
    IdentityDecl,
    InstanceDecl,
    Key,
    MapDecl,
    RelationDecl,
    SpecDocument,
)


def _key(k: Key) -> str:
    return f"({k[0]}, {k[1]})" if isinstance(k, tuple) else k


def _block(header: str, lines: Iterable[str]) -> str:
    body = [f"  {line}" for line in lines]
    return "\n".join([header + " {", *body, "}"])


def serialize_decl(d) -> str:
    if isinstance(d, CategoryDecl):
        lines = []
        if d.objects:
            lines.append("objects: " + " ".join(d.objects))
        lines += [f"identity {i.obj} = {i.arrow}" for i in d.identities]
        lines += [f"arrow {a.name} : {a.src} -> {a.tgt}" for a in d.arrows]
        lines += [f"compose {c.g} . {c.f} = {c.result}" for c in d.composes]
        return _block(f"category {d.name}", lines)
    if isinstance(d, FunctorDecl):
        lines = [f"object {_key(a.key)} -> {_key(a.value)}" for a in d.objects]
        lines += [f"arrow {_key(a.key)} -> {_key(a.value)}" for a in d.arrows]
        return _block(f"functor {d.name} : {d.dom} -> {d.cod}", lines)
    if isinstance(d, RelationDecl):
        return _block(f"relation {d.name}", [_key(e) for e in d.entries])
    if isinstance(d, MapDecl):
        return _block(f"map {d.name} : {d.dom} -> {d.cod}",
                      [f"{_key(a.key)} -> {_key(a.value)}" for a in d.items])
    if isinstance(d, FamilyDecl):
        return _block(f"family {d.name} on {d.on}",
                      [f"{_key(a.key)} -> {_key(a.value)}" for a in d.items])
    if isinstance(d, AdjunctionDecl):
        return _block(f"adjunction {d.name}", [f"left {d.left}", f"right {d.right}",
                                               f"unit {d.unit}", f"counit {d.counit}"])
    if isinstance(d, InstanceDecl):
        return f"instance {d.name}"
    raise TypeError(f"not a declaration: {d!r}")


def serialize_document(doc: SpecDocument) -> str:
    return "\n\n".join(serialize_decl(d) for d in doc.decls) + "\n"


def serialize_report(report: ValidationReport, tail: Sequence[str] = ()) -> str:
    """One finding per line, ``LEVEL CODE location message``, then the tail lines."""
    return "".join(line + "\n" for line in [*report.lines(), *tail])


def serialize(obj, tail: Sequence[str] = ()) -> str:
    if isinstance(obj, SpecDocument):
        return serialize_document(obj)
    if isinstance(obj, ValidationReport):
        return serialize_report(obj, tail)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# documents from in-memory values

def category_decl(C: FinCategory, name: Optional[str] = None) -> CategoryDecl:
    """Every arrow and every composite not involving an identity, spelled out."""
    ids = set(C.identity.values())
    explicit_ids = tuple(IdentityDecl(x, C.identity[x]) for x in C.objects
                         if C.identity[x] != f"id_{x}")
    arrows = tuple(ArrowDecl(a, s, t) for a, s, t in C.arrows if a not in ids)
    comps = tuple(ComposeDecl(g, f, h) for (g, f), h in C.comp.items()
                  if g not in ids and f not in ids)
    return CategoryDecl(name or C.name, tuple(C.objects), explicit_ids, arrows, comps)


def functor_decl(F: FinFunctor, name: str, dom: str, cod: str) -> FunctorDecl:
    ids = set(F.dom.identity.values())
    return FunctorDecl(name, dom, cod,
                       tuple(Assign(x, F.omap[x]) for x in F.dom.objects),
                       tuple(Assign(a, F.amap[a]) for a in F.dom.arrow_names if a not in ids))


class _Names:
    """Distinct, parseable names for categories that may share a name or have none."""

    def __init__(self):
        self.by_id: dict[int, str] = {}
        self.decls: list[CategoryDecl] = []

    def add(self, C: FinCategory, fallback: str) -> str:
        for cid, nm in self.by_id.items():
            if cid == id(C):
                return nm
        for d in self.decls:
            if category_decl(C, d.name) == d:
                self.by_id[id(C)] = d.name
                return d.name
        taken = {d.name for d in self.decls}
        nm = C.name if C.name and C.name not in taken else fallback
        while nm in taken:
            nm += "'"
        self.by_id[id(C)] = nm
        self.decls.append(category_decl(C, nm))
        return nm


def document_from_data(data: ReflectionData) -> SpecDocument:
    names = _Names()
    h, k, u = names.add(data.H, "H"), names.add(data.K, "K"), names.add(data.U, "U")
    decls: list = list(names.decls)
    decls += [functor_decl(data.I, "I", h, u), functor_decl(data.J, "J", k, u),
              RelationDecl("R", tuple(data.R)), RelationDecl("S", tuple(data.S)),
              MapDecl("Z", "R", "S", tuple(Assign(x, data.Z[x]) for x in data.R)),
              MapDecl("W", "S", "R", tuple(Assign(y, data.W[y]) for y in data.S))]
    for fam, rel, values, entries in (("xi", "R", data.xi, data.R), ("chi", "S", data.chi, data.S),
                                      ("epsPrime", "R", data.eps, data.R),
                                      ("etaPrime", "S", data.eta, data.S)):
        decls.append(FamilyDecl(fam, rel, tuple(Assign(x, values[x]) for x in entries)))
    return SpecDocument(tuple(decls))


def document_from_functional(fd: FunctionalData) -> SpecDocument:
    names = _Names()
    h, k, u = names.add(fd.H, "H"), names.add(fd.K, "K"), names.add(fd.U, "U")
    decls: list = list(names.decls)
    decls += [functor_decl(fd.I, "I", h, u), functor_decl(fd.J, "J", k, u),
              MapDecl("f", h, k, tuple(Assign(x, fd.f[x]) for x in fd.H.objects)),
              MapDecl("g", k, h, tuple(Assign(x, fd.g[x]) for x in fd.K.objects))]
    for fam, on, values, objs in (("xi", h, fd.xiC, fd.H.objects), ("chi", k, fd.chiD, fd.K.objects),
                                  ("etaC", h, fd.etaC, fd.H.objects),
                                  ("etaD", k, fd.etaD, fd.K.objects)):
        decls.append(FamilyDecl(fam, on, tuple(Assign(x, values[x]) for x in objs)))
    return SpecDocument(tuple(decls))


def document_from_adjunction(adj: Adjunction, name: str = "") -> SpecDocument:
    names = _Names()
    a, b = names.add(adj.A, "A"), names.add(adj.B, "B")
    decls: list = list(names.decls)
    lname = adj.L.name or "L"
    rname = adj.Rf.name or "Rf"
    if rname == lname:
        rname += "'"
    decls += [functor_decl(adj.L, lname, b, a), functor_decl(adj.Rf, rname, a, b),
              FamilyDecl("unit", b, tuple(Assign(x, adj.unit[x]) for x in adj.B.objects)),
              FamilyDecl("counit", a, tuple(Assign(x, adj.counit[x]) for x in adj.A.objects)),
              AdjunctionDecl(name or adj.name or "adj", lname, rname, "unit", "counit")]
    return SpecDocument(tuple(decls))
