"""Explicit finite categories, functors and natural transformations.

Arrows are named; equality of arrows is equality of names and composition
is a lookup in an explicit table.  Nothing here validates on construction:
the ``validate_*`` functions accumulate findings so that hand-written input
can be diagnosed in one pass.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

ERROR = "ERROR"
WARN = "WARN"
INFO = "INFO"


class CategoryError(Exception):
    """Raised when an operation is applied to ill-formed or unknown data."""


class UnknownIdentifier(CategoryError, KeyError):
    pass


class SearchBoundExceeded(CategoryError):
    """The isomorphism search was refused because the inputs are too large."""


def fmt_witness(witness: Sequence[str]) -> str:
    if not witness:
        return "-"
    if len(witness) == 1:
        return str(witness[0])
    return "(" + ",".join(str(w) for w in witness) + ")"


@dataclass(frozen=True)
class Finding:
    severity: str
    code: str
    witness: tuple[str, ...]
    message: str

    @property
    def location(self) -> str:
        return fmt_witness(self.witness)

    def line(self) -> str:
        return f"{self.severity} {self.code} {self.location} {self.message}"


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(f.severity == ERROR for f in self.findings)

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def add(self, severity: str, code: str, witness: Iterable[str], message: str) -> None:
        self.findings.append(Finding(severity, code, tuple(str(w) for w in witness), message))

    def error(self, code: str, witness: Iterable[str], message: str) -> None:
        self.add(ERROR, code, witness, message)

    def info(self, code: str, witness: Iterable[str], message: str) -> None:
        self.add(INFO, code, witness, message)

    def extend(self, other: "ValidationReport") -> "ValidationReport":
        self.findings.extend(other.findings)
        return self

    def errors(self, code: Optional[str] = None) -> list[Finding]:
        return [f for f in self.findings
                if f.severity == ERROR and (code is None or f.code == code)]

    def lines(self) -> list[str]:
        return [f.line() for f in self.findings]

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class FinCategory:
    """A finite category given by explicit tables.

    ``comp[(g, f)]`` is ``g . f`` and must be present exactly when
    ``tgt(f) == src(g)``.
    """

    objects: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]
    identity: Mapping[str, str]
    comp: Mapping[tuple[str, str], str]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        object.__setattr__(self, "identity", dict(self.identity))
        object.__setattr__(self, "comp", dict(self.comp))

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        # declaration order is presentation, not structure
        return (set(self.objects) == set(other.objects) and set(self.arrows) == set(other.arrows)
                and self.identity == other.identity and self.comp == other.comp)

    def __hash__(self):
        return hash((frozenset(self.objects), frozenset(self.arrows)))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.arrows)} arrows>"

    @cached_property
    def _typing(self) -> dict[str, tuple[str, str]]:
        return {a: (s, t) for a, s, t in self.arrows}

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        homs: dict[tuple[str, str], list[str]] = {}
        for a, s, t in self.arrows:
            homs.setdefault((s, t), []).append(a)
        return {k: tuple(sorted(v)) for k, v in homs.items()}

    @cached_property
    def _object_set(self) -> frozenset[str]:
        return frozenset(self.objects)

    @property
    def arrow_names(self) -> list[str]:
        return [a for a, _, _ in self.arrows]

    def has_object(self, x: str) -> bool:
        return x in self._object_set

    def has_arrow(self, f: str) -> bool:
        return f in self._typing

    def src(self, f: str) -> str:
        try:
            return self._typing[f][0]
        except KeyError:
            raise UnknownIdentifier(f"unknown arrow {f!r}") from None

    def tgt(self, f: str) -> str:
        try:
            return self._typing[f][1]
        except KeyError:
            raise UnknownIdentifier(f"unknown arrow {f!r}") from None

    def id(self, x: str) -> str:
        try:
            return self.identity[x]
        except KeyError:
            raise UnknownIdentifier(f"unknown object {x!r}") from None

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        for x in (a, b):
            if not self.has_object(x):
                raise UnknownIdentifier(f"unknown object {x!r}")
        return self._homs.get((a, b), ())

    def compose(self, *arrows: str) -> str:
        """``compose(h, g, f)`` is ``h . g . f``."""
        if not arrows:
            raise CategoryError("compose needs at least one arrow")
        result = arrows[-1]
        self.src(result)
        for g in reversed(arrows[:-1]):
            try:
                result = self.comp[(g, result)]
            except KeyError:
                raise CategoryError(f"{g} . {result} is not defined") from None
        return result

    def is_identity(self, f: str) -> bool:
        return self.identity.get(self.src(f)) == f

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        """All (g, f) with tgt(f) == src(g), in canonical order."""
        outgoing: dict[str, list[str]] = {}
        for a, s, _ in self.arrows:
            outgoing.setdefault(s, []).append(a)
        for f, _, t in sorted(self.arrows):
            for g in sorted(outgoing.get(t, ())):
                yield g, f


@dataclass(frozen=True, eq=False)
class FinFunctor:
    dom: FinCategory
    cod: FinCategory
    omap: Mapping[str, str]
    amap: Mapping[str, str]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "omap", dict(self.omap))
        object.__setattr__(self, "amap", dict(self.amap))

    def __call__(self, x: str) -> str:
        """Apply to an object or an arrow name (objects take precedence)."""
        if x in self.omap and self.dom.has_object(x):
            return self.omap[x]
        if x in self.amap:
            return self.amap[x]
        raise UnknownIdentifier(f"{x!r} is not in the domain of functor {self.name or '?'}")

    def obj(self, x: str) -> str:
        return self.omap[x]

    def arr(self, f: str) -> str:
        return self.amap[f]

    def __repr__(self):
        return f"<FinFunctor {self.name or '?'}: {self.dom.name or '?'} -> {self.cod.name or '?'}>"


@dataclass(frozen=True, eq=False)
class NatTransform:
    source: FinFunctor
    target: FinFunctor
    component: Mapping[str, str]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "component", dict(self.component))

    def __getitem__(self, x: str) -> str:
        return self.component[x]

    def __repr__(self):
        return f"<NatTransform {self.name or '?'}>"


def make_category(objects: Sequence[str], arrows: Sequence[tuple[str, str, str]],
                  comp: Mapping[tuple[str, str], str],
                  identity: Optional[Mapping[str, str]] = None, name: str = "") -> FinCategory:
    """Build a category, synthesizing ``id_x`` identities when none are given.

    Composites involving an identity are filled in automatically; every
    other composable pair must appear in ``comp``.
    """
    arrows = list(arrows)
    if identity is None:
        identity = {x: f"id_{x}" for x in objects}
        arrows = [(identity[x], x, x) for x in objects] + arrows
    table = dict(comp)
    typing = {a: (s, t) for a, s, t in arrows}
    for a, (s, t) in typing.items():
        if s in identity:
            table.setdefault((a, identity[s]), a)
        if t in identity:
            table.setdefault((identity[t], a), a)
    return FinCategory(tuple(objects), tuple(arrows), dict(identity), table, name)


def validate_category(C: FinCategory) -> ValidationReport:
    r = ValidationReport()
    seen: set[str] = set()
    for x in C.objects:
        if x in seen:
            r.error("CAT_DUPLICATE", [x], f"object {x} is declared twice")
        seen.add(x)
    seen = set()
    for a, s, t in C.arrows:
        if a in seen:
            r.error("CAT_DUPLICATE", [a], f"arrow {a} is declared twice")
        seen.add(a)
        for end in (s, t):
            if not C.has_object(end):
                r.error("CAT_UNKNOWN", [a], f"arrow {a} refers to unknown object {end}")

    for x in C.objects:
        i = C.identity.get(x)
        if i is None:
            r.error("CAT_IDENTITY", [x], f"object {x} has no identity")
        elif not C.has_arrow(i) or C.src(i) != x or C.tgt(i) != x:
            r.error("CAT_IDENTITY", [x, i], f"identity {i} of {x} is not an arrow {x} -> {x}")

    for (g, f), h in C.comp.items():
        if not (C.has_arrow(g) and C.has_arrow(f)):
            r.error("CAT_COMP_SPURIOUS", [g, f], f"composition entry {g} . {f} names an unknown arrow")
            continue
        if C.tgt(f) != C.src(g):
            r.error("CAT_COMP_SPURIOUS", [g, f], f"{g} . {f} is listed but {f} and {g} are not composable")
            continue
        if not C.has_arrow(h):
            r.error("CAT_COMP_TYPE", [g, f], f"{g} . {f} = {h} names an unknown arrow")
        elif C.src(h) != C.src(f) or C.tgt(h) != C.tgt(g):
            r.error("CAT_COMP_TYPE", [g, f],
                    f"{g} . {f} = {h} but {h} is not an arrow {C.src(f)} -> {C.tgt(g)}")
    if not r.ok:
        return r

    for g, f in C.composable_pairs():
        if (g, f) not in C.comp:
            r.error("CAT_COMP_MISSING", [g, f], f"no composite given for {g} . {f}")

    for a, s, t in sorted(C.arrows):
        ids, idt = C.identity[s], C.identity[t]
        got = C.comp.get((a, ids))
        if got is not None and got != a:
            r.error("CAT_RIGHT_ID", [a, ids], f"{a} . {ids} = {got}, expected {a}")
        got = C.comp.get((idt, a))
        if got is not None and got != a:
            r.error("CAT_LEFT_ID", [idt, a], f"{idt} . {a} = {got}, expected {a}")

    outgoing: dict[str, list[str]] = {}
    for a, s, _ in C.arrows:
        outgoing.setdefault(s, []).append(a)
    for g, f in C.composable_pairs():
        gf = C.comp.get((g, f))
        if gf is None:
            continue
        for h in sorted(outgoing.get(C.tgt(g), ())):
            hg = C.comp.get((h, g))
            lhs = C.comp.get((h, gf))
            rhs = None if hg is None else C.comp.get((hg, f))
            if lhs is not None and rhs is not None and lhs != rhs:
                r.error("CAT_ASSOC", [h, g, f],
                        f"{h} . ({g} . {f}) = {lhs} but ({h} . {g}) . {f} = {rhs}")
    return r


def inverse(C: FinCategory, f: str) -> Optional[str]:
    """The two-sided inverse of ``f`` if there is one."""
    s, t = C.src(f), C.tgt(f)
    found = [g for g in C.hom(t, s)
             if C.comp.get((g, f)) == C.identity[s] and C.comp.get((f, g)) == C.identity[t]]
    if len(found) > 1:
        raise CategoryError(f"{f} has several inverses {found}; the category laws fail")
    return found[0] if found else None


is_isomorphism = inverse


def require_inverse(C: FinCategory, f: str) -> str:
    g = inverse(C, f)
    if g is None:
        raise CategoryError(f"{f} is not an isomorphism")
    return g


def hom_set(C: FinCategory, a: str, b: str) -> list[str]:
    return list(C.hom(a, b))


def validate_functor(F: FinFunctor) -> ValidationReport:
    r = ValidationReport()
    C, D = F.dom, F.cod
    for x in C.objects:
        y = F.omap.get(x)
        if y is None:
            r.error("FUN_OBJ", [x], f"object {x} has no image")
        elif not D.has_object(y):
            r.error("FUN_OBJ", [x], f"object {x} maps to unknown object {y}")
    for f, s, t in C.arrows:
        p = F.amap.get(f)
        if p is None:
            r.error("FUN_ARR", [f], f"arrow {f} has no image")
        elif not D.has_arrow(p):
            r.error("FUN_ARR", [f], f"arrow {f} maps to unknown arrow {p}")
        elif (D.src(p), D.tgt(p)) != (F.omap.get(s), F.omap.get(t)):
            r.error("FUN_TYPE", [f], f"{f}: {s} -> {t} maps to {p}: {D.src(p)} -> {D.tgt(p)}, "
                    f"expected {F.omap.get(s)} -> {F.omap.get(t)}")
    if not r.ok:
        return r
    for x in C.objects:
        got, want = F.amap[C.identity[x]], D.identity[F.omap[x]]
        if got != want:
            r.error("FUN_ID", [x], f"identity of {x} maps to {got}, expected {want}")
    for (g, f), h in sorted(C.comp.items()):
        lhs = F.amap[h]
        rhs = D.comp.get((F.amap[g], F.amap[f]))
        if lhs != rhs:
            r.error("FUN_COMP", [g, f], f"F({g} . {f}) = {lhs} but F({g}) . F({f}) = {rhs}")
    return r


def validate_nat_transform(t: NatTransform) -> ValidationReport:
    r = ValidationReport()
    F, G = t.source, t.target
    if F.dom is not G.dom and F.dom != G.dom or F.cod is not G.cod and F.cod != G.cod:
        r.error("NAT_PARALLEL", [], "source and target functors are not parallel")
        return r
    C, D = F.dom, F.cod
    for x in C.objects:
        a = t.component.get(x)
        if a is None:
            r.error("NAT_COMPONENT", [x], f"no component at {x}")
        elif not D.has_arrow(a):
            r.error("NAT_COMPONENT", [x], f"component at {x} names unknown arrow {a}")
        elif (D.src(a), D.tgt(a)) != (F.omap[x], G.omap[x]):
            r.error("NAT_COMPONENT", [x], f"component {a} at {x} is not an arrow "
                    f"{F.omap[x]} -> {G.omap[x]}")
    if not r.ok:
        return r
    for f, s, tt in sorted(C.arrows):
        lhs = D.comp.get((G.amap[f], t.component[s]))
        rhs = D.comp.get((t.component[tt], F.amap[f]))
        if lhs != rhs:
            r.error("NAT_SQUARE", [f], f"naturality square at {f} fails: "
                    f"G({f}) . {t.component[s]} = {lhs} but {t.component[tt]} . F({f}) = {rhs}")
    return r


def identity_functor(C: FinCategory, name: str = "") -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {a: a for a in C.arrow_names},
                      name or f"1_{C.name}")


def compose_functors(G: FinFunctor, F: FinFunctor, name: str = "") -> FinFunctor:
    """``G . F``."""
    return FinFunctor(F.dom, G.cod,
                      {x: G.omap[y] for x, y in F.omap.items()},
                      {a: G.amap[b] for a, b in F.amap.items()},
                      name or f"{G.name}{F.name}")


def constant_functor(C: FinCategory, D: FinCategory, y: str) -> FinFunctor:
    return FinFunctor(C, D, {x: y for x in C.objects},
                      {a: D.identity[y] for a in C.arrow_names}, f"const_{y}")


def identity_transform(F: FinFunctor) -> NatTransform:
    return NatTransform(F, F, {x: F.cod.identity[F.omap[x]] for x in F.dom.objects},
                        f"1_{F.name}")


def opposite_category(C: FinCategory) -> FinCategory:
    return FinCategory(C.objects, tuple((a, t, s) for a, s, t in C.arrows), C.identity,
                       {(f, g): h for (g, f), h in C.comp.items()},
                       C.name[:-3] if C.name.endswith("^op") else (C.name + "^op" if C.name else ""))


def opposite_functor(F: FinFunctor, dom: Optional[FinCategory] = None,
                     cod: Optional[FinCategory] = None) -> FinFunctor:
    return FinFunctor(dom or opposite_category(F.dom), cod or opposite_category(F.cod),
                      F.omap, F.amap,
                      F.name[:-3] if F.name.endswith("^op") else (F.name + "^op" if F.name else ""))


def opposite_transform(t: NatTransform, source_op: FinFunctor, target_op: FinFunctor) -> NatTransform:
    """The transformation ``target^op => source^op`` with the same components."""
    return NatTransform(target_op, source_op, t.component, t.name + "^op" if t.name else "")


def _hom_profile(C: FinCategory, x: str) -> tuple:
    return (len(C.hom(x, x)),
            tuple(sorted(len(C.hom(x, y)) for y in C.objects)),
            tuple(sorted(len(C.hom(y, x)) for y in C.objects)))


def _extend_arrow_map(C: FinCategory, D: FinCategory, phi: dict[str, str]) -> Optional[dict[str, str]]:
    """Backtracking search for a composition-preserving arrow bijection over ``phi``."""
    amap = {C.identity[x]: D.identity[phi[x]] for x in C.objects}
    pending = [a for a, _, _ in sorted(C.arrows, key=lambda a: (len(C.hom(a[1], a[2])), a))
               if a not in amap]
    # triples (g, f, h) with g . f = h, indexed by each participant
    involving: dict[str, list[tuple[str, str, str]]] = {}
    for (g, f), h in C.comp.items():
        for a in {g, f, h}:
            involving.setdefault(a, []).append((g, f, h))
    used = set(amap.values())

    def consistent(a: str) -> bool:
        for g, f, h in involving.get(a, ()):
            if g in amap and f in amap and h in amap:
                if D.comp.get((amap[g], amap[f])) != amap[h]:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(pending):
            return True
        a = pending[i]
        for b in D.hom(phi[C.src(a)], phi[C.tgt(a)]):
            if b in used:
                continue
            amap[a] = b
            used.add(b)
            if consistent(a) and search(i + 1):
                return True
            del amap[a]
            used.discard(b)
        return False

    for x in C.objects:
        if not consistent(C.identity[x]):
            return None
    return amap if search(0) else None


def find_isomorphism_of_categories(C: FinCategory, D: FinCategory, bound: int = 400
                                   ) -> Optional[tuple[FinFunctor, FinFunctor]]:
    """Exhaustive search for an isomorphism ``C ~= D``.

    Returns the functor pair ``(F: C -> D, G: D -> C)`` composing to identities,
    ``None`` when none exists, and raises :class:`SearchBoundExceeded` when the
    combined arrow count is above ``bound``.
    """
    if len(C.arrows) + len(D.arrows) > bound:
        raise SearchBoundExceeded(f"{len(C.arrows)} + {len(D.arrows)} arrows exceeds bound {bound}")
    if len(C.objects) != len(D.objects) or len(C.arrows) != len(D.arrows):
        return None
    cprof = {x: _hom_profile(C, x) for x in C.objects}
    dprof = {y: _hom_profile(D, y) for y in D.objects}
    if sorted(cprof.values()) != sorted(dprof.values()):
        return None
    order = sorted(C.objects, key=lambda x: (sum(1 for y in C.objects if cprof[y] == cprof[x]), x))
    phi: dict[str, str] = {}

    def assign(i: int) -> Optional[dict[str, str]]:
        if i == len(order):
            return _extend_arrow_map(C, D, phi)
        x = order[i]
        for y in D.objects:
            if y in phi.values() or dprof[y] != cprof[x]:
                continue
            if any(len(C.hom(x, x2)) != len(D.hom(y, phi[x2])) or
                   len(C.hom(x2, x)) != len(D.hom(phi[x2], y)) for x2 in phi):
                continue
            phi[x] = y
            found = assign(i + 1)
            if found is not None:
                return found
            del phi[x]
        return None

    amap = assign(0)
    if amap is None:
        return None
    F = FinFunctor(C, D, dict(phi), amap, "iso")
    G = FinFunctor(D, C, {y: x for x, y in phi.items()}, {b: a for a, b in amap.items()}, "iso^-1")
    return F, G


def is_isomorphism_of_categories(F: FinFunctor) -> bool:
    """True iff ``F`` is a functor that is bijective on objects and arrows."""
    if not validate_functor(F).ok:
        return False
    return (len(set(F.omap.values())) == len(F.dom.objects) == len(F.cod.objects)
            and len(set(F.amap.values())) == len(F.dom.arrows) == len(F.cod.arrows))


def is_equivalence(F: FinFunctor) -> ValidationReport:
    """Exhaustive fully-faithful and essentially-surjective check."""
    r = validate_functor(F)
    if not r.ok:
        return r
    C, D = F.dom, F.cod
    for x, y in itertools.product(C.objects, repeat=2):
        images = [F.amap[a] for a in C.hom(x, y)]
        target = D.hom(F.omap[x], F.omap[y])
        if len(set(images)) != len(images):
            r.error("NOT_FAITHFUL", [x, y], f"{F.name or 'functor'} identifies arrows {x} -> {y}")
        if set(images) != set(target):
            missing = sorted(set(target) - set(images))
            if missing:
                r.error("NOT_FULL", [x, y], f"arrows {missing} are not in the image of hom({x},{y})")
    images = set(F.omap.values())
    for y in D.objects:
        if y in images:
            continue
        if not any(inverse(D, a) is not None for z in images for a in D.hom(z, y)):
            r.error("NOT_ESS_SURJ", [y], f"{y} is not isomorphic to any object in the image")
    return r
