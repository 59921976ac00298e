"""Finite preorders, topological spaces, distributive lattices and Boolean algebras.

Elements are strings.  Maps between carriers are tuples of images aligned
with the source's element order, so they can be hashed and compared.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

Map = tuple[str, ...]


class StructureError(ValueError):
    pass


def _subset_name(xs: Iterable[str], order: Sequence[str]) -> str:
    pos = {x: i for i, x in enumerate(order)}
    return "{" + ",".join(sorted(xs, key=pos.__getitem__)) + "}"


@dataclass(frozen=True)
class FinPreorder:
    elements: tuple[str, ...]
    leq: frozenset[tuple[str, str]]

    @classmethod
    def from_relation(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "FinPreorder":
        """Reflexive-transitive closure of ``pairs``."""
        rel = {(x, x) for x in elements} | set(pairs)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return cls(tuple(elements), frozenset(rel))

    def le(self, x: str, y: str) -> bool:
        return (x, y) in self.leq

    def validate(self) -> None:
        for x in self.elements:
            if not self.le(x, x):
                raise StructureError(f"not reflexive at {x}")
        for x, y, z in itertools.product(self.elements, repeat=3):
            if self.le(x, y) and self.le(y, z) and not self.le(x, z):
                raise StructureError(f"not transitive at {x} <= {y} <= {z}")

    @property
    def is_poset(self) -> bool:
        return all(x == y for x, y in self.leq if self.le(y, x))

    def up_closed(self, subset: frozenset[str]) -> bool:
        return all(y in subset for x in subset for y in self.elements if self.le(x, y))

    def down_closed(self, subset: frozenset[str]) -> bool:
        return all(y in subset for x in subset for y in self.elements if self.le(y, x))


FinPoset = FinPreorder


def chain(n: int) -> FinPreorder:
    els = tuple(str(i) for i in range(n))
    return FinPreorder.from_relation(els, [(els[i], els[i + 1]) for i in range(n - 1)])


def antichain(n: int) -> FinPreorder:
    return FinPreorder.from_relation(tuple(str(i) for i in range(n)), [])


def indiscrete_preorder(n: int) -> FinPreorder:
    els = tuple(str(i) for i in range(n))
    return FinPreorder(els, frozenset(itertools.product(els, repeat=2)))


def all_maps(src: Sequence[str], tgt: Sequence[str]) -> list[Map]:
    return [tuple(m) for m in itertools.product(tgt, repeat=len(src))]


def monotone_maps(P: FinPreorder, Q: FinPreorder) -> list[Map]:
    out = []
    for m in all_maps(P.elements, Q.elements):
        img = dict(zip(P.elements, m))
        if all(Q.le(img[x], img[y]) for x, y in P.leq):
            out.append(m)
    return out


def posetify(P: FinPreorder) -> tuple[FinPreorder, dict[str, str]]:
    """Quotient by ``x <= y <= x``; classes are named by their first element."""
    rep: dict[str, str] = {}
    for x in P.elements:
        rep[x] = next(y for y in P.elements if P.le(x, y) and P.le(y, x))
    reps = tuple(dict.fromkeys(rep[x] for x in P.elements))
    Q = FinPreorder(reps, frozenset((rep[x], rep[y]) for x, y in P.leq))
    return Q, rep


@dataclass(frozen=True)
class FinTopSpace:
    points: tuple[str, ...]
    opens: frozenset[frozenset[str]]

    @classmethod
    def make(cls, points: Sequence[str], opens: Iterable[Iterable[str]]) -> "FinTopSpace":
        return cls(tuple(points), frozenset(frozenset(o) for o in opens))

    def validate(self) -> None:
        full = frozenset(self.points)
        if frozenset() not in self.opens or full not in self.opens:
            raise StructureError("opens must contain the empty set and the whole space")
        for a, b in itertools.product(self.opens, repeat=2):
            if a | b not in self.opens or a & b not in self.opens:
                raise StructureError("opens are not closed under union and intersection")

    @property
    def clopens(self) -> list[frozenset[str]]:
        full = frozenset(self.points)
        return [o for o in self.opens if full - o in self.opens]


def discrete_space(points: Sequence[str]) -> FinTopSpace:
    subsets = itertools.chain.from_iterable(itertools.combinations(points, k)
                                            for k in range(len(points) + 1))
    return FinTopSpace.make(points, subsets)


def indiscrete_space(points: Sequence[str]) -> FinTopSpace:
    return FinTopSpace.make(points, [(), tuple(points)])


def sierpinski() -> FinTopSpace:
    return FinTopSpace.make(("0", "1"), [(), ("1",), ("0", "1")])


def continuous_maps(X: FinTopSpace, Y: FinTopSpace) -> list[Map]:
    out = []
    for m in all_maps(X.points, Y.points):
        img = dict(zip(X.points, m))
        if all(frozenset(p for p in X.points if img[p] in o) in X.opens for o in Y.opens):
            out.append(m)
    return out


def specialization_preorder(X: FinTopSpace) -> FinPreorder:
    """``x <= y`` iff every open set containing ``x`` also contains ``y``."""
    leq = frozenset((x, y) for x, y in itertools.product(X.points, repeat=2)
                    if all(y in o for o in X.opens if x in o))
    return FinPreorder(X.points, leq)


def alexandrov_space(P: FinPreorder) -> FinTopSpace:
    """Opens are the up-closed sets, matching :func:`specialization_preorder`."""
    subsets = itertools.chain.from_iterable(itertools.combinations(P.elements, k)
                                            for k in range(len(P.elements) + 1))
    return FinTopSpace(P.elements, frozenset(frozenset(s) for s in subsets
                                             if P.up_closed(frozenset(s))))


def pi0(X: FinTopSpace) -> tuple[tuple[str, ...], dict[str, str]]:
    """Connected components, found by scanning clopen sets.

    Components are numbered ``"0", "1", ...`` in order of their first point;
    returns the component names and the quotient map.
    """
    clopens = X.clopens
    comp: dict[str, str] = {}
    names: list[str] = []
    for p in X.points:
        if p in comp:
            continue
        name = str(len(names))
        names.append(name)
        for q in X.points:
            if all((p in c) == (q in c) for c in clopens):
                comp[q] = name
    return tuple(names), comp


@dataclass(frozen=True)
class FinDistLattice:
    """A finite bounded lattice; :meth:`validate` checks distributivity."""

    order: FinPreorder

    @property
    def elements(self) -> tuple[str, ...]:
        return self.order.elements

    def le(self, x: str, y: str) -> bool:
        return self.order.le(x, y)

    def _bound(self, x: str, y: str, upper: bool) -> Optional[str]:
        els = self.elements
        cands = [z for z in els if (self.le(x, z) and self.le(y, z) if upper
                                    else self.le(z, x) and self.le(z, y))]
        best = [z for z in cands if all((self.le(z, w) if upper else self.le(w, z)) for w in cands)]
        return best[0] if len(best) == 1 else None

    @cached_property
    def meet(self) -> dict[tuple[str, str], str]:
        return {(x, y): self._bound(x, y, False) for x in self.elements for y in self.elements}

    @cached_property
    def join(self) -> dict[tuple[str, str], str]:
        return {(x, y): self._bound(x, y, True) for x in self.elements for y in self.elements}

    @cached_property
    def bottom(self) -> str:
        return next(x for x in self.elements if all(self.le(x, y) for y in self.elements))

    @cached_property
    def top(self) -> str:
        return next(x for x in self.elements if all(self.le(y, x) for y in self.elements))

    def validate(self) -> None:
        self.order.validate()
        if not self.order.is_poset:
            raise StructureError("lattice order is not antisymmetric")
        if any(v is None for v in self.meet.values()) or any(v is None for v in self.join.values()):
            raise StructureError("some pair has no meet or join")
        self.bottom, self.top
        m, j = self.meet, self.join
        for x, y, z in itertools.product(self.elements, repeat=3):
            if m[x, j[y, z]] != j[m[x, y], m[x, z]]:
                raise StructureError(f"not distributive at {x}, {y}, {z}")

    def complements(self, x: str) -> list[str]:
        return [y for y in self.elements
                if self.meet[x, y] == self.bottom and self.join[x, y] == self.top]


@dataclass(frozen=True)
class FinBoolAlg:
    lattice: FinDistLattice
    complement: tuple[tuple[str, str], ...]

    @property
    def elements(self) -> tuple[str, ...]:
        return self.lattice.elements

    def neg(self, x: str) -> str:
        return dict(self.complement)[x]

    def validate(self) -> None:
        L = self.lattice
        L.validate()
        for x in L.elements:
            nx = self.neg(x)
            if L.meet[x, nx] != L.bottom or L.join[x, nx] != L.top:
                raise StructureError(f"{nx} is not a complement of {x}")


def lattice_from_order(P: FinPreorder) -> FinDistLattice:
    return FinDistLattice(P)


def chain_lattice(n: int) -> FinDistLattice:
    return FinDistLattice(chain(n))


def divisor_lattice(n: int) -> FinDistLattice:
    divs = [str(d) for d in range(1, n + 1) if n % d == 0]
    return FinDistLattice(FinPreorder(tuple(divs), frozenset(
        (a, b) for a in divs for b in divs if int(b) % int(a) == 0)))


def downset_lattice(P: FinPreorder) -> FinDistLattice:
    """Down-closed subsets of ``P`` ordered by inclusion."""
    subsets = itertools.chain.from_iterable(itertools.combinations(P.elements, k)
                                            for k in range(len(P.elements) + 1))
    downs = [frozenset(s) for s in subsets if P.down_closed(frozenset(s))]
    names = {d: _subset_name(d, P.elements) for d in downs}
    return FinDistLattice(FinPreorder(tuple(names[d] for d in downs), frozenset(
        (names[a], names[b]) for a in downs for b in downs if a <= b)))


def principal_downset(P: FinPreorder, x: str) -> str:
    return _subset_name([y for y in P.elements if P.le(y, x)], P.elements)


def powerset_algebra(S: Sequence[str]) -> FinBoolAlg:
    subsets = [frozenset(c) for k in range(len(S) + 1) for c in itertools.combinations(S, k)]
    names = {s: _subset_name(s, S) for s in subsets}
    full = frozenset(S)
    L = FinDistLattice(FinPreorder(tuple(names[s] for s in subsets), frozenset(
        (names[a], names[b]) for a in subsets for b in subsets if a <= b)))
    return FinBoolAlg(L, tuple((names[s], names[full - s]) for s in subsets))


def complemented_elements(L: FinDistLattice) -> FinBoolAlg:
    """The Boolean algebra of elements of ``L`` that have a complement."""
    comp: dict[str, str] = {}
    for x in L.elements:
        cs = L.complements(x)
        if len(cs) > 1:
            raise StructureError(f"{x} has several complements {cs}; the lattice is not distributive")
        if cs:
            comp[x] = cs[0]
    els = tuple(x for x in L.elements if x in comp)
    sub = FinDistLattice(FinPreorder(els, frozenset((a, b) for a, b in L.order.leq
                                                    if a in comp and b in comp)))
    B = FinBoolAlg(sub, tuple((x, comp[x]) for x in els))
    B.validate()
    return B


def atoms(B: FinBoolAlg) -> tuple[str, ...]:
    L = B.lattice
    nonzero = [x for x in L.elements if x != L.bottom]
    return tuple(x for x in nonzero if not any(y != x and L.le(y, x) for y in nonzero))


def lattice_homs(L: FinDistLattice, M: FinDistLattice) -> list[Map]:
    """Maps preserving binary meets and joins, bottom and top."""
    out = []
    els = L.elements
    free = [x for x in els if x not in (L.bottom, L.top)]
    for m in itertools.product(M.elements, repeat=len(free)):
        img = dict(zip(free, m))
        img[L.bottom], img[L.top] = M.bottom, M.top
        if all(img[L.meet[x, y]] == M.meet[img[x], img[y]] and
               img[L.join[x, y]] == M.join[img[x], img[y]] for x in els for y in els):
            out.append(tuple(img[x] for x in els))
    return out


def boolean_homs(A: FinBoolAlg, B: FinBoolAlg) -> list[Map]:
    return lattice_homs(A.lattice, B.lattice)


def find_structure_iso(src: Sequence[str], tgt: Sequence[str], preserves) -> Optional[dict[str, str]]:
    """First bijection ``src -> tgt`` (in permutation order) accepted by ``preserves``."""
    if len(src) != len(tgt):
        return None
    for perm in itertools.permutations(tgt):
        m = dict(zip(src, perm))
        if preserves(m):
            return m
    return None


def preorder_iso(P: FinPreorder, Q: FinPreorder) -> Optional[dict[str, str]]:
    return find_structure_iso(P.elements, Q.elements, lambda m: frozenset(
        (m[a], m[b]) for a, b in P.leq) == Q.leq)


def space_iso(X: FinTopSpace, Y: FinTopSpace) -> Optional[dict[str, str]]:
    return find_structure_iso(X.points, Y.points, lambda m: frozenset(
        frozenset(m[p] for p in o) for o in X.opens) == Y.opens)
