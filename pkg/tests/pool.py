"""Seeded random finite categories and reflections for property tests."""
from __future__ import annotations

import itertools
import random

from finrefl.fincat import FinCategory, FinFunctor
from finrefl.instances import Concrete, FinPreorder, preorder_as_category
from finrefl.transforms import Adjunction, make_adjunction

MAX_OBJECTS = 12
MAX_ARROWS = 60


def random_preorder(rng: random.Random, n: int, density: float) -> FinPreorder:
    els = [f"p{i}" for i in range(n)]
    pairs = [(x, y) for x, y in itertools.permutations(els, 2) if rng.random() < density]
    return FinPreorder.from_relation(els, pairs)


def random_thin_category(seed: int) -> FinCategory:
    rng = random.Random(seed)
    while True:
        n = rng.randint(1, MAX_OBJECTS)
        P = random_preorder(rng, n, rng.choice([0.05, 0.1, 0.2, 0.35]))
        if len(P.leq) <= MAX_ARROWS:
            return preorder_as_category(P, f"thin{seed}")


def _closure(sizes: dict[str, int], gens: list[tuple[str, str, tuple[int, ...]]], cap: int):
    maps = {(x, x, tuple(range(k))) for x, k in sizes.items()}
    maps |= set(gens)
    frontier = list(maps)
    while frontier:
        new = []
        for (s1, t1, f), (s2, t2, g) in itertools.product(list(maps), frontier):
            for (a, b, m1), (c, d, m2) in (((s1, t1, f), (s2, t2, g)), ((s2, t2, g), (s1, t1, f))):
                if b == c:
                    h = (a, d, tuple(m2[i] for i in m1))
                    if h not in maps:
                        maps.add(h)
                        new.append(h)
            if len(maps) > cap:
                return None
        frontier = new
    return maps


def random_concrete_category(seed: int) -> FinCategory:
    """Sets of size 1 to 3 and the closure of a few random functions between them."""
    rng = random.Random(10_000 + seed)
    while True:
        k = rng.randint(1, 4)
        sizes = {f"s{i}": rng.randint(1, 3) for i in range(k)}
        gens = []
        for _ in range(rng.randint(1, 4)):
            x, y = rng.choice(list(sizes)), rng.choice(list(sizes))
            gens.append((x, y, tuple(rng.randrange(sizes[y]) for _ in range(sizes[x]))))
        maps = _closure(sizes, gens, MAX_ARROWS)
        if maps is None:
            continue
        homs: dict[tuple[str, str], list] = {}
        for s, t, m in sorted(maps):
            homs.setdefault((s, t), []).append(tuple(str(i) for i in m))
        carriers = {x: tuple(str(i) for i in range(n)) for x, n in sizes.items()}
        conc = Concrete(f"fun{seed}", carriers, lambda c: c,
                        lambda X, Y, _h=homs, _c=carriers: _h.get(
                            (_name(_c, X), _name(_c, Y)), []))
        return conc.category


def _name(carriers, c):
    # carriers are tuples and may coincide, so structures are looked up by identity
    for k, v in carriers.items():
        if v is c:
            return k
    raise KeyError(c)


def category_pool(seeds=range(50)) -> list[FinCategory]:
    """One thin and one function-closure category per seed."""
    out = []
    for s in seeds:
        out.append(random_thin_category(s))
        out.append(random_concrete_category(s))
    return out


def random_poset(rng: random.Random, n: int) -> FinPreorder:
    """Comparisons only go from lower to higher index, so the closure is antisymmetric."""
    els = [f"q{i}" for i in range(n)]
    pairs = [(els[i], els[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
    return FinPreorder.from_relation(els, pairs)


def random_closure_operator(rng: random.Random, P: FinPreorder) -> dict[str, str]:
    """``c(x)`` is the least fixed point above ``x``.

    Fixed points start as a random subset; an element with no least fixed
    point above it joins the set, until every element has one.
    """
    els = list(P.elements)
    fixed = {x for x in els if rng.random() < 0.4}
    while True:
        c = {}
        for x in els:
            above = [y for y in fixed if P.le(x, y)]
            least = [y for y in above if all(P.le(y, z) for z in above)]
            if len(least) != 1:
                fixed.add(x)
                break
            c[x] = least[0]
        else:
            return c


def closure_reflection(seed: int, max_n: int = 7) -> Adjunction:
    """The fixed points of a closure operator on a random poset, as a reflective subposet."""
    rng = random.Random(20_000 + seed)
    P = random_poset(rng, rng.randint(1, max_n))
    c = random_closure_operator(rng, P)
    fixed = [x for x in P.elements if c[x] == x]
    Q = FinPreorder(tuple(fixed), frozenset((a, b) for a, b in P.leq if a in fixed and b in fixed))
    B = preorder_as_category(P, f"P{seed}")
    A = preorder_as_category(Q, f"Fix{seed}")
    L = FinFunctor(B, A, dict(c), {f"{x}~{y}": f"{c[x]}~{c[y]}" for x, y in P.leq}, "c")
    Rf = FinFunctor(A, B, {x: x for x in fixed}, {a: a for a, _, _ in A.arrows}, "incl")
    unit = {x: f"{x}~{c[x]}" for x in P.elements}
    counit = {x: f"{x}~{x}" for x in fixed}
    return make_adjunction(A, B, L, Rf, unit, counit, f"closure{seed}")
