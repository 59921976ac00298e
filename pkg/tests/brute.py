"""Deliberately naive enumerations used as independent oracles."""
import itertools
from math import gcd


def complemented_divisors(n):
    """Divisors d of n with some divisor e such that gcd(d, e) = 1 and lcm(d, e) = n."""
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return sorted(d for d in divs
                  if any(gcd(d, e) == 1 and d * e // gcd(d, e) == n for e in divs))


def components(X):
    """Most blocks in a partition of the points into nonempty open sets."""
    pts = list(X.points)
    best = None
    for k in range(1, len(pts) + 1):
        for labels in itertools.product(range(k), repeat=len(pts)):
            parts = [frozenset(p for p, c in zip(pts, labels) if c == i) for i in range(k)]
            if all(parts) and all(p in X.opens for p in parts):
                best = k
    return best


def downsets(elements, le):
    """All subsets closed downwards under ``le``."""
    out = []
    for k in range(len(elements) + 1):
        for s in itertools.combinations(elements, k):
            if all(y in s for x in s for y in elements if le(y, x)):
                out.append(frozenset(s))
    return out


def is_chain(sets):
    """True when inclusion totally orders ``sets``."""
    return all(a <= b or b <= a for a, b in itertools.combinations(sets, 2))


def minimal_nonzero(elements, le, bottom):
    nz = [x for x in elements if x != bottom]
    return [x for x in nz if not any(y != x and le(y, x) for y in nz)]


def endofunctions_monotone(elements, le):
    count = 0
    for img in itertools.product(elements, repeat=len(elements)):
        m = dict(zip(elements, img))
        if all(le(m[x], m[y]) for x in elements for y in elements if le(x, y)):
            count += 1
    return count
