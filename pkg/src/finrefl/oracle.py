"""Brute-force enumeration of the arrows of Rt and St.

Deliberately naive: scans every pair (resp. triple) of arrows of ``H`` and
``K`` without using hom-set indexes or the builders' naming, reads the
composition table directly and tests the defining squares literally.
"""
from __future__ import annotations

from .engine import ReflectionData

Arrow = tuple[tuple[str, str], tuple[str, str], tuple[str, ...]]


def _path(table, *arrows):
    out = arrows[-1]
    for g in reversed(arrows[:-1]):
        out = table.get((g, out))
        if out is None:
            return None
    return out


def r_tilde_arrows(data: ReflectionData) -> set[Arrow]:
    """``{(source entry, target entry, (u, v))}`` over all arrow pairs."""
    Rset = set(data.R)
    U = data.U.comp
    Iam, Jam = data.I.amap, data.J.amap
    found: set[Arrow] = set()
    for u, c, c2 in data.H.arrows:
        for v, d, d2 in data.K.arrows:
            if (c, d) not in Rset or (c2, d2) not in Rset:
                continue
            left = _path(U, Jam[v], data.xi[(c, d)])
            right = _path(U, data.xi[(c2, d2)], Iam[u])
            if left is not None and left == right:
                found.add(((c, d), (c2, d2), (u, v)))
    return found


def s_tilde_arrows(data: ReflectionData) -> set[Arrow]:
    """``{(source entry, target entry, (z, v, w))}`` over all arrow triples."""
    Sset = set(data.S)
    U = data.U.comp
    Iam, Jam = data.I.amap, data.J.amap
    found: set[Arrow] = set()
    for z, c, c2 in data.H.arrows:
        for v, d, d2 in data.K.arrows:
            y, y2 = (c, d), (c2, d2)
            if y not in Sset or y2 not in Sset:
                continue
            top_l = _path(U, Iam[z], data.chi[y])
            top_r = _path(U, data.chi[y2], Jam[v])
            if top_l is None or top_l != top_r:
                continue
            dw, dw2 = data.W[y][1], data.W[y2][1]
            for w, e, e2 in data.K.arrows:
                if (e, e2) != (dw, dw2):
                    continue
                bot_l = _path(U, Jam[w], data.xi[data.W[y]])
                bot_r = _path(U, data.xi[data.W[y2]], Iam[z])
                if bot_l is not None and bot_l == bot_r:
                    found.add((y, y2, (z, v, w)))
    return found


def builder_arrows(C, provenance, entries, width: int) -> set[Arrow]:
    """Recast a built category's arrows in the oracle's format."""
    by_name = {f"({x[0]},{x[1]})": x for x in entries}
    return {(by_name[s], by_name[t], tuple(provenance[a][:width])) for a, s, t in C.arrows}
