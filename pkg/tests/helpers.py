"""Brute-force oracles for the test suite.

Everything here is written directly from the definitions (exhaustive search,
no reuse of the library's enumeration or comparison logic) so that library
results can be checked against an independent source of truth.
"""

from __future__ import annotations

import itertools

from colorder.core import ColorTerm, FinStruct, pair_of

POINT_NAMES = "abcdefgh"


def base_colors(n: int) -> list[ColorTerm]:
    return [ColorTerm.base(0, i) for i in range(n)]


def has_mono_triangle(points, colorfn) -> bool:
    for u, v, w in itertools.combinations(points, 3):
        if colorfn(u, v) == colorfn(u, w) == colorfn(v, w):
            return True
    return False


def all_structures(max_size: int, num_colors: int, level: int = 0) -> list[FinStruct]:
    """Every valid structure on up to max_size named points over the first
    num_colors level-0 base colors."""
    out = []
    palette = base_colors(num_colors)
    for n in range(max_size + 1):
        pts = tuple(POINT_NAMES[:n])
        pairs = list(itertools.combinations(pts, 2))
        for assignment in itertools.product(palette, repeat=len(pairs)):
            cmap = {pair_of(u, v): c for (u, v), c in zip(pairs, assignment)}
            if has_mono_triangle(pts, lambda u, v: cmap[pair_of(u, v)]):
                continue
            out.append(FinStruct(pts, cmap, level))
    return out


def brute_force_types(x: FinStruct, level: int, budget: int):
    """Independent enumeration of (support, cut, colors) triples: build each
    candidate extension literally and scan every triangle in it."""
    pool = [ColorTerm.base(l, n) for l in range(level + 1) for n in range(budget)]
    pool += sorted({c for c in x.colors.values()
                    if c.kind != "b" and c.level <= level},
                   key=ColorTerm.sort_key)
    found = []
    for size in range(len(x.points) + 1):
        for supp in itertools.combinations(x.points, size):
            for cut in range(size + 1):
                for cols in itertools.product(pool, repeat=size):
                    by_point = dict(zip(supp, cols))
                    pts = list(supp)
                    pts.insert(cut, "*")

                    def colorfn(u, v):
                        if u == "*":
                            return by_point[v]
                        if v == "*":
                            return by_point[u]
                        return x.color(u, v)

                    if not has_mono_triangle(pts, colorfn):
                        found.append((supp, cut, tuple(cols)))
    return found


def marked_isomorphic(s: FinStruct, ms, t: FinStruct, mt) -> bool:
    """Search all bijections for one preserving order, colors and marks."""
    if len(s.points) != len(t.points) or len(ms) != len(mt):
        return False
    for perm in itertools.permutations(t.points):
        m = dict(zip(s.points, perm))
        if any(t.index(m[u]) >= t.index(m[v]) for u, v in s.pairs()):
            continue
        if any(t.color(m[u], m[v]) != s.color(u, v) for u, v in s.pairs()):
            continue
        if all(m[a] == b for a, b in zip(ms, mt)):
            return True
    return False


def all_embeddings(s: FinStruct, t: FinStruct) -> list[dict]:
    """All order- and color-preserving injections of s into t."""
    out = []
    for image in itertools.combinations(t.points, len(s.points)):
        m = dict(zip(s.points, image))
        if all(t.color(m[u], m[v]) == s.color(u, v) for u, v in s.pairs()):
            out.append(m)
    return out


def consistent_placements(base: FinStruct, support, cut: int) -> list[int]:
    """All insertion positions for a new point that agree with its cut over
    the support."""
    ok = []
    for pos in range(len(base.points) + 1):
        if all((base.index(sp) < pos) == (i < cut)
               for i, sp in enumerate(support)):
            ok.append(pos)
    return ok
