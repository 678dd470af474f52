"""The one-point-extension functor on colored linear orders.

``apply_K`` extends a structure by one new element per budgeted type: the
original points keep their order and colors, each type element is placed at
its minimal consistent position and ordered against other type elements by
an explicit four-rule comparison, colors between a type element and an
unsupported base point use the next level's marker, and colors between two
type elements encode the isomorphism class of their joint configuration.
The morphism map transports types along embeddings, making the whole thing
a functor that raises the level by one.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .core import (ColorTerm, Embedding, FinStruct, InputError, code_of_parts,
                   color_less, format_struct, pair_of, validate)
from .types import (OnePointType, enumerate_types, format_type,
                    insert_position, transport)

LT = -1
EQ = 0
GT = 1


def gap_index(tau: OnePointType) -> int:
    """Position of the type's element among the base points: the number of
    base points below it under the minimal consistent placement."""
    return insert_position(tau.base, tau.support, tau.cut)


def order_type_vs_point(tau: OnePointType, v: str) -> int:
    """LT if the type's element comes before ``v``, GT if after.

    On support points the cut dictates the answer; elsewhere the element is
    placed as low as transitivity through the below-cut support allows.
    """
    if v not in tau.base:
        raise InputError(f"unknown base point {v!r}")
    return GT if tau.base.index(v) < gap_index(tau) else LT


def compare_types(xi: OnePointType, psi: OnePointType) -> int:
    """Strict total order on types over one base.

    Applies, in order: separation by a base point, support size, the largest
    point of the support symmetric difference, and the color at the largest
    support point where the colorings disagree.
    """
    if xi.base != psi.base:
        raise InputError("types over different bases are incomparable")
    if xi.key() == psi.key():
        return EQ
    g1, g2 = gap_index(xi), gap_index(psi)
    if g1 != g2:                                   # (1) a base point separates
        return LT if g1 < g2 else GT
    if len(xi.support) != len(psi.support):        # (2) support size
        return LT if len(xi.support) < len(psi.support) else GT
    diff = set(xi.support) ^ set(psi.support)
    if diff:                                       # (3) largest difference point
        top = max(diff, key=xi.base.index)
        return LT if top in xi.support else GT
    for p in reversed(xi.support):                 # (4) color at largest disagreement
        c1, c2 = xi.color_of(p), psi.color_of(p)
        if c1 != c2:
            return LT if color_less(c1, c2) else GT
    raise AssertionError("distinct types with identical data")


# ---------------------------------------------------------------------------
# Pair structures and pair colors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairStructure:
    """The joint configuration of two type elements: their support union
    with both elements inserted, all colors except the undefined one between
    the two marks."""

    points: tuple[str, ...]
    colors: Mapping[frozenset, ColorTerm]  # total except the marked pair
    marked: tuple[str, str]                # lower mark first

    def code(self) -> str:
        pos = {p: i for i, p in enumerate(self.points)}
        texts = []
        hole = pair_of(*self.marked)
        for i, j in itertools.combinations(range(len(self.points)), 2):
            key = pair_of(self.points[i], self.points[j])
            texts.append("?" if key == hole else self.colors[key].text())
        return code_of_parts(len(self.points),
                             texts, (pos[self.marked[0]], pos[self.marked[1]]))


def _mark_ids(taken: set[str]) -> tuple[str, str]:
    stem = "!"
    while stem + "0" in taken or stem + "1" in taken:
        stem += "!"
    return stem + "0", stem + "1"


def pair_structure(xi: OnePointType, psi: OnePointType) -> PairStructure:
    """Build the marked structure of a pair of distinct types, ordering the
    marks by the ambient type order."""
    cmp = compare_types(xi, psi)
    if cmp == EQ:
        raise InputError("pair structure requires two distinct types")
    lo, hi = (xi, psi) if cmp == LT else (psi, xi)
    base = xi.base
    union = base.sorted_points(set(xi.support) | set(psi.support))
    m_lo, m_hi = _mark_ids(set(union))
    marker = ColorTerm.marker(base.level + 1)

    seq: list[str] = []
    placed = {m_lo: sum(1 for u in union if order_type_vs_point(lo, u) == GT),
              m_hi: sum(1 for u in union if order_type_vs_point(hi, u) == GT)}
    for gap in range(len(union) + 1):
        if placed[m_lo] == gap:
            seq.append(m_lo)
        if placed[m_hi] == gap:
            seq.append(m_hi)
        if gap < len(union):
            seq.append(union[gap])

    colors: dict[frozenset, ColorTerm] = {}
    for u, v in itertools.combinations(union, 2):
        colors[pair_of(u, v)] = base.color(u, v)
    for mark, tau in ((m_lo, lo), (m_hi, hi)):
        supp = set(tau.support)
        for u in union:
            colors[pair_of(u, mark)] = tau.color_of(u) if u in supp else marker
    return PairStructure(tuple(seq), colors, (m_lo, m_hi))


def pair_color(xi: OnePointType, psi: OnePointType) -> ColorTerm:
    """The color between two type elements: a pair-class color whose payload
    is the canonical code of their joint configuration.  Equivalent pairs,
    and pairs carried into each other by embeddings, receive the same color;
    inequivalent pairs receive distinct colors; no base color is consumed.
    """
    code = pair_structure(xi, psi).code()
    return ColorTerm.pair_code(xi.base.level + 1, code.encode("utf-8").hex())


def pair_equivalent(p1: PairStructure, p2: PairStructure) -> bool:
    return p1.code() == p2.code()


# ---------------------------------------------------------------------------
# The object and morphism maps
# ---------------------------------------------------------------------------

class _ExtensionColors(Mapping):
    """Total coloring of an extended structure.

    Base-base and base-type colors are stored eagerly; colors between two
    type elements are computed on first access, so large extensions stay
    usable as long as only a sparse set of their pairs is inspected.
    """

    def __init__(self, points: tuple[str, ...], eager: dict,
                 types_by_id: dict[str, OnePointType]):
        self._points = points
        self._eager = eager
        self._types = types_by_id
        self._cache: dict[frozenset, ColorTerm] = {}

    def __getitem__(self, key: frozenset) -> ColorTerm:
        got = self._eager.get(key)
        if got is not None:
            return got
        got = self._cache.get(key)
        if got is not None:
            return got
        ids = tuple(key)
        if len(ids) == 2 and ids[0] in self._types and ids[1] in self._types:
            val = pair_color(self._types[ids[0]], self._types[ids[1]])
            self._cache[key] = val
            return val
        raise KeyError(key)

    def __iter__(self) -> Iterator[frozenset]:
        for u, v in itertools.combinations(self._points, 2):
            yield pair_of(u, v)

    def __len__(self) -> int:
        n = len(self._points)
        return n * (n - 1) // 2


@dataclass(frozen=True)
class ExtendedStructure:
    """Result of one functor application: the base structure together with
    one element per budgeted type, as a structure one level up."""

    base: FinStruct
    struct: FinStruct
    elements: tuple[tuple[str, OnePointType], ...]  # (element id, type), in type order

    def element_ids(self) -> tuple[str, ...]:
        return tuple(tid for tid, _ in self.elements)

    def type_of(self, tid: str) -> OnePointType:
        for t, tau in self.elements:
            if t == tid:
                return tau
        raise InputError(f"no type element {tid!r}")


def apply_K(x: FinStruct, budget: int) -> ExtendedStructure:
    """Extend ``x`` by every budgeted type over it.

    The output restricted to ``x`` is ``x`` itself; every new element
    realizes exactly its defining type; the result is valid one level up.
    """
    v = validate(x)
    if not v:
        raise InputError(f"invalid structure: {v.reason}")
    level = x.level + 1
    taus = enumerate_types(x, x.level, budget)

    used = set(x.points)
    ids: list[str] = []
    for i in range(len(taus)):
        tid = f"t{i}"
        while tid in used:
            tid += "'"
        used.add(tid)
        ids.append(tid)

    by_gap: dict[int, list[str]] = defaultdict(list)
    for tid, tau in zip(ids, taus):
        by_gap[gap_index(tau)].append(tid)
    points: list[str] = []
    for gap in range(len(x.points) + 1):
        points.extend(by_gap.get(gap, ()))
        if gap < len(x.points):
            points.append(x.points[gap])

    marker = ColorTerm.marker(level)
    eager: dict[frozenset, ColorTerm] = {}
    for u, w in x.pairs():
        eager[pair_of(u, w)] = x.color(u, w)
    for tid, tau in zip(ids, taus):
        supp = set(tau.support)
        for u in x.points:
            eager[pair_of(u, tid)] = tau.color_of(u) if u in supp else marker

    types_by_id = dict(zip(ids, taus))
    struct = FinStruct(tuple(points), _ExtensionColors(tuple(points), eager, types_by_id), level)
    return ExtendedStructure(x, struct, tuple(zip(ids, taus)))


def apply_K_morphism(e: Embedding, budget: int) -> Embedding:
    """The functor on embeddings: base points map as before, the element of
    a type maps to the element of the transported type."""
    kx = apply_K(e.source, budget)
    ky = apply_K(e.target, budget)
    lookup = {tau.key(): tid for tid, tau in ky.elements}
    mapping = dict(e.mapping)
    for tid, tau in kx.elements:
        image = transport(tau, e.as_dict, e.target)
        try:
            mapping[tid] = lookup[image.key()]
        except KeyError:
            raise AssertionError("transported type missing from the target extension")
    return Embedding.build(kx.struct, ky.struct, mapping)


def iterate_K(x: FinStruct, stages: int, budgets: Sequence[int]) -> list[ExtendedStructure]:
    """Iterate the functor, raising the level once per stage.  Each stage's
    base embeds into the next by inclusion."""
    if len(budgets) != stages:
        raise InputError(f"need {stages} budgets, got {len(budgets)}")
    chain: list[ExtendedStructure] = []
    cur = x
    for b in budgets:
        ext = apply_K(cur, b)
        chain.append(ext)
        cur = ext.struct
    return chain


def format_extended(ext: ExtendedStructure, name: str = "K") -> str:
    out = format_struct(ext.struct, name)
    lines = ["types"]
    lines.extend(f"{tid} {format_type(tau)}" for tid, tau in ext.elements)
    return out + "\n".join(lines) + "\n"
