"""Finite approximations of the generic limit.

An approximation grows a level-0 structure by realizing one-point types on a
deterministic dovetailing schedule: rounds sweep (window, budget) blocks in
increasing window+budget, and each block enumerates every type over every
subset of the first ``window`` created points.  A ledger of realized tasks
keeps growth idempotent.  Partial isomorphisms extend by transporting the
type of a new point through the map and realizing it on the other side,
growing the approximation whenever no realizer exists yet.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .core import (Embedding, FinStruct, InputError, format_struct,
                   is_embedding, validate)
from .types import (OnePointType, enumerate_types, fresh_point_name,
                    realize_type)

TaskKey = tuple


def task_key(tau: OnePointType) -> TaskKey:
    return (tau.support, tau.cut, tuple(c.text() for c in tau.colors))


def _key_of_point(s: FinStruct, u: str, over_sorted: tuple[str, ...]) -> tuple:
    """The (support, cut, colors) key of an existing point over a sorted
    subset, computed without materializing the base restriction."""
    pos = s.index(u)
    cut = sum(1 for p in over_sorted if s.index(p) < pos)
    return (over_sorted, cut, tuple(s.color(p, u) for p in over_sorted))


class Approximation:
    """A growing finite stage of the generic limit.

    Owned by one logical actor at a time; all growth goes through
    :func:`grow`, :func:`extend_partial_iso` or :func:`embed`.
    """

    def __init__(self, seed: FinStruct | None = None, budget_cap: int = 2):
        seed = FinStruct.empty() if seed is None else seed
        if seed.level != 0:
            raise InputError("approximations live at level 0")
        v = validate(seed)
        if not v:
            raise InputError(f"invalid seed structure: {v.reason}")
        if budget_cap < 1:
            raise InputError("budget cap must be at least 1")
        self.current = seed
        self.budget_cap = budget_cap
        self.ledger: set[TaskKey] = set()
        self.birth: list[str] = list(seed.points)
        self.steps_done = 0
        self._tasks = self._schedule()

    # -- schedule -----------------------------------------------------------

    def _schedule(self) -> Iterator[OnePointType]:
        for total in itertools.count(1):
            for window in range(total):
                budget = total - window
                if budget > self.budget_cap:
                    continue
                first = self.birth[: min(window, len(self.birth))]
                order = {p: i for i, p in enumerate(first)}
                subsets = sorted(
                    (tuple(sorted(s, key=order.get))
                     for size in range(len(first) + 1)
                     for s in itertools.combinations(first, size)),
                    key=lambda s: (len(s), tuple(order[p] for p in s)))
                for subset in subsets:
                    supp = self.current.sorted_points(subset)
                    sub = self.current.restrict(supp)
                    for tau in enumerate_types(sub, 0, budget):
                        yield tau

    def realizer_of(self, tau: OnePointType) -> str | None:
        """Smallest point (in structure order) realizing the task, if any."""
        supp = set(tau.support)
        key = tau.key()
        for u in self.current.points:
            if u in supp:
                continue
            if _key_of_point(self.current, u, tau.support) == key:
                return u
        return None

    def realize(self, tau: OnePointType) -> str:
        new, u = realize_type(self.current, tau,
                              name=fresh_point_name(self.current))
        self.current = new
        self.birth.append(u)
        self.ledger.add(task_key(tau))
        return u

    def format(self, name: str = "approx") -> str:
        out = [format_struct(self.current, name), "ledger\n"]
        lines = sorted(
            f"task supp={','.join(supp)} cut={cut} colors={','.join(cols)}\n"
            for supp, cut, cols in self.ledger)
        return "".join(out) + "".join(lines)


def grow(a: Approximation, steps: int) -> Approximation:
    """Run ``steps`` schedule steps; each takes the next task and realizes
    it unless the ledger already covers it or a realizer already exists."""
    for _ in range(steps):
        tau = next(a._tasks)
        a.steps_done += 1
        key = task_key(tau)
        if key in a.ledger:
            continue
        if a.realizer_of(tau) is not None:
            a.ledger.add(key)
            continue
        a.realize(tau)
    return a


def saturation_check(a: Approximation, window: int, budget: int) -> bool:
    """Audit, by direct re-enumeration, that every budgeted type over every
    subset of the first ``window`` created points has a realizer.  A zero
    window inspects no subsets at all and holds vacuously."""
    if window == 0:
        return True
    first = a.birth[: min(window, len(a.birth))]
    for size in range(len(first) + 1):
        for subset in itertools.combinations(first, size):
            sub = a.current.restrict(a.current.sorted_points(subset))
            for tau in enumerate_types(sub, 0, budget):
                if a.realizer_of(tau) is None:
                    return False
    return True


# ---------------------------------------------------------------------------
# Partial isomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartialIso:
    """A finite order- and color-preserving partial bijection within one
    approximation, stored as (domain point, range point) pairs."""

    pairs: tuple[tuple[str, str], ...]

    def domain(self) -> tuple[str, ...]:
        return tuple(u for u, _ in self.pairs)

    def range(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.pairs)

    def fwd(self) -> dict[str, str]:
        return dict(self.pairs)

    def inverse(self) -> "PartialIso":
        return PartialIso(tuple((v, u) for u, v in self.pairs))

    def extended(self, u: str, v: str) -> "PartialIso":
        return PartialIso(self.pairs + ((u, v),))

    def check(self, s: FinStruct) -> bool:
        """Embedding in both directions within ``s``."""
        fwd = self.fwd()
        if len(fwd) != len(self.pairs) or len(set(fwd.values())) != len(fwd):
            return False
        if any(u not in s or v not in s for u, v in self.pairs):
            return False
        dom = s.restrict(fwd)
        rng = s.restrict(fwd.values())
        return (is_embedding(fwd, dom, rng)
                and is_embedding({v: u for u, v in self.pairs}, rng, dom))


def extend_partial_iso(a: Approximation, p: PartialIso,
                       u: str) -> tuple[Approximation, PartialIso]:
    """Extend a partial isomorphism to cover ``u``.

    Transports the type of ``u`` over the domain through the map and pairs
    ``u`` with the smallest realizer on the range side, growing the
    approximation when none exists yet.  Never fails.
    """
    if u not in a.current:
        raise InputError(f"unknown point {u!r}")
    fwd = p.fwd()
    if u in fwd:
        raise InputError(f"point {u!r} already in the domain")
    if not p.check(a.current):
        raise InputError("not a partial isomorphism")
    dom = a.current.sorted_points(fwd)
    _, cut, colors = _key_of_point(a.current, u, dom)
    mapped = tuple(fwd[d] for d in dom)
    if a.current.sorted_points(mapped) != mapped:
        raise InputError("map does not preserve the domain order")
    target = OnePointType.build(a.current.restrict(mapped), mapped, cut,
                                colors, a.current.level)
    key = target.key()
    taken = set(p.range())
    v = None
    for cand in a.current.points:
        if cand in taken or cand in mapped:
            continue
        if _key_of_point(a.current, cand, mapped) == key:
            v = cand
            break
    if v is None:
        v = a.realize(target)
    return a, p.extended(u, v)


def embed(a: Approximation, s: FinStruct) -> tuple[Approximation, Embedding]:
    """Embed a valid structure into the approximation point by point, each
    point realized as a type over the images of its predecessors."""
    v = validate(s)
    if not v:
        raise InputError(f"invalid structure: {v.reason}")
    if s.level != 0:
        raise InputError("only level-0 structures embed into an approximation")
    mapping: dict[str, str] = {}
    used: set[str] = set()
    for i, q in enumerate(s.points):
        preds = s.points[:i]
        images = tuple(mapping[p] for p in preds)
        colors = tuple(s.color(p, q) for p in preds)
        target = OnePointType.build(a.current.restrict(images), images,
                                    len(images), colors, 0)
        key = target.key()
        found = None
        for cand in a.current.points:
            if cand in used or cand in images:
                continue
            if _key_of_point(a.current, cand, images) == key:
                found = cand
                break
        mapping[q] = found if found is not None else a.realize(target)
        used.add(mapping[q])
    return a, Embedding.build(s, a.current, mapping)


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

def format_pairs(p: PartialIso) -> str:
    return "".join(f"pair {u} {v}\n" for u, v in p.pairs)


def parse_pairs(text: str) -> PartialIso:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] != "pair" or len(tok) != 3:
            raise InputError(f"line {lineno}: expected 'pair <id> <id>'")
        pairs.append((tok[1], tok[2]))
    return PartialIso(tuple(pairs))
