"""Belief-change operators: expansion, partial-meet contraction, revision.

Contraction enumerates the maximal subsets of a belief set that drop every
non-tautological visible formula and restore the original set when those
formulas are added back; a selection function picks among them and their
intersection is re-closed.  Revision contracts by the negated visible set
and expands with the visible set plus its attributive payload.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Sequence

from .association import BeliefTriplet
from .beliefs import (
    BeliefSet,
    ExternalInfo,
    Info,
    Package,
    close_models,
    visible,
    visible_neg,
)
from .logic import And, Formula, canonical, negate

DEFAULT_WORK_LIMIT = 500_000


class WorkLimitExceeded(RuntimeError):
    """Remainder enumeration exceeded the configured work budget."""

    def __init__(self, limit: int):
        super().__init__(f"remainder enumeration exceeded {limit} candidate evaluations")
        self.limit = limit


# ---------------------------------------------------------------------------
# Selection functions


class SelectionFunction:
    def select(self, delta: Sequence[BeliefSet]) -> list[BeliefSet]:
        raise NotImplementedError


class SelectAll(SelectionFunction):
    """Full meet: keep every maximal subset."""

    def select(self, delta):
        return list(delta)

    def __repr__(self):
        return "SelectAll()"


class PreferenceOrder(SelectionFunction):
    """Total pre-order induced by an ordered formula list.

    Candidates retaining earlier-listed formulas rank higher (lexicographic
    on the retained-bit vector); all maximal candidates are kept.
    """

    def __init__(self, formulas: Iterable[Formula]):
        self.formulas = tuple(canonical(f) for f in formulas)

    def key(self, bs: BeliefSet) -> tuple[int, ...]:
        return tuple(1 if bs.member(f) else 0 for f in self.formulas)

    def select(self, delta):
        best = max(self.key(bs) for bs in delta)
        return [bs for bs in delta if self.key(bs) == best]

    def __repr__(self):
        return f"PreferenceOrder([{', '.join(map(str, self.formulas))}])"


class ExplicitSelection(SelectionFunction):
    """Wraps an arbitrary chooser; its output must be a nonempty subset."""

    def __init__(self, chooser: Callable[[Sequence[BeliefSet]], Sequence[BeliefSet]]):
        self.chooser = chooser

    def select(self, delta):
        picked = list(self.chooser(delta))
        if not picked or any(bs not in delta for bs in picked):
            raise ValueError("selection must be a nonempty subset of the remainder set")
        return picked


SELECT_ALL = SelectAll()


def select(sel: SelectionFunction, delta: Sequence[BeliefSet], fallback: BeliefSet) -> list[BeliefSet]:
    """Apply a selection function; an empty remainder set yields the
    original belief set."""
    if not delta:
        return [fallback]
    return sel.select(delta)


# ---------------------------------------------------------------------------
# Expansion


def expand(bs: BeliefSet, info: Info) -> BeliefSet:
    """Union with the incoming information, then close.

    The union may trigger latent beliefs; the result can be inconsistent.
    """
    u = bs.universe
    models = bs.models & u.conjoin_tables(info.formulas)
    pool = bs.pool | info.triplets
    return close_models(bs.context, models, pool)


# ---------------------------------------------------------------------------
# Remainders


def remainders(bs: BeliefSet, info: Info,
               work_limit: int = DEFAULT_WORK_LIMIT) -> list[BeliefSet]:
    """All maximal subsets of ``bs`` for the visible part of ``info``.

    A remainder is a closed subset containing no non-tautological visible
    formula, maximal among such, that re-closes to ``bs`` when the removed
    visible beliefs are added back.  Exact enumeration over model-set
    supersets, smallest additions first; returns a deterministic order.
    """
    u = bs.universe
    ctx = bs.context
    vis = visible(bs, info)
    nontaut = [v for v in vis if not u.is_tautology(v)]
    if not nontaut:
        return []
    removed = [v for v in vis if bs.member(v)]
    mtab = u.conjoin_tables(removed)
    need = [u.full & ~u.table(v) for v in nontaut if bs.member(v)]

    # candidate models: those violating a removed belief, plus "riders"
    # that satisfy all of them but get cut away again on re-closure
    # (collapse is downward closed, so the singleton test is exact)
    witnesses = u.full & ~mtab & ~bs.models
    domain = [m for m in range(u.n_models) if (witnesses >> m) & 1]
    for m in range(u.n_models):
        bit = 1 << m
        if mtab & bit and not bs.models & bit:
            if close_models(ctx, bs.models | bit, bs.pool).models == bs.models:
                domain.append(m)
    domain.sort()
    budget = work_limit

    accepted: list[tuple[frozenset[int], int]] = []  # (blocking set, model bitmap)
    delta: list[BeliefSet] = []

    def examine(members: tuple[int, ...]) -> bool:
        t_mask = 0
        for m in members:
            t_mask |= 1 << m
        s_mask = bs.models | t_mask
        if any(s_mask & n == 0 for n in need):
            return False
        closed = close_models(ctx, s_mask, bs.pool)
        if closed.models != s_mask:
            return False
        accepted.append((frozenset(members), s_mask))
        # adding back the removed beliefs must restore the original set
        if close_models(ctx, bs.models | (t_mask & mtab), bs.pool) == bs:
            delta.append(closed)
        return True

    # size 0: bs itself, when nothing visible is held
    if not need:
        examine(())
    size = 1
    free = list(domain)
    while size <= len(free):
        survivors = False
        blockers = [a for a, _ in accepted if len(a) < size]
        for combo in combinations(free, size):
            budget -= 1
            if budget < 0:
                raise WorkLimitExceeded(work_limit)
            cs = set(combo)
            if any(b <= cs for b in blockers):
                continue
            survivors = True
            examine(combo)
        if not survivors:
            break
        # anything containing an accepted singleton can never be maximal
        single_hits = {next(iter(a)) for a, _ in accepted if len(a) == 1}
        free = [m for m in free if m not in single_hits]
        size += 1
    delta.sort(key=lambda r: r.models)
    return delta


# ---------------------------------------------------------------------------
# Contraction and revision


def meet(sets: Sequence[BeliefSet], pool: frozenset[BeliefTriplet]) -> BeliefSet:
    """Intersection of belief sets: model-set union, re-closed so the
    attributive component is recomputed for the resulting context."""
    if not sets:
        raise ValueError("meet of no belief sets")
    ctx = sets[0].context
    models = 0
    for s in sets:
        models |= s.models
    return close_models(ctx, models, pool)


def contract(bs: BeliefSet, info: Info, sel: SelectionFunction = SELECT_ALL,
             work_limit: int = DEFAULT_WORK_LIMIT) -> BeliefSet:
    delta = remainders(bs, info, work_limit=work_limit)
    chosen = select(sel, delta, bs)
    return meet(chosen, bs.pool)


def revise(bs: BeliefSet, info: Info, sel: SelectionFunction = SELECT_ALL,
           work_limit: int = DEFAULT_WORK_LIMIT) -> BeliefSet:
    """Contract by the negated visible set, then expand with the visible
    set and its attributive payload.  Latent triggering may still leave
    the result inconsistent."""
    vis = visible(bs, info)
    contracted = contract(bs, Package(visible_neg(bs, info)), sel, work_limit=work_limit)
    return expand(contracted, Package(vis, info.triplets))


def substitute_conjunct(bs: BeliefSet, info: Info, conj: Formula, side: str) -> frozenset[Formula]:
    """The visible set with a top-level conjunction replaced by one conjunct."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    vis = visible(bs, info)
    c = canonical(conj)
    if c not in vis:
        raise ValueError(f"{c} is not a visible conjunction of this information")
    if not isinstance(c, And):
        raise ValueError(f"{c} is not a conjunction")
    repl = c.left if side == "left" else c.right
    return frozenset(vis - {c}) | {repl}
