"""Belief bases, belief sets and the latent-triggering closure.

A belief set is the fixpoint of alternating classical consequence with
latent-belief triggering: attributive beliefs whose trigger is currently
held contribute their revealed formula to the next round.  The first
component is kept extensionally as a model-set bitmap; the triplet
component collects the attributive beliefs of all held formulas, drawn
from the scenario's explicitly introduced triplets (the pool) and from
the interpretation map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .association import AssociationContext, AssociationTuple, BeliefTriplet
from .logic import Formula, canonical, negate


@dataclass(frozen=True)
class BeliefBase:
    """Finite presentation: explicit formulas plus explicit triplets."""

    formulas: frozenset[Formula]
    triplets: frozenset[BeliefTriplet] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "formulas", frozenset(canonical(f) for f in self.formulas))
        object.__setattr__(self, "triplets", frozenset(self.triplets))


@dataclass(frozen=True)
class ExternalInfo:
    """Incoming information: one essence proposition, always accepted,
    plus attributive triplets that surface only when triggered."""

    essence: Formula
    attributes: frozenset[BeliefTriplet] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "essence", canonical(self.essence))
        object.__setattr__(self, "attributes", frozenset(self.attributes))
        for t in self.attributes:
            if t.subject != self.essence:
                raise ValueError(f"attribute {t} is not attributive to {self.essence}")

    @property
    def formulas(self) -> frozenset[Formula]:
        return frozenset((self.essence,))

    @property
    def triplets(self) -> frozenset[BeliefTriplet]:
        return self.attributes

    def __str__(self):
        attrs = ", ".join(sorted(map(str, self.attributes)))
        return f"({{{self.essence}}}, {{{attrs}}})"


@dataclass(frozen=True)
class Package:
    """A bare formula set used as a belief-change argument.

    Its visible part is the formula set itself; ``triplets`` ride along
    as attributive payload for expansion.
    """

    formulas: frozenset[Formula]
    triplets: frozenset[BeliefTriplet] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "formulas", frozenset(canonical(f) for f in self.formulas))
        object.__setattr__(self, "triplets", frozenset(self.triplets))

    def __str__(self):
        return "({%s}, %d triplets)" % (", ".join(sorted(map(str, self.formulas))), len(self.triplets))


Info = ExternalInfo | Package


class BeliefSet:
    """A closed belief state over one association context.

    ``models`` is the bitmap of assignments satisfying every held formula;
    a formula is a member iff it is true in all of them.  ``triplets`` is
    the attributive component; ``pool`` carries every explicitly
    introduced triplet, whether currently surfaced or not.

    Equality is extensional: same models and same triplets.
    """

    __slots__ = ("context", "models", "triplets", "pool", "_hash")

    def __init__(self, context: AssociationContext, models: int,
                 triplets: frozenset[BeliefTriplet], pool: frozenset[BeliefTriplet]):
        self.context = context
        self.models = models
        self.triplets = triplets
        self.pool = pool
        self._hash = None

    # -- membership ----------------------------------------------------------

    def member(self, f: Formula) -> bool:
        return self.models & ~self.context.universe.table(f) == 0

    def is_consistent(self) -> bool:
        return self.models != 0

    @property
    def universe(self):
        return self.context.universe

    @property
    def tuple(self) -> AssociationTuple:
        return self.context.tuple_at(self.models)

    def members_of(self, candidates: Iterable[Formula]) -> list[Formula]:
        return [f for f in candidates if self.member(f)]

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, BeliefSet)
            and self.models == other.models
            and self.triplets == other.triplets
            and self.context.universe is other.context.universe
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.models, self.triplets))
        return self._hash

    def __repr__(self):
        n = bin(self.models).count("1")
        return f"<BeliefSet {n} models, {len(self.triplets)} triplets>"

    # -- reporting -----------------------------------------------------------

    def report(self, basis: Iterable[Formula]) -> dict:
        """Members over a print basis plus the triplet partition."""
        seen: set[Formula] = set()
        members = []
        for f in basis:
            g = canonical(f)
            if g in seen:
                continue
            seen.add(g)
            if self.member(g):
                members.append(str(g))
        triggered = sorted(str(t) for t in self.triplets if self.member(t.trigger))
        latent = sorted(str(t) for t in self.triplets if not self.member(t.trigger))
        return {
            "consistent": self.is_consistent(),
            "members": members,
            "triplets": {"triggered": triggered, "latent": latent},
        }


# ---------------------------------------------------------------------------
# Closure


def close_models(context: AssociationContext, models: int,
                 pool: frozenset[BeliefTriplet],
                 log: list | None = None) -> BeliefSet:
    """Fixpoint closure starting from a model set.

    Each round surfaces the attributive beliefs of all held formulas, then
    conjoins every revealed formula whose trigger is held.  The model set
    only shrinks, so the iteration terminates.
    """
    cache = context._close_cache
    key = (models, pool)
    if log is None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    u = context.universe
    current = models
    while True:
        triplets = _surfaced(context, current, pool)
        narrowed = current
        fired = []
        for t in triplets:
            if current & ~u.table(t.trigger) == 0:
                narrowed &= u.table(t.revealed)
                fired.append(t)
        if narrowed == current:
            bs = BeliefSet(context, current, triplets, pool)
            cache[key] = bs
            return bs
        if log is not None:
            # one entry per formula newly revealed this round; prefer an
            # explicitly introduced triplet over derived variants
            news: dict[Formula, BeliefTriplet] = {}
            for t in fired:
                if current & ~u.table(t.revealed) == 0:
                    continue
                rank = (t not in pool, len(str(t)), str(t))
                old = news.get(t.revealed)
                if old is None or rank < (old not in pool, len(str(old)), str(old)):
                    news[t.revealed] = t
            log.extend(news[r] for r in sorted(news, key=str))
        current = narrowed


def _surfaced(context: AssociationContext, models: int,
              pool: frozenset[BeliefTriplet]) -> frozenset[BeliefTriplet]:
    """Attributive beliefs of every held formula: pooled triplets whose
    subject is held, plus interpretation-derived ones over the family."""
    u = context.universe
    out = {t for t in pool if models & ~u.table(t.subject) == 0}
    for f in context.family:
        if models & ~u.table(f) == 0:
            out |= context.cond(models, f)
    return frozenset(out)


def close(context: AssociationContext, base: BeliefBase,
          log: list | None = None) -> BeliefSet:
    models = context.universe.conjoin_tables(base.formulas)
    return close_models(context, models, base.triplets, log=log)


# ---------------------------------------------------------------------------
# Visibility


def visible(bs: BeliefSet, info: Info) -> frozenset[Formula]:
    """The part of ``info`` perceptible to ``bs``: its formulas plus every
    revealed formula whose trigger is already held."""
    out = set(info.formulas)
    if isinstance(info, ExternalInfo):
        out |= {t.revealed for t in info.attributes if bs.member(t.trigger)}
    return frozenset(out)


def visible_neg(bs: BeliefSet, info: Info) -> frozenset[Formula]:
    return frozenset(negate(f) for f in visible(bs, info))


def adequacy_check(bs: BeliefSet) -> bool:
    """Attributive beliefs only for held subjects."""
    return all(bs.member(t.subject) for t in bs.triplets)
