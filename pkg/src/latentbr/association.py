"""Association links between beliefs.

An interpretation map attaches (trigger, revealed) formula pairs to
literals.  From it, an association function assigns pair sets to arbitrary
formulas, relative to a context set X of currently held beliefs; the
attributive-belief set of a formula packages those pairs as triplets.

Formulas logically comparable to a subject (its consequences, or anything
entailing it) are excluded from its association pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .logic import (
    And,
    Formula,
    Not,
    Or,
    Universe,
    canonical,
    is_literal,
    literals_of,
    negate,
)

Pair = tuple[Formula, Formula]


class _AllPairs:
    """Marker for the association value of an inconsistent formula.

    Stands for the set of all formula pairs; it is never enumerated, only
    recognised and excluded by the attributive-belief guard.
    """

    def __repr__(self):
        return "ALL_PAIRS"

    def __reduce__(self):
        return (_all_pairs, ())


ALL_PAIRS = _AllPairs()


def _all_pairs():
    return ALL_PAIRS


@dataclass(frozen=True)
class BeliefTriplet:
    """An attributive belief: ``revealed`` surfaces as part of ``subject``
    once ``trigger`` is believed."""

    subject: Formula
    trigger: Formula
    revealed: Formula

    def __post_init__(self):
        object.__setattr__(self, "subject", canonical(self.subject))
        object.__setattr__(self, "trigger", canonical(self.trigger))
        object.__setattr__(self, "revealed", canonical(self.revealed))

    def __str__(self):
        return f"{self.subject}({self.trigger}, {self.revealed})"

    def __repr__(self):
        return str(self)


def in_exc(universe: Universe, p: Formula, q: Formula) -> bool:
    """Is ``q`` excluded from association with ``p``?

    True when either is a logical consequence of the other.
    """
    return universe.entails((p,), q) or universe.entails((q,), p)


class InterpretationMap:
    """Literal-level association links: literal -> set of (trigger, revealed).

    Keys are canonical literals; an atom and its negation may carry
    independent entries.
    """

    def __init__(self, entries: Mapping[Formula, Iterable[Pair]] | None = None):
        table: dict[Formula, frozenset[Pair]] = {}
        for lit, pairs in (entries or {}).items():
            lit = canonical(lit)
            if not is_literal(lit):
                raise ValueError(f"interpretation key must be a literal, got {lit}")
            normal = frozenset((canonical(a), canonical(b)) for a, b in pairs)
            if normal:
                table[lit] = table.get(lit, frozenset()) | normal
        self._table = table

    def pairs(self, lit: Formula) -> frozenset[Pair]:
        return self._table.get(lit, frozenset())

    def items(self):
        return self._table.items()

    def __bool__(self):
        return bool(self._table)

    def __eq__(self, other):
        return isinstance(other, InterpretationMap) and self._table == other._table

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self._table.items()))

    def __repr__(self):
        rows = ", ".join(f"{k}: {sorted(map(str, v))}" for k, v in sorted(self._table.items(), key=lambda kv: str(kv[0])))
        return f"InterpretationMap({{{rows}}})"


def validate_interpretation(universe: Universe, interp: InterpretationMap) -> list[tuple[Formula, Pair, str]]:
    """Every (literal, pair) entry whose pair touches the literal's
    exclusion set; empty means the map is valid."""
    violations = []
    for lit, pairs in interp.items():
        for pair in sorted(pairs, key=lambda p: (str(p[0]), str(p[1]))):
            for part, role in ((pair[0], "trigger"), (pair[1], "revealed")):
                if in_exc(universe, lit, part):
                    violations.append((lit, pair, f"{role} {part} is logically comparable to {lit}"))
    return violations


class AssociationContext:
    """Immutable association knowledge for one scenario.

    Bundles the universe, the interpretation map and the *material*: the
    canonical formulas declared anywhere in the scenario (bases, external
    information, triplet components).  From the material a finite family
    of candidate subjects is derived -- material, its negations, and
    pairwise conjunctions/disjunctions -- merged by logical equivalence
    and restricted to formulas that can carry association pairs at all.
    Memoisation caches live here and are safe under concurrent reads.
    """

    def __init__(self, universe: Universe, interp: InterpretationMap | None = None,
                 material: Iterable[Formula] = ()):
        self.universe = universe
        self.interp = interp or InterpretationMap()
        bad = validate_interpretation(universe, self.interp)
        if bad:
            lit, pair, why = bad[0]
            raise ValueError(f"invalid interpretation entry {lit}: {pair}: {why}")
        self.material = frozenset(canonical(f) for f in material)
        self.family: tuple[Formula, ...] = self._build_family()
        self._assoc_cache: dict[tuple[int, Formula], frozenset[Pair] | _AllPairs] = {}
        self._close_cache: dict = {}

    # -- family -------------------------------------------------------------

    def _relevant_literals(self) -> frozenset[Formula]:
        return frozenset(lit for lit, pairs in self.interp.items() if pairs)

    def _build_family(self) -> tuple[Formula, ...]:
        u = self.universe
        keys = self._relevant_literals()
        if not keys:
            return ()
        seeds: set[Formula] = set(self.material) | set(keys)
        for lit, pairs in self.interp.items():
            for a, b in pairs:
                seeds.add(a)
                seeds.add(b)
        base = set(seeds) | {negate(f) for f in seeds}
        combos: set[Formula] = set(base)
        items = sorted(base, key=lambda f: f.key())
        for i, a in enumerate(items):
            for b in items[i + 1 :]:
                combos.add(canonical(And(a, b)))
                combos.add(canonical(Or(a, b)))
        # keep one representative per truth table, smallest form first;
        # only formulas touching an interpretation key can carry pairs
        chosen: dict[int, Formula] = {}
        for f in sorted(combos, key=lambda f: (len(str(f)), f.key())):
            t = u.table(f)
            if t == 0 or t == u.full:
                continue
            if not (literals_of(f) & keys):
                continue
            chosen.setdefault(t, f)
        return tuple(sorted(chosen.values(), key=lambda f: f.key()))

    # -- association --------------------------------------------------------

    def tuple_at(self, x_models: int) -> "AssociationTuple":
        return AssociationTuple(self, x_models)

    def assoc(self, x_models: int, f: Formula) -> frozenset[Pair] | _AllPairs:
        g = canonical(f)
        key = (x_models, g)
        hit = self._assoc_cache.get(key)
        if hit is None:
            hit = self._assoc(x_models, g)
            self._assoc_cache[key] = hit
        return hit

    def _member(self, x_models: int, f: Formula) -> bool:
        return x_models & ~self.universe.table(f) == 0

    def _filter_exc(self, pairs: frozenset[Pair], w: Formula) -> frozenset[Pair]:
        u = self.universe
        return frozenset(
            (a, b)
            for a, b in pairs
            if not in_exc(u, w, a) and not in_exc(u, w, b)
        )

    def _assoc(self, x: int, f: Formula) -> frozenset[Pair] | _AllPairs:
        u = self.universe
        t = u.table(f)
        if t == u.full:
            return frozenset()
        if t == 0:
            return ALL_PAIRS
        if is_literal(f):
            return self.interp.pairs(f)
        if isinstance(f, And):
            va = self.assoc(x, f.left)
            vb = self.assoc(x, f.right)
            if va is ALL_PAIRS or vb is ALL_PAIRS:
                # reachable only under an inconsistent context, where the
                # both-disjuncts-held case applies to every disjunction;
                # the all-pairs marker absorbs through compounds
                return ALL_PAIRS
            return self._filter_exc(va | vb, f)
        if isinstance(f, Or):
            return self._assoc_or(x, f.left, f.right)
        raise TypeError(f"unexpected canonical formula {f!r}")

    def _assoc_or(self, x: int, p1: Formula, p2: Formula) -> frozenset[Pair] | _AllPairs:
        u = self.universe
        p1_in = self._member(x, p1)
        p2_in = self._member(x, p2)
        if p1_in and p2_in:
            return self.assoc(x, canonical(And(p1, p2)))
        n1_in = self._member(x, negate(p1))
        n2_in = self._member(x, negate(p2))
        if n2_in:
            return self.assoc(x, p1)
        if n1_in:
            return self.assoc(x, p2)
        both = canonical(And(p1, p2))
        if p1_in:
            v = self.assoc(x, p1)
            return v if v is ALL_PAIRS else self._filter_exc(v, both)
        if p2_in:
            v = self.assoc(x, p2)
            return v if v is ALL_PAIRS else self._filter_exc(v, both)
        # neither disjunct is determined: keep pairs both sides agree on,
        # triggers equivalent and reveals comparable (weaker one kept)
        v1 = self.assoc(x, p1)
        v2 = self.assoc(x, p2)
        if v1 is ALL_PAIRS or v2 is ALL_PAIRS:
            # an inconsistent disjunct with undetermined context membership
            # can only arise when X itself is inconsistent; handled above
            return ALL_PAIRS
        out: set[Pair] = set()
        for pa, ra in v1:
            for pb, rb in v2:
                if not u.equivalent(pa, pb):
                    continue
                if u.entails((ra,), rb):
                    reveal = rb
                elif u.entails((rb,), ra):
                    reveal = ra
                else:
                    continue
                if in_exc(u, both, pa) or in_exc(u, both, reveal):
                    continue
                out.add((pa, reveal))
        return frozenset(out)

    def cond(self, x_models: int, f: Formula) -> frozenset[BeliefTriplet]:
        """Attributive beliefs of ``f``: its association pairs as triplets.

        Empty for tautological and inconsistent formulas.
        """
        pairs = self.assoc(x_models, f)
        if pairs is ALL_PAIRS or not pairs:
            return frozenset()
        g = canonical(f)
        return frozenset(BeliefTriplet(g, a, b) for a, b in pairs)


class AssociationTuple:
    """An interpretation map plus a context set, with the derived
    association function."""

    def __init__(self, context: AssociationContext, x_models: int):
        self.context = context
        self.x_models = x_models

    @classmethod
    def over(cls, context: AssociationContext, x_formulas: Iterable[Formula]) -> "AssociationTuple":
        return cls(context, context.universe.conjoin_tables(x_formulas))

    @property
    def interp(self) -> InterpretationMap:
        return self.context.interp

    def member(self, f: Formula) -> bool:
        return self.context._member(self.x_models, f)

    def assoc(self, f: Formula) -> frozenset[Pair] | _AllPairs:
        return self.context.assoc(self.x_models, f)

    def cond(self, f: Formula) -> frozenset[BeliefTriplet]:
        return self.context.cond(self.x_models, f)
