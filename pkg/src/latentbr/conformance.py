"""Randomized conformance harness for the belief-change operators.

Generates bounded scenario instances deterministically from seeds, checks
every expansion/contraction/revision postulate on each (recording whether
the postulate's antecedent actually fired), verifies the representation
and identity equations by recomputing both sides, and searches for
concrete witnesses of the non-recovery, non-identity and
inconsistency-upon-revision phenomena.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .association import AssociationContext, BeliefTriplet, InterpretationMap, in_exc
from .beliefs import (
    BeliefBase,
    BeliefSet,
    ExternalInfo,
    Package,
    adequacy_check,
    close,
    close_models,
    visible,
    visible_neg,
)
from .logic import And, Formula, Not, Or, Universe, canonical, negate
from .operators import (
    SELECT_ALL,
    PreferenceOrder,
    SelectionFunction,
    WorkLimitExceeded,
    contract,
    expand,
    meet,
    remainders,
    revise,
    select,
    substitute_conjunct,
)

PASS = "pass"
FAIL = "fail"
NA = "not_applicable"


@dataclass(frozen=True)
class Bounds:
    atoms: int = 4
    base_formulas: int = 4
    interp_entries: int = 4
    depth: int = 3


@dataclass
class ScenarioInstance:
    seed: int
    universe: Universe
    interp: InterpretationMap
    base: BeliefBase
    info: ExternalInfo
    preorders: tuple[PreferenceOrder, ...]
    context: AssociationContext

    _bs: BeliefSet | None = field(default=None, repr=False)

    def belief_set(self) -> BeliefSet:
        if self._bs is None:
            self._bs = close(self.context, self.base)
        return self._bs

    def render(self) -> dict:
        return {
            "seed": self.seed,
            "atoms": [a.name for a in self.universe.atoms],
            "interp": {
                str(lit): sorted(f"({a}, {b})" for a, b in pairs)
                for lit, pairs in self.interp.items()
            },
            "base_formulas": sorted(str(f) for f in self.base.formulas),
            "base_triplets": sorted(str(t) for t in self.base.triplets),
            "info": str(self.info),
            "preorders": [[str(f) for f in p.formulas] for p in self.preorders],
        }


# ---------------------------------------------------------------------------
# Generation


def _random_formula(rng: random.Random, universe: Universe, depth: int) -> Formula:
    atoms = universe.atoms
    r = rng.random()
    if depth <= 0 or r < 0.42:
        a = rng.choice(atoms)
        return a if rng.random() < 0.6 else Not(a)
    if r < 0.68:
        return And(_random_formula(rng, universe, depth - 1), _random_formula(rng, universe, depth - 1))
    if r < 0.94:
        return Or(_random_formula(rng, universe, depth - 1), _random_formula(rng, universe, depth - 1))
    return Not(_random_formula(rng, universe, depth - 1))


def _random_triplet(rng: random.Random, universe: Universe, subject: Formula,
                    depth: int) -> BeliefTriplet | None:
    for _ in range(8):
        trig = canonical(_random_formula(rng, universe, depth - 1))
        rev = canonical(_random_formula(rng, universe, depth - 1))
        if in_exc(universe, subject, trig) or in_exc(universe, subject, rev):
            continue
        return BeliefTriplet(subject, trig, rev)
    return None


def _base_material(base: BeliefBase, interp: InterpretationMap) -> set[Formula]:
    out = set(base.formulas)
    for t in base.triplets:
        out |= {t.subject, t.trigger, t.revealed}
    return out


def generate(seed: int, bounds: Bounds = Bounds()) -> ScenarioInstance:
    """Deterministic per seed; interpretation entries are filtered so the
    map is valid by construction, and the initial belief set (with latent
    triggering applied) is consistent."""
    rng = random.Random(seed)
    lo = min(2, bounds.atoms)
    n = rng.choices(range(lo, bounds.atoms + 1),
                    weights=[1.0 + 0.4 * (bounds.atoms - k) for k in range(lo, bounds.atoms + 1)])[0]
    universe = Universe([f"p{i}" for i in range(n)])

    entries: dict[Formula, set[tuple[Formula, Formula]]] = {}
    for _ in range(rng.randint(0, bounds.interp_entries)):
        a = rng.choice(universe.atoms)
        lit = a if rng.random() < 0.7 else canonical(Not(a))
        pairs = entries.setdefault(lit, set())
        for _ in range(rng.randint(1, 2)):
            trig = canonical(_random_formula(rng, universe, bounds.depth - 1))
            rev = canonical(_random_formula(rng, universe, bounds.depth - 1))
            if in_exc(universe, lit, trig) or in_exc(universe, lit, rev):
                continue
            pairs.add((trig, rev))
    interp = InterpretationMap({k: v for k, v in entries.items() if v})

    # the postulate theory is about consistent initial belief sets; keep
    # drawing until the closed base (triggering included) is consistent
    base = BeliefBase(frozenset())
    for _ in range(60):
        base_formulas = {
            canonical(_random_formula(rng, universe, bounds.depth))
            for _ in range(rng.randint(0, bounds.base_formulas))
        }
        if not universe.is_consistent_semantic(base_formulas):
            continue
        base_triplets: set[BeliefTriplet] = set()
        if rng.random() < 0.55:
            for _ in range(rng.randint(1, 2)):
                subject = canonical(_random_formula(rng, universe, bounds.depth - 1))
                t = _random_triplet(rng, universe, subject, bounds.depth)
                if t is not None:
                    base_triplets.add(t)
        candidate = BeliefBase(frozenset(base_formulas), frozenset(base_triplets))
        probe = AssociationContext(universe, interp,
                                   _base_material(candidate, interp))
        if close(probe, candidate).is_consistent():
            base = candidate
            break

    if rng.random() < 0.45:
        essence = canonical(And(_random_formula(rng, universe, bounds.depth - 1),
                                _random_formula(rng, universe, bounds.depth - 1)))
    else:
        essence = canonical(_random_formula(rng, universe, bounds.depth))
    attributes: set[BeliefTriplet] = set()
    if rng.random() < 0.6:
        for _ in range(rng.randint(1, 2)):
            t = _random_triplet(rng, universe, essence, bounds.depth)
            if t is not None:
                attributes.add(t)
    info = ExternalInfo(essence, frozenset(attributes))

    preorders = tuple(
        PreferenceOrder([canonical(_random_formula(rng, universe, 2))
                         for _ in range(rng.randint(1, 3))])
        for _ in range(3)
    )

    material = set(base.formulas) | {essence}
    for t in list(base.triplets) + list(attributes):
        material |= {t.subject, t.trigger, t.revealed}
    context = AssociationContext(universe, interp, material)
    return ScenarioInstance(seed, universe, interp, base, info, preorders, context)


# ---------------------------------------------------------------------------
# Per-instance postulate checks


@dataclass
class Verdict:
    status: str
    fired: bool
    detail: str = ""


def _subset_members(a: BeliefSet, b: BeliefSet) -> bool:
    """Member-level inclusion: every member of ``a`` is a member of ``b``."""
    return b.models & ~a.models == 0


def _subset_triplets(a: BeliefSet, b: BeliefSet) -> tuple[bool, str]:
    if not a.triplets <= b.triplets:
        extra = min(a.triplets - b.triplets, key=str)
        return False, f"triplet not preserved: {extra}"
    return True, ""


def _variant_info(instance: ScenarioInstance) -> ExternalInfo | None:
    """A syntactically different, logically equivalent presentation of the
    instance's information (a vacuous contradictory disjunct is added)."""
    f = instance.info.essence
    for a in instance.universe.atoms:
        g = canonical(Or(f, And(a, Not(a))))
        if g != f:
            attrs = frozenset(BeliefTriplet(g, t.trigger, t.revealed)
                              for t in instance.info.attributes)
            try:
                return ExternalInfo(g, attrs)
            except ValueError:
                return None
    return None


def _info_cond(instance: ScenarioInstance, f: Formula) -> frozenset[BeliefTriplet]:
    g = canonical(f)
    return frozenset(t for t in instance.info.attributes if t.subject == g)


def check_all(instance: ScenarioInstance, work_limit: int = 200_000) -> dict[str, Verdict]:
    """Evaluate every postulate on the instance, under full-meet selection
    and under each of the instance's pre-orders."""
    out: dict[str, Verdict] = {}
    bs = instance.belief_set()
    info = instance.info
    ctx = instance.context
    u = instance.universe
    selections: list[SelectionFunction] = [SELECT_ALL, *instance.preorders]
    vis = visible(bs, info)
    vneg = visible_neg(bs, info)
    nontaut = [v for v in vis if not u.is_tautology(v)]
    conjunctions = [c for c in vis if isinstance(c, And)]

    adequate = True

    def note(bs2: BeliefSet) -> BeliefSet:
        nonlocal adequate
        adequate = adequate and adequacy_check(bs2)
        return bs2

    def merge(name: str, fired: bool, ok: bool, detail: str = ""):
        prev = out.get(name)
        status = PASS if ok else FAIL
        if not fired:
            status = NA
        if prev is None:
            out[name] = Verdict(status, fired, detail)
            return
        prev.fired = prev.fired or fired
        if status == FAIL and prev.status != FAIL:
            prev.status = FAIL
            prev.detail = detail
        elif prev.status == NA and status == PASS:
            prev.status = PASS

    def na_all(names: Iterable[str], reason: str):
        for name in names:
            if name not in out:
                out[name] = Verdict(NA, False, reason)

    contraction_names = [
        "contraction_closure", "contraction_success", "contraction_inclusion",
        "contraction_vacuity", "contraction_extensionality", "contraction_recovery",
        "contraction_association_update", "conjunctive_inclusion", "conjunctive_overlap",
        "theorem_1",
    ]
    revision_names = [
        "revision_closure", "revision_success_1", "revision_success_2",
        "revision_inclusion", "revision_vacuity", "revision_extensionality",
        "revision_association_update", "super_expansion", "sub_expansion",
        "theorem_2",
    ]

    # -- expansion -----------------------------------------------------------
    expanded = note(expand(bs, info))
    re_closed = close_models(ctx, expanded.models, expanded.pool)
    merge("expansion_closure", True, re_closed == expanded)
    extra = canonical(_random_formula(random.Random(instance.seed ^ 0x5EED), u, 2))
    base2 = BeliefBase(instance.base.formulas | {extra}, instance.base.triplets)
    bigger = note(close(ctx, base2))
    merge("expansion_monotone", True, bigger.models & ~bs.models == 0,
          "larger base lost a member")

    variant = _variant_info(instance)

    try:
        for sel in selections:
            # ---- contraction ----
            res = note(contract(bs, info, sel, work_limit=work_limit))
            merge("contraction_closure", True,
                  close_models(ctx, res.models, res.pool) == res)
            merge("contraction_success", bool(nontaut),
                  all(not res.member(v) for v in nontaut),
                  "a non-tautological visible formula survived contraction")
            merge("contraction_inclusion", True, _subset_members(res, bs),
                  "contraction gained a member")
            ok, why = _subset_triplets(res, bs)
            merge("contraction_inclusion_triplets", True, ok, why)
            vac = all(u.is_tautology(v) or not bs.member(v) for v in vis)
            merge("contraction_vacuity", vac, (res == bs) if vac else True,
                  "vacuous contraction changed the belief set")
            if variant is not None:
                res2 = note(contract(bs, variant, sel, work_limit=work_limit))
                merge("contraction_extensionality", True, res2 == res,
                      "equivalent visible sets contracted differently")
            recovered = note(expand(res, Package(vis)))
            merge("contraction_recovery", True, _subset_members(bs, recovered),
                  "recovery lost a member")
            ok, why = _subset_triplets(bs, recovered)
            merge("contraction_recovery_triplets", True, ok, why)
            merge("contraction_association_update", True,
                  res.tuple.x_models == res.models)
            for c in conjunctions:
                left_pkg = Package(substitute_conjunct(bs, info, c, "left"))
                fired_ci = not res.member(c.left)
                if fired_ci:
                    alt = note(contract(bs, left_pkg, sel, work_limit=work_limit))
                    merge("conjunctive_inclusion", True, _subset_members(res, alt),
                          "conjunctive inclusion fails")
                else:
                    merge("conjunctive_inclusion", False, True)
                right_pkg = Package(substitute_conjunct(bs, info, c, "right"))
                both = meet([note(contract(bs, left_pkg, sel, work_limit=work_limit)),
                             note(contract(bs, right_pkg, sel, work_limit=work_limit))],
                            bs.pool)
                merge("conjunctive_overlap", True, _subset_members(both, res),
                      "conjunctive overlap fails")
            if not conjunctions:
                merge("conjunctive_inclusion", False, True)
                merge("conjunctive_overlap", False, True)

            rhs = meet(select(sel, remainders(bs, info, work_limit=work_limit), bs), bs.pool)
            merge("theorem_1", True, rhs == res, "representation equation mismatch")

            # ---- revision ----
            rev = note(revise(bs, info, sel, work_limit=work_limit))
            merge("revision_closure", True,
                  close_models(ctx, rev.models, rev.pool) == rev)
            merge("revision_success_1", True, all(rev.member(v) for v in vis),
                  "a visible formula is missing from the revision")
            # in an inconsistent result every formula is trivially a member;
            # removal is then judged at the contraction stage
            neg_nontaut = [x for x in vneg if not u.is_tautology(x)]
            if rev.is_consistent():
                s2 = all(not rev.member(x) for x in neg_nontaut)
            else:
                contracted = contract(bs, Package(vneg), sel, work_limit=work_limit)
                s2 = all(not contracted.member(x) for x in neg_nontaut)
            merge("revision_success_2", bool(neg_nontaut), s2,
                  "a contradicted belief survived revision")
            merge("revision_inclusion", True, _subset_members(rev, expanded),
                  "revision exceeds expansion")
            ok, why = _subset_triplets(rev, expanded)
            merge("revision_inclusion_triplets", True, ok, why)
            rvac = all(not bs.member(x) for x in vneg)
            merge("revision_vacuity", rvac, (rev == expanded) if rvac else True,
                  "unopposed revision differs from expansion")
            if variant is not None:
                c1 = note(close(ctx, BeliefBase(info.formulas, info.attributes)))
                c2 = note(close(ctx, BeliefBase(variant.formulas, variant.attributes)))
                if c1 == c2:
                    rev2 = note(revise(bs, variant, sel, work_limit=work_limit))
                    merge("revision_extensionality", True, rev2 == rev,
                          "equivalent information revised differently")
                else:
                    merge("revision_extensionality", False, True)
            merge("revision_association_update", True,
                  rev.tuple.x_models == rev.models)
            for c in conjunctions:
                sub_left = Package(substitute_conjunct(bs, info, c, "left"),
                                   frozenset(t for t in info.attributes
                                             if t.subject != c))
                sub_right = Package(substitute_conjunct(bs, info, c, "right"),
                                    frozenset(t for t in info.attributes
                                              if t.subject != c))
                sup_rhs = note(expand(note(revise(bs, sub_left, sel, work_limit=work_limit)),
                                      ExternalInfo(c.right, _info_cond(instance, c.right))))
                # a revision collapsed by latent conflict holds everything
                # trivially; the retention bound is judged on genuine results
                if rev.is_consistent():
                    merge("super_expansion", True, _subset_members(rev, sup_rhs),
                          "super-expansion bound fails")
                else:
                    merge("super_expansion", False, True)
                # antecedent: the dropped conjunct is compatible with the
                # substituted revision; then adding it back stays within
                # the full revision
                rev_r = note(revise(bs, sub_right, sel, work_limit=work_limit))
                if not rev_r.member(negate(c.left)):
                    sub_rhs = note(expand(rev_r, ExternalInfo(c.left, _info_cond(instance, c.left))))
                    merge("sub_expansion", True, _subset_members(sub_rhs, rev),
                          "sub-expansion bound fails")
                else:
                    merge("sub_expansion", False, True)
            if not conjunctions:
                merge("super_expansion", False, True)
                merge("sub_expansion", False, True)

            rhs2 = expand(contract(bs, Package(vneg), sel, work_limit=work_limit),
                          Package(vis, info.attributes))
            merge("theorem_2", True, rhs2 == rev, "identity equation mismatch")
    except WorkLimitExceeded as e:
        na_all(contraction_names + revision_names, f"work limit: {e}")

    merge("adequacy", True, adequate, "a constructed belief set is inadequate")
    return out


# ---------------------------------------------------------------------------
# Suite aggregation


@dataclass
class PostulateStats:
    passed: int = 0
    failed: int = 0
    not_applicable: int = 0
    fired: int = 0
    witnesses: list = field(default_factory=list)

    def rate(self, total: int) -> float:
        return self.fired / total if total else 0.0


@dataclass
class SuiteReport:
    seeds: int = 0
    bounds: Bounds = field(default_factory=Bounds)
    stats: dict[str, PostulateStats] = field(default_factory=dict)

    def record(self, instance: ScenarioInstance, verdicts: dict[str, Verdict],
               max_witnesses: int = 5):
        self.seeds += 1
        for name, v in verdicts.items():
            st = self.stats.setdefault(name, PostulateStats())
            if v.fired:
                st.fired += 1
            if v.status == PASS:
                st.passed += 1
            elif v.status == FAIL:
                st.failed += 1
                if len(st.witnesses) < max_witnesses:
                    st.witnesses.append({"detail": v.detail, **instance.render()})
            else:
                st.not_applicable += 1

    def failures(self) -> dict[str, PostulateStats]:
        return {k: v for k, v in self.stats.items() if v.failed}

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "instances": self.seeds,
            "bounds": {
                "atoms": self.bounds.atoms,
                "base_formulas": self.bounds.base_formulas,
                "interp_entries": self.bounds.interp_entries,
                "depth": self.bounds.depth,
            },
            "postulates": {
                name: {
                    "pass": st.passed,
                    "fail": st.failed,
                    "not_applicable": st.not_applicable,
                    "antecedent_hits": st.fired,
                    "antecedent_rate": round(st.rate(self.seeds), 4),
                    "witnesses": st.witnesses,
                }
                for name, st in sorted(self.stats.items())
            },
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), indent=2, **kw)


def run_suite(seeds: Iterable[int], bounds: Bounds = Bounds(),
              work_limit: int = 200_000) -> SuiteReport:
    report = SuiteReport(bounds=bounds)
    for seed in seeds:
        instance = generate(seed, bounds)
        report.record(instance, check_all(instance, work_limit=work_limit))
    return report


# ---------------------------------------------------------------------------
# Observation witnesses


def observation_4_instance() -> ScenarioInstance:
    """The fixed instance whose revision materialises a latent conflict:
    base ({p0, ~p2}, {p0(p1, p2)}) revised with ({p1}, {})."""
    universe = Universe(["p0", "p1", "p2"])
    p0, p1, p2 = universe.atoms
    triplet = BeliefTriplet(p0, p1, p2)
    base = BeliefBase(frozenset({p0, canonical(Not(p2))}), frozenset({triplet}))
    info = ExternalInfo(p1)
    interp = InterpretationMap()
    context = AssociationContext(universe, interp,
                                 material=[p0, p1, p2, canonical(Not(p2))])
    return ScenarioInstance(-4, universe, interp, base, info, (), context)


def scenario_cond(bs: BeliefSet, f: Formula) -> frozenset[BeliefTriplet]:
    """Attributive beliefs of ``f`` under the scenario's knowledge: pooled
    triplets with that subject plus interpretation-derived ones."""
    g = canonical(f)
    pooled = frozenset(t for t in bs.pool if t.subject == g)
    return pooled | bs.context.cond(bs.models, g)


def check_observation_2(instance: ScenarioInstance,
                        work_limit: int = 200_000) -> str | None:
    """Witness that contraction followed by expansion with the same
    information need not recover the original belief set."""
    bs = instance.belief_set()
    for sel in (SELECT_ALL, *instance.preorders):
        back = expand(contract(bs, instance.info, sel, work_limit=work_limit), instance.info)
        if not _subset_members(bs, back):
            return f"selection {sel!r}: a member of the original set is lost"
        ok, why = _subset_triplets(bs, back)
        if not ok:
            return f"selection {sel!r}: {why}"
    return None


def check_observation_3(instance: ScenarioInstance,
                        work_limit: int = 200_000) -> str | None:
    """Witness that revision differs from contract-by-negation followed by
    expansion (no analogue of the classical identity)."""
    bs = instance.belief_set()
    neg = negate(instance.info.essence)
    neg_info = ExternalInfo(neg, scenario_cond(bs, neg))
    for sel in (SELECT_ALL, *instance.preorders):
        lhs = revise(bs, instance.info, sel, work_limit=work_limit)
        rhs = expand(contract(bs, neg_info, sel, work_limit=work_limit), instance.info)
        if lhs != rhs:
            return f"selection {sel!r}: revision and the two-step route disagree"
    return None


def find_observation_witnesses(bounds: Bounds = Bounds(atoms=3), budget: int = 10_000,
                               start_seed: int = 0, work_limit: int = 200_000) -> dict:
    """Search seeded instances for concrete witnesses of the three
    documented failure phenomena."""
    found: dict[str, dict | None] = {"observation_2": None, "observation_3": None}

    inst4 = observation_4_instance()
    bs4 = inst4.belief_set()
    out4 = revise(bs4, inst4.info, SELECT_ALL)
    vis4 = visible(bs4, inst4.info)
    ok4 = (
        bs4.is_consistent()
        and inst4.universe.is_consistent_semantic(vis4)
        and not out4.is_consistent()
    )
    found["observation_4"] = {**inst4.render(), "detail": "revision is inconsistent"} if ok4 else None

    searched = 0
    for seed in range(start_seed, start_seed + budget):
        if all(found.get(k) is not None for k in ("observation_2", "observation_3")):
            break
        searched += 1
        instance = generate(seed, bounds)
        try:
            if found["observation_2"] is None:
                why = check_observation_2(instance, work_limit=work_limit)
                if why:
                    found["observation_2"] = {**instance.render(), "detail": why}
            if found["observation_3"] is None:
                why = check_observation_3(instance, work_limit=work_limit)
                if why:
                    found["observation_3"] = {**instance.render(), "detail": why}
        except WorkLimitExceeded:
            continue
    found["searched"] = searched
    return found
