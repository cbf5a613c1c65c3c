import pytest
from hypothesis import given, settings, strategies as st

from latentbr.association import (
    ALL_PAIRS,
    AssociationContext,
    BeliefTriplet,
    InterpretationMap,
    in_exc,
    validate_interpretation,
)
from latentbr.logic import And, Not, Or, Universe, canonical, negate, nnf

U2 = Universe(["p0", "p1"])
U4 = Universe(["p0", "p1", "p2", "p3"])


def ctx_over(universe, entries, material=()):
    return AssociationContext(universe, InterpretationMap(entries), material)


class TestExc:
    def test_consequence_is_excluded(self):
        assert in_exc(U2, U2.parse("p0 & p1"), U2.parse("p0"))

    def test_antecedent_is_excluded(self):
        # p0 is a consequence of p0 & p1, so p0 & p1 is excluded for p0
        assert in_exc(U2, U2.parse("p0"), U2.parse("p0 & p1"))

    def test_independent_atoms_are_not(self):
        assert not in_exc(U2, U2.parse("p0"), U2.parse("p1"))


class TestInterpretationMap:
    def test_keys_must_be_literals(self):
        with pytest.raises(ValueError):
            InterpretationMap({U2.parse("p0 & p1"): [(U2.parse("p0"), U2.parse("p1"))]})

    def test_negative_literal_keys_are_independent(self):
        p0, p1 = U2.atoms
        m = InterpretationMap({
            p0: [(p1, Not(p1))],
            canonical(Not(p0)): [(Not(p1), p1)],
        })
        assert m.pairs(p0) == frozenset({(p1, canonical(Not(p1)))})
        assert m.pairs(canonical(Not(p0))) == frozenset({(canonical(Not(p1)), p1)})

    def test_validate_flags_exc_violation(self):
        # p0 | p1 is a consequence of p0, so it may not be a trigger for p0
        m = InterpretationMap({U4.atoms[0]: [(U4.parse("p0 | p1"), U4.parse("p2"))]})
        bad = validate_interpretation(U4, m)
        assert len(bad) == 1
        assert bad[0][0] == U4.atoms[0]

    def test_validate_accepts_independent_pairs(self):
        m = InterpretationMap({U4.atoms[0]: [(U4.parse("p1"), U4.parse("p2"))]})
        assert validate_interpretation(U4, m) == []

    def test_validate_empty_map(self):
        assert validate_interpretation(U4, InterpretationMap()) == []

    def test_context_rejects_invalid_map(self):
        m = InterpretationMap({U4.atoms[0]: [(U4.parse("p0 | p1"), U4.parse("p2"))]})
        with pytest.raises(ValueError):
            AssociationContext(U4, m)


class TestAssoc:
    def test_tautology_has_no_pairs(self):
        ctx = ctx_over(U2, {U2.atoms[0]: [(U2.parse("p1"), U2.parse("~p1"))]})
        t = ctx.tuple_at(U2.full)
        assert t.assoc(U2.parse("p0 | ~p0")) == frozenset()

    def test_contradiction_is_all_pairs(self):
        ctx = ctx_over(U2, {U2.atoms[0]: [(U2.parse("p1"), U2.parse("~p1"))]})
        t = ctx.tuple_at(U2.full)
        assert t.assoc(U2.parse("p0 & ~p0")) is ALL_PAIRS

    def test_literal_lookup(self):
        p0, p1 = U2.atoms
        ctx = ctx_over(U2, {p0: [(p1, Not(p1))]})
        t = ctx.tuple_at(U2.full)
        assert t.assoc(p0) == frozenset({(p1, canonical(Not(p1)))})
        assert t.assoc(p1) == frozenset()

    def test_disjunction_with_both_disjuncts_held(self):
        # six independent atoms; the held-disjunct case collapses to the
        # conjunction case, whose exclusion filter removes nothing here
        u = Universe(["p1", "p2", "a", "b", "c", "d"])
        p1, p2, a, b, c, d = u.atoms
        ctx = ctx_over(u, {p1: [(a, b)], p2: [(c, d)]})
        x = u.conjoin_tables([p1, p2])
        t = ctx.tuple_at(x)
        assert t.assoc(Or(p1, p2)) == frozenset({(a, b), (c, d)})
        assert t.assoc(Or(p1, p2)) == t.assoc(And(p1, p2))

    def test_conjunction_filters_exclusions(self):
        # p2 entails p1 | p2, so the pair vanishes for the conjunction
        u = Universe(["p0", "p1", "p2", "p3"])
        p0, p1, p2, p3 = u.atoms
        ctx = ctx_over(u, {p0: [(p3, Or(p1, p2))]})
        t = ctx.tuple_at(u.full)
        assert t.assoc(p0) == frozenset({(p3, canonical(Or(p1, p2)))})
        assert t.assoc(And(p0, p1)) == frozenset()

    def test_denied_disjunct_defers_to_the_other(self):
        u = U4
        p0, p1, p2, p3 = u.atoms
        ctx = ctx_over(u, {p0: [(p2, p3)], p1: [(p3, p2)]})
        x = u.conjoin_tables([canonical(Not(p1))])
        t = ctx.tuple_at(x)
        assert t.assoc(Or(p0, p1)) == t.assoc(p0)

    def test_one_held_one_undetermined_filters(self):
        u = U4
        p0, p1, p2, p3 = u.atoms
        ctx = ctx_over(u, {p0: [(p1, p3)]})
        x = u.conjoin_tables([p0])
        t = ctx.tuple_at(x)
        # p1 is undetermined; the pair's trigger p1 is excluded for p0 & p1
        assert t.assoc(Or(p0, p1)) == frozenset()

    def test_undetermined_disjuncts_agree_on_weaker_reveal(self):
        u = U4
        p0, p1, p2, p3 = u.atoms
        ctx = ctx_over(u, {p0: [(p2, And(p2, p3))], p1: [(p2, p3)]})
        t = ctx.tuple_at(u.full)  # nothing held beyond tautologies
        assert t.assoc(Or(p0, p1)) == frozenset({(p2, p3)})


class TestCond:
    def test_no_attributive_beliefs_for_constants(self):
        ctx = ctx_over(U2, {U2.atoms[0]: [(U2.parse("p1"), U2.parse("~p1"))]})
        t = ctx.tuple_at(U2.full)
        assert t.cond(U2.parse("p0 | ~p0")) == frozenset()
        assert t.cond(U2.parse("p0 & ~p0")) == frozenset()

    def test_literal_cond_packages_pairs(self):
        p0, p1 = U2.atoms
        ctx = ctx_over(U2, {p0: [(p1, Not(p1))]})
        t = ctx.tuple_at(U2.full)
        assert t.cond(p0) == frozenset({BeliefTriplet(p0, p1, Not(p1))})


def random_contexts(draw, universe):
    atoms = st.sampled_from(universe.atoms)
    lits = st.one_of(atoms, atoms.map(Not))
    small = st.recursive(
        lits,
        lambda kids: st.one_of(
            st.tuples(kids, kids).map(lambda ab: And(*ab)),
            st.tuples(kids, kids).map(lambda ab: Or(*ab)),
        ),
        max_leaves=4,
    )
    entries = {}
    for _ in range(draw(st.integers(0, 3))):
        lit = canonical(draw(lits))
        trig = canonical(draw(small))
        rev = canonical(draw(small))
        if in_exc(universe, lit, trig) or in_exc(universe, lit, rev):
            continue
        entries.setdefault(lit, set()).add((trig, rev))
    x = draw(st.integers(0, universe.full))
    f = draw(small)
    return entries, x, f


class TestAssocProperties:
    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_assoc_invariant_under_nnf(self, data):
        entries, x, f = random_contexts(data.draw, U4)
        ctx = ctx_over(U4, entries)
        assert ctx.assoc(x, f) == ctx.assoc(x, nnf(f))
        assert ctx.assoc(x, Not(Not(f))) == ctx.assoc(x, f)

    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_conjunction_output_respects_exclusion(self, data):
        entries, x, f = random_contexts(data.draw, U4)
        ctx = ctx_over(U4, entries)
        g = data.draw(st.sampled_from(U4.atoms))
        val = ctx.assoc(x, And(f, g))
        if val is not ALL_PAIRS:
            w = canonical(And(f, g))
            for a, b in val:
                assert not in_exc(U4, w, a) and not in_exc(U4, w, b)

    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_held_disjuncts_collapse_to_conjunction(self, data):
        entries, _, _ = random_contexts(data.draw, U4)
        ctx = ctx_over(U4, entries)
        p0, p1 = U4.atoms[0], U4.atoms[1]
        x = U4.conjoin_tables([p0, p1])
        assert ctx.assoc(x, Or(p0, p1)) == ctx.assoc(x, And(p0, p1))


class TestCaseSixSymmetry:
    def test_swap_symmetric_modulo_equivalence(self):
        # singleton interpretation sets; swapping the disjuncts together
        # with their entries yields pairwise equivalent outputs
        u = U4
        p0, p1, p2, p3 = u.atoms
        candidates = [p2, p3, And(p2, p3), Or(p2, p3), Not(p2)]
        x = u.full  # nothing non-tautological held: the undetermined case
        for ra in candidates:
            for rb in candidates:
                c1 = ctx_over(u, {p0: [(p2, ra)], p1: [(p2, rb)]})
                c2 = ctx_over(u, {p0: [(p2, rb)], p1: [(p2, ra)]})
                v1 = c1.assoc(x, Or(p0, p1))
                v2 = c2.assoc(x, Or(p1, p0))
                assert v1 is not ALL_PAIRS and v2 is not ALL_PAIRS
                assert len(v1) == len(v2)
                for a, b in v1:
                    assert any(u.equivalent(a, a2) and u.equivalent(b, b2)
                               for a2, b2 in v2)
