"""Comparing repairs: entailment profiles, preference orders, skylines."""

import itertools

import pytest

from ontorepair.core import parse_axiom
from ontorepair.preferences import (
    LESS_INCORRECT,
    MORE_COMPLETE,
    PREFERENCES,
    PreferenceContext,
    Relation,
    SUBSET,
    comparison_universe,
    universe_for,
)
from ontorepair.repair import Repair


FIG3_NAMES = ("R1", "R2", "R3", "R4", "R5")
GALEN_NAMES = ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8")


@pytest.fixture()
def fig3_ctx(fig3_cdp):
    return PreferenceContext(fig3_cdp)


@pytest.fixture()
def galen_ctx(galen_cdp):
    return PreferenceContext(galen_cdp)


def _names(pool_names, repairs, selected):
    back = {id(repairs[n]): n for n in pool_names}
    return [back[id(r)] for r in selected]


# ---------------------------------------------------------------------------
# universes


def test_default_universe_covers_signature_subsumptions(fig3_cdp):
    from ontorepair.core import axiom_str

    universe = universe_for(fig3_cdp)
    rendered = {axiom_str(g) for g in universe}
    assert "P4 SubClassOf P5" in rendered
    assert "P1 SubClassOf P2" in rendered
    assert len(universe) == len(set(universe))


def test_explicit_universe_narrows_comparison(fig3_cdp, fig3_repairs):
    narrow = [parse_axiom("P4 SubClassOf P5")]
    ctx = PreferenceContext(fig3_cdp, universe=narrow)
    profile = ctx.profile(fig3_repairs["R1"])
    assert [str(a) for a in profile.false] == []
    assert len(profile.true) == 1


def test_comparison_universe_builder():
    universe = comparison_universe(["A", "B"], ["r"])
    texts = {  # every pair is a GCI; spot-check a few members
        "A SubClassOf B",
        "B SubClassOf A",
    }
    rendered = set()
    from ontorepair.core import axiom_str

    rendered = {axiom_str(g) for g in universe}
    assert texts <= rendered


# ---------------------------------------------------------------------------
# pairwise relations on the worked examples


def test_fig3_subset_chains(fig3_ctx, fig3_repairs):
    for smaller, larger in (("R3", "R2"), ("R2", "R1"), ("R4", "R5"), ("R5", "R1")):
        rel = fig3_ctx.relate(fig3_repairs[smaller], fig3_repairs[larger])
        assert rel.subset is Relation.FIRST, (smaller, larger)
    rel = fig3_ctx.relate(fig3_repairs["R3"], fig3_repairs["R4"])
    assert rel.subset is Relation.INCOMPARABLE


def test_fig3_correctness_relations(fig3_ctx, fig3_repairs):
    for other in ("R2", "R3", "R4", "R5"):
        rel = fig3_ctx.relate(fig3_repairs["R1"], fig3_repairs[other])
        assert rel.correctness is Relation.FIRST, other
    assert (
        fig3_ctx.relate(fig3_repairs["R2"], fig3_repairs["R3"]).correctness
        is Relation.EQUAL
    )
    assert (
        fig3_ctx.relate(fig3_repairs["R4"], fig3_repairs["R5"]).correctness
        is Relation.EQUAL
    )


def test_fig3_completeness_relations(fig3_ctx, fig3_repairs):
    for a, b in itertools.combinations(("R1", "R2", "R3", "R5"), 2):
        rel = fig3_ctx.relate(fig3_repairs[a], fig3_repairs[b])
        assert rel.completeness is Relation.EQUAL, (a, b)
    assert (
        fig3_ctx.relate(fig3_repairs["R1"], fig3_repairs["R4"]).completeness
        is Relation.FIRST
    )


def test_comparison_json_shape(fig3_ctx, fig3_repairs):
    rel = fig3_ctx.relate(fig3_repairs["R3"], fig3_repairs["R2"])
    assert rel.to_json() == {
        "completeness": "equal",
        "correctness": "equal",
        "subset": "first",
    }


# ---------------------------------------------------------------------------
# galen profiles and certificates


def test_galen_r2_and_r3_entail_the_same_truths(galen_ctx, galen_repairs):
    p2 = galen_ctx.profile(galen_repairs["R2"])
    p3 = galen_ctx.profile(galen_repairs["R3"])
    assert set(p2.true) == set(p3.true)
    assert len(p2.false) == 1 and len(p3.false) == 0


def test_galen_completeness_chains_are_proper(galen_ctx, galen_repairs):
    chains = (("R3", "R1", "R7", "R8"), ("R3", "R4", "R5", "R6", "R8"))
    for chain in chains:
        for smaller, larger in zip(chain, chain[1:]):
            t_small = set(galen_ctx.profile(galen_repairs[smaller]).true)
            t_large = set(galen_ctx.profile(galen_repairs[larger]).true)
            assert t_small < t_large, (smaller, larger)


def test_galen_maximal_completeness_certificate(galen_ctx, galen_repairs):
    for name in GALEN_NAMES:
        complete, witnesses = galen_ctx.maximally_complete(galen_repairs[name])
        if name == "R8":
            assert complete and witnesses == ()
        else:
            assert not complete and witnesses, name


def test_galen_minimal_incorrectness_certificate(galen_ctx, galen_repairs):
    for name in GALEN_NAMES:
        clean, witnesses = galen_ctx.minimally_incorrect(galen_repairs[name])
        if name in ("R1", "R2"):
            assert not clean and witnesses, name
        else:
            assert clean and witnesses == (), name


# ---------------------------------------------------------------------------
# optimality and skylines on the worked examples


def test_fig3_subset_optimal_wrt_less_incorrect(fig3_ctx, fig3_repairs):
    pool = [fig3_repairs[n] for n in FIG3_NAMES]
    chosen = fig3_ctx.optimal_within(pool, "Subset", ["LessIncorrect"])
    assert _names(FIG3_NAMES, fig3_repairs, chosen) == ["R3", "R4"]


def test_fig3_less_incorrect_optimal_wrt_more_complete(fig3_ctx, fig3_repairs):
    pool = [fig3_repairs[n] for n in FIG3_NAMES]
    chosen = fig3_ctx.optimal_within(pool, "LessIncorrect", ["MoreComplete"])
    assert _names(FIG3_NAMES, fig3_repairs, chosen) == ["R1"]


def test_fig3_variant_pool_displaces_r3(fig3_ctx, fig3_repairs):
    variant = Repair(
        adds=(parse_axiom("P4 SubClassOf P5"),),
        deletes=(
            parse_axiom("P1 SubClassOf P2"),
            parse_axiom("P6 SubClassOf exists s. (not P8)"),
        ),
    )
    repairs = dict(fig3_repairs, R3prime=variant)
    names = FIG3_NAMES + ("R3prime",)
    pool = [repairs[n] for n in names]
    chosen = fig3_ctx.optimal_within(pool, "Subset", ["LessIncorrect"])
    assert _names(names, repairs, chosen) == ["R4", "R3prime"]


def test_galen_skyline(galen_ctx, galen_repairs):
    pool = [galen_repairs[n] for n in GALEN_NAMES]
    sky = galen_ctx.skyline_within(pool, ["MoreComplete", "Subset"])
    assert _names(GALEN_NAMES, galen_repairs, sky) == [
        "R1",
        "R2",
        "R4",
        "R5",
        "R6",
        "R7",
        "R8",
    ]


def test_galen_most_complete_repair_wins_overall(galen_ctx, galen_repairs):
    pool = [galen_repairs[n] for n in GALEN_NAMES]
    chosen = galen_ctx.optimal_within(pool, "MoreComplete", ["LessIncorrect", "Subset"])
    assert _names(GALEN_NAMES, galen_repairs, chosen) == ["R8"]


# ---------------------------------------------------------------------------
# order-theoretic laws


def test_relations_are_reflexive(galen_ctx, galen_repairs):
    for name in GALEN_NAMES:
        rel = galen_ctx.relate(galen_repairs[name], galen_repairs[name])
        assert rel.completeness is Relation.EQUAL
        assert rel.correctness is Relation.EQUAL
        assert rel.subset is Relation.EQUAL


def test_relations_are_antisymmetric(galen_ctx, galen_repairs):
    flip = {
        Relation.FIRST: Relation.SECOND,
        Relation.SECOND: Relation.FIRST,
        Relation.EQUAL: Relation.EQUAL,
        Relation.INCOMPARABLE: Relation.INCOMPARABLE,
    }
    for a, b in itertools.combinations(GALEN_NAMES, 2):
        fwd = galen_ctx.relate(galen_repairs[a], galen_repairs[b])
        rev = galen_ctx.relate(galen_repairs[b], galen_repairs[a])
        assert rev.completeness is flip[fwd.completeness], (a, b)
        assert rev.correctness is flip[fwd.correctness], (a, b)
        assert rev.subset is flip[fwd.subset], (a, b)


def test_preference_order_is_transitive(galen_ctx, galen_repairs):
    for pref in PREFERENCES:
        for a, b, c in itertools.permutations(GALEN_NAMES, 3):
            if galen_ctx.better_or_equal(
                pref, galen_repairs[a], galen_repairs[b]
            ) and galen_ctx.better_or_equal(pref, galen_repairs[b], galen_repairs[c]):
                assert galen_ctx.better_or_equal(
                    pref, galen_repairs[a], galen_repairs[c]
                ), (pref, a, b, c)


def test_optimal_members_appear_in_skyline(galen_ctx, galen_repairs):
    pool = [galen_repairs[n] for n in GALEN_NAMES]
    sky = set(map(id, galen_ctx.skyline_within(pool, list(PREFERENCES))))
    for pref in PREFERENCES:
        others = [p for p in PREFERENCES if p != pref]
        for winner in galen_ctx.optimal_within(pool, pref, others):
            assert id(winner) in sky, pref


def test_preference_constants_expose_names():
    assert PREFERENCES == (str(MORE_COMPLETE), str(LESS_INCORRECT), str(SUBSET))
