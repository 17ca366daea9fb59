"""Shared fixtures: reference problems, repair sets, random instance
generators, and independent brute-force implementations used as oracles
for the search-based modules."""

from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from ontorepair.core import (
    And,
    Atomic,
    BOTTOM,
    Bottom,
    Concept,
    Exists,
    Forall,
    GCI,
    Not,
    Or,
    TBox,
    TOP,
    Top,
    parse_axiom,
    parse_tbox,
)
from ontorepair.oracle import TruthTBoxOracle
from ontorepair.reasoner import entails, is_satisfiable
from ontorepair.repair import CDP, load_repairs, make_cdp

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


# ---------------------------------------------------------------------------
# reference problems


@pytest.fixture(scope="session")
def fig3() -> TBox:
    return parse_tbox(fixture_text("fig3.tbox"))


@pytest.fixture(scope="session")
def fig3_truth() -> TBox:
    return parse_tbox(fixture_text("fig3_truth.tbox"))


@pytest.fixture(scope="session")
def galen() -> TBox:
    return parse_tbox(fixture_text("galen.tbox"))


@pytest.fixture(scope="session")
def galen_truth() -> TBox:
    return parse_tbox(fixture_text("galen_truth.tbox"))


FIG3_MISSING = ("P4 SubClassOf P5",)
FIG3_WRONG = ("P1 SubClassOf bottom", "P3 SubClassOf bottom")
GALEN_MISSING = (
    "Endocarditis SubClassOf PathologicalPhenomenon",
    "GranulomaProcess SubClassOf NonNormalProcess",
)
GALEN_WRONG = ("PathologicalProcess SubClassOf GranulomaProcess",)


@pytest.fixture
def fig3_cdp(fig3, fig3_truth) -> CDP:
    return make_cdp(
        fig3,
        TruthTBoxOracle(fig3_truth),
        missing=[parse_axiom(a) for a in FIG3_MISSING],
        wrong=[parse_axiom(a) for a in FIG3_WRONG],
    )


@pytest.fixture
def galen_cdp(galen, galen_truth) -> CDP:
    return make_cdp(
        galen,
        TruthTBoxOracle(galen_truth),
        missing=[parse_axiom(a) for a in GALEN_MISSING],
        wrong=[parse_axiom(a) for a in GALEN_WRONG],
    )


@pytest.fixture(scope="session")
def fig3_repairs():
    return load_repairs(fixture_text("fig3_r1_to_r5.json"))


@pytest.fixture(scope="session")
def galen_repairs():
    return load_repairs(fixture_text("galen_r1_to_r8.json"))


# ---------------------------------------------------------------------------
# brute-force reference implementations (exponential; small inputs only)


def brute_minimal_entailing_subsets(tbox: TBox, axiom) -> set[frozenset[int]]:
    """All subset-minimal id sets whose restriction entails the axiom."""
    ids = sorted(tbox.ids)
    found: list[frozenset[int]] = []
    for size in range(len(ids) + 1):
        for combo in itertools.combinations(ids, size):
            subset = frozenset(combo)
            if any(prior <= subset for prior in found):
                continue
            if entails(tbox.restrict(subset), axiom):
                found.append(subset)
    return set(found)


def brute_minimal_unsat_subsets(tbox: TBox, concept_name: str) -> set[frozenset[int]]:
    """All subset-minimal id sets keeping the concept unsatisfiable."""
    ids = sorted(tbox.ids)
    found: list[frozenset[int]] = []
    for size in range(len(ids) + 1):
        for combo in itertools.combinations(ids, size):
            subset = frozenset(combo)
            if any(prior <= subset for prior in found):
                continue
            if not is_satisfiable(tbox.restrict(subset), Atomic(concept_name)):
                found.append(subset)
    return set(found)


def brute_minimal_hitting_sets(conflicts) -> set[frozenset[int]]:
    """All subset-minimal sets intersecting every conflict set."""
    conflicts = [frozenset(c) for c in conflicts]
    universe = sorted(set().union(*conflicts)) if conflicts else []
    found: list[frozenset[int]] = []
    for size in range(len(universe) + 1):
        for combo in itertools.combinations(universe, size):
            subset = frozenset(combo)
            if any(prior <= subset for prior in found):
                continue
            if all(subset & c for c in conflicts):
                found.append(subset)
    return set(found)


# ---------------------------------------------------------------------------
# random instance generators (deterministic under a seeded Random)

EL_NAMES = ("A", "B", "C", "D", "E", "F")
GEN_ROLES = ("r", "s")


def random_el_concept(rng: random.Random, depth: int = 2) -> Concept:
    roll = rng.random()
    if depth <= 0 or roll < 0.55:
        return Atomic(rng.choice(EL_NAMES))
    if roll < 0.65:
        return TOP
    if roll < 0.85:
        return And(random_el_concept(rng, depth - 1), random_el_concept(rng, depth - 1))
    return Exists(rng.choice(GEN_ROLES), random_el_concept(rng, depth - 1))


def random_alc_concept(rng: random.Random, depth: int = 2) -> Concept:
    roll = rng.random()
    if depth <= 0 or roll < 0.4:
        return Atomic(rng.choice(EL_NAMES))
    if roll < 0.45:
        return TOP
    if roll < 0.5:
        return BOTTOM
    if roll < 0.6:
        return Not(random_alc_concept(rng, depth - 1))
    if roll < 0.75:
        return And(random_alc_concept(rng, depth - 1), random_alc_concept(rng, depth - 1))
    if roll < 0.85:
        return Or(random_alc_concept(rng, depth - 1), random_alc_concept(rng, depth - 1))
    if roll < 0.93:
        return Exists(rng.choice(GEN_ROLES), random_alc_concept(rng, depth - 1))
    return Forall(rng.choice(GEN_ROLES), random_alc_concept(rng, depth - 1))


def random_tbox(rng: random.Random, maker, n_axioms: int) -> TBox:
    axioms = []
    for _ in range(n_axioms):
        lhs = maker(rng)
        rhs = maker(rng)
        axioms.append(GCI(lhs, rhs))
    return TBox(axioms, declared_concepts=EL_NAMES, declared_roles=GEN_ROLES)


def random_atomic_gci(rng: random.Random) -> GCI:
    lhs, rhs = rng.sample(EL_NAMES, 2)
    return GCI(Atomic(lhs), Atomic(rhs))
