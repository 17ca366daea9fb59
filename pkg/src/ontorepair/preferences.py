"""Preference relations over repairs, evaluated on a finite axiom universe.

Repairs are compared through entailment profiles. The comparison universe
for a set of concept names and role names contains, for names A != B and
every role r: `A SubClassOf B`, `exists r. A SubClassOf B`, and
`A SubClassOf exists r. B` (the existential forms over all name pairs). For
a concrete problem the universe additionally contains the TBox's own
concept inclusions, the missing axioms, and the wrong axioms, so that every
axiom under dispute is comparable.

A repair's profile: a universe member is counted as entailed-true when the
repaired TBox entails it and the oracle calls it true; it is counted as
entailed-false when the repaired TBox entails it, the oracle calls it
false, and its left side is satisfiable in the repaired TBox. The
satisfiability condition keeps vacuous consequences of unsatisfiable
concepts from inflating the incorrectness measure; harmless vacuous truths
stay in the completeness measure. Unknown verdicts count for neither side.

Three preferences are supported: MoreComplete (larger true set),
LessIncorrect (smaller false set), Subset (componentwise smaller repair).
On top of them: pairwise relate, domination over a preference list,
X-optimality within a candidate set with respect to a preference list, and
skyline optimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .core import Atomic, Exists, GCI, axiom_str
from .oracle import Verdict
from .reasoner import TBoxReasoner
from .repair import CDP, Repair, apply_repair

MORE_COMPLETE = "MoreComplete"
LESS_INCORRECT = "LessIncorrect"
SUBSET = "Subset"
PREFERENCES = (MORE_COMPLETE, LESS_INCORRECT, SUBSET)


class Relation(str, Enum):
    FIRST = "first"  # the first repair is strictly preferred
    SECOND = "second"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Comparison:
    completeness: Relation
    correctness: Relation
    subset: Relation

    def to_json(self) -> dict:
        return {
            "completeness": self.completeness.value,
            "correctness": self.correctness.value,
            "subset": self.subset.value,
        }


@dataclass(frozen=True)
class Profile:
    true: frozenset[GCI]
    false: frozenset[GCI]

    def to_json(self) -> dict:
        return {
            "entailedTrue": sorted(axiom_str(a) for a in self.true),
            "entailedFalse": sorted(axiom_str(a) for a in self.false),
        }


def comparison_universe(
    concepts: Iterable[str], roles: Iterable[str]
) -> tuple[GCI, ...]:
    """The shape universe over names: n(n-1) + 2mn^2 members."""
    names = sorted(set(concepts))
    role_names = sorted(set(roles))
    members: list[GCI] = []
    for a in names:
        for b in names:
            if a != b:
                members.append(GCI(Atomic(a), Atomic(b)))
    for r in role_names:
        for a in names:
            for b in names:
                members.append(GCI(Exists(r, Atomic(a)), Atomic(b)))
    for r in role_names:
        for a in names:
            for b in names:
                members.append(GCI(Atomic(a), Exists(r, Atomic(b))))
    return tuple(members)


def universe_for(cdp: CDP) -> tuple[GCI, ...]:
    """Shape universe over the problem's names, plus T's GCIs, M, and W."""
    members = list(
        comparison_universe(
            sorted(cdp.concepts), sorted(cdp.tbox.role_names)
        )
    )
    seen = {axiom_str(m) for m in members}
    for ax in tuple(cdp.tbox.gcis) + cdp.missing + cdp.wrong:
        bare = GCI(ax.lhs, ax.rhs)
        key = axiom_str(bare)
        if ax.lhs == ax.rhs or key in seen:
            continue
        seen.add(key)
        members.append(bare)
    return tuple(members)


class PreferenceContext:
    """Caches entailment profiles of repairs for one problem and universe."""

    def __init__(self, cdp: CDP, universe: Optional[Sequence[GCI]] = None):
        self.cdp = cdp
        self.universe = tuple(universe) if universe is not None else universe_for(cdp)
        self._profiles: dict[Repair, Profile] = {}

    def profile(self, repair: Repair) -> Profile:
        cached = self._profiles.get(repair)
        if cached is not None:
            return cached
        result = apply_repair(self.cdp.tbox, repair)
        reasoner = TBoxReasoner(result)
        true_set: set[GCI] = set()
        false_set: set[GCI] = set()
        for member in self.universe:
            if not reasoner.entails(member):
                continue
            verdict = self.cdp.oracle.ask(member)
            if verdict is Verdict.TRUE:
                true_set.add(member)
            elif verdict is Verdict.FALSE and reasoner.is_satisfiable(member.lhs):
                false_set.add(member)
        prof = Profile(frozenset(true_set), frozenset(false_set))
        self._profiles[repair] = prof
        return prof

    # -- pairwise ------------------------------------------------------------

    def better_or_equal(self, pref: str, r1: Repair, r2: Repair) -> bool:
        if pref == MORE_COMPLETE:
            return self.profile(r1).true >= self.profile(r2).true
        if pref == LESS_INCORRECT:
            return self.profile(r1).false <= self.profile(r2).false
        if pref == SUBSET:
            return (
                set(r1.adds) <= set(r2.adds) and set(r1.deletes) <= set(r2.deletes)
            )
        raise ValueError(f"unknown preference: {pref!r}")

    def strictly_better(self, pref: str, r1: Repair, r2: Repair) -> bool:
        return self.better_or_equal(pref, r1, r2) and not self.better_or_equal(
            pref, r2, r1
        )

    def relate(self, r1: Repair, r2: Repair) -> Comparison:
        return Comparison(
            completeness=self._relation(MORE_COMPLETE, r1, r2),
            correctness=self._relation(LESS_INCORRECT, r1, r2),
            subset=self._relation(SUBSET, r1, r2),
        )

    def _relation(self, pref: str, r1: Repair, r2: Repair) -> Relation:
        forward = self.better_or_equal(pref, r1, r2)
        backward = self.better_or_equal(pref, r2, r1)
        if forward and backward:
            return Relation.EQUAL
        if forward:
            return Relation.FIRST
        if backward:
            return Relation.SECOND
        return Relation.INCOMPARABLE

    def dominates(self, r1: Repair, r2: Repair, prefs: Sequence[str]) -> bool:
        """r1 at least ties r2 on every preference and beats it on one."""
        if not prefs:
            return False
        if not all(self.better_or_equal(p, r1, r2) for p in prefs):
            return False
        return any(self.strictly_better(p, r1, r2) for p in prefs)

    # -- sets ------------------------------------------------------------

    def preferred_within(
        self, candidates: Sequence[Repair], pref: str
    ) -> tuple[Repair, ...]:
        """Candidates with no strictly better candidate under one preference."""
        pool = _dedup(candidates)
        return tuple(
            r
            for r in pool
            if not any(self.strictly_better(pref, other, r) for other in pool)
        )

    def optimal_within(
        self, candidates: Sequence[Repair], pref: str, prefs: Sequence[str]
    ) -> tuple[Repair, ...]:
        """Preferred under `pref`, then undominated there w.r.t. `prefs`."""
        base = self.preferred_within(candidates, pref)
        return tuple(
            r
            for r in base
            if not any(
                other != r and self.dominates(other, r, prefs) for other in base
            )
        )

    def skyline_within(
        self, candidates: Sequence[Repair], prefs: Sequence[str]
    ) -> tuple[Repair, ...]:
        """Candidates not dominated by any candidate w.r.t. `prefs`."""
        pool = _dedup(candidates)
        return tuple(
            r
            for r in pool
            if not any(other != r and self.dominates(other, r, prefs) for other in pool)
        )

    # -- certificates ------------------------------------------------------

    def maximally_complete(self, repair: Repair) -> tuple[bool, tuple[GCI, ...]]:
        """Does the repair entail every oracle-true universe member?"""
        prof = self.profile(repair)
        missing = [
            m
            for m in self.universe
            if self.cdp.oracle.ask(m) is Verdict.TRUE and m not in prof.true
        ]
        missing_sorted = tuple(sorted(set(missing), key=axiom_str))
        return (not missing_sorted, missing_sorted)

    def minimally_incorrect(self, repair: Repair) -> tuple[bool, tuple[GCI, ...]]:
        """Does the repair entail no oracle-false universe member?"""
        prof = self.profile(repair)
        remaining = tuple(sorted(prof.false, key=axiom_str))
        return (not remaining, remaining)


def _dedup(candidates: Sequence[Repair]) -> list[Repair]:
    out: list[Repair] = []
    for r in candidates:
        if r not in out:
            out.append(r)
    return out


# -- one-shot wrappers -------------------------------------------------------


def entailment_profile(
    cdp: CDP, repair: Repair, universe: Optional[Sequence[GCI]] = None
) -> Profile:
    return PreferenceContext(cdp, universe).profile(repair)


def relate(
    cdp: CDP, r1: Repair, r2: Repair, universe: Optional[Sequence[GCI]] = None
) -> Comparison:
    return PreferenceContext(cdp, universe).relate(r1, r2)


def dominates(
    cdp: CDP,
    r1: Repair,
    r2: Repair,
    prefs: Sequence[str],
    universe: Optional[Sequence[GCI]] = None,
) -> bool:
    return PreferenceContext(cdp, universe).dominates(r1, r2, prefs)


def optimal_within(
    cdp: CDP,
    candidates: Sequence[Repair],
    pref: str,
    prefs: Sequence[str],
    universe: Optional[Sequence[GCI]] = None,
) -> tuple[Repair, ...]:
    return PreferenceContext(cdp, universe).optimal_within(candidates, pref, prefs)


def skyline_within(
    cdp: CDP,
    candidates: Sequence[Repair],
    prefs: Sequence[str],
    universe: Optional[Sequence[GCI]] = None,
) -> tuple[Repair, ...]:
    return PreferenceContext(cdp, universe).skyline_within(candidates, prefs)
