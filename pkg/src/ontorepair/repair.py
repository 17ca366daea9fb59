"""Repairs for complete-debug problems.

A problem bundles a TBox, the concepts under consideration, an oracle, a set
of detected missing axioms, and a set of detected wrong axioms. A repair is
a pair (adds, deletes) of axiom sets. Verification checks five conditions:

1. every added axiom gets a true verdict from the oracle;
2. every deleted axiom gets a false verdict;
3. the repaired TBox is consistent;
4. the repaired TBox entails every missing axiom;
5. the repaired TBox entails no wrong axiom.

The default policy is prudent: an unknown verdict disqualifies an addition
but does not protect an axiom from deletion. Both halves are configurable,
and a protected-axiom set can forbid specific deletions outright.

Debugging turns justifications of the entailed wrong axioms into conflict
sets, filters out axioms the oracle calls true (and protected ones), and
either removes everything left (remove-all-false) or offers one repair per
minimal hitting set. Completion generates candidate additions for each
missing axiom by weakening its left side upward and its right side downward
through the current subsumption order, asks the oracle about each, and
iterates with the validated candidates folded into the working TBox.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .core import (
    Atomic,
    Axiom,
    Concept,
    Exists,
    GCI,
    TBox,
    axiom_signature,
    axiom_str,
    parse_axiom,
)
from .diagnosis import DEFAULT_NODE_LIMIT, all_justifications
from .oracle import Oracle, Verdict
from .reasoner import TBoxReasoner, entails

HITTING_SETS = "hitting-sets"
REMOVE_ALL_FALSE = "remove-all-false"


class NoRepairWithoutCorrectRemoval(Exception):
    """Some wrong entailment survives unless a true or protected axiom goes."""


class RepairFailed(Exception):
    """A constructed repair did not verify; carries the report."""

    def __init__(self, report: "VerificationReport"):
        super().__init__("constructed repair failed verification")
        self.report = report


@dataclass(frozen=True)
class Policy:
    """How unknown verdicts and protected axioms constrain repairs."""

    unknown_blocks_add: bool = True
    unknown_blocks_delete: bool = False
    protected: frozenset[int] = frozenset()


PRUDENT = Policy()


@dataclass(frozen=True)
class Repair:
    adds: tuple[GCI, ...]
    deletes: tuple[GCI, ...]

    @staticmethod
    def make(adds: Iterable[GCI] = (), deletes: Iterable[GCI] = ()) -> "Repair":
        return Repair(_canon(adds), _canon(deletes))

    def is_empty(self) -> bool:
        return not self.adds and not self.deletes

    def to_json(self) -> dict:
        return {
            "add": [axiom_str(a) for a in self.adds],
            "delete": [axiom_str(d) for d in self.deletes],
        }

    @staticmethod
    def from_json(data: dict) -> "Repair":
        return Repair.make(
            [_as_gci(parse_axiom(a)) for a in data.get("add", [])],
            [_as_gci(parse_axiom(d)) for d in data.get("delete", [])],
        )


def _canon(axioms: Iterable[GCI]) -> tuple[GCI, ...]:
    seen: dict[str, GCI] = {}
    for ax in axioms:
        seen.setdefault(axiom_str(ax), ax)
    return tuple(seen[k] for k in sorted(seen))


def _as_gci(ax: Axiom) -> GCI:
    if not isinstance(ax, GCI):
        raise ValueError(f"repairs handle concept inclusions only: {axiom_str(ax)}")
    return ax


def load_repairs(text: str) -> dict[str, Repair]:
    """Parse a JSON object mapping repair names to {add, delete} lists."""
    data = json.loads(text)
    return {name: Repair.from_json(body) for name, body in data.items()}


@dataclass(frozen=True)
class CDP:
    """A complete-debug problem instance."""

    tbox: TBox
    oracle: Oracle
    missing: tuple[GCI, ...] = ()
    wrong: tuple[GCI, ...] = ()
    concepts: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not self.concepts:
            names = set(self.tbox.concept_names)
            for ax in self.missing + self.wrong:
                lc, _ = _gci_concepts(ax)
                names |= lc
            object.__setattr__(
                self,
                "concepts",
                frozenset(n for n in names if not n.startswith("__")),
            )


def _gci_concepts(ax: GCI) -> tuple[set[str], set[str]]:
    c, r = axiom_signature(ax)
    return set(c), set(r)


def make_cdp(
    tbox: TBox,
    oracle: Oracle,
    missing: Iterable[GCI] = (),
    wrong: Iterable[GCI] = (),
    concepts: Iterable[str] = (),
) -> CDP:
    return CDP(tbox, oracle, tuple(missing), tuple(wrong), frozenset(concepts))


# ---------------------------------------------------------------------------
# applying and verifying


def resolve_deletes(tbox: TBox, repair: Repair) -> tuple[frozenset[int], tuple[GCI, ...]]:
    """Ids of TBox axioms matching the deletes, plus unmatched deletes."""
    ids: set[int] = set()
    unmatched: list[GCI] = []
    for d in repair.deletes:
        matches = [ax.id for ax in tbox.gcis if ax == d]
        if matches:
            ids.update(matches)
        else:
            unmatched.append(d)
    return frozenset(ids), tuple(unmatched)


def apply_repair(tbox: TBox, repair: Repair) -> TBox:
    """Delete matching axioms, then append additions not already present."""
    ids, _ = resolve_deletes(tbox, repair)
    result = tbox.drop(ids)
    present = set(result.gcis)
    new = [a for a in repair.adds if a not in present]
    return result.extend(new) if new else result


@dataclass(frozen=True)
class VerificationReport:
    holds: bool
    added_axioms_true: bool
    deleted_axioms_false: bool
    result_consistent: bool
    missing_entailed: bool
    wrong_avoided: bool
    untrue_adds: tuple[str, ...] = ()
    undeletable: tuple[str, ...] = ()
    protected_removed: tuple[int, ...] = ()
    missing_not_entailed: tuple[str, ...] = ()
    wrong_entailed: tuple[str, ...] = ()
    unmatched_deletes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "conditions": {
                "addedAxiomsTrue": self.added_axioms_true,
                "deletedAxiomsFalse": self.deleted_axioms_false,
                "resultConsistent": self.result_consistent,
                "missingEntailed": self.missing_entailed,
                "wrongAvoided": self.wrong_avoided,
            },
            "untrueAdds": list(self.untrue_adds),
            "undeletable": list(self.undeletable),
            "protectedRemoved": list(self.protected_removed),
            "missingNotEntailed": list(self.missing_not_entailed),
            "wrongEntailed": list(self.wrong_entailed),
            "unmatchedDeletes": list(self.unmatched_deletes),
        }


def verify_repair(cdp: CDP, repair: Repair, policy: Policy = PRUDENT) -> VerificationReport:
    """Check the five repair conditions against the problem's oracle."""
    untrue_adds = []
    for a in repair.adds:
        verdict = cdp.oracle.ask(a)
        if verdict is Verdict.FALSE or (
            verdict is Verdict.UNKNOWN and policy.unknown_blocks_add
        ):
            untrue_adds.append(axiom_str(a))
    undeletable = []
    for d in repair.deletes:
        verdict = cdp.oracle.ask(d)
        if verdict is Verdict.TRUE or (
            verdict is Verdict.UNKNOWN and policy.unknown_blocks_delete
        ):
            undeletable.append(axiom_str(d))
    ids, unmatched = resolve_deletes(cdp.tbox, repair)
    protected_removed = tuple(sorted(ids & policy.protected))
    result = apply_repair(cdp.tbox, repair)
    reasoner = TBoxReasoner(result)
    consistent = reasoner.is_consistent()
    missing_not_entailed = [
        axiom_str(m) for m in cdp.missing if not reasoner.entails(m)
    ]
    wrong_entailed = [axiom_str(w) for w in cdp.wrong if reasoner.entails(w)]
    report = VerificationReport(
        holds=(
            not untrue_adds
            and not undeletable
            and not protected_removed
            and consistent
            and not missing_not_entailed
            and not wrong_entailed
        ),
        added_axioms_true=not untrue_adds,
        deleted_axioms_false=not undeletable,
        result_consistent=consistent,
        missing_entailed=not missing_not_entailed,
        wrong_avoided=not wrong_entailed,
        untrue_adds=tuple(untrue_adds),
        undeletable=tuple(undeletable),
        protected_removed=protected_removed,
        missing_not_entailed=tuple(missing_not_entailed),
        wrong_entailed=tuple(wrong_entailed),
        unmatched_deletes=tuple(axiom_str(d) for d in unmatched),
    )
    return report


# ---------------------------------------------------------------------------
# debugging


def conflict_sets(
    cdp: CDP, policy: Policy = PRUDENT, node_limit: int = DEFAULT_NODE_LIMIT
) -> tuple[frozenset[int], ...]:
    """Oracle-filtered justification sets for the entailed wrong axioms."""
    conflicts: list[frozenset[int]] = []
    for w in cdp.wrong:
        if not entails(cdp.tbox, w):
            continue
        for just in all_justifications(cdp.tbox, w, node_limit):
            filtered = set()
            for axiom_id in just:
                if axiom_id in policy.protected:
                    continue
                verdict = cdp.oracle.ask(cdp.tbox.axiom(axiom_id))
                if verdict is Verdict.TRUE:
                    continue
                if verdict is Verdict.UNKNOWN and policy.unknown_blocks_delete:
                    continue
                filtered.add(axiom_id)
            if not filtered:
                raise NoRepairWithoutCorrectRemoval(
                    f"every deletable support of {axiom_str(w)} is true or protected"
                )
            conflicts.append(frozenset(filtered))
    unique = sorted(set(conflicts), key=lambda s: (len(s), sorted(s)))
    return tuple(unique)


def debug_repairs(
    cdp: CDP,
    mode: str = HITTING_SETS,
    policy: Policy = PRUDENT,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> tuple[Repair, ...]:
    """Delete-only repairs that remove every entailed wrong axiom."""
    conflicts = conflict_sets(cdp, policy, node_limit)
    if not conflicts:
        return (Repair.make(),)
    if mode == REMOVE_ALL_FALSE:
        union: set[int] = set()
        for c in conflicts:
            union |= c
        return (Repair.make(deletes=_ids_to_gcis(cdp.tbox, union)),)
    if mode == HITTING_SETS:
        from .diagnosis import minimal_hitting_sets

        hits = minimal_hitting_sets(conflicts, node_limit)
        return tuple(
            Repair.make(deletes=_ids_to_gcis(cdp.tbox, h)) for h in hits
        )
    raise ValueError(f"unknown debugging mode: {mode!r}")


def _ids_to_gcis(tbox: TBox, ids: Iterable[int]) -> list[GCI]:
    out = []
    for axiom_id in sorted(ids):
        ax = tbox.axiom(axiom_id)
        out.append(_as_gci(ax))
    return out


# ---------------------------------------------------------------------------
# completion


@dataclass(frozen=True)
class CandidateSet:
    validated: tuple[GCI, ...]
    rejected: tuple[GCI, ...]
    unknown: tuple[GCI, ...]
    already_entailed: tuple[GCI, ...] = ()

    def to_json(self) -> dict:
        return {
            "validated": [axiom_str(a) for a in self.validated],
            "rejected": [axiom_str(a) for a in self.rejected],
            "unknown": [axiom_str(a) for a in self.unknown],
            "alreadyEntailed": [axiom_str(a) for a in self.already_entailed],
        }


def _side_pool(tbox: TBox) -> list[Concept]:
    """Candidate sides: public names plus one-level existentials in the TBox."""
    names = sorted(n for n in tbox.concept_names if not n.startswith("__"))
    pool: list[Concept] = [Atomic(n) for n in names]
    seen: set[Concept] = set(pool)
    for ax in tbox.gcis:
        for expr in _one_level_exists(ax.lhs) + _one_level_exists(ax.rhs):
            if expr not in seen:
                seen.add(expr)
                pool.append(expr)
    return pool


def _one_level_exists(c: Concept) -> list[Exists]:
    found: list[Exists] = []
    stack = [c]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Exists):
            if isinstance(cur.filler, Atomic):
                found.append(cur)
            stack.append(cur.filler)
        elif hasattr(cur, "left"):
            stack.append(cur.left)  # type: ignore[attr-defined]
            stack.append(cur.right)  # type: ignore[attr-defined]
        elif hasattr(cur, "operand"):
            stack.append(cur.operand)  # type: ignore[attr-defined]
        elif hasattr(cur, "filler"):
            stack.append(cur.filler)  # type: ignore[attr-defined]
    return sorted(found, key=lambda e: (e.role, e.filler.name))


def completion_candidates(
    cdp: CDP, missing: GCI, work: Optional[TBox] = None
) -> CandidateSet:
    """Candidate additions for one missing axiom over the working TBox.

    A candidate pairs a superconcept of the missing axiom's left side with a
    subconcept of its right side; a pair of same-role existentials also
    yields the lifted filler inclusion. Every candidate is judged by the
    oracle; candidates the working TBox already entails (the missing axiom
    itself among them, whenever it is entailed) are kept and marked.
    """
    tbox = work if work is not None else cdp.tbox
    reasoner = TBoxReasoner(tbox)
    pool = _side_pool(tbox)
    uppers = [x for x in pool if reasoner.entails(GCI(missing.lhs, x))]
    lowers = [y for y in pool if reasoner.entails(GCI(y, missing.rhs))]
    candidates: list[GCI] = []
    seen: set[str] = set()
    entailed_keys: set[str] = set()

    def consider(lhs: Concept, rhs: Concept) -> None:
        if lhs == rhs:
            return
        cand = GCI(lhs, rhs)
        key = axiom_str(cand)
        if key in seen:
            return
        seen.add(key)
        if reasoner.entails(cand):
            entailed_keys.add(key)
        candidates.append(cand)

    for x in uppers:
        for y in lowers:
            consider(x, y)
            if (
                isinstance(x, Exists)
                and isinstance(y, Exists)
                and x.role == y.role
            ):
                consider(x.filler, y.filler)
    validated, rejected, unknown, entailed = [], [], [], []
    for cand in sorted(candidates, key=axiom_str):
        if axiom_str(cand) in entailed_keys:
            entailed.append(cand)
        verdict = cdp.oracle.ask(cand)
        if verdict is Verdict.TRUE:
            validated.append(cand)
        elif verdict is Verdict.FALSE:
            rejected.append(cand)
        else:
            unknown.append(cand)
    return CandidateSet(
        tuple(validated), tuple(rejected), tuple(unknown), tuple(entailed)
    )


def completion_candidate_pool(
    cdp: CDP, max_rounds: int = 5
) -> CandidateSet:
    """Iterated candidate generation: validated candidates re-seed the TBox.

    Each round generates candidates for the previous round's additions with
    all validated candidates so far folded into the working TBox, until no
    new validated candidate appears or `max_rounds` is reached.
    """
    work = cdp.tbox
    targets: tuple[GCI, ...] = cdp.missing
    validated: dict[str, GCI] = {}
    rejected: dict[str, GCI] = {}
    unknown: dict[str, GCI] = {}
    entailed: dict[str, GCI] = {}
    for _ in range(max_rounds):
        new_validated: list[GCI] = []
        for m in targets:
            cands = completion_candidates(cdp, m, work)
            for c in cands.validated:
                key = axiom_str(c)
                if key not in validated:
                    validated[key] = c
                    new_validated.append(c)
            for c in cands.rejected:
                rejected.setdefault(axiom_str(c), c)
            for c in cands.unknown:
                unknown.setdefault(axiom_str(c), c)
            for c in cands.already_entailed:
                entailed.setdefault(axiom_str(c), c)
        if not new_validated:
            break
        work = work.extend(new_validated)
        targets = tuple(new_validated)
    return CandidateSet(
        tuple(validated[k] for k in sorted(validated)),
        tuple(rejected[k] for k in sorted(rejected)),
        tuple(unknown[k] for k in sorted(unknown)),
        tuple(entailed[k] for k in sorted(entailed)),
    )


Chooser = Callable[[GCI, Sequence[GCI], TBox], Optional[GCI]]


def most_general_chooser(missing: GCI, validated: Sequence[GCI], work: TBox) -> Optional[GCI]:
    """Pick a generality-maximal validated candidate, ties by axiom text.

    Candidate c is at least as general as d when c's left side subsumes d's
    and c's right side is subsumed by d's, so adding c yields d.
    """
    if not validated:
        return None
    reasoner = TBoxReasoner(work)

    def at_least_as_general(c: GCI, d: GCI) -> bool:
        return reasoner.entails(GCI(d.lhs, c.lhs)) and reasoner.entails(
            GCI(c.rhs, d.rhs)
        )

    maximal = [
        c
        for c in validated
        if not any(
            at_least_as_general(d, c) and not at_least_as_general(c, d)
            for d in validated
        )
    ]
    return min(maximal, key=axiom_str)


def complete_repair(
    cdp: CDP,
    chooser: Chooser = most_general_chooser,
    policy: Policy = PRUDENT,
    max_rounds: int = 5,
) -> Repair:
    """Add-only repair making every missing axiom entailed.

    Chooses one candidate per still-unentailed missing axiom per round, then
    treats the round's additions as the next round's missing axioms. Wrong
    axioms are not consulted here; run debugging first for those.
    """
    work = cdp.tbox
    targets: tuple[GCI, ...] = cdp.missing
    adds: list[GCI] = []
    for _ in range(max_rounds):
        picked: list[GCI] = []
        for m in targets:
            if TBoxReasoner(work).entails(m):
                continue
            cands = completion_candidates(cdp, m, work)
            eligible = list(cands.validated)
            if not policy.unknown_blocks_add:
                eligible += list(cands.unknown)
            choice = chooser(m, tuple(eligible), work)
            if choice is None:
                continue
            picked.append(choice)
        if not picked:
            break
        adds.extend(picked)
        work = work.extend(picked)
        targets = tuple(picked)
    missing_left = [m for m in cdp.missing if not TBoxReasoner(work).entails(m)]
    if missing_left:
        raise RepairFailed(verify_repair(cdp, Repair.make(adds=adds), policy))
    return Repair.make(adds=adds)


def combined_repair(
    cdp: CDP,
    mode: str = REMOVE_ALL_FALSE,
    chooser: Chooser = most_general_chooser,
    policy: Policy = PRUDENT,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> Repair:
    """Debug the wrong axioms, complete the missing ones, verify the result."""
    debugged = debug_repairs(cdp, mode, policy, node_limit)
    deletes = debugged[0].deletes
    ids, _ = resolve_deletes(cdp.tbox, Repair.make(deletes=deletes))
    working_cdp = CDP(
        cdp.tbox.drop(ids), cdp.oracle, cdp.missing, cdp.wrong, cdp.concepts
    )
    completion = complete_repair(working_cdp, chooser, policy)
    repair = Repair.make(adds=completion.adds, deletes=deletes)
    report = verify_repair(cdp, repair, policy)
    if not report.holds:
        raise RepairFailed(report)
    return repair


def remove_redundancy(
    cdp: CDP, repair: Repair, policy: Policy = PRUDENT
) -> Repair:
    """Greedily shrink a verified repair while it keeps verifying.

    One element is dropped at a time — additions first in canonical text
    order, then deletions in ascending axiom-id order — and a drop is kept
    only when the remaining pair still verifies. Runs to fixpoint, so no
    single element of the result can be removed without breaking it.
    """

    def delete_key(d: GCI) -> tuple[int, str]:
        key = axiom_str(d)
        for axiom_id in cdp.tbox.ids:
            if axiom_str(cdp.tbox.axiom(axiom_id)) == key:
                return (axiom_id, key)
        return (len(cdp.tbox.ids) + 1, key)

    adds = list(repair.adds)
    deletes = list(repair.deletes)
    changed = True
    while changed:
        changed = False
        for a in sorted(adds, key=axiom_str):
            cand = Repair.make(adds=[x for x in adds if x != a], deletes=deletes)
            if verify_repair(cdp, cand, policy).holds:
                adds.remove(a)
                changed = True
                break
        if changed:
            continue
        for d in sorted(deletes, key=delete_key):
            cand = Repair.make(adds=adds, deletes=[x for x in deletes if x != d])
            if verify_repair(cdp, cand, policy).holds:
                deletes.remove(d)
                changed = True
                break
    return Repair.make(adds=adds, deletes=deletes)
