"""Axiom pinpointing: justifications, MUPS, MIPS, minimal hitting sets.

All algorithms are black box: they only call the reasoner on sub-TBoxes and
never inspect proofs. Justifications are found by relevance-guided expansion
followed by window shrinking; the full set of justifications comes from a
hitting-set-tree enumeration with node reuse and closed-branch pruning.
Minimal hitting sets use Reiter's breadth-first tree with the same pruning.

Results are identified by axiom id and returned in a canonical order (set
size, then sorted ids). Tree searches count expanded nodes and raise
ResourceExceeded past `node_limit`.
"""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Sequence

from .core import Atomic, Axiom, BOTTOM, GCI, TBox, axiom_signature
from .reasoner import ResourceExceeded, entails, is_satisfiable, unsatisfiable_concepts

DEFAULT_NODE_LIMIT = 100_000


class NotEntailed(Exception):
    """The axiom to justify is not entailed by the TBox."""


class NotUnsatisfiable(Exception):
    """MUPS was asked for a satisfiable concept."""


class EmptyConflict(Exception):
    """A conflict set is empty, so no hitting set exists."""


def _sorted_sets(sets: Iterable[frozenset]) -> tuple[frozenset, ...]:
    return tuple(sorted(set(sets), key=lambda s: (len(s), sorted(s))))


class _Prober:
    """Memoized entailment checks over sub-TBoxes of one parent TBox."""

    def __init__(self, tbox: TBox, axiom: Axiom):
        self.tbox = tbox
        self.axiom = axiom
        self._cache: dict[frozenset[int], bool] = {}

    def entailed_by(self, ids: frozenset[int]) -> bool:
        hit = self._cache.get(ids)
        if hit is None:
            hit = entails(self.tbox.restrict(ids), self.axiom)
            self._cache[ids] = hit
        return hit


def _expand(prober: _Prober, available: frozenset[int]) -> list[int]:
    """Grow a relevant, entailing subset of `available` by signature waves."""
    if prober.entailed_by(frozenset()):
        return []  # tautologies need no support
    tbox = prober.tbox
    sig: set[str] = set()
    for part in axiom_signature(prober.axiom):
        sig |= part
    selected: list[int] = []
    remaining = sorted(available)
    while remaining:
        wave = []
        for axiom_id in remaining:
            c, r = axiom_signature(tbox.axiom(axiom_id))
            if (c | r) & sig:
                wave.append(axiom_id)
        if not wave:
            break
        for axiom_id in wave:
            remaining.remove(axiom_id)
            selected.append(axiom_id)
            c, r = axiom_signature(tbox.axiom(axiom_id))
            sig |= c | r
        if prober.entailed_by(frozenset(selected)):
            return selected
    # signature-disconnected axioms can still matter in corner cases
    selected += remaining
    if not prober.entailed_by(frozenset(selected)):
        raise NotEntailed(f"not entailed: {prober.axiom}")
    return selected


def _shrink(prober: _Prober, selected: list[int]) -> frozenset[int]:
    """Remove chunks, then single axioms, keeping entailment; minimal result."""
    current = list(selected)
    window = len(current) // 2
    while window >= 1:
        start = 0
        while start < len(current) and window <= len(current):
            trial = current[:start] + current[start + window :]
            if prober.entailed_by(frozenset(trial)):
                current = trial
            else:
                start += window
        window //= 2
    for axiom_id in list(current):  # final pass certifies minimality
        trial = [x for x in current if x != axiom_id]
        if prober.entailed_by(frozenset(trial)):
            current = trial
    return frozenset(current)


def single_justification(tbox: TBox, axiom: Axiom) -> frozenset[int]:
    """One minimal subset of tbox entailing axiom; NotEntailed otherwise."""
    prober = _Prober(tbox, axiom)
    return _shrink(prober, _expand(prober, tbox.ids))


def all_justifications(
    tbox: TBox, axiom: Axiom, node_limit: int = DEFAULT_NODE_LIMIT
) -> tuple[frozenset[int], ...]:
    """Every minimal subset of tbox entailing axiom, canonical order."""
    prober = _Prober(tbox, axiom)
    if not prober.entailed_by(tbox.ids):
        raise NotEntailed(f"not entailed: {axiom}")
    first = _shrink(prober, _expand(prober, tbox.ids))
    results: set[frozenset[int]] = {first}
    closed: list[frozenset[int]] = []
    visited: set[frozenset[int]] = {frozenset()}
    queue: deque[tuple[frozenset[int], frozenset[int]]] = deque([(frozenset(), first)])
    nodes = 0
    while queue:
        removed, label = queue.popleft()
        for axiom_id in sorted(label):
            rem = removed | {axiom_id}
            if rem in visited or any(rem >= c for c in closed):
                continue
            visited.add(rem)
            nodes += 1
            if nodes > node_limit:
                raise ResourceExceeded("justification search", node_limit)
            rest = tbox.ids - rem
            reuse = next((j for j in results if not (j & rem)), None)
            if reuse is not None:
                queue.append((rem, reuse))
                continue
            if not prober.entailed_by(rest):
                closed.append(rem)
                continue
            just = _shrink(prober, _expand(prober, rest))
            results.add(just)
            queue.append((rem, just))
    return _sorted_sets(results)


def mups(
    tbox: TBox, concept_name: str, node_limit: int = DEFAULT_NODE_LIMIT
) -> tuple[frozenset[int], ...]:
    """Minimal sub-TBoxes in which `concept_name` is unsatisfiable."""
    if is_satisfiable(tbox, Atomic(concept_name)):
        raise NotUnsatisfiable(f"satisfiable concept: {concept_name}")
    return all_justifications(tbox, GCI(Atomic(concept_name), BOTTOM), node_limit)


def mips(tbox: TBox, node_limit: int = DEFAULT_NODE_LIMIT) -> tuple[frozenset[int], ...]:
    """Minimal incoherence-preserving sub-TBoxes: subset-minimal MUPS union."""
    collected: set[frozenset[int]] = set()
    for name in unsatisfiable_concepts(tbox):
        collected |= set(mups(tbox, name, node_limit))
    reduced = [s for s in collected if not any(o < s for o in collected)]
    return _sorted_sets(reduced)


def minimal_hitting_sets(
    conflicts: Sequence[Iterable[Hashable]], node_limit: int = DEFAULT_NODE_LIMIT
) -> tuple[frozenset, ...]:
    """All minimal hitting sets of the conflict sets (Reiter's tree)."""
    sets = [frozenset(c) for c in conflicts]
    for s in sets:
        if not s:
            raise EmptyConflict("a conflict set is empty")
    if not sets:
        return (frozenset(),)
    sets.sort(key=lambda s: (len(s), sorted(map(repr, s))))
    results: list[frozenset] = []
    visited: set[frozenset] = {frozenset()}
    queue: deque[frozenset] = deque([frozenset()])
    nodes = 0
    while queue:
        path = queue.popleft()
        nodes += 1
        if nodes > node_limit:
            raise ResourceExceeded("hitting-set search", node_limit)
        open_conflict = next((c for c in sets if not (c & path)), None)
        if open_conflict is None:
            if not any(r <= path for r in results):
                results.append(path)
            continue
        for element in sorted(open_conflict, key=repr):
            child = path | {element}
            if child in visited or any(r <= child for r in results):
                continue
            visited.add(child)
            queue.append(child)
    return _sorted_sets(results)


def rank_by_mips_arity(mips_sets: Sequence[frozenset[int]]) -> list[int]:
    """Axiom ids by how many MIPS they occur in, most frequent first."""
    counts: dict[int, int] = {}
    for s in mips_sets:
        for axiom_id in s:
            counts[axiom_id] = counts.get(axiom_id, 0) + 1
    return sorted(counts, key=lambda a: (-counts[a], a))
