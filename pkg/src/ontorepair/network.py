"""Ontology networks: ontologies connected by alignments.

An alignment is a set of mappings between concepts of two ontologies, each
carrying a confidence value. Flattening the network produces one TBox in
which every name is qualified by its ontology and every mapping becomes an
axiom (an equivalence becomes two inclusions). The usual debugging
machinery then applies to the flattened TBox; the repair search prefers
deleting mapping axioms over ontology axioms, breaking ties by deletion
count and then by the confidence mass removed.

Alignments are also a detection instrument on their own. Two equivalence
mappings whose endpoints are ordered in one ontology but not in the other
point at a candidate missing inclusion in the second ontology, and an
inclusion between one ontology's own concepts that holds only in the
flattened TBox is reported as a conservativity violation. Both detectors
only report; nothing is repaired implicitly.

Alignment files are line based: `Onto1:A equiv Onto2:X 0.95` or
`Onto1:A isa Onto2:X 0.80`, with `#` comments. A network manifest is a JSON
object with `ontologies` and `alignments` maps from identifier to file
path, resolved relative to the manifest's directory.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping as MappingType, Optional, Sequence

from .core import (
    And,
    Atomic,
    Axiom,
    Bottom,
    Concept,
    Exists,
    Forall,
    GCI,
    Not,
    Or,
    ParseError,
    RoleInclusion,
    TBox,
    Top,
    axiom_str,
    parse_tbox,
)
from .diagnosis import (
    DEFAULT_NODE_LIMIT,
    all_justifications,
    minimal_hitting_sets,
    mips,
)
from .oracle import Oracle, Verdict
from .reasoner import TBoxReasoner, entails
from .repair import NoRepairWithoutCorrectRemoval, PRUDENT, Policy, Repair

EQUIVALENCE = "equivalence"
IS_A = "is-a"
INVERSE_IS_A = "inverse-is-a"

_KINDS = (EQUIVALENCE, IS_A, INVERSE_IS_A)
_RELATION_TOKENS = {"equiv": EQUIVALENCE, "isa": IS_A}
_ENDPOINT_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_-]*):([A-Za-z_][A-Za-z0-9_-]*)$")


class DanglingEndpoint(Exception):
    """A mapping endpoint names a concept absent from its ontology."""


@dataclass(frozen=True)
class Mapping:
    """One alignment cell between concepts of two different ontologies."""

    left_ontology: str
    left_concept: str
    right_ontology: str
    right_concept: str
    kind: str = EQUIVALENCE
    confidence: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown mapping kind: {self.kind!r}")
        if self.left_ontology == self.right_ontology:
            raise ValueError("mapping endpoints must belong to different ontologies")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of range: {self.confidence}")

    def sort_key(self) -> tuple:
        return (
            self.left_ontology,
            self.left_concept,
            self.right_ontology,
            self.right_concept,
            self.kind,
            self.confidence,
        )


class OntologyNetwork:
    """Immutable collection of ontologies and pairwise alignments."""

    def __init__(
        self,
        ontologies: MappingType[str, TBox],
        alignments: Optional[MappingType[str, Iterable[Mapping]]] = None,
    ):
        self.ontologies: dict[str, TBox] = dict(ontologies)
        self.alignments: dict[str, tuple[Mapping, ...]] = {
            aid: tuple(sorted(maps, key=Mapping.sort_key))
            for aid, maps in (alignments or {}).items()
        }

    def mappings(self) -> tuple[tuple[str, Mapping], ...]:
        """All (alignmentId, mapping) pairs in deterministic order."""
        out = []
        for aid in sorted(self.alignments):
            for m in self.alignments[aid]:
                out.append((aid, m))
        return tuple(out)


def qualified_name(ontology_id: str, name: str) -> str:
    return f"{ontology_id}__{name}"


def _qualify_concept(concept: Concept, ontology_id: str) -> Concept:
    if isinstance(concept, Atomic):
        return Atomic(qualified_name(ontology_id, concept.name))
    if isinstance(concept, (Top, Bottom)):
        return concept
    if isinstance(concept, Not):
        return Not(_qualify_concept(concept.operand, ontology_id))
    if isinstance(concept, And):
        return And(
            _qualify_concept(concept.left, ontology_id),
            _qualify_concept(concept.right, ontology_id),
        )
    if isinstance(concept, Or):
        return Or(
            _qualify_concept(concept.left, ontology_id),
            _qualify_concept(concept.right, ontology_id),
        )
    if isinstance(concept, Exists):
        return Exists(
            qualified_name(ontology_id, concept.role),
            _qualify_concept(concept.filler, ontology_id),
        )
    if isinstance(concept, Forall):
        return Forall(
            qualified_name(ontology_id, concept.role),
            _qualify_concept(concept.filler, ontology_id),
        )
    raise TypeError(f"unknown concept: {concept!r}")


def _qualify_axiom(ax: Axiom, ontology_id: str, provenance: str) -> Axiom:
    if isinstance(ax, GCI):
        return GCI(
            _qualify_concept(ax.lhs, ontology_id),
            _qualify_concept(ax.rhs, ontology_id),
            provenance=provenance,
        )
    if isinstance(ax, RoleInclusion):
        return RoleInclusion(
            qualified_name(ontology_id, ax.sub),
            qualified_name(ontology_id, ax.sup),
            provenance=provenance,
        )
    raise TypeError(f"unknown axiom: {ax!r}")


def _mapping_axioms(mapping: Mapping, provenance: str) -> list[GCI]:
    left = Atomic(qualified_name(mapping.left_ontology, mapping.left_concept))
    right = Atomic(qualified_name(mapping.right_ontology, mapping.right_concept))
    if mapping.kind == EQUIVALENCE:
        return [
            GCI(left, right, provenance=provenance),
            GCI(right, left, provenance=provenance),
        ]
    if mapping.kind == IS_A:
        return [GCI(left, right, provenance=provenance)]
    return [GCI(right, left, provenance=provenance)]


# Per-axiom origin in the flattened TBox: ("ontology", ontologyId, None)
# or ("alignment", alignmentId, mapping).
_Source = tuple


def _check_endpoints(network: OntologyNetwork) -> None:
    for aid, mapping in network.mappings():
        for oid, concept in (
            (mapping.left_ontology, mapping.left_concept),
            (mapping.right_ontology, mapping.right_concept),
        ):
            if oid not in network.ontologies:
                raise DanglingEndpoint(
                    f"alignment {aid}: unknown ontology {oid!r}"
                )
            concepts, _roles = network.ontologies[oid].signature()
            if concept not in concepts:
                raise DanglingEndpoint(
                    f"alignment {aid}: concept {concept!r} not in ontology {oid!r}"
                )


def _build_union(network: OntologyNetwork) -> tuple[TBox, dict[int, _Source]]:
    _check_endpoints(network)
    axioms: list[Axiom] = []
    origins: list[_Source] = []
    for oid in sorted(network.ontologies):
        tbox = network.ontologies[oid]
        for ax in tbox.axioms:
            axioms.append(_qualify_axiom(ax, oid, provenance=f"ontology:{oid}"))
            origins.append(("ontology", oid, None))
    for aid, mapping in network.mappings():
        for ax in _mapping_axioms(mapping, provenance=f"alignment:{aid}"):
            axioms.append(ax)
            origins.append(("alignment", aid, mapping))
    declared_concepts: set[str] = set()
    declared_roles: set[str] = set()
    for oid in sorted(network.ontologies):
        tbox = network.ontologies[oid]
        declared_concepts |= {qualified_name(oid, n) for n in tbox.declared_concepts}
        declared_roles |= {qualified_name(oid, n) for n in tbox.declared_roles}
    union = TBox(
        axioms=axioms,
        declared_concepts=declared_concepts,
        declared_roles=declared_roles,
    )
    sources = {ax.id: origin for ax, origin in zip(union.axioms, origins)}
    return union, sources


def network_to_tbox(network: OntologyNetwork) -> TBox:
    """Flatten the network: qualified ontology axioms plus mapping axioms."""
    union, _sources = _build_union(network)
    return union


def _equivalences(network: OntologyNetwork) -> list[Mapping]:
    return [m for _aid, m in network.mappings() if m.kind == EQUIVALENCE]


def _endpoint_in(mapping: Mapping, ontology_id: str) -> Optional[str]:
    if mapping.left_ontology == ontology_id:
        return mapping.left_concept
    if mapping.right_ontology == ontology_id:
        return mapping.right_concept
    return None


def detect_candidate_missing_isa(
    network: OntologyNetwork,
) -> tuple[tuple[str, GCI], ...]:
    """Candidate inclusions suggested by pairs of equivalence mappings.

    If one ontology orders the endpoints of two equivalence mappings and the
    other ontology does not, the missing inclusion in the second ontology is
    emitted as a candidate for validation. Nothing is asserted.
    """
    reasoners = {oid: TBoxReasoner(tb) for oid, tb in network.ontologies.items()}
    equivalences = _equivalences(network)
    found: dict[tuple[str, str], tuple[str, GCI]] = {}
    for first in equivalences:
        pair = frozenset((first.left_ontology, first.right_ontology))
        for second in equivalences:
            if second is first:
                continue
            if frozenset((second.left_ontology, second.right_ontology)) != pair:
                continue
            for here, there in (
                (first.left_ontology, first.right_ontology),
                (first.right_ontology, first.left_ontology),
            ):
                a_here = _endpoint_in(first, here)
                b_here = _endpoint_in(second, here)
                a_there = _endpoint_in(first, there)
                b_there = _endpoint_in(second, there)
                if a_there == b_there:
                    continue
                candidate = GCI(Atomic(a_there), Atomic(b_there))
                if (there, axiom_str(candidate)) in found:
                    continue
                if a_here != b_here and not reasoners[here].entails(
                    GCI(Atomic(a_here), Atomic(b_here))
                ):
                    continue
                if reasoners[there].entails(candidate):
                    continue
                found[(there, axiom_str(candidate))] = (there, candidate)
    return tuple(found[key] for key in sorted(found))


def conservativity_violations(
    network: OntologyNetwork,
) -> tuple[tuple[str, GCI], ...]:
    """Within-ontology inclusions that hold only in the flattened network."""
    union = network_to_tbox(network)
    union_reasoner = TBoxReasoner(union)
    violations: list[tuple[str, GCI]] = []
    for oid in sorted(network.ontologies):
        tbox = network.ontologies[oid]
        local = TBoxReasoner(tbox)
        concepts, _roles = tbox.signature()
        names = sorted(n for n in concepts if not n.startswith("__"))
        for a in names:
            for b in names:
                if a == b:
                    continue
                if local.entails(GCI(Atomic(a), Atomic(b))):
                    continue
                lifted = GCI(
                    Atomic(qualified_name(oid, a)), Atomic(qualified_name(oid, b))
                )
                if union_reasoner.entails(lifted):
                    violations.append((oid, GCI(Atomic(a), Atomic(b))))
    return tuple(violations)


@dataclass(frozen=True)
class MappingRepairResult:
    """Deletion repair for the flattened network plus its objective value."""

    repair: Repair
    ontology_edit_required: bool
    ontology_deletions: int
    total_deletions: int
    confidence_removed: float

    def to_json(self) -> dict:
        return {
            "repair": self.repair.to_json(),
            "ontologyEditRequired": self.ontology_edit_required,
            "ontologyDeletions": self.ontology_deletions,
            "totalDeletions": self.total_deletions,
            "confidenceRemoved": self.confidence_removed,
        }


def _conflict_score(
    hit: frozenset[int], sources: dict[int, _Source]
) -> tuple[int, int, float]:
    ontology_deletions = sum(1 for i in hit if sources[i][0] == "ontology")
    confidence = sum(
        sources[i][2].confidence for i in hit if sources[i][0] == "alignment"
    )
    return (ontology_deletions, len(hit), confidence)


def mapping_repair(
    network: OntologyNetwork,
    oracle: Optional[Oracle] = None,
    wrong: Sequence[Axiom] = (),
    policy: Policy = PRUDENT,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> MappingRepairResult:
    """Deletion repair of the flattened network, mappings first.

    Conflict sets are the minimal incoherence witnesses of the flattened
    TBox plus the justifications of the given wrong axioms (stated over
    qualified names). When an oracle is supplied, axioms it calls true are
    protected, exactly as in ordinary debugging. Among the minimal hitting
    sets, the one deleting the fewest ontology axioms wins; ties fall to
    fewer deletions overall, then to the smallest mapping-confidence mass.
    """
    union, sources = _build_union(network)
    conflicts: list[frozenset[int]] = []
    conflicts.extend(mips(union, node_limit))
    for w in wrong:
        if not entails(union, w):
            continue
        conflicts.extend(all_justifications(union, w, node_limit))
    if oracle is not None:
        filtered_conflicts = []
        for conflict in conflicts:
            kept = set()
            for axiom_id in conflict:
                if axiom_id in policy.protected:
                    continue
                verdict = oracle.ask(union.axiom(axiom_id))
                if verdict is Verdict.TRUE:
                    continue
                if verdict is Verdict.UNKNOWN and policy.unknown_blocks_delete:
                    continue
                kept.add(axiom_id)
            if not kept:
                raise NoRepairWithoutCorrectRemoval(
                    "a conflict set contains only true or protected axioms"
                )
            filtered_conflicts.append(frozenset(kept))
        conflicts = filtered_conflicts
    unique = sorted(set(conflicts), key=lambda s: (len(s), sorted(s)))
    if not unique:
        return MappingRepairResult(Repair.make(), False, 0, 0, 0.0)
    ontology_edit_required = any(
        all(sources[i][0] == "ontology" for i in conflict) for conflict in unique
    )
    hits = minimal_hitting_sets(unique, node_limit)
    best = min(hits, key=lambda h: (_conflict_score(h, sources), sorted(h)))
    score = _conflict_score(best, sources)
    deletes = [union.axiom(i) for i in sorted(best)]
    return MappingRepairResult(
        repair=Repair.make(deletes=[d for d in deletes if isinstance(d, GCI)]),
        ontology_edit_required=ontology_edit_required,
        ontology_deletions=score[0],
        total_deletions=score[1],
        confidence_removed=score[2],
    )


# ---------------------------------------------------------------------------
# file formats


def parse_alignment(text: str) -> tuple[Mapping, ...]:
    """Parse `Onto:Concept equiv|isa Onto:Concept [confidence]` lines."""
    mappings: list[Mapping] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise ParseError("expected: endpoint relation endpoint [confidence]", line_no, 1)
        left, relation, right = parts[0], parts[1], parts[2]
        if relation not in _RELATION_TOKENS:
            raise ParseError(f"unknown relation: {relation!r}", line_no, 1)
        left_match = _ENDPOINT_RE.match(left)
        right_match = _ENDPOINT_RE.match(right)
        if left_match is None or right_match is None:
            raise ParseError("endpoints must look like Ontology:Concept", line_no, 1)
        confidence = 1.0
        if len(parts) == 4:
            try:
                confidence = float(parts[3])
            except ValueError:
                raise ParseError(f"bad confidence: {parts[3]!r}", line_no, 1) from None
        try:
            mappings.append(
                Mapping(
                    left_ontology=left_match.group(1),
                    left_concept=left_match.group(2),
                    right_ontology=right_match.group(1),
                    right_concept=right_match.group(2),
                    kind=_RELATION_TOKENS[relation],
                    confidence=confidence,
                )
            )
        except ValueError as exc:
            raise ParseError(str(exc), line_no, 1) from None
    return tuple(mappings)


def load_network(manifest_path: str | Path) -> OntologyNetwork:
    """Load a network from a JSON manifest of ontology and alignment files."""
    path = Path(manifest_path)
    manifest = json.loads(path.read_text(encoding="utf-8"))
    base = path.parent

    def _as_map(section) -> dict[str, Path]:
        if isinstance(section, dict):
            return {key: base / value for key, value in section.items()}
        return {Path(value).stem: base / value for value in section or []}

    ontologies = {
        oid: parse_tbox((file).read_text(encoding="utf-8"))
        for oid, file in sorted(_as_map(manifest.get("ontologies", {})).items())
    }
    alignments = {
        aid: parse_alignment(file.read_text(encoding="utf-8"))
        for aid, file in sorted(_as_map(manifest.get("alignments", {})).items())
    }
    return OntologyNetwork(ontologies, alignments)
