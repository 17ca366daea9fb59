"""HTTP/JSON sessions for interactive debugging and completion.

A session wraps one problem: a TBox, candidate missing axioms, and candidate
wrong axioms. The human plays the oracle. The service asks its questions in
stages — first validation of the candidate defects themselves, then the
axioms supporting the confirmed wrong entailments (ranked by how many
minimal incoherence witnesses they occur in), then completion candidates
(most general first) — and proposes verified repairs once the answers
suffice: one per minimal hitting set of the filtered conflict sets plus the
remove-all-false variant. Answers may be revised at any time; stale repairs
are withdrawn and recomputed.

Every session is event sourced. The only state is an append-only JSON-lines
log per session under the data directory (`tbox-loaded`, `query-issued`,
`answer-received`, `answer-revised`, `repair-proposed`, `repair-executed`);
queries, repairs, and analyses are recomputed deterministically from the
input events, so replaying a log byte-identically reproduces the session.

Endpoints: POST /sessions; GET /sessions/{id}; GET /sessions/{id}/queries;
POST /sessions/{id}/answers; GET /sessions/{id}/repairs;
GET /sessions/{id}/analysis; POST /sessions/{id}/execute;
GET /sessions/{id}/history; GET /sessions/{id}/result.

Configuration: the data directory comes from the app factory argument or the
ONTOREPAIR_DATA_DIR environment variable; the listen port belongs to the
process launcher. An optional static directory is mounted at /ui.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .core import (
    Atomic,
    BOTTOM,
    GCI,
    ParseError,
    TBox,
    axiom_signature,
    axiom_str,
    parse_axiom,
    parse_tbox,
    serialize_tbox,
)
from .diagnosis import (
    all_justifications,
    minimal_hitting_sets,
    mips,
    rank_by_mips_arity,
)
from .oracle import InteractiveOracle, Oracle, QueryLog, Verdict
from .preferences import PREFERENCES, PreferenceContext
from .reasoner import TBoxReasoner, entails, unsatisfiable_concepts
from .repair import (
    CDP,
    NoRepairWithoutCorrectRemoval,
    Repair,
    RepairFailed,
    apply_repair,
    complete_repair,
    conflict_sets,
    make_cdp,
    verify_repair,
)

TBOX_LOADED = "tbox-loaded"
QUERY_ISSUED = "query-issued"
ANSWER_RECEIVED = "answer-received"
ANSWER_REVISED = "answer-revised"
REPAIR_PROPOSED = "repair-proposed"
REPAIR_EXECUTED = "repair-executed"

PHASE_DETECTING = "detecting"
PHASE_VALIDATING = "validating"
PHASE_REPAIRING = "repairing"
PHASE_DONE = "done"

DEFAULT_QUERY_ORDER = ("defects", "conflicts", "completion")


class _LogView(Oracle):
    """Read-only oracle over an existing log: never records, never queues."""

    name = "log-view"

    def __init__(self, log: QueryLog):
        self.log = log

    def ask(self, axiom) -> Verdict:
        logged = self.log.effective(axiom_str(axiom))
        return logged if logged is not None else Verdict.UNKNOWN

    def _judge(self, axiom):  # pragma: no cover - ask is overridden
        return None


def _repair_id(repair: Repair) -> str:
    payload = json.dumps(repair.to_json(), sort_keys=True).encode("utf-8")
    return "r-" + hashlib.sha1(payload).hexdigest()[:10]


@dataclass
class _Derived:
    """State recomputed from the input events of one session."""

    phase: str
    queries: list[dict]
    repairs: list[dict]
    repair_objects: dict[str, Repair] = field(default_factory=dict)
    goal_missing: list[str] = field(default_factory=list)
    goal_wrong: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    answered: int = 0
    executed_repair: Optional[str] = None


class _Session:
    """One session: its event list, file path, lock, and derived cache."""

    def __init__(self, sid: str, path: Path):
        self.sid = sid
        self.path = path
        self.lock = threading.RLock()
        self.events: list[dict] = []
        self._derived: Optional[_Derived] = None
        self._derived_at = -1

    def append(self, event: dict) -> dict:
        line = json.dumps({"seq": len(self.events), **event}, sort_keys=True)
        stored = json.loads(line)
        self.events.append(stored)
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(line + "\n")
        return stored

    def derived(self) -> _Derived:
        if self._derived is None or self._derived_at != len(self.events):
            self._derived = _derive(self.events)
            self._derived_at = len(self.events)
        return self._derived


def _most_general_order(work: TBox, axioms: list[GCI]) -> list[GCI]:
    """Sort candidates most general first, ties by axiom text."""
    reasoner = TBoxReasoner(work)

    def at_least_as_general(c: GCI, d: GCI) -> bool:
        return reasoner.entails(GCI(d.lhs, c.lhs)) and reasoner.entails(
            GCI(c.rhs, d.rhs)
        )

    def score(c: GCI) -> tuple:
        dominated = sum(
            1 for d in axioms if d is not c and at_least_as_general(c, d)
        )
        return (-dominated, axiom_str(c))

    return sorted(axioms, key=score)


def _derive(events: list[dict]) -> _Derived:
    """Recompute the full session state from input events only."""
    loaded = events[0]
    tbox = parse_tbox(loaded["tbox"])
    missing = [parse_axiom(a) for a in loaded["missing"]]
    wrong = [parse_axiom(a) for a in loaded["wrong"]]
    options = loaded.get("options", {})
    query_order = tuple(options.get("queryOrder", DEFAULT_QUERY_ORDER))

    oracle = InteractiveOracle()
    executed_repair: Optional[str] = None
    for event in events[1:]:
        if event["type"] in (ANSWER_RECEIVED, ANSWER_REVISED):
            oracle.answer(
                parse_axiom(event["axiom"]), Verdict(event["verdict"])
            )
        elif event["type"] == REPAIR_EXECUTED:
            executed_repair = event["repairId"]

    def unanswered(ax: GCI) -> bool:
        return oracle.log.effective(axiom_str(ax)) is None

    notes: list[str] = []
    batches: dict[str, list[dict]] = {name: [] for name in DEFAULT_QUERY_ORDER}

    # Detection: unsatisfiable concepts become implicit wrong entailments.
    unsat = unsatisfiable_concepts(tbox)
    wrong_all = list(wrong)
    wrong_strs = {axiom_str(w) for w in wrong}
    for name in unsat:
        implicit = GCI(Atomic(name), BOTTOM)
        if axiom_str(implicit) not in wrong_strs:
            wrong_all.append(implicit)
            wrong_strs.add(axiom_str(implicit))

    # Stage 1: validate the candidate defects themselves.
    for m in missing:
        oracle.ask(m)
        if unanswered(m):
            batches["defects"].append(
                {"axiom": axiom_str(m), "context": "candidate missing axiom"}
            )
    for w in wrong_all:
        oracle.ask(w)
        if unanswered(w):
            batches["defects"].append(
                {"axiom": axiom_str(w), "context": "candidate wrong axiom"}
            )

    goal_missing = [m for m in missing if oracle.ask(m) is Verdict.TRUE]
    goal_wrong = [w for w in wrong_all if oracle.ask(w) is not Verdict.TRUE]
    entailed_wrong = [w for w in goal_wrong if entails(tbox, w)]

    # Stage 2: the axioms supporting the confirmed wrong entailments.
    support_counts: dict[int, int] = {}
    if not batches["defects"]:
        for w in entailed_wrong:
            for just in all_justifications(tbox, w):
                for axiom_id in just:
                    support_counts[axiom_id] = support_counts.get(axiom_id, 0) + 1
        rank = rank_by_mips_arity(mips(tbox)) if unsat else []
        position = {axiom_id: i for i, axiom_id in enumerate(rank)}
        ordered_ids = sorted(
            support_counts, key=lambda a: (position.get(a, len(rank)), a)
        )
        for axiom_id in ordered_ids:
            ax = tbox.axiom(axiom_id)
            oracle.ask(ax)
            if unanswered(ax):
                batches["conflicts"].append(
                    {
                        "axiom": axiom_str(ax),
                        "context": f"supports {support_counts[axiom_id]} conflict set(s)",
                    }
                )

    # Stage 3: completion candidates and repair proposal.
    repairs: list[dict] = []
    repair_objects: dict[str, Repair] = {}
    has_work = bool(entailed_wrong) or any(
        not entails(tbox, m) for m in goal_missing
    )
    if not batches["defects"] and not batches["conflicts"]:
        goal_cdp = make_cdp(tbox, oracle, goal_missing, goal_wrong)
        variants: list[tuple[str, frozenset[int]]] = []
        try:
            conflicts = conflict_sets(goal_cdp)
        except NoRepairWithoutCorrectRemoval as exc:
            conflicts = None
            notes.append(str(exc))
        if conflicts:
            hits = minimal_hitting_sets(conflicts)
            variants = [("hitting-set", h) for h in hits]
            union: set[int] = set()
            for c in conflicts:
                union |= c
            variants.append(("remove-all-false", frozenset(union)))
        elif conflicts is not None:
            variants = [("no-change", frozenset())]
        before_completion = set(oracle.pending)
        for origin, delete_ids in variants:
            work = tbox.drop(delete_ids)
            work_cdp = CDP(
                work,
                oracle,
                tuple(goal_missing),
                tuple(goal_wrong),
                goal_cdp.concepts,
            )
            try:
                completion = complete_repair(work_cdp)
            except RepairFailed:
                continue
            deletes = [
                ax
                for ax in (tbox.axiom(i) for i in sorted(delete_ids))
                if isinstance(ax, GCI)
            ]
            repair = Repair.make(adds=completion.adds, deletes=deletes)
            rid = _repair_id(repair)
            if rid in repair_objects:
                continue
            report = verify_repair(goal_cdp, repair)
            if not report.holds:
                continue
            repair_objects[rid] = repair
            repairs.append(
                {
                    "id": rid,
                    "origin": origin,
                    "add": [axiom_str(a) for a in repair.adds],
                    "delete": [axiom_str(d) for d in repair.deletes],
                    "verification": report.to_json(),
                }
            )
        candidate_pending = [
            k for k in oracle.pending if k not in before_completion
        ]
        if candidate_pending:
            most_deleted: set[int] = set()
            for _origin, delete_ids in variants:
                most_deleted |= delete_ids
            ordered = _most_general_order(
                tbox.drop(most_deleted),
                [parse_axiom(k) for k in candidate_pending],
            )
            for cand in ordered:
                batches["completion"].append(
                    {
                        "axiom": axiom_str(cand),
                        "context": "completion candidate",
                    }
                )

    queries: list[dict] = []
    for stage in query_order:
        queries.extend(batches.get(stage, []))

    if executed_repair is not None:
        phase = PHASE_DONE
    elif queries:
        phase = PHASE_VALIDATING
    elif not has_work:
        phase = PHASE_DONE
    else:
        phase = PHASE_REPAIRING

    if not has_work and not queries and not repair_objects:
        noop = Repair.make()
        rid = _repair_id(noop)
        repair_objects[rid] = noop
        repairs.append(
            {
                "id": rid,
                "origin": "no-change",
                "add": [],
                "delete": [],
                "verification": verify_repair(
                    make_cdp(tbox, oracle, goal_missing, goal_wrong), noop
                ).to_json(),
            }
        )

    answered = len({entry.axiom for entry in oracle.log.entries})
    return _Derived(
        phase=phase,
        queries=queries,
        repairs=repairs,
        repair_objects=repair_objects,
        goal_missing=[axiom_str(m) for m in goal_missing],
        goal_wrong=[axiom_str(w) for w in goal_wrong],
        notes=notes,
        answered=answered,
        executed_repair=executed_repair,
    )


class _Store:
    """All sessions, persisted one JSON-lines file each."""

    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, _Session] = {}
        self._lock = threading.Lock()

    def _path(self, sid: str) -> Path:
        return self.data_dir / f"{sid}.events.jsonl"

    def create(self) -> _Session:
        sid = uuid.uuid4().hex[:12]
        with self._lock:
            session = _Session(sid, self._path(sid))
            self._sessions[sid] = session
        return session

    def get(self, sid: str) -> _Session:
        with self._lock:
            session = self._sessions.get(sid)
            if session is None:
                path = self._path(sid)
                if not path.exists():
                    raise HTTPException(404, detail=f"unknown session: {sid}")
                session = _Session(sid, path)
                with path.open(encoding="utf-8") as handle:
                    session.events = [
                        json.loads(line) for line in handle if line.strip()
                    ]
                self._sessions[sid] = session
        return session


class CreateSessionRequest(BaseModel):
    tbox: str
    missing: list[str] = []
    wrong: list[str] = []
    options: dict = {}


class AnswerRequest(BaseModel):
    axiom: str
    verdict: str
    revise: bool = False


class ExecuteRequest(BaseModel):
    repairId: str


def _parse_gci(text: str, role: str) -> GCI:
    try:
        ax = parse_axiom(text)
    except ParseError as exc:
        raise HTTPException(
            400,
            detail={
                "error": f"{role}: {exc.message}",
                "axiom": text,
                "line": exc.line,
                "column": exc.column,
            },
        ) from None
    if not isinstance(ax, GCI):
        raise HTTPException(
            400, detail={"error": f"{role}: expected a concept inclusion", "axiom": text}
        )
    return ax


def _session_body(session: _Session) -> dict:
    derived = session.derived()
    return {
        "id": session.sid,
        "phase": derived.phase,
        "pendingQueries": [q["axiom"] for q in derived.queries],
        "answered": derived.answered,
        "goalMissing": derived.goal_missing,
        "goalWrong": derived.goal_wrong,
        "repairs": [r["id"] for r in derived.repairs],
        "executedRepair": derived.executed_repair,
        "notes": derived.notes,
    }


def create_app(
    data_dir: Optional[str | Path] = None,
    static_dir: Optional[str | Path] = None,
) -> FastAPI:
    """Build the service around a data directory of session logs."""
    base = Path(
        data_dir
        if data_dir is not None
        else os.environ.get("ONTOREPAIR_DATA_DIR", "ontorepair-data")
    )
    store = _Store(base)
    app = FastAPI(title="ontorepair", version="1")
    app.state.store = store

    static = static_dir or os.environ.get("ONTOREPAIR_STATIC_DIR")
    if static and Path(static).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(static), html=True), name="ui")

    @app.post("/sessions", status_code=201)
    def create_session(request: CreateSessionRequest) -> dict:
        try:
            tbox = parse_tbox(request.tbox)
        except ParseError as exc:
            raise HTTPException(
                400,
                detail={
                    "error": exc.message,
                    "line": exc.line,
                    "column": exc.column,
                },
            ) from None
        concepts, roles = tbox.signature()
        missing = [_parse_gci(a, "missing") for a in request.missing]
        wrong = [_parse_gci(a, "wrong") for a in request.wrong]
        for ax in missing + wrong:
            ax_concepts, ax_roles = axiom_signature(ax)
            bad = (set(ax_concepts) - set(concepts)) | (set(ax_roles) - set(roles))
            if bad:
                raise HTTPException(
                    400,
                    detail={
                        "error": f"names outside the TBox signature: {sorted(bad)}",
                        "axiom": axiom_str(ax),
                    },
                )
        order = request.options.get("queryOrder")
        if order is not None and sorted(order) != sorted(DEFAULT_QUERY_ORDER):
            raise HTTPException(
                400,
                detail={
                    "error": "queryOrder must permute "
                    + ", ".join(DEFAULT_QUERY_ORDER)
                },
            )
        session = store.create()
        with session.lock:
            session.append(
                {
                    "type": TBOX_LOADED,
                    "tbox": request.tbox,
                    "missing": [axiom_str(m) for m in missing],
                    "wrong": [axiom_str(w) for w in wrong],
                    "options": request.options,
                }
            )
            derived = session.derived()
            for query in derived.queries:
                session.append({"type": QUERY_ISSUED, "axiom": query["axiom"]})
            for proposal in derived.repairs:
                session.append(
                    {
                        "type": REPAIR_PROPOSED,
                        "repairId": proposal["id"],
                        "add": proposal["add"],
                        "delete": proposal["delete"],
                        "origin": proposal["origin"],
                    }
                )
            body = _session_body(session)
        return body

    @app.get("/sessions/{sid}")
    def get_session(sid: str) -> dict:
        session = store.get(sid)
        with session.lock:
            return _session_body(session)

    @app.get("/sessions/{sid}/queries")
    def get_queries(sid: str) -> dict:
        session = store.get(sid)
        with session.lock:
            derived = session.derived()
            return {"phase": derived.phase, "queries": derived.queries}

    @app.post("/sessions/{sid}/answers")
    def submit_answer(sid: str, request: AnswerRequest) -> dict:
        session = store.get(sid)
        try:
            verdict = Verdict(request.verdict)
        except ValueError:
            raise HTTPException(
                400, detail={"error": f"unknown verdict: {request.verdict!r}"}
            ) from None
        axiom = _parse_gci(request.axiom, "answer")
        key = axiom_str(axiom)
        with session.lock:
            derived = session.derived()
            pending = {q["axiom"] for q in derived.queries}
            previously_answered = any(
                event["type"] in (ANSWER_RECEIVED, ANSWER_REVISED)
                and event["axiom"] == key
                for event in session.events
            )
            if key in pending and not request.revise:
                event_type = ANSWER_RECEIVED
            elif request.revise:
                event_type = (
                    ANSWER_REVISED if previously_answered else ANSWER_RECEIVED
                )
            else:
                raise HTTPException(
                    409,
                    detail={
                        "error": "axiom is not pending; set revise to change it",
                        "axiom": key,
                    },
                )
            before_queries = pending
            before_repairs = {r["id"] for r in derived.repairs}
            session.append(
                {"type": event_type, "axiom": key, "verdict": verdict.value}
            )
            updated = session.derived()
            for query in updated.queries:
                if query["axiom"] not in before_queries:
                    session.append({"type": QUERY_ISSUED, "axiom": query["axiom"]})
            after_repairs = {r["id"] for r in updated.repairs}
            for proposal in updated.repairs:
                if proposal["id"] not in before_repairs:
                    session.append(
                        {
                            "type": REPAIR_PROPOSED,
                            "repairId": proposal["id"],
                            "add": proposal["add"],
                            "delete": proposal["delete"],
                            "origin": proposal["origin"],
                        }
                    )
            final = session.derived()
            return {
                "recorded": {
                    "axiom": key,
                    "verdict": verdict.value,
                    "revised": event_type == ANSWER_REVISED,
                },
                "phase": final.phase,
                "queries": final.queries,
                "newRepairs": sorted(after_repairs - before_repairs),
                "removedRepairs": sorted(before_repairs - after_repairs),
            }

    @app.get("/sessions/{sid}/repairs")
    def get_repairs(sid: str) -> dict:
        session = store.get(sid)
        with session.lock:
            derived = session.derived()
            return {"phase": derived.phase, "repairs": derived.repairs}

    @app.get("/sessions/{sid}/analysis")
    def get_analysis(sid: str) -> dict:
        session = store.get(sid)
        with session.lock:
            derived = session.derived()
            if not derived.repairs:
                raise HTTPException(
                    409, detail={"error": "no candidate repairs yet"}
                )
            events = session.events
            loaded = events[0]
            tbox = parse_tbox(loaded["tbox"])
            log = QueryLog()
            for event in events[1:]:
                if event["type"] in (ANSWER_RECEIVED, ANSWER_REVISED):
                    if log.effective(event["axiom"]) is None:
                        log.record(
                            event["axiom"], Verdict(event["verdict"]), "user"
                        )
                    else:
                        log.revise(
                            event["axiom"], Verdict(event["verdict"]), "user"
                        )
            cdp = make_cdp(
                tbox,
                _LogView(log),
                [parse_axiom(a) for a in derived.goal_missing],
                [parse_axiom(a) for a in derived.goal_wrong],
            )
            context = PreferenceContext(cdp)
            ids = [r["id"] for r in derived.repairs]
            objects = [derived.repair_objects[i] for i in ids]
            matrix: dict[str, dict[str, dict]] = {}
            for rid, robj in zip(ids, objects):
                row: dict[str, dict] = {}
                for other_id, other in zip(ids, objects):
                    if other_id == rid:
                        continue
                    row[other_id] = context.relate(robj, other).to_json()
                matrix[rid] = row
            certificates = {}
            for rid, robj in zip(ids, objects):
                complete, missing_wit = context.maximally_complete(robj)
                incorrect, false_wit = context.minimally_incorrect(robj)
                certificates[rid] = {
                    "maximallyComplete": complete,
                    "missingTrue": [axiom_str(a) for a in missing_wit],
                    "minimallyIncorrect": incorrect,
                    "falseEntailed": [axiom_str(a) for a in false_wit],
                }
            by_object = {id(robj): rid for rid, robj in zip(ids, objects)}
            skyline = [
                by_object[id(r)]
                for r in context.skyline_within(objects, list(PREFERENCES))
            ]
            optimal = {
                pref: [
                    by_object[id(r)]
                    for r in context.optimal_within(
                        objects, pref, [p for p in PREFERENCES if p != pref]
                    )
                ]
                for pref in PREFERENCES
            }
            return {
                "candidates": ids,
                "matrix": matrix,
                "certificates": certificates,
                "skyline": skyline,
                "optimal": optimal,
            }

    @app.post("/sessions/{sid}/execute")
    def execute_repair(sid: str, request: ExecuteRequest) -> dict:
        session = store.get(sid)
        with session.lock:
            derived = session.derived()
            repair = derived.repair_objects.get(request.repairId)
            if repair is None:
                raise HTTPException(
                    409,
                    detail={
                        "error": "repair is not currently proposed",
                        "repairId": request.repairId,
                    },
                )
            events = session.events
            loaded = events[0]
            tbox = parse_tbox(loaded["tbox"])
            oracle = InteractiveOracle()
            for event in events[1:]:
                if event["type"] in (ANSWER_RECEIVED, ANSWER_REVISED):
                    oracle.answer(
                        parse_axiom(event["axiom"]), Verdict(event["verdict"])
                    )
            cdp = make_cdp(
                tbox,
                oracle,
                [parse_axiom(a) for a in derived.goal_missing],
                [parse_axiom(a) for a in derived.goal_wrong],
            )
            report = verify_repair(cdp, repair)
            if not report.holds:
                raise HTTPException(
                    409,
                    detail={
                        "error": "repair no longer verifies",
                        "verification": report.to_json(),
                    },
                )
            result_text = serialize_tbox(apply_repair(tbox, repair))
            session.append(
                {
                    "type": REPAIR_EXECUTED,
                    "repairId": request.repairId,
                    "result": result_text,
                }
            )
            result_path = store.data_dir / f"{session.sid}.result.tbox"
            result_path.write_text(result_text, encoding="utf-8")
            return {
                "executed": request.repairId,
                "phase": session.derived().phase,
                "result": f"/sessions/{session.sid}/result",
            }

    @app.get("/sessions/{sid}/history")
    def get_history(sid: str) -> dict:
        session = store.get(sid)
        with session.lock:
            return {"events": session.events}

    @app.get("/sessions/{sid}/result")
    def get_result(sid: str) -> PlainTextResponse:
        session = store.get(sid)
        with session.lock:
            for event in reversed(session.events):
                if event["type"] == REPAIR_EXECUTED:
                    return PlainTextResponse(event["result"])
            raise HTTPException(
                409, detail={"error": "no repair has been executed"}
            )

    return app
