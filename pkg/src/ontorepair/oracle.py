"""Oracles: sources of domain verdicts about candidate axioms.

An oracle maps an axiom to a Verdict (true / false / unknown). Every oracle
writes through a QueryLog: the first verdict for an axiom is recorded, and
repeated asks return the logged verdict without consulting the backend
again. Log entries can be revised; the latest entry for an axiom wins, so a
revision overrides whatever the backend would say. The log serializes as
JSON lines and is the exchange format between batch runs, the CLI, and the
session service.

Available backends:

* truth-tbox: all-knowing, answers by entailment against a reference TBox;
* limited: answers from explicit true/false lists, unknown elsewhere;
* erroneous: truth-tbox with a seeded, per-axiom deterministic chance of
  flipping the verdict (flips depend only on seed and axiom text, never on
  query order);
* skeptical: a committee that answers only when all members agree;
* voting: a committee that answers with a verdict reaching the quorum
  (default: strict majority), unknown otherwise;
* interactive: answers come from a human; unanswered asks return unknown,
  are queued as pending, and are resolved by `answer`.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .core import Axiom, TBox, axiom_str, parse_axiom, parse_tbox
from .reasoner import entails


class Verdict(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LogEntry:
    seq: int
    axiom: str
    verdict: Verdict
    source: str
    revises: Optional[int] = None

    def to_json(self) -> dict:
        data = {
            "seq": self.seq,
            "axiom": self.axiom,
            "verdict": self.verdict.value,
            "source": self.source,
        }
        if self.revises is not None:
            data["revises"] = self.revises
        return data


class QueryLog:
    """Append-only verdict log; the latest entry per axiom is effective."""

    def __init__(self) -> None:
        self.entries: list[LogEntry] = []
        self._effective: dict[str, Verdict] = {}

    @property
    def version(self) -> int:
        return len(self.entries)

    def effective(self, axiom_text: str) -> Optional[Verdict]:
        return self._effective.get(axiom_text)

    def record(
        self,
        axiom_text: str,
        verdict: Verdict,
        source: str,
        revises: Optional[int] = None,
    ) -> LogEntry:
        entry = LogEntry(len(self.entries), axiom_text, verdict, source, revises)
        self.entries.append(entry)
        self._effective[axiom_text] = verdict
        return entry

    def revise(self, axiom_text: str, verdict: Verdict, source: str) -> LogEntry:
        """Record a new verdict for an already-logged axiom."""
        prior = next(
            (e.seq for e in reversed(self.entries) if e.axiom == axiom_text), None
        )
        if prior is None:
            raise KeyError(f"no logged verdict for {axiom_text!r}")
        return self.record(axiom_text, verdict, source, revises=prior)

    def revisions(self) -> list[LogEntry]:
        return [e for e in self.entries if e.revises is not None]

    def dump(self) -> str:
        return "".join(json.dumps(e.to_json()) + "\n" for e in self.entries)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dump(), encoding="utf-8")

    @classmethod
    def loads(cls, text: str) -> "QueryLog":
        log = cls()
        for line in text.splitlines():
            if not line.strip():
                continue
            data = json.loads(line)
            log.record(
                data["axiom"],
                Verdict(data["verdict"]),
                data.get("source", "log"),
                data.get("revises"),
            )
        return log

    @classmethod
    def load(cls, path: Union[str, Path]) -> "QueryLog":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


class Oracle:
    """Base oracle: memoizes through a QueryLog; backends implement _judge."""

    name = "oracle"

    def __init__(self, log: Optional[QueryLog] = None):
        self.log = log if log is not None else QueryLog()

    def ask(self, axiom: Axiom) -> Verdict:
        key = axiom_str(axiom)
        logged = self.log.effective(key)
        if logged is not None:
            return logged
        verdict = self._judge(axiom)
        if verdict is None:
            return Verdict.UNKNOWN  # pending, not memoized
        self.log.record(key, verdict, self.name)
        return verdict

    def _judge(self, axiom: Axiom) -> Optional[Verdict]:
        raise NotImplementedError


class TruthTBoxOracle(Oracle):
    """All-knowing: true exactly for axioms entailed by the reference TBox."""

    name = "truth-tbox"

    def __init__(self, reference: TBox, log: Optional[QueryLog] = None):
        super().__init__(log)
        self.reference = reference

    def _judge(self, axiom: Axiom) -> Verdict:
        return Verdict.TRUE if entails(self.reference, axiom) else Verdict.FALSE


class LimitedOracle(Oracle):
    """Knows explicit true/false lists; unknown for everything else."""

    name = "limited"

    def __init__(
        self,
        true_axioms: Iterable[Axiom] = (),
        false_axioms: Iterable[Axiom] = (),
        log: Optional[QueryLog] = None,
    ):
        super().__init__(log)
        self._known: dict[str, Verdict] = {}
        for ax in true_axioms:
            self._known[axiom_str(ax)] = Verdict.TRUE
        for ax in false_axioms:
            key = axiom_str(ax)
            if self._known.get(key) == Verdict.TRUE:
                raise ValueError(f"axiom listed as both true and false: {key}")
            self._known[key] = Verdict.FALSE

    def _judge(self, axiom: Axiom) -> Verdict:
        return self._known.get(axiom_str(axiom), Verdict.UNKNOWN)


class ErroneousOracle(Oracle):
    """Truth-tbox oracle that deterministically flips a fraction of verdicts."""

    name = "erroneous"

    def __init__(
        self,
        reference: TBox,
        error_rate: float,
        seed: int,
        log: Optional[QueryLog] = None,
    ):
        if not 0.0 <= error_rate <= 1.0:
            raise ValueError("error_rate must be within [0, 1]")
        super().__init__(log)
        self.reference = reference
        self.error_rate = error_rate
        self.seed = seed

    def flips(self, axiom: Axiom) -> bool:
        digest = hashlib.sha256(
            f"{self.seed}|{axiom_str(axiom)}".encode("utf-8")
        ).digest()
        draw = int.from_bytes(digest[:8], "big") / 2**64
        return draw < self.error_rate

    def _judge(self, axiom: Axiom) -> Verdict:
        truthful = Verdict.TRUE if entails(self.reference, axiom) else Verdict.FALSE
        if not self.flips(axiom):
            return truthful
        return Verdict.FALSE if truthful is Verdict.TRUE else Verdict.TRUE


class SkepticalOracle(Oracle):
    """Committee oracle: a verdict only when every member agrees."""

    name = "skeptical"

    def __init__(self, members: Sequence[Oracle], log: Optional[QueryLog] = None):
        if not members:
            raise ValueError("skeptical oracle needs at least one member")
        super().__init__(log)
        self.members = list(members)

    def _judge(self, axiom: Axiom) -> Verdict:
        verdicts = {m.ask(axiom) for m in self.members}
        if len(verdicts) == 1:
            return next(iter(verdicts))
        return Verdict.UNKNOWN


class VotingOracle(Oracle):
    """Committee oracle: verdict with at least `quorum` votes wins."""

    name = "voting"

    def __init__(
        self,
        members: Sequence[Oracle],
        quorum: Optional[int] = None,
        log: Optional[QueryLog] = None,
    ):
        if not members:
            raise ValueError("voting oracle needs at least one member")
        super().__init__(log)
        self.members = list(members)
        self.quorum = quorum if quorum is not None else len(members) // 2 + 1
        if not 1 <= self.quorum <= len(members):
            raise ValueError("quorum out of range")

    def _judge(self, axiom: Axiom) -> Verdict:
        tally: dict[Verdict, int] = {}
        for member in self.members:
            v = member.ask(axiom)
            tally[v] = tally.get(v, 0) + 1
        best = max(tally.values())
        winners = [v for v, n in tally.items() if n == best]
        if best >= self.quorum and len(winners) == 1:
            return winners[0]
        return Verdict.UNKNOWN


class InteractiveOracle(Oracle):
    """Verdicts supplied by a person; unanswered asks queue as pending."""

    name = "interactive"

    def __init__(self, log: Optional[QueryLog] = None):
        super().__init__(log)
        self._asked: list[str] = []

    def _judge(self, axiom: Axiom) -> Optional[Verdict]:
        key = axiom_str(axiom)
        if key not in self._asked:
            self._asked.append(key)
        return None

    @property
    def pending(self) -> list[str]:
        return [k for k in self._asked if self.log.effective(k) is None]

    def answer(self, axiom: Axiom, verdict: Verdict, source: str = "user") -> LogEntry:
        key = axiom_str(axiom)
        if self.log.effective(key) is None:
            return self.log.record(key, verdict, source)
        return self.log.revise(key, verdict, source)


def oracle_from_config(config: dict, log: Optional[QueryLog] = None) -> Oracle:
    """Build an oracle from a JSON-style config, e.g. {"kind": "truth", ...}."""
    kind = config.get("kind")
    if kind in ("truth", "truth-tbox"):
        return TruthTBoxOracle(_config_tbox(config), log)
    if kind == "limited":
        true_axioms = [parse_axiom(a) for a in config.get("true", [])]
        false_axioms = [parse_axiom(a) for a in config.get("false", [])]
        return LimitedOracle(true_axioms, false_axioms, log)
    if kind == "erroneous":
        return ErroneousOracle(
            _config_tbox(config),
            float(config.get("rate", 0.0)),
            int(config.get("seed", 0)),
            log,
        )
    if kind == "skeptical":
        members = [oracle_from_config(m) for m in config.get("members", [])]
        return SkepticalOracle(members, log)
    if kind == "voting":
        members = [oracle_from_config(m) for m in config.get("members", [])]
        return VotingOracle(members, config.get("quorum"), log)
    if kind == "interactive":
        return InteractiveOracle(log)
    raise ValueError(f"unknown oracle kind: {kind!r}")


def _config_tbox(config: dict) -> TBox:
    if "tbox" in config:
        return parse_tbox(config["tbox"])
    if "tbox_path" in config:
        return parse_tbox(Path(config["tbox_path"]).read_text(encoding="utf-8"))
    raise ValueError("oracle config needs 'tbox' text or 'tbox_path'")
