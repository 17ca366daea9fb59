"""Syntax layer: concept expressions, axioms, TBoxes, and the text format.

A TBox file is line based. Blank lines and `#` comments are ignored. A line
is either a header (`concepts: A B C` / `roles: r s`), or an axiom with an
optional label prefix:

    ax1: P1 SubClassOf P2
    P6 SubClassOf exists s. (not P8)
    r SubRoleOf s

Concept grammar (precedence: `or` < `and` < prefix operators):

    C ::= C or C | C and C | not C | exists r. C | forall r. C
        | top | bottom | NAME | ( C )

A quantifier's filler is a prefix-level term, so `exists r. A and B` parses
as `(exists r. A) and B`. The canonical serializer always parenthesizes
non-atomic operands and fillers, which makes round-trips byte stable.

Names starting with `__` are reserved for internal fresh names and never
appear in serialized output of public operations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union


# ---------------------------------------------------------------------------
# errors


class ParseError(Exception):
    """Raised on malformed input; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class DuplicateDeclaration(ParseError):
    """Raised when a name or axiom label is declared twice."""


# ---------------------------------------------------------------------------
# concept expressions


@dataclass(frozen=True)
class Atomic:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Not:
    operand: "Concept"


@dataclass(frozen=True)
class And:
    left: "Concept"
    right: "Concept"


@dataclass(frozen=True)
class Or:
    left: "Concept"
    right: "Concept"


@dataclass(frozen=True)
class Exists:
    role: str
    filler: "Concept"


@dataclass(frozen=True)
class Forall:
    role: str
    filler: "Concept"


Concept = Union[Atomic, Top, Bottom, Not, And, Or, Exists, Forall]

TOP = Top()
BOTTOM = Bottom()


def concept_str(c: Concept) -> str:
    """Canonical rendering; non-atomic subterms are parenthesized."""
    if isinstance(c, Atomic):
        return c.name
    if isinstance(c, Top):
        return "top"
    if isinstance(c, Bottom):
        return "bottom"
    if isinstance(c, Not):
        return f"not {_wrap(c.operand)}"
    if isinstance(c, And):
        return f"{_wrap(c.left)} and {_wrap(c.right)}"
    if isinstance(c, Or):
        return f"{_wrap(c.left)} or {_wrap(c.right)}"
    if isinstance(c, Exists):
        return f"exists {c.role}. {_wrap(c.filler)}"
    if isinstance(c, Forall):
        return f"forall {c.role}. {_wrap(c.filler)}"
    raise TypeError(f"not a concept: {c!r}")


def _wrap(c: Concept) -> str:
    if isinstance(c, (Atomic, Top, Bottom)):
        return concept_str(c)
    return f"({concept_str(c)})"


def concept_signature(c: Concept) -> tuple[frozenset[str], frozenset[str]]:
    """Concept and role names occurring in c."""
    concepts: set[str] = set()
    roles: set[str] = set()
    stack: list[Concept] = [c]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Atomic):
            concepts.add(cur.name)
        elif isinstance(cur, Not):
            stack.append(cur.operand)
        elif isinstance(cur, (And, Or)):
            stack.append(cur.left)
            stack.append(cur.right)
        elif isinstance(cur, (Exists, Forall)):
            roles.add(cur.role)
            stack.append(cur.filler)
    return frozenset(concepts), frozenset(roles)


# ---------------------------------------------------------------------------
# axioms

# id and provenance are identity metadata, not content: two axioms with the
# same sides compare equal regardless of where they came from.


@dataclass(frozen=True)
class GCI:
    lhs: Concept
    rhs: Concept
    id: Optional[int] = field(default=None, compare=False)
    provenance: Optional[str] = field(default=None, compare=False)


@dataclass(frozen=True)
class RoleInclusion:
    sub: str
    sup: str
    id: Optional[int] = field(default=None, compare=False)
    provenance: Optional[str] = field(default=None, compare=False)


Axiom = Union[GCI, RoleInclusion]


def axiom_str(a: Axiom) -> str:
    if isinstance(a, GCI):
        return f"{concept_str(a.lhs)} SubClassOf {concept_str(a.rhs)}"
    return f"{a.sub} SubRoleOf {a.sup}"


def axiom_signature(a: Axiom) -> tuple[frozenset[str], frozenset[str]]:
    if isinstance(a, GCI):
        lc, lr = concept_signature(a.lhs)
        rc, rr = concept_signature(a.rhs)
        return lc | rc, lr | rr
    return frozenset(), frozenset({a.sub, a.sup})


def axiom_sort_key(a: Axiom) -> tuple[int, str]:
    return (0 if isinstance(a, GCI) else 1, axiom_str(a))


# ---------------------------------------------------------------------------
# TBox


class TBox:
    """Immutable ordered collection of axioms with dense integer ids."""

    def __init__(
        self,
        axioms: Iterable[Axiom] = (),
        declared_concepts: Iterable[str] = (),
        declared_roles: Iterable[str] = (),
    ):
        fixed: list[Axiom] = []
        next_id = 1
        for ax in axioms:
            if ax.id is None:
                ax = _with_id(ax, next_id)
            fixed.append(ax)
            next_id = max(next_id, ax.id or 0) + 1
        self.axioms: tuple[Axiom, ...] = tuple(fixed)
        self.declared_concepts = frozenset(declared_concepts)
        self.declared_roles = frozenset(declared_roles)
        self._by_id = {ax.id: ax for ax in self.axioms}
        if len(self._by_id) != len(self.axioms):
            raise ValueError("duplicate axiom ids")

    # -- access ------------------------------------------------------------

    def __iter__(self) -> Iterator[Axiom]:
        return iter(self.axioms)

    def __len__(self) -> int:
        return len(self.axioms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TBox):
            return NotImplemented
        return (
            [(a.id, a) for a in self.axioms] == [(a.id, a) for a in other.axioms]
            and self.declared_concepts == other.declared_concepts
            and self.declared_roles == other.declared_roles
        )

    def __hash__(self) -> int:
        return hash((self.axioms, self.declared_concepts, self.declared_roles))

    def axiom(self, axiom_id: int) -> Axiom:
        return self._by_id[axiom_id]

    def has_id(self, axiom_id: int) -> bool:
        return axiom_id in self._by_id

    @property
    def ids(self) -> frozenset[int]:
        return frozenset(self._by_id)

    @property
    def gcis(self) -> tuple[GCI, ...]:
        return tuple(a for a in self.axioms if isinstance(a, GCI))

    @property
    def role_inclusions(self) -> tuple[RoleInclusion, ...]:
        return tuple(a for a in self.axioms if isinstance(a, RoleInclusion))

    def signature(self) -> tuple[frozenset[str], frozenset[str]]:
        """Declared plus used concept and role names."""
        concepts = set(self.declared_concepts)
        roles = set(self.declared_roles)
        for ax in self.axioms:
            c, r = axiom_signature(ax)
            concepts |= c
            roles |= r
        return frozenset(concepts), frozenset(roles)

    @property
    def concept_names(self) -> frozenset[str]:
        return self.signature()[0]

    @property
    def role_names(self) -> frozenset[str]:
        return self.signature()[1]

    # -- derivation --------------------------------------------------------

    def drop(self, ids: Iterable[int]) -> "TBox":
        """TBox without the given axiom ids; remaining ids are kept."""
        gone = set(ids)
        missing = gone - set(self._by_id)
        if missing:
            raise KeyError(f"no such axiom ids: {sorted(missing)}")
        return TBox(
            (a for a in self.axioms if a.id not in gone),
            self.declared_concepts,
            self.declared_roles,
        )

    def restrict(self, ids: Iterable[int]) -> "TBox":
        """TBox containing only the given axiom ids, original order."""
        keep = set(ids)
        return TBox(
            (a for a in self.axioms if a.id in keep),
            self.declared_concepts,
            self.declared_roles,
        )

    def extend(self, axioms: Iterable[Axiom], provenance: str = "added") -> "TBox":
        """TBox with the given axioms appended under fresh ids."""
        next_id = max((a.id or 0 for a in self.axioms), default=0) + 1
        added: list[Axiom] = []
        for ax in axioms:
            added.append(_with_id(ax, next_id, ax.provenance or provenance))
            next_id += 1
        return TBox(
            self.axioms + tuple(added), self.declared_concepts, self.declared_roles
        )


def _with_id(ax: Axiom, axiom_id: int, provenance: Optional[str] = None) -> Axiom:
    prov = provenance if provenance is not None else ax.provenance
    if isinstance(ax, GCI):
        return GCI(ax.lhs, ax.rhs, id=axiom_id, provenance=prov)
    return RoleInclusion(ax.sub, ax.sup, id=axiom_id, provenance=prov)


# ---------------------------------------------------------------------------
# parser

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*")
_RESERVED = {
    "SubClassOf",
    "SubRoleOf",
    "and",
    "or",
    "not",
    "exists",
    "forall",
    "top",
    "bottom",
    "concepts",
    "roles",
}

_Token = tuple[str, str, int]  # kind, text, column


def _tokenize(line: str, line_no: int) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(line)
    while i < n:
        ch = line[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        if ch in "().:":
            tokens.append((ch, ch, col))
            i += 1
            continue
        m = _NAME_RE.match(line, i)
        if not m:
            raise ParseError(f"unexpected character {ch!r}", line_no, col)
        word = m.group(0)
        kind = word if word in _RESERVED else "NAME"
        tokens.append((kind, word, col))
        i = m.end()
    return tokens


class _ConceptParser:
    def __init__(self, tokens: list[_Token], line_no: int):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of line", self.line_no, _end_col(self.tokens))
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", self.line_no, tok[2])
        return tok

    def parse_concept(self) -> Concept:
        left = self.parse_conjunction()
        while self.peek() and self.peek()[0] == "or":
            self.next()
            left = Or(left, self.parse_conjunction())
        return left

    def parse_conjunction(self) -> Concept:
        left = self.parse_prefix()
        while self.peek() and self.peek()[0] == "and":
            self.next()
            left = And(left, self.parse_prefix())
        return left

    def parse_prefix(self) -> Concept:
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a concept", self.line_no, _end_col(self.tokens))
        kind = tok[0]
        if kind == "not":
            self.next()
            return Not(self.parse_prefix())
        if kind in ("exists", "forall"):
            self.next()
            role = self.expect("NAME")[1]
            self.expect(".")
            filler = self.parse_prefix()
            return Exists(role, filler) if kind == "exists" else Forall(role, filler)
        return self.parse_primary()

    def parse_primary(self) -> Concept:
        tok = self.next()
        kind = tok[0]
        if kind == "NAME":
            return Atomic(tok[1])
        if kind == "top":
            return TOP
        if kind == "bottom":
            return BOTTOM
        if kind == "(":
            inner = self.parse_concept()
            self.expect(")")
            return inner
        raise ParseError(f"expected a concept, found {tok[1]!r}", self.line_no, tok[2])


def _end_col(tokens: list[_Token]) -> int:
    if not tokens:
        return 1
    last = tokens[-1]
    return last[2] + len(last[1])


def parse_concept(text: str, line_no: int = 1) -> Concept:
    """Parse a single concept expression."""
    parser = _ConceptParser(_tokenize(text, line_no), line_no)
    concept = parser.parse_concept()
    extra = parser.peek()
    if extra is not None:
        raise ParseError(f"unexpected trailing {extra[1]!r}", line_no, extra[2])
    return concept


def parse_axiom(text: str, line_no: int = 1) -> Axiom:
    """Parse one axiom (no label prefix)."""
    tokens = _tokenize(text, line_no)
    if not tokens:
        raise ParseError("empty axiom", line_no, 1)
    kinds = [t[0] for t in tokens]
    if "SubRoleOf" in kinds:
        if kinds != ["NAME", "SubRoleOf", "NAME"]:
            bad = tokens[min(len(tokens) - 1, kinds.index("SubRoleOf"))]
            raise ParseError("role inclusion must be 'r SubRoleOf s'", line_no, bad[2])
        return RoleInclusion(tokens[0][1], tokens[2][1])
    if "SubClassOf" not in kinds:
        raise ParseError("expected 'SubClassOf' or 'SubRoleOf'", line_no, _end_col(tokens))
    split = kinds.index("SubClassOf")
    if split == 0:
        raise ParseError("missing left-hand concept", line_no, tokens[0][2])
    if split == len(tokens) - 1:
        raise ParseError("missing right-hand concept", line_no, _end_col(tokens))
    lhs = parse_concept_tokens(tokens[:split], line_no)
    rhs = parse_concept_tokens(tokens[split + 1 :], line_no)
    return GCI(lhs, rhs)


def parse_concept_tokens(tokens: list[_Token], line_no: int) -> Concept:
    parser = _ConceptParser(tokens, line_no)
    concept = parser.parse_concept()
    extra = parser.peek()
    if extra is not None:
        raise ParseError(f"unexpected trailing {extra[1]!r}", line_no, extra[2])
    return concept


_LABEL_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_-]*)\s*:")


def parse_tbox(text: str, provenance: Optional[str] = None) -> TBox:
    """Parse the line-based TBox format."""
    declared_concepts: list[str] = []
    declared_roles: list[str] = []
    seen_headers: set[str] = set()
    labels: set[str] = set()
    axioms: list[Axiom] = []
    next_id = 1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        m = _LABEL_RE.match(stripped)
        if m and m.group(1) in ("concepts", "roles"):
            header = m.group(1)
            if header in seen_headers:
                raise DuplicateDeclaration(
                    f"duplicate {header!r} header", line_no, m.start(1) + 1
                )
            seen_headers.add(header)
            rest = stripped[m.end() :]
            for name_m in re.finditer(r"\S+", rest):
                name = name_m.group(0)
                col = m.end() + name_m.start() + 1
                if not _NAME_RE.fullmatch(name) or name in _RESERVED:
                    raise ParseError(f"invalid name {name!r}", line_no, col)
                target = declared_concepts if header == "concepts" else declared_roles
                if name in declared_concepts or name in declared_roles:
                    raise DuplicateDeclaration(
                        f"duplicate declaration of {name!r}", line_no, col
                    )
                target.append(name)
            continue
        body = stripped
        if m:
            label = m.group(1)
            if label in labels:
                raise DuplicateDeclaration(
                    f"duplicate axiom label {label!r}", line_no, m.start(1) + 1
                )
            labels.add(label)
            body = stripped[m.end() :]
        axiom = parse_axiom(body, line_no)
        axioms.append(_with_id(axiom, next_id, provenance))
        next_id += 1
    return TBox(axioms, declared_concepts, declared_roles)


def serialize_tbox(tbox: TBox) -> str:
    """Canonical text: sorted headers, then `ax<i>:` labelled axioms."""
    lines: list[str] = []
    concepts, roles = tbox.signature()
    public_concepts = sorted(c for c in concepts if not c.startswith("__"))
    if public_concepts:
        lines.append("concepts: " + " ".join(public_concepts))
    if roles:
        lines.append("roles: " + " ".join(sorted(roles)))
    for ax in tbox.axioms:
        lines.append(f"ax{ax.id}: {axiom_str(ax)}")
    return "\n".join(lines) + "\n"
