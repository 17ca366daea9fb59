"""Reasoning layer: entailment, satisfiability, coherence, classification.

Two engines sit behind one dispatch:

* a polynomial saturation engine for the EL fragment (concepts built from
  names, `top`, `and`, `exists`; role inclusions honoured), used whenever
  both the TBox and the query fit the fragment;
* a tableau engine for full ALC, with general inclusions internalized as a
  meta constraint added to every node label, negation-normal-form labels,
  ancestor subset blocking, and a deterministic rule order (conjunctions,
  disjunctions, existentials with universal propagation).

The tableau ignores role inclusions; inputs that need them are EL in this
code base and stay on the saturation engine. Role inclusion queries are
answered from the reflexive transitive closure of the declared inclusions.

Fresh names introduced by EL normalization start with `__n` and never leak
into results. The tableau counts expanded nodes and raises ResourceExceeded
past a configurable ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Optional, Union

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
    RoleInclusion,
    TBox,
    Top,
    TOP,
    BOTTOM,
    concept_str,
)


class ResourceExceeded(Exception):
    """A search exceeded its node ceiling."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeded {limit} nodes")
        self.what = what
        self.limit = limit


DEFAULT_TABLEAU_LIMIT = 1_000_000

_FRESH_PREFIX = "__n"


# ---------------------------------------------------------------------------
# fragment detection


def is_el_concept(c: Concept) -> bool:
    if isinstance(c, (Atomic, Top)):
        return True
    if isinstance(c, And):
        return is_el_concept(c.left) and is_el_concept(c.right)
    if isinstance(c, Exists):
        return is_el_concept(c.filler)
    return False


def is_el_axiom(a: Axiom) -> bool:
    if isinstance(a, RoleInclusion):
        return True
    return is_el_concept(a.lhs) and is_el_concept(a.rhs)


def is_el_tbox(tbox: TBox) -> bool:
    return all(is_el_axiom(a) for a in tbox)


# ---------------------------------------------------------------------------
# EL saturation

_TOP_MARK = "⊤"  # stands for `top` inside S-sets


@dataclass(frozen=True)
class _NF1:  # A subsumed-by B
    sub: str
    sup: str


@dataclass(frozen=True)
class _NF2:  # A1 and A2 subsumed-by B
    left: str
    right: str
    sup: str


@dataclass(frozen=True)
class _NF3:  # A subsumed-by exists r. B
    sub: str
    role: str
    filler: str


@dataclass(frozen=True)
class _NF4:  # exists r. A subsumed-by B
    role: str
    filler: str
    sup: str


_Normal = Union[_NF1, _NF2, _NF3, _NF4]


class _ElNormalizer:
    def __init__(self) -> None:
        self.rules: list[_Normal] = []
        self._fresh = count(1)
        self._left_names: dict[Concept, str] = {}
        self._right_names: dict[Concept, str] = {}

    def fresh(self) -> str:
        return f"{_FRESH_PREFIX}{next(self._fresh)}"

    def add_gci(self, lhs: Concept, rhs: Concept) -> None:
        self._split(lhs, rhs)

    def name_left(self, c: Concept) -> str:
        """Name standing for c in subsumee position (name subsumes c)."""
        if isinstance(c, Atomic):
            return c.name
        if isinstance(c, Top):
            return _TOP_MARK
        if c not in self._left_names:
            name = self.fresh()
            self._left_names[c] = name
            self._split(c, Atomic(name))
        return self._left_names[c]

    def name_right(self, c: Concept) -> str:
        """Name standing for c in subsumer position (name is subsumed by c)."""
        if isinstance(c, Atomic):
            return c.name
        if isinstance(c, Top):
            return _TOP_MARK
        if c not in self._right_names:
            name = self.fresh()
            self._right_names[c] = name
            self._split(Atomic(name), c)
        return self._right_names[c]

    def _split(self, lhs: Concept, rhs: Concept) -> None:
        # right side first: push conjunctions apart, name complex fillers
        if isinstance(rhs, And):
            self._split(lhs, rhs.left)
            self._split(lhs, rhs.right)
            return
        if isinstance(rhs, Top):
            return  # trivial
        if isinstance(rhs, Exists):
            filler = self.name_right(rhs.filler)
            self.rules.append(_NF3(self.name_left(lhs), rhs.role, filler))
            return
        assert isinstance(rhs, Atomic)
        sup = rhs.name
        if isinstance(lhs, And):
            conjuncts = _flatten_and(lhs)
            names = [self.name_left(c) for c in conjuncts]
            names = [n for n in names if n != _TOP_MARK] or [_TOP_MARK]
            while len(names) > 2:
                pair_name = self.fresh()
                self.rules.append(_NF2(names[0], names[1], pair_name))
                names = [pair_name] + names[2:]
            if len(names) == 2:
                self.rules.append(_NF2(names[0], names[1], sup))
            else:
                self.rules.append(_NF1(names[0], sup))
            return
        if isinstance(lhs, Exists):
            filler = self.name_left(lhs.filler)
            self.rules.append(_NF4(lhs.role, filler, sup))
            return
        if isinstance(lhs, Top):
            self.rules.append(_NF1(_TOP_MARK, sup))
            return
        assert isinstance(lhs, Atomic)
        self.rules.append(_NF1(lhs.name, sup))


def _flatten_and(c: Concept) -> list[Concept]:
    if isinstance(c, And):
        return _flatten_and(c.left) + _flatten_and(c.right)
    return [c]


class _ElSaturation:
    """ELH classification by completion rules, run to fixpoint."""

    def __init__(self, tbox: TBox, extra_gcis: tuple[GCI, ...] = ()):
        norm = _ElNormalizer()
        for ax in tbox.gcis:
            norm.add_gci(ax.lhs, ax.rhs)
        for ax in extra_gcis:
            norm.add_gci(ax.lhs, ax.rhs)
        self.rules = norm.rules
        self.superroles: dict[str, set[str]] = {}
        for ri in tbox.role_inclusions:
            self.superroles.setdefault(ri.sub, {ri.sub}).add(ri.sup)
        self._close_roles()
        atoms = {_TOP_MARK}
        for rule in self.rules:
            if isinstance(rule, _NF1):
                atoms |= {rule.sub, rule.sup}
            elif isinstance(rule, _NF2):
                atoms |= {rule.left, rule.right, rule.sup}
            elif isinstance(rule, _NF3):
                atoms |= {rule.sub, rule.filler}
            else:
                atoms |= {rule.filler, rule.sup}
        concepts, _ = tbox.signature()
        atoms |= concepts
        self.atoms = atoms
        self.s: dict[str, set[str]] = {a: {a, _TOP_MARK} for a in atoms}
        self.r: dict[str, set[tuple[str, str]]] = {}
        self._saturate()

    def _close_roles(self) -> None:
        changed = True
        while changed:
            changed = False
            for sub, sups in list(self.superroles.items()):
                for sup in list(sups):
                    for indirect in self.superroles.get(sup, ()):
                        if indirect not in sups:
                            sups.add(indirect)
                            changed = True

    def _sup_roles(self, role: str) -> set[str]:
        return self.superroles.get(role, {role}) | {role}

    def _saturate(self) -> None:
        nf1 = [r for r in self.rules if isinstance(r, _NF1)]
        nf2 = [r for r in self.rules if isinstance(r, _NF2)]
        nf3 = [r for r in self.rules if isinstance(r, _NF3)]
        nf4 = [r for r in self.rules if isinstance(r, _NF4)]
        changed = True
        while changed:
            changed = False
            for rule in nf1:
                for x, sx in self.s.items():
                    if rule.sub in sx and rule.sup not in sx:
                        sx.add(rule.sup)
                        changed = True
            for rule in nf2:
                for x, sx in self.s.items():
                    if rule.left in sx and rule.right in sx and rule.sup not in sx:
                        sx.add(rule.sup)
                        changed = True
            for rule in nf3:
                edges = self.r.setdefault(rule.role, set())
                for x, sx in self.s.items():
                    if rule.sub in sx and (x, rule.filler) not in edges:
                        edges.add((x, rule.filler))
                        changed = True
            for rule in nf4:
                for role, edges in self.r.items():
                    if rule.role not in self._sup_roles(role):
                        continue
                    for (x, y) in edges:
                        if rule.filler in self.s[y] and rule.sup not in self.s[x]:
                            self.s[x].add(rule.sup)
                            changed = True

    def subsumes(self, sub: str, sup: str) -> bool:
        if sup == _TOP_MARK:
            return True
        return sup in self.s.get(sub, {sub, _TOP_MARK})


def _el_entails(tbox: TBox, axiom: GCI) -> bool:
    extra: list[GCI] = []
    lhs_name = axiom.lhs.name if isinstance(axiom.lhs, Atomic) else "__nql"
    rhs_name = axiom.rhs.name if isinstance(axiom.rhs, Atomic) else "__nqr"
    if not isinstance(axiom.lhs, Atomic):
        # two-directional definition keeps the extension conservative
        extra.append(GCI(Atomic(lhs_name), axiom.lhs))
        extra.append(GCI(axiom.lhs, Atomic(lhs_name)))
    if not isinstance(axiom.rhs, Atomic):
        extra.append(GCI(Atomic(rhs_name), axiom.rhs))
        extra.append(GCI(axiom.rhs, Atomic(rhs_name)))
    if isinstance(axiom.lhs, Top):
        lhs_name = _TOP_MARK
    if isinstance(axiom.rhs, Top):
        return True
    sat = _ElSaturation(tbox, tuple(extra))
    return sat.subsumes(lhs_name, rhs_name)


# ---------------------------------------------------------------------------
# ALC tableau


def nnf(c: Concept) -> Concept:
    """Negation normal form."""
    if isinstance(c, (Atomic, Top, Bottom)):
        return c
    if isinstance(c, And):
        return And(nnf(c.left), nnf(c.right))
    if isinstance(c, Or):
        return Or(nnf(c.left), nnf(c.right))
    if isinstance(c, Exists):
        return Exists(c.role, nnf(c.filler))
    if isinstance(c, Forall):
        return Forall(c.role, nnf(c.filler))
    inner = c.operand
    if isinstance(inner, Atomic):
        return c
    if isinstance(inner, Top):
        return BOTTOM
    if isinstance(inner, Bottom):
        return TOP
    if isinstance(inner, Not):
        return nnf(inner.operand)
    if isinstance(inner, And):
        return Or(nnf(Not(inner.left)), nnf(Not(inner.right)))
    if isinstance(inner, Or):
        return And(nnf(Not(inner.left)), nnf(Not(inner.right)))
    if isinstance(inner, Exists):
        return Forall(inner.role, nnf(Not(inner.filler)))
    if isinstance(inner, Forall):
        return Exists(inner.role, nnf(Not(inner.filler)))
    raise TypeError(f"not a concept: {c!r}")


class _Tableau:
    def __init__(self, tbox: TBox, limit: int):
        # the meta constraint holds at every individual of every model
        self.tc = frozenset(nnf(Or(Not(ax.lhs), ax.rhs)) for ax in tbox.gcis)
        self.limit = limit
        self.nodes = 0
        self._cache: dict[frozenset[Concept], bool] = {}

    def satisfiable(self, c: Concept) -> bool:
        return self._node(frozenset({nnf(c)}) | self.tc, ())

    def _node(self, label: frozenset[Concept], ancestors: tuple[frozenset[Concept], ...]) -> bool:
        self.nodes += 1
        if self.nodes > self.limit:
            raise ResourceExceeded("tableau", self.limit)
        work = set(label)
        # conjunctions, to fixpoint, before anything else
        changed = True
        while changed:
            changed = False
            for c in sorted((x for x in work if isinstance(x, And)), key=concept_str):
                if c.left not in work or c.right not in work:
                    work.add(c.left)
                    work.add(c.right)
                    changed = True
        if BOTTOM in work:
            return False
        atoms = {c.name for c in work if isinstance(c, Atomic)}
        if any(isinstance(c, Not) and isinstance(c.operand, Atomic) and c.operand.name in atoms for c in work):
            return False
        frozen = frozenset(work)
        cached = self._cache.get(frozen)
        if cached is not None and not ancestors:
            return cached
        # first unresolved disjunction branches; deterministic order
        for c in sorted((x for x in work if isinstance(x, Or)), key=concept_str):
            if c.left in work or c.right in work:
                continue
            result = self._node(frozen | {c.left}, ancestors) or self._node(
                frozen | {c.right}, ancestors
            )
            if not ancestors:
                self._cache[frozen] = result
            return result
        # existentials spawn successors, universals propagate into them
        lineage = ancestors + (frozen,)
        result = True
        for c in sorted((x for x in work if isinstance(x, Exists)), key=concept_str):
            child = {c.filler}
            child |= {f.filler for f in work if isinstance(f, Forall) and f.role == c.role}
            child |= self.tc
            child_f = frozenset(child)
            if any(child_f <= anc for anc in lineage):
                continue  # blocked: reuse the ancestor as this successor
            if not self._node(child_f, lineage):
                result = False
                break
        if not ancestors:
            self._cache[frozen] = result
        return result


def _alc_satisfiable(tbox: TBox, c: Concept, limit: int) -> bool:
    return _Tableau(tbox, limit).satisfiable(c)


# ---------------------------------------------------------------------------
# public interface


def role_hierarchy(tbox: TBox) -> dict[str, frozenset[str]]:
    """Reflexive transitive closure of the declared role inclusions."""
    sups: dict[str, set[str]] = {}
    for role in tbox.role_names:
        sups[role] = {role}
    for ri in tbox.role_inclusions:
        sups.setdefault(ri.sub, {ri.sub}).add(ri.sup)
        sups.setdefault(ri.sup, {ri.sup})
    changed = True
    while changed:
        changed = False
        for sub, targets in sups.items():
            for t in list(targets):
                extra = sups.get(t, set()) - targets
                if extra:
                    targets |= extra
                    changed = True
    return {k: frozenset(v) for k, v in sups.items()}


def entails(tbox: TBox, axiom: Axiom, limit: int = DEFAULT_TABLEAU_LIMIT) -> bool:
    """Decide tbox |= axiom."""
    if isinstance(axiom, RoleInclusion):
        return axiom.sup in role_hierarchy(tbox).get(axiom.sub, {axiom.sub})
    if is_el_tbox(tbox) and is_el_axiom(axiom):
        return _el_entails(tbox, axiom)
    goal = And(axiom.lhs, nnf(Not(axiom.rhs)))
    return not _alc_satisfiable(tbox, goal, limit)


def is_satisfiable(tbox: TBox, c: Concept, limit: int = DEFAULT_TABLEAU_LIMIT) -> bool:
    """Decide whether c has an instance in some model of tbox."""
    if is_el_tbox(tbox) and is_el_concept(c):
        return True  # the everything-interpretation satisfies any EL TBox
    return _alc_satisfiable(tbox, c, limit)


def is_consistent(tbox: TBox, limit: int = DEFAULT_TABLEAU_LIMIT) -> bool:
    return is_satisfiable(tbox, TOP, limit)


def unsatisfiable_concepts(tbox: TBox, limit: int = DEFAULT_TABLEAU_LIMIT) -> list[str]:
    """Sorted public concept names without instances in any model."""
    names = sorted(n for n in tbox.concept_names if not n.startswith("__"))
    return [n for n in names if not is_satisfiable(tbox, Atomic(n), limit)]


def is_coherent(tbox: TBox, limit: int = DEFAULT_TABLEAU_LIMIT) -> bool:
    return not unsatisfiable_concepts(tbox, limit)


class TBoxReasoner:
    """Repeated queries against one TBox, sharing saturation/tableau state.

    For an EL TBox, one saturation is built with internal names for every
    one-level existential over the signature, so queries whose sides are
    names or one-level existentials are answered by lookup. Everything else
    falls back to the per-query engines with the same semantics.
    """

    def __init__(self, tbox: TBox, limit: int = DEFAULT_TABLEAU_LIMIT):
        self.tbox = tbox
        self.limit = limit
        self._el = is_el_tbox(tbox)
        self._hierarchy: Optional[dict[str, frozenset[str]]] = None
        if self._el:
            concepts, roles = tbox.signature()
            extra: list[GCI] = []
            self._exists_names: dict[Concept, str] = {}
            for role in sorted(roles):
                for name in sorted(c for c in concepts if not c.startswith("__")):
                    fresh = f"{_FRESH_PREFIX}x_{role}_{name}"
                    expr = Exists(role, Atomic(name))
                    self._exists_names[expr] = fresh
                    extra.append(GCI(Atomic(fresh), expr))
                    extra.append(GCI(expr, Atomic(fresh)))
            self._sat = _ElSaturation(tbox, tuple(extra))
            self._tableau: Optional[_Tableau] = None
        else:
            self._tableau = _Tableau(tbox, limit)

    def _el_name(self, c: Concept) -> Optional[str]:
        if isinstance(c, Atomic):
            return c.name
        if isinstance(c, Top):
            return _TOP_MARK
        return self._exists_names.get(c)

    def entails(self, axiom: Axiom) -> bool:
        if isinstance(axiom, RoleInclusion):
            if self._hierarchy is None:
                self._hierarchy = role_hierarchy(self.tbox)
            return axiom.sup in self._hierarchy.get(axiom.sub, frozenset({axiom.sub}))
        if self._el and is_el_axiom(axiom):
            lhs = self._el_name(axiom.lhs)
            rhs = self._el_name(axiom.rhs)
            if lhs is not None and rhs is not None:
                return self._sat.subsumes(lhs, rhs)
            return _el_entails(self.tbox, axiom)
        if self._el:
            return entails(self.tbox, axiom, self.limit)
        assert self._tableau is not None
        goal = And(axiom.lhs, nnf(Not(axiom.rhs)))
        return not self._tableau.satisfiable(goal)

    def is_satisfiable(self, c: Concept) -> bool:
        if self._el:
            if is_el_concept(c):
                return True
            return is_satisfiable(self.tbox, c, self.limit)
        assert self._tableau is not None
        return self._tableau.satisfiable(c)

    def is_consistent(self) -> bool:
        return self.is_satisfiable(TOP)


def classify(tbox: TBox, limit: int = DEFAULT_TABLEAU_LIMIT) -> frozenset[tuple[str, str]]:
    """All entailed pairs (A, B), A != B, over public concept names."""
    names = sorted(n for n in tbox.concept_names if not n.startswith("__"))
    pairs: set[tuple[str, str]] = set()
    if is_el_tbox(tbox):
        sat = _ElSaturation(tbox)
        for a in names:
            for b in sat.s.get(a, set()):
                if b != a and not b.startswith("__") and b != _TOP_MARK:
                    pairs.add((a, b))
        return frozenset(pairs)
    for a in names:
        for b in names:
            if a != b and entails(tbox, GCI(Atomic(a), Atomic(b)), limit):
                pairs.add((a, b))
    return frozenset(pairs)
