"""Triggers, Skolemized instantiation, obsolescence conditions and activeness."""

from __future__ import annotations

import enum
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .homomorphisms import GroundSubstitution, UnmappedVariable
from .syntax import Atom, Rule, RuleSet
from .terms import Func, SkolemFS, Var, term_key


class ObsolescenceKind(enum.Enum):
    SKOLEM = "skolem"
    RESTRICTED = "restricted"

    def __str__(self) -> str:
        return self.value


def as_factset(F) -> frozenset | set:
    return F if isinstance(F, (set, frozenset)) else set(F)


class FactIndex:
    """Facts of a fact set grouped by predicate (lookup structure for matching)."""

    def __init__(self, facts: Iterable[Atom] = ()):
        self.facts: set = set()
        self.by_pred: dict = {}
        self.update(facts)

    def update(self, facts: Iterable[Atom]) -> None:
        for f in facts:
            if f not in self.facts:
                self.facts.add(f)
                self.by_pred.setdefault(f.predicate, []).append(f)

    def __contains__(self, f) -> bool:
        return f in self.facts

    def __iter__(self):
        return iter(self.facts)

    def __len__(self):
        return len(self.facts)

    def get(self, predicate: str) -> list:
        return self.by_pred.get(predicate, [])


def _as_index(F) -> FactIndex:
    return F if isinstance(F, FactIndex) else FactIndex(F)


def _unify(atom: Atom, fact: Atom, subs: dict) -> dict | None:
    if len(atom.terms) != len(fact.terms):
        return None
    out = None
    for pat, val in zip(atom.terms, fact.terms):
        if isinstance(pat, Var):
            bound = (out or subs).get(pat.name)
            if bound is None:
                if out is None:
                    out = dict(subs)
                out[pat.name] = val
            elif bound != val:
                return None
        elif pat != val:
            return None
    return subs if out is None else out


def match_atoms(atoms, F, subs: Mapping | None = None) -> Iterator[dict]:
    """Yield every extension of ``subs`` mapping all ``atoms`` into ``F``.

    Plain backtracking in atom order; duplicates are possible when the same
    substitution is reachable through different facts.
    """
    index = _as_index(F)
    atoms = list(atoms)
    start = dict(subs or {})

    def rec(i, cur):
        if i == len(atoms):
            yield cur
            return
        for fact in index.get(atoms[i].predicate):
            nxt = _unify(atoms[i], fact, cur)
            if nxt is not None:
                yield from rec(i + 1, nxt)

    yield from rec(0, start)


class Trigger:
    """A rule paired with a ground substitution of (at least) its body variables."""

    def __init__(self, rule: Rule, subs: Mapping):
        self.rule = rule
        self.subs = GroundSubstitution(subs)
        self._key = (rule.id, tuple(sorted(self.subs.items(), key=lambda kv: kv[0])))

    def __eq__(self, other):
        return isinstance(other, Trigger) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        inner = ", ".join(f"{v}->{self.subs[v]}" for v in sorted(self.subs))
        return f"Trigger(rule={self.rule.id}, {{{inner}}})"

    def sort_key(self) -> tuple:
        return (
            self.rule.id,
            tuple(term_key(self.subs[v]) if v in self.subs else (-1, "") for v in self.rule.body_variables),
        )

    @cached_property
    def frontier_images(self) -> tuple:
        return tuple(self.subs.apply_term(Var(v)) for v in self.rule.frontier)

    @cached_property
    def frontier_key(self) -> tuple:
        """Identifies the trigger result under semi-oblivious Skolemization."""
        return (self.rule.id, self.frontier_images)

    def skolem_term(self, d: int, var: str) -> Func:
        fs = SkolemFS(self.rule.id, d, var, len(self.rule.frontier))
        return Func(fs, self.frontier_images)

    def fresh_terms(self, d: int) -> tuple:
        """Skolem terms this trigger introduces for head disjunct ``d``."""
        return tuple(self.skolem_term(d, v) for v in self.rule.existentials(d))

    @cached_property
    def mapped_body(self) -> tuple:
        return tuple(self.subs.apply_atom(a) for a in self.rule.body)

    @cached_property
    def mapped_head(self) -> tuple:
        heads = []
        for d, disjunct in enumerate(self.rule.head):
            s = GroundSubstitution({v: self.subs.apply_term(Var(v)) for v in self.rule.frontier})
            for v in self.rule.existentials(d):
                s[v] = self.skolem_term(d, v)
            heads.append(tuple(s.apply_atom(a) for a in disjunct))
        return tuple(heads)


def instantiate(t: Trigger) -> tuple:
    """``(mapped body, mapped head disjuncts)`` of a trigger."""
    missing = [v for v in t.rule.body_variables if v not in t.subs]
    if missing:
        raise UnmappedVariable(missing[0])
    return list(t.mapped_body), [list(d) for d in t.mapped_head]


def is_loaded(t: Trigger, F) -> bool:
    F = F if isinstance(F, FactIndex) else as_factset(F)
    return all(f in F for f in t.mapped_body)


def head_satisfied(t: Trigger, d: int, F) -> bool:
    """Some assignment of the existentials of disjunct ``d`` puts it inside ``F``."""
    frontier = {v: img for v, img in zip(t.rule.frontier, t.frontier_images)}
    return next(match_atoms(t.rule.head[d], F, frontier), None) is not None


def is_obsolete(kind: ObsolescenceKind, t: Trigger, F) -> bool:
    if kind is ObsolescenceKind.SKOLEM:
        F = F if isinstance(F, FactIndex) else as_factset(F)
        return any(all(f in F for f in head) for head in t.mapped_head)
    if kind is ObsolescenceKind.RESTRICTED:
        index = _as_index(F)
        return any(head_satisfied(t, d, index) for d in range(len(t.rule.head)))
    raise ValueError(f"unknown obsolescence kind {kind!r}")


def is_active(kind: ObsolescenceKind, t: Trigger, F) -> bool:
    index = _as_index(F)
    return is_loaded(t, index) and not is_obsolete(kind, t, index)


def trigger_equiv(t1: Trigger, t2: Trigger) -> bool:
    if t1.rule.id != t2.rule.id:
        return False
    vars_ = set(t1.rule.frontier) | set(t1.rule.body_variables)
    return all(t1.subs.get(v) == t2.subs.get(v) for v in vars_)


def enumerate_triggers(rs: RuleSet, F, delta: Iterable[Atom] | None = None) -> list:
    """All loaded triggers of ``rs`` on ``F``, sorted by rule id then substitution.

    With ``delta`` only triggers using at least one ``delta`` fact in their
    body are returned (``delta`` must be a subset of ``F``).
    """
    index = _as_index(F)
    found: set = set()
    for r in rs:
        if delta is None:
            for s in match_atoms(r.body, index):
                found.add(Trigger(r, s))
            continue
        d_index = _as_index(delta)
        for i, atom in enumerate(r.body):
            rest = r.body[:i] + r.body[i + 1:]
            for fact in d_index.get(atom.predicate):
                s0 = _unify(atom, fact, {})
                if s0 is None:
                    continue
                for s in match_atoms(rest, index, s0):
                    found.add(Trigger(r, s))
    return sorted(found, key=Trigger.sort_key)

