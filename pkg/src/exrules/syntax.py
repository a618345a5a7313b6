"""Atoms, facts, disjunctive existential rules, rule sets and knowledge bases."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .terms import STAR, Const, Func, Var, constants_of


class RuleSetError(ValueError):
    pass


class DuplicateRuleId(RuleSetError):
    def __init__(self, rule_id: int):
        super().__init__(f"duplicate rule id {rule_id}")
        self.rule_id = rule_id


class EmptyHead(RuleSetError):
    def __init__(self, rule_id: int):
        super().__init__(f"rule {rule_id} has an empty head or an empty disjunct")
        self.rule_id = rule_id


class ArityMismatch(RuleSetError):
    def __init__(self, predicate: str, expected: int, got: int):
        super().__init__(f"predicate {predicate} used with arity {expected} and {got}")
        self.predicate = predicate
        self.expected = expected
        self.got = got


@dataclass(frozen=True)
class Atom:
    """``predicate(terms...)``; terms are VarOrConst in rules and ground terms in facts."""

    predicate: str
    terms: tuple = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.terms, tuple):
            object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "_hash", hash((self.predicate, self.terms)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def arity(self) -> int:
        return len(self.terms)

    def variables(self) -> Iterator[str]:
        for t in self.terms:
            if isinstance(t, Var):
                yield t.name

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(str(t) for t in self.terms)})"


#: Facts are atoms over ground terms.
Fact = Atom


def fact_key(f: Atom) -> tuple:
    """Canonical fact order: predicate, then rendered terms."""
    return (f.predicate, tuple(str(t) for t in f.terms))


def sorted_facts(facts: Iterable[Atom]) -> list:
    return sorted(facts, key=fact_key)


def terms_of(facts: Iterable[Atom]) -> set:
    """Top-level argument terms of a collection of facts."""
    return {t for f in facts for t in f.terms}


def _ordered_unique(names: Iterable[str]) -> tuple:
    return tuple(dict.fromkeys(names))


@dataclass(frozen=True)
class Rule:
    """``body -> head[0] | head[1] | ...``; head-only variables are existential."""

    id: int
    body: tuple
    head: tuple

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        object.__setattr__(self, "head", tuple(tuple(d) for d in self.head))

    def __hash__(self) -> int:
        return hash(self.id)

    @cached_property
    def body_variables(self) -> tuple:
        return _ordered_unique(v for a in self.body for v in a.variables())

    @cached_property
    def frontier(self) -> tuple:
        """Body variables that also occur in some head disjunct, in body order."""
        head_vars = {v for d in self.head for a in d for v in a.variables()}
        return tuple(v for v in self.body_variables if v in head_vars)

    def existentials(self, d: int) -> tuple:
        body_vars = set(self.body_variables)
        return _ordered_unique(
            v for a in self.head[d] for v in a.variables() if v not in body_vars
        )

    def constants(self) -> set:
        return {
            t.name
            for a in (*self.body, *(a for d in self.head for a in d))
            for t in a.terms
            if isinstance(t, Const)
        }

    def atoms(self) -> Iterator[Atom]:
        yield from self.body
        for d in self.head:
            yield from d

    def __str__(self) -> str:
        body = ", ".join(str(a) for a in self.body)
        head = " | ".join(", ".join(str(a) for a in d) for d in self.head)
        return f"@{self.id}: {body} -> {head}"


@dataclass(frozen=True)
class Signature:
    predicates: dict
    constants: frozenset

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.predicates.items())), self.constants))


class RuleSet:
    """Rules uniquely identified by id; iteration follows insertion order."""

    def __init__(self, rules: Iterable[Rule] = ()):
        self.rules = tuple(rules)
        self._by_id = {r.id: r for r in self.rules}

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __eq__(self, other):
        return isinstance(other, RuleSet) and self.rules == other.rules

    def __hash__(self):
        return hash(self.rules)

    def __repr__(self):
        return f"RuleSet({list(self.rules)!r})"

    def get(self, rule_id: int):
        return self._by_id.get(rule_id)


@dataclass(frozen=True)
class KnowledgeBase:
    rules: RuleSet
    db: frozenset

    def __post_init__(self):
        object.__setattr__(self, "db", frozenset(self.db))
        for f in self.db:
            for t in f.terms:
                if isinstance(t, Func):
                    raise ValueError(f"database fact {f} contains a Skolem term")
                if t.name == STAR:
                    raise ValueError(f"database fact {f} uses the reserved constant {STAR}")


def frontier(r: Rule) -> tuple:
    return r.frontier


def _check_arities(atoms: Iterable[Atom], arities: dict) -> None:
    for a in atoms:
        known = arities.setdefault(a.predicate, a.arity)
        if known != a.arity:
            raise ArityMismatch(a.predicate, known, a.arity)


def validate_ruleset(rs: RuleSet) -> None:
    """Raise a RuleSetError on duplicate ids, empty heads or inconsistent arities."""
    seen: set = set()
    arities: dict = {}
    for r in rs:
        if r.id in seen:
            raise DuplicateRuleId(r.id)
        seen.add(r.id)
        if not r.head or any(len(d) == 0 for d in r.head):
            raise EmptyHead(r.id)
        _check_arities(r.atoms(), arities)


def validate_facts(facts: Iterable[Atom], rs: RuleSet | None = None) -> None:
    arities: dict = {}
    if rs is not None:
        _check_arities((a for r in rs for a in r.atoms()), arities)
    _check_arities(facts, arities)


def signature_of(rs: RuleSet) -> Signature:
    preds: dict = {}
    consts: set = set()
    for r in rs:
        for a in r.atoms():
            preds.setdefault(a.predicate, a.arity)
        consts |= r.constants()
    return Signature(preds, frozenset(consts))


def signature_of_facts(facts: Iterable[Atom]) -> Signature:
    preds: dict = {}
    consts: set = set()
    for f in facts:
        preds.setdefault(f.predicate, f.arity)
        for t in f.terms:
            consts |= constants_of(t)
    return Signature(preds, frozenset(consts))


def is_deterministic(rs: RuleSet) -> bool:
    return all(len(r.head) == 1 for r in rs)
