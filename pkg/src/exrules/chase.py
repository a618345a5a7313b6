"""Chase branches and chase trees over finite prefixes.

Both runners schedule triggers FIFO in discovery order and re-check
activeness when a trigger is popped. A trigger dropped as inactive stays
inactive: loadedness and obsolescence are both monotone in the fact set.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .homomorphisms import find_homomorphism
from .syntax import Atom, KnowledgeBase, RuleSet, fact_key, validate_ruleset
from .triggers import (
    FactIndex,
    ObsolescenceKind,
    Trigger,
    enumerate_triggers,
    is_active,
    match_atoms,
)


class InvalidConfig(ValueError):
    pass


class NotAModel(ValueError):
    pass


class Status(enum.Enum):
    SATURATED = "saturated"
    BUDGET_EXHAUSTED = "budget_exhausted"

    def __str__(self) -> str:
        return self.value


# -- disjunct selectors -------------------------------------------------------
# A selector maps (application number, trigger) to a head disjunct index.
# Indices wrap around the number of disjuncts of the applied rule.


@dataclass(frozen=True)
class FixedSelector:
    index: int = 0

    def __call__(self, step: int, trigger: Trigger) -> int:
        return self.index % len(trigger.rule.head)

    def __str__(self):
        return f"fixed:{self.index}"


@dataclass(frozen=True)
class RoundRobinSelector:
    def __call__(self, step: int, trigger: Trigger) -> int:
        return step % len(trigger.rule.head)

    def __str__(self):
        return "roundrobin"


@dataclass(frozen=True)
class ScriptedSelector:
    """Follows ``script`` step by step, then keeps repeating its last entry."""

    script: tuple

    def __post_init__(self):
        if not self.script:
            raise InvalidConfig("scripted selector needs at least one index")
        object.__setattr__(self, "script", tuple(self.script))

    def __call__(self, step: int, trigger: Trigger) -> int:
        i = self.script[min(step, len(self.script) - 1)]
        return i % len(trigger.rule.head)

    def __str__(self):
        return "script:" + ",".join(str(i) for i in self.script)


def parse_selector(spec: str):
    """``fixed:<d>``, ``roundrobin`` or ``script:<d1,d2,...>``."""
    try:
        if spec == "roundrobin":
            return RoundRobinSelector()
        kind, _, arg = spec.partition(":")
        if kind == "fixed":
            return FixedSelector(int(arg))
        if kind == "script":
            return ScriptedSelector(tuple(int(x) for x in arg.split(",")))
    except ValueError as exc:
        raise InvalidConfig(f"bad selector {spec!r}: {exc}") from None
    raise InvalidConfig(f"bad selector {spec!r}")


@dataclass
class ChaseConfig:
    kind: ObsolescenceKind = ObsolescenceKind.RESTRICTED
    max_steps: int = 1000
    """Trigger applications per branch; node count for trees."""
    selector: Optional[Callable] = None

    def validate(self):
        if not isinstance(self.kind, ObsolescenceKind):
            raise InvalidConfig(f"unknown obsolescence kind {self.kind!r}")
        if not isinstance(self.max_steps, int) or self.max_steps < 1:
            raise InvalidConfig("max_steps must be a positive integer")


@dataclass(frozen=True)
class ChaseNode:
    facts: frozenset
    origin: Optional[tuple] = None  # (Trigger, disjunct index)


@dataclass
class ChaseBranch:
    nodes: list
    status: Status

    @property
    def result(self) -> frozenset:
        return result_of(self)

    @property
    def steps(self) -> int:
        return len(self.nodes) - 1


@dataclass
class TreeNode:
    facts: frozenset
    origin: Optional[tuple] = None
    children: list = field(default_factory=list)
    status: Optional[Status] = None  # set on leaves only

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class ChaseTree:
    root: TreeNode

    def leaves(self) -> list:
        out = []
        stack = [self.root]
        while stack:
            n = stack.pop()
            if n.is_leaf:
                out.append(n)
            else:
                stack.extend(reversed(n.children))
        return out

    def branches(self) -> list:
        """Every root-to-leaf path as a ChaseBranch, left to right."""
        out = []

        def walk(n, path):
            path = path + [ChaseNode(n.facts, n.origin)]
            if n.is_leaf:
                out.append(ChaseBranch(path, n.status))
            for c in n.children:
                walk(c, path)

        walk(self.root, [])
        return out

    def size(self) -> int:
        count, stack = 0, [self.root]
        while stack:
            n = stack.pop()
            count += 1
            stack.extend(n.children)
        return count


class _Agenda:
    """FIFO trigger queue with discovery bookkeeping for one derivation."""

    def __init__(self, rs: RuleSet, facts: FactIndex):
        self.rs = rs
        self.queue = deque()
        self.seen: set = set()
        self.applied: set = set()
        self.discover(facts, None)

    def copy(self) -> "_Agenda":
        other = object.__new__(_Agenda)
        other.rs = self.rs
        other.queue = deque(self.queue)
        other.seen = set(self.seen)
        other.applied = set(self.applied)
        return other

    def discover(self, facts: FactIndex, delta):
        for t in enumerate_triggers(self.rs, facts, delta):
            if t not in self.seen:
                self.seen.add(t)
                self.queue.append(t)

    def next_active(self, kind, facts: FactIndex):
        """Pop until an active trigger is found; ``None`` once the queue drains."""
        while self.queue:
            t = self.queue.popleft()
            if t.frontier_key in self.applied:
                continue
            if is_active(kind, t, facts):
                return t
        return None


def run_branch(kb: KnowledgeBase, cfg: ChaseConfig) -> ChaseBranch:
    cfg.validate()
    validate_ruleset(kb.rules)
    selector = cfg.selector
    if selector is None:
        if any(len(r.head) > 1 for r in kb.rules):
            raise InvalidConfig("branch mode on disjunctive rules needs a disjunct selector")
        selector = FixedSelector(0)

    facts = FactIndex(kb.db)
    nodes = [ChaseNode(frozenset(facts.facts))]
    agenda = _Agenda(kb.rules, facts)
    steps = 0
    while True:
        t = agenda.next_active(cfg.kind, facts)
        if t is None:
            return ChaseBranch(nodes, Status.SATURATED)
        if steps >= cfg.max_steps:
            # the popped trigger is still pending
            return ChaseBranch(nodes, Status.BUDGET_EXHAUSTED)
        d = selector(steps, t)
        new = [f for f in t.mapped_head[d] if f not in facts]
        facts.update(new)
        agenda.applied.add(t.frontier_key)
        nodes.append(ChaseNode(frozenset(facts.facts), (t, d)))
        steps += 1
        agenda.discover(facts, new)


def run_tree(kb: KnowledgeBase, cfg: ChaseConfig) -> ChaseTree:
    """Breadth-first chase tree; ``cfg.max_steps`` bounds the number of nodes."""
    cfg.validate()
    validate_ruleset(kb.rules)
    root_facts = FactIndex(kb.db)
    root = TreeNode(frozenset(root_facts.facts))
    pending = deque([(root, root_facts, _Agenda(kb.rules, root_facts))])
    count = 1
    while pending:
        node, facts, agenda = pending.popleft()
        t = agenda.next_active(cfg.kind, facts)
        if t is None:
            node.status = Status.SATURATED
            continue
        if count + len(t.rule.head) > cfg.max_steps:
            node.status = Status.BUDGET_EXHAUSTED
            continue
        for d, head in enumerate(t.mapped_head):
            child_facts = FactIndex(facts.facts)
            new = [f for f in head if f not in child_facts]
            child_facts.update(new)
            child_agenda = agenda.copy()
            child_agenda.applied.add(t.frontier_key)
            child_agenda.discover(child_facts, new)
            child = TreeNode(frozenset(child_facts.facts), (t, d))
            node.children.append(child)
            pending.append((child, child_facts, child_agenda))
            count += 1
    return ChaseTree(root)


def result_of(b: ChaseBranch) -> frozenset:
    out: set = set()
    for n in b.nodes:
        out |= n.facts
    return frozenset(out)


def factset_key(F) -> tuple:
    return (len(F), tuple(fact_key(f) for f in sorted(F, key=fact_key)))


def tree_results(t: ChaseTree) -> list:
    """Distinct ``(result, status)`` pairs of the tree's branches, canonical order."""
    seen = {}
    for b in t.branches():
        seen.setdefault((b.result, b.status), None)
    return sorted(seen, key=lambda rs: (factset_key(rs[0]), rs[1].value))


def models_kb(F: Iterable[Atom], kb: KnowledgeBase) -> bool:
    index = FactIndex(F)
    if not all(f in index for f in kb.db):
        return False
    for r in kb.rules:
        for s in match_atoms(r.body, index):
            frontier = {v: s[v] for v in r.frontier}
            if not any(
                next(match_atoms(disjunct, index, frontier), None) is not None
                for disjunct in r.head
            ):
                return False
    return True


def check_universality(results: Iterable, M: Iterable[Atom], kb: KnowledgeBase):
    """First chase result (canonical order) that maps homomorphically into ``M``.

    Returns ``(result, mapping)`` or ``None``; raises NotAModel when ``M``
    does not model ``kb``.
    """
    M = frozenset(M)
    if not models_kb(M, kb):
        raise NotAModel("target fact set is not a model of the knowledge base")
    for U in sorted({frozenset(u) for u in results}, key=factset_key):
        h = find_homomorphism(U, M)
        if h is not None:
            return U, h
    return None


def is_fair_on(kind: ObsolescenceKind, rs: RuleSet, F) -> bool:
    """No trigger of ``rs`` is active on ``F``."""
    index = FactIndex(F)
    return not any(is_active(kind, t, index) for t in enumerate_triggers(rs, index))

