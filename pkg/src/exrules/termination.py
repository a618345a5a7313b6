"""MFA-style acyclicity checks with constants in rules.

All three notions run the same parallel determinized chase on the critical
instance: disjunctions are treated as conjunctions and every trigger that the
notion does not consider obsolete fires in each round. The run stops at a
fixpoint (acyclic: every chase of the rule set terminates) or as soon as a
cyclic term appears (the notion does not apply).

* MFA   - a trigger is obsolete once all of its disjunct results are present.
* DMFA  - a trigger is *blocked*: it is Skolem-obsolete on the facts that must
          exist before any real trigger it simulates can become loaded.
* RMFA  - like DMFA with restricted obsolescence.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .syntax import Atom, RuleSet, signature_of, sorted_facts, validate_ruleset
from .terms import STAR, Const, Func, GroundTerm, SkolemFS, is_cyclic, map_constants, subterms, term_key
from .triggers import FactIndex, ObsolescenceKind, Trigger, enumerate_triggers, is_obsolete

FRESH_PREFIX = "_bt"


class UnknownRuleId(KeyError):
    def __init__(self, rule_id: int):
        super().__init__(rule_id)
        self.rule_id = rule_id


class MfaNotion(enum.Enum):
    MFA = "mfa"
    DMFA = "dmfa"
    RMFA = "rmfa"

    @property
    def blocked_kind(self) -> Optional[ObsolescenceKind]:
        """Obsolescence kind checked on backtracked facts (None for plain MFA)."""
        return {
            MfaNotion.MFA: None,
            MfaNotion.DMFA: ObsolescenceKind.SKOLEM,
            MfaNotion.RMFA: ObsolescenceKind.RESTRICTED,
        }[self]

    @property
    def chase_kind(self) -> ObsolescenceKind:
        """Chase variant whose termination an acyclic verdict guarantees."""
        return ObsolescenceKind.RESTRICTED if self is MfaNotion.RMFA else ObsolescenceKind.SKOLEM

    def __str__(self) -> str:
        return self.value


def critical_instance(rs: RuleSet) -> frozenset:
    sig = signature_of(rs)
    consts = [Const(c) for c in sorted(sig.constants | {STAR})]
    return frozenset(
        Atom(p, combo)
        for p, n in sig.predicates.items()
        for combo in itertools.product(consts, repeat=n)
    )


class FreshConstants:
    """Monotone supply of constants ``_bt0, _bt1, ...`` (never valid in input files)."""

    def __init__(self, prefix: str = FRESH_PREFIX):
        self.prefix = prefix
        self._counter = itertools.count()

    def __call__(self) -> str:
        return f"{self.prefix}{next(self._counter)}"


def rename_apart(t: Trigger, fresh: FreshConstants) -> Trigger:
    """Most general preimage of ``t`` under the collapse to the critical constant.

    Every critical-constant leaf in every variable's image becomes its own
    fresh constant; rule-set constants stay.
    """
    def rename(name):
        return fresh() if name == STAR else name

    return Trigger(t.rule, {v: map_constants(img, rename) for v, img in t.subs.items()})


def producer_of(term: Func, rs: RuleSet, fresh: FreshConstants) -> Trigger:
    """The trigger that must have introduced ``term``; free body variables get fresh constants."""
    s = term.symbol
    rule = rs.get(s.rule_id)
    if rule is None:
        raise UnknownRuleId(s.rule_id)
    if (
        s.disjunct_index >= len(rule.head)
        or s.var not in rule.existentials(s.disjunct_index)
        or s.arity != len(rule.frontier)
    ):
        raise ValueError(f"Skolem symbol {s} does not belong to rule {rule.id}")
    subs = dict(zip(rule.frontier, term.args))
    for v in rule.body_variables:
        if v not in subs:
            subs[v] = Const(fresh())
    return Trigger(rule, subs)


def backtrack_facts(t: Trigger, rs: RuleSet, fresh: FreshConstants) -> frozenset:
    """Facts present whenever a trigger matching ``t`` is loaded in a real chase branch.

    Starts from the body of ``t`` and, for every Skolem term met, adds the body
    and full head disjunct of its producing trigger, recursively.
    """
    facts = set(t.mapped_body)
    done: set = set()
    work = [u for f in facts for u in f.terms]
    while work:
        for u in subterms(work.pop()):
            if not isinstance(u, Func):
                continue
            key = (u.symbol.rule_id, u.symbol.disjunct_index, u.args)
            if key in done:
                continue
            done.add(key)
            producer = producer_of(u, rs, fresh)
            for f in (*producer.mapped_body, *producer.mapped_head[u.symbol.disjunct_index]):
                if f not in facts:
                    facts.add(f)
                    work.extend(f.terms)
    return frozenset(facts)


def is_blocked(kind: ObsolescenceKind, t: Trigger, rs: RuleSet) -> bool:
    fresh = FreshConstants()
    general = rename_apart(t, fresh)
    return is_obsolete(kind, general, backtrack_facts(general, rs, fresh))


def moc_is_obsolete(notion: MfaNotion, t: Trigger, F, rs: RuleSet) -> bool:
    if notion is MfaNotion.MFA:
        F = F if isinstance(F, (set, frozenset, FactIndex)) else set(F)
        return all(f in F for head in t.mapped_head for f in head)
    return is_blocked(notion.blocked_kind, t, rs)


@dataclass(frozen=True)
class AcyclicFixpoint:
    mfa_set: frozenset
    rounds: int


@dataclass(frozen=True)
class CyclicTermFound:
    witness: GroundTerm
    rounds: int


@dataclass(frozen=True)
class BudgetExhausted:
    rounds: int


MfaOutcome = Union[AcyclicFixpoint, CyclicTermFound, BudgetExhausted]


def compute_mfa_set(rs: RuleSet, notion: MfaNotion, budget: Optional[int] = None) -> MfaOutcome:
    """Parallel determinized chase on the critical instance.

    A round fires every loaded trigger that the notion does not mark obsolete
    and adds all of its disjunct results. The run is at a fixpoint once a
    round would add nothing new.
    """
    validate_ruleset(rs)
    F = FactIndex(critical_instance(rs))
    blocked: dict = {}
    rounds = 0
    while True:
        if budget is not None and rounds >= budget:
            return BudgetExhausted(rounds)
        new: set = set()
        for t in enumerate_triggers(rs, F):
            heads = [f for head in t.mapped_head for f in head]
            if all(f in F for f in heads):
                continue
            if notion is not MfaNotion.MFA:
                if t not in blocked:
                    blocked[t] = is_blocked(notion.blocked_kind, t, rs)
                if blocked[t]:
                    continue
            new.update(f for f in heads if f not in F)
        if not new:
            return AcyclicFixpoint(frozenset(F.facts), rounds)
        rounds += 1
        cyclic = {u for f in new for u in f.terms if is_cyclic(u)}
        if cyclic:
            return CyclicTermFound(min(cyclic, key=term_key), rounds)
        F.update(sorted_facts(new))


def skolem_symbols(rs: RuleSet) -> list:
    return [
        SkolemFS(r.id, d, v, len(r.frontier))
        for r in rs
        for d in range(len(r.head))
        for v in r.existentials(d)
    ]


def count_acyclic_terms(n_constants: int, symbols) -> int:
    """Number of non-cyclic ground terms over ``n_constants`` constants and ``symbols``."""

    @lru_cache(maxsize=None)
    def count(avail: frozenset) -> int:
        return n_constants + sum(count(avail - {s}) ** s.arity for s in avail)

    return count(frozenset(symbols))


def count_acyclic_facts(rs: RuleSet) -> int:
    sig = signature_of(rs)
    n_terms = count_acyclic_terms(len(sig.constants | {STAR}), skolem_symbols(rs))
    return sum(n_terms ** n for n in sig.predicates.values())


def intrinsic_round_bound(rs: RuleSet) -> int:
    """Rounds after which the analysis must have stopped on its own."""
    return count_acyclic_facts(rs) + 1


@dataclass(frozen=True)
class Verdict:
    notion: MfaNotion
    acyclic: bool
    rounds: int
    witness: Optional[GroundTerm] = None
    mfa_set: Optional[frozenset] = None

    @property
    def mfa_set_size(self) -> Optional[int]:
        return None if self.mfa_set is None else len(self.mfa_set)


def analyze_termination(rs: RuleSet, notion: MfaNotion) -> Verdict:
    out = compute_mfa_set(rs, notion, intrinsic_round_bound(rs))
    if isinstance(out, AcyclicFixpoint):
        return Verdict(notion, True, out.rounds, mfa_set=out.mfa_set)
    if isinstance(out, CyclicTermFound):
        return Verdict(notion, False, out.rounds, witness=out.witness)
    raise RuntimeError(f"analysis exceeded its intrinsic bound after {out.rounds} rounds")


def collapse_term(t: GroundTerm, keep) -> GroundTerm:
    """Send every constant outside ``keep`` to the critical constant."""
    return map_constants(t, lambda c: c if c in keep else STAR)


def collapse_fact(f: Atom, keep) -> Atom:
    return Atom(f.predicate, tuple(collapse_term(t, keep) for t in f.terms))


def collapse_trigger(t: Trigger, keep) -> Trigger:
    return Trigger(t.rule, {v: collapse_term(img, keep) for v, img in t.subs.items()})
