"""Seeded random rule sets, databases and fact sets for property checks and experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .syntax import Atom, Rule, RuleSet, signature_of
from .terms import Const, Func, SkolemFS, Var


@dataclass
class CorpusConfig:
    predicates: tuple = (("P", 2), ("Q", 1), ("R", 2))
    rule_constants: tuple = ("c0",)
    db_constants: tuple = ("a", "b", "c")
    max_rules: int = 4
    max_body: int = 2
    max_head_atoms: int = 2
    max_disjuncts: int = 2
    max_facts: int = 6
    p_constant: float = 0.1
    p_existential: float = 0.3


BODY_VARS = ("x", "y", "z")
EXIST_VARS = ("u", "v")


def _atom(rng, pred, arity, pool, cfg):
    terms = []
    for _ in range(arity):
        if cfg.rule_constants and rng.random() < cfg.p_constant:
            terms.append(Const(rng.choice(cfg.rule_constants)))
        else:
            terms.append(Var(rng.choice(pool)))
    return Atom(pred, tuple(terms))


def random_rule(rng: random.Random, rule_id: int, cfg: CorpusConfig, deterministic: bool) -> Rule:
    body = [
        _atom(rng, *rng.choice(cfg.predicates), BODY_VARS[: rng.randint(1, len(BODY_VARS))], cfg)
        for _ in range(rng.randint(1, cfg.max_body))
    ]
    body_vars = sorted({v for a in body for v in a.variables()}) or ["x"]
    n_disj = 1 if deterministic else rng.randint(1, cfg.max_disjuncts)
    head = []
    for _ in range(n_disj):
        pool = list(body_vars)
        if rng.random() < cfg.p_existential:
            pool += list(EXIST_VARS[: rng.randint(1, len(EXIST_VARS))])
        head.append([_atom(rng, *rng.choice(cfg.predicates), pool, cfg) for _ in range(rng.randint(1, cfg.max_head_atoms))])
    return Rule(rule_id, body, head)


def random_ruleset(rng: random.Random, cfg: CorpusConfig | None = None, deterministic: bool = False) -> RuleSet:
    cfg = cfg or CorpusConfig()
    return RuleSet(random_rule(rng, i, cfg, deterministic) for i in range(1, rng.randint(1, cfg.max_rules) + 1))


def random_database(rng: random.Random, rs: RuleSet, cfg: CorpusConfig | None = None) -> frozenset:
    """Facts over the predicates of ``rs`` using database constants and rule constants."""
    cfg = cfg or CorpusConfig()
    preds = sorted(signature_of(rs).predicates.items()) or list(cfg.predicates)
    consts = [Const(c) for c in (*cfg.db_constants, *sorted(signature_of(rs).constants))]
    facts = set()
    for _ in range(rng.randint(1, cfg.max_facts)):
        p, n = rng.choice(preds)
        facts.add(Atom(p, tuple(rng.choice(consts) for _ in range(n))))
    return frozenset(facts)


_F = SkolemFS(1, 0, "z", 1)
_G = SkolemFS(2, 0, "w", 2)


def term_pool(rng: random.Random, size: int) -> list:
    """Up to ``size`` distinct ground terms mixing constants and Skolem terms."""
    a, b = Const("a"), Const("b")
    candidates = [a, b, Func(_F, (a,)), Func(_F, (b,)), Func(_G, (a, b)), Func(_F, (Func(_F, (a,)),)), Const("c")]
    rng.shuffle(candidates)
    return candidates[: max(1, size)]


def random_factset(rng: random.Random, max_terms: int = 6, max_facts: int = 6, predicates=(("P", 2), ("S", 1))) -> frozenset:
    pool = term_pool(rng, rng.randint(1, max_terms))
    facts = set()
    for _ in range(rng.randint(0, max_facts)):
        p, n = rng.choice(predicates)
        facts.add(Atom(p, tuple(rng.choice(pool) for _ in range(n))))
    return frozenset(facts)
