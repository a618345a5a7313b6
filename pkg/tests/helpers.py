"""Shorthand constructors shared by the test modules."""

from pathlib import Path

from exrules.rulefmt import parse_database, parse_facts, parse_rules, parse_term
from exrules.syntax import KnowledgeBase

DATA = Path(__file__).parent / "data"

R1 = "P(X,Y) -> S(Y) | P(Y,Z), P(Z,Y)"
R2 = "P(X,Y) -> P(Y,Z), P(Y,X)"
R3 = "R(X,Y) -> R(Y,Z)"


def T(text):
    return parse_term(text)


def _lines(text):
    return "\n".join(p.strip() + "." for p in text.split(";") if p.strip())


def F(text):
    """Fact set from ``;``-separated facts, e.g. ``F("P(a,b); S(b)")``."""
    return parse_facts(_lines(text))


def kb(rules, db):
    return KnowledgeBase(parse_rules(rules), parse_database(_lines(db)))


def random_trigger_instance(rng):
    """A random (trigger, F, F') triple with F a subset of F'.

    Facts draw on the trigger's own body and head results often enough for
    both obsolescence kinds to fire in a good share of samples.
    """
    from exrules.generators import random_ruleset
    from exrules.syntax import Atom
    from exrules.terms import Const
    from exrules.triggers import Trigger

    rs = random_ruleset(rng)
    rule = rng.choice(rs.rules)
    consts = [Const(c) for c in ("a", "b", "c0")]
    subs = {v: rng.choice(consts) for v in rule.body_variables}
    t = Trigger(rule, subs)
    pool = list(consts) + [u for d in range(len(rule.head)) for u in t.fresh_terms(d)]
    preds = [("P", 2), ("Q", 1), ("R", 2)]

    def noise(k):
        out = set()
        for _ in range(k):
            p, n = rng.choice(preds)
            out.add(Atom(p, tuple(rng.choice(pool) for _ in range(n))))
        return out

    facts = set(t.mapped_body) if rng.random() < 0.8 else set()
    for head in t.mapped_head:
        if rng.random() < 0.3:
            facts.update(head)
    facts |= noise(rng.randint(0, 5))
    bigger = facts | noise(rng.randint(0, 5))
    if rng.random() < 0.3:
        bigger |= set(rng.choice(t.mapped_head))
    return t, frozenset(facts), frozenset(bigger)
