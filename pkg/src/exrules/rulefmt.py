"""Line-based text formats for rule files (.rls) and fact files (.fct).

Rules::

    % comment
    P(X,Y) -> S(Y) | P(Y,Z), P(Z,Y)
    @7: P(X,c0) -> Q(X)

Identifiers starting with an uppercase letter are variables, everything else
is a constant. A rule without ``@n:`` gets its 1-based line number as id.
Variables are stored with a lowercased first letter (``X`` becomes ``x``), so
Skolem symbols render as in ``f[1,1,z](b)``.

Facts::

    P(a,b).
    P(b,f[1,1,z](b)).
"""

from __future__ import annotations

import re
from typing import Iterable

from .syntax import Atom, Rule, RuleSet, fact_key, validate_facts, validate_ruleset
from .terms import STAR, Const, Func, GroundTerm, SkolemFS, Var


class FormatError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class RuleSyntaxError(FormatError):
    pass


class ReservedConstant(FormatError):
    pass


class VariableInFact(FormatError):
    pass


class SkolemInDatabase(FormatError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<ident>[A-Za-z0-9][A-Za-z0-9_]*)|(?P<star>\*)|(?P<punct>[()\[\],|@:.]))"
)


class _Scanner:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0
        self.tokens = []
        while True:
            m = _TOKEN.match(text, self.pos)
            if not m or m.end() == self.pos:
                rest = text[self.pos:]
                if rest.strip():
                    col = self.pos + len(rest) - len(rest.lstrip()) + 1
                    raise RuleSyntaxError(f"unexpected character {rest.strip()[0]!r}", line, col)
                break
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind) + 1))
            self.pos = m.end()
        self.tokens.append(("eof", "", len(text) + 1))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, what: str, tok=None):
        tok = tok or self.peek()
        found = tok[1] or "end of line"
        return RuleSyntaxError(f"expected {what}, found {found!r}", self.line, tok[2])

    def expect(self, value: str):
        tok = self.next()
        if tok[1] != value or tok[0] == "ident":
            raise self.error(repr(value), tok)
        return tok

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok[1] == value and tok[0] != "ident"


def _strip_comment(line: str) -> str:
    return line.split("%", 1)[0]


def var_name(surface: str) -> str:
    return surface[0].lower() + surface[1:]


def var_surface(name: str) -> str:
    return name[0].upper() + name[1:]


def _is_var(ident: str) -> bool:
    return ident[0].isupper()


def _rule_term(sc: _Scanner):
    tok = sc.next()
    if tok[0] == "star":
        raise ReservedConstant(f"{STAR} is reserved", sc.line, tok[2])
    if tok[0] != "ident":
        raise sc.error("a term", tok)
    return Var(var_name(tok[1])) if _is_var(tok[1]) else Const(tok[1])


def _atom(sc: _Scanner, term_parser) -> Atom:
    tok = sc.next()
    if tok[0] != "ident":
        raise sc.error("a predicate", tok)
    sc.expect("(")
    terms = []
    if not sc.at(")"):
        terms.append(term_parser(sc))
        while sc.at(","):
            sc.next()
            terms.append(term_parser(sc))
    sc.expect(")")
    return Atom(tok[1], tuple(terms))


def _conjunction(sc: _Scanner, stop: set) -> list:
    atoms = []
    if sc.peek()[1] in stop and sc.peek()[0] != "ident":
        return atoms
    atoms.append(_atom(sc, _rule_term))
    while sc.at(","):
        sc.next()
        atoms.append(_atom(sc, _rule_term))
    return atoms


def _nat(sc: _Scanner) -> int:
    tok = sc.next()
    if tok[0] != "ident" or not tok[1].isdigit():
        raise sc.error("a natural number", tok)
    return int(tok[1])


def parse_rule_line(text: str, line: int = 1) -> Rule:
    sc = _Scanner(text, line)
    rule_id = line
    if sc.at("@"):
        sc.next()
        rule_id = _nat(sc)
        sc.expect(":")
    body = _conjunction(sc, {"->"})
    sc.expect("->")
    head = [_conjunction(sc, {"|", ""})]
    while sc.at("|"):
        sc.next()
        head.append(_conjunction(sc, {"|", ""}))
    if sc.peek()[0] != "eof":
        raise sc.error("',', '|' or end of line")
    if any(not d for d in head):
        raise sc.error("a head atom")
    return Rule(rule_id, tuple(body), tuple(tuple(d) for d in head))


def parse_rules(text: str) -> RuleSet:
    rules = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if line.strip():
            rules.append(parse_rule_line(line, n))
    rs = RuleSet(rules)
    validate_ruleset(rs)
    return rs


def _ground_term(sc: _Scanner, database: bool) -> GroundTerm:
    tok = sc.next()
    if tok[0] == "star":
        if database:
            raise ReservedConstant(f"{STAR} is reserved", sc.line, tok[2])
        return Const(STAR)
    if tok[0] != "ident":
        raise sc.error("a ground term", tok)
    if sc.at("["):
        if tok[1] != "f":
            raise sc.error("Skolem symbol 'f'", tok)
        if database:
            raise SkolemInDatabase("Skolem terms are not allowed in databases", sc.line, tok[2])
        sc.next()
        rule_id = _nat(sc)
        sc.expect(",")
        d = _nat(sc)
        sc.expect(",")
        vtok = sc.next()
        if vtok[0] != "ident":
            raise sc.error("a variable name", vtok)
        sc.expect("]")
        sc.expect("(")
        args = []
        if not sc.at(")"):
            args.append(_ground_term(sc, database))
            while sc.at(","):
                sc.next()
                args.append(_ground_term(sc, database))
        sc.expect(")")
        return Func(SkolemFS(rule_id, d, vtok[1], len(args)), tuple(args))
    if _is_var(tok[1]):
        raise VariableInFact(f"variable {tok[1]} in a fact", sc.line, tok[2])
    return Const(tok[1])


def parse_facts(text: str, database: bool = False) -> frozenset:
    """Parse a fact file; ``database=True`` rejects Skolem terms and ``*``."""
    facts = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        sc = _Scanner(line, n)
        facts.append(_atom(sc, lambda s: _ground_term(s, database)))
        sc.expect(".")
        if sc.peek()[0] != "eof":
            raise sc.error("end of line")
    validate_facts(facts)
    return frozenset(facts)


def parse_database(text: str) -> frozenset:
    return parse_facts(text, database=True)


def render_term(t) -> str:
    if isinstance(t, Var):
        return var_surface(t.name)
    return t.text


def render_atom(a: Atom) -> str:
    return f"{a.predicate}({','.join(render_term(t) for t in a.terms)})"


def serialize_rule(r: Rule) -> str:
    body = ", ".join(render_atom(a) for a in r.body)
    head = " | ".join(", ".join(render_atom(a) for a in d) for d in r.head)
    return f"@{r.id}: {body} -> {head}" if body else f"@{r.id}: -> {head}"


def serialize_rules(rs: Iterable[Rule]) -> str:
    return "".join(serialize_rule(r) + "\n" for r in rs)


def serialize_facts(facts: Iterable[Atom]) -> str:
    return "".join(render_atom(f) + ".\n" for f in sorted(facts, key=fact_key))


def parse_term(text: str) -> GroundTerm:
    """Parse a single rendered ground term, e.g. ``f[1,1,z](b)``."""
    sc = _Scanner(text, 1)
    t = _ground_term(sc, database=False)
    if sc.peek()[0] != "eof":
        raise sc.error("end of term")
    return t
