"""Terms: constants, variables, Skolem function symbols and ground terms.

Ground terms are finite trees of Skolem-function applications over constants.
They are immutable and cache their hash, canonical text and depth, since the
chase uses them as dictionary keys everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

#: Surface name of the critical constant used by the MFA-style analyses.
STAR = "*"


@dataclass(frozen=True, order=True)
class SkolemFS:
    """Skolem function symbol for one existential variable of one head disjunct."""

    rule_id: int
    disjunct_index: int
    var: str
    arity: int

    def __str__(self) -> str:
        return f"f[{self.rule_id},{self.disjunct_index},{self.var}]"


@dataclass(frozen=True)
class Const:
    name: str

    def __hash__(self) -> int:
        return hash(("c", self.name))

    @property
    def depth(self) -> int:
        return 0

    @property
    def text(self) -> str:
        return self.name

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Func:
    symbol: SkolemFS
    args: tuple = ()
    _hash: int = field(init=False, repr=False, compare=False)
    _text: str = field(init=False, repr=False, compare=False)
    _depth: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.symbol.arity:
            raise ValueError(
                f"{self.symbol} expects {self.symbol.arity} arguments, got {len(self.args)}"
            )
        object.__setattr__(self, "_hash", hash((self.symbol, self.args)))
        inner = ",".join(a.text for a in self.args)
        object.__setattr__(self, "_text", f"{self.symbol}({inner})")
        object.__setattr__(self, "_depth", 1 + max((a.depth for a in self.args), default=0))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Func):
            return NotImplemented
        return self._hash == other._hash and self.symbol == other.symbol and self.args == other.args

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def text(self) -> str:
        return self._text

    def __str__(self) -> str:
        return self._text


GroundTerm = Union[Const, Func]


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


VarOrConst = Union[Var, Const]


def depth(t: GroundTerm) -> int:
    return t.depth


def term_key(t: GroundTerm) -> tuple:
    """Canonical sort key: shallow terms first, then by rendered text."""
    return (t.depth, t.text)


def is_cyclic(t: GroundTerm) -> bool:
    """True iff some root-to-leaf path repeats a Skolem function symbol."""

    def walk(u: GroundTerm, seen: frozenset) -> bool:
        if isinstance(u, Const):
            return False
        if u.symbol in seen:
            return True
        seen = seen | {u.symbol}
        return any(walk(a, seen) for a in u.args)

    return walk(t, frozenset())


def constants_of(t: GroundTerm) -> frozenset:
    if isinstance(t, Const):
        return frozenset((t.name,))
    out: set = set()
    for a in t.args:
        out |= constants_of(a)
    return frozenset(out)


def symbols_of(t: GroundTerm) -> frozenset:
    if isinstance(t, Const):
        return frozenset()
    out = {t.symbol}
    for a in t.args:
        out |= symbols_of(a)
    return frozenset(out)


def subterms(t: GroundTerm) -> Iterator[GroundTerm]:
    yield t
    if isinstance(t, Func):
        for a in t.args:
            yield from subterms(a)


def map_constants(t: GroundTerm, fn) -> GroundTerm:
    """Rebuild ``t`` with every constant leaf name replaced by ``fn(name)``."""
    if isinstance(t, Const):
        return Const(fn(t.name))
    return Func(t.symbol, tuple(map_constants(a, fn) for a in t.args))
