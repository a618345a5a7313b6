"""Ground term mappings, homomorphism search and core checks on finite fact sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping

from .syntax import Atom, terms_of
from .terms import Const, Func, GroundTerm, Var, term_key


class UnmappedVariable(KeyError):
    def __init__(self, var: str):
        super().__init__(var)
        self.var = var


class GroundSubstitution(dict):
    """Finite map from variable names to ground terms."""

    def apply_term(self, t):
        if isinstance(t, Var):
            try:
                return self[t.name]
            except KeyError:
                raise UnmappedVariable(t.name) from None
        return t

    def apply_atom(self, a: Atom) -> Atom:
        return Atom(a.predicate, tuple(self.apply_term(t) for t in a.terms))


class GroundTermMapping:
    """Explicit exceptions over an identity default, extended homomorphically.

    Constants are always fixed, even if listed in the explicit map.
    """

    __slots__ = ("_map",)

    def __init__(self, mapping: Mapping | Iterable = ()):
        m = dict(mapping)
        self._map = {k: v for k, v in m.items() if not isinstance(k, Const)}

    def __call__(self, t: GroundTerm) -> GroundTerm:
        return apply_mapping(self, t)

    def __getitem__(self, t):
        return self(t)

    @property
    def explicit(self) -> dict:
        return dict(self._map)

    def items(self):
        return self._map.items()

    def apply_fact(self, f: Atom) -> Atom:
        return Atom(f.predicate, tuple(self(t) for t in f.terms))

    def apply_facts(self, facts: Iterable[Atom]) -> set:
        return {self.apply_fact(f) for f in facts}

    def compose(self, first: "GroundTermMapping", on: Iterable[GroundTerm]) -> "GroundTermMapping":
        """``self ∘ first`` materialized on the terms ``on``."""
        return GroundTermMapping({t: self(first(t)) for t in on})

    def is_identity_on(self, terms: Iterable[GroundTerm]) -> bool:
        return all(self(t) == t for t in terms)

    def __eq__(self, other):
        return isinstance(other, GroundTermMapping) and self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        inner = ", ".join(
            f"{k}->{v}" for k, v in sorted(self._map.items(), key=lambda kv: term_key(kv[0]))
        )
        return f"GroundTermMapping({{{inner}}})"


def apply_mapping(h: GroundTermMapping, t: GroundTerm) -> GroundTerm:
    if isinstance(t, Const):
        return t
    img = h._map.get(t)
    if img is not None:
        return img
    return Func(t.symbol, tuple(apply_mapping(h, a) for a in t.args))


def is_homomorphism(h: GroundTermMapping, A: Iterable[Atom], B: Iterable[Atom]) -> bool:
    B = B if isinstance(B, (set, frozenset)) else set(B)
    return all(h.apply_fact(f) in B for f in A)


def _index_by_predicate(facts: Iterable[Atom]) -> dict:
    idx: dict = {}
    for f in facts:
        idx.setdefault(f.predicate, []).append(f)
    return idx


def search_homomorphisms(
    A: Iterable[Atom],
    B: Iterable[Atom],
    fixed: Mapping | None = None,
) -> Iterator[GroundTermMapping]:
    """Yield every homomorphism from ``A`` to ``B`` agreeing with ``fixed``.

    The explicit domain of each result is exactly the non-constant terms of
    ``A`` (plus the keys of ``fixed``), so two results are distinct iff they
    differ on terms(A). Terms are assigned in (depth, text) order and
    candidates tried in the same order, which makes the output deterministic.
    """
    A = set(A)
    B = B if isinstance(B, (set, frozenset)) else set(B)
    fixed = dict(fixed or {})
    by_pred = _index_by_predicate(B)

    if any(f.predicate not in by_pred for f in A):
        return

    # candidate images per term from the (predicate, position) occurrences in A
    positions: dict = {}
    for f in A:
        for i, t in enumerate(f.terms):
            if not isinstance(t, Const):
                positions.setdefault(t, set()).add((f.predicate, i))
    free = sorted((t for t in positions if t not in fixed), key=term_key)
    candidates = {}
    for t in free:
        allowed = None
        for pred, i in positions[t]:
            here = {g.terms[i] for g in by_pred[pred] if len(g.terms) > i}
            allowed = here if allowed is None else allowed & here
        candidates[t] = sorted(allowed or (), key=term_key)
        if not candidates[t]:
            return

    order = {t: n for n, t in enumerate(free)}

    def resolve(t, assign):
        if isinstance(t, Const):
            return t
        if t in fixed:
            return fixed[t]
        return assign[t]

    # each fact is checked as soon as its last free term gets assigned
    check_at: dict = {n: [] for n in range(len(free))}
    ready = []
    for f in A:
        last = max((order[t] for t in f.terms if t in order), default=-1)
        (check_at[last] if last >= 0 else ready).append(f)

    if any(Atom(f.predicate, tuple(resolve(t, {}) for t in f.terms)) not in B for f in ready):
        return

    assign: dict = {}

    def rec(n):
        if n == len(free):
            yield GroundTermMapping({**fixed, **assign})
            return
        t = free[n]
        for c in candidates[t]:
            assign[t] = c
            if all(
                Atom(f.predicate, tuple(resolve(u, assign) for u in f.terms)) in B
                for f in check_at[n]
            ):
                yield from rec(n + 1)
        del assign[t]

    yield from rec(0)


def find_homomorphism(A, B, fixed: Mapping | None = None):
    return next(search_homomorphisms(A, B, fixed), None)


def enumerate_endomorphisms(F: Iterable[Atom]) -> Iterator[GroundTermMapping]:
    F = set(F)
    return search_homomorphisms(F, F)


@dataclass(frozen=True)
class MappingFlags:
    strong: bool
    injective_on_domain: bool
    surjective_onto_terms_of_B: bool


def is_strong(h: GroundTermMapping, domain, A, B) -> bool:
    """No fact outside ``A`` with all terms in ``domain`` lands inside ``B``.

    Works backwards from ``B``: for every fact of ``B`` enumerate its preimages
    over ``domain`` and look for one that is missing from ``A``.
    """
    A = A if isinstance(A, (set, frozenset)) else set(A)
    preimages: dict = {}
    for t in domain:
        preimages.setdefault(h(t), []).append(t)
    for b in B:
        choices = [preimages.get(t, ()) for t in b.terms]
        for combo in product(*choices):
            if Atom(b.predicate, combo) not in A:
                return False
    return True


def is_injective_on(h: GroundTermMapping, domain) -> bool:
    domain = set(domain)
    return len({h(t) for t in domain}) == len(domain)


def classify_mapping(h: GroundTermMapping, domain, A, B) -> MappingFlags:
    domain = set(domain)
    images = {h(t) for t in domain}
    return MappingFlags(
        strong=is_strong(h, domain, A, B),
        injective_on_domain=len(images) == len(domain),
        surjective_onto_terms_of_B=terms_of(B) <= images,
    )


def is_weak_core(F: Iterable[Atom]) -> bool:
    """Every endomorphism is strong and injective on terms(F)."""
    F = set(F)
    dom = terms_of(F)
    for h in enumerate_endomorphisms(F):
        if not (is_injective_on(h, dom) and is_strong(h, dom, F, F)):
            return False
    return True


def is_strong_core(F: Iterable[Atom]) -> bool:
    """Every endomorphism is strong, injective and surjective on terms(F)."""
    F = set(F)
    dom = terms_of(F)
    for h in enumerate_endomorphisms(F):
        flags = classify_mapping(h, dom, F, F)
        if not (flags.strong and flags.injective_on_domain and flags.surjective_onto_terms_of_B):
            return False
    return True
