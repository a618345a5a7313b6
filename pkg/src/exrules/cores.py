"""Alternative matches: redundant fresh terms introduced during a chase branch."""

from __future__ import annotations

from dataclasses import dataclass

from .chase import ChaseBranch, result_of
from .homomorphisms import GroundTermMapping, is_homomorphism, search_homomorphisms
from .terms import GroundTerm, term_key
from .triggers import Trigger


@dataclass(frozen=True)
class AltMatchWitness:
    trigger: Trigger
    disjunct_index: int
    h_alt: GroundTermMapping
    dropped_term: GroundTerm


def _check_index(t: Trigger, d: int) -> None:
    if not 0 <= d < len(t.rule.head):
        raise IndexError(f"rule {t.rule.id} has no head disjunct {d}")


def dropped_fresh_terms(h_alt: GroundTermMapping, t: Trigger, d: int) -> list:
    fresh = t.fresh_terms(d)
    image = {h_alt(u) for u in fresh}
    return sorted((u for u in fresh if u not in image), key=term_key)


def is_alternative_match(h_alt: GroundTermMapping, t: Trigger, d: int, F) -> bool:
    """Homomorphism of disjunct ``d``'s result into ``F`` that fixes the frontier
    images and leaves some fresh term of the disjunct out of its image."""
    _check_index(t, d)
    return (
        is_homomorphism(h_alt, t.mapped_head[d], F)
        and all(h_alt(u) == u for u in t.frontier_images)
        and bool(dropped_fresh_terms(h_alt, t, d))
    )


def alternative_match_for(t: Trigger, d: int, F) -> AltMatchWitness | None:
    _check_index(t, d)
    if not t.fresh_terms(d):
        return None
    fixed = {u: u for u in t.frontier_images}
    for h in search_homomorphisms(t.mapped_head[d], F, fixed):
        dropped = dropped_fresh_terms(h, t, d)
        if dropped:
            return AltMatchWitness(t, d, h, dropped[0])
    return None


def find_alternative_matches(b: ChaseBranch) -> list:
    """One witness per applied (trigger, disjunct) that has an alternative match."""
    F = result_of(b)
    out = []
    for node in b.nodes:
        if node.origin is None:
            continue
        t, d = node.origin
        w = alternative_match_for(t, d, F)
        if w is not None:
            out.append(w)
    return out


def has_alternative_match(b: ChaseBranch) -> bool:
    return bool(find_alternative_matches(b))

