"""Chase engine, core checks and MFA-style termination analysis for disjunctive existential rules."""

from .chase import (
    ChaseBranch,
    ChaseConfig,
    ChaseTree,
    FixedSelector,
    RoundRobinSelector,
    ScriptedSelector,
    Status,
    check_universality,
    models_kb,
    result_of,
    run_branch,
    run_tree,
    tree_results,
)
from .cores import AltMatchWitness, find_alternative_matches, is_alternative_match
from .homomorphisms import (
    GroundSubstitution,
    GroundTermMapping,
    apply_mapping,
    classify_mapping,
    enumerate_endomorphisms,
    find_homomorphism,
    is_homomorphism,
    is_strong_core,
    is_weak_core,
)
from .rulefmt import parse_database, parse_facts, parse_rules, serialize_facts, serialize_rules
from .syntax import Atom, KnowledgeBase, Rule, RuleSet, frontier, is_deterministic, signature_of, validate_ruleset
from .terms import STAR, Const, Func, SkolemFS, Var, constants_of, depth, is_cyclic
from .termination import MfaNotion, analyze_termination, compute_mfa_set, critical_instance
from .triggers import ObsolescenceKind, Trigger, enumerate_triggers, instantiate, is_active, is_loaded, is_obsolete

__version__ = "0.1.0"
