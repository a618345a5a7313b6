"""Command-line interface: ``exrules <subcommand> ...``.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage,
file or parse error.
"""

from __future__ import annotations

import argparse
import sys

from . import report
from .chase import (
    ChaseConfig,
    InvalidConfig,
    NotAModel,
    models_kb,
    parse_selector,
    run_branch,
    run_tree,
    tree_results,
)
from .cores import find_alternative_matches
from .homomorphisms import find_homomorphism, is_strong_core, is_weak_core
from .rulefmt import FormatError, parse_database, parse_facts, parse_rules, render_atom
from .syntax import KnowledgeBase, RuleSetError, fact_key, validate_facts
from .termination import MfaNotion, analyze_termination
from .triggers import ObsolescenceKind


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_kb(args) -> KnowledgeBase:
    rules = parse_rules(_read(args.rules))
    db = parse_database(_read(args.data))
    validate_facts(db, rules)
    return KnowledgeBase(rules, db)


def _config(args) -> ChaseConfig:
    selector = parse_selector(args.select) if args.select else None
    return ChaseConfig(ObsolescenceKind(args.variant), args.max_steps, selector)


def _fact_lines(facts) -> str:
    return "{" + ", ".join(render_atom(f) for f in sorted(facts, key=fact_key)) + "}"


def _emit(args, obj: dict, text: str) -> None:
    if getattr(args, "out", "text") == "json":
        print(report.emit_report(obj))
    else:
        print(text)


def cmd_run(args) -> int:
    kb = _load_kb(args)
    cfg = _config(args)
    if args.mode == "tree":
        tree = run_tree(kb, cfg)
        lines = [f"{s}: {_fact_lines(F)}" for F, s in tree_results(tree)]
        _emit(args, report.tree_json(tree, cfg.kind), "\n".join(lines))
    else:
        if cfg.selector is None:
            cfg.selector = parse_selector("fixed:0")
        branch = run_branch(kb, cfg)
        lines = [f"{branch.status} after {branch.steps} steps"]
        for i, n in enumerate(branch.nodes):
            via = "" if n.origin is None else f"  <- {n.origin[0]!r} disjunct {n.origin[1]}"
            lines.append(f"[{i}] {_fact_lines(n.facts)}{via}")
        _emit(args, report.branch_json(branch, cfg.kind), "\n".join(lines))
    return 0


def cmd_analyze(args) -> int:
    rules = parse_rules(_read(args.rules))
    v = analyze_termination(rules, MfaNotion(args.notion))
    if v.acyclic:
        text = f"acyclic ({v.notion}): chase termination guaranteed; mfa set has {v.mfa_set_size} facts"
    else:
        text = f"not {v.notion}: cyclic term {v.witness.text} after {v.rounds} rounds"
    _emit(args, report.verdict_json(v), text)
    return 0 if v.acyclic else 1


def cmd_check_core(args) -> int:
    facts = parse_facts(_read(args.facts))
    which = "weak" if args.weak else "strong"
    ok = is_weak_core(facts) if args.weak else is_strong_core(facts)
    obj = {"core": which, "holds": ok, "schema": report.SCHEMA}
    _emit(args, obj, f"{which} core: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def cmd_alt_matches(args) -> int:
    kb = _load_kb(args)
    cfg = _config(args)
    if cfg.selector is None:
        cfg.selector = parse_selector("fixed:0")
    branch = run_branch(kb, cfg)
    ws = find_alternative_matches(branch)
    lines = [f"branch {branch.status} after {branch.steps} steps; {len(ws)} alternative match(es)"]
    for w in ws:
        mapping = ", ".join(f"{a}->{b}" for a, b in report.mapping_json(w.h_alt))
        lines.append(f"{w.trigger!r} disjunct {w.disjunct_index}: drops {w.dropped_term.text} via {{{mapping}}}")
    _emit(args, report.witnesses_json(ws, branch.status), "\n".join(lines))
    return 1 if ws else 0


def cmd_check_hom(args) -> int:
    A = parse_facts(_read(args.source))
    B = parse_facts(_read(args.target))
    h = find_homomorphism(A, B)
    obj = {"homomorphism": None if h is None else report.mapping_json(h), "schema": report.SCHEMA}
    if h is None:
        text = "no homomorphism"
    else:
        text = "homomorphism: {" + ", ".join(f"{a}->{b}" for a, b in report.mapping_json(h)) + "}"
    _emit(args, obj, text)
    return 0 if h is not None else 1


def cmd_models(args) -> int:
    kb = _load_kb(args)
    facts = parse_facts(_read(args.facts))
    ok = models_kb(facts, kb)
    _emit(args, {"models": ok, "schema": report.SCHEMA}, f"models: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exrules", description="Chase engine and termination analysis for disjunctive existential rules.")
    sub = p.add_subparsers(dest="command", required=True)

    def out_flag(sp):
        sp.add_argument("--out", choices=["text", "json"], default="text")

    def chase_flags(sp):
        sp.add_argument("--rules", required=True)
        sp.add_argument("--data", required=True)
        sp.add_argument("--variant", choices=[k.value for k in ObsolescenceKind], default="restricted")
        sp.add_argument("--select", help="fixed:<d> | roundrobin | script:<d1,d2,...>")
        sp.add_argument("--max-steps", type=int, default=1000, help="applications per branch (node budget in tree mode)")
        out_flag(sp)

    sp = sub.add_parser("run", help="run a chase branch or tree")
    chase_flags(sp)
    sp.add_argument("--mode", choices=["branch", "tree"], default="branch")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("analyze", help="MFA / DMFA / RMFA acyclicity check")
    sp.add_argument("--rules", required=True)
    sp.add_argument("--notion", choices=[n.value for n in MfaNotion], required=True)
    out_flag(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("check-core", help="decide whether a fact set is a core")
    sp.add_argument("--facts", required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--weak", action="store_true")
    g.add_argument("--strong", action="store_true")
    out_flag(sp)
    sp.set_defaults(func=cmd_check_core)

    sp = sub.add_parser("alt-matches", help="alternative matches along a chase branch")
    chase_flags(sp)
    sp.set_defaults(func=cmd_alt_matches)

    sp = sub.add_parser("check-hom", help="search a homomorphism between fact sets")
    sp.add_argument("--from", dest="source", required=True)
    sp.add_argument("--to", dest="target", required=True)
    out_flag(sp)
    sp.set_defaults(func=cmd_check_hom)

    sp = sub.add_parser("models", help="check that a fact set models a knowledge base")
    sp.add_argument("--facts", required=True)
    sp.add_argument("--rules", required=True)
    sp.add_argument("--data", required=True)
    out_flag(sp)
    sp.set_defaults(func=cmd_models)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (FormatError, RuleSetError, InvalidConfig, NotAModel, ValueError, OSError) as exc:
        print(f"exrules {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
