"""Run the three small knowledge bases used throughout the tests and print what the engine derives.

    python3 scripts/worked_examples.py
"""

from exrules.chase import ChaseConfig, FixedSelector, Status, check_universality, run_branch, run_tree, tree_results
from exrules.cores import find_alternative_matches
from exrules.rulefmt import parse_database, parse_facts, parse_rules, render_atom
from exrules.report import mapping_json
from exrules.syntax import KnowledgeBase, sorted_facts
from exrules.termination import MfaNotion, analyze_termination
from exrules.triggers import ObsolescenceKind

RE, SK = ObsolescenceKind.RESTRICTED, ObsolescenceKind.SKOLEM

KB1 = KnowledgeBase(parse_rules("P(X,Y) -> S(Y) | P(Y,Z), P(Z,Y)"), parse_database("P(a,b)."))
KB2 = KnowledgeBase(parse_rules("P(X,Y) -> P(Y,Z), P(Y,X)"), parse_database("P(a,b)."))
KB3 = KnowledgeBase(parse_rules("R(X,Y) -> R(Y,Z)"), parse_database("R(a,b)."))


def show(facts):
    return "{" + ", ".join(render_atom(f) for f in sorted_facts(facts)) + "}"


def main():
    print("KB1 restricted chase tree")
    results = tree_results(run_tree(KB1, ChaseConfig(RE)))
    for facts, status in results:
        print(f"  {status}: {show(facts)}")

    print("KB1 universality")
    for text in ("P(a,b).\nP(b,b).", "P(a,b).\nS(b)."):
        M = parse_facts(text)
        U, h = check_universality([r for r, _ in results], M, KB1)
        print(f"  {show(M)} <- {show(U)} via {mapping_json(h)}")

    print("KB2 after one application")
    b = run_branch(KB2, ChaseConfig(RE, max_steps=1))
    print(f"  result {show(b.result)}")
    for w in find_alternative_matches(b):
        print(f"  alternative match drops {w.dropped_term.text} via {mapping_json(w.h_alt)}")

    print("KB3 Skolem chase prefix")
    b = run_branch(KB3, ChaseConfig(SK, max_steps=4))
    print(f"  {b.status} after {b.steps} steps, {len(b.result)} facts")
    assert b.status is Status.BUDGET_EXHAUSTED

    print("KB1 Skolem chase, always second disjunct")
    b = run_branch(KB1, ChaseConfig(SK, max_steps=4, selector=FixedSelector(1)))
    print(f"  {b.status} after {b.steps} steps, {len(b.result)} facts")

    print("Termination analysis")
    for name, base in (("KB1", KB1), ("KB3", KB3)):
        for n in MfaNotion:
            v = analyze_termination(base.rules, n)
            verdict = f"acyclic, {v.mfa_set_size} facts" if v.acyclic else f"cyclic term {v.witness.text}"
            print(f"  {name} {n.value:>4}: {verdict} ({v.rounds} rounds)")


if __name__ == "__main__":
    main()
