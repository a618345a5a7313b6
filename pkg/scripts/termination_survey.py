"""Survey acyclicity verdicts and chase lengths over a seeded random corpus.

For every rule set and notion the script records the verdict, and for
acyclic verdicts it runs the matching chase on sampled databases. Each run's
length is compared with two step budgets:

* ``product``  - |mfa_set| times the largest number of head disjuncts;
* ``counting`` - sum over mfa facts of m ** (number of ``*`` leaves), where m
  is the number of database constants that do not occur in the rules.

    python3 scripts/termination_survey.py --rulesets 200 --databases 10 --seed 1
    python3 scripts/termination_survey.py --json survey.json
"""

from __future__ import annotations

import argparse
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from exrules.chase import ChaseConfig, RoundRobinSelector, Status, run_branch
from exrules.generators import CorpusConfig, random_database, random_ruleset
from exrules.rulefmt import serialize_facts, serialize_rules
from exrules.syntax import KnowledgeBase, signature_of
from exrules.terms import STAR, constants_of
from exrules.termination import MfaNotion, analyze_termination


@dataclass
class SurveyConfig:
    seed: int = 1
    rulesets: int = 200
    databases: int = 10
    max_steps: int = 10_000
    corpus: CorpusConfig = field(default_factory=CorpusConfig)


def counting_bound(mfa_set, db, rs) -> int:
    keep = signature_of(rs).constants
    m = len({c for f in db for t in f.terms for c in constants_of(t)} - keep) or 1
    return sum(m ** sum(t.text.count(STAR) for t in f.terms) for f in mfa_set)


def survey(cfg: SurveyConfig) -> dict:
    rng = random.Random(cfg.seed)
    verdicts = Counter()
    runs = Counter()
    worst_ratio = 0.0
    first_excess = None
    t0 = time.perf_counter()
    for _ in range(cfg.rulesets):
        rs = random_ruleset(rng, cfg.corpus)
        max_disjuncts = max(len(r.head) for r in rs)
        for notion in MfaNotion:
            v = analyze_termination(rs, notion)
            verdicts[f"{notion.value}_{'acyclic' if v.acyclic else 'cyclic'}"] += 1
            if not v.acyclic:
                continue
            product = len(v.mfa_set) * max_disjuncts
            for _ in range(cfg.databases):
                db = random_database(rng, rs, cfg.corpus)
                b = run_branch(KnowledgeBase(rs, db), ChaseConfig(notion.chase_kind, cfg.max_steps, RoundRobinSelector()))
                runs["total"] += 1
                runs["saturated"] += b.status is Status.SATURATED
                runs["within_product"] += b.steps <= product
                runs["within_counting"] += b.steps <= counting_bound(v.mfa_set, db, rs)
                worst_ratio = max(worst_ratio, b.steps / max(product, 1))
                if b.steps > product and first_excess is None:
                    first_excess = {
                        "notion": notion.value,
                        "rules": serialize_rules(rs),
                        "database": serialize_facts(db),
                        "product_bound": product,
                        "steps": b.steps,
                    }
    return {
        "config": asdict(cfg),
        "verdicts": dict(sorted(verdicts.items())),
        "runs": dict(runs),
        "worst_steps_over_product_bound": round(worst_ratio, 3),
        "first_run_exceeding_product_bound": first_excess,
        "seconds": round(time.perf_counter() - t0, 2),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=SurveyConfig.seed)
    p.add_argument("--rulesets", type=int, default=SurveyConfig.rulesets)
    p.add_argument("--databases", type=int, default=SurveyConfig.databases)
    p.add_argument("--json", help="also write the summary to this file")
    args = p.parse_args(argv)
    out = survey(SurveyConfig(seed=args.seed, rulesets=args.rulesets, databases=args.databases))
    text = json.dumps(out, indent=2, sort_keys=True)
    print(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


if __name__ == "__main__":
    main()
