"""JSON reports (schema ``chase-report/1``).

Keys are sorted and separators compact, so identical inputs give
byte-identical output. Facts and terms appear in their canonical text form;
fact lists are in canonical order.
"""

from __future__ import annotations

import json

from .chase import ChaseBranch, ChaseTree, Status, TreeNode, tree_results
from .rulefmt import render_atom
from .syntax import fact_key
from .terms import term_key

SCHEMA = "chase-report/1"


def facts_json(facts) -> list:
    return [render_atom(f) for f in sorted(facts, key=fact_key)]


def trigger_json(t) -> dict:
    return {"rule": t.rule.id, "subs": {v: t.subs[v].text for v in sorted(t.subs)}}


def _origin_json(origin):
    if origin is None:
        return None
    t, d = origin
    return {"disjunct": d, "trigger": trigger_json(t)}


def branch_json(b: ChaseBranch, variant) -> dict:
    nodes = []
    prev = frozenset()
    for n in b.nodes:
        nodes.append({"added": facts_json(n.facts - prev), "facts": facts_json(n.facts), "origin": _origin_json(n.origin)})
        prev = n.facts
    return {
        "mode": "branch",
        "nodes": nodes,
        "result": facts_json(b.result),
        "schema": SCHEMA,
        "status": str(b.status),
        "variant": str(variant),
    }


def _tree_node_json(n: TreeNode) -> dict:
    out = {"children": [_tree_node_json(c) for c in n.children], "facts": facts_json(n.facts), "origin": _origin_json(n.origin)}
    if n.status is not None:
        out["status"] = str(n.status)
    return out


def tree_json(t: ChaseTree, variant) -> dict:
    return {
        "mode": "tree",
        "results": [{"facts": facts_json(F), "status": str(s)} for F, s in tree_results(t)],
        "root": _tree_node_json(t.root),
        "schema": SCHEMA,
        "variant": str(variant),
    }


def verdict_json(v) -> dict:
    out = {
        "notion": str(v.notion),
        "rounds": v.rounds,
        "schema": SCHEMA,
        "verdict": "acyclic" if v.acyclic else "not_in_notion",
    }
    if v.witness is not None:
        out["witness"] = v.witness.text
    if v.mfa_set is not None:
        out["mfa_set_size"] = len(v.mfa_set)
    return out


def mapping_json(h) -> list:
    return [[k.text, v.text] for k, v in sorted(h.items(), key=lambda kv: term_key(kv[0]))]


def witnesses_json(ws, status: Status | None = None) -> dict:
    out = {
        "alt_matches": [
            {
                "disjunct": w.disjunct_index,
                "dropped_term": w.dropped_term.text,
                "mapping": mapping_json(w.h_alt),
                "trigger": trigger_json(w.trigger),
            }
            for w in ws
        ],
        "schema": SCHEMA,
    }
    if status is not None:
        out["status"] = str(status)
    return out


def factset_json(facts) -> dict:
    return {"facts": facts_json(facts), "schema": SCHEMA}


def emit_report(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
