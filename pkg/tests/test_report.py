import json

from helpers import F, T

from exrules import report
from exrules.chase import ChaseConfig, FixedSelector, run_branch
from exrules.homomorphisms import GroundTermMapping
from exrules.rulefmt import parse_rules
from exrules.termination import MfaNotion, analyze_termination
from exrules.triggers import ObsolescenceKind

RE = ObsolescenceKind.RESTRICTED


def test_saturated_branch_report(kb1):
    b = run_branch(kb1, ChaseConfig(RE, selector=FixedSelector(0)))
    text = report.emit_report(report.branch_json(b, RE))
    assert '"status":"saturated"' in text
    doc = json.loads(text)
    assert len(doc["nodes"]) == 2 and doc["nodes"][1]["added"] == ["S(b)"]


def test_verdict_report():
    v = analyze_termination(parse_rules("P(X,Y) -> S(Y) | P(Y,Z), P(Z,Y)"), MfaNotion.RMFA)
    text = report.emit_report(report.verdict_json(v))
    assert text.startswith('{"mfa_set_size":4,"notion":"rmfa"')
    assert json.loads(text)["verdict"] == "acyclic" and "witness" not in json.loads(text)


def test_empty_factset():
    assert report.emit_report(report.factset_json(frozenset())) == '{"facts":[],"schema":"chase-report/1"}'


def test_mapping_pairs_sorted_by_depth_then_text():
    h = GroundTermMapping({T("f[1,0,z](f[1,0,z](a))"): T("a"), T("f[1,0,z](b)"): T("b")})
    assert report.mapping_json(h) == [["f[1,0,z](b)", "b"], ["f[1,0,z](f[1,0,z](a))", "a"]]


def test_fact_lists_are_canonical():
    assert report.facts_json(F("S(b); P(b,a); P(a,b)")) == ["P(a,b)", "P(b,a)", "S(b)"]


def test_unicode_is_kept_verbatim():
    assert report.emit_report({"k": "ä"}) == '{"k":"ä"}'
