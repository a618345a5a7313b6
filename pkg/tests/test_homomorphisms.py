import random

import oracles
import pytest
from helpers import F, T
from hypothesis import given
from hypothesis import strategies as st

from exrules.generators import random_factset
from exrules.homomorphisms import (
    GroundSubstitution,
    GroundTermMapping,
    UnmappedVariable,
    apply_mapping,
    classify_mapping,
    enumerate_endomorphisms,
    find_homomorphism,
    is_homomorphism,
    is_strong_core,
    is_weak_core,
)
from exrules.syntax import Atom, terms_of
from exrules.terms import Const, Var

fb = T("f[1,1,z](b)")
KB1_LEAF = F("P(a,b); P(b,f[1,1,z](b)); P(f[1,1,z](b),b)")


def H(pairs):
    return GroundTermMapping({T(k): T(v) for k, v in pairs.items()})


class TestApplyMapping:
    def test_lookup(self):
        assert apply_mapping(H({"f[1,1,z](b)": "b"}), fb) == T("b")

    def test_identity_default(self):
        t = T("f[2,0,w](f[1,0,z](c),d)")
        assert apply_mapping(GroundTermMapping(), t) == t

    def test_recursion_into_arguments(self):
        h = H({"f[1,1,z](b)": "a"})
        assert apply_mapping(h, T("f[1,1,z](f[1,1,z](b))")) == T("f[1,1,z](a)")

    def test_constants_are_fixed(self):
        h = GroundTermMapping({Const("a"): Const("b")})
        assert h(Const("a")) == Const("a")


def test_ground_substitution_requires_total_domain():
    s = GroundSubstitution({"x": Const("a")})
    assert s.apply_atom(Atom("P", (Var("x"), Const("c")))) == Atom("P", (Const("a"), Const("c")))
    with pytest.raises(UnmappedVariable):
        s.apply_atom(Atom("P", (Var("y"),)))


class TestIsHomomorphism:
    def test_identity(self):
        assert is_homomorphism(GroundTermMapping(), F("P(a,b)"), F("P(a,b)"))

    def test_fold_onto_model(self):
        assert is_homomorphism(H({"f[1,1,z](b)": "b"}), KB1_LEAF, F("P(a,b); P(b,b)"))

    def test_constants_block(self):
        assert not is_homomorphism(GroundTermMapping(), F("P(a,b)"), F("P(b,a)"))


class TestFindHomomorphism:
    def test_kb1_leaf_into_model(self):
        h = find_homomorphism(KB1_LEAF, F("P(a,b); P(b,b)"))
        assert h is not None and h(fb) == T("b")

    def test_identity(self):
        h = find_homomorphism(F("P(a,b)"), F("P(a,b)"))
        assert h is not None and h.is_identity_on({T("a"), T("b")})

    def test_none(self):
        assert find_homomorphism(F("P(a,b)"), F("P(b,a)")) is None

    def test_empty_source(self):
        assert find_homomorphism(frozenset(), F("P(a,b)")) is not None

    def test_fixed_assignment_respected(self):
        A = F("P(a,f[1,0,z](a))")
        B = F("P(a,a); P(a,b)")
        h = find_homomorphism(A, B, {T("f[1,0,z](a)"): T("b")})
        assert h(T("f[1,0,z](a)")) == T("b")


class TestEndomorphisms:
    def test_constants_only(self):
        assert list(enumerate_endomorphisms(F("P(a,b)"))) == [GroundTermMapping()]

    def test_collapse_available(self):
        fa = T("f[1,0,z](a)")
        images = sorted(h(fa).text for h in enumerate_endomorphisms(F("P(a,f[1,0,z](a)); P(a,a)")))
        assert images == ["a", "f[1,0,z](a)"]

    def test_symmetric_pair(self):
        assert list(enumerate_endomorphisms(F("P(a,b); P(b,a)"))) == [GroundTermMapping()]


class TestClassify:
    def test_identity(self):
        A = F("P(a,b)")
        flags = classify_mapping(GroundTermMapping(), terms_of(A), A, A)
        assert flags.strong and flags.injective_on_domain and flags.surjective_onto_terms_of_B

    def test_not_injective(self):
        A = F("P(a,f[1,0,z](a)); P(a,a)")
        flags = classify_mapping(H({"f[1,0,z](a)": "a"}), {T("a"), T("f[1,0,z](a)")}, A, A)
        assert not flags.injective_on_domain

    def test_fold_is_not_strong(self):
        # P(a,f(b)) is not in the set but its image P(a,b) is; oracle agrees
        dom = {T("a"), T("b"), fb}
        h = H({"f[1,1,z](b)": "b"})
        assert oracles.strong_flag({fb: T("b")}, dom, KB1_LEAF, KB1_LEAF) is False
        assert classify_mapping(h, dom, KB1_LEAF, KB1_LEAF).strong is False


class TestCores:
    @pytest.mark.parametrize(
        "facts, expected",
        [("P(a,b); P(b,a)", True), ("P(a,f[1,0,z](a)); P(a,a)", False), ("", True), ("P(a,b); S(b)", True)],
    )
    def test_examples(self, facts, expected):
        A = F(facts)
        assert is_weak_core(A) is expected
        assert is_strong_core(A) is expected

    def test_kb1_leaf_is_a_core(self):
        assert is_strong_core(KB1_LEAF)


seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_search_matches_exhaustive_oracle(seed):
    rng = random.Random(seed)
    A = random_factset(rng, max_terms=5, max_facts=4)
    B = random_factset(rng, max_terms=5, max_facts=6)
    h = find_homomorphism(A, B)
    assert (h is not None) == oracles.exists_homomorphism(A, B)
    if h is not None:
        assert is_homomorphism(h, A, B)


@given(seeds)
def test_endomorphisms_match_oracle(seed):
    A = random_factset(random.Random(seed), max_terms=5, max_facts=5)
    dom = oracles.non_constants(A)
    mine = {tuple(h(t) for t in dom) for h in enumerate_endomorphisms(A)}
    ref = {tuple(a[t] for t in dom) for a in oracles.all_homomorphisms(A, A)}
    assert mine == ref


@given(seeds)
def test_composition(seed):
    rng = random.Random(seed)
    A, B, C = (random_factset(rng, max_terms=4, max_facts=4) for _ in range(3))
    h1, h2 = find_homomorphism(A, B), find_homomorphism(B, C)
    if h1 is None or h2 is None:
        return
    h = h2.compose(h1, terms_of(A))
    assert is_homomorphism(h, A, C)


@given(seeds)
def test_core_flags_match_oracle(seed):
    A = random_factset(random.Random(seed), max_terms=5, max_facts=5)
    assert (is_weak_core(A), is_strong_core(A)) == oracles.core_flags(A)


@given(seeds, st.sampled_from(["a", "b", "c", "zz"]))
def test_constants_fixed_by_every_mapping(seed, name):
    rng = random.Random(seed)
    A = random_factset(rng)
    pool = sorted(terms_of(A), key=lambda t: t.text) or [Const("a")]
    h = GroundTermMapping({t: rng.choice(pool) for t in pool if not isinstance(t, Const)})
    assert h(Const(name)) == Const(name)


@given(seeds)
def test_strong_flag_matches_oracle(seed):
    rng = random.Random(seed)
    A = random_factset(rng, max_terms=4, max_facts=5)
    B = random_factset(rng, max_terms=4, max_facts=5)
    dom = sorted(terms_of(A), key=lambda t: t.text)
    targets = sorted(terms_of(B), key=lambda t: t.text) or [Const("a")]
    assign = {t: rng.choice(targets) for t in dom if not isinstance(t, Const)}
    h = GroundTermMapping(assign)
    assert classify_mapping(h, set(dom), A, B).strong == oracles.strong_flag(assign, dom, A, B)
