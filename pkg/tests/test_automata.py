import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import embeds, has_factor, words
from plusone import automata, languages
from plusone.automata import (
    Dfa,
    complement,
    determinize_minimize,
    dfa_from_text,
    dfa_to_text,
    enumerate_accepted,
    includes,
    inclusion_counterexample,
    intersect,
    is_empty_with_witness,
    union,
    upward_closure,
)
from plusone.errors import AlphabetMismatch, MalformedInput, UnknownSymbol

TWO_STATE = """\
alphabet a
states 2
initial 0
accepting 1
trans 0 a 1
trans 1 a 0
"""

even_a = languages.length_mod("a", 2, 0)


def test_round_trip_is_identity():
    assert dfa_to_text(dfa_from_text(TWO_STATE)) == TWO_STATE


def test_missing_transition_rejected():
    with pytest.raises(MalformedInput):
        dfa_from_text(TWO_STATE.replace("trans 1 a 0\n", ""))


@pytest.mark.parametrize("drop", ["alphabet", "states", "initial", "accepting"])
def test_missing_section_rejected(drop):
    text = "\n".join(line for line in TWO_STATE.splitlines() if not line.startswith(drop))
    with pytest.raises(MalformedInput):
        dfa_from_text(text)


def test_unknown_symbol_in_file_rejected():
    with pytest.raises(MalformedInput):
        dfa_from_text(TWO_STATE + "trans 0 b 0\n")


def test_even_a_serialization():
    text = dfa_to_text(even_a)
    assert "states 3" in text
    assert "accepting 2" in text
    for w, want in [("a", False), ("aa", True), ("aaa", False), ("aaaa", True)]:
        assert even_a.accepts(w) == want


def test_complement_of_empty_accepts_ab():
    assert complement(languages.empty("ab")).accepts("ab")


def test_complement_involution(contains_aa):
    assert automata.equivalent(complement(complement(contains_aa)), contains_aa)


def test_complement_of_contains_aa_matches_scan(contains_aa):
    c = complement(contains_aa)
    assert not c.accepts("aab")
    for w in words("ab", 5, 0):
        assert c.accepts(w) == (not has_factor(w, "aa"))


def test_intersect_contains_aa_even_length(contains_aa):
    both = intersect(contains_aa, languages.length_mod("ab", 2, 0))
    assert both.accepts("aa") and not both.accepts("a")
    for w in words("ab", 6, 0):
        assert both.accepts(w) == (has_factor(w, "aa") and len(w) % 2 == 0 and len(w) > 0)


def test_intersect_with_complement_is_empty(contains_aa):
    assert is_empty_with_witness(intersect(contains_aa, complement(contains_aa))) is None


def test_union_with_empty(contains_aa):
    assert automata.equivalent(union(languages.empty("ab"), contains_aa), contains_aa)


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        intersect(languages.nonempty("a"), languages.nonempty("ab"))
    with pytest.raises(AlphabetMismatch):
        includes(languages.nonempty("a"), languages.nonempty("ab"))


def test_witnesses():
    assert is_empty_with_witness(languages.empty("ab")) is None
    assert is_empty_with_witness(even_a) == ("a", "a")
    assert is_empty_with_witness(upward_closure(languages.finite("ab", ["ab"]))) == ("a", "b")


def test_includes_examples(contains_aa):
    assert includes(contains_aa, contains_aa)
    up = upward_closure(contains_aa)
    assert includes(up, contains_aa)
    aa_plus = languages.powers_mod("ab", "a", 2, 0)
    assert not includes(aa_plus, contains_aa)
    # "aab" is a counterexample too, but "aaa" comes first in shortlex order
    assert inclusion_counterexample(aa_plus, contains_aa) == ("a", "a", "a")
    assert not aa_plus.accepts("aab") and contains_aa.accepts("aab")


def test_accepts_and_enumerate(contains_aa):
    assert contains_aa.accepts("baab")
    for d in (contains_aa, even_a, languages.nonempty("ab")):
        assert d.accepts("") == (d.initial in d.accepting)
    assert enumerate_accepted(even_a, 4) == [("a", "a"), ("a", "a", "a", "a")]
    with pytest.raises(UnknownSymbol):
        contains_aa.accepts("abc")


def test_minimize_examples():
    m = determinize_minimize(even_a)
    assert m.n_states == even_a.n_states
    padded = Dfa(("a",), [[1], [2], [1], [3]], 0, {2, 3})  # state 3 unreachable
    assert determinize_minimize(padded).n_states == 3
    up = determinize_minimize(upward_closure(languages.finite("ab", ["ab"])))
    assert up.n_states == 3


def test_upward_closure_examples():
    assert automata.is_empty(upward_closure(languages.empty("ab")))
    up = upward_closure(languages.finite("ab", ["ab"]))
    assert up.accepts("aabb") and not up.accepts("ba")
    twice = upward_closure(up)
    assert automata.equivalent(determinize_minimize(twice), determinize_minimize(up))


SAMPLES = {
    "contains-aa": languages.contains_factor("ab", "aa"),
    "starts-b": languages.starts_with("ab", "b"),
    "odd": languages.length_mod("ab", 2, 1),
    "finite": languages.finite("ab", ["ab", "bba"]),
}

word8 = st.lists(st.sampled_from("ab"), max_size=8).map(tuple)


@given(st.sampled_from(sorted(SAMPLES)), st.sampled_from(sorted(SAMPLES)), word8)
def test_boolean_operations_pointwise(x, y, w):
    X, Y = SAMPLES[x], SAMPLES[y]
    assert complement(X).accepts(w) == (not X.accepts(w))
    assert intersect(X, Y).accepts(w) == (X.accepts(w) and Y.accepts(w))
    assert union(X, Y).accepts(w) == (X.accepts(w) or Y.accepts(w))


@settings(max_examples=60)
@given(st.sampled_from(sorted(SAMPLES)), word8)
def test_upward_closure_matches_embedding(name, w):
    L = SAMPLES[name]
    accepted = enumerate_accepted(L, 8)
    assert upward_closure(L).accepts(w) == any(embeds(v, w) for v in accepted)


@pytest.mark.parametrize("name", sorted(SAMPLES))
def test_minimal_and_equivalent(name):
    n = upward_closure(SAMPLES[name])
    m = determinize_minimize(n)
    for w in words("ab", 8, 0):
        assert m.accepts(w) == n.accepts(w)
    for p, q in itertools.combinations(range(m.n_states), 2):
        dp = Dfa(m.alphabet, m.delta, p, m.accepting)
        dq = Dfa(m.alphabet, m.delta, q, m.accepting)
        assert not automata.equivalent(dp, dq)


@pytest.mark.parametrize("x,y", list(itertools.permutations(sorted(SAMPLES), 2)))
def test_includes_matches_bounded_enumeration(x, y):
    X, Y = SAMPLES[x], SAMPLES[y]
    bound = X.n_states * Y.n_states
    brute = all(X.accepts(w) or not Y.accepts(w) for w in words("ab", bound, 0))
    assert includes(X, Y) == brute
