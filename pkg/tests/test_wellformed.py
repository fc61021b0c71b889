import functools
import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import encode as oracle_encode, fold, words
from plusone import automata, languages
from plusone.errors import MalformedInput, NotIdempotent, NotWellFormed
from plusone.semigroup import transition_semigroup
from plusone.wellformed import (
    WfContext,
    WfLetter,
    beta_eval,
    canonical_wf,
    distinguished,
    emitted_letter,
    encode,
    enumerate_well_formed,
    expand,
    expand_letter,
    is_well_formed,
    parse_wf_word,
    preimage_dfa,
    representatives,
    show_wf_word,
    wf_alphabet,
    wf_language_dfa,
)

# In the contains-b context the element "1" (image of a) is index 0 and the
# element "0" (image of b) is index 1.
ONE, ZERO = 0, 1
first, mid, last, single = WfLetter.first, WfLetter.mid, WfLetter.last, WfLetter.single


@functools.cache
def _cb():
    # hypothesis tests cannot take function-scoped fixtures, so they share this
    _, alpha = transition_semigroup(languages.contains_factor("ab", "b"))
    return WfContext(alpha)


_CB_WORDS = enumerate_well_formed(_cb(), 3)


def test_alphabet_sizes(cb_ctx):
    assert len(wf_alphabet(cb_ctx)) == 2 + 4 + 4 + 8
    _, trivial = transition_semigroup(languages.nonempty("ab"))
    assert len(wf_alphabet(WfContext(trivial))) == 4


def test_parity_alphabet_has_one_idempotent(parity_ctx):
    # |S| + 2|S||E| + |S||E|^2 with |S| = 2, |E| = 1
    assert len(wf_alphabet(parity_ctx)) == 2 + 4 + 2


def test_non_idempotent_junction_rejected(parity_ctx):
    with pytest.raises(NotIdempotent):
        parity_ctx.validate(mid(0, 1, 1))
    assert parity_ctx.validate(mid(1, 0, 1)) == mid(1, 0, 1)


def test_idempotent_order_must_be_a_permutation(cb_ctx):
    with pytest.raises(MalformedInput):
        WfContext(cb_ctx.morphism, [0])
    assert WfContext(cb_ctx.morphism, [ZERO, ONE]).idempotents == (ZERO, ONE)


def test_beta_examples(cb_ctx):
    assert beta_eval(cb_ctx, single(ONE)) == ONE
    assert beta_eval(cb_ctx, mid(ONE, ZERO, ONE)) == ZERO
    assert beta_eval(cb_ctx, (first(ONE, ONE), last(ONE, ZERO))) == ZERO


def test_well_formed_examples():
    assert is_well_formed((single(ZERO),))
    assert is_well_formed((first(ONE, ONE), last(ONE, ZERO)))
    assert not is_well_formed((first(ONE, ONE), last(ZERO, ZERO)))
    assert not is_well_formed((mid(ONE, ZERO, ONE),))
    assert not is_well_formed(())
    assert not is_well_formed((single(ONE), single(ONE)))


def test_wf_language_examples(cb_ctx):
    K = wf_language_dfa(cb_ctx, {ZERO})
    assert K.accepts((single(ZERO).token,))
    assert not K.accepts((single(ONE).token,))
    assert automata.is_empty(wf_language_dfa(cb_ctx, set()))


@pytest.mark.parametrize("ctx_name", ["cb_ctx", "parity_ctx"])
def test_wf_language_matches_definition(ctx_name, request):
    ctx = request.getfixturevalue(ctx_name)
    for F in [{0}, {1}, {0, 1}]:
        K = wf_language_dfa(ctx, F)
        for n in range(1, 5):
            for word in itertools.product(ctx.letters, repeat=n):
                want = is_well_formed(word) and beta_eval(ctx, word) in F
                assert K.accepts(tuple(x.token for x in word)) == want


def test_distinguished_examples(cb_ctx, parity_ctx):
    assert distinguished(cb_ctx, "ab", 1) == ONE
    assert distinguished(cb_ctx, "ab", 2) == ONE
    assert distinguished(parity_ctx, "a", 1) == 1
    with pytest.raises(IndexError):
        distinguished(cb_ctx, "ab", 3)


def test_distinguished_can_be_absent():
    # {a} alone: t_a times the zero is the zero, never t_a again
    _, alpha = transition_semigroup(languages.finite("a", ["a"]))
    ctx = WfContext(alpha)
    assert distinguished(ctx, "aa", 1) is None
    assert distinguished(ctx, "aa", 2) is not None
    assert encode(ctx, "aa") == (single(alpha.image("aa")),)


def test_canonical_examples(cb_ctx):
    letters, positions, idems = canonical_wf(cb_ctx, "ab")
    assert letters == (first(ONE, ONE), last(ONE, ZERO))
    assert positions == [1, 2] and idems == [ONE]
    assert beta_eval(cb_ctx, letters) == ZERO == cb_ctx.image("ab")
    assert encode(cb_ctx, "b") == (single(ZERO),)
    with pytest.raises(NotWellFormed):
        encode(cb_ctx, "")


def test_emitted_letter(cb_ctx, parity_ctx):
    assert emitted_letter(cb_ctx, "a") == first(ONE, ONE)
    assert emitted_letter(cb_ctx, "ab") == mid(ONE, ZERO, ONE)
    # in the parity context every position is distinguished, so the last a
    # is a segment of its own between two copies of t_aa
    assert emitted_letter(parity_ctx, "aa") == mid(1, 0, 1)


def test_representatives(cb_ctx, parity_ctx):
    assert representatives(cb_ctx) == {ONE: ("a",), ZERO: ("b",)}
    assert representatives(parity_ctx) == {0: ("a",), 1: ("a", "a")}
    for ctx in (cb_ctx, parity_ctx):
        for s, w in representatives(ctx).items():
            assert ctx.image(w) == s


def test_expand_examples(cb_ctx):
    word = (first(ONE, ONE), last(ONE, ZERO))
    assert expand(cb_ctx, word, 2) == tuple("aaab")
    assert cb_ctx.image("aaab") == ZERO == beta_eval(cb_ctx, word)
    for i in range(1, 5):
        assert expand(cb_ctx, (single(ZERO),), i) == ("b",)
    assert expand_letter(cb_ctx, mid(ONE, ZERO, ONE), 2) == tuple("aabaa")
    with pytest.raises(NotWellFormed):
        expand(cb_ctx, (mid(ONE, ZERO, ONE),), 1)


def test_enumerate_counts(cb_ctx):
    # singles, then first-last chains, then first-mid-last chains
    assert len(enumerate_well_formed(cb_ctx, 1)) == 2
    assert len(enumerate_well_formed(cb_ctx, 2)) == 2 + 4 * 2
    assert len(enumerate_well_formed(cb_ctx, 3)) == 2 + 8 + 4 * 4 * 2
    assert all(is_well_formed(w) for w in enumerate_well_formed(cb_ctx, 4))


def test_word_text_round_trip(cb_ctx):
    word = (first(ONE, ONE), mid(ONE, ZERO, ZERO), last(ZERO, ONE))
    assert parse_wf_word(show_wf_word(word)) == word
    assert parse_wf_word("first:0:0 last:0:1") == (first(0, 0), last(0, 1))
    for bad in ["", "mid:0:1", "first:x:0", "edge:0"]:
        with pytest.raises(MalformedInput):
            parse_wf_word(bad)


def test_preimage_trivial_cases(cb_ctx):
    everything = wf_language_dfa(cb_ctx, range(cb_ctx.size))
    assert automata.equivalent(preimage_dfa(cb_ctx, everything), languages.nonempty("ab"))
    assert automata.is_empty(preimage_dfa(cb_ctx, wf_language_dfa(cb_ctx, set())))


def test_preimage_rejects_foreign_alphabet(cb_ctx):
    with pytest.raises(MalformedInput):
        preimage_dfa(cb_ctx, languages.nonempty("ab"))


@pytest.mark.parametrize("ctx_name", ["cb_ctx", "parity_ctx"])
def test_preimage_of_language_is_original(ctx_name, request):
    ctx = request.getfixturevalue(ctx_name)
    K = wf_language_dfa(ctx, ctx.morphism.accepting["L"])
    L = languages.contains_factor("ab", "b") if ctx_name == "cb_ctx" else languages.length_mod("a", 2, 0)
    assert automata.equivalent(preimage_dfa(ctx, K), L)


ab_words = st.lists(st.sampled_from("ab"), min_size=1, max_size=14).map(tuple)


@given(ab_words)
def test_encoding_agrees_with_oracle(w):
    ctx = _cb()
    mul = ctx.semigroup.mul.tolist()
    enc = encode(ctx, w)
    assert [(x.left, x.value, x.right) for x in enc] == oracle_encode(mul, ctx.morphism.letter_image, ctx.idempotents, w)
    assert is_well_formed(enc)
    assert beta_eval(ctx, enc) == fold(mul, ctx.morphism.letter_image, w)


@given(ab_words)
def test_pigeonhole(w):
    ctx = _cb()
    marks = [distinguished(ctx, w, x) is not None for x in range(1, len(w) + 1)]
    for i in range(len(w) - ctx.size):
        assert any(marks[i : i + ctx.size + 1])


@given(ab_words, ab_words)
def test_emitted_letter_is_local(prefix, core):
    ctx = _cb()
    core = (core * ctx.locality)[: ctx.locality]
    assert emitted_letter(ctx, prefix + core) == emitted_letter(ctx, core)
    assert distinguished(ctx, prefix + core, len(prefix + core)) == distinguished(ctx, core, len(core))


@given(st.integers(0, 41), st.integers(1, 5))
def test_expansion_evaluates_to_beta(index, i):
    ctx = _cb()
    word = _CB_WORDS[index % len(_CB_WORDS)]
    assert ctx.image(expand(ctx, word, i)) == beta_eval(ctx, word)


def test_parity_encoding_for_short_words(parity_ctx):
    mul = parity_ctx.semigroup.mul.tolist()
    for w in words("a", 10):
        want = oracle_encode(mul, parity_ctx.morphism.letter_image, parity_ctx.idempotents, w)
        assert [(x.left, x.value, x.right) for x in encode(parity_ctx, w)] == want


