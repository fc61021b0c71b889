"""Builders for small named languages used in tests, demos and the self-test."""

from __future__ import annotations

from .automata import (
    Dfa,
    Nfa,
    as_word,
    complement,
    determinize_minimize,
    intersect,
    upward_closure,
)


def nonempty(alphabet) -> Dfa:
    """A+."""
    alphabet = tuple(alphabet)
    return Dfa(alphabet, [[1] * len(alphabet), [1] * len(alphabet)], 0, {1})


def empty(alphabet) -> Dfa:
    alphabet = tuple(alphabet)
    return Dfa(alphabet, [[0] * len(alphabet)], 0, set())


def finite(alphabet, words) -> Dfa:
    """Minimal DFA of a finite set of words (a trie, then minimized)."""
    alphabet = tuple(alphabet)
    trie = {(): 0}
    trans = set()
    acc = set()
    for w in words:
        w = as_word(w)
        for i in range(len(w)):
            if w[: i + 1] not in trie:
                trie[w[: i + 1]] = len(trie)
            trans.add((trie[w[:i]], w[i], trie[w[: i + 1]]))
        acc.add(trie[w])
    return determinize_minimize(Nfa(alphabet, len(trie), {0}, acc, trans))


def contains_factor(alphabet, factor) -> Dfa:
    """Words having ``factor`` as a contiguous infix."""
    alphabet = tuple(alphabet)
    f = as_word(factor)
    m = len(f)
    trans = {(0, a, 0) for a in alphabet} | {(m, a, m) for a in alphabet}
    trans |= {(i, f[i], i + 1) for i in range(m)}
    return determinize_minimize(Nfa(alphabet, m + 1, {0}, {m}, trans))


def starts_with(alphabet, prefix) -> Dfa:
    alphabet = tuple(alphabet)
    p = as_word(prefix)
    m = len(p)
    trans = {(i, p[i], i + 1) for i in range(m)} | {(m, a, m) for a in alphabet}
    return determinize_minimize(Nfa(alphabet, m + 1, {0}, {m}, trans))


def length_mod(alphabet, modulus: int, residue: int, letter=None) -> Dfa:
    """Nonempty words whose length (or count of ``letter``) is ``residue`` mod ``modulus``.

    ``length_mod("a", 2, 0)`` is (aa)+ and ``length_mod("a", 2, 1)`` is a(aa)*.
    """
    alphabet = tuple(alphabet)
    # state 0 = empty word, states 1..modulus = count mod modulus (shifted)
    delta = []
    for q in range(modulus + 1):
        c = 0 if q == 0 else q - 1
        row = []
        for a in alphabet:
            step = 1 if (letter is None or a == letter) else 0
            row.append((c + step) % modulus + 1)
        delta.append(row)
    acc = {residue % modulus + 1}
    return determinize_minimize(Dfa(alphabet, delta, 0, acc))


def powers_mod(alphabet, letter: str, modulus: int, residue: int) -> Dfa:
    """Nonempty powers of one ``letter`` with exponent ``residue`` mod ``modulus``.

    Over ``{a, b}``, ``powers_mod("ab", "a", 2, 0)`` is (aa)+ with every word
    containing ``b`` rejected.
    """
    alphabet = tuple(alphabet)
    sink = modulus + 1
    delta = []
    for q in range(modulus + 1):
        c = 0 if q == 0 else q - 1
        delta.append([(c + 1) % modulus + 1 if a == letter else sink for a in alphabet])
    delta.append([sink] * len(alphabet))
    return determinize_minimize(Dfa(alphabet, delta, 0, {residue % modulus + 1}))


def without_epsilon(d: Dfa) -> Dfa:
    return determinize_minimize(intersect(d, nonempty(d.alphabet)))


def complement_plus(d: Dfa) -> Dfa:
    """Complement taken inside A+ (the empty word is never included)."""
    return without_epsilon(complement(d))


def upward(alphabet, words) -> Dfa:
    """The upward closure of a finite set of words."""
    return determinize_minimize(upward_closure(finite(alphabet, words)))
