"""Separation and membership for existential first-order fragments.

Over plain words, a language is definable by an existential formula using
only the order exactly when it is upward closed for the scattered subword
ordering, so the smallest such language containing ``L`` is its upward
closure.  Adding successor, first and last position is handled by moving to
well-formed words: ``L`` and ``L'`` are separable with successor iff their
well-formed counterparts are separable without it, and a separator over
well-formed words pulls back to one over ``A`` through the canonical
encoding.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .automata import (
    Dfa,
    complement,
    determinize,
    determinize_minimize,
    includes,
    intersect,
    is_empty,
    is_empty_with_witness,
    subword_nfa,
    upward_closure,
)
from .errors import AlphabetMismatch, BoundExceeded, EpsilonAccepted, IsSeparable, NotUpwardClosed
from .languages import complement_plus, upward
from .semigroup import product_recognizer
from .wellformed import WfContext, WfLetter, expand, preimage_dfa, wf_language_dfa


@dataclass(frozen=True)
class Reduction:
    """The shared context and the two languages of well-formed words."""

    ctx: WfContext
    wL: Dfa
    wLp: Dfa


@dataclass(frozen=True)
class Separable:
    separator: Dfa
    logic: str
    certificate: dict = field(default_factory=dict)
    wf_separator: Dfa | None = None

    is_separable = True


@dataclass(frozen=True)
class NotSeparable:
    """``witness`` lies in the closure of ``L`` and in ``L'``.

    For the successor logic the witness is a well-formed word and
    ``reduction`` holds what :func:`witness_pairs` needs to expand it.
    """

    witness: tuple
    logic: str
    L: Dfa
    Lp: Dfa
    reduction: Reduction | None = None

    is_separable = False


def _check_pair(L: Dfa, Lp: Dfa):
    if set(L.alphabet) != set(Lp.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {L.alphabet} vs {Lp.alphabet}")
    for d in (L, Lp):
        _check_plus(d)


def _check_plus(d: Dfa):
    if d.initial in d.accepting:
        raise EpsilonAccepted("languages must not contain the empty word")


def reduce(L: Dfa, Lp: Dfa) -> Reduction:
    _check_pair(L, Lp)
    _, alpha = product_recognizer(L, Lp)
    ctx = WfContext(alpha)
    return Reduction(ctx, wf_language_dfa(ctx, alpha.accepting["L"]), wf_language_dfa(ctx, alpha.accepting["Lp"]))


def sigma1_separates(L: Dfa, Lp: Dfa):
    """Separate with the upward closure of ``L``, the least candidate."""
    _check_pair(L, Lp)
    sep = determinize_minimize(upward_closure(L))
    witness = is_empty_with_witness(intersect(sep, Lp))
    if witness is None:
        cert = {"includes_L": includes(sep, L), "disjoint_Lp": True}
        return Separable(sep, "sigma1", cert)
    return NotSeparable(witness, "sigma1", L, Lp)


def sigma1_plus_separates(L: Dfa, Lp: Dfa):
    """Decide separability with order, successor, first and last position.

    A returned separator has been checked exactly: it contains ``L`` and
    misses ``L'``.
    """
    red = reduce(L, Lp)
    inner = sigma1_separates(red.wL, red.wLp)
    if not inner.is_separable:
        letters = tuple(WfLetter.parse(t) for t in inner.witness)
        return NotSeparable(letters, "sigma1plus", L, Lp, red)
    sep = preimage_dfa(red.ctx, inner.separator)
    cert = {"includes_L": includes(sep, L), "disjoint_Lp": is_empty(intersect(sep, Lp))}
    if not all(cert.values()):
        raise AssertionError(f"pulled-back separator failed its check: {cert}")
    return Separable(sep, "sigma1plus", cert, inner.separator)


def membership_sigma1(L: Dfa) -> bool:
    _check_plus(L)
    return includes(L, upward_closure(L))


def membership_sigma1_plus(L: Dfa) -> bool:
    _check_plus(L)
    return sigma1_plus_separates(L, complement_plus(L)).is_separable


def transfer_membership(L: Dfa, base_decider: Callable[[Dfa], bool]) -> bool:
    """Run ``base_decider`` on the well-formed counterpart of ``L``.

    The answer is meaningful only if the base fragment can define
    well-formedness itself; that is the caller's responsibility.
    """
    _check_plus(L)
    return base_decider(reduce(L, complement_plus(L)).wL)


def minimal_patterns(U: Dfa) -> list:
    """The subword-minimal words of an upward-closed language, shortest first."""
    if not membership_sigma1(U):
        raise NotUpwardClosed("the language is not closed under inserting letters")
    kept: list = []
    rest = U
    while True:
        w = is_empty_with_witness(rest)
        if w is None:
            return kept
        kept.append(w)
        rest = intersect(rest, complement(upward(U.alphabet, [w])))


def witness_pairs(verdict, k: int) -> tuple:
    """Words ``u`` in ``L`` and ``u'`` in ``L'`` that rank-``k`` formulas cannot tell apart.

    For the successor logic both are expansions, with exponent
    ``2^(k+1)``, of a well-formed word ``w'`` in the closure of the first
    language and in the second, and of a well-formed subword ``w`` of ``w'``
    in the first language.
    """
    if verdict.is_separable:
        raise IsSeparable("a separator exists, so there are no witnesses")
    red = verdict.reduction
    if red is None:
        sub = is_empty_with_witness(intersect(verdict.L, determinize(subword_nfa(verdict.witness, verdict.L.alphabet))))
        return sub, verdict.witness
    wprime = verdict.witness
    tokens = tuple(letter.token for letter in wprime)
    below = determinize(subword_nfa(tokens, red.wL.alphabet))
    sub = is_empty_with_witness(intersect(red.wL, below))
    w = tuple(WfLetter.parse(t) for t in sub)
    i = 2 ** (k + 1)
    return expand(red.ctx, w, i), expand(red.ctx, wprime, i)


def _profile_step(profile: frozenset, a, k: int) -> frozenset:
    new = {(a,)} | {p + (a,) for p in profile if len(p) < k}
    return profile | new


def reachable_profiles(L: Dfa, k: int) -> set:
    """Subword profiles (length at most ``k``) of the nonempty words of ``L``."""
    start = (frozenset(), L.initial)
    seen = {start}
    queue = deque([start])
    out = set()
    while queue:
        prof, q = queue.popleft()
        for i, a in enumerate(L.alphabet):
            nxt = (_profile_step(prof, a, k), L.delta[q][i])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
                if nxt[1] in L.accepting:
                    out.add(nxt[0])
    return out


def bsigma1_profile_check(L: Dfa, Lp: Dfa, k: int, bound: int = 3) -> bool:
    """Is some subword profile of length ``k`` shared by a word of ``L`` and one of ``L'``?"""
    if k > bound:
        raise BoundExceeded(f"profile length {k} exceeds the bound {bound}")
    _check_pair(L, Lp)
    return bool(reachable_profiles(L, k) & reachable_profiles(Lp, k))
