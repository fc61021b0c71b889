"""Ehrenfeucht-Fraissé games on finite words, solved by memoized search.

Two game families are supported:

* the two-pebble game, where each word carries one pebble that Spoiler
  moves around for ``k`` rounds (two-variable logic);
* the alternation game, where pebbles are placed and never moved, Spoiler
  starts in the first word and may change words at most ``n - 1`` times
  (formulas with ``n`` quantifier blocks, existential first).

The ``enriched`` flag adds the successor relation to what Duplicator must
preserve, and for the alternation game also the first and last positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .automata import as_word
from .errors import BoundExceeded, MalformedInput

MAX_K = 4
MAX_LEN = 16

KINDS = ("fo2", "fo2p", "sigma", "sigmap")


def _check(u, v, k, max_len, max_k):
    u, v = as_word(u), as_word(v)
    if not u or not v:
        raise MalformedInput("games are played on nonempty words")
    if k < 0:
        raise MalformedInput("the number of rounds is nonnegative")
    if k > max_k:
        raise BoundExceeded(f"rank {k} exceeds the bound {max_k}")
    if max(len(u), len(v)) > max_len:
        raise BoundExceeded(f"word length {max(len(u), len(v))} exceeds the bound {max_len}")
    return u, v


def _relation(x, y, enriched):
    d = y - x
    sign = (d > 0) - (d < 0)
    if enriched and abs(d) == 1:
        return sign, True
    return sign, False


def fo2_equiv(u, v, k: int, enriched: bool = False, *, max_len: int = MAX_LEN, max_k: int = MAX_K) -> bool:
    """Does Duplicator survive ``k`` rounds of the two-pebble game on ``u``, ``v``?

    Pebbles start on the first positions, so differing first letters lose
    immediately.  In each round Spoiler moves the pebble of one word from
    ``x`` to some ``y`` (possibly ``y = x``); Duplicator moves the other
    pebble from ``x'`` to ``y'`` with the same letter and the same relation
    to the old position among ``<``, ``>``, ``=`` (and ``+1`` in either
    direction when ``enriched``).
    """
    u, v = _check(u, v, k, max_len, max_k)
    if u[0] != v[0]:
        return False
    words = (u, v)
    cache: dict = {}

    def answers(side, x, x2, y):
        # Duplicator replies in the other word; order by distance to the mirrored move
        w, other = words[side], words[1 - side]
        rel = _relation(x, y, enriched)
        target = x2 + (y - x)
        cands = [y2 for y2 in range(len(other)) if other[y2] == w[y] and _relation(x2, y2, enriched) == rel]
        cands.sort(key=lambda y2: abs(y2 - target))
        return cands

    def dup_wins(x, x2, r):
        if r == 0:
            return True
        key = (x, x2, r)
        if key in cache:
            return cache[key]
        result = True
        for side in (0, 1):
            here, there = (x, x2) if side == 0 else (x2, x)
            for y in range(len(words[side])):
                if y == here:
                    continue  # answered by y' = x', a dominated position
                ok = False
                for y2 in answers(side, here, there, y):
                    nxt = (y, y2) if side == 0 else (y2, y)
                    if dup_wins(nxt[0], nxt[1], r - 1):
                        ok = True
                        break
                if not ok:
                    result = False
                    break
            if not result:
                break
        cache[key] = result
        return result

    return dup_wins(0, 0, k)


def sigma_preorder(
    u, v, n: int, k: int, enriched: bool = False, *, max_len: int = MAX_LEN, max_k: int = MAX_K
) -> bool:
    """Does Duplicator win the ``k``-round alternation game with ``u`` active first?

    Spoiler places a pebble in the active word, Duplicator answers in the
    other one; Spoiler may change the active word only while fewer than
    ``n - 1`` changes were made.  All pebble pairs must agree on letters
    and on ``<`` (plus successor, first and last position when
    ``enriched``).
    """
    if n < 1:
        raise MalformedInput("the alternation bound is at least 1")
    u, v = _check(u, v, k, max_len, max_k)
    words = (u, v)
    cache: dict = {}

    def replies(pairs, side, y):
        w, other = words[side], words[1 - side]
        # pairs are (u-pos, v-pos); view them from the active side
        mine = sorted((p[side], p[1 - side]) for p in pairs)
        lo, hi = None, None
        for a, b in mine:
            if a < y:
                lo = (a, b)
            elif a > y and hi is None:
                hi = (a, b)
        start = lo[1] + 1 if lo else 0
        stop = hi[1] if hi else len(other)
        out = []
        for y2 in range(start, stop):
            if other[y2] != w[y]:
                continue
            if enriched:
                if (y == 0) != (y2 == 0) or (y == len(w) - 1) != (y2 == len(other) - 1):
                    continue
                if lo and (y == lo[0] + 1) != (y2 == lo[1] + 1):
                    continue
                if hi and (hi[0] == y + 1) != (hi[1] == y2 + 1):
                    continue
            out.append(y2)
        dl = y - lo[0] if lo else y + 1
        dr = hi[0] - y if hi else len(w) - y
        base_l = lo[1] if lo else -1
        base_r = hi[1] if hi else len(other)
        out.sort(key=lambda y2: min(abs((y2 - base_l) - dl), abs((base_r - y2) - dr)))
        return out

    def dup_wins(pairs, c, active, r):
        if r == 0:
            return True
        key = (pairs, c, active, r)
        if key in cache:
            return cache[key]
        result = True
        sides = [active]
        if c < n - 1:
            sides.append(1 - active)
        for side in sides:
            c2 = c if side == active else c + 1
            taken = {p[side] for p in pairs}
            for y in range(len(words[side])):
                if y in taken:
                    continue  # replying with the partner pebble keeps the position
                ok = False
                for y2 in replies(pairs, side, y):
                    new = (y, y2) if side == 0 else (y2, y)
                    if dup_wins(tuple(sorted(pairs + (new,))), c2, side, r - 1):
                        ok = True
                        break
                if not ok:
                    result = False
                    break
            if not result:
                break
        cache[key] = result
        return result

    return dup_wins((), 0, 0, k)


def bsigma_equiv(u, v, n: int, k: int, enriched: bool = False, **bounds) -> bool:
    """Both preorders: ``u`` below ``v`` and ``v`` below ``u``."""
    return sigma_preorder(u, v, n, k, enriched, **bounds) and sigma_preorder(v, u, n, k, enriched, **bounds)


def subwords_upto(w, k: int) -> set:
    """All scattered subwords of ``w`` of length 1..k."""
    w = as_word(w)
    out = set()
    for length in range(1, min(k, len(w)) + 1):
        for idx in itertools.combinations(range(len(w)), length):
            out.add(tuple(w[i] for i in idx))
    return out


def subword_profile_preorder(u, v, k: int, *, max_k: int = MAX_K) -> bool:
    """Is every subword of ``u`` of length at most ``k`` also a subword of ``v``?"""
    if k > max_k:
        raise BoundExceeded(f"rank {k} exceeds the bound {max_k}")
    return subwords_upto(u, k) <= subwords_upto(v, k)


@dataclass(frozen=True)
class GameQuery:
    """A game instance; ``n`` is only used by the alternation games."""

    kind: str
    k: int
    u: tuple
    v: tuple
    n: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MalformedInput(f"unknown game {self.kind!r}, expected one of {KINDS}")
        object.__setattr__(self, "u", as_word(self.u))
        object.__setattr__(self, "v", as_word(self.v))

    def solve(self, **bounds) -> bool:
        enriched = self.kind.endswith("p")
        if self.kind.startswith("fo2"):
            return fo2_equiv(self.u, self.v, self.k, enriched, **bounds)
        return sigma_preorder(self.u, self.v, self.n, self.k, enriched, **bounds)
