"""Well-formed words over the extended alphabet of a recognizing morphism.

Given a surjective morphism ``alpha: A+ -> S``, the extended alphabet has
four kinds of letters, all stored as :class:`WfLetter` triples
``(left, value, right)`` where a missing side is ``None``:

=========  ==================  ===================
kind       triple              value under beta
=========  ==================  ===================
single     (None, s, None)     s
first      (None, s, e)        s e
mid        (e, s, f)           e s f
last       (e, s, None)        e s
=========  ==================  ===================

``e`` and ``f`` are always idempotents.  A word over these letters is
well-formed when it is a lone single letter, or a first letter followed by
mids and closed by a last letter, with matching idempotents at every
junction.

Every word ``w`` over ``A`` has a canonical well-formed encoding
(:func:`canonical_wf`) whose image under beta is ``alpha(w)``, and every
well-formed word expands back to words over ``A`` (:func:`expand`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .automata import Dfa, as_word, minimize
from .errors import MalformedInput, NotIdempotent, NotWellFormed
from .semigroup import FiniteSemigroup, RecognizingMorphism


@dataclass(frozen=True, order=True)
class WfLetter:
    left: int | None
    value: int
    right: int | None

    @classmethod
    def single(cls, s):
        return cls(None, s, None)

    @classmethod
    def first(cls, s, e):
        return cls(None, s, e)

    @classmethod
    def mid(cls, e, s, f):
        return cls(e, s, f)

    @classmethod
    def last(cls, e, s):
        return cls(e, s, None)

    @property
    def kind(self) -> str:
        if self.left is None:
            return "single" if self.right is None else "first"
        return "last" if self.right is None else "mid"

    @property
    def token(self) -> str:
        kind = self.kind
        if kind == "single":
            return f"single:{self.value}"
        if kind == "first":
            return f"first:{self.value}:{self.right}"
        if kind == "mid":
            return f"mid:{self.left}:{self.value}:{self.right}"
        return f"last:{self.left}:{self.value}"

    @classmethod
    def parse(cls, token: str) -> "WfLetter":
        kind, *fields = token.strip().split(":")
        try:
            nums = [int(x) for x in fields]
        except ValueError:
            raise MalformedInput(f"bad letter token {token!r}") from None
        shapes = {"single": 1, "first": 2, "mid": 3, "last": 2}
        if shapes.get(kind) != len(nums):
            raise MalformedInput(f"bad letter token {token!r}")
        if kind == "single":
            return cls.single(*nums)
        if kind == "first":
            return cls.first(*nums)
        if kind == "mid":
            return cls.mid(*nums)
        return cls.last(*nums)

    def __str__(self):
        return self.token


def parse_wf_word(text: str) -> tuple:
    """Parse a comma- or whitespace-separated list of letter tokens."""
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts:
        raise MalformedInput("empty well-formed word")
    return tuple(WfLetter.parse(p) for p in parts)


def show_wf_word(word: Sequence[WfLetter]) -> str:
    return ",".join(letter.token for letter in word)


class WfContext:
    """A recognizing morphism plus the fixed choices the encoding depends on.

    ``idempotents`` lists E(S) in the order used to break ties between
    candidate idempotents; by default this is the semigroup's element order.
    """

    def __init__(self, morphism: RecognizingMorphism, idempotent_order: Sequence[int] | None = None):
        self.morphism = morphism
        self.semigroup: FiniteSemigroup = morphism.semigroup
        E = self.semigroup.idempotents
        if idempotent_order is None:
            order = tuple(E)
        else:
            order = tuple(idempotent_order)
            if sorted(order) != sorted(E):
                raise MalformedInput(f"idempotent order {order} is not a permutation of E(S) = {E}")
        self.idempotents = order
        self.size = self.semigroup.size
        self.window = self.size
        self.locality = 2 * self.size

    @classmethod
    def from_morphism(cls, morphism, idempotent_order=None) -> "WfContext":
        return cls(morphism, idempotent_order)

    @property
    def alphabet(self) -> tuple:
        return self.morphism.alphabet

    def __repr__(self):
        return f"<WfContext |S|={self.size} E={self.idempotents} A={self.alphabet}>"

    def mul(self, s, t):
        """Product in S^1 with ``None`` as the unit."""
        if s is None:
            return t
        if t is None:
            return s
        return int(self.semigroup.mul[s, t])

    def image(self, word) -> int:
        return self.morphism.image(word)

    def validate(self, letter: WfLetter) -> WfLetter:
        n = self.size
        if not 0 <= letter.value < n:
            raise MalformedInput(f"element {letter.value} out of range in {letter.token}")
        for side in (letter.left, letter.right):
            if side is not None and side not in self.idempotents:
                raise NotIdempotent(f"{side} is not idempotent (in {letter.token})")
        return letter

    @cached_property
    def representatives(self) -> dict:
        return {s: tuple(w) for s, w in enumerate(self.morphism.witnesses)}

    @cached_property
    def letters(self) -> tuple:
        S, E = range(self.size), self.idempotents
        out = [WfLetter.single(s) for s in S]
        out += [WfLetter.first(s, e) for s in S for e in E]
        out += [WfLetter.mid(e, s, f) for e in E for s in S for f in E]
        out += [WfLetter.last(e, s) for e in E for s in S]
        return tuple(out)

    @cached_property
    def tokens(self) -> tuple:
        return tuple(letter.token for letter in self.letters)


def wf_alphabet(ctx: WfContext) -> tuple:
    """All letters of the extended alphabet, singles first, then firsts, mids, lasts."""
    return ctx.letters


def beta_eval(ctx: WfContext, x) -> int:
    """beta of a letter, or of a nonempty word of letters."""
    if isinstance(x, WfLetter):
        return ctx.mul(ctx.mul(x.left, x.value), x.right)
    word = tuple(x)
    if not word:
        raise NotWellFormed("beta is only defined on nonempty words")
    acc = None
    for letter in word:
        acc = ctx.mul(acc, beta_eval(ctx, letter))
    return acc


def is_well_formed(word: Sequence[WfLetter]) -> bool:
    word = tuple(word)
    if not word:
        return False
    if len(word) == 1:
        return word[0].kind == "single"
    if word[0].kind != "first" or word[-1].kind != "last":
        return False
    if any(letter.kind != "mid" for letter in word[1:-1]):
        return False
    return all(a.right == b.left for a, b in zip(word, word[1:]))


def wf_language_dfa(ctx: WfContext, accepting: Iterable[int]) -> Dfa:
    """Minimal DFA over the letter tokens for well-formed words with beta in ``accepting``."""
    accepting = frozenset(accepting)
    n = ctx.size
    E = ctx.idempotents
    START, DEAD = 0, 1
    done = {m: 2 + m for m in range(n)}
    open_ = {(e, m): 2 + n + i * n + m for i, e in enumerate(E) for m in range(n)}
    n_states = 2 + n + len(E) * n
    delta = [[DEAD] * len(ctx.letters) for _ in range(n_states)]
    for j, letter in enumerate(ctx.letters):
        kind = letter.kind
        if kind == "single":
            delta[START][j] = done[letter.value]
        elif kind == "first":
            delta[START][j] = open_[(letter.right, beta_eval(ctx, letter))]
        for (e, m), q in open_.items():
            if letter.left != e:
                continue
            if kind == "mid":
                delta[q][j] = open_[(letter.right, ctx.mul(m, beta_eval(ctx, letter)))]
            elif kind == "last":
                delta[q][j] = done[ctx.mul(m, beta_eval(ctx, letter))]
    acc = {done[m] for m in accepting}
    return minimize(Dfa(ctx.tokens, delta, START, acc))


def _window_image(ctx: WfContext, w: tuple, x: int) -> int:
    return ctx.image(w[max(0, x - ctx.window) : x])


def _absorbing_idempotent(ctx: WfContext, s: int):
    for e in ctx.idempotents:
        if ctx.mul(s, e) == s:
            return e
    return None


def distinguished(ctx: WfContext, w, x: int):
    """Least idempotent ``e`` with ``alpha(u_x) e = alpha(u_x)``, or ``None``.

    ``x`` is 1-based and ``u_x`` is the window of the last ``|S|`` letters
    ending at ``x``.  The rightmost position gets no special treatment here.
    """
    w = as_word(w)
    if not 1 <= x <= len(w):
        raise IndexError(f"position {x} outside 1..{len(w)}")
    return _absorbing_idempotent(ctx, _window_image(ctx, w, x))


def canonical_wf(ctx: WfContext, w) -> tuple:
    """The canonical well-formed word of ``w``.

    Returns ``(letters, positions, idempotents)``: the encoding itself, the
    1-based distinguished positions (the rightmost one included), and the
    idempotents chosen for every distinguished position except the last.
    """
    w = as_word(w)
    if not w:
        raise NotWellFormed("the empty word has no encoding")
    m = len(w)
    positions, idems = [], []
    for x in range(1, m):
        e = distinguished(ctx, w, x)
        if e is not None:
            positions.append(x)
            idems.append(e)
    positions.append(m)
    if not idems:
        return (WfLetter.single(ctx.image(w)),), positions, idems
    letters = [WfLetter.first(ctx.image(w[: positions[0]]), idems[0])]
    for i in range(1, len(idems)):
        seg = w[positions[i - 1] : positions[i]]
        letters.append(WfLetter.mid(idems[i - 1], ctx.image(seg), idems[i]))
    letters.append(WfLetter.last(idems[-1], ctx.image(w[positions[-2] :])))
    return tuple(letters), positions, idems


def encode(ctx: WfContext, w) -> tuple:
    """Just the letters of :func:`canonical_wf`."""
    return canonical_wf(ctx, w)[0]


def emitted_letter(ctx: WfContext, w):
    """The letter ending at the last position of ``w`` if it were not rightmost.

    When the last position of ``w`` is distinguished by its own window, the
    encoding of any proper extension of ``w`` emits a first or mid letter
    there, and that letter only depends on ``w``.  Returns ``None`` when the
    position is not distinguished.
    """
    w = as_word(w)
    e = distinguished(ctx, w, len(w))
    if e is None:
        return None
    _, positions, idems = canonical_wf(ctx, w)
    if not idems:
        return WfLetter.first(ctx.image(w), e)
    return WfLetter.mid(idems[-1], ctx.image(w[positions[-2] :]), e)


def representatives(ctx: WfContext) -> dict:
    """Shortest, then lexicographically least, word for each element."""
    return dict(ctx.representatives)


def expand(ctx: WfContext, word: Sequence[WfLetter], i: int) -> tuple:
    """The word over ``A`` obtained by repeating every junction idempotent ``i`` times."""
    word = tuple(word)
    if not is_well_formed(word):
        raise NotWellFormed(f"not well-formed: {show_wf_word(word)}")
    if i < 1:
        raise ValueError("expansion exponent must be positive")
    reps = ctx.representatives
    out: list = []
    for letter in word:
        ctx.validate(letter)
        if letter.left is not None:
            out.extend(reps[letter.left] * i)
        out.extend(reps[letter.value])
    return tuple(out)


def expand_letter(ctx: WfContext, letter: WfLetter, i: int) -> tuple:
    """``rep(e)^i rep(s) rep(f)^i`` for a single letter, missing sides omitted."""
    ctx.validate(letter)
    reps = ctx.representatives
    out: list = []
    if letter.left is not None:
        out.extend(reps[letter.left] * i)
    out.extend(reps[letter.value])
    if letter.right is not None:
        out.extend(reps[letter.right] * i)
    return tuple(out)


def enumerate_well_formed(ctx: WfContext, max_letters: int) -> list:
    """Every well-formed word of at most ``max_letters`` letters."""
    out = [(letter,) for letter in ctx.letters if letter.kind == "single"]
    by_left: dict = {}
    for letter in ctx.letters:
        if letter.kind in ("mid", "last"):
            by_left.setdefault(letter.left, []).append(letter)
    partial = [(letter,) for letter in ctx.letters if letter.kind == "first"]
    for _ in range(2, max_letters + 1):
        nxt = []
        for p in partial:
            for letter in by_left.get(p[-1].right, ()):
                if letter.kind == "last":
                    out.append(p + (letter,))
                else:
                    nxt.append(p + (letter,))
        partial = nxt
    return out


def preimage_dfa(ctx: WfContext, K: Dfa) -> Dfa:
    """Minimal DFA over ``A`` accepting ``{w : K accepts the encoding of w}``.

    The automaton simulates the encoding online.  A state records the
    images of the last ``|S| - 1`` suffixes, the last committed idempotent,
    the image of the current segment (``None`` before the first letter of a
    segment), the state of ``K`` after the committed letters, and the
    idempotent of the current position if that position is distinguished.
    The pending idempotent is committed only when another letter arrives,
    since the rightmost position never contributes one.
    """
    if set(K.alphabet) - set(ctx.tokens):
        raise MalformedInput("K is not over the extended alphabet of this context")
    missing = set(ctx.tokens) - set(K.alphabet)
    if missing:
        raise MalformedInput(f"K lacks {len(missing)} letters of the extended alphabet")
    alpha = ctx.morphism
    letters = [alpha.letter_image[a] for a in ctx.alphabet]
    keep = ctx.window - 1
    mul = ctx.mul

    def step_k(q, letter):
        return K.delta[q][K.symbol_index(letter.token)]

    def step(state, s):
        sfx, e_prev, m, kq, pending = state
        if pending is not None:
            if e_prev is None:
                kq = step_k(kq, WfLetter.first(m, pending))
            else:
                kq = step_k(kq, WfLetter.mid(e_prev, m, pending))
            e_prev, m = pending, None
        ext = (s,) + tuple(mul(t, s) for t in sfx)
        pending = _absorbing_idempotent(ctx, ext[-1])
        return (ext[:keep], e_prev, mul(m, s), kq, pending)

    def accepting(state):
        _, e_prev, m, kq, _ = state
        if m is None:
            return False
        final = WfLetter.single(m) if e_prev is None else WfLetter.last(e_prev, m)
        return step_k(kq, final) in K.accepting

    start = ((), None, None, K.initial, None)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        state = order[i]
        i += 1
        row = []
        for s in letters:
            nxt = step(state, s)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(row)
    acc = {j for j, state in enumerate(order) if accepting(state)}
    return minimize(Dfa(ctx.alphabet, delta, 0, acc))
