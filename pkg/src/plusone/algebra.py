"""Ordered monoids, actions, semidirect products and the two separator transfers.

Monoids acted upon are written additively in the docstrings below
(``s + s'`` is ``M.mul[s, s']``), following the usual convention for
semidirect products.  Elements of ``M * T`` are indexed ``m * |T| + t``.

Two constructions move separators between plain words and well-formed
words:

* :func:`gamma_construction` turns a recognizer ``delta: A+ -> M * T``
  with ``T`` in the variety D into a morphism ``gamma`` on the extended
  alphabet, with values in ``M x N``.
* :class:`DeltaEvaluator` goes the other way: from ``gamma`` on the
  extended alphabet it evaluates, for a word ``w``, the value
  ``gamma(<w>)`` through a suffix-truncating semigroup, without ever
  building the (huge) function monoid it lives in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from .automata import Dfa, as_word
from .errors import InvalidAction, MalformedInput, NotAntichain, NotInD, NotUpwardClosed
from .semigroup import FiniteSemigroup, direct_product
from .wellformed import (
    WfContext,
    WfLetter,
    canonical_wf,
    emitted_letter,
    enumerate_well_formed,
    expand,
    expand_letter,
)


def _order(S: FiniteSemigroup) -> np.ndarray:
    return S.order if S.order is not None else np.eye(S.size, dtype=bool)


def ordered(S: FiniteSemigroup) -> FiniteSemigroup:
    """``S`` itself if it carries an order, else ``S`` ordered by equality."""
    return S if S.order is not None else S.with_order(np.eye(S.size, dtype=bool))


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class ActionTable:
    """``table[t, m]`` is ``t * m``; row ``|T|`` is the adjoined unit of T."""

    table: np.ndarray

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_function(cls, M: FiniteSemigroup, T: FiniteSemigroup, fn: Callable) -> "ActionTable":
        """Tabulate ``fn(t, m)`` for ``t`` in T; the unit row is the identity."""
        rows = [[fn(t, m) for m in range(M.size)] for t in range(T.size)]
        rows.append(list(range(M.size)))
        return cls(np.array(rows))

    def __call__(self, t, m) -> int:
        if t is None:
            return int(m)
        return int(self.table[t, m])

    def __eq__(self, other):
        return isinstance(other, ActionTable) and np.array_equal(self.table, other.table)

    __hash__ = None


def trivial_action(M: FiniteSemigroup, T: FiniteSemigroup) -> ActionTable:
    return ActionTable.from_function(M, T, lambda t, m: m)


@dataclass(frozen=True)
class ActionReport:
    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    @property
    def axioms(self) -> set:
        return {name for name, _ in self.violations}


def validate_action(M: FiniteSemigroup, T: FiniteSemigroup, act: ActionTable) -> ActionReport:
    """Check every action axiom exhaustively over ``T^1 x M``.

    Axiom names in the report: ``compose`` (t*(t'*s) = (tt')*s), ``unit``
    (1*s = s), ``monotone`` (s <= s' implies t*s <= t*s'), ``additive``
    (t*(s+s') = t*s + t*s'), ``neutral`` (t*0 = 0 for the neutral element
    of M) and ``order`` (t <= t' implies t*s <= t'*s).
    """
    if M.identity is None:
        raise MalformedInput("the acted-upon semigroup must be a monoid")
    nT, nM = T.size, M.size
    table = act.table
    if table.shape != (nT + 1, nM):
        raise MalformedInput(f"action table has shape {table.shape}, expected {(nT + 1, nM)}")
    if table.min() < 0 or table.max() >= nM:
        raise MalformedInput("action table entry out of range")
    T1 = T.with_unit()
    oM, oT = _order(M), _order(T)
    out = []

    def fail(name, detail):
        out.append((name, detail))

    for t in range(nT + 1):
        for t2 in range(nT + 1):
            tt = int(T1.mul[t, t2])
            for s in range(nM):
                if table[t, table[t2, s]] != table[tt, s]:
                    fail("compose", f"t={t} t'={t2} s={s}")
    for s in range(nM):
        if table[nT, s] != s:
            fail("unit", f"s={s}")
    for t in range(nT + 1):
        for s in range(nM):
            for s2 in range(nM):
                if oM[s, s2] and not oM[table[t, s], table[t, s2]]:
                    fail("monotone", f"t={t} s={s} s'={s2}")
                if table[t, M.mul[s, s2]] != M.mul[table[t, s], table[t, s2]]:
                    fail("additive", f"t={t} s={s} s'={s2}")
        if table[t, M.identity] != M.identity:
            fail("neutral", f"t={t}")
    for t in range(nT):
        for t2 in range(nT):
            if oT[t, t2]:
                for s in range(nM):
                    if not oM[table[t, s], table[t2, s]]:
                        fail("order", f"t={t} t'={t2} s={s}")
    return ActionReport(tuple(out))


class SemidirectProduct:
    """``M * T`` with ``(s, t)(s', t') = (s + t*s', t t')`` and componentwise order."""

    def __init__(self, M: FiniteSemigroup, T: FiniteSemigroup, act: ActionTable):
        report = validate_action(M, T, act)
        if not report:
            raise InvalidAction(f"action axioms violated: {sorted(report.axioms)}")
        self.M, self.T, self.act = ordered(M), ordered(T), act
        nM, nT = M.size, T.size
        ms = np.repeat(np.arange(nM), nT)
        ts = np.tile(np.arange(nT), nM)
        acted = act.table[ts[:, None], ms[None, :]]  # t * s'
        first = M.mul[ms[:, None], acted]
        second = T.mul[ts[:, None], ts[None, :]]
        mul = first * nT + second
        order = self.M.order[ms[:, None], ms[None, :]] & self.T.order[ts[:, None], ts[None, :]]
        labels = [f"({M.labels[m]},{T.labels[t]})" for m in range(nM) for t in range(nT)]
        self.semigroup = FiniteSemigroup(mul, None, order, labels, check=True)

    @property
    def size(self) -> int:
        return self.semigroup.size

    def pair(self, i: int) -> tuple:
        return divmod(int(i), self.T.size)

    def index(self, m: int, t: int) -> int:
        return int(m) * self.T.size + int(t)

    def evaluate(self, delta: Mapping, word) -> int:
        """Image of a nonempty word under the letter map ``delta``."""
        word = as_word(word)
        acc = delta[word[0]]
        for a in word[1:]:
            acc = int(self.semigroup.mul[acc, delta[a]])
        return acc


def semidirect(M: FiniteSemigroup, T: FiniteSemigroup, act: ActionTable) -> SemidirectProduct:
    return SemidirectProduct(M, T, act)


def is_in_D(T: FiniteSemigroup) -> bool:
    """Does every idempotent absorb everything on its left?"""
    E = list(T.idempotents)
    return bool(np.all(T.mul[:, E] == np.array(E)[None, :]))


def antichain_monoid(n: int) -> FiniteSemigroup:
    """``{1, t'_1, ..., t'_n, 0}`` with ``t'_i t'_j = 0``, ordered by equality.

    Index 0 is the identity, ``i`` is ``t'_i`` and ``n + 1`` is the zero.
    """
    if n < 1:
        raise ValueError("need at least one generator")
    z = n + 1
    mul = np.full((n + 2, n + 2), z, dtype=np.int64)
    mul[0, :] = np.arange(n + 2)
    mul[:, 0] = np.arange(n + 2)
    labels = ["1"] + [f"t{i}'" for i in range(1, n + 1)] + ["0"]
    return FiniteSemigroup(mul, 0, np.eye(n + 2, dtype=bool), labels)


def morphism_dfa(S: FiniteSemigroup, alphabet: Sequence[str], letter_image: Mapping, accepting) -> Dfa:
    """DFA for the preimage of ``accepting`` under a letter map into ``S``."""
    alphabet = tuple(alphabet)
    n = S.size
    delta = [[1 + letter_image[a] for a in alphabet]]
    for s in range(n):
        delta.append([1 + int(S.mul[s, letter_image[a]]) for a in alphabet])
    return Dfa(alphabet, delta, 0, frozenset(1 + s for s in accepting))


def _upward_closed(S: FiniteSemigroup, subset) -> bool:
    return ordered(S).is_upward_closed(subset)


# ---------------------------------------------------------------------------
# from a recognizer over A to one over the extended alphabet


class GammaConstruction:
    """The morphism ``gamma`` from the extended alphabet into ``M x N``.

    For a letter with sides ``e``, ``f`` (either may be the unit) and middle
    ``s``, let ``(m_e, t_e)`` be the image of ``rep(e)^omega`` (the neutral
    pair when ``e`` is the unit) and ``(m, t)`` the image of the letter's
    ``omega``-expansion.  Then ``gamma`` maps the letter to
    ``(t_e * m, inject(t))`` when ``f`` is the unit and to
    ``(t_e * m, 1_N)`` otherwise.
    """

    def __init__(
        self,
        sd: SemidirectProduct,
        delta: Mapping,
        F,
        ctx: WfContext,
        N: FiniteSemigroup | None = None,
        inject: Mapping | None = None,
    ):
        if not is_in_D(sd.T):
            raise NotInD("T does not satisfy s e = e for all idempotents e")
        F = frozenset(F)
        if not _upward_closed(sd.semigroup, F):
            raise NotUpwardClosed("F is not upward closed in M * T")
        if N is None:
            N = antichain_monoid(sd.T.size)
            inject = {t: t + 1 for t in range(sd.T.size)}
        if N.identity is None:
            raise MalformedInput("N must be a monoid")
        inject = dict(inject)
        oN = _order(N)
        imgs = [inject[t] for t in range(sd.T.size)]
        for i, x in enumerate(imgs):
            for y in imgs[i + 1 :]:
                if x == y or oN[x, y] or oN[y, x]:
                    raise NotAntichain(f"injected elements {x} and {y} are comparable")
        self.sd, self.delta, self.F, self.ctx = sd, dict(delta), F, ctx
        self.N, self.inject = ordered(N), inject
        self.MN = direct_product(sd.M, self.N)
        self.omega = sd.semigroup.omega
        self.bbF = frozenset(self.target(m, inject[t]) for m, t in map(sd.pair, F))

    def target(self, m: int, n: int) -> int:
        """Index of ``(m, n)`` in ``M x N``."""
        return int(m) * self.N.size + int(n)

    def split(self, x: int) -> tuple:
        return divmod(int(x), self.N.size)

    def delta_word(self, word) -> int:
        return self.sd.evaluate(self.delta, word)

    def idempotent_image(self, e) -> tuple:
        """``(m_e, t_e)``; ``None`` (the unit of T^1) for the unit side."""
        if e is None:
            return self.sd.M.identity, None
        w = self.ctx.representatives[e] * self.omega
        return self.sd.pair(self.delta_word(w))

    @cached_property
    def table(self) -> dict:
        return {letter: self._letter(letter) for letter in self.ctx.letters}

    def _letter(self, letter: WfLetter) -> int:
        _, t_e = self.idempotent_image(letter.left)
        m, t = self.sd.pair(self.delta_word(expand_letter(self.ctx, letter, self.omega)))
        first = self.sd.act(t_e, m)
        second = self.inject[t] if letter.right is None else self.N.identity
        return self.target(first, second)

    def __call__(self, x) -> int:
        if isinstance(x, WfLetter):
            return self.table[x]
        word = tuple(x)
        acc = self.MN.identity
        for letter in word:
            acc = int(self.MN.mul[acc, self.table[letter]])
        return acc

    def expected(self, word) -> int:
        """``(m, inject(t))`` for ``(m, t)`` the image of the ``omega``-expansion."""
        m, t = self.sd.pair(self.delta_word(expand(self.ctx, word, self.omega)))
        return self.target(m, self.inject[t])

    def expansion_violations(self, max_letters: int = 3) -> list:
        """Well-formed words on which ``gamma`` disagrees with :meth:`expected`."""
        return [w for w in enumerate_well_formed(self.ctx, max_letters) if self(w) != self.expected(w)]

    def idempotent_law_violations(self) -> list:
        """Idempotents ``e`` of S with ``m_e + t_e * m_e != m_e``."""
        bad = []
        for e in self.ctx.idempotents:
            m_e, t_e = self.idempotent_image(e)
            if int(self.sd.M.mul[m_e, self.sd.act(t_e, m_e)]) != m_e:
                bad.append(e)
        return bad

    def accepts(self, word) -> bool:
        return self(word) in self.bbF


def gamma_construction(sd, delta, F, ctx, N=None, inject=None) -> GammaConstruction:
    return GammaConstruction(sd, delta, F, ctx, N, inject)


# ---------------------------------------------------------------------------
# from a recognizer over the extended alphabet back to A


class DeltaEvaluator:
    """Evaluate the recognizer built from ``gamma`` on words over ``A``.

    ``gamma`` maps letters of the extended alphabet into the ordered monoid
    ``MM``; ``bbF`` is upward closed in ``MM``.  The semigroup T consists of
    the words of length at most ``2|S|`` with products truncated to that
    suffix length, and ``rho`` is the truncation.  Elements of T^1 are plain
    tuples, the empty tuple being the unit.

    ``lab(v)`` is the image under ``gamma`` of the letter the encoding emits
    at the last position of ``v`` when that position is distinguished by
    its own window (the letter it gets in every proper extension of ``v``),
    and the neutral element otherwise.  The function component of the
    image of ``w = a_1 ... a_m`` evaluated at ``u`` is
    ``sum_i lab(rho(u a_1 ... a_{i-1}))`` over ``i = 1..m``, where the
    ``i = 1`` term at the unit contributes nothing; so at the unit it sums
    ``lab`` over the proper prefixes of ``w``.
    """

    def __init__(self, gamma, MM: FiniteSemigroup, bbF, ctx: WfContext):
        if MM.identity is None:
            raise MalformedInput("the target of gamma must be a monoid")
        bbF = frozenset(bbF)
        if not _upward_closed(MM, bbF):
            raise NotUpwardClosed("the accepting set is not upward closed")
        self.gamma = gamma if callable(gamma) else gamma.__getitem__
        self.MM, self.bbF, self.ctx = MM, bbF, ctx
        self.length = ctx.locality
        self._lab: dict = {}

    def rho(self, w) -> tuple:
        return as_word(w)[-self.length :]

    def t_mul(self, u, v) -> tuple:
        """Product in T^1."""
        return self.rho(tuple(u) + tuple(v))

    def add(self, x, y) -> int:
        return int(self.MM.mul[x, y])

    def lab(self, w) -> int:
        w = as_word(w)
        if not w:
            return self.MM.identity
        if w not in self._lab:
            letter = emitted_letter(self.ctx, w)
            self._lab[w] = self.MM.identity if letter is None else self.gamma(letter)
        return self._lab[w]

    def point(self, w, u=()) -> int:
        """The function component of the image of ``w``, evaluated at ``u``."""
        acc = self.MM.identity
        cur = tuple(u)
        for a in as_word(w):
            acc = self.add(acc, self.lab(cur))
            cur = self.t_mul(cur, (a,))
        return acc

    def evaluate(self, w) -> tuple:
        """``(f(1_T), rho(w))`` for the image ``(f, rho(w))`` of ``w``."""
        w = as_word(w)
        return self.point(w), self.rho(w)

    def end(self, u) -> WfLetter:
        return canonical_wf(self.ctx, u)[0][-1]

    def value(self, w) -> int:
        f1, u = self.evaluate(w)
        return self.add(f1, self.gamma(self.end(u)))

    def in_F(self, w) -> bool:
        return self.value(w) in self.bbF

    def direct(self, w) -> int:
        """``gamma`` of the full encoding of ``w``, folded letter by letter."""
        acc = self.MM.identity
        for letter in canonical_wf(self.ctx, w)[0]:
            acc = self.add(acc, self.gamma(letter))
        return acc


def delta_evaluator(gamma, MM, bbF, ctx) -> DeltaEvaluator:
    return DeltaEvaluator(gamma, MM, bbF, ctx)


# ---------------------------------------------------------------------------
# sample instances


@dataclass
class AlgebraInstance:
    """A semidirect product with a letter map and an accepting set."""

    name: str
    sd: SemidirectProduct
    alphabet: tuple
    delta: dict
    F: frozenset
    extra: dict = field(default_factory=dict)

    def language(self) -> Dfa:
        return morphism_dfa(self.sd.semigroup, self.alphabet, self.delta, self.F)


def two_element_monoid(order_zero_below_one: bool = False) -> FiniteSemigroup:
    """``{1, 0}`` under multiplication; index 0 is 1 and index 1 is 0."""
    order = np.eye(2, dtype=bool)
    if order_zero_below_one:
        order[1, 0] = True
    return FiniteSemigroup([[0, 1], [1, 1]], 0, order, ["1", "0"])


def right_zero(n: int) -> FiniteSemigroup:
    """``x y = y`` on ``n`` elements, ordered by equality."""
    mul = np.tile(np.arange(n), (n, 1))
    return FiniteSemigroup(mul, None, np.eye(n, dtype=bool), [f"t{i + 1}" for i in range(n)])


def suffix_semigroup(alphabet: Sequence[str], length: int) -> tuple:
    """Nonempty words of length at most ``length`` under truncated concatenation."""
    alphabet = tuple(alphabet)
    words = [()]
    elems = []
    for _ in range(length):
        words = [w + (a,) for w in words for a in alphabet]
        elems.extend(words)
    elems.sort(key=lambda w: (len(w), w))
    index = {w: i for i, w in enumerate(elems)}
    mul = [[index[(x + y)[-length:]] for y in elems] for x in elems]
    labels = ["".join(w) for w in elems]
    return FiniteSemigroup(mul, None, np.eye(len(elems), dtype=bool), labels), index


def sample_instances() -> list:
    """Three fixed instances with T in D, all of size at most 8."""
    out = []

    M = two_element_monoid()
    T = right_zero(2)
    sd = semidirect(M, T, trivial_action(M, T))
    delta = {"a": sd.index(0, 0), "b": sd.index(1, 1)}
    F = frozenset({sd.index(1, 0), sd.index(1, 1)})
    out.append(AlgebraInstance("contains-b", sd, ("a", "b"), delta, F))

    M = two_element_monoid(order_zero_below_one=True)
    act = ActionTable.from_function(M, T, lambda t, m: M.identity)
    sd = semidirect(M, T, act)
    delta = {"a": sd.index(0, 0), "b": sd.index(1, 1)}
    F = frozenset({sd.index(0, 1)})
    out.append(AlgebraInstance("starts-a-ends-b", sd, ("a", "b"), delta, F))

    # U2: identity plus two left zeros, acted on by a constant map
    M = FiniteSemigroup([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0, np.eye(3, dtype=bool), ["1", "p", "q"])
    T, idx = suffix_semigroup("ab", 2)
    act = ActionTable.from_function(M, T, lambda t, m: 0 if m == 0 else 1)
    sd = semidirect(M, T, act)
    delta = {"a": sd.index(1, idx[("a",)]), "b": sd.index(2, idx[("b",)])}
    F = frozenset({sd.index(1, idx[("a", "b")]), sd.index(2, idx[("b", "a")])})
    out.append(AlgebraInstance("first-letter-and-suffix", sd, ("a", "b"), delta, F))
    return out
