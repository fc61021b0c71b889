"""Finite (ordered) semigroups given by Cayley tables.

Elements are the integers ``0..n-1``.  The multiplication table is a
read-only numpy array; an optional partial order is a boolean matrix with
``order[s, t]`` meaning ``s <= t``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .automata import Dfa, as_word, determinize_minimize
from .errors import (
    AlphabetMismatch,
    EpsilonAccepted,
    MalformedInput,
    MissingOrder,
    UnknownSymbol,
)


class FiniteSemigroup:
    """A finite semigroup, optionally a monoid and optionally ordered.

    Parameters
    ----------
    mul : array-like of shape (n, n)
        ``mul[s, t]`` is the product ``s . t``.
    identity : int, optional
        Index of the two-sided neutral element, marking a monoid.
    order : array-like of bool, shape (n, n), optional
        Partial order compatible with multiplication.
    labels : sequence of str, optional
        Display names for the elements.
    check : bool
        Validate associativity, the identity and the order.
    """

    def __init__(self, mul, identity=None, order=None, labels=None, check=True):
        mul = np.array(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise MalformedInput(f"multiplication table must be square and nonempty, got {mul.shape}")
        n = mul.shape[0]
        if mul.min() < 0 or mul.max() >= n:
            raise MalformedInput("multiplication table entry out of range")
        mul.setflags(write=False)
        self.mul = mul
        self.identity = identity
        if order is not None:
            order = np.array(order, dtype=bool)
            if order.shape != (n, n):
                raise MalformedInput("order matrix has the wrong shape")
            order.setflags(write=False)
        self.order = order
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if check:
            if not self.is_associative():
                raise MalformedInput("multiplication is not associative")
            if identity is not None:
                e = identity
                if not (np.all(mul[e, :] == np.arange(n)) and np.all(mul[:, e] == np.arange(n))):
                    raise MalformedInput(f"element {e} is not a two-sided identity")
            if order is not None:
                problem = self.order_problem()
                if problem:
                    raise MalformedInput(problem)

    def __len__(self):
        return self.mul.shape[0]

    @property
    def size(self) -> int:
        return self.mul.shape[0]

    def __repr__(self):
        kind = "monoid" if self.identity is not None else "semigroup"
        ordered = ", ordered" if self.order is not None else ""
        return f"<FiniteSemigroup {kind} of size {self.size}{ordered}>"

    def __eq__(self, other):
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        same_order = (self.order is None and other.order is None) or (
            self.order is not None and other.order is not None and np.array_equal(self.order, other.order)
        )
        return np.array_equal(self.mul, other.mul) and self.identity == other.identity and same_order

    __hash__ = None

    def product(self, *elements) -> int:
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = int(self.mul[acc, x])
        return int(acc)

    def power(self, s: int, k: int) -> int:
        if k < 1:
            raise ValueError("powers are taken with positive exponents")
        acc = s
        for _ in range(k - 1):
            acc = int(self.mul[acc, s])
        return acc

    def is_associative(self) -> bool:
        m = self.mul
        # (st)u vs s(tu) for all triples, vectorized
        left = m[m[:, :, None], np.arange(self.size)[None, None, :]]
        right = m[np.arange(self.size)[:, None, None], m[None, :, :]]
        return bool(np.array_equal(left, right))

    @cached_property
    def idempotents(self) -> tuple:
        d = np.diag(self.mul)
        return tuple(int(s) for s in np.nonzero(d == np.arange(self.size))[0])

    @cached_property
    def omega(self) -> int:
        return idempotents_and_omega(self)[1]

    def omega_power(self, s: int) -> int:
        return self.power(s, self.omega)

    # ---- order ---------------------------------------------------------

    def leq(self, s: int, t: int) -> bool:
        if self.order is None:
            return s == t
        return bool(self.order[s, t])

    def order_problem(self):
        """A description of the first violated order axiom, or ``None``."""
        o = self.order
        if o is None:
            return None
        n = self.size
        if not np.all(np.diag(o)):
            return "order is not reflexive"
        if np.any(o & o.T & ~np.eye(n, dtype=bool)):
            return "order is not antisymmetric"
        # transitivity: o∘o ⊆ o
        comp = (o.astype(np.int64) @ o.astype(np.int64)) > 0
        if np.any(comp & ~o):
            return "order is not transitive"
        pairs = np.argwhere(o)
        for s, t in pairs:
            for s2, t2 in pairs:
                if not o[self.mul[s, s2], self.mul[t, t2]]:
                    return f"order not compatible: {s}<={t}, {s2}<={t2} but not {self.mul[s, s2]}<={self.mul[t, t2]}"
        return None

    def is_upward_closed(self, subset) -> bool:
        subset = set(subset)
        if self.order is None:
            return True
        return all(t in subset for s in subset for t in range(self.size) if self.order[s, t])

    def with_order(self, order) -> "FiniteSemigroup":
        return FiniteSemigroup(self.mul, self.identity, order, self.labels)

    def with_unit(self) -> "FiniteSemigroup":
        """S^1: a fresh neutral element appended with index ``n``.

        A fresh element is added even when ``self`` is already a monoid.
        """
        n = self.size
        mul = np.empty((n + 1, n + 1), dtype=np.int64)
        mul[:n, :n] = self.mul
        mul[n, :] = np.arange(n + 1)
        mul[:, n] = np.arange(n + 1)
        order = None
        if self.order is not None:
            order = np.zeros((n + 1, n + 1), dtype=bool)
            order[:n, :n] = self.order
            order[n, n] = True
        return FiniteSemigroup(mul, n, order, self.labels + ("1",), check=False)


def idempotents_and_omega(S: FiniteSemigroup) -> tuple:
    """Idempotents of ``S`` and the least ``m >= 1`` making every ``s^m`` idempotent.

    ``s^m`` is idempotent exactly when ``m`` is at least the index of ``s``
    and a multiple of its period, so ω is the least multiple of the lcm of
    the periods that is at least the largest index.
    """
    max_index = 1
    period_lcm = 1
    for s in range(S.size):
        seen = {}
        x, k = s, 1
        while x not in seen:
            seen[x] = k
            x = int(S.mul[x, s])
            k += 1
        index = seen[x]
        period = k - index
        max_index = max(max_index, index)
        period_lcm = period_lcm * period // math.gcd(period_lcm, period)
    omega = period_lcm * max(1, -(-max_index // period_lcm))
    return frozenset(S.idempotents), omega


def direct_product(A: FiniteSemigroup, B: FiniteSemigroup) -> FiniteSemigroup:
    """``A x B`` with componentwise product and order; ``(a, b)`` has index ``a*|B| + b``."""
    na, nb = A.size, B.size
    ia = np.repeat(np.arange(na), nb)
    ib = np.tile(np.arange(nb), na)
    mul = A.mul[ia[:, None], ia[None, :]] * nb + B.mul[ib[:, None], ib[None, :]]
    identity = None
    if A.identity is not None and B.identity is not None:
        identity = A.identity * nb + B.identity
    order = None
    if A.order is not None or B.order is not None:
        oa = A.order if A.order is not None else np.eye(na, dtype=bool)
        ob = B.order if B.order is not None else np.eye(nb, dtype=bool)
        order = oa[ia[:, None], ia[None, :]] & ob[ib[:, None], ib[None, :]]
    labels = [f"({x},{y})" for x in A.labels for y in B.labels]
    return FiniteSemigroup(mul, identity, order, labels, check=False)


# ---------------------------------------------------------------------------
# recognizing morphisms


@dataclass(frozen=True)
class RecognizingMorphism:
    """A surjective morphism ``A+ -> S`` together with named accepting sets.

    ``witnesses[s]`` is the shortest-lex word mapped to ``s``; every element
    has one, which is what surjectivity means here.
    """

    semigroup: FiniteSemigroup
    alphabet: tuple
    letter_image: Mapping
    accepting: Mapping = field(default_factory=dict)
    witnesses: tuple = ()

    def image(self, word) -> int:
        word = as_word(word)
        if not word:
            raise EpsilonAccepted("the empty word has no image in a semigroup")
        try:
            acc = self.letter_image[word[0]]
            for a in word[1:]:
                acc = int(self.semigroup.mul[acc, self.letter_image[a]])
        except KeyError as exc:
            raise UnknownSymbol(f"symbol {exc.args[0]!r} not in alphabet {self.alphabet}") from None
        return acc

    def recognizes(self, name: str, word) -> bool:
        return self.image(word) in self.accepting[name]


def _compose(s: tuple, t: tuple) -> tuple:
    # apply s, then t (word order)
    return tuple(t[q] for q in s)


def _generate(alphabet: Sequence[str], generators: Mapping) -> tuple:
    """BFS closure of letter transformations.

    Elements are discovered shortest-word-first with lexicographic
    tie-breaks, which fixes the canonical element order.
    """
    index: dict = {}
    elements: list = []
    witnesses: list = []
    frontier = []
    for a in alphabet:
        g = generators[a]
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
            witnesses.append((a,))
            frontier.append(g)
    while frontier:
        nxt = []
        for s in frontier:
            w = witnesses[index[s]]
            for a in alphabet:
                t = _compose(s, generators[a])
                if t not in index:
                    index[t] = len(elements)
                    elements.append(t)
                    witnesses.append(w + (a,))
                    nxt.append(t)
        frontier = nxt
    n = len(elements)
    mul = np.empty((n, n), dtype=np.int64)
    for i, s in enumerate(elements):
        for j, t in enumerate(elements):
            mul[i, j] = index[_compose(s, t)]
    return elements, witnesses, mul, index


def _transition_structure(d: Dfa, accepting_sets: Mapping):
    gens = {a: tuple(d.delta[q][i] for q in range(d.n_states)) for i, a in enumerate(d.alphabet)}
    elements, witnesses, mul, index = _generate(d.alphabet, gens)
    labels = ["".join(w) if all(len(x) == 1 for x in w) else ",".join(w) for w in witnesses]
    S = FiniteSemigroup(mul, labels=labels, check=False)
    letter_image = {a: index[gens[a]] for a in d.alphabet}
    accepting = {
        name: frozenset(i for i, s in enumerate(elements) if s[d.initial] in acc)
        for name, acc in accepting_sets.items()
    }
    return S, RecognizingMorphism(S, d.alphabet, letter_image, accepting, tuple(witnesses))


def transition_semigroup(d: Dfa, name: str = "L") -> tuple:
    """Transition semigroup of ``d`` and the morphism recognizing its language.

    Returns ``(S, alpha)`` where ``alpha.accepting[name]`` is the set of
    transformations sending the initial state into an accepting state.
    """
    if d.initial in d.accepting:
        raise EpsilonAccepted("the automaton accepts the empty word")
    return _transition_structure(d, {name: d.accepting})


def product_recognizer(x: Dfa, y: Dfa, names=("L", "Lp")) -> tuple:
    """One surjective morphism recognizing both languages.

    This is the transition semigroup of the reachable product automaton,
    carrying one accepting set per input language.
    """
    if set(x.alphabet) != set(y.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {x.alphabet} vs {y.alphabet}")
    for d in (x, y):
        if d.initial in d.accepting:
            raise EpsilonAccepted("an input automaton accepts the empty word")
    alphabet = x.alphabet
    yi = [y.symbol_index(a) for a in alphabet]
    start = (x.initial, y.initial)
    pairs = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        p, q = order[i]
        i += 1
        for k in range(len(alphabet)):
            nxt = (x.delta[p][k], y.delta[q][yi[k]])
            if nxt not in pairs:
                pairs[nxt] = len(order)
                order.append(nxt)
    delta = [[pairs[(x.delta[p][k], y.delta[q][yi[k]])] for k in range(len(alphabet))] for p, q in order]
    prod = Dfa(alphabet, delta, 0, frozenset())
    acc_x = {j for j, (p, _) in enumerate(order) if p in x.accepting}
    acc_y = {j for j, (_, q) in enumerate(order) if q in y.accepting}
    return _transition_structure(prod, {names[0]: acc_x, names[1]: acc_y})


def context_order(S: FiniteSemigroup, accepting) -> np.ndarray:
    """The order ``s <= t`` iff every context ``x . y`` in S^1 x S^1 with
    ``x s y`` in the accepting set also has ``x t y`` in it."""
    n = S.size
    S1 = S.with_unit()
    m1 = S1.mul
    inF = np.zeros(n + 1, dtype=bool)
    inF[list(accepting)] = True
    # vec[s, x, y] = [x s y in F]
    xs = m1[:, :n]  # xs[x, s]
    vec = inF[m1[xs.T[:, :, None], np.arange(n + 1)[None, None, :]]].reshape(n, -1)
    order = np.empty((n, n), dtype=bool)
    for s in range(n):
        order[s] = ~np.any(vec[s][None, :] & ~vec, axis=1)
    return order


def syntactic_ordered_semigroup(d: Dfa, name: str = "L") -> tuple:
    """Syntactic semigroup of L(d) with its syntactic order.

    Returns ``(S, alpha)`` like :func:`transition_semigroup`; ``S.order`` is
    set and compatible with multiplication.
    """
    if d.initial in d.accepting:
        raise EpsilonAccepted("the automaton accepts the empty word")
    m = determinize_minimize(d)
    S, alpha = transition_semigroup(m, name)
    ordered = S.with_order(context_order(S, alpha.accepting[name]))
    alpha = RecognizingMorphism(ordered, alpha.alphabet, alpha.letter_image, alpha.accepting, alpha.witnesses)
    return ordered, alpha


# ---------------------------------------------------------------------------
# identities with omega-terms


_TOKEN = re.compile(r"\s*(?:(?P<var>[A-Za-z][A-Za-z0-9_']*)|(?P<omega>\^(?:w|ω|omega))|(?P<lp>\()|(?P<rp>\)))")


def _parse_term(text: str):
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedInput(f"cannot parse term at {text[pos:]!r}")
        tokens.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def term(i):
        factors = []
        while i < len(tokens) and tokens[i][0] in ("var", "lp"):
            f, i = factor(i)
            factors.append(f)
        if not factors:
            raise MalformedInput(f"empty term in {text!r}")
        return (factors[0] if len(factors) == 1 else ("cat", tuple(factors))), i

    def factor(i):
        kind, val = tokens[i]
        if kind == "var":
            node, i = ("var", val), i + 1
        else:
            node, i = term(i + 1)
            if i >= len(tokens) or tokens[i][0] != "rp":
                raise MalformedInput(f"unbalanced parentheses in {text!r}")
            i += 1
        while i < len(tokens) and tokens[i][0] == "omega":
            node, i = ("omega", node), i + 1
        return node, i

    node, i = term(0)
    if i != len(tokens):
        raise MalformedInput(f"trailing input in term {text!r}")
    return node


def _term_vars(node, acc=None) -> list:
    acc = [] if acc is None else acc
    if node[0] == "var":
        if node[1] not in acc:
            acc.append(node[1])
    elif node[0] == "cat":
        for f in node[1]:
            _term_vars(f, acc)
    else:
        _term_vars(node[1], acc)
    return acc


def _evaluate(S: FiniteSemigroup, node, env) -> int:
    kind = node[0]
    if kind == "var":
        return env[node[1]]
    if kind == "cat":
        return S.product(*(_evaluate(S, f, env) for f in node[1]))
    return S.omega_power(_evaluate(S, node[1], env))


@dataclass(frozen=True)
class IdentitySpec:
    """An equation or inequation between two ω-terms.

    Terms are written like ``(xyz)^w y (xyz)^w``: single-letter or
    alphanumeric variables, juxtaposition for products, ``^w`` (or ``^ω``)
    for the ω-power.  Variables listed in ``idempotent_vars`` only range
    over idempotents.
    """

    lhs: str
    rhs: str
    relation: str = "="
    idempotent_vars: frozenset = frozenset()

    def __post_init__(self):
        if self.relation not in ("=", "<="):
            raise MalformedInput(f"relation must be '=' or '<=', got {self.relation!r}")
        object.__setattr__(self, "idempotent_vars", frozenset(self.idempotent_vars))
        _parse_term(self.lhs)
        _parse_term(self.rhs)

    @classmethod
    def parse(cls, text: str, idempotent_vars=()) -> "IdentitySpec":
        for rel in ("<=", "="):
            if rel in text:
                lhs, rhs = text.split(rel, 1)
                return cls(lhs.strip(), rhs.strip(), rel, frozenset(idempotent_vars))
        raise MalformedInput(f"no relation in identity {text!r}")

    def __str__(self):
        return f"{self.lhs} {self.relation} {self.rhs}"


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    counterexample: dict | None = None
    identity: IdentitySpec | None = None

    def __bool__(self):
        return self.holds


PRESETS = {
    "aperiodic": (IdentitySpec("x^w x", "x^w"),),
    "commutative": (IdentitySpec("x y", "y x"),),
    "J": (IdentitySpec("x^w x", "x^w"), IdentitySpec("(x y)^w", "(y x)^w")),
    "DA": (IdentitySpec("(x y z)^w y (x y z)^w", "(x y z)^w"),),
    "D": (IdentitySpec("x e", "e", idempotent_vars={"e"}),),
}


def check_identity(S: FiniteSemigroup, spec) -> IdentityCheck:
    """Brute-force check of an identity (or a preset name, or a list of them).

    Returns an :class:`IdentityCheck` that is truthy iff the relation holds
    under every assignment; otherwise it carries the first failing
    assignment in element order.
    """
    if isinstance(spec, str):
        spec = PRESETS[spec]
    if not isinstance(spec, IdentitySpec):
        for sub in spec:
            res = check_identity(S, sub)
            if not res:
                return res
        return IdentityCheck(True)
    if spec.relation == "<=" and S.order is None:
        raise MissingOrder("an inequality needs an ordered semigroup")
    lhs, rhs = _parse_term(spec.lhs), _parse_term(spec.rhs)
    names = _term_vars(lhs)
    names += [v for v in _term_vars(rhs) if v not in names]
    domains = [S.idempotents if v in spec.idempotent_vars else range(S.size) for v in names]
    for values in itertools.product(*domains):
        env = dict(zip(names, values))
        a, b = _evaluate(S, lhs, env), _evaluate(S, rhs, env)
        ok = a == b if spec.relation == "=" else S.leq(a, b)
        if not ok:
            return IdentityCheck(False, env, spec)
    return IdentityCheck(True, None, spec)


# ---------------------------------------------------------------------------
# text format


def parse_semigroup(text) -> FiniteSemigroup:
    """Read ``elements``, ``identity``, ``mul`` and ``le`` lines.

    Order pairs are closed reflexively and transitively before validation.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = identity = None
    rows: dict = {}
    le = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "elements":
                (n,) = map(int, rest)
            elif head == "identity":
                (identity,) = map(int, rest)
            elif head == "mul":
                if len(rest) < 2 or rest[1] != ":":
                    raise MalformedInput(f"line {lineno}: expected 'mul <i> : <j0> ...'")
                rows[int(rest[0])] = [int(x) for x in rest[2:]]
            elif head == "le":
                s, t = map(int, rest)
                le.append((s, t))
            else:
                raise MalformedInput(f"line {lineno}: unknown keyword {head!r}")
        except ValueError as exc:
            if isinstance(exc, MalformedInput):
                raise
            raise MalformedInput(f"line {lineno}: cannot parse {raw!r}") from None
    if n is None:
        raise MalformedInput("missing 'elements' line")
    if sorted(rows) != list(range(n)) or any(len(r) != n for r in rows.values()):
        raise MalformedInput("multiplication table incomplete")
    order = None
    if le:
        order = np.eye(n, dtype=bool)
        for s, t in le:
            if not (0 <= s < n and 0 <= t < n):
                raise MalformedInput(f"order pair {(s, t)} out of range")
            order[s, t] = True
        for k in range(n):
            order |= order[:, k : k + 1] & order[k : k + 1, :]
    return FiniteSemigroup([rows[i] for i in range(n)], identity, order)


def semigroup_to_text(S: FiniteSemigroup) -> str:
    lines = [f"elements {S.size}"]
    if S.identity is not None:
        lines.append(f"identity {S.identity}")
    for i in range(S.size):
        lines.append(f"mul {i} : " + " ".join(str(int(x)) for x in S.mul[i]))
    if S.order is not None:
        for s, t in np.argwhere(S.order):
            if s != t:
                lines.append(f"le {s} {t}")
    return "\n".join(lines) + "\n"
