"""Finite automata over arbitrary token alphabets.

A symbol is any whitespace-free string token; a word is a tuple of tokens.
Plain Python strings are accepted wherever a word is expected and are read
one character per token, which is convenient for alphabets like ``{a, b}``.

Both :class:`Dfa` and :class:`Nfa` are immutable.  All operations below are
pure functions returning fresh automata.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence, Union

from .errors import AlphabetMismatch, MalformedInput, UnknownSymbol

Word = tuple


def as_word(w) -> tuple:
    """Coerce ``w`` to a tuple of tokens (strings are split per character)."""
    if isinstance(w, tuple):
        return w
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def show_word(w: Sequence[str]) -> str:
    """Render a word compactly: concatenated if every token is one char."""
    w = tuple(w)
    if all(len(t) == 1 for t in w):
        return "".join(w)
    return ",".join(w)


def _check_alphabet(alphabet) -> tuple:
    alphabet = tuple(alphabet)
    if len(set(alphabet)) != len(alphabet):
        raise MalformedInput(f"duplicate symbol in alphabet {alphabet}")
    for tok in alphabet:
        if not isinstance(tok, str) or not tok or any(c.isspace() for c in tok):
            raise MalformedInput(f"bad symbol token {tok!r}")
    return alphabet


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton.

    ``delta[q][i]`` is the successor of state ``q`` on ``alphabet[i]``.
    """

    alphabet: tuple
    delta: tuple
    initial: int
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n = len(self.delta)
        if n == 0:
            raise MalformedInput("a DFA needs at least one state")
        if not 0 <= self.initial < n:
            raise MalformedInput(f"initial state {self.initial} out of range")
        for q in self.accepting:
            if not 0 <= q < n:
                raise MalformedInput(f"accepting state {q} out of range")
        k = len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise MalformedInput(f"state {q} has {len(row)} transitions, expected {k}")
            for r in row:
                if not 0 <= r < n:
                    raise MalformedInput(f"transition target {r} out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @cached_property
    def index(self) -> dict:
        return {a: i for i, a in enumerate(self.alphabet)}

    def symbol_index(self, a) -> int:
        try:
            return self.index[a]
        except KeyError:
            raise UnknownSymbol(f"symbol {a!r} not in alphabet {self.alphabet}") from None

    def run(self, word, start=None) -> int:
        q = self.initial if start is None else start
        for a in as_word(word):
            q = self.delta[q][self.symbol_index(a)]
        return q

    def accepts(self, word) -> bool:
        return self.run(word) in self.accepting

    def to_nfa(self) -> "Nfa":
        trans = frozenset(
            (q, a, self.delta[q][i])
            for q in range(self.n_states)
            for i, a in enumerate(self.alphabet)
        )
        return Nfa(self.alphabet, self.n_states, frozenset([self.initial]), self.accepting, trans)


@dataclass(frozen=True)
class Nfa:
    alphabet: tuple
    n_states: int
    initials: frozenset
    accepting: frozenset
    transitions: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet))
        object.__setattr__(self, "initials", frozenset(self.initials))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        n = self.n_states
        for q in self.initials | self.accepting:
            if not 0 <= q < n:
                raise MalformedInput(f"state {q} out of range")
        syms = set(self.alphabet)
        for p, a, q in self.transitions:
            if not (0 <= p < n and 0 <= q < n):
                raise MalformedInput(f"transition {(p, a, q)} out of range")
            if a not in syms:
                raise MalformedInput(f"transition symbol {a!r} not in alphabet")

    @cached_property
    def successors(self) -> dict:
        succ: dict = {}
        for p, a, q in self.transitions:
            succ.setdefault((p, a), set()).add(q)
        return {k: frozenset(v) for k, v in succ.items()}

    def step(self, states, a) -> frozenset:
        succ = self.successors
        out = set()
        for p in states:
            out |= succ.get((p, a), frozenset())
        return frozenset(out)

    def accepts(self, word) -> bool:
        cur = self.initials
        syms = set(self.alphabet)
        for a in as_word(word):
            if a not in syms:
                raise UnknownSymbol(f"symbol {a!r} not in alphabet {self.alphabet}")
            cur = self.step(cur, a)
        return bool(cur & self.accepting)

    def to_nfa(self) -> "Nfa":
        return self


Automaton = Union[Dfa, Nfa]


# ---------------------------------------------------------------------------
# text format


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_automaton(text, deterministic: bool = True) -> Automaton:
    """Parse the line-oriented automaton format.

    ``alphabet``, ``states``, ``initial``, ``accepting`` and ``trans`` lines;
    ``#`` starts a comment.  With ``deterministic=True`` the result must be a
    complete DFA, otherwise an :class:`Nfa` is returned.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    alphabet = n = None
    initials = None
    accepting: set = set()
    seen_accepting = False
    trans = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "alphabet":
                alphabet = tuple(rest)
            elif head == "states":
                (n,) = map(int, rest)
            elif head == "initial":
                initials = [int(x) for x in rest]
            elif head == "accepting":
                seen_accepting = True
                accepting.update(int(x) for x in rest)
            elif head == "trans":
                p, a, q = rest
                trans.append((int(p), a, int(q)))
            else:
                raise MalformedInput(f"line {lineno}: unknown keyword {head!r}")
        except ValueError as exc:
            if isinstance(exc, MalformedInput):
                raise
            raise MalformedInput(f"line {lineno}: cannot parse {raw!r}") from None
    for name, val in (("alphabet", alphabet), ("states", n), ("initial", initials)):
        if val is None:
            raise MalformedInput(f"missing section {name!r}")
    if not seen_accepting:
        raise MalformedInput("missing section 'accepting'")
    if not deterministic:
        return Nfa(alphabet, n, frozenset(initials), frozenset(accepting), frozenset(trans))

    if len(initials) != 1:
        raise MalformedInput("a DFA has exactly one initial state")
    _check_alphabet(alphabet)
    index = {a: i for i, a in enumerate(alphabet)}
    table: list = [[None] * len(alphabet) for _ in range(n)]
    for p, a, q in trans:
        if a not in index:
            raise MalformedInput(f"unknown symbol {a!r} in transition")
        if not (0 <= p < n and 0 <= q < n):
            raise MalformedInput(f"transition {(p, a, q)} out of range")
        if table[p][index[a]] is not None and table[p][index[a]] != q:
            raise MalformedInput(f"nondeterministic transition from {p} on {a!r}")
        table[p][index[a]] = q
    for p, row in enumerate(table):
        for i, q in enumerate(row):
            if q is None:
                raise MalformedInput(f"missing transition from {p} on {alphabet[i]!r}")
    return Dfa(alphabet, table, initials[0], frozenset(accepting))


def dfa_from_text(text) -> Dfa:
    return parse_automaton(text, deterministic=True)


def _bfs_order(d: Dfa) -> list:
    order = [d.initial]
    seen = {d.initial}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for r in d.delta[q]:
            if r not in seen:
                seen.add(r)
                order.append(r)
    order.extend(q for q in range(d.n_states) if q not in seen)
    return order


def canonical(d: Dfa) -> Dfa:
    """Renumber states in BFS order from the initial state.

    Unreachable states, if any, keep their relative order after the
    reachable ones.
    """
    order = _bfs_order(d)
    new = {q: i for i, q in enumerate(order)}
    delta = [[new[d.delta[q][i]] for i in range(len(d.alphabet))] for q in order]
    return Dfa(d.alphabet, delta, 0, frozenset(new[q] for q in d.accepting))


def dfa_to_text(d: Dfa) -> str:
    c = canonical(d)
    lines = [
        "alphabet " + " ".join(c.alphabet),
        f"states {c.n_states}",
        "initial 0",
        "accepting " + " ".join(str(q) for q in sorted(c.accepting)),
    ]
    rows = sorted(
        (q, a, c.delta[q][i]) for q in range(c.n_states) for i, a in enumerate(c.alphabet)
    )
    lines.extend(f"trans {p} {a} {q}" for p, a, q in rows)
    return "\n".join(lines) + "\n"


def nfa_to_text(n: Nfa) -> str:
    lines = [
        "alphabet " + " ".join(n.alphabet),
        f"states {n.n_states}",
        "initial " + " ".join(str(q) for q in sorted(n.initials)),
        "accepting " + " ".join(str(q) for q in sorted(n.accepting)),
    ]
    lines.extend(f"trans {p} {a} {q}" for p, a, q in sorted(n.transitions))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Boolean algebra


def _same_alphabet(x: Automaton, y: Automaton):
    if set(x.alphabet) != set(y.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {x.alphabet} vs {y.alphabet}")


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.delta, d.initial, frozenset(range(d.n_states)) - d.accepting)


def _product(x: Dfa, y: Dfa, both: bool) -> Dfa:
    _same_alphabet(x, y)
    alphabet = x.alphabet
    yi = [y.symbol_index(a) for a in alphabet]
    start = (x.initial, y.initial)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p, q = order[i]
        i += 1
        row = []
        for k in range(len(alphabet)):
            nxt = (x.delta[p][k], y.delta[q][yi[k]])
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(row)
    if both:
        acc = {j for j, (p, q) in enumerate(order) if p in x.accepting and q in y.accepting}
    else:
        acc = {j for j, (p, q) in enumerate(order) if p in x.accepting or q in y.accepting}
    return Dfa(alphabet, delta, 0, frozenset(acc))


def intersect(x: Dfa, y: Dfa) -> Dfa:
    return _product(x, y, both=True)


def union(x: Dfa, y: Dfa) -> Dfa:
    return _product(x, y, both=False)


def determinize(n: Automaton) -> Dfa:
    """Subset construction over reachable subsets (the empty set is the sink)."""
    if isinstance(n, Dfa):
        return n
    start = n.initials
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        cur = order[i]
        i += 1
        row = []
        for a in n.alphabet:
            nxt = n.step(cur, a)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(row)
    acc = {j for j, s in enumerate(order) if s & n.accepting}
    return Dfa(n.alphabet, delta, 0, frozenset(acc))


def _reachable(d: Dfa) -> Dfa:
    order = _bfs_order(d)
    seen = {d.initial}
    for q in order:
        if q in seen:
            seen.update(d.delta[q])
    order = [q for q in order if q in seen]
    new = {q: i for i, q in enumerate(order)}
    delta = [[new[r] for r in d.delta[q]] for q in order]
    return Dfa(d.alphabet, delta, 0, frozenset(new[q] for q in d.accepting if q in new))


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part, canonically numbered."""
    d = _reachable(d)
    block = [1 if q in d.accepting else 0 for q in range(d.n_states)]
    n_blocks = len(set(block))
    while True:
        sigs = {}
        new_block = []
        for q in range(d.n_states):
            sig = (block[q],) + tuple(block[r] for r in d.delta[q])
            new_block.append(sigs.setdefault(sig, len(sigs)))
        stable = len(sigs) == n_blocks
        block, n_blocks = new_block, len(sigs)
        if stable:
            break
    reps = {}
    for q in range(d.n_states):
        reps.setdefault(block[q], q)
    delta = [[block[r] for r in d.delta[reps[b]]] for b in range(n_blocks)]
    acc = {block[q] for q in d.accepting}
    return canonical(Dfa(d.alphabet, delta, block[d.initial], frozenset(acc)))


def determinize_minimize(n: Automaton) -> Dfa:
    return minimize(determinize(n))


# ---------------------------------------------------------------------------
# queries


def is_empty_with_witness(a: Automaton):
    """``None`` if the language is empty, else its shortest-lex accepted word.

    Ties between words of equal length are broken by the declared order of
    the alphabet.
    """
    d = determinize(a)
    if d.initial in d.accepting:
        return ()
    parent = {d.initial: None}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for i, r in enumerate(d.delta[q]):
            if r in parent:
                continue
            parent[r] = (q, d.alphabet[i])
            if r in d.accepting:
                word = []
                cur = r
                while parent[cur] is not None:
                    cur, sym = parent[cur]
                    word.append(sym)
                return tuple(reversed(word))
            queue.append(r)
    return None


def is_empty(a: Automaton) -> bool:
    return is_empty_with_witness(a) is None


def inclusion_counterexample(x: Dfa, y: Dfa):
    """Shortest-lex word accepted by ``y`` and rejected by ``x``, or ``None``."""
    _same_alphabet(x, y)
    return is_empty_with_witness(intersect(y, complement(x)))


def includes(x: Automaton, y: Automaton) -> bool:
    """Does L(x) contain L(y)?"""
    return inclusion_counterexample(determinize(x), determinize(y)) is None


def equivalent(x: Automaton, y: Automaton) -> bool:
    return includes(x, y) and includes(y, x)


def accepts(a: Automaton, word) -> bool:
    return a.accepts(word)


def enumerate_accepted(a: Automaton, max_len: int) -> list:
    """All accepted words of length at most ``max_len``, length-then-lex."""
    d = determinize(a)
    out = []
    layer = [((), d.initial)]
    for length in range(max_len + 1):
        out.extend(w for w, q in layer if q in d.accepting)
        if length == max_len:
            break
        layer = [
            (w + (sym,), d.delta[q][i])
            for w, q in layer
            for i, sym in enumerate(d.alphabet)
        ]
    return out


def all_words(alphabet: Sequence[str], max_len: int, min_len: int = 0) -> Iterable[tuple]:
    """Every word over ``alphabet`` with length in ``[min_len, max_len]``."""
    for n in range(min_len, max_len + 1):
        yield from product(alphabet, repeat=n)


# ---------------------------------------------------------------------------
# subword closure


def upward_closure(a: Automaton) -> Nfa:
    """Superword closure: add a self-loop on every state for every letter.

    The result accepts ``w`` iff some accepted word of ``a`` is a scattered
    subword of ``w``.
    """
    n = a.to_nfa()
    loops = {(q, x, q) for q in range(n.n_states) for x in n.alphabet}
    return Nfa(n.alphabet, n.n_states, n.initials, n.accepting, n.transitions | loops)


def subword_nfa(word, alphabet: Sequence[str]) -> Nfa:
    """NFA accepting exactly the nonempty scattered subwords of ``word``."""
    word = as_word(word)
    m = len(word)
    trans = {(i, word[j], j + 1) for i in range(m) for j in range(i, m)}
    return Nfa(tuple(alphabet), m + 1, frozenset([0]), frozenset(range(1, m + 1)), frozenset(trans))


def is_subword(u, w) -> bool:
    """Is ``u`` a scattered subword of ``w``?"""
    it = iter(as_word(w))
    return all(any(c == d for d in it) for c in as_word(u))
