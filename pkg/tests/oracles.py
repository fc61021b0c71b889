"""Independent brute-force oracles, deliberately written without the package.

They share no code with the implementation under test beyond plain data
(tuples, ints, multiplication tables given as nested lists).
"""

from __future__ import annotations

from itertools import product


def words(alphabet, max_len, min_len=1):
    for n in range(min_len, max_len + 1):
        yield from product(alphabet, repeat=n)


def has_factor(w, f) -> bool:
    w, f = tuple(w), tuple(f)
    return any(w[i : i + len(f)] == f for i in range(len(w) - len(f) + 1))


def subwords(w, k):
    """Nonempty scattered subwords of length <= k, by recursion on the first letter."""
    w = tuple(w)
    if not w or k == 0:
        return set()
    rest = subwords(w[1:], k)
    with_first = {(w[0],)} | {(w[0],) + s for s in subwords(w[1:], k - 1)}
    return rest | with_first


def embeds(u, w) -> bool:
    u, w = tuple(u), tuple(w)
    if not u:
        return True
    if not w:
        return False
    return embeds(u[1:], w[1:]) if u[0] == w[0] else embeds(u, w[1:])


def fold(mul, image, w):
    acc = image[w[0]]
    for a in w[1:]:
        acc = mul[acc][image[a]]
    return acc


def encode(mul, image, idempotents, w):
    """Canonical well-formed word straight from the definition.

    Letters are ``(left, value, right)`` with ``None`` for a missing side.
    Positions are 1-based as in the definition; ``idempotents`` is ordered.
    """
    w = tuple(w)
    n = len(mul)
    m = len(w)

    def u(x):
        lo = max(1, x - (n - 1))
        return w[lo - 1 : x]

    dist = []
    for x in range(1, m):
        s = fold(mul, image, u(x))
        cands = [e for e in idempotents if mul[s][e] == s]
        if cands:
            dist.append((x, cands[0]))
    if not dist:
        return [(None, fold(mul, image, w), None)]
    xs = [x for x, _ in dist]
    es = [e for _, e in dist]
    out = [(None, fold(mul, image, w[: xs[0]]), es[0])]
    for i in range(1, len(xs)):
        out.append((es[i - 1], fold(mul, image, w[xs[i - 1] : xs[i]]), es[i]))
    out.append((es[-1], fold(mul, image, w[xs[-1] :]), None))
    return out


def naive_sigma(u, v, n, k, enriched):
    """The alternation game without memoization, pruning or move ordering."""
    u, v = tuple(u), tuple(v)

    def consistent(pairs):
        for x, x2 in pairs:
            if u[x] != v[x2]:
                return False
            if enriched and ((x == 0) != (x2 == 0) or (x == len(u) - 1) != (x2 == len(v) - 1)):
                return False
        for (x, x2), (y, y2) in product(pairs, repeat=2):
            if (x < y) != (x2 < y2) or (x == y) != (x2 == y2):
                return False
            if enriched and (y == x + 1) != (y2 == x2 + 1):
                return False
        return True

    def win(pairs, c, active, r):
        if r == 0:
            return True
        for side in (0, 1):
            if side != active and c >= n - 1:
                continue
            c2 = c if side == active else c + 1
            mine, other = (u, v) if side == 0 else (v, u)
            for y in range(len(mine)):
                if not any(
                    consistent(pairs + [(y, y2) if side == 0 else (y2, y)])
                    and win(pairs + [(y, y2) if side == 0 else (y2, y)], c2, side, r - 1)
                    for y2 in range(len(other))
                ):
                    return False
        return True

    return win([], 0, 0, k)


def naive_fo2(u, v, k, enriched):
    u, v = tuple(u), tuple(v)
    if u[0] != v[0]:
        return False

    def rel(x, y):
        d = y - x
        return (d > 0) - (d < 0), (abs(d) == 1 and enriched)

    def win(x, x2, r):
        if r == 0:
            return True
        for y in range(len(u)):
            if not any(v[y2] == u[y] and rel(x2, y2) == rel(x, y) and win(y, y2, r - 1) for y2 in range(len(v))):
                return False
        for y2 in range(len(v)):
            if not any(u[y] == v[y2] and rel(x, y) == rel(x2, y2) and win(y, y2, r - 1) for y in range(len(u))):
                return False
        return True

    return win(0, 0, k)


def transformations(delta, alphabet_size, max_len):
    """Distinct state maps of nonempty words up to ``max_len``."""
    n = len(delta)
    seen = set()
    layer = {tuple(delta[q][i] for q in range(n)) for i in range(alphabet_size)}
    seen |= layer
    for _ in range(max_len - 1):
        layer = {tuple(delta[t[q]][i] for q in range(n)) for t in layer for i in range(alphabet_size)}
        layer -= seen
        if not layer:
            break
        seen |= layer
    return seen
