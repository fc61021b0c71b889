"""Command-line front end.

Reports are ``KEY value`` lines on standard output.  Exit status is 0 for a
positive answer, 1 for a negative one and 2 for bad input or usage, in which
case an ``ERROR`` line explains why.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import algebra, automata, efgames, selftest, separation, wellformed
from .automata import dfa_from_text, dfa_to_text, show_word
from .errors import MalformedInput, PlusOneError
from .semigroup import (
    PRESETS,
    FiniteSemigroup,
    IdentitySpec,
    RecognizingMorphism,
    check_identity,
    idempotents_and_omega,
    parse_semigroup,
    product_recognizer,
    semigroup_to_text,
    syntactic_ordered_semigroup,
    transition_semigroup,
)
from .wellformed import WfContext


class Report:
    def __init__(self):
        self.lines: list = []
        self.code = 0

    def add(self, key: str, *values):
        self.lines.append(" ".join([key, *(str(v) for v in values)]))

    def render(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def parse_word(text: str) -> tuple:
    """Comma-separated tokens, or one token per character."""
    if "," in text:
        return tuple(t for t in text.split(",") if t)
    return tuple(text)


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _read_dfa(path) -> automata.Dfa:
    return dfa_from_text(Path(path).read_bytes())


# ---------------------------------------------------------------------------
# context directories


def write_context(ctx: WfContext, out: Path):
    out.mkdir(parents=True, exist_ok=True)
    (out / "semigroup.txt").write_text(semigroup_to_text(ctx.semigroup))
    alpha = ctx.morphism
    lines = ["alphabet " + " ".join(alpha.alphabet)]
    lines += [f"letter {a} {alpha.letter_image[a]}" for a in alpha.alphabet]
    for name, acc in alpha.accepting.items():
        lines.append(f"accepting {name} " + " ".join(str(s) for s in sorted(acc)))
    lines += [f"rep {s} {','.join(w)}" for s, w in sorted(wellformed.representatives(ctx).items())]
    lines.append("idempotents " + " ".join(str(e) for e in ctx.idempotents))
    (out / "morphism.txt").write_text("\n".join(lines) + "\n")


def read_context(path) -> WfContext:
    path = Path(path)
    S = parse_semigroup((path / "semigroup.txt").read_text())
    alphabet = ()
    letters, accepting, reps = {}, {}, {}
    order = None
    for raw in (path / "morphism.txt").read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "alphabet":
            alphabet = tuple(rest)
        elif head == "letter":
            letters[rest[0]] = int(rest[1])
        elif head == "accepting":
            accepting[rest[0]] = frozenset(int(x) for x in rest[1:])
        elif head == "rep":
            reps[int(rest[0])] = tuple(t for t in rest[1].split(",") if t)
        elif head == "idempotents":
            order = [int(x) for x in rest]
        else:
            raise MalformedInput(f"unknown keyword {head!r} in morphism file")
    if sorted(reps) != list(range(S.size)):
        raise MalformedInput("every element needs a representative word")
    alpha = RecognizingMorphism(S, alphabet, letters, accepting, tuple(reps[s] for s in range(S.size)))
    for s, w in enumerate(alpha.witnesses):
        if alpha.image(w) != s:
            raise MalformedInput(f"representative {show_word(w)} does not map to {s}")
    return WfContext(alpha, order)


# ---------------------------------------------------------------------------
# algebra inputs


def read_action(text: str, M: FiniteSemigroup, T: FiniteSemigroup) -> algebra.ActionTable:
    table = np.full((T.size + 1, M.size), -1, dtype=np.int64)
    table[T.size] = np.arange(M.size)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head != "act" or len(rest) != 3:
            raise MalformedInput(f"expected 'act <t> <m> <m2>', got {raw!r}")
        t = T.size if rest[0] == "unit" else int(rest[0])
        table[t, int(rest[1])] = int(rest[2])
    if (table < 0).any():
        raise MalformedInput("action table incomplete")
    return algebra.ActionTable(table)


def read_instance(path) -> algebra.AlgebraInstance:
    """A directory with M.txt, T.txt, action.txt, delta.txt and F.txt."""
    path = Path(path)
    M = parse_semigroup((path / "M.txt").read_text())
    T = parse_semigroup((path / "T.txt").read_text())
    act = read_action((path / "action.txt").read_text(), M, T)
    sd = algebra.semidirect(M, T, act)
    delta, F = {}, set()
    for raw in (path / "delta.txt").read_text().splitlines():
        parts = raw.split("#", 1)[0].split()
        if parts:
            if parts[0] != "letter" or len(parts) != 4:
                raise MalformedInput(f"expected 'letter <a> <m> <t>', got {raw!r}")
            delta[parts[1]] = sd.index(int(parts[2]), int(parts[3]))
    for raw in (path / "F.txt").read_text().splitlines():
        parts = raw.split("#", 1)[0].split()
        if parts:
            if parts[0] != "accept" or len(parts) != 3:
                raise MalformedInput(f"expected 'accept <m> <t>', got {raw!r}")
            F.add(sd.index(int(parts[1]), int(parts[2])))
    return algebra.AlgebraInstance(path.name, sd, tuple(delta), delta, frozenset(F))


def _instances(inputs) -> list:
    builtin = {inst.name: inst for inst in algebra.sample_instances()}
    if not inputs or inputs == ["builtin"]:
        return list(builtin.values())
    out = []
    for item in inputs:
        if item in builtin:
            out.append(builtin[item])
        elif Path(item).is_dir():
            out.append(read_instance(item))
        else:
            raise MalformedInput(f"{item!r} is neither a builtin instance ({', '.join(builtin)}) nor a directory")
    return out


# ---------------------------------------------------------------------------
# verbs


def cmd_dfa(args, rep: Report):
    d = _read_dfa(args.file)
    if args.action == "check":
        rep.add("STATES", d.n_states)
        rep.add("ALPHABET", *d.alphabet)
        rep.add("EPSILON", _flag(d.initial in d.accepting))
        rep.add("MINIMAL_STATES", automata.minimize(d).n_states)
        w = automata.is_empty_with_witness(d)
        rep.add("EMPTY", _flag(w is None))
        if w is not None:
            rep.add("SHORTEST", show_word(w) if w else "ε")
        rep.code = 0 if w is not None else 1
        return
    if args.action == "accepts":
        if args.other is None:
            raise MalformedInput("'dfa accepts' needs a word")
        res = automata.accepts(d, parse_word(args.other))
        rep.add("RESULT", _flag(res))
        rep.code = 0 if res else 1
        return
    if args.action == "enumerate":
        words = automata.enumerate_accepted(d, args.max_len)
        for w in words:
            rep.add("WORD", show_word(w) if w else "ε")
        rep.add("COUNT", len(words))
        return
    if args.action in ("complement", "intersect", "union", "includes"):
        other = _read_dfa(args.other) if args.other else None
        if args.action != "complement" and other is None:
            raise MalformedInput(f"'dfa {args.action}' needs a second automaton")
        if args.action == "includes":
            w = automata.inclusion_counterexample(d, other)
            rep.add("RESULT", _flag(w is None))
            if w is not None:
                rep.add("COUNTEREXAMPLE", show_word(w) if w else "ε")
            rep.code = 0 if w is None else 1
            return
        if args.action == "complement":
            result = automata.complement(d)
        elif args.action == "intersect":
            result = automata.intersect(d, other)
        else:
            result = automata.union(d, other)
        _emit_dfa(automata.minimize(result), args.out, rep)
        return
    _emit_dfa(automata.determinize_minimize(d), args.out, rep)


def _emit_dfa(d, out, rep: Report):
    text = dfa_to_text(d)
    if out:
        Path(out).write_text(text)
        rep.add("STATES", d.n_states)
        rep.add("OUTPUT", out)
    else:
        rep.lines.extend(text.rstrip("\n").splitlines())


def cmd_semigroup(args, rep: Report):
    d = _read_dfa(args.file)
    if args.ordered:
        S, alpha = syntactic_ordered_semigroup(d)
    else:
        S, alpha = transition_semigroup(d)
    E, omega = idempotents_and_omega(S)
    rep.add("SIZE", S.size)
    rep.add("IDEMPOTENTS", *sorted(E))
    rep.add("OMEGA", omega)
    for s, w in enumerate(alpha.witnesses):
        rep.add("ELEMENT", s, show_word(w))
    rep.add("ACCEPTING", *sorted(alpha.accepting["L"]))
    if args.out:
        Path(args.out).write_text(semigroup_to_text(S))
        rep.add("OUTPUT", args.out)
    names = [n for n in (args.identities or "").split(",") if n]
    ok = True
    for name in names:
        if name in PRESETS:
            spec = name
        elif "=" in name:
            spec = IdentitySpec.parse(name)
        else:
            raise MalformedInput(f"unknown identity preset {name!r}; known: {', '.join(PRESETS)}")
        res = check_identity(S, spec)
        rep.add("IDENTITY", name, _flag(res.holds))
        if not res.holds:
            ok = False
            rep.add("COUNTEREXAMPLE", name, *(f"{k}={v}" for k, v in res.counterexample.items()))
    rep.code = 0 if ok else 1


def cmd_reduce(args, rep: Report):
    L, Lp = _read_dfa(args.L), _read_dfa(args.Lp)
    red = separation.reduce(L, Lp)
    ctx = red.ctx
    rep.add("SIZE", ctx.size)
    rep.add("IDEMPOTENTS", *ctx.idempotents)
    rep.add("WF_LETTERS", len(wellformed.wf_alphabet(ctx)))
    rep.add("WL_STATES", red.wL.n_states)
    rep.add("WLP_STATES", red.wLp.n_states)
    for s, w in sorted(wellformed.representatives(ctx).items()):
        rep.add("REP", s, show_word(w))
    if args.out:
        out = Path(args.out)
        write_context(ctx, out)
        (out / "wL.dfa").write_text(dfa_to_text(red.wL))
        (out / "wLp.dfa").write_text(dfa_to_text(red.wLp))
        rep.add("OUTPUT", out)


def cmd_separate(args, rep: Report):
    L, Lp = _read_dfa(args.L), _read_dfa(args.Lp)
    if args.logic == "bsigma1":
        k = args.witness_k
        common = separation.bsigma1_profile_check(L, Lp, k)
        rep.add("VERDICT", "NOT_SEPARABLE" if common else "SEPARABLE")
        rep.add("LOGIC", "bsigma1")
        rep.add("K", k)
        rep.code = 1 if common else 0
        return
    if args.logic == "sigma1":
        v = separation.sigma1_separates(L, Lp)
    else:
        v = separation.sigma1_plus_separates(L, Lp)
    rep.add("VERDICT", "SEPARABLE" if v.is_separable else "NOT_SEPARABLE")
    rep.add("LOGIC", v.logic)
    if v.is_separable:
        if args.emit_separator:
            Path(args.emit_separator).write_text(dfa_to_text(v.separator))
            rep.add("SEPARATOR", args.emit_separator)
        rep.add("STATES", v.separator.n_states)
        for key, val in v.certificate.items():
            rep.add("CHECK", key, _flag(val))
        if args.logic == "sigma1":
            for p in separation.minimal_patterns(v.separator):
                rep.add("PATTERN", show_word(p))
        rep.code = 0
        return
    u, up = separation.witness_pairs(v, args.witness_k)
    rep.add("WITNESS_L", show_word(u))
    rep.add("WITNESS_LP", show_word(up))
    rep.add("K", args.witness_k)
    rep.code = 1


def cmd_member(args, rep: Report):
    L = _read_dfa(args.L)
    if args.logic == "sigma1":
        res = separation.membership_sigma1(L)
    elif args.logic == "sigma1+":
        res = separation.membership_sigma1_plus(L)
    else:
        # diagnostic only: the order-only base fragment cannot define well-formedness
        res = separation.transfer_membership(L, separation.membership_sigma1)
    rep.add("RESULT", _flag(res))
    rep.code = 0 if res else 1


def cmd_ef(args, rep: Report):
    u, v = parse_word(args.u), parse_word(args.v)
    bounds = dict(max_len=args.max_len, max_k=args.max_k)
    enriched = args.game.endswith("p")
    if args.game in ("fo2", "fo2p"):
        res = efgames.fo2_equiv(u, v, args.k, enriched, **bounds)
    elif args.game in ("sigma", "sigmap"):
        res = efgames.sigma_preorder(u, v, args.n, args.k, enriched, **bounds)
    elif args.game in ("bsigma", "bsigmap"):
        res = efgames.bsigma_equiv(u, v, args.n, args.k, enriched, **bounds)
    else:
        res = efgames.subword_profile_preorder(u, v, args.k, max_k=args.max_k)
    rep.add("RESULT", _flag(res))
    rep.code = 0 if res else 1


def cmd_canonical(args, rep: Report):
    L, Lp = _read_dfa(args.L), _read_dfa(args.Lp)
    _, alpha = product_recognizer(L, Lp)
    ctx = WfContext(alpha)
    w = parse_word(args.word)
    letters, positions, idems = wellformed.canonical_wf(ctx, w)
    rep.add("CANONICAL", wellformed.show_wf_word(letters))
    rep.add("POSITIONS", *positions)
    rep.add("IDEMPOTENTS", *idems)
    marks = [wellformed.distinguished(ctx, w, x) for x in range(1, len(w) + 1)]
    rep.add("DISTINGUISHED", *("-" if e is None else e for e in marks))
    rep.add("BETA", wellformed.beta_eval(ctx, letters))
    rep.add("IMAGE", ctx.image(w))


def cmd_expand(args, rep: Report):
    ctx = read_context(args.ctx)
    word = wellformed.parse_wf_word(args.wfword)
    for letter in word:
        ctx.validate(letter)
    if not wellformed.is_well_formed(word):
        rep.add("WELL_FORMED", "false")
        rep.code = 1
        return
    u = wellformed.expand(ctx, word, args.i)
    rep.add("WELL_FORMED", "true")
    rep.add("WORD", show_word(u))
    rep.add("BETA", wellformed.beta_eval(ctx, word))
    rep.add("IMAGE", ctx.image(u))


def cmd_algebra(args, rep: Report):
    ok = True
    keys = {
        "gamma": ("action", "associative", "in-D", "gamma-expansion", "idempotent-law"),
        "delta": ("delta-prefix-sum", "label-locality", "end-to-end"),
    }[args.which]
    for inst in _instances(args.inputs):
        checks = selftest.algebra_checks(inst, args.max_len)
        rep.add("INSTANCE", inst.name, f"size={inst.sd.size}")
        for key in keys:
            count = checks[key]
            ok &= count == 0
            rep.add("CHECK", key, "PASS" if count == 0 else "FAIL", count)
    rep.code = 0 if ok else 1


def cmd_selftest(args, rep: Report):
    bounds = selftest.Bounds(args.max_len, args.max_k, args.seed)
    results = selftest.run(bounds, mutate=args.mutate)
    for r in results:
        rep.lines.append(r.line())
    passed = all(r.passed for r in results)
    rep.add("RESULT", "PASS" if passed else "FAIL")
    rep.code = 0 if passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plusone", description="Separation and membership for successor logics on words.")
    sub = p.add_subparsers(dest="verb", required=True)

    d = sub.add_parser("dfa", help="inspect or transform an automaton")
    d.add_argument("action", choices=["check", "minimize", "accepts", "enumerate", "complement", "intersect", "union", "includes"])
    d.add_argument("file")
    d.add_argument("other", nargs="?", help="second automaton, or the word for accepts")
    d.add_argument("--out")
    d.add_argument("--max-len", type=int, default=6)
    d.set_defaults(fn=cmd_dfa)

    s = sub.add_parser("semigroup", help="transition semigroup of an automaton")
    s.add_argument("file")
    s.add_argument("--identities", help="comma-separated presets (" + ",".join(PRESETS) + ") or equations such as 'x^w y = x^w'")
    s.add_argument("--ordered", action="store_true", help="minimize and attach the syntactic order")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_semigroup)

    r = sub.add_parser("reduce", help="well-formed languages of a pair")
    r.add_argument("L")
    r.add_argument("Lp")
    r.add_argument("--out")
    r.set_defaults(fn=cmd_reduce)

    sp = sub.add_parser("separate", help="decide separability")
    sp.add_argument("--logic", choices=["sigma1", "sigma1+", "bsigma1"], required=True)
    sp.add_argument("L")
    sp.add_argument("Lp")
    sp.add_argument("--emit-separator")
    sp.add_argument("--witness-k", type=int, default=1)
    sp.set_defaults(fn=cmd_separate)

    m = sub.add_parser("member", help="decide membership")
    m.add_argument("--logic", choices=["sigma1", "sigma1+", "transfer-sigma1"], required=True)
    m.add_argument("L")
    m.set_defaults(fn=cmd_member)

    e = sub.add_parser("ef", help="solve a game")
    e.add_argument("--game", choices=["fo2", "fo2p", "sigma", "sigmap", "bsigma", "bsigmap", "profile"], required=True)
    e.add_argument("-n", type=int, default=1)
    e.add_argument("-k", type=int, required=True)
    e.add_argument("u")
    e.add_argument("v")
    e.add_argument("--max-len", type=int, default=efgames.MAX_LEN)
    e.add_argument("--max-k", type=int, default=efgames.MAX_K)
    e.set_defaults(fn=cmd_ef)

    c = sub.add_parser("canonical", help="canonical well-formed word")
    c.add_argument("L")
    c.add_argument("Lp")
    c.add_argument("word")
    c.set_defaults(fn=cmd_canonical)

    x = sub.add_parser("expand", help="expand a well-formed word")
    x.add_argument("ctx")
    x.add_argument("wfword")
    x.add_argument("-i", type=int, required=True)
    x.set_defaults(fn=cmd_expand)

    a = sub.add_parser("algebra-verify", help="check the algebraic constructions")
    a.add_argument("which", choices=["gamma", "delta"])
    a.add_argument("inputs", nargs="*", help="'builtin', instance names, or directories")
    a.add_argument("--max-len", type=int, default=8)
    a.set_defaults(fn=cmd_algebra)

    t = sub.add_parser("selftest", help="run the invariant suites")
    t.add_argument("--max-len", type=int, default=8)
    t.add_argument("--max-k", type=int, default=2)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--mutate", choices=["beta"], help=argparse.SUPPRESS)
    t.set_defaults(fn=cmd_selftest)
    return p


def dispatch(argv) -> Report:
    rep = Report()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        rep.code = 0 if exc.code == 0 else 2
        if rep.code:
            rep.add("ERROR", "invalid arguments")
        return rep
    try:
        args.fn(args, rep)
    except (PlusOneError, OSError, KeyError, IndexError) as exc:
        rep.lines = [f"ERROR {exc}"]
        rep.code = 2
    return rep


def main(argv=None) -> int:
    rep = dispatch(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(rep.render())
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
