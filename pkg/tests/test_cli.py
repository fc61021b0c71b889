import sys
import time
from pathlib import Path

import pytest

from plusone import (
    algebra,
    automata,
    cli,
    efgames,
    languages,
    selftest,
    semigroup,
    separation,
    wellformed,
)
from plusone.automata import dfa_from_text

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(*argv):
    return cli.dispatch([str(a) for a in argv])


def keys(report):
    return {line.split()[0]: line.split()[1:] for line in report.lines}


def test_separate_emits_certified_separator(tmp_path):
    out = tmp_path / "sep.dfa"
    r = run("separate", "--logic", "sigma1+", DATA / "contains_aa.dfa", DATA / "not_contains_aa.dfa", "--emit-separator", out)
    assert r.code == 0
    assert r.lines[0] == "VERDICT SEPARABLE"
    assert "CHECK includes_L true" in r.lines and "CHECK disjoint_Lp true" in r.lines
    sep = dfa_from_text(out.read_text())
    L = dfa_from_text((DATA / "contains_aa.dfa").read_text())
    Lp = dfa_from_text((DATA / "not_contains_aa.dfa").read_text())
    assert automata.includes(sep, L) and automata.is_empty(automata.intersect(sep, Lp))


def test_separate_not_separable_prints_witnesses():
    r = run("separate", "--logic", "sigma1+", DATA / "even_a.dfa", DATA / "odd_a.dfa", "--witness-k", 2)
    assert r.code == 1
    k = keys(r)
    assert k["VERDICT"] == ["NOT_SEPARABLE"] and k["K"] == ["2"]
    u, up = k["WITNESS_L"][0], k["WITNESS_LP"][0]
    assert len(u) % 2 == 0 and len(up) % 2 == 1
    assert efgames.sigma_preorder(u, up, 1, 2, True, max_len=max(len(u), len(up)))


def test_separate_sigma1_lists_patterns():
    r = run("separate", "--logic", "sigma1", DATA / "up_ab.dfa", DATA / "just_b.dfa")
    assert r.code == 0 and "PATTERN ab" in r.lines


def test_separate_bsigma1_profile_diagnostic():
    r = run("separate", "--logic", "bsigma1", DATA / "even_a.dfa", DATA / "odd_a.dfa", "--witness-k", 2)
    assert r.code == 1 and r.lines[0] == "VERDICT NOT_SEPARABLE"


@pytest.mark.parametrize(
    "game,n,k,u,v,want",
    [
        ("sigma", 1, 2, "ab", "aabb", "true"),
        # the enriched game also pins first and last positions
        ("sigmap", 1, 2, "ab", "aabb", "false"),
        ("sigmap", 1, 1, "ab", "aabb", "true"),
        ("fo2", 1, 1, "a", "aa", "false"),
        ("fo2p", 1, 2, "aaa", "aaaa", "false"),
        ("bsigma", 1, 2, "ab", "aabb", "false"),
        ("bsigmap", 2, 2, "ab", "ab", "true"),
        ("profile", 1, 2, "ab", "aabb", "true"),
        ("sigma", 2, 2, "a,b", "a,a,b", "false"),
    ],
)
def test_ef(game, n, k, u, v, want):
    r = run("ef", "--game", game, "-n", n, "-k", k, u, v)
    assert r.lines == [f"RESULT {want}"]
    assert r.code == (0 if want == "true" else 1)


def test_ef_bounds_are_flags():
    assert run("ef", "--game", "sigma", "-k", 1, "a" * 20, "a").code == 2
    assert run("ef", "--game", "sigma", "-k", 1, "a" * 20, "a", "--max-len", 20).code == 0


def test_member():
    r = run("member", "--logic", "sigma1", DATA / "even_a.dfa")
    assert r.lines == ["RESULT false"] and r.code == 1
    assert run("member", "--logic", "sigma1+", DATA / "contains_aa.dfa").lines == ["RESULT true"]
    assert run("member", "--logic", "sigma1+", DATA / "even_ab.dfa").code == 1
    assert run("member", "--logic", "transfer-sigma1", DATA / "up_ab.dfa").code in (0, 1)


def test_dfa_verbs(tmp_path):
    r = run("dfa", "check", DATA / "even_a.dfa")
    assert keys(r)["SHORTEST"] == ["aa"] and keys(r)["MINIMAL_STATES"] == ["3"]
    assert run("dfa", "minimize", DATA / "even_a.dfa").lines == (DATA / "even_a.dfa").read_text().splitlines()
    assert run("dfa", "enumerate", DATA / "even_a.dfa", "--max-len", 4).lines == ["WORD aa", "WORD aaaa", "COUNT 2"]
    assert run("dfa", "accepts", DATA / "contains_aa.dfa", "baab").lines == ["RESULT true"]
    r = run("dfa", "includes", DATA / "even_ab.dfa", DATA / "contains_aa.dfa")
    assert r.code == 1 and "COUNTEREXAMPLE aaa" in r.lines
    out = tmp_path / "c.dfa"
    r = run("dfa", "complement", DATA / "contains_aa.dfa", "--out", out)
    c = dfa_from_text(out.read_text())
    assert not c.accepts("aab") and c.accepts("ab")
    both = run("dfa", "intersect", DATA / "contains_aa.dfa", DATA / "even_ab.dfa")
    assert dfa_from_text("\n".join(both.lines)).accepts("aa")
    either = run("dfa", "union", DATA / "starts_a.dfa", DATA / "starts_b.dfa")
    assert automata.equivalent(dfa_from_text("\n".join(either.lines)), languages.nonempty("ab"))


def test_semigroup_verb(tmp_path):
    out = tmp_path / "S.txt"
    r = run("semigroup", DATA / "even_a.dfa", "--identities", "aperiodic,x^w x^w = x^w", "--out", out)
    k = keys(r)
    assert k["SIZE"] == ["2"] and k["OMEGA"] == ["2"] and k["IDEMPOTENTS"] == ["1"]
    assert "IDENTITY aperiodic false" in r.lines and "COUNTEREXAMPLE aperiodic x=0" in r.lines
    assert "IDENTITY x^w x^w = x^w true" in r.lines
    assert r.code == 1
    assert semigroup.parse_semigroup(out.read_text()).size == 2
    assert run("semigroup", DATA / "up_ab.dfa", "--ordered").code == 0
    assert run("semigroup", DATA / "even_a.dfa", "--identities", "nonsense").code == 2


def test_reduce_canonical_expand_round_trip(tmp_path):
    ctx_dir = tmp_path / "ctx"
    r = run("reduce", DATA / "even_a.dfa", DATA / "odd_a.dfa", "--out", ctx_dir)
    assert keys(r)["WF_LETTERS"] == ["8"] and "REP 1 aa" in r.lines
    assert {p.name for p in ctx_dir.iterdir()} == {"semigroup.txt", "morphism.txt", "wL.dfa", "wLp.dfa"}
    r = run("canonical", DATA / "even_a.dfa", DATA / "odd_a.dfa", "aaa")
    k = keys(r)
    assert k["BETA"] == k["IMAGE"]
    word = k["CANONICAL"][0]
    r = run("expand", ctx_dir, word, "-i", 1)
    assert keys(r)["WELL_FORMED"] == ["true"] and keys(r)["BETA"] == keys(r)["IMAGE"]
    wL = dfa_from_text((ctx_dir / "wLp.dfa").read_text())
    assert wL.accepts(tuple(word.split(",")))
    bad = run("expand", ctx_dir, "last:1:0", "-i", 1)
    assert bad.lines == ["WELL_FORMED false"] and bad.code == 1


def test_algebra_verify(tmp_path):
    r = run("algebra-verify", "gamma")
    assert r.code == 0 and sum(line.startswith("INSTANCE") for line in r.lines) == 3
    r = run("algebra-verify", "delta", "contains-b", "--max-len", 5)
    assert r.code == 0 and all("PASS" in line for line in r.lines if line.startswith("CHECK"))
    inst = tmp_path / "mine"
    inst.mkdir()
    (inst / "M.txt").write_text("elements 2\nidentity 0\nmul 0 : 0 1\nmul 1 : 1 1\n")
    (inst / "T.txt").write_text("elements 2\nmul 0 : 0 1\nmul 1 : 0 1\n")
    (inst / "action.txt").write_text("".join(f"act {t} {m} {m}\n" for t in ("0", "1", "unit") for m in (0, 1)))
    (inst / "delta.txt").write_text("letter a 0 0\nletter b 1 1\n")
    (inst / "F.txt").write_text("accept 1 0\naccept 1 1\n")
    r = run("algebra-verify", "delta", inst)
    assert r.code == 0 and r.lines[0] == "INSTANCE mine size=4"
    assert run("algebra-verify", "gamma", tmp_path / "missing").code == 2


def test_selftest_default_bounds_pass():
    r = run("selftest")
    assert r.code == 0 and r.lines[-1] == "RESULT PASS"
    assert len([line for line in r.lines if line.startswith("SUITE")]) == len(selftest.SUITES)


def test_selftest_mutation_is_caught():
    r = run("selftest", "--max-len", 4, "--mutate", "beta")
    assert r.code == 1
    failing = [line.split()[1] for line in r.lines if line.startswith("SUITE") and " FAIL " in line]
    assert failing == ["encoding"]


def test_selftest_small_bounds_are_fast():
    start = time.perf_counter()
    assert run("selftest", "--max-len", 4).code == 0
    assert time.perf_counter() - start < 10


def test_reports_are_reproducible():
    argv = ["separate", "--logic", "sigma1+", DATA / "even_a.dfa", DATA / "odd_a.dfa", "--witness-k", 1]
    assert run(*argv).render() == run(*argv).render()
    assert run("selftest", "--max-len", 3, "--seed", 7).render() == run("selftest", "--max-len", 3, "--seed", 7).render()


def test_errors_exit_2(tmp_path):
    broken = tmp_path / "broken.dfa"
    broken.write_text("alphabet a\nstates 2\ninitial 0\naccepting 1\ntrans 0 a 1\n")
    r = run("dfa", "check", broken)
    assert r.code == 2 and r.lines[0].startswith("ERROR")
    assert run("dfa", "check", tmp_path / "nope.dfa").code == 2
    assert run("separate", "--logic", "sigma1", DATA / "even_a.dfa", DATA / "contains_aa.dfa").code == 2
    assert run("frobnicate").code == 2
    assert run("dfa", "intersect", DATA / "even_a.dfa").code == 2


def test_main_writes_report(capsys):
    assert cli.main(["ef", "--game", "fo2", "-k", "1", "ab", "ab"]) == 0
    assert capsys.readouterr().out == "RESULT true\n"


def test_parse_word():
    assert cli.parse_word("abc") == ("a", "b", "c")
    assert cli.parse_word("first:0:1,last:1:1") == ("first:0:1", "last:1:1")


# every operation of every module, as exposed in its public API
OPERATIONS = [
    automata.dfa_from_text, automata.dfa_to_text, automata.complement, automata.intersect,
    automata.union, automata.is_empty_with_witness, automata.includes, automata.accepts,
    automata.enumerate_accepted, automata.determinize_minimize, automata.upward_closure,
    semigroup.transition_semigroup, semigroup.product_recognizer, semigroup.idempotents_and_omega,
    semigroup.syntactic_ordered_semigroup, semigroup.check_identity,
    wellformed.wf_alphabet, wellformed.beta_eval, wellformed.is_well_formed, wellformed.wf_language_dfa,
    wellformed.distinguished, wellformed.canonical_wf, wellformed.representatives, wellformed.expand,
    wellformed.preimage_dfa,
    separation.reduce, separation.sigma1_separates, separation.sigma1_plus_separates,
    separation.membership_sigma1, separation.membership_sigma1_plus, separation.transfer_membership,
    separation.minimal_patterns, separation.witness_pairs, separation.bsigma1_profile_check,
    efgames.fo2_equiv, efgames.sigma_preorder, efgames.bsigma_equiv, efgames.subword_profile_preorder,
    algebra.validate_action, algebra.semidirect, algebra.is_in_D, algebra.antichain_monoid,
    algebra.gamma_construction, algebra.delta_evaluator,
    algebra.DeltaEvaluator.evaluate, algebra.DeltaEvaluator.in_F, algebra.DeltaEvaluator.point,
    cli.dispatch, selftest.run,
]


def test_every_operation_is_reachable_from_a_verb(tmp_path):
    battery = [
        ["dfa", "check", DATA / "even_a.dfa"],
        ["dfa", "minimize", DATA / "contains_aa.dfa"],
        ["dfa", "accepts", DATA / "contains_aa.dfa", "aab"],
        ["dfa", "enumerate", DATA / "even_a.dfa"],
        ["dfa", "complement", DATA / "contains_aa.dfa"],
        ["dfa", "intersect", DATA / "contains_aa.dfa", DATA / "even_ab.dfa"],
        ["dfa", "union", DATA / "contains_aa.dfa", DATA / "even_ab.dfa"],
        ["dfa", "includes", DATA / "even_ab.dfa", DATA / "contains_aa.dfa"],
        ["semigroup", DATA / "contains_aa.dfa", "--identities", "aperiodic,D", "--ordered"],
        ["reduce", DATA / "even_a.dfa", DATA / "odd_a.dfa", "--out", tmp_path / "ctx"],
        ["separate", "--logic", "sigma1", DATA / "up_ab.dfa", DATA / "just_b.dfa"],
        ["separate", "--logic", "sigma1+", DATA / "even_a.dfa", DATA / "odd_a.dfa"],
        ["separate", "--logic", "bsigma1", DATA / "even_a.dfa", DATA / "odd_a.dfa"],
        ["member", "--logic", "sigma1+", DATA / "contains_aa.dfa"],
        ["member", "--logic", "transfer-sigma1", DATA / "contains_aa.dfa"],
        ["ef", "--game", "fo2", "-k", 2, "ab", "aabb"],
        ["ef", "--game", "bsigma", "-k", 2, "ab", "aabb"],
        ["ef", "--game", "profile", "-k", 2, "ab", "aabb"],
        ["canonical", DATA / "contains_aa.dfa", DATA / "not_contains_aa.dfa", "abaab"],
        ["expand", tmp_path / "ctx", "first:0:1,last:1:1", "-i", 2],
        ["algebra-verify", "delta", "contains-b", "--max-len", 4],
        ["selftest", "--max-len", 3, "--max-k", 1],
    ]
    called = set()

    def trace(frame, event, arg):
        if event == "call":
            called.add(frame.f_code)

    sys.setprofile(trace)
    try:
        codes = [run(*argv).code for argv in battery]
    finally:
        sys.setprofile(None)
    assert 2 not in codes
    missing = [f"{op.__module__}.{op.__qualname__}" for op in OPERATIONS if op.__code__ not in called]
    assert missing == []
