"""
Semidirect products and the two transfers
=========================================

A language recognized by a semidirect product M * T with T in D (idempotents
absorb on the left) is turned into a recognizer of well-formed words, and a
recognizer of well-formed words is evaluated on plain words through a
suffix-truncating semigroup.
"""

from plusone import algebra, languages, separation
from plusone.wellformed import encode, show_wf_word

for inst in algebra.sample_instances():
    sd = inst.sd
    print(f"{inst.name}: |M|={sd.M.size} |T|={sd.T.size} |M*T|={sd.size}")
    print("  action valid:", algebra.validate_action(sd.M, sd.T, sd.act).valid, "| T in D:", algebra.is_in_D(sd.T))

    L = inst.language()
    ctx = separation.reduce(L, languages.complement_plus(L)).ctx
    g = algebra.gamma_construction(sd, inst.delta, inst.F, ctx)
    print("  gamma agrees with the expansion on short well-formed words:", not g.expansion_violations(3))

    ev = algebra.delta_evaluator(g, g.MN, g.bbF, ctx)
    w = "abba"
    print(f"  {w}: encoding {show_wf_word(encode(ctx, w))}")
    print(f"  evaluated {ev.value(w)} == direct {ev.direct(w)}; accepted {ev.in_F(w)} (in L: {L.accepts(w)})")

# A bad action is reported axiom by axiom.
M, T = algebra.two_element_monoid(), algebra.right_zero(2)
bad = algebra.ActionTable.from_function(M, T, lambda t, m: 1)
print("constant action violates:", sorted(algebra.validate_action(M, T, bad).axioms))
