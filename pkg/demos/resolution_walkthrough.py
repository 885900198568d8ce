# coding: utf-8

# How anaphoric expressions find their antecedents
# =================================================
#
# Resolution always looks at the forward-looking centers of the
# previous utterance, in ranked order.  Which test each candidate has
# to pass depends on the form of the expression being resolved:
#
#   pronouns        agreement in gender and number
#   definite NPs    conceptual generalization, either direction
#   (still unresolved ones)  a bridging relation in the knowledge base
#
# This script replays the three mechanisms on the bundled corpus.

from centerline import (
    Mode,
    Strategy,
    attempt_resolution,
    bridging_relation,
    is_generalization_of,
    run_discourse,
)
from centerline.fixtures import load_fixture_corpus, load_fixture_kb

corpus = load_fixture_corpus()
kb = load_fixture_kb()
battery, nimh = corpus

# --- a pronoun ---------------------------------------------------------
#
# U3 of the battery review says "5 Minuten bevor er sich ausschaltet".
# The candidate list is Cf(U2); "er" is masculine singular, and so is
# "der Rechner", the laptop's realization there.

trace = run_discourse(battery, kb, Strategy.FUNCTIONAL, Mode.GOLD)
er = battery.utterances[3].expressions[1]
assert er.surface == "er"
cf_prev = trace.states[2].cf
print("candidates for 'er':", [e.concept for e in cf_prev])

resolution = attempt_resolution(er, cf_prev, kb)
antecedent, link_type, relation = resolution
print(f"'er' -> {antecedent.concept} ({link_type.value})")
print()

# --- a definite NP under the concept hierarchy -------------------------
#
# "der Rechner" (the computer) in U2 picks up the DELL-316LT from U1
# because COMPUTER generalizes DELL-316LT in the knowledge base.

print("COMPUTER generalizes DELL-316LT:", is_generalization_of(kb, "COMPUTER", "DELL-316LT"))
rechner = battery.utterances[2].expressions[2]
antecedent, link_type, relation = attempt_resolution(rechner, trace.states[1].cf, kb)
print(f"'{rechner.surface}' -> {antecedent.concept} ({link_type.value})")
print()

# --- textual ellipsis over bridging edges ------------------------------
#
# "die Ladezeit" (the charge time) in the accumulator review names no
# previously mentioned concept at all.  The knowledge base knows that a
# charge time is an attribute of a NiMH accumulator, so the expression
# resolves as an ellipsis with that relation.  The relation can also be
# composed: a DISCHARGE belongs to an ACCU, and the ACCU to the laptop,
# so against a list containing only the laptop the discharge still
# bridges, with the composition recorded in the label.

print("direct:  ", bridging_relation(kb, "CHARGE-TIME", "NiMH-ACCU"))
print("composed:", bridging_relation(kb, "DISCHARGE", "DELL-316LT"))

nimh_trace = run_discourse(nimh, kb, Strategy.FUNCTIONAL, Mode.GOLD)
ladezeit = nimh.utterances[2].expressions[0]
antecedent, link_type, relation = attempt_resolution(ladezeit, nimh_trace.states[1].cf, kb)
print(f"'{ladezeit.surface}' -> {antecedent.concept} ({link_type.value}, {relation})")
print()

# --- scoring against the gold annotation --------------------------------
#
# Every resolution attempt is compared with the annotated link.  The
# verdicts distinguish wrong antecedents from links the resolver missed
# or invented, and a wrong antecedent is additionally checked for being
# an ordering error: would some other ranking of the same candidates
# have produced the right one?

for state in nimh_trace.states:
    for decision in state.decisions:
        flag = "  (ordering error)" if decision.ordering_error else ""
        print(
            f"U{state.utterance_index} {decision.expression_id}: "
            f"predicted={decision.predicted} gold={decision.gold} "
            f"-> {decision.outcome.value}{flag}"
        )
