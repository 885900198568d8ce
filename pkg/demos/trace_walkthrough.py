# coding: utf-8

# A walk through one annotated discourse
# =======================================
#
# The bundled corpus carries two short German product reviews.  This
# script runs the centering engine over the first one (a laptop whose
# battery keeps dying) and narrates what the engine sees at each
# utterance: the forward-looking center list, the backward-looking
# center, and the transition that links the utterance to its
# predecessor.

from centerline import Mode, Strategy, run_discourse
from centerline.fixtures import load_fixture_corpus, load_fixture_kb

corpus = load_fixture_corpus()
kb = load_fixture_kb()

battery = corpus[0]
print(f"discourse: {battery.id}  ({len(battery.utterances)} utterances)")
print()

# gold mode means the annotated links drive the chains and the center
# lists; the resolver still runs, but only to be scored against them
trace = run_discourse(battery, kb, Strategy.FUNCTIONAL, Mode.GOLD)

for utterance, state in zip(battery.utterances, trace.states):
    print(f"U{utterance.index}: {utterance.text}")

    # the Cf list, most prominent entity first.  Implicit realizations
    # (entities present only through an elliptical expression) show up
    # without a surface form.
    for element in state.cf:
        surface = element.surface if element.surface is not None else "(implicit)"
        print(f"    Cf  {element.concept:<22} {surface:<14} [{element.status.render()}]")

    cb = state.cb
    if cb is None:
        print("    Cb  -")
    else:
        print(f"    Cb  {cb.concept}")
    print(f"    transition: {state.transition.value}")

    # each anaphoric expression also gets a resolution verdict
    for decision in state.decisions:
        print(
            f"    resolved {decision.expression_id}: "
            f"{decision.predicted} ({decision.outcome.value})"
        )
    print()

# Under the functional ordering every utterance of this review keeps
# talking about the laptop, so the whole trace is CONTINUE transitions:
print("transitions:", [s.transition.value for s in trace.states])
