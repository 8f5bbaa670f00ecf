"""
Words with a given letter first or third
========================================

The bundled lexicon has twice as many words with ``r`` in third position as
in first. Boosting the guess weight of first-position words makes them
easier to retrieve, and the estimated frequency ordering flips.
"""

from qavail import letter_position_oracle, run_letter_trials, sample_lexicon

lex = sample_lexicon()
first = letter_position_oracle(lex, "r", 1)
third = letter_position_oracle(lex, "r", 3)
print(f"{len(lex)} words: {first.t} with r first, {third.t} with r third")

for boost in (1.0, 4.0):
    trials = run_letter_trials(lex, "r", boost=boost, M=256, budget=60, seed=0, trials=100)
    g1, g3 = trials[0].per_group
    judged_first = sum(r.per_group[0].a_hat > r.per_group[1].a_hat for r in trials)
    print(
        f"boost {boost}: a = ({g1.a:.4f}, {g3.a:.4f}), speed = ({g1.speed}, {g3.speed}), "
        f"recalled = ({g1.recalled}, {g3.recalled}); first judged more frequent in {judged_first}/100"
    )
