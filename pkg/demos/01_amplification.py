"""
Amplifying a weighted guess
===========================

A guess state puts probability ``a`` on the good items. Each application of
the amplification step rotates the state by ``2*theta`` where
``sin(theta)**2 == a``, so after ``m`` steps the good probability is
``sin((2m+1)*theta)**2``.
"""

import math

import numpy as np

from qavail import GuessPrep, Oracle, apply_q, good_probability, prepare, schedule

# One good item out of 64 under a uniform guess.
n = 64
prep = GuessPrep.uniform()
oracle = Oracle(n, {17})
state = prepare(prep, n)
a = good_probability(state, oracle)
print(f"a = {a:.5f}")

# Watch the probability climb and then overshoot.
sched = schedule(a)
for m in range(2 * sched.m + 2):
    marker = "  <- schedule" if m == sched.m else ""
    print(f"m={m:2d}  p_good={good_probability(state, oracle):.4f}{marker}")
    state = apply_q(state, prep, oracle)

# The number of steps grows like pi/4 * sqrt(1/a).
for k in (6, 10, 14):
    s = schedule(1 / 2**k)
    print(f"N=2^{k:<2d} m={s.m:4d}  m*sqrt(a)={s.m * math.sqrt(1 / 2**k):.4f}")

# A skewed guess changes a, and with it the number of steps needed.
w = np.ones(n)
w[17] = 10.0
boosted = GuessPrep.from_weights(w)
a_boosted = good_probability(prepare(boosted, n), oracle)
print(f"boosted a = {a_boosted:.4f}, steps {schedule(a_boosted).m} instead of {sched.m}")
