"""
Estimating amplitude and counting solutions
===========================================

Phase estimation on the amplification operator returns a register value
``y`` and the estimate ``a_hat = sin(pi*y/M)**2``. Multiplying by the number
of items gives a count. The count is only faithful when the guess is uniform.
"""

import numpy as np

from qavail import GuessPrep, Oracle, count, count_distribution
from qavail.count import distribution_median, distribution_mode
from qavail.estimate import EstimationConfig, est_amp_distribution, kernel_distribution

# Exact phase: with N=4, one good item and M=6 the estimate is always 0.25.
oracle = Oracle(4, {0})
cfg = EstimationConfig(6, GuessPrep.uniform(), oracle)
dist = est_amp_distribution(cfg)
print("register distribution:", np.round(dist, 6))
print("count:", count(GuessPrep.uniform(), oracle, 6, seed=1).t_hat)

# The simulated register matches the closed-form kernel.
print("max difference vs closed form:", np.abs(dist - kernel_distribution(cfg.a, 6)).max())

# Over-weighting the good item inflates the count.
over = count_distribution(GuessPrep.from_weights([0.64, 0.12, 0.12, 0.12]), oracle, 16)
print(f"over-weighted: median {distribution_median(over):.3f}, mode {distribution_mode(over):.3f} (true 1)")

# Under-weighting deflates it.
under = count_distribution(GuessPrep.from_weights([0.12, 0.64, 0.12, 0.12]), oracle, 16)
print(f"under-weighted: median {distribution_median(under):.3f} (true 1)")
