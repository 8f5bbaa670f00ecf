"""
Famous and ordinary names
=========================

Two lists of names: 19 famous ones carrying double guess weight and 20
ordinary ones. The famous list is smaller but more available. We compare
how many names of each kind are recalled with a fixed budget against the
counts each list would be judged to have.
"""

from qavail import GroupSpec, run_names_scenario

groups = [GroupSpec("famous", 19, 2.0), GroupSpec("ordinary", 20, 1.0)]
report = run_names_scenario(groups, M=32, budget=100, seed=0, trials=100)

for r in report.results[:5]:
    print(", ".join(f"{g.label}: recalled {g.recalled}, t_hat {g.t_hat:.2f}" for g in r.per_group))

s = report.summary
print(f"agreement {s.n_agree}/{s.n_agree + s.n_disagree} (ties {s.n_ties}), "
      f"rate {s.agreement_rate:.3f}, rank correlation {s.rank_correlation:.3f}")
