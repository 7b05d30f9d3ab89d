"""Bell states with pairwise different shift labels: both parties measure |j>."""

import numpy as np

from gbs_locc import lemma2_protocol, gbs_state, simulate_branches, verify_perfect_discrimination

d = 5
labels = [(0, 3), (1, 1), (4, 0)]
states = [gbs_state(d, m, n) for m, n in labels]
protocol = lemma2_protocol(d, labels)

# Alice sees j, Bob then holds |j - m>, so his outcome names m
table = simulate_branches(states, protocol)
for record, probs in sorted(table.items())[:6]:
    print(record, np.round(probs, 3))

report = verify_perfect_discrimination(states, protocol)
print(report.summary())
