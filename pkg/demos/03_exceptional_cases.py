"""The two families that need Alice's pairwise measurement, and the k = 1 boundary."""

import itertools

import numpy as np

from gbs_locc import exceptional1_protocol, exceptional2_protocol, gbs_state, verify_perfect_discrimination
from gbs_locc.synthesizer import ExternalReferenceError, bob_residuals, pair_vectors
from gbs_locc.weyl import GbsIndex


def worst_overlap(d, labels):
    out = 0.0
    for v in pair_vectors(d):
        for a, b in itertools.combinations(bob_residuals(d, labels, v), 2):
            out = max(out, abs(np.vdot(a, b)))
    return out


for n in (2, 3):
    d = 2 * n
    labels = [GbsIndex(d, 0, 0), GbsIndex(d, n, 0), GbsIndex(d, 0, n)]
    ok = verify_perfect_discrimination([gbs_state(d, *i.pair()) for i in labels], exceptional1_protocol(n)).perfect
    print(f"{{I, X^{n}, Z^{n}}} d={d}: perfect={ok}, Bob overlap {worst_overlap(d, labels):.1e}")

for k in (1, 2):
    d = 4 * k
    labels = [GbsIndex(d, 0, 0), GbsIndex(d, 3 * k, 0), GbsIndex(d, 0, 2 * k)]
    print(f"{{I, X^{3 * k}, Z^{2 * k}}} d={d}: Bob overlap {worst_overlap(d, labels):.2f}")
    try:
        p = exceptional2_protocol(k)
    except ExternalReferenceError as exc:
        print("  refused:", exc)
        p = exceptional2_protocol(k, force=True)
        print("  forced anyway ->", end=" ")
    print("perfect =", verify_perfect_discrimination([gbs_state(d, *i.pair()) for i in labels], p).perfect)
