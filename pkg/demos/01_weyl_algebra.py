"""Clock and shift operators, the H_alpha transform and how it relabels Bell states."""

import numpy as np

from gbs_locc import WeylOp, compose, conjugate_by_h, h_alpha_valid
from gbs_locc.states import build_x, build_z, lemma1_deviation, lemma1_max_deviation, weyl_matrix
from gbs_locc.weyl import GbsIndex

d = 6
X, Z = build_x(d), build_z(d)
w = np.exp(2j * np.pi / d)

# Z X = w X Z
print("ZX - wXZ:", np.max(np.abs(Z @ X - w * X @ Z)))

# symbolic products track the phase exactly
a, b = WeylOp(d, 2, 5), WeylOp(d, 3, 1)
c = compose(a, b)
print(a, "@", b, "=", c)
print("matches dense product:", np.allclose(weyl_matrix(a) @ weyl_matrix(b), weyl_matrix(c)))

# conjugation by H_alpha sends label (m, n) to (alpha m + n, -m)
idx = GbsIndex(d, 1, 2)
for alpha in range(d):
    if h_alpha_valid(alpha, d):
        out = conjugate_by_h(alpha, idx)
        print(f"H_{alpha}: {idx.pair()} -> {out.pair()}  deviation {lemma1_deviation(alpha, 1, 2, d):.1e}")

# odd alpha in even d breaks the relabeling rule
print("alpha=1, d=6 worst deviation:", lemma1_max_deviation(d, alphas=[1]))
