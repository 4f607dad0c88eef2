"""Gell-Mann basis, the circle T(p, q) and the split of su(3).

Run: python demos/01_su3_and_split.py
"""

import numpy as np

from aloffwallach.structure import WpqIndex, ad_invariance_residual, build_split, check_condition_II
from aloffwallach.su3 import generator_basis, structure_constants

basis = generator_basis()
print("Killing Gram matrix of i*lambda_k is the identity:", np.allclose(basis.gram(), np.eye(8)))

c = structure_constants(basis.generators)
print("largest structure constant:", np.abs(c).max())

idx = WpqIndex(1, 2)
split = build_split(idx)
print(f"W{idx.p, idx.q}: dims (T, V1, V2) =", split.dims)
print("Ad(T)-invariance leak of V1, V2:", ad_invariance_residual(split))

# Bracket conditions; the fourth is only searched for counterexamples.
rep = check_condition_II(split, sample_budget=20_000)
print("item 1-3 residuals:", rep.residual_item1, rep.residual_item2, rep.residual_item3)
print(f"item 4: {rep.item4_violations} violations in {rep.item4_samples} samples, margin {rep.item4_margin:.3f}")

# With mixed signs the literal split breaks item 4; the positive representative fixes that.
bad = check_condition_II(build_split((1, -2)), sample_budget=2000)
print("W(1,-2) literal split, item 4 violations:", bad.item4_violations,
      "-> representative", WpqIndex(1, -2).positive_representative())
