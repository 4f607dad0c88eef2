"""Sectional curvature of W(p, q) from the Koszul formula and the submersion.

Run: python demos/04_curvature_oracle.py
"""

import numpy as np

from aloffwallach.curvature import TwoPlane, base_curvature_operator, extremize_sectional, sectional_wpq
from aloffwallach.su3 import gell_mann

# root plane spanned by i*lambda_6, i*lambda_7
plane = TwoPlane(1j * gell_mann(6), 1j * gell_mann(7))
print("K on the (6,7) root plane of W(1,2):", sectional_wpq((1, 2), plane), "= 215/56 =", 215 / 56)

for pq in [(1, 1), (1, 2), (2, 3)]:
    res = extremize_sectional(pq, budget=10_000, seed=0)
    ev = base_curvature_operator(pq).eigenvalues
    print(
        f"W{pq}: K in [{res.k_min:.10f}, {res.k_max:.10f}]  "
        f"operator eigenvalues in [{ev[0]:.4f}, {ev[-1]:.4f}]  converged={res.converged}"
    )
print("2/37 =", 2 / 37, " 29/8 =", 29 / 8)
