"""Injectivity radius bounds.

Run: python demos/06_injectivity.py
"""

from math import pi

from aloffwallach.injectivity import bounds_wpq

b = bounds_wpq((1, 1), "huang-constants")
print(f"W(1,1): {b.lower:.6e} <= i <= {b.upper:.6f}  ({b.binding_branch} branch binds)")
print("3 pi / (4 * 37^3) =", 3 * pi / (4 * 37**3))

for n in (1, 2, 10, 100):
    b = bounds_wpq((n, n + 1))
    print(f"W({n},{n + 1}): {b.lower:.4e} <= i <= {b.upper:.4f}")
