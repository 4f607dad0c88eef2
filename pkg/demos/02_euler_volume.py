"""Volume of SU(3) from the Euler-angle chart.

Run: python demos/02_euler_volume.py
"""

import time

import numpy as np

from aloffwallach.euler import QuadratureSpec, integrate_volume, killing_density_closed_form, volume_density
from aloffwallach.structure import MetricSpec, build_split
from aloffwallach.volumes import VOL_SU3_KILLING, vol_su3

split = build_split((1, 1))
angles = np.array([0.3, 1.1, 2.0, 0.7, 5.0, 2.2, 0.4, 1.9])
print("density at a point:", volume_density(angles, MetricSpec.killing(), split))
print("closed form       :", killing_density_closed_form(angles))

t0 = time.perf_counter()
est = integrate_volume(MetricSpec.killing(), split, QuadratureSpec(nodes=32))
print(f"Gauss 32 nodes: {est.value:.12f} (ref sqrt(3) pi^5 = {VOL_SU3_KILLING:.12f}) in {time.perf_counter() - t0:.2f}s")

mc = integrate_volume(MetricSpec.killing(), split, QuadratureSpec(scheme="monte-carlo", samples=200_000))
print(f"Monte Carlo: {mc.value:.3f} +- {mc.error:.3f}")

w = integrate_volume(MetricSpec.wallach_w(), split)
print(f"metric w: {w.value:.10f} vs closed form {vol_su3(MetricSpec.wallach_w()):.10f}")
