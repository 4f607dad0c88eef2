"""Orbit lengths and two-sided volume bounds for W(p, q).

Run: python demos/03_volume_bounds.py
"""

from aloffwallach.volumes import orbit_length, orbit_length_numeric, vol_wpq_bounds

for pq in [(1, 1), (1, 2), (2, 4), (3, -5), (7, 11)]:
    vb = vol_wpq_bounds(pq)
    print(
        f"W{pq}: orbit {orbit_length(pq):.6f} (quad {orbit_length_numeric(pq):.6f})  "
        f"vol in [{vb.lower:.4f}, {vb.upper:.4f}], exact {vb.exact:.4f}"
    )
