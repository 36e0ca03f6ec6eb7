"""Rotation-symmetric functions: same output on every cyclic input shift.

Such a function is pinned down by one bit per rotation orbit, which shrinks
the search space from 2^(2^n) to 2^g_n — at n=9 that is 2^60 instead of
2^512.
"""

import numpy as np

from boolevo import (
    compute_orbits,
    expand,
    is_rotation_symmetric,
    orbit_count,
    property_report,
)

print("orbit counts g_n (the genotype length in rotation-symmetric mode):")
for n in range(3, 14):
    print(f"  n={n:2d}  g_n={orbit_count(n):4d}   full table {1 << n:5d} bits")
print()

table = compute_orbits(3)
print("n=3 orbit representatives:", table.representatives.tolist())
print("n=3 orbit sizes:          ", table.orbit_sizes.tolist())
print("index -> orbit:           ", table.orbit_of.tolist())
print()

# one bit per orbit expands to the full table
orbit_bits = np.array([0, 1, 1, 0], dtype=np.uint8)
tt = expand(table, orbit_bits)
print("orbit bits", orbit_bits.tolist(), "->", tt.bits.tolist(), "=", tt.to_hex())
print("rotation symmetric:", is_rotation_symmetric(tt))
print()

# a random point of the compressed n=9 space, scored like any function
rng = np.random.default_rng(7)
table9 = compute_orbits(9)
tt9 = expand(table9, rng.integers(0, 2, table9.num_orbits, dtype=np.uint8))
report = property_report(tt9)
print(
    f"random rotation-symmetric n=9 function: nonlinearity {report.nonlinearity}, "
    f"balanced {report.balanced}"
)
