"""Tour of the core objects: truth tables, Walsh spectra, nonlinearity.

A Boolean function of n variables is stored as its output column of 2**n
bits; row i holds f(x) where x is the big-endian n-bit expansion of i.
"""

import numpy as np

from boolevo import (
    TruthTable,
    bounds,
    fitness,
    property_report,
    quadratic_bound,
    walsh_transform,
)

# the two-variable AND function: true only on input 11
tt = TruthTable(2, [0, 0, 0, 1])
spectrum = walsh_transform(tt)
print("AND truth table  ", tt.bits.tolist())
print("Walsh spectrum   ", spectrum.values.tolist())
print("hex form         ", tt.to_hex())
print()

# hex digits read left to right over the input indices; the first digit's
# most significant bit is f(0).  '7e' therefore means 0111 1110.
tt = TruthTable.from_hex("7e", 3)
print("from_hex('7e', 3)", tt.bits.tolist())
print()

# a random 8-variable function sits well below the best reachable value
rng = np.random.default_rng(1)
tt = TruthTable(8, rng.integers(0, 2, 256, dtype=np.uint8))
report = property_report(tt)
print("random n=8 function")
print("  nonlinearity   ", report.nonlinearity)
print("  balanced       ", report.balanced, f"(weight {report.hamming_weight})")
print("  max |W|        ", report.max_abs_walsh, f"occurring {report.num_max_values}x")
print("  fitness        ", round(report.fitness, 4))
print()

# fitness = nonlinearity + (2^n - #extreme spectrum values) / 2^n: the
# fractional part rewards spectra about to shed their worst value, but can
# never lift a function past the next nonlinearity level
print("fitness of the AND function:", fitness(TruthTable(2, [0, 0, 0, 1])))
print()

# for odd n, published values frame what search can hope to reach
for n in (7, 9, 11, 13):
    b = bounds(n)
    print(
        f"n={n:2d}  quadratic {b.quadratic:5d}   best known {b.best_known:5d}   "
        f"upper bound {b.upper:5d}"
    )
print()
print("quadratic functions at n=9 already reach", quadratic_bound(9))
