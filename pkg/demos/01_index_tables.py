"""
Multi-index bookkeeping for polyanalytic spaces
===============================================

Everything downstream (kernels, fiber bases, matrix symbols) is indexed by
the set J_{n,m} of multi-indices k in N_0^n with |k| <= m - 1, enumerated
lexicographically.  This script walks the table and its position/index
bijection.
"""

import math

from polyfock.multiindex import build_index_table, dimension

# the table for two complex variables, third order polyanalyticity
table = build_index_table(n=2, m=3)
print(f"J_(n=2, m=3) has d = {table.d} elements:")
for j in range(1, table.d + 1):
    print(f"  position {j} -> k = {table.phi(j)}")

# position() inverts phi()
for j in range(1, table.d + 1):
    assert table.position(table.phi(j)) == j

# d = C(n + m - 1, n), the dimension of the matrix symbols later on
print("\ndimension table d(n, m):")
header = "      " + "".join(f"m={m:<6d}" for m in range(1, 7))
print(header)
for n in range(1, 6):
    row = "".join(f"{dimension(n, m):<8d}" for m in range(1, 7))
    print(f"n={n}   {row}")
    for m in range(1, 7):
        assert dimension(n, m) == math.comb(n + m - 1, n)

# iteration order is lexicographic, which fixes how fiber vectors and
# symbol matrices are laid out
print("\nlexicographic order for n=3, m=2:", list(build_index_table(3, 2)))
