"""
Operator symbols: where the calculus stops being commutative
============================================================

In the fiber picture a translation-invariant operator is just a d x d
matrix-valued function of the frequency xi.  Multipliers in the vertical
variable compress to the Toeplitz-type matrices gamma_g(xi); horizontal
translations and convolutions stay scalar.  For m = 1 everything is 1 x 1
and commutes.  From m = 2 on it does not, and the commutator below is the
smallest honest witness.
"""

import numpy as np

from polyfock.multiindex import build_index_table
from polyfock.symbols import (
    box,
    constant,
    convolution_symbol,
    gamma_toeplitz,
    polynomial,
    sigma_from_gamma,
    sign,
    symbol_compose,
    weyl_symbol,
)

np.set_printoptions(precision=6, suppress=True)
table = build_index_table(n=1, m=2)

# the unit symbol gives the identity, any constant a scalar matrix
print("gamma_1(0.7) =")
print(gamma_toeplitz(table, constant(1.0), [0.7]).entries.real)

# multiplication by v and by sign(v): both real symmetric
g_v = polynomial([0.0, 1.0])
g_sgn = sign()
for value in (0.0, 1.0):
    A = gamma_toeplitz(table, g_v, [value]).entries.real
    B = gamma_toeplitz(table, g_sgn, [value]).entries.real
    C = A @ B - B @ A
    print(f"\nxi = {value}")
    print("gamma_v =\n", A)
    print("gamma_sign =\n", B)
    print("||[gamma_v, gamma_sign]|| =", np.linalg.norm(C, 2))
# at xi = 0 the two matrices happen to be proportional and commute;
# at xi = 1 the commutator is of order 1e-1, the noncommutativity witness

# indicators stay positive semidefinite with norm at most 1
gb = gamma_toeplitz(table, box(-1.0, 0.5), [0.4]).entries
print("\nbox indicator: eigenvalues =", np.linalg.eigvalsh(gb).real,
      " norm =", np.linalg.norm(gb, 2))

# the shifted-argument form sigma_g(eta) = gamma_g(-eta/sqrt(2)), computed
# both ways
eta = [1.3]
via = sigma_from_gamma(table, g_sgn, eta, route="via-gamma").entries
direct = sigma_from_gamma(table, g_sgn, eta, route="direct").entries
print("\nsigma route difference:", float(np.max(np.abs(via - direct))))

# horizontal operators keep scalar symbols: characters for translations,
# Fourier transforms for convolutions
W = weyl_symbol(table, [0.9], [0.7])
print("\nweyl symbol entry:", W.entries[0, 0],
      " |entry| =", abs(W.entries[0, 0]))
conv = convolution_symbol(table, lambda xi: np.exp(-float(xi @ xi) / 2), [0.7])
print("gaussian convolution symbol entry:", conv.entries[0, 0].real)

# scalar symbols commute with everything
prod1 = symbol_compose(W, gamma_toeplitz(table, g_v, [0.7]))
prod2 = symbol_compose(gamma_toeplitz(table, g_v, [0.7]), W)
print("scalar-vs-matrix commutator:",
      float(np.max(np.abs(prod1.entries - prod2.entries))))
