"""
Flattening the space and shifting it around
===========================================

The unitary U maps the polyanalytic space onto a space of functions on
R^{2n} where translations in the first variable act naturally.  On the
Fock side the corresponding operators are the Weyl shifts: a projective
(phase-twisted) representation of C^n.  This script checks the exchange
numerically on kernel sections.
"""

import math

import numpy as np

from polyfock.kernels import KernelSpec, kernel_F
from polyfock.transforms import (
    check_intertwining,
    flat_norm,
    flatten,
    fock_function,
    fock_norm,
    unflatten,
    weyl_F,
)

alpha = 1.5
spec = KernelSpec(n=1, m=2, alpha=alpha)
rng = np.random.default_rng(4)

z0 = np.array([0.5 - 0.3j])
section = fock_function(lambda z: kernel_F(spec, z0, z))

# U is invertible: flatten then unflatten is the identity
round_trip = unflatten(spec, flatten(spec, section))
pts = rng.uniform(-1, 1, (6, 1)) + 1j * rng.uniform(-1, 1, (6, 1))
print("flatten/unflatten residual:",
      float(np.max(np.abs(round_trip(pts) - section(pts)))))

# and isometric: the L^2 norm of the kernel section is sqrt(d e^{alpha|z0|^2})
# on both sides of U
expected = math.sqrt(spec.d * math.exp(alpha * float(np.sum(np.abs(z0) ** 2))))
norm_fock = fock_norm(spec, section, center=z0)
g = flatten(spec, section)
center = math.sqrt(alpha) * np.concatenate([z0.real, z0.imag])
norm_flat = flat_norm(1, g, center=center)
print(f"||K_z0||: fock {norm_fock:.12f}  flat {norm_flat:.12f}  "
      f"closed {expected:.12f}")

# Weyl shifts compose up to the symplectic phase e^{-i alpha Im<a, b>}
a = np.array([0.4 + 0.2j])
b = np.array([-0.1 + 0.5j])
f_ab = weyl_F(spec, a, weyl_F(spec, b, section))
f_sum = weyl_F(spec, a + b, section)
phase = np.exp(-1j * alpha * np.imag(np.sum(a * np.conj(b))))
print("composition phase residual:",
      float(np.max(np.abs(f_ab(pts) - phase * f_sum(pts)))))

# for real a the shift flattens to an honest horizontal translation;
# check_intertwining returns the worst mismatch on a sample
worst = max(
    check_intertwining(spec, rng.uniform(-1, 1, 1), section,
                       rng.uniform(-1, 1, 1), rng.uniform(-1, 1, 1))
    for _ in range(5)
)
print("intertwining residual over 5 draws:", worst)
