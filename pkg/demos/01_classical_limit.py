# coding: utf-8

# # Approaching the classical functions
#
# Every function in qbessel depends on a base q in (0, 1). As q climbs towards 1
# the three kinds of modified q-Bessel function collapse onto the ordinary
# modified Bessel function I_nu, and the Macdonald functions onto K_nu.
# This script watches that happen.

import math

from qbessel import classical, macdonald_k, modified_i, q_const

nu, z = 0.5, 1.0
target = classical.bessel_i(nu, z).real
print("classical I_%.1f(%.1f) = %.12f" % (nu, z, target))

# Walk q up towards 1 and print the gap for each kind.

for q in (0.5, 0.9, 0.99, 0.999):
    gaps = [abs(modified_i(kind, nu, z, q).value.real - target) for kind in (1, 2, 3)]
    print("q=%-6g" % q, "  ".join("%.3e" % g for g in gaps))

# The gap shrinks roughly in proportion to 1 - q. K behaves the same way:

nu, z = 1.5, 2.0
target = classical.bessel_k(nu, z).real
for q in (0.9, 0.99, 0.999):
    val = macdonald_k(3, nu, z, q).value.real
    print("q=%-6g K3=%.12f  gap=%.3e" % (q, val, abs(val - target)))

# The lattice constant that normalizes the Jackson integrals tends to pi/2.

for q in (0.9, 0.99, 0.999):
    print("q=%-6g Q=%.12f  pi/2 - Q=%.3e" % (q, q_const(0.3, q).value, math.pi / 2 - q_const(0.3, q).value))
