# coding: utf-8

# # Macdonald functions
#
# K is built from I_nu and I_-nu, so at integer order the formula reads 0/0.
# Away from integers it is a plain combination; at integers the library
# takes a limit numerically.

from qbessel import integer_order_limit, macdonald_k, macdonald_k1_closed, wronskian_ik

q = 0.8
for nu in (0.9, 0.99, 0.999, 1.0):
    r = macdonald_k(2, nu, 1.0, q)
    print("nu=%-6g K2(1.0) = %.12f" % (nu, r.value.real))

# The integer value can also be requested directly.

print("limit at nu=1:", integer_order_limit(2, 1, 1.0, q).real)

# For large real z there is a second route through a Laurent-type expansion
# in 1/z. It only exists beyond a radius that grows as q approaches 1.

from qbessel import SeriesPolicy
from qbessel.core import QBase

qb = QBase(0.5)
z = 1.25 * qb.laurent_radius
s = macdonald_k(1, 0.5, z, qb).value.real
c = macdonald_k1_closed(0.5, z, qb).real
print("q=0.5  z=%.3f series %.6e  closed %.6e" % (z, s, c))

# Near q=1 the radius is large, and there K is tiny while I_nu and I_-nu are
# huge. The double precision series then cancels to garbage; the closed form
# is the reliable one. Summing in the oracle mode with many digits confirms it.

qb = QBase(0.95)
z = 1.25 * qb.laurent_radius
deep = SeriesPolicy.oracle_mode(eps_series=1e-80, dps=120)
print("q=0.95 z=%.3f" % z)
print("  double series  %.6e" % macdonald_k(1, 0.5, z, qb).value.real)
print("  deep series    %.6e" % float(macdonald_k(1, 0.5, z, qb, deep).value.real))
print("  closed form    %.6e" % macdonald_k1_closed(0.5, z, qb).real)

# The q-Wronskian of I and K has a closed form; compare with the series.

from qbessel.macdonald import wronskian_ik_series

for kind in (1, 2, 3):
    w = wronskian_ik(kind, 0.7, 1.3, 0.7)
    ws = wronskian_ik_series(kind, 0.7, 1.3, 0.7)
    print("kind %d  W = %.12f  from series %.12f" % (kind, w.real, ws.real))
