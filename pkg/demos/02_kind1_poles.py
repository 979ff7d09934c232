# coding: utf-8

# # Poles of the first kind
#
# The first-kind function carries a factor 1/(x; q^2)_inf in its argument, so
# it blows up at a geometric sequence of points on the positive real axis.
# The library refuses to evaluate there and says which pole was hit.

from qbessel import PoleError, modified_i
from qbessel.bessel import kind1_poles
from qbessel.core import QBase

qb = QBase(0.5)
poles = kind1_poles(qb, count=4)
print("first poles:", ["%.6f" % p for p in poles])

# Approaching the first pole from below, the value grows without bound.
# The series also converges more and more slowly there, so very close to a
# pole the term budget runs out and NotConverged is raised.

for gap in (1e-1, 3e-2, 1e-2):
    z = poles[0] - gap
    print("z = pole - %g:  I1 = %.6e" % (gap, modified_i(1, 0.3, z, qb).value.real))

# On the pole itself an exception is raised instead of a silent inf.

try:
    modified_i(1, 0.3, poles[0], qb)
except PoleError as exc:
    print("PoleError:", exc)

# The second and third kinds are entire in z, so they have no such trouble.

print("I2 at the pole:", modified_i(2, 0.3, poles[0], qb).value.real)
print("I3 at the pole:", modified_i(3, 0.3, poles[0], qb).value.real)
