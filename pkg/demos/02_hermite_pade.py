"""Simultaneous approximation of the two Caratheodory-type series.

For the geometric weight c_k = (1/2)^|k| we build each approximant pair,
certify its orders at 0 and at infinity, and show that bumping a single
companion coefficient breaks the certificate.
"""

from fractions import Fraction

from mopuc import core
from mopuc import hermite_pade as hp
from mopuc import systems
from mopuc.laurent import LaurentPolynomial as LP

S = systems.geometric_system(Fraction(1, 2))
idx = core.MultiIndexPair.of([1], [1])

for family in hp.FAMILIES:
    pair = hp.approximant(S, idx, family)
    cert = hp.certify_orders(S, pair, idx)
    print(f"{family:9s} main={pair.main}  companion={pair.companion}  certified={cert.passed}")

pair = hp.approximant(S, idx, "phi")
bent = pair.replace_companion([pair.companion[0] + LP.monomial(0)])
cert = hp.certify_orders(S, bent, idx)
print("after adding 1 to the constant term:", "certified" if cert.passed else "rejected")
for rec in cert.records:
    if rec.failure():
        print("  ", rec.failure())
