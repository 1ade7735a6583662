"""From the circle to [-2, 2] and back.

The Lebesgue measure on the circle corresponds to the arcsine weight on
[-2, 2].  Its monic orthogonal polynomials come out of the circle families
through z + 1/z, and the recurrence coefficients agree on both sides.
"""

from mopuc import real_mop as rm
from mopuc import systems

for name, L in [("lebesgue", systems.lebesgue_system()), ("geometric 1/2", systems.geometric_system())]:
    M = rm.real_system_of(L)
    print(name)
    for n in range(4):
        P = rm.real_type_ii(M, [n]).polynomial
        a, b = rm.nn_coefficients(M, [n], 0)
        ca, cb, _ = rm.geronimus_prediction(L, [n], 0)
        coeffs = ", ".join(map(str, P.coeffs))
        print(f"  P_{n}(x) ascending [{coeffs}]   a={a} b={b}   from the circle a={ca} b={cb}")
    reps = rm.szego_polynomial_check(L, [3])
    print("  degree 3 bridge:", ", ".join(f"{r.name.split('.')[-1]}={r.status}" for r in reps))
