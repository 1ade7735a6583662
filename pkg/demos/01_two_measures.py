"""Type II and type I families for a pair of atomic measures on the circle.

Two measures, each with two point masses, give an r = 2 system.  We print
the four families at a few indices and check their defining conditions by
applying the functionals directly.
"""

from fractions import Fraction

from mopuc import core
from mopuc.moments import CircleAtom, FunctionalSystem, from_atoms

half = Fraction(1, 2)
L1 = from_atoms([CircleAtom(0, half), CircleAtom(1, half)], "1 and i")
L2 = from_atoms([CircleAtom("minus_one", half), CircleAtom(-1, half)], "-1 and -i")
S = FunctionalSystem([L1, L2], "two measures")

for n, m in [((1, 1), (0, 0)), ((1, 0), (0, 1)), ((2, 1), (0, 0))]:
    idx = core.MultiIndexPair.of(n, m)
    if not core.is_normal(S, idx):
        print(idx, "is not normal")
        continue
    print(idx, " det T =", core.det_T(S, idx))
    print("   Phi  =", core.phi(S, idx))
    print("   Phi* =", core.phi_star(S, idx))
    print("   Xi   =", core.xi(S, idx))
    print("   Xi*  =", core.xi_star(S, idx))
    print("   alpha =", core.alpha(S, idx), " beta =", core.beta(S, idx))

    # orthogonality of Phi against each functional, read off directly
    Phi = core.phi(S, idx)
    for j, L in enumerate(S):
        vals = [L.apply(Phi.shift(-k)) for k in range(-m[j], n[j])]
        print(f"   L_{j}[Phi w^-k] =", ", ".join(map(str, vals)))
