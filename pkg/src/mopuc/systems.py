"""Small functional systems used by the tests, the demos and the CLI."""

from __future__ import annotations

from fractions import Fraction as Fr

from .moments import MINUS_ONE, CircleAtom, FunctionalSystem, from_atoms, geometric, lebesgue

__all__ = [
    "lebesgue_system",
    "geometric_system",
    "s2_system",
    "r3_atomic_system",
    "symmetric_r2_system",
    "bundled",
]


def lebesgue_system() -> FunctionalSystem:
    return FunctionalSystem([lebesgue()], "lebesgue")


def geometric_system(a=Fr(1, 2)) -> FunctionalSystem:
    return FunctionalSystem([geometric(Fr(a))], f"geometric({a})")


def s2_system() -> FunctionalSystem:
    """Two-atom functionals: equal mass at {1, i} and at {-1, -i}."""
    h = Fr(1, 2)
    L1 = from_atoms([CircleAtom(0, h), CircleAtom(1, h)], "atoms(1, i)/2")
    L2 = from_atoms([CircleAtom(MINUS_ONE, h), CircleAtom(-1, h)], "atoms(-1, -i)/2")
    return FunctionalSystem([L1, L2], "S2")


def r3_atomic_system() -> FunctionalSystem:
    """Three positive atomic measures on disjoint rational circle points."""
    specs = [
        [(0, Fr(1, 4)), (Fr(1, 2), Fr(1, 4)), (2, Fr(1, 6)), (Fr(-1, 3), Fr(1, 6)), (3, Fr(1, 6))],
        [(1, Fr(1, 3)), (Fr(-1, 2), Fr(1, 6)), (Fr(2, 3), Fr(1, 6)), (-3, Fr(1, 6)), (Fr(1, 5), Fr(1, 6))],
        [(MINUS_ONE, Fr(1, 5)), (-1, Fr(1, 5)), (Fr(1, 3), Fr(1, 5)), (-2, Fr(1, 5)), (Fr(3, 2), Fr(1, 5))],
    ]
    fs = [from_atoms([CircleAtom(t, w) for t, w in spec], f"r3[{i}]") for i, spec in enumerate(specs)]
    return FunctionalSystem(fs, "r3-atomic")


def symmetric_r2_system() -> FunctionalSystem:
    """Two atomic measures invariant under w -> 1/w, eight atoms each."""

    def mirrored(pairs):
        atoms = []
        for t, w in pairs:
            atoms += [CircleAtom(t, w), CircleAtom(-Fr(t), w)]
        return atoms

    L1 = from_atoms(
        mirrored([(Fr(1, 2), Fr(1, 8)), (2, Fr(1, 8)), (Fr(1, 3), Fr(1, 8)), (Fr(3, 2), Fr(1, 8))]),
        "sym[0]",
    )
    L2 = from_atoms(
        mirrored([(Fr(1, 4), Fr(1, 10)), (3, Fr(1, 5)), (Fr(2, 3), Fr(1, 10)), (Fr(5, 2), Fr(1, 10))]),
        "sym[1]",
    )
    return FunctionalSystem([L1, L2], "symmetric-r2")


def bundled() -> dict:
    """The four systems of the orthogonality suite, by name."""
    return {
        "lebesgue": lebesgue_system(),
        "geometric": geometric_system(),
        "S2": s2_system(),
        "r3": r3_atomic_system(),
    }
