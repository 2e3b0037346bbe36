"""Periodic-table data used by the SMILES toolkit and descriptors.

Only the subset of elements that can appear in desk-scale organic work is
covered.  Unknown bracket elements still parse; they simply fall back to a
weight of 0.0 and no default valence (explicit H counts are trusted).
"""

from __future__ import annotations

# Elements writable without brackets, per the Daylight organic subset.
ORGANIC_SUBSET = frozenset({"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"})

# Elements that may carry the aromatic (lowercase) flag.
AROMATIC_ELEMENTS = frozenset({"B", "C", "N", "O", "P", "S"})

# Default valence alternatives, smallest first.  Implicit hydrogens fill the
# smallest alternative that accommodates the existing bond order sum.
DEFAULT_VALENCES: dict[str, tuple[int, ...]] = {
    "H": (1,),
    "B": (3,),
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "F": (1,),
    "Si": (4,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

# Standard atomic weights (CIAAW conventional values).
ATOMIC_WEIGHTS: dict[str, float] = {
    "H": 1.008,
    "He": 4.0026,
    "Li": 6.94,
    "Be": 9.0122,
    "B": 10.811,
    "C": 12.011,
    "N": 14.007,
    "O": 15.999,
    "F": 18.998,
    "Ne": 20.180,
    "Na": 22.990,
    "Mg": 24.305,
    "Al": 26.982,
    "Si": 28.085,
    "P": 30.974,
    "S": 32.06,
    "Cl": 35.45,
    "K": 39.098,
    "Ar": 39.948,
    "Ca": 40.078,
    "Mn": 54.938,
    "Fe": 55.845,
    "Co": 58.933,
    "Ni": 58.693,
    "Cu": 63.546,
    "Zn": 65.38,
    "As": 74.922,
    "Se": 78.971,
    "Br": 79.904,
    "Sn": 118.71,
    "I": 126.904,
}

# Exact masses for the isotopes that actually occur in bracket SMILES.
# Anything else approximates the nuclide mass by its mass number.
ISOTOPE_MASSES: dict[tuple[str, int], float] = {
    ("H", 1): 1.00783,
    ("H", 2): 2.01410,
    ("H", 3): 3.01605,
    ("B", 10): 10.01294,
    ("B", 11): 11.00931,
    ("C", 12): 12.0,
    ("C", 13): 13.00335,
    ("C", 14): 14.00324,
    ("N", 14): 14.00307,
    ("N", 15): 15.00011,
    ("O", 16): 15.99491,
    ("O", 17): 16.99913,
    ("O", 18): 17.99916,
    ("F", 19): 18.99840,
    ("P", 31): 30.97376,
    ("S", 32): 31.97207,
    ("S", 33): 32.97146,
    ("S", 34): 33.96787,
    ("Cl", 35): 34.96885,
    ("Cl", 37): 36.96590,
    ("Br", 79): 78.91834,
    ("Br", 81): 80.91629,
    ("I", 127): 126.90447,
}

# Heteroatoms whose presence marks a bond partner as "attached to a
# heteroatom" in descriptor atom typing.
HETEROATOMS = frozenset({"N", "O", "P", "S", "F", "Cl", "Br", "I"})


def atomic_weight(element: str, isotope: int | None = None) -> float:
    """Mass of one atom, using the exact nuclide mass for known isotopes."""
    if isotope is not None:
        exact = ISOTOPE_MASSES.get((element, isotope))
        return exact if exact is not None else float(isotope)
    return ATOMIC_WEIGHTS.get(element, 0.0)


def default_valences(element: str) -> tuple[int, ...]:
    return DEFAULT_VALENCES.get(element, ())
