"""Per-molecule property computation backing corpus tags and oracles.

All functions take an immutable :class:`~molopt.smiles.MolGraph` and are
pure, so they can run from any number of workers.  Parameter tables ship as
checksummed data files; see ``tables.py``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from molopt.elements import atomic_weight
from molopt.smiles import parse_smiles
from molopt.smiles.graph import AROMATIC_BOND, DOUBLE, MolGraph, SINGLE, TRIPLE
from molopt.smiles.match import has_substructure

from molopt.descriptors.crippen import clogp
from molopt.descriptors.tables import AdsParams, ads_table, alert_patterns, tpsa_table

__all__ = [
    "DescriptorVector",
    "alert_count",
    "aromatic_ring_count",
    "clogp",
    "compute_all",
    "hbd_hba",
    "molecular_weight",
    "qed",
    "ring_count",
    "rotatable_bonds",
    "tpsa",
]

# Geometric-mean inputs for drug-likeness, in canonical order.
QED_PROPERTIES = (
    "mw",
    "clogp",
    "hba",
    "hbd",
    "tpsa",
    "rotatable_bonds",
    "aromatic_rings",
    "alerts",
)


@dataclass(frozen=True)
class DescriptorVector:
    mw: float
    tpsa: float
    clogp: float
    hbd: int
    hba: int
    rings: int
    aromatic_rings: int
    rotatable_bonds: int
    qed: float


def molecular_weight(graph: MolGraph) -> float:
    """Sum of standard atomic weights, isotope-exact where specified."""
    total = 0.0
    for atom in graph.atoms:
        total += atomic_weight(atom.element, atom.isotope)
        total += atom.hydrogens * atomic_weight("H")
    return total


def tpsa(graph: MolGraph) -> float:
    """Polar surface area: exact-environment fragment contributions.

    N/O environments not present in the shipped table contribute zero.
    """
    table = tpsa_table()
    three_ring_atoms = {
        a for ring in graph.rings if len(ring) == 3 for a in ring
    }
    total = 0.0
    for i, atom in enumerate(graph.atoms):
        if atom.element not in ("N", "O"):
            continue
        counts = {SINGLE: 0, DOUBLE: 0, TRIPLE: 0, AROMATIC_BOND: 0}
        for _, order in graph.neighbors(i):
            counts[order] += 1
        key = (
            atom.element,
            atom.aromatic,
            atom.charge,
            atom.hydrogens,
            counts[SINGLE],
            counts[DOUBLE],
            counts[TRIPLE],
            counts[AROMATIC_BOND],
            i in three_ring_atoms,
        )
        total += table.get(key, 0.0)
    return total


def hbd_hba(graph: MolGraph) -> tuple[int, int]:
    """Donor/acceptor counts.

    Donors: N or O carrying at least one hydrogen (counted per atom).
    Acceptors: every N or O except pyrrole-type aromatic nitrogens (three
    sigma connections including hydrogens) and amide nitrogens (single bond
    to a carbonyl carbon).
    """
    hbd = 0
    hba = 0
    for i, atom in enumerate(graph.atoms):
        if atom.element not in ("N", "O"):
            continue
        if atom.hydrogens >= 1:
            hbd += 1
        if atom.element == "O":
            hba += 1
            continue
        if atom.aromatic and graph.degree(i) + atom.hydrogens >= 3:
            continue
        if _is_amide_nitrogen(graph, i):
            continue
        hba += 1
    return hbd, hba


def _is_amide_nitrogen(graph: MolGraph, i: int) -> bool:
    for nbr, order in graph.neighbors(i):
        if order == SINGLE and graph.atoms[nbr].element == "C":
            for nbr2, order2 in graph.neighbors(nbr):
                if (
                    nbr2 != i
                    and order2 == DOUBLE
                    and graph.atoms[nbr2].element == "O"
                ):
                    return True
    return False


def ring_count(graph: MolGraph) -> int:
    return len(graph.rings)


def aromatic_ring_count(graph: MolGraph) -> int:
    count = 0
    for ring in graph.rings:
        edges_aromatic = all(
            graph.bond_order(ring[k], ring[(k + 1) % len(ring)]) == AROMATIC_BOND
            for k in range(len(ring))
        )
        if edges_aromatic:
            count += 1
    return count


def rotatable_bonds(graph: MolGraph) -> int:
    """Single, non-ring bonds between two heavy atoms of heavy-degree >= 2,
    excluding amide C-N bonds."""
    count = 0
    for a, b, order in graph.bonds:
        if order != SINGLE or graph.bond_in_ring(a, b):
            continue
        if graph.degree(a) < 2 or graph.degree(b) < 2:
            continue
        if _is_amide_bond(graph, a, b):
            continue
        count += 1
    return count


def _is_amide_bond(graph: MolGraph, a: int, b: int) -> bool:
    for c_atom, n_atom in ((a, b), (b, a)):
        if graph.atoms[c_atom].element == "C" and graph.atoms[n_atom].element == "N":
            for nbr, order in graph.neighbors(c_atom):
                if (
                    nbr != n_atom
                    and order == DOUBLE
                    and graph.atoms[nbr].element == "O"
                ):
                    return True
    return False


@lru_cache(maxsize=1)
def _alert_graphs():
    return tuple(parse_smiles(p) for p in alert_patterns())


def alert_count(graph: MolGraph) -> int:
    """Number of alert patterns with at least one embedding."""
    return sum(1 for pattern in _alert_graphs() if has_substructure(pattern, graph))


def ads(x: float, p: AdsParams) -> float:
    """Asymmetric double sigmoid desirability, normalized by the curve max."""
    rise = p.b / (1.0 + math.exp(-(x - p.c + p.d / 2.0) / p.e))
    fall = 1.0 - 1.0 / (1.0 + math.exp(-(x - p.c - p.d / 2.0) / p.f))
    value = (p.a + rise * fall) / p.dmax
    return min(max(value, 1e-9), 1.0)


def qed(graph: MolGraph, weights: dict[str, float] | None = None) -> float:
    """Drug-likeness score in [0, 1].

    Geometric mean of the eight desirability values; optional per-property
    weights turn it into a weighted geometric mean.
    """
    hbd, hba = hbd_hba(graph)
    values = {
        "mw": molecular_weight(graph),
        "clogp": clogp(graph),
        "hba": hba,
        "hbd": hbd,
        "tpsa": tpsa(graph),
        "rotatable_bonds": rotatable_bonds(graph),
        "aromatic_rings": aromatic_ring_count(graph),
        "alerts": alert_count(graph),
    }
    params = ads_table()
    log_sum = 0.0
    weight_sum = 0.0
    for prop in QED_PROPERTIES:
        weight = 1.0 if weights is None else weights[prop]
        log_sum += weight * math.log(ads(values[prop], params[prop]))
        weight_sum += weight
    return math.exp(log_sum / weight_sum)


def compute_all(graph: MolGraph) -> DescriptorVector:
    hbd, hba = hbd_hba(graph)
    return DescriptorVector(
        mw=molecular_weight(graph),
        tpsa=tpsa(graph),
        clogp=clogp(graph),
        hbd=hbd,
        hba=hba,
        rings=ring_count(graph),
        aromatic_rings=aromatic_ring_count(graph),
        rotatable_bonds=rotatable_bonds(graph),
        qed=qed(graph),
    )
