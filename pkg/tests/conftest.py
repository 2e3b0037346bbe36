"""Shared fixtures: seeded random molecule generation for property tests."""

from __future__ import annotations

import random

import pytest

from molopt.smiles import MolGraph, ProtoAtom, write_smiles

_MAX_VALENCE = {"C": 4, "N": 3, "O": 2, "S": 2, "F": 1, "Cl": 1, "Br": 1}
_ELEMENT_POOL = ["C"] * 10 + ["N"] * 3 + ["O"] * 3 + ["S", "F", "Cl"]


def make_random_molecule(rng: random.Random, max_atoms: int = 14) -> MolGraph:
    """A random valid molecule built atom by atom under valence limits."""
    target = rng.randint(1, max_atoms)
    elements = [rng.choice(["C", "C", "C", "N", "O"])]
    used = [0]
    bonds: list[tuple[int, int, int]] = []
    bonded: set[tuple[int, int]] = set()

    def free(i: int) -> int:
        return _MAX_VALENCE[elements[i]] - used[i]

    while len(elements) < target:
        sites = [i for i in range(len(elements)) if free(i) >= 1]
        if not sites:
            break
        a = rng.choice(sites)
        elem = rng.choice(_ELEMENT_POOL)
        order = 1
        if rng.random() < 0.15 and free(a) >= 2 and _MAX_VALENCE[elem] >= 2:
            order = 2
        b = len(elements)
        elements.append(elem)
        used.append(order)
        used[a] += order
        bonds.append((a, b, order))
        bonded.add((a, b))

    # Optional ring closures between atoms with spare valence.
    for _ in range(rng.randint(0, 2)):
        sites = [i for i in range(len(elements)) if free(i) >= 1]
        rng.shuffle(sites)
        placed = False
        for a in sites:
            if placed:
                break
            for b in sites:
                if b <= a or (a, b) in bonded:
                    continue
                bonds.append((a, b, 1))
                bonded.add((a, b))
                used[a] += 1
                used[b] += 1
                placed = True
                break

    # Occasionally decorate with a benzene ring for aromatic coverage.
    if rng.random() < 0.35:
        sites = [i for i in range(len(elements)) if free(i) >= 1]
        if sites:
            a = rng.choice(sites)
            base = len(elements)
            for _ in range(6):
                elements.append("C")
                used.append(0)
            for k in range(6):
                bonds.append((base + k, base + (k + 1) % 6, 4))
            bonds.append((a, base, 1))
            used[a] += 1

    aromatic_atoms: set[int] = set()
    for a, b, order in bonds:
        if order == 4:
            aromatic_atoms.add(a)
            aromatic_atoms.add(b)
    atoms = [
        ProtoAtom(element=e, aromatic=(i in aromatic_atoms))
        for i, e in enumerate(elements)
    ]
    return MolGraph(atoms, bonds)


def make_random_smiles(rng: random.Random, max_atoms: int = 14) -> str:
    graph = make_random_molecule(rng, max_atoms)
    order = list(range(len(graph)))
    rng.shuffle(order)
    return write_smiles(graph, order)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


@pytest.fixture
def random_molecule():
    return make_random_molecule


@pytest.fixture
def random_smiles():
    return make_random_smiles
