"""Canonical SMILES via iterative invariant refinement.

Atoms start from the invariant tuple (element, charge, hydrogens, heavy
degree, aromatic flag, isotope) and are repeatedly re-ranked by their
current rank plus the sorted (bond order, neighbor rank) multiset until the
partition stabilizes.  Remaining ties are resolved by branching: each tied
atom of the first tied class is promoted in turn, the refinement re-run,
and the lexicographically smallest emitted string wins.  The result is
invariant under any permutation of the input atom order and idempotent.
"""

from __future__ import annotations

from molopt.smiles.graph import MolGraph
from molopt.smiles.writer import write_smiles


def initial_invariants(graph: MolGraph) -> list[tuple]:
    return [
        (
            atom.element,
            atom.charge,
            atom.hydrogens,
            graph.degree(i),
            atom.aromatic,
            atom.isotope or 0,
        )
        for i, atom in enumerate(graph.atoms)
    ]


def _dense_ranks(keys: list) -> list[int]:
    order = {key: rank for rank, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def refine_ranks(graph: MolGraph, seed: list) -> list[int]:
    """Stable dense ranks from a seed key list (lower rank sorts first)."""
    ranks = _dense_ranks(seed)
    classes = len(set(ranks))
    while True:
        keys = [
            (
                ranks[i],
                tuple(
                    sorted((order, ranks[nbr]) for nbr, order in graph.neighbors(i))
                ),
            )
            for i in range(len(graph))
        ]
        new_ranks = _dense_ranks(keys)
        new_classes = len(set(new_ranks))
        if new_classes == classes:
            return new_ranks
        ranks, classes = new_ranks, new_classes


def canonical_ranks(graph: MolGraph) -> list[int]:
    """One deterministic complete ranking (ties broken by branching)."""
    best: list[tuple[str, list[int]]] = []

    def descend(ranks: list[int]) -> None:
        tied = _first_tied_class(ranks)
        if tied is None:
            text = write_smiles(graph, ranks)
            if not best or text < best[0][0]:
                best[:] = [(text, ranks)]
            return
        for atom in tied:
            seed = [(ranks[i], 0 if i == atom else 1) for i in range(len(ranks))]
            descend(refine_ranks(graph, seed))

    descend(refine_ranks(graph, initial_invariants(graph)))
    return best[0][1]


def canonical_smiles(graph: MolGraph) -> str:
    """The canonical string: minimum emission over all tie-break branches."""
    best: str | None = None

    def descend(ranks: list[int]) -> None:
        nonlocal best
        tied = _first_tied_class(ranks)
        if tied is None:
            text = write_smiles(graph, ranks)
            if best is None or text < best:
                best = text
            return
        for atom in tied:
            seed = [(ranks[i], 0 if i == atom else 1) for i in range(len(ranks))]
            descend(refine_ranks(graph, seed))

    descend(refine_ranks(graph, initial_invariants(graph)))
    assert best is not None
    return best


def _first_tied_class(ranks: list[int]) -> list[int] | None:
    members: dict[int, list[int]] = {}
    for i, rank in enumerate(ranks):
        members.setdefault(rank, []).append(i)
    for rank in sorted(members):
        if len(members[rank]) > 1:
            return members[rank]
    return None
