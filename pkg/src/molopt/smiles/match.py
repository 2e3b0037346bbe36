"""Substructure counting by backtracking subgraph monomorphism.

Pattern atoms match on element, aromatic flag and charge; a bracket-written
pattern atom additionally requires the target atom to carry at least that
many hydrogens (so ``[CH]=O`` finds any aldehyde).  Pattern bonds must match
the target bond order exactly, with aromatic treated as its own order.
Extra target bonds between mapped atoms are allowed, as in substructure
search.
"""

from __future__ import annotations

from molopt.smiles.graph import MolGraph

MAX_PATTERN_ATOMS = 16


class PatternTooLarge(ValueError):
    pass


def count_substructures(
    pattern: MolGraph,
    target: MolGraph,
    dedup: bool = False,
) -> int:
    """Number of injective label-consistent embeddings of pattern in target.

    With ``dedup`` the count collapses embeddings that cover the same target
    atom set (so benzene-in-benzene is 1 instead of 12 automorphisms).
    """
    np_, nt = len(pattern), len(target)
    if np_ > MAX_PATTERN_ATOMS:
        raise PatternTooLarge(
            f"pattern has {np_} atoms (limit {MAX_PATTERN_ATOMS})"
        )
    if np_ > nt:
        return 0
    if not _connected(pattern):
        raise ValueError("pattern must be a connected graph")

    # Quick reject on element/aromatic availability.
    need: dict[tuple[str, bool], int] = {}
    have: dict[tuple[str, bool], int] = {}
    for atom in pattern.atoms:
        need[(atom.element, atom.aromatic)] = (
            need.get((atom.element, atom.aromatic), 0) + 1
        )
    for atom in target.atoms:
        have[(atom.element, atom.aromatic)] = (
            have.get((atom.element, atom.aromatic), 0) + 1
        )
    for key, count in need.items():
        if have.get(key, 0) < count:
            return 0

    order = _search_order(pattern)
    candidates = [
        [t for t in range(nt) if _atom_match(pattern, p, target, t)]
        for p in range(np_)
    ]

    count = 0
    seen_sets: set[frozenset[int]] = set()
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(depth: int) -> None:
        nonlocal count
        if depth == len(order):
            if dedup:
                seen_sets.add(frozenset(mapping.values()))
            else:
                count += 1
            return
        p = order[depth]
        for t in candidates[p]:
            if t in used:
                continue
            ok = True
            for nbr, p_order in pattern.neighbors(p):
                if nbr in mapping:
                    if target.bond_order(mapping[nbr], t) != p_order:
                        ok = False
                        break
            if not ok:
                continue
            mapping[p] = t
            used.add(t)
            backtrack(depth + 1)
            used.discard(t)
            del mapping[p]

    backtrack(0)
    return len(seen_sets) if dedup else count


def has_substructure(pattern: MolGraph, target: MolGraph) -> bool:
    return count_substructures(pattern, target, dedup=True) > 0


def _atom_match(pattern: MolGraph, p: int, target: MolGraph, t: int) -> bool:
    pa, ta = pattern.atoms[p], target.atoms[t]
    if pa.element != ta.element or pa.aromatic != ta.aromatic:
        return False
    if pa.charge != ta.charge:
        return False
    if pa.from_bracket and ta.hydrogens < pa.hydrogens:
        return False
    return True


def _search_order(pattern: MolGraph) -> list[int]:
    """BFS order: each atom after the first touches an already-mapped one."""
    order = [0]
    placed = {0}
    head = 0
    while head < len(order):
        for nbr, _ in pattern.neighbors(order[head]):
            if nbr not in placed:
                placed.add(nbr)
                order.append(nbr)
        head += 1
    return order


def _connected(graph: MolGraph) -> bool:
    if len(graph) == 1:
        return True
    seen = {0}
    frontier = [0]
    while frontier:
        node = frontier.pop()
        for nbr, _ in graph.neighbors(node):
            if nbr not in seen:
                seen.add(nbr)
                frontier.append(nbr)
    return len(seen) == len(graph)
