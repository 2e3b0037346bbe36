"""Molecular graph model: atoms, bonds, ring perception and aromatization.

A ``MolGraph`` is immutable after construction and safe to share between
threads.  Construction performs, in order:

1. structural validation (indices, self loops, duplicate bonds),
2. ring perception (ring-bond detection plus a smallest-rings basis),
3. resolution of unspecified bonds (aromatic between two aromatic ring
   atoms, single otherwise),
4. implicit-hydrogen assignment from the default-valence table,
5. aromatization of rings written in alternating single/double form.

Step 5 runs after hydrogen assignment so that hydrogen counts are always
derived from the explicit Kekule valences and never change when a ring is
re-labelled aromatic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from molopt.elements import AROMATIC_ELEMENTS, default_valences

# Bond order codes.  UNSPEC marks a bond whose symbol was omitted in the
# input; it is resolved during construction and never survives into a graph.
SINGLE = 1
DOUBLE = 2
TRIPLE = 3
AROMATIC_BOND = 4
UNSPEC = 0

_PI_DONORS = frozenset({"N", "O", "S"})


class MoleculeError(ValueError):
    """Invalid molecular structure (bad bonds, valence, aromatic misuse)."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.message = message
        self.position = position


class ValenceError(MoleculeError):
    """Bond order sum exceeds every default valence of the element."""


@dataclass(frozen=True)
class Atom:
    """One heavy atom.  ``hydrogens`` is the resolved total H count."""

    element: str
    charge: int = 0
    hydrogens: int = 0
    aromatic: bool = False
    isotope: int | None = None
    from_bracket: bool = False


@dataclass
class ProtoAtom:
    """Mutable atom record used while building a graph.

    ``hydrogens`` of ``None`` means "derive from the valence table";
    bracket atoms always carry an explicit count.
    """

    element: str
    charge: int = 0
    hydrogens: int | None = None
    aromatic: bool = False
    isotope: int | None = None
    from_bracket: bool = False
    position: int = 0


def _norm(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


class MolGraph:
    """Immutable molecular graph."""

    __slots__ = (
        "atoms",
        "bonds",
        "_adj",
        "_bond_order",
        "ring_bonds",
        "ring_atoms",
        "rings",
        "stripped_markers",
    )

    def __init__(
        self,
        atoms: list[ProtoAtom],
        bonds: list[tuple[int, int, int]] | list[list[int]],
        stripped_markers: bool = False,
    ):
        n = len(atoms)
        if n == 0:
            raise MoleculeError("molecule has no atoms")
        seen: set[tuple[int, int]] = set()
        for i, j, _ in bonds:
            if not (0 <= i < n and 0 <= j < n):
                raise MoleculeError(f"bond ({i},{j}) references a missing atom")
            if i == j:
                raise MoleculeError(f"self-loop bond on atom {i}", atoms[i].position)
            key = _norm(i, j)
            if key in seen:
                raise MoleculeError(
                    f"duplicate bond between atoms {i} and {j}", atoms[i].position
                )
            seen.add(key)

        work_bonds = [[i, j, order] for i, j, order in bonds]
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for b, (i, j, _) in enumerate(work_bonds):
            adj[i].append((j, b))
            adj[j].append((i, b))

        ring_bonds = _ring_bond_set(work_bonds, adj)
        rings = _smallest_rings(n, work_bonds, adj, ring_bonds)
        ring_atom_set = {a for ring in rings for a in ring}

        # Unspecified bonds become aromatic only between two aromatic atoms
        # inside a ring; everywhere else they are single.
        for bond in work_bonds:
            i, j, order = bond
            if order == UNSPEC:
                if (
                    atoms[i].aromatic
                    and atoms[j].aromatic
                    and _norm(i, j) in ring_bonds
                ):
                    bond[2] = AROMATIC_BOND
                else:
                    bond[2] = SINGLE
            elif order == AROMATIC_BOND:
                if not (atoms[i].aromatic and atoms[j].aromatic):
                    raise MoleculeError(
                        "aromatic bond between non-aromatic atoms",
                        atoms[i].position,
                    )

        for idx, atom in enumerate(atoms):
            if atom.aromatic:
                if atom.element not in AROMATIC_ELEMENTS:
                    raise MoleculeError(
                        f"element {atom.element} cannot be aromatic", atom.position
                    )
                if idx not in ring_atom_set:
                    raise MoleculeError(
                        "aromatic atom outside any ring", atom.position
                    )

        hydrogens = _assign_hydrogens(atoms, work_bonds, adj)
        _aromatize_kekule(atoms, work_bonds, adj, rings)

        self.atoms = tuple(
            Atom(
                element=a.element,
                charge=a.charge,
                hydrogens=hydrogens[idx],
                aromatic=a.aromatic,
                isotope=a.isotope,
                from_bracket=a.from_bracket,
            )
            for idx, a in enumerate(atoms)
        )
        self.bonds = tuple((i, j, order) for i, j, order in work_bonds)
        self._adj = tuple(
            tuple((nbr, work_bonds[b][2]) for nbr, b in neighbors)
            for neighbors in adj
        )
        self._bond_order = {_norm(i, j): order for i, j, order in self.bonds}
        self.ring_bonds = frozenset(ring_bonds)
        self.ring_atoms = frozenset(ring_atom_set)
        self.rings = tuple(tuple(r) for r in rings)
        self.stripped_markers = stripped_markers

    # -- queries ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.atoms)

    def neighbors(self, i: int) -> tuple[tuple[int, int], ...]:
        """(neighbor index, bond order) pairs for atom ``i``."""
        return self._adj[i]

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    def bond_order(self, i: int, j: int) -> int | None:
        return self._bond_order.get(_norm(i, j))

    def in_ring(self, i: int) -> bool:
        return i in self.ring_atoms

    def bond_in_ring(self, i: int, j: int) -> bool:
        return _norm(i, j) in self.ring_bonds

    def heavy_atom_count(self) -> int:
        return len(self.atoms)

    def element_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for atom in self.atoms:
            counts[atom.element] = counts.get(atom.element, 0) + 1
        return counts

    def total_hydrogens(self) -> int:
        return sum(a.hydrogens for a in self.atoms)


def derive_hydrogens(
    element: str,
    aromatic: bool,
    heavy_connections: int,
    bond_order_sum: int,
) -> int | None:
    """Implicit H count for an organic-subset atom, or None if no valence fits.

    Aromatic atoms follow the Daylight convention: aromatic carbon with two
    ring connections carries one hydrogen, every other aromatic atom carries
    none (pyrrole-type nitrogens must be written ``[nH]``).
    """
    if aromatic:
        if element == "C":
            return 1 if heavy_connections == 2 else 0
        return 0
    for valence in default_valences(element):
        if bond_order_sum <= valence:
            return valence - bond_order_sum
    return None


def _assign_hydrogens(
    atoms: list[ProtoAtom],
    bonds: list[list[int]],
    adj: list[list[tuple[int, int]]],
) -> list[int]:
    result: list[int] = []
    for idx, atom in enumerate(atoms):
        if atom.hydrogens is not None:
            result.append(atom.hydrogens)
            continue
        order_sum = 0
        for _, b in adj[idx]:
            order = bonds[b][2]
            order_sum += 0 if order == AROMATIC_BOND else order
        h = derive_hydrogens(atom.element, atom.aromatic, len(adj[idx]), order_sum)
        if h is None:
            raise ValenceError(
                f"valence {order_sum} not satisfiable for {atom.element}",
                atom.position,
            )
        result.append(h)
    return result


def _aromatize_kekule(
    atoms: list[ProtoAtom],
    bonds: list[list[int]],
    adj: list[list[tuple[int, int]]],
    rings: list[list[int]],
) -> None:
    """Mark alternating-bond 5/6-rings aromatic when the pi count reaches 6.

    Ring atoms either contribute one pi electron through a ring double bond
    or two through a lone pair (neutral N/O/S without any double bond).
    Rings with any other atom (sp3 carbon, charges, triple bonds, exocyclic
    double bonds) are left in Kekule form.
    """
    bond_of_pair = {
        frozenset((i, j)): b for b, (i, j, _) in enumerate(bonds)
    }
    # Rings are judged against the state as parsed (fused rings must not see
    # a sibling's freshly flipped flags), then all flips land together.
    atom_flips: set[int] = set()
    bond_flips: set[int] = set()

    for ring in rings:
        if len(ring) not in (5, 6):
            continue
        if all(atoms[a].aromatic for a in ring):
            continue
        ok = True
        pi = 0
        for a in ring:
            atom = atoms[a]
            if atom.aromatic or atom.element not in AROMATIC_ELEMENTS or atom.charge:
                ok = False
                break
            ring_doubles = 0
            exo_double = False
            for nbr, b in adj[a]:
                order = bonds[b][2]
                if order in (TRIPLE, AROMATIC_BOND):
                    ok = False
                    break
                if order == DOUBLE:
                    if _double_bond_in_some_ring(a, nbr, rings):
                        ring_doubles += 1
                    else:
                        exo_double = True
            if not ok:
                break
            if ring_doubles == 1 and not exo_double:
                pi += 1
            elif ring_doubles == 0 and not exo_double and atom.element in _PI_DONORS:
                pi += 2
            else:
                ok = False
                break
        if not ok or pi != 6:
            continue
        atom_flips.update(ring)
        for k in range(len(ring)):
            b = bond_of_pair.get(frozenset((ring[k], ring[(k + 1) % len(ring)])))
            if b is not None:
                bond_flips.add(b)

    for a in atom_flips:
        atoms[a].aromatic = True
    for b in bond_flips:
        bonds[b][2] = AROMATIC_BOND


def _double_bond_in_some_ring(a: int, nbr: int, rings: list[list[int]]) -> bool:
    for ring in rings:
        if a in ring and nbr in ring:
            return True
    return False


def _ring_bond_set(
    bonds: list[list[int]],
    adj: list[list[tuple[int, int]]],
) -> set[tuple[int, int]]:
    """A bond is a ring bond iff its endpoints stay connected without it."""
    ring: set[tuple[int, int]] = set()
    for b, (i, j, _) in enumerate(bonds):
        if _reachable_avoiding(i, j, adj, b):
            ring.add(_norm(i, j))
    return ring


def _reachable_avoiding(
    u: int,
    v: int,
    adj: list[list[tuple[int, int]]],
    skip_bond: int,
) -> bool:
    seen = {u}
    queue = deque([u])
    while queue:
        node = queue.popleft()
        for nbr, b in adj[node]:
            if b == skip_bond or nbr in seen:
                continue
            if nbr == v:
                return True
            seen.add(nbr)
            queue.append(nbr)
    return False


def _shortest_cycle_through(
    u: int,
    v: int,
    adj: list[list[tuple[int, int]]],
    skip_bond: int,
) -> list[int] | None:
    """BFS path u -> v avoiding one bond; returns the cycle atom list."""
    prev: dict[int, int] = {u: -1}
    queue = deque([u])
    while queue:
        node = queue.popleft()
        if node == v:
            path = [v]
            while path[-1] != u:
                path.append(prev[path[-1]])
            return path
        for nbr, b in adj[node]:
            if b == skip_bond or nbr in prev:
                continue
            prev[nbr] = node
            queue.append(nbr)
    return None


def _smallest_rings(
    n: int,
    bonds: list[list[int]],
    adj: list[list[tuple[int, int]]],
    ring_bonds: set[tuple[int, int]],
) -> list[list[int]]:
    """Smallest-set-of-smallest-rings via greedy GF(2) independence.

    Candidates are the shortest cycles through each ring bond, ordered by
    size then lowest atom indices.  The candidate set spans the cycle space
    of the ring system, so the greedy pass always completes the basis.
    """
    if not ring_bonds:
        return []
    bond_index = {_norm(i, j): b for b, (i, j, _) in enumerate(bonds)}
    ring_bond_ids = sorted(bond_index[e] for e in ring_bonds)
    bit_of = {b: k for k, b in enumerate(ring_bond_ids)}

    # Cyclomatic number summed over connected components.
    seen = [False] * n
    target = 0
    for root in range(n):
        if seen[root]:
            continue
        comp_nodes = 0
        comp_edge_ends = 0
        queue = deque([root])
        seen[root] = True
        while queue:
            node = queue.popleft()
            comp_nodes += 1
            comp_edge_ends += len(adj[node])
            for nbr, _ in adj[node]:
                if not seen[nbr]:
                    seen[nbr] = True
                    queue.append(nbr)
        target += comp_edge_ends // 2 - comp_nodes + 1
    if target <= 0:
        return []

    def cycle_mask(cycle: list[int]) -> int:
        mask = 0
        for k in range(len(cycle)):
            edge = _norm(cycle[k], cycle[(k + 1) % len(cycle)])
            mask |= 1 << bit_of[bond_index[edge]]
        return mask

    candidates: dict[frozenset[int], list[int]] = {}
    for b in ring_bond_ids:
        i, j, _ = bonds[b]
        cycle = _shortest_cycle_through(i, j, adj, b)
        if cycle is not None:
            candidates.setdefault(frozenset(cycle), cycle)
    ordered = sorted(candidates.values(), key=lambda c: (len(c), tuple(sorted(c))))

    basis: list[int] = []
    chosen: list[list[int]] = []
    for cycle in ordered:
        if len(chosen) == target:
            break
        mask = cycle_mask(cycle)
        for row in basis:
            mask = min(mask, mask ^ row)
        if mask:
            basis.append(mask)
            chosen.append(cycle)

    if len(chosen) < target:
        # Rare fused systems where per-bond shortest cycles are dependent:
        # grow the basis with next-shortest cycles through each ring bond.
        for b in ring_bond_ids:
            if len(chosen) == target:
                break
            i, j, _ = bonds[b]
            for cycle in _cycles_through(i, j, adj, b, limit=8):
                mask = cycle_mask(cycle)
                for row in basis:
                    mask = min(mask, mask ^ row)
                if mask:
                    basis.append(mask)
                    chosen.append(cycle)
                    break
    return chosen


def _cycles_through(
    u: int,
    v: int,
    adj: list[list[tuple[int, int]]],
    skip_bond: int,
    limit: int,
) -> list[list[int]]:
    """All simple paths u -> v (short ones first) avoiding one bond."""
    results: list[list[int]] = []
    stack: list[tuple[int, list[int]]] = [(u, [u])]
    while stack and len(results) < limit:
        node, path = stack.pop()
        if node == v:
            results.append(path)
            continue
        if len(path) > 12:
            continue
        for nbr, b in adj[node]:
            if b == skip_bond or nbr in path:
                continue
            stack.append((nbr, path + [nbr]))
    results.sort(key=len)
    return results
