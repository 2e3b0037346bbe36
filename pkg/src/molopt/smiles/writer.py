"""SMILES emission from a molecular graph with a caller-chosen atom order."""

from __future__ import annotations

from molopt.elements import ORGANIC_SUBSET
from molopt.smiles.graph import (
    AROMATIC_BOND,
    DOUBLE,
    MolGraph,
    SINGLE,
    TRIPLE,
    derive_hydrogens,
)


def write_smiles(graph: MolGraph, ranks: list[int] | None = None) -> str:
    """Emit SMILES visiting atoms in ascending ``ranks`` order.

    ``ranks`` is any total order over atom indices (defaults to input
    order).  The string re-parses to a graph isomorphic to the input:
    hydrogen counts that the organic-subset rules would not re-derive are
    written in brackets.
    """
    n = len(graph)
    if ranks is None:
        ranks = list(range(n))

    visited = [False] * n
    pieces: list[str] = []
    for start in sorted(range(n), key=lambda i: ranks[i]):
        if not visited[start]:
            pieces.append(_write_component(graph, start, ranks, visited))
    return ".".join(pieces)


def _write_component(
    graph: MolGraph,
    start: int,
    ranks: list[int],
    visited: list[bool],
) -> str:
    preorder: dict[int, int] = {}
    children: dict[int, list[int]] = {}
    parent_of: dict[int, int] = {}

    def dfs(node: int, parent: int | None) -> None:
        preorder[node] = len(preorder)
        visited[node] = True
        children[node] = []
        for nbr, _ in sorted(graph.neighbors(node), key=lambda t: ranks[t[0]]):
            if nbr == parent or nbr in preorder:
                continue
            parent_of[nbr] = node
            children[node].append(nbr)
            dfs(nbr, node)

    dfs(start, None)

    # Non-tree bonds inside this component become ring closures, opened at
    # the endpoint that is emitted first.
    opens_at: dict[int, list[tuple[int, int]]] = {}
    closes_at: dict[int, list[int]] = {}
    for a, b, order in graph.bonds:
        if a not in preorder or b not in preorder:
            continue
        if parent_of.get(a) == b or parent_of.get(b) == a:
            continue
        open_atom, close_atom = (a, b) if preorder[a] < preorder[b] else (b, a)
        opens_at.setdefault(open_atom, []).append((close_atom, order))
        closes_at.setdefault(close_atom, []).append(open_atom)

    # Ring-closure digits in emission order, smallest free digit first.
    digit_of: dict[tuple[int, int], int] = {}
    free = list(range(1, 100))
    for node in sorted(preorder, key=preorder.get):  # type: ignore[arg-type]
        for open_atom in sorted(closes_at.get(node, []), key=lambda a: preorder[a]):
            free.append(digit_of[(open_atom, node)])
            free.sort()
        for close_atom, _ in sorted(
            opens_at.get(node, []), key=lambda t: preorder[t[0]]
        ):
            digit_of[(node, close_atom)] = free.pop(0)

    out: list[str] = []

    def emit(node: int) -> None:
        out.append(_atom_token(graph, node))
        for close_atom, order in sorted(
            opens_at.get(node, []), key=lambda t: preorder[t[0]]
        ):
            out.append(
                _bond_token(graph, node, close_atom, order)
                + _digit_token(digit_of[(node, close_atom)])
            )
        for open_atom in sorted(closes_at.get(node, []), key=lambda a: preorder[a]):
            out.append(_digit_token(digit_of[(open_atom, node)]))
        kids = children[node]
        for k, kid in enumerate(kids):
            token = _bond_token(graph, node, kid, graph.bond_order(node, kid))
            if k < len(kids) - 1:
                out.append("(" + token)
                emit(kid)
                out.append(")")
            else:
                out.append(token)
                emit(kid)

    emit(start)
    return "".join(out)


def _digit_token(digit: int) -> str:
    return str(digit) if digit < 10 else f"%{digit:02d}"


def _bond_token(graph: MolGraph, a: int, b: int, order: int) -> str:
    if order == SINGLE:
        both_aromatic = graph.atoms[a].aromatic and graph.atoms[b].aromatic
        return "-" if both_aromatic else ""
    if order == DOUBLE:
        return "="
    if order == TRIPLE:
        return "#"
    if order == AROMATIC_BOND:
        return ""
    raise ValueError(f"unknown bond order {order}")


def _atom_token(graph: MolGraph, i: int) -> str:
    atom = graph.atoms[i]
    symbol = atom.element.lower() if atom.aromatic else atom.element
    needs_bracket = (
        atom.charge != 0
        or atom.isotope is not None
        or atom.element not in ORGANIC_SUBSET
    )
    if not needs_bracket:
        order_sum = sum(
            0 if order == AROMATIC_BOND else order
            for _, order in graph.neighbors(i)
        )
        derived = derive_hydrogens(
            atom.element, atom.aromatic, graph.degree(i), order_sum
        )
        if derived != atom.hydrogens:
            needs_bracket = True
    if not needs_bracket:
        return symbol

    iso = str(atom.isotope) if atom.isotope is not None else ""
    if atom.hydrogens == 0:
        hpart = ""
    elif atom.hydrogens == 1:
        hpart = "H"
    else:
        hpart = f"H{atom.hydrogens}"
    if atom.charge == 0:
        cpart = ""
    elif atom.charge == 1:
        cpart = "+"
    elif atom.charge == -1:
        cpart = "-"
    else:
        cpart = f"{atom.charge:+d}"
    return f"[{iso}{symbol}{hpart}{cpart}]"
