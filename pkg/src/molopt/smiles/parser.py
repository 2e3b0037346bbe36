"""SMILES reader for the organic subset plus bracket atoms.

Supported: organic-subset atoms, aromatic lowercase, bracket atoms with
isotope/charge/H-count, branches, ring closures (including ``%nn``), bond
symbols ``- = # :``, dot-separated components.  Stereo markers (``/ \\ @
@@``) are parsed and dropped; the resulting graph carries a
``stripped_markers`` flag.  Every failure reports the byte offset at which
the problem was detected.
"""

from __future__ import annotations

import re

from molopt.smiles.graph import (
    AROMATIC_BOND,
    DOUBLE,
    MolGraph,
    MoleculeError,
    ProtoAtom,
    SINGLE,
    TRIPLE,
    UNSPEC,
)


class SmilesError(ValueError):
    """Syntax or structure error, with the offending byte offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.message = message
        self.position = position


_ORGANIC_TOKENS = ("Cl", "Br", "B", "C", "N", "O", "P", "S", "F", "I")
_AROMATIC_TOKENS = ("b", "c", "n", "o", "p", "s")
_BOND_CODES = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC_BOND}

_BRACKET_RE = re.compile(
    r"""\[
        (?P<isotope>\d+)?
        (?P<symbol>[A-Z][a-z]?|[bcnops])
        (?P<chiral>@{1,2})?
        (?P<hcount>H\d*)?
        (?P<charge>\+{1,3}|-{1,3}|\+\d+|-\d+)?
        (?::\d+)?
        \]""",
    re.VERBOSE,
)


def parse_smiles(text: str) -> MolGraph:
    """Parse a SMILES string into a :class:`MolGraph`.

    Raises :class:`SmilesError` on any syntax, ring-closure, parenthesis or
    valence problem.
    """
    if not text:
        raise SmilesError("empty SMILES", 0)

    atoms: list[ProtoAtom] = []
    bonds: list[tuple[int, int, int]] = []
    stripped = False

    prev: int | None = None
    pending = UNSPEC
    pending_pos = -1
    branch_stack: list[int | None] = []
    open_rings: dict[int, tuple[int, int, int]] = {}  # num -> (atom, bond, pos)

    def add_atom(atom: ProtoAtom) -> None:
        nonlocal prev, pending
        atoms.append(atom)
        idx = len(atoms) - 1
        if prev is not None:
            bonds.append((prev, idx, pending))
        prev = idx
        pending = UNSPEC

    i = 0
    n = len(text)
    while i < n:
        ch = text[i]

        if ch in _BOND_CODES:
            if pending != UNSPEC:
                raise SmilesError("two bond symbols in a row", i)
            pending = _BOND_CODES[ch]
            pending_pos = i
            i += 1
            continue
        if ch in "/\\":
            if pending != UNSPEC:
                raise SmilesError("two bond symbols in a row", i)
            pending = SINGLE
            pending_pos = i
            stripped = True
            i += 1
            continue

        if ch == "(":
            if prev is None:
                raise SmilesError("branch opens before any atom", i)
            if pending != UNSPEC:
                raise SmilesError("bond symbol before branch open", i)
            branch_stack.append(prev)
            i += 1
            continue
        if ch == ")":
            if not branch_stack:
                raise SmilesError("unmatched closing parenthesis", i)
            if pending != UNSPEC:
                raise SmilesError("dangling bond before branch close", i)
            prev = branch_stack.pop()
            i += 1
            continue

        if ch == ".":
            if pending != UNSPEC:
                raise SmilesError("bond symbol before dot separator", i)
            if prev is None:
                raise SmilesError("dot separator before any atom", i)
            prev = None
            i += 1
            continue

        if ch.isdigit() or ch == "%":
            if prev is None:
                raise SmilesError("ring closure before any atom", i)
            if ch == "%":
                if i + 2 >= n or not text[i + 1 : i + 3].isdigit():
                    raise SmilesError("%% must be followed by two digits", i)
                num = int(text[i + 1 : i + 3])
                width = 3
            else:
                num = int(ch)
                width = 1
            if num in open_rings:
                other, other_bond, other_pos = open_rings.pop(num)
                if other == prev:
                    raise SmilesError(f"ring bond {num} closes on its own atom", i)
                order = _merge_ring_bond(other_bond, pending, i)
                bonds.append((other, prev, order))
            else:
                open_rings[num] = (prev, pending, i)
            pending = UNSPEC
            i += width
            continue

        if ch == "[":
            match = _BRACKET_RE.match(text, i)
            if match is None:
                raise SmilesError("malformed bracket atom", i)
            atom, had_stereo = _bracket_atom(match, i)
            stripped = stripped or had_stereo
            add_atom(atom)
            i = match.end()
            continue

        organic = _match_organic(text, i)
        if organic is not None:
            symbol, width, aromatic = organic
            add_atom(
                ProtoAtom(element=symbol, aromatic=aromatic, position=i)
            )
            i += width
            continue

        raise SmilesError(f"unexpected character {ch!r}", i)

    if pending != UNSPEC:
        raise SmilesError("dangling bond at end of input", pending_pos)
    if branch_stack:
        raise SmilesError("unmatched opening parenthesis", n - 1)
    if open_rings:
        num, (_, _, pos) = sorted(open_rings.items())[0]
        raise SmilesError(f"unclosed ring bond {num}", pos)
    if not atoms:
        raise SmilesError("no atoms in SMILES", 0)

    try:
        return MolGraph(atoms, bonds, stripped_markers=stripped)
    except MoleculeError as exc:
        raise SmilesError(exc.message, exc.position or 0) from exc


def _merge_ring_bond(open_order: int, close_order: int, pos: int) -> int:
    if open_order == UNSPEC:
        return close_order
    if close_order == UNSPEC or close_order == open_order:
        return open_order
    raise SmilesError("conflicting bond orders on ring closure", pos)


def _match_organic(text: str, i: int) -> tuple[str, int, bool] | None:
    for token in _ORGANIC_TOKENS:
        if text.startswith(token, i):
            return token, len(token), False
    ch = text[i]
    if ch in _AROMATIC_TOKENS:
        return ch.upper(), 1, True
    return None


def _bracket_atom(match: re.Match[str], pos: int) -> tuple[ProtoAtom, bool]:
    symbol = match.group("symbol")
    aromatic = symbol.islower()
    element = symbol.capitalize() if aromatic else symbol
    if element == "H":
        raise SmilesError("explicit hydrogen atoms are not supported", pos)

    hcount = match.group("hcount")
    if hcount is None:
        hydrogens = 0
    elif hcount == "H":
        hydrogens = 1
    else:
        hydrogens = int(hcount[1:])

    charge_text = match.group("charge")
    if charge_text is None:
        charge = 0
    elif set(charge_text) <= {"+"}:
        charge = len(charge_text)
    elif set(charge_text) <= {"-"}:
        charge = -len(charge_text)
    else:
        charge = int(charge_text)

    isotope = match.group("isotope")
    return (
        ProtoAtom(
            element=element,
            charge=charge,
            hydrogens=hydrogens,
            aromatic=aromatic,
            isotope=int(isotope) if isotope else None,
            from_bracket=True,
            position=pos,
        ),
        match.group("chiral") is not None,
    )
