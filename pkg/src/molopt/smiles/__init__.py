"""Self-contained SMILES toolkit: parsing, canonical form, matching."""

from molopt.smiles.canonical import canonical_ranks, canonical_smiles
from molopt.smiles.graph import (
    AROMATIC_BOND,
    Atom,
    DOUBLE,
    MolGraph,
    MoleculeError,
    ProtoAtom,
    SINGLE,
    TRIPLE,
    ValenceError,
)
from molopt.smiles.match import (
    MAX_PATTERN_ATOMS,
    PatternTooLarge,
    count_substructures,
    has_substructure,
)
from molopt.smiles.parser import SmilesError, parse_smiles
from molopt.smiles.writer import write_smiles

__all__ = [
    "AROMATIC_BOND",
    "Atom",
    "DOUBLE",
    "MAX_PATTERN_ATOMS",
    "MolGraph",
    "MoleculeError",
    "PatternTooLarge",
    "ProtoAtom",
    "SINGLE",
    "SmilesError",
    "TRIPLE",
    "ValenceError",
    "canonical_ranks",
    "canonical_smiles",
    "count_substructures",
    "has_substructure",
    "parse_smiles",
    "write_smiles",
]
