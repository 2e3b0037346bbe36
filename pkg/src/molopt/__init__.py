"""Pool-based molecular optimization with budgeted oracles and a
self-contained SMILES toolkit."""

__version__ = "0.1.0"
