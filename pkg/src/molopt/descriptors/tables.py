"""Descriptor parameter tables: loading, checksum verification, caching.

Every data file carries its SHA-256 in ``data/MANIFEST.sha256``; a mismatch
aborts loading so silently corrupted parameters can never produce plausible
numbers.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


class TableIntegrityError(RuntimeError):
    pass


def _data_root():
    return resources.files(__package__) / "data"


def _read_verified(filename: str) -> str:
    blob = (_data_root() / filename).read_bytes()
    manifest = (_data_root() / "MANIFEST.sha256").read_text()
    expected = None
    for line in manifest.splitlines():
        parts = line.split()
        if len(parts) == 2 and parts[1] == filename:
            expected = parts[0]
    if expected is None:
        raise TableIntegrityError(f"{filename} missing from MANIFEST.sha256")
    actual = hashlib.sha256(blob).hexdigest()
    if actual != expected:
        raise TableIntegrityError(
            f"{filename} checksum mismatch: {actual} != {expected}"
        )
    return blob.decode("utf-8")


@dataclass(frozen=True)
class TpsaRow:
    element: str
    aromatic: bool
    charge: int
    hydrogens: int
    singles: int
    doubles: int
    triples: int
    aromatics: int
    ring3: bool
    contribution: float


@lru_cache(maxsize=1)
def tpsa_table() -> dict[tuple, float]:
    rows = _read_verified("ertl_tpsa.tsv").splitlines()
    header = rows[0].split("\t")
    assert header[0] == "element"
    table: dict[tuple, float] = {}
    for line in rows[1:]:
        if not line.strip():
            continue
        (elem, arom, charge, h, s, d, t, a, r3, contrib) = line.split("\t")
        key = (
            elem,
            arom == "1",
            int(charge),
            int(h),
            int(s),
            int(d),
            int(t),
            int(a),
            r3 == "1",
        )
        table[key] = float(contrib)
    return table


@dataclass(frozen=True)
class CrippenRule:
    name: str
    element: str  # '*' matches any
    aromatic: str  # '0', '1' or '*'
    hmin: int
    hmax: int
    charge: str  # '0', '+', '-' or '*'
    predicates: tuple[str, ...]
    logp: float


@lru_cache(maxsize=1)
def crippen_rules() -> tuple[CrippenRule, ...]:
    rows = _read_verified("crippen_atoms.tsv").splitlines()
    rules = []
    for line in rows[1:]:
        if not line.strip():
            continue
        name, elem, arom, hmin, hmax, charge, preds, logp = line.split("\t")
        rules.append(
            CrippenRule(
                name=name,
                element=elem,
                aromatic=arom,
                hmin=int(hmin),
                hmax=int(hmax),
                charge=charge,
                predicates=tuple(p for p in preds.split(";") if p and p != "-"),
                logp=float(logp),
            )
        )
    return tuple(rules)


@dataclass(frozen=True)
class AdsParams:
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    dmax: float


@lru_cache(maxsize=1)
def ads_table() -> dict[str, AdsParams]:
    rows = _read_verified("qed_ads.tsv").splitlines()
    table: dict[str, AdsParams] = {}
    for line in rows[1:]:
        if not line.strip():
            continue
        prop, *values = line.split("\t")
        a, b, c, d, e, f, dmax = (float(v) for v in values)
        table[prop] = AdsParams(a, b, c, d, e, f, dmax)
    return table


@lru_cache(maxsize=1)
def alert_patterns() -> tuple[str, ...]:
    lines = _read_verified("qed_alerts.txt").splitlines()
    return tuple(
        line.strip()
        for line in lines
        if line.strip() and not line.startswith("#")
    )
