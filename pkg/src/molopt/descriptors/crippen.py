"""Atom typing for the additive octanol/water partition model.

Rules live in ``data/crippen_atoms.tsv`` and are evaluated first-match-wins
against each heavy atom.  The predicate names referenced by the table are
implemented here; hydrogen rows are matched against the heavy atom carrying
the hydrogens.
"""

from __future__ import annotations

from molopt.elements import HETEROATOMS
from molopt.smiles.graph import AROMATIC_BOND, DOUBLE, MolGraph, SINGLE, TRIPLE

from molopt.descriptors.tables import CrippenRule, crippen_rules


def _bonds_of(graph: MolGraph, i: int):
    return graph.neighbors(i)


def _has_order(graph: MolGraph, i: int, order: int) -> bool:
    return any(o == order for _, o in graph.neighbors(i))


def _sp3(graph: MolGraph, i: int) -> bool:
    return all(o == SINGLE for _, o in graph.neighbors(i))


def _dbl_partners(graph: MolGraph, i: int):
    return [nbr for nbr, o in graph.neighbors(i) if o == DOUBLE]


def _pred_triple(graph, i):
    return _has_order(graph, i, TRIPLE)


def _pred_has_dbl(graph, i):
    return _has_order(graph, i, DOUBLE)


def _pred_dbl_het(graph, i):
    return any(
        graph.atoms[nbr].element != "C" for nbr in _dbl_partners(graph, i)
    )


def _pred_dbl_c(graph, i):
    return any(
        graph.atoms[nbr].element == "C" for nbr in _dbl_partners(graph, i)
    )


def _pred_dbl_arom_c(graph, i):
    return any(
        graph.atoms[nbr].element == "C" and graph.atoms[nbr].aromatic
        for nbr in _dbl_partners(graph, i)
    )


def _pred_dbl_n_o(graph, i):
    return any(
        graph.atoms[nbr].element in ("N", "O")
        for nbr in _dbl_partners(graph, i)
    )


def _pred_dbl_s(graph, i):
    return any(
        graph.atoms[nbr].element == "S" for nbr in _dbl_partners(graph, i)
    )


def _pred_sp3(graph, i):
    return _sp3(graph, i)


def _pred_only_al_c(graph, i):
    return all(
        graph.atoms[nbr].element == "C" and not graph.atoms[nbr].aromatic
        for nbr, _ in graph.neighbors(i)
    )


def _pred_att_het_al(graph, i):
    return any(
        graph.atoms[nbr].element in HETEROATOMS and not graph.atoms[nbr].aromatic
        for nbr, _ in graph.neighbors(i)
    )


def _pred_att_arom(graph, i):
    return any(graph.atoms[nbr].aromatic for nbr, _ in graph.neighbors(i))


def _pred_no_att_arom(graph, i):
    return not _pred_att_arom(graph, i)


def _pred_att_arom_c(graph, i):
    return any(
        graph.atoms[nbr].aromatic and graph.atoms[nbr].element == "C"
        for nbr, _ in graph.neighbors(i)
    )


def _pred_att_arom_het(graph, i):
    return any(
        graph.atoms[nbr].aromatic and graph.atoms[nbr].element != "C"
        for nbr, _ in graph.neighbors(i)
    )


def _att_single_al(graph, i, element):
    return any(
        o == SINGLE
        and graph.atoms[nbr].element == element
        and not graph.atoms[nbr].aromatic
        for nbr, o in graph.neighbors(i)
    )


def _pred_att_single_al_c(graph, i):
    return _att_single_al(graph, i, "C")


def _pred_att_single_al_n(graph, i):
    return _att_single_al(graph, i, "N")


def _pred_att_single_al_o(graph, i):
    return _att_single_al(graph, i, "O")


def _pred_att_single_al_s(graph, i):
    return _att_single_al(graph, i, "S")


def _pred_att_single_arom(graph, i):
    return any(
        o == SINGLE and graph.atoms[nbr].aromatic
        for nbr, o in graph.neighbors(i)
    )


def _pred_arom3(graph, i):
    return sum(1 for _, o in graph.neighbors(i) if o == AROMATIC_BOND) >= 3


def _att_element(graph, i, element):
    return any(
        graph.atoms[nbr].element == element for nbr, _ in graph.neighbors(i)
    )


def _pred_att_f(graph, i):
    return _att_element(graph, i, "F")


def _pred_att_cl(graph, i):
    return _att_element(graph, i, "Cl")


def _pred_att_br(graph, i):
    return _att_element(graph, i, "Br")


def _pred_att_i(graph, i):
    return _att_element(graph, i, "I")


def _pred_att_al_n(graph, i):
    return any(
        graph.atoms[nbr].element == "N" and not graph.atoms[nbr].aromatic
        for nbr, _ in graph.neighbors(i)
    )


def _pred_att_al_s(graph, i):
    return any(
        graph.atoms[nbr].element == "S" and not graph.atoms[nbr].aromatic
        for nbr, _ in graph.neighbors(i)
    )


def _pred_att_carboxylate(graph, i):
    # O- attached to a carbon that carries a double bond to another oxygen
    for nbr, o in graph.neighbors(i):
        if o == SINGLE and graph.atoms[nbr].element == "C":
            for nbr2, o2 in graph.neighbors(nbr):
                if nbr2 != i and o2 == DOUBLE and graph.atoms[nbr2].element == "O":
                    return True
    return False


def _carbonyl_partner(graph, i):
    for nbr in _dbl_partners(graph, i):
        if graph.atoms[nbr].element == "C":
            return nbr
    return None


def _pred_co_other_no_c(graph, i):
    partner = _carbonyl_partner(graph, i)
    if partner is None:
        return False
    others = [nbr for nbr, _ in graph.neighbors(partner) if nbr != i]
    return bool(others) and all(
        graph.atoms[nbr].element != "C" for nbr in others
    )


def _pred_co_other_arom(graph, i):
    partner = _carbonyl_partner(graph, i)
    if partner is None:
        return False
    return any(
        graph.atoms[nbr].aromatic
        for nbr, _ in graph.neighbors(partner)
        if nbr != i
    )


def _pred_two_al_c(graph, i):
    aliphatic_c = [
        nbr
        for nbr, o in graph.neighbors(i)
        if o == SINGLE
        and graph.atoms[nbr].element == "C"
        and not graph.atoms[nbr].aromatic
    ]
    return len(aliphatic_c) >= 2


# Hydrogen rows match on the heavy atom that carries the hydrogens.


def _pred_parent_c(graph, i):
    return graph.atoms[i].element == "C"


def _pred_parent_n(graph, i):
    atom = graph.atoms[i]
    if atom.element == "N":
        return True
    if atom.element == "O":
        return any(
            graph.atoms[nbr].element == "N" for nbr, _ in graph.neighbors(i)
        )
    return False


def _pred_parent_o_acidic(graph, i):
    atom = graph.atoms[i]
    if atom.element != "O":
        return False
    for nbr, o in graph.neighbors(i):
        elem = graph.atoms[nbr].element
        if elem in ("O", "S"):
            return True
        if elem == "C" and o == SINGLE:
            for nbr2, o2 in graph.neighbors(nbr):
                if (
                    nbr2 != i
                    and o2 == DOUBLE
                    and graph.atoms[nbr2].element in ("C", "N", "O", "S")
                ):
                    return True
    return False


def _pred_parent_o(graph, i):
    return graph.atoms[i].element == "O"


_PREDICATES = {
    name[len("_pred_") :]: fn
    for name, fn in list(globals().items())
    if name.startswith("_pred_")
}


def _rule_matches(rule: CrippenRule, graph: MolGraph, i: int) -> bool:
    atom = graph.atoms[i]
    if rule.aromatic != "*" and (rule.aromatic == "1") != atom.aromatic:
        return False
    if not (rule.hmin <= atom.hydrogens <= rule.hmax):
        return False
    if rule.charge == "0" and atom.charge != 0:
        return False
    if rule.charge == "+" and atom.charge <= 0:
        return False
    if rule.charge == "-" and atom.charge >= 0:
        return False
    return all(_PREDICATES[p](graph, i) for p in rule.predicates)


def atom_type(graph: MolGraph, i: int) -> CrippenRule:
    element = graph.atoms[i].element
    for rule in crippen_rules():
        if rule.element in (element, "*") and rule.element != "H":
            if _rule_matches(rule, graph, i):
                return rule
    raise AssertionError("fallback rule X must match every atom")


def hydrogen_type(graph: MolGraph, parent: int) -> CrippenRule:
    for rule in crippen_rules():
        if rule.element != "H":
            continue
        if all(_PREDICATES[p](graph, parent) for p in rule.predicates):
            return rule
    raise AssertionError("fallback hydrogen rule must match")


def clogp(graph: MolGraph) -> float:
    """Octanol/water partition estimate: sum of typed atom contributions."""
    total = 0.0
    for i, atom in enumerate(graph.atoms):
        total += atom_type(graph, i).logp
        if atom.hydrogens:
            total += atom.hydrogens * hydrogen_type(graph, i).logp
    return total
