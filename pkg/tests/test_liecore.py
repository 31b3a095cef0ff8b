"""Chevalley algebras, exact subspaces, normalizers and the nilcone test."""
from fractions import Fraction

import pytest

from branchkit import linalg as la
from branchkit.algebra import (ChevalleyAlgebra, check_antisymmetry, check_cartan_action,
                               form_invariance_failures, jacobi_failures)
from branchkit.errors import DimensionBound, UnsupportedType
from branchkit.lieops import is_subalgebra, normalizer
from branchkit.nilcone import sample_grid_agrees, subspace_in_nilcone
from branchkit.subspace import (apply_linear_map, full, intersect, orthocomplement, span, sum_,
                                zero)

from conftest import E, F, H, E1, E2, comb, vec


def test_rank_one_relations(sl2):
    assert sl2.dim == 3
    assert sl2.bracket(vec(*E), vec(*F)) == vec(*H)
    assert sl2.bracket(vec(*H), vec(*E)) == vec(0, 2, 0)
    assert sl2.bracket(vec(*E), vec(*E)) == vec(0, 0, 0)
    assert sl2.bracket(comb((1, E), (1, F)), vec(*H)) == vec(0, -2, 2)


def test_a2_jacobi_on_all_triples():
    a = ChevalleyAlgebra([("A", 2)])
    assert a.dim == 8
    assert len(a.root_datum.roots) == 6
    assert jacobi_failures(a) == []


def test_g2_root_count():
    a = ChevalleyAlgebra([("G", 2)])
    assert a.dim == 14
    assert len(a.root_datum.positive_roots) == 6


@pytest.mark.parametrize("ct", [[("B", 3)], [("C", 3)], [("D", 4)], [("F", 4)], [("A", 1), ("G", 2)]])
def test_structure_tables_are_consistent(ct):
    a = ChevalleyAlgebra(ct)
    assert check_antisymmetry(a)
    assert check_cartan_action(a)


def test_unknown_family_and_dimension_bound():
    with pytest.raises(UnsupportedType):
        ChevalleyAlgebra([("Q", 2)])
    with pytest.raises(UnsupportedType):
        ChevalleyAlgebra([("A", 0)])
    with pytest.raises(DimensionBound):
        ChevalleyAlgebra([("E", 8)])


def test_killing_form_values(sl2):
    assert sl2.form(vec(*H), vec(*H)) == 8
    assert sl2.form(vec(*E), vec(*E)) == 0
    assert sl2.form(vec(*E), vec(*F)) == 4


def test_form_is_invariant_on_g2():
    assert form_invariance_failures(ChevalleyAlgebra([("G", 2)])) == []


def test_subspace_operations(sl2):
    h, e, f = span([H], 3), span([E], 3), span([F], 3)
    assert sum_(h, e).dim == 2
    assert intersect(span([H, E], 3), span([E, F], 3)) == e
    s = span([H, E], 3)
    assert intersect(s, s) == s
    # canonical form: different spanning sets, equal subspaces
    assert span([comb((1, H), (1, E)), comb((1, H), (-1, E))], 3) == s


def test_orthocomplement(sl2):
    g = full(3)
    assert orthocomplement(sl2.killing_matrix, span([H], 3), g) == span([E, F], 3)
    assert orthocomplement(sl2.killing_matrix, span([H, E], 3), g) == span([E], 3)
    assert orthocomplement(sl2.killing_matrix, g, g) == zero(3)


def test_normalizer(sl2):
    e = span([E], 3)
    assert normalizer(sl2, e, span([H], 3)) == span([H], 3)
    assert normalizer(sl2, e, full(3)) == span([H, E], 3)
    assert normalizer(sl2, zero(3), span([H, F], 3)) == span([H, F], 3)


def test_is_subalgebra(sl2):
    assert is_subalgebra(sl2, span([H, E], 3))
    assert not is_subalgebra(sl2, span([E, F], 3))
    assert is_subalgebra(sl2, zero(3))


def test_nilpotent_elements(sl2):
    assert sl2.is_nilpotent_element(vec(*E))
    assert not sl2.is_nilpotent_element(vec(*H))
    assert not sl2.is_nilpotent_element(comb((1, E), (1, F)))


def test_nilcone_membership(sl2, sl2x2):
    assert subspace_in_nilcone(sl2, span([E], 3)).verdict
    res = subspace_in_nilcone(sl2, span([E, F], 3))
    assert not res.verdict
    assert res.witness == comb((1, E), (1, F))
    assert not sl2.is_nilpotent_element(res.witness)
    assert subspace_in_nilcone(sl2x2, span([E1, E2], 6)).verdict


def test_nilcone_agrees_with_grid_sampling(sl2):
    for s in (span([E], 3), span([E, F], 3), span([H, E], 3)):
        assert sample_grid_agrees(sl2, s)


def test_apply_linear_map(sl2):
    s = span([comb((1, H), (1, E))], 3)
    assert apply_linear_map(la.identity(3), s) == s
    assert apply_linear_map(la.zeros(3, 3), s) == zero(3)
    proj_h = [[Fraction(1), 0, 0], [0, 0, 0], [0, 0, 0]]
    assert apply_linear_map(proj_h, s) == span([H], 3)
