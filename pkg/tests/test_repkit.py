"""Weyl dimension, Freudenthal, constructed modules and weight characters."""
from fractions import Fraction

import pytest

from branchkit.errors import CoordinateMismatch, DimensionBound, NotDominant
from branchkit.repkit import (CartanData, WeightCharacter, check_serre_relations,
                              construct_irreducible, freudenthal_character, shift_character,
                              symmetric_power_by_monomials, symmetric_power_character,
                              tensor_character, top_exterior_weight, trivial_character,
                              weyl_dimension)
from branchkit.rootsystem import build_root_datum
from branchkit.subspace import span, zero

from conftest import E, E1, E2, H1, H2, comb

A1 = [[2]]
A2 = [[2, -1], [-1, 2]]


def ch(m):
    return WeightCharacter.from_map({(w,) if not isinstance(w, tuple) else w: c
                                     for w, c in m.items()})


def test_weyl_dimension_examples():
    assert weyl_dimension(A1, [0]) == 1
    assert weyl_dimension(A1, [1]) == 2
    assert weyl_dimension(A2, [1, 1]) == 8
    g2 = build_root_datum([("G", 2)]).cartan
    # the first simple root is short: its fundamental module is the 7-dimensional one
    assert weyl_dimension(g2, [1, 0]) == 7
    assert weyl_dimension(g2, [0, 1]) == 14


def test_weyl_dimension_rejects_non_dominant():
    with pytest.raises(NotDominant):
        weyl_dimension(A1, [-1])


def test_freudenthal_examples():
    assert freudenthal_character(A1, [2]) == ch({2: 1, 0: 1, -2: 1})
    assert freudenthal_character(A2, [1, 1])[(0, 0)] == 2
    assert freudenthal_character(build_root_datum([("B", 2)]).cartan, [0, 0]) == ch({(0, 0): 1})


def test_constructed_rank_one():
    two = construct_irreducible(A1, [1])
    assert two.dim == 2
    e = two.e[0]
    assert any(any(row) for row in e)
    assert [[sum(e[i][k] * e[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)] == [[0, 0], [0, 0]]
    four = construct_irreducible(A1, [3])
    assert four.dim == 4
    assert four.character() == ch({3: 1, 1: 1, -1: 1, -3: 1})


def test_constructed_adjoint_of_sl3():
    mod = construct_irreducible(A2, [1, 1])
    assert mod.dim == 8
    assert mod.character() == freudenthal_character(A2, [1, 1])
    assert check_serre_relations(mod)


def test_serre_relations_on_g2_module():
    mod = construct_irreducible(build_root_datum([("G", 2)]).cartan, [1, 1])
    assert mod.dim == weyl_dimension(build_root_datum([("G", 2)]).cartan, [1, 1])
    assert check_serre_relations(mod)


def test_module_bound():
    with pytest.raises(DimensionBound):
        construct_irreducible(A2, [5, 5], dim_bound=100)


def test_cartan_data_roots_of_b2_and_g2():
    assert len(CartanData(build_root_datum([("B", 2)]).cartan).positive_roots) == 4
    assert len(CartanData(build_root_datum([("G", 2)]).cartan).positive_roots) == 6


def test_symmetric_powers():
    assert symmetric_power_character(ch({2: 1, -2: 1}), 0) == ch({0: 1})
    assert symmetric_power_character(ch({5: 1}), 3) == ch({15: 1})
    assert symmetric_power_character(ch({2: 1, -2: 1}), 2) == ch({4: 1, 0: 1, -4: 1})


def test_tensor_characters():
    c = ch({1: 1, -1: 1})
    assert tensor_character(c, trivial_character(1)) == c
    assert tensor_character(c, c) == ch({2: 1, 0: 2, -2: 1})
    adj = ch({2: 1, 0: 1, -2: 1})
    assert tensor_character(adj, adj).mass == 9
    with pytest.raises(CoordinateMismatch):
        tensor_character(c, ch({(0, 0): 1}))


def test_shift():
    assert shift_character(ch({1: 1}), [Fraction(1, 2)]) == ch({Fraction(3, 2): 1})


def test_top_exterior_weight(sl2, sl2x2):
    assert top_exterior_weight(sl2, span([E], 3), span([(1, 0, 0)], 3)) == (2,)
    assert top_exterior_weight(sl2, zero(3), span([(1, 0, 0)], 3)) == (0,)
    hd = span([comb((1, H1), (1, H2))], 6)
    assert top_exterior_weight(sl2x2, span([comb((1, E1), (-1, E2))], 6), hd) == (2,)
