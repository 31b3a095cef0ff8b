"""Property-based checks of invariants that hold for all inputs."""
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from branchkit import linalg as la
from branchkit.algebra import ChevalleyAlgebra
from branchkit.assvar import saturation_dimension
from branchkit.corpus import generate_corpus
from branchkit.oracle import check_lemma_proj
from branchkit.parabolics import parabolic_from_grading
from branchkit.repkit import (CartanData, WeightCharacter, freudenthal_character,
                              symmetric_power_by_monomials, symmetric_power_character,
                              tensor_character, weyl_dimension)
from branchkit.rootsystem import build_root_datum
from branchkit.subspace import (form_is_nondegenerate_on, full, intersect, orthocomplement, span,
                                sum_)

SETTINGS = settings(max_examples=60, deadline=None)
small = st.integers(-3, 3).map(Fraction)


def vectors(n, max_count):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=max_count)


@st.composite
def subspaces(draw, n, max_count=None):
    return span(draw(vectors(n, max_count or n)), n)


@st.composite
def lemma_data(draw):
    n = draw(st.integers(2, 6))
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = draw(small)
    x = draw(subspaces(n))
    w = draw(subspaces(n))
    return g, x, w


@SETTINGS
@given(lemma_data())
def test_projection_lemma(data):
    g, x, w = data
    if la.rank(g, len(g)) < len(g) or x.dim == 0 or not form_is_nondegenerate_on(g, x):
        return
    assert check_lemma_proj(g, x, w)


@SETTINGS
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(subspaces(n), subspaces(n), subspaces(n))))
def test_modular_law_and_dimension_formula(triple):
    a, b, c = triple
    a_in_c = intersect(a, c)
    assert sum_(a_in_c, intersect(b, c)) == intersect(sum_(a_in_c, b), c)
    assert sum_(a, b).dim + intersect(a, b).dim == a.dim + b.dim


B2 = ChevalleyAlgebra([("B", 2)])


@SETTINGS
@given(subspaces(B2.dim, 3), st.sampled_from([Fraction(1, 3), Fraction(2), Fraction(-5)]))
def test_orthocomplement_is_scale_invariant(s, c):
    form = B2.killing_matrix
    scaled = la.matscale(c, form)
    assert orthocomplement(form, s, full(B2.dim)) == orthocomplement(scaled, s, full(B2.dim))


@SETTINGS
@given(st.lists(st.lists(small, min_size=B2.dim, max_size=B2.dim), min_size=3, max_size=3))
def test_bracket_antisymmetry_and_jacobi(xs):
    x, y, z = (tuple(v) for v in xs)
    assert B2.bracket(x, y) == la.scale(Fraction(-1), B2.bracket(y, x))
    jac = la.add(la.add(B2.bracket(x, B2.bracket(y, z)), B2.bracket(y, B2.bracket(z, x))),
                 B2.bracket(z, B2.bracket(x, y)))
    assert la.is_zero(jac)
    assert B2.form(B2.bracket(x, y), z) == B2.form(x, B2.bracket(y, z))


weight_chars = st.dictionaries(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                               st.integers(1, 2), max_size=4).map(WeightCharacter.from_map)


@SETTINGS
@given(weight_chars, st.integers(0, 4))
def test_newton_recursion_matches_monomials(c, p):
    assert symmetric_power_character(c, p, width=2) == symmetric_power_by_monomials(c, p, width=2)


@SETTINGS
@given(weight_chars, weight_chars)
def test_tensor_mass_is_multiplicative(c1, c2):
    assert tensor_character(c1, c2).mass == c1.mass * c2.mass


CARTANS = [build_root_datum(t).cartan for t in ([("A", 2)], [("B", 2)], [("G", 2)], [("A", 3)])]


@SETTINGS
@given(st.sampled_from(CARTANS), st.data())
def test_freudenthal_is_weyl_invariant_with_weyl_mass(cartan, data):
    r = len(cartan)
    lam = data.draw(st.lists(st.integers(0, 2), min_size=r, max_size=r))
    cd = CartanData(cartan)
    char = freudenthal_character(cartan, lam)
    assert char.mass == weyl_dimension(cartan, lam)
    table = char.as_dict()
    for w, m in char.entries:
        for i in range(r):
            assert table.get(tuple(cd.reflect(w, i)), 0) == m


CORPUS = [c for c in generate_corpus([(("A", 1), ("A", 1)), (("A", 2),), (("B", 2),)])]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(0, 50))
def test_saturation_bounds_and_monotonicity(inst, seed):
    a, pair = inst.algebra, inst.pair
    pb = parabolic_from_grading(a, pair.theta, inst.grading)
    s = pb.ubar_cap_p
    small_group = saturation_dimension(a, pair.kprime, s, seed).dimension
    big_group = saturation_dimension(a, pair.k, s, seed).dimension
    assert s.dim <= small_group <= big_group <= s.dim + pair.k.dim
