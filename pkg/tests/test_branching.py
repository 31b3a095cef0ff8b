"""Lambda flags, the branch space, Hom and Euler multiplicities, tables and the Blattner bound."""
from fractions import Fraction

import pytest

from branchkit.branching import (BranchModule, blattner_bound, blattner_table, branch_table,
                                 build_branch_space, check_lambda, enumerate_lambda_candidates,
                                 euler_multiplicities, multiplicity_euler, multiplicity_hom,
                                 prepare_branch)
from branchkit.errors import HypothesisViolated, NotDominant
from branchkit.parabolics import construct_qprime, levi_split, parabolic_from_grading
from branchkit.sympair import derive_pair, identity_involution, involution_from_signs

from conftest import E


def _ctx(pb, pair, lam):
    return prepare_branch(pb, pair, lam)


@pytest.fixture(scope="module")
def sl2_borel(sl2, su11):
    return parabolic_from_grading(sl2, su11, [1])


def test_lambda_flags_rank_one(sl2_borel, sl2_pair):
    lam = check_lambda(sl2_borel, sl2_pair, [5])
    assert lam.linear and lam.weakly_fair
    assert lam.evidence["min_fair_pairing"]["value"] == "6"
    assert all(check_lambda(sl2_borel, sl2_pair, [0]).flags().values())
    neg = check_lambda(sl2_borel, sl2_pair, [-2])
    assert not neg.weakly_fair
    assert neg.evidence["min_fair_pairing"]["value"] == "-1"


def test_half_integral_lambda_is_not_linear(sl2_borel, sl2_pair):
    assert not check_lambda(sl2_borel, sl2_pair, [Fraction(1, 2)]).linear


def test_branch_space_swap(swap_pair, swap_open):
    ctx = _ctx(swap_open, swap_pair, [0, 0])
    assert ctx.space.dim == 1
    assert ctx.space.quotient_weights == ((2,),)
    assert ctx.space.top_weight == (2,)


def test_branch_space_sigma_identity(sl2, su11):
    pair = derive_pair(sl2, su11, identity_involution(sl2))
    pb = parabolic_from_grading(sl2, su11, [1])
    ctx = _ctx(pb, pair, [0])
    assert ctx.space.dim == 0
    assert BranchModule(ctx.space, ctx.lam, 0).dim == 1
    # the symmetric powers of the zero space vanish in positive degree
    assert BranchModule(ctx.space, ctx.lam, 2).dim == 0
    assert enumerate_lambda_candidates(ctx.space, ctx.lam, ctx.split, 2) == []


def test_branch_space_sigma_equals_theta(sl2_borel, sl2_pair):
    ctx = _ctx(sl2_borel, sl2_pair, [0])
    assert ctx.space.dim == 1
    assert ctx.space.quotient_basis == (tuple(Fraction(x) for x in E),)
    assert ctx.space.quotient_weights == ((2,),)


@pytest.mark.parametrize("l1,l2", [(1, 1), (2, 3), (3, 2)])
def test_candidates_on_the_ladder(swap_pair, swap_open, l1, l2):
    ctx = _ctx(swap_open, swap_pair, [l1, l2])
    assert enumerate_lambda_candidates(ctx.space, ctx.lam, ctx.split, 0) == [(l1 + l2 + 2,)]
    assert enumerate_lambda_candidates(ctx.space, ctx.lam, ctx.split, 2) == [(l1 + l2 + 6,)]


def test_hom_multiplicity_on_a_torus(swap_pair, swap_open):
    ctx = _ctx(swap_open, swap_pair, [2, 3])
    assert multiplicity_hom(ctx.space, ctx.lam, ctx.split, (7,), 0) == 1
    assert multiplicity_hom(ctx.space, ctx.lam, ctx.split, (9,), 0) == 0
    assert multiplicity_hom(ctx.space, ctx.lam, ctx.split, (8,), 0) == 0


def test_euler_matches_hom_on_worked_instance(swap_pair, swap_open):
    ctx = _ctx(swap_open, swap_pair, [2, 3])
    for p in range(5):
        for lp in [(k,) for k in range(5, 20)]:
            m = multiplicity_hom(ctx.space, ctx.lam, ctx.split, lp, p)
            e, mixing = multiplicity_euler(ctx.space, ctx.lam, ctx.split, lp, p)
            assert (m, mixing) == (e, False)


def test_euler_drops_wall_weights():
    from branchkit.instance import parse_instance
    # compact sl2 Levi factor: a module weight -rho on the wall contributes nothing
    inst = parse_instance({"algebra": [["A", 2]],
                           "theta": {"mode": "signs", "signs": [1, -1]},
                           "sigma": "theta",
                           "grading": [0, 1], "lambda": [0, 0]})
    ctx = prepare_branch(inst.parabolic, inst.pair, [0, 0], allow_unfair=True)
    res = euler_multiplicities(ctx.space, ctx.lam, ctx.split, 1)
    module = BranchModule(ctx.space, ctx.lam, 1)
    assert len(ctx.split.cartan_matrix) == 1
    labels = [ctx.split.weight_to_labels(w)[0][0] for w in module.weights]
    on_wall = sum(1 for x in labels if x == -1)
    regular = sum(1 for x in labels if x.denominator == 1 and x != -1)
    assert on_wall > 0
    assert res.contributions == regular


def test_ladder_table(swap_pair, swap_open):
    table = branch_table(swap_open, swap_pair, [2, 3], 4)
    assert table.as_dict() == {((7 + 2 * p,), p): 1 for p in range(5)}
    assert table.to_json_obj()["kind"] == "upper bound"


def test_k_type_ladder(sl2_borel, sl2_pair):
    table = branch_table(sl2_borel, sl2_pair, [3], 4)
    assert table.as_dict() == {((5 + 2 * p,), p): 1 for p in range(5)}


def test_non_decomposable_is_refused(swap_pair, swap_closed):
    with pytest.raises(HypothesisViolated) as info:
        branch_table(swap_closed, swap_pair, [2, 3], 2)
    assert info.value.flags["decomposable"] is False
    assert info.value.flags["witness"] == ["0", "0", "1", "1", "1", "1"]


def test_unitary_shadow_gate(sl2x2):
    # theta swaps the factors, so h1 - h2 lies in z(l) cap p
    theta = involution_from_signs(sl2x2, [[0, 1], [1, 0]], [1, 1])
    pair = derive_pair(sl2x2, theta, theta)
    pb = parabolic_from_grading(sl2x2, theta, [1, 1])
    assert check_lambda(pb, pair, [2, 2]).unitary_shadow
    assert not check_lambda(pb, pair, [1, 2]).unitary_shadow
    with pytest.raises(HypothesisViolated) as info:
        prepare_branch(pb, pair, [1, 2])
    assert info.value.flags["unitary_shadow"] is False


def test_blattner_degree_zero(sl2_borel, sl2_pair):
    assert blattner_bound(sl2_borel, sl2_pair, [3], [5], 0) == 1
    assert blattner_bound(sl2_borel, sl2_pair, [3], [3], 0) == 0
    assert blattner_table(sl2_borel, sl2_pair, [3], 2) == {((5,), 0): 1, ((7,), 1): 1,
                                                           ((9,), 2): 1}


def test_blattner_without_noncompact_nilradical(sl2):
    compact = involution_from_signs(sl2, None, [1])
    pair = derive_pair(sl2, compact, compact)
    pb = parabolic_from_grading(sl2, compact, [1])
    assert pb.u_cap_p.dim == 0
    assert blattner_table(pb, pair, [2], 3) == {((2,), 0): 1}
    with pytest.raises(NotDominant):
        blattner_bound(pb, pair, [2], [-2], 0)
