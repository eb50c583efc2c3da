import pytest

from kcb.closedform import inv
from kcb.fock import (
    FockContext,
    FockVector,
    NodeRef,
    addable_nodes,
    apply_e,
    apply_f,
    apply_f_divided,
    apply_f_divided_iterative,
    content,
    removable_nodes,
    residue,
    symmetric_context,
)
from kcb.laurent import LaurentPoly
from kcb.partitions import iter_multipartitions

C01 = FockContext(2, (0, 1))
A3 = symmetric_context(3)


def mono(e):
    return LaurentPoly.monomial(e)


def vec(*pairs):
    return FockVector([(mp, mono(e)) for mp, e in pairs])


class TestContext:
    def test_grouping_enforced(self):
        with pytest.raises(ValueError):
            FockContext(2, (0, 1, 0))

    def test_dual(self):
        assert C01.dual().charges == (1, 0)
        assert FockContext(2, (0, 0, 1, 1)).dual().charges == (1, 1, 0, 0)
        assert FockContext(3, (0, 1, 1)).dual().charges == (2, 2, 0)

    def test_weight_multiplicities(self):
        assert A3.weight_multiplicities == (3, 3)

    def test_rank_bound(self):
        with pytest.raises(ValueError):
            FockContext(1, (0,))


class TestResidue:
    def test_examples(self):
        assert residue(C01, NodeRef(2, 1, 2)) == 0
        assert residue(C01, NodeRef(1, 1, 1)) == 0
        assert residue(FockContext(3, (0,)), NodeRef(1, 2, 1)) == 2


class TestNodes:
    def test_addable_highest_weight(self):
        assert addable_nodes(C01, ((), ()), 0) == [NodeRef(1, 1, 1)]

    def test_addable_ordering(self):
        nodes = addable_nodes(C01, ((), (1,)), 0)
        assert nodes == [NodeRef(1, 1, 1), NodeRef(2, 1, 2), NodeRef(2, 2, 1)]

    def test_highest_weight_corners(self):
        ctx = FockContext(2, (0, 0, 0, 1, 1, 1))
        assert len(addable_nodes(ctx, ((),) * 6, 0)) == 3

    def test_removable(self):
        assert removable_nodes(C01, ((1,), ()), 0) == [NodeRef(1, 1, 1)]
        assert removable_nodes(C01, ((2,), ()), 1) == [NodeRef(1, 1, 2)]
        assert removable_nodes(C01, ((), ()), 0) == []


class TestApplyF:
    def test_displayed_sum_a3(self):
        u = FockVector.basis(((),) * 6)
        got = apply_f(A3, u, 0)
        want = vec(
            (((1,), (), (), (), (), ()), 0),
            (((), (1,), (), (), (), ()), 1),
            (((), (), (1,), (), (), ()), 2),
        )
        assert got == want

    def test_linearity_zero(self):
        assert apply_f(C01, FockVector.zero(), 0).is_zero()

    def test_derived_example(self):
        got = apply_f(C01, FockVector.basis(((), (1,))), 0)
        want = vec(
            (((1,), (1,)), 0),
            (((), (2,)), 1),
            (((), (1, 1)), 2),
        )
        assert got == want


class TestApplyE:
    def test_single_node(self):
        got = apply_e(C01, FockVector.basis(((1,), ())), 0)
        assert got == vec(((((), ())), 0))

    def test_highest_weight(self):
        u = FockVector.basis(((), ()))
        assert apply_e(C01, u, 0).is_zero()
        assert apply_e(C01, u, 1).is_zero()

    def test_two_removables(self):
        # removables of [(2),(1)] at residue 1: c1(1,2) and c2(1,1);
        # M = (addables below) - (removables below) gives 0 for both
        got = apply_e(C01, FockVector.basis(((2,), (1,))), 1)
        want = vec(
            (((1,), (1,)), 0),
            (((2,), ()), 0),
        )
        assert got == want


class TestDividedPowers:
    def test_k0_identity(self):
        v = vec((((1,), ()), 2))
        assert apply_f_divided(C01, v, 0, 0) == v

    def test_choose_two_of_three(self):
        u = FockVector.basis(((),) * 6)
        got = apply_f_divided(A3, u, 0, 2)
        want = vec(
            (((1,), (1,), (), (), (), ()), 0),
            (((1,), (), (1,), (), (), ()), 1),
            (((), (1,), (1,), (), (), ()), 2),
        )
        assert got == want

    def test_direct_equals_iterative(self):
        # dual-route check, including shapes with removable nodes present
        cases = [
            (C01, ((), ())),
            (C01, ((1,), (1,))),
            (C01, ((2,), (1,))),
            (FockContext(2, (0, 0, 1, 1)), ((1,), (), (1,), ())),
            (FockContext(3, (0, 1)), ((2, 1), (1,))),
        ]
        for ctx, mp in cases:
            v = FockVector.basis(mp)
            for i in range(ctx.e):
                for k in range(4):
                    assert apply_f_divided(ctx, v, i, k) == apply_f_divided_iterative(
                        ctx, v, i, k
                    ), (mp, i, k)

    def test_exactness_sweep(self):
        # k-fold f_i is divisible by [k]! on a spread of small vectors
        for ctx in (
            C01,
            FockContext(2, (0, 0, 1)),
            FockContext(3, (0, 1)),
            FockContext(2, (0, 0, 1, 1)),
        ):
            for n in range(4):
                for mp in iter_multipartitions(n, ctx.level):
                    v = FockVector.basis(mp)
                    for i in range(ctx.e):
                        for k in (2, 3):
                            apply_f_divided_iterative(ctx, v, i, k)  # must not raise


class TestInvLaw:
    def test_coefficient_is_v_inv(self):
        # for mu with no removable i-nodes, coefficient of each lambda in
        # f_i^(l) mu is v^Inv(S) for the choice sequence S selecting it
        from itertools import combinations

        for ctx in (C01, FockContext(2, (0, 0, 1))):
            for n in range(4):
                for mp in iter_multipartitions(n, ctx.level):
                    for i in range(ctx.e):
                        if removable_nodes(ctx, mp, i):
                            continue
                        adds = addable_nodes(ctx, mp, i)
                        for k in range(1, min(3, len(adds)) + 1):
                            got = apply_f_divided(ctx, FockVector.basis(mp), i, k)
                            for pos in combinations(range(len(adds)), k):
                                from kcb.fock import add_node

                                lam = mp
                                for p in pos:
                                    lam = add_node(lam, adds[p])
                                bits = [0] * len(adds)
                                for p in pos:
                                    bits[p] = 1
                                assert got.coefficient(lam) == mono(inv(bits))


class TestContent:
    def test_highest_weight(self):
        assert content(C01, ((), ())) == (0, 0)

    def test_row(self):
        assert content(C01, ((3,), ())) == (2, 1)

    def test_two_corners(self):
        assert content(C01, ((1,), (1,))) == (1, 1)


def test_weight_bookkeeping():
    # every term of f_i gains exactly one i-node; e_i loses one
    ctx = FockContext(2, (0, 0, 1))
    for n in range(4):
        for mp in iter_multipartitions(n, 3):
            c0 = content(ctx, mp)
            for i in range(2):
                for lam, _ in apply_f(ctx, FockVector.basis(mp), i).terms():
                    c1 = content(ctx, lam)
                    assert c1[i] == c0[i] + 1 and sum(c1) == sum(c0) + 1
                for lam, _ in apply_e(ctx, FockVector.basis(mp), i).terms():
                    c1 = content(ctx, lam)
                    assert c1[i] == c0[i] - 1 and sum(c1) == sum(c0) - 1


def test_fock_vector_json_roundtrip():
    v = vec((((2,), (1,)), 3), (((1, 1), ()), -2))
    assert FockVector.from_json(v.to_json()) == v
