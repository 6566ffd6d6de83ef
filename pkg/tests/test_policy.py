from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from confalg.errors import DimensionMismatch, IndexOutOfRange
from confalg.meadow import StateVec
from confalg.operators import cee, commutes, multi_apply, multi_then, oplus, then
from confalg.policy import Policy, converge, recalibrate, reset_to_baseline

from conftest import rationals

pairs = st.integers(1, 5).flatmap(
    lambda n: st.tuples(*[st.lists(rationals, min_size=n, max_size=n)] * 2)
)


def test_converge_examples():
    p = Policy(StateVec([1, 0]))
    rep = converge(p, StateVec([7, 7]))
    assert rep.post == StateVec([1, 0])
    assert rep.changed_indices == {0, 1}
    assert rep.iterations_to_fixpoint == 1
    again = converge(p, p.desired)
    assert again.changed_indices == set()
    assert again.iterations_to_fixpoint == 0
    with pytest.raises(DimensionMismatch):
        converge(p, StateVec([1]))


@given(pairs)
def test_one_step_convergence(pair):
    desired, x = pair
    p = Policy(StateVec(desired))
    first = converge(p, StateVec(x))
    assert first.post == p.desired
    assert first.iterations_to_fixpoint <= 1
    second = converge(p, first.post)
    assert second.changed_indices == set()


@given(pairs)
def test_policy_operator_invariants(pair):
    desired, x = pair
    p = Policy(StateVec(desired))
    assert multi_apply(p.as_op, StateVec(x)) == p.desired
    assert multi_then(p.as_op, p.as_op) == p.as_op


@given(pairs)
def test_oplus_consistency(pair):
    a, b = (Policy(StateVec(v)) for v in pair)
    for i in range(a.n):
        assert oplus(a.as_op.parts[i], b.as_op.parts[i]) == cee(a.desired[i] + b.desired[i])


def test_recalibrate():
    p = Policy(StateVec([1, 0]))
    assert recalibrate(p, 1, 5).desired == StateVec([1, 5])
    assert recalibrate(p, 0, 1) == p
    with pytest.raises(IndexOutOfRange):
        recalibrate(p, 2, 0)


@given(rationals, rationals)
def test_recalibration_does_not_commute(old, new):
    assert commutes(cee(old), cee(new)) == (old == new)
    if old != new:
        assert then(cee(old), cee(new)) != then(cee(new), cee(old))


def test_reset_to_baseline():
    op = reset_to_baseline(StateVec([0, 0]))
    assert multi_apply(op, StateVec([9, -3])) == StateVec([0, 0])
    b = StateVec([F(1, 2), 4])
    assert multi_then(reset_to_baseline(b), reset_to_baseline(b)) == reset_to_baseline(b)
    assert reset_to_baseline(b) == Policy(b).as_op
