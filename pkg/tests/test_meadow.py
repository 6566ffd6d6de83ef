from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from confalg.errors import DivisionByZero, LengthMismatch, UnknownValue
from confalg.meadow import (
    ExtendedMarker,
    ParamDomain,
    StateVec,
    as_rational,
    decode,
    encode,
    field_add,
    field_mul,
    field_neg,
    format_rational,
    meadow_inv,
    strict_inv,
    vec_add,
    vec_scale,
)

from conftest import nonzero, rationals

YESNO = ParamDomain("boot", "finite-string", ("no", "yes"))
THREADS = ParamDomain("threads", "finite-int", (10, 20, 50))
LOAD = ParamDomain("load")


def test_field_examples():
    assert field_add(F(1, 2), F(1, 3)) == F(5, 6)
    assert strict_inv(F(2, 3)) == F(3, 2)
    assert strict_inv(F(1)) == 1


def test_strict_inv_zero():
    with pytest.raises(DivisionByZero):
        strict_inv(F(0))
    # still catchable as the builtin
    with pytest.raises(ZeroDivisionError):
        strict_inv(F(0))


@pytest.mark.parametrize("x", [F(0), F(1), F(-3, 7)])
def test_restricted_inverse_law(x):
    assert meadow_inv(x) * x * x == x


def test_meadow_inv_values():
    assert meadow_inv(F(0)) == 0
    assert meadow_inv(F(5)) == F(1, 5)


@given(rationals)
def test_annihilator_and_negation(x):
    assert field_mul(x, F(0)) == 0
    assert field_add(x, field_neg(x)) == 0


@given(rationals)
def test_meadow_reflection(x):
    assert meadow_inv(meadow_inv(x)) == x


@given(nonzero)
def test_meadow_agrees_with_strict_off_zero(x):
    assert meadow_inv(x) == strict_inv(x)
    assert x * strict_inv(x) == 1


@given(rationals)
def test_canonical_form(x):
    y = x * F(7, 3) / F(7, 3)
    assert (y.numerator, y.denominator) == (x.numerator, x.denominator)
    assert y.denominator > 0


def test_rational_literals():
    assert as_rational("-4/9") == F(-4, 9)
    assert as_rational("6/4") == F(3, 2)
    assert as_rational(3) == 3
    assert format_rational(F(3)) == "3/1"
    assert format_rational(F(-6, 4)) == "-3/2"
    for bad in ("x", "1/0", "1.5"):
        with pytest.raises(ValueError):
            as_rational(bad)
    with pytest.raises(TypeError):
        as_rational(True)


def test_encode_examples():
    assert encode(YESNO, "yes") == 1
    assert encode(YESNO, "no") == 0
    assert encode(THREADS, 50) == 2
    assert encode(LOAD, "-4/9") == F(-4, 9)


@pytest.mark.parametrize("domain,raw", [(YESNO, "maybe"), (THREADS, 30), (THREADS, "10"), (THREADS, True), (LOAD, "abc")])
def test_encode_unknown(domain, raw):
    with pytest.raises(UnknownValue):
        encode(domain, raw)


def test_decode_examples():
    assert decode(YESNO, F(1)) == "yes"
    assert decode(YESNO, F(7, 2)) == ExtendedMarker(F(7, 2))
    assert decode(YESNO, F(-1)) == ExtendedMarker(F(-1))
    assert decode(THREADS, F(2)) == 50
    assert decode(LOAD, F(-4, 9)) == F(-4, 9)


@pytest.mark.parametrize("domain", [YESNO, THREADS])
def test_codec_roundtrip_finite(domain):
    for raw in domain.values:
        assert decode(domain, encode(domain, raw)) == raw
    for i in range(len(domain.values)):
        assert encode(domain, decode(domain, F(i))) == i
    images = [encode(domain, raw) for raw in domain.values]
    assert len(set(images)) == len(images)


@given(rationals)
def test_codec_roundtrip_rational(x):
    assert decode(LOAD, encode(LOAD, x)) == x


def test_domain_validation():
    with pytest.raises(ValueError):
        ParamDomain("d", "finite-int", (1, 1))
    with pytest.raises(ValueError):
        ParamDomain("d", "finite-int", ("a",))
    with pytest.raises(ValueError):
        ParamDomain("d", "finite-string", ())
    with pytest.raises(ValueError):
        ParamDomain("d", "boolean")


def test_vec_examples():
    assert vec_add(StateVec([1, 2]), StateVec([0, 0])) == StateVec([1, 2])
    assert vec_scale(F(0), StateVec([3, 5])) == StateVec([0, 0])
    with pytest.raises(LengthMismatch):
        vec_add(StateVec([1]), StateVec([1, 2]))
    with pytest.raises(LengthMismatch):
        StateVec([])


vecs = st.integers(1, 6).flatmap(lambda n: st.tuples(*[st.lists(rationals, min_size=n, max_size=n)] * 3))


@given(vecs, rationals, rationals)
def test_vector_space_axioms(xyz, alpha, beta):
    x, y, z = (StateVec(v) for v in xyz)
    zero = vec_scale(F(0), x)
    neg = vec_scale(F(-1), x)
    assert vec_add(x, zero) == x == vec_add(zero, x)
    assert vec_add(x, neg) == zero == vec_add(neg, x)
    assert vec_add(x, y) == vec_add(y, x)
    assert vec_add(vec_add(x, y), z) == vec_add(x, vec_add(y, z))
    assert vec_scale(alpha * beta, z) == vec_scale(alpha, vec_scale(beta, z))
    assert vec_scale(F(1), x) == x
    assert vec_scale(alpha + beta, x) == vec_add(vec_scale(alpha, x), vec_scale(beta, x))
    assert vec_scale(alpha, vec_add(x, y)) == vec_add(vec_scale(alpha, x), vec_scale(alpha, y))
