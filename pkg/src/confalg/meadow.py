"""Exact rational field arithmetic, zero-totalized inversion and parameter codecs.

Field elements are :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator.  Two inversions are offered:
:func:`strict_inv`, partial as in an ordinary field, and :func:`meadow_inv`,
made total by sending zero to zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable

from .errors import DivisionByZero, LengthMismatch, UnknownValue

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

KINDS = ("rational", "finite-int", "finite-string")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a canonical Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational literal: {value!r}") from None
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def field_add(x: Fraction, y: Fraction) -> Fraction:
    return x + y


def field_mul(x: Fraction, y: Fraction) -> Fraction:
    return x * y


def field_neg(x: Fraction) -> Fraction:
    return -x


def strict_inv(x: Fraction) -> Fraction:
    if x == 0:
        raise DivisionByZero("0 has no multiplicative inverse in a field")
    return 1 / x


def meadow_inv(x: Fraction) -> Fraction:
    """Total inverse with 0⁻¹ = 0.

    Satisfies the restricted inverse law (x⁻¹·x)·x = x and reflection
    (x⁻¹)⁻¹ = x for every x, zero included.
    """
    if x == 0:
        return ZERO
    return 1 / x


@dataclass(frozen=True)
class ExtendedMarker:
    """A field value with no raw counterpart in its parameter domain."""

    value: Fraction

    def __str__(self) -> str:
        return f"<extended {format_rational(self.value)}>"


@dataclass(frozen=True)
class ParamDomain:
    name: str
    kind: str = "rational"
    values: tuple = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown parameter kind {self.kind!r}")
        values = tuple(self.values)
        if self.kind == "rational":
            if values:
                raise ValueError("rational domains take no value list")
        else:
            if not values:
                raise ValueError(f"{self.name}: finite domain needs at least one value")
            wanted = int if self.kind == "finite-int" else str
            for v in values:
                if type(v) is not wanted:
                    raise ValueError(f"{self.name}: {v!r} is not a {wanted.__name__}")
            if len(set(values)) != len(values):
                raise ValueError(f"{self.name}: duplicate domain values")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(values)})

    @property
    def finite(self) -> bool:
        return self.kind != "rational"


def encode(d: ParamDomain, raw) -> Fraction:
    if not d.finite:
        try:
            return as_rational(raw)
        except (TypeError, ValueError):
            raise UnknownValue(f"{d.name}: {raw!r} is not a rational") from None
    # bool is an int subclass; a finite-int domain must not accept True for 1
    if type(raw) is bool or raw not in d._index:
        raise UnknownValue(f"{d.name}: {raw!r} is not one of {list(d.values)}")
    return Fraction(d._index[raw])


def decode(d: ParamDomain, v: Fraction):
    if not d.finite:
        return v
    if v.denominator == 1 and 0 <= v.numerator < len(d.values):
        return d.values[v.numerator]
    return ExtendedMarker(v)


class StateVec(tuple):
    """Fixed-length vector of field elements (the homogeneous 1 is implicit)."""

    __slots__ = ()

    def __new__(cls, entries: Iterable = ()):
        items = tuple(as_rational(e) for e in entries)
        if not items:
            raise LengthMismatch("a state vector needs at least one entry")
        return super().__new__(cls, items)

    def __repr__(self) -> str:
        return "StateVec([" + ", ".join(format_rational(x) for x in self) + "])"


def vec_add(u: StateVec, v: StateVec) -> StateVec:
    if len(u) != len(v):
        raise LengthMismatch(f"cannot add vectors of length {len(u)} and {len(v)}")
    return StateVec(x + y for x, y in zip(u, v))


def vec_scale(alpha: Fraction, v: StateVec) -> StateVec:
    return StateVec(alpha * x for x in v)


def vec_neg(v: StateVec) -> StateVec:
    return StateVec(-x for x in v)


def vec_zero(n: int) -> StateVec:
    return StateVec([ZERO] * n)

