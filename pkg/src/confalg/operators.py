"""Affine change operators X ↦ a·X + b.

Relative (``delta``), absolute (``cee``) and scaling (``mu``) changes are all
affine maps, and so is any composition of them.  An operator is stored as its
pair (a, b); the homogeneous matrix ``[[a, b], [0, 1]]`` never materializes.

Composition is written in execution order: ``then(first, second)`` applies
``first`` and then ``second``, which is the matrix product ``second @ first``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, KindMismatch, NotInvertible
from .meadow import ONE, ZERO, StateVec, as_rational, format_rational, meadow_inv, strict_inv

INVERT_MODES = ("strict", "meadow", "policy")


@dataclass(frozen=True)
class AffineOp:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    def __call__(self, x) -> Fraction:
        return apply(self, x)

    def __str__(self) -> str:
        kind = classify(self)
        if kind.q is None:
            return kind.kind.value
        return f"{kind.kind.value}({format_rational(kind.q)})"


class Kind(Enum):
    IDENTITY = "identity"
    RELATIVE = "delta"
    ABSOLUTE = "cee"
    SCALE = "mu"
    AFFINE = "affine"


@dataclass(frozen=True)
class OpKind:
    kind: Kind
    q: Optional[Fraction] = None


def identity() -> AffineOp:
    return AffineOp(ONE, ZERO)


def delta(q) -> AffineOp:
    return AffineOp(ONE, q)


def cee(q) -> AffineOp:
    return AffineOp(ZERO, q)


def mu(q) -> AffineOp:
    return AffineOp(q, ZERO)


def classify(op: AffineOp) -> OpKind:
    a, b = op.a, op.b
    if a == 1:
        return OpKind(Kind.IDENTITY) if b == 0 else OpKind(Kind.RELATIVE, b)
    if a == 0:
        return OpKind(Kind.ABSOLUTE, b)
    if b == 0:
        return OpKind(Kind.SCALE, a)
    return OpKind(Kind.AFFINE)


def is_absolute(op: AffineOp) -> bool:
    return op.a == 0


def apply(op: AffineOp, x) -> Fraction:
    return op.a * as_rational(x) + op.b


def then(first: AffineOp, second: AffineOp) -> AffineOp:
    # second∘first: a·(c·x + d) + b
    c, d = first.a, first.b
    a, b = second.a, second.b
    return AffineOp(a * c, a * d + b)


def commutes(p: AffineOp, q: AffineOp) -> bool:
    a, b = q.a, q.b
    c, d = p.a, p.b
    return a * d + b == b * c + d


def invert(op: AffineOp, mode: str = "strict", current: Optional[AffineOp] = None) -> AffineOp:
    """Inverse of ``op`` under one of three semantics.

    ``strict`` raises :class:`NotInvertible` for absorbing operators (a = 0).
    ``meadow`` divides with 0⁻¹ = 0, so an absorbing operator inverts to the
    grounding operator cee(0).  ``policy`` ignores ``op`` and returns the
    standing absolute operator ``current``.
    """
    if mode == "strict":
        if op.a == 0:
            raise NotInvertible(f"{op} is absorbing and has no inverse", components=(0,))
        inv_a = strict_inv(op.a)
    elif mode == "meadow":
        inv_a = meadow_inv(op.a)
    elif mode == "policy":
        if current is None or not is_absolute(current):
            raise KindMismatch("policy inversion needs an absolute standing operator")
        return current
    else:
        raise ValueError(f"unknown inversion mode {mode!r}")
    return AffineOp(inv_a, -inv_a * op.b)


def oplus(p: AffineOp, q: AffineOp) -> AffineOp:
    if not (is_absolute(p) and is_absolute(q)):
        raise KindMismatch("⊕ is defined only on absolute operators")
    return cee(p.b + q.b)


def calibrate(op: AffineOp, shift) -> AffineOp:
    """Move the fixed point of an absolute operator by ``shift``."""
    if not is_absolute(op):
        raise KindMismatch(f"cannot calibrate non-absolute operator {op}")
    return cee(op.b + as_rational(shift))


@dataclass(frozen=True)
class MultiOp:
    """Componentwise family of affine operators; part i acts on entry i."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise DimensionMismatch("a multi-operator needs at least one component")
        for p in parts:
            if not isinstance(p, AffineOp):
                raise TypeError(f"component {p!r} is not an AffineOp")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    def touched(self) -> frozenset:
        """Indices whose component is not the identity."""
        return frozenset(i for i, p in enumerate(self.parts) if (p.a, p.b) != (1, 0))

    def __call__(self, x: Sequence) -> StateVec:
        return multi_apply(self, x)


def multi_identity(n: int) -> MultiOp:
    return MultiOp((identity(),) * n)


def multi_from(n: int, components: Iterable[tuple[int, AffineOp]]) -> MultiOp:
    parts = [identity()] * n
    for i, op in components:
        if not 0 <= i < n:
            raise IndexOutOfRange(f"component index {i} outside 0..{n - 1}")
        parts[i] = then(parts[i], op)
    return MultiOp(tuple(parts))


def lift(i: int, op: AffineOp, n: int) -> MultiOp:
    return multi_from(n, [(i, op)])


def _check_dim(n: int, m: int) -> None:
    if n != m:
        raise DimensionMismatch(f"dimension {n} does not match {m}")


def multi_apply(P: MultiOp, x: Sequence) -> StateVec:
    _check_dim(P.n, len(x))
    return StateVec(apply(op, xi) for op, xi in zip(P.parts, x))


def multi_then(P: MultiOp, Q: MultiOp) -> MultiOp:
    _check_dim(P.n, Q.n)
    return MultiOp(tuple(then(p, q) for p, q in zip(P.parts, Q.parts)))


def multi_commutes(P: MultiOp, Q: MultiOp) -> bool:
    _check_dim(P.n, Q.n)
    return all(commutes(p, q) for p, q in zip(P.parts, Q.parts))


def multi_invert(P: MultiOp, mode: str = "strict", current: Optional[MultiOp] = None) -> MultiOp:
    if mode == "policy":
        if current is None:
            raise KindMismatch("policy inversion needs the standing policy operator")
        _check_dim(P.n, current.n)
        return MultiOp(tuple(invert(p, "policy", c) for p, c in zip(P.parts, current.parts)))
    if mode == "strict":
        failing = [i for i, p in enumerate(P.parts) if p.a == 0]
        if failing:
            raise NotInvertible(
                f"components {failing} are absorbing and have no inverse", components=failing
            )
    return MultiOp(tuple(invert(p, mode) for p in P.parts))
