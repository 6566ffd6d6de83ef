"""Convergent desired-state policies.

A policy holds one desired value per parameter and acts through the absolute
operators cee(desired_i).  Applying it lands every state on the same fixed
point in one step, whatever the history that produced the state.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, IndexOutOfRange
from .meadow import StateVec, as_rational
from .operators import MultiOp, cee, multi_apply


@dataclass(frozen=True)
class Policy:
    desired: StateVec

    def __post_init__(self):
        object.__setattr__(self, "desired", StateVec(self.desired))

    @property
    def n(self) -> int:
        return len(self.desired)

    @property
    def as_op(self) -> MultiOp:
        return MultiOp(tuple(cee(q) for q in self.desired))


@dataclass(frozen=True)
class RepairReport:
    pre: StateVec
    post: StateVec
    changed_indices: frozenset
    iterations_to_fixpoint: int

    def render(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(len(self.pre))]
        changed = ", ".join(names[i] for i in sorted(self.changed_indices)) or "none"
        return "\n".join([
            f"changed: {changed}",
            f"iterations to fixpoint: {self.iterations_to_fixpoint}",
        ])


def converge(p: Policy, x: Sequence) -> RepairReport:
    if len(x) != p.n:
        raise DimensionMismatch(f"state has {len(x)} entries, policy has {p.n}")
    pre = StateVec(x)
    post = multi_apply(p.as_op, pre)
    changed = frozenset(i for i, (u, v) in enumerate(zip(pre, post)) if u != v)
    return RepairReport(pre, post, changed, 1 if changed else 0)


def recalibrate(p: Policy, i: int, new_q0) -> Policy:
    if not 0 <= i < p.n:
        raise IndexOutOfRange(f"parameter index {i} outside 0..{p.n - 1}")
    desired = list(p.desired)
    desired[i] = as_rational(new_q0)
    return Policy(StateVec(desired))


def reset_to_baseline(baseline: Sequence) -> MultiOp:
    """Forward-moving undo: the absolute operator onto ``baseline``."""
    return Policy(StateVec(baseline)).as_op
