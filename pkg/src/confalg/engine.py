"""Simulation of a configuration under a journal of changes plus drift.

A run applies journaled multi-operators at their scheduled ticks, while a
seeded drift model injects spontaneous, unjournaled changes.  The result is a
:class:`Trace` pairing the journal (what was intended) with the history
(every state actually taken), from which rollback is attempted under four
remedies.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, EmptyHistory, NotInvertible, ScheduleError
from .meadow import ParamDomain, StateVec, as_rational, decode, format_rational
from .operators import MultiOp, cee, delta, is_absolute, lift, multi_apply, multi_invert
from .rng import SplitMix64

DRIFT_STYLES = ("set-random", "add-random")
ROLLBACK_MODES = ("strict", "meadow", "policy", "snapshot")

# drift values are p/q with |p| <= DRIFT_NUM_BOUND and 1 <= q <= DRIFT_DEN_BOUND
DRIFT_NUM_BOUND = 64
DRIFT_DEN_BOUND = 8


@dataclass(frozen=True)
class Schema:
    params: tuple

    def __post_init__(self):
        params = tuple(self.params)
        names = [p.name for p in params]
        if not params:
            raise ValueError("a schema needs at least one parameter")
        if len(set(names)) != len(names):
            raise ValueError("parameter names must be unique")
        object.__setattr__(self, "params", params)

    @classmethod
    def rational(cls, n: int) -> "Schema":
        return cls(tuple(ParamDomain(f"x{i}") for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.params)

    @property
    def names(self) -> list:
        return [p.name for p in self.params]

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class JournalEntry:
    tick: int
    op: MultiOp


@dataclass(frozen=True)
class Cause:
    kind: str  # "initial" | "journaled" | "drift"
    entry: Optional[int] = None
    description: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == "journaled":
            return f"journaled[{self.entry}]"
        if self.kind == "drift":
            return f"drift: {self.description}"
        return self.kind


INITIAL = Cause("initial")


@dataclass(frozen=True)
class HistoryEntry:
    tick: int
    state: StateVec
    cause: Cause


@dataclass(frozen=True)
class DriftModel:
    rate: Fraction = Fraction(0)
    seed: int = 0
    style: str = "set-random"

    def __post_init__(self):
        rate = as_rational(self.rate)
        if not 0 <= rate <= 1:
            raise ValueError(f"drift rate {rate} outside [0, 1]")
        if self.style not in DRIFT_STYLES:
            raise ValueError(f"unknown drift style {self.style!r}")
        object.__setattr__(self, "rate", rate)
        object.__setattr__(self, "seed", int(self.seed) & ((1 << 64) - 1))


NO_DRIFT = DriftModel()


@dataclass(frozen=True)
class Trace:
    schema: Schema
    initial: StateVec
    journal: tuple
    history: tuple
    final: StateVec
    drift_count: int
    ticks: int = 0
    drift: DriftModel = NO_DRIFT

    def __post_init__(self):
        object.__setattr__(self, "journal", tuple(self.journal))
        object.__setattr__(self, "history", tuple(self.history))
        if not self.history or self.history[0].cause.kind != "initial":
            raise ValueError("history must start with the initial snapshot")
        if self.history[-1].state != self.final:
            raise ValueError("final state differs from last history snapshot")
        drifted = sum(1 for h in self.history if h.cause.kind == "drift")
        if drifted != self.drift_count:
            raise ValueError("drift_count disagrees with history causes")

    @property
    def transitions(self) -> int:
        """|H|: history snapshots other than the initial one."""
        return len(self.history) - 1


def _draw_value(rng: SplitMix64, domain: ParamDomain) -> Fraction:
    if domain.finite and len(domain.values) > 1:
        return Fraction(rng.below(len(domain.values)))
    num = rng.below(2 * DRIFT_NUM_BOUND + 1) - DRIFT_NUM_BOUND
    den = rng.below(DRIFT_DEN_BOUND) + 1
    return Fraction(num, den)


def _drift_op(rng: SplitMix64, style: str, domain: ParamDomain, current: Fraction):
    # resample so that every drift event really changes the state
    while True:
        r = _draw_value(rng, domain)
        if style == "set-random" and r != current:
            shown = format_rational(r)
            if domain.finite:
                shown = f"{decode(domain, r)!r} ({shown})"
            return cee(r), f"set {domain.name} := {shown}"
        if style == "add-random" and r != 0:
            return delta(r), f"add {format_rational(r)} to {domain.name}"


def run_sim(
    schema: Optional[Schema],
    initial: Sequence,
    journal: Sequence[JournalEntry],
    ticks: int,
    drift: DriftModel = NO_DRIFT,
) -> Trace:
    """Run ``journal`` for ``ticks`` ticks from ``initial`` under ``drift``.

    Within a tick, drift is drawn first (parameters in ascending index, at
    most one event each), then the journal entries scheduled for that tick
    are applied in order.  One history snapshot is taken per applied
    operator.
    """
    state = StateVec(initial)
    if schema is None:
        schema = Schema.rational(len(state))
    n = schema.n
    if len(state) != n:
        raise DimensionMismatch(f"initial state has {len(state)} entries, schema has {n}")
    journal = tuple(journal)
    last = -1
    for k, e in enumerate(journal):
        if e.op.n != n:
            raise DimensionMismatch(f"journal entry {k} has dimension {e.op.n}, expected {n}")
        if not 0 <= e.tick < ticks:
            raise ScheduleError(f"journal entry {k} at tick {e.tick} outside horizon {ticks}")
        if e.tick < last:
            raise ScheduleError(f"journal entry {k} goes back in time")
        last = e.tick

    rng = SplitMix64(drift.seed)
    history = [HistoryEntry(0, state, INITIAL)]
    drift_count = 0
    k = 0
    for t in range(ticks):
        if drift.rate > 0:
            for i, domain in enumerate(schema.params):
                if not rng.bernoulli(drift.rate):
                    continue
                op, desc = _drift_op(rng, drift.style, domain, state[i])
                state = multi_apply(lift(i, op, n), state)
                history.append(HistoryEntry(t, state, Cause("drift", description=desc)))
                drift_count += 1
        while k < len(journal) and journal[k].tick == t:
            state = multi_apply(journal[k].op, state)
            history.append(HistoryEntry(t, state, Cause("journaled", entry=k)))
            k += 1
    return Trace(
        schema=schema,
        initial=history[0].state,
        journal=journal,
        history=tuple(history),
        final=state,
        drift_count=drift_count,
        ticks=ticks,
        drift=drift,
    )


def journals_congruent(j1: Sequence[JournalEntry], j2: Sequence[JournalEntry]) -> bool:
    """Same symbols in the same order; ticks are not part of a symbol."""
    return len(j1) == len(j2) and all(a.op == b.op for a, b in zip(j1, j2))


@dataclass(frozen=True)
class RollbackResult:
    state: StateVec
    mode: str
    status: tuple = field(default=())  # (entry index, outcome) pairs


def rollback(trace: Trace, mode: str = "strict", policy: Optional[MultiOp] = None) -> RollbackResult:
    """Attempt to return ``trace`` to its initial state.

    ``strict`` and ``meadow`` undo the journal entry by entry in reverse,
    starting from the final state; strict raises :class:`NotInvertible` for
    the first absorbing entry met.  ``policy`` applies ``policy`` once.
    ``snapshot`` restores the initial history snapshot.
    """
    if mode == "snapshot":
        if not trace.history:
            raise EmptyHistory("trace has no history to restore from")
        return RollbackResult(trace.history[0].state, mode, ())
    if mode == "policy":
        if policy is None:
            raise ValueError("policy rollback needs a policy operator")
        return RollbackResult(multi_apply(policy, trace.final), mode, ())
    if mode not in ("strict", "meadow"):
        raise ValueError(f"unknown rollback mode {mode!r}")

    state = trace.final
    status = []
    for k in range(len(trace.journal) - 1, -1, -1):
        op = trace.journal[k].op
        try:
            inverse = multi_invert(op, mode)
        except NotInvertible as exc:
            raise NotInvertible(
                f"journal entry {k}: components {sorted(exc.components)} are absorbing",
                components=exc.components,
                entry=k,
            ) from None
        grounded = any(is_absolute(p) for p in op.parts)
        status.append((k, "grounded" if grounded else "inverted"))
        state = multi_apply(inverse, state)
    return RollbackResult(state, mode, tuple(status))


def strict_rollback_possible(journal: Sequence[JournalEntry]) -> bool:
    return all(not is_absolute(p) for e in journal for p in e.op.parts)


@dataclass(frozen=True)
class LemmaReport:
    history_transitions: int
    journal_length: int
    drift_count: int
    strict_invertible: bool

    @property
    def equal(self) -> bool:
        return self.history_transitions == self.journal_length

    @property
    def closed(self) -> bool:
        return self.drift_count == 0

    def render(self) -> str:
        h, j = self.history_transitions, self.journal_length
        rel = "=" if self.equal else ">"
        lines = [
            f"|H| = {h}",
            f"|J| = {j}",
            f"drift events = {self.drift_count}",
            f"|H| {rel} |J|, {'closed' if self.closed else 'open'}",
        ]
        if self.strict_invertible:
            lines.append("strict rollback possible in principle")
        else:
            lines.append("strict rollback impossible (journal contains absolute components)")
        return "\n".join(lines)


def lemma_report(trace: Trace) -> LemmaReport:
    report = LemmaReport(
        history_transitions=trace.transitions,
        journal_length=len(trace.journal),
        drift_count=trace.drift_count,
        strict_invertible=strict_rollback_possible(trace.journal),
    )
    assert report.history_transitions >= report.journal_length
    assert report.equal == report.closed
    return report


@dataclass(frozen=True)
class SnapshotStack:
    entries: tuple = ()

    def __len__(self) -> int:
        return len(self.entries)

    def push(self, tick: int, state: StateVec) -> "SnapshotStack":
        return SnapshotStack(self.entries + ((tick, state),))


def commit(stack: SnapshotStack, g: MultiOp, state: Sequence, tick: int):
    """Apply ``g`` then push the resulting state; returns (stack, state)."""
    new_state = multi_apply(g, state)
    return stack.push(tick, new_state), new_state


def restore(stack: SnapshotStack):
    """Pop the top snapshot; returns (stack, state)."""
    if not stack.entries:
        raise EmptyHistory("restore on an empty snapshot stack")
    return SnapshotStack(stack.entries[:-1]), stack.entries[-1][1]
