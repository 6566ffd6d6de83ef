"""Exact algebra of configuration change: affine operators over a meadow,
journals versus histories, rollback remedies and convergent policies."""
from .engine import (
    Cause,
    DriftModel,
    HistoryEntry,
    JournalEntry,
    LemmaReport,
    RollbackResult,
    Schema,
    SnapshotStack,
    Trace,
    commit,
    journals_congruent,
    lemma_report,
    restore,
    rollback,
    run_sim,
)
from .errors import (
    ConfalgError,
    DimensionMismatch,
    DivisionByZero,
    EmptyHistory,
    FormatError,
    IndexOutOfRange,
    KindMismatch,
    LengthMismatch,
    NotInvertible,
    ScheduleError,
    SchemaMismatch,
    UnknownValue,
)
from .meadow import (
    ExtendedMarker,
    ParamDomain,
    Rational,
    StateVec,
    decode,
    encode,
    field_add,
    field_mul,
    field_neg,
    meadow_inv,
    strict_inv,
    vec_add,
    vec_scale,
)
from .operators import (
    AffineOp,
    Kind,
    MultiOp,
    OpKind,
    apply,
    calibrate,
    cee,
    classify,
    commutes,
    delta,
    identity,
    invert,
    lift,
    mu,
    multi_apply,
    multi_invert,
    multi_then,
    oplus,
    then,
)
from .policy import Policy, RepairReport, converge, recalibrate, reset_to_baseline

__version__ = "0.1.0"
