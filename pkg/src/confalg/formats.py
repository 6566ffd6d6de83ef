"""JSON file formats: schema, journal, policy and trace documents.

Rationals are written as canonical ``"num/den"`` strings and documents are
dumped with sorted keys, so equal objects always produce identical bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .engine import (
    Cause,
    DriftModel,
    HistoryEntry,
    JournalEntry,
    Schema,
    Trace,
)
from .errors import FormatError, SchemaMismatch
from .meadow import ParamDomain, StateVec, as_rational, decode, encode, format_rational
from .operators import AffineOp, MultiOp, cee, delta, identity, mu, multi_from
from .policy import Policy

FORMAT_VERSION = 1


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: top level must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatError(f"{path}: unsupported format_version {version!r}")
    return doc


def _require(doc: dict, key: str, kind=None):
    if key not in doc:
        raise FormatError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise FormatError(f"field {key!r} has the wrong type")
    return value


def _rational(value) -> Fraction:
    try:
        return as_rational(value)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from None


def _vec(values) -> StateVec:
    if not isinstance(values, list):
        raise FormatError("state must be a list of rationals")
    return StateVec(_rational(v) for v in values)


def _vec_doc(v) -> list:
    return [format_rational(x) for x in v]


# -- schema ---------------------------------------------------------------

def schema_from_doc(doc: dict) -> Schema:
    params = []
    for p in _require(doc, "parameters", list):
        if not isinstance(p, dict):
            raise FormatError("parameter declarations must be objects")
        try:
            params.append(ParamDomain(
                name=_require(p, "name", str),
                kind=p.get("kind", "rational"),
                values=tuple(p.get("values", ())),
            ))
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    try:
        return Schema(tuple(params))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def schema_to_doc(schema: Schema) -> dict:
    out = []
    for p in schema.params:
        entry = {"name": p.name, "kind": p.kind}
        if p.finite:
            entry["values"] = list(p.values)
        out.append(entry)
    return {"parameters": out}


def _named_values(schema: Schema, mapping: dict, what: str) -> StateVec:
    if not isinstance(mapping, dict):
        raise FormatError(f"{what} must map parameter names to values")
    unknown = set(mapping) - set(schema.names)
    if unknown:
        raise SchemaMismatch(f"{what} names unknown parameters {sorted(unknown)}")
    missing = [n for n in schema.names if n not in mapping]
    if missing:
        raise SchemaMismatch(f"{what} has no value for {missing}")
    return StateVec(encode(p, mapping[p.name]) for p in schema.params)


def load_schema(path) -> tuple[Schema, StateVec]:
    doc = load_json(path)
    schema = schema_from_doc(doc)
    return schema, _named_values(schema, _require(doc, "initial", dict), "initial")


# -- operators and journals ------------------------------------------------

def op_from_literal(lit: dict, domain: ParamDomain | None = None) -> AffineOp:
    if not isinstance(lit, dict):
        raise FormatError("operator literal must be an object")
    kind = lit.get("kind")
    if kind is None or kind == "affine":
        return AffineOp(_rational(_require(lit, "a")), _rational(_require(lit, "b")))
    if kind == "cee" and "value" in lit:
        if domain is None:
            raise FormatError("raw 'value' literals need a schema")
        return cee(encode(domain, lit["value"]))
    makers = {"delta": delta, "cee": cee, "mu": mu}
    if kind not in makers:
        raise FormatError(f"unknown operator kind {kind!r}")
    return makers[kind](_rational(_require(lit, "q")))


def _component_index(schema: Schema, lit: dict) -> int:
    if "param" in lit:
        name = lit["param"]
        if name not in schema.names:
            raise SchemaMismatch(f"unknown parameter {name!r}")
        return schema.index(name)
    if "index" in lit:
        i = lit["index"]
        if type(i) is not int:
            raise FormatError("component index must be an integer")
        if not 0 <= i < schema.n:
            raise SchemaMismatch(f"component index {i} outside 0..{schema.n - 1}")
        return i
    raise FormatError("operator component needs 'param' or 'index'")


def multiop_from_doc(schema: Schema, components: list) -> MultiOp:
    if not isinstance(components, list):
        raise FormatError("a journal operator is a list of components")
    parts = []
    for lit in components:
        if not isinstance(lit, dict):
            raise FormatError("operator component must be an object")
        i = _component_index(schema, lit)
        parts.append((i, op_from_literal(lit, schema.params[i])))
    return multi_from(schema.n, parts)


def multiop_to_doc(op: MultiOp) -> list:
    return [
        {"index": i, "a": format_rational(p.a), "b": format_rational(p.b)}
        for i, p in enumerate(op.parts)
        if p != identity()
    ]


def journal_from_doc(schema: Schema, entries: list) -> list[JournalEntry]:
    if not isinstance(entries, list):
        raise FormatError("journal entries must be a list")
    out = []
    for e in entries:
        if not isinstance(e, dict):
            raise FormatError("journal entry must be an object")
        tick = _require(e, "tick", int)
        key = "ops" if "ops" in e else "op"
        out.append(JournalEntry(tick, multiop_from_doc(schema, _require(e, key, list))))
    return out


def load_journal(path, schema: Schema) -> list[JournalEntry]:
    return journal_from_doc(schema, _require(load_json(path), "entries", list))


def journal_to_doc(journal) -> list:
    return [{"tick": e.tick, "op": multiop_to_doc(e.op)} for e in journal]


# -- policies --------------------------------------------------------------

def load_policy(path, schema: Schema) -> Policy:
    doc = load_json(path)
    return Policy(_named_values(schema, _require(doc, "desired", dict), "policy"))


def policy_to_doc(policy: Policy, schema: Schema) -> dict:
    desired = {}
    for p, v in zip(schema.params, policy.desired):
        raw = decode(p, v)
        desired[p.name] = format_rational(raw) if isinstance(raw, Fraction) else raw
    return {"format_version": FORMAT_VERSION, "desired": desired}


# -- traces ----------------------------------------------------------------

def _cause_doc(c: Cause) -> dict:
    doc = {"kind": c.kind}
    if c.entry is not None:
        doc["entry"] = c.entry
    if c.description is not None:
        doc["description"] = c.description
    return doc


def trace_to_doc(trace: Trace) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "schema": schema_to_doc(trace.schema),
        "ticks": trace.ticks,
        "drift": {
            "rate": format_rational(trace.drift.rate),
            "seed": trace.drift.seed,
            "style": trace.drift.style,
            "count": trace.drift_count,
        },
        "initial": _vec_doc(trace.initial),
        "journal": journal_to_doc(trace.journal),
        "history": [
            {"tick": h.tick, "state": _vec_doc(h.state), "cause": _cause_doc(h.cause)}
            for h in trace.history
        ],
        "final": _vec_doc(trace.final),
    }


def trace_from_doc(doc: dict) -> Trace:
    try:
        schema = schema_from_doc(_require(doc, "schema", dict))
        drift = _require(doc, "drift", dict)
        history = []
        for h in _require(doc, "history", list):
            c = _require(h, "cause", dict)
            cause = Cause(_require(c, "kind", str), c.get("entry"), c.get("description"))
            history.append(HistoryEntry(_require(h, "tick", int), _vec(_require(h, "state")), cause))
        return Trace(
            schema=schema,
            initial=_vec(_require(doc, "initial")),
            journal=tuple(journal_from_doc(schema, _require(doc, "journal", list))),
            history=tuple(history),
            final=_vec(_require(doc, "final")),
            drift_count=_require(drift, "count", int),
            ticks=_require(doc, "ticks", int),
            drift=DriftModel(
                _rational(_require(drift, "rate")),
                _require(drift, "seed", int),
                _require(drift, "style", str),
            ),
        )
    except FormatError:
        raise
    except (ValueError, TypeError) as exc:
        raise FormatError(f"malformed trace: {exc}") from None


def load_trace(path) -> Trace:
    return trace_from_doc(load_json(path))


def dump_trace(trace: Trace) -> str:
    return dumps(trace_to_doc(trace))
