"""Certificates: serialization, replay and recomposition.

A YES certificate is checked twice and independently of the search:

* :func:`replay` re-applies the recorded moves to the input pair under the
  recorded tower and requires the result to be an affine automorphism;
* :func:`recompose` turns every move into the contraction it undoes and
  checks ``input = sigma_1 o ... o sigma_n o alpha`` by substitution, where
  ``sigma_1`` undoes the first move and ``alpha`` is the replayed final pair.
"""

import json
from dataclasses import dataclass, field
from typing import Optional

import jsonschema

from .engine import (
    Div1,
    MorphismPair,
    Outcome,
    Side,
    Sub2,
    Swap,
    _affine,
    _settle,
    apply_step,
)
from .errors import (
    ConstantComponent,
    MalformedCertificate,
    NotDivisible,
    PolySyntaxError,
    ZeroDivisorSplit,
)
from .notation import (
    parse_elem,
    parse_poly_over,
    parse_sparse,
    parse_uni,
    render_defining,
    render_elem,
    render_poly,
    render_uni,
)
from .polycore import Poly2, UniPoly, trim
from .tower import FieldCtx, Generator, Mode, squarefree_part

_TEXT = {"type": "string", "minLength": 1}

SCHEMA = {
    "type": "object",
    "required": ["version", "input", "mode", "outcome", "tower", "trace", "refusal", "stats"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": 1},
        "input": {
            "type": "object",
            "required": ["u", "v"],
            "additionalProperties": False,
            "properties": {"u": _TEXT, "v": _TEXT},
        },
        "mode": {"enum": ["rational", "closure"]},
        "outcome": {"enum": ["yes", "no", "undecided"]},
        "tower": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "defining"],
                "additionalProperties": False,
                "properties": {"name": {"type": "string", "pattern": "^b[1-9][0-9]*$"}, "defining": _TEXT},
            },
        },
        "trace": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"enum": ["div1", "sub2", "swap"]},
                    "side": {"enum": ["u", "v"]},
                    "a": _TEXT,
                    "b": _TEXT,
                    "c": _TEXT,
                    "q": _TEXT,
                },
                "allOf": [
                    {
                        "if": {"properties": {"kind": {"const": "div1"}}},
                        "then": {"required": ["side", "a", "b"], "not": {"required": ["q"]}},
                    },
                    {
                        "if": {"properties": {"kind": {"const": "sub2"}}},
                        "then": {"required": ["side", "q"], "not": {"anyOf": [{"required": [k]} for k in "abc"]}},
                    },
                    {
                        "if": {"properties": {"kind": {"const": "swap"}}},
                        "then": {"not": {"anyOf": [{"required": [k]} for k in ("side", "a", "b", "c", "q")]}},
                    },
                ],
            },
        },
        "refusal": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["move", "reason"],
                "additionalProperties": False,
                "properties": {"move": _TEXT, "reason": {"type": "string"}, "gcd": _TEXT},
            },
        },
        "stats": {
            "type": "object",
            "required": ["nodes", "maxDepth", "splits"],
            "additionalProperties": False,
            "properties": {
                "nodes": {"type": "integer", "minimum": 0},
                "maxDepth": {"type": "integer", "minimum": 0},
                "splits": {"type": "integer", "minimum": 0},
            },
        },
    },
}


@dataclass(frozen=True)
class TraceRecord:
    kind: str
    side: Optional[str] = None
    a: Optional[str] = None
    b: Optional[str] = None
    c: Optional[str] = None
    q: Optional[str] = None


@dataclass(frozen=True)
class RefusalRecord:
    move: str
    reason: str
    gcd: Optional[str] = None


@dataclass(frozen=True)
class Stats:
    nodes: int = 0
    max_depth: int = 0
    splits: int = 0


@dataclass(frozen=True)
class Certificate:
    u: str
    v: str
    mode: str
    outcome: str
    tower: tuple = ()
    trace: tuple = ()
    refusal: tuple = ()
    stats: Stats = field(default_factory=Stats)
    version: int = 1


@dataclass(frozen=True)
class SacFactor:
    """Images of x and y under one generalized simple affine contraction."""

    images: tuple

    def compose_after(self, pair):
        """``(sigma_x(pair), sigma_y(pair))``."""
        return tuple(img.substitute(pair[0], pair[1]) for img in self.images)


# -- building and (de)serializing ------------------------------------------------


def encode_step(step, ctx):
    if isinstance(step, Swap):
        return TraceRecord("swap")
    side = step.side.value
    if isinstance(step, Sub2):
        return TraceRecord("sub2", side, q=render_uni(step.q.over(ctx)))
    c = None if step.c is None else render_elem(ctx.lift(step.c), ctx)
    return TraceRecord("div1", side, a=render_elem(ctx.lift(step.a), ctx), b=render_elem(ctx.lift(step.b), ctx), c=c)


def certificate_for(u, v, mode, outcome, ctx, steps, refusal=(), stats=Stats()):
    """Assemble a certificate from an input pair, a tower and moves expressed over it."""
    return Certificate(
        u=render_poly(u),
        v=render_poly(v),
        mode=Mode(mode).value,
        outcome=Outcome(outcome).value,
        tower=tuple((g.name, render_defining(ctx, k)) for k, g in enumerate(ctx.gens, 1)),
        trace=tuple(encode_step(s, ctx) for s in steps),
        refusal=tuple(refusal),
        stats=stats,
    )


def from_decision(d):
    refusal = tuple(
        RefusalRecord(r.move, r.reason, None if r.gcd is None else render_uni(r.gcd, "b")) for r in d.refusal
    )
    stats = Stats(d.stats.nodes, d.stats.max_depth, d.stats.splits)
    return certificate_for(d.u, d.v, d.mode, d.outcome, d.ctx, [e.step for e in d.trace], refusal, stats)


def _drop_none(record):
    return {k: v for k, v in record.__dict__.items() if v is not None}


def to_document(c):
    return {
        "version": c.version,
        "input": {"u": c.u, "v": c.v},
        "mode": c.mode,
        "outcome": c.outcome,
        "tower": [{"name": n, "defining": d} for n, d in c.tower],
        "trace": [_drop_none(r) for r in c.trace],
        "refusal": [_drop_none(r) for r in c.refusal],
        "stats": {"nodes": c.stats.nodes, "maxDepth": c.stats.max_depth, "splits": c.stats.splits},
    }


def encode(c):
    return json.dumps(to_document(c), ensure_ascii=False, indent=2) + "\n"


def validate_document(doc):
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise MalformedCertificate(f"schema violation: {exc.message}") from exc


def decode(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"not JSON: {exc}") from exc
    validate_document(doc)
    return Certificate(
        u=doc["input"]["u"],
        v=doc["input"]["v"],
        mode=doc["mode"],
        outcome=doc["outcome"],
        tower=tuple((t["name"], t["defining"]) for t in doc["tower"]),
        trace=tuple(TraceRecord(**r) for r in doc["trace"]),
        refusal=tuple(RefusalRecord(**r) for r in doc["refusal"]),
        stats=Stats(doc["stats"]["nodes"], doc["stats"]["maxDepth"], doc["stats"]["splits"]),
        version=doc["version"],
    )


# -- verification ----------------------------------------------------------------


def load_tower(c):
    """Rebuild the tower, checking names, monicity and squarefreeness."""
    mode = Mode(c.mode)
    if mode is Mode.RATIONAL and c.tower:
        raise MalformedCertificate("rational certificates carry no tower")
    ctx = FieldCtx(mode)
    for k, (name, text) in enumerate(c.tower, 1):
        if name != f"b{k}":
            raise MalformedCertificate(f"generator {k} is named {name!r}")
        names = ctx.names + (name,)
        try:
            flat = parse_sparse(text, names)
        except PolySyntaxError as exc:
            raise MalformedCertificate(f"defining polynomial of {name}: {exc}") from exc
        grouped = {}
        for m, r in flat.items():
            grouped.setdefault(m[-1], {})[m[:-1]] = r
        if not grouped or max(grouped) < 1:
            raise MalformedCertificate(f"defining polynomial of {name} is constant")
        coeffs = [ctx.zero] * (max(grouped) + 1)
        for i, t in grouped.items():
            coeffs[i] = ctx.from_flat(t)
        coeffs = trim(coeffs)
        if coeffs[-1] != ctx.one:
            raise MalformedCertificate(f"defining polynomial of {name} is not monic")
        f = UniPoly(coeffs, ctx)
        for _, s in squarefree_part(ctx, f):
            if s.degree != f.degree:
                raise MalformedCertificate(f"defining polynomial of {name} is not squarefree")
        ctx = FieldCtx(mode, ctx.gens + (Generator(name, tuple(coeffs)),))
    return ctx


def decode_step(r, ctx):
    try:
        if r.kind == "swap":
            return Swap()
        side = Side(r.side)
        if r.kind == "sub2":
            return Sub2(side, parse_uni(r.q, ctx))
        c = None if r.c is None else parse_elem(r.c, ctx)
        return Div1(side, parse_elem(r.a, ctx), parse_elem(r.b, ctx), c)
    except PolySyntaxError as exc:
        raise MalformedCertificate(f"trace parameter: {exc}") from exc


def _load(c):
    ctx = load_tower(c)
    try:
        pair = MorphismPair(parse_poly_over(c.u, ctx), parse_poly_over(c.v, ctx), ctx)
    except (PolySyntaxError, ConstantComponent) as exc:
        raise MalformedCertificate(f"input pair: {exc}") from exc
    return ctx, pair, [decode_step(r, ctx) for r in c.trace]


def _replay_pair(c):
    """Final pair after replaying ``c``, or None if some step fails."""
    ctx, pair, steps = _load(c)
    for step in steps:
        try:
            pair = apply_step(pair, step)
        except (NotDivisible, ConstantComponent, ZeroDivisorSplit):
            return None
    try:
        _settle(pair)
        if not _affine(pair):
            return None
    except ZeroDivisorSplit:
        return None
    return pair


def replay(c):
    """True iff every recorded move applies exactly and ends at an affine automorphism."""
    if c.outcome != "yes":
        return False
    return _replay_pair(c) is not None


def step_to_contraction(step, ctx=None):
    """The contraction ``sigma`` with ``before = sigma(after)``."""
    ctx = FieldCtx() if ctx is None else ctx
    X, Y = Poly2.x(ctx), Poly2.y(ctx)
    if isinstance(step, Swap):
        return SacFactor((Y, X))
    if isinstance(step, Sub2):
        q = step.q.over(ctx)
        if step.side is Side.U:
            return SacFactor((X - q.compose(Y), Y))
        return SacFactor((X, Y - q.compose(X)))
    a = Poly2.constant(ctx.lift(step.a), ctx)
    b = Poly2.constant(ctx.lift(step.b), ctx)
    scale = (lambda p: p) if step.c is None else (lambda p: p.scale(ctx.lift(step.c)))
    if step.side is Side.U:
        return SacFactor((X * (scale(Y) + b) - a, Y))
    return SacFactor((X, Y * (scale(X) + b) - a))


def recompose(c):
    """True iff the contractions of the trace, composed onto the final pair, give the input."""
    if c.outcome != "yes":
        return False
    final = _replay_pair(c)
    if final is None:
        return False
    ctx, pair, steps = _load(c)
    images = (final.u, final.v)
    for step in reversed(steps):
        images = step_to_contraction(step, ctx).compose_after(images)
    return images == (pair.u, pair.v)


def verify(c):
    return replay(c) and recompose(c)
