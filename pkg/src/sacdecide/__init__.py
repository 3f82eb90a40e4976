"""Decide whether a plane polynomial map is a product of simple affine contractions."""

from .certify import Certificate, decode, encode, from_decision, recompose, replay, verify
from .engine import (
    Decision,
    Div1,
    MorphismPair,
    Outcome,
    Side,
    Sub2,
    Swap,
    apply_step,
    decide,
    is_affine_auto,
    reducing_moves,
    solve_div,
)
from .notation import parse_poly, render_poly
from .polycore import QQ, Poly2, UniPoly
from .tower import FieldCtx, Mode

__all__ = [
    "QQ",
    "Certificate",
    "Decision",
    "Div1",
    "FieldCtx",
    "Mode",
    "MorphismPair",
    "Outcome",
    "Poly2",
    "Side",
    "Sub2",
    "Swap",
    "UniPoly",
    "apply_step",
    "decide",
    "decode",
    "encode",
    "from_decision",
    "is_affine_auto",
    "parse_poly",
    "recompose",
    "reducing_moves",
    "render_poly",
    "replay",
    "solve_div",
    "verify",
]
