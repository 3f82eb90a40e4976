"""
Over Q or over the closure
==========================

(x, y(x^2 + 1)) reduces only after dividing by x - i and then x + i.  Over
the rationals the constraint b^2 + 1 has no root; over the closure the tower
adjoins b1 with b1^2 + 1 = 0 and the search finishes in two steps.
"""

from sacdecide import Mode, decide, parse_poly, render_poly
from sacdecide.cli import describe_step, describe_tower
from sacdecide.notation import render_uni

u, v = parse_poly("x"), parse_poly("y x^2 + y")

d = decide(u, v, Mode.RATIONAL)
print("rational:", d.outcome.value.upper())
for rep in d.refusal:
    gcd = "" if rep.gcd is None else f"  (gcd {render_uni(rep.gcd, 'b')})"
    print(f"  {rep.move}: {rep.reason}{gcd}")

d = decide(u, v, Mode.CLOSURE)
print("\nclosure:", d.outcome.value.upper())
print("  tower:", describe_tower(d.ctx))
for i, entry in enumerate(d.trace, 1):
    print(f"  {i}. {describe_step(entry.step, d.ctx)}")
print("  final pair:", render_poly(d.final.u), ",", render_poly(d.final.v))
