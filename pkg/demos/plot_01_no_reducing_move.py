"""
A pair with no reducing move
============================

The degrees are 6 and 9, neither divides the other, and no division by a
shifted component is exact.  Nothing lowers the degree sum, so the pair is
not a product of simple affine contractions.
"""

from sacdecide import Mode, decide, parse_poly, render_poly

u = parse_poly("x^4 y^2 - 2x^3y + x^2 + xy")
v = parse_poly("x^6y^3 - 3x^5y^2 + 3x^4y + 2x^3y^2 - x^3 - 3x^2y + x + y")
print("u =", render_poly(u))
print("v =", render_poly(v))

# the answer is the same over Q and over its algebraic closure
for mode in Mode:
    d = decide(u, v, mode)
    print(f"\n{mode.value}: {d.outcome.value.upper()} after {d.stats.nodes} node(s)")
    for rep in d.refusal:
        print(f"  {rep.move:7s} {rep.reason}")
