"""
Arithmetic in a tower
=====================

Adjoined roots are kept as symbols with a squarefree relation that may still
factor.  A computation that meets a zero divisor splits the tower into the
coprime factors and continues on each branch.
"""

from fractions import Fraction

from sacdecide.notation import parse_uni, render_defining, render_elem
from sacdecide.polycore import UniPoly
from sacdecide.tower import FieldCtx, Split, adjoin, fork, invert, is_zero

Q = FieldCtx()

# b1^2 + 1 is irreducible: every nonzero element inverts
K = adjoin(Q, parse_uni("t^2 + 1", Q))
b1 = K.gen(1)
print("relation:", render_defining(K, 1))
print("1/b1 =", render_elem(invert(K, b1), K))
print("1/(1 + b1) =", render_elem(invert(K, K.add(K.one, b1)), K))

# b1^2 - 1 factors, which is only discovered when b1 - 1 is tested
L = adjoin(Q, parse_uni("t^2 - 1", Q))
e = L.sub(L.gen(1), L.one)
res = is_zero(L, e)
assert isinstance(res, Split)
for i, branch in enumerate(res.branches):
    print(f"branch {i}: {render_defining(branch, 1)} = 0, b1 - 1 is zero: {is_zero(branch, res.translate(i, e))}")

# fork runs a computation once per branch it forces
for branch, value in fork(L, lambda c: c.inv(c.add(c.gen(1), c.coerce(Fraction(3))))):
    print(f"on {render_defining(branch, 1)} = 0: 1/(b1 + 3) = {render_elem(value, branch)}")

# adjoining a square keeps only its squarefree part
M = adjoin(Q, UniPoly.from_rationals([4, -4, 1]))
print("(t - 2)^2 adjoins", render_defining(M, 1))
