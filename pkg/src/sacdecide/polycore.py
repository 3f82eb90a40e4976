"""Exact sparse bivariate and dense univariate polynomials.

Coefficients live in an abstract field object with the methods ``add``,
``sub``, ``neg``, ``mul``, ``inv``, ``is_zero``, ``coerce`` and ``lift`` and
the attributes ``zero`` and ``one``.  Elements are plain values (``Fraction``
at the bottom of a tower, nested tuples above it) and a stored coefficient is
always *structurally* nonzero, i.e. ``bool(c)`` is true.  ``inv`` and
``is_zero`` may raise :class:`~sacdecide.errors.ZeroDivisorSplit` when the
coefficient ring is a product of fields rather than a field.

Bivariate terms are kept in graded lexicographic order with x > y, highest
first.
"""

import math
from fractions import Fraction

from .errors import NonInvertibleLead, ZeroDivisorSplit, ZeroPolynomialError

NEG_INF = -math.inf


class RationalField:
    """The rationals as a coefficient field over ``fractions.Fraction``."""

    zero = Fraction(0)
    one = Fraction(1)
    height = 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return not a

    def coerce(self, r):
        return Fraction(r)

    def lift(self, e):
        return Fraction(e)

    def reduce(self, e):
        return Fraction(e)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# -- dense univariate helpers on coefficient tuples (index = exponent) --------


def trim(cs):
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def uni_add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def uni_neg(F, a):
    return tuple(F.neg(c) for c in a)


def uni_sub(F, a, b):
    return uni_add(F, a, uni_neg(F, b))


def uni_scale(F, a, s):
    return trim(F.mul(c, s) for c in a)


def uni_mul(F, a, b):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return trim(out)


def uni_rem_monic(F, a, m):
    """Remainder of ``a`` modulo the monic polynomial ``m``; never inverts."""
    n = len(m) - 1
    if len(a) <= n:
        return a
    out = list(a)
    for i in range(len(out) - 1, n - 1, -1):
        c = out[i]
        if not c:
            continue
        for j in range(n):
            if m[j]:
                out[i - n + j] = F.sub(out[i - n + j], F.mul(c, m[j]))
        out[i] = F.zero
    return trim(out[:n])


def uni_divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    n = len(b) - 1
    inv_lc = F.inv(b[-1])
    out = list(a)
    quo = [F.zero] * max(len(a) - n, 0)
    for i in range(len(out) - 1, n - 1, -1):
        c = out[i]
        if not c:
            continue
        f = F.mul(c, inv_lc)
        quo[i - n] = f
        for j in range(n):
            if b[j]:
                out[i - n + j] = F.sub(out[i - n + j], F.mul(f, b[j]))
        out[i] = F.zero
    return trim(quo), trim(out[:n])


def uni_monic(F, a):
    if not a:
        return a
    s = F.inv(a[-1])
    return tuple(F.mul(c, s) for c in a[:-1]) + (F.one,)


def uni_gcd(F, a, b):
    """Monic gcd by Euclid; ``()`` when both inputs are zero."""
    while b:
        a, b = b, uni_divmod(F, a, b)[1]
    return uni_monic(F, a)


def uni_xgcd(F, a, b):
    """Return ``(g, s)`` with ``g`` monic and ``s*a = g`` modulo ``b``."""
    r0, r1 = a, b
    s0, s1 = (F.one,), ()
    while r1:
        q, r = uni_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, uni_sub(F, s0, uni_mul(F, q, s1))
    if not r0:
        return (), ()
    c = F.inv(r0[-1])
    return uni_scale(F, r0, c), uni_scale(F, s0, c)


def uni_deriv(F, a):
    return trim(F.mul(F.coerce(i), c) for i, c in enumerate(a) if i)


def uni_eval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``t**i``."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field=QQ):
        self.coeffs = trim(coeffs)
        self.field = field

    @classmethod
    def from_rationals(cls, values, field=QQ):
        return cls([field.coerce(v) for v in values], field)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return UniPoly(uni_add(self.field, self.coeffs, other.coeffs), self.field)

    def __sub__(self, other):
        return UniPoly(uni_sub(self.field, self.coeffs, other.coeffs), self.field)

    def __neg__(self):
        return UniPoly(uni_neg(self.field, self.coeffs), self.field)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            return UniPoly(uni_mul(self.field, self.coeffs, other.coeffs), self.field)
        return UniPoly(uni_scale(self.field, self.coeffs, self.field.coerce(other)), self.field)

    __rmul__ = __mul__

    def scale(self, c):
        return UniPoly(uni_scale(self.field, self.coeffs, c), self.field)

    def __divmod__(self, other):
        q, r = uni_divmod(self.field, self.coeffs, other.coeffs)
        return UniPoly(q, self.field), UniPoly(r, self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        return UniPoly(uni_monic(self.field, self.coeffs), self.field)

    def derivative(self):
        return UniPoly(uni_deriv(self.field, self.coeffs), self.field)

    def __call__(self, x):
        """Evaluate at a field element."""
        return uni_eval(self.field, self.coeffs, x)

    def compose(self, p):
        """``self(p)`` for a bivariate polynomial ``p`` (Horner)."""
        acc = Poly2({}, p.field)
        for c in reversed(self.coeffs):
            acc = acc * p
            if c:
                acc = acc + Poly2.constant(c, p.field)
        return acc

    def over(self, field):
        return UniPoly([field.lift(c) for c in self.coeffs], field)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"


# -- sparse bivariate polynomials --------------------------------------------


def _grlex(m):
    return (m[0] + m[1], m[0])


class Poly2:
    """Sparse polynomial in x and y with terms ``{(ex, ey): coefficient}``.

    Instances are immutable; every operation returns a new polynomial in
    canonical form (no stored zero, terms in descending graded lex order).
    """

    __slots__ = ("terms", "field")

    def __init__(self, terms=None, field=QQ):
        items = [(m, c) for m, c in (terms or {}).items() if c]
        items.sort(key=lambda t: _grlex(t[0]), reverse=True)
        self.terms = dict(items)
        self.field = field

    @classmethod
    def constant(cls, c, field=QQ):
        return cls({(0, 0): c}, field)

    @classmethod
    def x(cls, field=QQ):
        return cls({(1, 0): field.one}, field)

    @classmethod
    def y(cls, field=QQ):
        return cls({(0, 1): field.one}, field)

    @classmethod
    def from_rationals(cls, terms, field=QQ):
        return cls({m: field.coerce(c) for m, c in terms.items()}, field)

    # -- inspection

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Poly2({self.terms!r})"

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return sum(next(iter(self.terms)))

    def is_constant(self):
        return self.total_degree() <= 0

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return next(iter(self.terms.items()))

    @property
    def leading_monomial(self):
        return self.leading_term()[0]

    @property
    def leading_coefficient(self):
        return self.leading_term()[1]

    def coefficient(self, m):
        return self.terms.get(m, self.field.zero)

    def leading_form(self):
        if not self.terms:
            raise ZeroPolynomialError("leading form of the zero polynomial")
        d = self.total_degree()
        return Poly2({m: c for m, c in self.terms.items() if m[0] + m[1] == d}, self.field)

    # -- arithmetic

    def _coerce_other(self, other):
        if isinstance(other, Poly2):
            return other
        return Poly2.constant(self.field.coerce(other), self.field)

    def __add__(self, other):
        other = self._coerce_other(other)
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out[m], c) if m in out else c
        return Poly2(out, F)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly2({m: F.neg(c) for m, c in self.terms.items()}, F)

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return self._coerce_other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return self.scale(self.field.coerce(other))
        F = self.field
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                m = (a1 + a2, b1 + b2)
                prod = F.mul(c1, c2)
                out[m] = F.add(out[m], prod) if m in out else prod
        return Poly2(out, F)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly2.constant(self.field.one, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        F = self.field
        return Poly2({m: F.mul(v, c) for m, v in self.terms.items()}, F)

    def substitute(self, sx, sy):
        """Compose: ``self(sx, sy)``."""
        F = self.field
        xs = [Poly2.constant(F.one, F)]
        ys = [Poly2.constant(F.one, F)]
        acc = Poly2({}, F)
        for (i, j), c in self.terms.items():
            while len(xs) <= i:
                xs.append(xs[-1] * sx)
            while len(ys) <= j:
                ys.append(ys[-1] * sy)
            acc = acc + (xs[i] * ys[j]).scale(c)
        return acc

    def divide_by(self, d):
        """Single-divisor long division: ``self = q*d + r``.

        No term of ``r`` is divisible by the leading monomial of ``d``.
        """
        if not d.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        (lx, ly), lc = d.leading_term()
        try:
            inv_lc = F.inv(lc)
        except ZeroDivisorSplit as exc:
            raise NonInvertibleLead(exc.level, exc.factors, exc.origin) from exc
        tail = list(d.terms.items())[1:]
        work = dict(self.terms)
        quot, rem = {}, {}
        while work:
            m = max(work, key=_grlex)
            c = work.pop(m)
            if m[0] >= lx and m[1] >= ly:
                sx, sy = m[0] - lx, m[1] - ly
                f = F.mul(c, inv_lc)
                quot[(sx, sy)] = f
                for (dx, dy), dc in tail:
                    k = (dx + sx, dy + sy)
                    nv = F.sub(work[k], F.mul(f, dc)) if k in work else F.neg(F.mul(f, dc))
                    if nv:
                        work[k] = nv
                    else:
                        work.pop(k, None)
            else:
                rem[m] = c
        return Poly2(quot, F), Poly2(rem, F)

    def map_coeffs(self, fn, field):
        return Poly2({m: fn(c) for m, c in self.terms.items()}, field)

    def over(self, field):
        """Reinterpret the coefficients in ``field`` (embedding or branch reduction)."""
        return Poly2({m: field.lift(c) for m, c in self.terms.items()}, field)

    def evaluate(self, x, y, coeff=lambda c: c):
        return sum(coeff(c) * x**i * y**j for (i, j), c in self.terms.items())


def total_degree(p):
    return p.total_degree()


def leading_form(p):
    return p.leading_form()


def substitute(p, sx, sy):
    return p.substitute(sx, sy)


def divide_by(p, d):
    return p.divide_by(d)
