"""Triangular towers of algebraic parameters over the rationals.

A :class:`FieldCtx` is ``Q[b1, ..., bn] / (f1, ..., fn)`` where each ``fk`` is
monic and squarefree in ``bk`` over the previous level.  The defining
polynomials need not be irreducible, so the ring is a product of fields and
an element may be a zero divisor.  When an operation meets one it raises
:class:`~sacdecide.errors.ZeroDivisorSplit`; :func:`fork` catches that, splits
the offending generator into two coprime factors and re-runs the computation
in each branch (dynamic evaluation).

Element representation: a ``Fraction`` at height 0; at height ``k`` a tuple
of height ``k-1`` elements holding the coefficients in ``bk`` (reduced modulo
``fk``, trailing zeros stripped).  Canonical forms are unique, so an element
is zero exactly when it is falsy.
"""

import contextvars
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConstantPolynomialError, ZeroDivisorSplit, ZeroPolynomialError
from .polycore import (
    QQ,
    UniPoly,
    trim,
    uni_add,
    uni_deriv,
    uni_divmod,
    uni_eval,
    uni_gcd as _pair_gcd,
    uni_monic,
    uni_mul,
    uni_neg,
    uni_rem_monic,
    uni_sub,
    uni_xgcd,
)


class Mode(enum.Enum):
    RATIONAL = "rational"
    CLOSURE = "closure"


def elem_height(e):
    """Nesting depth of a nonzero element; ``None`` for the zero tuple."""
    h = 0
    while isinstance(e, tuple):
        if not e:
            return None
        e = e[-1]
        h += 1
    return h


class _Extension:
    """One level ``base[b]/(modulus)`` of a tower."""

    def __init__(self, base, modulus, level):
        self.base = base
        self.modulus = modulus
        self.level = level
        self.height = level
        self.zero = ()
        self.one = (base.one,)

    def add(self, a, b):
        return uni_add(self.base, a, b)

    def sub(self, a, b):
        return uni_sub(self.base, a, b)

    def neg(self, a):
        return uni_neg(self.base, a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        return uni_rem_monic(self.base, uni_mul(self.base, a, b), self.modulus)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if len(a) == 1:
            return (self.base.inv(a[0]),)
        g, s = uni_xgcd(self.base, a, self.modulus)
        if len(g) > 1:
            h = uni_divmod(self.base, self.modulus, g)[0]
            raise ZeroDivisorSplit(self.level, (g, h), self)
        return uni_rem_monic(self.base, s, self.modulus)

    def is_zero(self, a):
        if not a:
            return True
        if len(a) == 1:
            return self.base.is_zero(a[0])
        self.inv(a)
        return False

    def coerce(self, r):
        inner = self.base.coerce(r)
        return (inner,) if inner else ()

    def reduce(self, e):
        h = elem_height(e)
        if h is None:
            return ()
        if h > self.level:
            raise ValueError(f"element of height {h} does not fit level {self.level}")
        if h < self.level:
            inner = self.base.reduce(e)
            return (inner,) if inner else ()
        cs = trim(self.base.reduce(c) for c in e)
        return uni_rem_monic(self.base, cs, self.modulus)

    lift = reduce


@dataclass(frozen=True)
class Generator:
    name: str
    defining: tuple  # monic coefficient tuple over the previous level


@dataclass(frozen=True)
class FieldCtx:
    """An immutable computation context: the mode and the tower generators."""

    mode: Mode = Mode.CLOSURE
    gens: tuple = ()
    _levels: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.mode is Mode.RATIONAL and self.gens:
            raise ValueError("rational mode admits no generators")
        levels = [QQ]
        for k, g in enumerate(self.gens, 1):
            if len(g.defining) < 2 or g.defining[-1] != levels[-1].one:
                raise ValueError(f"defining polynomial of {g.name} must be monic and nonconstant")
            levels.append(_Extension(levels[-1], g.defining, k))
        object.__setattr__(self, "_levels", tuple(levels))
        top = levels[-1]
        # bind the field contract of the top level directly (hot path)
        for name in ("add", "sub", "neg", "mul", "inv", "is_zero", "coerce", "reduce"):
            object.__setattr__(self, name, getattr(top, name))

    @property
    def zero(self):
        return self._levels[-1].zero

    @property
    def one(self):
        return self._levels[-1].one

    @property
    def height(self):
        return len(self.gens)

    @property
    def names(self):
        return tuple(g.name for g in self.gens)

    def lift(self, obj):
        """Bring an element or polynomial object from an ancestor context into this one."""
        if hasattr(obj, "over"):
            return obj.over(self)
        return self.reduce(obj)

    def level(self, k):
        return self._levels[k]

    def gen(self, k):
        """The element ``bk`` (1-based) as an element of this context."""
        lv = self._levels[k]
        return self.reduce(lv.reduce((lv.base.zero, lv.base.one)))

    def defining_poly(self, k):
        """Defining polynomial of generator ``k`` as a UniPoly over this context."""
        return UniPoly([self.reduce(c) for c in self.gens[k - 1].defining], self)

    def extend(self, f):
        """Append a generator with the given monic squarefree defining polynomial."""
        name = f"b{self.height + 1}"
        coeffs = tuple(self.reduce(c) for c in f.coeffs)
        return FieldCtx(self.mode, self.gens + (Generator(name, coeffs),))

    def pow(self, e, n):
        acc = self.one
        while n:
            if n & 1:
                acc = self.mul(acc, e)
            n >>= 1
            if n:
                e = self.mul(e, e)
        return acc

    def split(self, level, factors):
        """Branch contexts replacing generator ``level``'s relation by each factor."""
        branches = []
        for fac in factors:
            ctx = FieldCtx(self.mode, self.gens[: level - 1])
            ctx = FieldCtx(self.mode, ctx.gens + (Generator(self.gens[level - 1].name, tuple(fac)),))
            for g in self.gens[level:]:
                coeffs = tuple(ctx.reduce(c) for c in g.defining)
                ctx = FieldCtx(self.mode, ctx.gens + (Generator(g.name, coeffs),))
            branches.append(ctx)
        return Split(level, tuple(UniPoly(f, self._levels[level - 1]) for f in factors), tuple(branches))

    def flatten(self, e, height=None):
        """Element as ``{(e1, ..., eh): Fraction}`` monomials in the generators."""
        h = self.height if height is None else height
        if h == 0:
            return {(): Fraction(e)} if e else {}
        out = {}
        for i, c in enumerate(e):
            for exps, r in self.flatten(c, h - 1).items():
                out[exps + (i,)] = r
        return out

    def from_flat(self, terms):
        """Inverse of :meth:`flatten`; exponents may exceed generator degrees."""
        acc = self.zero
        for exps, r in terms.items():
            t = self.coerce(r)
            for k, n in enumerate(exps, 1):
                if n:
                    t = self.mul(t, self.pow(self.gen(k), n))
            acc = self.add(acc, t)
        return acc

    def evaluate(self, e, point, height=None):
        """Numeric value of ``e`` with generator ``bk`` mapped to ``point[k-1]``."""
        h = self.height if height is None else height
        if h == 0:
            return complex(e) if e else 0j
        acc = 0j
        for c in reversed(e):
            acc = acc * point[h - 1] + self.evaluate(c, point, h - 1)
        return acc

    def __repr__(self):
        rels = ", ".join(g.name for g in self.gens)
        return f"FieldCtx({self.mode.value}{': ' + rels if rels else ''})"


@dataclass(frozen=True)
class Split:
    """Refinement of a context at one generator into coprime factor branches."""

    level: int
    factors: tuple
    branches: tuple

    def translate(self, i, obj):
        return self.branches[i].lift(obj)


_split_log = contextvars.ContextVar("split_log", default=None)


def fork(ctx, fn):
    """Evaluate ``fn(c)`` on every branch of ``ctx`` that a zero divisor forces.

    Returns ``[(branch_ctx, result), ...]`` in deterministic branch order.
    ``fn`` must lift its inputs into the context it is handed.
    """
    out = []
    stack = [ctx]
    while stack:
        c = stack.pop()
        try:
            out.append((c, fn(c)))
        except ZeroDivisorSplit as exc:
            if exc.origin is not c._levels[exc.level]:
                raise
            log = _split_log.get()
            if log is not None:
                log.append(exc.level)
            stack.extend(reversed(c.split(exc.level, exc.factors).branches))
    return out


def _catch_split(ctx, fn):
    try:
        return fn()
    except ZeroDivisorSplit as exc:
        if exc.origin is not ctx._levels[exc.level]:
            raise
        return ctx.split(exc.level, exc.factors)


def is_zero(ctx, e):
    """True/False when uniform over ``ctx``, otherwise the separating Split."""
    return _catch_split(ctx, lambda: ctx.is_zero(ctx.reduce(e)))


def invert(ctx, e):
    """Inverse of ``e``, or the Split when ``e`` is a zero divisor."""
    return _catch_split(ctx, lambda: ctx.inv(ctx.reduce(e)))


def _gcd_all(c, fs):
    g = ()
    for f in fs:
        g = _pair_gcd(c, g, c.lift(f).coeffs)
    return UniPoly(g, c)


def uni_gcd(ctx, fs):
    """Monic gcd of a family of UniPolys, resolved per branch.

    Returns ``[(branch_ctx, gcd), ...]``; a zero gcd means every input was zero.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("empty family")
    return fork(ctx, lambda c: _gcd_all(c, fs))


def _squarefree(c, f):
    f = c.lift(f)
    if not f:
        raise ZeroPolynomialError("squarefree part of zero")
    coeffs = uni_monic(c, f.coeffs)
    g = _pair_gcd(c, coeffs, uni_deriv(c, coeffs))
    return UniPoly(uni_divmod(c, coeffs, g)[0], c)


def squarefree_part(ctx, f):
    """Monic squarefree part ``f / gcd(f, f')`` per branch."""
    return fork(ctx, lambda c: _squarefree(c, f))


def adjoin(ctx, f):
    """Extend ``ctx`` by a root of ``f``: a new FieldCtx, or the Split met first."""
    if ctx.mode is not Mode.CLOSURE:
        raise ValueError("adjoin requires closure mode")

    def run():
        g = ctx.lift(f)
        if not g:
            raise ZeroPolynomialError("every value is a root of the zero polynomial")
        s = _squarefree(ctx, g)
        if s.degree < 1:
            raise ConstantPolynomialError("a nonzero constant has no root")
        return ctx.extend(s)

    return _catch_split(ctx, run)


def adjoin_all(ctx, f):
    """:func:`adjoin` with splits resolved: ``[extended_ctx, ...]``."""
    res = adjoin(ctx, f)
    if isinstance(res, FieldCtx):
        return [res]
    out = []
    for i, branch in enumerate(res.branches):
        out.extend(adjoin_all(branch, res.translate(i, f)))
    return out


# -- rational roots ------------------------------------------------------------


def _divisors(n):
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(f):
    """Ascending, duplicate-free rational roots of a nonzero UniPoly over Q."""
    cs = [Fraction(c) for c in (f.coeffs if isinstance(f, UniPoly) else f)]
    cs = list(trim(cs))
    if not cs:
        raise ZeroPolynomialError("every rational is a root of the zero polynomial")
    roots = set()
    if not cs[0]:
        roots.add(Fraction(0))
        while not cs[0]:
            cs.pop(0)
    denom = math.lcm(*(c.denominator for c in cs))
    ints = [int(c * denom) for c in cs]
    content = math.gcd(*ints)
    ints = [i // content for i in ints]
    if len(ints) > 1:
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if cand not in roots and not uni_eval(QQ, tuple(map(Fraction, ints)), cand):
                        roots.add(cand)
    return sorted(roots)
