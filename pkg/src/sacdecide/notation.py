"""Text grammar for polynomials: a precedence parser and a canonical printer.

Grammar, lowest precedence first::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | <juxtaposition>) factor)*
    factor := base ('^' uint)?
    base   := rational | var | '(' expr ')' | '-' factor

Variables are ``x``, ``y``, ``t`` and tower generators ``b1``, ``b2``, ...;
which of them are legal depends on the caller.  Rendering is canonical:
descending graded lex order, explicit ``*``, unit coefficients and exponents
suppressed.
"""

import re
from fractions import Fraction

from .errors import ExponentOverflow, PolySyntaxError
from .polycore import QQ, Poly2, UniPoly

MAX_EXPONENT = 10000

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(b\d+|[a-z])|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex) + 1
        if num is not None:
            p, _, q = num.partition("/")
            if q and int(q) == 0:
                raise PolySyntaxError("zero denominator", start)
            tokens.append(("num", Fraction(int(p), int(q) if q else 1), start))
        elif name is not None:
            tokens.append(("var", name, start))
        elif sym in "+-*^()":
            tokens.append((sym, sym, start))
        else:
            raise PolySyntaxError(f"unexpected character {sym!r}", start)
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


# sparse multivariate arithmetic on {exponent-tuple: Fraction}


def _madd(a, b):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mmul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(i + j for i, j in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _mpow(a, n, nvars):
    result = {(0,) * nvars: Fraction(1)}
    while n:
        if n & 1:
            result = _mmul(result, a)
        n >>= 1
        if n:
            a = _mmul(a, a)
    return result


class _Parser:
    def __init__(self, text, variables, max_exponent):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)
        self.index = {v: k for k, v in enumerate(self.variables)}
        self.max_exponent = max_exponent

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def const(self, c):
        return {(0,) * len(self.variables): Fraction(c)} if c else {}

    def parse(self):
        if self.tok[0] == "end":
            raise PolySyntaxError("empty expression", 1)
        value = self.expr()
        if self.tok[0] != "end":
            raise PolySyntaxError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.tok[0] in "+-":
            op = self.advance()[0]
            rhs = self.term()
            value = _madd(value, rhs if op == "+" else {m: -c for m, c in rhs.items()})
        return value

    def term(self):
        value = self.factor()
        while True:
            kind = self.tok[0]
            if kind == "*":
                self.advance()
            elif kind not in ("num", "var", "("):
                return value
            value = _mmul(value, self.factor())

    def factor(self):
        value = self.base()
        if self.tok[0] == "^":
            self.advance()
            kind, n, pos = self.advance()
            if kind != "num" or n.denominator != 1:
                raise PolySyntaxError("exponent must be a nonnegative integer", pos)
            if n > self.max_exponent:
                raise ExponentOverflow(f"exponent {n} exceeds {self.max_exponent}", pos)
            value = _mpow(value, int(n), len(self.variables))
        return value

    def base(self):
        kind, val, pos = self.advance()
        if kind == "num":
            return self.const(val)
        if kind == "var":
            if val not in self.index:
                raise PolySyntaxError(f"unknown variable {val!r}", pos)
            m = [0] * len(self.variables)
            m[self.index[val]] = 1
            return {tuple(m): Fraction(1)}
        if kind == "(":
            value = self.expr()
            if self.tok[0] != ")":
                raise PolySyntaxError("expected ')'", self.tok[2])
            self.advance()
            return value
        if kind == "-":
            return {m: -c for m, c in self.factor().items()}
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", pos)
        raise PolySyntaxError(f"unexpected {val!r}", pos)


def parse_sparse(text, variables, max_exponent=MAX_EXPONENT):
    """Parse into ``{exponent tuple: Fraction}`` over the given variable names."""
    return _Parser(text, variables, max_exponent).parse()


def parse_poly(text, max_exponent=MAX_EXPONENT):
    """Parse a polynomial in x and y with rational coefficients."""
    terms = parse_sparse(text, ("x", "y"), max_exponent)
    return Poly2(terms, QQ)


def _generator_names(ctx):
    return ctx.names if ctx is not None else ()


def parse_poly_over(text, ctx):
    """Parse a polynomial in x, y whose coefficients may involve the generators of ``ctx``."""
    names = _generator_names(ctx)
    flat = parse_sparse(text, ("x", "y") + names)
    grouped = {}
    for m, c in flat.items():
        grouped.setdefault(m[:2], {})[m[2:]] = c
    return Poly2({m: ctx.from_flat(t) for m, t in grouped.items()}, ctx)


def parse_elem(text, ctx):
    """Parse an element of the tower ``ctx`` (a polynomial in its generators)."""
    return ctx.from_flat(parse_sparse(text, _generator_names(ctx)))


def parse_uni(text, ctx, var="t"):
    """Parse a univariate polynomial in ``var`` with coefficients over ``ctx``."""
    flat = parse_sparse(text, (var,) + _generator_names(ctx))
    grouped = {}
    for m, c in flat.items():
        grouped.setdefault(m[0], {})[m[1:]] = c
    if not grouped:
        return UniPoly((), ctx)
    coeffs = [ctx.zero] * (max(grouped) + 1)
    for i, t in grouped.items():
        coeffs[i] = ctx.from_flat(t)
    return UniPoly(coeffs, ctx)


# -- rendering -----------------------------------------------------------------


def _monomial_text(m, names):
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_sparse(terms, names, key=None):
    """Render ``{exponent tuple: Fraction}``; default order is graded lex over ``names``."""
    if key is None:
        key = lambda m: (sum(m), m)  # noqa: E731
    out = []
    for m in sorted(terms, key=key, reverse=True):
        c = Fraction(terms[m])
        if not c:
            continue
        mono = _monomial_text(m, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out) if out else "0"


def _xy_key(m):
    rest = m[2:]
    return (m[0] + m[1], m[0], sum(rest), rest)


def render_poly(p):
    """Canonical text of a Poly2; tower coefficients are expanded in b1, b2, ..."""
    field = p.field
    names = getattr(field, "names", ())
    if not names:
        return render_sparse({m: c for m, c in p.terms.items()}, ("x", "y"), _xy_key)
    flat = {}
    for m, c in p.terms.items():
        for bm, r in field.flatten(c).items():
            flat[m + bm] = r
    return render_sparse(flat, ("x", "y") + names, _xy_key)


def render_elem(e, ctx=None):
    if ctx is None or not ctx.height:
        return render_sparse({(): e} if e else {}, ())
    return render_sparse(ctx.flatten(e), ctx.names)


def render_uni(q, var="t"):
    field = q.field
    names = getattr(field, "names", ())
    flat = {}
    for i, c in enumerate(q.coeffs):
        if not c:
            continue
        if names:
            for bm, r in field.flatten(c).items():
                flat[(i,) + bm] = r
        else:
            flat[(i,)] = c
    return render_sparse(flat, (var,) + names, lambda m: (m[0], sum(m[1:]), m[1:]))


def render_defining(ctx, k):
    """Defining relation of generator ``k`` rendered in ``b1..bk``."""
    g = ctx.gens[k - 1]
    flat = {}
    for i, c in enumerate(g.defining):
        if not c:
            continue
        if k == 1:
            flat[(i,)] = c
        else:
            for bm, r in ctx.flatten(c, k - 1).items():
                flat[bm + (i,)] = r
    names = ctx.names[:k]
    return render_sparse(flat, names, lambda m: (m[-1], sum(m[:-1]), m[:-1]))
