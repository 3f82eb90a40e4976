"""Peak-reduction search for factorizations into simple affine contractions.

A pair ``(u, v)`` is reduced by elementary transformations that strictly
lower ``deg u + deg v``:

* ``Div1`` -- replace one component ``w`` by ``(w + a) / (other + b)``
  (the scaling of the divisor is normalized to 1);
* ``Sub2`` -- replace one component ``w`` by ``w + q(other)``;
* ``Swap`` -- exchange the components (never degree reducing, only replayed).

The pair is a product of simple affine contractions iff some sequence of such
moves ends at an affine automorphism.  The search below is exhaustive over
all reducing moves and all parameter values, so it is finite (every move
lowers the degree sum) and its NO answers are trustworthy in closure mode.
"""

import enum
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConstantComponent, SymbolicUnderdetermined
from .polycore import Poly2, UniPoly, trim, uni_add, uni_mul, uni_neg, uni_sub
from .tower import (
    FieldCtx,
    Mode,
    _gcd_all,
    _split_log,
    adjoin_all,
    fork,
    rational_roots,
    squarefree_part,
)


class Side(enum.Enum):
    U = "u"
    V = "v"

    @property
    def other(self):
        return Side.V if self is Side.U else Side.U


class Outcome(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class Div1:
    """``w <- (w + a) / (c*other + b)`` on ``side``; ``c=None`` means 1."""

    side: Side
    a: object
    b: object
    c: object = None
    kind = "div1"

    def over(self, ctx):
        c = None if self.c is None else ctx.lift(self.c)
        return Div1(self.side, ctx.lift(self.a), ctx.lift(self.b), c)


@dataclass(frozen=True)
class Sub2:
    """``w <- w + q(other)`` on ``side``."""

    side: Side
    q: UniPoly
    kind = "sub2"

    def over(self, ctx):
        return Sub2(self.side, self.q.over(ctx))


@dataclass(frozen=True)
class Swap:
    kind = "swap"

    def over(self, ctx):
        return self


@dataclass(frozen=True)
class MorphismPair:
    u: Poly2
    v: Poly2
    ctx: FieldCtx

    def __post_init__(self):
        for name, comp in (("u", self.u), ("v", self.v)):
            if comp.total_degree() < 1:
                raise ConstantComponent(f"component {name} is constant")

    def over(self, ctx):
        return MorphismPair(self.u.over(ctx), self.v.over(ctx), ctx)

    def component(self, side):
        return self.u if side is Side.U else self.v

    def replace(self, side, p):
        if side is Side.U:
            return MorphismPair(p, self.v, self.ctx)
        return MorphismPair(self.u, p, self.ctx)

    def degree_sum(self):
        return self.u.total_degree() + self.v.total_degree()


def degree_sum(p):
    return p.degree_sum()


# -- single moves --------------------------------------------------------------


def et2_reducible(target, other):
    """The monomial ``q`` with ``deg(target + q(other)) < deg(target)``, or None.

    Only the monomial ``-lam * t**k`` can cancel the top degree; lower terms
    of ``q`` are irrelevant to the degree.  Leading coefficients are assumed
    invertible; a zero-divisor comparison raises ZeroDivisorSplit.
    """
    dt, do = target.total_degree(), other.total_degree()
    if do < 1 or do > dt or dt % do:
        return None
    k = dt // do
    F = target.field
    tm, tc = target.leading_term()
    om = other.leading_monomial
    if tm != (k * om[0], k * om[1]):
        return None
    power = other.leading_form() ** k
    lam = F.mul(tc, F.inv(power.leading_coefficient))
    diff = target.leading_form() - power.scale(lam)
    if diff and not F.is_zero(next(iter(diff.terms.values()))):
        return None
    return UniPoly([F.zero] * k + [F.neg(lam)], F)


def apply_step(pair, step):
    """Apply one elementary transformation; raises NotDivisible or ConstantComponent."""
    from .errors import NotDivisible

    ctx = pair.ctx
    if isinstance(step, Swap):
        return MorphismPair(pair.v, pair.u, ctx)
    comp = pair.component(step.side)
    other = pair.component(step.side.other)
    if isinstance(step, Sub2):
        return pair.replace(step.side, comp + step.q.over(ctx).compose(other))
    num = comp + Poly2.constant(ctx.lift(step.a), ctx)
    den = other if step.c is None else other.scale(ctx.lift(step.c))
    den = den + Poly2.constant(ctx.lift(step.b), ctx)
    quo, rem = num.divide_by(den)
    if rem:
        raise NotDivisible("remainder nonzero")
    return pair.replace(step.side, quo)


class _ParamRing:
    """Polynomials in one fresh parameter over a tower context, as coefficients."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.zero = ()
        self.one = (ctx.one,)

    def add(self, a, b):
        return uni_add(self.ctx, a, b)

    def sub(self, a, b):
        return uni_sub(self.ctx, a, b)

    def neg(self, a):
        return uni_neg(self.ctx, a)

    def mul(self, a, b):
        return uni_mul(self.ctx, a, b)

    def inv(self, a):
        if len(a) != 1:
            raise ValueError("only constants in the parameter are inverted")
        return (self.ctx.inv(a[0]),)

    def is_zero(self, a):
        return not a

    def coerce(self, r):
        c = self.ctx.coerce(r)
        return (c,) if c else ()


def _division_system(num, den, ctx):
    """Gcd of the divisibility constraints on ``b`` and the polynomial ``p(b)``.

    ``num + a`` is divisible by ``den + b`` iff ``gcd(b) = 0`` and ``a = -p(b)``.
    """
    R = _ParamRing(ctx)
    num_b = num.map_coeffs(lambda e: (e,), R)
    den_b = den.map_coeffs(lambda e: (e,), R) + Poly2.constant(trim((ctx.zero, ctx.one)), R)
    _, rem = num_b.divide_by(den_b)
    constraints = [UniPoly(c, ctx) for m, c in rem.terms.items() if m != (0, 0)]
    p = UniPoly(rem.terms.get((0, 0), ()), ctx)
    return _gcd_all(ctx, constraints), p


def _division_systems(num, den, ctx):
    return fork(ctx, lambda c: _division_system(num.over(c), den.over(c), c))


def _shift_roots(ctx, s):
    """Split a squarefree ``s`` over Q into its rational roots and the rest."""
    roots = rational_roots(s)
    rest = s
    for r in roots:
        rest = rest // UniPoly([-r, ctx.one], ctx)
    return roots, rest


def _solutions(ctx, g, p, mode):
    if not g:
        raise SymbolicUnderdetermined("every parameter value satisfies the divisibility system")
    if g.degree == 0:
        return []
    if mode is Mode.RATIONAL:
        return [(ctx, ctx.neg(p(r)), r) for r in rational_roots(g)]
    out = []
    for c, s in squarefree_part(ctx, g):
        pc = p.over(c)
        if c.height == 0:
            roots, rest = _shift_roots(c, s)
            out.extend((c, c.neg(pc(r)), r) for r in roots)
        else:
            rest = s
        if rest.degree == 1:
            b0 = c.neg(rest.coeffs[0])
            out.append((c, c.neg(pc(b0)), b0))
        elif rest.degree > 1:
            for ext in adjoin_all(c, rest):
                b = ext.gen(ext.height)
                out.append((ext, ext.neg(p.over(ext)(b)), b))
    return out


def solve_div(num, den, ctx, mode=Mode.CLOSURE):
    """All ``(ctx', a, b)`` with ``num + a`` divisible by ``den + b``.

    Returns ``[]`` unless ``deg num > deg den >= 1`` (no reduction possible).
    In closure mode a nonrational solution set is represented by a fresh
    generator; rational roots come first, ascending.
    """
    if not num.total_degree() > den.total_degree() >= 1:
        return []
    out = []
    for c, (g, p) in _division_systems(num, den, ctx):
        out.extend(_solutions(c, g, p, mode))
    return out


def _settle(pair):
    # make leading coefficients invertible so degrees are branch-independent
    for comp in (pair.u, pair.v):
        pair.ctx.inv(comp.leading_coefficient)


def _affine(pair):
    if pair.u.total_degree() > 1 or pair.v.total_degree() > 1:
        return False
    F = pair.ctx
    u, v = pair.u, pair.v
    det = F.sub(
        F.mul(u.coefficient((1, 0)), v.coefficient((0, 1))),
        F.mul(u.coefficient((0, 1)), v.coefficient((1, 0))),
    )
    return not F.is_zero(det)


def _partial(p, var):
    F = p.field
    out = {}
    for (i, j), c in p.terms.items():
        e = (i, j)[var]
        if e:
            m = (i - 1, j) if var == 0 else (i, j - 1)
            out[m] = F.mul(F.coerce(e), c)
    return Poly2(out, F)


def jacobian(pair):
    """``du/dx * dv/dy - du/dy * dv/dx``."""
    u, v = pair.u, pair.v
    return _partial(u, 0) * _partial(v, 1) - _partial(u, 1) * _partial(v, 0)


def is_affine_auto(pair):
    """Degree <= 1 components with nonzero linear determinant.

    Raises ZeroDivisorSplit when the answer differs between tower branches.
    """
    _settle(pair)
    return _affine(pair)


def _classify(pair, ctx):
    try:
        node = pair.over(ctx)
    except ConstantComponent:
        return None
    _settle(node)
    return node, _affine(node)


# -- move families -------------------------------------------------------------


@dataclass
class MoveReport:
    """What one move family yields at a node, and why it is empty if it is."""

    move: str
    moves: list
    reason: str = ""
    gcd: Optional[UniPoly] = None


def _sub2_report(node, side):
    label = f"sub2-{side.value}"
    t_name, o_name = side.value, side.other.value
    target, other = node.component(side), node.component(side.other)
    dt, do = target.total_degree(), other.total_degree()
    if do > dt or dt % do:
        return MoveReport(label, [], f"deg {o_name} = {do} does not divide deg {t_name} = {dt} ({do} ∤ {dt})")
    q = et2_reducible(target, other)
    if q is None:
        return MoveReport(
            label, [], f"leading form of {t_name} is not a multiple of a power of the leading form of {o_name}"
        )
    step = Sub2(side, q)
    try:
        succ = apply_step(node, step)
    except ConstantComponent:
        return MoveReport(label, [], f"{t_name} + q({o_name}) is constant")
    return MoveReport(label, [(step, succ)])


def _div1_report(node, side, mode, explain=True):
    label = f"div1-{side.value}"
    n_name, d_name = side.value, side.other.value
    num, den = node.component(side), node.component(side.other)
    dn, dd = num.total_degree(), den.total_degree()
    if dn <= dd and not explain:
        return MoveReport(label, [], f"deg {n_name} = {dn} <= deg {d_name} = {dd}")
    systems = _division_systems(num, den, node.ctx)
    g = systems[0][1][0] if len(systems) == 1 else None
    if dn <= dd:
        if g is not None and g.degree == 0:
            reason = f"empty divisibility system: deg {n_name} = {dn} <= deg {d_name} = {dd}"
        else:
            reason = f"deg {n_name} = {dn} <= deg {d_name} = {dd}: a quotient cannot lower the degree sum"
        return MoveReport(label, [], reason, g)
    moves = []
    for c, (gc, p) in systems:
        if not gc:
            # num is a polynomial in den: every b works with a = -p(b) and all
            # quotients have the same degree, so b = 0 stands for the family
            solutions = [(c, c.neg(p(c.zero)), c.zero)]
        else:
            solutions = _solutions(c, gc, p, mode)
        for c2, a, b in solutions:
            step = Div1(side, a, b)
            try:
                moves.append((step, apply_step(node.over(c2), step)))
            except ConstantComponent:
                continue
    if moves:
        return MoveReport(label, moves, "", g)
    if all(gc.degree == 0 for _, (gc, _p) in systems):
        reason = "empty divisibility system (constraint gcd is 1)"
    elif mode is Mode.RATIONAL:
        reason = "constraint gcd has no rational root"
    else:
        reason = "every solution leaves a constant component"
    return MoveReport(label, [], reason, g)


_FAMILIES = (
    lambda node, mode, explain: _sub2_report(node, Side.U),
    lambda node, mode, explain: _sub2_report(node, Side.V),
    lambda node, mode, explain: _div1_report(node, Side.U, mode, explain),
    lambda node, mode, explain: _div1_report(node, Side.V, mode, explain),
)


def _family_reports(node, mode):
    return [family(node, mode, True) for family in _FAMILIES]


def _reports(node, mode):
    """Family reports per branch: ``[(ctx, [MoveReport x4]), ...]``."""
    return fork(node.ctx, lambda c: _family_reports(node.over(c), mode))


def _lazy_moves(node, mode):
    # one family at a time, so a successful early family spares the later ones
    for family in _FAMILIES:
        for _, rep in fork(node.ctx, lambda c: family(node.over(c), mode, False)):
            yield from rep.moves


def reducing_moves(pair, mode=Mode.CLOSURE):
    """Every single move that strictly lowers the degree sum, with its successor.

    Order: Sub2-U, Sub2-V, Div1-U, Div1-V; within Div1 rational roots ascend
    and adjoined generators follow.  Successors may live in refined contexts.
    """
    mode = Mode(mode)
    out = []
    for c, res in fork(pair.ctx, lambda c: _classify(pair, c)):
        if res is None:
            continue
        for _, reports in _reports(res[0], mode):
            for rep in reports:
                out.extend(rep.moves)
    return out


# -- the decision procedure ----------------------------------------------------


@dataclass(frozen=True)
class TraceEntry:
    step: object
    ctx: FieldCtx


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth: int = 0
    splits: int = 0


@dataclass
class Decision:
    outcome: Outcome
    mode: Mode
    u: Poly2
    v: Poly2
    ctx: FieldCtx
    trace: list = field(default_factory=list)
    final: Optional[MorphismPair] = None
    refusal: list = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    bound: int = 0


class _Search:
    def __init__(self, mode, limit):
        self.mode = mode
        self.limit = limit
        self.stats = SearchStats()
        self.truncated = False
        self.root = None

    def expand(self, node, depth):
        if depth == 0:
            self.root = node
        return _lazy_moves(node, self.mode)

    def visit(self, pair, trace, depth):
        self.stats.nodes += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        for _, res in fork(pair.ctx, lambda c: _classify(pair, c)):
            if res is None:
                continue
            node, affine = res
            if affine:
                return trace, node
            if depth >= self.limit:
                self.truncated = True
                continue
            for step, succ in self.expand(node, depth):
                found = self.visit(succ, trace + [TraceEntry(step, succ.ctx)], depth + 1)
                if found:
                    return found
        return None


def decide(u, v, mode=Mode.CLOSURE, max_depth=None):
    """Decide whether ``x -> u, y -> v`` is a product of simple affine contractions.

    ``mode`` selects the ground field: ``RATIONAL`` (parameters in Q; only the
    one-step test at the input is conclusive for NO) or ``CLOSURE`` (parameters
    in the algebraic closure; the answer is always YES or NO).  ``max_depth``
    defaults to the proven bound ``deg u + deg v - 2``.
    """
    mode = Mode(mode)
    root = FieldCtx(mode)
    pair = MorphismPair(u.over(root), v.over(root), root)
    bound = pair.degree_sum() - 2
    search = _Search(mode, bound if max_depth is None else max_depth)
    base = dict(mode=mode, u=pair.u, v=pair.v, stats=search.stats, bound=bound)
    if not jacobian(pair):
        # products of simple affine contractions have nonzero Jacobian
        search.stats.nodes = 1
        reports = [rep for _, reps in _reports(pair, mode) for rep in reps]
        dep = MoveReport("jacobian", [], "u and v are algebraically dependent (zero Jacobian)")
        return Decision(Outcome.NO, ctx=root, refusal=[dep] + reports, **base)
    log = []
    token = _split_log.set(log)
    try:
        found = search.visit(pair, [], 0)
    finally:
        _split_log.reset(token)
    search.stats.splits = len(log)
    if found:
        trace, final = found
        ctx = final.ctx
        trace = [TraceEntry(e.step.over(ctx), e.ctx) for e in trace]
        return Decision(Outcome.YES, ctx=ctx, trace=trace, final=final, **base)
    # the root is re-examined in full only to explain a failure
    root_node = search.root
    if root_node is None:  # truncated before expanding anything
        root_node = fork(pair.ctx, lambda c: _classify(pair, c))[0][1][0]
    reports = [rep for _, reps in _reports(root_node, mode) for rep in reps]
    if not any(rep.moves for rep in reports):
        outcome = Outcome.NO
    elif search.truncated or mode is Mode.RATIONAL:
        outcome = Outcome.UNDECIDED
    else:
        outcome = Outcome.NO
    for rep in reports:
        if rep.moves:
            n = len(rep.moves)
            rep.reason = f"{n} successor{'s' if n != 1 else ''} explored, none reduces to an affine automorphism"
    return Decision(outcome, ctx=root, refusal=reports, **base)
