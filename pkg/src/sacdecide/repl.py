"""Line-oriented reduction session.

Commands: ``load U V``, ``moves``, ``apply N``, ``apply div1 SIDE A B``,
``apply sub2 SIDE Q``, ``apply swap``, ``undo``, ``degree``, ``show``,
``export FILE``, ``quit``.  Parameters may use the generators of the
current tower; ``Q`` is a polynomial in ``t``.
"""

import cmd
import shlex

from . import certify
from .cli import describe_step, describe_tower
from .engine import (
    Div1,
    MorphismPair,
    Outcome,
    Side,
    Sub2,
    Swap,
    apply_step,
    is_affine_auto,
    reducing_moves,
)
from .errors import InvalidInput, NotDivisible, PolySyntaxError, ZeroDivisorSplit
from .notation import parse_elem, parse_poly, parse_uni, render_poly
from .tower import FieldCtx


class Session(cmd.Cmd):
    intro = None
    prompt = "sac> "

    def __init__(self, mode, stdin=None, stdout=None):
        super().__init__(stdin=stdin, stdout=stdout)
        self.mode = mode
        self.input = None
        self.history = []  # [(pair, step)] applied so far
        self.pair = None
        self._moves = []

    def say(self, text):
        print(text, file=self.stdout)

    def emptyline(self):
        pass

    def default(self, line):
        self.say(f"unknown command: {line.split()[0]}")

    # -- state ------------------------------------------------------------

    def _need_pair(self):
        if self.pair is None:
            self.say("no pair loaded")
            return False
        return True

    def do_load(self, arg):
        """load U V -- start a session on the pair (U, V)."""
        try:
            parts = shlex.split(arg)
        except ValueError as exc:
            self.say(f"error: {exc}")
            return
        if len(parts) != 2:
            self.say("usage: load U V")
            return
        try:
            u, v = (parse_poly(p) for p in parts)
            root = FieldCtx(self.mode)
            self.pair = MorphismPair(u.over(root), v.over(root), root)
        except (PolySyntaxError, InvalidInput) as exc:
            self.say(f"error: {exc}")
            return
        self.input = (u, v)
        self.history = []
        self._moves = []
        self.do_show("")

    def do_show(self, arg):
        """show -- print the current pair."""
        if not self._need_pair():
            return
        p = self.pair
        self.say(f"u = {render_poly(p.u)}")
        self.say(f"v = {render_poly(p.v)}")
        if p.ctx.height:
            self.say(f"tower: {describe_tower(p.ctx)}")

    def do_degree(self, arg):
        """degree -- print deg u, deg v and their sum."""
        if self._need_pair():
            p = self.pair
            self.say(f"deg u = {p.u.total_degree()}, deg v = {p.v.total_degree()}, sum = {p.degree_sum()}")

    def do_moves(self, arg):
        """moves -- list the reducing moves by index."""
        if not self._need_pair():
            return
        self._moves = reducing_moves(self.pair, self.mode)
        if not self._moves:
            self.say("no reducing move")
        for i, (step, succ) in enumerate(self._moves, 1):
            self.say(f"{i}. {describe_step(step, succ.ctx)} -> deg sum {succ.degree_sum()}")

    def _explicit(self, parts):
        ctx = self.pair.ctx
        kind = parts[0].lower()
        if kind == "swap" and len(parts) == 1:
            return Swap()
        if kind == "div1" and len(parts) == 4:
            return Div1(Side(parts[1].lower()), parse_elem(parts[2], ctx), parse_elem(parts[3], ctx))
        if kind == "sub2" and len(parts) == 3:
            return Sub2(Side(parts[1].lower()), parse_uni(parts[2], ctx))
        raise ValueError("usage: apply N | apply div1 u|v A B | apply sub2 u|v Q | apply swap")

    def do_apply(self, arg):
        """apply N | apply div1 SIDE A B | apply sub2 SIDE Q | apply swap"""
        if not self._need_pair():
            return
        try:
            parts = shlex.split(arg)
            if not parts:
                raise ValueError("usage: apply N | apply div1 u|v A B | apply sub2 u|v Q | apply swap")
            if parts[0].isdigit():
                k = int(parts[0])
                if not 1 <= k <= len(self._moves):
                    raise ValueError(f"no move {k}; run 'moves' first")
                step, succ = self._moves[k - 1]
            else:
                step = self._explicit(parts)
                succ = apply_step(self.pair, step)
        except NotDivisible:
            self.say("error: remainder nonzero")
            return
        except ZeroDivisorSplit:
            self.say("error: a coefficient is a zero divisor in the current tower")
            return
        except (ValueError, PolySyntaxError) as exc:
            self.say(f"error: {exc}")
            return
        # successors may refine the tower; keep earlier states consistent
        self.history.append((self.pair, step))
        self.pair = succ
        self._moves = []
        self.do_show("")

    def do_undo(self, arg):
        """undo -- revert the last applied move."""
        if not self.history:
            self.say("nothing to undo")
            return
        self.pair, _ = self.history.pop()
        self._moves = []
        self.do_show("")

    def is_done(self):
        try:
            return is_affine_auto(self.pair)
        except ZeroDivisorSplit:
            return False

    def certificate(self):
        ctx = self.pair.ctx
        steps = [step.over(ctx) for _, step in self.history]
        outcome = Outcome.YES if self.is_done() else Outcome.UNDECIDED
        return certify.certificate_for(self.input[0], self.input[1], self.mode, outcome, ctx, steps)

    def do_export(self, arg):
        """export FILE -- write the session as a certificate."""
        if not self._need_pair():
            return
        path = arg.strip()
        if not path:
            self.say("usage: export FILE")
            return
        c = self.certificate()
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(certify.encode(c))
        except OSError as exc:
            self.say(f"error: {exc.strerror}")
            return
        self.say(f"wrote {path} ({c.outcome})")

    def do_quit(self, arg):
        """quit -- leave the session."""
        return True

    do_exit = do_quit
    do_EOF = do_quit
